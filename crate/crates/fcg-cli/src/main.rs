//! `fcg` — command-line front end for first-cycle game construction,
//! solving, and analysis.
//!
//! Commands print one JSON document to stdout (schema-stable, versioned via
//! a top-level `"schema": 1`), except `decompose` and `gallery --emit`,
//! which print the plain-text formats they document. Diagnostics go to
//! stderr. Exit codes: 0 success, 1 a negative analysis verdict under
//! `--assert`, 2 usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use fcg_core::arena::{Arena, Lasso, Player, Vertex};
use fcg_core::cycle_properties::{
    check_concat_closure, check_cyclic_closure, satisfies_char_hypothesis, CharVerdict,
    ClosureVerdict, CycleProperty, LabelWord,
};
use fcg_core::decomposition::decompose_prefix;
use fcg_core::fcg_solver::{solve_fcg, solve_fcg_all};
use fcg_core::gallery;
use fcg_core::infinite_games::{
    check_greedy_bounded, check_unambiguous_bounded, greedy_energy_credit,
    solve_infinite_via_transfer, transfer_pipeline, GreedyVerdict, TransferSolution,
    UnambiguityVerdict, WinningCondition,
};
use fcg_core::reductions::{
    gg_to_fcg, solve_gg_direct, solve_gg_via_fcg, GeographyInstance, GgWinner,
};
use fcg_core::strategy_analysis::{
    classify_determinacy, min_moore_memory, MemorylessStrategy, MooreMemory,
};

#[derive(Parser)]
#[command(
    name = "fcg",
    version,
    about = "First-cycle games: solve, decompose, analyze"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchOpts {
    /// Number of sampled candidates.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Seed for the deterministic sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a first-cycle or infinite-duration game.
    Solve {
        #[arg(long)]
        arena: PathBuf,
        /// One of: fcg, parity, meanpayoff:NUM/DEN, energy.
        #[arg(long)]
        game: String,
        /// Cycle property (required for --game fcg).
        #[arg(long)]
        property: Option<String>,
        /// Also report the winner from this start vertex.
        #[arg(long)]
        start: Option<String>,
        /// Energy initial credit; defaults to max|weight| * (|V|-1).
        #[arg(long)]
        credit: Option<u64>,
        /// Acknowledge that a non-default credit has no registered greedy
        /// fact, so the transferred regions are not certified.
        #[arg(long)]
        unsafe_credit: bool,
    },
    /// Print the cycles-decomposition of a play prefix.
    Decompose {
        #[arg(long)]
        arena: PathBuf,
        /// Whitespace-separated vertex names.
        #[arg(long)]
        play: String,
    },
    /// Winning regions, memoryless regions, uniform strategies, and the
    /// determinacy flags.
    Determinacy {
        #[arg(long)]
        arena: PathBuf,
        #[arg(long)]
        property: String,
        /// Exit 1 unless the game is uniform (and pointwise) memoryless
        /// determined.
        #[arg(long)]
        assert: bool,
    },
    /// Minimal Moore-machine memory winning from a start vertex.
    Memory {
        #[arg(long)]
        arena: PathBuf,
        #[arg(long)]
        property: String,
        #[arg(long)]
        player: usize,
        #[arg(long)]
        start: String,
        #[arg(long)]
        kmax: usize,
    },
    /// Closure checks of a cycle property under cyclic permutations and
    /// concatenation.
    Closure {
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 8)]
        maxlen: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exit 1 unless all three closure conditions are known to hold.
        #[arg(long)]
        assert: bool,
    },
    /// Search for a lasso refuting that a condition is greedy for a
    /// property on this arena.
    CheckGreedy {
        #[arg(long)]
        arena: PathBuf,
        /// One of: parity, meanpayoff:NUM/DEN, energy, energy:CREDIT.
        #[arg(long)]
        game: String,
        #[arg(long)]
        property: String,
        #[command(flatten)]
        search: SearchOpts,
        /// Exit 1 if a counterexample is found.
        #[arg(long)]
        assert: bool,
    },
    /// Search for a play in the suffix-all-cycles objective of both a
    /// property and its complement.
    CheckUnambiguous {
        #[arg(long)]
        arena: PathBuf,
        #[arg(long)]
        property: String,
        #[command(flatten)]
        search: SearchOpts,
        /// Exit 1 if an ambiguity witness is found.
        #[arg(long)]
        assert: bool,
    },
    /// Solve a generalised-geography instance directly and through its
    /// first-cycle encoding.
    Gg {
        #[arg(long)]
        input: PathBuf,
    },
    /// List the built-in arenas, or emit one in the arena file format.
    Gallery {
        #[arg(long)]
        name: Option<String>,
        /// Print the arena file instead of JSON (requires --name).
        #[arg(long)]
        emit: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_arena(path: &PathBuf) -> Result<Arena, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Arena::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_property(s: &str) -> Result<CycleProperty, String> {
    CycleProperty::parse_spelling(s).ok_or_else(|| format!("unknown property spelling `{s}`"))
}

fn parse_threshold(s: &str) -> Result<BigRational, String> {
    let parse_int = |t: &str| t.parse::<i64>().map_err(|_| format!("bad rational `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let den_v = parse_int(den)?;
        if den_v <= 0 {
            return Err(format!("bad rational `{s}`: denominator must be positive"));
        }
        Ok(BigRational::new(
            BigInt::from(parse_int(num)?),
            BigInt::from(den_v),
        ))
    } else {
        Ok(BigRational::from(BigInt::from(parse_int(s)?)))
    }
}

fn lookup_vertex(arena: &Arena, name: &str) -> Result<Vertex, String> {
    arena
        .vertex(name)
        .ok_or_else(|| format!("unknown vertex `{name}`"))
}

fn region_json(arena: &Arena, vertices: impl IntoIterator<Item = Vertex>) -> Value {
    Value::Array(
        vertices
            .into_iter()
            .map(|v| Value::String(arena.name(v).to_string()))
            .collect(),
    )
}

fn strategy_json(arena: &Arena, strategy: &Option<MemorylessStrategy>) -> Value {
    match strategy {
        None => Value::Null,
        Some(s) => Value::Object(
            s.choices()
                .map(|(v, w)| {
                    (
                        arena.name(v).to_string(),
                        Value::String(arena.name(w).to_string()),
                    )
                })
                .collect(),
        ),
    }
}

fn lasso_json(arena: &Arena, lasso: &Lasso) -> Value {
    json!({
        "prefix": lasso.prefix().iter().map(|v| arena.name(*v)).collect::<Vec<_>>(),
        "cycle": lasso.cycle().iter().map(|v| arena.name(*v)).collect::<Vec<_>>(),
    })
}

fn word_json(word: &LabelWord) -> Value {
    Value::Array(
        word.labels()
            .iter()
            .map(|l| Value::String(l.to_string()))
            .collect(),
    )
}

fn closure_verdict_json(verdict: &ClosureVerdict) -> Value {
    match verdict {
        ClosureVerdict::KnownClosed => json!({"status": "known_closed"}),
        ClosureVerdict::KnownNotClosed => json!({"status": "known_not_closed"}),
        ClosureVerdict::NoCounterexampleFound => json!({"status": "no_counterexample_found"}),
        ClosureVerdict::Counterexample(w) => json!({
            "status": "counterexample",
            "first": word_json(&w.first),
            "second": word_json(&w.second),
        }),
    }
}

fn emit(value: Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("serializable")
    );
}

fn transfer_json(arena: &Arena, solution: &TransferSolution) -> Value {
    json!({
        "regions": {
            "0": region_json(arena, solution.region(Player::Zero)),
            "1": region_json(arena, solution.region(Player::One)),
        },
        "strategies": {
            "0": strategy_json(arena, &solution.strategies[0]),
            "1": strategy_json(arena, &solution.strategies[1]),
        },
        "associated_property": solution.property.to_string(),
    })
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Solve {
            arena,
            game,
            property,
            start,
            credit,
            unsafe_credit,
        } => {
            let arena = read_arena(&arena)?;
            let start = start.map(|s| lookup_vertex(&arena, &s)).transpose()?;
            match game.as_str() {
                "fcg" => {
                    let spelling = property.ok_or("--game fcg requires --property")?;
                    let property = parse_property(&spelling)?;
                    let solution = solve_fcg_all(&arena, &property).map_err(|e| e.to_string())?;
                    let (start_name, winner) = match start {
                        Some(v) => {
                            let outcome =
                                solve_fcg(&arena, &property, v).map_err(|e| e.to_string())?;
                            (
                                Value::String(arena.name(v).to_string()),
                                Value::Number(outcome.winner.index().into()),
                            )
                        }
                        None => (Value::Null, Value::Null),
                    };
                    emit(json!({
                        "schema": 1,
                        "command": "solve",
                        "game": "fcg",
                        "property": property.to_string(),
                        "regions": {
                            "0": region_json(&arena, solution.region(Player::Zero)),
                            "1": region_json(&arena, solution.region(Player::One)),
                        },
                        "start": start_name,
                        "winner": winner,
                    }));
                    Ok(ExitCode::SUCCESS)
                }
                "parity" => {
                    let solution = solve_infinite_via_transfer(&arena, &WinningCondition::Parity)
                        .map_err(|e| e.to_string())?;
                    let mut out = transfer_json(&arena, &solution);
                    merge(
                        &mut out,
                        json!({"schema": 1, "command": "solve", "game": "parity"}),
                    );
                    attach_start_winner(&arena, &solution, start, &mut out);
                    emit(out);
                    Ok(ExitCode::SUCCESS)
                }
                other if other.starts_with("meanpayoff:") => {
                    let threshold = parse_threshold(&other["meanpayoff:".len()..])?;
                    let condition = WinningCondition::MeanPayoff(threshold);
                    let solution = solve_infinite_via_transfer(&arena, &condition)
                        .map_err(|e| e.to_string())?;
                    let mut out = transfer_json(&arena, &solution);
                    merge(
                        &mut out,
                        json!({"schema": 1, "command": "solve", "game": other}),
                    );
                    attach_start_winner(&arena, &solution, start, &mut out);
                    emit(out);
                    Ok(ExitCode::SUCCESS)
                }
                "energy" => {
                    let registered = greedy_energy_credit(&arena).map_err(|e| e.to_string())?;
                    let chosen = credit.unwrap_or(registered);
                    let solution = if chosen == registered {
                        solve_infinite_via_transfer(&arena, &WinningCondition::Energy(chosen))
                            .map_err(|e| e.to_string())?
                    } else if unsafe_credit {
                        // No greedy fact covers this credit: run the same
                        // pipeline but say so in the report.
                        transfer_pipeline(&arena, CycleProperty::energy())
                            .map_err(|e| e.to_string())?
                    } else {
                        return Err(format!(
                            "credit {chosen} has no registered greedy fact (registered: {registered}); \
                             pass --unsafe-credit to run the pipeline anyway"
                        ));
                    };
                    let mut out = transfer_json(&arena, &solution);
                    merge(
                        &mut out,
                        json!({
                            "schema": 1,
                            "command": "solve",
                            "game": "energy",
                            "credit": chosen,
                            "registered_credit": registered,
                            "unsafe_credit": chosen != registered,
                        }),
                    );
                    attach_start_winner(&arena, &solution, start, &mut out);
                    emit(out);
                    Ok(ExitCode::SUCCESS)
                }
                other => Err(format!("unknown game `{other}`")),
            }
        }

        Command::Decompose { arena, play } => {
            let arena = read_arena(&arena)?;
            let play: Vec<Vertex> = play
                .split_whitespace()
                .map(|name| lookup_vertex(&arena, name))
                .collect::<Result<_, _>>()?;
            let (cycles, residual) = decompose_prefix(&arena, &play).map_err(|e| e.to_string())?;
            for cycle in &cycles {
                println!("{}", cycle.display(&arena));
            }
            let residual_text: String = residual
                .stack()
                .iter()
                .map(|(s, d)| format!("({},{})", arena.name(*s), arena.name(*d)))
                .collect();
            if residual_text.is_empty() {
                println!("residual:");
            } else {
                println!("residual: {residual_text}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Determinacy {
            arena,
            property,
            assert,
        } => {
            let arena = read_arena(&arena)?;
            let property = parse_property(&property)?;
            let report = classify_determinacy(&arena, &property).map_err(|e| e.to_string())?;
            emit(json!({
                "schema": 1,
                "command": "determinacy",
                "property": report.property,
                "winning_regions": {
                    "0": region_json(&arena, report.winning_regions[0].iter().copied()),
                    "1": region_json(&arena, report.winning_regions[1].iter().copied()),
                },
                "pointwise_regions": {
                    "0": region_json(&arena, report.pointwise_regions[0].iter().copied()),
                    "1": region_json(&arena, report.pointwise_regions[1].iter().copied()),
                },
                "uniform_strategies": {
                    "0": strategy_json(&arena, &report.uniform_strategies[0]),
                    "1": strategy_json(&arena, &report.uniform_strategies[1]),
                },
                "pointwise_memoryless_determined": report.pointwise_memoryless_determined,
                "uniform_memoryless_determined": report.uniform_memoryless_determined,
            }));
            if assert
                && !(report.pointwise_memoryless_determined && report.uniform_memoryless_determined)
            {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Memory {
            arena,
            property,
            player,
            start,
            kmax,
        } => {
            let arena = read_arena(&arena)?;
            let property = parse_property(&property)?;
            let player = Player::from_index(player).ok_or("--player must be 0 or 1")?;
            let start = lookup_vertex(&arena, &start)?;
            let result = min_moore_memory(&arena, &property, player, start, kmax)
                .map_err(|e| e.to_string())?;
            let result_json = match result {
                MooreMemory::Minimal { memory, .. } => json!({"minimal": memory}),
                MooreMemory::ExceedsBound => json!("exceeds_bound"),
            };
            emit(json!({
                "schema": 1,
                "command": "memory",
                "property": property.to_string(),
                "player": player.index(),
                "start": arena.name(start),
                "kmax": kmax,
                "result": result_json,
            }));
            Ok(ExitCode::SUCCESS)
        }

        Command::Closure {
            property,
            budget,
            maxlen,
            seed,
            assert,
        } => {
            let property = parse_property(&property)?;
            let cyclic = check_cyclic_closure(&property, budget, maxlen, seed);
            let concat = check_concat_closure(&property, budget, maxlen, seed.wrapping_add(1));
            let concat_complement =
                check_concat_closure(&property.complement(), budget, maxlen, seed.wrapping_add(2));
            let char_verdict = satisfies_char_hypothesis(&property, budget, maxlen, seed);
            let char_text = match &char_verdict {
                CharVerdict::Yes => "yes",
                CharVerdict::No(_) => "no",
                CharVerdict::Unknown => "unknown",
            };
            emit(json!({
                "schema": 1,
                "command": "closure",
                "property": property.to_string(),
                "budget": budget,
                "max_len": maxlen,
                "seed": seed,
                "cyclic_permutations": closure_verdict_json(&cyclic),
                "concatenation": closure_verdict_json(&concat),
                "concatenation_of_complement": closure_verdict_json(&concat_complement),
                "char_hypothesis": char_text,
            }));
            if assert && !matches!(char_verdict, CharVerdict::Yes) {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::CheckGreedy {
            arena,
            game,
            property,
            search,
            assert,
        } => {
            let arena = read_arena(&arena)?;
            let property = parse_property(&property)?;
            let condition = parse_condition(&game, &arena)?;
            let verdict =
                check_greedy_bounded(&arena, &condition, &property, search.budget, search.seed)
                    .map_err(|e| e.to_string())?;
            let (result, lasso) = match &verdict {
                GreedyVerdict::NoCounterexample => ("no_counterexample", Value::Null),
                GreedyVerdict::CounterexampleFound(l) => ("counterexample", lasso_json(&arena, l)),
            };
            emit(json!({
                "schema": 1,
                "command": "check-greedy",
                "game": condition.to_string(),
                "property": property.to_string(),
                "budget": search.budget,
                "seed": search.seed,
                "result": result,
                "lasso": lasso,
            }));
            if assert && matches!(verdict, GreedyVerdict::CounterexampleFound(_)) {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::CheckUnambiguous {
            arena,
            property,
            search,
            assert,
        } => {
            let arena = read_arena(&arena)?;
            let property = parse_property(&property)?;
            let verdict = check_unambiguous_bounded(&arena, &property, search.budget, search.seed)
                .map_err(|e| e.to_string())?;
            let (result, lasso) = match &verdict {
                UnambiguityVerdict::NoWitness => ("no_witness", Value::Null),
                UnambiguityVerdict::WitnessFound(l) => ("witness_found", lasso_json(&arena, l)),
            };
            emit(json!({
                "schema": 1,
                "command": "check-unambiguous",
                "property": property.to_string(),
                "budget": search.budget,
                "seed": search.seed,
                "result": result,
                "lasso": lasso,
            }));
            if assert && matches!(verdict, UnambiguityVerdict::WitnessFound(_)) {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Gg { input } => {
            let text =
                std::fs::read_to_string(&input).map_err(|e| format!("{}: {e}", input.display()))?;
            let instance = GeographyInstance::parse(&text).map_err(|e| e.to_string())?;
            if instance.vertex_count() > 32 {
                return Err("geography instances are limited to 32 vertices".into());
            }
            let direct = solve_gg_direct(&instance);
            let via_fcg = solve_gg_via_fcg(&instance);
            let reduction = gg_to_fcg(&instance);
            emit(json!({
                "schema": 1,
                "command": "gg",
                "start": instance.start_name(),
                "winner": direct.to_string(),
                "winner_via_fcg": via_fcg.to_string(),
                "agrees": direct == via_fcg,
                "fcg_winner": match via_fcg { GgWinner::Mover => 1, GgWinner::Opponent => 0 },
                "property": reduction.property.to_string(),
                "fcg_start": reduction.arena.name(reduction.start),
                "arena": reduction.arena.to_text(),
            }));
            Ok(ExitCode::SUCCESS)
        }

        Command::Gallery {
            name,
            emit: emit_arena,
        } => {
            match name {
                None => {
                    if emit_arena {
                        return Err("--emit requires --name".into());
                    }
                    let entries: Vec<Value> = gallery::entries()
                        .iter()
                        .map(|e| {
                            json!({
                                "name": e.name,
                                "property": e.property.to_string(),
                                "note": e.note,
                                "vertices": e.arena.vertex_count(),
                                "edges": e.arena.edge_count(),
                            })
                        })
                        .collect();
                    emit(json!({"schema": 1, "command": "gallery", "entries": entries}));
                }
                Some(name) => {
                    let entry = gallery::find(&name)
                        .ok_or_else(|| format!("no gallery entry named `{name}`"))?;
                    if emit_arena {
                        print!("{}", entry.arena.to_text());
                    } else {
                        emit(json!({
                            "schema": 1,
                            "command": "gallery",
                            "name": entry.name,
                            "property": entry.property.to_string(),
                            "note": entry.note,
                            "arena": entry.arena.to_text(),
                        }));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Winning conditions as spelled on the command line.
fn parse_condition(s: &str, arena: &Arena) -> Result<WinningCondition, String> {
    if s == "parity" {
        return Ok(WinningCondition::Parity);
    }
    if let Some(rest) = s.strip_prefix("meanpayoff:") {
        return Ok(WinningCondition::MeanPayoff(parse_threshold(rest)?));
    }
    if s == "energy" {
        return Ok(WinningCondition::Energy(
            greedy_energy_credit(arena).map_err(|e| e.to_string())?,
        ));
    }
    if let Some(rest) = s.strip_prefix("energy:") {
        let credit = rest
            .parse::<u64>()
            .map_err(|_| format!("bad credit `{rest}`"))?;
        return Ok(WinningCondition::Energy(credit));
    }
    Err(format!("unknown game `{s}`"))
}

fn attach_start_winner(
    arena: &Arena,
    solution: &TransferSolution,
    start: Option<Vertex>,
    out: &mut Value,
) {
    let (start_name, winner) = match start {
        Some(v) => (
            Value::String(arena.name(v).to_string()),
            Value::Number(solution.solution.winner(v).index().into()),
        ),
        None => (Value::Null, Value::Null),
    };
    merge(out, json!({"start": start_name, "winner": winner}));
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        for (k, v) in e {
            t.insert(k, v);
        }
    }
}
