//! Seeded random arena generation for the test suites and the CLI's
//! falsification commands.

use alloc::string::String;
use alloc::vec::Vec;

use crate::arena::{Arena, ArenaBuilder, Label, LabelKind, Player};
use crate::rng::SplitMix64;

/// Who owns the generated vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OwnerScheme {
    Random,
    /// A solitaire arena owned entirely by one player.
    AllTo(Player),
}

/// Shape of a randomly generated arena.
#[derive(Debug, Clone)]
pub struct ArenaShape {
    pub vertices: usize,
    /// Out-degrees are drawn uniformly from `1..=max_out_degree`.
    pub max_out_degree: usize,
    pub kind: LabelKind,
    pub owners: OwnerScheme,
    pub priorities: (u32, u32),
    pub weights: (i64, i64),
    pub payoff_numerators: (i64, i64),
    pub payoff_denominators: (i64, i64),
}

impl ArenaShape {
    pub fn new(vertices: usize, kind: LabelKind) -> ArenaShape {
        ArenaShape {
            vertices,
            max_out_degree: 3,
            kind,
            owners: OwnerScheme::Random,
            priorities: (0, 3),
            weights: (-3, 3),
            payoff_numerators: (-3, 3),
            payoff_denominators: (1, 3),
        }
    }
}

fn random_label(shape: &ArenaShape, rng: &mut SplitMix64) -> Label {
    match shape.kind {
        LabelKind::Priority => Label::Priority(
            rng.next_range_inclusive(shape.priorities.0 as i64, shape.priorities.1 as i64) as u32,
        ),
        LabelKind::Weight => {
            Label::Weight(rng.next_range_inclusive(shape.weights.0, shape.weights.1))
        }
        LabelKind::Payoff => Label::payoff_from_ratio(
            rng.next_range_inclusive(shape.payoff_numerators.0, shape.payoff_numerators.1),
            rng.next_range_inclusive(shape.payoff_denominators.0, shape.payoff_denominators.1),
        ),
        LabelKind::Pair => Label::Pair(
            rng.next_range_inclusive(shape.priorities.0 as i64, shape.priorities.1 as i64) as u32,
            rng.next_range_inclusive(shape.weights.0, shape.weights.1),
        ),
    }
}

/// Generates a valid arena of the given shape, deterministically from the
/// generator state. Every vertex gets between one and `max_out_degree`
/// distinct successors, so there are never dead-ends or duplicate edges.
pub fn random_arena(shape: &ArenaShape, rng: &mut SplitMix64) -> Arena {
    assert!(shape.vertices >= 1);
    assert!(shape.max_out_degree >= 1);
    let names: Vec<String> = (0..shape.vertices)
        .map(|i| alloc::format!("n{i}"))
        .collect();
    let mut builder: ArenaBuilder = Arena::builder(shape.kind);
    for name in &names {
        let owner = match shape.owners {
            OwnerScheme::Random => {
                if rng.next_bool() {
                    Player::One
                } else {
                    Player::Zero
                }
            }
            OwnerScheme::AllTo(p) => p,
        };
        builder.vertex(name, owner);
    }
    for name in &names {
        let degree = 1 + rng.next_below(shape.max_out_degree.min(shape.vertices));
        let mut targets: Vec<usize> = (0..shape.vertices).collect();
        // Partial Fisher-Yates: the first `degree` entries are the targets.
        for i in 0..degree {
            let j = i + rng.next_below(shape.vertices - i);
            targets.swap(i, j);
        }
        for &t in &targets[..degree] {
            builder.edge(name, &names[t], random_label(shape, rng));
        }
    }
    builder.build().expect("generated arenas are valid")
}
