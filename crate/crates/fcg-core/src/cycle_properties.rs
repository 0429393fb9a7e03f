//! Cycle properties: decidable sets of finite label words.
//!
//! A cycle property decides which simple cycles are good for Player 0. The
//! built-in bases follow the usual catalogue: even length, parity of the
//! maximum priority, nonnegative weight sum, good-for-energy pairs,
//! mean-payoff threshold (with an explicit inequality direction), first
//! label maximal, and last label zero. `complement` flips membership
//! pointwise and is involutive.
//!
//! Closure under cyclic permutations and under concatenation matters for
//! memoryless determinacy, so this module also provides closure checks.
//! Sampling can only falsify a closure law, never prove it; a registry of
//! analytically known facts (bases 1-5 are closed under both laws, the
//! complement of even-length is not closed under concatenation, max-first
//! is not closed under cyclic permutations) short-circuits the search and
//! pins the canonical witnesses.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arena::{Label, LabelKind};
use crate::rng::SplitMix64;

/// Inequality direction of the mean-payoff threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    AtLeast,
    AtMost,
}

/// The base (uncomplemented) cycle properties.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseProperty {
    /// The word has even length. Accepts any label kind.
    EvenLen,
    /// The maximum priority in the word is even.
    Parity,
    /// The weight sum is nonnegative.
    Energy,
    /// Pair words whose weight sum is positive, or zero with an even
    /// maximum priority.
    GoodForEnergy,
    /// The average payoff compares to `threshold` in `direction`.
    MeanPayoff {
        threshold: BigRational,
        direction: Direction,
    },
    /// The first priority is maximal in the word.
    MaxFirst,
    /// The last priority is zero.
    EndsZero,
}

/// A cycle property: a base, optionally complemented.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleProperty {
    base: BaseProperty,
    complemented: bool,
}

/// Errors from membership tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyError {
    /// Cycles have at least one edge; the empty word has no membership.
    EmptyWord,
    KindMismatch {
        expected: &'static str,
        found: LabelKind,
    },
    /// A word mixing label kinds.
    MixedKinds,
}

impl fmt::Display for PropertyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyError::EmptyWord => write!(f, "empty label word"),
            PropertyError::KindMismatch { expected, found } => {
                write!(
                    f,
                    "property needs {expected} labels, word has {found} labels"
                )
            }
            PropertyError::MixedKinds => write!(f, "label word mixes label kinds"),
        }
    }
}

/// A finite word of uniformly-kinded labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelWord {
    labels: Vec<Label>,
}

impl LabelWord {
    pub fn new(labels: Vec<Label>) -> Result<LabelWord, PropertyError> {
        if labels.windows(2).any(|w| w[0].kind() != w[1].kind()) {
            return Err(PropertyError::MixedKinds);
        }
        Ok(LabelWord { labels })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn kind(&self) -> Option<LabelKind> {
        self.labels.first().map(Label::kind)
    }

    /// The word rotated left by `shift` positions.
    pub fn rotate(&self, shift: usize) -> LabelWord {
        let n = self.labels.len();
        if n == 0 {
            return self.clone();
        }
        let s = shift % n;
        let mut labels = self.labels[s..].to_vec();
        labels.extend_from_slice(&self.labels[..s]);
        LabelWord { labels }
    }

    pub fn concat(&self, other: &LabelWord) -> Result<LabelWord, PropertyError> {
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        LabelWord::new(labels)
    }
}

impl fmt::Display for LabelWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

impl CycleProperty {
    pub fn new(base: BaseProperty) -> CycleProperty {
        CycleProperty {
            base,
            complemented: false,
        }
    }

    pub fn even_len() -> CycleProperty {
        CycleProperty::new(BaseProperty::EvenLen)
    }

    pub fn parity() -> CycleProperty {
        CycleProperty::new(BaseProperty::Parity)
    }

    pub fn energy() -> CycleProperty {
        CycleProperty::new(BaseProperty::Energy)
    }

    pub fn good_for_energy() -> CycleProperty {
        CycleProperty::new(BaseProperty::GoodForEnergy)
    }

    pub fn mean_payoff(threshold: BigRational, direction: Direction) -> CycleProperty {
        CycleProperty::new(BaseProperty::MeanPayoff {
            threshold,
            direction,
        })
    }

    pub fn max_first() -> CycleProperty {
        CycleProperty::new(BaseProperty::MaxFirst)
    }

    pub fn ends_zero() -> CycleProperty {
        CycleProperty::new(BaseProperty::EndsZero)
    }

    pub fn base(&self) -> &BaseProperty {
        &self.base
    }

    pub fn is_complemented(&self) -> bool {
        self.complemented
    }

    /// Pointwise negation; involutive because complementation is a single
    /// flag, not a wrapper.
    pub fn complement(&self) -> CycleProperty {
        CycleProperty {
            base: self.base.clone(),
            complemented: !self.complemented,
        }
    }

    /// The label kind this property requires, or `None` if any kind works.
    pub fn required_kind(&self) -> Option<LabelKind> {
        match self.base {
            BaseProperty::EvenLen => None,
            BaseProperty::Parity | BaseProperty::MaxFirst | BaseProperty::EndsZero => {
                Some(LabelKind::Priority)
            }
            BaseProperty::Energy => Some(LabelKind::Weight),
            BaseProperty::MeanPayoff { .. } => Some(LabelKind::Payoff),
            BaseProperty::GoodForEnergy => Some(LabelKind::Pair),
        }
    }

    /// Whether the property can be evaluated on words of the given kind.
    pub fn accepts_kind(&self, kind: LabelKind) -> bool {
        self.required_kind().is_none_or(|k| k == kind)
    }

    /// Membership of a nonempty word.
    pub fn contains(&self, word: &LabelWord) -> Result<bool, PropertyError> {
        self.contains_labels(word.labels())
    }

    /// Membership on a raw slice; the slice must be kind-uniform (as label
    /// words taken from a single arena always are).
    pub fn contains_labels(&self, labels: &[Label]) -> Result<bool, PropertyError> {
        let first = labels.first().ok_or(PropertyError::EmptyWord)?;
        if let Some(required) = self.required_kind() {
            if first.kind() != required {
                return Err(PropertyError::KindMismatch {
                    expected: required.as_str(),
                    found: first.kind(),
                });
            }
        }
        let holds = match &self.base {
            BaseProperty::EvenLen => labels.len().is_multiple_of(2),
            BaseProperty::Parity => {
                let max = labels
                    .iter()
                    .map(|l| l.priority().expect("priority labels"))
                    .max()
                    .expect("nonempty");
                max % 2 == 0
            }
            BaseProperty::Energy => {
                let sum: i128 = labels
                    .iter()
                    .map(|l| l.weight().expect("weight labels") as i128)
                    .sum();
                sum >= 0
            }
            BaseProperty::GoodForEnergy => {
                let sum: i128 = labels
                    .iter()
                    .map(|l| l.weight().expect("pair labels") as i128)
                    .sum();
                if sum > 0 {
                    true
                } else if sum == 0 {
                    let max = labels
                        .iter()
                        .map(|l| l.priority().expect("pair labels"))
                        .max()
                        .expect("nonempty");
                    max % 2 == 0
                } else {
                    false
                }
            }
            BaseProperty::MeanPayoff {
                threshold,
                direction,
            } => {
                let mut sum = BigRational::from(BigInt::from(0));
                for l in labels {
                    match l {
                        Label::Payoff(r) => sum += r,
                        _ => unreachable!("kind checked above"),
                    }
                }
                let bound = threshold * BigRational::from(BigInt::from(labels.len() as i64));
                match direction {
                    Direction::AtLeast => sum >= bound,
                    Direction::AtMost => sum <= bound,
                }
            }
            BaseProperty::MaxFirst => {
                let first = labels[0].priority().expect("priority labels");
                labels
                    .iter()
                    .all(|l| first >= l.priority().expect("priority labels"))
            }
            BaseProperty::EndsZero => {
                labels
                    .last()
                    .expect("nonempty")
                    .priority()
                    .expect("priority labels")
                    == 0
            }
        };
        Ok(holds ^ self.complemented)
    }

    /// CLI spelling: `evenlen`, `parity`, `energy`, `goodforenergy`,
    /// `meanpayoff:<num>/<den>[:atmost]`, `maxfirst`, `endszero`, with
    /// prefix `not:` for the complement.
    pub fn parse_spelling(s: &str) -> Option<CycleProperty> {
        let (complemented, rest) = match s.strip_prefix("not:") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let base = match rest {
            "evenlen" => BaseProperty::EvenLen,
            "parity" => BaseProperty::Parity,
            "energy" => BaseProperty::Energy,
            "goodforenergy" => BaseProperty::GoodForEnergy,
            "maxfirst" => BaseProperty::MaxFirst,
            "endszero" => BaseProperty::EndsZero,
            other => {
                let body = other.strip_prefix("meanpayoff:")?;
                let (value, direction) = match body.strip_suffix(":atmost") {
                    Some(v) => (v, Direction::AtMost),
                    None => (body, Direction::AtLeast),
                };
                let threshold = if let Some((num, den)) = value.split_once('/') {
                    let num: i64 = num.parse().ok()?;
                    let den: i64 = den.parse().ok()?;
                    if den <= 0 {
                        return None;
                    }
                    BigRational::new(BigInt::from(num), BigInt::from(den))
                } else {
                    BigRational::from(BigInt::from(value.parse::<i64>().ok()?))
                };
                BaseProperty::MeanPayoff {
                    threshold,
                    direction,
                }
            }
        };
        Some(CycleProperty { base, complemented })
    }
}

impl fmt::Display for CycleProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complemented {
            write!(f, "not:")?;
        }
        match &self.base {
            BaseProperty::EvenLen => write!(f, "evenlen"),
            BaseProperty::Parity => write!(f, "parity"),
            BaseProperty::Energy => write!(f, "energy"),
            BaseProperty::GoodForEnergy => write!(f, "goodforenergy"),
            BaseProperty::MeanPayoff {
                threshold,
                direction,
            } => {
                write!(f, "meanpayoff:{}/{}", threshold.numer(), threshold.denom())?;
                if *direction == Direction::AtMost {
                    write!(f, ":atmost")?;
                }
                Ok(())
            }
            BaseProperty::MaxFirst => write!(f, "maxfirst"),
            BaseProperty::EndsZero => write!(f, "endszero"),
        }
    }
}

/// Which closure law a check or witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureLaw {
    /// `ab` in Y implies `ba` in Y, for a single letter `a`.
    CyclicPermutation,
    /// `a` in Y and `b` in Y imply `ab` in Y.
    Concatenation,
}

/// A pair of words violating a closure law.
///
/// For cyclic permutations, `first` is in the property and `second` is a
/// rotation of `first` that is not. For concatenation, `first` and `second`
/// are both in the property but `first . second` is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWitness {
    pub law: ClosureLaw,
    pub first: LabelWord,
    pub second: LabelWord,
}

impl ClosureWitness {
    /// Re-checks that the witness really violates its law under `contains`.
    pub fn revalidates(&self, property: &CycleProperty) -> bool {
        match self.law {
            ClosureLaw::CyclicPermutation => {
                let is_rotation =
                    (0..self.first.len()).any(|s| self.first.rotate(s) == self.second);
                is_rotation
                    && property.contains(&self.first) == Ok(true)
                    && property.contains(&self.second) == Ok(false)
            }
            ClosureLaw::Concatenation => {
                let Ok(joined) = self.first.concat(&self.second) else {
                    return false;
                };
                property.contains(&self.first) == Ok(true)
                    && property.contains(&self.second) == Ok(true)
                    && property.contains(&joined) == Ok(false)
            }
        }
    }
}

/// The outcome of a closure check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureVerdict {
    /// Registered as closed; sampling is skipped (the test suites
    /// separately hammer these facts with random trials).
    KnownClosed,
    /// Registered as not closed with no recorded witness. The built-in
    /// registry always stores witnesses, so checks return
    /// `Counterexample` instead; the variant exists for callers that
    /// record bare facts.
    KnownNotClosed,
    /// Sampling found nothing; says nothing about closure.
    NoCounterexampleFound,
    /// A violating pair, re-validated before being returned.
    Counterexample(ClosureWitness),
}

impl ClosureVerdict {
    pub fn witness(&self) -> Option<&ClosureWitness> {
        match self {
            ClosureVerdict::Counterexample(w) => Some(w),
            _ => None,
        }
    }

    pub fn refutes(&self) -> bool {
        matches!(
            self,
            ClosureVerdict::KnownNotClosed | ClosureVerdict::Counterexample(_)
        )
    }
}

fn word(labels: &[Label]) -> LabelWord {
    LabelWord::new(labels.to_vec()).expect("registry words are kind-uniform")
}

enum RegistryFact {
    Closed,
    NotClosed(ClosureWitness),
}

/// Closure facts asserted analytically rather than sampled.
///
/// Bases 1-5 (even-length, parity, energy, good-for-energy, mean-payoff)
/// are closed under cyclic permutations and concatenation, and a property
/// is closed under cyclic permutations iff its complement is. The
/// complements of parity, energy, good-for-energy and mean-payoff are
/// closed under concatenation; the complement of even-length is not, and
/// max-first is not closed under cyclic permutations.
fn registry(property: &CycleProperty, law: ClosureLaw) -> Option<RegistryFact> {
    use BaseProperty::*;
    let rotation_closed_base = matches!(
        property.base,
        EvenLen | Parity | Energy | GoodForEnergy | MeanPayoff { .. }
    );
    match law {
        ClosureLaw::CyclicPermutation => {
            if rotation_closed_base {
                // Holds for the complement too.
                return Some(RegistryFact::Closed);
            }
            if matches!(property.base, MaxFirst) {
                let (inside, outside) = if property.is_complemented() {
                    (
                        [Label::Priority(1), Label::Priority(2)],
                        [Label::Priority(2), Label::Priority(1)],
                    )
                } else {
                    (
                        [Label::Priority(2), Label::Priority(1)],
                        [Label::Priority(1), Label::Priority(2)],
                    )
                };
                return Some(RegistryFact::NotClosed(ClosureWitness {
                    law,
                    first: word(&inside),
                    second: word(&outside),
                }));
            }
            None
        }
        ClosureLaw::Concatenation => {
            if property.is_complemented() {
                match property.base {
                    Parity | Energy | GoodForEnergy | MeanPayoff { .. } => {
                        Some(RegistryFact::Closed)
                    }
                    EvenLen => {
                        // Two odd lengths concatenate to an even length.
                        let letter = [Label::Priority(0)];
                        Some(RegistryFact::NotClosed(ClosureWitness {
                            law,
                            first: word(&letter),
                            second: word(&letter),
                        }))
                    }
                    _ => None,
                }
            } else if rotation_closed_base {
                Some(RegistryFact::Closed)
            } else {
                None
            }
        }
    }
}

/// Sampling alphabets: small letter sets maximize the chance of hitting a
/// counterexample within a fixed budget.
fn sampling_alphabet(kind: LabelKind) -> Vec<Label> {
    match kind {
        LabelKind::Priority => (0..=5).map(Label::Priority).collect(),
        LabelKind::Weight => (-3..=3).map(Label::Weight).collect(),
        LabelKind::Payoff => {
            let mut out = Vec::new();
            for num in -3..=3 {
                for den in 1..=3 {
                    out.push(Label::payoff_from_ratio(num, den));
                }
            }
            out
        }
        LabelKind::Pair => {
            let mut out = Vec::new();
            for c in 0..=5 {
                for d in -3..=3 {
                    out.push(Label::Pair(c, d));
                }
            }
            out
        }
    }
}

fn sample_word(rng: &mut SplitMix64, alphabet: &[Label], max_len: usize) -> LabelWord {
    let len = 1 + rng.next_below(max_len.max(1));
    let labels = (0..len)
        .map(|_| alphabet[rng.next_below(alphabet.len())].clone())
        .collect();
    LabelWord::new(labels).expect("single-kind alphabet")
}

/// The kind used when sampling words for a property; kind-agnostic
/// properties are sampled over priorities.
fn sampling_kind(property: &CycleProperty) -> LabelKind {
    property.required_kind().unwrap_or(LabelKind::Priority)
}

/// Pure sampling falsifier for cyclic-permutation closure, never consulting
/// the registry: tests every rotation of `budget` random words of length at
/// most `max_len`. Used directly by the suites that hammer registry facts.
pub fn falsify_cyclic_closure(
    property: &CycleProperty,
    budget: usize,
    max_len: usize,
    seed: u64,
) -> ClosureVerdict {
    let alphabet = sampling_alphabet(sampling_kind(property));
    let mut rng = SplitMix64::new(seed);
    for _ in 0..budget {
        let w = sample_word(&mut rng, &alphabet, max_len);
        if property.contains(&w) != Ok(true) {
            continue;
        }
        for shift in 1..w.len() {
            let rotated = w.rotate(shift);
            if property.contains(&rotated) == Ok(false) {
                let witness = ClosureWitness {
                    law: ClosureLaw::CyclicPermutation,
                    first: w,
                    second: rotated,
                };
                debug_assert!(witness.revalidates(property));
                return ClosureVerdict::Counterexample(witness);
            }
        }
    }
    ClosureVerdict::NoCounterexampleFound
}

/// Pure sampling falsifier for concatenation closure over `budget` random
/// word pairs; the registry is not consulted.
pub fn falsify_concat_closure(
    property: &CycleProperty,
    budget: usize,
    max_len: usize,
    seed: u64,
) -> ClosureVerdict {
    let alphabet = sampling_alphabet(sampling_kind(property));
    let mut rng = SplitMix64::new(seed);
    for _ in 0..budget {
        let a = sample_word(&mut rng, &alphabet, max_len);
        let b = sample_word(&mut rng, &alphabet, max_len);
        if property.contains(&a) != Ok(true) || property.contains(&b) != Ok(true) {
            continue;
        }
        let joined = a.concat(&b).expect("same kind");
        if property.contains(&joined) == Ok(false) {
            let witness = ClosureWitness {
                law: ClosureLaw::Concatenation,
                first: a,
                second: b,
            };
            debug_assert!(witness.revalidates(property));
            return ClosureVerdict::Counterexample(witness);
        }
    }
    ClosureVerdict::NoCounterexampleFound
}

/// Checks closure of `property` under cyclic permutations: registry facts
/// first (sampling can only falsify, never prove), then the sampling
/// falsifier.
pub fn check_cyclic_closure(
    property: &CycleProperty,
    budget: usize,
    max_len: usize,
    seed: u64,
) -> ClosureVerdict {
    if let Some(fact) = registry(property, ClosureLaw::CyclicPermutation) {
        return match fact {
            RegistryFact::Closed => ClosureVerdict::KnownClosed,
            RegistryFact::NotClosed(w) => {
                debug_assert!(w.revalidates(property));
                ClosureVerdict::Counterexample(w)
            }
        };
    }
    falsify_cyclic_closure(property, budget, max_len, seed)
}

/// Checks closure of `property` under concatenation: registry facts first,
/// then the sampling falsifier.
pub fn check_concat_closure(
    property: &CycleProperty,
    budget: usize,
    max_len: usize,
    seed: u64,
) -> ClosureVerdict {
    if let Some(fact) = registry(property, ClosureLaw::Concatenation) {
        return match fact {
            RegistryFact::Closed => ClosureVerdict::KnownClosed,
            RegistryFact::NotClosed(w) => {
                debug_assert!(w.revalidates(property));
                ClosureVerdict::Counterexample(w)
            }
        };
    }
    falsify_concat_closure(property, budget, max_len, seed)
}

/// Which of the three closure conditions failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharCheck {
    Cyclic,
    Concat,
    ConcatOfComplement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharFailure {
    pub check: CharCheck,
    pub witness: Option<ClosureWitness>,
}

/// Verdict on the closure hypothesis that guarantees every arena is
/// unambiguous for the property: closed under cyclic permutations, and
/// both the property and its complement closed under concatenation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharVerdict {
    /// All three conditions are registered facts.
    Yes,
    /// Some condition is refuted.
    No(CharFailure),
    /// Sampling found no refutation but at least one condition is not a
    /// registered fact.
    Unknown,
}

/// Conjunction of the three closure checks. `Yes` needs all three to be
/// `KnownClosed`; a single counterexample gives `No`.
pub fn satisfies_char_hypothesis(
    property: &CycleProperty,
    budget: usize,
    max_len: usize,
    seed: u64,
) -> CharVerdict {
    let mut rng = SplitMix64::new(seed);
    let checks = [
        (
            CharCheck::Cyclic,
            check_cyclic_closure(property, budget, max_len, rng.fork(1).next_u64()),
        ),
        (
            CharCheck::Concat,
            check_concat_closure(property, budget, max_len, rng.fork(2).next_u64()),
        ),
        (
            CharCheck::ConcatOfComplement,
            check_concat_closure(
                &property.complement(),
                budget,
                max_len,
                rng.fork(3).next_u64(),
            ),
        ),
    ];
    let mut all_known = true;
    for (check, verdict) in checks {
        match verdict {
            ClosureVerdict::KnownClosed => {}
            ClosureVerdict::NoCounterexampleFound => all_known = false,
            ClosureVerdict::KnownNotClosed => {
                return CharVerdict::No(CharFailure {
                    check,
                    witness: None,
                });
            }
            ClosureVerdict::Counterexample(w) => {
                return CharVerdict::No(CharFailure {
                    check,
                    witness: Some(w),
                });
            }
        }
    }
    if all_known {
        CharVerdict::Yes
    } else {
        CharVerdict::Unknown
    }
}
