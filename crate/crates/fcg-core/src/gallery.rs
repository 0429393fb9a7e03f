//! A small gallery of arenas with noteworthy game-theoretic behavior,
//! available to the CLI by name and used heavily in the test suites.

use alloc::vec::Vec;

use crate::arena::{Arena, Lasso};
use crate::cycle_properties::CycleProperty;

/// A named arena with a suggested property and a note on why it matters.
#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub arena: Arena,
    pub property: CycleProperty,
    pub note: &'static str,
}

const PROP1: &str = "\
arena priority
v v1 0
v v2 1
v v3 1
v v4 1
e v1 v2 0
e v2 v1 0
e v1 v3 0
e v3 v2 0
e v2 v4 0
e v4 v1 0
";

const MAXFIRST_SOLITAIRE: &str = "\
arena priority
v v1 0
v v2 0
v v3 0
e v1 v2 1
e v1 v3 1
e v2 v1 2
e v2 v3 2
e v3 v2 3
";

const DECOMPOSITION_EXAMPLE: &str = "\
arena priority
v v 0
v w 0
v x 0
v s 0
v y 0
v z 0
e v w 0
e w x 0
e x w 0
e w v 0
e v s 0
e s x 0
e x y 0
e y z 0
e z x 0
";

/// The game where Player 1 picks one of two return routes and Player 0 must
/// match it: Player 0 wins the even-length first-cycle game from v2 and v3
/// but no memoryless strategy does.
pub fn prop1_arena() -> Arena {
    Arena::parse(PROP1).expect("gallery arena is valid")
}

/// A one-player max-first game where each start vertex is won by some
/// memoryless strategy but no single memoryless strategy wins from all
/// three.
pub fn maxfirst_solitaire_arena() -> Arena {
    Arena::parse(MAXFIRST_SOLITAIRE).expect("gallery arena is valid")
}

/// The arena realizing the play `v w x w v s (x y z)^omega`, whose
/// decomposition pops `(w,x)(x,w)`, `(v,w)(w,v)`, then `(x,y)(y,z)(z,x)`
/// forever while `(v,s)` and `(s,x)` stay on the stack.
pub fn decomposition_example_arena() -> Arena {
    Arena::parse(DECOMPOSITION_EXAMPLE).expect("gallery arena is valid")
}

/// Same graph as [`prop1_arena`]; it carries the lasso
/// `(v1 v2 v1 v3 v2 v4)^omega`, whose decomposition from position 0 has
/// only even cycles while the suffix from the second vertex has only odd
/// ones.
pub fn footnote_lasso_arena() -> Arena {
    prop1_arena()
}

/// The lasso `(v1 v2 v1 v3 v2 v4)^omega` on [`footnote_lasso_arena`].
pub fn footnote_lasso(arena: &Arena) -> Lasso {
    let v = |n: &str| arena.vertex(n).expect("gallery vertex");
    Lasso::new(
        arena,
        Vec::new(),
        alloc::vec![v("v1"), v("v2"), v("v1"), v("v3"), v("v2"), v("v4")],
    )
    .expect("gallery lasso is valid")
}

pub fn entries() -> Vec<GalleryEntry> {
    alloc::vec![
        GalleryEntry {
            name: "prop1-evenlen",
            arena: prop1_arena(),
            property: CycleProperty::even_len(),
            note: "even-length FCG that Player 0 wins from v2 and v3 only with memory",
        },
        GalleryEntry {
            name: "maxfirst-solitaire",
            arena: maxfirst_solitaire_arena(),
            property: CycleProperty::max_first(),
            note: "solitaire max-first FCG, pointwise but not uniform memoryless",
        },
        GalleryEntry {
            name: "decomposition-example",
            arena: decomposition_example_arena(),
            property: CycleProperty::even_len(),
            note: "realizes the play v w x w v s (x y z)^omega of the decomposition tests",
        },
        GalleryEntry {
            name: "footnote-lasso",
            arena: footnote_lasso_arena(),
            property: CycleProperty::even_len(),
            note: "carries the lasso (v1 v2 v1 v3 v2 v4)^omega whose suffix decompositions disagree on cycle parity",
        },
    ]
}

pub fn find(name: &str) -> Option<GalleryEntry> {
    entries().into_iter().find(|e| e.name == name)
}
