#![allow(dead_code)]

use avn::graphstate::{Graph, LocalCliffordFrame, SiteClifford};
use avn::{PauliElement, PauliLetter, StabiliserGroup};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let pairs = n * (n - 1) / 2;
    Graph::from_edge_mask(n, rng.gen_range(0..1u64 << pairs))
}

pub fn random_frame(rng: &mut impl Rng, n: usize) -> LocalCliffordFrame {
    let all = SiteClifford::all();
    LocalCliffordFrame::new((0..n).map(|_| *all.choose(rng).unwrap()).collect())
}

/// Every stabiliser state is LC-equivalent to a graph state, so a random
/// graph, frame, sign pattern and triangular change of generators reaches
/// every maximal group.
pub fn random_maximal_group(rng: &mut impl Rng, n: usize) -> StabiliserGroup {
    let frame = random_frame(rng, n);
    let mut gens: Vec<PauliElement> = random_graph(rng, n)
        .generators()
        .iter()
        .map(|g| {
            let c = frame.conjugate(g).unwrap();
            if rng.gen() {
                c.negate()
            } else {
                c
            }
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen() {
                gens[i] = gens[i].mul(&gens[j]).unwrap();
            }
        }
    }
    gens.shuffle(rng);
    StabiliserGroup::new(n, gens).unwrap()
}

/// A random valid group of rank `k ≤ n`.
pub fn random_group(rng: &mut impl Rng, n: usize, k: usize) -> StabiliserGroup {
    let full = random_maximal_group(rng, n);
    StabiliserGroup::new(n, full.generators()[..k].to_vec()).unwrap()
}

pub const LETTERS: [PauliLetter; 4] = [
    PauliLetter::I,
    PauliLetter::X,
    PauliLetter::Y,
    PauliLetter::Z,
];

/// The 40 letter columns with at least two equal entries.
pub fn condition1_columns() -> Vec<[PauliLetter; 3]> {
    let mut out = Vec::new();
    for a in LETTERS {
        for b in LETTERS {
            for c in LETTERS {
                if a == b || b == c || a == c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

pub fn random_word(rng: &mut impl Rng, n: usize) -> PauliElement {
    let letters: Vec<PauliLetter> = (0..n).map(|_| LETTERS[rng.gen_range(0..4)]).collect();
    PauliElement::new(2 * rng.gen_range(0..2u8), &letters)
}

pub fn random_condition1_triple(rng: &mut impl Rng, n: usize) -> [PauliElement; 3] {
    let cols = condition1_columns();
    let picks: Vec<[PauliLetter; 3]> = (0..n).map(|_| *cols.choose(rng).unwrap()).collect();
    let mk = |k: usize| PauliElement::from_letters(&picks.iter().map(|c| c[k]).collect::<Vec<_>>());
    [mk(0), mk(1), mk(2)]
}
