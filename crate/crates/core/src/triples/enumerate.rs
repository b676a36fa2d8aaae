//! Exhaustive enumeration of phase-free AvN triples.
//!
//! The predicate is invariant under permuting `e`, `f`, `g`, so every
//! unordered triple has exactly six valid orderings. Both engines emit one
//! representative per unordered triple, the one with `e < f < g` in
//! canonical word order, and emit them in canonical lexicographic order.
//!
//! Words are coded as base-4 integers with qubit 0 most significant, so
//! numeric order on codes is the canonical `I < X < Y < Z` word order.

use rayon::prelude::*;

use super::AvnTriple;
use crate::error::{check_cap, Result};
use crate::pauli::{PauliElement, PauliLetter};

/// Default qubit cap for the structured engine.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;
/// Default qubit cap for the brute-force engine.
pub const DEFAULT_BRUTE_CAP: usize = 4;
// codes are u32
const HARD_CAP: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleWords {
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

impl TripleWords {
    pub fn to_triple(self, n: usize, phases: [u8; 3]) -> AvnTriple {
        AvnTriple {
            e: decode_word(n, self.e).with_phase(phases[0]),
            f: decode_word(n, self.f).with_phase(phases[1]),
            g: decode_word(n, self.g).with_phase(phases[2]),
        }
    }
}

#[inline]
fn letter_at(n: usize, code: u32, q: usize) -> u8 {
    ((code >> (2 * (n - 1 - q))) & 3) as u8
}

pub fn decode_word(n: usize, code: u32) -> PauliElement {
    let letters: Vec<PauliLetter> = (0..n)
        .map(|q| PauliLetter::from_index(letter_at(n, code, q) as usize))
        .collect();
    PauliElement::from_letters(&letters)
}

fn check_n(n: usize, cap: usize) -> Result<()> {
    check_cap("qubit count", n, cap.min(HARD_CAP))
}

// ---------------------------------------------------------------------------
// Brute force: every e < f < g, checked letter by letter.

fn letterwise_valid(n: usize, e: u32, f: u32, g: u32) -> bool {
    let (mut ne, mut nf, mut ng) = (0u32, 0u32, 0u32);
    for q in 0..n {
        let (a, b, c) = (letter_at(n, e, q), letter_at(n, f, q), letter_at(n, g, q));
        if a != b && b != c && a != c {
            return false;
        }
        if a == 0 || b == 0 || c == 0 {
            continue;
        }
        if a == b && b != c {
            ng += 1;
        } else if b == c && a != b {
            ne += 1;
        } else if a == c && a != b {
            nf += 1;
        }
    }
    ne % 2 == 1 && nf % 2 == 1 && ng % 2 == 1
}

pub fn brute_force_triples(n: usize, cap: usize) -> Result<Vec<TripleWords>> {
    check_n(n, cap)?;
    let size = 1u32 << (2 * n);
    let out = (0..size)
        .into_par_iter()
        .flat_map_iter(|e| {
            let mut local = Vec::new();
            for f in e + 1..size {
                for g in f + 1..size {
                    if letterwise_valid(n, e, f, g) {
                        local.push(TripleWords { e, f, g });
                    }
                }
            }
            local
        })
        .collect();
    Ok(out)
}

pub fn count_brute_force(n: usize, cap: usize) -> Result<u64> {
    check_n(n, cap)?;
    let size = 1u32 << (2 * n);
    Ok((0..size)
        .into_par_iter()
        .map(|e| {
            let mut c = 0u64;
            for f in e + 1..size {
                for g in f + 1..size {
                    c += letterwise_valid(n, e, f, g) as u64;
                }
            }
            c
        })
        .sum())
}

// ---------------------------------------------------------------------------
// Structured search: for each pair e < f, assign g column by column, tracking
// the parities of (N_e, N_f, N_g) and pruning on suffix reachability.

const FLIP_E: u8 = 1;
const FLIP_F: u8 = 2;
const FLIP_G: u8 = 4;
const TARGET: u8 = FLIP_E | FLIP_F | FLIP_G;

struct ColumnPlan {
    // per column: up to 4 (letter, parity flip) options, ascending by letter
    options: Vec<([(u8, u8); 4], usize)>,
    // reach[i]: set of parity vectors (as an 8-bit mask) reachable from column i on
    reach: Vec<u8>,
}

#[inline]
fn shift_set(set: u8, flip: u8) -> u8 {
    let mut out = 0u8;
    for s in 0..8u8 {
        if set & (1 << s) != 0 {
            out |= 1 << (s ^ flip);
        }
    }
    out
}

impl ColumnPlan {
    fn new(n: usize, e: u32, f: u32) -> Self {
        let mut options = Vec::with_capacity(n);
        for q in 0..n {
            let (a, b) = (letter_at(n, e, q), letter_at(n, f, q));
            let mut opts = [(0u8, 0u8); 4];
            let mut len = 0;
            if a == b {
                for c in 0..4u8 {
                    let flip = if c != a && a != 0 && c != 0 {
                        FLIP_G
                    } else {
                        0
                    };
                    opts[len] = (c, flip);
                    len += 1;
                }
            } else {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                for c in [lo, hi] {
                    let active = a != 0 && b != 0;
                    // g = e gives e=g≠f, g = f gives e≠f=g
                    let flip = match (active, c == a) {
                        (false, _) => 0,
                        (true, true) => FLIP_F,
                        (true, false) => FLIP_E,
                    };
                    opts[len] = (c, flip);
                    len += 1;
                }
            }
            options.push((opts, len));
        }
        let mut reach = vec![0u8; n + 1];
        reach[n] = 1;
        for q in (0..n).rev() {
            let (opts, len) = &options[q];
            reach[q] = opts[..*len]
                .iter()
                .fold(0, |acc, &(_, flip)| acc | shift_set(reach[q + 1], flip));
        }
        ColumnPlan { options, reach }
    }

    fn feasible(&self) -> bool {
        self.reach[0] & (1 << TARGET) != 0
    }
}

fn search_g(
    n: usize,
    f: u32,
    plan: &ColumnPlan,
    q: usize,
    parity: u8,
    tight: bool,
    code: u32,
    out: &mut impl FnMut(u32),
) {
    if q == n {
        if parity == TARGET && !tight {
            out(code);
        }
        return;
    }
    let fl = letter_at(n, f, q);
    let (opts, len) = &plan.options[q];
    for &(c, flip) in &opts[..*len] {
        if tight && c < fl {
            continue;
        }
        let p = parity ^ flip;
        if plan.reach[q + 1] & (1 << (p ^ TARGET)) == 0 {
            continue;
        }
        search_g(
            n,
            f,
            plan,
            q + 1,
            p,
            tight && c == fl,
            (code << 2) | c as u32,
            out,
        );
    }
}

#[inline]
fn commute(n: usize, e: u32, f: u32) -> bool {
    let mut anti = 0;
    for q in 0..n {
        let (a, b) = (letter_at(n, e, q), letter_at(n, f, q));
        anti += (a != 0 && b != 0 && a != b) as u32;
    }
    anti % 2 == 0
}

fn for_each_with_e(n: usize, e: u32, out: &mut impl FnMut(TripleWords)) {
    let size = 1u32 << (2 * n);
    for f in e + 1..size {
        // valid triples pairwise commute
        if !commute(n, e, f) {
            continue;
        }
        let plan = ColumnPlan::new(n, e, f);
        if !plan.feasible() {
            continue;
        }
        search_g(n, f, &plan, 0, 0, true, 0, &mut |g| {
            out(TripleWords { e, f, g })
        });
    }
}

/// Streams every canonical representative in canonical order.
pub fn for_each_structured(n: usize, cap: usize, mut out: impl FnMut(TripleWords)) -> Result<()> {
    check_n(n, cap)?;
    for e in 0..1u32 << (2 * n) {
        for_each_with_e(n, e, &mut out);
    }
    Ok(())
}

pub fn structured_triples(n: usize, cap: usize) -> Result<Vec<TripleWords>> {
    check_n(n, cap)?;
    Ok((0..1u32 << (2 * n))
        .into_par_iter()
        .flat_map_iter(|e| {
            let mut local = Vec::new();
            for_each_with_e(n, e, &mut |t| local.push(t));
            local
        })
        .collect())
}

/// Number of unordered phase-free triples.
pub fn count_structured(n: usize, cap: usize) -> Result<u64> {
    check_n(n, cap)?;
    Ok((0..1u32 << (2 * n))
        .into_par_iter()
        .map(|e| {
            let mut c = 0u64;
            for_each_with_e(n, e, &mut |_| c += 1);
            c
        })
        .sum())
}

/// Lazy canonical stream of [`AvnTriple`]s, optionally expanded over the
/// eight sign choices (phases vary fastest, `+` before `-`).
pub struct TripleStream {
    n: usize,
    include_phases: bool,
    next_e: u32,
    size: u32,
    buffer: std::vec::IntoIter<TripleWords>,
    current: Option<(TripleWords, u8)>,
}

impl TripleStream {
    pub fn new(n: usize, include_phases: bool, cap: usize) -> Result<Self> {
        check_n(n, cap)?;
        Ok(TripleStream {
            n,
            include_phases,
            next_e: 0,
            size: 1u32 << (2 * n),
            buffer: Vec::new().into_iter(),
            current: None,
        })
    }

    fn next_words(&mut self) -> Option<TripleWords> {
        loop {
            if let Some(t) = self.buffer.next() {
                return Some(t);
            }
            if self.next_e >= self.size {
                return None;
            }
            let mut chunk = Vec::new();
            for_each_with_e(self.n, self.next_e, &mut |t| chunk.push(t));
            self.next_e += 1;
            self.buffer = chunk.into_iter();
        }
    }
}

impl Iterator for TripleStream {
    type Item = AvnTriple;

    fn next(&mut self) -> Option<AvnTriple> {
        if !self.include_phases {
            return self.next_words().map(|w| w.to_triple(self.n, [0; 3]));
        }
        let (words, signs) = match self.current.take() {
            Some((w, s)) if s < 8 => (w, s),
            _ => (self.next_words()?, 0),
        };
        self.current = Some((words, signs + 1));
        let phase = |bit: u8| if signs & bit != 0 { 2 } else { 0 };
        Some(words.to_triple(self.n, [phase(4), phase(2), phase(1)]))
    }
}
