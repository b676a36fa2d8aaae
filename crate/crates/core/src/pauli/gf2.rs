//! Streaming Gaussian elimination over GF(2) with refutation certificates.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zero(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut r = Self::zero(len);
        for i in idx {
            r.toggle(i);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let m = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of `self · assignment`.
    pub fn dot(&self, assignment: &[bool]) -> bool {
        self.ones().fold(false, |acc, i| acc ^ assignment[i])
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A system of parity equations `row · v = rhs` over `num_vars` variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Gf2System {
    pub num_vars: usize,
    pub rows: Vec<(BitRow, bool)>,
}

impl Gf2System {
    pub fn new(num_vars: usize) -> Self {
        Gf2System {
            num_vars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, vars: impl IntoIterator<Item = usize>, rhs: bool) {
        self.rows
            .push((BitRow::from_indices(self.num_vars, vars), rhs));
    }

    /// Checks that the cited rows XOR to `0 = 1`.
    pub fn is_refutation(&self, certificate: &[usize]) -> bool {
        let mut acc = BitRow::zero(self.num_vars);
        let mut rhs = false;
        for &i in certificate {
            let Some((row, b)) = self.rows.get(i) else {
                return false;
            };
            acc.xor_assign(row);
            rhs ^= b;
        }
        acc.is_zero() && rhs
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars && self.rows.iter().all(|(r, b)| r.dot(assignment) == *b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Solution {
    Consistent(Vec<bool>),
    /// Sorted indices of rows whose sum is `0 = 1`.
    Inconsistent(Vec<usize>),
}

impl Gf2Solution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Gf2Solution::Consistent(_))
    }
}

#[derive(Debug, Clone)]
struct Pivot {
    column: usize,
    row: BitRow,
    rhs: bool,
    // original row indices folded into this pivot, sorted
    origin: Vec<usize>,
}

/// Result of feeding one row into a [`Gf2Eliminator`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    NewPivot,
    Redundant,
    /// Sorted original indices whose sum is `0 = 1`.
    Contradiction(Vec<usize>),
}

/// Incremental row reducer holding at most `num_vars` pivots.
#[derive(Debug, Clone)]
pub struct Gf2Eliminator {
    num_vars: usize,
    pivots: Vec<Pivot>,
    pushed: usize,
}

fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Gf2Eliminator {
    pub fn new(num_vars: usize) -> Self {
        Gf2Eliminator {
            num_vars,
            pivots: Vec::new(),
            pushed: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Feeds the next row; its original index is the number of rows pushed so far.
    pub fn push(&mut self, mut row: BitRow, mut rhs: bool) -> Outcome {
        let index = self.pushed;
        self.pushed += 1;
        let mut origin = vec![index];
        for p in &self.pivots {
            if row.get(p.column) {
                row.xor_assign(&p.row);
                rhs ^= p.rhs;
                origin = sym_diff(&origin, &p.origin);
            }
        }
        match row.first_one() {
            Some(column) => {
                self.pivots.push(Pivot {
                    column,
                    row,
                    rhs,
                    origin,
                });
                Outcome::NewPivot
            }
            None if rhs => Outcome::Contradiction(origin),
            None => Outcome::Redundant,
        }
    }

    /// One satisfying assignment with free variables set to 0.
    pub fn solution(&self) -> Vec<bool> {
        let mut v = vec![false; self.num_vars];
        for p in self.pivots.iter().rev() {
            let mut b = p.rhs;
            for j in p.row.ones() {
                if j != p.column {
                    b ^= v[j];
                }
            }
            v[p.column] = b;
        }
        v
    }
}

pub fn gf2_solve(sys: &Gf2System) -> Gf2Solution {
    let mut elim = Gf2Eliminator::new(sys.num_vars);
    for (row, rhs) in &sys.rows {
        if let Outcome::Contradiction(cert) = elim.push(row.clone(), *rhs) {
            return Gf2Solution::Inconsistent(cert);
        }
    }
    Gf2Solution::Consistent(elim.solution())
}
