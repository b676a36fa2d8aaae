//! AvN triples: predicates, deviation counts, three-qubit reduction,
//! the closed counting formula and exhaustive enumeration.
//!
//! A column `i` of a triple `⟨e,f,g⟩` is *active* when all three letters are
//! non-identity and exactly two of them agree; it then contributes to
//! `N_g` (`e=f≠g`), `N_e` (`e≠f=g`) or `N_f` (`e=g≠f`).

mod enumerate;

pub use enumerate::{
    brute_force_triples, count_brute_force, count_structured, decode_word, for_each_structured,
    structured_triples, TripleStream, TripleWords, DEFAULT_BRUTE_CAP, DEFAULT_ENUMERATION_CAP,
};

use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pauli::{PauliElement, PauliLetter};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PatternCounts {
    pub n_e: usize,
    pub n_f: usize,
    pub n_g: usize,
}

impl PatternCounts {
    pub fn all_odd(&self) -> bool {
        self.n_e % 2 == 1 && self.n_f % 2 == 1 && self.n_g % 2 == 1
    }

    pub fn same_parity(&self) -> bool {
        self.n_e % 2 == self.n_f % 2 && self.n_f % 2 == self.n_g % 2
    }
}

impl fmt::Display for PatternCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ne={} nf={} ng={}", self.n_e, self.n_f, self.n_g)
    }
}

/// An ordered triple of real-phase elements of equal length.
///
/// Construction only checks shape; use [`AvnTriple::is_valid`] for the
/// AvN conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AvnTriple {
    pub e: PauliElement,
    pub f: PauliElement,
    pub g: PauliElement,
}

fn check_shape(e: &PauliElement, f: &PauliElement, g: &PauliElement) -> Result<()> {
    for other in [f, g] {
        if other.num_qubits() != e.num_qubits() {
            return Err(Error::LengthMismatch {
                left: e.num_qubits(),
                right: other.num_qubits(),
            });
        }
    }
    Ok(())
}

impl AvnTriple {
    pub fn new(e: PauliElement, f: PauliElement, g: PauliElement) -> Result<Self> {
        check_shape(&e, &f, &g)?;
        for p in [&e, &f, &g] {
            if !p.has_real_phase() {
                return Err(Error::InvalidGroup(format!(
                    "triple element {p} has an imaginary phase"
                )));
            }
        }
        Ok(AvnTriple { e, f, g })
    }

    pub fn parse(e: &str, f: &str, g: &str) -> Result<Self> {
        Self::new(e.parse()?, f.parse()?, g.parse()?)
    }

    pub fn num_qubits(&self) -> usize {
        self.e.num_qubits()
    }

    pub fn elements(&self) -> [&PauliElement; 3] {
        [&self.e, &self.f, &self.g]
    }

    pub fn is_valid(&self) -> bool {
        is_avn_triple_def2(&self.e, &self.f, &self.g).unwrap_or(false)
    }

    pub fn counts(&self) -> Result<PatternCounts> {
        pattern_counts(&self.e, &self.f, &self.g)
    }

    /// The product `efg`, the fourth element of the refutation.
    pub fn product(&self) -> PauliElement {
        self.e.mul_unchecked(&self.f).mul_unchecked(&self.g)
    }

    /// The four elements `e, f, g, efg` whose equations sum to `0 = 1` for a valid triple.
    pub fn certificate(&self) -> [PauliElement; 4] {
        [
            self.e.clone(),
            self.f.clone(),
            self.g.clone(),
            self.product(),
        ]
    }
}

impl fmt::Display for AvnTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.e, self.f, self.g)
    }
}

/// Counts the active columns of each deviation pattern.
///
/// Fails with [`Error::PatternViolation`] on the first column whose three
/// letters are pairwise distinct.
pub fn pattern_counts(
    e: &PauliElement,
    f: &PauliElement,
    g: &PauliElement,
) -> Result<PatternCounts> {
    check_shape(e, f, g)?;
    let mut c = PatternCounts::default();
    for i in 0..e.num_qubits() {
        let (a, b, d) = (e.letter(i), f.letter(i), g.letter(i));
        if a != b && b != d && a != d {
            return Err(Error::PatternViolation { column: i });
        }
        if a == PauliLetter::I || b == PauliLetter::I || d == PauliLetter::I {
            continue;
        }
        if a == b && b != d {
            c.n_g += 1;
        } else if a != b && b == d {
            c.n_e += 1;
        } else if a == d && a != b {
            c.n_f += 1;
        }
    }
    Ok(c)
}

/// Pairwise commuting, two-of-three agreement in every column, `N_f` odd.
pub fn is_avn_triple_def1(e: &PauliElement, f: &PauliElement, g: &PauliElement) -> Result<bool> {
    check_shape(e, f, g)?;
    if !(e.has_real_phase() && f.has_real_phase() && g.has_real_phase()) {
        return Ok(false);
    }
    if !(e.commutes(f)? && f.commutes(g)? && e.commutes(g)?) {
        return Ok(false);
    }
    Ok(match pattern_counts(e, f, g) {
        Ok(c) => c.n_f % 2 == 1,
        Err(Error::PatternViolation { .. }) => false,
        Err(err) => return Err(err),
    })
}

/// Two-of-three agreement in every column and `N_e`, `N_f`, `N_g` all odd.
pub fn is_avn_triple_def2(e: &PauliElement, f: &PauliElement, g: &PauliElement) -> Result<bool> {
    check_shape(e, f, g)?;
    if !(e.has_real_phase() && f.has_real_phase() && g.has_real_phase()) {
        return Ok(false);
    }
    Ok(match pattern_counts(e, f, g) {
        Ok(c) => c.all_odd(),
        Err(Error::PatternViolation { .. }) => false,
        Err(err) => return Err(err),
    })
}

/// Columns chosen by [`reduce_to_three`], one per deviation pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionColumns {
    /// Smallest column with `e=f≠g`.
    pub g_column: usize,
    /// Smallest column with `e≠f=g`.
    pub e_column: usize,
    /// Smallest column with `e=g≠f`.
    pub f_column: usize,
}

impl ReductionColumns {
    pub fn sorted(&self) -> [usize; 3] {
        let mut c = [self.g_column, self.e_column, self.f_column];
        c.sort_unstable();
        c
    }
}

/// Restricts a valid triple to one active column of each pattern. The
/// restricted elements keep their sign bits and list the chosen columns in
/// ascending order.
pub fn reduce_to_three(t: &AvnTriple) -> Result<(ReductionColumns, AvnTriple)> {
    pattern_counts(&t.e, &t.f, &t.g)?;
    let n = t.num_qubits();
    let mut cols = [None::<usize>; 3];
    for i in 0..n {
        let (a, b, d) = (t.e.letter(i), t.f.letter(i), t.g.letter(i));
        if [a, b, d].contains(&PauliLetter::I) {
            continue;
        }
        let slot = if a == b && b != d {
            0
        } else if a != b && b == d {
            1
        } else if a == d && a != b {
            2
        } else {
            continue;
        };
        cols[slot].get_or_insert(i);
    }
    let [Some(g_column), Some(e_column), Some(f_column)] = cols else {
        return Err(Error::InvalidGroup(format!("{t} is not an AvN triple")));
    };
    let rc = ReductionColumns {
        g_column,
        e_column,
        f_column,
    };
    let q = rc.sorted();
    let reduced = AvnTriple::new(t.e.restrict(&q), t.f.restrict(&q), t.g.restrict(&q))?;
    Ok((rc, reduced))
}

/// Closed-form count of AvN triples (with phases) in the n-qubit Pauli group:
/// `8 Σ_{k=1}^{(n+[n])/2-1} C(n,2k+1)·C(k+1,k-1)·6^(2k+1)·22^(n-2k-1)`.
pub fn count_formula(n: usize) -> BigUint {
    let upper = (n + n % 2) / 2;
    let mut sum = BigUint::zero();
    for k in 1..upper {
        let s = 2 * k + 1;
        if s > n {
            break;
        }
        let term = binomial(BigUint::from(n), BigUint::from(s))
            * binomial(BigUint::from(k + 1), BigUint::from(k - 1))
            * BigUint::from(6u32).pow(s as u32)
            * BigUint::from(22u32).pow((n - s) as u32);
        sum += term;
    }
    sum * 8u32
}

/// Phase-free word packed into check-vector bit planes (n ≤ 64).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PackedWord {
    pub x: u64,
    pub z: u64,
}

impl PackedWord {
    pub fn from_element(p: &PauliElement) -> Self {
        PackedWord {
            x: p.x_words()[0],
            z: p.z_words()[0],
        }
    }

    #[inline]
    fn non_identity(self) -> u64 {
        self.x | self.z
    }

    #[inline]
    fn differs(self, other: PackedWord) -> u64 {
        (self.x ^ other.x) | (self.z ^ other.z)
    }
}

/// Bit-parallel triple predicates over [`PackedWord`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PackedTriple {
    pub e: PackedWord,
    pub f: PackedWord,
    pub g: PackedWord,
}

impl PackedTriple {
    /// `None` when some column has three distinct letters.
    #[inline]
    pub fn counts(&self) -> Option<PatternCounts> {
        let d_ef = self.e.differs(self.f);
        let d_fg = self.f.differs(self.g);
        let d_eg = self.e.differs(self.g);
        if d_ef & d_fg & d_eg != 0 {
            return None;
        }
        let active = self.e.non_identity() & self.f.non_identity() & self.g.non_identity();
        Some(PatternCounts {
            n_g: (!d_ef & d_fg & active).count_ones() as usize,
            n_e: (!d_fg & d_ef & active).count_ones() as usize,
            n_f: (!d_eg & d_ef & active).count_ones() as usize,
        })
    }

    #[inline]
    pub fn is_avn(&self) -> bool {
        self.counts().is_some_and(|c| c.all_odd())
    }
}
