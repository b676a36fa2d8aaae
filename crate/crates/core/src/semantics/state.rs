use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::ExactScalar;
use super::{basis_action, MAX_STATE_QUBITS};
use crate::error::{check_cap, Error, Result};
use crate::graphstate::SiteClifford;
use crate::pauli::PauliElement;
use crate::subgroup::StabiliserGroup;

/// Pure state on `n` qubits with amplitudes `amps[j] / √2^sqrt2_exp`.
///
/// Basis index `j` has qubit 0 as its most significant bit. The
/// representation is canonical: `sqrt2_exp ∈ {0, 1}` and it is 0 for the
/// zero vector, so structural equality is vector equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactState {
    n: usize,
    amps: Vec<ExactScalar>,
    sqrt2_exp: u32,
}

impl ExactState {
    pub fn from_amplitudes(n: usize, amps: Vec<ExactScalar>, sqrt2_exp: u32) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(Error::LengthMismatch {
                left: 1 << n,
                right: amps.len(),
            });
        }
        let mut s = ExactState { n, amps, sqrt2_exp };
        s.canonicalize();
        Ok(s)
    }

    pub fn zero(n: usize) -> Self {
        ExactState {
            n,
            amps: vec![ExactScalar::zero(); 1 << n],
            sqrt2_exp: 0,
        }
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut s = Self::zero(n);
        s.amps[index] = ExactScalar::one();
        s
    }

    /// `(|0…0⟩ + |1…1⟩)/√2`.
    pub fn ghz(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.amps[0] = ExactScalar::one();
        s.amps[(1 << n) - 1] = ExactScalar::one();
        s.sqrt2_exp = 1;
        s
    }

    fn canonicalize(&mut self) {
        while self.sqrt2_exp >= 2 {
            for a in &mut self.amps {
                *a = a.half();
            }
            self.sqrt2_exp -= 2;
        }
        if self.is_zero() {
            self.sqrt2_exp = 0;
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[ExactScalar] {
        &self.amps
    }

    pub fn sqrt2_exp(&self) -> u32 {
        self.sqrt2_exp
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(ExactScalar::is_zero)
    }

    pub fn norm_sqr(&self) -> BigRational {
        let sum = self
            .amps
            .iter()
            .fold(BigRational::zero(), |acc, a| acc + a.norm_sqr());
        sum / BigRational::from_integer(BigInt::one() << self.sqrt2_exp as usize)
    }

    pub fn is_normalized(&self) -> bool {
        self.norm_sqr().is_one()
    }

    pub fn apply_pauli(&self, p: &PauliElement) -> Result<ExactState> {
        if p.num_qubits() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: p.num_qubits(),
            });
        }
        let mut out = vec![ExactScalar::zero(); self.amps.len()];
        for (j, a) in self.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (k, target) = basis_action(p, j);
            out[target] = a.mul_i_pow(k);
        }
        Ok(ExactState {
            n: self.n,
            amps: out,
            sqrt2_exp: self.sqrt2_exp,
        })
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar,
    ) -> ExactState {
        debug_assert_eq!(self.sqrt2_exp, other.sqrt2_exp);
        ExactState {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| f(a, b))
                .collect(),
            sqrt2_exp: self.sqrt2_exp,
        }
    }

    /// `(I + P)/2 · self`.
    pub fn project(&self, p: &PauliElement) -> Result<ExactState> {
        let moved = self.apply_pauli(p)?;
        let mut s = self.zip_with(&moved, |a, b| (a + b).half());
        s.canonicalize();
        Ok(s)
    }

    pub fn scale(&self, c: &ExactScalar) -> ExactState {
        let mut s = ExactState {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
            sqrt2_exp: self.sqrt2_exp,
        };
        s.canonicalize();
        s
    }

    pub fn apply_site(&self, q: usize, site: &SiteClifford) -> Result<ExactState> {
        // Every single-qubit Clifford is a word in H and S up to phase.
        let word = clifford_word(site);
        let mut s = self.clone();
        for gate in word {
            s = match gate {
                Gate::H => s.apply_hadamard(q),
                Gate::S => s.apply_phase_gate(q),
            }?;
        }
        Ok(s)
    }

    pub fn apply_hadamard(&self, q: usize) -> Result<ExactState> {
        check_cap("qubit index", q + 1, self.n)?;
        let bit = 1 << (self.n - 1 - q);
        let mut amps = self.amps.clone();
        for j in 0..self.amps.len() {
            if j & bit == 0 {
                let (a0, a1) = (&self.amps[j], &self.amps[j | bit]);
                amps[j] = a0 + a1;
                amps[j | bit] = a0 - a1;
            }
        }
        let mut s = ExactState {
            n: self.n,
            amps,
            sqrt2_exp: self.sqrt2_exp + 1,
        };
        s.canonicalize();
        Ok(s)
    }

    /// `S = diag(1, i)` on qubit `q`.
    pub fn apply_phase_gate(&self, q: usize) -> Result<ExactState> {
        check_cap("qubit index", q + 1, self.n)?;
        let bit = 1 << (self.n - 1 - q);
        let mut s = self.clone();
        for (j, a) in s.amps.iter_mut().enumerate() {
            if j & bit != 0 {
                *a = a.mul_i_pow(1);
            }
        }
        Ok(s)
    }

    /// `⟨self|other⟩` scaled by `√2^(e₁+e₂)`, i.e. on raw amplitudes.
    fn raw_inner(&self, other: &Self) -> ExactScalar {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(ExactScalar::zero(), |acc, (a, b)| &acc + &(&a.conj() * b))
    }

    /// Real part of `⟨self|P|self⟩`.
    pub fn expectation(&self, p: &PauliElement) -> Result<BigRational> {
        let moved = self.apply_pauli(p)?;
        let raw = self.raw_inner(&moved);
        Ok(raw.re() / BigRational::from_integer(BigInt::one() << self.sqrt2_exp as usize))
    }

    /// Equal up to a global phase (Cauchy–Schwarz equality).
    pub fn same_ray(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let raw = self.raw_inner(other).norm_sqr();
        let scale =
            BigRational::from_integer(BigInt::one() << (self.sqrt2_exp + other.sqrt2_exp) as usize);
        raw / scale == self.norm_sqr() * other.norm_sqr()
    }

    /// Rescales to unit norm with the first nonzero amplitude real positive.
    /// Requires the squared norm after phase fixing to be a power of two.
    pub fn normalized(&self) -> Result<ExactState> {
        let first = self
            .amps
            .iter()
            .find(|a| !a.is_zero())
            .ok_or_else(|| Error::InvalidGroup("cannot normalise the zero vector".into()))?;
        let phased = self.scale(&first.conj());
        let norm = phased.norm_sqr();
        let t = power_of_two_exponent(&norm).ok_or_else(|| {
            Error::InvalidGroup(format!("squared norm {norm} is not a power of two"))
        })?;
        // divide by sqrt(2^t)
        let mut s = if t % 2 == 0 {
            ExactState {
                sqrt2_exp: phased.sqrt2_exp,
                ..phased.scale(&ExactScalar::one().scale_pow2(-t / 2))
            }
        } else {
            let mut s = phased.scale(&ExactScalar::one().scale_pow2(-(t - 1) / 2));
            s.sqrt2_exp += 1;
            s
        };
        s.canonicalize();
        Ok(s)
    }
}

fn power_of_two_exponent(r: &BigRational) -> Option<i64> {
    let is_pow2 = |x: &BigInt| x > &BigInt::zero() && (x & (x - BigInt::one())).is_zero();
    if !is_pow2(r.numer()) || !is_pow2(r.denom()) {
        return None;
    }
    Some(r.numer().bits() as i64 - r.denom().bits() as i64)
}

#[derive(Debug, Clone, Copy)]
enum Gate {
    H,
    S,
}

/// Shortest H/S word whose conjugation action matches `site`, found by BFS.
fn clifford_word(site: &SiteClifford) -> Vec<Gate> {
    use std::collections::{HashMap, VecDeque};
    let compose = |c: &SiteClifford, g: Gate| -> SiteClifford {
        // applying gate g after c: P ↦ g (c P c†) g†
        let gc = match g {
            Gate::H => SiteClifford::hadamard(),
            Gate::S => SiteClifford::phase_gate(),
        };
        let map = |img: crate::graphstate::SignedLetter| {
            let im = gc.image(img.letter);
            crate::graphstate::SignedLetter {
                phase: (img.phase + im.phase) % 4,
                letter: im.letter,
            }
        };
        SiteClifford::new(map(c.x_image()), map(c.z_image())).expect("composition of Cliffords")
    };
    let start = SiteClifford::identity();
    let mut prev: HashMap<SiteClifford, (SiteClifford, Gate)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    let mut seen = std::collections::HashSet::from([start]);
    while let Some(c) = queue.pop_front() {
        if c == *site {
            break;
        }
        for g in [Gate::H, Gate::S] {
            let d = compose(&c, g);
            if seen.insert(d) {
                prev.insert(d, (c, g));
                queue.push_back(d);
            }
        }
    }
    let mut word = Vec::new();
    let mut cur = *site;
    while cur != start {
        let (p, g) = prev[&cur];
        word.push(g);
        cur = p;
    }
    word.reverse();
    word
}

impl fmt::Display for ExactState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, a) in self.amps.iter().enumerate() {
            if !a.is_zero() {
                terms.push(format!("{a}|{j:0w$b}>", w = self.n));
            }
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        if self.sqrt2_exp == 1 {
            write!(f, "({})/sqrt2", terms.join(" + "))
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for ExactState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Trace of `∏ (I + Pᵢ)/2` over the generators, summed over basis states.
pub fn projector_trace(s: &StabiliserGroup) -> Result<BigInt> {
    check_cap("qubit count", s.num_qubits(), MAX_STATE_QUBITS)?;
    let n = s.num_qubits();
    let mut total = BigRational::zero();
    for b in 0..1usize << n {
        let mut v = ExactState::basis(n, b);
        for g in s.generators() {
            v = v.project(g)?;
        }
        let diag = &v.amps[b];
        total += diag.re() / BigRational::from_integer(BigInt::one() << v.sqrt2_exp as usize);
    }
    if !total.is_integer() {
        return Err(Error::InvalidGroup(format!(
            "projector trace {total} is not an integer"
        )));
    }
    Ok(total.to_integer())
}

/// The unique state fixed by a maximal stabiliser group.
pub fn stabiliser_state(s: &StabiliserGroup) -> Result<ExactState> {
    check_cap("qubit count", s.num_qubits(), MAX_STATE_QUBITS)?;
    if !s.is_maximal() {
        return Err(Error::NotMaximal {
            rank: s.rank(),
            n: s.num_qubits(),
        });
    }
    let n = s.num_qubits();
    for b in 0..1usize << n {
        let mut v = ExactState::basis(n, b);
        for g in s.generators() {
            v = v.project(g)?;
        }
        if !v.is_zero() {
            return v.normalized();
        }
    }
    unreachable!("a maximal stabiliser group fixes a nonzero vector")
}
