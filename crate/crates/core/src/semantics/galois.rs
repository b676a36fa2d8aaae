use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::basis_action;
use super::scalar::ExactScalar;
use super::state::ExactState;
use crate::error::{check_cap, Error, Result};
use crate::pauli::{PauliElement, PauliLetter};

pub const MAX_GALOIS_QUBITS: usize = 4;

type C = Complex<BigRational>;

fn i_pow(k: u8) -> C {
    let (o, z) = (BigRational::one(), BigRational::zero());
    match k % 4 {
        0 => C::new(o, z),
        1 => C::new(z, o),
        2 => C::new(-o, z),
        _ => C::new(z, -o),
    }
}

fn apply(p: &PauliElement, v: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); v.len()];
    for (b, a) in v.iter().enumerate() {
        if !a.is_zero() {
            let (k, t) = basis_action(p, b);
            out[t] = a * i_pow(k);
        }
    }
    out
}

/// Row reduction in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<C>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = C::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `(ℂ²)^⊗n` over the Gaussian rationals, stored as its
/// reduced row-echelon basis, so equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vec<C>>,
}

impl Subspace {
    pub fn span(n: usize, vectors: Vec<Vec<C>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != 1 << n) {
            return Err(Error::LengthMismatch {
                left: 1 << n,
                right: v.len(),
            });
        }
        let mut basis = vectors;
        rref(&mut basis);
        Ok(Subspace { n, basis })
    }

    pub fn zero(n: usize) -> Self {
        Subspace {
            n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        let basis = (0..1 << n)
            .map(|i| {
                (0..1 << n)
                    .map(|j| if i == j { C::one() } else { C::zero() })
                    .collect()
            })
            .collect();
        Subspace { n, basis }
    }

    pub fn of_states(n: usize, states: &[ExactState]) -> Result<Self> {
        Self::span(n, states.iter().map(state_vector).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<C>] {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[C]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(&mut rows).len() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn is_fixed_by(&self, p: &PauliElement) -> bool {
        self.basis.iter().all(|v| apply(p, v) == *v)
    }
}

/// Raw amplitudes of a state as Gaussian rationals, dropping the `√2` factor
/// (it does not change the ray).
fn state_vector(s: &ExactState) -> Vec<C> {
    s.amplitudes()
        .iter()
        .map(|a: &ExactScalar| C::new(a.re(), a.im()))
        .collect()
}

/// The common `+1` eigenspace of `elems` (`S^⊥`), as the kernel of the
/// stacked `P − I` blocks.
pub fn stabilised_subspace(n: usize, elems: &[PauliElement]) -> Result<Subspace> {
    check_cap("qubit count", n, MAX_GALOIS_QUBITS)?;
    let dim = 1usize << n;
    let mut rows: Vec<Vec<C>> = Vec::new();
    for p in elems {
        if p.num_qubits() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: p.num_qubits(),
            });
        }
        if rows.len() == dim || (p.is_identity_word() && p.phase_exp() == 0) {
            continue;
        }
        // (P − I) column b is P e_b − e_b; build it row-wise.
        let mut block = vec![vec![C::zero(); dim]; dim];
        for b in 0..dim {
            let (k, t) = basis_action(p, b);
            block[t][b] = &block[t][b] + i_pow(k);
            block[b][b] = &block[b][b] - C::one();
        }
        rows.extend(block);
        rref(&mut rows);
    }
    let pivots = if rows.is_empty() {
        Vec::new()
    } else {
        rref(&mut rows)
    };
    let kernel = (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![C::zero(); dim];
            v[free] = C::one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect();
    Subspace::span(n, kernel)
}

/// Every element of `Pₙ` (all four phases) fixing `v` pointwise (`V^⊥`),
/// sorted by word then phase.
pub fn isotropy_group(v: &Subspace) -> Result<Vec<PauliElement>> {
    let n = v.num_qubits();
    check_cap("qubit count", n, MAX_GALOIS_QUBITS)?;
    let letters = [
        PauliLetter::I,
        PauliLetter::X,
        PauliLetter::Y,
        PauliLetter::Z,
    ];
    let mut out = Vec::new();
    for w in 0..1usize << (2 * n) {
        let word: Vec<PauliLetter> = (0..n)
            .map(|q| letters[(w >> (2 * (n - 1 - q))) & 3])
            .collect();
        for phase in 0..4 {
            let p = PauliElement::new(phase, &word);
            if v.is_fixed_by(&p) {
                out.push(p);
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::StabiliserGroup;

    fn p(s: &str) -> PauliElement {
        s.parse().unwrap()
    }

    #[test]
    fn plus_state() {
        let v = stabilised_subspace(1, &[p("X")]).unwrap();
        assert_eq!(v.dim(), 1);
        let plus = ExactState::basis(1, 0).apply_hadamard(0).unwrap();
        assert_eq!(v, Subspace::of_states(1, &[plus]).unwrap());
        assert_eq!(isotropy_group(&v).unwrap(), vec![p("I"), p("X")]);
    }

    #[test]
    fn minus_identity() {
        let v = stabilised_subspace(2, &[p("-II")]).unwrap();
        assert_eq!(v, Subspace::zero(2));
        assert_eq!(isotropy_group(&v).unwrap().len(), 64);
        assert_eq!(stabilised_subspace(2, &[]).unwrap(), Subspace::full(2));
    }

    #[test]
    fn ghz_closure() {
        let s = StabiliserGroup::parse("XXX,ZZI,IZZ").unwrap();
        let mut elems = s.elements().unwrap();
        elems.sort();
        let v = stabilised_subspace(3, s.generators()).unwrap();
        assert_eq!(v, Subspace::of_states(3, &[ExactState::ghz(3)]).unwrap());
        assert_eq!(isotropy_group(&v).unwrap(), elems);
    }

    #[test]
    fn containment() {
        let z = stabilised_subspace(2, &[p("ZI")]).unwrap();
        let zz = stabilised_subspace(2, &[p("ZI"), p("IZ")]).unwrap();
        assert_eq!(z.dim(), 2);
        assert!(z.contains(&zz));
        assert!(!zz.contains(&z));
    }
}
