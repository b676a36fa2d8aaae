//! Exact Pauli n-group algebra.
//!
//! An element is stored as a phase exponent in Z₄ (global phase `i^phase`)
//! together with the x/z bit planes of its letters, packed 64 qubits per word.
//! Letter encoding per qubit is the check-vector encoding
//! `I=(0,0) X=(1,0) Y=(1,1) Z=(0,1)`, and the letter `Y` denotes the actual
//! Pauli matrix Y (not `XZ`).

mod gf2;

pub use gf2::{gf2_solve, BitRow, Gf2Eliminator, Gf2Solution, Gf2System, Outcome};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [
        PauliLetter::I,
        PauliLetter::X,
        PauliLetter::Y,
        PauliLetter::Z,
    ];
    pub const NON_IDENTITY: [PauliLetter; 3] = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    /// `(x, z)` bits of the check-vector encoding.
    #[inline]
    pub fn xz(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }

    #[inline]
    pub fn from_xz(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    /// Index 0..4 in the order I, X, Y, Z.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        Self::ALL[i & 3]
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    /// Single-qubit product `self · other = i^k · letter`.
    pub fn mul(self, other: PauliLetter) -> (u8, PauliLetter) {
        use PauliLetter::*;
        let letter = PauliLetter::from_index(self.index() ^ other.index());
        let k = match (self, other) {
            (X, Y) | (Y, Z) | (Z, X) => 1,
            (Y, X) | (Z, Y) | (X, Z) => 3,
            _ => 0,
        };
        (k, letter)
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The element `i^phase · (P₁ ⊗ … ⊗ Pₙ)` of the Pauli n-group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliElement {
    n: usize,
    phase: u8,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliElement {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliElement {
            n,
            phase: 0,
            x: vec![0; w],
            z: vec![0; w],
        }
    }

    pub fn new(phase_exp: u8, letters: &[PauliLetter]) -> Self {
        let mut p = Self::identity(letters.len());
        p.phase = phase_exp & 3;
        for (i, &l) in letters.iter().enumerate() {
            p.set_letter(i, l);
        }
        p
    }

    /// Phase-free (+1) element from letters.
    pub fn from_letters(letters: &[PauliLetter]) -> Self {
        Self::new(0, letters)
    }

    /// Single-letter element on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, letter: PauliLetter) -> Self {
        let mut p = Self::identity(n);
        p.set_letter(q, letter);
        p
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    /// True iff the global phase is ±1.
    #[inline]
    pub fn has_real_phase(&self) -> bool {
        self.phase & 1 == 0
    }

    /// Sign bit `a` of a real-phase element `(-1)^a`.
    #[inline]
    pub fn sign_bit(&self) -> bool {
        self.phase == 2
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase = phase_exp & 3;
        self
    }

    pub fn negate(&self) -> Self {
        self.clone().with_phase(self.phase + 2)
    }

    #[inline]
    pub fn letter(&self, i: usize) -> PauliLetter {
        let (w, b) = (i / 64, i % 64);
        PauliLetter::from_xz((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set_letter(&mut self, i: usize, l: PauliLetter) {
        assert!(i < self.n, "qubit {i} out of range for {} qubits", self.n);
        let (w, b) = (i / 64, i % 64);
        let (x, z) = l.xz();
        self.x[w] = (self.x[w] & !(1 << b)) | ((x as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((z as u64) << b);
    }

    pub fn letters(&self) -> impl Iterator<Item = PauliLetter> + '_ {
        (0..self.n).map(move |i| self.letter(i))
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// Letters only, phase dropped.
    pub fn word(&self) -> Self {
        self.clone().with_phase(0)
    }

    pub fn is_identity_word(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut plus = 0u32;
        let mut minus = 0u32;
        let w = self.x.len();
        let mut x = Vec::with_capacity(w);
        let mut z = Vec::with_capacity(w);
        for k in 0..w {
            let (x1, z1, x2, z2) = (self.x[k], self.z[k], other.x[k], other.z[k]);
            let lx = x1 & !z1;
            let ly = x1 & z1;
            let lz = !x1 & z1;
            // XY, YZ, ZX give +i; YX, ZY, XZ give -i
            plus += ((lx & x2 & z2) | (ly & !x2 & z2) | (lz & x2 & !z2)).count_ones();
            minus += ((lx & !x2 & z2) | (ly & x2 & !z2) | (lz & x2 & z2)).count_ones();
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        let phase = (self.phase as u32 + other.phase as u32 + plus + 3 * minus) % 4;
        PauliElement {
            n: self.n,
            phase: phase as u8,
            x,
            z,
        }
    }

    /// Number of positions where both letters are non-identity and differ.
    pub fn anticommuting_positions(&self, other: &Self) -> Result<usize> {
        self.check_len(other)?;
        Ok(self
            .x
            .iter()
            .zip(&self.z)
            .zip(other.x.iter().zip(&other.z))
            .map(|((x1, z1), (x2, z2))| {
                let a = x1 | z1;
                let b = x2 | z2;
                let differ = (x1 ^ x2) | (z1 ^ z2);
                (a & b & differ).count_ones() as usize
            })
            .sum())
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        Ok(self.anticommuting_positions(other)? % 2 == 0)
    }

    pub fn to_check_vector(&self) -> CheckVector {
        CheckVector {
            n: self.n,
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    pub fn from_check_vector(r: &CheckVector, phase_exp: u8) -> Self {
        PauliElement {
            n: r.n,
            phase: phase_exp & 3,
            x: r.x.clone(),
            z: r.z.clone(),
        }
    }

    /// Restriction to the given qubit positions, keeping the phase.
    pub fn restrict(&self, qubits: &[usize]) -> Self {
        let letters: Vec<_> = qubits.iter().map(|&q| self.letter(q)).collect();
        Self::new(self.phase, &letters)
    }

    /// Word comparison under I < X < Y < Z, ignoring phase.
    pub fn cmp_word(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl Ord for PauliElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_word(other).then(self.phase.cmp(&other.phase))
    }
}

impl PartialOrd for PauliElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// Accepts an optional phase prefix `+`, `-`, `i`, `+i`, `-i` followed by
/// letters in either case. A bare leading `i` is a phase only when followed
/// by an uppercase letter, otherwise it is read as the identity letter.
impl FromStr for PauliElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if s.starts_with('i') && s[1..].starts_with(|c: char| c.is_ascii_uppercase()) {
            (1, &s[1..])
        } else {
            (0, s)
        };
        if rest.is_empty() {
            return Err(Error::Parse(format!("empty Pauli word in {s:?}")));
        }
        let letters = rest
            .chars()
            .map(|c| {
                PauliLetter::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("bad Pauli letter {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliElement::new(phase, &letters))
    }
}

/// Symplectic `(x ‖ z)` encoding of a Pauli word, phase discarded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CheckVector {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl CheckVector {
    pub fn zero(n: usize) -> Self {
        let w = words_for(n);
        CheckVector {
            n,
            x: vec![0; w],
            z: vec![0; w],
        }
    }

    pub fn from_bits(x: &[bool], z: &[bool]) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        let mut r = Self::zero(x.len());
        for i in 0..x.len() {
            r.x[i / 64] |= (x[i] as u64) << (i % 64);
            r.z[i / 64] |= (z[i] as u64) << (i % 64);
        }
        Ok(r)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bit(&self, i: usize) -> bool {
        (self.x[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn z_bit(&self, i: usize) -> bool {
        (self.z[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// The 2n-bit row `(x₁…xₙ z₁…zₙ)` as a GF(2) row.
    pub fn to_row(&self) -> BitRow {
        let mut row = BitRow::zero(2 * self.n);
        for i in 0..self.n {
            if self.x_bit(i) {
                row.set(i, true);
            }
            if self.z_bit(i) {
                row.set(self.n + i, true);
            }
        }
        row
    }

    pub fn xor(&self, other: &Self) -> Self {
        CheckVector {
            n: self.n,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
        }
    }

    /// `Σᵢ xᵢz′ᵢ ⊕ x′ᵢzᵢ (mod 2)`; false iff the underlying elements commute.
    pub fn symplectic_product(&self, other: &Self) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let ones: u32 = (0..self.x.len())
            .map(|k| ((self.x[k] & other.z[k]) ^ (other.x[k] & self.z[k])).count_ones())
            .sum();
        Ok(ones % 2 == 1)
    }
}

pub fn symplectic_product(r: &CheckVector, s: &CheckVector) -> Result<bool> {
    r.symplectic_product(s)
}

/// Parses a comma-separated list of signed Pauli words, e.g. `"XXX,ZZI,-IZZ"`.
pub fn parse_pauli_list(s: &str) -> Result<Vec<PauliElement>> {
    let items: Vec<PauliElement> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    if let Some(first) = items.first() {
        for p in &items {
            if p.num_qubits() != first.num_qubits() {
                return Err(Error::LengthMismatch {
                    left: first.num_qubits(),
                    right: p.num_qubits(),
                });
            }
        }
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = (i64, i64);

    // 2x2 Gaussian-integer matrices, used as an independent oracle.
    type M = [[C; 2]; 2];

    fn cmul(a: C, b: C) -> C {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }

    fn cadd(a: C, b: C) -> C {
        (a.0 + b.0, a.1 + b.1)
    }

    fn mat(l: PauliLetter) -> M {
        match l {
            PauliLetter::I => [[(1, 0), (0, 0)], [(0, 0), (1, 0)]],
            PauliLetter::X => [[(0, 0), (1, 0)], [(1, 0), (0, 0)]],
            PauliLetter::Y => [[(0, 0), (0, -1)], [(0, 1), (0, 0)]],
            PauliLetter::Z => [[(1, 0), (0, 0)], [(0, 0), (-1, 0)]],
        }
    }

    fn mmul(a: &M, b: &M) -> M {
        let mut r = [[(0, 0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    r[i][j] = cadd(r[i][j], cmul(a[i][k], b[k][j]));
                }
            }
        }
        r
    }

    fn scale(m: &M, s: C) -> M {
        let mut r = *m;
        for row in r.iter_mut() {
            for c in row.iter_mut() {
                *c = cmul(*c, s);
            }
        }
        r
    }

    fn ipow(k: u8) -> C {
        [(1, 0), (0, 1), (-1, 0), (0, -1)][k as usize % 4]
    }

    /// Matrix-oracle product of two single-qubit letters, as `(phase, letter)`.
    fn oracle_mul(a: PauliLetter, b: PauliLetter) -> (u8, PauliLetter) {
        let prod = mmul(&mat(a), &mat(b));
        for l in PauliLetter::ALL {
            for k in 0..4 {
                if scale(&mat(l), ipow(k)) == prod {
                    return (k, l);
                }
            }
        }
        unreachable!()
    }

    fn p(s: &str) -> PauliElement {
        s.parse().unwrap()
    }

    #[test]
    fn xy_is_iz() {
        assert_eq!(p("X").mul(&p("Y")).unwrap(), p("+iZ"));
    }

    #[test]
    fn identity_is_neutral() {
        let id = PauliElement::identity(4);
        for s in ["XYZI", "-ZZZZ", "+iYIXI", "-iIIII"] {
            assert_eq!(id.mul(&p(s)).unwrap(), p(s));
            assert_eq!(p(s).mul(&id).unwrap(), p(s));
        }
    }

    #[test]
    fn yz_times_zx_matches_matrix_oracle() {
        let (k1, l1) = oracle_mul(PauliLetter::Y, PauliLetter::Z);
        let (k2, l2) = oracle_mul(PauliLetter::Z, PauliLetter::X);
        let expected = PauliElement::new(k1 + k2, &[l1, l2]);
        assert_eq!(expected, p("-XY"));
        assert_eq!(p("YZ").mul(&p("ZX")).unwrap(), expected);
    }

    #[test]
    fn single_qubit_table_matches_oracle() {
        for a in PauliLetter::ALL {
            for b in PauliLetter::ALL {
                assert_eq!(a.mul(b), oracle_mul(a, b), "{a}{b}");
                let (k, l) = oracle_mul(a, b);
                assert_eq!(
                    PauliElement::from_letters(&[a])
                        .mul(&PauliElement::from_letters(&[b]))
                        .unwrap(),
                    PauliElement::new(k, &[l])
                );
            }
        }
    }

    #[test]
    fn p1_is_closed_group_of_order_16() {
        let all: Vec<PauliElement> = (0..4)
            .flat_map(|k| PauliLetter::ALL.map(|l| PauliElement::new(k, &[l])))
            .collect();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 16);
        for a in &all {
            let mut has_inverse = false;
            for b in &all {
                let ab = a.mul(b).unwrap();
                assert!(set.contains(&ab));
                has_inverse |= ab == PauliElement::identity(1);
                // oracle agreement including phases
                let m = mmul(
                    &scale(&mat(a.letter(0)), ipow(a.phase_exp())),
                    &scale(&mat(b.letter(0)), ipow(b.phase_exp())),
                );
                assert_eq!(m, scale(&mat(ab.letter(0)), ipow(ab.phase_exp())));
            }
            assert!(has_inverse);
        }
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        let a = p("XYZ");
        assert!(a.commutes(&a).unwrap());
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn length_mismatch_rejected() {
        assert_eq!(
            p("XY").mul(&p("X")),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn check_vector_encoding() {
        let r = p("Y").to_check_vector();
        assert!(r.x_bit(0) && r.z_bit(0));
        assert!(p("IIII").to_check_vector().is_zero());
        let r = p("-XZIY").to_check_vector();
        assert_eq!(PauliElement::from_check_vector(&r, 2), p("-XZIY"));
    }

    #[test]
    fn symplectic_examples() {
        let x = p("X").to_check_vector();
        let z = p("Z").to_check_vector();
        assert!(symplectic_product(&x, &z).unwrap());
        assert!(!symplectic_product(&x, &x).unwrap());
        assert!(
            !symplectic_product(&p("XX").to_check_vector(), &p("ZZ").to_check_vector()).unwrap()
        );
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("-xyy").to_string(), "-XYY");
        assert_eq!(p("iXX").phase_exp(), 1);
        assert_eq!(p("ixx").phase_exp(), 0);
        assert_eq!(p("ixx").to_string(), "IXX");
        assert_eq!(p("-iZ").to_string(), "-iZ");
        assert!("".parse::<PauliElement>().is_err());
        assert!("XQ".parse::<PauliElement>().is_err());
        assert_eq!(parse_pauli_list("XXX, ZZI,IZZ").unwrap().len(), 3);
        assert!(parse_pauli_list("XX,Z").is_err());
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![p("Z"), p("-X"), p("I"), p("X"), p("Y")];
        v.sort();
        let s: Vec<String> = v.iter().map(|e| e.to_string()).collect();
        assert_eq!(s, ["I", "X", "-X", "Y", "Z"]);
    }

    #[test]
    fn wide_elements_span_words() {
        let mut a = PauliElement::identity(130);
        a.set_letter(0, PauliLetter::X);
        a.set_letter(129, PauliLetter::Y);
        let mut b = PauliElement::identity(130);
        b.set_letter(129, PauliLetter::Z);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.phase_exp(), 1);
        assert_eq!(ab.letter(129), PauliLetter::X);
        assert!(!a.commutes(&b).unwrap());
    }
}
