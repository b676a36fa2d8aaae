//! Stabiliser subgroups of the Pauli group and their XOR theories.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{check_cap, Error, Result};
use crate::pauli::{
    parse_pauli_list, BitRow, Gf2Eliminator, Gf2System, Outcome, PauliElement, PauliLetter,
};
use crate::triples::{AvnTriple, PackedTriple, PackedWord};

/// Default cap on the number of generators for full-group scans.
pub const DEFAULT_ELEMENT_CAP: usize = 24;
/// Default cap on the number of generators for the triple search.
pub const DEFAULT_TRIPLE_CAP: usize = 12;

/// A stabiliser group given by independent, pairwise commuting generators
/// with real phases.
///
/// Independence already excludes `-I`: the only generator subset whose
/// product has the all-identity word is the empty one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabiliserGroup {
    n: usize,
    generators: Vec<PauliElement>,
}

impl StabiliserGroup {
    pub fn new(n: usize, generators: Vec<PauliElement>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.num_qubits() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: g.num_qubits(),
                });
            }
            if !g.has_real_phase() {
                return Err(Error::InvalidGroup(format!(
                    "generator {i} ({g}) has an imaginary phase"
                )));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                let (a, b) = (
                    generators[i].to_check_vector(),
                    generators[j].to_check_vector(),
                );
                if a.symplectic_product(&b)? {
                    return Err(Error::InvalidGroup(format!(
                        "generators {} and {} anticommute",
                        generators[i], generators[j]
                    )));
                }
            }
        }
        let mut elim = Gf2Eliminator::new(2 * n);
        for g in &generators {
            if elim.push(g.to_check_vector().to_row(), false) != Outcome::NewPivot {
                return Err(Error::InvalidGroup(format!(
                    "generator {g} is dependent on the previous ones (or the group contains -I)"
                )));
            }
        }
        Ok(StabiliserGroup { n, generators })
    }

    /// Parses the comma-separated generator format, e.g. `"XXX,ZZI,IZZ"`.
    pub fn parse(s: &str) -> Result<Self> {
        let gens = parse_pauli_list(s)?;
        let n = gens
            .first()
            .map(PauliElement::num_qubits)
            .ok_or_else(|| Error::Parse("empty generator list".into()))?;
        Self::new(n, gens)
    }

    pub fn empty(n: usize) -> Self {
        StabiliserGroup {
            n,
            generators: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliElement] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_maximal(&self) -> bool {
        self.rank() == self.n
    }

    /// Product of the generators selected by `mask` (bit `i` selects generator `i`).
    pub fn element(&self, mask: u64) -> PauliElement {
        let mut acc = PauliElement::identity(self.n);
        for (i, g) in self.generators.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                acc = acc.mul_unchecked(g);
            }
        }
        acc
    }

    /// All `2^k` elements, indexed by generator-subset mask (identity first).
    pub fn elements(&self) -> Result<Vec<PauliElement>> {
        self.elements_capped(DEFAULT_ELEMENT_CAP)
    }

    pub fn elements_capped(&self, cap: usize) -> Result<Vec<PauliElement>> {
        check_cap("generator count", self.rank(), cap)?;
        let total = 1usize << self.rank();
        let mut out: Vec<PauliElement> = Vec::with_capacity(total);
        out.push(PauliElement::identity(self.n));
        for m in 1..total {
            let low = m.trailing_zeros() as usize;
            let next = out[m & (m - 1)].mul_unchecked(&self.generators[low]);
            out.push(next);
        }
        Ok(out)
    }

    /// Visits every element in Gray-code order without materialising the group.
    pub fn for_each_element(
        &self,
        cap: usize,
        mut f: impl FnMut(u64, &PauliElement),
    ) -> Result<()> {
        check_cap("generator count", self.rank(), cap)?;
        let mut cur = PauliElement::identity(self.n);
        let mut mask = 0u64;
        f(mask, &cur);
        for step in 1u64..(1u64 << self.rank()) {
            let bit = step.trailing_zeros() as usize;
            mask ^= 1 << bit;
            cur = cur.mul_unchecked(&self.generators[bit]);
            f(mask, &cur);
        }
        Ok(())
    }

    /// Whether `p` (with its phase) is a member of the group.
    pub fn contains(&self, p: &PauliElement) -> Result<bool> {
        if p.num_qubits() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: p.num_qubits(),
            });
        }
        // Express the word in the generator basis, then compare phases.
        let k = self.rank();
        let mut sys = Gf2System::new(k);
        let target = p.to_check_vector().to_row();
        let cols: Vec<BitRow> = self
            .generators
            .iter()
            .map(|g| g.to_check_vector().to_row())
            .collect();
        for bit in 0..2 * self.n {
            sys.push((0..k).filter(|&j| cols[j].get(bit)), target.get(bit));
        }
        match crate::pauli::gf2_solve(&sys) {
            crate::pauli::Gf2Solution::Inconsistent(_) => Ok(false),
            crate::pauli::Gf2Solution::Consistent(sel) => {
                let mask = sel
                    .iter()
                    .enumerate()
                    .fold(0u64, |m, (i, &b)| m | ((b as u64) << i));
                Ok(self.element(mask) == *p)
            }
        }
    }

    /// Same set of elements, possibly with different generators.
    pub fn same_group(&self, other: &StabiliserGroup) -> Result<bool> {
        if self.n != other.n || self.rank() != other.rank() {
            return Ok(false);
        }
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `2^(n-k)`.
    pub fn stabiliser_dimension(&self) -> BigUint {
        BigUint::one() << (self.n - self.rank())
    }

    pub fn xor_theory(&self) -> Result<XorTheory> {
        let mut equations = Vec::new();
        self.for_each_element(DEFAULT_ELEMENT_CAP, |mask, p| {
            if mask != 0 {
                equations.push(XorEquation::of_element(p));
            }
        })?;
        Ok(XorTheory {
            num_qubits: self.n,
            equations,
        })
    }

    /// Theory of the generators alone.
    pub fn generator_theory(&self) -> XorTheory {
        XorTheory {
            num_qubits: self.n,
            equations: self
                .generators
                .iter()
                .map(XorEquation::of_element)
                .collect(),
        }
    }

    /// Decides whether the XOR theory of the full group is inconsistent.
    pub fn is_avn(&self) -> Result<AvnDecision> {
        self.is_avn_capped(DEFAULT_ELEMENT_CAP)
    }

    pub fn is_avn_capped(&self, cap: usize) -> Result<AvnDecision> {
        let nv = 3 * self.n;
        let mut elim = Gf2Eliminator::new(nv);
        let mut masks: Vec<u64> = Vec::new();
        let mut found: Option<Vec<usize>> = None;
        self.for_each_element(cap, |mask, p| {
            if mask == 0 || found.is_some() {
                return;
            }
            let eq = XorEquation::of_element(p);
            masks.push(mask);
            if let Outcome::Contradiction(c) = elim.push(eq.row(nv), eq.rhs) {
                found = Some(c);
            }
        })?;
        match found {
            None => Ok(AvnDecision::No(elim.solution())),
            Some(idx) => {
                let mut cert: Vec<PauliElement> =
                    idx.iter().map(|&i| self.element(masks[i])).collect();
                cert.sort();
                let theory = XorTheory {
                    num_qubits: self.n,
                    equations: cert.iter().map(XorEquation::of_element).collect(),
                };
                assert!(
                    theory.is_refutation(),
                    "elimination produced an unsound certificate"
                );
                Ok(AvnDecision::Yes(cert))
            }
        }
    }

    /// First AvN triple `(i < j < l)` in generator-subset mask order, if any.
    pub fn find_avn_triple(&self) -> Result<Option<AvnTriple>> {
        self.find_avn_triple_capped(DEFAULT_TRIPLE_CAP)
    }

    pub fn find_avn_triple_capped(&self, cap: usize) -> Result<Option<AvnTriple>> {
        check_cap("generator count", self.rank(), cap)?;
        check_cap("qubit count for triple search", self.n, 64)?;
        let elems = self.elements_capped(cap)?;
        let packed: Vec<PackedWord> = elems.iter().map(PackedWord::from_element).collect();
        let found = (0..elems.len()).into_par_iter().find_map_first(|i| {
            for j in i + 1..elems.len() {
                for l in j + 1..elems.len() {
                    let t = PackedTriple {
                        e: packed[i],
                        f: packed[j],
                        g: packed[l],
                    };
                    if t.is_avn() {
                        return Some((i, j, l));
                    }
                }
            }
            None
        });
        Ok(found.map(|(i, j, l)| {
            AvnTriple::new(elems[i].clone(), elems[j].clone(), elems[l].clone())
                .expect("group elements share length and real phases")
        }))
    }
}

impl fmt::Display for StabiliserGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AvnDecision {
    /// Consistent theory, with a satisfying assignment over the `3n` variables.
    No(Vec<bool>),
    /// Elements whose equations sum to `0 = 1`, sorted canonically.
    Yes(Vec<PauliElement>),
}

impl AvnDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, AvnDecision::Yes(_))
    }
}

/// Variable id of the measurement of `letter` on `qubit`: `3·qubit + (X=0, Y=1, Z=2)`.
pub fn variable_id(qubit: usize, letter: PauliLetter) -> usize {
    debug_assert!(letter != PauliLetter::I);
    3 * qubit + letter.index() - 1
}

/// Default variable name, e.g. `x1`, `y2`, `z3` (qubits are 1-based).
pub fn variable_name(id: usize) -> String {
    format!("{}{}", ['x', 'y', 'z'][id % 3], id / 3 + 1)
}

/// A parity equation `⊕ vars = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XorEquation {
    /// Sorted variable ids.
    pub support: Vec<usize>,
    pub rhs: bool,
}

impl XorEquation {
    pub fn new(mut support: Vec<usize>, rhs: bool) -> Self {
        support.sort_unstable();
        support.dedup();
        XorEquation { support, rhs }
    }

    /// The equation `φ_P` of a real-phase element.
    pub fn of_element(p: &PauliElement) -> Self {
        debug_assert!(p.has_real_phase());
        let support = p
            .letters()
            .enumerate()
            .filter(|(_, l)| *l != PauliLetter::I)
            .map(|(q, l)| variable_id(q, l))
            .collect();
        XorEquation {
            support,
            rhs: p.sign_bit(),
        }
    }

    pub fn row(&self, num_vars: usize) -> BitRow {
        BitRow::from_indices(num_vars, self.support.iter().copied())
    }

    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        let lhs = if self.support.is_empty() {
            "0".to_string()
        } else {
            self.support
                .iter()
                .map(|&v| name(v))
                .collect::<Vec<_>>()
                .join("+")
        };
        format!("{lhs} = {}", self.rhs as u8)
    }
}

impl fmt::Display for XorEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&variable_name))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorTheory {
    pub num_qubits: usize,
    pub equations: Vec<XorEquation>,
}

impl XorTheory {
    pub fn num_vars(&self) -> usize {
        3 * self.num_qubits
    }

    pub fn to_system(&self) -> Gf2System {
        let mut sys = Gf2System::new(self.num_vars());
        for eq in &self.equations {
            sys.push(eq.support.iter().copied(), eq.rhs);
        }
        sys
    }

    pub fn is_consistent(&self) -> bool {
        crate::pauli::gf2_solve(&self.to_system()).is_consistent()
    }

    /// True iff the equations XOR to `0 = 1`.
    pub fn is_refutation(&self) -> bool {
        let sys = self.to_system();
        sys.is_refutation(&(0..sys.rows.len()).collect::<Vec<_>>())
    }

    /// Sum of all equations.
    pub fn sum(&self) -> XorEquation {
        let mut row = BitRow::zero(self.num_vars());
        let mut rhs = false;
        for eq in &self.equations {
            row.xor_assign(&eq.row(self.num_vars()));
            rhs ^= eq.rhs;
        }
        XorEquation::new(row.ones().collect(), rhs)
    }

    pub fn contains(&self, eq: &XorEquation) -> bool {
        self.equations.contains(eq)
    }
}

impl fmt::Display for XorTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            writeln!(f, "{eq}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triples::{is_avn_triple_def2, AvnTriple};

    fn p(s: &str) -> PauliElement {
        s.parse().unwrap()
    }

    fn ghz3() -> StabiliserGroup {
        StabiliserGroup::parse("XXX,ZZI,IZZ").unwrap()
    }

    /// Independent closure oracle: multiply everything until nothing new appears.
    fn closure(gens: &[PauliElement]) -> std::collections::BTreeSet<PauliElement> {
        let n = gens[0].num_qubits();
        let mut set = std::collections::BTreeSet::from([PauliElement::identity(n)]);
        loop {
            let mut added = false;
            let cur: Vec<_> = set.iter().cloned().collect();
            for a in &cur {
                for g in gens {
                    added |= set.insert(a.mul(g).unwrap());
                }
            }
            if !added {
                return set;
            }
        }
    }

    #[test]
    fn ghz_elements() {
        let el = ghz3().elements().unwrap();
        assert_eq!(el.len(), 8);
        assert_eq!(el[0], PauliElement::identity(3));
        assert!(el.contains(&p("-YYX")));
        let set: std::collections::BTreeSet<_> = el.into_iter().collect();
        assert_eq!(set, closure(ghz3().generators()));
    }

    #[test]
    fn trivial_groups() {
        assert_eq!(
            StabiliserGroup::empty(3).elements().unwrap(),
            vec![PauliElement::identity(3)]
        );
        let g = StabiliserGroup::parse("XI,IX").unwrap();
        let mut el = g.elements().unwrap();
        el.sort();
        assert_eq!(el, vec![p("II"), p("IX"), p("XI"), p("XX")]);
    }

    #[test]
    fn invalid_groups_rejected() {
        assert!(matches!(
            StabiliserGroup::parse("XI,ZI"),
            Err(Error::InvalidGroup(_))
        ));
        assert!(matches!(
            StabiliserGroup::parse("XX,XX"),
            Err(Error::InvalidGroup(_))
        ));
        assert!(matches!(
            StabiliserGroup::parse("XX,-XX"),
            Err(Error::InvalidGroup(_))
        ));
        assert!(matches!(
            StabiliserGroup::parse("-II"),
            Err(Error::InvalidGroup(_))
        ));
        assert!(matches!(
            StabiliserGroup::parse("iXX"),
            Err(Error::InvalidGroup(_))
        ));
        assert!(StabiliserGroup::parse("XX,Z").is_err());
    }

    #[test]
    fn element_cap_enforced() {
        let g = StabiliserGroup::parse("XI,IX").unwrap();
        assert!(matches!(g.elements_capped(1), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn xor_theory_equations() {
        let th = ghz3().xor_theory().unwrap();
        assert_eq!(th.equations.len(), 7);
        let xxx = XorEquation::of_element(&p("XXX"));
        assert_eq!(xxx.to_string(), "x1+x2+x3 = 0");
        let yyx = XorEquation::of_element(&p("-YYX"));
        assert_eq!(yyx.to_string(), "y1+y2+x3 = 1");
        assert!(th.contains(&xxx) && th.contains(&yyx));
        assert_eq!(
            XorEquation::of_element(&PauliElement::identity(3)).support,
            Vec::<usize>::new()
        );
    }

    #[test]
    fn ghz_is_avn_with_four_element_certificate() {
        let AvnDecision::Yes(cert) = ghz3().is_avn().unwrap() else {
            panic!("GHZ must be AvN");
        };
        assert_eq!(cert, vec![p("XXX"), p("-XYY"), p("-YXY"), p("-YYX")]);
    }

    #[test]
    fn non_avn_groups() {
        // single-edge graph state
        let edge = StabiliserGroup::parse("XZ,ZX").unwrap();
        let AvnDecision::No(v) = edge.is_avn().unwrap() else {
            panic!()
        };
        assert!(edge.xor_theory().unwrap().to_system().is_satisfied_by(&v));
        assert!(!StabiliserGroup::parse("XX")
            .unwrap()
            .is_avn()
            .unwrap()
            .is_yes());
    }

    #[test]
    fn ghz_triple() {
        let t = ghz3().find_avn_triple().unwrap().unwrap();
        assert!(is_avn_triple_def2(&t.e, &t.f, &t.g).unwrap());
        assert_eq!(t, AvnTriple::parse("XXX", "-YYX", "-XYY").unwrap());
        assert!(StabiliserGroup::parse("XI,IX")
            .unwrap()
            .find_avn_triple()
            .unwrap()
            .is_none());
    }

    #[test]
    fn cluster_triple_is_one_of_the_listed() {
        let s = StabiliserGroup::parse("XZZI,ZXIZ,ZIXZ,IZZX").unwrap();
        let t = s.find_avn_triple().unwrap().unwrap();
        let listed = [
            ["XZZI", "YYZZ", "YZYZ"],
            ["ZXIZ", "YYZZ", "ZYZY"],
            ["ZIXZ", "YZYZ", "ZZYY"],
            ["IZZX", "ZYZY", "ZZYY"],
        ];
        assert_eq!(t, AvnTriple::parse("XZZI", "YYZZ", "YZYZ").unwrap());
        let mut got = [t.e.to_string(), t.f.to_string(), t.g.to_string()];
        got.sort();
        let hit = listed.iter().any(|l| {
            let mut l = l.map(String::from);
            l.sort();
            l == got
        });
        assert!(hit, "{got:?}");
    }

    #[test]
    fn dimensions() {
        assert_eq!(ghz3().stabiliser_dimension(), BigUint::from(1u32));
        assert_eq!(
            StabiliserGroup::empty(3).stabiliser_dimension(),
            BigUint::from(8u32)
        );
        assert_eq!(
            StabiliserGroup::parse("Z").unwrap().stabiliser_dimension(),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn membership() {
        let g = ghz3();
        assert!(g.contains(&p("-YYX")).unwrap());
        assert!(!g.contains(&p("YYX")).unwrap());
        assert!(!g.contains(&p("XII")).unwrap());
        let star = StabiliserGroup::parse("XZZ,ZXI,ZIX").unwrap();
        let other = StabiliserGroup::parse("XZZ,ZXI,IXX").unwrap();
        assert!(star.same_group(&other).unwrap());
        assert!(!star.same_group(&g).unwrap());
    }
}
