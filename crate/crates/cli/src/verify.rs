//! Cross-module invariant suites, shared by `avn verify` and the
//! acceptance tests.

use std::collections::BTreeSet;
use std::fmt;

use avn::graphstate::{Graph, LocalCliffordFrame, SiteClifford};
use avn::semantics::{
    isotropy_group, projector_trace, stabilised_subspace, stabiliser_state, ExactScalar,
    ExactState, Subspace,
};
use avn::triples::{
    is_avn_triple_def1, is_avn_triple_def2, pattern_counts, reduce_to_three, TripleStream,
};
use avn::{AvnTriple, PauliElement, PauliLetter, StabiliserGroup, XorEquation, XorTheory};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LETTERS: [PauliLetter; 4] = [
    PauliLetter::I,
    PauliLetter::X,
    PauliLetter::Y,
    PauliLetter::Z,
];

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} cases={} failures={}",
            self.name, self.cases, self.failures
        )?;
        if let Some(d) = &self.first_failure {
            write!(f, " first={d}")?;
        }
        Ok(())
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn word_from_code(n: usize, w: usize) -> Vec<PauliLetter> {
    (0..n)
        .map(|q| LETTERS[(w >> (2 * (n - 1 - q))) & 3])
        .collect()
}

pub fn random_frame(rng: &mut impl Rng, n: usize) -> LocalCliffordFrame {
    let all = SiteClifford::all();
    LocalCliffordFrame::new((0..n).map(|_| *all.choose(rng).unwrap()).collect())
}

/// A random maximal group: a random graph state moved by a random local
/// Clifford frame, with random signs and a random change of generators.
pub fn random_maximal_group(rng: &mut impl Rng, n: usize) -> StabiliserGroup {
    let pairs = n * (n - 1) / 2;
    let graph = Graph::from_edge_mask(n, rng.gen_range(0..1u64 << pairs));
    let frame = random_frame(rng, n);
    let mut gens: Vec<PauliElement> = graph
        .generators()
        .iter()
        .map(|g| {
            let c = frame.conjugate(g).expect("lengths match");
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
                gens[i] = gens[i].mul(&gens[j]).expect("lengths match");
            }
        }
    }
    gens.shuffle(rng);
    StabiliserGroup::new(n, gens).expect("conjugated graph groups are valid")
}

fn refutes(n: usize, elems: &[PauliElement]) -> bool {
    XorTheory {
        num_qubits: n,
        equations: elems.iter().map(XorEquation::of_element).collect(),
    }
    .is_refutation()
}

/// A maximal group is AvN iff it contains an AvN triple.
pub fn theorem_equivalence(seed: u64, cases_per_n: usize, max_n: usize) -> Check {
    let mut check = Check::new("avn-iff-triple");
    let mut r = rng(seed);
    for n in 1..=max_n {
        for _ in 0..cases_per_n {
            let s = random_maximal_group(&mut r, n);
            let decision = s.is_avn().map(|d| d.is_yes());
            let triple = s.find_avn_triple();
            let ok = match (&decision, &triple) {
                (Ok(d), Ok(t)) => {
                    *d == t.is_some()
                        && t.as_ref()
                            .map_or(true, |t| t.is_valid() && refutes(n, &t.certificate()))
                }
                _ => false,
            };
            check.record(ok, || {
                format!(
                    "{:?}",
                    s.generators()
                        .iter()
                        .map(|g| g.to_string())
                        .collect::<Vec<_>>()
                )
            });
        }
    }
    check
}

/// Every graph on at most `max_n` vertices: AvN ⇔ max degree ≥ 2 ⇔ a triple
/// is extracted; extracted triples validate and refute.
pub fn graph_theorem(max_n: usize) -> Check {
    let mut check = Check::new("graph-avn-triple");
    for n in 1..=max_n {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = Graph::from_edge_mask(n, mask);
            let s = g.stabiliser_group();
            let avn = s.is_avn().map(|d| d.is_yes()).unwrap_or(false);
            let ext = g.extract_avn_triple();
            let mut ok = avn == (g.max_degree() >= 2) && avn == ext.is_some();
            if let Some(x) = &ext {
                ok &= x.triple.is_valid() && refutes(n, &x.triple.certificate());
                ok &= [&x.triple.e, &x.triple.f, &x.triple.g]
                    .iter()
                    .all(|p| s.contains(p).unwrap_or(false));
            }
            check.record(ok, || g.to_string().replace('\n', " "));
        }
    }
    check
}

fn condition1_columns() -> Vec<[PauliLetter; 3]> {
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

fn from_columns(cols: &[[PauliLetter; 3]]) -> [PauliElement; 3] {
    let mk = |k: usize| PauliElement::from_letters(&cols.iter().map(|c| c[k]).collect::<Vec<_>>());
    [mk(0), mk(1), mk(2)]
}

fn parity_rule_holds(t: &[PauliElement; 3]) -> bool {
    let commute = t[0].commutes(&t[1]).unwrap()
        && t[1].commutes(&t[2]).unwrap()
        && t[0].commutes(&t[2]).unwrap();
    let same = pattern_counts(&t[0], &t[1], &t[2])
        .map(|c| c.same_parity())
        .unwrap_or(false);
    let defs = is_avn_triple_def1(&t[0], &t[1], &t[2]).ok()
        == is_avn_triple_def2(&t[0], &t[1], &t[2]).ok();
    commute == same && defs
}

/// Pairwise commutation ⇔ equal parity of the three deviation counts, over
/// every condition-1 triple at three qubits and `random_cases` random ones
/// on up to six qubits. The two AvN-triple definitions are compared too.
pub fn definition_equivalence(seed: u64, random_cases: usize) -> Check {
    let mut check = Check::new("parity-rule");
    let cols = condition1_columns();
    for a in &cols {
        for b in &cols {
            for c in &cols {
                let t = from_columns(&[*a, *b, *c]);
                check.record(parity_rule_holds(&t), || {
                    format!("{} {} {}", t[0], t[1], t[2])
                });
            }
        }
    }
    let mut r = rng(seed);
    for i in 0..random_cases {
        let n = 1 + i % 6;
        let picks: Vec<[PauliLetter; 3]> = (0..n).map(|_| *cols.choose(&mut r).unwrap()).collect();
        let t = from_columns(&picks);
        check.record(parity_rule_holds(&t), || {
            format!("{} {} {}", t[0], t[1], t[2])
        });
    }
    check
}

/// `projector_trace == 2^(n-k)` on random groups with `n ≤ 4`.
pub fn dimension_law(seed: u64, cases: usize) -> Check {
    let mut check = Check::new("dimension-law");
    let mut r = rng(seed);
    for i in 0..cases {
        let n = 1 + i % 4;
        let k = r.gen_range(0..=n);
        let full = random_maximal_group(&mut r, n);
        let s = StabiliserGroup::new(n, full.generators()[..k].to_vec())
            .expect("subsets of valid generators");
        let ok = projector_trace(&s).map_or(false, |t| t == BigInt::from(1u64 << (n - k)))
            && s.stabiliser_dimension() == (1u64 << (n - k)).into();
        check.record(ok, || format!("n={n} k={k} {:?}", s.generators()));
    }
    check
}

fn all_elements(n: usize) -> Vec<PauliElement> {
    (0..1usize << (2 * n))
        .flat_map(|w| {
            let word = word_from_code(n, w);
            (0..4).map(move |phase| PauliElement::new(phase, &word))
        })
        .collect()
}

fn subset_of(a: &[PauliElement], b: &[PauliElement]) -> bool {
    let b: BTreeSet<_> = b.iter().collect();
    a.iter().all(|p| b.contains(p))
}

fn galois_case(n: usize, s: &[PauliElement], v: &Subspace) -> bool {
    let f = stabilised_subspace(n, s).expect("within cap");
    let gf = isotropy_group(&f).expect("within cap");
    let g = isotropy_group(v).expect("within cap");
    let fg = stabilised_subspace(n, &g).expect("within cap");
    subset_of(s, &gf) && fg.contains(v)
}

fn random_state(r: &mut impl Rng, n: usize) -> ExactState {
    let amps = (0..1 << n)
        .map(|_| ExactScalar::new(r.gen_range(-2i64..=2), r.gen_range(-2i64..=2), 0))
        .collect();
    ExactState::from_amplitudes(n, amps, 0).expect("correct length")
}

/// Unit laws `S ⊆ (S^⊥)^⊥`, `V ⊆ (V^⊥)^⊥` and `G(F(S)) = S` for maximal `S`:
/// exhaustive at one qubit, then `random_cases` random instances on up to
/// three qubits.
pub fn galois_laws(seed: u64, random_cases: usize) -> Check {
    let mut check = Check::new("galois-laws");
    let p1 = all_elements(1);
    let eigen: Vec<ExactState> = ["X", "-X", "Y", "-Y", "Z", "-Z"]
        .iter()
        .map(|w| stabiliser_state(&StabiliserGroup::parse(w).unwrap()).unwrap())
        .collect();
    for mask in 0u32..1 << p1.len() {
        let s: Vec<PauliElement> = (0..p1.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| p1[i].clone())
            .collect();
        let states: Vec<ExactState> = (0..6)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| eigen[i].clone())
            .collect();
        let v = Subspace::of_states(1, &states).unwrap();
        check.record(galois_case(1, &s, &v), || format!("n=1 mask={mask}"));
    }
    for w in ["X", "-X", "Y", "-Y", "Z", "-Z"] {
        let s = StabiliserGroup::parse(w).unwrap();
        check.record(closure_is_identity(&s), || w.to_string());
    }
    let mut r = rng(seed);
    for i in 0..random_cases {
        let n = 1 + i % 3;
        let s: Vec<PauliElement> = (0..r.gen_range(0..4))
            .map(|_| {
                let word = word_from_code(n, r.gen_range(0..1 << (2 * n)));
                PauliElement::new(r.gen_range(0..4), &word)
            })
            .collect();
        let states: Vec<ExactState> = (0..r.gen_range(0..3))
            .map(|_| random_state(&mut r, n))
            .collect();
        let v = Subspace::of_states(n, &states).unwrap();
        check.record(galois_case(n, &s, &v), || format!("n={n} S={s:?}"));
        let m = random_maximal_group(&mut r, n);
        check.record(closure_is_identity(&m), || {
            format!("maximal {:?}", m.generators())
        });
    }
    check
}

fn closure_is_identity(s: &StabiliserGroup) -> bool {
    let mut elems = s.elements().expect("small group");
    elems.sort();
    let f = stabilised_subspace(s.num_qubits(), s.generators()).expect("within cap");
    isotropy_group(&f).expect("within cap") == elems
}

/// Random valid triple on `n` qubits by rejection from condition-1 columns.
pub fn random_valid_triple(r: &mut impl Rng, n: usize) -> AvnTriple {
    let cols = condition1_columns();
    loop {
        let picks: Vec<[PauliLetter; 3]> = (0..n).map(|_| *cols.choose(r).unwrap()).collect();
        let [e, f, g] = from_columns(&picks);
        if is_avn_triple_def2(&e, &f, &g).unwrap() {
            let mut sign = |p: PauliElement| if r.gen() { p.negate() } else { p };
            let (e, f, g) = (sign(e), sign(f), sign(g));
            return AvnTriple::new(e, f, g).expect("real phases");
        }
    }
}

/// Conjugating valid triples by random local Clifford frames keeps them valid.
pub fn lc_robustness(seed: u64, cases: usize) -> Check {
    let mut check = Check::new("lc-robustness");
    let mut r = rng(seed);
    for i in 0..cases {
        let n = 3 + i % 3;
        let t = random_valid_triple(&mut r, n);
        let frame = random_frame(&mut r, n);
        let ok = frame.conjugate_triple(&t).map_or(false, |c| c.is_valid());
        check.record(ok, || format!("{t} under {frame:?}"));
    }
    for n in 3..=5 {
        for v in 0..n {
            let ok = Graph::complete(n)
                .local_complement(v)
                .map_or(false, |g| g == Graph::star(n, v));
            check.record(ok, || format!("K{n} * {v}"));
        }
    }
    let connected: BTreeSet<Graph> = (0..8u64)
        .map(|m| Graph::from_edge_mask(3, m))
        .filter(|g| g.edges().len() >= 2)
        .collect();
    for g in &connected {
        check.record(g.lc_orbit(8).map_or(false, |o| o == connected), || {
            g.to_string()
        });
    }
    check
}

/// Every `n`-qubit triple (with phases) reduces to a valid 3-qubit triple.
pub fn reduction(n: usize) -> Check {
    let mut check = Check::new("reduction");
    for t in TripleStream::new(n, true, n.max(3)).expect("within cap") {
        let ok = reduce_to_three(&t).map_or(false, |(_, r)| r.num_qubits() == 3 && r.is_valid());
        check.record(ok, || t.to_string());
    }
    check
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Theorem,
    Graphs,
    Definitions,
    Dimension,
    Galois,
    Lc,
    Reduction,
}

/// Runs a suite at its default sizes.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut out = Vec::new();
    if want(Suite::Theorem) {
        out.push(theorem_equivalence(seed, 100, 5));
    }
    if want(Suite::Graphs) {
        out.push(graph_theorem(5));
    }
    if want(Suite::Definitions) {
        out.push(definition_equivalence(seed, 100_000));
    }
    if want(Suite::Dimension) {
        out.push(dimension_law(seed, 200));
    }
    if want(Suite::Galois) {
        out.push(galois_laws(seed, 50));
    }
    if want(Suite::Lc) {
        out.push(lc_robustness(seed, 10_000));
    }
    if want(Suite::Reduction) {
        out.push(reduction(4));
    }
    out
}
