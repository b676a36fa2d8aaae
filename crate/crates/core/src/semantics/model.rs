use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::state::{stabiliser_state, ExactState};
use crate::error::{check_cap, Error, Result};
use crate::graphstate::Graph;
use crate::pauli::{PauliElement, PauliLetter};
use crate::subgroup::{XorEquation, XorTheory};

pub const MAX_MODEL_QUBITS: usize = 5;
pub const MAX_ASSIGNMENT_BITS: usize = 15;

/// One maximal context: a setting per party and a distribution over the
/// `2^n` joint outcomes (party 0 is the leftmost outcome bit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub settings: Vec<usize>,
    pub probs: Vec<BigRational>,
}

/// A model on `n` dichotomic parties whose maximal contexts pick one
/// setting per party. Party `p`'s labels are named `labels[p][i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalModel {
    labels: Vec<Vec<String>>,
    contexts: Vec<Context>,
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// All setting tuples with party 0 most significant.
fn setting_tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..k).map(move |i| {
                    let mut t = prefix.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

impl EmpiricalModel {
    /// Validates shapes, normalisation, non-negativity and that every
    /// setting tuple appears exactly once in order.
    pub fn new(labels: Vec<Vec<String>>, contexts: Vec<Context>) -> Result<Self> {
        let n = labels.len();
        if labels.iter().any(|l| l.is_empty() || l.len() > 3) {
            return Err(Error::InvalidModel(
                "each party needs one to three settings".into(),
            ));
        }
        let sizes: Vec<usize> = labels.iter().map(Vec::len).collect();
        let expected = setting_tuples(&sizes);
        if contexts.len() != expected.len() {
            return Err(Error::InvalidModel(format!(
                "expected {} contexts, got {}",
                expected.len(),
                contexts.len()
            )));
        }
        for (c, want) in contexts.iter().zip(&expected) {
            if &c.settings != want {
                return Err(Error::InvalidModel(format!(
                    "context {:?} out of order",
                    c.settings
                )));
            }
            if c.probs.len() != 1 << n {
                return Err(Error::InvalidModel(format!(
                    "context {:?} has wrong outcome count",
                    c.settings
                )));
            }
            if c.probs.iter().any(|p| p.is_negative()) {
                return Err(Error::InvalidModel(format!(
                    "negative probability in {:?}",
                    c.settings
                )));
            }
            if c.probs.iter().fold(BigRational::zero(), |a, p| a + p) != BigRational::one() {
                return Err(Error::InvalidModel(format!(
                    "context {:?} does not sum to 1",
                    c.settings
                )));
            }
        }
        Ok(EmpiricalModel { labels, contexts })
    }

    pub fn num_parties(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    /// Looks up a maximal context by its setting tuple.
    pub fn context(&self, settings: &[usize]) -> Option<&Context> {
        self.contexts.iter().find(|c| c.settings == settings)
    }

    /// Finds a context by label names, e.g. `["X1", "Y2", "Y3"]`.
    pub fn context_by_labels(&self, names: &[&str]) -> Option<&Context> {
        if names.len() != self.num_parties() {
            return None;
        }
        let settings: Option<Vec<usize>> = names
            .iter()
            .enumerate()
            .map(|(p, name)| self.labels[p].iter().position(|l| l == name))
            .collect();
        self.context(&settings?)
    }

    /// Outcomes with nonzero probability.
    pub fn support(&self, settings: &[usize]) -> Option<Vec<usize>> {
        self.context(settings).map(|c| {
            (0..c.probs.len())
                .filter(|&s| !c.probs[s].is_zero())
                .collect()
        })
    }

    /// Variable id of setting `i` of party `p`, compatible with
    /// [`crate::subgroup::variable_id`] for Pauli labels.
    pub fn variable_id(&self, party: usize, setting: usize) -> usize {
        3 * party + setting
    }

    pub fn variable_name(&self, id: usize) -> String {
        self.labels
            .get(id / 3)
            .and_then(|l| l.get(id % 3))
            .map(|s| s.to_lowercase())
            .unwrap_or_else(|| format!("v{id}"))
    }

    /// Marginal on the parties where `partial` is `Some`, computed from the
    /// given maximal extension. Outcome bits follow party order.
    fn marginal_from(&self, partial: &[Option<usize>], ext: &Context) -> Vec<BigRational> {
        let n = self.num_parties();
        let kept: Vec<usize> = (0..n).filter(|&p| partial[p].is_some()).collect();
        let mut out = vec![BigRational::zero(); 1 << kept.len()];
        for (s, prob) in ext.probs.iter().enumerate() {
            let mut idx = 0;
            for &p in &kept {
                idx = (idx << 1) | ((s >> (n - 1 - p)) & 1);
            }
            out[idx] += prob;
        }
        out
    }

    fn extensions<'a>(
        &'a self,
        partial: &'a [Option<usize>],
    ) -> impl Iterator<Item = &'a Context> + 'a {
        self.contexts.iter().filter(move |c| {
            partial
                .iter()
                .zip(&c.settings)
                .all(|(p, s)| p.map_or(true, |p| p == *s))
        })
    }

    /// Marginal distribution of a partial context (`None` = party not measured).
    pub fn marginal(&self, partial: &[Option<usize>]) -> Result<Vec<BigRational>> {
        if partial.len() != self.num_parties() {
            return Err(Error::LengthMismatch {
                left: self.num_parties(),
                right: partial.len(),
            });
        }
        let ext = self
            .extensions(partial)
            .next()
            .ok_or_else(|| Error::InvalidModel("setting index out of range".into()))?;
        Ok(self.marginal_from(partial, ext))
    }

    fn partial_contexts(&self) -> Vec<Vec<Option<usize>>> {
        let sizes: Vec<usize> = self.labels.iter().map(|l| l.len() + 1).collect();
        setting_tuples(&sizes)
            .into_iter()
            .map(|t| t.into_iter().map(|i| i.checked_sub(1)).collect())
            .collect()
    }

    /// Every partial context has the same marginal from all of its extensions.
    pub fn is_no_signalling(&self) -> bool {
        self.partial_contexts().iter().all(|partial| {
            let mut ext = self.extensions(partial);
            let first = self.marginal_from(partial, ext.next().expect("nonempty"));
            ext.all(|c| self.marginal_from(partial, c) == first)
        })
    }

    /// Text table: one line per context, `X1 X2 X3 | 000:1/4 001:0/1 ...`.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for EmpiricalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num_parties();
        for c in &self.contexts {
            let head: Vec<&str> = c
                .settings
                .iter()
                .enumerate()
                .map(|(p, &s)| self.labels[p][s].as_str())
                .collect();
            let cells: Vec<String> = c
                .probs
                .iter()
                .enumerate()
                .map(|(s, p)| format!("{s:0n$b}:{}/{}", p.numer(), p.denom()))
                .collect();
            writeln!(f, "{} | {}", head.join(" "), cells.join(" "))?;
        }
        Ok(())
    }
}

/// The model of local `X`, `Y`, `Z` measurements on `state`.
pub fn empirical_model(state: &ExactState) -> Result<EmpiricalModel> {
    let n = state.num_qubits();
    check_cap("qubit count", n, MAX_MODEL_QUBITS)?;
    if state.is_zero() {
        return Err(Error::InvalidModel(
            "zero state has no empirical model".into(),
        ));
    }
    let norm = state.norm_sqr();
    let letters = [
        PauliLetter::I,
        PauliLetter::X,
        PauliLetter::Y,
        PauliLetter::Z,
    ];
    // ⟨P_w⟩ for every word w, indexed base 4 with qubit 0 most significant.
    let expect: Vec<BigRational> = (0..1usize << (2 * n))
        .into_par_iter()
        .map(|w| {
            let word: Vec<PauliLetter> = (0..n)
                .map(|q| letters[(w >> (2 * (n - 1 - q))) & 3])
                .collect();
            state
                .expectation(&PauliElement::from_letters(&word))
                .map(|e| e / &norm)
        })
        .collect::<Result<_>>()?;
    let scale = rat(1, 1 << n);
    let contexts = setting_tuples(&vec![3; n])
        .into_par_iter()
        .map(|settings| {
            let probs = (0..1usize << n)
                .map(|s| {
                    let mut total = BigRational::zero();
                    for a in 0..1usize << n {
                        // subset a of measured parties (party 0 = high bit)
                        let mut w = 0usize;
                        for (q, &setting) in settings.iter().enumerate() {
                            let lw = if a >> (n - 1 - q) & 1 == 1 {
                                setting + 1
                            } else {
                                0
                            };
                            w = (w << 2) | lw;
                        }
                        if (s & a).count_ones() % 2 == 0 {
                            total += &expect[w];
                        } else {
                            total -= &expect[w];
                        }
                    }
                    total * &scale
                })
                .collect();
            Context { settings, probs }
        })
        .collect();
    let labels = (1..=n)
        .map(|p| ["X", "Y", "Z"].iter().map(|l| format!("{l}{p}")).collect())
        .collect();
    EmpiricalModel::new(labels, contexts)
}

/// One equation per (sub-)context whose support has uniform parity, in
/// partial-context order.
pub fn xor_theory_of_model(m: &EmpiricalModel) -> XorTheory {
    let n = m.num_parties();
    let mut equations: Vec<XorEquation> = Vec::new();
    for partial in m.partial_contexts() {
        if partial.iter().all(Option::is_none) {
            continue;
        }
        let marg = m.marginal(&partial).expect("valid partial context");
        let mut parities = marg
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(s, _)| s.count_ones() % 2 == 1);
        let first = parities.next().expect("distribution has support");
        if parities.all(|p| p == first) {
            let support = (0..n)
                .filter_map(|p| partial[p].map(|s| m.variable_id(p, s)))
                .collect();
            let eq = XorEquation::new(support, first);
            if !equations.contains(&eq) {
                equations.push(eq);
            }
        }
    }
    XorTheory {
        num_qubits: n,
        equations,
    }
}

/// True iff no global assignment of outcomes to labels is supported in
/// every maximal context.
pub fn is_strongly_contextual(m: &EmpiricalModel) -> Result<bool> {
    let n = m.num_parties();
    let offsets: Vec<usize> = m
        .labels
        .iter()
        .scan(0, |acc, l| {
            let o = *acc;
            *acc += l.len();
            Some(o)
        })
        .collect();
    let bits: usize = m.labels.iter().map(Vec::len).sum();
    check_cap("assignment bits", bits, MAX_ASSIGNMENT_BITS)?;
    let supported = |g: u32| {
        m.contexts.iter().all(|c| {
            let s = c.settings.iter().enumerate().fold(0usize, |acc, (p, &i)| {
                (acc << 1) | ((g >> (offsets[p] + i)) & 1) as usize
            });
            debug_assert!(s < 1 << n);
            !c.probs[s].is_zero()
        })
    };
    Ok(!(0..1u32 << bits).into_par_iter().any(supported))
}

pub fn ghz3() -> EmpiricalModel {
    empirical_model(&ExactState::ghz(3)).expect("3 qubits is within the cap")
}

/// The two-party box of Popescu and Rohrlich: perfectly correlated except
/// on `a2 b2`, where the outcomes are anticorrelated.
pub fn prbox() -> EmpiricalModel {
    let h = rat(1, 2);
    let z = BigRational::zero();
    let even = vec![h.clone(), z.clone(), z.clone(), h.clone()];
    let odd = vec![z.clone(), h.clone(), h, z];
    let contexts = vec![
        Context {
            settings: vec![0, 0],
            probs: even.clone(),
        },
        Context {
            settings: vec![0, 1],
            probs: even.clone(),
        },
        Context {
            settings: vec![1, 0],
            probs: even,
        },
        Context {
            settings: vec![1, 1],
            probs: odd,
        },
    ];
    let labels = vec![
        vec!["a1".into(), "a2".into()],
        vec!["b1".into(), "b2".into()],
    ];
    EmpiricalModel::new(labels, contexts).expect("fixture is well formed")
}

/// The 2x2 cluster state: the square graph 1-2, 1-3, 2-4, 3-4.
pub fn cluster4() -> EmpiricalModel {
    let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("valid edges");
    let state = stabiliser_state(&g.stabiliser_group()).expect("graph groups are maximal");
    empirical_model(&state).expect("4 qubits is within the cap")
}

pub fn named_fixture(name: &str) -> Option<EmpiricalModel> {
    match name {
        "ghz3" => Some(ghz3()),
        "prbox" => Some(prbox()),
        "cluster4" => Some(cluster4()),
        _ => None,
    }
}
