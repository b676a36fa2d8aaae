mod common;

use std::collections::BTreeSet;

use avn::semantics::{
    empirical_model, is_strongly_contextual, isotropy_group, projector_trace, stabilised_subspace,
    stabiliser_state, xor_theory_of_model, ExactState, Subspace,
};
use avn::{PauliElement, PauliLetter};
use common::{random_group, random_maximal_group, random_word, rng, LETTERS};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use rand::Rng;

#[test]
fn dimension_law() {
    let mut r = rng(21);
    for i in 0..200 {
        let n = 1 + i % 4;
        let k = r.gen_range(0..=n);
        let s = random_group(&mut r, n, k);
        let trace = projector_trace(&s).unwrap();
        assert_eq!(trace, BigInt::from(1u64 << (n - k)));
        assert_eq!(trace.to_biguint().unwrap(), s.stabiliser_dimension());
        assert_eq!(s.stabiliser_dimension(), BigUint::from(1u64 << (n - k)));
    }
}

#[test]
fn stabiliser_states_are_fixed_and_normalised() {
    let mut r = rng(22);
    for i in 0..60 {
        let n = 1 + i % 4;
        let s = random_maximal_group(&mut r, n);
        let psi = stabiliser_state(&s).unwrap();
        assert!(psi.is_normalized());
        for g in s.generators() {
            assert_eq!(psi.apply_pauli(g).unwrap(), psi);
        }
    }
}

#[test]
fn born_rule_parity_and_theory_containment() {
    let mut r = rng(23);
    for i in 0..40 {
        let n = 1 + i % 4;
        let s = random_maximal_group(&mut r, n);
        let m = empirical_model(&stabiliser_state(&s).unwrap()).unwrap();
        assert!(m.is_no_signalling());
        for p in s.elements().unwrap() {
            if p.is_identity_word() {
                continue;
            }
            let partial: Vec<Option<usize>> = p
                .letters()
                .map(|l| {
                    if l == PauliLetter::I {
                        None
                    } else {
                        Some(l.index() - 1)
                    }
                })
                .collect();
            let marg = m.marginal(&partial).unwrap();
            for (o, prob) in marg.iter().enumerate() {
                if *prob != BigRational::from_integer(0.into()) {
                    assert_eq!(o.count_ones() % 2 == 1, p.sign_bit(), "{p}");
                }
            }
        }
        let model_theory = xor_theory_of_model(&m);
        for eq in s.xor_theory().unwrap().equations {
            assert!(model_theory.contains(&eq), "{eq}");
        }
    }
}

#[test]
fn avn_groups_give_strongly_contextual_models() {
    let mut r = rng(24);
    let mut yes = 0;
    for i in 0..40 {
        let n = 3 + i % 2;
        let s = random_maximal_group(&mut r, n);
        if s.is_avn().unwrap().is_yes() {
            yes += 1;
            let m = empirical_model(&stabiliser_state(&s).unwrap()).unwrap();
            assert!(is_strongly_contextual(&m).unwrap());
            assert!(!xor_theory_of_model(&m).is_consistent());
        }
    }
    assert!(yes > 0);
}

#[test]
fn small_states_are_not_strongly_contextual() {
    let mut r = rng(25);
    for n in 1..=2 {
        for _ in 0..20 {
            let s = random_maximal_group(&mut r, n);
            let m = empirical_model(&stabiliser_state(&s).unwrap()).unwrap();
            assert!(!is_strongly_contextual(&m).unwrap());
        }
    }
}

fn all_elements(n: usize) -> Vec<PauliElement> {
    let mut out = Vec::new();
    for w in 0..1usize << (2 * n) {
        let letters: Vec<PauliLetter> = (0..n)
            .map(|q| LETTERS[(w >> (2 * (n - 1 - q))) & 3])
            .collect();
        for phase in 0..4 {
            out.push(PauliElement::new(phase, &letters));
        }
    }
    out
}

fn is_subset(a: &[PauliElement], b: &[PauliElement]) -> bool {
    let b: BTreeSet<_> = b.iter().collect();
    a.iter().all(|p| b.contains(p))
}

#[test]
fn galois_laws_exhaustive_one_qubit() {
    let p1 = all_elements(1);
    assert_eq!(p1.len(), 16);
    for mask in 0u32..1 << 16 {
        let s: Vec<PauliElement> = (0..16)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| p1[i].clone())
            .collect();
        let f = stabilised_subspace(1, &s).unwrap();
        let gf = isotropy_group(&f).unwrap();
        assert!(is_subset(&s, &gf));
        assert_eq!(stabilised_subspace(1, &gf).unwrap(), f);
    }
    // subspaces spanned by subsets of the six eigenstates
    let eig: Vec<ExactState> = ["X", "-X", "Y", "-Y", "Z", "-Z"]
        .iter()
        .map(|w| stabiliser_state(&avn::StabiliserGroup::parse(w).unwrap()).unwrap())
        .collect();
    for mask in 0u32..1 << 6 {
        let states: Vec<ExactState> = (0..6)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| eig[i].clone())
            .collect();
        let v = Subspace::of_states(1, &states).unwrap();
        let g = isotropy_group(&v).unwrap();
        let fg = stabilised_subspace(1, &g).unwrap();
        assert!(fg.contains(&v));
        assert_eq!(isotropy_group(&fg).unwrap(), g);
    }
}

fn random_vector(r: &mut impl Rng, n: usize) -> Vec<Complex<BigRational>> {
    (0..1 << n)
        .map(|_| {
            let c = |r: &mut dyn rand::RngCore| {
                BigRational::from_integer(BigInt::from(r.gen_range(-2i64..=2)))
            };
            Complex::new(c(r), c(r))
        })
        .collect()
}

#[test]
fn galois_laws_random_small() {
    let mut r = rng(26);
    for i in 0..60 {
        let n = 1 + i % 3;
        let s: Vec<PauliElement> = (0..r.gen_range(0..4))
            .map(|_| random_word(&mut r, n))
            .collect();
        let more: Vec<PauliElement> = s.iter().cloned().chain([random_word(&mut r, n)]).collect();
        let f = stabilised_subspace(n, &s).unwrap();
        let f_more = stabilised_subspace(n, &more).unwrap();
        assert!(f.contains(&f_more), "antitone F");
        assert!(is_subset(&s, &isotropy_group(&f).unwrap()));

        let v = Subspace::span(
            n,
            (0..r.gen_range(0..3))
                .map(|_| random_vector(&mut r, n))
                .collect(),
        )
        .unwrap();
        let bigger = Subspace::span(
            n,
            v.basis()
                .iter()
                .cloned()
                .chain([random_vector(&mut r, n)])
                .collect(),
        )
        .unwrap();
        let g = isotropy_group(&v).unwrap();
        assert!(
            is_subset(&isotropy_group(&bigger).unwrap(), &g),
            "antitone G"
        );
        assert!(stabilised_subspace(n, &g).unwrap().contains(&v));
    }
}

#[test]
fn closure_is_identity_on_maximal_groups() {
    let mut r = rng(27);
    for i in 0..50 {
        let n = 1 + i % 3;
        let s = random_maximal_group(&mut r, n);
        let mut elems = s.elements().unwrap();
        elems.sort();
        let f = stabilised_subspace(n, s.generators()).unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(isotropy_group(&f).unwrap(), elems);
    }
}
