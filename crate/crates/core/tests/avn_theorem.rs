mod common;

use avn::graphstate::Graph;
use avn::subgroup::AvnDecision;
use avn::{StabiliserGroup, XorEquation, XorTheory};
use common::{random_frame, random_group, random_maximal_group, rng};

fn certificate_refutes(n: usize, elems: &[avn::PauliElement]) -> bool {
    let t = XorTheory {
        num_qubits: n,
        equations: elems.iter().map(XorEquation::of_element).collect(),
    };
    t.is_refutation()
}

#[test]
fn avn_iff_contains_triple_on_random_maximal_groups() {
    let mut r = rng(7);
    for n in 1..=5 {
        let mut yes = 0;
        for _ in 0..250 {
            let s = random_maximal_group(&mut r, n);
            let decision = s.is_avn().unwrap();
            let triple = s.find_avn_triple().unwrap();
            assert_eq!(decision.is_yes(), triple.is_some(), "{:?}", s.generators());
            if let Some(t) = triple {
                yes += 1;
                assert!(t.is_valid());
                for p in [&t.e, &t.f, &t.g] {
                    assert!(s.contains(p).unwrap());
                }
                assert!(certificate_refutes(n, &t.certificate()));
            }
            match decision {
                AvnDecision::Yes(cert) => assert!(certificate_refutes(n, &cert)),
                AvnDecision::No(assignment) => {
                    let theory = s.xor_theory().unwrap();
                    assert!(theory.to_system().is_satisfied_by(&assignment));
                }
            }
        }
        if n <= 2 {
            assert_eq!(yes, 0);
        } else {
            assert!(yes > 0);
        }
    }
}

#[test]
fn avn_is_rare_or_absent_below_full_rank() {
    let mut r = rng(8);
    for n in 3..=5 {
        for k in 0..n {
            let s = random_group(&mut r, n, k);
            assert_eq!(
                s.is_avn().unwrap().is_yes(),
                s.find_avn_triple().unwrap().is_some()
            );
        }
    }
}

#[test]
fn every_small_graph_matches_degree_criterion() {
    for n in 1..=5 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = Graph::from_edge_mask(n, mask);
            let s = g.stabiliser_group();
            let avn = s.is_avn().unwrap().is_yes();
            let ext = g.extract_avn_triple();
            assert_eq!(avn, g.max_degree() >= 2, "{g}");
            assert_eq!(avn, ext.is_some(), "{g}");
            if let Some(x) = ext {
                assert!(x.triple.is_valid());
                assert!(certificate_refutes(n, &x.triple.certificate()));
                assert!(s.contains(&x.triple.e).unwrap());
                assert!(s.contains(&x.triple.f).unwrap());
                assert!(s.contains(&x.triple.g).unwrap());
            }
        }
    }
}

#[test]
fn avn_is_local_clifford_invariant() {
    let mut r = rng(9);
    for n in 2..=5 {
        for _ in 0..100 {
            let s = random_maximal_group(&mut r, n);
            let frame = random_frame(&mut r, n);
            let gens = s
                .generators()
                .iter()
                .map(|g| frame.conjugate(g).unwrap())
                .collect();
            let t = StabiliserGroup::new(n, gens).unwrap();
            assert_eq!(s.is_avn().unwrap().is_yes(), t.is_avn().unwrap().is_yes());
        }
    }
}
