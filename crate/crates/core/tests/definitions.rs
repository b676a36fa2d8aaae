mod common;

use avn::triples::{is_avn_triple_def1, is_avn_triple_def2, pattern_counts};
use avn::{PauliElement, PauliLetter};
use common::{condition1_columns, random_condition1_triple, rng, LETTERS};

fn pairwise_commute(t: &[PauliElement; 3]) -> bool {
    t[0].commutes(&t[1]).unwrap() && t[1].commutes(&t[2]).unwrap() && t[0].commutes(&t[2]).unwrap()
}

fn all_words(n: usize) -> Vec<PauliElement> {
    (0..1usize << (2 * n))
        .map(|w| {
            let letters: Vec<PauliLetter> = (0..n)
                .map(|q| LETTERS[(w >> (2 * (n - 1 - q))) & 3])
                .collect();
            PauliElement::from_letters(&letters)
        })
        .collect()
}

#[test]
fn parity_rule_exhaustive_three_qubits() {
    let cols = condition1_columns();
    assert_eq!(cols.len(), 40);
    let mut checked = 0;
    for a in &cols {
        for b in &cols {
            for c in &cols {
                let mk = |k: usize| PauliElement::from_letters(&[a[k], b[k], c[k]]);
                let t = [mk(0), mk(1), mk(2)];
                let counts = pattern_counts(&t[0], &t[1], &t[2]).unwrap();
                assert_eq!(
                    pairwise_commute(&t),
                    counts.same_parity(),
                    "{} {} {}",
                    t[0],
                    t[1],
                    t[2]
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 64_000);
}

#[test]
fn parity_rule_random_up_to_six_qubits() {
    let mut r = rng(3);
    for i in 0..100_000 {
        let n = 1 + i % 6;
        let t = random_condition1_triple(&mut r, n);
        let counts = pattern_counts(&t[0], &t[1], &t[2]).unwrap();
        assert_eq!(pairwise_commute(&t), counts.same_parity());
    }
}

#[test]
fn both_definitions_agree_on_all_three_qubit_triples() {
    let words = all_words(3);
    let mut valid = 0;
    for e in &words {
        for f in &words {
            for g in &words {
                let d1 = is_avn_triple_def1(e, f, g).unwrap();
                assert_eq!(d1, is_avn_triple_def2(e, f, g).unwrap());
                valid += d1 as usize;
            }
        }
    }
    // ordered triples; each unordered one appears 3! times
    assert_eq!(valid, 6 * 216);
}

#[test]
fn both_definitions_agree_on_random_triples() {
    let mut r = rng(4);
    for i in 0..20_000 {
        let n = 3 + i % 6;
        let [e, f, g] = random_condition1_triple(&mut r, n);
        assert_eq!(
            is_avn_triple_def1(&e, &f, &g).unwrap(),
            is_avn_triple_def2(&e, &f, &g).unwrap()
        );
    }
}

#[test]
fn imaginary_phases_are_rejected() {
    let e: PauliElement = "iXXX".parse().unwrap();
    let f: PauliElement = "YYX".parse().unwrap();
    let g: PauliElement = "XYY".parse().unwrap();
    assert!(!is_avn_triple_def1(&e, &f, &g).unwrap());
    assert!(!is_avn_triple_def2(&e, &f, &g).unwrap());
}
