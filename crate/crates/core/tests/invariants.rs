use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use motzkin_automata::analysis::find_absorbing_partition;
use motzkin_automata::automaton::minimize;
use motzkin_automata::density::{characterization_density, characterization_sets, state_distribution, to_f64};
use motzkin_automata::langops::{
    characterization_forms, compile_pattern, two_absorbing_digits, zero_set_acceptor, DigitDfa,
};
use motzkin_automata::prime::LISTED_PRIMES;
use motzkin_automata::seq::motzkin_residue_tables;
use motzkin_automata::{build_dfao, Dfao, Prime, StateId};

fn prime(p: u32) -> Prime {
    Prime::new(p as u64).unwrap()
}

fn machines() -> Vec<Dfao> {
    LISTED_PRIMES.iter().map(|&p| build_dfao(prime(p))).collect()
}

fn oracle(primes: &[u32], upto: usize) -> BTreeMap<u32, Vec<u32>> {
    let ps: Vec<Prime> = primes.iter().map(|&p| prime(p)).collect();
    motzkin_residue_tables(&ps, upto + 1)
        .into_iter()
        .map(|(p, t)| (p.get(), t))
        .collect()
}

#[test]
fn every_listed_state_matches() {
    for d in machines() {
        let p = d.base();
        let path = format!("{}/tests/golden/states{p}.txt", env!("CARGO_MANIFEST_DIR"));
        let golden = std::fs::read_to_string(path).unwrap();
        let built: Vec<String> = d.states().iter().map(|s| s.to_string()).collect();
        let listed: Vec<&str> = golden.lines().collect();
        assert_eq!(built, listed, "p = {p}");
    }
}

#[test]
fn state_degrees_are_bounded() {
    for d in machines() {
        for (i, s) in d.states().iter().enumerate() {
            assert!(s.deg_x().unwrap_or(0) <= 2, "p = {}, s[{}]", d.base(), i + 1);
            let bound = if i == 0 { 4 } else { 3 };
            assert!(s.deg_y().unwrap_or(0) <= bound, "p = {}, s[{}]", d.base(), i + 1);
        }
    }
}

#[test]
fn construction_is_deterministic() {
    for p in [7, 29] {
        assert_eq!(build_dfao(prime(p)), build_dfao(prime(p)));
    }
}

#[test]
fn listed_machines_are_minimal() {
    for d in machines() {
        assert_eq!(minimize(&d).len(), d.len(), "p = {}", d.base());
    }
}

#[test]
fn padding_with_a_zero_digit_changes_no_count() {
    for d in machines() {
        for k in [1, 3, 6] {
            let dist = state_distribution(&d, k);
            let mut plain = vec![BigUint::from(0u32); d.base()];
            let mut padded = plain.clone();
            for (u, c) in dist.iter().enumerate() {
                let u = StateId(u);
                plain[d.output(u) as usize] += c;
                padded[d.output(d.step(u, 0)) as usize] += c;
            }
            assert_eq!(plain, padded, "p = {}, K = {k}", d.base());
        }
    }
}

#[test]
fn digit_form_counts_converge_to_the_closed_form() {
    for (p, depth) in [(11u32, 10usize), (13, 10), (23, 6), (29, 6)] {
        let acceptor = motzkin_automata::langops::characterization_acceptor(p).unwrap();
        let total = BigUint::from(p).pow(depth as u32);
        let est = BigRational::new(
            BigInt::from(acceptor.count_accepted(depth)),
            BigInt::from(total),
        );
        let exact = characterization_density(p).unwrap();
        let diff = to_f64(&(est - exact)).abs();
        assert!(diff < 1e-3, "p = {p}: {diff}");
    }
}

#[test]
fn arithmetic_and_digit_forms_agree() {
    const UPTO: u64 = 20000;
    for p in [11u32, 13, 23, 29] {
        let forms = characterization_forms(p).unwrap();
        let sets = characterization_sets(p).unwrap();
        assert_eq!(forms.len(), sets.len());
        for (form, group) in forms.iter().zip(&sets) {
            let acceptor = compile_pattern(form).unwrap();
            for n in 1..=UPTO {
                let by_digits = acceptor.accepts_n(n);
                let by_formula = group.iter().any(|s| s.contains(n));
                assert_eq!(by_digits, by_formula, "p = {p}, n = {n}, {}", form.describe());
            }
        }
    }
}

#[test]
fn two_absorbing_digits_force_zero() {
    const UPTO: usize = 20000;
    let tables = oracle(&[7, 17, 19], UPTO);
    for p in [7u32, 17, 19] {
        let d = build_dfao(prime(p));
        let cert = find_absorbing_partition(&d).unwrap();

        // as languages: two absorbing digits and a nonzero residue never meet
        let forced = two_absorbing_digits(prime(p), &cert);
        let escapes = forced.intersection(&zero_set_acceptor(&d).complement()).unwrap();
        assert!(escapes.accepts_nothing(), "p = {p}: {:?}", escapes.shortest_accepted());

        let table = &tables[&p];
        let mut checked = 0;
        for (n, &residue) in table.iter().enumerate().skip(1) {
            let digits = motzkin_automata::automaton::digits_lsd(n as u64, prime(p));
            if cert.forces_zero(digits.as_slice()) {
                assert_eq!(residue, 0, "p = {p}, n = {n}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn positive_acceptor_excludes_only_zero() {
    let pos = DigitDfa::positive(prime(5));
    assert!(!pos.accepts_n(0));
    assert!((1..500).all(|n| pos.accepts_n(n)));
    assert!(pos.is_padding_invariant());
}
