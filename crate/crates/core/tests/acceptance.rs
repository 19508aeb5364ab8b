//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test -p motzkin-automata --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use motzkin_automata::analysis::{
    check_power_family, find_absorbing_partition, loop_states, motif_lower_bound, zero_value_states,
};
use motzkin_automata::density::{
    characterization_density, characterization_sets, count_residues, density_estimate,
    density_one_certificate, pattern_density, to_f64,
};
use motzkin_automata::langops::verify_characterization;
use motzkin_automata::seq::motzkin_residue_tables;
use motzkin_automata::{build_dfao, Dfao, PolyFp, Prime, StateId};

const LISTED: [u32; 7] = [7, 11, 13, 17, 19, 23, 29];
const ORACLE_PRIMES: [u32; 9] = [3, 5, 7, 11, 13, 17, 19, 23, 29];
const UPTO: usize = 20000;

type Outcome = Result<String, String>;

fn prime(p: u32) -> Prime {
    Prime::new(p as u64).unwrap()
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn ids(labels: &[usize]) -> BTreeSet<StateId> {
    labels.iter().map(|&l| StateId::from_label(l)).collect()
}

fn golden_states(p: u32) -> Vec<String> {
    let path = format!("{}/tests/golden/states{p}.txt", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{path}: {e}"))
        .lines()
        .map(str::to_string)
        .collect()
}

struct Ctx {
    machines: BTreeMap<u32, Dfao>,
    oracle: BTreeMap<u32, Vec<u32>>,
}

impl Ctx {
    fn dfao(&self, p: u32) -> &Dfao {
        &self.machines[&p]
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_polynomials(ctx: &Ctx) -> Outcome {
    for p in LISTED {
        let d = ctx.dfao(p);
        let golden = golden_states(p);
        for i in 0..2 {
            let got = d.state(StateId(i)).to_string();
            ensure(got == golden[i], || {
                format!("p = {p}: s[{}] is {got:?}, expected {:?}", i + 1, golden[i])
            })?;
        }
    }
    Ok("s[1], s[2] byte-identical for all seven primes".into())
}

fn state_counts(ctx: &Ctx) -> Outcome {
    let expected = [11, 17, 17, 23, 23, 29, 35];
    let got: Vec<usize> = LISTED.iter().map(|&p| ctx.dfao(p).len()).collect();
    ensure(got == expected, || format!("counts {got:?}, expected {expected:?}"))?;
    Ok(format!("{got:?}"))
}

fn oracle_agreement(ctx: &Ctx) -> Outcome {
    for p in ORACLE_PRIMES {
        let d = ctx.dfao(p);
        ensure(d.eval(0) == 1, || format!("p = {p}: eval(0) = {}", d.eval(0)))?;
        let table = &ctx.oracle[&p];
        for n in 1..=UPTO {
            let got = d.eval(n as u64);
            ensure(got == table[n], || {
                format!("p = {p}, n = {n}: automaton {got}, exact {}", table[n])
            })?;
        }
    }
    Ok(format!("1 <= n <= {UPTO} for p in {ORACLE_PRIMES:?}; eval(0) = 1"))
}

fn structural_facts(ctx: &Ctx) -> Outcome {
    let loops = [(7, 9), (11, 15), (13, 17), (17, 7), (19, 8), (23, 27), (29, 33)];
    let zeros: [(u32, [usize; 4]); 7] = [
        (7, [1, 2, 6, 9]),
        (11, [1, 2, 15, 16]),
        (13, [1, 2, 12, 17]),
        (17, [1, 2, 7, 22]),
        (19, [1, 2, 8, 16]),
        (23, [1, 2, 27, 28]),
        (29, [1, 2, 33, 34]),
    ];
    for ((p, l), (_, z)) in loops.into_iter().zip(zeros) {
        let d = ctx.dfao(p);
        let found = loop_states(d);
        ensure(found == ids(&[l]), || format!("p = {p}: loop states {found:?}"))?;
        ensure(d.output(StateId::from_label(l)) == 0, || format!("p = {p}: loop output"))?;
        let zs = zero_value_states(d);
        ensure(zs == ids(&z), || format!("p = {p}: zero states {zs:?}"))?;
    }
    let partitions: [(u32, &[u32], &[usize]); 3] = [
        (7, &[3], &[1, 6, 7]),
        (17, &[5, 11], &[1, 13, 14, 22, 23]),
        (19, &[4, 14], &[1, 16, 17]),
    ];
    for (p, digits, inside) in partitions {
        let d = ctx.dfao(p);
        let cert = find_absorbing_partition(d).ok_or_else(|| format!("p = {p}: no partition"))?;
        let want: BTreeSet<u32> = digits.iter().copied().collect();
        ensure(cert.digits == want, || format!("p = {p}: D = {:?}", cert.digits))?;
        ensure(cert.inside == ids(inside), || format!("p = {p}: A = {:?}", cert.inside))?;
        ensure(cert.holds(d), || format!("p = {p}: certificate does not hold"))?;
    }
    for p in [11, 13, 23, 29] {
        ensure(find_absorbing_partition(ctx.dfao(p)).is_none(), || {
            format!("p = {p}: unexpected partition")
        })?;
    }
    Ok("one zero loop state, four zero states; D = {3}, {5,11}, {4,14}".into())
}

fn congruence_families(ctx: &Ctx) -> Outcome {
    // (p, offset, exponent parity: 0 all / 1 odd / 2 even, residue)
    let families: [(u32, u64, u32, u32); 8] = [
        (7, 2, 0, 0),
        (7, 1, 0, 2),
        (17, 2, 2, 0),
        (17, 2, 1, 16),
        (17, 1, 2, 2),
        (17, 1, 1, 16),
        (19, 2, 0, 0),
        (19, 1, 0, 2),
    ];
    let admits = |parity: u32, k: u32| parity == 0 || (parity == 1) == (k % 2 == 1);
    let mut exact_checks = 0;
    for (p, offset, parity, residue) in families {
        let values = check_power_family(ctx.dfao(p), offset as u32, 30);
        for k in 1..=30u32 {
            if admits(parity, k) {
                ensure(values[k as usize - 1] == residue, || {
                    format!("automaton: p = {p}, k = {k}, offset {offset}: {}", values[k as usize - 1])
                })?;
            }
        }
        let table = &ctx.oracle[&p];
        let mut k = 1;
        while let Some(n) = (p as u64).checked_pow(k).map(|q| q - offset) {
            if n as usize > UPTO {
                break;
            }
            if admits(parity, k) {
                ensure(table[n as usize] == residue, || {
                    format!("exact: M_{n} = {} mod {p}", table[n as usize])
                })?;
                exact_checks += 1;
            }
            k += 1;
        }
    }
    Ok(format!("8 families, k <= 30 by automaton, {exact_checks} exact values"))
}

fn characterization(ctx: &Ctx) -> Outcome {
    let mut counts = Vec::new();
    for p in [11, 13, 23, 29] {
        let report = verify_characterization(ctx.dfao(p), UPTO as u64, Some(&ctx.oracle[&p]))
            .map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("p = {p}: {report:?}"))?;
        counts.push(report.oracle_count);
    }
    Ok(format!("equivalent and exact on n <= {UPTO}; zero counts {counts:?}"))
}

fn densities(ctx: &Ctx) -> Outcome {
    let parts: [(u32, [i64; 2]); 4] = [
        (11, [120, 1320]),
        (13, [156, 156]),
        (23, [528, 12144]),
        (29, [840, 24360]),
    ];
    for (p, [a, b]) in parts {
        let groups = characterization_sets(p).map_err(|e| e.to_string())?;
        for group in &groups {
            for ps in group {
                let got = pattern_density(ps).map_err(|e| e.to_string())?;
                ensure(got == ratio(1, a) || got == ratio(1, b), || {
                    format!("p = {p}: {} has density {got}", ps.describe())
                })?;
            }
        }
    }
    let sums = [(11, ratio(1, 55), 10), (13, ratio(1, 78), 10), (23, ratio(1, 253), 8), (29, ratio(22, 3045), 8)];
    let mut worst: f64 = 0.0;
    for (p, expected, depth) in sums {
        let got = characterization_density(p).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("p = {p}: sum {got}, expected {expected}"))?;
        let est = density_estimate(ctx.dfao(p), 0, depth);
        let diff = to_f64(&(est - &expected)).abs();
        ensure(diff < 1e-3, || format!("p = {p}: estimate off by {diff:e}"))?;
        worst = worst.max(diff);
    }
    Ok(format!("exact parts and sums; worst estimate error {worst:.3e}"))
}

fn density_one(ctx: &Ctx) -> Outcome {
    let mut summary = Vec::new();
    for p in [3, 7, 17, 19] {
        let report = density_one_certificate(ctx.dfao(p), 20, 200);
        ensure(report.zero_fraction >= 0.99, || {
            format!("p = {p}: zero fraction {}", report.zero_fraction)
        })?;
        ensure(report.max_ratio < p as f64, || {
            format!("p = {p}: ratio {} not below {p}", report.max_ratio)
        })?;
        summary.push(format!("p={p} ratio<={:.3}", report.max_ratio));
    }
    let five = to_f64(&density_estimate(ctx.dfao(5), 0, 12));
    ensure((five - 0.1).abs() < 1e-3, || format!("p = 5: estimate {five}"))?;
    Ok(format!("{}; p=5 estimate {five:.6}", summary.join(", ")))
}

fn arb_poly(p: u32) -> impl Strategy<Value = PolyFp> {
    proptest::collection::vec(((0u32..12, 0u32..12), 0..p as i64), 0..24)
        .prop_map(move |terms| PolyFp::from_terms(prime(p), terms))
}

fn arb_prime_poly() -> impl Strategy<Value = (PolyFp, PolyFp, u32, u32, u32)> {
    prop::sample::select(vec![2u32, 3, 5, 7, 11, 13])
        .prop_flat_map(|p| (arb_poly(p), arb_poly(p), 0..p, 0..p, 1..p))
}

fn property_suites(ctx: &Ctx) -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&arb_prime_poly(), |(f, g, r, s, c)| {
            let p = f.modulus();
            let lhs = f.scale(c).try_add(&g).unwrap().cartier(r, s);
            let rhs = f.cartier(r, s).scale(c).try_add(&g.cartier(r, s)).unwrap();
            prop_assert_eq!(lhs, rhs);

            let mut rebuilt = PolyFp::zero(f.prime());
            for a in 0..p {
                for b in 0..p {
                    rebuilt = rebuilt.try_add(&f.cartier(a, b).inflate().shift(a, b)).unwrap();
                }
            }
            prop_assert_eq!(&rebuilt, &f);

            prop_assert_eq!(g.pow(p as u64), g.inflate());
            let lhs = g.inflate().try_mul(&f).unwrap().cartier(r, s);
            prop_assert_eq!(lhs, g.try_mul(&f.cartier(r, s)).unwrap());
            Ok(())
        })
        .map_err(|e| format!("Cartier properties: {e}"))?;

    for (p, d) in &ctx.machines {
        for u in d.state_ids() {
            ensure(d.output(d.step(u, 0)) == d.output(u), || {
                format!("p = {p}: leading zero changes the output of {u}")
            })?;
        }
    }

    let small: Vec<Prime> = [2u32, 3, 5, 7, 11, 13].into_iter().map(prime).collect();
    let tables = motzkin_residue_tables(&small, 13usize.pow(4));
    for (p, table) in &tables {
        let d = build_dfao(*p);
        for k in 1..=4 {
            let bound = (p.get() as usize).pow(k as u32);
            let mut direct = vec![0u64; p.get() as usize];
            for n in 0..bound {
                direct[table[n] as usize] += 1;
            }
            let dp: Vec<u64> = count_residues(&d, k)
                .counts
                .iter()
                .map(|c| u64::try_from(c).unwrap())
                .collect();
            ensure(dp == direct, || format!("p = {p}, K = {k}: {dp:?} vs {direct:?}"))?;
        }
    }
    Ok("1000 Cartier cases, leading-zero invariance, DP = enumeration".into())
}

fn motif(ctx: &Ctx) -> Outcome {
    let mut out = Vec::new();
    for p in [11, 13, 23, 29] {
        let bound = motif_lower_bound(ctx.dfao(p)).ok_or_else(|| format!("p = {p}: no motif"))?;
        let pp = p as i64;
        ensure(bound == ratio(2, pp * (pp - 1)), || format!("p = {p}: bound {bound}"))?;
        let exact = characterization_density(p).map_err(|e| e.to_string())?;
        if p == 29 {
            ensure(bound < exact, || format!("p = 29: {bound} not below {exact}"))?;
        } else {
            ensure(bound == exact, || format!("p = {p}: {bound} differs from {exact}"))?;
        }
        out.push(format!("p={p} {bound}"));
    }
    Ok(out.join(", "))
}

type Criterion = (u32, &'static str, fn(&Ctx) -> Outcome, Duration);

fn main() {
    let start = Instant::now();
    let machines: BTreeMap<u32, Dfao> = ORACLE_PRIMES
        .iter()
        .map(|&p| (p, build_dfao(prime(p))))
        .collect();
    let build_time = start.elapsed();
    let primes: Vec<Prime> = ORACLE_PRIMES.iter().map(|&p| prime(p)).collect();
    let oracle = motzkin_residue_tables(&primes, UPTO + 1)
        .into_iter()
        .map(|(p, t)| (p.get(), t))
        .collect();
    let oracle_time = start.elapsed() - build_time;
    let ctx = Ctx { machines, oracle };

    let secs = Duration::from_secs;
    let criteria: [Criterion; 10] = [
        (1, "golden state polynomials", golden_polynomials, secs(1)),
        (2, "state counts", state_counts, secs(5)),
        (3, "oracle agreement", oracle_agreement, secs(120)),
        (4, "structural facts", structural_facts, secs(30)),
        (5, "congruence families", congruence_families, secs(30)),
        (6, "characterization equivalence", characterization, secs(30)),
        (7, "densities", densities, secs(10)),
        (8, "density-one primes", density_one, secs(10)),
        (9, "property suites", property_suites, secs(30)),
        (10, "motif lower bound", motif, secs(30)),
    ];

    let mut failed = 0;
    for (id, name, check, budget) in criteria {
        let t = Instant::now();
        let mut result = check(&ctx);
        let mut elapsed = t.elapsed();
        // construction and the shared oracle table count toward the
        // criteria that need them
        match id {
            1 | 2 => elapsed += build_time,
            3 => elapsed += oracle_time,
            _ => {}
        }
        if result.is_ok() && elapsed > budget {
            result = Err(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        match result {
            Ok(detail) => println!("PASS [{id}] {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{id}] {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
