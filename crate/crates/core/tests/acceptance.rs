//! Acceptance criteria, one line per criterion. Oracles here are computed
//! independently of the library's class and rank machinery.
//!
//! Criterion 6 as stated cannot hold: `Δ(G,A)/Δ(G)Δ(A) ≅ A/A'`, so a central `z ≠ 1`
//! lying in `A'` always gives `z - 1 ∈ Δ(G)Δ(A)`, whatever the ranks. The criterion is
//! run as stated and reported as FAIL; the process only fails if the L0 suite finds
//! anything beyond those predicted instances.
//!
//! Criterion 5 as stated cannot hold either: the Sylow conditions are checked on each
//! part separately and ignore that one conjugator must fix the sign on both parts at once.
//! In `C12 = C4 x C3` both parts are cut, yet `x^5` is neither `x` nor `x^-1`. Such a
//! failure needs an element of order divisible by 12. The suite is run as stated; only
//! failures outside this pattern count.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cutgroup::catalog::{abelian, catalog, GroupSpec};
use cutgroup::families::{metacyclic_is_cut, MetacyclicParams};
use cutgroup::rs::{is_cut, rank_central_units};
use cutgroup::subgroup::{center, commutator_subgroup, Subgroup};
use cutgroup::verify::{
    replay, suite_c0, suite_l0, suite_nilpotent, suite_p0, suite_p1, suite_pgroup, suite_t3, Catalog, Finding,
    SuiteReport, T3Config,
};
use cutgroup::{Error, FiniteGroup};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Number of elements of order exactly `d` in `C_{n1} x ... x C_{nk}`, by inclusion-exclusion
/// over the counts `Π gcd(e, n_i)` of elements killed by `e`.
fn elements_of_order(invariants: &[u64], d: u64) -> i64 {
    let killed = |e: u64| invariants.iter().map(|&n| gcd(e, n)).product::<u64>() as i64;
    divisors(d).into_iter().map(|e| mobius(d / e) * killed(e)).sum()
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1i64, 2u64);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// `Σ_{d > 2} (cyclic subgroups of order d) · (φ(d)/2 - 1)`: the unit rank of `QG` for
/// abelian `G`, from the cyclotomic fields `Q(ζ_d)`.
fn abelian_rank_oracle(invariants: &[u64]) -> i64 {
    let exponent = invariants.iter().fold(1, |a, &n| a / gcd(a, n) * n);
    divisors(exponent)
        .into_iter()
        .filter(|&d| d > 2)
        .map(|d| elements_of_order(invariants, d) / phi(d) as i64 * (phi(d) as i64 / 2 - 1))
        .sum()
}

/// Abelian groups of order `n` as invariant-factor lists (each dividing the next).
fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![vec![]];
        }
        (1..=k.min(max))
            .rev()
            .flat_map(|first| {
                partitions(k - first, first).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if k > 0 {
            primes.push((p, k));
        }
        p += 1;
    }
    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for (p, k) in primes {
        let mut next = Vec::new();
        for current in &out {
            for part in partitions(k, k) {
                // merge the p-parts into invariant factors, largest first
                let mut inv = current.clone();
                let len = inv.len().max(part.len());
                inv.resize(len, 1);
                for (i, &e) in part.iter().enumerate() {
                    inv[i] *= p.pow(e);
                }
                next.push(inv);
            }
        }
        out = next;
    }
    for inv in &mut out {
        inv.sort_unstable();
    }
    out
}

/// The definition: every `x^j` with `gcd(j, o(x)) = 1` is conjugate to `x` or `x^-1`,
/// found by conjugating with every group element.
fn brute_force_cut(g: &FiniteGroup) -> bool {
    (0..g.order()).all(|x| {
        let orbit: BTreeSet<usize> = (0..g.order()).map(|y| g.mul(g.mul(y, x), g.inv(y))).collect();
        let o = g.element_order(x) as u64;
        (1..=o).filter(|&j| gcd(j, o) == 1).all(|j| {
            let p = g.pow(x, j as i64);
            orbit.contains(&p) || orbit.contains(&g.inv(p))
        })
    })
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn criterion_1() -> Outcome {
    let mut mismatches = Vec::new();
    for n in 1..=100u64 {
        let oracle: i64 = divisors(n)
            .into_iter()
            .filter(|&d| d > 2)
            .map(|d| phi(d) as i64 / 2 - 1)
            .sum();
        let got = rank_central_units(&catalog("cyclic", &[n as i64]).unwrap()) as i64;
        if got != oracle {
            mismatches.push(format!("C{n}: {got} vs {oracle}"));
        }
    }
    let mut abelian_count = 0;
    for n in 1..=64u64 {
        for inv in abelian_groups_of_order(n) {
            abelian_count += 1;
            let g = abelian(&inv.iter().map(|&x| x as usize).collect::<Vec<_>>()).unwrap();
            let got = rank_central_units(&g) as i64;
            let oracle = abelian_rank_oracle(&inv);
            if got != oracle {
                mismatches.push(format!("{inv:?}: {got} vs {oracle}"));
            }
        }
    }
    Outcome {
        passed: mismatches.is_empty() && abelian_count == 117,
        detail: format!("100 cyclic and {abelian_count} abelian groups; mismatches {mismatches:?}"),
    }
}

fn criterion_2() -> Outcome {
    let cat = Catalog::default_catalog(200).unwrap();
    let bad: Vec<String> = cat
        .entries()
        .iter()
        .filter(|e| {
            let cut = is_cut(&e.group).outcome;
            cut != (rank_central_units(&e.group) == 0) || cut != brute_force_cut(&e.group)
        })
        .map(|e| e.label.clone())
        .collect();
    Outcome {
        passed: bad.is_empty(),
        detail: format!("{} groups up to order 200; disagreements {bad:?}", cat.len()),
    }
}

fn criterion_3() -> Outcome {
    let cat = Catalog::default_catalog(100).unwrap();
    let (p0, p1) = (suite_p0(&cat), suite_p1(&cat));
    Outcome {
        passed: p0.passed() && p1.passed() && p0.nonvacuous > 0 && p1.nonvacuous > 0,
        detail: format!("{}; {}", p0.summary(), p1.summary()),
    }
}

fn criterion_4() -> Outcome {
    let report = suite_pgroup(&Catalog::default_catalog(81).unwrap());
    let cat = Catalog::default_catalog(81).unwrap();
    let orders: BTreeSet<usize> = cat.entries().iter().map(|e| e.order()).collect();
    let covers = orders.contains(&64) && orders.contains(&81) && orders.contains(&25);
    Outcome {
        passed: report.passed() && covers,
        detail: report.summary(),
    }
}

/// Whether every nilpotent failure is a non-cut group satisfying all three conditions
/// and containing an element of order divisible by 12, confirmed by the definition.
fn nilpotent_failures_are_predicted(report: &SuiteReport) -> bool {
    report.failures.iter().all(|f| match f.finding {
        Finding::NilpotentMismatch {
            cut: false,
            primes_ok: true,
            two_part_ok: true,
            three_part_ok: true,
        } => {
            let g = f.spec.build().unwrap();
            (0..g.order()).any(|x| g.element_order(x) % 12 == 0) && !brute_force_cut(&g)
        }
        _ => false,
    })
}

fn criterion_5() -> (Outcome, bool) {
    let report = suite_nilpotent(&Catalog::default_catalog(144).unwrap());
    let predicted = nilpotent_failures_are_predicted(&report);
    let groups: Vec<&str> = report.failures.iter().map(|f| f.group.as_str()).collect();
    let outcome = Outcome {
        passed: report.passed() && report.nonvacuous > 0,
        detail: format!(
            "{}; every failure is a non-cut group with an element of order 12k meeting all conditions: {predicted}; groups {groups:?}",
            report.summary()
        ),
    };
    (outcome, predicted && report.nonvacuous > 0)
}

/// Whether every L0 failure is a central `z ∈ A'` (the predicted instances) that replays.
fn l0_failures_are_predicted(report: &SuiteReport) -> bool {
    report.failures.iter().all(|f| match &f.finding {
        Finding::TrivialUnitInLattice { normal, z, sign } => {
            let g = f.spec.build().unwrap();
            let a = Subgroup::from_members(&g, normal).unwrap();
            *sign == 1 && center(&g).contains(*z) && commutator_subgroup(&g, &a, &a).contains(*z) && replay(f).unwrap()
        }
        _ => false,
    })
}

fn criterion_6() -> (Outcome, bool) {
    let report = suite_l0(&Catalog::default_catalog(48).unwrap());
    let predicted = l0_failures_are_predicted(&report);
    let groups: BTreeSet<&str> = report.failures.iter().map(|f| f.group.as_str()).collect();
    let outcome = Outcome {
        passed: report.passed(),
        detail: format!(
            "{}; every failure is z - 1 with central z in A' (replayed): {predicted}; groups {groups:?}",
            report.summary()
        ),
    };
    (outcome, predicted && report.skipped.is_empty())
}

fn criterion_7() -> Outcome {
    let report = suite_c0(&Catalog::default_catalog(100).unwrap());
    Outcome {
        passed: report.passed() && report.nonvacuous > 0,
        detail: report.summary(),
    }
}

fn criterion_8() -> Outcome {
    let report = suite_t3(&Catalog::default_catalog(48).unwrap(), &T3Config::default());
    Outcome {
        passed: report.passed() && report.review.is_empty(),
        detail: report.summary(),
    }
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for m in 3..=200u64 {
        for r in (1..m).filter(|&r| gcd(r, m) == 1) {
            let p = MetacyclicParams::new(m, 0, r as i64).unwrap();
            // conjugates of a are a^(±r^t); a is RS iff these exponents exhaust U(m)
            let mut orbit = BTreeSet::new();
            let mut x = 1;
            loop {
                orbit.insert(x);
                orbit.insert(m - x);
                x = x * r % m;
                if x == 1 {
                    break;
                }
            }
            let full = orbit.len() as u64 == phi(m);
            match metacyclic_is_cut(&p) {
                Ok(v) if v.outcome == Some(full) => count += 1,
                Err(Error::Abelian(_)) if r == 1 => count += 1,
                other => bad.push(format!("m={m} r={r}: {other:?}")),
            }
        }
    }
    for n in (0..=200u64).step_by(2) {
        let expect = [0, 2, 4, 6, 8, 12].contains(&n);
        let got = metacyclic_is_cut(&MetacyclicParams::new(0, n, -1).unwrap()).map(|v| v.outcome);
        if got != Ok(Some(expect)) {
            bad.push(format!("n={n}: {got:?}"));
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("{count} pairs (m, r) and 101 values of n; disagreements {bad:?}"),
    }
}

fn criterion_10() -> Outcome {
    let spec = |name: &str, p: &[i64]| GroupSpec::catalog(name, p);
    let cut = [
        spec("symmetric", &[3]),
        spec("symmetric", &[4]),
        spec("alternating", &[4]),
        spec("quaternion", &[8]),
        spec("dihedral", &[8]),
        spec("cyclic", &[4]),
        spec("cyclic", &[6]),
    ];
    let not_cut = [
        spec("cyclic", &[5]),
        spec("cyclic", &[7]),
        spec("cyclic", &[9]),
        GroupSpec::product(vec![spec("cyclic", &[2]), spec("cyclic", &[9])]),
    ];
    let mut bad = Vec::new();
    for (specs, expect) in [(&cut[..], true), (&not_cut[..], false)] {
        for s in specs {
            let g = s.build().unwrap();
            if is_cut(&g).outcome != expect || brute_force_cut(&g) != expect {
                bad.push(s.label());
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("wrong verdicts {bad:?}"),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> (Outcome, bool)>)> = vec![
        (
            "1 rank oracle",
            Duration::from_secs(30),
            Box::new(|| (criterion_1(), true)),
        ),
        (
            "2 criterion equivalence",
            Duration::from_secs(120),
            Box::new(|| (criterion_2(), true)),
        ),
        (
            "3 quotient suites",
            Duration::from_secs(300),
            Box::new(|| (criterion_3(), true)),
        ),
        (
            "4 p-group suite",
            Duration::from_secs(300),
            Box::new(|| (criterion_4(), true)),
        ),
        ("5 nilpotent suite", Duration::from_secs(300), Box::new(criterion_5)),
        (
            "6 rank and lattice suite",
            Duration::from_secs(600),
            Box::new(criterion_6),
        ),
        (
            "7 solvable prime bound",
            Duration::from_secs(600),
            Box::new(|| (criterion_7(), true)),
        ),
        (
            "8 central unit suite",
            Duration::from_secs(300),
            Box::new(|| (criterion_8(), true)),
        ),
        (
            "9 metacyclic agreement",
            Duration::from_secs(10),
            Box::new(|| (criterion_9(), true)),
        ),
        (
            "10 spot facts",
            Duration::from_secs(10),
            Box::new(|| (criterion_10(), true)),
        ),
    ];
    // numeric arguments select criteria; anything else (test-harness flags) is ignored
    let selected: Vec<String> = std::env::args().skip(1).filter(|a| a.parse::<u32>().is_ok()).collect();
    let mut unexpected = 0;
    for (name, budget, run) in criteria {
        let number = name.split(' ').next().unwrap_or_default();
        if !selected.is_empty() && !selected.iter().any(|s| s == number) {
            continue;
        }
        let start = Instant::now();
        let (outcome, expected_ok) = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = outcome.passed && in_time;
        println!(
            "criterion {name}: {} [{:.2}s of {}s] {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            outcome.detail
        );
        // a stated failure is acceptable only where the analysis predicts it exactly
        if !(pass || (!outcome.passed && expected_ok && (name.starts_with("5 ") || name.starts_with("6 ")) && in_time))
        {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
