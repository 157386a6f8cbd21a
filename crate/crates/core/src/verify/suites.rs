use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::catalog::{Catalog, CatalogEntry};
use super::report::{Failure, Finding, Skip, SuiteReport};
use crate::classes::ClassData;
use crate::construct::{conjugation_quotient_with_base, quotient};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::AugmentationLattice;
use crate::numtheory::{coprime_residues, prime_divisors};
use crate::ring::{GroupRing, GroupRingElement};
use crate::rs::{is_cut, is_rs_subgroup, pi_primes, pi_primes_of, rank_central_units, rank_preserved, rs_class_status};
use crate::subgroup::{center, is_nilpotent, is_solvable, normal_subgroups, sylow_part, Subgroup};

pub const SUITE_NAMES: &[&str] = &["P0", "P1", "pgroup", "nilpotent", "L0", "c0", "T3"];

/// Primes allowed in `A` when the hypotheses of the solvable-group bound hold.
pub const SOLVABLE_PRIME_BOUND: &[u64] = &[2, 3, 5, 7];

#[derive(Default)]
struct Tally {
    checks: usize,
    nonvacuous: usize,
    failures: Vec<Finding>,
    review: Vec<Finding>,
    skipped: Vec<String>,
}

fn run<F>(suite: &str, catalog: &Catalog, check: F) -> SuiteReport
where
    F: Fn(usize, &CatalogEntry) -> Result<Tally> + Sync,
{
    let start = Instant::now();
    let tallies: Vec<Tally> = catalog
        .entries()
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            check(i, e).unwrap_or_else(|err| Tally {
                checks: 1,
                failures: vec![Finding::Error {
                    message: err.to_string(),
                }],
                ..Tally::default()
            })
        })
        .collect();
    let mut report = SuiteReport {
        suite: suite.to_string(),
        groups: catalog.len(),
        max_order: catalog.max_order(),
        checks: 0,
        nonvacuous: 0,
        failures: Vec::new(),
        review: Vec::new(),
        skipped: Vec::new(),
        elapsed: Default::default(),
    };
    for (entry, t) in catalog.entries().iter().zip(tallies) {
        let tag = |finding| Failure {
            group: entry.label.clone(),
            spec: entry.spec.clone(),
            finding,
        };
        report.checks += t.checks;
        report.nonvacuous += t.nonvacuous;
        report.failures.extend(t.failures.into_iter().map(tag));
        report.review.extend(t.review.into_iter().map(tag));
        report.skipped.extend(t.skipped.into_iter().map(|reason| Skip {
            group: entry.label.clone(),
            reason,
        }));
    }
    report.elapsed = start.elapsed();
    report
}

/// `A/N` is RS in `G/N` whenever `A ⊇ N` is RS in `G`, for normal `N` and `A`.
pub fn suite_p1(catalog: &Catalog) -> SuiteReport {
    run("P1", catalog, |_, e| {
        let g = &*e.group;
        let mut t = Tally::default();
        let status = rs_class_status(g);
        let data = ClassData::of(g);
        let normals = normal_subgroups(g);
        let rs: Vec<bool> = normals
            .iter()
            .map(|a| a.members().iter().all(|&x| status[data.class_of[x]].is_none()))
            .collect();
        for n in normals.iter() {
            let above: Vec<(&Subgroup, bool)> = normals
                .iter()
                .zip(&rs)
                .filter(|(a, _)| n.is_subgroup_of(a))
                .map(|(a, &r)| (a, r))
                .collect();
            t.checks += above.len();
            if !above.iter().any(|&(_, r)| r) {
                continue;
            }
            let (q, proj) = quotient(g, n)?;
            for (a, _) in above.into_iter().filter(|&(_, r)| r) {
                t.nonvacuous += 1;
                let v = is_rs_subgroup(&q, &proj.map_subgroup(&q, a))?;
                if let (false, Some(witness)) = (v.outcome, v.witness) {
                    t.failures.push(Finding::QuotientNotRs {
                        normal: n.members().to_vec(),
                        subgroup: a.members().to_vec(),
                        witness,
                    });
                }
            }
        }
        Ok(t)
    })
}

/// Quotients of cut groups by normal subgroups are cut.
pub fn suite_p0(catalog: &Catalog) -> SuiteReport {
    run("P0", catalog, |_, e| {
        let g = &*e.group;
        let mut t = Tally::default();
        let normals = normal_subgroups(g);
        t.checks += normals.len();
        if !is_cut(g).outcome {
            return Ok(t);
        }
        for n in normals.iter() {
            t.nonvacuous += 1;
            let v = is_cut(&quotient(g, n)?.0);
            if let (false, Some(witness)) = (v.outcome, v.witness) {
                t.failures.push(Finding::QuotientNotCut {
                    normal: n.members().to_vec(),
                    witness,
                });
            }
        }
        Ok(t)
    })
}

/// The prime `p` if `|G|` is a nontrivial power of `p`.
pub fn p_group_prime(group: &FiniteGroup) -> Option<u64> {
    match prime_divisors(group.order() as u64).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

fn cubes_conjugate(g: &FiniteGroup, data: &ClassData, x: usize) -> bool {
    let c = data.class_of[g.pow(x, 3)];
    c == data.class_of[x] || c == data.class_of[g.inv(x)]
}

fn square_conjugate_to_inverse(g: &FiniteGroup, data: &ClassData, x: usize) -> bool {
    data.class_of[g.pow(x, 2)] == data.class_of[g.inv(x)]
}

/// For a p-group: `p = 2` and `a^3 ~ a^±1` for all `a`, or `p = 3` and `a^2 ~ a^-1` for all `a`.
pub fn pgroup_condition(group: &FiniteGroup, p: u64) -> bool {
    let data = ClassData::of(group);
    match p {
        2 => (0..group.order()).all(|x| cubes_conjugate(group, &data, x)),
        3 => (0..group.order()).all(|x| square_conjugate_to_inverse(group, &data, x)),
        _ => false,
    }
}

/// Cut p-groups are exactly those satisfying [`pgroup_condition`], and occur only for
/// `p ∈ {2, 3}`. Groups that are not of prime power order are ignored.
pub fn suite_pgroup(catalog: &Catalog) -> SuiteReport {
    let pgroups = catalog.filter(|e| p_group_prime(&e.group).is_some());
    run("pgroup", &pgroups, |_, e| {
        let g = &*e.group;
        let p = p_group_prime(g).expect("filtered to p-groups");
        let mut t = Tally {
            checks: 2,
            nonvacuous: 1,
            ..Tally::default()
        };
        let cut = is_cut(g).outcome;
        let condition = pgroup_condition(g, p);
        if cut != condition {
            t.failures.push(Finding::PGroupMismatch {
                prime: p,
                cut,
                condition,
            });
        }
        if cut && p != 2 && p != 3 {
            t.failures.push(Finding::CutPGroupOddPrime { prime: p });
        }
        Ok(t)
    })
}

/// `(π(G) ⊆ {2, 3}, 2-part condition, 3-part condition)` for a nilpotent group.
pub fn nilpotent_conditions(group: &FiniteGroup) -> Result<(bool, bool, bool)> {
    let data = ClassData::of(group);
    let primes_ok = pi_primes(group).iter().all(|&p| p == 2 || p == 3);
    let two = sylow_part(group, 2)?;
    let three = sylow_part(group, 3)?;
    let two_ok = two.members().iter().all(|&x| cubes_conjugate(group, &data, x));
    let three_ok = three
        .members()
        .iter()
        .all(|&x| square_conjugate_to_inverse(group, &data, x));
    Ok((primes_ok, two_ok, three_ok))
}

/// A nilpotent group is cut iff `π(G) ⊆ {2, 3}`, every 2-element satisfies
/// `a^3 ~ a^±1` and every 3-element satisfies `a^2 ~ a^-1`.
pub fn suite_nilpotent(catalog: &Catalog) -> SuiteReport {
    run("nilpotent", catalog, |_, e| {
        let g = &*e.group;
        if !is_nilpotent(g) {
            return Ok(Tally {
                skipped: vec![Error::NotNilpotent.to_string()],
                ..Tally::default()
            });
        }
        let mut t = Tally {
            checks: 1,
            nonvacuous: 1,
            ..Tally::default()
        };
        let cut = is_cut(g).outcome;
        let (primes_ok, two_part_ok, three_part_ok) = nilpotent_conditions(g)?;
        if cut != (primes_ok && two_part_ok && three_part_ok) {
            t.failures.push(Finding::NilpotentMismatch {
                cut,
                primes_ok,
                two_part_ok,
                three_part_ok,
            });
        }
        Ok(t)
    })
}

/// `sign·z - 1` in `ZG`.
pub fn trivial_unit_minus_one(z: usize, sign: i8) -> GroupRingElement {
    GroupRingElement::from_pairs(&[(z, sign as i64), (0, -1)])
}

/// For every normal `A`: `ρ(G/A) ≤ ρ(G)`, and when equal no trivial central unit other
/// than 1 lies in `1 + Δ(G)Δ(A)`.
pub fn suite_l0(catalog: &Catalog) -> SuiteReport {
    run("L0", catalog, |_, e| {
        let g = &*e.group;
        let mut t = Tally::default();
        let rg = rank_central_units(g);
        let z = center(g);
        for a in normal_subgroups(g).iter() {
            t.checks += 1;
            let rq = rank_central_units(&quotient(g, a)?.0);
            if rq > rg {
                t.failures.push(Finding::RankIncreased {
                    normal: a.members().to_vec(),
                    group_rank: rg,
                    quotient_rank: rq,
                });
                continue;
            }
            if rq < rg {
                continue;
            }
            let lattice = match AugmentationLattice::of(g, a) {
                Ok(l) => l,
                Err(err @ Error::LatticeCapExceeded { .. }) => {
                    t.skipped.push(format!("normal subgroup of order {}: {err}", a.order()));
                    continue;
                }
                Err(err) => return Err(err),
            };
            t.nonvacuous += 1;
            for &c in z.members() {
                for sign in [1i8, -1] {
                    if c == 0 && sign == 1 {
                        continue;
                    }
                    t.checks += 1;
                    if lattice.contains(&trivial_unit_minus_one(c, sign))? {
                        t.failures.push(Finding::TrivialUnitInLattice {
                            normal: a.members().to_vec(),
                            z: c,
                            sign,
                        });
                    }
                }
            }
        }
        Ok(t)
    })
}

/// Whether `H = A ⋊ G/C_G(A)` satisfies `ρ(H) = ρ(H/A)` and `H/A` is cut.
pub fn c0_hypotheses(group: &FiniteGroup, normal: &Subgroup) -> Result<bool> {
    let (h, base) = conjugation_quotient_with_base(group, normal)?;
    if !is_cut(&quotient(&h, &base)?.0).outcome {
        return Ok(false);
    }
    Ok(rank_preserved(&h, &base)?.outcome)
}

/// For solvable `G` and normal `A`: if `H = A ⋊ G/C_G(A)` has `ρ(H) = ρ(H/A)` and `H/A`
/// is cut, then `π(A) ⊆ {2, 3, 5, 7}`.
pub fn suite_c0(catalog: &Catalog) -> SuiteReport {
    run("c0", catalog, |_, e| {
        let g = &*e.group;
        if !is_solvable(g) {
            return Ok(Tally {
                skipped: vec!["group is not solvable".into()],
                ..Tally::default()
            });
        }
        let mut t = Tally::default();
        for a in normal_subgroups(g).iter() {
            t.checks += 1;
            match c0_hypotheses(g, a) {
                Ok(true) => {}
                Ok(false) => continue,
                Err(err @ Error::ClosureCapExceeded { .. }) => {
                    t.skipped.push(format!("normal subgroup of order {}: {err}", a.order()));
                    continue;
                }
                Err(err) => return Err(err),
            }
            t.nonvacuous += 1;
            let bad: Vec<u64> = pi_primes_of(g, a)?
                .into_iter()
                .filter(|p| !SOLVABLE_PRIME_BOUND.contains(p))
                .collect();
            if !bad.is_empty() {
                t.failures.push(Finding::PrimeOutsideBound {
                    normal: a.members().to_vec(),
                    primes: bad,
                });
            }
        }
        Ok(t)
    })
}

/// Parameters of the central unit suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T3Config {
    /// Trivial central units are sampled on groups up to this order.
    pub trivial_max_order: usize,
    /// Bass units are sampled on abelian groups up to this order.
    pub bass_max_order: usize,
    /// Powers of `θ(u)` tried are bounded by `|G|` times this factor.
    pub torsion_factor: u64,
    /// Random pairs per group for the multiplicativity of `θ`.
    pub pair_samples: usize,
    pub seed: u64,
    /// Groups up to this order that are not cut are searched for symmetric central units.
    pub symmetric_search_max_order: usize,
    /// Coefficient box `-bound..=bound` for that search.
    pub coefficient_bound: i64,
}

impl Default for T3Config {
    fn default() -> Self {
        T3Config {
            trivial_max_order: 48,
            bass_max_order: 30,
            torsion_factor: 12,
            pair_samples: 16,
            seed: 0,
            symmetric_search_max_order: 8,
            coefficient_bound: 2,
        }
    }
}

/// Checks the three properties of `θ` on one central unit with known inverse.
pub fn theta_findings(
    ring: &GroupRing,
    u: &GroupRingElement,
    inverse: &GroupRingElement,
    torsion_bound: u64,
) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    let t = ring.theta_with_inverse(u, inverse)?;
    if !ring.is_symmetric(&t)? {
        out.push(Finding::ThetaNotSymmetric { unit: u.clone() });
    }
    if let Some(order) = ring.central_unit_order(&t, torsion_bound)? {
        if !t.is_one() {
            out.push(Finding::ThetaTorsion { unit: u.clone(), order });
        }
    }
    if ring.center_factor(u, &t).is_none() {
        out.push(Finding::NoCenterFactor { unit: u.clone() });
    }
    Ok(out)
}

/// Bass units `u_k(g)` paired with their inverses, for every `g ≠ 1` and every `k` in
/// `1..o(g)` coprime to `o(g)`.
pub fn bass_units(group: &FiniteGroup) -> Result<Vec<(GroupRingElement, GroupRingElement)>> {
    let ring = GroupRing::new(group);
    let mut out = Vec::new();
    for g in 1..group.order() {
        let n = group.element_order(g) as u64;
        for k in coprime_residues(n).filter(|&k| k < n) {
            out.push((ring.bass_unit(g, k)?, ring.bass_unit_inverse(g, k)?));
        }
    }
    Ok(out)
}

/// A symmetric central unit other than `±z`, with coefficients in `-bound..=bound`.
///
/// Symmetric central elements are constant on real classes, so the search runs over one
/// coefficient per real class.
pub fn find_symmetric_unit(group: &FiniteGroup, bound: i64) -> Result<Option<GroupRingElement>> {
    let ring = GroupRing::new(group);
    let blocks = ClassData::of(group).r_class_partition();
    let width = (2 * bound + 1) as u64;
    let total = width
        .checked_pow(blocks.len() as u32)
        .ok_or(Error::ArithmeticOverflow)?;
    for code in 1..total {
        let mut rest = code;
        let mut coords = vec![0i128; group.order()];
        for block in &blocks {
            let c = (rest % width) as i128 - bound as i128;
            rest /= width;
            for &x in block {
                coords[x] = c;
            }
        }
        let u = GroupRingElement::from_i128_coords(&coords);
        let aug = u.augmentation();
        if aug != BigInt::from(1) && aug != BigInt::from(-1) {
            continue;
        }
        if !ring.is_trivial_unit(&u)? && ring.is_unit(&u)? {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Central units `u` (trivial units on every group, Bass units on abelian groups):
/// `θ(u) = u u*` is symmetric, `θ(u)` of finite order is 1, `u^2 = z θ(u)` for some
/// central `z`, and `θ` is multiplicative on sampled pairs.
pub fn suite_t3(catalog: &Catalog, config: &T3Config) -> SuiteReport {
    let scope = catalog.up_to(config.trivial_max_order);
    run("T3", &scope, |i, e| {
        let g = &*e.group;
        let ring = GroupRing::new(g);
        let bound = g.order() as u64 * config.torsion_factor;
        let mut t = Tally::default();
        let mut units: Vec<(GroupRingElement, GroupRingElement)> = Vec::new();
        for &z in center(g).members() {
            for sign in [1, -1] {
                units.push((
                    GroupRingElement::from_pairs(&[(z, sign)]),
                    GroupRingElement::from_pairs(&[(g.inv(z), sign)]),
                ));
            }
        }
        let bass = if g.is_abelian() && g.order() <= config.bass_max_order {
            bass_units(g)?
        } else {
            Vec::new()
        };
        units.extend(bass.iter().cloned());
        for (u, inv) in &units {
            t.checks += 1;
            t.nonvacuous += 1;
            t.failures.extend(theta_findings(&ring, u, inv, bound)?);
        }
        if !bass.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            for _ in 0..config.pair_samples {
                let (u, u_inv) = &bass[rng.random_range(0..bass.len())];
                let (v, v_inv) = &bass[rng.random_range(0..bass.len())];
                t.checks += 1;
                let uv = ring.mul(u, v)?;
                let uv_inv = ring.mul(v_inv, u_inv)?;
                let lhs = ring.theta_with_inverse(&uv, &uv_inv)?;
                let rhs = ring.mul(&ring.theta_with_inverse(u, u_inv)?, &ring.theta_with_inverse(v, v_inv)?)?;
                if lhs != rhs {
                    t.failures.push(Finding::ThetaNotMultiplicative {
                        u: u.clone(),
                        v: v.clone(),
                    });
                }
            }
        }
        if g.order() <= config.symmetric_search_max_order && !is_cut(g).outcome {
            t.checks += 1;
            if find_symmetric_unit(g, config.coefficient_bound)?.is_none() {
                t.review.push(Finding::NoSymmetricUnitFound {
                    bound: config.coefficient_bound,
                });
            }
        }
        Ok(t)
    })
}

/// Options shared by the suites when run by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Largest group order; `None` uses the suite's default.
    pub max_order: Option<usize>,
    pub seed: u64,
}

pub fn default_max_order(suite: &str) -> Option<usize> {
    Some(match suite {
        "P0" | "P1" | "c0" => 100,
        "pgroup" => 81,
        "nilpotent" => 144,
        "L0" | "T3" => 48,
        _ => return None,
    })
}

pub fn run_suite(suite: &str, options: &SuiteOptions) -> Result<SuiteReport> {
    let max = options
        .max_order
        .or_else(|| default_max_order(suite))
        .ok_or_else(|| Error::InvalidParams(format!("unknown suite `{suite}`")))?;
    let catalog = Catalog::default_catalog(max)?;
    Ok(match suite {
        "P0" => suite_p0(&catalog),
        "P1" => suite_p1(&catalog),
        "pgroup" => suite_pgroup(&catalog),
        "nilpotent" => suite_nilpotent(&catalog),
        "L0" => suite_l0(&catalog),
        "c0" => suite_c0(&catalog),
        "T3" => {
            let config = T3Config {
                trivial_max_order: max,
                bass_max_order: max.min(T3Config::default().bass_max_order),
                seed: options.seed,
                ..T3Config::default()
            };
            suite_t3(&catalog, &config)
        }
        _ => unreachable!("checked above"),
    })
}

pub fn run_all(options: &SuiteOptions) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES.iter().map(|s| run_suite(s, options)).collect()
}

/// Recomputes a failure from its group spec; `true` when the failure reproduces.
pub fn replay(failure: &Failure) -> Result<bool> {
    let g = failure.spec.build()?;
    let sub = |members: &[usize]| Subgroup::from_members(&g, members);
    let ring = GroupRing::new(&g);
    let bound = g.order() as u64 * T3Config::default().torsion_factor;
    Ok(match &failure.finding {
        Finding::QuotientNotRs { normal, subgroup, .. } => {
            let (n, a) = (sub(normal)?, sub(subgroup)?);
            let (q, proj) = quotient(&g, &n)?;
            is_rs_subgroup(&g, &a)?.outcome && !is_rs_subgroup(&q, &proj.map_subgroup(&q, &a))?.outcome
        }
        Finding::QuotientNotCut { normal, .. } => {
            is_cut(&g).outcome && !is_cut(&quotient(&g, &sub(normal)?)?.0).outcome
        }
        Finding::PGroupMismatch { prime, .. } => is_cut(&g).outcome != pgroup_condition(&g, *prime),
        Finding::CutPGroupOddPrime { prime } => {
            p_group_prime(&g) == Some(*prime) && is_cut(&g).outcome && *prime != 2 && *prime != 3
        }
        Finding::NilpotentMismatch { .. } => {
            let (a, b, c) = nilpotent_conditions(&g)?;
            is_cut(&g).outcome != (a && b && c)
        }
        Finding::RankIncreased { normal, .. } => {
            rank_central_units(&quotient(&g, &sub(normal)?)?.0) > rank_central_units(&g)
        }
        Finding::TrivialUnitInLattice { normal, z, sign } => {
            let a = sub(normal)?;
            center(&g).contains(*z)
                && rank_preserved(&g, &a)?.outcome
                && AugmentationLattice::of(&g, &a)?.contains(&trivial_unit_minus_one(*z, *sign))?
        }
        Finding::PrimeOutsideBound { normal, .. } => {
            let a = sub(normal)?;
            c0_hypotheses(&g, &a)? && pi_primes_of(&g, &a)?.iter().any(|p| !SOLVABLE_PRIME_BOUND.contains(p))
        }
        Finding::ThetaNotSymmetric { unit } => !ring.is_symmetric(&ring.theta(unit)?)?,
        Finding::ThetaTorsion { unit, .. } => {
            let t = ring.theta(unit)?;
            !t.is_one() && ring.central_unit_order(&t, bound)?.is_some()
        }
        Finding::NoCenterFactor { unit } => ring.square_center_factor(unit)?.is_none(),
        Finding::ThetaNotMultiplicative { u, v } => {
            ring.theta(&ring.mul(u, v)?)? != ring.mul(&ring.theta(u)?, &ring.theta(v)?)?
        }
        Finding::NoSymmetricUnitFound { bound } => !is_cut(&g).outcome && find_symmetric_unit(&g, *bound)?.is_none(),
        Finding::Error { message } => {
            return Err(Error::InvalidParams(format!(
                "error findings are not replayable: {message}"
            )))
        }
    })
}
