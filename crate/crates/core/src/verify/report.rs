use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::catalog::GroupSpec;
use crate::ring::GroupRingElement;
use crate::rs::Witness;

/// What a suite found wrong, with enough data to recompute it from the group spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    /// `A` is RS in `G` but `A/N` is not RS in `G/N`; `element` indexes `G/N`.
    QuotientNotRs {
        normal: Vec<usize>,
        subgroup: Vec<usize>,
        witness: Witness,
    },
    /// `G` is cut but `G/N` is not.
    QuotientNotCut {
        normal: Vec<usize>,
        witness: Witness,
    },
    /// The cut verdict of a p-group disagrees with the power-conjugacy condition.
    PGroupMismatch {
        prime: u64,
        cut: bool,
        condition: bool,
    },
    /// A cut p-group for a prime other than 2 or 3.
    CutPGroupOddPrime {
        prime: u64,
    },
    /// The cut verdict of a nilpotent group disagrees with the Sylow conditions.
    NilpotentMismatch {
        cut: bool,
        primes_ok: bool,
        two_part_ok: bool,
        three_part_ok: bool,
    },
    /// `ρ(G/A) > ρ(G)`.
    RankIncreased {
        normal: Vec<usize>,
        group_rank: usize,
        quotient_rank: usize,
    },
    /// Ranks agree, yet the trivial central unit `sign·z ≠ 1` lies in `1 + Δ(G)Δ(A)`.
    TrivialUnitInLattice {
        normal: Vec<usize>,
        z: usize,
        sign: i8,
    },
    /// Both hypotheses hold for `H = A ⋊ G/C_G(A)`, but `A` has an element of prime order
    /// outside `{2, 3, 5, 7}`.
    PrimeOutsideBound {
        normal: Vec<usize>,
        primes: Vec<u64>,
    },
    ThetaNotSymmetric {
        unit: GroupRingElement,
    },
    /// `θ(u) ≠ 1` has finite order.
    ThetaTorsion {
        unit: GroupRingElement,
        order: u64,
    },
    /// No central `z` with `u^2 = z θ(u)`.
    NoCenterFactor {
        unit: GroupRingElement,
    },
    /// `θ(uv) ≠ θ(u)θ(v)`.
    ThetaNotMultiplicative {
        u: GroupRingElement,
        v: GroupRingElement,
    },
    /// A group that is not cut, yet no nontrivial symmetric central unit with coefficients
    /// in `-bound..=bound` exists.
    NoSymmetricUnitFound {
        bound: i64,
    },
    /// A base operation returned an error.
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub group: String,
    pub spec: GroupSpec,
    pub finding: Finding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub group: String,
    pub reason: String,
}

/// Result of running one suite over a catalog. The JSON form omits the elapsed time so
/// that reports are reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub groups: usize,
    pub max_order: usize,
    pub checks: usize,
    /// Instances where every hypothesis held, so the conclusion was actually tested.
    pub nonvacuous: usize,
    pub failures: Vec<Failure>,
    /// Search-limited observations that need a human look; they do not fail the suite.
    pub review: Vec<Failure>,
    pub skipped: Vec<Skip>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} groups up to order {}, {} checks, {} non-vacuous, {} failures, {} review, {} skipped)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.groups,
            self.max_order,
            self.checks,
            self.nonvacuous,
            self.failures.len(),
            self.review.len(),
            self.skipped.len()
        )
    }
}
