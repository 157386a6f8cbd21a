//! RS-elements, the cut property of finite groups and the rank of the group of
//! central units of `ZG`.
//!
//! An element `x` is an RS-element when `x^j` is conjugate to `x` or `x^-1` for
//! every `j` coprime to `o(x)`. A finite group is cut exactly when all of its
//! elements are RS-elements.
//!
//! The central unit rank is computed as `#real classes - #rational classes`: the
//! simple components of `QG` correspond to rational classes, those of `RG` to
//! real classes, and the Dirichlet rank of the centre of each component is
//! `r1 + r2 - 1`.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::classes::ClassData;
use crate::construct::quotient;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::is_prime;
use crate::subgroup::Subgroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `element^exponent` is conjugate to neither `element` nor its inverse.
    Exponent { element: usize, exponent: u64 },
    /// Central unit ranks of a group and of one of its quotients.
    Ranks { group: usize, quotient: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict {
            outcome: true,
            witness: None,
        }
    }

    pub fn no(witness: Witness) -> Self {
        Verdict {
            outcome: false,
            witness: Some(witness),
        }
    }
}

/// First exponent `j` in `U(o(x))` with `x^j` not conjugate to `x^±1`.
fn failing_exponent(group: &FiniteGroup, data: &ClassData, x: usize) -> Option<u64> {
    let own = data.class_of[x];
    let inv = data.class_of[group.inv(x)];
    let o = group.element_order(x);
    (1..=o).filter(|j| j.gcd(&o) == 1).find_map(|j| {
        let c = data.class_of[group.pow(x, j as i64)];
        (c != own && c != inv).then_some(j as u64)
    })
}

/// RS status per conjugacy class: `None` if RS, otherwise a failing exponent.
pub fn rs_class_status(group: &FiniteGroup) -> Vec<Option<u64>> {
    let data = ClassData::of(group);
    data.classes
        .iter()
        .map(|c| failing_exponent(group, &data, c[0]))
        .collect()
}

pub fn is_rs_element(group: &FiniteGroup, x: usize) -> Result<Verdict> {
    if !group.contains_index(x) {
        return Err(Error::InvalidParams(format!("element {x} is not in the group")));
    }
    let data = ClassData::of(group);
    Ok(match failing_exponent(group, &data, x) {
        None => Verdict::yes(),
        Some(j) => Verdict::no(Witness::Exponent {
            element: x,
            exponent: j,
        }),
    })
}

pub fn is_rs_subgroup(group: &FiniteGroup, sub: &Subgroup) -> Result<Verdict> {
    sub.check_parent(group)?;
    let data = ClassData::of(group);
    let status = rs_class_status(group);
    Ok(sub
        .members()
        .iter()
        .find_map(|&a| status[data.class_of[a]].map(|_| a))
        .map_or_else(Verdict::yes, |a| {
            let exponent = failing_exponent(group, &data, a).expect("class status says a fails");
            Verdict::no(Witness::Exponent { element: a, exponent })
        }))
}

/// A finite group is cut iff every element is an RS-element.
pub fn is_cut(group: &FiniteGroup) -> Verdict {
    is_rs_subgroup(group, &Subgroup::whole(group)).expect("whole group belongs to itself")
}

/// Rank of the group of central units of `ZG`.
pub fn rank_central_units(group: &FiniteGroup) -> usize {
    let data = ClassData::of(group);
    data.r_classes.len() - data.q_classes.len()
}

/// Whether `ρ(G) = ρ(G/A)`.
pub fn rank_preserved(group: &FiniteGroup, normal: &Subgroup) -> Result<Verdict> {
    let (q, _) = quotient(group, normal)?;
    let (rg, rq) = (rank_central_units(group), rank_central_units(&q));
    if rq > rg {
        return Err(Error::InternalInvariantViolation(format!(
            "quotient rank {rq} exceeds group rank {rg}"
        )));
    }
    let witness = Witness::Ranks {
        group: rg,
        quotient: rq,
    };
    Ok(Verdict {
        outcome: rg == rq,
        witness: Some(witness),
    })
}

/// Primes `p` such that some element has order `p`.
pub fn pi_primes(group: &FiniteGroup) -> BTreeSet<u64> {
    pi_primes_of(group, &Subgroup::whole(group)).expect("whole group belongs to itself")
}

pub fn pi_primes_of(group: &FiniteGroup, sub: &Subgroup) -> Result<BTreeSet<u64>> {
    sub.check_parent(group)?;
    Ok(sub
        .members()
        .iter()
        .map(|&x| group.element_order(x) as u64)
        .filter(|&o| is_prime(o))
        .collect())
}
