//! Subgroups of a [`FiniteGroup`] and the structural queries built on them:
//! conjugacy classes, centralizers, normal subgroups, central and derived series.

use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::is_prime;

/// A subgroup stored as the sorted element indices of its parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent_order.hash(state);
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(group: &FiniteGroup) -> Self {
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        Subgroup {
            parent_order: group.order(),
            members: vec![0],
            mask,
            gens: Vec::new(),
        }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup {
            parent_order: group.order(),
            members: (0..group.order()).collect(),
            mask: vec![true; group.order()],
            gens: group.generators().iter().copied().filter(|&g| g != 0).collect(),
        }
    }

    /// The subgroup generated by `elems`; only the elements that enlarge it are kept as generators.
    pub fn generated_by(group: &FiniteGroup, elems: &[usize]) -> Result<Self> {
        if elems.iter().any(|&e| !group.contains_index(e)) {
            return Err(Error::SubgroupNotInParent);
        }
        let mut sub = Subgroup::trivial(group);
        for &e in elems {
            sub = sub.extended(group, e);
        }
        Ok(sub)
    }

    /// Validates that `members` is closed under multiplication and contains the identity.
    pub fn from_members(group: &FiniteGroup, members: &[usize]) -> Result<Self> {
        if members.iter().any(|&e| !group.contains_index(e)) {
            return Err(Error::SubgroupNotInParent);
        }
        let sub = Subgroup::generated_by(group, members)?;
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted != sub.members {
            return Err(Error::InvalidParams(
                "element set is not closed under multiplication".into(),
            ));
        }
        Ok(sub)
    }

    fn from_mask(group: &FiniteGroup, mask: Vec<bool>) -> Self {
        let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        Subgroup::generated_by(group, &members).expect("members index the parent")
    }

    /// `<self, x>`
    pub fn extended(&self, group: &FiniteGroup, x: usize) -> Subgroup {
        if self.mask[x] {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        gens.push(x);
        let mut mask = self.mask.clone();
        // existing members must also be multiplied by the new generator
        let mut members = self.members.clone();
        let mut queue: VecDeque<usize> = self.members.iter().copied().collect();
        while let Some(y) = queue.pop_front() {
            for &s in &gens {
                let z = group.mul(y, s);
                if !mask[z] {
                    mask[z] = true;
                    members.push(z);
                    queue.push_back(z);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            parent_order: self.parent_order,
            members,
            mask,
            gens,
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent_order == other.parent_order && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn check_parent(&self, group: &FiniteGroup) -> Result<()> {
        if self.parent_order == group.order() {
            Ok(())
        } else {
            Err(Error::SubgroupNotInParent)
        }
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        group
            .generators()
            .iter()
            .all(|&g| self.gens.iter().all(|&a| self.contains(group.conjugate(g, a))))
    }

    /// A standalone copy of this subgroup plus the map from its element indices back to the parent.
    pub fn to_group(&self, group: &FiniteGroup) -> Result<(FiniteGroup, Vec<usize>)> {
        self.check_parent(group)?;
        let gens = self.gens.iter().map(|&g| group.element(g).clone()).collect();
        let sub = FiniteGroup::from_generators(group.degree(), gens)?;
        let embedding = sub
            .elements()
            .iter()
            .map(|p| group.index_of(p).expect("subgroup element lies in parent"))
            .collect();
        Ok((sub, embedding))
    }
}

/// Conjugacy classes, each sorted, ordered by smallest member; the identity class comes first.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class = vec![x];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &g in group.generators() {
                let z = group.conjugate(g, y);
                if !seen[z] {
                    seen[z] = true;
                    class.push(z);
                    queue.push_back(z);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

pub fn centralizer(group: &FiniteGroup, sub: &Subgroup) -> Result<Subgroup> {
    sub.check_parent(group)?;
    let mask = (0..group.order())
        .map(|g| sub.generators().iter().all(|&a| group.mul(g, a) == group.mul(a, g)))
        .collect();
    Ok(Subgroup::from_mask(group, mask))
}

pub fn center(group: &FiniteGroup) -> Subgroup {
    centralizer(group, &Subgroup::whole(group)).expect("whole group belongs to itself")
}

/// Smallest normal subgroup containing `elems`.
pub fn normal_closure(group: &FiniteGroup, elems: &[usize]) -> Result<Subgroup> {
    let mut sub = Subgroup::generated_by(group, elems)?;
    loop {
        let missing = group.generators().iter().find_map(|&g| {
            sub.generators()
                .iter()
                .map(|&a| group.conjugate(g, a))
                .find(|&c| !sub.contains(c))
        });
        match missing {
            Some(c) => sub = sub.extended(group, c),
            None => return Ok(sub),
        }
    }
}

/// All normal subgroups, sorted by order and then by members.
///
/// Every normal subgroup is generated by the conjugacy classes it contains, so
/// starting from `{1}` and repeatedly joining one more class reaches all of them.
pub fn normal_subgroups(group: &FiniteGroup) -> Arc<Vec<Subgroup>> {
    group
        .normals
        .get_or_init(|| {
            let classes = conjugacy_classes(group);
            let mut found = vec![Subgroup::trivial(group)];
            let mut seen: HashSet<Vec<usize>> = HashSet::from([vec![0]]);
            let mut i = 0;
            while i < found.len() {
                let base = found[i].clone();
                for class in classes.iter().skip(1) {
                    if base.contains(class[0]) {
                        continue;
                    }
                    let mut joined = base.clone();
                    for &c in class {
                        joined = joined.extended(group, c);
                    }
                    if seen.insert(joined.members.clone()) {
                        found.push(joined);
                    }
                }
                i += 1;
            }
            found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
            Arc::new(found)
        })
        .clone()
}

/// `[A, B]`, the subgroup generated by all commutators `a b a^-1 b^-1`.
pub fn commutator_subgroup(group: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut mask = vec![false; group.order()];
    let mut comms = Vec::new();
    for &x in a.members() {
        for &y in b.members() {
            let c = group.commutator(x, y);
            if !mask[c] {
                mask[c] = true;
                comms.push(c);
            }
        }
    }
    Subgroup::generated_by(group, &comms).expect("commutators index the parent")
}

/// `G = γ0 ⊇ γ1 ⊇ ...` with `γ(i+1) = [γi, G]`, stopping at the first repeated term.
pub fn lower_central_series(group: &FiniteGroup) -> Vec<Subgroup> {
    let whole = Subgroup::whole(group);
    let mut series = vec![whole.clone()];
    loop {
        let next = commutator_subgroup(group, series.last().unwrap(), &whole);
        if &next == series.last().unwrap() {
            return series;
        }
        series.push(next);
    }
}

pub fn derived_series(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::whole(group)];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(group, last, last);
        if &next == last {
            return series;
        }
        series.push(next);
    }
}

pub fn is_nilpotent(group: &FiniteGroup) -> bool {
    lower_central_series(group).last().unwrap().is_trivial()
}

pub fn is_solvable(group: &FiniteGroup) -> bool {
    derived_series(group).last().unwrap().is_trivial()
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// The elements of `p`-power order; a subgroup exactly when it is closed, which holds for nilpotent groups.
pub fn sylow_part(group: &FiniteGroup, p: usize) -> Result<Subgroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    let members: Vec<usize> = (0..group.order())
        .filter(|&x| is_power_of(group.element_order(x), p))
        .collect();
    Subgroup::from_members(group, &members).map_err(|_| Error::NotNilpotent)
}

/// Subgroup lattice by brute force over all subsets generated by pairs of cyclic subgroups and
/// their joins. Exponential in spirit; only used as a cross-check on small groups.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let cyclic: Vec<Subgroup> = (0..group.order())
        .map(|x| Subgroup::generated_by(group, &[x]).unwrap())
        .filter(|s| seen.insert(s.members.clone()))
        .collect();
    found.extend(cyclic.iter().cloned());
    let mut i = 0;
    while i < found.len() {
        let base = found[i].clone();
        for c in &cyclic {
            let joined = c.gens.iter().fold(base.clone(), |acc, &g| acc.extended(group, g));
            if seen.insert(joined.members.clone()) {
                found.push(joined);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    found
}
