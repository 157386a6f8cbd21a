use std::sync::Arc;

use rayon::prelude::*;

use crate::catalog::GroupSpec;
use crate::error::Result;
use crate::group::FiniteGroup;

/// A group together with the spec that builds it.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub spec: GroupSpec,
    pub label: String,
    pub group: Arc<FiniteGroup>,
}

impl CatalogEntry {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let group = Arc::new(spec.build()?);
        Ok(CatalogEntry {
            label: spec.label(),
            spec,
            group,
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Groups sorted by `(order, label)`.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

/// Generators of the default catalog before taking products.
fn base_specs(max_order: usize) -> Vec<(GroupSpec, usize)> {
    let mut out = Vec::new();
    let mut push = |name: &str, params: &[i64], order: usize| {
        if order <= max_order {
            out.push((GroupSpec::catalog(name, params), order));
        }
    };
    for n in 1..=48 {
        push("cyclic", &[n as i64], n);
    }
    for order in (4..=48).step_by(2) {
        push("dihedral", &[order as i64], order);
    }
    for order in (8..=32).step_by(4) {
        push("quaternion", &[order as i64], order);
    }
    push("symmetric", &[3], 6);
    push("symmetric", &[4], 24);
    push("alternating", &[4], 12);
    for k in 2..=4 {
        push("elementary_abelian", &[2, k], 1 << k);
    }
    for k in 2..=3 {
        push("elementary_abelian", &[3, k], 3usize.pow(k as u32));
    }
    out
}

impl Catalog {
    pub fn from_specs(specs: Vec<GroupSpec>) -> Result<Self> {
        let entries = specs
            .into_par_iter()
            .map(CatalogEntry::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_entries(entries))
    }

    fn from_entries(mut entries: Vec<CatalogEntry>) -> Self {
        entries.sort_by(|a, b| (a.order(), &a.label).cmp(&(b.order(), &b.label)));
        Catalog { entries }
    }

    /// Cyclic groups and dihedral groups up to order 48, generalized quaternion and
    /// dicyclic groups up to order 32, `S3`, `S4`, `A4`, elementary abelian 2- and
    /// 3-groups up to order 27, and all products of two nontrivial such groups; every
    /// member has order at most `max_order`.
    pub fn default_catalog(max_order: usize) -> Result<Self> {
        let base = base_specs(max_order);
        let mut specs: Vec<GroupSpec> = base.iter().map(|(s, _)| s.clone()).collect();
        for (i, (a, na)) in base.iter().enumerate() {
            for (b, nb) in &base[i..] {
                if *na > 1 && *nb > 1 && na * nb <= max_order {
                    specs.push(GroupSpec::product(vec![a.clone(), b.clone()]));
                }
            }
        }
        Self::from_specs(specs)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_order(&self) -> usize {
        self.entries.iter().map(CatalogEntry::order).max().unwrap_or(0)
    }

    pub fn filter(&self, keep: impl Fn(&CatalogEntry) -> bool + Sync) -> Catalog {
        Catalog {
            entries: self.entries.par_iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    pub fn up_to(&self, max_order: usize) -> Catalog {
        self.filter(|e| e.order() <= max_order)
    }
}
