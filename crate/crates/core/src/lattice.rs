//! Integer lattices in Hermite normal form and the lattice `Δ(G)Δ(A)` inside `ZG`.

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::GroupRingElement;
use crate::subgroup::Subgroup;

pub const DEFAULT_LATTICE_CAP: usize = 1 << 20;

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// `a·x + b·y`, checked.
fn combine(a: i128, x: &[i128], b: i128, y: &[i128]) -> Result<Vec<i128>> {
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            a.checked_mul(xi)
                .and_then(|p| b.checked_mul(yi).and_then(|q| p.checked_add(q)))
                .ok_or(Error::ArithmeticOverflow)
        })
        .collect()
}

/// A sublattice of `Z^dim` kept in row echelon form: rows sorted by pivot column,
/// pivots positive, and after [`IntegerLattice::reduce`] every entry above a pivot lies in
/// `0..pivot` (Hermite normal form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    dim: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn new(dim: usize) -> Self {
        IntegerLattice {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    /// Adds `v` to the spanning set.
    pub fn insert(&mut self, mut v: Vec<i128>) -> Result<()> {
        assert_eq!(v.len(), self.dim);
        while let Some(c) = v.iter().position(|&x| x != 0) {
            match self.pivots.binary_search(&c) {
                Ok(k) => {
                    let a = self.rows[k][c];
                    let b = v[c];
                    if b % a == 0 {
                        v = combine(1, &v, -(b / a), &self.rows[k])?;
                    } else {
                        let (g, s, t) = ext_gcd(a, b);
                        let row = combine(s, &self.rows[k], t, &v)?;
                        v = combine(a / g, &v, -(b / g), &self.rows[k])?;
                        self.rows[k] = row;
                    }
                }
                Err(pos) => {
                    if v[c] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows.insert(pos, v);
                    self.pivots.insert(pos, c);
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Brings the basis to Hermite normal form.
    pub fn reduce(&mut self) -> Result<()> {
        for k in 0..self.rows.len() {
            let c = self.pivots[k];
            let p = self.rows[k][c];
            for i in 0..k {
                let q = self.rows[i][c].div_euclid(p);
                if q != 0 {
                    self.rows[i] = combine(1, &self.rows[i], -q, &self.rows[k])?;
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        let mut w = v.to_vec();
        while let Some(c) = w.iter().position(|&x| x != 0) {
            let Ok(k) = self.pivots.binary_search(&c) else {
                return Ok(false);
            };
            let p = self.rows[k][c];
            if w[c] % p != 0 {
                return Ok(false);
            }
            w = combine(1, &w, -(w[c] / p), &self.rows[k])?;
        }
        Ok(true)
    }
}

/// The additive span of `{(g - 1)(a - 1) : g ∈ G, a ∈ A}` in `ZG`, for `A` normal in `G`.
///
/// Since `(g - 1)(ab - 1) = (g - 1)(a - 1) + (ga - 1)(b - 1) - (a - 1)(b - 1)`, letting `a`
/// run over generators of `A` spans the same lattice.
#[derive(Clone, Debug)]
pub struct AugmentationLattice {
    subgroup: Subgroup,
    spanning_vectors: usize,
    normal_form: IntegerLattice,
}

pub(crate) fn delta_product_vector(group: &FiniteGroup, g: usize, a: usize) -> Vec<i128> {
    let mut v = vec![0i128; group.order()];
    v[group.mul(g, a)] += 1;
    v[g] -= 1;
    v[a] -= 1;
    v[0] += 1;
    v
}

impl AugmentationLattice {
    pub fn new(group: &FiniteGroup, normal: &Subgroup) -> Result<Self> {
        Self::with_generators(group, normal, normal.generators(), DEFAULT_LATTICE_CAP)
    }

    /// Builds the lattice spanned by `(g - 1)(a - 1)` for `g ∈ G` and `a ∈ spanning`.
    pub fn with_generators(group: &FiniteGroup, normal: &Subgroup, spanning: &[usize], cap: usize) -> Result<Self> {
        normal.check_parent(group)?;
        if !normal.is_normal(group) {
            return Err(Error::NotNormal);
        }
        let size = group.order() * normal.order();
        if size > cap {
            return Err(Error::LatticeCapExceeded { size, cap });
        }
        let mut normal_form = IntegerLattice::new(group.order());
        for &a in spanning {
            for g in 0..group.order() {
                normal_form.insert(delta_product_vector(group, g, a))?;
            }
            normal_form.reduce()?;
        }
        Ok(AugmentationLattice {
            subgroup: normal.clone(),
            spanning_vectors: group.order() * spanning.len(),
            normal_form,
        })
    }

    /// Cached per `(G, A)` on the group.
    pub fn of(group: &FiniteGroup, normal: &Subgroup) -> Result<Arc<Self>> {
        normal.check_parent(group)?;
        let key = normal.members().to_vec();
        if let Some(l) = group.lattices.lock().unwrap().get(&key) {
            return Ok(l.clone());
        }
        let lattice = Arc::new(Self::new(group, normal)?);
        group.lattices.lock().unwrap().insert(key, lattice.clone());
        Ok(lattice)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn spanning_vectors(&self) -> usize {
        self.spanning_vectors
    }

    pub fn normal_form(&self) -> &IntegerLattice {
        &self.normal_form
    }

    pub fn basis_matrix(&self) -> &[Vec<i128>] {
        self.normal_form.rows()
    }

    pub fn contains(&self, v: &GroupRingElement) -> Result<bool> {
        let mut coords = vec![0i128; self.normal_form.dim()];
        for (g, c) in v.terms() {
            if g >= coords.len() {
                return Err(Error::GroupMismatch);
            }
            coords[g] = c.to_i128().ok_or(Error::ArithmeticOverflow)?;
        }
        self.normal_form.contains(&coords)
    }
}

/// Whether `v ∈ Δ(G)Δ(A)`.
pub fn delta_product_membership(group: &FiniteGroup, normal: &Subgroup, v: &GroupRingElement) -> Result<bool> {
    AugmentationLattice::of(group, normal)?.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::construct::quotient;
    use crate::subgroup::normal_subgroups;

    #[test]
    fn hnf_membership_small() {
        let mut l = IntegerLattice::new(2);
        l.insert(vec![2, 4]).unwrap();
        l.insert(vec![3, 1]).unwrap();
        l.reduce().unwrap();
        // span of (2,4),(3,1) has determinant -10
        let det: i128 = l.rows().iter().enumerate().map(|(i, r)| r[l.pivots[i]]).product();
        assert_eq!(det, 10);
        assert!(l.contains(&[5, 5]).unwrap());
        assert!(l.contains(&[1, -3]).unwrap());
        assert!(!l.contains(&[1, 0]).unwrap());
        assert!(l.contains(&[0, 0]).unwrap());
    }

    #[test]
    fn cyclic_two_examples() {
        let c2 = catalog("cyclic", &[2]).unwrap();
        let whole = Subgroup::whole(&c2);
        let g = c2.generators()[0];
        let two_minus_two_g = GroupRingElement::from_pairs(&[(0, 2), (g, -2)]);
        let one_minus_g = GroupRingElement::from_pairs(&[(0, 1), (g, -1)]);
        assert!(delta_product_membership(&c2, &whole, &two_minus_two_g).unwrap());
        assert!(!delta_product_membership(&c2, &whole, &one_minus_g).unwrap());
        assert!(delta_product_membership(&c2, &whole, &GroupRingElement::zero()).unwrap());
    }

    #[test]
    fn generator_span_equals_full_span() {
        for (name, n) in [
            ("symmetric", 3),
            ("quaternion", 8),
            ("dihedral", 12),
            ("alternating", 4),
            ("cyclic", 6),
        ] {
            let g = catalog(name, &[n]).unwrap();
            for a in normal_subgroups(&g).iter() {
                let fast = AugmentationLattice::new(&g, a).unwrap();
                let full = AugmentationLattice::with_generators(&g, a, a.members(), DEFAULT_LATTICE_CAP).unwrap();
                assert_eq!(fast.normal_form, full.normal_form, "{name} {n} |A|={}", a.order());
            }
        }
    }

    #[test]
    fn members_have_zero_augmentation_and_vanish_mod_a() {
        let g = catalog("dihedral", &[8]).unwrap();
        for a in normal_subgroups(&g).iter() {
            let lattice = AugmentationLattice::new(&g, a).unwrap();
            let (_, proj) = quotient(&g, a).unwrap();
            // rank of Δ(G)Δ(A) is |G| - |G/A|
            assert_eq!(lattice.normal_form.rank(), g.order() - g.order() / a.order());
            for row in lattice.basis_matrix() {
                assert_eq!(row.iter().sum::<i128>(), 0);
                let mut image = vec![0i128; proj.target_order()];
                for (x, &c) in row.iter().enumerate() {
                    image[proj.apply(x)] += c;
                }
                assert!(image.iter().all(|&c| c == 0));
            }
            for x in 0..g.order() {
                for &y in a.members() {
                    let v = GroupRingElement::from_i128_coords(&delta_product_vector(&g, x, y));
                    assert!(lattice.contains(&v).unwrap());
                }
            }
        }
    }

    #[test]
    fn errors() {
        let s3 = catalog("symmetric", &[3]).unwrap();
        let t = s3.generators()[0];
        let sub = Subgroup::generated_by(&s3, &[t]).unwrap();
        assert_eq!(AugmentationLattice::new(&s3, &sub).unwrap_err(), Error::NotNormal);
        let whole = Subgroup::whole(&s3);
        assert!(matches!(
            AugmentationLattice::with_generators(&s3, &whole, whole.generators(), 10),
            Err(Error::LatticeCapExceeded { size: 36, cap: 10 })
        ));
    }
}
