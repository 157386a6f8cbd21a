//! Groups built from other groups: quotients, semidirect and direct products.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hom::GroupHom;
use crate::perm::Permutation;
use crate::subgroup::{centralizer, Subgroup};

/// `G/N` as the action of `G` on the left cosets of `N`, with the canonical epimorphism.
pub fn quotient(group: &FiniteGroup, normal: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    normal.check_parent(group)?;
    if !normal.is_normal(group) {
        return Err(Error::NotNormal);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &m in normal.members() {
            coset_of[group.mul(x, m)] = reps.len();
        }
        reps.push(x);
    }
    let degree = reps.len();
    let action = |g: usize| -> Permutation {
        let images = reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect();
        Permutation::from_images(images).expect("coset action is a permutation")
    };
    let gens = group.generators().iter().map(|&g| action(g)).collect();
    let q = FiniteGroup::from_generators(degree, gens)?;
    let images = (0..n)
        .map(|x| q.index_of(&action(x)).expect("coset action lands in the quotient"))
        .collect();
    let hom = GroupHom::from_images_unchecked(n, q.order(), images);
    Ok((q, hom))
}

/// `A ⋊ Q` with its element indices for every pair `(a, q)`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    base_order: usize,
    top_order: usize,
    pair_index: Vec<usize>,
}

impl SemidirectProduct {
    pub fn index_of_pair(&self, a: usize, q: usize) -> usize {
        self.pair_index[a * self.top_order + q]
    }

    /// The normal copy `{(a, 1)}` of the base group.
    pub fn base(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.base_order).map(|a| self.index_of_pair(a, 0)).collect();
        Subgroup::from_members(&self.group, &members).expect("base is a subgroup")
    }

    /// The complement `{(1, q)}`.
    pub fn complement(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.top_order).map(|q| self.index_of_pair(0, q)).collect();
        Subgroup::from_members(&self.group, &members).expect("complement is a subgroup")
    }
}

/// The automorphism of `a` sending its i-th generator to `images[i]`, as a full image table.
pub fn automorphism_from_generator_images(a: &FiniteGroup, images: &[usize]) -> Result<Vec<usize>> {
    let hom = GroupHom::from_generator_images(a, a, images).map_err(|e| Error::NotAnAction(e.to_string()))?;
    if !hom.is_injective() {
        return Err(Error::NotAnAction(
            "generator images do not define an automorphism".into(),
        ));
    }
    Ok(hom.images().to_vec())
}

/// Semidirect product with `(a1, q1)(a2, q2) = (a1 · φ(q1)(a2), q1 q2)`.
///
/// `generator_actions[i]` is the automorphism of `a` (as a full image table) attached to the
/// i-th generator of `q`. The product acts faithfully on `|A| + |Q|` points: on `A` by
/// `x ↦ a · φ(q)(x)` and on `Q` by left multiplication.
pub fn semidirect(a: &FiniteGroup, q: &FiniteGroup, generator_actions: &[Vec<usize>]) -> Result<SemidirectProduct> {
    let (na, nq) = (a.order(), q.order());
    if generator_actions.len() != q.generators().len() {
        return Err(Error::NotAnAction(format!(
            "{} automorphisms for {} generators",
            generator_actions.len(),
            q.generators().len()
        )));
    }
    for aut in generator_actions {
        let ok = aut.len() == na
            && aut[0] == 0
            && (0..na).all(|x| {
                a.generators()
                    .iter()
                    .all(|&s| aut[a.mul(x, s)] == a.mul(aut[x], aut[s]))
            });
        let mut hit = vec![false; na];
        aut.iter().filter(|&&y| y < na).for_each(|&y| hit[y] = true);
        if !ok || hit.iter().any(|h| !h) {
            return Err(Error::NotAnAction("a generator does not act by an automorphism".into()));
        }
    }

    // φ(q s) = φ(q) ∘ φ(s)
    let mut act: Vec<Option<Vec<usize>>> = vec![None; nq];
    act[0] = Some((0..na).collect());
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, aut) in q.generators().iter().zip(generator_actions) {
            let y = q.mul(x, s);
            if act[y].is_none() {
                let ax = act[x].as_ref().unwrap();
                act[y] = Some(aut.iter().map(|&t| ax[t]).collect());
                queue.push_back(y);
            }
        }
    }
    let act: Vec<Vec<usize>> = act.into_iter().map(Option::unwrap).collect();
    for x in 0..nq {
        for (&s, aut) in q.generators().iter().zip(generator_actions) {
            let composed: Vec<usize> = aut.iter().map(|&t| act[x][t]).collect();
            if act[q.mul(x, s)] != composed {
                return Err(Error::NotAnAction(
                    "generator automorphisms violate a relation of Q".into(),
                ));
            }
        }
    }

    let perm_of = |ai: usize, qi: usize| -> Permutation {
        let mut images = Vec::with_capacity(na + nq);
        images.extend((0..na).map(|x| a.mul(ai, act[qi][x])));
        images.extend((0..nq).map(|y| na + q.mul(qi, y)));
        Permutation::from_images(images).expect("affine action is a permutation")
    };
    let mut gens: Vec<Permutation> = a.generators().iter().map(|&g| perm_of(g, 0)).collect();
    gens.extend(q.generators().iter().map(|&g| perm_of(0, g)));
    let group = FiniteGroup::from_generators(na + nq, gens)?;
    let mut pair_index = Vec::with_capacity(na * nq);
    for ai in 0..na {
        for qi in 0..nq {
            pair_index.push(group.index_of(&perm_of(ai, qi)).expect("pair lies in the product"));
        }
    }
    Ok(SemidirectProduct {
        group,
        base_order: na,
        top_order: nq,
        pair_index,
    })
}

/// `A ⋊ G/C_G(A)` where cosets act on `A` by conjugation, returned with the copy of `A`.
pub fn conjugation_quotient_with_base(group: &FiniteGroup, normal: &Subgroup) -> Result<(FiniteGroup, Subgroup)> {
    normal.check_parent(group)?;
    if !normal.is_normal(group) {
        return Err(Error::NotNormal);
    }
    let cent = centralizer(group, normal)?;
    let (top, proj) = quotient(group, &cent)?;
    let (base, embedding) = normal.to_group(group)?;
    let mut local = vec![usize::MAX; group.order()];
    for (i, &x) in embedding.iter().enumerate() {
        local[x] = i;
    }
    let actions = top
        .generators()
        .iter()
        .map(|&t| {
            let g = (0..group.order())
                .find(|&g| proj.apply(g) == t)
                .expect("projection is onto");
            embedding.iter().map(|&x| local[group.conjugate(g, x)]).collect()
        })
        .collect::<Vec<Vec<usize>>>();
    let product = semidirect(&base, &top, &actions)?;
    let copy = product.base();
    Ok((product.group, copy))
}

pub fn conjugation_quotient(group: &FiniteGroup, normal: &Subgroup) -> Result<FiniteGroup> {
    conjugation_quotient_with_base(group, normal).map(|(h, _)| h)
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(factors: &[&FiniteGroup]) -> Result<FiniteGroup> {
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        for &g in f.generators() {
            let p = f.element(g);
            let images = (0..degree)
                .map(|i| {
                    if i >= offset && i < offset + f.degree() {
                        offset + p.apply(i - offset)
                    } else {
                        i
                    }
                })
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
        offset += f.degree();
    }
    FiniteGroup::from_generators(degree.max(1), gens)
}

/// Left regular representation of a group given by a multiplication rule on `0..order`
/// (with 0 the identity) and a list of generating elements.
pub fn from_multiplication<F>(order: usize, mul: F, gens: &[usize]) -> Result<FiniteGroup>
where
    F: Fn(usize, usize) -> usize,
{
    let perms = gens
        .iter()
        .map(|&g| Permutation::from_images((0..order).map(|x| mul(g, x)).collect()))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_generators(order, perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::subgroup::{center, conjugacy_classes, normal_subgroups};

    fn census(g: &FiniteGroup) -> Vec<(usize, usize)> {
        g.order_census()
    }

    #[test]
    fn quotients() {
        let s3 = catalog("symmetric", &[3]).unwrap();
        let normals = normal_subgroups(&s3);
        let a3 = normals.iter().find(|n| n.order() == 3).unwrap();
        let (q, hom) = quotient(&s3, a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(hom.is_surjective());
        assert_eq!(&hom.kernel(&s3), a3);

        let q8 = catalog("quaternion", &[8]).unwrap();
        let (k4, _) = quotient(&q8, &center(&q8)).unwrap();
        assert_eq!(k4.order(), 4);
        assert_eq!(k4.exponent(), 2);

        let (same, hom) = quotient(&q8, &Subgroup::trivial(&q8)).unwrap();
        assert_eq!(census(&same), census(&q8));
        assert!(hom.is_injective());
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = catalog("symmetric", &[3]).unwrap();
        let t = s3
            .index_of(&Permutation::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let sub = Subgroup::generated_by(&s3, &[t]).unwrap();
        assert_eq!(quotient(&s3, &sub).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn semidirect_inversion_gives_s3() {
        let c3 = catalog("cyclic", &[3]).unwrap();
        let c2 = catalog("cyclic", &[2]).unwrap();
        let inv = automorphism_from_generator_images(&c3, &[c3.inv(c3.generators()[0])]).unwrap();
        let p = semidirect(&c3, &c2, &[inv]).unwrap();
        assert_eq!(p.group.order(), 6);
        assert!(!p.group.is_abelian());
        assert_eq!(census(&p.group), vec![(1, 1), (2, 3), (3, 2)]);
        assert!(p.base().is_normal(&p.group));
    }

    #[test]
    fn semidirect_frobenius_20() {
        let c5 = catalog("cyclic", &[5]).unwrap();
        let c4 = catalog("cyclic", &[4]).unwrap();
        let sq = automorphism_from_generator_images(&c5, &[c5.pow(c5.generators()[0], 2)]).unwrap();
        let p = semidirect(&c5, &c4, &[sq]).unwrap();
        assert_eq!(p.group.order(), 20);
        assert_eq!(census(&p.group), vec![(1, 1), (2, 5), (4, 10), (5, 4)]);
    }

    #[test]
    fn semidirect_rejects_non_actions() {
        let c5 = catalog("cyclic", &[5]).unwrap();
        let c2 = catalog("cyclic", &[2]).unwrap();
        // a ↦ a^2 has order 4 in Aut(C5), so it cannot be the image of an involution
        let sq = automorphism_from_generator_images(&c5, &[c5.pow(c5.generators()[0], 2)]).unwrap();
        assert!(matches!(semidirect(&c5, &c2, &[sq]), Err(Error::NotAnAction(_))));
        let c4 = catalog("cyclic", &[4]).unwrap();
        assert!(matches!(
            automorphism_from_generator_images(&c4, &[c4.pow(c4.generators()[0], 2)]),
            Err(Error::NotAnAction(_))
        ));
    }

    #[test]
    fn trivial_action_is_direct_product() {
        let c4 = catalog("cyclic", &[4]).unwrap();
        let s3 = catalog("symmetric", &[3]).unwrap();
        let ids: Vec<Vec<usize>> = s3.generators().iter().map(|_| (0..4).collect()).collect();
        let p = semidirect(&c4, &s3, &ids).unwrap();
        let d = direct_product(&[&c4, &s3]).unwrap();
        assert_eq!(census(&p.group), census(&d));
        let top = catalog("cyclic", &[1]).unwrap();
        let p = semidirect(&c4, &top, &[]).unwrap();
        assert_eq!(census(&p.group), census(&c4));
    }

    #[test]
    fn conjugation_quotients() {
        let s3 = catalog("symmetric", &[3]).unwrap();
        let a3 = normal_subgroups(&s3).iter().find(|n| n.order() == 3).unwrap().clone();
        let (h, base) = conjugation_quotient_with_base(&s3, &a3).unwrap();
        assert_eq!(census(&h), census(&s3));
        assert_eq!(base.order(), 3);
        assert!(base.is_normal(&h));

        let c6 = catalog("cyclic", &[6]).unwrap();
        for a in normal_subgroups(&c6).iter() {
            let h = conjugation_quotient(&c6, a).unwrap();
            assert_eq!(h.order(), a.order());
        }

        let q8 = catalog("quaternion", &[8]).unwrap();
        let h = conjugation_quotient(&q8, &center(&q8)).unwrap();
        assert_eq!(h.order(), 2);
        let mut sizes: Vec<usize> = conjugacy_classes(&h).iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1]);
    }
}
