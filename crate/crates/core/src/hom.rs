use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subgroup::Subgroup;

/// A homomorphism between enumerated groups, stored as the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source_order: usize,
    target_order: usize,
    images: Vec<usize>,
}

impl GroupHom {
    /// Extends `gen_images[i]` (the image of the i-th source generator) to the whole source
    /// and checks that the result is well defined.
    pub fn from_generator_images(source: &FiniteGroup, target: &FiniteGroup, gen_images: &[usize]) -> Result<Self> {
        let gens = source.generators();
        if gen_images.len() != gens.len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                gens.len()
            )));
        }
        if gen_images.iter().any(|&y| !target.contains_index(y)) {
            return Err(Error::NotAHomomorphism("image outside the target group".into()));
        }
        let n = source.order();
        let mut images = vec![usize::MAX; n];
        images[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(gen_images) {
                let y = source.mul(x, s);
                if images[y] == usize::MAX {
                    images[y] = target.mul(images[x], t);
                    queue.push_back(y);
                }
            }
        }
        // f(x s) = f(x) f(s) for every x and generator s pins f down as a homomorphism
        for x in 0..n {
            for (&s, &t) in gens.iter().zip(gen_images) {
                if images[source.mul(x, s)] != target.mul(images[x], t) {
                    return Err(Error::NotAHomomorphism(format!(
                        "generator images violate a relation at element {x}"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source_order: n,
            target_order: target.order(),
            images,
        })
    }

    /// Trusts `images` to be a homomorphism; callers construct it from a group action.
    pub(crate) fn from_images_unchecked(source_order: usize, target_order: usize, images: Vec<usize>) -> Self {
        GroupHom {
            source_order,
            target_order,
            images,
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn kernel(&self, source: &FiniteGroup) -> Subgroup {
        let members: Vec<usize> = (0..self.source_order).filter(|&x| self.images[x] == 0).collect();
        Subgroup::from_members(source, &members).expect("kernel is a subgroup")
    }

    pub fn map_subgroup(&self, target: &FiniteGroup, sub: &Subgroup) -> Subgroup {
        let imgs: Vec<usize> = sub.generators().iter().map(|&x| self.images[x]).collect();
        Subgroup::generated_by(target, &imgs).expect("images lie in the target")
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_order];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().filter(|&&y| y == 0).count() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    #[test]
    fn cyclic_maps() {
        let c6 = catalog("cyclic", &[6]).unwrap();
        let c3 = catalog("cyclic", &[3]).unwrap();
        let g = c3.generators()[0];
        let f = GroupHom::from_generator_images(&c6, &c3, &[g]).unwrap();
        assert!(f.is_surjective());
        assert_eq!(f.kernel(&c6).order(), 2);
        // C3 -> C6 sending the generator to an element of order 6 is not well defined
        let h = c6.generators()[0];
        assert!(GroupHom::from_generator_images(&c3, &c6, &[h]).is_err());
        let h2 = c6.pow(h, 2);
        let emb = GroupHom::from_generator_images(&c3, &c6, &[h2]).unwrap();
        assert!(emb.is_injective());
        assert!(!emb.is_surjective());
    }
}
