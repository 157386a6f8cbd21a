//! Conjugacy classes together with their rational (power-closed) and real
//! (inverse-closed) fusions.

use std::sync::Arc;

use num_integer::Integer;

use crate::group::FiniteGroup;
use crate::subgroup::conjugacy_classes;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Element order of each class.
    pub class_orders: Vec<usize>,
    pub inverse_class: Vec<usize>,
    /// Blocks of class indices closed under `x ↦ x^j` for all `j` coprime to `o(x)`.
    pub q_classes: Vec<Vec<usize>>,
    /// Blocks of class indices closed under `x ↦ x^-1`.
    pub r_classes: Vec<Vec<usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so blocks come out ordered
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }

    fn blocks(mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }
}

impl ClassData {
    pub fn compute(group: &FiniteGroup) -> Self {
        let classes = conjugacy_classes(group);
        let mut class_of = vec![0; group.order()];
        for (c, members) in classes.iter().enumerate() {
            for &x in members {
                class_of[x] = c;
            }
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let class_orders: Vec<usize> = reps.iter().map(|&x| group.element_order(x)).collect();
        let inverse_class: Vec<usize> = reps.iter().map(|&x| class_of[group.inv(x)]).collect();

        let mut real = UnionFind::new(classes.len());
        let mut rational = UnionFind::new(classes.len());
        for (c, &x) in reps.iter().enumerate() {
            real.union(c, inverse_class[c]);
            let o = class_orders[c];
            for j in (1..=o).filter(|j| j.gcd(&o) == 1) {
                rational.union(c, class_of[group.pow(x, j as i64)]);
            }
        }
        ClassData {
            classes,
            class_of,
            class_orders,
            inverse_class,
            q_classes: rational.blocks(),
            r_classes: real.blocks(),
        }
    }

    /// Memoized on the group; identical to [`ClassData::compute`].
    pub fn of(group: &FiniteGroup) -> Arc<ClassData> {
        group
            .class_data
            .get_or_init(|| Arc::new(ClassData::compute(group)))
            .clone()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class of `x^j` for `x` in class `c`.
    pub fn power_map(&self, group: &FiniteGroup, c: usize, j: i64) -> usize {
        self.class_of[group.pow(self.classes[c][0], j)]
    }

    fn flatten(&self, blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
        blocks
            .iter()
            .map(|b| {
                let mut elems: Vec<usize> = b.iter().flat_map(|&c| self.classes[c].iter().copied()).collect();
                elems.sort_unstable();
                elems
            })
            .collect()
    }

    /// Rational classes as blocks of element indices.
    pub fn q_class_partition(&self) -> Vec<Vec<usize>> {
        self.flatten(&self.q_classes)
    }

    /// Real classes as blocks of element indices.
    pub fn r_class_partition(&self) -> Vec<Vec<usize>> {
        self.flatten(&self.r_classes)
    }
}

pub fn q_classes(group: &FiniteGroup) -> Vec<Vec<usize>> {
    ClassData::of(group).q_class_partition()
}

pub fn r_classes(group: &FiniteGroup) -> Vec<Vec<usize>> {
    ClassData::of(group).r_class_partition()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    fn sizes(blocks: &[Vec<usize>]) -> Vec<usize> {
        let mut s: Vec<usize> = blocks.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn cyclic_five() {
        let c5 = catalog("cyclic", &[5]).unwrap();
        let g = c5.generators()[0];
        let q = q_classes(&c5);
        assert_eq!(sizes(&q), vec![1, 4]);
        let r = r_classes(&c5);
        assert_eq!(sizes(&r), vec![1, 2, 2]);
        let block_of_g = r.iter().find(|b| b.contains(&g)).unwrap();
        let mut expect = vec![g, c5.pow(g, 4)];
        expect.sort();
        assert_eq!(block_of_g, &expect);
    }

    #[test]
    fn s3_and_c2_fusions_are_trivial() {
        for (name, n) in [("symmetric", 3), ("cyclic", 2)] {
            let g = catalog(name, &[n]).unwrap();
            let data = ClassData::of(&g);
            assert_eq!(data.q_class_partition(), data.classes);
            assert_eq!(data.r_class_partition(), data.classes);
        }
    }

    #[test]
    fn power_map_identity_exponent() {
        let s4 = catalog("symmetric", &[4]).unwrap();
        let data = ClassData::of(&s4);
        for c in 0..data.num_classes() {
            assert_eq!(data.power_map(&s4, c, 1), c);
            let o = data.class_orders[c] as i64;
            assert_eq!(data.power_map(&s4, c, o + 1), c);
        }
    }

    #[test]
    fn cache_matches_fresh_computation() {
        let q16 = catalog("quaternion", &[16]).unwrap();
        let cached = ClassData::of(&q16);
        assert_eq!(*cached, ClassData::compute(&q16));
    }
}
