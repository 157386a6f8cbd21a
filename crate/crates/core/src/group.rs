//! Fully enumerated finite permutation groups.
//!
//! Every group is stored as the complete list of its elements, with the
//! identity at index 0. All other modules refer to elements by index.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::classes::ClassData;
use crate::error::{Error, Result};
use crate::lattice::AugmentationLattice;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// Groups at most this large get a cached multiplication table.
const TABLE_LIMIT: usize = 2048;

pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    table: Option<Vec<u32>>,
    pub(crate) class_data: OnceLock<Arc<ClassData>>,
    pub(crate) normals: OnceLock<Arc<Vec<Subgroup>>>,
    pub(crate) lattices: Mutex<HashMap<Vec<usize>, Arc<AugmentationLattice>>>,
}

impl FiniteGroup {
    pub const DEFAULT_CAP: usize = 10_000;

    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::from_generators_with_cap(degree, gens, Self::DEFAULT_CAP)
    }

    /// Breadth-first closure of `gens`, failing once more than `cap` elements appear.
    pub fn from_generators_with_cap(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let next = elements[i].compose(g);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(Self::assemble(degree, elements, index, generators))
    }

    fn assemble(
        degree: usize,
        elements: Vec<Permutation>,
        index: HashMap<Permutation, usize>,
        generators: Vec<usize>,
    ) -> Self {
        let n = elements.len();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        let mut group = FiniteGroup {
            degree,
            elements,
            index,
            generators,
            inverses,
            orders: Vec::new(),
            table,
            class_data: OnceLock::new(),
            normals: OnceLock::new(),
            lattices: Mutex::new(HashMap::new()),
        };
        group.orders = group.compute_orders();
        group
    }

    fn compute_orders(&self) -> Vec<usize> {
        let mut orders = vec![0usize; self.order()];
        orders[0] = 1;
        for x in 1..self.order() {
            if orders[x] != 0 {
                continue;
            }
            let mut powers = vec![x];
            let mut y = self.mul(x, x);
            while y != x {
                powers.push(y);
                y = self.mul(y, x);
            }
            // powers[k - 1] = x^k and x^o = identity
            let o = powers.len();
            for (k, &p) in powers.iter().enumerate() {
                orders[p] = o / (k + 1).gcd(&o);
            }
        }
        orders
    }

    /// The group with one element, acting on a single point.
    pub fn trivial() -> Self {
        Self::from_generators(1, Vec::new()).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains_index(&self, i: usize) -> bool {
        i < self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x^k` for any integer `k`; negative exponents invert.
    pub fn pow(&self, x: usize, k: i64) -> usize {
        let o = self.orders[x] as i64;
        let mut e = k.rem_euclid(o);
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.orders
    }

    /// `g x g^-1`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverses[g])
    }

    /// `x y x^-1 y^-1`
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inverses[x], self.inverses[y]))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, o| acc.lcm(o))
    }

    /// Number of elements of each order, as sorted `(order, count)` pairs.
    pub fn order_census(&self) -> Vec<(usize, usize)> {
        let mut census = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *census.entry(o).or_insert(0usize) += 1;
        }
        census.into_iter().collect()
    }
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            degree: self.degree,
            elements: self.elements.clone(),
            index: self.index.clone(),
            generators: self.generators.clone(),
            inverses: self.inverses.clone(),
            orders: self.orders.clone(),
            table: self.table.clone(),
            class_data: self.class_data.clone(),
            normals: self.normals.clone(),
            lattices: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field(
                "generators",
                &self.generators.iter().map(|&g| &self.elements[g]).collect::<Vec<_>>(),
            )
            .finish()
    }
}

pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<FiniteGroup> {
    FiniteGroup::from_generators(degree, gens)
}
