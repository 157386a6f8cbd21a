//! Exact arithmetic in the integral group ring `ZG` of a finite group.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg;
use crate::numtheory::multiplicative_order;
use crate::subgroup::center;

/// Largest group for which unit tests build the regular representation.
pub const DEFAULT_UNIT_CAP: usize = 200;

/// A finitely supported integer combination `Σ u_g g`, keyed by element index.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    coeffs: BTreeMap<usize, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(g: usize) -> Self {
        Self::from_pairs(&[(g, 1)])
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        let mut u = Self::zero();
        for &(g, c) in pairs {
            u.add_term(g, BigInt::from(c));
        }
        u
    }

    pub fn from_i128_coords(coords: &[i128]) -> Self {
        let mut u = Self::zero();
        for (g, &c) in coords.iter().enumerate() {
            u.add_term(g, BigInt::from(c));
        }
        u
    }

    /// Coefficients of `g^0, g^1, ...`.
    pub fn from_powers(group: &FiniteGroup, g: usize, coeffs: &[i64]) -> Self {
        let mut u = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            u.add_term(group.pow(g, i as i64), BigInt::from(c));
        }
        u
    }

    fn add_term(&mut self, g: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(g).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    pub fn coeff(&self, g: usize) -> BigInt {
        self.coeffs.get(&g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `Σ u_g`
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// `Σ u_g^2`, the identity coefficient of `u u*`.
    pub fn norm(&self) -> BigInt {
        self.coeffs.values().map(|c| c * c).sum()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut u = Self::zero();
        for (g, c) in self.terms() {
            u.add_term(g, c * k);
        }
        u
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut u = self.clone();
        for (g, c) in other.terms() {
            u.add_term(g, c.clone());
        }
        u
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Int(i64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    elem: usize,
    coeff: CoeffRepr,
}

/// `[{"elem": index, "coeff": int}, ...]` sorted by element index. Coefficients beyond
/// the 64-bit range are written as decimal strings.
impl Serialize for GroupRingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms()
            .map(|(elem, c)| TermRepr {
                elem,
                coeff: c
                    .to_i64()
                    .map_or_else(|| CoeffRepr::Text(c.to_string()), CoeffRepr::Int),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupRingElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let mut u = GroupRingElement::zero();
        for t in terms {
            let c = match t.coeff {
                CoeffRepr::Int(i) => BigInt::from(i),
                CoeffRepr::Text(s) => s.parse().map_err(serde::de::Error::custom)?,
            };
            u.add_term(t.elem, c);
        }
        Ok(u)
    }
}

/// `ZG` for a fixed finite group `G`.
#[derive(Clone, Copy, Debug)]
pub struct GroupRing<'g> {
    group: &'g FiniteGroup,
}

impl<'g> GroupRing<'g> {
    pub fn new(group: &'g FiniteGroup) -> Self {
        GroupRing { group }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn check(&self, u: &GroupRingElement) -> Result<()> {
        match u.max_index() {
            Some(g) if g >= self.group.order() => Err(Error::GroupMismatch),
            _ => Ok(()),
        }
    }

    pub fn add(&self, u: &GroupRingElement, v: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.add(v))
    }

    pub fn neg(&self, u: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(u)?;
        Ok(u.neg())
    }

    pub fn mul(&self, u: &GroupRingElement, v: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    fn mul_unchecked(&self, u: &GroupRingElement, v: &GroupRingElement) -> GroupRingElement {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (g, a) in u.terms() {
            for (h, b) in v.terms() {
                *acc.entry(self.group.mul(g, h)).or_default() += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        GroupRingElement { coeffs: acc }
    }

    pub fn pow(&self, u: &GroupRingElement, mut k: u64) -> Result<GroupRingElement> {
        self.check(u)?;
        let mut acc = GroupRingElement::one();
        let mut base = u.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// `Σ u_g g^-1`
    pub fn star(&self, u: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(u)?;
        Ok(GroupRingElement {
            coeffs: u.terms().map(|(g, c)| (self.group.inv(g), c.clone())).collect(),
        })
    }

    pub fn is_symmetric(&self, u: &GroupRingElement) -> Result<bool> {
        Ok(self.star(u)? == *u)
    }

    /// Commutes with every generator, hence with all of `G`.
    pub fn is_central(&self, u: &GroupRingElement) -> Result<bool> {
        self.check(u)?;
        Ok(self.group.generators().iter().all(|&s| {
            let s = GroupRingElement::basis(s);
            self.mul_unchecked(&s, u) == self.mul_unchecked(u, &s)
        }))
    }

    /// `u = ±z` with `z` central in `G`.
    pub fn is_trivial_unit(&self, u: &GroupRingElement) -> Result<bool> {
        self.check(u)?;
        let mut terms = u.terms();
        Ok(match (terms.next(), terms.next()) {
            (Some((g, c)), None) => c.abs().is_one() && self.is_central(&GroupRingElement::basis(g))?,
            _ => false,
        })
    }

    /// Matrix of `v ↦ u v` in the basis of group elements: entry `(x, y)` is `u_{x y^-1}`.
    pub fn left_regular_matrix(&self, u: &GroupRingElement) -> Result<Vec<Vec<BigInt>>> {
        self.check(u)?;
        let n = self.group.order();
        Ok((0..n)
            .map(|x| (0..n).map(|y| u.coeff(self.group.mul(x, self.group.inv(y)))).collect())
            .collect())
    }

    /// The two-sided inverse of `u` if it is a unit of `ZG`.
    ///
    /// `u` is a unit iff its left regular matrix has determinant `±1`; the inverse is then
    /// the exact solution of `u v = 1`, checked on both sides.
    pub fn unit_inverse(&self, u: &GroupRingElement) -> Result<Option<GroupRingElement>> {
        self.check(u)?;
        let mut terms = u.terms();
        if let (Some((g, c)), None) = (terms.next(), terms.next()) {
            return Ok(c.abs().is_one().then(|| GroupRingElement {
                coeffs: BTreeMap::from([(self.group.inv(g), c.clone())]),
            }));
        }
        if self.group.order() > DEFAULT_UNIT_CAP {
            return Err(Error::ClosureCapExceeded { cap: DEFAULT_UNIT_CAP });
        }
        let m = self.left_regular_matrix(u)?;
        if !linalg::determinant(&m).abs().is_one() {
            return Ok(None);
        }
        let mut rhs = vec![BigInt::zero(); self.group.order()];
        rhs[0] = BigInt::one();
        let x = linalg::solve(&m, &rhs)
            .ok_or_else(|| Error::InternalInvariantViolation("unimodular matrix reported singular".into()))?;
        let mut inv = GroupRingElement::zero();
        for (g, q) in x.into_iter().enumerate() {
            if !q.is_integer() {
                return Err(Error::InternalInvariantViolation(
                    "unimodular inverse is not integral".into(),
                ));
            }
            inv.add_term(g, q.to_integer());
        }
        if !self.mul_unchecked(u, &inv).is_one() || !self.mul_unchecked(&inv, u).is_one() {
            return Err(Error::InternalInvariantViolation(
                "computed inverse fails to invert".into(),
            ));
        }
        Ok(Some(inv))
    }

    pub fn is_unit(&self, u: &GroupRingElement) -> Result<bool> {
        Ok(self.unit_inverse(u)?.is_some())
    }

    /// `(1 + g + ... + g^(k-1))^m + ((1 - k^m) / n) ĝ` with `n = o(g)`, `m = ord_n(k)` and
    /// `ĝ = 1 + g + ... + g^(n-1)`.
    pub fn bass_unit(&self, g: usize, k: u64) -> Result<GroupRingElement> {
        if !self.group.contains_index(g) {
            return Err(Error::GroupMismatch);
        }
        let n = self.group.element_order(g) as u64;
        if n <= 1 {
            return Err(Error::TrivialOrder(n as usize));
        }
        let m = match multiplicative_order(k, n) {
            Some(m) if k >= 1 => m,
            _ => {
                return Err(Error::NotCoprime {
                    a: k as i64,
                    b: n as i64,
                })
            }
        };
        let mut partial = GroupRingElement::zero();
        for i in 0..k {
            partial.add_term(self.group.pow(g, i as i64), BigInt::one());
        }
        let power = self.pow(&partial, m)?;
        let km: BigInt = BigInt::from(k).pow(m as u32);
        let (factor, rem) = (BigInt::one() - km).div_rem(&BigInt::from(n));
        debug_assert!(rem.is_zero());
        let mut hat = GroupRingElement::zero();
        for i in 0..n {
            hat.add_term(self.group.pow(g, i as i64), factor.clone());
        }
        Ok(power.add(&hat))
    }

    /// The inverse of `bass_unit(g, k)`, which is `bass_unit(g^k, l)` for `k l ≡ 1 mod o(g)`.
    pub fn bass_unit_inverse(&self, g: usize, k: u64) -> Result<GroupRingElement> {
        if !self.group.contains_index(g) {
            return Err(Error::GroupMismatch);
        }
        let n = self.group.element_order(g) as u64;
        if n <= 1 {
            return Err(Error::TrivialOrder(n as usize));
        }
        let l = (1..=n).find(|&l| (k % n) * l % n == 1 % n).ok_or(Error::NotCoprime {
            a: k as i64,
            b: n as i64,
        })?;
        self.bass_unit(self.group.pow(g, k as i64), l)
    }

    /// `θ(u) = u u*` on central units.
    pub fn theta(&self, u: &GroupRingElement) -> Result<GroupRingElement> {
        if !self.is_central(u)? || !self.is_unit(u)? {
            return Err(Error::NotCentralUnit);
        }
        Ok(self.mul_unchecked(u, &self.star(u)?))
    }

    /// `θ(u)` where unit status is certified by a known inverse instead of a determinant.
    pub fn theta_with_inverse(&self, u: &GroupRingElement, inverse: &GroupRingElement) -> Result<GroupRingElement> {
        if !self.is_central(u)? || !self.is_inverse(u, inverse)? {
            return Err(Error::NotCentralUnit);
        }
        Ok(self.mul_unchecked(u, &self.star(u)?))
    }

    /// Whether `u v = v u = 1`.
    pub fn is_inverse(&self, u: &GroupRingElement, v: &GroupRingElement) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v).is_one() && self.mul_unchecked(v, u).is_one())
    }

    /// Order of a central unit if it is at most `bound`.
    ///
    /// A central unit of finite order has a unitary regular representation, so `u u* = 1`
    /// and every power has `Σ c^2 = 1`; a power with larger norm proves infinite order.
    pub fn central_unit_order(&self, u: &GroupRingElement, bound: u64) -> Result<Option<u64>> {
        if !self.is_central(u)? {
            return Err(Error::NotCentralUnit);
        }
        let mut p = u.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Ok(Some(k));
            }
            if !p.norm().is_one() {
                return Ok(None);
            }
            p = self.mul_unchecked(&p, u);
        }
        Ok(None)
    }

    /// Some central `z` with `u^2 = z θ(u)`, if one exists.
    pub fn square_center_factor(&self, u: &GroupRingElement) -> Result<Option<usize>> {
        let t = self.theta(u)?;
        Ok(self.center_factor(u, &t))
    }

    /// Some central `z` with `u^2 = z t`; `t` is expected to be `θ(u)`.
    pub fn center_factor(&self, u: &GroupRingElement, t: &GroupRingElement) -> Option<usize> {
        let sq = self.mul_unchecked(u, u);
        center(self.group)
            .members()
            .iter()
            .copied()
            .find(|&z| self.mul_unchecked(&GroupRingElement::basis(z), t) == sq)
    }

    /// `Σ_{x ∈ class} x`
    pub fn class_sum(&self, class: &[usize]) -> GroupRingElement {
        let mut u = GroupRingElement::zero();
        for &x in class {
            u.add_term(x, BigInt::one());
        }
        u
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::subgroup::conjugacy_classes;

    fn powers(group: &FiniteGroup, g: usize, u: &GroupRingElement) -> Vec<i64> {
        (0..group.element_order(g))
            .map(|i| u.coeff(group.pow(g, i as i64)).to_i64().unwrap())
            .collect()
    }

    #[test]
    fn basic_products() {
        let s3 = catalog("symmetric", &[3]).unwrap();
        let ring = GroupRing::new(&s3);
        let g = s3.generators()[1];
        let prod = ring
            .mul(&GroupRingElement::basis(g), &GroupRingElement::basis(s3.inv(g)))
            .unwrap();
        assert!(prod.is_one());

        let c2 = catalog("cyclic", &[2]).unwrap();
        let ring2 = GroupRing::new(&c2);
        let h = c2.generators()[0];
        let a = GroupRingElement::from_pairs(&[(0, 1), (h, 1)]);
        let b = GroupRingElement::from_pairs(&[(0, 1), (h, -1)]);
        assert!(ring2.mul(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn transposition_class_sum_squared() {
        let s3 = catalog("symmetric", &[3]).unwrap();
        let ring = GroupRing::new(&s3);
        let classes = conjugacy_classes(&s3);
        let transp = classes.iter().find(|c| s3.element_order(c[0]) == 2).unwrap();
        let threes = classes.iter().find(|c| s3.element_order(c[0]) == 3).unwrap();
        let t = ring.class_sum(transp);
        let sq = ring.mul(&t, &t).unwrap();
        let expect = GroupRingElement::one()
            .scale(&BigInt::from(3))
            .add(&ring.class_sum(threes).scale(&BigInt::from(3)));
        assert_eq!(sq, expect);
    }

    #[test]
    fn bass_unit_c5() {
        let c5 = catalog("cyclic", &[5]).unwrap();
        let ring = GroupRing::new(&c5);
        let g = c5.generators()[0];
        let u = ring.bass_unit(g, 2).unwrap();
        assert_eq!(powers(&c5, g, &u), vec![-2, 1, 3, 1, -2]);
        assert_eq!(u.augmentation(), BigInt::one());
        assert_eq!(powers(&c5, g, &ring.star(&u).unwrap()), vec![-2, -2, 1, 3, 1]);
        assert!(ring.is_central(&u).unwrap());
        assert!(!ring.is_trivial_unit(&u).unwrap());
        assert!(!ring.is_symmetric(&u).unwrap());
        let inv = ring.unit_inverse(&u).unwrap().unwrap();
        assert!(ring.mul(&u, &inv).unwrap().is_one());
        assert!(ring.mul(&inv, &u).unwrap().is_one());
    }

    #[test]
    fn bass_unit_inverse_matches_determinant_inverse() {
        for n in [5i64, 7, 8, 12] {
            let g = catalog("cyclic", &[n]).unwrap();
            let ring = GroupRing::new(&g);
            let x = g.generators()[0];
            for k in (2..n as u64).filter(|k| k.gcd(&(n as u64)) == 1) {
                let u = ring.bass_unit(x, k).unwrap();
                let inv = ring.bass_unit_inverse(x, k).unwrap();
                assert!(ring.is_inverse(&u, &inv).unwrap());
                assert_eq!(ring.unit_inverse(&u).unwrap(), Some(inv.clone()));
                assert_eq!(ring.theta_with_inverse(&u, &inv).unwrap(), ring.theta(&u).unwrap());
            }
        }
    }

    #[test]
    fn bass_unit_edge_cases() {
        let c2 = catalog("cyclic", &[2]).unwrap();
        let ring = GroupRing::new(&c2);
        assert!(ring.bass_unit(c2.generators()[0], 1).unwrap().is_one());
        assert_eq!(ring.bass_unit(0, 1).unwrap_err(), Error::TrivialOrder(1));
        let c8 = catalog("cyclic", &[8]).unwrap();
        let ring8 = GroupRing::new(&c8);
        let g = c8.generators()[0];
        assert!(matches!(ring8.bass_unit(g, 2), Err(Error::NotCoprime { .. })));
        let u = ring8.bass_unit(g, 3).unwrap();
        assert_eq!(u.augmentation(), BigInt::one());
        assert!(ring8.is_unit(&u).unwrap());
        assert!(!ring8.is_trivial_unit(&u).unwrap());
    }

    #[test]
    fn units_and_non_units() {
        let c2 = catalog("cyclic", &[2]).unwrap();
        let ring = GroupRing::new(&c2);
        let g = c2.generators()[0];
        assert!(!ring.is_unit(&GroupRingElement::from_pairs(&[(0, 1), (g, 1)])).unwrap());
        assert!(ring.is_unit(&GroupRingElement::from_pairs(&[(g, -1)])).unwrap());
        assert!(!ring.is_unit(&GroupRingElement::from_pairs(&[(g, 2)])).unwrap());
        assert!(!ring.is_unit(&GroupRingElement::zero()).unwrap());
    }

    #[test]
    fn trivial_units_and_theta() {
        let q8 = catalog("quaternion", &[8]).unwrap();
        let ring = GroupRing::new(&q8);
        let z = center(&q8).members()[1];
        let u = GroupRingElement::from_pairs(&[(z, -1)]);
        assert!(ring.is_trivial_unit(&u).unwrap());
        assert!(ring.theta(&u).unwrap().is_one());
        assert!(ring.theta(&GroupRingElement::basis(z)).unwrap().is_one());
        let g = q8.generators()[0];
        assert!(!ring.is_central(&GroupRingElement::basis(g)).unwrap());
        assert_eq!(
            ring.theta(&GroupRingElement::basis(g)).unwrap_err(),
            Error::NotCentralUnit
        );
    }

    #[test]
    fn theta_of_bass_unit() {
        let c5 = catalog("cyclic", &[5]).unwrap();
        let ring = GroupRing::new(&c5);
        let u = ring.bass_unit(c5.generators()[0], 2).unwrap();
        let t = ring.theta(&u).unwrap();
        assert!(ring.is_symmetric(&t).unwrap());
        assert!(!ring.is_trivial_unit(&t).unwrap());
        assert_eq!(t.augmentation(), BigInt::one());
        assert_eq!(ring.central_unit_order(&t, 60).unwrap(), None);
        assert!(ring.square_center_factor(&u).unwrap().is_some());
    }

    #[test]
    fn mismatched_elements() {
        let c2 = catalog("cyclic", &[2]).unwrap();
        let ring = GroupRing::new(&c2);
        let far = GroupRingElement::basis(7);
        assert_eq!(ring.mul(&far, &far).unwrap_err(), Error::GroupMismatch);
        assert_eq!(ring.star(&far).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn json_format() {
        let u = GroupRingElement::from_pairs(&[(3, -2), (0, 1)]);
        assert_eq!(
            serde_json::to_string(&u).unwrap(),
            r#"[{"elem":0,"coeff":1},{"elem":3,"coeff":-2}]"#
        );
        let big = GroupRingElement::one().scale(&BigInt::from(10).pow(30u32));
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<GroupRingElement>(&text).unwrap(), big);
    }
}
