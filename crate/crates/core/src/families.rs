//! Cut decisions for infinite groups given by parameters: infinite metacyclic
//! groups, Baumslag-Solitar groups, free products, amalgams, HNN extensions and
//! general extensions. Infinite groups are never enumerated; each decision is
//! arithmetic on the parameters and records the clauses it used.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::catalog::cyclic;
use crate::construct::{automorphism_from_generator_images, semidirect};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::{coprime_residues, euler_phi, pow_mod};
use crate::rs::is_rs_subgroup;
use crate::subgroup::Subgroup;

/// `<a, b | a^m = 1, b^n = 1, b a = a^r b>`, where `0` stands for infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetacyclicParams {
    m: u64,
    n: u64,
    /// In `0..m` when `m > 0`, otherwise `±1`.
    r: i64,
}

impl MetacyclicParams {
    pub fn new(m: u64, n: u64, r: i64) -> Result<Self> {
        if m == 0 {
            if r != 1 && r != -1 {
                return Err(Error::NotMetacyclicAction(format!(
                    "the infinite cyclic group only has the automorphisms ±1, got {r}"
                )));
            }
            if r == -1 && n % 2 == 1 {
                return Err(Error::NotMetacyclicAction(format!(
                    "b^{n} = 1 would act on <a> by inversion"
                )));
            }
            return Ok(MetacyclicParams { m, n, r });
        }
        let r = r.rem_euclid(m as i64);
        if (r as u64).gcd(&m) != 1 {
            return Err(Error::NotMetacyclicAction(format!("{r} is not a unit modulo {m}")));
        }
        if n > 0 && pow_mod(r as u64, n, m) != 1 % m {
            return Err(Error::NotMetacyclicAction(format!("{r}^{n} is not 1 modulo {m}")));
        }
        Ok(MetacyclicParams { m, n, r })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn is_infinite(&self) -> bool {
        self.m == 0 || self.n == 0
    }

    /// `b` centralizes `a`.
    pub fn is_abelian(&self) -> bool {
        if self.m == 0 {
            self.r == 1
        } else {
            self.r as u64 == 1 % self.m
        }
    }
}

/// Facts a family decision relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `Π/G` cut and `G ∩ Φ⁺(Π) = 1` make `Π` cut.
    ExtensionQuotientCut,
    /// `Φ⁺(Π/G) = 1` and `Φ⁺(G)` an RS-subgroup of `Π` make `Π` cut.
    ExtensionTorsionFreeQuotient,
    /// `G *_A G'` with `A` proper in both factors and RS in one of them is cut.
    AmalgamRsSubgroup,
    /// A free product of nontrivial groups is cut.
    FreeProduct,
    /// An HNN extension over an RS-subgroup of the base is cut.
    HnnRsSubgroup,
    /// If `Φ⁺(G) = Φ⁺(Z(G))`, then `G` is cut iff every central torsion element has
    /// order dividing 4 or 6.
    CentralTorsionOrder,
    /// For `<a, b | b^n, b a = a^-1 b>` with `n > 0`, `Φ⁺(G) = <b^2>`.
    FcTorsionIsBSquared,
    /// For `<a, b | a^m, b a = a^r b>`, `G` is cut iff `a` is an RS-element, iff
    /// `U(m) = <-1, r>`.
    GeneratorRsCriterion,
}

impl Clause {
    pub fn statement(&self) -> &'static str {
        match self {
            Clause::ExtensionQuotientCut => "Π/G cut and G ∩ Φ⁺(Π) = 1 imply Π cut",
            Clause::ExtensionTorsionFreeQuotient => "Φ⁺(Π/G) = 1 and Φ⁺(G) RS in Π imply Π cut",
            Clause::AmalgamRsSubgroup => "G *_A G' with A proper in both and RS in one factor is cut",
            Clause::FreeProduct => "free products of nontrivial groups are cut",
            Clause::HnnRsSubgroup => "HNN extensions over an RS-subgroup of the base are cut",
            Clause::CentralTorsionOrder => "when Φ⁺(G) = Φ⁺(Z(G)), G is cut iff central torsion orders divide 4 or 6",
            Clause::FcTorsionIsBSquared => "Φ⁺(<a, b | b^n, ba = a^-1 b>) = <b^2>",
            Clause::GeneratorRsCriterion => "<a, b | a^m, ba = a^r b> is cut iff U(m) = <-1, r>",
        }
    }
}

/// Outcome of a family decision. `outcome` is `None` when no sufficient condition applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyVerdict {
    pub outcome: Option<bool>,
    pub derivation: Vec<Clause>,
    pub notes: Vec<String>,
}

impl FamilyVerdict {
    fn decided(outcome: bool, derivation: Vec<Clause>, notes: Vec<String>) -> Self {
        FamilyVerdict {
            outcome: Some(outcome),
            derivation,
            notes,
        }
    }

    fn undetermined(note: impl Into<String>) -> Self {
        FamilyVerdict {
            outcome: None,
            derivation: Vec::new(),
            notes: vec![note.into()],
        }
    }

    pub fn is_cut(&self) -> bool {
        self.outcome == Some(true)
    }
}

/// The subgroup `<-1, r>` of `U(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSubgroup {
    pub m: u64,
    pub elements: Vec<u64>,
    pub phi: u64,
    pub full: bool,
}

pub fn unit_group_generated(m: u64, r: i64) -> Result<UnitSubgroup> {
    if m < 3 {
        return Err(Error::InvalidParams(format!("modulus must be at least 3, got {m}")));
    }
    let r = r.rem_euclid(m as i64) as u64;
    if r.gcd(&m) != 1 {
        return Err(Error::NotCoprime {
            a: r as i64,
            b: m as i64,
        });
    }
    let gens = [m - 1, r];
    let mut seen = BTreeSet::from([1u64]);
    let mut frontier = vec![1u64];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = x * g % m;
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    let phi = euler_phi(m);
    Ok(UnitSubgroup {
        m,
        full: seen.len() as u64 == phi,
        elements: seen.into_iter().collect(),
        phi,
    })
}

/// A cyclic subgroup described by a generator word and its order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicDescriptor {
    pub generator: String,
    pub order: u64,
}

impl fmt::Display for CyclicDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            write!(f, "trivial")
        } else {
            write!(f, "<{}> of order {}", self.generator, self.order)
        }
    }
}

/// Torsion of the FC-centre of `<a, b | b^n, b a = a^-1 b>`.
pub fn metacyclic_fc_torsion(p: &MetacyclicParams) -> Result<CyclicDescriptor> {
    if p.m != 0 || p.r != -1 {
        return Err(Error::UnsupportedCase(
            "the FC-torsion descriptor covers a of infinite order inverted by b".into(),
        ));
    }
    Ok(CyclicDescriptor {
        generator: "b^2".into(),
        order: if p.n == 0 { 1 } else { p.n / p.n.gcd(&2) },
    })
}

fn divides_four_or_six(k: u64) -> bool {
    k > 0 && (4 % k == 0 || 6 % k == 0)
}

/// Cut decision for an infinite non-abelian metacyclic group.
pub fn metacyclic_is_cut(p: &MetacyclicParams) -> Result<FamilyVerdict> {
    if !p.is_infinite() {
        return Err(Error::NotInfinite);
    }
    if p.is_abelian() {
        let torsion = if p.m == 0 {
            "torsion-free part only".to_string()
        } else {
            format!("torsion cyclic of order {}", p.m)
        };
        return Err(Error::Abelian(format!(
            "{torsion}; an abelian group is cut iff its torsion has exponent dividing 4 or 6"
        )));
    }
    if p.m == 0 {
        let torsion = metacyclic_fc_torsion(p)?;
        let cut = divides_four_or_six(torsion.order);
        let mut derivation = vec![Clause::FcTorsionIsBSquared, Clause::CentralTorsionOrder];
        if p.n == 0 {
            derivation = vec![Clause::ExtensionQuotientCut];
        }
        return Ok(FamilyVerdict::decided(
            cut,
            derivation,
            vec![format!("Φ⁺(G) = {torsion}")],
        ));
    }
    let units = unit_group_generated(p.m, p.r)?;
    let mut notes = vec![format!(
        "<-1, {}> has order {} in U({}) of order {}",
        p.r,
        units.elements.len(),
        p.m,
        units.phi
    )];
    if let Some(j) = coprime_residues(p.m).find(|j| units.elements.binary_search(j).is_err()) {
        notes.push(format!("a^{j} is conjugate to neither a nor a^-1"));
    }
    Ok(FamilyVerdict::decided(
        units.full,
        vec![Clause::ExtensionTorsionFreeQuotient, Clause::GeneratorRsCriterion],
        notes,
    ))
}

/// Abelian groups are cut iff the torsion subgroup has exponent dividing 4 or 6.
pub fn abelian_is_cut(torsion_exponent: u64) -> FamilyVerdict {
    FamilyVerdict::decided(
        divides_four_or_six(torsion_exponent),
        vec![Clause::CentralTorsionOrder],
        vec![format!("torsion exponent {torsion_exponent}")],
    )
}

/// `BS(m, n) = <a, t | t^-1 a^m t = a^n>`, an HNN extension of the infinite cyclic group.
pub fn baumslag_solitar_is_cut(m: i64, n: i64) -> Result<FamilyVerdict> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroParameter);
    }
    Ok(FamilyVerdict::decided(
        true,
        vec![Clause::HnnRsSubgroup],
        vec![format!(
            "HNN extension of <a> over <a^{m}> and <a^{n}>; the base is torsion-free, so both are RS-subgroups"
        )],
    ))
}

/// Structural data for the sufficient conditions on extensions. Flags are supplied by
/// the caller or computed from finite constituents; `None` means not known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtensionShape {
    /// `G *_A G'`; `indices` are `[G : A]` and `[G' : A]`, with `0` for infinite index.
    Amalgam {
        amalgamated_rs_in_factor: Option<bool>,
        indices: Option<(u64, u64)>,
    },
    /// HNN extension of `G` over `A ≅ B`.
    Hnn {
        associated_rs_in_base: Option<bool>,
    },
    FreeProduct {
        factors_nontrivial: Option<bool>,
    },
    /// `G` normal in `Π` with `Q = Π/G`.
    Extension {
        quotient_is_cut: Option<bool>,
        base_meets_fc_torsion_trivially: Option<bool>,
        quotient_fc_torsion_trivial: Option<bool>,
        base_fc_torsion_rs: Option<bool>,
    },
}

impl Default for ExtensionShape {
    fn default() -> Self {
        ExtensionShape::Extension {
            quotient_is_cut: None,
            base_meets_fc_torsion_trivially: None,
            quotient_fc_torsion_trivial: None,
            base_fc_torsion_rs: None,
        }
    }
}

/// Builds the amalgam shape `G *_A G'` of two finite groups, computing the RS flag and
/// the indices. `a1` and `a2` are the two copies of the amalgamated subgroup.
pub fn amalgam_of_finite(g1: &FiniteGroup, a1: &Subgroup, g2: &FiniteGroup, a2: &Subgroup) -> Result<ExtensionShape> {
    a1.check_parent(g1)?;
    a2.check_parent(g2)?;
    if a1.order() != a2.order() {
        return Err(Error::InvalidParams(
            "amalgamated subgroups have different orders".into(),
        ));
    }
    let rs = is_rs_subgroup(g1, a1)?.outcome || is_rs_subgroup(g2, a2)?.outcome;
    Ok(ExtensionShape::Amalgam {
        amalgamated_rs_in_factor: Some(rs),
        indices: Some(((g1.order() / a1.order()) as u64, (g2.order() / a2.order()) as u64)),
    })
}

/// Applies the sufficient conditions; `outcome` is `None` when none of them applies.
pub fn extension_is_cut(shape: &ExtensionShape) -> Result<FamilyVerdict> {
    match *shape {
        ExtensionShape::FreeProduct { factors_nontrivial } => match factors_nontrivial {
            None => Err(Error::MissingFlags("factors_nontrivial".into())),
            Some(true) => Ok(FamilyVerdict::decided(true, vec![Clause::FreeProduct], Vec::new())),
            Some(false) => Ok(FamilyVerdict::undetermined(
                "a free product with a trivial factor is just the other factor",
            )),
        },
        ExtensionShape::Amalgam {
            amalgamated_rs_in_factor,
            indices,
        } => {
            let Some(rs) = amalgamated_rs_in_factor else {
                return Ok(FamilyVerdict::undetermined(
                    "no RS flag set for the amalgamated subgroup",
                ));
            };
            let Some((i, j)) = indices else {
                return Err(Error::MissingFlags("indices".into()));
            };
            if i == 1 || j == 1 {
                Ok(FamilyVerdict::undetermined("the amalgamated subgroup equals a factor"))
            } else if rs {
                Ok(FamilyVerdict::decided(
                    true,
                    vec![Clause::AmalgamRsSubgroup],
                    vec![format!("indices {i} and {j}")],
                ))
            } else {
                Ok(FamilyVerdict::undetermined(
                    "the amalgamated subgroup is not RS in either factor",
                ))
            }
        }
        ExtensionShape::Hnn { associated_rs_in_base } => match associated_rs_in_base {
            None => Err(Error::MissingFlags("associated_rs_in_base".into())),
            Some(true) => Ok(FamilyVerdict::decided(true, vec![Clause::HnnRsSubgroup], Vec::new())),
            Some(false) => Ok(FamilyVerdict::undetermined(
                "neither associated subgroup is RS in the base",
            )),
        },
        ExtensionShape::Extension {
            quotient_is_cut,
            base_meets_fc_torsion_trivially,
            quotient_fc_torsion_trivial,
            base_fc_torsion_rs,
        } => {
            let first = quotient_is_cut.zip(base_meets_fc_torsion_trivially);
            let second = quotient_fc_torsion_trivial.zip(base_fc_torsion_rs);
            if first.is_none() && second.is_none() {
                return Err(Error::MissingFlags(
                    "quotient_is_cut with base_meets_fc_torsion_trivially, or quotient_fc_torsion_trivial with base_fc_torsion_rs".into(),
                ));
            }
            let mut derivation = Vec::new();
            if first == Some((true, true)) {
                derivation.push(Clause::ExtensionQuotientCut);
            }
            if second == Some((true, true)) {
                derivation.push(Clause::ExtensionTorsionFreeQuotient);
            }
            if derivation.is_empty() {
                Ok(FamilyVerdict::undetermined("no sufficient condition applies"))
            } else {
                Ok(FamilyVerdict::decided(true, derivation, Vec::new()))
            }
        }
    }
}

pub const PRESET_NAMES: &[&str] = &["sl2z", "psl2z"];

/// `sl2z` is `C4 *_{C2} C6`; `psl2z` is `C2 * C3`.
pub fn preset(name: &str) -> Result<ExtensionShape> {
    match name {
        "sl2z" => {
            let (c4, c6) = (cyclic(4)?, cyclic(6)?);
            let half = |g: &FiniteGroup| {
                let x = g.pow(g.generators()[0], (g.order() / 2) as i64);
                Subgroup::generated_by(g, &[x])
            };
            amalgam_of_finite(&c4, &half(&c4)?, &c6, &half(&c6)?)
        }
        "psl2z" => {
            let (c2, c3) = (cyclic(2)?, cyclic(3)?);
            Ok(ExtensionShape::FreeProduct {
                factors_nontrivial: Some(c2.order() > 1 && c3.order() > 1),
            })
        }
        other => Err(Error::InvalidParams(format!("unknown preset `{other}`"))),
    }
}

/// Compares the symbolic verdict for `<a, b | a^m, ba = a^r b>` with the finite group
/// obtained by imposing `b^k = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationReport {
    pub k: u64,
    pub finite_order: usize,
    pub base_is_rs: bool,
    pub symbolic: bool,
    pub agree: bool,
}

pub fn truncation_consistency(p: &MetacyclicParams, k: u64) -> Result<TruncationReport> {
    if p.n != 0 || p.m == 0 {
        return Err(Error::UnsupportedCase(
            "truncation needs a of finite order and b of infinite order".into(),
        ));
    }
    if k == 0 || pow_mod(p.r as u64, k, p.m) != 1 % p.m {
        return Err(Error::IncompatibleExponent { m: p.m, k });
    }
    let symbolic = metacyclic_is_cut(p)?.is_cut();
    let a = cyclic(p.m as usize)?;
    let b = cyclic(k as usize)?;
    let aut = automorphism_from_generator_images(&a, &[a.pow(a.generators()[0], p.r)])?;
    let product = semidirect(&a, &b, &vec![aut; b.generators().len()])?;
    let base_is_rs = is_rs_subgroup(&product.group, &product.base())?.outcome;
    Ok(TruncationReport {
        k,
        finite_order: product.group.order(),
        base_is_rs,
        symbolic,
        agree: base_is_rs == symbolic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta(m: u64, n: u64, r: i64) -> MetacyclicParams {
        MetacyclicParams::new(m, n, r).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(meta(16, 0, -9).r(), 7);
        assert!(matches!(
            MetacyclicParams::new(0, 0, 2),
            Err(Error::NotMetacyclicAction(_))
        ));
        assert!(matches!(
            MetacyclicParams::new(0, 3, -1),
            Err(Error::NotMetacyclicAction(_))
        ));
        assert!(matches!(
            MetacyclicParams::new(6, 0, 2),
            Err(Error::NotMetacyclicAction(_))
        ));
        assert!(matches!(
            MetacyclicParams::new(5, 3, 2),
            Err(Error::NotMetacyclicAction(_))
        ));
        assert!(!meta(5, 4, 2).is_infinite());
    }

    #[test]
    fn case_infinite_a() {
        let cut = |n| metacyclic_is_cut(&meta(0, n, -1)).unwrap().outcome;
        for n in [0, 2, 4, 6, 8, 12] {
            assert_eq!(cut(n), Some(true), "n = {n}");
        }
        for n in [10, 14, 16, 18, 20, 24, 36] {
            assert_eq!(cut(n), Some(false), "n = {n}");
        }
    }

    #[test]
    fn case_infinite_b() {
        assert!(metacyclic_is_cut(&meta(5, 0, 2)).unwrap().is_cut());
        let v = metacyclic_is_cut(&meta(16, 0, 7)).unwrap();
        assert_eq!(v.outcome, Some(false));
        assert!(v.notes.iter().any(|n| n.contains("a^3")));
    }

    #[test]
    fn metacyclic_errors() {
        assert_eq!(metacyclic_is_cut(&meta(5, 4, 2)).unwrap_err(), Error::NotInfinite);
        assert!(matches!(metacyclic_is_cut(&meta(0, 5, 1)), Err(Error::Abelian(_))));
        assert!(matches!(metacyclic_is_cut(&meta(7, 0, 8)), Err(Error::Abelian(_))));
    }

    #[test]
    fn unit_groups() {
        assert_eq!(unit_group_generated(5, 2).unwrap().elements, vec![1, 2, 3, 4]);
        let u8 = unit_group_generated(8, 3).unwrap();
        assert_eq!((u8.elements.clone(), u8.full), (vec![1, 3, 5, 7], true));
        let u16 = unit_group_generated(16, 7).unwrap();
        assert_eq!((u16.elements.clone(), u16.full, u16.phi), (vec![1, 7, 9, 15], false, 8));
        assert!(matches!(unit_group_generated(10, 4), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn fc_torsion() {
        assert_eq!(metacyclic_fc_torsion(&meta(0, 8, -1)).unwrap().order, 4);
        assert_eq!(metacyclic_fc_torsion(&meta(0, 0, -1)).unwrap().to_string(), "trivial");
        assert_eq!(metacyclic_fc_torsion(&meta(0, 2, -1)).unwrap().order, 1);
        assert!(matches!(
            metacyclic_fc_torsion(&meta(5, 0, 2)),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn baumslag_solitar() {
        assert!(baumslag_solitar_is_cut(1, 2).unwrap().is_cut());
        assert!(baumslag_solitar_is_cut(-2, 3).unwrap().is_cut());
        assert_eq!(baumslag_solitar_is_cut(1, 0).unwrap_err(), Error::ZeroParameter);
    }

    #[test]
    fn extensions() {
        let sl2z = preset("sl2z").unwrap();
        assert_eq!(
            sl2z,
            ExtensionShape::Amalgam {
                amalgamated_rs_in_factor: Some(true),
                indices: Some((2, 3))
            }
        );
        assert!(extension_is_cut(&sl2z).unwrap().is_cut());
        assert!(extension_is_cut(&preset("psl2z").unwrap()).unwrap().is_cut());
        let no_rs = ExtensionShape::Amalgam {
            amalgamated_rs_in_factor: Some(false),
            indices: Some((2, 3)),
        };
        assert_eq!(extension_is_cut(&no_rs).unwrap().outcome, None);
        let unset = ExtensionShape::Amalgam {
            amalgamated_rs_in_factor: None,
            indices: Some((2, 3)),
        };
        assert_eq!(extension_is_cut(&unset).unwrap().outcome, None);
        let missing = ExtensionShape::Amalgam {
            amalgamated_rs_in_factor: Some(true),
            indices: None,
        };
        assert!(matches!(extension_is_cut(&missing), Err(Error::MissingFlags(_))));
        assert!(matches!(
            extension_is_cut(&ExtensionShape::default()),
            Err(Error::MissingFlags(_))
        ));
        let ext = ExtensionShape::Extension {
            quotient_is_cut: Some(true),
            base_meets_fc_torsion_trivially: Some(true),
            quotient_fc_torsion_trivial: None,
            base_fc_torsion_rs: None,
        };
        assert_eq!(
            extension_is_cut(&ext).unwrap().derivation,
            vec![Clause::ExtensionQuotientCut]
        );
        assert!(preset("gl2z").is_err());
    }

    #[test]
    fn truncations() {
        let t = truncation_consistency(&meta(5, 0, 2), 4).unwrap();
        assert_eq!((t.finite_order, t.base_is_rs, t.symbolic), (20, true, true));
        let t = truncation_consistency(&meta(16, 0, 7), 2).unwrap();
        assert_eq!((t.finite_order, t.symbolic), (32, false));
        assert!(t.agree);
        let t = truncation_consistency(&meta(3, 0, 2), 2).unwrap();
        assert_eq!((t.finite_order, t.base_is_rs), (6, true));
        assert_eq!(
            truncation_consistency(&meta(5, 0, 2), 3).unwrap_err(),
            Error::IncompatibleExponent { m: 5, k: 3 }
        );
    }

    #[test]
    fn verdict_json() {
        let v = metacyclic_is_cut(&meta(0, 10, -1)).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["outcome"], serde_json::json!(false));
        assert_eq!(
            json["derivation"],
            serde_json::json!(["fc_torsion_is_b_squared", "central_torsion_order"])
        );
    }
}
