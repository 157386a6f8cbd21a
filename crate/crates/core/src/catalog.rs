//! Named families of finite groups and the versioned JSON group-spec format.
//!
//! | name                 | params            | representation                         |
//! |----------------------|-------------------|----------------------------------------|
//! | `cyclic`             | `n`               | n-cycle on n points                    |
//! | `dihedral`           | order `2n`        | symmetries of the n-gon (Klein four on 4 points for order 4) |
//! | `quaternion`         | order `4n`, n ≥ 2 | regular; dicyclic unless the order is a power of 2 |
//! | `symmetric`          | `n`               | natural action on n points             |
//! | `alternating`        | `n`               | natural action on n points             |
//! | `elementary_abelian` | `p, k`            | k disjoint p-cycles                    |
//! | `abelian`            | `n1, n2, ...`     | direct product of cyclic groups        |
//! | `metacyclic`         | `m, n, r`         | `C_m ⋊ C_n` with `b a b^-1 = a^r`      |

use serde::{Deserialize, Serialize};

use crate::construct::{automorphism_from_generator_images, direct_product, from_multiplication, semidirect};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::{is_prime, pow_mod};
use crate::perm::Permutation;

pub const SPEC_SCHEMA_VERSION: u32 = 1;

pub const CATALOG_NAMES: &[&str] = &[
    "cyclic",
    "dihedral",
    "quaternion",
    "symmetric",
    "alternating",
    "elementary_abelian",
    "abelian",
    "metacyclic",
];

fn param(params: &[i64], i: usize, name: &str) -> Result<usize> {
    let v = *params
        .get(i)
        .ok_or_else(|| Error::InvalidParams(format!("{name}: missing parameter {}", i + 1)))?;
    usize::try_from(v).map_err(|_| Error::InvalidParams(format!("{name}: parameter {v} must be non-negative")))
}

fn expect_len(params: &[i64], n: usize, name: &str) -> Result<()> {
    if params.len() == n {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "{name} takes {n} parameter(s), got {}",
            params.len()
        )))
    }
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let c: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[c]).expect("valid cycle")
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParams("cyclic order must be positive".into()));
    }
    let gens = if n == 1 { vec![] } else { vec![cycle(n, 0..n)] };
    FiniteGroup::from_generators(n, gens)
}

pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::InvalidParams(format!(
            "dihedral order {order} must be even and at least 2"
        )));
    }
    let n = order / 2;
    match n {
        1 => cyclic(2),
        2 => FiniteGroup::from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
            ],
        ),
        _ => {
            let reflection: Vec<Vec<usize>> = (1..n).take_while(|&i| i < n - i).map(|i| vec![i, n - i]).collect();
            FiniteGroup::from_generators(n, vec![cycle(n, 0..n), Permutation::from_cycles(n, &reflection)?])
        }
    }
}

/// `<x, y | x^2n = 1, y^2 = x^n, y x y^-1 = x^-1>`, order `4n`.
pub fn quaternion(order: usize) -> Result<FiniteGroup> {
    if order < 8 || order % 4 != 0 {
        return Err(Error::InvalidParams(format!(
            "quaternion order {order} must be a multiple of 4 and at least 8"
        )));
    }
    let two_n = order / 2;
    let n = two_n / 2;
    // x^i y^j is encoded as i + 2n j
    let mul = |a: usize, b: usize| {
        let (i, j) = (a % two_n, a / two_n);
        let (k, l) = (b % two_n, b / two_n);
        if j == 0 {
            (i + k) % two_n + two_n * l
        } else if l == 0 {
            (i + two_n - k) % two_n + two_n
        } else {
            (i + two_n - k + n) % two_n
        }
    };
    from_multiplication(order, mul, &[1, two_n])
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::InvalidParams("symmetric degree must be positive".into())),
        1 => cyclic(1),
        2 => cyclic(2),
        _ => FiniteGroup::from_generators(n, vec![cycle(n, [0, 1]), cycle(n, 0..n)]),
    }
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::InvalidParams("alternating degree must be positive".into())),
        1 | 2 => cyclic(1),
        _ => FiniteGroup::from_generators(n, (2..n).map(|k| cycle(n, [0, 1, k])).collect()),
    }
}

pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    if k == 0 {
        return cyclic(1);
    }
    let degree = p * k;
    FiniteGroup::from_generators(degree, (0..k).map(|i| cycle(degree, i * p..(i + 1) * p)).collect())
}

pub fn abelian(invariants: &[usize]) -> Result<FiniteGroup> {
    let factors = invariants.iter().map(|&n| cyclic(n)).collect::<Result<Vec<_>>>()?;
    match factors.len() {
        0 => cyclic(1),
        1 => Ok(factors.into_iter().next().unwrap()),
        _ => direct_product(&factors.iter().collect::<Vec<_>>()),
    }
}

/// `<a, b | a^m, b^n, b a b^-1 = a^r>`; needs `gcd(r, m) = 1` and `r^n = 1 (mod m)`.
pub fn metacyclic(m: usize, n: usize, r: i64) -> Result<FiniteGroup> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParams("finite metacyclic groups need m, n > 0".into()));
    }
    let r = r.rem_euclid(m as i64) as u64;
    if num_integer::gcd(r, m as u64) != 1 && m > 1 {
        return Err(Error::InvalidParams(format!("{r} is not a unit modulo {m}")));
    }
    if pow_mod(r, n as u64, m as u64) != 1 % m as u64 {
        return Err(Error::InvalidParams(format!("{r}^{n} is not 1 modulo {m}")));
    }
    let a = cyclic(m)?;
    let b = cyclic(n)?;
    let aut = match a.generators() {
        [g] => automorphism_from_generator_images(&a, &[a.pow(*g, r as i64)])?,
        _ => vec![0],
    };
    let actions = vec![aut; b.generators().len()];
    Ok(semidirect(&a, &b, &actions)?.group)
}

/// Looks up a named group family; see the module docs for parameters.
pub fn catalog(name: &str, params: &[i64]) -> Result<FiniteGroup> {
    match name {
        "cyclic" => {
            expect_len(params, 1, name)?;
            cyclic(param(params, 0, name)?)
        }
        "dihedral" => {
            expect_len(params, 1, name)?;
            dihedral(param(params, 0, name)?)
        }
        "quaternion" => {
            expect_len(params, 1, name)?;
            quaternion(param(params, 0, name)?)
        }
        "symmetric" => {
            expect_len(params, 1, name)?;
            symmetric(param(params, 0, name)?)
        }
        "alternating" => {
            expect_len(params, 1, name)?;
            alternating(param(params, 0, name)?)
        }
        "elementary_abelian" => {
            expect_len(params, 2, name)?;
            elementary_abelian(param(params, 0, name)?, param(params, 1, name)?)
        }
        "abelian" => {
            let inv = (0..params.len())
                .map(|i| param(params, i, name))
                .collect::<Result<Vec<_>>>()?;
            abelian(&inv)
        }
        "metacyclic" => {
            expect_len(params, 3, name)?;
            metacyclic(param(params, 0, name)?, param(params, 1, name)?, params[2])
        }
        _ => Err(Error::UnknownCatalogName(name.to_string())),
    }
}

/// A group description, serialized as JSON with a `kind` tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Generators as lists of disjoint cycles on `0..degree`.
    Permutation {
        degree: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
    Catalog {
        name: String,
        params: Vec<i64>,
    },
    /// `action[i][j]` is the image of the j-th generator of `a` under the i-th generator of
    /// `q`, written as a word in the generators of `a` (a list of generator positions).
    Semidirect {
        a: Box<GroupSpec>,
        q: Box<GroupSpec>,
        action: Vec<Vec<Vec<usize>>>,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
}

/// Top-level document: a [`GroupSpec`] plus the schema version.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpecDocument {
    pub schema: u32,
    #[serde(flatten)]
    pub spec: GroupSpec,
}

impl GroupSpec {
    pub fn catalog(name: &str, params: &[i64]) -> Self {
        GroupSpec::Catalog {
            name: name.to_string(),
            params: params.to_vec(),
        }
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::Product { factors }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Permutation { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|cycles| Permutation::from_cycles(*degree, cycles))
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_generators(*degree, gens)
            }
            GroupSpec::Catalog { name, params } => catalog(name, params),
            GroupSpec::Semidirect { a, q, action } => {
                let a = a.build()?;
                let q = q.build()?;
                let eval = |word: &[usize]| -> Result<usize> {
                    word.iter().try_fold(0, |acc, &i| {
                        a.generators()
                            .get(i)
                            .map(|&g| a.mul(acc, g))
                            .ok_or_else(|| Error::Spec(format!("generator position {i} out of range")))
                    })
                };
                let auts = action
                    .iter()
                    .map(|images| {
                        let imgs = images.iter().map(|w| eval(w)).collect::<Result<Vec<_>>>()?;
                        automorphism_from_generator_images(&a, &imgs)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(semidirect(&a, &q, &auts)?.group)
            }
            GroupSpec::Product { factors } => {
                let groups = factors.iter().map(GroupSpec::build).collect::<Result<Vec<_>>>()?;
                match groups.len() {
                    0 => cyclic(1),
                    _ => direct_product(&groups.iter().collect::<Vec<_>>()),
                }
            }
        }
    }

    /// Short human-readable label such as `C4 x S3`.
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Catalog { name, params } => {
                let p = |i: usize| params.get(i).copied().unwrap_or_default();
                match name.as_str() {
                    "cyclic" => format!("C{}", p(0)),
                    "dihedral" => format!("D{}", p(0)),
                    "quaternion" => format!("Q{}", p(0)),
                    "symmetric" => format!("S{}", p(0)),
                    "alternating" => format!("A{}", p(0)),
                    "elementary_abelian" => format!("C{}^{}", p(0), p(1)),
                    _ => format!(
                        "{name}({})",
                        params.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                    ),
                }
            }
            GroupSpec::Product { factors } => factors.iter().map(GroupSpec::label).collect::<Vec<_>>().join(" x "),
            GroupSpec::Permutation { degree, generators } => {
                format!("perm(degree={degree}, gens={})", generators.len())
            }
            GroupSpec::Semidirect { a, q, .. } => format!("({}) : ({})", a.label(), q.label()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupSpecDocument {
            schema: SPEC_SCHEMA_VERSION,
            spec: self.clone(),
        })
        .expect("group specs serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GroupSpecDocument = serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        if doc.schema != SPEC_SCHEMA_VERSION {
            return Err(Error::Spec(format!("unsupported schema version {}", doc.schema)));
        }
        Ok(doc.spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn catalog_orders() {
        let order = |name: &str, p: &[i64]| catalog(name, p).unwrap().order();
        assert_eq!(order("cyclic", &[6]), 6);
        assert_eq!(order("cyclic", &[1]), 1);
        assert_eq!(order("symmetric", &[4]), 24);
        assert_eq!(order("alternating", &[4]), 12);
        assert_eq!(order("alternating", &[5]), 60);
        assert_eq!(order("dihedral", &[8]), 8);
        assert_eq!(order("dihedral", &[4]), 4);
        assert_eq!(order("dihedral", &[2]), 2);
        assert_eq!(order("quaternion", &[8]), 8);
        assert_eq!(order("quaternion", &[12]), 12);
        assert_eq!(order("quaternion", &[32]), 32);
        assert_eq!(order("elementary_abelian", &[3, 3]), 27);
        assert_eq!(order("abelian", &[2, 9]), 18);
        assert_eq!(order("metacyclic", &[5, 4, 2]), 20);
    }

    #[test]
    fn quaternion_census() {
        let q8 = catalog("quaternion", &[8]).unwrap();
        assert_eq!(q8.order_census(), vec![(1, 1), (2, 1), (4, 6)]);
        let q16 = catalog("quaternion", &[16]).unwrap();
        assert_eq!(q16.order_census(), vec![(1, 1), (2, 1), (4, 10), (8, 4)]);
        let d8 = catalog("dihedral", &[8]).unwrap();
        assert_eq!(d8.order_census(), vec![(1, 1), (2, 5), (4, 2)]);
    }

    #[test]
    fn catalog_errors() {
        assert_eq!(
            catalog("nope", &[1]).unwrap_err(),
            Error::UnknownCatalogName("nope".into())
        );
        assert!(matches!(catalog("cyclic", &[0]), Err(Error::InvalidParams(_))));
        assert!(matches!(catalog("cyclic", &[-3]), Err(Error::InvalidParams(_))));
        assert!(matches!(catalog("dihedral", &[7]), Err(Error::InvalidParams(_))));
        assert!(matches!(catalog("quaternion", &[10]), Err(Error::InvalidParams(_))));
        assert!(matches!(
            catalog("elementary_abelian", &[4, 2]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            catalog("metacyclic", &[5, 2, 2]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(catalog("symmetric", &[3, 1]), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn spec_json_forms() {
        let perm = r#"{"schema":1,"kind":"permutation","degree":3,"generators":[[[0,1]],[[0,1,2]]]}"#;
        assert_eq!(GroupSpec::from_json(perm).unwrap().build().unwrap().order(), 6);
        let cat = r#"{"schema":1,"kind":"catalog","name":"symmetric","params":[4]}"#;
        assert_eq!(GroupSpec::from_json(cat).unwrap().build().unwrap().order(), 24);
        // C5 ⋊ C4 with the generator of C4 squaring the generator of C5
        let sd = r#"{"schema":1,"kind":"semidirect",
            "a":{"kind":"catalog","name":"cyclic","params":[5]},
            "q":{"kind":"catalog","name":"cyclic","params":[4]},
            "action":[[[0,0]]]}"#;
        assert_eq!(GroupSpec::from_json(sd).unwrap().build().unwrap().order(), 20);
        let bad = r#"{"schema":2,"kind":"catalog","name":"cyclic","params":[4]}"#;
        assert!(matches!(GroupSpec::from_json(bad), Err(Error::Spec(_))));
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        let leaf = prop_oneof![
            (1i64..20).prop_map(|n| GroupSpec::catalog("cyclic", &[n])),
            (2i64..6).prop_map(|n| GroupSpec::catalog("symmetric", &[n])),
            (
                1usize..5,
                proptest::collection::vec(
                    proptest::collection::vec(proptest::collection::vec(0usize..5, 0..4), 0..3),
                    0..3
                )
            )
                .prop_map(|(degree, generators)| GroupSpec::Permutation { degree, generators }),
        ];
        leaf.prop_recursive(2, 8, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 0..3).prop_map(GroupSpec::product),
                (
                    inner.clone(),
                    inner,
                    proptest::collection::vec(
                        proptest::collection::vec(proptest::collection::vec(0usize..3, 0..3), 0..2),
                        0..2
                    )
                )
                    .prop_map(|(a, q, action)| GroupSpec::Semidirect {
                        a: Box::new(a),
                        q: Box::new(q),
                        action
                    }),
            ]
        })
    }

    proptest! {
        #[test]
        fn spec_json_round_trips(spec in arb_spec()) {
            prop_assert_eq!(GroupSpec::from_json(&spec.to_json()).unwrap(), spec);
        }
    }
}
