//! Principal gradings, irregular Hodge tables and Jordan partitions.
//!
//! Levels are stored doubled: key `k` stands for `alpha = k / 2`, and
//! `alpha = <mu, rho^vee>` on the `mu`-weight space. Tables are centered at
//! zero; no global shift is applied.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::character::{irrep_character, Character};
use crate::error::{Error, Result};
use crate::rootdatum::{RootDatum, SimpleType, Weight};

/// Dimension of each `2 rho^vee`-eigenspace, keyed by the eigenvalue `k = 2 alpha`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct RhoGrading {
    dims: BTreeMap<i64, BigUint>,
}

impl RhoGrading {
    /// Drops zero entries.
    pub fn from_dims<I: IntoIterator<Item = (i64, BigUint)>>(dims: I) -> Self {
        let mut out = RhoGrading::default();
        for (k, d) in dims {
            out.add_at(k, &d);
        }
        out
    }

    /// Grading of the trivial representation.
    pub fn unit() -> Self {
        Self::from_dims([(0, BigUint::from(1u32))])
    }

    pub fn dims(&self) -> &BTreeMap<i64, BigUint> {
        &self.dims
    }

    pub fn get(&self, k: i64) -> BigUint {
        self.dims.get(&k).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, k: i64, d: &BigUint) {
        if d.is_zero() {
            return;
        }
        *self.dims.entry(k).or_default() += d;
    }

    pub fn total(&self) -> BigUint {
        self.dims.values().sum()
    }

    /// Pointwise sum: the grading of a direct sum.
    pub fn direct_sum(&self, other: &RhoGrading) -> RhoGrading {
        let mut out = self.clone();
        for (k, d) in &other.dims {
            out.add_at(*k, d);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.dims.iter().all(|(k, d)| self.dims.get(&-k) == Some(d))
    }

    /// `dims[k] >= dims[k + 2]` for every `k >= 0`.
    pub fn is_sl2_consistent(&self) -> bool {
        let max = self.dims.keys().next_back().copied().unwrap_or(0);
        (0..=max).all(|k| self.get(k) >= self.get(k + 2))
    }

    pub fn is_single_parity(&self) -> bool {
        let mut parities = self.dims.keys().map(|k| k.rem_euclid(2));
        match parities.next() {
            None => true,
            Some(p) => parities.all(|q| q == p),
        }
    }
}

impl fmt::Display for RhoGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|(k, d)| format!("{k}:{d}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Grading of a weight multiset under `2 rho^vee`.
pub fn grading_of_weights<'a, I>(datum: &RootDatum, weights: I) -> RhoGrading
where
    I: IntoIterator<Item = (&'a Weight, &'a BigUint)>,
{
    let mut g = RhoGrading::default();
    for (mu, m) in weights {
        g.add_at(datum.two_rho_level(mu), m);
    }
    g
}

pub fn rho_grading(datum: &RootDatum, character: &Character) -> RhoGrading {
    grading_of_weights(datum, character.multiplicities())
}

/// Irregular Hodge numbers `h^alpha` of the connection attached to `V_lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeTable {
    ty: SimpleType,
    weight: Weight,
    dim: BigUint,
    levels: RhoGrading,
}

impl HodgeTable {
    pub fn from_character(datum: &RootDatum, character: &Character) -> Self {
        let levels = rho_grading(datum, character);
        HodgeTable {
            ty: datum.simple_type(),
            weight: character.highest().clone(),
            dim: levels.total(),
            levels,
        }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn dim(&self) -> &BigUint {
        &self.dim
    }

    pub fn levels(&self) -> &RhoGrading {
        &self.levels
    }

    /// `h^alpha` for `alpha = two_alpha / 2`.
    pub fn h(&self, two_alpha: i64) -> BigUint {
        self.levels.get(two_alpha)
    }

    pub fn to_json(&self) -> Result<HodgeTableJson> {
        let big = |v: &BigUint| {
            v.to_u64()
                .ok_or_else(|| Error::Resource(format!("value {v} does not fit in JSON output")))
        };
        Ok(HodgeTableJson {
            r#type: self.ty.to_string(),
            weight: self.weight.coords().to_vec(),
            dim: big(&self.dim)?,
            levels: self
                .levels
                .dims()
                .iter()
                .map(|(k, h)| {
                    Ok(HodgeLevel {
                        two_alpha: *k,
                        h: big(h)?,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }
}

/// Wire shape of a [`HodgeTable`]; levels sorted by `two_alpha` ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeTableJson {
    #[serde(rename = "type")]
    pub r#type: String,
    pub weight: Vec<i64>,
    pub dim: u64,
    pub levels: Vec<HodgeLevel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeLevel {
    pub two_alpha: i64,
    pub h: u64,
}

pub fn hodge_numbers(datum: &RootDatum, lambda: &Weight) -> Result<HodgeTable> {
    let chi = irrep_character(datum, lambda)?;
    Ok(HodgeTable::from_character(datum, &chi))
}

/// Hodge numbers of `V_{lambda_1} (+) ... (+) V_{lambda_r}`.
pub fn hodge_numbers_of_sum(datum: &RootDatum, lambdas: &[Weight]) -> Result<RhoGrading> {
    lambdas.iter().try_fold(RhoGrading::default(), |acc, l| {
        Ok(acc.direct_sum(hodge_numbers(datum, l)?.levels()))
    })
}

/// Jordan block sizes of a nilpotent operator, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JordanPartition(Vec<u64>);

impl JordanPartition {
    pub fn new(mut blocks: Vec<u64>) -> Self {
        blocks.retain(|&b| b > 0);
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        JordanPartition(blocks)
    }

    pub fn blocks(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for JordanPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Reads off sl2 strings: there are `dims[k] - dims[k + 2]` blocks of size `k + 1`.
pub fn partition_from_grading(g: &RhoGrading) -> Result<JordanPartition> {
    if !g.is_symmetric() {
        return Err(Error::Integrity(format!("grading {g} is not symmetric")));
    }
    if !g.is_sl2_consistent() {
        return Err(Error::Integrity(format!(
            "grading {g} is not a sum of sl2 strings"
        )));
    }
    let max = g.dims().keys().next_back().copied().unwrap_or(0);
    let mut blocks = Vec::new();
    for k in (0..=max).rev() {
        let count = g.get(k) - g.get(k + 2);
        let count = count
            .to_u64()
            .ok_or_else(|| Error::Resource("block count overflows u64".into()))?;
        blocks.extend(std::iter::repeat_n(k as u64 + 1, count as usize));
    }
    Ok(JordanPartition::new(blocks))
}

/// A block of size `r` contributes to every `2 alpha` in `{-(r-1), -(r-1)+2, ..., r-1}`.
pub fn hodge_from_partition(p: &JordanPartition) -> RhoGrading {
    let mut g = RhoGrading::default();
    let one = BigUint::from(1u32);
    for &r in p.blocks() {
        let top = r as i64 - 1;
        for k in (-top..=top).step_by(2) {
            g.add_at(k, &one);
        }
    }
    g
}

pub fn distinct_blocks(p: &JordanPartition) -> bool {
    p.blocks().windows(2).all(|w| w[0] != w[1])
}

/// Exponents with multiplicity, read off the adjoint grading.
///
/// They are pairwise distinct except for `D_n` with `n` even, where `n - 1`
/// occurs twice; see [`distinct_blocks`].
pub fn exponents(datum: &RootDatum) -> Result<Vec<u64>> {
    let chi = irrep_character(datum, &datum.adjoint_weight())?;
    let p = partition_from_grading(&rho_grading(datum, &chi))?;
    let mut out = Vec::with_capacity(p.blocks().len());
    for &b in p.blocks() {
        if b % 2 == 0 {
            return Err(Error::Integrity(format!(
                "{}: even block {b} in the adjoint representation",
                datum.simple_type()
            )));
        }
        out.push((b - 1) / 2);
    }
    out.sort_unstable();
    Ok(out)
}

/// Convolution `out[k] = sum_j g1[j] g2[k - j]`: the grading of a tensor product.
pub fn tensor_grading(g1: &RhoGrading, g2: &RhoGrading) -> RhoGrading {
    let mut out = RhoGrading::default();
    for (a, da) in g1.dims() {
        for (b, db) in g2.dims() {
            out.add_at(a + b, &(da * db));
        }
    }
    out
}

/// Outcome of comparing two gradings level by level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Smallest doubled level where the two sides differ.
    pub first_mismatch: Option<i64>,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn compare_gradings(lhs: &RhoGrading, rhs: &RhoGrading) -> Verdict {
    let keys: std::collections::BTreeSet<i64> = lhs
        .dims()
        .keys()
        .chain(rhs.dims().keys())
        .copied()
        .collect();
    Verdict {
        first_mismatch: keys.into_iter().find(|&k| lhs.get(k) != rhs.get(k)),
    }
}

/// Branching identities between Hodge tables of different groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctorialityCase {
    /// `SO_{2n+2}` on its vector representation restricts to `SO_{2n+1}` as standard plus trivial.
    SoPair(usize),
    /// The 27 of `E_6` restricts to `F_4` as the 26 plus trivial.
    F4E6,
}

/// The two sides of a functoriality identity: (larger group, smaller group plus trivial).
pub fn functoriality_sides(case: FunctorialityCase) -> Result<(RhoGrading, RhoGrading)> {
    let (big_ty, big_node, small_ty, small_node) = match case {
        FunctorialityCase::SoPair(n) => {
            if n < 2 {
                return Err(Error::Usage(format!("SO pair needs n >= 2, got {n}")));
            }
            let d: SimpleType = format!("D{}", n + 1).parse()?;
            let b: SimpleType = format!("B{n}").parse()?;
            (d, 1, b, 1)
        }
        FunctorialityCase::F4E6 => ("E6".parse()?, 1, "F4".parse()?, 4),
    };
    let big = RootDatum::new(big_ty)?;
    let small = RootDatum::new(small_ty)?;
    let lhs = hodge_numbers(&big, &Weight::fundamental(big_ty.rank(), big_node)?)?;
    let rhs = hodge_numbers(&small, &Weight::fundamental(small_ty.rank(), small_node)?)?;
    Ok((
        lhs.levels().clone(),
        rhs.levels().direct_sum(&RhoGrading::unit()),
    ))
}

pub fn functoriality_check(case: FunctorialityCase) -> Result<Verdict> {
    let (lhs, rhs) = functoriality_sides(case)?;
    Ok(compare_gradings(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::tensor_weights;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    fn g(pairs: &[(i64, u32)]) -> RhoGrading {
        RhoGrading::from_dims(pairs.iter().map(|&(k, d)| (k, BigUint::from(d))))
    }

    #[test]
    fn small_gradings() {
        let a1 = datum("A1");
        let t = hodge_numbers(&a1, &Weight::new(vec![1])).unwrap();
        assert_eq!(t.levels(), &g(&[(-1, 1), (1, 1)]));
        let triv = hodge_numbers(&a1, &Weight::new(vec![0])).unwrap();
        assert_eq!(triv.levels(), &RhoGrading::unit());
    }

    #[test]
    fn e6_minuscule_table() {
        let e6 = datum("E6");
        let t = hodge_numbers(&e6, &Weight::fundamental(6, 1).unwrap()).unwrap();
        for k in -16..=16i64 {
            let expected: u32 = match k.abs() {
                _ if k % 2 != 0 => 0,
                10..=16 => 1,
                2..=8 => 2,
                0 => 3,
                _ => 0,
            };
            assert_eq!(t.h(k), expected.into(), "k = {k}");
        }
        let p = partition_from_grading(t.levels()).unwrap();
        assert_eq!(p.blocks(), &[17, 9, 1]);
        assert!(distinct_blocks(&p));
    }

    #[test]
    fn an_standard_is_one_string() {
        for n in 1..=6 {
            let d = datum(&format!("A{n}"));
            let t = hodge_numbers(&d, &Weight::fundamental(n, 1).unwrap()).unwrap();
            let expected = RhoGrading::from_dims(
                (0..=n as i64).map(|i| (-(n as i64) + 2 * i, BigUint::from(1u32))),
            );
            assert_eq!(t.levels(), &expected);
            assert_eq!(
                partition_from_grading(t.levels()).unwrap().blocks(),
                &[n as u64 + 1]
            );
        }
    }

    #[test]
    fn partitions_and_back() {
        let one_string = RhoGrading::from_dims((-3..=3).map(|i| (2 * i, BigUint::from(1u32))));
        assert_eq!(partition_from_grading(&one_string).unwrap().blocks(), &[7]);
        assert_eq!(
            hodge_from_partition(&JordanPartition::new(vec![1])),
            RhoGrading::unit()
        );
        let p = JordanPartition::new(vec![10, 28, 18]);
        assert_eq!(p.blocks(), &[28, 18, 10]);
        let back = hodge_from_partition(&p);
        assert_eq!(back.total(), 56u32.into());
        assert_eq!(partition_from_grading(&back).unwrap(), p);

        assert!(!distinct_blocks(&JordanPartition::new(vec![2, 2])));
        assert!(distinct_blocks(&JordanPartition::new(vec![28, 18, 10])));
    }

    #[test]
    fn malformed_gradings_are_rejected() {
        assert!(matches!(
            partition_from_grading(&g(&[(0, 1), (2, 1)])),
            Err(Error::Integrity(_))
        ));
        // Symmetric but a level grows away from the middle.
        assert!(matches!(
            partition_from_grading(&g(&[(-2, 2), (0, 1), (2, 2)])),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(
            exponents(&datum("E8")).unwrap(),
            vec![1, 7, 11, 13, 17, 19, 23, 29]
        );
        assert_eq!(exponents(&datum("G2")).unwrap(), vec![1, 5]);
        for n in 1..=5u64 {
            let ex = exponents(&datum(&format!("A{n}"))).unwrap();
            assert_eq!(ex, (1..=n).collect::<Vec<_>>());
            assert_eq!(ex.iter().map(|m| 2 * m + 1).sum::<u64>(), n * n + 2 * n);
        }
        // D4 has the exponent 3 twice.
        assert_eq!(exponents(&datum("D4")).unwrap(), vec![1, 3, 3, 5]);
    }

    #[test]
    fn tensor_examples() {
        let s = g(&[(-1, 1), (1, 1)]);
        assert_eq!(tensor_grading(&s, &s), g(&[(-2, 1), (0, 2), (2, 1)]));
        assert_eq!(tensor_grading(&s, &RhoGrading::unit()), s);

        let a2 = datum("A2");
        let std = irrep_character(&a2, &Weight::new(vec![1, 0])).unwrap();
        let dual = irrep_character(&a2, &Weight::new(vec![0, 1])).unwrap();
        let adj = irrep_character(&a2, &Weight::new(vec![1, 1])).unwrap();
        let lhs = tensor_grading(&rho_grading(&a2, &std), &rho_grading(&a2, &dual));
        assert_eq!(lhs, rho_grading(&a2, &adj).direct_sum(&RhoGrading::unit()));
        let product = tensor_weights(&std, &dual);
        assert_eq!(lhs, grading_of_weights(&a2, &product));
    }

    #[test]
    fn functoriality() {
        assert!(functoriality_check(FunctorialityCase::SoPair(3))
            .unwrap()
            .pass());
        assert!(functoriality_check(FunctorialityCase::F4E6).unwrap().pass());
        assert!(functoriality_check(FunctorialityCase::SoPair(1)).is_err());

        let (lhs, rhs) = functoriality_sides(FunctorialityCase::SoPair(3)).unwrap();
        let perturbed = rhs.direct_sum(&g(&[(2, 1)]));
        assert_eq!(compare_gradings(&lhs, &perturbed).first_mismatch, Some(2));
    }

    #[test]
    fn json_shape() {
        let a1 = datum("A1");
        let t = hodge_numbers(&a1, &Weight::new(vec![1])).unwrap();
        let json = serde_json::to_string(&t.to_json().unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"type":"A1","weight":[1],"dim":2,"levels":[{"two_alpha":-1,"h":1},{"two_alpha":1,"h":1}]}"#
        );
    }
}
