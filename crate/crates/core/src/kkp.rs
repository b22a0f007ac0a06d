//! Betti numbers of minuscule flag varieties and their comparison with irregular Hodge numbers.
//!
//! For a minuscule fundamental weight `lambda = omega_k`, the flag variety
//! `X = G/P_k` has Hodge-Tate cohomology with `b_{2p}(X)` equal to the number
//! of weights at distance `p` from `lambda` in the weight graph. Those counts
//! are computed here by breadth-first search over the Weyl orbit, with no
//! reference to the principal grading, and then compared against the Hodge
//! numbers of `V_lambda` shifted by `n / 2`, `n = dim X`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::character::weyl_dimension;
use crate::error::{Error, Result};
use crate::grading::hodge_numbers;
use crate::rootdatum::{RootDatum, SimpleType, Weight};

/// Nodes (1-based) whose fundamental weight is minuscule.
///
/// `omega_k` is minuscule iff every positive coroot has coefficient at most 1 at `alpha_k^vee`.
pub fn minuscule_nodes(ty: SimpleType) -> Vec<usize> {
    let datum = RootDatum::new(ty).expect("a validated simple type has a root datum");
    minuscule_nodes_of(&datum)
}

fn minuscule_nodes_of(datum: &RootDatum) -> Vec<usize> {
    (0..datum.rank())
        .filter(|&k| (0..datum.num_positive()).all(|i| datum.coroot(i)[k] <= 1))
        .map(|k| k + 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinusculeCase {
    ty: SimpleType,
    node: usize,
    lambda: Weight,
    dim_x: usize,
}

impl MinusculeCase {
    pub fn new(datum: &RootDatum, node: usize) -> Result<Self> {
        let rank = datum.rank();
        let lambda = Weight::fundamental(rank, node)?;
        let k = node - 1;
        let pairings: Vec<i64> = (0..datum.num_roots())
            .map(|i| datum.coroot_pairing(&lambda, i))
            .collect();
        if pairings.iter().any(|p| p.abs() > 1) {
            return Err(Error::Usage(format!(
                "omega_{node} is not minuscule for {}",
                datum.simple_type()
            )));
        }
        let by_pairing = datum.two_rho_level(&lambda);
        let by_count = datum.positive_roots().iter().filter(|r| r[k] != 0).count();
        if by_pairing != by_count as i64 {
            return Err(Error::Integrity(format!(
                "dim X for {} node {node}: pairing gives {by_pairing}, root count gives {by_count}",
                datum.simple_type()
            )));
        }
        Ok(MinusculeCase {
            ty: datum.simple_type(),
            node,
            lambda,
            dim_x: by_count,
        })
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn node(&self) -> usize {
        self.node
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }
}

/// Every minuscule case of every simple type up to `max_rank`, in type order.
pub fn minuscule_cases(max_rank: usize) -> Result<Vec<(RootDatum, MinusculeCase)>> {
    let mut out = Vec::new();
    for ty in SimpleType::all_up_to_rank(max_rank) {
        let datum = RootDatum::new(ty)?;
        for node in minuscule_nodes_of(&datum) {
            let case = MinusculeCase::new(&datum, node)?;
            out.push((datum.clone(), case));
        }
    }
    Ok(out)
}

/// `b[p] = b_{2p}(X)` for `p = 0..=dim X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiTable(Vec<u64>);

impl BettiTable {
    pub fn new(b: Vec<u64>) -> Result<Self> {
        if b.first() != Some(&1) {
            return Err(Error::Integrity("b_0 must be 1".into()));
        }
        if !b.iter().eq(b.iter().rev()) {
            return Err(Error::Integrity(format!(
                "Betti numbers {b:?} are not palindromic"
            )));
        }
        Ok(BettiTable(b))
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Non-decreasing up to the middle (hence non-increasing after it).
    pub fn is_unimodal(&self) -> bool {
        let half = &self.0[..self.0.len().div_ceil(2)];
        half.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Weight-graph Betti numbers: vertices `W . lambda`, edges `mu -> mu - alpha_i`.
pub fn weight_graph_betti(datum: &RootDatum, case: &MinusculeCase) -> Result<BettiTable> {
    let orbit: HashSet<Weight> = datum.weyl_orbit(case.lambda()).into_iter().collect();
    let simple: Vec<Weight> = (0..datum.rank())
        .map(|i| datum.root_weight(datum.simple_index(i)).clone())
        .collect();
    let mut dist: HashMap<Weight, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(case.lambda().clone(), 0);
    queue.push_back(case.lambda().clone());
    while let Some(mu) = queue.pop_front() {
        let d = dist[&mu];
        for a in &simple {
            let next = &mu - a;
            if orbit.contains(&next) && !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    if dist.len() != orbit.len() {
        return Err(Error::Integrity(format!(
            "weight graph of {} node {} is disconnected",
            case.simple_type(),
            case.node()
        )));
    }
    let mut b = vec![0u64; case.dim_x() + 1];
    for (mu, d) in &dist {
        let h = height_below(datum, case.lambda(), mu)?;
        if h != *d as i64 {
            return Err(Error::Integrity(format!(
                "weight {mu} at graph distance {d} but height {h}"
            )));
        }
        let slot = b.get_mut(*d).ok_or_else(|| {
            Error::Integrity(format!(
                "graph distance {d} exceeds dim X = {}",
                case.dim_x()
            ))
        })?;
        *slot += 1;
    }
    BettiTable::new(b)
}

/// Height of `lambda - mu` in simple-root coordinates, via the inverse Cartan matrix.
fn height_below(datum: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<i64> {
    let diff = lambda - mu;
    let mut total = crate::Rational::zero();
    for (c, omega) in diff.coords().iter().zip(datum.fundamental_weights()) {
        for x in omega {
            total += x * num_bigint::BigInt::from(*c);
        }
    }
    if !total.is_integer() {
        return Err(Error::Integrity(format!(
            "{lambda} - {mu} is not in the root lattice"
        )));
    }
    total
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Resource("height overflow".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KkpReport {
    pub ty: SimpleType,
    pub node: usize,
    pub dim_x: usize,
    pub betti: BettiTable,
    /// `h^{p - n/2}` for `p = 0..=n`.
    pub hodge_shifted: Vec<u64>,
    pub first_mismatch: Option<usize>,
}

impl KkpReport {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn to_json(&self) -> KkpJson {
        KkpJson {
            r#type: self.ty.to_string(),
            node: self.node,
            dim_x: self.dim_x,
            betti: self.betti.values().to_vec(),
            hodge_shifted: self.hodge_shifted.clone(),
            pass: self.pass(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KkpJson {
    #[serde(rename = "type")]
    pub r#type: String,
    pub node: usize,
    #[serde(rename = "dim_X")]
    pub dim_x: usize,
    pub betti: Vec<u64>,
    pub hodge_shifted: Vec<u64>,
    pub pass: bool,
}

/// First index where the two lists differ, or where one is longer.
pub fn first_mismatch(betti: &[u64], hodge_shifted: &[u64]) -> Option<usize> {
    let n = betti.len().max(hodge_shifted.len());
    (0..n).find(|&p| betti.get(p) != hodge_shifted.get(p))
}

pub fn kkp_check(datum: &RootDatum, case: &MinusculeCase) -> Result<KkpReport> {
    let betti = weight_graph_betti(datum, case)?;
    let expected_dim = weyl_dimension(datum, case.lambda())?;
    if expected_dim != betti.total().into() {
        return Err(Error::Integrity(format!(
            "orbit size {} differs from dim V = {expected_dim}",
            betti.total()
        )));
    }
    let table = hodge_numbers(datum, case.lambda())?;
    let n = case.dim_x() as i64;
    let to_u64 = |v: num_bigint::BigUint| {
        v.to_u64()
            .ok_or_else(|| Error::Resource("Hodge number overflow".into()))
    };
    let hodge_shifted = (0..=n)
        .map(|p| to_u64(table.h(2 * p - n)))
        .collect::<Result<Vec<_>>>()?;
    let outside = table.levels().dims().keys().any(|&k| k < -n || k > n);
    let mut mismatch = first_mismatch(betti.values(), &hodge_shifted);
    if mismatch.is_none() && outside {
        mismatch = Some(hodge_shifted.len());
    }
    Ok(KkpReport {
        ty: case.simple_type(),
        node: case.node(),
        dim_x: case.dim_x(),
        betti,
        hodge_shifted,
        first_mismatch: mismatch,
    })
}
