//! Characters of irreducible representations via Freudenthal's recursion.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootdatum::{RootDatum, SimpleType, Weight};

/// All weights of `V_lambda` with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    ty: SimpleType,
    highest: Weight,
    mult: BTreeMap<Weight, BigUint>,
}

impl Character {
    /// Reassembles a character from stored parts (e.g. a cache entry).
    ///
    /// Only shape is checked here; callers that need the full invariants
    /// should compare against [`weyl_dimension`].
    pub fn from_parts(
        ty: SimpleType,
        highest: Weight,
        mult: BTreeMap<Weight, BigUint>,
    ) -> Result<Self> {
        if highest.rank() != ty.rank() || mult.keys().any(|w| w.rank() != ty.rank()) {
            return Err(Error::Integrity(format!("{ty}: weight of the wrong rank")));
        }
        if mult.get(&highest) != Some(&BigUint::one()) {
            return Err(Error::Integrity(format!(
                "{ty}: highest weight {highest} must have multiplicity 1"
            )));
        }
        if mult.values().any(Zero::is_zero) {
            return Err(Error::Integrity(format!("{ty}: zero multiplicity stored")));
        }
        Ok(Character { ty, highest, mult })
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn multiplicities(&self) -> &BTreeMap<Weight, BigUint> {
        &self.mult
    }

    pub fn multiplicity(&self, mu: &Weight) -> BigUint {
        self.mult.get(mu).cloned().unwrap_or_default()
    }

    pub fn dim(&self) -> BigUint {
        self.mult.values().sum()
    }
}

fn check_dominant(datum: &RootDatum, lambda: &Weight) -> Result<()> {
    if lambda.rank() != datum.rank() {
        return Err(Error::Usage(format!(
            "weight {lambda} has {} coordinates, {} needs {}",
            lambda.rank(),
            datum.simple_type(),
            datum.rank()
        )));
    }
    if !lambda.is_dominant() {
        return Err(Error::Usage(format!("weight {lambda} is not dominant")));
    }
    Ok(())
}

/// Weyl's dimension formula `prod <lambda + rho, a^vee> / <rho, a^vee>` over positive roots.
pub fn weyl_dimension(datum: &RootDatum, lambda: &Weight) -> Result<BigUint> {
    check_dominant(datum, lambda)?;
    let shifted = lambda + &datum.rho_weight();
    let rho = datum.rho_weight();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for idx in 0..datum.num_positive() {
        num *= datum.coroot_pairing(&shifted, idx) as u64;
        den *= datum.coroot_pairing(&rho, idx) as u64;
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Integrity(format!(
            "Weyl dimension of {lambda} is not an integer"
        )));
    }
    Ok(q)
}

/// Multiplicities of the dominant weights of `V_lambda`.
pub fn dominant_multiplicities(
    datum: &RootDatum,
    lambda: &Weight,
) -> Result<BTreeMap<Weight, BigUint>> {
    check_dominant(datum, lambda)?;
    let rank = datum.rank();

    // Dominant weights below lambda are connected to lambda by steps
    // mu -> mu - alpha (alpha > 0) that stay dominant.
    let mut depth_of: HashMap<Weight, Vec<i64>> = HashMap::new();
    depth_of.insert(lambda.clone(), vec![0; rank]);
    let mut frontier = vec![lambda.clone()];
    while let Some(mu) = frontier.pop() {
        let lowered_by = depth_of[&mu].clone();
        for idx in 0..datum.num_positive() {
            let nu = &mu - datum.root_weight(idx);
            if nu.is_dominant() && !depth_of.contains_key(&nu) {
                let c: Vec<i64> = lowered_by
                    .iter()
                    .zip(datum.root(idx))
                    .map(|(a, b)| a + b)
                    .collect();
                depth_of.insert(nu.clone(), c);
                frontier.push(nu);
            }
        }
    }
    let mut order: Vec<(Weight, Vec<i64>)> = depth_of.into_iter().collect();
    order.sort_by(|(wa, ca), (wb, cb)| {
        let ha: i64 = ca.iter().sum();
        let hb: i64 = cb.iter().sum();
        ha.cmp(&hb).then_with(|| wb.cmp(wa))
    });

    let half_norms: Vec<i64> = (0..rank).map(|j| datum.form()[j][j] / 2).collect();
    let mut sums = StringSums::new(datum);
    sums.mult.insert(lambda.clone(), BigInt::one());

    for (mu, below) in &order {
        if mu == lambda {
            continue;
        }
        // (lambda + rho, lambda + rho) - (mu + rho, mu + rho) = (lambda + mu + 2 rho, lambda - mu)
        let denom: i64 = (0..rank)
            .map(|j| (lambda.coords()[j] + mu.coords()[j] + 2) * below[j] * half_norms[j])
            .sum();
        assert!(denom > 0, "Freudenthal denominator vanished at {mu}");

        let mut total = BigInt::zero();
        for idx in 0..datum.num_positive() {
            total += sums.above(mu, idx);
        }
        total *= 2;
        let (q, r) = total.div_rem(&BigInt::from(denom));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::Integrity(format!(
                "Freudenthal recursion gave {total}/{denom} at {mu}"
            )));
        }
        if !q.is_zero() {
            sums.mult.insert(mu.clone(), q);
        }
    }
    let mult = sums.mult;
    Ok(mult
        .into_iter()
        .map(|(w, m)| (w, m.to_biguint().expect("non-negative")))
        .collect())
}

/// Memoized string sums `S_alpha(mu) = sum_{k >= 1} (mu + k alpha, alpha) m(mu + k alpha)`.
///
/// `S_alpha(mu) = (mu + alpha, alpha) m(mu + alpha) + S_alpha(mu + alpha)`, and
/// `S_{w alpha}(w mu) = S_alpha(mu)`, so entries are keyed by the dominant
/// conjugate of `mu` together with the matching image of `alpha`. Only strings
/// lying strictly above already-computed levels are ever queried.
struct StringSums<'a> {
    datum: &'a RootDatum,
    root_index: HashMap<Weight, usize>,
    mult: HashMap<Weight, BigInt>,
    memo: HashMap<(Weight, usize), BigInt>,
}

impl<'a> StringSums<'a> {
    fn new(datum: &'a RootDatum) -> Self {
        let root_index = (0..datum.num_roots())
            .map(|i| (datum.root_weight(i).clone(), i))
            .collect();
        StringSums {
            datum,
            root_index,
            mult: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn multiplicity(&self, nu: &Weight) -> BigInt {
        self.mult
            .get(&self.datum.dominant_conjugate(nu))
            .cloned()
            .unwrap_or_default()
    }

    /// Applies the same simple reflections to `nu` and root `idx` until `nu` is dominant.
    fn canonical(&self, nu: &Weight, idx: usize) -> (Weight, usize) {
        let mut w = nu.clone();
        let mut a = self.datum.root_weight(idx).clone();
        while let Some(i) = w.coords().iter().position(|&c| c < 0) {
            w = self.datum.reflect(&w, i);
            a = self.datum.reflect(&a, i);
        }
        (w, self.root_index[&a])
    }

    /// `S_alpha(mu)` for root `idx`.
    fn above(&mut self, mu: &Weight, idx: usize) -> BigInt {
        let mut pending: Vec<((Weight, usize), BigInt)> = Vec::new();
        let mut nu = mu.clone();
        let mut acc = loop {
            let key = self.canonical(&nu, idx);
            if let Some(v) = self.memo.get(&key) {
                break v.clone();
            }
            let next = &nu + self.datum.root_weight(idx);
            let m = self.multiplicity(&next);
            if m.is_zero() {
                pending.push((key, BigInt::zero()));
                break BigInt::zero();
            }
            let term =
                m * BigInt::from(self.datum.weight_root_product(&next, self.datum.root(idx)));
            pending.push((key, term));
            nu = next;
        };
        for (key, term) in pending.into_iter().rev() {
            acc += term;
            self.memo.insert(key, acc.clone());
        }
        acc
    }
}

/// The full character of `V_lambda`.
pub fn irrep_character(datum: &RootDatum, lambda: &Weight) -> Result<Character> {
    let dominant = dominant_multiplicities(datum, lambda)?;
    let mut mult = BTreeMap::new();
    for (mu, m) in dominant {
        for w in datum.weyl_orbit(&mu) {
            mult.insert(w, m.clone());
        }
    }
    Ok(Character {
        ty: datum.simple_type(),
        highest: lambda.clone(),
        mult,
    })
}

/// Weight multiset of `V_a (x) V_b`: multiplicities convolved weightwise.
pub fn tensor_weights(a: &Character, b: &Character) -> BTreeMap<Weight, BigUint> {
    let mut out: BTreeMap<Weight, BigUint> = BTreeMap::new();
    for (mu, ma) in a.multiplicities() {
        for (nu, mb) in b.multiplicities() {
            *out.entry(mu + nu).or_default() += ma * mb;
        }
    }
    out
}

/// Every dominant weight whose irreducible representation has dimension at most `max_dim`,
/// sorted, with its dimension.
pub fn dominant_weights_up_to_dim(datum: &RootDatum, max_dim: u64) -> Vec<(Weight, u64)> {
    let rank = datum.rank();
    let bound = BigUint::from(max_dim);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    // Dimension is strictly increasing in every coordinate, so pruning is exact.
    let mut stack = vec![Weight::zero(rank)];
    while let Some(w) = stack.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        let dim = weyl_dimension(datum, &w).expect("dominant by construction");
        if dim > bound {
            continue;
        }
        out.push((w.clone(), dim.to_u64().expect("bounded")));
        for i in 0..rank {
            let mut c = w.coords().to_vec();
            c[i] += 1;
            stack.push(Weight::new(c));
        }
    }
    out.sort();
    out
}

/// Thread-safe memo of computed characters keyed by `(type, lambda)`.
#[derive(Debug, Default)]
pub struct CharacterMemo {
    inner: RwLock<HashMap<(SimpleType, Weight), Arc<Character>>>,
}

impl CharacterMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(&self, datum: &RootDatum, lambda: &Weight) -> Result<Arc<Character>> {
        let key = (datum.simple_type(), lambda.clone());
        if let Some(c) = self.inner.read().expect("memo poisoned").get(&key) {
            return Ok(c.clone());
        }
        let c = Arc::new(irrep_character(datum, lambda)?);
        self.inner
            .write()
            .expect("memo poisoned")
            .entry(key)
            .or_insert_with(|| c.clone());
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.inner.read().expect("memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
