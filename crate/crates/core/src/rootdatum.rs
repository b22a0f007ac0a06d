//! Root data of the simple types `A_n` through `G_2`.
//!
//! Nodes are numbered after Bourbaki:
//!
//! ```text
//! A_n   1 - 2 - ... - n
//! B_n   1 - 2 - ... - (n-1) => n          (alpha_n short)
//! C_n   1 - 2 - ... - (n-1) <= n          (alpha_n long)
//! D_n   1 - 2 - ... - (n-2) - (n-1)
//!                       |
//!                       n
//! E_n   1 - 3 - 4 - 5 - ... - n
//!               |
//!               2
//! F_4   1 - 2 => 3 - 4                    (alpha_3, alpha_4 short)
//! G_2   1 <= 2                            (alpha_1 short)
//! ```
//!
//! Roots are integer vectors in simple-root coordinates, coroots integer
//! vectors in simple-coroot coordinates and weights integer vectors in the
//! fundamental-weight basis. `cartan[i][j] = <alpha_i, alpha_j^vee>`, so row
//! `i` of the Cartan matrix is `alpha_i` written in fundamental weights.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A Cartan type such as `E8`. `C1` is normalized to `A1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 1,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            let constraint = match family {
                Family::A => "A_n needs n >= 1",
                Family::B => "B_n needs n >= 2",
                Family::C => "C_n needs n >= 1",
                Family::D => "D_n needs n >= 3",
                Family::E => "E_n needs n in {6, 7, 8}",
                Family::F => "F_n needs n = 4",
                Family::G => "G_n needs n = 2",
            };
            return Err(Error::Config(format!(
                "{}{rank}: {constraint}",
                family.letter()
            )));
        }
        if family == Family::C && rank == 1 {
            return Ok(SimpleType {
                family: Family::A,
                rank,
            });
        }
        Ok(SimpleType { family, rank })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Every type label of rank at most `max_rank`, in a fixed order.
    ///
    /// Low-rank coincidences (`B2 = C2`, `D3 = A3`) are kept as separate
    /// labelings.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for (family, lo) in [
            (Family::A, 1),
            (Family::B, 2),
            (Family::C, 2),
            (Family::D, 3),
        ] {
            for rank in lo..=max_rank {
                out.push(SimpleType { family, rank });
            }
        }
        for rank in 6..=8.min(max_rank) {
            out.push(SimpleType {
                family: Family::E,
                rank,
            });
        }
        if max_rank >= 4 {
            out.push(SimpleType {
                family: Family::F,
                rank: 4,
            });
        }
        if max_rank >= 2 {
            out.push(SimpleType {
                family: Family::G,
                rank: 2,
            });
        }
        out
    }

    /// Number of positive roots from the classification.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Bourbaki's exponents, used as a fixture against the computed ones.
    pub fn bourbaki_exponents(self) -> Vec<u64> {
        let n = self.rank as u64;
        match self.family {
            Family::A => (1..=n).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i - 1).collect(),
            Family::D => {
                let mut e: Vec<u64> = (1..n).map(|i| 2 * i - 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            Family::E => match n {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
            Family::F => vec![1, 5, 7, 11],
            Family::G => vec![1, 5],
        }
    }

    /// Symmetric Gram matrix `(alpha_i, alpha_j)` with short roots of squared length 2.
    fn gram_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut b = vec![vec![0i64; n]; n];
        let link = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            b[i][j] = v;
            b[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                for i in 1..n {
                    link(&mut b, i - 1, i, -1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    b[i][i] = 4;
                }
                b[n - 1][n - 1] = 2;
                for i in 1..n {
                    link(&mut b, i - 1, i, -2);
                }
            }
            Family::C => {
                for i in 0..n - 1 {
                    b[i][i] = 2;
                }
                b[n - 1][n - 1] = 4;
                for i in 1..n - 1 {
                    link(&mut b, i - 1, i, -1);
                }
                link(&mut b, n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                for i in 1..n - 1 {
                    link(&mut b, i - 1, i, -1);
                }
                link(&mut b, n - 3, n - 1, -1);
            }
            Family::E => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                link(&mut b, 0, 2, -1);
                link(&mut b, 1, 3, -1);
                for i in 3..n {
                    link(&mut b, i - 1, i, -1);
                }
            }
            Family::F => {
                b[0][0] = 4;
                b[1][1] = 4;
                b[2][2] = 2;
                b[3][3] = 2;
                link(&mut b, 0, 1, -2);
                link(&mut b, 1, 2, -2);
                link(&mut b, 2, 3, -1);
            }
            Family::G => {
                b[0][0] = 2;
                b[1][1] = 6;
                link(&mut b, 0, 1, -3);
            }
        }
        b
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::Usage(format!("unknown type {s:?}, expected e.g. \"E8\"")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Usage(format!("bad rank in type {s:?}")))?;
        SimpleType::new(family, rank)
    }
}

/// An integral weight in fundamental-weight coordinates: entry `i` is `<mu, alpha_i^vee>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight at Bourbaki node `node` (1-based).
    pub fn fundamental(rank: usize, node: usize) -> Result<Self> {
        if node == 0 || node > rank {
            return Err(Error::Usage(format!("node {node} out of range 1..={rank}")));
        }
        let mut c = vec![0; rank];
        c[node - 1] = 1;
        Ok(Weight(c))
    }

    /// Parses `"1,0,0"` style coordinate lists.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Usage(format!("bad weight coordinate {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Comma-separated coordinates, the inverse of [`Weight::parse`].
    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

/// `<mu, covector>` for a covector given in simple-coroot coordinates.
pub fn pair(mu: &Weight, covector: &[Rational]) -> Result<Rational> {
    if mu.rank() != covector.len() {
        return Err(Error::Usage(format!(
            "pairing a rank-{} weight with a length-{} covector",
            mu.rank(),
            covector.len()
        )));
    }
    Ok(mu
        .coords()
        .iter()
        .zip(covector)
        .fold(Rational::zero(), |acc, (&m, v)| acc + v * BigInt::from(m)))
}

/// Roots, coroots and the associated invariants of one simple type.
#[derive(Debug, Clone)]
pub struct RootDatum {
    ty: SimpleType,
    cartan: Vec<Vec<i64>>,
    form: Vec<Vec<i64>>,
    /// Positive roots sorted by (height, coordinates), followed by their negatives in the same order.
    roots: Vec<Vec<i64>>,
    root_weights: Vec<Weight>,
    coroots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    num_positive: usize,
    fundamental_weights: Vec<Vec<Rational>>,
    rho: Vec<Rational>,
    rho_covector: Vec<Rational>,
    two_rho_covector: Vec<i64>,
    coxeter: usize,
}

impl RootDatum {
    pub fn new(ty: SimpleType) -> Result<Self> {
        let n = ty.rank();
        let form = ty.gram_matrix();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * form[i][j] / form[j][j]).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                let ok = if i == j {
                    cartan[i][j] == 2
                } else {
                    cartan[i][j] <= 0 && (cartan[i][j] == 0) == (cartan[j][i] == 0)
                };
                if !ok {
                    return Err(Error::Integrity(format!("{ty}: malformed Cartan matrix")));
                }
            }
        }

        let all = reflection_closure(&cartan);
        let mut positive: Vec<Vec<i64>> = all
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        if positive.len() != ty.positive_root_count() {
            return Err(Error::Integrity(format!(
                "{ty}: reflection closure found {} positive roots, expected {}",
                positive.len(),
                ty.positive_root_count()
            )));
        }
        let num_positive = positive.len();
        let mut roots = positive.clone();
        roots.extend(
            positive
                .iter()
                .map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()),
        );

        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let root_weights = roots
            .iter()
            .map(|r| {
                Weight(
                    (0..n)
                        .map(|j| (0..n).map(|i| r[i] * cartan[i][j]).sum())
                        .collect(),
                )
            })
            .collect();
        let coroots: Vec<Vec<i64>> = roots
            .iter()
            .map(|r| {
                let norm = quadratic(&form, r);
                (0..n)
                    .map(|i| {
                        let num = r[i] * form[i][i];
                        debug_assert_eq!(num % norm, 0);
                        num / norm
                    })
                    .collect()
            })
            .collect();

        let inverse = invert(&cartan)
            .ok_or_else(|| Error::Integrity(format!("{ty}: singular Cartan matrix")))?;
        let rho: Vec<Rational> = (0..n)
            .map(|j| (0..n).fold(Rational::zero(), |acc, i| acc + &inverse[i][j]))
            .collect();
        let two_rho_covector: Vec<i64> = (0..n)
            .map(|i| coroots[..num_positive].iter().map(|c| c[i]).sum())
            .collect();
        let rho_covector = two_rho_covector
            .iter()
            .map(|&c| Rational::new(BigInt::from(c), BigInt::from(2)))
            .collect();

        let theta_height: i64 = positive[num_positive - 1].iter().sum();
        let datum = RootDatum {
            ty,
            cartan,
            form,
            roots,
            root_weights,
            coroots,
            index,
            num_positive,
            fundamental_weights: inverse,
            rho,
            rho_covector,
            two_rho_covector,
            coxeter: theta_height as usize + 1,
        };
        if datum.roots_of_height(theta_height).count() != 1 {
            return Err(Error::Integrity(format!(
                "{ty}: highest root is not unique"
            )));
        }
        Ok(datum)
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Gram matrix of the invariant form on simple roots (short roots have squared length 2).
    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// The root with index `idx`; indices below [`num_positive`](Self::num_positive) are positive.
    pub fn root(&self, idx: usize) -> &[i64] {
        &self.roots[idx]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.num_positive]
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        idx < self.num_positive
    }

    /// Index of `-alpha`.
    pub fn negate(&self, idx: usize) -> usize {
        if idx < self.num_positive {
            idx + self.num_positive
        } else {
            idx - self.num_positive
        }
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Index of the simple root `alpha_i` (0-based `i`).
    pub fn simple_index(&self, i: usize) -> usize {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        self.index[&c]
    }

    pub fn height(&self, idx: usize) -> i64 {
        self.roots[idx].iter().sum()
    }

    /// The root `idx` in fundamental-weight coordinates.
    pub fn root_weight(&self, idx: usize) -> &Weight {
        &self.root_weights[idx]
    }

    /// The coroot of root `idx` in simple-coroot coordinates.
    pub fn coroot(&self, idx: usize) -> &[i64] {
        &self.coroots[idx]
    }

    /// Squared length `(alpha, alpha)`.
    pub fn norm(&self, idx: usize) -> i64 {
        quadratic(&self.form, &self.roots[idx])
    }

    /// `(alpha_a, alpha_b)` for two roots.
    pub fn root_product(&self, a: usize, b: usize) -> i64 {
        bilinear(&self.form, &self.roots[a], &self.roots[b])
    }

    /// Index of the highest root.
    pub fn theta(&self) -> usize {
        self.num_positive - 1
    }

    pub fn coxeter(&self) -> usize {
        self.coxeter
    }

    pub fn fundamental_weights(&self) -> &[Vec<Rational>] {
        &self.fundamental_weights
    }

    /// Half the sum of positive roots, in simple-root coordinates.
    pub fn rho(&self) -> &[Rational] {
        &self.rho
    }

    /// Half the sum of positive coroots, in simple-coroot coordinates.
    pub fn rho_covector(&self) -> &[Rational] {
        &self.rho_covector
    }

    pub fn two_rho_covector(&self) -> &[i64] {
        &self.two_rho_covector
    }

    /// `<mu, 2 rho^vee>`, the doubled principal grading of a weight.
    pub fn two_rho_level(&self, mu: &Weight) -> i64 {
        mu.coords()
            .iter()
            .zip(&self.two_rho_covector)
            .map(|(m, c)| m * c)
            .sum()
    }

    /// `<mu, alpha^vee>` for root `idx`.
    pub fn coroot_pairing(&self, mu: &Weight, idx: usize) -> i64 {
        mu.coords()
            .iter()
            .zip(&self.coroots[idx])
            .map(|(m, c)| m * c)
            .sum()
    }

    /// `(mu, alpha)` where `alpha` is given in simple-root coordinates.
    ///
    /// Uses `(omega_i, alpha_j) = delta_ij (alpha_j, alpha_j) / 2`.
    pub fn weight_root_product(&self, mu: &Weight, alpha: &[i64]) -> i64 {
        (0..self.rank())
            .map(|j| mu.coords()[j] * alpha[j] * (self.form[j][j] / 2))
            .sum()
    }

    /// Simple reflection `s_i` (0-based).
    pub fn reflect(&self, mu: &Weight, i: usize) -> Weight {
        let k = mu.coords()[i];
        if k == 0 {
            return mu.clone();
        }
        Weight(
            mu.coords()
                .iter()
                .zip(&self.cartan[i])
                .map(|(m, c)| m - k * c)
                .collect(),
        )
    }

    /// The dominant weight in the Weyl orbit of `mu`.
    pub fn dominant_conjugate(&self, mu: &Weight) -> Weight {
        let mut w = mu.clone();
        while let Some(i) = w.coords().iter().position(|&c| c < 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    /// The full Weyl orbit of `mu`, by closure under simple reflections, sorted.
    pub fn weyl_orbit(&self, mu: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(mu.clone());
        queue.push_back(mu.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let r = self.reflect(&w, i);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let sorted: BTreeSet<Weight> = seen.into_iter().collect();
        sorted.into_iter().collect()
    }

    /// `rho` expressed in fundamental weights: all ones.
    pub fn rho_weight(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// The highest root as a weight (highest weight of the adjoint representation).
    pub fn adjoint_weight(&self) -> Weight {
        self.root_weights[self.theta()].clone()
    }

    fn roots_of_height(&self, h: i64) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_positive).filter(move |&i| self.height(i) == h)
    }
}

fn bilinear(form: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let n = a.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a[i] * form[i][j] * b[j])
        .sum()
}

fn quadratic(form: &[Vec<i64>], a: &[i64]) -> i64 {
    bilinear(form, a, a)
}

/// All roots (positive and negative) in simple-root coordinates.
fn reflection_closure(cartan: &[Vec<i64>]) -> HashSet<Vec<i64>> {
    let n = cartan.len();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        seen.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            // <r, alpha_i^vee> = sum_j r_j cartan[j][i]
            let k: i64 = (0..n).map(|j| r[j] * cartan[j][i]).sum();
            if k == 0 {
                continue;
            }
            let mut s = r.clone();
            s[i] -= k;
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    seen
}

fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row
                .iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}
