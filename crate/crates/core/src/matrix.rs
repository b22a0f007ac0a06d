//! Sparse square matrices over the rationals.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Row-major sparse matrix; rows hold only nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.rows[i].insert(i, Rational::one());
        }
        m
    }

    pub fn diagonal_from(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_triplets<I>(dim: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zeros(dim);
        for (r, c, v) in entries {
            m.add_to(r, c, &v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.rows[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Rational> {
        &self.rows[r]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(
            r < self.dim && c < self.dim,
            "entry ({r}, {c}) out of range"
        );
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        assert!(
            r < self.dim && c < self.dim,
            "entry ({r}, {c}) out of range"
        );
        if v.is_zero() {
            return;
        }
        let slot = self.rows[r].entry(c).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.rows[r].remove(&c);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(r, c, _)| r == c)
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zeros(self.dim);
        }
        SparseMatrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dim, self.entries().map(|(r, c, v)| (c, r, v.clone())))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        &(self * other) - &(other * self)
    }

    /// Rank over the rationals by sparse row echelon reduction.
    pub fn rank(&self) -> usize {
        // pivot column -> reduced row with leading entry 1 at that column
        let mut pivots: HashMap<usize, BTreeMap<usize, Rational>> = HashMap::new();
        for row in &self.rows {
            let mut row = row.clone();
            while let Some((&lead, coeff)) = row.iter().next() {
                let Some(pivot) = pivots.get(&lead) else {
                    let inv = coeff.recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                };
                let factor = coeff.clone();
                for (c, v) in pivot {
                    let slot = row.entry(*c).or_insert_with(Rational::zero);
                    *slot -= &factor * v;
                    if slot.is_zero() {
                        row.remove(c);
                    }
                }
            }
        }
        pivots.len()
    }

    /// Text dump: a commented header, then `row col numerator/denominator` per nonzero entry (0-based).
    pub fn to_triplet_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# sparse rational matrix, 0-based indices\n");
        let _ = writeln!(out, "# dim {} nnz {}", self.dim, self.nnz());
        out.push_str("# row col numerator/denominator\n");
        for (r, c, v) in self.entries() {
            let _ = writeln!(out, "{r} {c} {}/{}", v.numer(), v.denom());
        }
        out
    }

    pub fn from_triplet_text(text: &str) -> Result<Self> {
        let bad = |line: &str| Error::Usage(format!("malformed matrix line {line:?}"));
        let mut dim = None;
        let mut entries = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("# dim ") {
                let n = rest.split_whitespace().next().ok_or_else(|| bad(line))?;
                dim = Some(n.parse::<usize>().map_err(|_| bad(line))?);
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(r), Some(c), Some(v), None) =
                (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                return Err(bad(line));
            };
            let (num, den) = v.split_once('/').ok_or_else(|| bad(line))?;
            let num: BigInt = num.parse().map_err(|_| bad(line))?;
            let den: BigInt = den.parse().map_err(|_| bad(line))?;
            if den.is_zero() {
                return Err(bad(line));
            }
            entries.push((
                r.parse::<usize>().map_err(|_| bad(line))?,
                c.parse::<usize>().map_err(|_| bad(line))?,
                Rational::new(num, den),
            ));
        }
        let dim = dim.ok_or_else(|| Error::Usage("matrix dump has no dim header".into()))?;
        if entries.iter().any(|(r, c, _)| *r >= dim || *c >= dim) {
            return Err(Error::Usage("matrix entry out of range".into()));
        }
        Ok(Self::from_triplets(dim, entries))
    }
}

impl Add for &SparseMatrix {
    type Output = SparseMatrix;
    fn add(self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, v);
        }
        out
    }
}

impl Sub for &SparseMatrix {
    type Output = SparseMatrix;
    fn sub(self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, &-v);
        }
        out
    }
}

impl Neg for &SparseMatrix {
    type Output = SparseMatrix;
    fn neg(self) -> SparseMatrix {
        self.scale(&-Rational::one())
    }
}

impl Mul for &SparseMatrix {
    type Output = SparseMatrix;
    fn mul(self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = SparseMatrix::zeros(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            let acc = &mut out.rows[r];
            for (k, a) in row {
                for (c, b) in &rhs.rows[*k] {
                    let slot = acc.entry(*c).or_insert_with(Rational::zero);
                    *slot += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn shift(n: usize) -> SparseMatrix {
        SparseMatrix::from_triplets(n, (0..n - 1).map(|i| (i + 1, i, q(1))))
    }

    #[test]
    fn ranks() {
        assert_eq!(SparseMatrix::zeros(3).rank(), 0);
        assert_eq!(SparseMatrix::identity(4).rank(), 4);
        assert_eq!(shift(5).rank(), 4);
        let m = SparseMatrix::from_triplets(
            3,
            [
                (0, 0, q(1)),
                (0, 1, q(2)),
                (1, 0, q(2)),
                (1, 1, q(4)),
                (2, 2, q(3)),
            ],
        );
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn products() {
        let s = shift(3);
        let s2 = &s * &s;
        assert_eq!(s2.nnz(), 1);
        assert_eq!(s2.get(2, 0), q(1));
        assert!((&s2 * &s).is_zero());
        let d = SparseMatrix::diagonal_from(&[q(1), q(0), q(-1)]);
        assert_eq!(s.commutator(&d), s);
    }

    #[test]
    fn triplet_text() {
        let m = SparseMatrix::from_triplets(
            3,
            [(0, 2, Rational::new(3.into(), 4.into())), (1, 0, q(-2))],
        );
        let text = m.to_triplet_text();
        assert!(text.starts_with("# sparse rational matrix"));
        assert!(text.contains("0 2 3/4\n"));
        assert!(text.contains("1 0 -2/1\n"));
        assert_eq!(SparseMatrix::from_triplet_text(&text).unwrap(), m);
        assert!(SparseMatrix::from_triplet_text("0 0 1/1").is_err());
        assert!(SparseMatrix::from_triplet_text("# dim 2\n0 5 1/1").is_err());
    }

    fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, -3i64..4), 0..12).prop_map(move |es| {
                SparseMatrix::from_triplets(n, es.into_iter().map(|(r, c, v)| (r, c, q(v))))
            })
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= m.dim());
        }

        #[test]
        fn triplet_roundtrip(m in small_matrix()) {
            prop_assert_eq!(SparseMatrix::from_triplet_text(&m.to_triplet_text()).unwrap(), m);
        }
    }
}
