//! Laurent polynomials in `t` and `z` with rational coefficients, and square matrices of them.
//!
//! Both types are kept canonical (no stored zeros) after every operation, so
//! equality and `is_zero` are structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::SparseMatrix;
use crate::Rational;

/// `sum c_{a,b} t^a z^b`, keyed by `(a, b)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<(i32, i32), Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, t_exp: i32, z_exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(t_exp, z_exp, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t_exp: i32, z_exp: i32) -> Rational {
        self.coeffs
            .get(&(t_exp, z_exp))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &Rational)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    fn add_term(&mut self, t_exp: i32, z_exp: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .coeffs
            .entry((t_exp, z_exp))
            .or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(t_exp, z_exp));
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.coeffs {
            out.add_term(*a, *b, &(c * s));
        }
        out
    }

    /// Formal partial derivative in `t`.
    pub fn d_t(&self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.coeffs {
            out.add_term(a - 1, *b, &(c * BigInt::from(*a)));
        }
        out
    }

    /// Formal partial derivative in `z`.
    pub fn d_z(&self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.coeffs {
            out.add_term(*a, b - 1, &(c * BigInt::from(*b)));
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.coeffs {
            out.add_term(*a, *b, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.coeffs {
            out.add_term(*a, *b, &-c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((a1, b1), c1) in &self.coeffs {
            for ((a2, b2), c2) in &rhs.coeffs {
                out.add_term(a1 + a2, b1 + b2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let fmt_var = |name: &str, e: i32| match e {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        for (i, ((a, b), c)) in self.coeffs.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let vars: Vec<String> = [fmt_var("t", *a), fmt_var("z", *b)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            if vars.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
                if !vars.is_empty() {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

/// Square matrix with sparse Laurent-polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(dim: usize) -> Self {
        LaurentMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// `m * c t^a z^b`.
    pub fn from_scaled(m: &SparseMatrix, c: &Rational, t_exp: i32, z_exp: i32) -> Self {
        let mut out = Self::zeros(m.dim());
        for (r, col, v) in m.entries() {
            out.add_to(r, col, &LaurentPoly::monomial(v * c, t_exp, z_exp));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> LaurentPoly {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &LaurentPoly)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &LaurentPoly)> {
        self.entries.iter().next().map(|((r, c), p)| (*r, *c, p))
    }

    pub fn add_to(&mut self, r: usize, c: usize, p: &LaurentPoly) {
        assert!(
            r < self.dim && c < self.dim,
            "entry ({r}, {c}) out of range"
        );
        if p.is_zero() {
            return;
        }
        let slot = self.entries.entry((r, c)).or_default();
        *slot = &*slot + p;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    fn map_entries(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zeros(self.dim);
        for ((r, c), p) in &self.entries {
            out.add_to(*r, *c, &f(p));
        }
        out
    }

    pub fn d_t(&self) -> Self {
        self.map_entries(LaurentPoly::d_t)
    }

    pub fn d_z(&self) -> Self {
        self.map_entries(LaurentPoly::d_z)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map_entries(|p| p.scale(s))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &LaurentMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    /// Evaluates the `z`-expansion coefficient: keeps only terms with `z` exponent `z_exp`.
    pub fn z_coefficient(&self, z_exp: i32) -> Self {
        self.map_entries(|p| {
            let mut out = LaurentPoly::zero();
            for ((a, b), c) in p.terms() {
                if b == z_exp {
                    out.add_term(a, 0, c);
                }
            }
            out
        })
    }

    /// Same for `t`.
    pub fn t_coefficient(&self, t_exp: i32) -> Self {
        self.map_entries(|p| {
            let mut out = LaurentPoly::zero();
            for ((a, b), c) in p.terms() {
                if a == t_exp {
                    out.add_term(0, b, c);
                }
            }
            out
        })
    }
}

impl Add for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn add(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for ((r, c), p) in &rhs.entries {
            out.add_to(*r, *c, p);
        }
        out
    }
}

impl Sub for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn sub(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for ((r, c), p) in &rhs.entries {
            out.add_to(*r, *c, &-p);
        }
        out
    }
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, &LaurentPoly)>> = vec![Vec::new(); rhs.dim];
        for ((r, c), p) in &rhs.entries {
            by_row[*r].push((*c, p));
        }
        let mut out = LaurentMatrix::zeros(self.dim);
        for ((r, k), a) in &self.entries {
            for (c, b) in &by_row[*k] {
                out.add_to(*r, *c, &(a * *b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form() {
        let p = LaurentPoly::monomial(q(1, 2), -1, 2);
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z, LaurentPoly::zero());
        assert!(LaurentPoly::monomial(q(0, 1), 3, 3).is_zero());
    }

    #[test]
    fn derivatives() {
        // d/dz (t^-1 z^-1) = -t^-1 z^-2
        let p = LaurentPoly::monomial(q(1, 1), -1, -1);
        assert_eq!(p.d_z(), LaurentPoly::monomial(q(-1, 1), -1, -2));
        assert_eq!(p.d_t(), LaurentPoly::monomial(q(-1, 1), -2, -1));
        assert!(LaurentPoly::constant(q(5, 1)).d_t().is_zero());
    }

    #[test]
    fn display() {
        let p = &LaurentPoly::monomial(q(-2, 1), 1, -2) + &LaurentPoly::monomial(q(1, 2), 0, -1);
        assert_eq!(p.to_string(), "1/2*z^-1 - 2*t*z^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::constant(q(-1, 1)).to_string(), "-1");
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-2i32..3, -2i32..3, -3i64..4), 0..5).prop_map(|ts| {
            ts.into_iter().fold(LaurentPoly::zero(), |acc, (a, b, c)| {
                &acc + &LaurentPoly::monomial(q(c, 1), a, b)
            })
        })
    }

    proptest! {
        #[test]
        fn leibniz_rule(p in poly(), r in poly()) {
            let lhs = (&p * &r).d_z();
            let rhs = &(&p.d_z() * &r) + &(&p * &r.d_z());
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(p.d_t().d_z(), p.d_z().d_t());
        }

        #[test]
        fn ring_axioms(p in poly(), r in poly(), s in poly()) {
            prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
            prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
            prop_assert!((&p - &p).is_zero());
        }
    }
}
