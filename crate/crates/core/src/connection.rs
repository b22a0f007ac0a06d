//! The Frenkel-Gross connection and its two-variable `z`-deformation.
//!
//! `fg_matrix` is the `dt` coefficient of `d + (N + E t) dt/t`. The pair
//! `(A, B)` is the `dt`/`dz` coefficient pair of
//!
//! ```text
//! d + (N + tE) dt/(tz) - h (N + tE) dz/z^2 + RHO dz/z
//! ```
//!
//! which is flat iff `d_z A - d_t B = [A, B]`.

use num_traits::One;

use crate::chevalley::PrincipalTriple;
use crate::error::{Error, Result};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::matrix::SparseMatrix;
use crate::Rational;

/// `N / t + E`.
pub fn fg_matrix(triple: &PrincipalTriple) -> LaurentMatrix {
    let one = Rational::one();
    &LaurentMatrix::from_scaled(triple.n(), &one, -1, 0)
        + &LaurentMatrix::from_scaled(triple.e(), &one, 0, 0)
}

/// Coefficients of `dt` and `dz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionPair {
    pub a: LaurentMatrix,
    pub b: LaurentMatrix,
}

/// `A = (N + tE) / (tz)`, `B = -h (N + tE) / z^2 + RHO / z` with `h` the Coxeter number.
pub fn rmodule_pair(triple: &PrincipalTriple, h: i64) -> Result<ConnectionPair> {
    if h != triple.coxeter() as i64 {
        return Err(Error::Usage(format!(
            "{} has Coxeter number {}, got {h}",
            triple.simple_type(),
            triple.coxeter()
        )));
    }
    rmodule_pair_from_parts(triple.n(), triple.e(), Some(triple.rho()), h)
}

/// The same pair from raw matrices, without tying `h` to a root datum.
///
/// Passing `rho = None` drops the `RHO / z` term.
pub fn rmodule_pair_from_parts(
    n: &SparseMatrix,
    e: &SparseMatrix,
    rho: Option<&SparseMatrix>,
    h: i64,
) -> Result<ConnectionPair> {
    let dim = n.dim();
    if dim == 0 {
        return Err(Error::Usage(
            "connection on a zero-dimensional space".into(),
        ));
    }
    if e.dim() != dim || rho.is_some_and(|r| r.dim() != dim) {
        return Err(Error::Usage(
            "connection matrices of different sizes".into(),
        ));
    }
    let one = Rational::one();
    let minus_h = Rational::from_integer((-h).into());
    let a =
        &LaurentMatrix::from_scaled(n, &one, -1, -1) + &LaurentMatrix::from_scaled(e, &one, 0, -1);
    let mut b = &LaurentMatrix::from_scaled(n, &minus_h, 0, -2)
        + &LaurentMatrix::from_scaled(e, &minus_h, 1, -2);
    if let Some(rho) = rho {
        b = &b + &LaurentMatrix::from_scaled(rho, &one, 0, -1);
    }
    Ok(ConnectionPair { a, b })
}

/// Curvature `d_z A - d_t B - [A, B]`; zero iff the connection is flat.
pub fn integrability_residual(a: &LaurentMatrix, b: &LaurentMatrix) -> Result<LaurentMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::Usage(format!(
            "A is {}x{} but B is {}x{}",
            a.dim(),
            a.dim(),
            b.dim(),
            b.dim()
        )));
    }
    Ok(&(&a.d_z() - &b.d_t()) - &a.commutator(b))
}

/// Result of a flatness check, with the first offending entry on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessReport {
    pub first_nonzero: Option<(usize, usize, LaurentPoly)>,
}

impl FlatnessReport {
    pub fn pass(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

pub fn check_flatness(pair: &ConnectionPair) -> Result<FlatnessReport> {
    let residual = integrability_residual(&pair.a, &pair.b)?;
    Ok(FlatnessReport {
        first_nonzero: residual.first_nonzero().map(|(r, c, p)| (r, c, p.clone())),
    })
}

/// `[N + tE, RHO]` as a Laurent matrix, to compare against `-N + (h - 1) t E`.
pub fn bracket_with_rho(triple: &PrincipalTriple) -> LaurentMatrix {
    let one = Rational::one();
    let m = &LaurentMatrix::from_scaled(triple.n(), &one, 0, 0)
        + &LaurentMatrix::from_scaled(triple.e(), &one, 1, 0);
    let rho = LaurentMatrix::from_scaled(triple.rho(), &one, 0, 0);
    m.commutator(&rho)
}

/// `-N + (h - 1) t E`.
pub fn expected_bracket_with_rho(triple: &PrincipalTriple) -> LaurentMatrix {
    let hm1 = Rational::from_integer((triple.coxeter() as i64 - 1).into());
    &LaurentMatrix::from_scaled(triple.n(), &-Rational::one(), 0, 0)
        + &LaurentMatrix::from_scaled(triple.e(), &hm1, 1, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{adjoint_rep, classical_std_rep, principal_triple};
    use crate::rootdatum::RootDatum;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn triple(ty: &str, std: bool) -> PrincipalTriple {
        let d = RootDatum::new(ty.parse().unwrap()).unwrap();
        let rep = if std {
            classical_std_rep(&d)
        } else {
            adjoint_rep(&d)
        }
        .unwrap();
        principal_triple(&d, &rep).unwrap()
    }

    #[test]
    fn fg_matrix_a1_and_an() {
        let t = triple("A1", true);
        let m = fg_matrix(&t);
        assert_eq!(m.get(0, 1), LaurentPoly::constant(q(1, 1)));
        assert_eq!(m.get(1, 0), LaurentPoly::monomial(q(1, 1), -1, 0));
        assert!(m.get(0, 0).is_zero() && m.get(1, 1).is_zero());

        // A_n: 1/t on the sub-diagonal and 1 in the corner.
        let t = triple("A4", true);
        let m = fg_matrix(&t);
        assert_eq!(m.entries().count(), 5);
        for i in 0..4 {
            assert_eq!(m.get(i + 1, i), LaurentPoly::monomial(q(1, 1), -1, 0));
        }
        assert_eq!(m.get(0, 4), LaurentPoly::constant(q(1, 1)));
        // Residue at t = 0 is N.
        assert_eq!(
            m.t_coefficient(-1),
            LaurentMatrix::from_scaled(t.n(), &q(1, 1), 0, 0)
        );
    }

    #[test]
    fn a1_pair_by_hand() {
        let t = triple("A1", true);
        let pair = rmodule_pair(&t, 2).unwrap();
        let m = |c: Rational, a, b| LaurentPoly::monomial(c, a, b);
        assert_eq!(pair.a.get(0, 1), m(q(1, 1), 0, -1));
        assert_eq!(pair.a.get(1, 0), m(q(1, 1), -1, -1));
        assert_eq!(pair.b.get(0, 0), m(q(-1, 2), 0, -1));
        assert_eq!(pair.b.get(0, 1), m(q(-2, 1), 1, -2));
        assert_eq!(pair.b.get(1, 0), m(q(-2, 1), 0, -2));
        assert_eq!(pair.b.get(1, 1), m(q(1, 2), 0, -1));
        assert!(check_flatness(&pair).unwrap().pass());

        // z^2 B at z = 0 is -h (N + tE).
        let lead = pair.b.z_coefficient(-2);
        let expected = &LaurentMatrix::from_scaled(t.n(), &q(-2, 1), 0, 0)
            + &LaurentMatrix::from_scaled(t.e(), &q(-2, 1), 1, 0);
        assert_eq!(lead, expected);
    }

    #[test]
    fn wrong_h_rejected() {
        let t = triple("G2", false);
        assert!(matches!(rmodule_pair(&t, 5), Err(Error::Usage(_))));
        let empty = SparseMatrix::zeros(0);
        assert!(rmodule_pair_from_parts(&empty, &empty, None, 2).is_err());
    }

    #[test]
    fn dropping_rho_breaks_flatness() {
        let t = triple("B2", true);
        let h = t.coxeter() as i64;
        let pair = rmodule_pair_from_parts(t.n(), t.e(), None, h).unwrap();
        let residual = integrability_residual(&pair.a, &pair.b).unwrap();
        // Without RHO, [A, B] = 0 and the residual is d_z A - d_t B = (-N + t(h-1)E) / (t z^2).
        let hm1 = q(h - 1, 1);
        let expected = &LaurentMatrix::from_scaled(t.n(), &q(-1, 1), -1, -2)
            + &LaurentMatrix::from_scaled(t.e(), &hm1, 0, -2);
        assert_eq!(residual, expected);
        assert!(!check_flatness(&pair).unwrap().pass());
    }

    #[test]
    fn zero_pair_is_flat() {
        let z = LaurentMatrix::zeros(3);
        assert!(integrability_residual(&z, &z).unwrap().is_zero());
        assert!(integrability_residual(&z, &LaurentMatrix::zeros(2)).is_err());
    }

    #[test]
    fn bracket_identity() {
        for (ty, std) in [("A3", true), ("C3", true), ("G2", false), ("F4", false)] {
            let t = triple(ty, std);
            assert_eq!(bracket_with_rho(&t), expected_bracket_with_rho(&t), "{ty}");
        }
    }

    #[test]
    fn scaling_e_keeps_flatness() {
        let t = triple("D4", true);
        let h = t.coxeter() as i64;
        for s in [q(3, 1), q(-2, 5), q(7, 3)] {
            let e = t.e().scale(&s);
            let pair = rmodule_pair_from_parts(t.n(), &e, Some(t.rho()), h).unwrap();
            assert!(check_flatness(&pair).unwrap().pass());
        }
    }
}
