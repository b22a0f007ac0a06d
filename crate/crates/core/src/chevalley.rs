//! Chevalley bases, explicit representation matrices and the principal triple.
//!
//! Structure constants follow the extraspecial-pair method: for each
//! non-simple positive root `xi`, the pair `(r, s)` with `r` the first
//! positive root (in height order) such that `xi - r` is a positive root gets
//! `N_{r,s} = +(p + 1)`. Every other constant is then forced by
//!
//! * `N_{s,r} = -N_{r,s}` and `N_{-r,-s} = -N_{r,s}`,
//! * `N_{r,s} / (t,t) = N_{s,t} / (r,r) = N_{t,r} / (s,s)` when `r + s + t = 0`,
//! * the four-root Jacobi relation for two decompositions of the same root.
//!
//! The result is checked against the Jacobi identity on every triple of root vectors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::JordanPartition;
use crate::matrix::SparseMatrix;
use crate::rootdatum::{Family, RootDatum, SimpleType, Weight};
use crate::Rational;

/// Default resource guard on the rank for matrix constructions.
pub const DEFAULT_MAX_RANK: usize = 8;

const NOT_A_ROOT: i32 = -1;
const ZERO_SUM: i32 = -2;

/// `[e_a, e_b] = N_{a,b} e_{a+b}` for every ordered pair of roots with `a + b` a root.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    ty: SimpleType,
    n_roots: usize,
    sums: Vec<i32>,
    table: Vec<i64>,
}

impl StructureConstants {
    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    /// `N_{a,b}`, zero when `a + b` is not a root.
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.table[a * self.n_roots + b]
    }

    /// Index of `a + b` when it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.sums[a * self.n_roots + b];
        (s >= 0).then_some(s as usize)
    }

    fn sum_code(&self, a: usize, b: usize) -> i32 {
        self.sums[a * self.n_roots + b]
    }

    /// All nonzero constants as `((a, b), N_{a,b})`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        (0..self.n_roots)
            .flat_map(move |a| (0..self.n_roots).map(move |b| (a, b)))
            .filter_map(move |(a, b)| {
                let v = self.get(a, b);
                (v != 0).then_some(((a, b), v))
            })
    }
}

fn sum_table(datum: &RootDatum) -> Vec<i32> {
    let n = datum.num_roots();
    let mut sums = vec![NOT_A_ROOT; n * n];
    for a in 0..n {
        for b in 0..n {
            let s: Vec<i64> = datum
                .root(a)
                .iter()
                .zip(datum.root(b))
                .map(|(x, y)| x + y)
                .collect();
            sums[a * n + b] = if s.iter().all(|&c| c == 0) {
                ZERO_SUM
            } else {
                datum.index_of(&s).map_or(NOT_A_ROOT, |i| i as i32)
            };
        }
    }
    sums
}

/// `p` such that `b - p a, ..., b` is the part of the `a`-string through `b` below `b`.
fn string_below(datum: &RootDatum, a: usize, b: usize) -> i64 {
    let mut p = 0;
    let mut cur: Vec<i64> = datum.root(b).to_vec();
    loop {
        for (c, d) in cur.iter_mut().zip(datum.root(a)) {
            *c -= d;
        }
        if datum.index_of(&cur).is_none() {
            return p;
        }
        p += 1;
    }
}

struct Builder<'a> {
    datum: &'a RootDatum,
    sums: &'a [i32],
    positive: HashMap<(usize, usize), i64>,
}

impl Builder<'_> {
    fn sum(&self, a: usize, b: usize) -> i32 {
        self.sums[a * self.datum.num_roots() + b]
    }

    fn ratio(&self, num: i64, den: i64, value: i64) -> Result<i64> {
        let v = num * value;
        if v % den != 0 {
            return Err(Error::Integrity(format!(
                "{}: non-integral structure constant {v}/{den}",
                self.datum.simple_type()
            )));
        }
        Ok(v / den)
    }

    /// `N_{x,y}` for arbitrary roots with `x + y` a root, reduced to positive pairs of lower height.
    fn general(&self, x: usize, y: usize) -> Result<i64> {
        let d = self.datum;
        let s = self.sum(x, y);
        if s < 0 {
            return Ok(0);
        }
        let z = d.negate(s as usize);
        let (px, py, pz) = (d.is_positive(x), d.is_positive(y), d.is_positive(z));
        let positives = [px, py, pz].iter().filter(|&&p| p).count();
        if positives == 1 {
            return Ok(-self.general(d.negate(x), d.negate(y))?);
        }
        match (px, py) {
            (true, true) => self
                .positive
                .get(&(x, y))
                .copied()
                .ok_or_else(|| Error::Integrity(format!("missing positive pair ({x}, {y})"))),
            // N_{x,y} / (z,z) = N_{z,x} / (y,y)
            (true, false) => self.ratio(d.norm(z), d.norm(y), self.general(z, x)?),
            // N_{x,y} / (z,z) = N_{y,z} / (x,x)
            (false, true) => self.ratio(d.norm(z), d.norm(x), self.general(y, z)?),
            (false, false) => unreachable!("two negatives handled above"),
        }
    }
}

pub fn structure_constants(datum: &RootDatum) -> Result<StructureConstants> {
    structure_constants_limited(datum, DEFAULT_MAX_RANK)
}

pub fn structure_constants_limited(
    datum: &RootDatum,
    max_rank: usize,
) -> Result<StructureConstants> {
    let ty = datum.simple_type();
    if datum.rank() > max_rank {
        return Err(Error::Resource(format!(
            "{ty}: rank {} exceeds the matrix guard of {max_rank}",
            datum.rank()
        )));
    }
    let sums = sum_table(datum);
    let np = datum.num_positive();
    let nr = datum.num_roots();
    let mut b = Builder {
        datum,
        sums: &sums,
        positive: HashMap::new(),
    };

    for xi in 0..np {
        let pairs: Vec<(usize, usize)> = (0..xi)
            .filter_map(|r| {
                let s = datum.index_of(
                    &datum
                        .root(xi)
                        .iter()
                        .zip(datum.root(r))
                        .map(|(a, c)| a - c)
                        .collect::<Vec<_>>(),
                )?;
                (datum.is_positive(s) && r < s).then_some((r, s))
            })
            .collect();
        let Some(&(r, s)) = pairs.first() else {
            continue;
        };
        let extra = string_below(datum, r, s) + 1;
        b.positive.insert((r, s), extra);
        b.positive.insert((s, r), -extra);
        let xi_norm = datum.norm(xi);
        for &(r1, s1) in &pairs[1..] {
            // Jacobi on r + s - r1 - s1 = 0 solved for N_{r1,s1}.
            let mut acc = num_rational::Ratio::<i64>::zero();
            let t1 = b.sum(s, datum.negate(r1));
            if t1 >= 0 {
                let num = b.general(s, datum.negate(r1))? * b.general(r, datum.negate(s1))?;
                acc += num_rational::Ratio::new(num, datum.norm(t1 as usize));
            }
            let t2 = b.sum(r, datum.negate(r1));
            if t2 >= 0 {
                let num = b.general(datum.negate(r1), r)? * b.general(s, datum.negate(s1))?;
                acc += num_rational::Ratio::new(num, datum.norm(t2 as usize));
            }
            let value = acc * num_rational::Ratio::new(xi_norm, extra);
            if !value.is_integer() {
                return Err(Error::Integrity(format!(
                    "{ty}: non-integral constant for pair ({r1}, {s1})"
                )));
            }
            let v = value.to_integer();
            b.positive.insert((r1, s1), v);
            b.positive.insert((s1, r1), -v);
        }
    }

    let mut table = vec![0i64; nr * nr];
    for x in 0..nr {
        for y in 0..nr {
            if sums[x * nr + y] >= 0 {
                table[x * nr + y] = b.general(x, y)?;
            }
        }
    }
    let sc = StructureConstants {
        ty,
        n_roots: nr,
        sums,
        table,
    };
    check_chevalley_integrality(datum, &sc)?;
    check_jacobi(datum, &sc)?;
    Ok(sc)
}

fn check_chevalley_integrality(datum: &RootDatum, sc: &StructureConstants) -> Result<()> {
    let nr = datum.num_roots();
    for x in 0..nr {
        for y in 0..nr {
            if sc.sum_index(x, y).is_none() {
                continue;
            }
            let n = sc.get(x, y);
            let expected = string_below(datum, x, y) + 1;
            if n.abs() != expected || sc.get(y, x) != -n {
                return Err(Error::Integrity(format!(
                    "{}: N({x},{y}) = {n}, expected +-{expected}",
                    datum.simple_type()
                )));
            }
        }
    }
    Ok(())
}

/// Jacobi identity on every unordered triple of root vectors.
fn check_jacobi(datum: &RootDatum, sc: &StructureConstants) -> Result<()> {
    let nr = datum.num_roots();
    let rank = datum.rank();
    let fail = |x, y, z| {
        Err(Error::Integrity(format!(
            "{}: Jacobi identity fails on roots ({x}, {y}, {z})",
            datum.simple_type()
        )))
    };
    // Coefficient of [[e_x, e_y], e_z] in the root space x + y + z.
    let root_term = |x: usize, y: usize, z: usize| -> i64 {
        match sc.sum_code(x, y) {
            ZERO_SUM => datum.coroot_pairing(datum.root_weight(z), x),
            r if r >= 0 => sc.get(x, y) * sc.get(r as usize, z),
            _ => 0,
        }
    };
    let mut cartan = vec![0i64; rank];
    for x in 0..nr {
        for y in x..nr {
            let sxy = sc.sum_code(x, y);
            for z in y..nr {
                let (syz, szx) = (sc.sum_code(y, z), sc.sum_code(z, x));
                // Target weight x + y + z as a root index or zero.
                let target = if sxy >= 0 {
                    sc.sum_code(sxy as usize, z)
                } else if sxy == ZERO_SUM {
                    z as i32
                } else if syz >= 0 {
                    sc.sum_code(syz as usize, x)
                } else if syz == ZERO_SUM {
                    x as i32
                } else if szx >= 0 {
                    sc.sum_code(szx as usize, y)
                } else if szx == ZERO_SUM {
                    y as i32
                } else {
                    continue;
                };
                if target >= 0 {
                    let total = root_term(x, y, z) + root_term(y, z, x) + root_term(z, x, y);
                    if total != 0 {
                        return fail(x, y, z);
                    }
                } else if target == ZERO_SUM {
                    cartan.iter_mut().for_each(|c| *c = 0);
                    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                        // [[e_a, e_b], e_c] = N_{a,b} [e_{-c}, e_c] = -N_{a,b} h_c
                        let nab = sc.get(a, b);
                        for (k, v) in datum.coroot(c).iter().enumerate() {
                            cartan[k] -= nab * v;
                        }
                    }
                    if cartan.iter().any(|&c| c != 0) {
                        return fail(x, y, z);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Generator matrices `e_i, f_i, h_i` and `e_theta` of a representation on a weight basis.
#[derive(Debug, Clone)]
pub struct RepMatrices {
    ty: SimpleType,
    coxeter: usize,
    basis_weights: Vec<Weight>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
    h: Vec<SparseMatrix>,
    e_theta: SparseMatrix,
}

impl RepMatrices {
    /// Assembles and validates a representation; `h_i` is computed as `[e_i, f_i]`.
    pub fn new(
        datum: &RootDatum,
        basis_weights: Vec<Weight>,
        e: Vec<SparseMatrix>,
        f: Vec<SparseMatrix>,
        e_theta: SparseMatrix,
    ) -> Result<Self> {
        let h = e.iter().zip(&f).map(|(a, b)| a.commutator(b)).collect();
        let rep = RepMatrices {
            ty: datum.simple_type(),
            coxeter: datum.coxeter(),
            basis_weights,
            e,
            f,
            h,
            e_theta,
        };
        rep.validate(datum)?;
        Ok(rep)
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn coxeter(&self) -> usize {
        self.coxeter
    }

    pub fn dim(&self) -> usize {
        self.basis_weights.len()
    }

    pub fn basis_weights(&self) -> &[Weight] {
        &self.basis_weights
    }

    pub fn e(&self) -> &[SparseMatrix] {
        &self.e
    }

    pub fn f(&self) -> &[SparseMatrix] {
        &self.f
    }

    pub fn h(&self) -> &[SparseMatrix] {
        &self.h
    }

    pub fn e_theta(&self) -> &SparseMatrix {
        &self.e_theta
    }

    /// Checks every generator relation exactly.
    pub fn validate(&self, datum: &RootDatum) -> Result<()> {
        let rank = datum.rank();
        let dim = self.dim();
        let broken = |what: String| Err(Error::Integrity(format!("{}: {what}", self.ty)));
        if dim == 0 {
            return broken("empty representation".into());
        }
        if self.e.len() != rank || self.f.len() != rank {
            return broken("wrong number of generators".into());
        }
        let all = self
            .e
            .iter()
            .chain(&self.f)
            .chain(&self.h)
            .chain([&self.e_theta]);
        if all.clone().any(|m| m.dim() != dim)
            || self.basis_weights.iter().any(|w| w.rank() != rank)
        {
            return broken("generator dimensions disagree with the basis".into());
        }
        let cartan = datum.cartan();
        for i in 0..rank {
            let hi = &self.h[i];
            if !hi.is_diagonal() {
                return broken(format!("h_{} is not diagonal", i + 1));
            }
            for (p, w) in self.basis_weights.iter().enumerate() {
                if hi.get(p, p) != Rational::from_integer(w.coords()[i].into()) {
                    return broken(format!("h_{} disagrees with basis weight {w}", i + 1));
                }
            }
            for j in 0..rank {
                let c = Rational::from_integer(cartan[j][i].into());
                if hi.commutator(&self.e[j]) != self.e[j].scale(&c) {
                    return broken(format!(
                        "[h_{}, e_{}] != a_{{{j}{i}}} e_{}",
                        i + 1,
                        j + 1,
                        j + 1
                    ));
                }
                if hi.commutator(&self.f[j]) != self.f[j].scale(&-c) {
                    return broken(format!("[h_{}, f_{}] relation", i + 1, j + 1));
                }
                if i != j && !self.e[i].commutator(&self.f[j]).is_zero() {
                    return broken(format!("[e_{}, f_{}] != 0", i + 1, j + 1));
                }
            }
            let alpha = datum.root_weight(datum.simple_index(i));
            for (r, c, _) in self.e[i].entries() {
                if self.basis_weights[r] != &self.basis_weights[c] + alpha {
                    return broken(format!(
                        "e_{} does not raise weights by alpha_{}",
                        i + 1,
                        i + 1
                    ));
                }
            }
            for (r, c, _) in self.f[i].entries() {
                if &self.basis_weights[r] + alpha != self.basis_weights[c] {
                    return broken(format!(
                        "f_{} does not lower weights by alpha_{}",
                        i + 1,
                        i + 1
                    ));
                }
            }
            if !self.e_theta.commutator(&self.e[i]).is_zero() {
                return broken(format!("[e_theta, e_{}] != 0", i + 1));
            }
        }
        if self.e_theta.is_zero() {
            return broken("e_theta vanishes".into());
        }
        let theta = datum.adjoint_weight();
        for (r, c, _) in self.e_theta.entries() {
            if self.basis_weights[r] != &self.basis_weights[c] + &theta {
                return broken("e_theta does not raise weights by theta".into());
            }
        }
        Ok(())
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// The adjoint representation on the basis `e_theta, ..., e_{alpha_1..l}, h_1..h_l, e_{-alpha}, ..., e_{-theta}`.
pub fn adjoint_rep(datum: &RootDatum) -> Result<RepMatrices> {
    adjoint_rep_limited(datum, DEFAULT_MAX_RANK)
}

pub fn adjoint_rep_limited(datum: &RootDatum, max_rank: usize) -> Result<RepMatrices> {
    let sc = structure_constants_limited(datum, max_rank)?;
    let np = datum.num_positive();
    let rank = datum.rank();
    let dim = 2 * np + rank;
    let position = |root: usize| -> usize {
        if datum.is_positive(root) {
            np - 1 - root
        } else {
            rank + root
        }
    };
    let cartan_pos = |k: usize| np + k;

    let mut basis_weights = vec![Weight::zero(rank); dim];
    for root in 0..datum.num_roots() {
        basis_weights[position(root)] = datum.root_weight(root).clone();
    }

    let ad = |x: usize| -> SparseMatrix {
        let mut m = SparseMatrix::zeros(dim);
        for y in 0..datum.num_roots() {
            if let Some(r) = sc.sum_index(x, y) {
                m.set(position(r), position(y), int(sc.get(x, y)));
            } else if y == datum.negate(x) {
                for (k, &c) in datum.coroot(x).iter().enumerate() {
                    m.set(cartan_pos(k), position(y), int(c));
                }
            }
        }
        // [e_x, h_k] = -<x, alpha_k^vee> e_x
        for k in 0..rank {
            let v = datum.root_weight(x).coords()[k];
            m.set(position(x), cartan_pos(k), int(-v));
        }
        m
    };

    let e = (0..rank).map(|i| ad(datum.simple_index(i))).collect();
    let f = (0..rank)
        .map(|i| ad(datum.negate(datum.simple_index(i))))
        .collect();
    RepMatrices::new(datum, basis_weights, e, f, ad(datum.theta()))
}

/// Defining representation of a classical type: `SL_{n+1}`, `SO_{2n+1}`, `Sp_{2n}` or `SO_{2n}`.
///
/// Basis `v_1, ..., v_n, (v_0), v_{-n}, ..., v_{-1}` with weights `+-eps_i` (and `0`).
pub fn classical_std_rep(datum: &RootDatum) -> Result<RepMatrices> {
    classical_std_rep_limited(datum, DEFAULT_MAX_RANK)
}

type Triplets = Vec<(usize, usize, i64)>;

pub fn classical_std_rep_limited(datum: &RootDatum, max_rank: usize) -> Result<RepMatrices> {
    let ty = datum.simple_type();
    let n = ty.rank();
    if n > max_rank {
        return Err(Error::Resource(format!(
            "{ty}: rank {n} exceeds the matrix guard of {max_rank}"
        )));
    }
    // e, f as lists of (row, col, coefficient), 0-based positions.
    let (dim, gens): (usize, Vec<(Triplets, Triplets)>) = match ty.family() {
        Family::A => {
            let dim = n + 1;
            (
                dim,
                (0..n)
                    .map(|i| (vec![(i, i + 1, 1)], vec![(i + 1, i, 1)]))
                    .collect(),
            )
        }
        Family::B | Family::C | Family::D => {
            let dim = if ty.family() == Family::B {
                2 * n + 1
            } else {
                2 * n
            };
            let dual = |p: usize| dim - 1 - p;
            // eps_i - eps_{i+1}: v_{i+1} -> v_i and v_{-i} -> -v_{-(i+1)}
            let mut gens: Vec<_> = (0..n - 1)
                .map(|i| {
                    let e = vec![(i, i + 1, 1), (dual(i + 1), dual(i), -1)];
                    let f = e.iter().map(|&(r, c, v)| (c, r, v)).collect();
                    (e, f)
                })
                .collect();
            let last = n - 1;
            gens.push(match ty.family() {
                // eps_n, through v_0
                Family::B => (
                    vec![(last, n, 1), (n, n + 1, -1)],
                    vec![(n, last, 2), (n + 1, n, -2)],
                ),
                // 2 eps_n
                Family::C => (vec![(last, n, 1)], vec![(n, last, 1)]),
                // eps_{n-1} + eps_n
                _ => {
                    let e = vec![(last - 1, dual(last), 1), (last, dual(last - 1), -1)];
                    let f = e.iter().map(|&(r, c, v)| (c, r, v)).collect();
                    (e, f)
                }
            });
            (dim, gens)
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "{ty} has no classical defining representation"
            )))
        }
    };
    let build = |entries: &[(usize, usize, i64)]| {
        SparseMatrix::from_triplets(dim, entries.iter().map(|&(r, c, v)| (r, c, int(v))))
    };
    let e: Vec<SparseMatrix> = gens.iter().map(|(e, _)| build(e)).collect();
    let f: Vec<SparseMatrix> = gens.iter().map(|(_, f)| build(f)).collect();
    let h: Vec<SparseMatrix> = e.iter().zip(&f).map(|(a, b)| a.commutator(b)).collect();
    let basis_weights: Vec<Weight> = (0..dim)
        .map(|p| {
            Weight::new(
                h.iter()
                    .map(|hi| {
                        let v = hi.get(p, p);
                        debug_assert!(v.is_integer());
                        i64::try_from(v.to_integer()).expect("small weight")
                    })
                    .collect(),
            )
        })
        .collect();
    let e_theta = highest_root_vector(datum, &e)?;
    RepMatrices::new(datum, basis_weights, e, f, e_theta)
}

/// A nonzero multiple of `e_theta` built as an iterated bracket of the `e_i`, scaled so its
/// first nonzero entry is 1.
fn highest_root_vector(datum: &RootDatum, e: &[SparseMatrix]) -> Result<SparseMatrix> {
    let rank = datum.rank();
    let theta = datum.root(datum.theta()).to_vec();
    let mut current = vec![0i64; rank];
    current[0] = 1;
    let mut x = e[0].clone();
    while current != theta {
        let step = (0..rank).find(|&i| {
            let mut next = current.clone();
            next[i] += 1;
            datum.index_of(&next).is_some()
        });
        let i = step.ok_or_else(|| Error::Integrity("no path to the highest root".into()))?;
        current[i] += 1;
        x = e[i].commutator(&x);
    }
    let first = x
        .entries()
        .next()
        .map(|(_, _, v)| v.clone())
        .ok_or_else(|| Error::Integrity("highest root vector vanished".into()))?;
    Ok(x.scale(&first.recip()))
}

/// `N = sum f_i`, the grading operator `RHO` and `E = e_theta` on one representation.
///
/// `RHO` has eigenvalue `-<mu, rho^vee>` on the `mu`-weight space. With this
/// sign `[N, RHO] = -N` and `[E, RHO] = (h - 1) E` hold as matrix commutators.
/// Its spectrum equals the principal grading because gradings are symmetric.
#[derive(Debug, Clone)]
pub struct PrincipalTriple {
    ty: SimpleType,
    coxeter: usize,
    basis_weights: Vec<Weight>,
    n: SparseMatrix,
    rho: SparseMatrix,
    e: SparseMatrix,
    h: SparseMatrix,
}

impl PrincipalTriple {
    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn coxeter(&self) -> usize {
        self.coxeter
    }

    pub fn dim(&self) -> usize {
        self.n.dim()
    }

    pub fn basis_weights(&self) -> &[Weight] {
        &self.basis_weights
    }

    pub fn n(&self) -> &SparseMatrix {
        &self.n
    }

    pub fn rho(&self) -> &SparseMatrix {
        &self.rho
    }

    pub fn e(&self) -> &SparseMatrix {
        &self.e
    }

    /// `H = 2 RHO`.
    pub fn h(&self) -> &SparseMatrix {
        &self.h
    }
}

pub fn principal_triple(datum: &RootDatum, rep: &RepMatrices) -> Result<PrincipalTriple> {
    if rep.simple_type() != datum.simple_type() {
        return Err(Error::Usage(format!(
            "representation of {} used with root datum {}",
            rep.simple_type(),
            datum.simple_type()
        )));
    }
    let dim = rep.dim();
    let n = rep
        .f()
        .iter()
        .fold(SparseMatrix::zeros(dim), |acc, fi| &acc + fi);
    let rho_diag: Vec<Rational> = rep
        .basis_weights()
        .iter()
        .map(|w| Rational::new((-datum.two_rho_level(w)).into(), BigInt::from(2)))
        .collect();
    let rho = SparseMatrix::diagonal_from(&rho_diag);
    let h = rho.scale(&int(2));
    let e = rep.e_theta().clone();

    let ty = datum.simple_type();
    if n.commutator(&rho) != -&n {
        return Err(Error::Integrity(format!("{ty}: [N, RHO] != -N")));
    }
    let hm1 = int(datum.coxeter() as i64 - 1);
    if e.commutator(&rho) != e.scale(&hm1) {
        return Err(Error::Integrity(format!("{ty}: [E, RHO] != (h - 1) E")));
    }
    jordan_type(&n)?;
    Ok(PrincipalTriple {
        ty,
        coxeter: datum.coxeter(),
        basis_weights: rep.basis_weights().to_vec(),
        n,
        rho,
        e,
        h,
    })
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
///
/// With `r_k = rank(M^k)`, the number of blocks of size `k` is `r_{k-1} - 2 r_k + r_{k+1}`.
pub fn jordan_type(m: &SparseMatrix) -> Result<JordanPartition> {
    let dim = m.dim();
    let mut ranks = vec![dim];
    let mut power = m.clone();
    loop {
        let r = power.rank();
        if r == 0 {
            ranks.push(0);
            break;
        }
        if r == *ranks.last().expect("non-empty") {
            return Err(Error::Usage(format!(
                "matrix is not nilpotent (rank of powers stalls at {r})"
            )));
        }
        ranks.push(r);
        power = &power * m;
    }
    ranks.push(0);
    let mut blocks = Vec::new();
    for k in 1..ranks.len() - 1 {
        let count = ranks[k - 1] + ranks[k + 1] - 2 * ranks[k];
        blocks.extend(std::iter::repeat_n(k as u64, count));
    }
    Ok(JordanPartition::new(blocks))
}

/// Adjoint matrices of the given type together with its defining representation, when classical.
pub fn supported_reps(datum: &RootDatum) -> Result<Vec<(&'static str, RepMatrices)>> {
    let mut out = vec![("adjoint", adjoint_rep(datum)?)];
    if matches!(
        datum.simple_type().family(),
        Family::A | Family::B | Family::C | Family::D
    ) {
        out.push(("std", classical_std_rep(datum)?));
    }
    Ok(out)
}

/// Spectrum of a diagonal matrix as doubled levels, for comparing `H` with a grading.
pub fn doubled_spectrum(h: &SparseMatrix) -> Vec<i64> {
    let mut out: Vec<i64> = h
        .diagonal()
        .into_iter()
        .map(|v| {
            let v: BigInt = v.to_integer();
            i64::try_from(v).expect("small eigenvalue")
        })
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    fn abs_of_pair(d: &RootDatum, sc: &StructureConstants, a: &[i64], b: &[i64]) -> i64 {
        sc.get(d.index_of(a).unwrap(), d.index_of(b).unwrap()).abs()
    }

    #[test]
    fn a2_special_pair() {
        let d = datum("A2");
        let sc = structure_constants(&d).unwrap();
        assert_eq!(abs_of_pair(&d, &sc, &[1, 0], &[0, 1]), 1);
        // Height ties break lexicographically, so alpha_2 = (0, 1) comes first and
        // (alpha_2, alpha_1) is the extraspecial pair.
        assert_eq!(d.index_of(&[0, 1]), Some(0));
        assert_eq!(
            sc.get(d.index_of(&[0, 1]).unwrap(), d.index_of(&[1, 0]).unwrap()),
            1
        );
        assert_eq!(
            sc.get(d.index_of(&[1, 0]).unwrap(), d.index_of(&[0, 1]).unwrap()),
            -1
        );
    }

    #[test]
    fn g2_and_b2_string_lengths() {
        let g2 = datum("G2");
        let sc = structure_constants(&g2).unwrap();
        let values: std::collections::BTreeSet<i64> = sc.entries().map(|(_, v)| v.abs()).collect();
        assert!(values.contains(&2) && values.contains(&3));
        // alpha_1 short: the alpha_1-string through 2 alpha_1 + alpha_2 reaches down to alpha_2.
        assert_eq!(abs_of_pair(&g2, &sc, &[1, 0], &[2, 1]), 3);

        let b2 = datum("B2");
        let sc = structure_constants(&b2).unwrap();
        assert_eq!(abs_of_pair(&b2, &sc, &[1, 0], &[0, 1]), 1);
        assert_eq!(abs_of_pair(&b2, &sc, &[0, 1], &[1, 1]), 2);
    }

    #[test]
    fn jacobi_all_types() {
        for ty in SimpleType::all_up_to_rank(8) {
            let d = RootDatum::new(ty).unwrap();
            structure_constants(&d).unwrap_or_else(|e| panic!("{ty}: {e}"));
        }
    }

    #[test]
    fn rank_guard() {
        let a9 = datum("A9");
        assert!(matches!(structure_constants(&a9), Err(Error::Resource(_))));
        assert!(structure_constants_limited(&a9, 9).is_ok());
    }

    #[test]
    fn adjoint_a1() {
        let d = datum("A1");
        let rep = adjoint_rep(&d).unwrap();
        assert_eq!(rep.dim(), 3);
        // Basis (e, h, f): ad e sends f -> h and h -> -2 e.
        let e = &rep.e()[0];
        assert_eq!(e.nnz(), 2);
        assert_eq!(e.get(1, 2), int(1));
        assert_eq!(e.get(0, 1), int(-2));
    }

    #[test]
    fn std_reps_validate() {
        for ty in SimpleType::all_up_to_rank(8) {
            let d = RootDatum::new(ty).unwrap();
            match ty.family() {
                Family::A | Family::B | Family::C | Family::D => {
                    let rep = classical_std_rep(&d).unwrap_or_else(|e| panic!("{ty}: {e}"));
                    let expected = match ty.family() {
                        Family::A => ty.rank() + 1,
                        Family::B => 2 * ty.rank() + 1,
                        _ => 2 * ty.rank(),
                    };
                    assert_eq!(rep.dim(), expected);
                }
                _ => assert!(matches!(classical_std_rep(&d), Err(Error::Unsupported(_)))),
            }
        }
    }

    #[test]
    fn std_jordan_types() {
        let a4 = datum("A4");
        let t = principal_triple(&a4, &classical_std_rep(&a4).unwrap()).unwrap();
        // N is the sub-diagonal of ones.
        let shift = SparseMatrix::from_triplets(5, (0..4).map(|i| (i + 1, i, int(1))));
        assert_eq!(t.n(), &shift);
        assert_eq!(jordan_type(t.n()).unwrap().blocks(), &[5]);

        for n in 2..=5 {
            let b = datum(&format!("B{n}"));
            let t = principal_triple(&b, &classical_std_rep(&b).unwrap()).unwrap();
            assert_eq!(jordan_type(t.n()).unwrap().blocks(), &[2 * n as u64 + 1]);
        }
        for n in 3..=6 {
            let dn = datum(&format!("D{n}"));
            let t = principal_triple(&dn, &classical_std_rep(&dn).unwrap()).unwrap();
            assert_eq!(jordan_type(t.n()).unwrap().blocks(), &[2 * n as u64 - 1, 1]);
        }
    }

    #[test]
    fn a1_std_triple() {
        let d = datum("A1");
        let t = principal_triple(&d, &classical_std_rep(&d).unwrap()).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(t.n(), &SparseMatrix::from_triplets(2, [(1, 0, int(1))]));
        assert_eq!(t.e(), &SparseMatrix::from_triplets(2, [(0, 1, int(1))]));
        assert_eq!(
            t.rho(),
            &SparseMatrix::diagonal_from(&[-half.clone(), half])
        );
    }

    #[test]
    fn g2_adjoint_jordan() {
        let d = datum("G2");
        let rep = adjoint_rep(&d).unwrap();
        assert_eq!(rep.dim(), 14);
        let t = principal_triple(&d, &rep).unwrap();
        assert_eq!(jordan_type(t.n()).unwrap().blocks(), &[11, 3]);
    }

    #[test]
    fn jordan_type_basics() {
        assert_eq!(
            jordan_type(&SparseMatrix::zeros(3)).unwrap().blocks(),
            &[1, 1, 1]
        );
        let cell = SparseMatrix::from_triplets(4, (0..3).map(|i| (i, i + 1, int(1))));
        assert_eq!(jordan_type(&cell).unwrap().blocks(), &[4]);
        assert!(matches!(
            jordan_type(&SparseMatrix::identity(2)),
            Err(Error::Usage(_))
        ));
        let mixed = SparseMatrix::from_triplets(3, [(0, 1, int(1)), (2, 2, int(1))]);
        assert!(matches!(jordan_type(&mixed), Err(Error::Usage(_))));
    }

    #[test]
    fn b2_lie_identities() {
        let d = datum("B2");
        let t = principal_triple(&d, &classical_std_rep(&d).unwrap()).unwrap();
        assert_eq!(t.n().commutator(t.rho()), -t.n());
        assert_eq!(t.e().commutator(t.rho()), t.e().scale(&int(3)));
    }

    #[test]
    fn e_theta_is_highest_weight_vector() {
        for ty in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let d = datum(ty);
            let rep = adjoint_rep(&d).unwrap();
            for ei in rep.e() {
                assert!(ei.commutator(rep.e_theta()).is_zero(), "{ty}");
            }
        }
    }
}
