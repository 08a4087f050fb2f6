//! (-2)-roots, Weyl reflections, and exact enumeration of roots on affine
//! slices `inner(alpha, v0) = level` of a hyperbolic lattice.
//!
//! The slice `{alpha : inner(alpha, v0) = level}` reduces to a negative
//! definite quadratic problem on the orthogonal complement of `v0`, solved by
//! branch-and-bound on exact rational Cholesky (LDL^T) data. All pruning
//! bounds are exact; no floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{GramLattice, Isometry};
use crate::linalg::{self, IntMatrix, IntVector, Ldl, RatMatrix};

/// A lattice vector of norm exactly -2, validated at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Root {
    vec: IntVector,
}

impl Root {
    pub fn new(lattice: &GramLattice, vec: IntVector) -> Result<Self> {
        let norm = lattice.norm(&vec)?;
        if norm != linalg::int(-2) {
            return Err(Error::NotRoot(norm.to_string()));
        }
        Ok(Root { vec })
    }

    pub fn coords(&self) -> &IntVector {
        &self.vec
    }

    pub fn into_coords(self) -> IntVector {
        self.vec
    }
}

/// `s_alpha(x) = x + inner(x, alpha) * alpha`.
pub fn reflect(lattice: &GramLattice, alpha: &Root, x: &[BigInt]) -> Result<IntVector> {
    let pairing = lattice.inner(x, alpha.coords())?;
    Ok(x.iter()
        .zip(alpha.coords())
        .map(|(xi, ai)| xi + &pairing * ai)
        .collect())
}

/// The matrix of `s_alpha`, column by column; always an isometry and an
/// involution.
pub fn reflection_matrix(lattice: &GramLattice, alpha: &Root) -> Result<Isometry> {
    let n = lattice.rank();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        cols.push(reflect(lattice, alpha, &e)?);
    }
    let matrix: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect();
    Isometry::new(lattice, matrix)
}

/// Mutable node budget threaded through slice enumerations.
#[derive(Debug, Clone)]
pub struct NodeBudget {
    limit: Option<u64>,
    pub used: u64,
}

impl NodeBudget {
    pub fn unlimited() -> Self {
        NodeBudget {
            limit: None,
            used: 0,
        }
    }

    pub fn limited(limit: u64) -> Self {
        NodeBudget {
            limit: Some(limit),
            used: 0,
        }
    }

    fn tick(&mut self) -> bool {
        self.used += 1;
        match self.limit {
            Some(l) => self.used <= l,
            None => true,
        }
    }
}

/// Result of enumerating one slice; `complete` is false when the node budget
/// ran out before the search tree was exhausted.
#[derive(Debug, Clone)]
pub struct SliceRoots {
    pub level: BigInt,
    pub roots: Vec<IntVector>,
    pub complete: bool,
}

/// Precomputed data for enumerating root slices of a fixed `(lattice, v0)`.
pub struct SliceEnumerator<'a> {
    lattice: &'a GramLattice,
    /// Covector of v0: the linear form `x -> inner(x, v0)`.
    w: IntVector,
    /// gcd of the entries of `w`; only multiples of this occur as levels.
    w_gcd: BigInt,
    /// Integer vector with `w . u = w_gcd`.
    u: IntVector,
    /// Rows form a basis of the saturated kernel `{x : w . x = 0}`.
    kernel: Vec<IntVector>,
    /// The positive definite form `-B G B^T` on the kernel, and its LDL^T.
    p: RatMatrix,
    ldl: Ldl,
}

impl<'a> SliceEnumerator<'a> {
    pub fn new(lattice: &'a GramLattice, v0: &[BigInt]) -> Result<Self> {
        let sig = lattice.signature();
        if !sig.is_hyperbolic() {
            return Err(Error::NotHyperbolic {
                pos: sig.positive,
                neg: sig.negative,
            });
        }
        let v0_norm = lattice.norm(v0)?;
        if !v0_norm.is_positive() {
            return Err(Error::InvalidControllingVector(v0_norm.to_string()));
        }
        let w = lattice.covector(v0)?;
        let (w_gcd, u) = extended_gcd_combination(&w);
        let kernel = linalg::integer_kernel(&vec![w.clone()]);
        let k = kernel.len();
        debug_assert_eq!(k, lattice.rank() - 1);
        // P = -B G B^T is positive definite on the slice directions.
        let mut p: RatMatrix = vec![vec![BigRational::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let q = lattice.inner(&kernel[i], &kernel[j])?;
                p[i][j] = BigRational::from(-q);
            }
        }
        let ldl = linalg::ldl_decompose(&p).map_err(|_| Error::NotHyperbolic {
            pos: sig.positive,
            neg: sig.negative,
        })?;
        Ok(SliceEnumerator {
            lattice,
            w,
            w_gcd,
            u,
            kernel,
            p,
            ldl,
        })
    }

    /// Smallest positive level that can occur, i.e. gcd of the covector.
    pub fn level_step(&self) -> &BigInt {
        &self.w_gcd
    }

    /// All roots `alpha` with `inner(alpha, alpha) = -2` and
    /// `inner(alpha, v0) = level`, sorted lexicographically by coordinates.
    pub fn roots_at_level(&self, level: &BigInt, budget: &mut NodeBudget) -> Result<SliceRoots> {
        if level.is_negative() {
            return Err(Error::Parse(format!("level {level} must be nonnegative")));
        }
        let k = self.kernel.len();
        if !(level % &self.w_gcd).is_zero() {
            return Ok(SliceRoots {
                level: level.clone(),
                roots: Vec::new(),
                complete: true,
            });
        }
        let scale = level / &self.w_gcd;
        let x0: IntVector = self.u.iter().map(|ui| ui * &scale).collect();
        debug_assert_eq!(linalg::dot(&self.w, &x0), *level);

        if k == 0 {
            let mut roots = Vec::new();
            if self.lattice.norm(&x0)? == linalg::int(-2) {
                roots.push(x0);
            }
            return Ok(SliceRoots {
                level: level.clone(),
                roots,
                complete: true,
            });
        }

        // With P = -B G B^T and g_j = -inner(B_j, x0), the norm condition
        // q(x0 + B^T t) = -2 becomes t^T P t + 2 g . t = c0 + 2, i.e.
        // (t - c)^T P (t - c) = R with c = -P^{-1} g and
        // R = c0 + 2 + g . P^{-1} g.
        let mut g = Vec::with_capacity(k);
        for row in &self.kernel {
            g.push(BigRational::from(-self.lattice.inner(row, &x0)?));
        }
        let mu_raw = linalg::solve_rational(&self.p, &g)?;
        let c0 = BigRational::from(self.lattice.norm(&x0)?);
        let mut r = c0 + BigRational::from(linalg::int(2));
        for (mi, gi) in mu_raw.iter().zip(&g) {
            r += mi * gi;
        }
        let mu: Vec<BigRational> = mu_raw.into_iter().map(|m| -m).collect();
        let mut t_solutions = Vec::new();
        let complete = if r.is_negative() {
            true
        } else {
            enumerate_ldl(&self.ldl, &mu, &r, budget, &mut t_solutions)
        };

        let mut roots: Vec<IntVector> = t_solutions
            .iter()
            .map(|t| {
                let mut alpha = x0.clone();
                for (tj, row) in t.iter().zip(&self.kernel) {
                    for (ai, bi) in alpha.iter_mut().zip(row) {
                        *ai += tj * bi;
                    }
                }
                alpha
            })
            .collect();
        roots.sort();
        debug_assert!(roots
            .iter()
            .all(|a| self.lattice.norm(a).unwrap() == linalg::int(-2)));
        Ok(SliceRoots {
            level: level.clone(),
            roots,
            complete,
        })
    }
}

/// Integer combination achieving the gcd: returns `(g, u)` with `w . u = g`.
fn extended_gcd_combination(w: &IntVector) -> (BigInt, IntVector) {
    let mut g = BigInt::zero();
    let mut coeffs: IntVector = Vec::with_capacity(w.len());
    for wi in w {
        let eg = g.extended_gcd(wi);
        for c in coeffs.iter_mut() {
            *c = &*c * &eg.x;
        }
        coeffs.push(eg.y.clone());
        g = eg.gcd;
    }
    // gcd of the zero vector is zero; callers guarantee w != 0.
    (g, coeffs)
}

/// Enumerates all integer `t` with `sum_i d_i (t_i - c_i(t))^2 = r` exactly,
/// where `c_i` depends on coordinates fixed later in the recursion. Returns
/// false when the node budget was exhausted (output then incomplete).
fn enumerate_ldl(
    ldl: &Ldl,
    mu: &[BigRational],
    r: &BigRational,
    budget: &mut NodeBudget,
    out: &mut Vec<IntVector>,
) -> bool {
    let k = mu.len();
    let mut t = vec![BigInt::zero(); k];
    recurse(ldl, mu, r, &BigRational::zero(), k, &mut t, budget, out)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    ldl: &Ldl,
    mu: &[BigRational],
    r: &BigRational,
    partial: &BigRational,
    idx: usize,
    t: &mut IntVector,
    budget: &mut NodeBudget,
    out: &mut Vec<IntVector>,
) -> bool {
    if idx == 0 {
        if partial == r {
            out.push(t.clone());
        }
        return true;
    }
    let i = idx - 1;
    // center c_i = mu_i - sum_{j > i} L[j][i] (t_j - mu_j)
    let mut center = mu[i].clone();
    for j in idx..mu.len() {
        let tj = BigRational::from(t[j].clone());
        center -= &ldl.l[j][i] * (tj - &mu[j]);
    }
    let remaining = r - partial;
    if remaining.is_negative() {
        return true;
    }
    // d_i (t_i - c)^2 <= remaining, exact integer bounds.
    let bound = &remaining / &ldl.d[i];
    let pc = center.numer().clone();
    let qc = center.denom().clone();
    let num = bound.numer() * &qc * &qc;
    let den = bound.denom().clone();
    let s = linalg::floor_sqrt_ratio(&num, &den);
    let lo = (&pc - &s).div_ceil(&qc);
    let hi = (&pc + &s).div_floor(&qc);
    let mut ti = lo;
    while ti <= hi {
        if !budget.tick() {
            return false;
        }
        let diff = BigRational::from(ti.clone()) - &center;
        let term = &ldl.d[i] * &diff * &diff;
        let next = partial + &term;
        if next <= *r {
            t[i] = ti.clone();
            if !recurse(ldl, mu, r, &next, i, t, budget, out) {
                return false;
            }
        }
        ti += 1;
    }
    true
}

/// Spec operation: all roots at one level of the slice ordering.
pub fn enumerate_roots_at_level(
    lattice: &GramLattice,
    v0: &[BigInt],
    level: &BigInt,
) -> Result<Vec<Root>> {
    let enumerator = SliceEnumerator::new(lattice, v0)?;
    let mut budget = NodeBudget::unlimited();
    let slice = enumerator.roots_at_level(level, &mut budget)?;
    slice
        .roots
        .into_iter()
        .map(|v| Root::new(lattice, v))
        .collect()
}
