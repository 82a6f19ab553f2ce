use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`, with
/// `1 < d₁ | d₂ | … | d_k`. The name is historical: free rank is allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(&[BigInt::from(n)], 0)
    }

    /// Canonicalizes `Z^free ⊕ ⊕ Z/oᵢ`. An order of 0 contributes a free
    /// summand and an order of ±1 contributes nothing.
    pub fn from_orders(orders: &[BigInt], free_rank: usize) -> Self {
        let d = IntMatrix::diagonal(orders);
        let mut g = cokernel(&d);
        g.free_rank += free_rank;
        g
    }

    pub fn from_u64(orders: &[u64], free_rank: usize) -> Self {
        let o: Vec<BigInt> = orders.iter().map(|&x| BigInt::from(x)).collect();
        Self::from_orders(&o, free_rank)
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Smallest positive integer killing the torsion subgroup.
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut o = self.invariant_factors.clone();
        o.extend(other.invariant_factors.iter().cloned());
        Self::from_orders(&o, self.free_rank + other.free_rank)
    }

    /// `G[n]`, the subgroup killed by `n > 0`.
    pub fn n_torsion(&self, n: u64) -> FinAbGroup {
        let n = BigInt::from(n);
        let o: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .map(|d| num_integer::Integer::gcd(d, &n))
            .collect();
        Self::from_orders(&o, 0)
    }

    /// `G/nG`.
    pub fn mod_n(&self, n: u64) -> FinAbGroup {
        let mut o = self.n_torsion(n).invariant_factors;
        o.extend(std::iter::repeat_n(BigInt::from(n), self.free_rank));
        Self::from_orders(&o, 0)
    }

    /// Number of elements killed by `k > 0`.
    pub fn count_killed_by(&self, k: u64) -> BigInt {
        self.n_torsion(k).torsion_order()
    }

    pub fn factors_u64(&self) -> Option<Vec<u64>> {
        self.invariant_factors.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl fmt::Display for FinAbGroup {
    /// `0`, `Z`, `Z^2 + Z/2 + Z/4`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Structure of `Z^rows / image(A)`.
pub fn cokernel(a: &IntMatrix) -> FinAbGroup {
    let r = smith_normal_form(a);
    let inv = r.invariants();
    let rank = inv.len();
    FinAbGroup {
        invariant_factors: inv.into_iter().filter(|d| !d.is_one()).collect(),
        free_rank: a.rows() - rank,
    }
}

/// Columns form a basis of `{x : A·x = 0}`. The basis is the tail of the
/// column transform `V`, so it spans a direct summand of `Z^cols`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let r = smith_normal_form(a);
    let rank = r.rank();
    r.v.select_columns(rank..a.cols())
}

/// Coordinate system for the lattice spanned by a set of generators.
///
/// With `U·X·V = D`, a vector `x` lies in the span iff `w = U·x` has `w_j`
/// divisible by `d_j` for `j < r` and `w_j = 0` beyond; the quotients
/// `w_j / d_j` are coordinates in the basis `{U⁻¹·d_j·e_j}`.
#[derive(Clone, Debug)]
pub struct LatticeCoords {
    u: IntMatrix,
    v: IntMatrix,
    diag: Vec<BigInt>,
    ambient: usize,
}

impl LatticeCoords {
    pub fn new(generators: &IntMatrix) -> Self {
        let r = smith_normal_form(generators);
        Self {
            diag: r.invariants(),
            u: r.u,
            v: r.v,
            ambient: generators.rows(),
        }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.ambient);
        let w = self.u.mul_vec(x);
        let r = self.rank();
        if w[r..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Vec::with_capacity(r);
        for (wj, dj) in w.iter().zip(&self.diag) {
            if !(wj % dj).is_zero() {
                return None;
            }
            out.push(wj / dj);
        }
        Some(out)
    }

    /// Coordinates with respect to the original generators, which must be
    /// linearly independent. `X = U⁻¹·D·V⁻¹`, so `x = X·c` gives `c = V·y`.
    pub fn generator_coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(self.rank(), self.v.rows(), "generators are dependent");
        self.coords(x).map(|y| self.v.mul_vec(&y))
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coords(x).is_some()
    }
}

/// `span(num) / span(den)` for generator columns with `span(den) ⊆ span(num)`.
/// Returns `None` when the containment fails.
pub fn lattice_quotient(num: &IntMatrix, den: &IntMatrix) -> Option<FinAbGroup> {
    assert_eq!(num.rows(), den.rows());
    let lc = LatticeCoords::new(num);
    let mut cols = Vec::with_capacity(den.cols());
    for j in 0..den.cols() {
        cols.push(lc.coords(&den.column(j))?);
    }
    Some(cokernel(&IntMatrix::from_columns(&cols, lc.rank())))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubquotientError {
    #[error("image of I is not contained in ker K")]
    ContainmentViolation,
    #[error("dimension mismatch: K has {k_cols} columns, I has {i_rows} rows")]
    DimensionMismatch { k_cols: usize, i_rows: usize },
}

/// `ker(K) / im(I)`.
pub fn subquotient(k: &IntMatrix, i: &IntMatrix) -> Result<FinAbGroup, SubquotientError> {
    if k.cols() != i.rows() {
        return Err(SubquotientError::DimensionMismatch {
            k_cols: k.cols(),
            i_rows: i.rows(),
        });
    }
    if !k.mul(i).is_zero() {
        return Err(SubquotientError::ContainmentViolation);
    }
    let kb = kernel_basis(k);
    lattice_quotient(&kb, i).ok_or(SubquotientError::ContainmentViolation)
}

/// Largest power of a prime dividing `n`; helper shared by several callers.
pub fn prime_power_split(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut e = 0;
    let mut m = n.abs();
    while !m.is_zero() && (&m % &p).is_zero() {
        m /= &p;
        e += 1;
    }
    (e, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64], r: usize) -> FinAbGroup {
        FinAbGroup::from_u64(f, r)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(g(&[2, 3], 0), g(&[6], 0));
        assert_eq!(g(&[4, 6], 0).invariant_factors(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g(&[1, 0], 1), FinAbGroup::free(2));
        assert_eq!(g(&[2, 2], 1).to_string(), "Z + Z/2 + Z/2");
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::diagonal(&[2, 4])), g(&[2, 4], 0));
        assert_eq!(cokernel(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]])), g(&[2, 4], 0));
        assert_eq!(cokernel(&IntMatrix::zeros(2, 3)), FinAbGroup::free(2));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(k.cols(), 2);
        assert!(IntMatrix::from_i64(&[&[1, 1, 1]]).mul(&k).is_zero());
        // saturated: the basis spans a summand, so the quotient is free
        assert_eq!(cokernel(&k), FinAbGroup::free(1));
        assert_eq!(kernel_basis(&IntMatrix::identity(2)).cols(), 0);
        assert_eq!(kernel_basis(&IntMatrix::zeros(1, 2)).cols(), 2);
    }

    #[test]
    fn subquotient_examples() {
        let two = IntMatrix::identity(2).scale(&BigInt::from(2));
        assert_eq!(subquotient(&IntMatrix::zeros(1, 2), &two).unwrap(), g(&[2, 2], 0));
        let i = IntMatrix::from_i64(&[&[2], &[-2]]);
        assert_eq!(subquotient(&IntMatrix::from_i64(&[&[1, 1]]), &i).unwrap(), g(&[2], 0));
        assert!(subquotient(&IntMatrix::identity(2), &IntMatrix::zeros(2, 0))
            .unwrap()
            .is_trivial());
        let bad = IntMatrix::from_i64(&[&[1], &[0]]);
        assert_eq!(
            subquotient(&IntMatrix::from_i64(&[&[1, 1]]), &bad),
            Err(SubquotientError::ContainmentViolation)
        );
    }

    #[test]
    fn torsion_helpers() {
        let a = g(&[2, 4], 1);
        assert_eq!(a.n_torsion(2), g(&[2, 2], 0));
        assert_eq!(a.mod_n(2), g(&[2, 2, 2], 0));
        assert_eq!(a.count_killed_by(4), BigInt::from(2 * 4));
        assert_eq!(prime_power_split(&BigInt::from(48), 2), (4, BigInt::from(3)));
    }
}
