use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` in Smith form.
///
/// The inverses of both transforms are kept as well; lattice coordinates and
/// kernel coordinates need them and recomputing is wasteful.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    /// Nonzero diagonal entries, in order.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    // row[dst] += k·row[src]; the inverse transform absorbs col[src] -= k·col[dst]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        for i in t + 1..self.a.rows() {
            let x = &self.a[(i, t)];
            if !x.is_zero() && x.abs() < self.a[best].abs() {
                best = (i, t);
            }
        }
        for j in t + 1..self.a.cols() {
            let x = &self.a[(t, j)];
            if !x.is_zero() && x.abs() < self.a[best].abs() {
                best = (t, j);
            }
        }
        best
    }

    fn move_to(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Clears row and column `t` by division with remainder. Returns false if
    /// some remainder survived, in which case a smaller pivot exists.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = &self.a[(i, t)] / &self.a[(t, t)];
            self.add_row(i, t, &-q);
            if !self.a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = &self.a[(t, j)] / &self.a[(t, t)];
            self.add_col(j, t, &-q);
            if !self.a[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        (t + 1..self.a.rows())
            .find(|&i| (t + 1..self.a.cols()).any(|j| !(&self.a[(i, j)] % p).is_zero()))
    }
}

/// Smith normal form by repeated minimal-absolute-value pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        let Some(pos) = w.min_in_block(t) else { break };
        w.move_to(t, pos);
        loop {
            if !w.clear_cross(t) {
                let pos = w.min_in_cross(t);
                w.move_to(t, pos);
                continue;
            }
            match w.non_divisible_row(t) {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    SnfResult {
        d: w.a,
        u: w.u,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(r.u.mul(a).mul(&r.v), r.d);
        assert_eq!(r.u.mul(&r.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(r.v.mul(&r.v_inv), IntMatrix::identity(a.cols()));
        r
    }

    #[test]
    fn two_by_two() {
        let r = check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(r.d, IntMatrix::diagonal(&[2, 4]));
    }

    #[test]
    fn identity_is_fixed() {
        let r = check(&IntMatrix::identity(3));
        assert_eq!(r.d, IntMatrix::identity(3));
        assert_eq!(r.u, IntMatrix::identity(3));
        assert_eq!(r.v, IntMatrix::identity(3));
    }

    #[test]
    fn zero_and_empty() {
        let r = check(&IntMatrix::zeros(2, 3));
        assert!(r.d.is_zero());
        assert_eq!(r.rank(), 0);
        let r = check(&IntMatrix::zeros(0, 4));
        assert_eq!((r.d.rows(), r.d.cols()), (0, 4));
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2,3) is already diagonal but not in Smith form
        let r = check(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(r.invariants(), vec![BigInt::one(), BigInt::from(6)]);
    }
}
