//! Dense exact linear algebra over any [`FieldCoeff`]: reduced row echelon
//! form, nullspaces, solving, and the span bookkeeping the Lie-algebra layer
//! is built on. Pivoting is deterministic (first nonzero entry), so every
//! canonical form here is reproducible.

use crate::coeff::{FieldCoeff, Rat};
use crate::poly::ParamPoly;
use crate::ratfunc::RatFunc;
use num::{BigInt, Integer, Signed};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: FieldCoeff> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.at(r, c).clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for c in 0..self.cols {
                    acc = acc.add(&self.at(r, c).mul(&v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut acc = F::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = m.at(r, c).add(&a.mul(other.at(k, c)));
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Reduced row echelon form and the list of pivot columns, in order.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..m.cols {
            // First row at or below pr with a nonzero entry in this column.
            let Some(sel) = (pr..m.rows).find(|&r| !m.at(r, pc).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, sel);
            let inv = m.at(pr, pc).inv();
            for c in pc..m.cols {
                let v = m.at(pr, c).mul(&inv);
                m.set(pr, c, v);
            }
            for r in 0..m.rows {
                if r == pr || m.at(r, pc).is_zero() {
                    continue;
                }
                let factor = m.at(r, pc).clone();
                for c in pc..m.cols {
                    let v = m.at(r, c).sub(&factor.mul(m.at(pr, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, in column order.
    /// The vector for free column `j` has entry 1 there.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![F::zero(); self.cols];
            v[fc] = F::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = r.at(prow, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One particular solution of `M x = rhs`, or `None` if inconsistent.
    /// Free coordinates are set to zero.
    pub fn solve(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![F::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = red.at(prow, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, n + r, F::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, red.at(r, n + c).clone());
            }
        }
        Some(out)
    }
}

/// Nonzero rows of the reduced row echelon form: the canonical basis of the
/// row span.
pub fn span_rref<F: FieldCoeff>(rows: &[Vec<F>]) -> Vec<Vec<F>> {
    if rows.is_empty() {
        return vec![];
    }
    let (red, pivots) = Matrix::from_rows(rows.to_vec()).rref();
    (0..pivots.len()).map(|r| red.row(r).to_vec()).collect()
}

pub fn span_dim<F: FieldCoeff>(rows: &[Vec<F>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows.to_vec()).rank()
    }
}

/// Remainder of `v` after eliminating along the rows of `rref_rows` (which
/// must be in reduced row echelon form, e.g. output of [`span_rref`]). The
/// result is zero exactly when `v` lies in the row span, and the map is
/// linear in `v`.
pub fn rref_reduce<F: FieldCoeff>(rref_rows: &[Vec<F>], v: &[F]) -> Vec<F> {
    let mut v = v.to_vec();
    for row in rref_rows {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if !v[p].is_zero() {
            let factor = v[p].div(&row[p]);
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi = vi.sub(&factor.mul(ri));
            }
        }
    }
    v
}

/// Whether `v` lies in the row span of `rref_rows` (reduced row echelon form).
pub fn span_contains<F: FieldCoeff>(rref_rows: &[Vec<F>], v: &[F]) -> bool {
    rref_reduce(rref_rows, v).iter().all(F::is_zero)
}

pub fn spans_equal<F: FieldCoeff>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    span_rref(a) == span_rref(b)
}

/// Canonical basis of the intersection of two row spans.
pub fn intersect_spans<F: FieldCoeff>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let n = a[0].len();
    // Columns: coefficients on a-rows, then on b-rows; rows: ambient coords.
    let mut m = Matrix::zeros(n, a.len() + b.len());
    for (j, av) in a.iter().enumerate() {
        for i in 0..n {
            m.set(i, j, av[i].clone());
        }
    }
    for (j, bv) in b.iter().enumerate() {
        for i in 0..n {
            m.set(i, a.len() + j, bv[i].neg());
        }
    }
    let mut vectors = Vec::new();
    for sol in m.nullspace() {
        let mut v = vec![F::zero(); n];
        for (j, av) in a.iter().enumerate() {
            for i in 0..n {
                v[i] = v[i].add(&sol[j].mul(&av[i]));
            }
        }
        if !v.iter().all(F::is_zero) {
            vectors.push(v);
        }
    }
    span_rref(&vectors)
}

pub fn sum_spans<F: FieldCoeff>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut rows = a.to_vec();
    rows.extend(b.to_vec());
    span_rref(&rows)
}

/// Multiply a vector of rational functions by the least common multiple of
/// the denominators and strip the rational content, leaving polynomial
/// entries with coprime integer coefficients (first leading coefficient
/// positive). Zero vectors come back empty of content but unchanged.
pub fn clear_denominators(v: &[RatFunc]) -> Vec<ParamPoly> {
    let mut lcm = ParamPoly::one();
    for r in v {
        let g = lcm.gcd(r.den());
        let (q, _) = r.den().div_rem(&g);
        lcm = lcm.mul(&q);
    }
    let cleared: Vec<ParamPoly> = v
        .iter()
        .map(|r| {
            let (q, rem) = lcm.div_rem(r.den());
            debug_assert!(rem.is_zero());
            r.num().mul(&q)
        })
        .collect();
    // Joint rational content across all entries.
    let mut num_gcd = BigInt::from(0);
    let mut den_lcm = BigInt::from(1);
    for p in &cleared {
        for c in p.coeffs() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    if num_gcd == BigInt::from(0) {
        return cleared;
    }
    let mut content = Rat::new(num_gcd, den_lcm);
    if let Some(lead) = cleared
        .iter()
        .find(|p| !p.is_zero())
        .map(|p| p.leading())
    {
        if lead.is_negative() {
            content = -content;
        }
    }
    let inv = content.recip();
    cleared.into_iter().map(|p| p.scale(&inv)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat_int, Coeff, Rat};
    use proptest::prelude::*;

    fn rm(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat_int(n)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_identity_block() {
        let (r, p) = rm(&[&[1, 0], &[0, 1]]).rref();
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_dependent_rows() {
        let (r, p) = rm(&[&[0, 1], &[0, 2]]).rref();
        assert_eq!(r, rm(&[&[0, 1], &[0, 0]]));
        assert_eq!(p, vec![1]);
    }

    #[test]
    fn rref_over_rational_functions() {
        // [[t, 1], [1, t]] is invertible over Q(t).
        let t = RatFunc::t();
        let one = <RatFunc as Coeff>::one();
        let m = Matrix::from_rows(vec![
            vec![t.clone(), one.clone()],
            vec![one.clone(), t.clone()],
        ]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn nullspace_of_sum_constraint() {
        let ns = rm(&[&[1, 1, 0]]).nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(rm(&[&[1, 1, 0]]).mul_vec(v).iter().all(Coeff::is_zero));
        }
    }

    #[test]
    fn solve_underdetermined() {
        let m = rm(&[&[1, 2, 0]]);
        let x = m.solve(&[rat_int(5)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat_int(5)]);
        assert!(m.solve(&[rat_int(0)]).is_some());
        let bad = rm(&[&[1, 0], &[1, 0]]).solve(&[rat_int(0), rat_int(1)]);
        assert!(bad.is_none());
    }

    #[test]
    fn clear_denominators_frozen_example() {
        // (t/(t^2-1), 1/(t-1)) -> (t, t+1)
        let p = |c: &[i64]| {
            ParamPoly::from_coeffs(c.iter().map(|&n| rat_int(n)).collect())
        };
        let v = vec![
            RatFunc::new(p(&[0, 1]), p(&[-1, 0, 1])),
            RatFunc::new(p(&[1]), p(&[-1, 1])),
        ];
        assert_eq!(clear_denominators(&v), vec![p(&[0, 1]), p(&[1, 1])]);
    }

    #[test]
    fn clear_denominators_strips_content() {
        let p = |c: &[i64]| {
            ParamPoly::from_coeffs(c.iter().map(|&n| rat_int(n)).collect())
        };
        let v = vec![
            RatFunc::from_poly(p(&[2])),
            RatFunc::from_poly(p(&[0, 4])),
        ];
        assert_eq!(clear_denominators(&v), vec![p(&[1]), p(&[0, 2])]);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix<Rat>> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |data| Matrix {
                rows: r,
                cols: c,
                data: data.into_iter().map(rat_int).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent(m in arb_matrix()) {
            let (r1, p1) = m.rref();
            let (r2, p2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(m.rank() + m.nullspace().len(), m.ncols());
        }

        #[test]
        fn nullspace_vectors_annihilate(m in arb_matrix()) {
            for v in m.nullspace() {
                prop_assert!(m.mul_vec(&v).iter().all(Coeff::is_zero));
            }
        }

        #[test]
        fn inverse_roundtrip(data in proptest::collection::vec(-5i64..=5, 9)) {
            let m = Matrix { rows: 3, cols: 3, data: data.into_iter().map(rat_int).collect() };
            if let Some(inv) = m.inverse() {
                prop_assert_eq!(m.mul_mat(&inv), Matrix::identity(3));
                prop_assert_eq!(inv.mul_mat(&m), Matrix::identity(3));
            } else {
                prop_assert!(m.rank() < 3);
            }
        }
    }
}
