//! Exact dense linear algebra over the coefficient field (Gaussian
//! elimination: solve, nullspace, rank) and module reductions over the
//! polynomial ring F[t] (column Hermite form and Smith normal form),
//! used for innerness certificates, rD2 preimages, kernel computations,
//! and the characteristic-p module structure of HH^2.

use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

/// Dense matrix over a field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Row-reduce in place; returns the pivot column of each pivot row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).inv().unwrap();
            for c in col..self.cols {
                let v = self.at(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c).sub(&factor.mul(self.at(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Solve `self * x = rhs` for one solution, if any.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for (r, rv) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, rv.clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, col) in pivots.iter().enumerate() {
            x[*col] = aug.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// A basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, col) in pivots.iter().enumerate() {
                v[*col] = m.at(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// Matrix over the polynomial ring F[t], used as a PID for module
/// computations. Row-major; entries are `Poly` in the formal variable t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            rows,
            cols,
            data: vec![Poly::zero(field); rows * cols],
        }
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Poly>]) -> Self {
        let mut m = PolyMatrix::zero(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Poly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Poly> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// col_b -= q * col_a
    fn col_axpy(&mut self, b: usize, q: &Poly, a: usize) {
        for r in 0..self.rows {
            let v = self.at(r, b).sub(&q.mul(self.at(r, a)));
            self.set(r, b, v);
        }
    }

    fn scale_col(&mut self, c: usize, s: &Scalar) {
        for r in 0..self.rows {
            let v = self.at(r, c).mul_scalar(s);
            self.set(r, c, v);
        }
    }

    /// Column Hermite reduction: unimodular column operations bringing the
    /// matrix to column echelon form (pivot rows increasing, pivot entries
    /// monic, entries above each pivot of the pivot column untouched other
    /// columns zero at the pivot row to the right). The nonzero columns of
    /// the result form an F[t]-basis of the column module.
    pub fn column_hermite(&self) -> PolyMatrix {
        let mut m = self.clone();
        let mut next_col = 0usize;
        for row in 0..m.rows {
            if next_col == m.cols {
                break;
            }
            // clear row `row` across columns >= next_col down to one column
            loop {
                let mut nonzero: Vec<usize> = (next_col..m.cols)
                    .filter(|&c| !m.at(row, c).is_zero())
                    .collect();
                if nonzero.len() <= 1 {
                    break;
                }
                // pick the column whose entry has minimal degree as the reducer
                nonzero.sort_by_key(|&c| m.at(row, c).deg_or_zero());
                let base = nonzero[0];
                for &c in &nonzero[1..] {
                    let (q, _) = m.at(row, c).divrem(m.at(row, base)).unwrap();
                    m.col_axpy(c, &q, base);
                }
            }
            if let Some(p) = (next_col..m.cols).find(|&c| !m.at(row, c).is_zero()) {
                m.swap_cols(next_col, p);
                let lc_inv = m.at(row, next_col).leading_coeff().unwrap().inv().unwrap();
                m.scale_col(next_col, &lc_inv);
                next_col += 1;
            }
        }
        m
    }

    /// The nonzero columns after Hermite reduction: a basis of the column module.
    pub fn column_module_basis(&self) -> Vec<Vec<Poly>> {
        let h = self.column_hermite();
        (0..h.cols)
            .map(|c| h.column(c))
            .filter(|col| col.iter().any(|p| !p.is_zero()))
            .collect()
    }

    /// Smith normal form: returns the invariant factors d_1 | d_2 | ... (monic,
    /// nonzero ones only). The quotient F[t]^rows / col-module is then
    /// `⊕ F[t]/(d_i) ⊕ F[t]^(rows − #d_i)`.
    pub fn smith_invariant_factors(&self) -> Vec<Poly> {
        let mut m = self.clone();
        let mut factors = Vec::new();
        let mut top = 0usize;
        while top < m.rows && top < m.cols {
            // find a nonzero entry in the working block
            let Some((pr, pc)) = (top..m.rows)
                .flat_map(|r| (top..m.cols).map(move |c| (r, c)))
                .filter(|&(r, c)| !m.at(r, c).is_zero())
                .min_by_key(|&(r, c)| m.at(r, c).deg_or_zero())
            else {
                break;
            };
            // move it to (top, top)
            m.swap_rows_pm(top, pr);
            m.swap_cols(top, pc);
            loop {
                let mut dirty = false;
                for c in (top + 1)..m.cols {
                    if !m.at(top, c).is_zero() {
                        let (q, r) = m.at(top, c).divrem(m.at(top, top)).unwrap();
                        m.col_axpy(c, &q, top);
                        if !r.is_zero() {
                            m.swap_cols(top, c);
                            dirty = true;
                        }
                    }
                }
                for r in (top + 1)..m.rows {
                    if !m.at(r, top).is_zero() {
                        let (q, rem) = m.at(r, top).divrem(m.at(top, top)).unwrap();
                        m.row_axpy_pm(r, &q, top);
                        if !rem.is_zero() {
                            m.swap_rows_pm(top, r);
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            factors.push(m.at(top, top).monic());
            top += 1;
        }
        // enforce divisibility d_i | d_{i+1} by gcd/lcm swaps
        let mut changed = true;
        while changed {
            changed = false;
            for i in 1..factors.len() {
                if !factors[i - 1].divides(&factors[i]) {
                    let g = factors[i - 1].gcd_monic(&factors[i]).unwrap();
                    let l = factors[i - 1]
                        .mul(&factors[i])
                        .exact_div(&g)
                        .unwrap()
                        .monic();
                    factors[i - 1] = g;
                    factors[i] = l;
                    changed = true;
                }
            }
        }
        factors
    }

    fn swap_rows_pm(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row_b -= q * row_a
    fn row_axpy_pm(&mut self, b: usize, q: &Poly, a: usize) {
        for c in 0..self.cols {
            let v = self.at(b, c).sub(&q.mul(self.at(a, c)));
            self.set(b, c, v);
        }
    }

    /// Determinant by cofactor expansion (matrices here stay tiny).
    pub fn determinant(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Poly::one(self.field);
        }
        if n == 1 {
            return self.at(0, 0).clone();
        }
        let mut det = Poly::zero(self.field);
        for c in 0..n {
            let a = self.at(0, c);
            if a.is_zero() {
                continue;
            }
            let mut minor = PolyMatrix::zero(self.field, n - 1, n - 1);
            for r in 1..n {
                let mut cc = 0;
                for c2 in 0..n {
                    if c2 == c {
                        continue;
                    }
                    minor.set(r - 1, cc, self.at(r, c2).clone());
                    cc += 1;
                }
            }
            let term = a.mul(&minor.determinant());
            det = if c % 2 == 0 {
                det.add(&term)
            } else {
                det.sub(&term)
            };
        }
        det
    }
}
