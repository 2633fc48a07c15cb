//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! kernels and presentations of quotient groups `Z^n / H`.
//!
//! Everything here works over `BigInt`; there are no tolerances.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds an `rows x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns<T: Clone + Into<BigInt>>(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &x[j]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= factor * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let d = &self[(source, j)] * factor;
            self[(target, j)] -= d;
        }
    }

    /// col[target] -= factor * col[source]
    fn col_axpy(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let d = &self[(i, source)] * factor;
            self[(i, target)] -= d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimensions");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * A = H`. `H` is in row echelon form, every pivot is positive and the
/// entries above a pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // Euclid on the column below pivot_row.
        loop {
            let best = (pivot_row..h.rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&i, &j| h[(i, col)].abs().cmp(&h[(j, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(best, pivot_row);
            u.swap_rows(best, pivot_row);
            let mut clean = true;
            for i in pivot_row + 1..h.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                h.row_axpy(i, pivot_row, &q);
                u.row_axpy(i, pivot_row, &q);
                if !h[(i, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
            h.row_axpy(i, pivot_row, &q);
            u.row_axpy(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Column-style Hermite form: returns `(H, V)` with `V` unimodular and
/// `A * V = H`. The nonzero columns of `H` come first, each has a positive
/// pivot strictly below the previous column's pivot and zeros above it.
pub fn column_hermite_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u) = hermite_normal_form(&a.transpose());
    (h.transpose(), u.transpose())
}

/// Pivot row indices of the nonzero columns of a column-style Hermite form.
pub fn column_pivots(h: &IntMatrix) -> Vec<usize> {
    (0..h.cols())
        .map_while(|j| (0..h.rows()).find(|&i| !h[(i, j)].is_zero()))
        .collect()
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ... | d_k`, all nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(i, t);
                    u.swap_rows(i, t);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(j, t);
                    v.swap_cols(j, t);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility condition on the trailing block
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    d.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, v, d }
}

/// A basis (as columns) of the integer kernel `{x : A x = 0}`, in canonical
/// Hermite form so the output depends only on the kernel lattice.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let (h, v) = column_hermite_form(a);
    let rank = column_pivots(&h).len();
    let k = v.cols() - rank;
    let mut basis = IntMatrix::zeros(a.cols(), k);
    for j in 0..k {
        for i in 0..a.cols() {
            basis[(i, j)] = v[(i, rank + j)].clone();
        }
    }
    if k == 0 {
        return basis;
    }
    let (canon, _) = hermite_normal_form(&basis.transpose());
    canon.transpose()
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let (h, w) = hermite_normal_form(u);
    debug_assert_eq!(h, IntMatrix::identity(u.rows()), "matrix is not unimodular");
    w
}

/// Canonical name of a coset `x + H` in `Z^n / H`.
///
/// `torsion[i]` is a residue in `[0, invariant_factors[i])`, `free` holds the
/// Smith coordinates along the free part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl CosetLabel {
    pub fn is_identity(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(Zero::is_zero)
    }
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        let z: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        write!(f, "({};{})", t.join(","), z.join(","))
    }
}

/// Presentation of `Z^n / H` for `H` spanned by the columns of
/// `sublattice_basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGroup {
    ambient_rank: usize,
    sublattice_basis: IntMatrix,
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    // rows of `smith_u` map x to Smith coordinates; the first `rank` of them are
    // reduced modulo the diagonal entries
    smith_u: IntMatrix,
    smith_u_inv: IntMatrix,
    diagonal: Vec<BigInt>,
}

pub fn quotient(ambient_rank: usize, sublattice_basis: &IntMatrix) -> Result<QuotientGroup, LinalgError> {
    if sublattice_basis.rows() != ambient_rank {
        return Err(LinalgError::DimensionMismatch {
            expected: ambient_rank,
            got: sublattice_basis.rows(),
        });
    }
    let snf = smith_normal_form(sublattice_basis);
    let diagonal: Vec<BigInt> = snf.diagonal().into_iter().filter(|d| !d.is_zero()).collect();
    let rank = diagonal.len();
    let invariant_factors = diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
    let smith_u_inv = unimodular_inverse(&snf.u);
    Ok(QuotientGroup {
        ambient_rank,
        sublattice_basis: sublattice_basis.clone(),
        free_rank: ambient_rank - rank,
        invariant_factors,
        smith_u: snf.u,
        smith_u_inv,
        diagonal,
    })
}

impl QuotientGroup {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn sublattice_basis(&self) -> &IntMatrix {
        &self.sublattice_basis
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }

    pub fn coset_label(&self, x: &[BigInt]) -> Result<CosetLabel, LinalgError> {
        if x.len() != self.ambient_rank {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_rank, got: x.len() });
        }
        let y = self.smith_u.mul_vec(x);
        let rank = self.diagonal.len();
        let torsion = self
            .diagonal
            .iter()
            .zip(&y)
            .filter(|(d, _)| !d.is_one())
            .map(|(d, yi)| yi.mod_floor(d))
            .collect();
        Ok(CosetLabel { torsion, free: y[rank..].to_vec() })
    }

    pub fn coset_label_i64(&self, x: &[i64]) -> Result<CosetLabel, LinalgError> {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.coset_label(&big)
    }

    /// A vector of `Z^n` whose coset has the given label.
    pub fn representative(&self, label: &CosetLabel) -> Vec<BigInt> {
        let mut torsion = label.torsion.iter();
        let mut y: Vec<BigInt> = self
            .diagonal
            .iter()
            .map(|d| if d.is_one() { BigInt::zero() } else { torsion.next().cloned().unwrap_or_default() })
            .collect();
        y.extend(label.free.iter().cloned());
        self.smith_u_inv.mul_vec(&y)
    }

    /// All labels with every free coordinate in `[-cap, cap]`, in label order.
    pub fn sample_labels(&self, cap: u32) -> Vec<CosetLabel> {
        let mut out = vec![CosetLabel { torsion: vec![], free: vec![] }];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for l in &out {
                let mut r = BigInt::zero();
                while &r < d {
                    let mut t = l.torsion.clone();
                    t.push(r.clone());
                    next.push(CosetLabel { torsion: t, free: vec![] });
                    r += 1;
                }
            }
            out = next;
        }
        for _ in 0..self.free_rank {
            let mut next = Vec::new();
            for l in &out {
                for z in -(cap as i64)..=(cap as i64) {
                    let mut f = l.free.clone();
                    f.push(BigInt::from(z));
                    next.push(CosetLabel { torsion: l.torsion.clone(), free: f });
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn is_unimodular(u: &IntMatrix) -> bool {
        u.determinant().abs().is_one()
    }

    #[test]
    fn hnf_identity() {
        let (h, u) = hermite_normal_form(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_pivots_of_example_one_generators() {
        let a = m(&[&[1, -1, 0, 0], &[0, 0, 1, -1]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(&u * &a, h);
        assert!(is_unimodular(&u));
        let pivots: Vec<usize> = (0..2).map(|i| (0..4).find(|&j| !h[(i, j)].is_zero()).unwrap()).collect();
        assert_eq!(pivots, vec![0, 2]);
    }

    #[test]
    fn column_form_of_single_column_is_itself() {
        let a = m(&[&[2], &[2]]);
        let (h, v) = column_hermite_form(&a);
        assert_eq!(h, a);
        assert_eq!(v, IntMatrix::identity(1));
        // the row-style form does reduce it
        let (hr, ur) = hermite_normal_form(&a);
        assert_eq!(hr, m(&[&[2], &[0]]));
        assert_eq!(&ur * &a, hr);
    }

    #[test]
    fn snf_small_cases() {
        assert_eq!(smith_normal_form(&m(&[&[8]])).d, m(&[&[8]]));
        assert_eq!(smith_normal_form(&m(&[&[2], &[2]])).diagonal(), vec![BigInt::from(2)]);
        assert_eq!(smith_normal_form(&IntMatrix::identity(2)).d, IntMatrix::identity(2));
        let s = smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.diagonal(), to_big(&[2, 6, 12]));
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel(&m(&[&[1, -1, 0, 0], &[0, 0, 1, -1]]));
        assert_eq!(k, IntMatrix::from_columns(4, &[vec![1i64, 1, 0, 0], vec![0, 0, 1, 1]]));
        assert_eq!(integer_kernel(&IntMatrix::identity(3)).cols(), 0);

        let a = m(&[&[1, 8, -1, -8]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 3);
        assert!((&a * &k).is_zero());
        // (8, 0, 0, 1) is in the kernel (8 - 8 = 0) and must lie in the returned lattice
        let q = quotient(4, &k).unwrap();
        assert!(q.coset_label_i64(&[8, 0, 0, 1]).unwrap().is_identity());
        assert!(q.coset_label_i64(&[1, 0, 1, 0]).unwrap().is_identity());
        assert!(q.invariant_factors().is_empty(), "kernel basis must be primitive");
    }

    #[test]
    fn quotient_examples() {
        let q = quotient(2, &m(&[&[2], &[2]])).unwrap();
        assert_eq!(q.free_rank(), 1);
        assert_eq!(q.invariant_factors(), &[BigInt::from(2)]);

        let q8 = quotient(1, &m(&[&[8]])).unwrap();
        assert_eq!(q8.free_rank(), 0);
        assert_eq!(q8.invariant_factors(), &[BigInt::from(8)]);
        assert_eq!(q8.order(), Some(BigInt::from(8)));

        let full = quotient(2, &IntMatrix::identity(2)).unwrap();
        assert!(full.is_trivial());
    }

    #[test]
    fn coset_labels() {
        let q8 = quotient(1, &m(&[&[8]])).unwrap();
        assert!(q8.coset_label_i64(&[0]).unwrap().is_identity());
        assert_eq!(q8.coset_label_i64(&[11]).unwrap(), q8.coset_label_i64(&[3]).unwrap());
        assert_ne!(q8.coset_label_i64(&[4]).unwrap(), q8.coset_label_i64(&[3]).unwrap());

        let q = quotient(2, &m(&[&[2], &[2]])).unwrap();
        assert_ne!(q.coset_label_i64(&[1, 1]).unwrap(), q.coset_label_i64(&[0, 0]).unwrap());
        assert_eq!(
            q.coset_label_i64(&[1, 0]),
            Ok(q.coset_label_i64(&[3, 2]).unwrap())
        );
        assert!(matches!(q.coset_label_i64(&[1]), Err(LinalgError::DimensionMismatch { expected: 2, got: 1 })));
    }

    #[test]
    fn representatives_round_trip() {
        let q = quotient(2, &m(&[&[2, 0], &[2, 1]])).unwrap();
        assert_eq!(q.order(), Some(BigInt::from(2)));
        let labels = q.sample_labels(0);
        assert_eq!(labels.len(), 2);
        for l in labels {
            assert_eq!(q.coset_label(&q.representative(&l)).unwrap(), l);
        }
        let z = quotient(2, &m(&[&[2], &[2]])).unwrap();
        let labels = z.sample_labels(2);
        assert_eq!(labels.len(), 10);
        for l in labels {
            assert_eq!(z.coset_label(&z.representative(&l)).unwrap(), l);
        }
    }

    #[test]
    fn empty_sublattice_gives_free_group() {
        let q = quotient(3, &IntMatrix::zeros(3, 0)).unwrap();
        assert_eq!(q.free_rank(), 3);
        assert!(q.invariant_factors().is_empty());
        assert_eq!(q.coset_label_i64(&[1, -2, 3]).unwrap().free.len(), 3);
    }
}
