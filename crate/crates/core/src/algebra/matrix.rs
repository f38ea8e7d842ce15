use std::fmt;

use thiserror::Error;

use super::{rat, Field, MultiPoly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
}

/// Dense row-major matrix over a [`Ring`].
#[derive(Clone, PartialEq)]
pub struct RingMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RingMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        self.data
            .chunks(self.cols.max(1))
            .map(|c| c.to_vec())
            .collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> RingMatrix<S> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn plus(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.plus(b))
                .collect(),
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Square-matrix product, panicking on a size mismatch.
    pub fn matmul(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("matrix sizes agree")
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc.plus(self.get(i, i)))
    }

    /// Submatrix on the given (ordered) row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Determinant of the submatrix on `rows` x `cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> R {
        R::determinant(&self.submatrix(rows, cols))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn det(&self) -> Result<R, MatrixError> {
        det_fraction_free(self)
    }
}

impl<F: Field> RingMatrix<F> {
    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(MatrixError::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).inverse().ok_or(MatrixError::Singular)?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).times(&p));
                inv.set(col, j, inv.get(col, j).times(&p));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j).minus(&f.times(a.get(col, j))));
                    inv.set(r, j, inv.get(r, j).minus(&f.times(inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }
}

impl<R: Ring> RingMatrix<R> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<R: Ring> fmt::Debug for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RingMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant of a square matrix, dispatching on the entry ring.
pub fn det_fraction_free<R: Ring>(m: &RingMatrix<R>) -> Result<R, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(R::determinant(m))
}

/// Bareiss elimination with row pivoting. Every division is exact.
///
/// # Panics
/// If `m` is not square.
pub fn bareiss_det<R: Ring>(m: &RingMatrix<R>) -> R {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return R::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let mut v = a.get(i, j).times(&pivot);
                if !aik.is_zero() {
                    v = v.minus(&aik.times(a.get(k, j)));
                }
                let v = v.div_exact(&prev).expect("Bareiss step divides exactly");
                a.set(i, j, v);
            }
            a.set(i, k, R::zero());
        }
        prev = pivot;
    }
    let d = a.get(n - 1, n - 1).clone();
    if negate {
        d.negated()
    } else {
        d
    }
}

/// Laplace expansion along the first row. Exponential; test oracle only.
pub fn det_cofactor<R: Ring>(m: &RingMatrix<R>) -> R {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let cols: Vec<usize> = (0..m.cols).collect();
    cofactor_rec(m, 0, &cols)
}

fn cofactor_rec<R: Ring>(m: &RingMatrix<R>, row: usize, cols: &[usize]) -> R {
    if cols.is_empty() {
        return R::one();
    }
    let mut total = R::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.times(&cofactor_rec(m, row + 1, &rest));
        total = if idx % 2 == 0 {
            total.plus(&term)
        } else {
            total.minus(&term)
        };
    }
    total
}

/// Sylvester matrix of `p` and `q`, both given lowest-degree coefficient
/// first. Rows for `p` come first, so its determinant is `Res(p, q)`.
pub fn sylvester_matrix<R: Ring>(p: &[R], q: &[R]) -> RingMatrix<R> {
    let dp = p.len().saturating_sub(1);
    let dq = q.len().saturating_sub(1);
    let size = dp + dq;
    let mut s = RingMatrix::zeros(size, size);
    for r in 0..dq {
        for (i, c) in p.iter().rev().enumerate() {
            s.set(r, r + i, c.clone());
        }
    }
    for r in 0..dp {
        for (i, c) in q.iter().rev().enumerate() {
            s.set(dq + r, r + i, c.clone());
        }
    }
    s
}

/// `Q(x1) Q(x2) Q(x3)` where `x1, x2, x3` are the roots of
/// `λ³ − 3uλ² + 3vλ − 1`, with `u` as variable 0 and `v` as variable 1.
///
/// `q[i]` is the coefficient of `λ^i`.
pub fn product_over_char_roots(q: &[MultiPoly]) -> MultiPoly {
    let mut q: Vec<MultiPoly> = q.to_vec();
    while q.last().is_some_and(|c| c.is_zero()) {
        q.pop();
    }
    match q.len() {
        0 => MultiPoly::default(),
        1 => q[0].pow(3),
        _ => {
            let u = MultiPoly::var(0);
            let v = MultiPoly::var(1);
            let cubic = vec![
                MultiPoly::constant(rat(-1)),
                v.scale(&rat(3)),
                u.scale(&rat(-3)),
                MultiPoly::constant(rat(1)),
            ];
            bareiss_det(&sylvester_matrix(&cubic, &q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{ratio, Rational};
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn int_matrix(rows: Vec<Vec<i64>>) -> RingMatrix<Rational> {
        RingMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_and_small_dets() {
        let id = RingMatrix::<Rational>::identity(3);
        assert_eq!(det_fraction_free(&id).unwrap(), rat(1));
        let x = MultiPoly::var(0);
        let one = MultiPoly::constant(rat(1));
        let m = RingMatrix::from_rows(vec![
            vec![x.clone(), one.clone()],
            vec![one.clone(), x.clone()],
        ]);
        assert_eq!(det_fraction_free(&m).unwrap(), &x.pow(2) - &one);
        let bad = RingMatrix::<Rational>::zeros(2, 3);
        assert!(matches!(
            det_fraction_free(&bad),
            Err(MatrixError::NotSquare { .. })
        ));
    }

    #[test]
    fn pivoting_on_zero_diagonal() {
        let m = int_matrix(vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        assert_eq!(bareiss_det(&m), det_cofactor(&m));
        assert_eq!(bareiss_det(&m), rat(-2));
    }

    #[test]
    fn inverse_round_trip() {
        let m = int_matrix(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).is_identity());
        assert_eq!(inv.get(0, 0), &ratio(11, 18));
        let singular = int_matrix(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.inverse(), Err(MatrixError::Singular));
    }

    #[test]
    fn char_root_products() {
        let lam = |c: &[i64]| -> Vec<MultiPoly> {
            c.iter().map(|&v| MultiPoly::constant(rat(v))).collect()
        };
        assert_eq!(
            product_over_char_roots(&lam(&[0, 1])),
            MultiPoly::constant(rat(1))
        );
        let expect = MultiPoly::from_terms([
            (super::super::Monomial::one(), rat(2)),
            (super::super::Monomial::var(0, 1), rat(3)),
            (super::super::Monomial::var(1, 1), rat(3)),
        ]);
        assert_eq!(product_over_char_roots(&lam(&[1, 1])), expect);
        assert_eq!(
            product_over_char_roots(&lam(&[5])),
            MultiPoly::constant(rat(125))
        );
        assert!(product_over_char_roots(&lam(&[0, 0])).is_zero());
        assert_eq!(super::super::coefficient(&expect, &[1, 0]), rat(3));
    }

    #[test]
    fn integer_ring_determinant() {
        let m = RingMatrix::from_rows(vec![
            vec![BigInt::from(2), BigInt::from(7)],
            vec![BigInt::from(1), BigInt::from(8)],
        ]);
        assert_eq!(bareiss_det(&m), BigInt::from(9));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = RingMatrix<Rational>> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), n * n).prop_map(move |v| {
            RingMatrix::from_fn(n, n, |i, j| {
                let (a, b) = v[i * n + j];
                ratio(a, b)
            })
        })
    }

    fn small_poly_matrix(n: usize) -> impl Strategy<Value = RingMatrix<MultiPoly>> {
        proptest::collection::vec((-2i64..=2, -2i64..=2, 0usize..3), n * n).prop_map(move |v| {
            RingMatrix::from_fn(n, n, |i, j| {
                let (a, b, var) = v[i * n + j];
                &MultiPoly::constant(rat(a)) + &MultiPoly::var(var).scale(&rat(b))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bareiss_matches_cofactor(m in (1usize..=6).prop_flat_map(small_matrix)) {
            prop_assert_eq!(bareiss_det(&m), det_cofactor(&m));
        }

        #[test]
        fn poly_bareiss_matches_cofactor(m in (1usize..=4).prop_flat_map(small_poly_matrix)) {
            prop_assert_eq!(bareiss_det(&m), det_cofactor(&m));
        }

        #[test]
        fn det_is_multiplicative(a in small_matrix(4), b in small_matrix(4)) {
            let ab = a.matmul(&b);
            prop_assert_eq!(bareiss_det(&ab), bareiss_det(&a).times(&bareiss_det(&b)));
        }

        #[test]
        fn char_root_product_is_multiplicative(
            q1 in proptest::collection::vec(-3i64..=3, 1..4),
            q2 in proptest::collection::vec(-3i64..=3, 1..4),
        ) {
            let to_poly = |c: &[i64]| -> Vec<MultiPoly> {
                c.iter().map(|&v| MultiPoly::constant(rat(v))).collect()
            };
            let mut prod = vec![MultiPoly::default(); q1.len() + q2.len() - 1];
            for (i, a) in q1.iter().enumerate() {
                for (j, b) in q2.iter().enumerate() {
                    prod[i + j] = &prod[i + j] + &MultiPoly::constant(rat(a * b));
                }
            }
            let lhs = product_over_char_roots(&prod);
            let rhs = &product_over_char_roots(&to_poly(&q1)) * &product_over_char_roots(&to_poly(&q2));
            prop_assert_eq!(&lhs, &rhs);
            let q1_at_1: i64 = q1.iter().sum();
            prop_assert_eq!(
                product_over_char_roots(&to_poly(&q1)).eval(&[rat(1), rat(1)]),
                rat(q1_at_1.pow(3))
            );
        }
    }
}
