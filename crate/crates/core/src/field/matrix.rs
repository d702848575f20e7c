//! Dense matrices over a [`FieldSpec`] with exact elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Poly, RatFunc, ZPoly};
use super::{Elem, FieldSpec};
use crate::error::{Error, Result};
use crate::trop::TropVal;

/// Row-major matrix whose entries all belong to one field.
///
/// Columns are the covectors of the surrounding code: a matrix with `r+1`
/// rows and `n+1` columns lists `n+1` covectors on `K^{r+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn new(spec: FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension { expected: rows * cols, found: data.len() });
        }
        for x in &data {
            spec.check(x)?;
        }
        Ok(Mat { spec, rows, cols, data })
    }

    /// Builds a matrix from its columns; all columns must have `rows` entries.
    pub fn from_columns(spec: FieldSpec, rows: usize, columns: Vec<Vec<Elem>>) -> Result<Self> {
        let cols = columns.len();
        let mut data = vec![Elem::zero(); rows * cols];
        for (j, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension { expected: rows, found: col.len() });
            }
            for (i, x) in col.into_iter().enumerate() {
                data[i * cols + j] = x;
            }
        }
        Self::new(spec, rows, cols, data)
    }

    pub fn from_int_columns(spec: FieldSpec, columns: &[&[i64]]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.len());
        let cols = columns.iter().map(|c| c.iter().map(|&x| Elem::int(x)).collect()).collect();
        Self::from_columns(spec, rows, cols)
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut data = vec![Elem::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Elem::one();
        }
        Mat { spec, rows: n, cols: n, data }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&j| self.is_zero_column(j)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let cols = idx.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(self.spec, self.rows, cols).expect("columns of a valid matrix")
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hcat(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::Dimension { expected: self.rows, found: other.rows });
        }
        if self.spec != other.spec {
            return Err(Error::FieldMismatch(other.spec.to_string()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(self.spec, self.rows, cols)
    }

    pub fn with_column_replaced(&self, j: usize, f: &[Elem]) -> Result<Mat> {
        if f.len() != self.rows {
            return Err(Error::Dimension { expected: self.rows, found: f.len() });
        }
        let mut m = self.clone();
        for (i, x) in f.iter().enumerate() {
            self.spec.check(x)?;
            m.data[i * m.cols + j] = x.clone();
        }
        Ok(m)
    }

    /// Multiplies column `j` by `c`.
    pub fn scale_column(&self, j: usize, c: &Elem) -> Mat {
        let mut m = self.clone();
        for i in 0..m.rows {
            let idx = i * m.cols + j;
            m.data[idx] = &m.data[idx] * c;
        }
        m
    }

    pub fn mul_vec(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.cols {
            return Err(Error::Dimension { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Elem::zero();
                for (j, xj) in x.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !xj.is_zero() {
                        acc = &acc + &(a * xj);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, found: other.rows });
        }
        let cols = other.columns().iter().map(|c| self.mul_vec(c)).collect::<Result<Vec<_>>>()?;
        Self::from_columns(self.spec, self.rows, cols)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Over ℚ(t) each column is first cleared of denominators so that the
    /// elimination runs in ℚ[t] with exact polynomial division.
    pub fn det(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::Dimension { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Elem::one());
        }
        let all_rational = self.data.iter().all(|x| matches!(x, Elem::Rat(_)));
        if all_rational {
            let a = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match self.get(i, j) {
                            Elem::Rat(q) => q.clone(),
                            Elem::Func(_) => unreachable!(),
                        })
                        .collect()
                })
                .collect();
            return Ok(Elem::Rat(bareiss_det(a)));
        }
        let mut scale = Poly::one();
        let mut a: Vec<Vec<ZPoly>> = vec![Vec::with_capacity(n); n];
        for j in 0..n {
            let (m, col) = integer_multiple(&self.column(j));
            for (i, z) in col.into_iter().enumerate() {
                a[i].push(z);
            }
            scale = scale.mul(&m);
        }
        let d = bareiss_det(a).to_poly();
        Ok(Elem::from_func(RatFunc::new(d, scale)))
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.row_vectors();
        if a.iter().flatten().all(|x| matches!(x, Elem::Rat(_))) {
            return row_reduce_field(&mut a, self.cols).len();
        }
        bareiss_gauss_jordan(&mut integer_rows(&a), self.cols).0.len()
    }

    /// Solves `self · λ = f` for a matrix with independent columns and `f`
    /// in their span.
    pub fn solve(&self, f: &[Elem]) -> Result<Vec<Elem>> {
        if f.len() != self.rows {
            return Err(Error::Dimension { expected: self.rows, found: f.len() });
        }
        let mut a: Vec<Vec<Elem>> = (0..self.rows)
            .map(|i| {
                let mut row: Vec<Elem> = (0..self.cols).map(|j| self.get(i, j).clone()).collect();
                row.push(f[i].clone());
                row
            })
            .collect();
        let pivots = row_reduce(&mut a, self.cols);
        if pivots.len() < self.cols {
            return Err(Error::Singular);
        }
        // A pivot in the augmented column would mean f is outside the span;
        // row_reduce only pivots within the first `cols` columns, so check the
        // leftover rows instead.
        if a[pivots.len()..].iter().any(|row| !row[self.cols].is_zero()) {
            return Err(Error::Singular);
        }
        let mut x = vec![Elem::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = a[r][self.cols].clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Dimension { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut row: Vec<Elem> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| if i == j { Elem::one() } else { Elem::zero() }));
                row
            })
            .collect();
        let pivots = row_reduce(&mut a, n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        let data = a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Ok(Mat { spec: self.spec, rows: n, cols: n, data })
    }

    /// Minimal valuation over all entries.
    pub fn min_valuation(&self) -> TropVal {
        self.data.iter().map(|x| self.spec.valuation(x)).min().unwrap_or(TropVal::Inf)
    }

    fn row_vectors(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }
}

/// The valuations of the entries of `M·x` for a fixed `M`.
///
/// Over ℚ(t) the rows of `M` are kept as integer polynomials with a common
/// multiplier, so the entries of `M·x` are never brought to lowest terms.
pub struct RowValuations {
    spec: FieldSpec,
    rows: Rows,
}

enum Rows {
    Field(Mat),
    /// `(ord_t m_i, m_i·row_i)`.
    Integer(Vec<(i64, Vec<ZPoly>)>),
}

impl RowValuations {
    pub fn new(m: &Mat) -> Self {
        let rows = if m.data.iter().all(|x| matches!(x, Elem::Rat(_))) {
            Rows::Field(m.clone())
        } else {
            Rows::Integer(
                m.row_vectors()
                    .iter()
                    .map(|row| {
                        let (mult, z) = integer_multiple(row);
                        (mult.ord_t().expect("nonzero multiplier") as i64, z)
                    })
                    .collect(),
            )
        };
        RowValuations { spec: m.spec, rows }
    }

    pub fn apply(&self, x: &[Elem]) -> Result<Vec<TropVal>> {
        match &self.rows {
            Rows::Field(m) => Ok(m.mul_vec(x)?.iter().map(|y| self.spec.valuation(y)).collect()),
            Rows::Integer(rows) => {
                let width = rows.first().map_or(0, |r| r.1.len());
                if x.len() != width {
                    return Err(Error::Dimension { expected: width, found: x.len() });
                }
                let (mx, zx) = integer_multiple(x);
                let shift = mx.ord_t().expect("nonzero multiplier") as i64;
                Ok(rows
                    .iter()
                    .map(|(k, row)| {
                        let s = row.iter().zip(&zx).fold(ZPoly::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
                        match s.ord_t() {
                            None => TropVal::Inf,
                            Some(o) => TropVal::int(o as i64 - k - shift),
                        }
                    })
                    .collect())
            }
        }
    }
}

/// Reduced row echelon form restricted to the first `width` columns.
/// Returns the pivot columns; pivot rows come first.
fn row_reduce(a: &mut [Vec<Elem>], width: usize) -> Vec<usize> {
    if a.iter().flatten().all(|x| matches!(x, Elem::Rat(_))) {
        return row_reduce_field(a, width);
    }
    // Over ℚ(t) normalizing every intermediate entry costs a polynomial gcd;
    // eliminate fraction-free in ℚ[t] instead and divide once at the end.
    let mut z = integer_rows(a);
    let (pivots, d) = bareiss_gauss_jordan(&mut z, width);
    let dp = d.to_poly();
    for (row, zrow) in a.iter_mut().zip(z) {
        for (x, y) in row.iter_mut().zip(zrow) {
            *x = if y.is_zero() {
                Elem::zero()
            } else if y == d {
                Elem::one()
            } else {
                Elem::from_func(RatFunc::new(y.to_poly(), dp.clone()))
            };
        }
    }
    pivots
}

/// `(m, z)` with `z_i = m·f_i` in ℤ[t] for a common nonzero multiplier `m`.
fn integer_multiple(f: &[Elem]) -> (Poly, Vec<ZPoly>) {
    let funcs: Vec<RatFunc> = f
        .iter()
        .map(|x| match x {
            Elem::Rat(q) => RatFunc::constant(q.clone()),
            Elem::Func(f) => f.clone(),
        })
        .collect();
    let l = funcs.iter().fold(Poly::one(), |acc, f| if f.den().is_one() { acc } else { acc.lcm(f.den()) });
    let polys: Vec<Poly> =
        funcs.iter().map(|f| if f.is_zero() { Poly::zero() } else { f.num().mul(&l.div_exact(f.den())) }).collect();
    let c = polys.iter().map(|p| ZPoly::from_poly(p).0).fold(BigInt::one(), |acc, c| acc.lcm(&c));
    let z = polys.iter().map(|p| ZPoly::from_poly(&p.scale(&BigRational::from_integer(c.clone()))).1).collect();
    (l.scale(&BigRational::from_integer(c)), z)
}

/// Each row cleared of denominators. Row scaling changes neither the row
/// space nor the reduced echelon form.
fn integer_rows(a: &[Vec<Elem>]) -> Vec<Vec<ZPoly>> {
    a.iter().map(|row| integer_multiple(row).1).collect()
}

/// Fraction-free Gauss–Jordan elimination on the first `width` columns.
/// Afterwards every pivot equals the returned `d`, so the reduced echelon
/// form is the matrix divided by `d`.
fn bareiss_gauss_jordan<T: Domain>(a: &mut [Vec<T>], width: usize) -> (Vec<usize>, T) {
    let mut prev = T::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let pivot_row = a[row].clone();
        let pv = &pivot_row[col];
        for (i, other) in a.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = other[col].clone();
            for (j, x) in other.iter_mut().enumerate() {
                if j == col {
                    continue;
                }
                let t = x.mul(pv);
                let t = if factor.is_zero() || pivot_row[j].is_zero() { t } else { t.sub(&factor.mul(&pivot_row[j])) };
                *x = if t.is_zero() { t } else { t.div_exact(&prev) };
            }
            other[col] = T::zero();
        }
        prev = pv.clone();
        pivots.push(col);
        row += 1;
    }
    (pivots, prev)
}

fn row_reduce_field(a: &mut [Vec<Elem>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        if !inv.is_one() {
            for x in a[row].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = a[row].clone();
        for (i, other) in a.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, y) in other.iter_mut().zip(pivot_row.iter()) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Integral domain operations needed by Bareiss elimination.
trait Domain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
}

impl Domain for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

impl Domain for ZPoly {
    fn zero() -> Self {
        ZPoly::zero()
    }
    fn one() -> Self {
        ZPoly::one()
    }
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        ZPoly::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        ZPoly::sub(self, other)
    }
    fn neg(&self) -> Self {
        ZPoly::neg(self)
    }
    fn div_exact(&self, other: &Self) -> Self {
        ZPoly::div_exact(self, other)
    }
}

fn bareiss_det<T: Domain>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return T::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    if negate { prev.neg() } else { prev }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for j in 0..self.cols {
            if j > 0 {
                write!(f, "; ")?;
            }
            write!(f, "(")?;
            for i in 0..self.rows {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}
