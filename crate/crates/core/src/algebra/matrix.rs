//! Dense matrices over a [`Field`]. Vectors are rows and matrices act on the
//! right, so row `i` of `M` is the image of the `i`-th basis vector.

use std::fmt;
use std::sync::Arc;

use super::field::{Elem, Field};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Matrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && *self.field == *other.field
    }
}
impl Eq for Matrix {}

impl std::hash::Hash for Matrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl Matrix {
    pub fn new(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Domain(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|&x| x as u32 >= field.order()) {
            return Err(Error::Domain("matrix entry outside the field".into()));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Domain("ragged matrix rows".into()));
        }
        Matrix::new(field, r, c, rows.concat())
    }

    pub fn zero(field: &Arc<Field>, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
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
    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::Domain("matrices over different fields".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Usage(format!(
                "dimension mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.data[i * other.cols + j];
                        out.data[i * other.cols + j] = f.add(cur, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Usage("dimension mismatch in addition".into()));
        }
        let data =
            self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, s: Elem) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Applies `x -> x^(p^k)` entrywise.
    pub fn frobenius_power(&self, k: u32) -> Matrix {
        let e = (self.field.characteristic() as u64).pow(k);
        let data = self.data.iter().map(|&a| self.field.pow(a, e)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { 1 } else { 0 })
            })
    }

    /// The scalar `c` when the matrix equals `c * I`.
    pub fn scalar_value(&self) -> Option<Elem> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        let ok = (0..self.rows)
            .all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { c } else { 0 }));
        ok.then_some(c)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = self.row(i);
            for (o, &b) in out.iter_mut().zip(row) {
                if b != 0 {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Domain("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    fn gf2_packable(&self) -> bool {
        self.field.order() == 2 && self.cols <= 64
    }

    fn gf2_rows(&self) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &x)| acc | ((x as u64) << j))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        if self.gf2_packable() {
            return gf2_rank(self.gf2_rows());
        }
        let (_, rank, _) = self.echelon();
        rank
    }

    /// Reduced row echelon form, rank, and pivot columns.
    pub fn echelon(&self) -> (Matrix, usize, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(r, piv);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in 0..m.cols {
                    let v = f.add(m.get(i, j), f.mul(nf, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Domain("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if self.gf2_packable() {
            let inv = gf2_inverse(self.gf2_rows(), n)
                .ok_or_else(|| Error::Domain("matrix is singular".into()))?;
            let mut out = Matrix::zero(&self.field, n, n);
            for (i, row) in inv.iter().enumerate() {
                for j in 0..n {
                    out.set(i, j, ((row >> j) & 1) as Elem);
                }
            }
            return Ok(out);
        }
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, _, pivots) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Domain("matrix is singular".into()));
        }
        let mut out = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.get(i, n + j));
            }
        }
        Ok(out)
    }

    pub fn determinant(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::Domain("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c) != 0) else { return Ok(0) };
            if piv != c {
                m.swap_rows(c, piv);
                det = f.neg(det);
            }
            let p = m.get(c, c);
            det = f.mul(det, p);
            let inv = f.inv(p)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..n {
                    let v = f.add(m.get(i, j), f.mul(nf, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Basis of the left null space `{ v : v M = 0 }`.
    pub fn left_nullspace(&self) -> Vec<Vec<Elem>> {
        self.transpose().right_nullspace()
    }

    /// Basis of the right null space `{ v : M v^T = 0 }`.
    pub fn right_nullspace(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let (red, rank, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(red.get(r, fc));
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical byte encoding: rows and columns as little-endian u32,
    /// followed by the entries as little-endian u16 in row-major order.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 2 * self.data.len());
        out.extend_from_slice(&(self.rows as u32).to_le_bytes());
        out.extend_from_slice(&(self.cols as u32).to_le_bytes());
        for &x in &self.data {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }
}

/// Jordan block structure of a unipotent matrix as (block size,
/// multiplicity) pairs, largest blocks first.
pub fn jordan_profile(t: &Matrix) -> Result<Vec<(usize, usize)>> {
    if !t.is_square() {
        return Err(Error::Domain("Jordan profile of a non-square matrix".into()));
    }
    let n = t.rows();
    let nil = t.sub(&Matrix::identity(t.field(), n))?;
    // ranks[k] = rank((t - 1)^k)
    let mut ranks = vec![n];
    let mut power = Matrix::identity(t.field(), n);
    loop {
        power = power.mul(&nil)?;
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
        if ranks.len() > n + 1 || r == ranks[ranks.len() - 2] {
            return Err(Error::Domain("matrix is not unipotent".into()));
        }
    }
    // Blocks of size >= k number ranks[k-1] - ranks[k].
    let at_least: Vec<usize> = (1..ranks.len()).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut out = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let bigger = if k < at_least.len() { at_least[k] } else { 0 };
        let m = at_least[k - 1] - bigger;
        if m > 0 {
            out.push((k, m));
        }
    }
    Ok(out)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.field.format(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Rank of a GF(2) matrix given as bit-packed rows.
pub fn gf2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let mask = 1u64 << bit;
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] & mask != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r & mask != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn gf2_inverse(mut rows: Vec<u64>, n: usize) -> Option<Vec<u64>> {
    let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for c in 0..n {
        let mask = 1u64 << c;
        let p = (c..n).find(|&i| rows[i] & mask != 0)?;
        rows.swap(c, p);
        inv.swap(c, p);
        for i in 0..n {
            if i != c && rows[i] & mask != 0 {
                rows[i] ^= rows[c];
                inv[i] ^= inv[c];
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Arc<Field> {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn inverse_roundtrip_gf2_and_gf9() {
        for q in [2, 9] {
            let f = gf(q);
            let g = f.generator();
            let m = Matrix::from_rows(&f, &[vec![1, g, 0], vec![0, 1, 1], vec![g, 0, 1]]).unwrap();
            if m.determinant().unwrap() != 0 {
                let inv = m.inverse().unwrap();
                assert!(m.mul(&inv).unwrap().is_identity());
                assert!(inv.mul(&m).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn gf2_packed_rank_matches_generic() {
        let f = gf(2);
        let rows = vec![vec![1, 1, 0, 1], vec![0, 1, 1, 0], vec![1, 0, 1, 1], vec![1, 1, 1, 1]];
        let m = Matrix::from_rows(&f, &rows).unwrap();
        let (_, generic, _) = m.echelon();
        assert_eq!(m.rank(), generic);
        assert_eq!(generic, 3);
    }

    #[test]
    fn singular_inverse_is_domain_error() {
        let f = gf(4);
        let m = Matrix::from_rows(&f, &[vec![1, 2], vec![2, f.mul(2, 2)]]).unwrap();
        assert!(matches!(m.inverse(), Err(Error::Domain(_))));
        let f2 = gf(2);
        let m2 = Matrix::from_rows(&f2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(m2.inverse(), Err(Error::Domain(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let f = gf(3);
        let a = Matrix::zero(&f, 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::Usage(_))));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = gf(5);
        let m = Matrix::from_rows(&f, &[vec![1, 2, 3, 4], vec![2, 4, 1, 3]]).unwrap();
        for v in m.right_nullspace() {
            let mt = m.transpose();
            assert!(mt.apply_row(&v).iter().all(|&x| x == 0));
        }
        assert_eq!(m.right_nullspace().len(), 4 - m.rank());
    }

    #[test]
    fn jordan_profiles() {
        let f = gf(2);
        assert_eq!(jordan_profile(&Matrix::identity(&f, 6)).unwrap(), vec![(1, 6)]);
        let mut t = Matrix::identity(&f, 6);
        for i in 0..3 {
            t.set(i, 5 - i, 1);
        }
        assert_eq!(jordan_profile(&t).unwrap(), vec![(2, 3)]);
        let mut u = Matrix::identity(&f, 3);
        u.set(0, 1, 1);
        u.set(1, 2, 1);
        assert_eq!(jordan_profile(&u).unwrap(), vec![(3, 1)]);
        let swap = Matrix::from_rows(&gf(3), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(jordan_profile(&swap), Err(Error::Domain(_))));
    }

    #[test]
    fn product_shape() {
        let f = gf(7);
        let (a, b) = (3, 5);
        let upper = Matrix::from_rows(&f, &[vec![1, a], vec![0, 1]]).unwrap();
        let lower = Matrix::from_rows(&f, &[vec![1, 0], vec![b, 1]]).unwrap();
        let p = upper.mul(&lower).unwrap();
        let expect = Matrix::from_rows(&f, &[vec![f.add(1, f.mul(a, b)), a], vec![b, 1]]).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn encoding_prefix_is_dimensions() {
        let f = gf(2);
        let m = Matrix::identity(&f, 2);
        assert_eq!(m.encode(), vec![2, 0, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0]);
    }
}
