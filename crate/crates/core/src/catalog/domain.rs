//! Point domains for matrix groups: projective points (optionally restricted
//! to an invariant subset) or nonzero vectors. Matrices are turned into
//! permutations of the domain, and permutations back into matrices using a
//! frame of points in general position.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Elem, Field, Matrix, Perm};
use crate::error::{Error, Result};

/// Largest domain the catalog will build.
pub const MAX_DOMAIN: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    /// One-dimensional subspaces; scalars act trivially.
    Projective,
    /// Nonzero vectors; faithful for every linear group.
    Vectors,
}

pub struct PointDomain {
    field: Arc<Field>,
    dim: usize,
    kind: DomainKind,
    /// Point `i` occupies `coords[i*dim..(i+1)*dim]`, normalized.
    coords: Vec<Elem>,
    index: HashMap<Vec<Elem>, u32>,
    /// Indices of basis points, and of a point with all coordinates nonzero
    /// with respect to them.
    frame: Vec<u32>,
    frame_inv: Matrix,
    unit_coeffs: Vec<Elem>,
}

impl PointDomain {
    /// All points of the given kind satisfying `keep`.
    pub fn build(
        field: &Arc<Field>,
        dim: usize,
        kind: DomainKind,
        keep: impl Fn(&[Elem]) -> bool,
    ) -> Result<PointDomain> {
        let q = field.order() as u64;
        let total = q.checked_pow(dim as u32).map(|t| t - 1);
        let bound = match (total, kind) {
            (Some(t), DomainKind::Projective) => t / (q - 1),
            (Some(t), DomainKind::Vectors) => t,
            (None, _) => u64::MAX,
        };
        if bound > MAX_DOMAIN as u64 * 4 {
            return Err(Error::Usage(format!(
                "natural module of dimension {dim} over GF({q}) exceeds the domain bound"
            )));
        }
        let mut coords = Vec::new();
        let mut index = HashMap::new();
        let mut v = vec![0 as Elem; dim];
        // Odometer over all vectors, last coordinate fastest.
        loop {
            let mut i = dim;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if (v[i] as u32) + 1 < field.order() {
                    v[i] += 1;
                    break;
                }
                v[i] = 0;
            }
            if v.iter().all(|&x| x == 0) {
                break;
            }
            let normal = kind == DomainKind::Vectors || v.iter().find(|&&x| x != 0) == Some(&1);
            if normal && keep(&v) {
                if index.len() >= MAX_DOMAIN {
                    return Err(Error::Usage(format!("point domain exceeds {MAX_DOMAIN} points")));
                }
                index.insert(v.clone(), index.len() as u32);
                coords.extend_from_slice(&v);
            }
        }
        let mut d = PointDomain {
            field: field.clone(),
            dim,
            kind,
            coords,
            index,
            frame: Vec::new(),
            frame_inv: Matrix::identity(field, dim),
            unit_coeffs: vec![1; dim],
        };
        d.find_frame()?;
        Ok(d)
    }

    fn find_frame(&mut self) -> Result<()> {
        let f = self.field.clone();
        if self.kind == DomainKind::Vectors {
            // The standard basis vectors are always present.
            for i in 0..self.dim {
                let mut e = vec![0; self.dim];
                e[i] = 1;
                let idx = self.lookup(&e).ok_or_else(|| {
                    Error::Construction("vector domain lacks a standard basis vector".into())
                })?;
                self.frame.push(idx);
            }
            return Ok(());
        }
        let n = self.len();
        // Greedy bases starting at several offsets; the first one admitting a
        // unit point wins.
        for start in [0, n / 3, n / 2, 2 * n / 3, n / 7, 5 * n / 7] {
            let mut basis: Vec<u32> = Vec::new();
            let mut rows: Vec<Vec<Elem>> = Vec::new();
            for k in 0..n {
                let i = (start + k) % n;
                let mut trial = rows.clone();
                trial.push(self.point(i).to_vec());
                if Matrix::from_rows(&f, &trial)?.rank() == trial.len() {
                    rows = trial;
                    basis.push(i as u32);
                    if rows.len() == self.dim {
                        break;
                    }
                }
            }
            if rows.len() < self.dim {
                return Err(Error::Construction("domain points do not span the module".into()));
            }
            let b = Matrix::from_rows(&f, &rows)?;
            let binv = b.inverse()?;
            for i in 0..n {
                // Coordinates with respect to the basis: point = c B.
                let c = binv.apply_row(self.point(i));
                if c.iter().all(|&x| x != 0) {
                    basis.push(i as u32);
                    self.frame = basis;
                    self.frame_inv = binv;
                    self.unit_coeffs = c;
                    return Ok(());
                }
            }
        }
        Err(Error::Construction("no frame of points in general position".into()))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn kind(&self) -> DomainKind {
        self.kind
    }
    pub fn len(&self) -> usize {
        self.index.len()
    }
    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
    pub fn point(&self, i: usize) -> &[Elem] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    fn normalize(&self, v: &mut [Elem]) {
        if self.kind == DomainKind::Projective {
            if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                let inv = self.field.inv(lead).expect("nonzero");
                for x in v.iter_mut() {
                    *x = self.field.mul(*x, inv);
                }
            }
        }
    }

    /// Index of the point spanned by (or equal to) `v`.
    pub fn lookup(&self, v: &[Elem]) -> Option<u32> {
        let mut w = v.to_vec();
        self.normalize(&mut w);
        self.index.get(&w).copied()
    }

    /// The permutation induced by `m`; fails if the domain is not invariant.
    pub fn perm_of(&self, m: &Matrix) -> Result<Perm> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Usage("matrix dimension does not match the domain".into()));
        }
        let mut images = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let w = m.apply_row(self.point(i));
            let j = self.lookup(&w).ok_or_else(|| {
                Error::Construction("matrix does not preserve the point domain".into())
            })?;
            images.push(j);
        }
        Perm::from_images(images)
    }

    /// A matrix inducing `g`, determined up to a scalar on projective domains.
    pub fn matrix_of(&self, g: &Perm) -> Result<Matrix> {
        if g.degree() != self.len() {
            return Err(Error::Usage("permutation degree does not match the domain".into()));
        }
        let f = &self.field;
        if self.kind == DomainKind::Vectors {
            let rows: Vec<Vec<Elem>> =
                self.frame.iter().map(|&i| self.point(g.apply(i) as usize).to_vec()).collect();
            return Matrix::from_rows(f, &rows);
        }
        let n = self.dim;
        let images: Vec<Vec<Elem>> =
            self.frame[..n].iter().map(|&i| self.point(g.apply(i) as usize).to_vec()).collect();
        let v = Matrix::from_rows(f, &images)?;
        let vinv = v.inverse().map_err(|_| {
            Error::Construction("permutation does not come from a linear map".into())
        })?;
        let unit_image = self.point(g.apply(self.frame[n]) as usize);
        let y = vinv.apply_row(unit_image);
        // b_i M = mu_i v_i with sum c_i mu_i v_i = unit image.
        let mut scaled = Matrix::zero(f, n, n);
        for i in 0..n {
            let mu = f.div(y[i], self.unit_coeffs[i])?;
            for j in 0..n {
                scaled.set(i, j, f.mul(mu, images[i][j]));
            }
        }
        let m = self.frame_inv.mul(&scaled)?;
        if self.perm_of(&m)? != *g {
            return Err(Error::Construction("permutation does not come from a linear map".into()));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane_over_gf2() {
        let f = Field::of_order(2).unwrap();
        let d = PointDomain::build(&f, 3, DomainKind::Projective, |_| true).unwrap();
        assert_eq!(d.len(), 7);
        let m = Matrix::from_rows(&f, &[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        let p = d.perm_of(&m).unwrap();
        assert_eq!(d.matrix_of(&p).unwrap(), m);
    }

    #[test]
    fn frame_recovers_matrices_up_to_scalars() {
        let f = Field::of_order(4).unwrap();
        let d = PointDomain::build(&f, 3, DomainKind::Projective, |_| true).unwrap();
        assert_eq!(d.len(), 21);
        let w = f.generator();
        let m = Matrix::from_rows(&f, &[vec![w, 1, 0], vec![0, 1, w], vec![1, 0, w]]).unwrap();
        let p = d.perm_of(&m).unwrap();
        let r = d.matrix_of(&p).unwrap();
        let ratio = f.div(r.get(0, 0), m.get(0, 0)).unwrap();
        assert_eq!(r, m.scale(ratio));
    }

    #[test]
    fn vector_domain_is_faithful() {
        let f = Field::of_order(3).unwrap();
        let d = PointDomain::build(&f, 2, DomainKind::Vectors, |_| true).unwrap();
        assert_eq!(d.len(), 8);
        let minus = Matrix::identity(&f, 2).scale(f.neg(1));
        let p = d.perm_of(&minus).unwrap();
        assert!(!p.is_identity());
        assert_eq!(d.matrix_of(&p).unwrap(), minus);
    }
}
