//! Classical forms in the reverse-diagonal basis `e_1..e_m, (middle), f_m..f_1`.
//! Basis position `k` is paired with position `N-1-k`.

use std::sync::Arc;

use serde::Serialize;

use super::field::{Elem, Field};
use super::matrix::Matrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormKind {
    Alternating,
    QuadraticPlus,
    QuadraticMinus,
    Hermitian,
}

#[derive(Clone, Debug)]
pub struct FormSpec {
    pub kind: FormKind,
    /// Gram matrix of the bilinear (or sesquilinear) form; for quadratic
    /// forms this is the polar form.
    pub gram: Matrix,
    /// Upper-triangular matrix `A` with `Q(v) = v A v^T`.
    pub quadratic: Option<Matrix>,
    /// For hermitian forms, `conj(x) = x^(p^conj_exp)`.
    pub conj_exp: u32,
}

impl FormSpec {
    fn field(&self) -> &Arc<Field> {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// Alternating form with `phi(e_k, f_k) = 1` and `phi(f_k, e_k) = -1`.
    pub fn alternating(field: &Arc<Field>, dim: usize) -> Result<FormSpec> {
        if dim % 2 != 0 || dim == 0 {
            return Err(Error::Domain("alternating forms need even positive dimension".into()));
        }
        let mut g = Matrix::zero(field, dim, dim);
        for k in 0..dim / 2 {
            g.set(k, dim - 1 - k, 1);
            g.set(dim - 1 - k, k, field.neg(1));
        }
        Ok(FormSpec { kind: FormKind::Alternating, gram: g, quadratic: None, conj_exp: 0 })
    }

    /// Hyperbolic quadratic form `Q(x) = sum_k x_k x_{N-1-k}`.
    pub fn quadratic_plus(field: &Arc<Field>, dim: usize) -> Result<FormSpec> {
        if dim % 2 != 0 || dim == 0 {
            return Err(Error::Domain("orthogonal forms need even positive dimension".into()));
        }
        let mut a = Matrix::zero(field, dim, dim);
        for k in 0..dim / 2 {
            a.set(k, dim - 1 - k, 1);
        }
        Ok(Self::from_quadratic(FormKind::QuadraticPlus, a))
    }

    /// Elliptic quadratic form: hyperbolic on `m = dim/2 - 1` pairs plus an
    /// anisotropic plane at positions `m, m+1` with `Q = x^2 + xy + alpha y^2`.
    pub fn quadratic_minus(field: &Arc<Field>, dim: usize) -> Result<FormSpec> {
        if dim % 2 != 0 || dim < 2 {
            return Err(Error::Domain("orthogonal forms need even positive dimension".into()));
        }
        let alpha = anisotropic_constant(field)?;
        let m = dim / 2 - 1;
        let mut a = Matrix::zero(field, dim, dim);
        for k in 0..m {
            a.set(k, dim - 1 - k, 1);
        }
        a.set(m, m, 1);
        a.set(m, m + 1, 1);
        a.set(m + 1, m + 1, alpha);
        Ok(Self::from_quadratic(FormKind::QuadraticMinus, a))
    }

    fn from_quadratic(kind: FormKind, a: Matrix) -> FormSpec {
        let gram = a.add(&a.transpose()).expect("same shape");
        FormSpec { kind, gram, quadratic: Some(a), conj_exp: 0 }
    }

    /// Hermitian form with reverse-diagonal unit Gram matrix over GF(q^2).
    pub fn hermitian(field: &Arc<Field>, dim: usize) -> Result<FormSpec> {
        if field.degree() % 2 != 0 {
            return Err(Error::Domain("hermitian forms need a field of square order".into()));
        }
        let mut g = Matrix::zero(field, dim, dim);
        for k in 0..dim {
            g.set(k, dim - 1 - k, 1);
        }
        Ok(FormSpec {
            kind: FormKind::Hermitian,
            gram: g,
            quadratic: None,
            conj_exp: field.degree() / 2,
        })
    }

    pub fn conj(&self, x: Elem) -> Elem {
        if self.kind == FormKind::Hermitian {
            let f = self.field();
            f.pow(x, (f.characteristic() as u64).pow(self.conj_exp))
        } else {
            x
        }
    }

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Usage(format!(
                "vector of length {} for a form of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// `B(u, v) = u G conj(v)^T`.
    pub fn eval(&self, u: &[Elem], v: &[Elem]) -> Result<Elem> {
        self.check_len(u)?;
        self.check_len(v)?;
        let f = self.field();
        let ug = self.gram.apply_row(u);
        Ok(ug.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, self.conj(b)))))
    }

    pub fn quad(&self, v: &[Elem]) -> Result<Elem> {
        self.check_len(v)?;
        let a = self
            .quadratic
            .as_ref()
            .ok_or_else(|| Error::Domain("form has no quadratic part".into()))?;
        let f = self.field();
        let va = a.apply_row(v);
        Ok(va.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
    }

    /// Whether `g` preserves the form (and the quadratic form, if any).
    pub fn is_isometry(&self, g: &Matrix) -> Result<bool> {
        if g.rows() != self.dim() || g.cols() != self.dim() {
            return Err(Error::Usage("matrix dimension does not match form".into()));
        }
        let gbar = if self.kind == FormKind::Hermitian {
            g.frobenius_power(self.conj_exp)
        } else {
            g.clone()
        };
        let lhs = g.mul(&self.gram)?.mul(&gbar.transpose())?;
        if lhs != self.gram {
            return Ok(false);
        }
        if self.quadratic.is_some() {
            for i in 0..self.dim() {
                let row = g.row(i).to_vec();
                let mut e = vec![0; self.dim()];
                e[i] = 1;
                if self.quad(&row)? != self.quad(&e)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Least `alpha` (by encoding) such that `x^2 + x + alpha` is irreducible.
pub fn anisotropic_constant(field: &Arc<Field>) -> Result<Elem> {
    for alpha in field.elements().skip(1) {
        let has_root = field
            .elements()
            .any(|x| field.add(field.add(field.mul(x, x), x), alpha) == 0);
        if !has_root {
            return Ok(alpha);
        }
    }
    Err(Error::Internal("no anisotropic constant found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_is_alternating() {
        for q in [2u64, 3, 4] {
            let f = Field::of_order(q).unwrap();
            let form = FormSpec::alternating(&f, 4).unwrap();
            let v = vec![1, f.generator(), 0, 1];
            assert_eq!(form.eval(&v, &v).unwrap(), 0);
        }
    }

    #[test]
    fn elliptic_plane_is_anisotropic() {
        let f = Field::of_order(4).unwrap();
        let form = FormSpec::quadratic_minus(&f, 2).unwrap();
        for x in f.elements() {
            for y in f.elements() {
                if (x, y) != (0, 0) {
                    assert_ne!(form.quad(&[x, y]).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn hermitian_conjugation_is_involutive() {
        let f = Field::of_order(16).unwrap();
        let form = FormSpec::hermitian(&f, 3).unwrap();
        for x in f.elements() {
            assert_eq!(form.conj(form.conj(x)), x);
        }
        assert!(FormSpec::hermitian(&Field::of_order(8).unwrap(), 3).is_err());
    }

    #[test]
    fn identity_is_isometry() {
        let f = Field::of_order(2).unwrap();
        let form = FormSpec::quadratic_plus(&f, 6).unwrap();
        assert!(form.is_isometry(&Matrix::identity(&f, 6)).unwrap());
        let swap = Matrix::from_rows(&f, &[vec![0, 1], vec![1, 0]]).unwrap();
        let plane = FormSpec::quadratic_plus(&f, 2).unwrap();
        assert!(plane.is_isometry(&swap).unwrap());
    }

    #[test]
    fn wrong_length_is_usage_error() {
        let f = Field::of_order(2).unwrap();
        let form = FormSpec::alternating(&f, 4).unwrap();
        assert!(matches!(form.eval(&[1, 0], &[0, 1]), Err(Error::Usage(_))));
    }
}
