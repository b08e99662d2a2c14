//! Suzuki groups `Sz(q)`, `q = 2^(2m+1)`, as 4-dimensional matrix groups
//! preserving the ovoid
//! `{(1, z, e, z e + z^(s+2) + e^s)} u {(0,0,0,1)}` where `s = 2^(m+1)`.

use std::sync::Arc;

use crate::algebra::{Elem, Field, Matrix};
use crate::error::{Error, Result};

pub struct Suzuki {
    field: Arc<Field>,
    /// The exponent `s` with `x -> x^s` squaring to the Frobenius.
    sigma: u64,
}

impl Suzuki {
    pub fn new(field: &Arc<Field>) -> Result<Suzuki> {
        let a = field.degree();
        if field.characteristic() != 2 || a % 2 == 0 || a < 3 {
            return Err(Error::Usage("Suzuki groups need GF(2^(2m+1)) with m >= 1".into()));
        }
        Ok(Suzuki { field: field.clone(), sigma: 1 << a.div_ceil(2) })
    }

    fn s(&self, x: Elem) -> Elem {
        self.field.pow(x, self.sigma)
    }

    fn last_coordinate(&self, z: Elem, e: Elem) -> Elem {
        let f = &self.field;
        let zs2 = f.mul(f.mul(self.s(z), z), z);
        f.add(f.add(f.mul(z, e), zs2), self.s(e))
    }

    /// Whether a normalized projective point lies on the ovoid.
    pub fn on_ovoid(&self, v: &[Elem]) -> bool {
        match v {
            [0, 0, 0, 1] => true,
            [1, z, e, t] => self.last_coordinate(*z, *e) == *t,
            _ => false,
        }
    }

    /// The unipotent element `S(alpha, beta)` mapping `(1,0,0,0)` to the
    /// ovoid point with parameters `(alpha, beta)`.
    pub fn unipotent(&self, alpha: Elem, beta: Elem) -> Matrix {
        let f = &self.field;
        let sa = self.s(alpha);
        let mut m = Matrix::identity(f, 4);
        m.set(0, 1, alpha);
        m.set(0, 2, beta);
        m.set(0, 3, self.last_coordinate(alpha, beta));
        m.set(1, 2, sa);
        m.set(1, 3, f.add(beta, f.mul(sa, alpha)));
        m.set(2, 3, alpha);
        m
    }

    /// `diag(1, k, k^(s+1), k^(s+2))`, rescaled to determinant one.
    pub fn torus(&self, k: Elem) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::zero(f, 4, 4);
        let sk = self.s(k);
        let mu = f.inv(f.pow(k, self.sigma / 2 + 1)).expect("nonzero torus parameter");
        m.set(0, 0, mu);
        m.set(1, 1, f.mul(mu, k));
        m.set(2, 2, f.mul(mu, f.mul(sk, k)));
        m.set(3, 3, f.mul(mu, f.mul(f.mul(sk, k), k)));
        m
    }

    /// The antidiagonal element swapping `(1,0,0,0)` and `(0,0,0,1)`.
    pub fn weyl(&self) -> Matrix {
        let mut m = Matrix::zero(&self.field, 4, 4);
        for i in 0..4 {
            m.set(i, 3 - i, 1);
        }
        m
    }

    pub fn sylow_generators(&self) -> Vec<Matrix> {
        let basis = self.field.additive_basis();
        let mut out: Vec<Matrix> = basis.iter().map(|&a| self.unipotent(a, 0)).collect();
        out.extend(self.centre_generators());
        out
    }

    /// Generators of `Z(P) = {S(0, beta)}`.
    pub fn centre_generators(&self) -> Vec<Matrix> {
        self.field.additive_basis().iter().map(|&b| self.unipotent(0, b)).collect()
    }

    pub fn generators(&self) -> Vec<Matrix> {
        let mut out = self.sylow_generators();
        out.push(self.torus(self.field.generator()));
        out.push(self.weyl());
        out
    }
}
