//! Matrix generators for the classical families in the reverse-diagonal
//! basis. Positions `k` and `N-1-k` form a hyperbolic pair `(e_k, f_k)`.

use std::collections::HashSet;
use std::sync::Arc;

use super::spec::Family;
use crate::algebra::{Elem, Field, FormKind, FormSpec, Matrix};
use crate::error::{Error, Result};

pub fn unit(dim: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn scaled(f: &Field, v: &[Elem], s: Elem) -> Vec<Elem> {
    v.iter().map(|&x| f.mul(x, s)).collect()
}

/// The isometry determined by a singular vector `u`, a vector `a` orthogonal
/// to `u`, and (for alternating and hermitian forms) a scalar `c`:
///
/// * alternating: `x -> x + (x,u)a + (x,a)u + c(x,u)u`
/// * quadratic:   `x -> x + (x,u)a - (x,a)u - Q(a)(x,u)u`
/// * hermitian:   `x -> x + (x,u)a - (x,a)u + c(x,u)u`, with `c + c^q = -(a,a)`
pub fn eichler(form: &FormSpec, u: &[Elem], a: &[Elem], c: Elem) -> Result<Matrix> {
    let f = form.gram.field().clone();
    let n = form.dim();
    let qa = match form.kind {
        FormKind::QuadraticPlus | FormKind::QuadraticMinus => form.quad(a)?,
        _ => 0,
    };
    let mut m = Matrix::identity(&f, n);
    for i in 0..n {
        let x = unit(n, i);
        let xu = form.eval(&x, u)?;
        let xa = form.eval(&x, a)?;
        let (ca, cu) = match form.kind {
            FormKind::Alternating => (xu, f.add(xa, f.mul(c, xu))),
            FormKind::QuadraticPlus | FormKind::QuadraticMinus => {
                (xu, f.neg(f.add(xa, f.mul(qa, xu))))
            }
            FormKind::Hermitian => (xu, f.sub(f.mul(c, xu), xa)),
        };
        for j in 0..n {
            let v = f.add(m.get(i, j), f.add(f.mul(ca, a[j]), f.mul(cu, u[j])));
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// An additive basis of the subgroup `{c : c + c^q = 0}` of GF(q^2).
pub fn trace_zero_basis(form: &FormSpec) -> Vec<Elem> {
    let f = form.gram.field();
    let sols: Vec<Elem> = f.elements().filter(|&c| f.add(c, form.conj(c)) == 0).collect();
    additive_span_basis(f, &sols)
}

fn additive_span_basis(f: &Field, elems: &[Elem]) -> Vec<Elem> {
    let mut span: HashSet<Elem> = HashSet::from([0]);
    let mut basis = Vec::new();
    for &x in elems {
        if span.contains(&x) {
            continue;
        }
        basis.push(x);
        let old: Vec<Elem> = span.iter().copied().collect();
        let mut mult = x;
        for _ in 1..f.characteristic() {
            for &s in &old {
                span.insert(f.add(s, mult));
            }
            mult = f.add(mult, x);
        }
    }
    basis
}

/// Least `c` with `c + c^q = -(a,a)`.
fn hermitian_centre(form: &FormSpec, a: &[Elem]) -> Result<Elem> {
    let f = form.gram.field();
    let target = f.neg(form.eval(a, a)?);
    f.elements()
        .find(|&c| f.add(c, form.conj(c)) == target)
        .ok_or_else(|| Error::Internal("trace equation has no solution".into()))
}

pub fn form_for(family: Family, field: &Arc<Field>, n: usize) -> Result<Option<FormSpec>> {
    Ok(match family {
        Family::SL | Family::Sz => None,
        Family::Sp => Some(FormSpec::alternating(field, n)?),
        Family::SU => Some(FormSpec::hermitian(field, n)?),
        Family::OmegaPlus => Some(FormSpec::quadratic_plus(field, n)?),
        Family::OmegaMinus => Some(FormSpec::quadratic_minus(field, n)?),
    })
}

/// Generators of a Sylow `p`-subgroup: upper unitriangular elements of the
/// group for every positive root and every element of an additive basis.
pub fn unipotent_generators(family: Family, field: &Arc<Field>, form: Option<&FormSpec>, n: usize) -> Result<Vec<Matrix>> {
    let basis = field.additive_basis();
    let mut out = Vec::new();
    let Some(form) = form else {
        for i in 0..n {
            for j in i + 1..n {
                for &l in &basis {
                    let mut m = Matrix::identity(field, n);
                    m.set(i, j, l);
                    out.push(m);
                }
            }
        }
        return Ok(out);
    };
    for k in 0..n / 2 {
        let u = unit(n, n - 1 - k);
        for j in k + 1..n - 1 - k {
            for &l in &basis {
                let a = scaled(field, &unit(n, j), l);
                let c = if family == Family::SU { hermitian_centre(form, &a)? } else { 0 };
                out.push(eichler(form, &u, &a, c)?);
            }
        }
        let centre = match family {
            Family::Sp => basis.clone(),
            Family::SU => trace_zero_basis(form),
            _ => Vec::new(),
        };
        let zero = vec![0; n];
        for c in centre {
            out.push(eichler(form, &u, &zero, c)?);
        }
    }
    Ok(out)
}

/// A monomial isometry (or similitude) exchanging `e_k` and `f_k` on the
/// hyperbolic pairs; conjugating the unipotent generators by it gives the
/// opposite root groups.
pub fn weyl_element(family: Family, field: &Arc<Field>, n: usize) -> Matrix {
    let mut w = Matrix::zero(field, n, n);
    if family == Family::OmegaMinus {
        let m = n / 2 - 1;
        for k in 0..n {
            let image = if k == m || k == m + 1 { k } else { n - 1 - k };
            w.set(k, image, 1);
        }
    } else {
        for k in 0..n {
            w.set(k, n - 1 - k, 1);
        }
    }
    w
}

/// Whether `g` lies in the matrix group of the family: isometry, determinant
/// one and, for orthogonal groups in characteristic 2, even rank of `g + 1`.
pub fn check_member(family: Family, form: Option<&FormSpec>, g: &Matrix) -> Result<bool> {
    if let Some(form) = form {
        if !form.is_isometry(g)? {
            return Ok(false);
        }
    }
    match family {
        Family::SL | Family::SU | Family::Sz => Ok(g.determinant()? == 1),
        Family::Sp => Ok(true),
        Family::OmegaPlus | Family::OmegaMinus => {
            let id = Matrix::identity(g.field(), g.rows());
            Ok(g.sub(&id)?.rank() % 2 == 0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_members(family: Family, q: u64, n: usize) {
        let fq = if family == Family::SU { q * q } else { q };
        let f = Field::of_order(fq).unwrap();
        let form = form_for(family, &f, n).unwrap();
        let gens = unipotent_generators(family, &f, form.as_ref(), n).unwrap();
        assert!(!gens.is_empty());
        let w = weyl_element(family, &f, n);
        let winv = w.inverse().unwrap();
        for g in &gens {
            assert!(check_member(family, form.as_ref(), g).unwrap(), "{family:?} {g}");
            let lower = winv.mul(g).unwrap().mul(&w).unwrap();
            assert!(check_member(family, form.as_ref(), &lower).unwrap(), "{family:?} {lower}");
            for i in 0..n {
                assert_eq!(g.get(i, i), 1);
                for j in 0..i {
                    assert_eq!(g.get(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn generators_preserve_forms() {
        all_members(Family::SL, 4, 3);
        all_members(Family::Sp, 2, 6);
        all_members(Family::Sp, 3, 4);
        all_members(Family::Sp, 4, 4);
        all_members(Family::SU, 2, 4);
        all_members(Family::SU, 2, 5);
        all_members(Family::SU, 3, 3);
        all_members(Family::OmegaPlus, 2, 8);
        all_members(Family::OmegaMinus, 2, 6);
        all_members(Family::OmegaMinus, 4, 4);
    }

    #[test]
    fn trace_zero_subgroup_has_order_q() {
        for q in [2u64, 3, 4] {
            let f = Field::of_order(q * q).unwrap();
            let form = FormSpec::hermitian(&f, 3).unwrap();
            let b = trace_zero_basis(&form);
            assert_eq!((f.characteristic() as u64).pow(b.len() as u32), q);
        }
    }
}
