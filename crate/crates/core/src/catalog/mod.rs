//! Concrete groups of Lie type as permutation groups on points of their
//! natural modules, with involution representatives, class invariants and
//! root subgroups.

pub mod classical;
pub mod domain;
pub mod label;
pub mod spec;
pub mod suzuki;

use std::sync::Arc;

use serde::Serialize;

pub use domain::{DomainKind, PointDomain};
pub use label::InvolutionLabel;
pub use spec::{Family, GroupSpec};

use crate::algebra::{jordan_profile, Elem, Field, FormKind, FormSpec, Matrix, Perm};
use crate::error::{Error, Result};
use crate::group::bsgs::{Bsgs, BsgsOptions, Completion};
use crate::group::random::{derive_seed, stream};
use crate::group::FiniteGroup;
use classical::unit;
use suzuki::Suzuki;

pub struct CatalogGroup {
    spec: GroupSpec,
    field: Arc<Field>,
    form: Option<FormSpec>,
    domain: PointDomain,
    group: FiniteGroup,
    unipotent: Vec<Matrix>,
    suzuki: Option<Suzuki>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormType {
    /// `(v(t+1), v) = 0` for every `v`.
    A,
    /// Not of type A, odd rank.
    B,
    /// Not of type A, even rank.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassInvariant {
    /// Rank of `t + 1`.
    pub rank: usize,
    /// Jordan blocks of the unipotent lift as (size, multiplicity).
    pub jordan: Vec<(usize, usize)>,
    /// Form type for symplectic and orthogonal groups.
    pub form_type: Option<FormType>,
    /// Which family of maximal totally singular subspaces contains the image
    /// of `t + 1`, in the split orthogonal case.
    pub family: Option<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    Long,
    Short,
}

/// Builds `spec` acting on projective points (isotropic or singular points
/// for classical forms, ovoid points for Suzuki groups).
pub fn make_group(spec: &GroupSpec) -> Result<CatalogGroup> {
    make_group_on(spec, DomainKind::Projective)
}

/// As [`make_group`]; a vector domain gives the linear group itself rather
/// than its central quotient and is available for `SL` only.
pub fn make_group_on(spec: &GroupSpec, kind: DomainKind) -> Result<CatalogGroup> {
    if kind == DomainKind::Vectors && spec.family != Family::SL {
        return Err(Error::Usage("vector domains are only available for SL".into()));
    }
    let field = Field::of_order(spec.field_order())?;
    let n = spec.n;
    let form = classical::form_for(spec.family, &field, n)?;
    let (suzuki, unipotent, mut mats) = if spec.family == Family::Sz {
        let sz = Suzuki::new(&field)?;
        let u = sz.sylow_generators();
        let all = sz.generators();
        (Some(sz), u, all)
    } else {
        let u = classical::unipotent_generators(spec.family, &field, form.as_ref(), n)?;
        let w = classical::weyl_element(spec.family, &field, n);
        let winv = w.inverse()?;
        let mut all = u.clone();
        for g in &u {
            all.push(winv.mul(g)?.mul(&w)?);
        }
        (None, u, all)
    };
    for g in &mats {
        if !classical::check_member(spec.family, form.as_ref(), g)? {
            return Err(Error::Internal(format!("generator {g} is not in {spec}")));
        }
    }
    let domain = {
        let form = form.clone();
        let sz = suzuki.as_ref();
        PointDomain::build(&field, n, kind, |v| match (&form, sz) {
            (_, Some(sz)) => sz.on_ovoid(v),
            (Some(f), None) => match f.kind {
                FormKind::Alternating => true,
                FormKind::Hermitian => f.eval(v, v).unwrap_or(1) == 0,
                _ => f.quad(v).unwrap_or(1) == 0,
            },
            (None, None) => true,
        })?
    };
    let mut perms: Vec<Perm> = Vec::new();
    for g in mats.drain(..) {
        let p = domain.perm_of(&g)?;
        if !p.is_identity() && !perms.contains(&p) {
            perms.push(p);
        }
    }
    let target = match kind {
        DomainKind::Projective => spec.simple_order(),
        DomainKind::Vectors => spec.matrix_order(),
    };
    let degree = domain.len();
    let opts = BsgsOptions {
        known_order: Some(target),
        completion: Completion::Randomized,
        seed: derive_seed(0, "catalog", 0),
        ..Default::default()
    };
    let full = FiniteGroup::with_options(degree, perms, &opts)?;
    if full.order() != target {
        return Err(Error::Construction(format!(
            "{spec}: generators reach order {} instead of {target}",
            full.order()
        )));
    }
    let group = compact_generators(&full, target)?;
    Ok(CatalogGroup { spec: spec.clone(), field, form, domain, group, unipotent, suzuki })
}

/// A generating set of two to five random elements, when one is found.
fn compact_generators(full: &FiniteGroup, target: u128) -> Result<FiniteGroup> {
    let degree = full.degree();
    let mut rng = stream(0, "catalog-generators", 0);
    for k in 2..=5 {
        for attempt in 0..8u64 {
            let gens: Vec<Perm> = (0..k).map(|_| full.random_element(&mut rng)).collect();
            let opts = BsgsOptions {
                known_order: Some(target),
                completion: Completion::Randomized,
                seed: derive_seed(k as u64, "catalog-compact", attempt),
                ..Default::default()
            };
            let b = Bsgs::build(degree, &gens, &opts)?;
            if b.order() == target {
                return Ok(FiniteGroup::from_bsgs(degree, gens, b));
            }
        }
    }
    Ok(FiniteGroup::from_bsgs(degree, full.generators().to_vec(), full.bsgs().clone()))
}

impl CatalogGroup {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn form(&self) -> Option<&FormSpec> {
        self.form.as_ref()
    }
    pub fn domain(&self) -> &PointDomain {
        &self.domain
    }
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn degree(&self) -> usize {
        self.domain.len()
    }
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn perm(&self, m: &Matrix) -> Result<Perm> {
        self.domain.perm_of(m)
    }

    /// A matrix inducing `g` (up to a scalar on projective domains).
    pub fn matrix(&self, g: &Perm) -> Result<Matrix> {
        self.domain.matrix_of(g)
    }

    /// The unipotent matrix inducing the `p`-element `g`.
    pub fn unipotent_matrix(&self, g: &Perm) -> Result<Matrix> {
        let p = self.characteristic() as u128;
        let mut o = g.order();
        let mut k = 0;
        while o > 1 && o % p == 0 {
            o /= p;
            k += 1;
        }
        if o != 1 {
            return Err(Error::Domain("element order is not a power of the characteristic".into()));
        }
        let m = self.matrix(g)?;
        let nu = m
            .pow(g.order() as u64)?
            .scalar_value()
            .ok_or_else(|| Error::Internal("power of a projective element is not scalar".into()))?;
        // lambda^(p^k) = nu^-1; p-th roots are unique in characteristic p.
        let f = &self.field;
        let mut lambda = f.inv(nu)?;
        let root_exp = (p as u64).pow(f.degree() - 1);
        for _ in 0..k {
            lambda = f.pow(lambda, root_exp);
        }
        Ok(m.scale(lambda))
    }

    /// The matrix of the class representative for `label`.
    pub fn rep_matrix(&self, label: &InvolutionLabel) -> Result<Matrix> {
        label.validate(&self.spec)?;
        let f = &self.field;
        let n = self.spec.n;
        let mut t = Matrix::identity(f, n);
        match *label {
            InvolutionLabel::Suzuki => {
                let sz = self.suzuki.as_ref().expect("Suzuki group");
                t = sz.unipotent(0, 1);
            }
            InvolutionLabel::Jordan { a, .. } => {
                let c = match &self.form {
                    Some(form) => *classical::trace_zero_basis(form).first().ok_or_else(|| {
                        Error::Internal("no trace-zero scalar".into())
                    })?,
                    None => 1,
                };
                for i in 0..a {
                    t.set(i, n - 1 - i, c);
                }
            }
            InvolutionLabel::Wv { b, c, family, .. } => {
                let form = self.form.as_ref().expect("classical form");
                let sp = self.spec.family == Family::Sp;
                let mut blocks: Vec<Matrix> = Vec::new();
                let mut pair = 0;
                if c > 0 {
                    if sp {
                        for p in 0..c {
                            let mut v = Matrix::identity(f, n);
                            v.set(p, n - 1 - p, 1);
                            blocks.push(v);
                        }
                        pair = c;
                    } else {
                        // Swap e_p and f_p on the hyperbolic pairs used.
                        let swaps = if self.spec.family == Family::OmegaMinus { 1 } else { 2 };
                        for p in 0..swaps {
                            let mut v = Matrix::identity(f, n);
                            v.set(p, p, 0);
                            v.set(n - 1 - p, n - 1 - p, 0);
                            v.set(p, n - 1 - p, 1);
                            v.set(n - 1 - p, p, 1);
                            blocks.push(v);
                        }
                        if swaps == 1 {
                            // Reflection in the anisotropic plane.
                            let m = n / 2 - 1;
                            let mut v = Matrix::identity(f, n);
                            v.set(m + 1, m, 1);
                            blocks.push(v);
                        }
                        pair = swaps;
                    }
                }
                for i in 0..b {
                    let p = pair + 2 * i;
                    let last = i + 1 == b;
                    let block = if last && family == Some(2) {
                        classical::eichler(form, &unit(n, n - 1 - p), &unit(n, p + 1), 0)?
                    } else {
                        classical::eichler(form, &unit(n, n - 1 - p), &unit(n, n - 2 - p), 0)?
                    };
                    blocks.push(block);
                }
                for blk in blocks {
                    t = t.mul(&blk)?;
                }
            }
        }
        if !classical::check_member(self.spec.family, self.form.as_ref(), &t)? {
            return Err(Error::Internal(format!("representative for {label} is not in {}", self.spec)));
        }
        Ok(t)
    }

    /// A representative of the class labelled `label`: an involution in
    /// characteristic 2, an element of order `p` otherwise.
    pub fn involution_rep(&self, label: &InvolutionLabel) -> Result<Perm> {
        let t = self.rep_matrix(label)?;
        let g = self.perm(&t)?;
        if g.is_identity() {
            return Err(Error::Usage(format!("label {label} gives the identity")));
        }
        Ok(g)
    }

    pub fn labels(&self) -> Vec<InvolutionLabel> {
        InvolutionLabel::all_for(&self.spec)
    }

    pub fn class_invariant(&self, t: &Perm) -> Result<ClassInvariant> {
        if !t.is_involution() {
            return Err(Error::Domain("class invariants are defined for involutions".into()));
        }
        if self.characteristic() != 2 {
            return Err(Error::Unsupported(
                "class invariants are implemented in characteristic 2".into(),
            ));
        }
        let m = self.unipotent_matrix(t)?;
        self.matrix_invariant(&m)
    }

    fn matrix_invariant(&self, m: &Matrix) -> Result<ClassInvariant> {
        let f = &self.field;
        let n = self.spec.n;
        let plus1 = m.sub(&Matrix::identity(f, n))?;
        let rank = plus1.rank();
        let jordan = jordan_profile(m)?;
        let mut form_type = None;
        let mut family = None;
        if let Some(form) = self.form.as_ref().filter(|fm| fm.kind != FormKind::Hermitian) {
            let is_a = (0..n).all(|i| {
                let v = unit(n, i);
                let w = plus1.apply_row(&v);
                form.eval(&w, &v).map(|x| x == 0).unwrap_or(false)
            });
            form_type = Some(if is_a {
                FormType::A
            } else if rank % 2 == 1 {
                FormType::B
            } else {
                FormType::C
            });
            if self.spec.family == Family::OmegaPlus && is_a && rank == n / 2 {
                family = Some(self.split_family(&plus1)?);
            }
        }
        Ok(ClassInvariant { rank, jordan, form_type, family })
    }

    /// Parity of `dim(Im(t+1) ∩ <f_1..f_m>)` relative to `m`, as tag 1 or 2.
    fn split_family(&self, plus1: &Matrix) -> Result<u8> {
        let n = self.spec.n;
        let f = &self.field;
        let (rref, r, _) = plus1.echelon();
        let mut rows: Vec<Vec<Elem>> = (0..r).map(|i| rref.row(i).to_vec()).collect();
        for k in n / 2..n {
            rows.push(unit(n, k));
        }
        let sum = Matrix::from_rows(f, &rows)?.rank();
        let meet = r + n / 2 - sum;
        Ok(if (n / 2 - meet) % 2 == 0 { 1 } else { 2 })
    }

    /// Whether `t` and `u` are conjugate, decided from invariants. `None`
    /// in the split orthogonal case, where callers fall back to orbits.
    pub fn same_class_fast(&self, t: &Perm, u: &Perm) -> Result<Option<bool>> {
        if t == u {
            return Ok(Some(true));
        }
        let (it, iu) = (self.class_invariant(t)?, self.class_invariant(u)?);
        if it.family.is_some() && iu.family.is_some() {
            return Ok(None);
        }
        Ok(Some(it == iu))
    }

    /// The label of the class of `t`, read off from its invariant.
    pub fn label_of(&self, t: &Perm) -> Result<InvolutionLabel> {
        let inv = self.class_invariant(t)?;
        let n = self.spec.n;
        let r = inv.rank;
        let label = match self.spec.family {
            Family::Sz => InvolutionLabel::Suzuki,
            Family::SL | Family::SU => InvolutionLabel::Jordan { a: r, b: n - 2 * r },
            _ => {
                let (b, c) = match inv.form_type {
                    Some(FormType::A) => (r / 2, 0),
                    Some(FormType::B) => ((r - 1) / 2, 1),
                    _ => ((r - 2) / 2, 2),
                };
                InvolutionLabel::Wv { a: n / 2 - 2 * b - c, b, c, family: inv.family }
            }
        };
        label.validate(&self.spec)?;
        Ok(label)
    }

    fn subgroup_of(&self, mats: &[Matrix]) -> Result<FiniteGroup> {
        let gens = mats
            .iter()
            .map(|m| self.perm(m))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|p| !p.is_identity())
            .collect();
        FiniteGroup::new(self.degree(), gens)
    }

    /// A long or short root subgroup; for Suzuki groups the long kind is the
    /// centre of a Sylow 2-subgroup.
    pub fn root_subgroup(&self, kind: RootKind) -> Result<FiniteGroup> {
        let f = &self.field;
        let n = self.spec.n;
        let basis = f.additive_basis();
        let mats: Vec<Matrix> = match (kind, self.spec.family) {
            (RootKind::Long, Family::Sz) => self.suzuki.as_ref().expect("Suzuki").centre_generators(),
            (RootKind::Long, Family::SL | Family::Sp | Family::SU) => {
                let scalars = match &self.form {
                    Some(form) if form.kind == FormKind::Hermitian => classical::trace_zero_basis(form),
                    _ => basis,
                };
                scalars
                    .into_iter()
                    .map(|c| {
                        let mut m = Matrix::identity(f, n);
                        m.set(0, n - 1, c);
                        m
                    })
                    .collect()
            }
            (RootKind::Long, Family::OmegaPlus | Family::OmegaMinus) => {
                let form = self.form.as_ref().expect("form");
                basis
                    .into_iter()
                    .map(|l| {
                        let a: Vec<Elem> = unit(n, 1).iter().map(|&x| f.mul(x, l)).collect();
                        classical::eichler(form, &unit(n, n - 1), &a, 0)
                    })
                    .collect::<Result<_>>()?
            }
            (RootKind::Short, Family::Sp) if n == 4 && self.spec.q > 2 => {
                let form = self.form.as_ref().expect("form");
                basis
                    .into_iter()
                    .map(|l| {
                        let a: Vec<Elem> = unit(n, 1).iter().map(|&x| f.mul(x, l)).collect();
                        classical::eichler(form, &unit(n, n - 1), &a, 0)
                    })
                    .collect::<Result<_>>()?
            }
            _ => {
                return Err(Error::Usage(format!(
                    "no {kind:?} root subgroup is provided for {}",
                    self.spec
                )))
            }
        };
        self.subgroup_of(&mats)
    }

    /// The Sylow subgroup for the defining characteristic.
    pub fn sylow(&self) -> Result<FiniteGroup> {
        self.subgroup_of(&self.unipotent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> CatalogGroup {
        make_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn representatives_have_requested_invariants() {
        for s in ["Sp(6,2)", "SL(4,2)", "O+(8,2)", "O-(8,2)", "SU(4,2)", "Sp(4,4)"] {
            let g = build(s);
            for l in g.labels() {
                let t = g.involution_rep(&l).unwrap();
                assert!(t.is_involution(), "{s} {l}");
                assert!(g.group().contains(&t), "{s} {l}");
                assert_eq!(g.label_of(&t).unwrap(), l, "{s} {l}");
                let inv = g.class_invariant(&t).unwrap();
                let (a, r) = (inv.jordan.iter().find(|b| b.0 == 2).map_or(0, |b| b.1), inv.rank);
                assert_eq!(a, r);
                assert_eq!(2 * a + inv.jordan.iter().find(|b| b.0 == 1).map_or(0, |b| b.1), g.spec().n);
            }
        }
    }

    #[test]
    fn sp6_w2_v2_is_rank_three_b_type() {
        let g = build("Sp(6,2)");
        let l = InvolutionLabel::parse("W2+V2", g.spec()).unwrap();
        let inv = g.class_invariant(&g.involution_rep(&l).unwrap()).unwrap();
        assert_eq!(inv.rank, 3);
        assert_eq!(inv.form_type, Some(FormType::B));
        let id = g.group().identity();
        assert!(g.class_invariant(&id).is_err());
    }

    #[test]
    fn unipotent_lift_squares_to_one() {
        let g = build("SL(4,4)");
        let t = g.involution_rep(&InvolutionLabel::Jordan { a: 2, b: 0 }).unwrap();
        let m = g.unipotent_matrix(&t.conj(&g.group().generators()[0])).unwrap();
        assert!(m.mul(&m).unwrap().is_identity());
        assert_eq!(jordan_profile(&m).unwrap(), vec![(2, 2)]);
    }

    #[test]
    fn root_subgroups() {
        let sp6 = build("Sp(6,2)");
        let long = sp6.root_subgroup(RootKind::Long).unwrap();
        assert_eq!(long.order(), 2);
        assert!(matches!(sp6.root_subgroup(RootKind::Short), Err(Error::Usage(_))));
        let su = build("SU(4,2)");
        assert_eq!(su.root_subgroup(RootKind::Long).unwrap().order(), 2);
        let sz = build("Sz(8)");
        let z = sz.root_subgroup(RootKind::Long).unwrap();
        assert_eq!(z.order(), 8);
        assert!(z.is_elementary_abelian(2));
        assert_eq!(sz.sylow().unwrap().order(), 64);
        let sp44 = build("Sp(4,4)");
        let short = sp44.root_subgroup(RootKind::Short).unwrap();
        assert_eq!(short.order(), 4);
        assert!(!short.same_subgroup(&sp44.root_subgroup(RootKind::Long).unwrap()));
    }
}
