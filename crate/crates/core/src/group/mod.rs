//! Permutation groups: BSGS, random elements, conjugation orbits,
//! centralizers and closures.

pub mod bsgs;
pub mod centralizer;
pub mod closure;
pub mod orbit;
pub mod random;

use std::sync::OnceLock;

pub use bsgs::{Bsgs, BsgsOptions, Completion};
pub use orbit::{OrbitBudget, OrbitIndex};
pub use random::{derive_seed, stream, ProductReplacement, StreamRng};

use crate::algebra::Perm;
use crate::error::{Error, Result};

/// Default bound on explicit element enumeration.
pub const ENUMERATION_BOUND: u128 = 1_000_000;

/// A permutation group given by generators; its BSGS is built on first use.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    gens: Vec<Perm>,
    bsgs: OnceLock<Bsgs>,
}

impl FiniteGroup {
    /// Group generated by `gens`; the BSGS is built lazily and exactly.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<FiniteGroup> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::Domain(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        Ok(FiniteGroup { degree, gens, bsgs: OnceLock::new() })
    }

    /// Group with an eagerly built BSGS.
    pub fn with_options(degree: usize, gens: Vec<Perm>, opts: &BsgsOptions) -> Result<FiniteGroup> {
        let g = FiniteGroup::new(degree, gens)?;
        let b = Bsgs::build(degree, &g.gens, opts)?;
        let _ = g.bsgs.set(b);
        Ok(g)
    }

    pub fn from_bsgs(degree: usize, gens: Vec<Perm>, bsgs: Bsgs) -> FiniteGroup {
        let g = FiniteGroup { degree, gens, bsgs: OnceLock::new() };
        let _ = g.bsgs.set(bsgs);
        g
    }

    pub fn trivial(degree: usize) -> FiniteGroup {
        FiniteGroup { degree, gens: Vec::new(), bsgs: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn bsgs(&self) -> &Bsgs {
        self.bsgs.get_or_init(|| {
            Bsgs::build(self.degree, &self.gens, &BsgsOptions::default())
                .expect("generators validated at construction")
        })
    }

    pub fn order(&self) -> u128 {
        self.bsgs().order()
    }

    /// Whether [`FiniteGroup::order`] is proven rather than a lower bound.
    pub fn order_is_exact(&self) -> bool {
        self.bsgs().is_complete()
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.bsgs().contains(x)
    }

    pub fn check_member(&self, x: &Perm) -> Result<()> {
        if x.degree() != self.degree || !self.contains(x) {
            return Err(Error::Domain(format!("{x} is not an element of the group")));
        }
        Ok(())
    }

    /// Uniform random element drawn through the BSGS.
    pub fn random_element(&self, rng: &mut StreamRng) -> Perm {
        self.bsgs().random_element(rng)
    }

    /// Product-replacement stream over the generators.
    pub fn random_stream(&self, seed: u64, tag: &str) -> ProductReplacement {
        ProductReplacement::new(self.degree, &self.gens, stream(seed, tag, 0))
    }

    /// Calls `f` on every element, failing if the order exceeds `bound`.
    pub fn for_each_element(&self, bound: u128, f: impl FnMut(&Perm) -> bool) -> Result<()> {
        let order = self.order();
        if order > bound {
            return Err(Error::budget("group enumeration", order.min(u64::MAX as u128) as u64, bound.min(u64::MAX as u128) as u64));
        }
        self.bsgs().for_each_element(f);
        Ok(())
    }

    pub fn elements(&self, bound: u128) -> Result<Vec<Perm>> {
        let mut out = Vec::new();
        self.for_each_element(bound, |g| {
            out.push(g.clone());
            true
        })?;
        Ok(out)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[..i].iter().all(|b| a.commutes_with(b)))
    }

    /// Abelian with every generator of order dividing `p`.
    pub fn is_elementary_abelian(&self, p: u32) -> bool {
        self.is_abelian() && self.gens.iter().all(|g| g.pow(p as i64).is_identity())
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Subgroup equality by mutual containment.
    pub fn same_subgroup(&self, other: &FiniteGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Orbits on points, each sorted, listed by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        point_orbits(self.degree, &self.gens)
    }
}

/// Orbit partition of `{0..degree}` under `gens`.
pub fn point_orbits(degree: usize, gens: &[Perm]) -> Vec<Vec<u32>> {
    let mut label = vec![u32::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if label[start] != u32::MAX {
            continue;
        }
        let id = out.len() as u32;
        let mut orbit = vec![start as u32];
        label[start] = id;
        let mut pos = 0;
        while pos < orbit.len() {
            let x = orbit[pos];
            for g in gens {
                let y = g.apply(x);
                if label[y as usize] == u32::MAX {
                    label[y as usize] = id;
                    orbit.push(y);
                }
            }
            pos += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a5() -> FiniteGroup {
        FiniteGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[vec![1, 2, 3]]).unwrap(),
                Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn order_membership_and_enumeration() {
        let g = a5();
        assert_eq!(g.order(), 60);
        assert!(g.order_is_exact());
        assert_eq!(g.elements(100).unwrap().len(), 60);
        assert!(matches!(g.elements(10), Err(Error::Budget { .. })));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let r = FiniteGroup::new(4, vec![Perm::identity(5)]);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn elementary_abelian_detection() {
        let v4 = FiniteGroup::new(
            4,
            vec![
                Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap(),
                Perm::from_cycles(4, &[vec![1, 3], vec![2, 4]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(v4.is_elementary_abelian(2));
        assert!(!a5().is_abelian());
    }

    #[test]
    fn orbit_partition() {
        let g = FiniteGroup::new(5, vec![Perm::from_cycles(5, &[vec![1, 3], vec![2, 5]]).unwrap()])
            .unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 2], vec![1, 4], vec![3]]);
    }
}
