//! Commuting graphs on unions of conjugacy classes and their component
//! groups.
//!
//! For a union `D` of classes of elements of prime order `p`, two distinct
//! elements `g, h` of `D` are adjacent when they commute and `g h^-1` or
//! `h g^-1` lies in `D`. The component group of `s` is the subgroup
//! generated by the connected component of `s`.

pub mod registry;
pub mod terminal;
pub mod transport;

use serde::Serialize;

use crate::algebra::Perm;
use crate::error::{Error, Result};

pub use registry::{ClassRegistry, Membership};
pub use terminal::{class_graph, delta_infinity, ClassGraphReport, DeltaChain};
pub use transport::{component_bfs, transport, ComponentBfs, ComponentResult, Completeness, TransportMode, TransportOptions};

/// A union of conjugacy classes, as class ids of a [`ClassRegistry`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSet {
    ids: Vec<usize>,
}

impl ClassSet {
    pub fn from_ids(mut ids: Vec<usize>) -> ClassSet {
        ids.sort_unstable();
        ids.dedup();
        ClassSet { ids }
    }

    /// The classes of `reps`, registering them as needed.
    pub fn from_reps(reg: &mut ClassRegistry, reps: &[Perm]) -> Result<ClassSet> {
        let mut ids = Vec::new();
        for r in reps {
            reg.group().check_member(r)?;
            ids.push(reg.classify(r)?);
        }
        Ok(ClassSet::from_ids(ids))
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn contains(&self, id: usize) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    /// The class of `x` if it lies in this union.
    pub fn class_of(&self, reg: &mut ClassRegistry, x: &Perm) -> Result<Option<usize>> {
        Ok(reg.identify(x)?.filter(|&id| self.contains(id)))
    }
}

/// Whether `x h^-1` or `h x^-1` lies in `d`, for commuting `x, h`.
pub(crate) fn quotient_in(reg: &mut ClassRegistry, d: &ClassSet, x: &Perm, h: &Perm) -> Result<bool> {
    let q = x.mul(&h.inverse());
    if !reg.has_order_p(&q) {
        return Ok(false);
    }
    if d.class_of(reg, &q)?.is_some() {
        return Ok(true);
    }
    if reg.prime() == 2 {
        return Ok(false);
    }
    Ok(d.class_of(reg, &q.inverse())?.is_some())
}

/// Adjacency in the commuting graph on `d`.
pub fn gamma_adjacent(reg: &mut ClassRegistry, d: &ClassSet, g: &Perm, h: &Perm) -> Result<bool> {
    if g == h {
        return Err(Error::Usage("adjacency is defined for distinct elements".into()));
    }
    if !g.commutes_with(h) {
        return Ok(false);
    }
    if d.class_of(reg, g)?.is_none() || d.class_of(reg, h)?.is_none() {
        return Ok(false);
    }
    quotient_in(reg, d, g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_group, GroupSpec};

    #[test]
    fn adjacency_in_sl24() {
        let cat = make_group(&"SL(2,4)".parse::<GroupSpec>().unwrap()).unwrap();
        let mut reg = ClassRegistry::for_catalog(&cat);
        let s = cat.involution_rep(&cat.labels()[0]).unwrap();
        let d = ClassSet::from_reps(&mut reg, &[s.clone()]).unwrap();
        let z = cat.sylow().unwrap();
        let elems = z.elements(100).unwrap();
        let others: Vec<_> = elems.iter().filter(|x| !x.is_identity() && **x != s).collect();
        assert_eq!(others.len(), 2);
        for x in others {
            assert!(gamma_adjacent(&mut reg, &d, &s, x).unwrap());
        }
        assert!(gamma_adjacent(&mut reg, &d, &s, &s).is_err());
    }
}
