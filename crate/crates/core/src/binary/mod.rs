//! Binary permutation actions: coset actions, fixity, tuple relatedness,
//! non-binarity witnesses, the stabilizer filter and the TI criterion.

pub mod filter;
pub mod related;
pub mod ti;
pub mod witness;

use std::collections::HashMap;

use crate::algebra::Perm;
use crate::components::{ClassRegistry, ClassSet};
use crate::error::{Error, Result};
use crate::group::bsgs::{Bsgs, BsgsOptions};
use crate::group::FiniteGroup;

pub use filter::{stabilizer_filter, FilterVerdict};
pub use related::{binary_bounded, pad_violation, r_related, BinaryVerdict, Transporter};
pub use ti::{conjugates_of, ti_binary_criterion, ti_check, TiVerdict};
pub use witness::{nonbinary_witness, WitnessReport, WitnessVerdict};

pub const DEFAULT_DEGREE_BOUND: usize = 1_000_000;

/// The action of `G` by right multiplication on the right cosets of `H`.
pub struct CosetAction {
    group: FiniteGroup,
    subgroup: FiniteGroup,
    /// Stabilizer chain of `H` along the base of `G`.
    chain: Bsgs,
    reps: Vec<Perm>,
    index: HashMap<Vec<u32>, usize>,
    image: FiniteGroup,
}

impl CosetAction {
    pub fn new(group: &FiniteGroup, subgroup: &FiniteGroup) -> Result<CosetAction> {
        CosetAction::with_bound(group, subgroup, DEFAULT_DEGREE_BOUND)
    }

    pub fn with_bound(group: &FiniteGroup, subgroup: &FiniteGroup, bound: usize) -> Result<CosetAction> {
        if !subgroup.is_subgroup_of(group) {
            return Err(Error::Usage("H is not a subgroup of G".into()));
        }
        let (g_order, h_order) = (group.order(), subgroup.order());
        let index = g_order / h_order;
        if index > bound as u128 {
            return Err(Error::budget("coset action degree", index.min(u64::MAX as u128) as u64, bound as u64));
        }
        let degree = group.degree();
        let opts = BsgsOptions { base_prefix: group.bsgs().base(), known_order: Some(h_order), ..Default::default() };
        let chain = Bsgs::build(degree, subgroup.generators(), &opts)?;
        let mut act = CosetAction {
            group: group.clone(),
            subgroup: subgroup.clone(),
            chain,
            reps: Vec::new(),
            index: HashMap::new(),
            image: FiniteGroup::trivial(index as usize),
        };
        let id = act.canonical(&group.identity());
        act.index.insert(act.key(&id), 0);
        act.reps.push(id);
        let mut pos = 0;
        while pos < act.reps.len() {
            for x in group.generators() {
                let c = act.canonical(&act.reps[pos].mul(x));
                let k = act.key(&c);
                if !act.index.contains_key(&k) {
                    act.index.insert(k, act.reps.len());
                    act.reps.push(c);
                }
            }
            pos += 1;
        }
        if act.reps.len() as u128 != index {
            return Err(Error::Internal("coset enumeration does not match the index".into()));
        }
        let gens = group.generators().iter().map(|x| act.act(x)).collect::<Result<Vec<_>>>()?;
        act.image = FiniteGroup::new(act.reps.len(), gens)?;
        Ok(act)
    }

    /// The least element of `H g` by base image.
    fn canonical(&self, g: &Perm) -> Perm {
        let mut x = g.clone();
        for level in 0..self.chain.base_len() {
            let orbit = self.chain.orbit(level);
            if orbit.len() == 1 {
                continue;
            }
            let best = *orbit.iter().min_by_key(|&&gamma| x.apply(gamma)).expect("non-empty orbit");
            let u = self.chain.transversal(level, best);
            x = u.mul(&x);
        }
        x
    }

    fn key(&self, x: &Perm) -> Vec<u32> {
        self.group.bsgs().base_image(x)
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &FiniteGroup {
        &self.subgroup
    }

    /// The permutation group induced on cosets.
    pub fn image(&self) -> &FiniteGroup {
        &self.image
    }

    /// The coset `H rep(i)`.
    pub fn coset_rep(&self, i: usize) -> &Perm {
        &self.reps[i]
    }

    /// The index of the coset containing `g`.
    pub fn point_of(&self, g: &Perm) -> Result<usize> {
        self.index
            .get(&self.key(&self.canonical(g)))
            .copied()
            .ok_or_else(|| Error::Domain("element is not in the group".into()))
    }

    /// The permutation of cosets induced by `g`.
    pub fn act(&self, g: &Perm) -> Result<Perm> {
        self.group.check_member(g)?;
        let images = self.reps.iter().map(|r| self.point_of(&r.mul(g)).map(|i| i as u32)).collect::<Result<Vec<_>>>()?;
        Perm::from_images(images)
    }

    /// Number of cosets fixed by `g`.
    pub fn fixity(&self, g: &Perm) -> Result<usize> {
        Ok(self.act(g)?.fixed_points())
    }

    /// The union of classes of order-`p` elements of greatest fixity, with
    /// that fixity. Empty when no such element lies in `H`.
    pub fn max_p_fixity(&self, reg: &mut ClassRegistry) -> Result<(ClassSet, usize)> {
        let (ids, _) = reg.all_classes()?;
        let mut best = 0;
        let mut chosen = Vec::new();
        for id in ids {
            let f = self.fixity(reg.rep(id))?;
            if f > best {
                best = f;
                chosen.clear();
            }
            if f == best && f > 0 {
                chosen.push(id);
            }
        }
        Ok((ClassSet::from_ids(chosen), best))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5() -> FiniteGroup {
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
    fn a5_on_cosets_of_klein_four() {
        let g = a5();
        let k = FiniteGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[vec![1, 2], vec![3, 4]]).unwrap(),
                Perm::from_cycles(5, &[vec![1, 3], vec![2, 4]]).unwrap(),
            ],
        )
        .unwrap();
        let act = CosetAction::new(&g, &k).unwrap();
        assert_eq!(act.degree(), 15);
        assert_eq!(act.image().order(), 60);
        let t = Perm::from_cycles(5, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(act.fixity(&t).unwrap(), 3);
        assert_eq!(act.fixity(&g.identity()).unwrap(), 15);
        for h in k.generators() {
            assert_eq!(act.act(h).unwrap().apply(0), 0);
        }
    }

    #[test]
    fn burnside_count_is_one() {
        let g = a5();
        let c = FiniteGroup::new(5, vec![Perm::from_cycles(5, &[vec![1, 2, 3]]).unwrap()]).unwrap();
        let act = CosetAction::new(&g, &c).unwrap();
        let mut total = 0;
        act.image().for_each_element(1000, |x| {
            total += x.fixed_points();
            true
        })
        .unwrap();
        assert_eq!(total as u128, act.image().order());
    }

    #[test]
    fn index_bound() {
        let g = a5();
        let t = FiniteGroup::trivial(5);
        assert!(matches!(CosetAction::with_bound(&g, &t, 10), Err(Error::Budget { .. })));
    }
}
