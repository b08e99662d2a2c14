//! Subgroup closures and normal closures.

use super::bsgs::{Bsgs, BsgsOptions, Completion};
use super::FiniteGroup;
use crate::algebra::Perm;
use crate::error::Result;

/// Deterministic verification is attempted only below this many Schreier
/// generators; above it a randomized closure reports a lower bound.
pub const VERIFY_COST_LIMIT: u128 = 200_000;

/// Exact subgroup generated by `elements`.
pub fn subgroup_closure(degree: usize, elements: &[Perm]) -> Result<FiniteGroup> {
    let gens: Vec<Perm> = elements.iter().filter(|g| !g.is_identity()).cloned().collect();
    FiniteGroup::new(degree, gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureMode {
    Exact,
    /// Membership tests may use an incomplete BSGS; the result is a subgroup
    /// of the true closure and its order a lower bound unless verified.
    Randomized { seed: u64 },
}

/// Normal closure of `seeds` under conjugation by `conjugators`.
pub fn normal_closure(
    degree: usize,
    seeds: &[Perm],
    conjugators: &[Perm],
    mode: ClosureMode,
) -> Result<FiniteGroup> {
    let mut gens: Vec<Perm> = Vec::new();
    for s in seeds {
        if !s.is_identity() && !gens.contains(s) {
            gens.push(s.clone());
        }
    }
    let (completion, seed) = match mode {
        ClosureMode::Exact => (Completion::Deterministic, 0),
        ClosureMode::Randomized { seed } => (Completion::Randomized, seed),
    };
    let opts = BsgsOptions { completion, seed, ..Default::default() };
    let mut b = Bsgs::build(degree, &gens, &opts)?;
    let mut idx = 0;
    while idx < gens.len() {
        for tau in conjugators {
            let c = gens[idx].conj(tau);
            if !b.contains(&c) {
                b.absorb(&c);
                gens.push(c);
                if completion == Completion::Deterministic {
                    b.complete_deterministic();
                }
            }
        }
        idx += 1;
    }
    if completion == Completion::Randomized {
        b = Bsgs::build(degree, &gens, &opts)?;
        if b.verification_cost() <= VERIFY_COST_LIMIT {
            b.complete_deterministic();
        }
    }
    Ok(FiniteGroup::from_bsgs(degree, gens, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_closure_of_double_transposition_in_a5_is_a5() {
        let a = Perm::from_cycles(5, &[vec![1, 2, 3]]).unwrap();
        let b = Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap();
        let t = Perm::from_cycles(5, &[vec![1, 2], vec![3, 4]]).unwrap();
        let n = normal_closure(5, &[t.clone()], &[a.clone(), b.clone()], ClosureMode::Exact).unwrap();
        assert_eq!(n.order(), 60);
        let r = normal_closure(5, &[t], &[a, b], ClosureMode::Randomized { seed: 9 }).unwrap();
        assert_eq!(r.order(), 60);
        assert!(r.order_is_exact());
    }

    #[test]
    fn klein_four_is_normal_in_a4() {
        let a = Perm::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
        let t = Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let n = normal_closure(4, &[t], &[a], ClosureMode::Exact).unwrap();
        assert_eq!(n.order(), 4);
        assert!(n.is_elementary_abelian(2));
    }

    #[test]
    fn closure_drops_identity() {
        let g = subgroup_closure(3, &[Perm::identity(3)]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }
}
