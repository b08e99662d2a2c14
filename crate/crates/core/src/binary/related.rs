//! Tuple relatedness and bounded searches for non-binarity.
//!
//! Tuples `I, J` are `r`-related when every `r` positions of `I` can be
//! carried onto the same positions of `J` by one group element; the action
//! is binary when 2-related tuples are always fully related.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::Perm;
use crate::error::{Error, Result};
use crate::group::bsgs::{Bsgs, BsgsOptions};
use crate::group::FiniteGroup;

/// Largest degree accepted by [`binary_bounded`].
pub const MAX_BOUNDED_DEGREE: usize = 16;
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// Point-tuple transporters, with stabilizer chains cached by base prefix.
pub struct Transporter<'g> {
    group: &'g FiniteGroup,
    chains: HashMap<Vec<u32>, Bsgs>,
}

impl<'g> Transporter<'g> {
    pub fn new(group: &'g FiniteGroup) -> Transporter<'g> {
        Transporter { group, chains: HashMap::new() }
    }

    /// Stabilizer chain whose base starts with `prefix`.
    pub fn chain(&mut self, prefix: &[u32]) -> Result<&Bsgs> {
        if !self.chains.contains_key(prefix) {
            let opts = BsgsOptions {
                base_prefix: prefix.to_vec(),
                known_order: Some(self.group.order()),
                ..Default::default()
            };
            let b = Bsgs::build(self.group.degree(), self.group.bsgs().strong_generators(), &opts)?;
            self.chains.insert(prefix.to_vec(), b);
        }
        Ok(&self.chains[prefix])
    }

    /// An element with `from[k]^g = to[k]` for every `k`, if one exists.
    pub fn find(&mut self, from: &[u32], to: &[u32]) -> Result<Option<Perm>> {
        if from.len() != to.len() {
            return Err(Error::Usage("tuples of different lengths".into()));
        }
        let n = self.group.degree() as u32;
        if from.iter().chain(to).any(|&x| x >= n) {
            return Err(Error::Usage("tuple entry outside the point set".into()));
        }
        let mut src = Vec::new();
        let mut dst = Vec::new();
        for (k, (&a, &b)) in from.iter().zip(to).enumerate() {
            match from[..k].iter().position(|&x| x == a) {
                Some(j) if to[j] != b => return Ok(None),
                Some(_) => {}
                None => {
                    if dst.contains(&b) {
                        return Ok(None);
                    }
                    src.push(a);
                    dst.push(b);
                }
            }
        }
        let chain = self.chain(&src)?;
        Ok(chain.transporter_from_base(&dst))
    }

    /// Pointwise stabilizer of `points`, as generators.
    pub fn pointwise_stabilizer(&mut self, points: &[u32]) -> Result<Vec<Perm>> {
        let k = points.len();
        let chain = self.chain(points)?;
        Ok(if k < chain.base_len() { chain.level_generators(k) } else { Vec::new() })
    }
}

fn subsets(n: usize, r: usize, f: &mut impl FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
        if cur.len() == r {
            return f(cur);
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            if !rec(i + 1, n, r, cur, f)? {
                return Ok(false);
            }
            cur.pop();
        }
        Ok(true)
    }
    rec(0, n, r, &mut Vec::new(), f)
}

/// Whether `i` and `j` are `r`-related under `group`.
pub fn r_related(group: &FiniteGroup, i: &[u32], j: &[u32], r: usize) -> Result<bool> {
    if i.len() != j.len() {
        return Err(Error::Usage("tuples of different lengths".into()));
    }
    if r == 0 || r > i.len() {
        return Err(Error::Usage(format!("arity {r} outside 1..={}", i.len())));
    }
    let mut tr = Transporter::new(group);
    subsets(i.len(), r, &mut |ks| {
        let a: Vec<u32> = ks.iter().map(|&k| i[k]).collect();
        let b: Vec<u32> = ks.iter().map(|&k| j[k]).collect();
        Ok(tr.find(&a, &b)?.is_some())
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum BinaryVerdict {
    /// No 2-related pair of length at most `max_n` fails to be fully related.
    NoViolation { max_n: usize },
    /// `i` and `j` are 2-related but not `n`-related, `n` their length.
    Violation { i: Vec<u32>, j: Vec<u32>, n: usize },
    Inconclusive { reason: String },
}

/// Searches for a shortest violation of binarity among tuples of length at
/// most `max_n`.
///
/// A shortest violation `(I x, I y)` has `I` fully related to itself, so
/// it suffices to walk tuples `I` of distinct points up to the group action
/// and look for `x, y` with `y` in the orbit of `x` under each `G_{I_k}`
/// but not under the pointwise stabilizer `G_(I)`.
pub fn binary_bounded(group: &FiniteGroup, max_n: usize, node_budget: u64) -> Result<BinaryVerdict> {
    let n = group.degree();
    if n > MAX_BOUNDED_DEGREE {
        return Err(Error::Usage(format!("bounded search needs degree <= {MAX_BOUNDED_DEGREE}")));
    }
    if max_n < 2 || max_n > n {
        return Err(Error::Usage(format!("max_n must lie in 2..={n}")));
    }
    let mut tr = Transporter::new(group);
    let mut point_stabs: Vec<Vec<Perm>> = Vec::with_capacity(n);
    for p in 0..n as u32 {
        point_stabs.push(tr.pointwise_stabilizer(&[p])?);
    }
    let mut nodes = 0u64;
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(tuple) = stack.pop() {
        nodes += 1;
        if nodes > node_budget {
            return Ok(BinaryVerdict::Inconclusive { reason: format!("node budget {node_budget} exhausted") });
        }
        let stab = tr.pointwise_stabilizer(&tuple)?;
        let orbits = crate::group::point_orbits(n, &stab);
        let mut children = Vec::new();
        for orbit in &orbits {
            let x = orbit[0];
            if tuple.contains(&x) {
                continue;
            }
            if !tuple.is_empty() && tuple.len() < max_n {
                let mut allowed = vec![true; n];
                for &a in &tuple {
                    let o = orbit_of(n, &point_stabs[a as usize], x);
                    for (y, ok) in allowed.iter_mut().enumerate() {
                        *ok &= o[y];
                    }
                }
                if let Some(y) = (0..n as u32).find(|&y| allowed[y as usize] && !orbit.contains(&y)) {
                    let mut i = tuple.clone();
                    let mut j = tuple.clone();
                    i.push(x);
                    j.push(y);
                    let len = i.len();
                    return Ok(BinaryVerdict::Violation { i, j, n: len });
                }
            }
            // Once the pointwise stabilizer is trivial, longer tuples only
            // shrink the allowed sets, so no violation lies below.
            if tuple.len() + 1 < max_n && stab.iter().any(|g| !g.is_identity()) {
                let mut next = tuple.clone();
                next.push(x);
                children.push(next);
            }
        }
        children.reverse();
        stack.extend(children);
    }
    Ok(BinaryVerdict::NoViolation { max_n })
}

fn orbit_of(n: usize, gens: &[Perm], x: u32) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x as usize] = true;
    let mut queue = vec![x];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                queue.push(q);
            }
        }
    }
    seen
}

/// Extends a violation `(i, j)` to length `target` while keeping the tuples
/// 2-related; the longer pair is still not fully related.
pub fn pad_violation(group: &FiniteGroup, i: &[u32], j: &[u32], target: usize) -> Result<Option<(Vec<u32>, Vec<u32>)>> {
    let n = group.degree();
    if target < i.len() || target > n {
        return Err(Error::Usage("target length out of range".into()));
    }
    let mut tr = Transporter::new(group);
    fn rec(
        tr: &mut Transporter,
        n: usize,
        i: &mut Vec<u32>,
        j: &mut Vec<u32>,
        target: usize,
    ) -> Result<bool> {
        if i.len() == target {
            return Ok(true);
        }
        for x in 0..n as u32 {
            if i.contains(&x) {
                continue;
            }
            for y in 0..n as u32 {
                if j.contains(&y) {
                    continue;
                }
                let mut ok = true;
                for k in 0..i.len() {
                    if tr.find(&[i[k], x], &[j[k], y])?.is_none() {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    i.push(x);
                    j.push(y);
                    if rec(tr, n, i, j, target)? {
                        return Ok(true);
                    }
                    i.pop();
                    j.pop();
                }
            }
        }
        Ok(false)
    }
    let (mut a, mut b) = (i.to_vec(), j.to_vec());
    Ok(rec(&mut tr, n, &mut a, &mut b, target)?.then_some((a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> FiniteGroup {
        let cyc: Vec<u32> = (1..=n as u32).collect();
        FiniteGroup::new(n, vec![Perm::from_cycles(n, &[vec![1, 2]]).unwrap(), Perm::from_cycles(n, &[cyc]).unwrap()])
            .unwrap()
    }

    fn cyclic(n: usize) -> FiniteGroup {
        let cyc: Vec<u32> = (1..=n as u32).collect();
        FiniteGroup::new(n, vec![Perm::from_cycles(n, &[cyc]).unwrap()]).unwrap()
    }

    #[test]
    fn identical_tuples_are_related() {
        let g = cyclic(5);
        let t = [0, 3, 1];
        for r in 1..=3 {
            assert!(r_related(&g, &t, &t, r).unwrap());
        }
    }

    #[test]
    fn symmetric_and_regular_actions_are_binary() {
        assert_eq!(binary_bounded(&sym(5), 5, DEFAULT_NODE_BUDGET).unwrap(), BinaryVerdict::NoViolation { max_n: 5 });
        assert_eq!(binary_bounded(&cyclic(4), 4, DEFAULT_NODE_BUDGET).unwrap(), BinaryVerdict::NoViolation { max_n: 4 });
    }

    #[test]
    fn alternating_group_is_not_binary() {
        let a5 = FiniteGroup::new(
            5,
            vec![Perm::from_cycles(5, &[vec![1, 2, 3]]).unwrap(), Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap()],
        )
        .unwrap();
        match binary_bounded(&a5, 5, DEFAULT_NODE_BUDGET).unwrap() {
            BinaryVerdict::Violation { i, j, n } => {
                assert!(r_related(&a5, &i, &j, 2).unwrap());
                assert!(!r_related(&a5, &i, &j, n).unwrap());
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn budget_gives_inconclusive() {
        assert!(matches!(binary_bounded(&sym(6), 6, 2).unwrap(), BinaryVerdict::Inconclusive { .. }));
    }

    #[test]
    fn inconsistent_tuples_have_no_transporter() {
        let g = sym(4);
        let mut tr = Transporter::new(&g);
        assert!(tr.find(&[0, 0], &[1, 2]).unwrap().is_none());
        assert!(tr.find(&[0, 1], &[2, 2]).unwrap().is_none());
        let h = tr.find(&[0, 1, 0], &[3, 2, 3]).unwrap().unwrap();
        assert_eq!((h.apply(0), h.apply(1)), (3, 2));
    }
}
