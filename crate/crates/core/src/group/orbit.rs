//! Conjugation orbits with a transversal tree.
//!
//! Each orbit element is keyed by its base image under the ambient group's
//! BSGS, which determines it uniquely. Parent pointers record how each
//! element was reached, so a conjugator from the seed to any element can be
//! rebuilt as a word in the group generators.

use std::collections::HashMap;

use super::FiniteGroup;
use crate::algebra::Perm;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct OrbitBudget {
    pub max_elements: usize,
    pub max_bytes: usize,
}

impl Default for OrbitBudget {
    fn default() -> Self {
        OrbitBudget { max_elements: 10_000_000, max_bytes: 2_500_000_000 }
    }
}

const CHECK_EVERY: usize = 100_000;
const NO_PARENT: u32 = u32::MAX;

fn key_hash(key: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &x in key {
        h ^= x as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
        h ^= h >> 29;
    }
    h
}

pub struct OrbitIndex {
    degree: usize,
    base: Vec<u32>,
    gens: Vec<Perm>,
    /// Element `i` occupies `arena[i*degree..(i+1)*degree]`.
    arena: Vec<u16>,
    parent: Vec<u32>,
    via: Vec<u16>,
    index: HashMap<u64, u32>,
    /// Elements whose key hash collided with an earlier, different key.
    overflow: HashMap<Vec<u32>, u32>,
}

impl OrbitIndex {
    /// Breadth-first enumeration of `s^G`.
    pub fn build(group: &FiniteGroup, s: &Perm, budget: &OrbitBudget) -> Result<OrbitIndex> {
        let degree = group.degree();
        if degree > 65536 {
            return Err(Error::Unsupported("conjugation orbits need degree <= 65536".into()));
        }
        if s.degree() != degree {
            return Err(Error::Domain("element degree does not match the group".into()));
        }
        if group.generators().len() > u16::MAX as usize {
            return Err(Error::Unsupported("too many generators".into()));
        }
        let base = group.bsgs().base();
        let mut idx = OrbitIndex {
            degree,
            base,
            gens: group.generators().to_vec(),
            arena: Vec::new(),
            parent: Vec::new(),
            via: Vec::new(),
            index: HashMap::new(),
            overflow: HashMap::new(),
        };
        idx.push(s, NO_PARENT, 0);
        let mut pos = 0;
        // Large degrees exhaust memory long before the element count does.
        let per_elem = 2 * degree + 32;
        let interval = CHECK_EVERY
            .min(budget.max_elements.saturating_add(1))
            .min((budget.max_bytes / per_elem / 8).max(1000));
        let mut next_check = interval;
        let mut scratch = vec![0u32; degree];
        while pos < idx.len() {
            for k in 0..idx.gens.len() {
                idx.conj_into(pos, k, &mut scratch);
                let z = Perm::from_images_unchecked(scratch.clone());
                if idx.lookup(&z).is_none() {
                    idx.push(&z, pos as u32, k as u16);
                    if idx.len() >= next_check {
                        next_check += interval;
                        idx.check_budget(budget)?;
                    }
                }
            }
            pos += 1;
        }
        idx.check_budget(budget)?;
        idx.index.shrink_to_fit();
        Ok(idx)
    }

    fn check_budget(&self, budget: &OrbitBudget) -> Result<()> {
        if self.len() > budget.max_elements {
            return Err(Error::budget(
                "conjugation orbit elements",
                self.len() as u64,
                budget.max_elements as u64,
            ));
        }
        let bytes = self.approx_bytes();
        if bytes > budget.max_bytes {
            return Err(Error::budget("conjugation orbit memory", bytes as u64, budget.max_bytes as u64));
        }
        Ok(())
    }

    pub fn approx_bytes(&self) -> usize {
        self.arena.capacity() * 2 + self.parent.capacity() * 6 + self.index.capacity() * 24
    }

    fn push(&mut self, x: &Perm, parent: u32, via: u16) {
        let id = self.len() as u32;
        let key: Vec<u32> = self.base.iter().map(|&b| x.apply(b)).collect();
        let h = key_hash(&key);
        if self.index.contains_key(&h) {
            self.overflow.insert(key, id);
        } else {
            self.index.insert(h, id);
        }
        self.arena.extend(x.images().iter().map(|&v| v as u16));
        self.parent.push(parent);
        self.via.push(via);
    }

    /// `element(i)^{gens[k]}` written into `out`.
    fn conj_into(&self, i: usize, k: usize, out: &mut [u32]) {
        let y = &self.arena[i * self.degree..(i + 1) * self.degree];
        let g = &self.gens[k];
        for (p, &yp) in y.iter().enumerate() {
            out[g.apply(p as u32) as usize] = g.apply(yp as u32);
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn element(&self, i: usize) -> Perm {
        let y = &self.arena[i * self.degree..(i + 1) * self.degree];
        Perm::from_images_unchecked(y.iter().map(|&v| v as u32).collect())
    }

    fn matches(&self, i: usize, key: &[u32]) -> bool {
        let y = &self.arena[i * self.degree..(i + 1) * self.degree];
        self.base.iter().zip(key).all(|(&b, &k)| y[b as usize] as u32 == k)
    }

    /// Position of `x` in the orbit. The key only identifies elements of the
    /// ambient group, so a full comparison guards against foreign inputs.
    pub fn lookup(&self, x: &Perm) -> Option<usize> {
        if x.degree() != self.degree {
            return None;
        }
        let key: Vec<u32> = self.base.iter().map(|&b| x.apply(b)).collect();
        let h = key_hash(&key);
        let cand = match self.index.get(&h) {
            Some(&i) if self.matches(i as usize, &key) => Some(i as usize),
            _ => self.overflow.get(&key).map(|&i| i as usize),
        }?;
        let y = &self.arena[cand * self.degree..(cand + 1) * self.degree];
        y.iter().zip(x.images()).all(|(&a, &b)| a as u32 == b).then_some(cand)
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.lookup(x).is_some()
    }

    /// Generator indices `k_1..k_m` with `element(i) = s^(g_k1 ... g_km)`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut c = i;
        while self.parent[c] != NO_PARENT {
            w.push(self.via[c] as usize);
            c = self.parent[c] as usize;
        }
        w.reverse();
        w
    }

    /// An element `c` with `s^c = element(i)`.
    pub fn conjugator(&self, i: usize) -> Perm {
        let mut c = Perm::identity(self.degree);
        for k in self.word(i) {
            c.mul_assign(&self.gens[k]);
        }
        c
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Index reached from element `i` by conjugating with generator `k`.
    pub fn neighbour(&self, i: usize, k: usize) -> Option<usize> {
        let mut scratch = vec![0u32; self.degree];
        self.conj_into(i, k, &mut scratch);
        self.lookup(&Perm::from_images_unchecked(scratch))
    }

    pub fn iter(&self) -> impl Iterator<Item = Perm> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s5() -> FiniteGroup {
        FiniteGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[vec![1, 2]]).unwrap(),
                Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn transposition_class_of_s5() {
        let g = s5();
        let t = Perm::from_cycles(5, &[vec![1, 2]]).unwrap();
        let o = OrbitIndex::build(&g, &t, &OrbitBudget::default()).unwrap();
        assert_eq!(o.len(), 10);
        for i in 0..o.len() {
            assert_eq!(t.conj(&o.conjugator(i)), o.element(i));
            assert_eq!(o.lookup(&o.element(i)), Some(i));
        }
        assert!(o.lookup(&Perm::from_cycles(5, &[vec![1, 2], vec![3, 4]]).unwrap()).is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let g = s5();
        let t = Perm::from_cycles(5, &[vec![1, 2]]).unwrap();
        let b = OrbitBudget { max_elements: 5, max_bytes: usize::MAX };
        assert!(matches!(OrbitIndex::build(&g, &t, &b), Err(Error::Budget { .. })));
    }
}
