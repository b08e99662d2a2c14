//! Base and strong generating sets with Schreier vectors.
//!
//! Construction is random Schreier-Sims (stopping when a known order is
//! reached, or after a run of sifts that change nothing) optionally followed
//! by deterministic Schreier-generator verification, which makes the result
//! exact.

use rand::Rng;

use super::random::{stream, ProductReplacement, StreamRng};
use crate::algebra::Perm;
use crate::error::{Error, Result};

const ABSENT: i32 = -1;
const ROOT: i32 = -2;

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    /// Indices into the strong generators that fix all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// Schreier vector: generator index reaching a point, `ROOT` or `ABSENT`.
    sv: Vec<i32>,
    /// For orbit position `i`, how many level generators have had their
    /// Schreier generator verified.
    checked: Vec<u32>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Level {
        let mut sv = vec![ABSENT; degree];
        sv[point as usize] = ROOT;
        Level { point, gens: Vec::new(), orbit: vec![point], sv, checked: vec![0] }
    }

    fn add_gen(&mut self, gi: usize, gens: &[Perm]) {
        self.gens.push(gi);
        let g = &gens[gi];
        let old = self.orbit.len();
        for pos in 0..old {
            let d = g.apply(self.orbit[pos]);
            if self.sv[d as usize] == ABSENT {
                self.sv[d as usize] = gi as i32;
                self.orbit.push(d);
                self.checked.push(0);
            }
        }
        let mut pos = old;
        while pos < self.orbit.len() {
            let c = self.orbit[pos];
            for &k in &self.gens {
                let d = gens[k].apply(c);
                if self.sv[d as usize] == ABSENT {
                    self.sv[d as usize] = k as i32;
                    self.orbit.push(d);
                    self.checked.push(0);
                }
            }
            pos += 1;
        }
    }
}

/// Whether construction must end with deterministic verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completion {
    /// Always verify every Schreier generator; the order is exact.
    Deterministic,
    /// Stop at the known order, or after an unproductive run of random sifts.
    Randomized,
}

#[derive(Clone, Debug)]
pub struct BsgsOptions {
    pub base_prefix: Vec<u32>,
    pub known_order: Option<u128>,
    pub seed: u64,
    pub completion: Completion,
    /// Consecutive non-extending random sifts before the random phase stops.
    pub stable_run: usize,
}

impl Default for BsgsOptions {
    fn default() -> Self {
        BsgsOptions {
            base_prefix: Vec::new(),
            known_order: None,
            seed: 0,
            completion: Completion::Deterministic,
            stable_run: 40,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    gens: Vec<Perm>,
    inv: Vec<Perm>,
    levels: Vec<Level>,
    complete: bool,
}

impl Bsgs {
    pub fn build(degree: usize, generators: &[Perm], opts: &BsgsOptions) -> Result<Bsgs> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Domain("generator degree mismatch".into()));
        }
        let mut b = Bsgs::empty(degree, &opts.base_prefix)?;
        for g in generators {
            b.absorb(g);
        }
        if let Some(target) = opts.known_order {
            if b.order() > target {
                return Err(Error::Internal(format!(
                    "group order {} exceeds the expected order {target}",
                    b.order()
                )));
            }
        }
        let reached = |b: &Bsgs| opts.known_order.is_some_and(|t| b.order() == t);
        if !reached(&b) && generators.iter().any(|g| !g.is_identity()) {
            let mut pr =
                ProductReplacement::new(degree, generators, stream(opts.seed, "bsgs", 0));
            let limit = if opts.known_order.is_some() {
                opts.stable_run.max(400)
            } else {
                opts.stable_run
            };
            let mut stable = 0;
            while stable < limit && !reached(&b) {
                let x = pr.next_element();
                if b.absorb(&x) {
                    stable = 0;
                } else {
                    stable += 1;
                }
                if let Some(t) = opts.known_order {
                    if b.order() > t {
                        return Err(Error::Internal(format!(
                            "group order exceeds the expected order {t}"
                        )));
                    }
                }
            }
        }
        if reached(&b) || b.gens.is_empty() {
            b.complete = true;
        } else if opts.completion == Completion::Deterministic {
            b.complete_deterministic();
        }
        Ok(b)
    }

    fn empty(degree: usize, prefix: &[u32]) -> Result<Bsgs> {
        let mut levels = Vec::new();
        for (i, &p) in prefix.iter().enumerate() {
            if p as usize >= degree || prefix[..i].contains(&p) {
                return Err(Error::Domain(format!("invalid base prefix point {p}")));
            }
            levels.push(Level::new(p, degree));
        }
        Ok(Bsgs { degree, gens: Vec::new(), inv: Vec::new(), levels, complete: false })
    }

    /// Sifts `g` and inserts the residue as a strong generator if it is
    /// nontrivial. Returns whether the structure changed.
    pub fn absorb(&mut self, g: &Perm) -> bool {
        let (h, j) = self.sift_from(g.clone(), 0);
        if h.is_identity() && j == self.levels.len() {
            return false;
        }
        self.insert(h, j);
        self.complete = false;
        true
    }

    fn insert(&mut self, h: Perm, j: usize) {
        debug_assert!(!h.is_identity());
        let mut j = j;
        if j == self.levels.len() {
            let point = (0..self.degree as u32).find(|&p| h.apply(p) != p).expect("nontrivial");
            self.levels.push(Level::new(point, self.degree));
            j = self.levels.len() - 1;
        }
        let gi = self.gens.len();
        self.inv.push(h.inverse());
        self.gens.push(h);
        for li in 0..=j {
            self.levels[li].add_gen(gi, &self.gens);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Strong generators of the stabilizer of the first `level` base points.
    pub fn level_generators(&self, level: usize) -> Vec<Perm> {
        match self.levels.get(level) {
            Some(l) => l.gens.iter().map(|&k| self.gens[k].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    pub fn in_orbit(&self, level: usize, point: u32) -> bool {
        self.levels[level].sv[point as usize] != ABSENT
    }

    /// Rough number of Schreier generators a deterministic verification
    /// would examine.
    pub fn verification_cost(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128 * l.gens.len() as u128).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// `h * u_gamma^-1` where `u_gamma` maps the level's base point to `gamma`.
    fn strip(&self, li: usize, mut gamma: u32, h: &mut Perm) {
        let level = &self.levels[li];
        loop {
            let k = level.sv[gamma as usize];
            if k == ROOT {
                return;
            }
            let inv = &self.inv[k as usize];
            h.mul_assign(inv);
            gamma = inv.apply(gamma);
        }
    }

    /// The transversal element mapping the base point of `level` to `gamma`.
    pub fn transversal(&self, level: usize, gamma: u32) -> Perm {
        let l = &self.levels[level];
        let mut path = Vec::new();
        let mut c = gamma;
        loop {
            let k = l.sv[c as usize];
            if k == ROOT {
                break;
            }
            debug_assert!(k != ABSENT, "point not in orbit");
            path.push(k as usize);
            c = self.inv[k as usize].apply(c);
        }
        let mut u = Perm::identity(self.degree);
        for &k in path.iter().rev() {
            u.mul_assign(&self.gens[k]);
        }
        u
    }

    /// Sifts from `start`; returns the residue and the level where it stopped.
    pub fn sift_from(&self, mut h: Perm, start: usize) -> (Perm, usize) {
        for li in start..self.levels.len() {
            let gamma = h.apply(self.levels[li].point);
            if self.levels[li].sv[gamma as usize] == ABSENT {
                return (h, li);
            }
            self.strip(li, gamma, &mut h);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.sift_from(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Verifies every Schreier generator, extending the structure as needed.
    pub fn complete_deterministic(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            match self.check_level(i - 1) {
                None => i -= 1,
                Some(j) => i = j + 1,
            }
        }
        self.complete = true;
    }

    fn check_level(&mut self, li: usize) -> Option<usize> {
        let mut pos = 0;
        while pos < self.levels[li].orbit.len() {
            let gamma = self.levels[li].orbit[pos];
            let start = self.levels[li].checked[pos] as usize;
            let ngens = self.levels[li].gens.len();
            if start < ngens {
                let u = self.transversal(li, gamma);
                for gpos in start..ngens {
                    let k = self.levels[li].gens[gpos];
                    let delta = self.gens[k].apply(gamma);
                    let mut sg = u.mul(&self.gens[k]);
                    self.strip(li, delta, &mut sg);
                    let (h, j) = self.sift_from(sg, li + 1);
                    self.levels[li].checked[pos] = gpos as u32 + 1;
                    if !h.is_identity() {
                        self.insert(h, j);
                        return Some(j.min(self.levels.len() - 1));
                    }
                }
            }
            pos += 1;
        }
        None
    }

    /// A uniformly distributed element (exact when the structure is complete).
    pub fn random_element(&self, rng: &mut StreamRng) -> Perm {
        let mut g = Perm::identity(self.degree);
        for li in (0..self.levels.len()).rev() {
            let orbit = &self.levels[li].orbit;
            let gamma = orbit[rng.random_range(0..orbit.len())];
            g.mul_assign(&self.transversal(li, gamma));
        }
        g
    }

    /// Calls `f` on every element; stops early when `f` returns false.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm) -> bool) {
        let transversals: Vec<Vec<Perm>> = (0..self.levels.len())
            .map(|li| self.levels[li].orbit.iter().map(|&c| self.transversal(li, c)).collect())
            .collect();
        // Elements are u_k ... u_1 with the deepest level applied first.
        fn rec(
            ts: &[Vec<Perm>],
            depth: usize,
            cur: &Perm,
            f: &mut dyn FnMut(&Perm) -> bool,
        ) -> bool {
            if depth == 0 {
                return f(cur);
            }
            for u in &ts[depth - 1] {
                let next = cur.mul(u);
                if !rec(ts, depth - 1, &next, f) {
                    return false;
                }
            }
            true
        }
        rec(&transversals, transversals.len(), &Perm::identity(self.degree), &mut f);
    }

    /// Images of the base points under `g`; determines `g` within the group.
    pub fn base_image(&self, g: &Perm) -> Vec<u32> {
        self.levels.iter().map(|l| g.apply(l.point)).collect()
    }

    /// An element mapping the base prefix `[0..points.len())` to `points`,
    /// if one exists. Requires the prefix levels to match.
    pub fn transporter_from_base(&self, points: &[u32]) -> Option<Perm> {
        // g = u_k ... u_1, chosen level by level from the top.
        let mut g = Perm::identity(self.degree);
        let mut acc: Vec<Perm> = Vec::new();
        for (li, t) in points.iter().enumerate() {
            if li >= self.levels.len() {
                return None;
            }
            // Pull the target back through the elements chosen so far.
            let mut pulled = *t;
            for a in &acc {
                pulled = a.inverse().apply(pulled);
            }
            if self.levels[li].sv[pulled as usize] == ABSENT {
                return None;
            }
            acc.push(self.transversal(li, pulled));
        }
        for a in acc.iter().rev() {
            g.mul_assign(a);
        }
        Some(g)
    }
}
