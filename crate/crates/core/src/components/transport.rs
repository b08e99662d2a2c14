//! Component groups through a transport group.
//!
//! Every class `C` met by the component `X` of `s` gets a vertex
//! `v_C = rep(C)^c_C` in `X`. The transport group `T` is generated by the
//! centralizers `C_G(v_C)` together with, for each neighbour `w` of some
//! `v_C`, an element carrying the chosen vertex of `w`'s class to `w`.
//! Then `T` preserves `X` and acts transitively on each `X ∩ C`, so
//! `|X| = sum_C |T : C_G(v_C)|` and `Δ` is the normal closure of the
//! `v_C` in `T`.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::registry::ClassRegistry;
use super::{quotient_in, ClassSet};
use crate::algebra::Perm;
use crate::error::{Error, Result};
use crate::group::bsgs::{BsgsOptions, Completion};
use crate::group::closure::{normal_closure, subgroup_closure, ClosureMode, VERIFY_COST_LIMIT};
use crate::group::{derive_seed, stream, FiniteGroup, ENUMERATION_BOUND};

pub const DEFAULT_SAMPLES: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    Exact,
    /// Randomized, but the transport group reached the whole group.
    ExactG,
    RandomizedLowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransportMode {
    Deterministic,
    Randomized { samples: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct TransportOptions {
    pub mode: TransportMode,
    pub seed: u64,
    pub time_limit: Option<Duration>,
}

impl Default for TransportOptions {
    fn default() -> Self {
        TransportOptions { mode: TransportMode::Deterministic, seed: 0, time_limit: None }
    }
}

impl TransportOptions {
    pub fn randomized(samples: usize, seed: u64) -> TransportOptions {
        TransportOptions { mode: TransportMode::Randomized { samples }, seed, time_limit: None }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Centralizer { class: usize },
    Transport { from: usize, to: usize },
}

pub struct ComponentResult {
    pub transport: FiniteGroup,
    /// Generators of the transport group with where each came from.
    pub generators: Vec<(Perm, Provenance)>,
    pub delta: FiniteGroup,
    /// `|X|`, when every centralizer was computed exactly.
    pub component_size: Option<u128>,
    /// Classes met by the component, in discovery order.
    pub classes: Vec<usize>,
    /// The chosen vertex of each class in `classes`.
    pub vertices: Vec<Perm>,
    pub completeness: Completeness,
    pub warnings: Vec<String>,
}

struct Vertex {
    class: usize,
    /// `rep(class)^conj` is the vertex.
    conj: Perm,
}

/// Neighbours of `rep(id)` up to conjugation by its centralizer, found by
/// enumerating the centralizer.
fn exact_neighbours(reg: &mut ClassRegistry, d: &ClassSet, id: usize) -> Result<Vec<(Perm, usize)>> {
    let r = reg.rep(id).clone();
    let p = reg.prime() as i64;
    let z = &reg.centralizer(id)?.group;
    let zgens = z.generators().to_vec();
    let mut cands: Vec<Perm> = Vec::new();
    z.for_each_element(ENUMERATION_BOUND, |w| {
        if *w != r && !w.is_identity() && w.pow(p).is_identity() {
            let q = r.mul(&w.inverse());
            if q.pow(p).is_identity() {
                cands.push(w.clone());
            }
        }
        true
    })?;
    let pos: HashMap<&Perm, usize> = cands.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..cands.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, w) in cands.iter().enumerate() {
        for g in &zgens {
            let j = *pos.get(&w.conj(g)).ok_or_else(|| {
                Error::Internal("centralizer does not preserve its involutions".into())
            })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..cands.len() {
        if find(&mut parent, i) != i {
            continue;
        }
        let w = &cands[i];
        if let Some(c) = d.class_of(reg, w)? {
            if quotient_in(reg, d, &r, w)? {
                out.push((w.clone(), c));
            }
        }
    }
    Ok(out)
}

/// Neighbours of `rep(id)` among `p`-parts of random centralizer elements.
/// Sample `i` depends only on the seed, the class and `i`.
fn sampled_neighbours(
    reg: &mut ClassRegistry,
    d: &ClassSet,
    id: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<(Perm, usize, u64)>> {
    let r = reg.rep(id).clone();
    let p = reg.prime() as u128;
    let class_seed = derive_seed(seed, "neighbours", reg.key(id));
    let z = &reg.centralizer(id)?.group;
    let cands: Vec<(usize, Perm)> = (0..samples)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = stream(class_seed, "sample", i as u64);
            let x = z.random_element(&mut rng);
            let m = x.order();
            if m % p != 0 {
                return None;
            }
            let w = x.pow((m / p) as i64);
            let q = r.mul(&w.inverse());
            (w != r && !q.is_identity() && q.pow(p as i64).is_identity()).then_some((i, w))
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, w) in cands {
        if !seen.insert(w.clone()) {
            continue;
        }
        if let Some(c) = d.class_of(reg, &w)? {
            if quotient_in(reg, d, &r, &w)? {
                out.push((w, c, derive_seed(class_seed, "conjugator", i as u64)));
            }
        }
    }
    Ok(out)
}

/// Component group of `s` in the commuting graph on `d`.
pub fn transport(reg: &mut ClassRegistry, d: &ClassSet, s: &Perm, opts: &TransportOptions) -> Result<ComponentResult> {
    let group = reg.group();
    group.check_member(s)?;
    let start_class = d
        .class_of(reg, s)?
        .ok_or_else(|| Error::Usage("the element does not lie in the given classes".into()))?;
    let deadline = opts.time_limit.map(|t| Instant::now() + t);
    let mut lower = false;
    let mut rng = stream(opts.seed, "transport-start", 0);
    let c0 = reg
        .conjugator(start_class, s, &mut rng)?
        .ok_or_else(|| Error::Internal("no conjugator to the class representative".into()))?;
    let mut queue = vec![Vertex { class: start_class, conj: c0 }];
    let mut slot: HashMap<usize, usize> = HashMap::from([(start_class, 0)]);
    let mut generators: Vec<(Perm, Provenance)> = Vec::new();
    let mut idx = 0;
    while idx < queue.len() {
        if deadline.is_some_and(|t| Instant::now() > t) {
            reg.warn("time limit reached; transport group is partial".into());
            lower = true;
            break;
        }
        let class = queue[idx].class;
        let c = queue[idx].conj.clone();
        let z = reg.centralizer(class)?;
        let z_exact = z.exact;
        let z_order = z.group.order();
        for g in z.group.generators() {
            generators.push((g.conj(&c), Provenance::Centralizer { class }));
        }
        let enumerable = z_exact && z_order <= ENUMERATION_BOUND;
        let neighbours: Vec<(Perm, usize, u64)> = match opts.mode {
            TransportMode::Deterministic if enumerable => exact_neighbours(reg, d, class)?
                .into_iter()
                .enumerate()
                .map(|(i, (w, k))| (w, k, derive_seed(opts.seed, "exact-conjugator", i as u64)))
                .collect(),
            TransportMode::Deterministic => {
                reg.warn(format!(
                    "class {}: centralizer too large to enumerate; sampling neighbours",
                    reg.label(class)
                ));
                lower = true;
                sampled_neighbours(reg, d, class, DEFAULT_SAMPLES, opts.seed)?
            }
            TransportMode::Randomized { samples } => {
                lower = true;
                sampled_neighbours(reg, d, class, samples, opts.seed)?
            }
        };
        for (w, k, cseed) in neighbours {
            let mut crng = stream(cseed, "conjugator", 0);
            let Some(dk) = reg.conjugator(k, &w, &mut crng)? else {
                reg.warn(format!("no conjugator found into class {}; neighbour skipped", reg.label(k)));
                lower = true;
                continue;
            };
            let target = dk.mul(&c);
            match slot.get(&k) {
                Some(&j) => {
                    let t = queue[j].conj.inverse().mul(&target);
                    if !t.is_identity() {
                        generators.push((t, Provenance::Transport { from: class, to: k }));
                    }
                }
                None => {
                    slot.insert(k, queue.len());
                    queue.push(Vertex { class: k, conj: target });
                }
            }
        }
        idx += 1;
    }

    let degree = group.degree();
    let gens: Vec<Perm> = generators.iter().map(|(g, _)| g.clone()).collect();
    let t = if lower {
        let seed = derive_seed(opts.seed, "transport-bsgs", 0);
        let opts = BsgsOptions { completion: Completion::Randomized, seed, ..Default::default() };
        let mut t = FiniteGroup::with_options(degree, gens.clone(), &opts)?;
        if t.bsgs().verification_cost() <= VERIFY_COST_LIMIT {
            let mut b = t.bsgs().clone();
            b.complete_deterministic();
            t = FiniteGroup::from_bsgs(degree, gens, b);
        }
        t
    } else {
        subgroup_closure(degree, &gens)?
    };
    let vertices: Vec<Perm> = queue.iter().map(|v| reg.rep(v.class).conj(&v.conj)).collect();
    let whole = group.order_is_exact() && t.order() == group.order();
    let conjugators = if whole { group.generators() } else { t.generators() };
    let mode = if lower {
        ClosureMode::Randomized { seed: derive_seed(opts.seed, "delta", 0) }
    } else {
        ClosureMode::Exact
    };
    let delta = normal_closure(degree, &vertices, conjugators, mode)?;
    let component_size = if lower {
        None
    } else {
        let mut total = 0u128;
        for v in &queue {
            total += t.order() / reg.centralizer(v.class)?.group.order();
        }
        Some(total)
    };
    let completeness = if !lower {
        Completeness::Exact
    } else if whole {
        Completeness::ExactG
    } else {
        Completeness::RandomizedLowerBound
    };
    Ok(ComponentResult {
        transport: t,
        generators,
        delta,
        component_size,
        classes: queue.iter().map(|v| v.class).collect(),
        vertices,
        completeness,
        warnings: reg.take_warnings(),
    })
}

pub struct ComponentBfs {
    /// Elements of the component, in visiting order.
    pub members: Vec<Perm>,
}

impl ComponentBfs {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The subgroup generated by the component.
    pub fn generated(&self, degree: usize) -> Result<FiniteGroup> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut h = subgroup_closure(degree, &[])?;
        for x in &self.members {
            if !h.contains(x) {
                gens.push(x.clone());
                h = subgroup_closure(degree, &gens)?;
            }
        }
        Ok(h)
    }
}

/// Breadth-first search of the component of `s`. Every class of `d` is
/// enumerated; neighbours of `rep(C)` are found by scanning all of `d`, and
/// neighbours of `rep(C)^c` are their conjugates by `c`.
pub fn component_bfs(reg: &mut ClassRegistry, d: &ClassSet, s: &Perm) -> Result<ComponentBfs> {
    reg.group().check_member(s)?;
    for &id in d.ids() {
        if !reg.ensure_orbit(id)? {
            return Err(Error::budget("class enumeration for search", 0, 0));
        }
    }
    let mut nbrs: HashMap<usize, Vec<(Perm, usize)>> = HashMap::new();
    for &id in d.ids() {
        let r = reg.rep(id).clone();
        let mut list = Vec::new();
        for &k in d.ids() {
            let o = reg.orbit(k).expect("ensured");
            for w in o.iter() {
                if w != r && w.commutes_with(&r) {
                    list.push((w, k));
                }
            }
        }
        let mut kept = Vec::new();
        for (w, k) in list {
            if quotient_in(reg, d, &r, &w)? {
                kept.push((w, k));
            }
        }
        nbrs.insert(id, kept);
    }
    let start = d
        .class_of(reg, s)?
        .ok_or_else(|| Error::Usage("the element does not lie in the given classes".into()))?;
    let mut seen: HashMap<usize, Vec<bool>> =
        d.ids().iter().map(|&k| (k, vec![false; reg.orbit(k).expect("ensured").len()])).collect();
    let i0 = reg.orbit(start).expect("ensured").lookup(s).expect("classified");
    seen.get_mut(&start).expect("in d")[i0] = true;
    let mut queue = vec![(start, i0)];
    let mut members = Vec::new();
    let mut pos = 0;
    while pos < queue.len() {
        let (k, i) = queue[pos];
        pos += 1;
        let o = reg.orbit(k).expect("ensured");
        members.push(o.element(i));
        let c = o.conjugator(i);
        for (w, kw) in &nbrs[&k] {
            let j = reg
                .orbit(*kw)
                .expect("ensured")
                .lookup(&w.conj(&c))
                .ok_or_else(|| Error::Internal("class not closed under conjugation".into()))?;
            let flag = &mut seen.get_mut(kw).expect("in d")[j];
            if !*flag {
                *flag = true;
                queue.push((*kw, j));
            }
        }
    }
    Ok(ComponentBfs { members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_group, GroupSpec, InvolutionLabel};

    fn run(spec: &str, label: &str) -> (u128, Option<u128>, bool) {
        let spec: GroupSpec = spec.parse().unwrap();
        let cat = make_group(&spec).unwrap();
        let mut reg = ClassRegistry::for_catalog(&cat);
        let s = cat.involution_rep(&InvolutionLabel::parse(label, &spec).unwrap()).unwrap();
        let d = ClassSet::from_reps(&mut reg, &[s.clone()]).unwrap();
        let r = transport(&mut reg, &d, &s, &TransportOptions::default()).unwrap();
        assert_eq!(r.completeness, Completeness::Exact);
        (r.delta.order(), r.component_size, r.delta.is_elementary_abelian(2))
    }

    #[test]
    fn sl24_component_is_klein() {
        assert_eq!(run("SL(2,4)", "J2"), (4, Some(3), true));
    }

    #[test]
    fn sl32_component_is_everything() {
        assert_eq!(run("SL(3,2)", "J2 J1"), (168, Some(21), false));
    }

    #[test]
    fn a5_order_5_union_agrees_with_search() {
        let g = FiniteGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[vec![1, 2, 3]]).unwrap(),
                Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap(),
            ],
        )
        .unwrap();
        let mut reg = ClassRegistry::new(&g, 5).unwrap();
        let (ids, _) = reg.all_classes().unwrap();
        let d = ClassSet::from_ids(ids);
        let s = Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap();
        let r = transport(&mut reg, &d, &s, &TransportOptions::default()).unwrap();
        let b = component_bfs(&mut reg, &d, &s).unwrap();
        assert_eq!(r.component_size, Some(b.len() as u128));
        assert_eq!(r.delta.order(), b.generated(5).unwrap().order());
    }
}
