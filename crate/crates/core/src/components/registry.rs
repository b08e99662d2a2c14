//! Conjugacy classes of elements of prime order.
//!
//! Classes are identified either by catalog invariants (characteristic 2
//! involutions) or by explicit conjugation orbits. Orbits and centralizers
//! are computed lazily and cached per class.

use sha2::{Digest, Sha256};

use crate::algebra::Perm;
use crate::catalog::{CatalogGroup, ClassInvariant};
use crate::error::{Error, Result};
use crate::group::bsgs::{BsgsOptions, Completion};
use crate::group::centralizer::{bray_elements, centralizer_from_orbit};
use crate::group::closure::VERIFY_COST_LIMIT;
use crate::group::{derive_seed, stream, FiniteGroup, OrbitBudget, OrbitIndex, StreamRng, ENUMERATION_BOUND};

/// Random conjugator searches give up after this many attempts.
pub const CONJUGATOR_TRIES: usize = 256;
const BRAY_COUNT: usize = 40;
const CLASS_SAMPLES: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Invariant,
    Orbit,
}

pub struct Centralizer {
    pub group: FiniteGroup,
    /// False when only a subgroup of the centralizer was found.
    pub exact: bool,
}

struct ClassInfo {
    rep: Perm,
    label: String,
    key: u64,
    invariant: Option<ClassInvariant>,
    orbit: Option<Option<OrbitIndex>>,
    centralizer: Option<Centralizer>,
}

pub struct ClassRegistry<'a> {
    group: &'a FiniteGroup,
    catalog: Option<&'a CatalogGroup>,
    p: u32,
    membership: Membership,
    budget: OrbitBudget,
    seed: u64,
    classes: Vec<ClassInfo>,
    warnings: Vec<String>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Stable 64-bit digest of a permutation.
pub fn perm_key(x: &Perm) -> u64 {
    let d = Sha256::digest(x.encode());
    u64::from_le_bytes(d[..8].try_into().expect("digest is 32 bytes"))
}

/// For involutions `r` and `x`: if `r^g x` has odd order `m` for some `g`,
/// then `g c^((m+1)/2)` with `c = r^g x` conjugates `r` to `x`. The first
/// attempt uses `g = 1`.
pub fn dihedral_conjugator(
    group: &FiniteGroup,
    r: &Perm,
    x: &Perm,
    rng: &mut StreamRng,
    tries: usize,
) -> Option<Perm> {
    if r == x {
        return Some(group.identity());
    }
    for attempt in 0..tries {
        let g = if attempt == 0 { group.identity() } else { group.random_element(rng) };
        let y = r.conj(&g);
        let c = y.mul(x);
        let m = c.order();
        if m % 2 == 1 {
            let t = g.mul(&c.pow(((m + 1) / 2) as i64));
            if r.conj(&t) == *x {
                return Some(t);
            }
        }
    }
    None
}

impl<'a> ClassRegistry<'a> {
    /// Registry for elements of prime order `p` in `group`, classified by
    /// conjugation orbits.
    pub fn new(group: &'a FiniteGroup, p: u32) -> Result<ClassRegistry<'a>> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(ClassRegistry {
            group,
            catalog: None,
            p,
            membership: Membership::Orbit,
            budget: OrbitBudget::default(),
            seed: 0,
            classes: Vec::new(),
            warnings: Vec::new(),
        })
    }

    /// Registry for elements of order equal to the characteristic. In
    /// characteristic 2 classes are told apart by their invariants.
    pub fn for_catalog(cat: &'a CatalogGroup) -> ClassRegistry<'a> {
        let p = cat.characteristic();
        let mut r = ClassRegistry::new(cat.group(), p).expect("characteristic is prime");
        r.catalog = Some(cat);
        if p == 2 {
            r.membership = Membership::Invariant;
        }
        r
    }

    pub fn set_membership(&mut self, m: Membership) -> Result<()> {
        if m == Membership::Invariant && (self.catalog.is_none() || self.p != 2) {
            return Err(Error::Unsupported(
                "invariant membership needs a catalog group in characteristic 2".into(),
            ));
        }
        self.membership = m;
        Ok(())
    }

    pub fn set_budget(&mut self, budget: OrbitBudget) {
        self.budget = budget;
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
    }

    pub fn group(&self) -> &'a FiniteGroup {
        self.group
    }

    pub fn catalog(&self) -> Option<&'a CatalogGroup> {
        self.catalog
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn rep(&self, id: usize) -> &Perm {
        &self.classes[id].rep
    }

    pub fn label(&self, id: usize) -> &str {
        &self.classes[id].label
    }

    /// Digest of the class representative, used to derive per-class seeds.
    pub fn key(&self, id: usize) -> u64 {
        self.classes[id].key
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn take_warnings(&mut self) -> Vec<String> {
        std::mem::take(&mut self.warnings)
    }

    pub fn warn(&mut self, w: String) {
        self.warnings.push(w);
    }

    /// Whether `x` is a non-identity element with `x^p = 1`.
    pub fn has_order_p(&self, x: &Perm) -> bool {
        !x.is_identity() && x.pow(self.p as i64).is_identity()
    }

    /// The known class containing `x`, if any.
    pub fn identify(&mut self, x: &Perm) -> Result<Option<usize>> {
        if x.degree() != self.group.degree() || !self.has_order_p(x) {
            return Ok(None);
        }
        match self.membership {
            Membership::Invariant => {
                let cat = self.catalog.expect("checked in set_membership");
                let inv = cat.class_invariant(x)?;
                for id in 0..self.classes.len() {
                    let ci = self.classes[id].invariant.as_ref().expect("stored on registration");
                    if ci.rank != inv.rank || ci.jordan != inv.jordan || ci.form_type != inv.form_type {
                        continue;
                    }
                    if ci.family.is_none() || inv.family.is_none() {
                        return Ok(Some(id));
                    }
                    if self.same_split_class(id, x)? {
                        return Ok(Some(id));
                    }
                }
                Ok(None)
            }
            Membership::Orbit => {
                let ct = x.cycle_type();
                for id in 0..self.classes.len() {
                    if self.classes[id].rep.cycle_type() != ct {
                        continue;
                    }
                    if self.ensure_orbit(id)? {
                        if self.orbit(id).expect("ensured").contains(x) {
                            return Ok(Some(id));
                        }
                    } else if self.p == 2 {
                        let mut rng = stream(self.seed, "identify", perm_key(x));
                        if dihedral_conjugator(self.group, &self.classes[id].rep, x, &mut rng, CONJUGATOR_TRIES)
                            .is_some()
                        {
                            return Ok(Some(id));
                        }
                    } else {
                        return Err(Error::budget(
                            "class membership without an orbit",
                            self.budget.max_elements as u64,
                            self.budget.max_elements as u64,
                        ));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Split orthogonal classes share every invariant but the family tag,
    /// so membership is confirmed against the orbit or by a conjugator.
    fn same_split_class(&mut self, id: usize, x: &Perm) -> Result<bool> {
        if self.ensure_orbit(id)? {
            return Ok(self.orbit(id).expect("ensured").contains(x));
        }
        let mut rng = stream(self.seed, "split", perm_key(x));
        let found = dihedral_conjugator(self.group, &self.classes[id].rep, x, &mut rng, CONJUGATOR_TRIES);
        Ok(found.is_some())
    }

    /// The class of `x`, registering a new class if needed.
    pub fn classify(&mut self, x: &Perm) -> Result<usize> {
        if !self.has_order_p(x) {
            return Err(Error::Domain(format!("element does not have order {}", self.p)));
        }
        if let Some(id) = self.identify(x)? {
            return Ok(id);
        }
        self.register(x)
    }

    fn register(&mut self, x: &Perm) -> Result<usize> {
        let id = self.classes.len();
        let (rep, label, invariant) = match self.membership {
            Membership::Invariant => {
                let cat = self.catalog.expect("checked in set_membership");
                let label = cat.label_of(x)?;
                let rep = cat.involution_rep(&label)?;
                let inv = cat.class_invariant(&rep)?;
                let rep = if inv.family.is_some() && cat.class_invariant(x)?.family != inv.family {
                    x.clone()
                } else {
                    rep
                };
                (rep, label.to_string(), Some(inv))
            }
            Membership::Orbit => {
                let label = match self.catalog.and_then(|c| c.label_of(x).ok()) {
                    Some(l) => l.to_string(),
                    None => format!("C{id} {}", cycle_type_string(x)),
                };
                (x.clone(), label, None)
            }
        };
        let key = perm_key(&rep);
        self.classes.push(ClassInfo { rep, label, key, invariant, orbit: None, centralizer: None });
        Ok(id)
    }

    /// Builds the conjugation orbit of class `id` if it fits the budget.
    pub fn ensure_orbit(&mut self, id: usize) -> Result<bool> {
        if self.classes[id].orbit.is_none() {
            let built = match OrbitIndex::build(self.group, &self.classes[id].rep, &self.budget) {
                Ok(o) => Some(o),
                Err(Error::Budget { what, reached, limit }) => {
                    self.warnings.push(format!(
                        "class {}: {what} reached {reached} (limit {limit}); using randomized methods",
                        self.classes[id].label
                    ));
                    None
                }
                Err(e) => return Err(e),
            };
            self.classes[id].orbit = Some(built);
        }
        Ok(self.orbit(id).is_some())
    }

    pub fn orbit(&self, id: usize) -> Option<&OrbitIndex> {
        self.classes[id].orbit.as_ref().and_then(|o| o.as_ref())
    }

    /// `|G : C_G(rep)|` when known exactly.
    pub fn class_size(&mut self, id: usize) -> Result<Option<u128>> {
        if self.ensure_orbit(id)? {
            return Ok(Some(self.orbit(id).expect("ensured").len() as u128));
        }
        Ok(None)
    }

    /// The centralizer of the class representative: exact when the orbit is
    /// available, otherwise the subgroup generated by random centralizing
    /// elements.
    pub fn centralizer(&mut self, id: usize) -> Result<&Centralizer> {
        if self.classes[id].centralizer.is_none() {
            let seed = derive_seed(self.seed, "class-centralizer", self.classes[id].key);
            let z = if self.ensure_orbit(id)? && self.group.order_is_exact() {
                let o = self.orbit(id).expect("ensured");
                Centralizer { group: centralizer_from_orbit(self.group, o, seed)?, exact: true }
            } else {
                let rep = &self.classes[id].rep;
                let elems = if self.p == 2 {
                    bray_elements(self.group, rep, BRAY_COUNT, seed)
                } else {
                    Vec::new()
                };
                let mut gens = vec![rep.clone()];
                gens.extend(elems);
                let opts = BsgsOptions { completion: Completion::Randomized, seed, ..Default::default() };
                let mut g = FiniteGroup::with_options(self.group.degree(), gens.clone(), &opts)?;
                if g.bsgs().verification_cost() <= VERIFY_COST_LIMIT {
                    let mut b = g.bsgs().clone();
                    b.complete_deterministic();
                    g = FiniteGroup::from_bsgs(self.group.degree(), gens, b);
                }
                Centralizer { group: g, exact: false }
            };
            self.classes[id].centralizer = Some(z);
        }
        Ok(self.classes[id].centralizer.as_ref().expect("just set"))
    }

    /// An element `d` with `rep(id)^d = x`, if one is found.
    pub fn conjugator(&mut self, id: usize, x: &Perm, rng: &mut StreamRng) -> Result<Option<Perm>> {
        if self.ensure_orbit(id)? {
            let o = self.orbit(id).expect("ensured");
            return Ok(o.lookup(x).map(|i| o.conjugator(i)));
        }
        if self.p != 2 {
            return Ok(None);
        }
        Ok(dihedral_conjugator(self.group, &self.classes[id].rep, x, rng, CONJUGATOR_TRIES))
    }

    /// Every class of elements of order `p`, with a flag telling whether the
    /// list is known to be complete.
    pub fn all_classes(&mut self) -> Result<(Vec<usize>, bool)> {
        if let (Membership::Invariant, Some(cat)) = (self.membership, self.catalog) {
            let mut ids = Vec::new();
            for label in cat.labels() {
                let id = self.classify(&cat.involution_rep(&label)?)?;
                if !ids.contains(&id) {
                    ids.push(id);
                }
            }
            return Ok((ids, true));
        }
        let (elems, complete) = self.order_p_elements(self.group)?;
        let mut ids = Vec::new();
        for x in elems {
            let id = self.classify(&x)?;
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
        Ok((ids, complete))
    }

    /// Elements of order `p` in `h`: all of them when `|h|` is at most the
    /// enumeration bound, otherwise powers of random elements.
    pub fn order_p_elements(&self, h: &FiniteGroup) -> Result<(Vec<Perm>, bool)> {
        let p = self.p as u128;
        if h.order_is_exact() && h.order() <= ENUMERATION_BOUND {
            let mut out = Vec::new();
            h.for_each_element(ENUMERATION_BOUND, |x| {
                if self.has_order_p(x) {
                    out.push(x.clone());
                }
                true
            })?;
            return Ok((out, true));
        }
        let mut rng = stream(self.seed, "order-p-sample", perm_key(&h.generators().first().cloned().unwrap_or_else(|| h.identity())));
        let mut out = Vec::new();
        for _ in 0..CLASS_SAMPLES {
            let x = h.random_element(&mut rng);
            let m = x.order();
            if m % p == 0 {
                out.push(x.pow((m / p) as i64));
            }
        }
        Ok((out, false))
    }
}

/// Cycle type as `2^a 1^b`, longest cycles first.
pub fn cycle_type_string(x: &Perm) -> String {
    let mut ct = x.cycle_type();
    ct.sort_unstable_by(|a, b| b.cmp(a));
    let mut parts: Vec<(usize, usize)> = Vec::new();
    for c in ct {
        match parts.last_mut() {
            Some((len, k)) if *len == c => *k += 1,
            _ => parts.push((c, 1)),
        }
    }
    parts.iter().map(|(l, k)| format!("{l}^{k}")).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_group, GroupSpec};

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
    fn primes() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
        assert!(ClassRegistry::new(&a5(), 4).is_err());
    }

    #[test]
    fn a5_classes_of_order_5_split() {
        let g = a5();
        let mut reg = ClassRegistry::new(&g, 5).unwrap();
        let (ids, complete) = reg.all_classes().unwrap();
        assert!(complete);
        assert_eq!(ids.len(), 2);
        for &id in &ids {
            assert_eq!(reg.class_size(id).unwrap(), Some(12));
            assert_eq!(reg.centralizer(id).unwrap().group.order(), 5);
        }
    }

    #[test]
    fn dihedral_search_finds_conjugators() {
        let g = a5();
        let r = Perm::from_cycles(5, &[vec![1, 2], vec![3, 4]]).unwrap();
        let mut rng = stream(3, "t", 0);
        for i in 0..10 {
            let x = r.conj(&g.random_element(&mut stream(i, "x", 0)));
            let t = dihedral_conjugator(&g, &r, &x, &mut rng, 64).unwrap();
            assert_eq!(r.conj(&t), x);
            assert!(g.contains(&t));
        }
    }

    #[test]
    fn invariant_and_orbit_membership_agree() {
        let cat = make_group(&"Sp(4,2)".parse::<GroupSpec>().unwrap()).unwrap();
        let mut by_inv = ClassRegistry::for_catalog(&cat);
        let mut by_orbit = ClassRegistry::for_catalog(&cat);
        by_orbit.set_membership(Membership::Orbit).unwrap();
        let (a, _) = by_inv.all_classes().unwrap();
        let (b, complete) = by_orbit.all_classes().unwrap();
        assert!(complete);
        assert_eq!(a.len(), b.len());
        let mut rng = stream(5, "sample", 0);
        for _ in 0..200 {
            let x = cat.group().random_element(&mut rng);
            let m = x.order();
            if m % 2 == 0 {
                let t = x.pow((m / 2) as i64);
                let i = by_inv.identify(&t).unwrap().unwrap();
                let j = by_orbit.identify(&t).unwrap().unwrap();
                assert_eq!(by_inv.label(i), by_orbit.label(j));
            }
        }
    }

    #[test]
    fn cycle_type_labels() {
        let x = Perm::from_cycles(5, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(cycle_type_string(&x), "2^2 1^1");
    }
}
