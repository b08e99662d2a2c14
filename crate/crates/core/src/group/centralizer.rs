//! Centralizers of elements: exact from a conjugation orbit, or a randomized
//! subgroup from involution products.

use rand::Rng;

use super::bsgs::{BsgsOptions, Completion};
use super::orbit::OrbitIndex;
use super::random::{derive_seed, stream};
use super::FiniteGroup;
use crate::algebra::Perm;
use crate::error::{Error, Result};

const SCHREIER_BATCH: usize = 20;
const MAX_ROUNDS: usize = 12;

/// Exact centralizer of the orbit seed `s`, generated by random Schreier
/// generators of the conjugation action and certified by its order
/// `|G| / |s^G|`.
pub fn centralizer_from_orbit(group: &FiniteGroup, orbit: &OrbitIndex, seed: u64) -> Result<FiniteGroup> {
    let g_order = group.order();
    let len = orbit.len() as u128;
    if !group.order_is_exact() || g_order % len != 0 {
        return Err(Error::Internal("orbit length does not divide the group order".into()));
    }
    let target = g_order / len;
    let degree = group.degree();
    if target == 1 {
        return Ok(FiniteGroup::new(degree, Vec::new())?);
    }
    let gens = orbit.generators();
    let mut rng = stream(seed, "centralizer", 0);
    let mut schreier: Vec<Perm> = Vec::new();
    for round in 0..MAX_ROUNDS {
        for _ in 0..SCHREIER_BATCH {
            let i = rng.random_range(0..orbit.len());
            let k = rng.random_range(0..gens.len());
            let j = orbit.neighbour(i, k).ok_or_else(|| {
                Error::Internal("conjugation orbit is not closed".into())
            })?;
            let w = orbit.conjugator(i).mul(&gens[k]).mul(&orbit.conjugator(j).inverse());
            if !w.is_identity() {
                schreier.push(w);
            }
        }
        let opts = BsgsOptions {
            known_order: Some(target),
            seed: derive_seed(seed, "centralizer-bsgs", round as u64),
            completion: Completion::Randomized,
            ..Default::default()
        };
        let z = FiniteGroup::with_options(degree, schreier.clone(), &opts)?;
        if z.order() == target {
            return Ok(z);
        }
    }
    Err(Error::Internal("centralizer generation did not reach the expected order".into()))
}

/// Elements of `C_G(s)` for an involution `s`, from products `s s^g` with
/// uniformly random `g`. If `c = s s^g` has odd order `m` then
/// `g c^{-(m+1)/2}` centralizes `s`; if `m` is even, `c^{m/2}` does.
pub fn bray_elements(group: &FiniteGroup, s: &Perm, count: usize, seed: u64) -> Vec<Perm> {
    let mut rng = stream(seed, "bray", 0);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count {
        attempts += 1;
        let g = group.random_element(&mut rng);
        let c = s.mul(&s.conj(&g));
        let m = c.order();
        let z = if m % 2 == 1 {
            g.mul(&c.pow(-(((m + 1) / 2) as i64)))
        } else {
            c.pow((m / 2) as i64)
        };
        debug_assert!(z.commutes_with(s));
        if !z.is_identity() {
            out.push(z);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::OrbitBudget;

    fn s6() -> FiniteGroup {
        FiniteGroup::new(
            6,
            vec![
                Perm::from_cycles(6, &[vec![1, 2]]).unwrap(),
                Perm::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn centralizer_of_double_transposition_in_s6() {
        let g = s6();
        let t = Perm::from_cycles(6, &[vec![1, 2], vec![3, 4]]).unwrap();
        let o = OrbitIndex::build(&g, &t, &OrbitBudget::default()).unwrap();
        assert_eq!(o.len(), 45);
        let c = centralizer_from_orbit(&g, &o, 1).unwrap();
        assert_eq!(c.order(), 16);
        assert!(c.generators().iter().all(|z| z.commutes_with(&t)));
    }

    #[test]
    fn bray_elements_centralize() {
        let g = s6();
        let t = Perm::from_cycles(6, &[vec![1, 2]]).unwrap();
        let zs = bray_elements(&g, &t, 10, 4);
        assert!(!zs.is_empty());
        assert!(zs.iter().all(|z| z.commutes_with(&t)));
        let c = FiniteGroup::new(6, zs).unwrap();
        assert!(c.order() <= 48);
    }
}
