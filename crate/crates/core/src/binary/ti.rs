//! The trivial-intersection criterion: for a TI-subgroup `H`, the action on
//! cosets of `H` is binary exactly when `H1 ∩ H2 H3 = 1` for all distinct
//! conjugates `H1, H2, H3`.

use std::collections::HashMap;

use serde::Serialize;

use super::witness::PermCert;
use crate::algebra::Perm;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const MAX_CONJUGATES: usize = 10_000;
pub const MAX_SUBGROUP_ELEMENTS: u128 = 100_000;

/// The conjugates of `h` in `g`, each as its sorted element list. The first
/// entry is `h` itself.
pub fn conjugates_of(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<Vec<Perm>>> {
    if h.order() > MAX_SUBGROUP_ELEMENTS {
        return Err(Error::budget("subgroup elements", h.order() as u64, MAX_SUBGROUP_ELEMENTS as u64));
    }
    let mut first = h.elements(MAX_SUBGROUP_ELEMENTS)?;
    first.sort_unstable();
    let mut seen: HashMap<Vec<Perm>, usize> = HashMap::from([(first.clone(), 0)]);
    let mut out = vec![first];
    let mut pos = 0;
    while pos < out.len() {
        for x in g.generators() {
            let mut c: Vec<Perm> = out[pos].iter().map(|e| e.conj(x)).collect();
            c.sort_unstable();
            if !seen.contains_key(&c) {
                if out.len() >= MAX_CONJUGATES {
                    return Err(Error::budget("conjugates", out.len() as u64 + 1, MAX_CONJUGATES as u64));
                }
                seen.insert(c.clone(), out.len());
                out.push(c);
            }
        }
        pos += 1;
    }
    Ok(out)
}

/// Whether every conjugate meets `h` in `h` or the identity.
pub fn ti_check(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    let conj = conjugates_of(g, h)?;
    Ok(ti_from(&conj))
}

fn ti_from(conj: &[Vec<Perm>]) -> bool {
    let h = &conj[0];
    conj[1..].iter().all(|k| h.iter().all(|x| x.is_identity() || k.binary_search(x).is_err()))
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TiVerdict {
    Binary { conjugates: usize },
    /// `x = h2 h3` lies in `H1` with `h2 ∈ H2 = H` and `h3 ∈ H3`.
    NotBinary { h1: usize, h2: usize, h3: usize, x: PermCert, left: PermCert, right: PermCert },
    /// `H` is not a TI-subgroup, so the criterion does not apply.
    NotTi,
}

/// Decides binarity of the coset action of a TI-subgroup. `H2` is fixed to
/// `H`, which loses nothing as `G` is transitive on conjugates.
pub fn ti_binary_criterion(g: &FiniteGroup, h: &FiniteGroup) -> Result<TiVerdict> {
    let conj = conjugates_of(g, h)?;
    if !ti_from(&conj) {
        return Ok(TiVerdict::NotTi);
    }
    // In a TI family each non-identity element lies in at most one conjugate.
    let mut owner: HashMap<&Perm, usize> = HashMap::new();
    for (k, c) in conj.iter().enumerate() {
        for x in c.iter().filter(|x| !x.is_identity()) {
            owner.insert(x, k);
        }
    }
    let base = &conj[0];
    let mut best: Option<(usize, usize, Perm, Perm, Perm)> = None;
    for (k3, h3s) in conj.iter().enumerate().skip(1) {
        for a in base.iter().filter(|x| !x.is_identity()) {
            for b in h3s.iter().filter(|x| !x.is_identity()) {
                let x = a.mul(b);
                if let Some(&k1) = owner.get(&x) {
                    if k1 != 0 && k1 != k3 {
                        let cand = (k1, k3, x, a.clone(), b.clone());
                        if best.as_ref().is_none_or(|bst| (cand.0, cand.1) < (bst.0, bst.1)) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        if best.is_some() {
            break;
        }
    }
    Ok(match best {
        None => TiVerdict::Binary { conjugates: conj.len() },
        Some((h1, h3, x, a, b)) => TiVerdict::NotBinary {
            h1,
            h2: 0,
            h3,
            x: (&x).into(),
            left: (&a).into(),
            right: (&b).into(),
        },
    })
}
