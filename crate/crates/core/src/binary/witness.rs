//! Non-binarity witnesses from a pair of commuting elements of prime order
//! whose fixed sets have equal size.

use serde::Serialize;

use super::related::Transporter;
use crate::algebra::Perm;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Debug, Serialize)]
pub struct PermCert {
    pub encoding: String,
    pub cycles: String,
}

impl From<&Perm> for PermCert {
    fn from(p: &Perm) -> Self {
        PermCert { encoding: p.encode_hex(), cycles: p.cycles_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessVerdict {
    /// An element fixing `F` setwise and inducing `tau` exists.
    Extends { h: PermCert },
    /// No such element: the action is not binary.
    NoneExists,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub g1: PermCert,
    pub g2: PermCert,
    pub f1: Vec<u32>,
    pub f2: Vec<u32>,
    pub f3: Vec<u32>,
    /// Images of the points of `F = F1 ∪ F2 ∪ F3`, in the order of `i`.
    pub tau: Vec<u32>,
    pub i: Vec<u32>,
    pub j: Vec<u32>,
    pub verdict: WitnessVerdict,
}

impl WitnessReport {
    pub fn certifies_nonbinary(&self) -> bool {
        matches!(self.verdict, WitnessVerdict::NoneExists)
    }
}

fn fixed(g: &Perm) -> Vec<u32> {
    (0..g.degree() as u32).filter(|&x| g.apply(x) == x).collect()
}

/// Builds the tuples `I = F` and `J = F^tau`, where `tau` agrees with `g1`
/// on `F3` and fixes the rest of `F`, and searches for an element of the
/// group inducing `tau` on `F`.
pub fn nonbinary_witness(group: &FiniteGroup, g1: &Perm, g2: &Perm) -> Result<WitnessReport> {
    for g in [g1, g2] {
        group.check_member(g)?;
    }
    if g1 == g2 {
        return Err(Error::Usage("g1 and g2 must be distinct".into()));
    }
    if !g1.commutes_with(g2) {
        return Err(Error::Usage("g1 and g2 must commute".into()));
    }
    let p = g1.order();
    if g2.order() != p || p < 2 || (2..p).any(|d| d * d <= p && p % d == 0) {
        return Err(Error::Usage("g1 and g2 must have the same prime order".into()));
    }
    let g3 = g1.mul(&g2.inverse());
    let (f1, f2, f3) = (fixed(g1), fixed(g2), fixed(&g3));
    if f1.is_empty() || f1.len() != f2.len() || f1.len() != f3.len() {
        return Err(Error::Usage(format!(
            "fixed sets must have equal positive size (got {}, {}, {})",
            f1.len(),
            f2.len(),
            f3.len()
        )));
    }
    if f1 == f2 {
        return Err(Error::Usage("g1 and g2 have the same fixed set".into()));
    }
    let mut f: Vec<u32> = f1.iter().chain(&f2).chain(&f3).copied().collect();
    f.sort_unstable();
    f.dedup();
    let tau: Vec<u32> = f.iter().map(|&x| if f3.contains(&x) { g1.apply(x) } else { x }).collect();
    let mut tr = Transporter::new(group);
    let verdict = match tr.find(&f, &tau)? {
        Some(h) => WitnessVerdict::Extends { h: PermCert::from(&h) },
        None => WitnessVerdict::NoneExists,
    };
    Ok(WitnessReport {
        g1: g1.into(),
        g2: g2.into(),
        f1,
        f2,
        f3,
        i: f.clone(),
        j: tau.clone(),
        tau,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::related::r_related;

    fn gens6(alternating: bool) -> FiniteGroup {
        let g = if alternating {
            vec![
                Perm::from_cycles(6, &[vec![1, 2, 3]]).unwrap(),
                Perm::from_cycles(6, &[vec![2, 3, 4, 5, 6]]).unwrap(),
            ]
        } else {
            vec![Perm::from_cycles(6, &[vec![1, 2]]).unwrap(), Perm::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap()]
        };
        FiniteGroup::new(6, g).unwrap()
    }

    #[test]
    fn a6_and_s6() {
        let g1 = Perm::from_cycles(6, &[vec![1, 2], vec![3, 4]]).unwrap();
        let g2 = Perm::from_cycles(6, &[vec![1, 2], vec![5, 6]]).unwrap();
        let a6 = gens6(true);
        assert_eq!(a6.order(), 360);
        let w = nonbinary_witness(&a6, &g1, &g2).unwrap();
        assert_eq!(w.f3, vec![0, 1]);
        assert!(w.certifies_nonbinary());
        assert!(r_related(&a6, &w.i, &w.j, 2).unwrap());
        assert!(!r_related(&a6, &w.i, &w.j, 6).unwrap());
        let s6 = gens6(false);
        let w = nonbinary_witness(&s6, &g1, &g2).unwrap();
        assert!(!w.certifies_nonbinary());
    }

    #[test]
    fn preconditions() {
        let a6 = gens6(true);
        let g1 = Perm::from_cycles(6, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(matches!(nonbinary_witness(&a6, &g1, &g1), Err(Error::Usage(_))));
        let g2 = Perm::from_cycles(6, &[vec![1, 3], vec![2, 5]]).unwrap();
        assert!(matches!(nonbinary_witness(&a6, &g1, &g2), Err(Error::Usage(_))));
    }
}
