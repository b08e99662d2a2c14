//! A necessary condition for binarity: if the coset action of `H` is
//! binary and `g ∈ H` has maximal `p`-fixity, then `H` contains the
//! component group and the terminal component group of `g`.

use serde::Serialize;

use super::CosetAction;
use crate::components::{delta_infinity, transport, ClassRegistry, Completeness, TransportOptions};
use crate::error::Result;
use crate::group::FiniteGroup;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FilterVerdict {
    Pass { fixity: usize, classes: Vec<String>, delta_order: u128, terminal_order: u128 },
    /// The action is not binary: the named group is not contained in `H`.
    Fail { reason: String, fixity: usize, classes: Vec<String>, order: u128 },
    Inconclusive { reason: String },
}

impl FilterVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, FilterVerdict::Pass { .. })
    }
}

pub fn stabilizer_filter(reg: &mut ClassRegistry, h: &FiniteGroup, opts: &TransportOptions) -> Result<FilterVerdict> {
    let group = reg.group();
    let p = reg.prime() as u128;
    if h.order() % p != 0 {
        return Ok(FilterVerdict::Inconclusive { reason: format!("|H| is not divisible by {p}") });
    }
    let action = CosetAction::new(group, h)?;
    let (d, fixity) = action.max_p_fixity(reg)?;
    if d.ids().is_empty() {
        return Ok(FilterVerdict::Inconclusive { reason: "no class of maximal fixity meets H".into() });
    }
    let classes: Vec<String> = d.ids().iter().map(|&i| reg.label(i).to_string()).collect();
    let (elems, _) = reg.order_p_elements(h)?;
    let mut g = None;
    for x in elems {
        if d.class_of(reg, &x)?.is_some() {
            g = Some(x);
            break;
        }
    }
    let Some(g) = g else {
        return Ok(FilterVerdict::Inconclusive { reason: "no element of maximal fixity found in H".into() });
    };
    let r = transport(reg, &d, &g, opts)?;
    if !r.delta.is_subgroup_of(h) {
        return Ok(FilterVerdict::Fail {
            reason: "component group not contained in H".into(),
            fixity,
            classes,
            order: r.delta.order(),
        });
    }
    let chain = delta_infinity(reg, &g, &d, opts)?;
    if !chain.terminal.is_subgroup_of(h) {
        return Ok(FilterVerdict::Fail {
            reason: "terminal component group not contained in H".into(),
            fixity,
            classes,
            order: chain.terminal.order(),
        });
    }
    if r.completeness != Completeness::Exact {
        reg.warn("component group is a lower bound; the pass is not conclusive".into());
    }
    Ok(FilterVerdict::Pass { fixity, classes, delta_order: r.delta.order(), terminal_order: chain.terminal.order() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_group, GroupSpec};

    #[test]
    fn sl24_sylow_passes() {
        let c = make_group(&"SL(2,4)".parse::<GroupSpec>().unwrap()).unwrap();
        let h = c.sylow().unwrap();
        let mut reg = ClassRegistry::for_catalog(&c);
        let v = stabilizer_filter(&mut reg, &h, &TransportOptions::default()).unwrap();
        match v {
            FilterVerdict::Pass { delta_order, .. } => assert_eq!(delta_order, 4),
            v => panic!("{v:?}"),
        }
    }
}
