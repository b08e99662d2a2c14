//! Involution class labels: Jordan labels `J2^a J1^b` for linear and unitary
//! groups, and `W1^a W2^b V2^c` decompositions for symplectic and orthogonal
//! groups in characteristic 2.

use std::fmt;

use serde::Serialize;

use super::spec::{Family, GroupSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InvolutionLabel {
    /// `(J_2^a, J_1^b)`.
    Jordan { a: usize, b: usize },
    /// `W(1)^a + W(2)^b + V(2)^c`; `family` picks one of the two classes in
    /// the split case `W(2)^b` of `O+(4b, q)`.
    Wv { a: usize, b: usize, c: usize, family: Option<u8> },
    /// The unique involution class of a Suzuki group.
    Suzuki,
}

impl fmt::Display for InvolutionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match *self {
            InvolutionLabel::Jordan { a, b } => {
                for (name, k) in [("J2", a), ("J1", b)] {
                    if k > 0 {
                        parts.push(format!("{name}^{k}"));
                    }
                }
            }
            InvolutionLabel::Wv { a, b, c, family } => {
                for (name, k) in [("W1", a), ("W2", b), ("V2", c)] {
                    if k > 0 {
                        parts.push(format!("{name}^{k}"));
                    }
                }
                if let Some(t) = family {
                    parts.push(format!("#{t}"));
                }
            }
            InvolutionLabel::Suzuki => parts.push("inv".into()),
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl InvolutionLabel {
    /// Parses a label for `spec`, filling in an omitted `J1` or `W1` count
    /// from the dimension. Tokens are separated by spaces or `+`, and the
    /// exponent defaults to 1: `"W2+V2"`, `"J2^2 J1^2"`, `"W2^3 #2"`.
    pub fn parse(s: &str, spec: &GroupSpec) -> Result<InvolutionLabel> {
        let mut counts: [Option<usize>; 5] = [None; 5]; // J2 J1 W1 W2 V2
        let mut family = None;
        let mut suzuki = false;
        let bad = |tok: &str| Error::Parse(format!("bad label token '{tok}' in '{s}'"));
        let spaced = s.replace('#', " #");
        for tok in spaced.split(|c: char| c.is_whitespace() || c == '+').filter(|t| !t.is_empty()) {
            if let Some(t) = tok.strip_prefix('#') {
                family = Some(t.parse::<u8>().map_err(|_| bad(tok))?);
                continue;
            }
            if tok.eq_ignore_ascii_case("inv") {
                suzuki = true;
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<usize>().map_err(|_| bad(tok))?),
                None => (tok, 1),
            };
            let slot = match name {
                "J2" => 0,
                "J1" => 1,
                "W1" => 2,
                "W2" => 3,
                "V2" => 4,
                _ => return Err(bad(tok)),
            };
            if counts[slot].is_some() {
                return Err(Error::Parse(format!("repeated block '{name}' in '{s}'")));
            }
            counts[slot] = Some(exp);
        }
        let jordan = counts[0].is_some() || counts[1].is_some();
        let wv = counts[2..].iter().any(|c| c.is_some());
        let label = match (suzuki, jordan, wv) {
            (true, false, false) => InvolutionLabel::Suzuki,
            (false, true, false) => {
                let a = counts[0].unwrap_or(0);
                let b = match counts[1] {
                    Some(b) => b,
                    None => spec.n.checked_sub(2 * a).ok_or_else(|| {
                        Error::Usage(format!("label '{s}' does not fit dimension {}", spec.n))
                    })?,
                };
                InvolutionLabel::Jordan { a, b }
            }
            (false, false, true) => {
                let half = spec.n / 2;
                let b = counts[3].unwrap_or(0);
                let c = counts[4].unwrap_or(0);
                let a = match counts[2] {
                    Some(a) => a,
                    None => half.checked_sub(2 * b + c).ok_or_else(|| {
                        Error::Usage(format!("label '{s}' does not fit dimension {}", spec.n))
                    })?,
                };
                InvolutionLabel::Wv { a, b, c, family }
            }
            _ => return Err(Error::Parse(format!("cannot interpret label '{s}'"))),
        };
        let label = match label {
            InvolutionLabel::Wv { a, b, c, family: None }
                if spec.family == Family::OmegaPlus && a == 0 && c == 0 =>
            {
                InvolutionLabel::Wv { a, b, c, family: Some(1) }
            }
            l => l,
        };
        if family.is_some() && !matches!(label, InvolutionLabel::Wv { .. }) {
            return Err(Error::Usage(format!("class tag only applies to W/V labels: '{s}'")));
        }
        label.validate(spec)?;
        Ok(label)
    }

    pub fn validate(&self, spec: &GroupSpec) -> Result<()> {
        let err = |msg: String| Err(Error::Usage(format!("label {self} for {spec}: {msg}")));
        match *self {
            InvolutionLabel::Suzuki => {
                if spec.family != Family::Sz {
                    return err("'inv' labels only Suzuki groups".into());
                }
            }
            InvolutionLabel::Jordan { a, b } => {
                if !matches!(spec.family, Family::SL | Family::SU) {
                    return err("Jordan labels apply to linear and unitary groups".into());
                }
                if 2 * a + b != spec.n {
                    return err(format!("2a + b must equal {}", spec.n));
                }
                if a == 0 {
                    return err("the identity is not an involution".into());
                }
            }
            InvolutionLabel::Wv { a, b, c, family } => {
                let orth = matches!(spec.family, Family::OmegaPlus | Family::OmegaMinus);
                if !(orth || spec.family == Family::Sp) {
                    return err("W/V labels apply to symplectic and orthogonal groups".into());
                }
                if spec.characteristic() != 2 {
                    return err("W/V labels need characteristic 2".into());
                }
                if a + 2 * b + c != spec.n / 2 {
                    return err(format!("a + 2b + c must equal {}", spec.n / 2));
                }
                if b + c == 0 {
                    return err("the identity is not an involution".into());
                }
                if c > 2 {
                    return err("at most two V(2) blocks".into());
                }
                if orth && c == 1 {
                    return err("orthogonal groups need an even number of V(2) blocks".into());
                }
                if spec.family == Family::OmegaMinus && c == 0 && a == 0 {
                    return err("no such class in an elliptic orthogonal group".into());
                }
                let split = spec.family == Family::OmegaPlus && a == 0 && c == 0;
                match family {
                    Some(1) | Some(2) if split => {}
                    None if !split => {}
                    Some(t) if split => return err(format!("class tag #{t} must be #1 or #2")),
                    _ => return err("class tags only apply to W(2)^b in O+(4b,q)".into()),
                }
            }
        }
        Ok(())
    }

    /// All involution labels of `spec` (characteristic 2 only), in a fixed
    /// order.
    pub fn all_for(spec: &GroupSpec) -> Vec<InvolutionLabel> {
        if spec.characteristic() != 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        match spec.family {
            Family::Sz => out.push(InvolutionLabel::Suzuki),
            Family::SL | Family::SU => {
                for a in 1..=spec.n / 2 {
                    out.push(InvolutionLabel::Jordan { a, b: spec.n - 2 * a });
                }
            }
            Family::Sp | Family::OmegaPlus | Family::OmegaMinus => {
                let half = spec.n / 2;
                for c in 0..=2 {
                    for b in 0..=half / 2 {
                        if 2 * b + c > half {
                            continue;
                        }
                        let a = half - 2 * b - c;
                        let mut tags = vec![None];
                        if spec.family == Family::OmegaPlus && a == 0 && c == 0 {
                            tags = vec![Some(1), Some(2)];
                        }
                        for family in tags {
                            let l = InvolutionLabel::Wv { a, b, c, family };
                            if l.validate(spec).is_ok() {
                                out.push(l);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        let sp6 = spec("Sp(6,2)");
        assert_eq!(
            InvolutionLabel::parse("W2+V2", &sp6).unwrap(),
            InvolutionLabel::Wv { a: 0, b: 1, c: 1, family: None }
        );
        assert_eq!(
            InvolutionLabel::parse("W1^1 W2^1 V2^1", &spec("Sp(8,2)")).unwrap(),
            InvolutionLabel::Wv { a: 1, b: 1, c: 1, family: None }
        );
        assert_eq!(
            InvolutionLabel::parse("J2 J1", &spec("SL(3,2)")).unwrap(),
            InvolutionLabel::Jordan { a: 1, b: 1 }
        );
        assert_eq!(
            InvolutionLabel::parse("J2^3", &spec("SL(6,2)")).unwrap(),
            InvolutionLabel::Jordan { a: 3, b: 0 }
        );
        let o12 = spec("O+(12,2)");
        assert_eq!(
            InvolutionLabel::parse("W2^3#2", &o12).unwrap(),
            InvolutionLabel::Wv { a: 0, b: 3, c: 0, family: Some(2) }
        );
        assert_eq!(
            InvolutionLabel::parse("W2^3", &o12).unwrap(),
            InvolutionLabel::Wv { a: 0, b: 3, c: 0, family: Some(1) }
        );
        assert_eq!(InvolutionLabel::parse("inv", &spec("Sz(8)")).unwrap(), InvolutionLabel::Suzuki);
    }

    #[test]
    fn rejects_mismatches() {
        let sp6 = spec("Sp(6,2)");
        assert!(matches!(InvolutionLabel::parse("J2^3", &sp6), Err(Error::Usage(_))));
        assert!(matches!(InvolutionLabel::parse("W1^3", &sp6), Err(Error::Usage(_))));
        assert!(matches!(InvolutionLabel::parse("J1^3", &spec("SL(3,2)")), Err(Error::Usage(_))));
        assert!(matches!(InvolutionLabel::parse("W2 V2", &spec("O+(6,2)")), Err(Error::Usage(_))));
        assert!(matches!(InvolutionLabel::parse("W2^2 #2", &sp6), Err(Error::Usage(_))));
        assert!(matches!(InvolutionLabel::parse("X3", &sp6), Err(Error::Parse(_))));
    }

    #[test]
    fn display_round_trips() {
        for (g, n) in [("Sp(6,2)", 4), ("SL(6,2)", 3), ("O+(8,2)", 5), ("O-(8,2)", 3), ("Sz(8)", 1)] {
            let s = spec(g);
            let all = InvolutionLabel::all_for(&s);
            assert_eq!(all.len(), n, "{g}: {all:?}");
            for l in all {
                assert_eq!(InvolutionLabel::parse(&l.to_string(), &s).unwrap(), l);
            }
        }
    }
}
