//! Group specifications such as `Sp(6,2)`, `O+(8,2)` or `Sz(8)`, and the
//! orders of the corresponding simple groups.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::field::prime_power;
use crate::algebra::perm::gcd;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    SL,
    Sp,
    SU,
    OmegaPlus,
    OmegaMinus,
    Sz,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    pub family: Family,
    /// Dimension of the natural module (4 for Suzuki groups).
    pub n: usize,
    /// The field size `q`; unitary groups are defined over GF(q^2).
    pub q: u64,
}

/// Names of exceptional families, recognised only to be rejected.
const EXCEPTIONAL: &[&str] = &["G2", "F4", "E6", "E7", "E8", "2E6", "3D4", "2F4", "2G2", "Ree"];

impl GroupSpec {
    pub fn new(family: Family, n: usize, q: u64) -> Result<GroupSpec> {
        let (p, a) = prime_power(q).ok_or_else(|| Error::Usage(format!("{q} is not a prime power")))?;
        let bad = |msg: &str| Err(Error::Usage(format!("{family:?}({n},{q}): {msg}")));
        match family {
            Family::SL if n < 2 => return bad("dimension must be at least 2"),
            Family::Sp if n < 2 || n % 2 != 0 => return bad("dimension must be even and positive"),
            Family::SU if n < 2 => return bad("dimension must be at least 2"),
            Family::OmegaPlus | Family::OmegaMinus => {
                if n < 4 || n % 2 != 0 {
                    return bad("dimension must be even and at least 4");
                }
                if p != 2 {
                    return Err(Error::Unsupported(
                        "orthogonal groups are only supported in characteristic 2".into(),
                    ));
                }
            }
            Family::Sz => {
                if p != 2 || a % 2 == 0 || a < 3 {
                    return Err(Error::Usage(format!(
                        "Sz(q) needs q = 2^(2m+1) with m >= 1, got {q}"
                    )));
                }
                if n != 4 {
                    return bad("Suzuki groups act on a 4-dimensional module");
                }
            }
            _ => {}
        }
        let field_order = if family == Family::SU { q * q } else { q };
        if field_order > 65536 {
            return Err(Error::Usage(format!("field of order {field_order} is too large")));
        }
        Ok(GroupSpec { family, n, q })
    }

    pub fn characteristic(&self) -> u32 {
        prime_power(self.q).expect("validated").0
    }

    /// Order of the field the matrices live over.
    pub fn field_order(&self) -> u64 {
        if self.family == Family::SU {
            self.q * self.q
        } else {
            self.q
        }
    }

    /// Order of the simple group (the image of the matrix group on points).
    pub fn simple_order(&self) -> u128 {
        let q = self.q as u128;
        let n = self.n as u32;
        match self.family {
            Family::SL => {
                let mut o = q.pow(n * (n - 1) / 2);
                for i in 2..=n {
                    o *= q.pow(i) - 1;
                }
                o / gcd(n as u128, q - 1)
            }
            Family::Sp => {
                let m = n / 2;
                let mut o = q.pow(m * m);
                for i in 1..=m {
                    o *= q.pow(2 * i) - 1;
                }
                o / gcd(2, q - 1)
            }
            Family::SU => {
                let mut o = q.pow(n * (n - 1) / 2);
                for i in 2..=n {
                    o *= if i % 2 == 0 { q.pow(i) - 1 } else { q.pow(i) + 1 };
                }
                o / gcd(n as u128, q + 1)
            }
            Family::OmegaPlus | Family::OmegaMinus => {
                let m = n / 2;
                let mut o = q.pow(m * (m - 1));
                o *= if self.family == Family::OmegaPlus { q.pow(m) - 1 } else { q.pow(m) + 1 };
                for i in 1..m {
                    o *= q.pow(2 * i) - 1;
                }
                o
            }
            Family::Sz => q * q * (q * q + 1) * (q - 1),
        }
    }

    /// Order of the matrix group itself (before factoring out scalars).
    pub fn matrix_order(&self) -> u128 {
        let q = self.q as u128;
        let n = self.n as u128;
        match self.family {
            Family::SL => self.simple_order() * gcd(n, q - 1),
            Family::Sp => self.simple_order() * gcd(2, q - 1),
            Family::SU => self.simple_order() * gcd(n, q + 1),
            _ => self.simple_order(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::SL => write!(f, "SL({},{})", self.n, self.q),
            Family::Sp => write!(f, "Sp({},{})", self.n, self.q),
            Family::SU => write!(f, "SU({},{})", self.n, self.q),
            Family::OmegaPlus => write!(f, "O+({},{})", self.n, self.q),
            Family::OmegaMinus => write!(f, "O-({},{})", self.n, self.q),
            Family::Sz => write!(f, "Sz({})", self.q),
        }
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad {what} '{}'", s.trim())))
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = t.find('(').ok_or_else(|| Error::Parse(format!("bad group spec '{s}'")))?;
        let name = &t[..open];
        if EXCEPTIONAL.iter().any(|e| e.eq_ignore_ascii_case(name)) || name.starts_with('^') {
            return Err(Error::Unsupported(format!("exceptional family '{name}' is not supported")));
        }
        if !t.ends_with(')') {
            return Err(Error::Parse(format!("bad group spec '{s}'")));
        }
        let args: Vec<&str> = t[open + 1..t.len() - 1].split(',').collect();
        let family = match name {
            "SL" | "PSL" | "L" => Family::SL,
            "Sp" | "PSp" | "S" => Family::Sp,
            "SU" | "PSU" | "U" => Family::SU,
            "O+" | "Omega+" | "POmega+" => Family::OmegaPlus,
            "O-" | "Omega-" | "POmega-" => Family::OmegaMinus,
            "Sz" | "2B2" => Family::Sz,
            _ => return Err(Error::Parse(format!("unknown group family '{name}'"))),
        };
        match (family, args.len()) {
            (Family::Sz, 1) => GroupSpec::new(family, 4, parse_num(args[0], "field size")?),
            (Family::Sz, _) => Err(Error::Parse(format!("Sz takes one argument: '{s}'"))),
            (_, 2) => GroupSpec::new(
                family,
                parse_num(args[0], "dimension")?,
                parse_num(args[1], "field size")?,
            ),
            _ => Err(Error::Parse(format!("expected two arguments in '{s}'"))),
        }
    }
}
