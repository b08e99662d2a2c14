//! Literal parsers: `GF(2,3)` or `GF(8)` for fields, `[[1,0],[x,1]]` for
//! matrices (entries are polynomials in the generator `x`), and 1-based cycle
//! notation for permutations.

use std::sync::Arc;

use super::field::{Elem, Field};
use super::matrix::Matrix;
use super::perm::Perm;
use crate::error::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses `GF(p,a)` or `GF(q)`.
pub fn parse_field(s: &str) -> Result<Arc<Field>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err(format!("expected GF(p,a) or GF(q), got {s:?}")))?;
    let nums: Vec<u64> = inner
        .split(',')
        .map(|x| x.parse::<u64>().map_err(|_| parse_err(format!("bad integer {x:?} in {s:?}"))))
        .collect::<Result<_>>()?;
    match nums.as_slice() {
        [q] => Field::of_order(*q),
        [p, a] => Field::new(*p as u32, *a as u32),
        _ => Err(parse_err(format!("expected one or two integers in {s:?}"))),
    }
}

/// Parses a field element written as a polynomial in `x`, e.g. `x^2+x+1`,
/// `2*x+1` or `3`.
pub fn parse_elem(field: &Field, s: &str) -> Result<Elem> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(parse_err("empty field element"));
    }
    let x = field.generator();
    let mut acc: Elem = 0;
    for term in t.split('+') {
        if term.is_empty() {
            return Err(parse_err(format!("empty term in {s:?}")));
        }
        let (coef, mono) = match term.split_once('*') {
            Some((c, m)) => (Some(c), m),
            None if term.contains('x') => (None, term),
            None => (Some(term), ""),
        };
        let c = match coef {
            Some(c) => {
                field.from_int(c.parse::<i64>().map_err(|_| parse_err(format!("bad coefficient {c:?}")))?)
            }
            None => 1,
        };
        let value = if mono.is_empty() {
            1
        } else if mono == "x" {
            x
        } else if let Some(e) = mono.strip_prefix("x^") {
            let e: u64 = e.parse().map_err(|_| parse_err(format!("bad exponent in {term:?}")))?;
            field.pow(x, e)
        } else {
            return Err(parse_err(format!("bad term {term:?}")));
        };
        acc = field.add(acc, field.mul(c, value));
    }
    Ok(acc)
}

/// Parses `[[a,b],[c,d]]` over `field`.
pub fn parse_matrix(field: &Arc<Field>, s: &str) -> Result<Matrix> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_err("matrix literal must be enclosed in brackets"))?;
    if inner.is_empty() {
        return Err(parse_err("empty matrix literal"));
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| parse_err(format!("expected '[' at {rest:?}")))?;
        let end = body.find(']').ok_or_else(|| parse_err("unterminated matrix row"))?;
        let row: Vec<Elem> =
            body[..end].split(',').map(|e| parse_elem(field, e)).collect::<Result<_>>()?;
        rows.push(row);
        rest = &body[end + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| parse_err(format!("expected ',' between rows at {rest:?}")))?;
    }
    Matrix::from_rows(field, &rows).map_err(|e| parse_err(e.to_string()))
}

/// Parses 1-based cycle notation such as `(1,2)(3,4,5)` or `()`.
pub fn parse_cycles(degree: usize, s: &str) -> Result<Perm> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cycles = Vec::new();
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| parse_err(format!("expected '(' at {rest:?}")))?;
        let end = body.find(')').ok_or_else(|| parse_err("unterminated cycle"))?;
        if !body[..end].is_empty() {
            let cyc: Vec<u32> = body[..end]
                .split(',')
                .map(|x| x.parse::<u32>().map_err(|_| parse_err(format!("bad point {x:?}"))))
                .collect::<Result<_>>()?;
            cycles.push(cyc);
        }
        rest = &body[end + 1..];
    }
    Perm::from_cycles(degree, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_literals() {
        assert_eq!(parse_field("GF(2,3)").unwrap().order(), 8);
        assert_eq!(parse_field("GF(9)").unwrap().order(), 9);
        assert!(matches!(parse_field("GF(6)"), Err(Error::Domain(_))));
        assert!(matches!(parse_field("F(2)"), Err(Error::Parse(_))));
    }

    #[test]
    fn matrix_literal_roundtrip() {
        let f = parse_field("GF(2,2)").unwrap();
        let m = parse_matrix(&f, "[[1,0],[x,1]]").unwrap();
        assert_eq!(m.get(1, 0), f.generator());
        assert_eq!(parse_matrix(&f, &m.to_string()).unwrap(), m);
        let sq = parse_matrix(&f, "[[x^2,x+1]]").unwrap();
        assert_eq!(sq.get(0, 0), sq.get(0, 1));
    }

    #[test]
    fn malformed_literals() {
        let f = parse_field("GF(3)").unwrap();
        assert!(parse_matrix(&f, "[[1,2],[1]]").is_err());
        assert!(parse_matrix(&f, "[1,2]").is_err());
        assert!(parse_elem(&f, "y").is_err());
    }

    #[test]
    fn cycle_literals() {
        let g = parse_cycles(5, "(1,2)(3,4,5)").unwrap();
        assert_eq!(g.cycles_string(), "(1,2)(3,4,5)");
        assert!(parse_cycles(4, "()").unwrap().is_identity());
        assert!(parse_cycles(3, "(1,4)").is_err());
    }
}
