//! Finite fields GF(p^a) with p^a <= 65536, backed by log/exp tables.
//!
//! An element is encoded as the integer `sum c_i p^i`, where `c_i` is the
//! coefficient of `x^i` in its polynomial representation modulo the defining
//! polynomial. For prime fields the "generator" is the primitive root fixed by
//! the defining linear polynomial.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Field element encoding. Always `< order`.
pub type Elem = u16;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 65536;

/// Version tag of the frozen primitive-polynomial table. Recorded in run
/// records so cached results can be invalidated if the table ever changes.
pub const FIELD_TABLE_VERSION: u32 = 1;

/// Frozen default primitive polynomials. Entries are the low coefficients
/// `c_0..c_{a-1}` of the monic polynomial `x^a + c_{a-1} x^{a-1} + ... + c_0`,
/// chosen as the primitive polynomial with least integer encoding.
const PRIMITIVE_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 0, 0, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 14, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (3, 1, &[1]),
    (3, 2, &[2, 1]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 1, 0, 0]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 1, 0, 0, 0, 0]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0]),
    (3, 9, &[1, 0, 1, 2, 0, 0, 0, 0, 0]),
    (3, 10, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0]),
    (5, 1, &[2]),
    (5, 2, &[2, 1]),
    (5, 3, &[2, 3, 0]),
    (5, 4, &[2, 2, 1, 0]),
    (5, 5, &[2, 4, 0, 0, 0]),
    (5, 6, &[2, 1, 0, 0, 0, 0]),
    (7, 1, &[2]),
    (7, 2, &[3, 1]),
    (7, 3, &[2, 3, 0]),
    (7, 4, &[5, 3, 1, 0]),
    (7, 5, &[4, 1, 0, 0, 0]),
];

pub struct Field {
    p: u32,
    degree: u32,
    order: u32,
    /// Low coefficients of the defining monic polynomial.
    poly: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<Elem>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// Addition table for odd characteristic with small q; `None` otherwise.
    add_table: Option<Vec<Elem>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.degree)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.poly == other.poly
    }
}
impl Eq for Field {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, a)` when `q = p^a` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return None;
    }
    let q = q as u32;
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut a = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        a += 1;
    }
    (r == 1 && is_prime(p)).then_some((p, a))
}

impl Field {
    /// GF(p^a) with the frozen default primitive polynomial.
    pub fn new(p: u32, a: u32) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("characteristic {p} is not prime")));
        }
        if a == 0 {
            return Err(Error::Domain("field degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(a).unwrap_or(u64::MAX);
        if order > MAX_FIELD_ORDER as u64 {
            return Err(Error::Unsupported(format!(
                "field order {p}^{a} exceeds the supported bound {MAX_FIELD_ORDER}"
            )));
        }
        match PRIMITIVE_TABLE.iter().find(|(tp, ta, _)| *tp == p && *ta == a) {
            Some((_, _, coeffs)) => Self::with_polynomial(p, a, coeffs),
            None => {
                let coeffs = search_primitive(p, a)?;
                Self::with_polynomial(p, a, &coeffs)
            }
        }
    }

    /// GF(q) for a prime power q.
    pub fn of_order(q: u64) -> Result<Arc<Field>> {
        let (p, a) = prime_power(q)
            .ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        Self::new(p, a)
    }

    /// GF(p^a) defined by an explicit monic polynomial given by its low
    /// coefficients `c_0..c_{a-1}`. The polynomial must be primitive.
    pub fn with_polynomial(p: u32, a: u32, coeffs: &[u32]) -> Result<Arc<Field>> {
        if coeffs.len() != a as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::Domain(
                "defining polynomial has wrong length or out-of-range coefficients".into(),
            ));
        }
        let order = p.pow(a);
        let n = (order - 1) as usize;
        let mut exp = vec![0 as Elem; 2 * n.max(1)];
        let mut log = vec![u32::MAX; order as usize];
        // Current power of the generator as a coefficient vector.
        let mut cur = vec![0u32; a as usize];
        if a == 1 {
            // Root of x + c0 is -c0.
            let g = (p - coeffs[0]) % p;
            let mut v = 1u32;
            for i in 0..n {
                if log[v as usize] != u32::MAX {
                    return Err(Error::Domain("defining polynomial is not primitive".into()));
                }
                exp[i] = v as Elem;
                log[v as usize] = i as u32;
                v = v * g % p;
            }
        } else {
            cur[0] = 1;
            for i in 0..n {
                let v = encode_coeffs(&cur, p);
                if log[v as usize] != u32::MAX {
                    return Err(Error::Domain("defining polynomial is not primitive".into()));
                }
                exp[i] = v as Elem;
                log[v as usize] = i as u32;
                // Multiply by x and reduce.
                let top = cur[a as usize - 1];
                for j in (1..a as usize).rev() {
                    cur[j] = cur[j - 1];
                }
                cur[0] = 0;
                for j in 0..a as usize {
                    cur[j] = (cur[j] + (p - coeffs[j]) * top) % p;
                }
            }
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        let add_table = if p != 2 && a > 1 && order <= 256 {
            let mut t = vec![0 as Elem; (order * order) as usize];
            for x in 0..order {
                for y in 0..order {
                    t[(x * order + y) as usize] = digit_add(x, y, p, a) as Elem;
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(Arc::new(Field {
            p,
            degree: a,
            order,
            poly: coeffs.to_vec(),
            exp,
            log,
            add_table,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn order(&self) -> u32 {
        self.order
    }
    pub fn polynomial(&self) -> &[u32] {
        &self.poly
    }

    pub fn zero(&self) -> Elem {
        0
    }
    pub fn one(&self) -> Elem {
        1
    }
    /// The fixed primitive element.
    pub fn generator(&self) -> Elem {
        self.exp[if self.order == 2 { 0 } else { 1 }]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(|x| x as Elem)
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    /// Coefficients of `x` in the polynomial basis, low to high.
    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        let mut v = x as u32;
        (0..self.degree)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elem> {
        if c.len() > self.degree as usize || c.iter().any(|&d| d >= self.p) {
            return Err(Error::Domain("coefficient vector out of range".into()));
        }
        Ok(encode_coeffs(c, self.p) as Elem)
    }

    /// An additive basis of the field over its prime subfield.
    pub fn additive_basis(&self) -> Vec<Elem> {
        (0..self.degree).map(|i| self.p.pow(i) as Elem).collect()
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.p == 2 {
            x ^ y
        } else if self.degree == 1 {
            ((x as u32 + y as u32) % self.p) as Elem
        } else if let Some(t) = &self.add_table {
            t[x as usize * self.order as usize + y as usize]
        } else {
            digit_add(x as u32, y as u32, self.p, self.degree) as Elem
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        if self.p == 2 {
            return x;
        }
        let mut v = x as u32;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            let c = v % self.p;
            v /= self.p;
            out += ((self.p - c) % self.p) * place;
            place *= self.p;
        }
        out as Elem
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let n = self.order - 1;
        Ok(self.exp[((n - self.log[x as usize]) % n) as usize])
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[x as usize] as u64 * (e % n)) % n;
        self.exp[l as usize]
    }

    /// Discrete log with respect to [`Field::generator`].
    pub fn log(&self, x: Elem) -> Result<u32> {
        if x == 0 {
            return Err(Error::Domain("logarithm of zero".into()));
        }
        Ok(self.log[x as usize])
    }

    /// `g^i` for the fixed generator.
    pub fn exp(&self, i: u64) -> Elem {
        self.exp[(i % (self.order as u64 - 1).max(1)) as usize]
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.pow(x, self.p as u64)
    }

    /// Square root in characteristic 2 (every element is a square).
    pub fn sqrt_char2(&self, x: Elem) -> Elem {
        debug_assert_eq!(self.p, 2);
        self.pow(x, (self.order / 2) as u64)
    }

    /// Absolute trace to the prime field.
    pub fn trace(&self, x: Elem) -> Elem {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.degree {
            acc = self.add(acc, y);
            y = self.frobenius(y);
        }
        acc
    }

    /// Human-readable polynomial form, e.g. `x^2+x+1` or `0`.
    pub fn format(&self, x: Elem) -> String {
        if self.degree == 1 {
            return x.to_string();
        }
        let c = self.coeffs(x);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn encode_coeffs(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn digit_add(x: u32, y: u32, p: u32, a: u32) -> u32 {
    let (mut x, mut y) = (x, y);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..a {
        out += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
    }
    out
}

/// Least primitive polynomial by integer encoding, for (p, a) outside the
/// frozen table.
fn search_primitive(p: u32, a: u32) -> Result<Vec<u32>> {
    let order = p.pow(a);
    for code in 1..order {
        let mut v = code;
        let coeffs: Vec<u32> = (0..a)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect();
        if coeffs[0] == 0 {
            continue;
        }
        if Field::with_polynomial(p, a, &coeffs).is_ok() {
            return Ok(coeffs);
        }
    }
    Err(Error::Internal(format!("no primitive polynomial found for GF({p}^{a})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_and_gf8_polynomials() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.polynomial(), &[1, 1]);
        let x = f.generator();
        assert_eq!(x, 2);
        // x^2 = x + 1
        assert_eq!(f.mul(x, x), 3);
        let f8 = Field::new(2, 3).unwrap();
        assert_eq!(f8.polynomial(), &[1, 1, 0]);
        let x = f8.generator();
        // x^3 = x + 1
        assert_eq!(f8.pow(x, 3), 3);
        // (x^2 + 1) * (x + 1) = x^3 + x^2 + x + 1 = x^2
        assert_eq!(f8.mul(5, 3), 4);
    }

    #[test]
    fn every_table_entry_is_primitive() {
        for &(p, a, c) in PRIMITIVE_TABLE {
            let f = Field::with_polynomial(p, a, c).unwrap();
            assert_eq!(f.order(), p.pow(a));
        }
    }

    #[test]
    fn table_entries_are_least_primitive() {
        for &(p, a, c) in PRIMITIVE_TABLE.iter().filter(|e| e.0.pow(e.1) <= 4096) {
            assert_eq!(search_primitive(p, a).unwrap(), c.to_vec(), "GF({p}^{a})");
        }
    }

    #[test]
    fn prime_fields() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.generator(), 5);
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.inv(3).unwrap(), 5);
        assert_eq!(f.neg(3), 4);
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        let f = Field::new(3, 2).unwrap();
        assert!(matches!(f.inv(0), Err(Error::Domain(_))));
    }

    #[test]
    fn oversized_field_rejected() {
        assert!(matches!(Field::new(2, 17), Err(Error::Unsupported(_))));
        assert!(matches!(Field::new(4, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, a) in [(2, 3), (3, 2), (5, 1), (2, 4), (7, 2)] {
            let f = Field::new(p, a).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, f.neg(x)), 0);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                }
                for y in f.elements() {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for z in [0, 1, f.generator()] {
                        let lhs = f.mul(x, f.add(y, z));
                        let rhs = f.add(f.mul(x, y), f.mul(x, z));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = Field::new(3, 3).unwrap();
        for x in f.elements() {
            for y in f.elements().step_by(5) {
                assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
            }
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn format_polynomials() {
        let f = Field::new(2, 3).unwrap();
        assert_eq!(f.format(0), "0");
        assert_eq!(f.format(7), "x^2+x+1");
        assert_eq!(f.format(2), "x");
    }
}
