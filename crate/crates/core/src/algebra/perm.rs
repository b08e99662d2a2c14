//! Permutations of `{0, .., n-1}` acting on the right: `i^g = images[i]` and
//! `i^(gh) = (i^g)^h`. Conjugation is `y^h = h^-1 y h`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Domain("image list is not a permutation".into()));
            }
            seen[x] = true;
        }
        Ok(Perm { images: images.into_boxed_slice() })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Perm {
        Perm { images: images.into_boxed_slice() }
    }

    /// Builds a permutation of degree `n` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x == 0 || x as usize > n {
                    return Err(Error::Domain(format!("cycle point {x} out of range 1..={n}")));
                }
                if used[x as usize - 1] {
                    return Err(Error::Domain(format!("point {x} repeated in cycles")));
                }
                used[x as usize - 1] = true;
                let y = cyc[(k + 1) % cyc.len()];
                images[x as usize - 1] = y - 1;
            }
        }
        Ok(Perm { images: images.into_boxed_slice() })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Product `self * other` (apply `self` first).
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    /// In place `self = self * other`.
    #[inline]
    pub fn mul_assign(&mut self, other: &Perm) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv.into_boxed_slice() }
    }

    /// `h^-1 * self * h`.
    pub fn conj(&self, h: &Perm) -> Perm {
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[h.images[i] as usize] = h.images[x as usize];
        }
        Perm { images: out.into_boxed_slice() }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| other.images[x as usize] == self.images[other.images[i] as usize])
    }

    /// Whether `self^2 = 1` (including the identity).
    pub fn squares_to_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| self.images[x as usize] == i as u32)
    }

    pub fn is_involution(&self) -> bool {
        self.squares_to_identity() && !self.is_identity()
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let e = e.unsigned_abs();
        // Cycle-wise exponentiation avoids repeated products.
        let n = self.degree();
        let mut out = vec![0u32; n];
        let mut seen = vec![false; n];
        let mut cyc = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cyc.clear();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cyc.push(x);
                x = base.images[x as usize];
            }
            let len = cyc.len() as u64;
            let shift = (e % len) as usize;
            for (k, &y) in cyc.iter().enumerate() {
                out[y as usize] = cyc[(k + shift) % cyc.len()];
            }
        }
        Perm { images: out.into_boxed_slice() }
    }

    /// Sorted multiset of cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut last = 0;
        for len in self.cycle_type() {
            if len != last {
                acc = lcm(acc, len as u128);
                last = len;
            }
        }
        acc
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn cycles_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(',');
                }
                first = false;
                out.push_str(&(x + 1).to_string());
                x = self.images[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Canonical byte encoding: degree as little-endian u32 then each image
    /// as little-endian u32.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + 4 * self.degree());
        out.extend_from_slice(&(self.degree() as u32).to_le_bytes());
        for &x in self.images.iter() {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }

    pub fn encode_hex(&self) -> String {
        hex::encode(self.encode())
    }
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}
