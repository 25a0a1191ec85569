//! Small finite fields `GF(p^e)` for point counting.
//!
//! Elements are encoded as integers in `[0, q)` whose base-`p` digits are the
//! coefficients of a polynomial in a primitive element `α`; multiplication
//! goes through discrete log tables.

use crate::error::{Error, Result};

/// Largest field size accepted (tables hold `2q` entries).
pub const MAX_ORDER: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct Gfq {
    p: u32,
    e: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gfq {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::Budget(format!("GF({p}^{e}) is too large for table arithmetic")))?;
        let (p, q) = (p as u32, q as u32);
        // try monic polynomials x^e + c_{e-1} x^{e-1} + ... + c_0 until x is primitive
        for tail in 0..q {
            if e > 1 && tail % p == 0 {
                continue; // constant term must be nonzero
            }
            if let Some((exp, log)) = Self::tables(p, e, q, tail) {
                return Ok(Gfq { p, e, q, exp, log });
            }
        }
        Err(Error::InvalidArgument(format!("no primitive polynomial found for GF({p}^{e})")))
    }

    /// Tables for the modulus `x^e + tail(x)`, or `None` when `x` is not primitive.
    fn tables(p: u32, e: u32, q: u32, tail: u32) -> Option<(Vec<u32>, Vec<u32>)> {
        let order = q - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![u32::MAX; q as usize];
        let generator = if e == 1 {
            // smallest primitive root of F_p
            (1..p.max(2)).find(|&g| is_primitive_root(g, p))?
        } else {
            p // the digits (0, 1, 0, ...) encode x
        };
        let mut cur = 1u32;
        for k in 0..order {
            if log[cur as usize] != u32::MAX {
                return None;
            }
            log[cur as usize] = k;
            exp[k as usize] = cur;
            cur = if e == 1 {
                ((cur as u64 * generator as u64) % p as u64) as u32
            } else {
                times_x(cur, p, e, tail)
            };
        }
        if cur != 1 {
            return None;
        }
        for k in order..2 * order {
            exp[k as usize] = exp[(k - order) as usize];
        }
        Some((exp, log))
    }

    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Image of a residue in `[0, p)`.
    pub fn from_residue(&self, r: u64) -> u32 {
        (r % self.p as u64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.exp[((self.q - 1 - self.log[a as usize]) % (self.q - 1)) as usize])
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: u32) -> u32 {
        self.log[a as usize]
    }

    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }
}

fn is_primitive_root(g: u32, p: u32) -> bool {
    if p == 2 {
        return g == 1;
    }
    let mut cur = 1u64;
    for k in 1..p {
        cur = cur * g as u64 % p as u64;
        if cur == 1 {
            return k == p - 1;
        }
    }
    false
}

/// Multiplies the element with digits `a` by `x` modulo `x^e + tail(x)`.
fn times_x(a: u32, p: u32, e: u32, tail: u32) -> u32 {
    let top_place = p.pow(e - 1);
    let top = a / top_place;
    let shifted = (a % top_place) * p;
    if top == 0 {
        return shifted;
    }
    // x^e = -tail(x)
    let mut out = 0;
    let mut place = 1;
    let (mut s, mut t) = (shifted, tail);
    for _ in 0..e {
        let d = (s % p + (p - (top * (t % p)) % p)) % p;
        out += d * place;
        place *= p;
        s /= p;
        t /= p;
    }
    out
}

/// Univariate polynomials over `GF(q)`, coefficients lowest degree first,
/// without trailing zeros.
pub(crate) mod upoly {
    use super::Gfq;

    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo nonzero `b`.
    pub fn rem(f: &Gfq, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let lead_inv = f.inv(*b.last().expect("nonzero divisor")).unwrap();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = f.mul(*r.last().unwrap(), lead_inv);
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = f.sub(r[shift + k], f.mul(c, bk));
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(f: &Gfq, a: Vec<u32>, b: Vec<u32>) -> Vec<u32> {
        let (mut a, mut b) = (trim(a), trim(b));
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        a
    }

    fn mul_mod(f: &Gfq, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        rem(f, &out, m)
    }

    /// Number of distinct roots in `GF(q)` of a nonzero polynomial.
    pub fn count_roots(f: &Gfq, a: &[u32]) -> u64 {
        let a = trim(a.to_vec());
        match a.len() {
            0 => panic!("the zero polynomial has every element as a root"),
            1 => return 0,
            2 => return 1,
            _ => {}
        }
        // t^q mod a, by repeated squaring
        let mut result = vec![1u32];
        let mut base = rem(f, &[0, 1], &a);
        let mut e = f.order() as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(f, &result, &base, &a);
            }
            base = mul_mod(f, &base, &base, &a);
            e >>= 1;
        }
        // gcd(a, t^q − t)
        let mut t_q_minus_t = result;
        t_q_minus_t.resize(t_q_minus_t.len().max(2), 0);
        t_q_minus_t[1] = f.sub(t_q_minus_t[1], 1);
        let g = gcd(f, a, t_q_minus_t);
        g.len() as u64 - 1
    }

}
