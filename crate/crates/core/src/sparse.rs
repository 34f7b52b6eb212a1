//! Exact dyadic numbers with astronomically large exponents.
//!
//! The hierarchical tree parameters are powers of two whose exponents are
//! themselves huge (`E_k = 2^(2 a_{k-1})` with `a_{k-1}` possibly having tens
//! of thousands of bits). A [`Sparse`] value is a finite sum of
//! `mantissa * 2^shift` chunks with a big-integer `shift`, so such numbers,
//! their sums and their ratios by powers of two stay exact.
//!
//! The chunk list is canonical: chunks are sorted by `shift`, every mantissa is
//! odd, no chunk contains a run of [`GAP`] or more zero bits, and neighbouring
//! chunks are separated by at least [`GAP`] zero bits. Because the binary
//! expansion of a dyadic rational is unique, two equal values always have
//! identical chunk lists and `==` is structural.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Minimum zero-run length that separates two chunks.
pub const GAP: u64 = 64;

/// Largest dense size (in bits) that [`Sparse::to_biguint`] will produce.
pub const DENSE_BIT_LIMIT: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Chunk {
    shift: BigInt,
    mantissa: BigUint,
}

impl Chunk {
    fn top(&self) -> BigInt {
        &self.shift + BigInt::from(self.mantissa.bits())
    }
}

/// Non-negative dyadic rational `Σ mantissa_i · 2^shift_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sparse {
    chunks: Vec<Chunk>,
}

impl Sparse {
    pub fn zero() -> Self {
        Sparse { chunks: Vec::new() }
    }

    pub fn one() -> Self {
        Sparse::pow2(BigInt::zero())
    }

    /// `2^exponent`; negative exponents give dyadic fractions.
    pub fn pow2(exponent: BigInt) -> Self {
        Sparse {
            chunks: vec![Chunk {
                shift: exponent,
                mantissa: BigUint::one(),
            }],
        }
    }

    pub fn from_biguint(value: BigUint) -> Self {
        Self::from_terms(vec![(BigInt::zero(), value)])
    }

    pub fn from_u64(value: u64) -> Self {
        Self::from_biguint(BigUint::from(value))
    }

    fn from_terms(mut terms: Vec<(BigInt, BigUint)>) -> Self {
        terms.retain(|(_, m)| !m.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<Chunk> = Vec::new();
        for (shift, mantissa) in terms {
            if let Some(cur) = merged.last_mut() {
                // gap = shift - top(cur); merge unless it exceeds GAP
                let gap = &shift - cur.top();
                if gap <= BigInt::from(GAP) {
                    let offset = (&shift - &cur.shift)
                        .to_u64()
                        .expect("offset within a chunk is small");
                    cur.mantissa += mantissa << offset;
                    continue;
                }
            }
            merged.push(Chunk { shift, mantissa });
        }
        let mut chunks = Vec::with_capacity(merged.len());
        for c in merged {
            split_into(c, &mut chunks);
        }
        Sparse { chunks }
    }

    fn terms(&self) -> impl Iterator<Item = (BigInt, BigUint)> + '_ {
        self.chunks
            .iter()
            .map(|c| (c.shift.clone(), c.mantissa.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.chunks.is_empty()
    }

    /// True when the value is an integer (no bits below the binary point).
    pub fn is_integer(&self) -> bool {
        self.chunks.first().map_or(true, |c| !c.shift.is_negative())
    }

    /// `Some(e)` when the value is exactly `2^e`.
    pub fn as_power_of_two(&self) -> Option<BigInt> {
        match self.chunks.as_slice() {
            [c] if c.mantissa.is_one() => Some(c.shift.clone()),
            _ => None,
        }
    }

    /// Position one above the highest set bit, i.e. `floor(log2 x) + 1`.
    pub fn bit_length(&self) -> Option<BigInt> {
        self.chunks.last().map(Chunk::top)
    }

    /// Multiply by `2^exponent` (a shift in either direction).
    pub fn shl(&self, exponent: &BigInt) -> Self {
        Sparse {
            chunks: self
                .chunks
                .iter()
                .map(|c| Chunk {
                    shift: &c.shift + exponent,
                    mantissa: c.mantissa.clone(),
                })
                .collect(),
        }
    }

    /// Exact division by a power of two; `None` if `divisor` is not one.
    pub fn div_pow2(&self, divisor: &Sparse) -> Option<Self> {
        divisor.as_power_of_two().map(|e| self.shl(&-e))
    }

    /// Dense conversion for integers of at most [`DENSE_BIT_LIMIT`] bits.
    pub fn to_biguint(&self) -> Option<BigUint> {
        if !self.is_integer() {
            return None;
        }
        let Some(top) = self.bit_length() else {
            return Some(BigUint::zero());
        };
        if top > BigInt::from(DENSE_BIT_LIMIT) {
            return None;
        }
        let mut out = BigUint::zero();
        for c in &self.chunks {
            out += &c.mantissa << c.shift.to_u64().expect("bounded shift");
        }
        Some(out)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_biguint().and_then(|v| v.to_u64())
    }

    /// Natural logarithm, `+inf` once the exponent leaves `f64` range.
    pub fn ln(&self) -> f64 {
        let Some(c) = self.chunks.last() else {
            return f64::NEG_INFINITY;
        };
        let bits = c.mantissa.bits();
        let (lead, extra) = if bits > 64 {
            ((&c.mantissa >> (bits - 64)).to_u64().unwrap(), bits - 64)
        } else {
            (c.mantissa.to_u64().unwrap(), 0)
        };
        let exp = c.shift.to_f64().unwrap_or(f64::INFINITY) + extra as f64;
        (lead as f64).ln() + exp * std::f64::consts::LN_2
    }

    /// Approximate value as `f64` (0 on underflow, `inf` on overflow).
    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Sparse::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

fn split_into(mut c: Chunk, out: &mut Vec<Chunk>) {
    loop {
        if c.mantissa.is_zero() {
            return;
        }
        let tz = c.mantissa.trailing_zeros().unwrap_or(0);
        c.mantissa >>= tz;
        c.shift += BigInt::from(tz);
        // find the first zero run of length >= GAP above the lowest bit
        let bits = c.mantissa.bits();
        let mut run = 0u64;
        let mut cut = None;
        for i in 0..bits {
            if c.mantissa.bit(i) {
                if run >= GAP {
                    cut = Some(i);
                    break;
                }
                run = 0;
            } else {
                run += 1;
            }
        }
        match cut {
            None => {
                out.push(c);
                return;
            }
            Some(i) => {
                let (hi, lo) = c.mantissa.div_rem(&(BigUint::one() << i));
                out.push(Chunk {
                    shift: c.shift.clone(),
                    mantissa: lo,
                });
                c = Chunk {
                    shift: c.shift + BigInt::from(i),
                    mantissa: hi,
                };
            }
        }
    }
}

impl std::ops::Add for &Sparse {
    type Output = Sparse;
    fn add(self, rhs: &Sparse) -> Sparse {
        Sparse::from_terms(self.terms().chain(rhs.terms()).collect())
    }
}

impl std::ops::Add for Sparse {
    type Output = Sparse;
    fn add(self, rhs: Sparse) -> Sparse {
        &self + &rhs
    }
}

impl std::ops::Mul for &Sparse {
    type Output = Sparse;
    fn mul(self, rhs: &Sparse) -> Sparse {
        let mut terms = Vec::with_capacity(self.chunks.len() * rhs.chunks.len());
        for a in &self.chunks {
            for b in &rhs.chunks {
                terms.push((&a.shift + &b.shift, &a.mantissa * &b.mantissa));
            }
        }
        Sparse::from_terms(terms)
    }
}

impl std::ops::Mul for Sparse {
    type Output = Sparse;
    fn mul(self, rhs: Sparse) -> Sparse {
        &self * &rhs
    }
}

impl From<u64> for Sparse {
    fn from(v: u64) -> Self {
        Sparse::from_u64(v)
    }
}

impl From<BigUint> for Sparse {
    fn from(v: BigUint) -> Self {
        Sparse::from_biguint(v)
    }
}

impl Ord for Sparse {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.chunks.iter().rev().cloned();
        let mut b = other.chunks.iter().rev().cloned();
        let mut ha = a.next();
        let mut hb = b.next();
        loop {
            let (ca, cb) = match (ha.take(), hb.take()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(ca), Some(cb)) => (ca, cb),
            };
            let (ta, tb) = (ca.top(), cb.top());
            if ta != tb {
                return ta.cmp(&tb);
            }
            // align the common leading bits
            let low = ca.shift.clone().max(cb.shift.clone());
            let da = (&low - &ca.shift).to_u64().unwrap();
            let db = (&low - &cb.shift).to_u64().unwrap();
            let (qa, qb) = (&ca.mantissa >> da, &cb.mantissa >> db);
            match qa.cmp(&qb) {
                Ordering::Equal => {}
                ord => return ord,
            }
            ha = remainder(ca, da).or_else(|| a.next());
            hb = remainder(cb, db).or_else(|| b.next());
        }
    }
}

fn remainder(c: Chunk, low_bits: u64) -> Option<Chunk> {
    if low_bits == 0 {
        return None;
    }
    let mask = (BigUint::one() << low_bits) - BigUint::one();
    let rest = &c.mantissa & mask;
    if rest.is_zero() {
        return None;
    }
    let tz = rest.trailing_zeros().unwrap_or(0);
    Some(Chunk {
        shift: c.shift + BigInt::from(tz),
        mantissa: rest >> tz,
    })
}

impl PartialOrd for Sparse {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Sparse {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(v) = self.to_biguint() {
            if v.bits() <= 4096 {
                return write!(f, "{v}");
            }
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .chunks
            .iter()
            .rev()
            .map(|c| {
                let sh = match c.shift.sign() {
                    Sign::NoSign => "0".to_string(),
                    _ if c.shift.bits() > 64 => format!("<{}-bit>", c.shift.bits()),
                    _ => c.shift.to_string(),
                };
                format!("{}*2^{}", c.mantissa, sh)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
