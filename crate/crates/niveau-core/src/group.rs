//! Elements of `G_p^(n) = F_p^{Omega_n}`: functions from length-`n` binary
//! strings to residues mod `p`, with the scale-`n` structure made explicit.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * A string `tau = tau_1 ... tau_m` is identified with the integer
//!   `index(tau) = sum_j tau_j * 2^(m-j)`, i.e. `tau_1` is the most
//!   significant bit. Cylinders of `Omega_n` are ordered by this index.
//! * The coefficient vector of an element lists cylinder values in index
//!   order; read as a base-`p` integer (first coefficient most significant)
//!   it yields the element's canonical index, which is also the enumeration
//!   and tie-breaking order.
//! * Embedding into a finer scale duplicates each coefficient over the
//!   refined cylinders; restriction to a prefix `tau` is the contiguous
//!   slice of coefficients below `tau`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitVec;
use crate::counting;
use crate::error::{Error, Result};

/// Largest supported scale; `2^26` cells is an 8 MiB element at p = 2.
pub const MAX_SCALE: u32 = 26;

/// Largest modulus; single-character digit encoding stops at base 36.
pub const MAX_MODULUS: u8 = 36;

pub(crate) fn check_prime(p: u8) -> Result<()> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_MODULUS {
        return Err(Error::ModulusTooLarge(p));
    }
    Ok(())
}

fn check_scale(n: u32) -> Result<()> {
    if n > MAX_SCALE {
        return Err(Error::ScaleTooLarge { n, max: MAX_SCALE });
    }
    Ok(())
}

/// A binary string of fixed length, stored as its cylinder index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryString {
    len: u32,
    index: u64,
}

impl BinaryString {
    /// The empty string (the single cylinder of scale 0).
    pub fn empty() -> Self {
        BinaryString { len: 0, index: 0 }
    }

    pub fn from_index(len: u32, index: u64) -> Result<Self> {
        if len > 63 || (len < 64 && index >= 1u64 << len) {
            return Err(Error::BadStringIndex { index, len });
        }
        Ok(BinaryString { len, index })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() > 63 {
            return Err(Error::BadStringIndex { index: 0, len: bits.len() as u32 });
        }
        let mut index = 0u64;
        for &b in bits {
            if b > 1 {
                return Err(Error::Parse(format!("bit out of range: {b}")));
            }
            index = (index << 1) | b as u64;
        }
        Ok(BinaryString { len: bits.len() as u32, index })
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Bit `j` counted from the front of the string, `0 <= j < len`.
    #[inline]
    pub fn bit(&self, j: u32) -> u8 {
        debug_assert!(j < self.len);
        ((self.index >> (self.len - 1 - j)) & 1) as u8
    }

    /// Concatenation `self . other` (self forms the leading bits).
    pub fn concat(&self, other: &BinaryString) -> Result<Self> {
        BinaryString::from_index(
            self.len + other.len,
            (self.index << other.len) | other.index,
        )
    }

    /// All strings of length `m` in index order.
    pub fn all(m: u32) -> impl Iterator<Item = BinaryString> {
        (0..(1u64 << m)).map(move |i| BinaryString { len: m, index: i })
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            write!(f, "{}", self.bit(j))?;
        }
        Ok(())
    }
}

impl FromStr for BinaryString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("invalid bit character {c:?}"))),
            })
            .collect::<Result<_>>()?;
        BinaryString::from_bits(&bits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Coeffs {
    /// p = 2: one bit per cylinder.
    Packed(BitVec),
    /// p >= 3: one digit per cylinder.
    Digits(Vec<u8>),
}

/// An element of `G_p^(n)`, i.e. a function `Omega_n -> Z/p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    p: u8,
    n: u32,
    coeffs: Coeffs,
}

impl GroupElement {
    /// The constant function with value `x` (scale 0 is allowed and has a
    /// single cylinder).
    pub fn constant(p: u8, n: u32, x: u8) -> Result<Self> {
        check_prime(p)?;
        check_scale(n)?;
        if x >= p {
            return Err(Error::ResidueOutOfRange { i: x, p });
        }
        let cells = 1u64 << n;
        let coeffs = if p == 2 {
            let mut v = BitVec::zeros(cells);
            if x == 1 {
                v.fill_range(0, cells, true);
            }
            Coeffs::Packed(v)
        } else {
            Coeffs::Digits(vec![x; cells as usize])
        };
        Ok(GroupElement { p, n, coeffs })
    }

    /// The identity `0`.
    pub fn zero(p: u8, n: u32) -> Result<Self> {
        GroupElement::constant(p, n, 0)
    }

    /// The all-ones element `1`.
    pub fn ones(p: u8, n: u32) -> Result<Self> {
        GroupElement::constant(p, n, 1)
    }

    pub fn from_coeffs(p: u8, n: u32, digits: &[u8]) -> Result<Self> {
        check_prime(p)?;
        check_scale(n)?;
        let cells = 1u64 << n;
        if digits.len() as u64 != cells {
            return Err(Error::Parse(format!(
                "expected {cells} coefficients, got {}",
                digits.len()
            )));
        }
        if let Some(&bad) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::ResidueOutOfRange { i: bad, p });
        }
        let coeffs = if p == 2 {
            Coeffs::Packed(BitVec::from_fn(cells, |i| digits[i as usize] == 1))
        } else {
            Coeffs::Digits(digits.to_vec())
        };
        Ok(GroupElement { p, n, coeffs })
    }

    /// Element whose coefficient vector is `index` written in base `p`
    /// (most significant digit first).
    pub fn from_index(p: u8, n: u32, index: u64) -> Result<Self> {
        check_prime(p)?;
        check_scale(n)?;
        let cells = 1u64 << n;
        if p == 2 {
            if n < 6 && index >= 1u64 << cells {
                return Err(Error::Parse(format!("index {index} out of range")));
            }
            if n > 5 {
                return Err(Error::Parse(
                    "index construction only supported while the order fits u64".into(),
                ));
            }
            let mut v = BitVec::zeros(cells);
            for i in 0..cells {
                if (index >> (cells - 1 - i)) & 1 == 1 {
                    v.set(i, true);
                }
            }
            return Ok(GroupElement { p, n: n as u32, coeffs: Coeffs::Packed(v) });
        }
        let mut digits = vec![0u8; cells as usize];
        let mut rem = index;
        for slot in digits.iter_mut().rev() {
            *slot = (rem % p as u64) as u8;
            rem /= p as u64;
        }
        if rem != 0 {
            return Err(Error::Parse(format!("index {index} out of range")));
        }
        Ok(GroupElement { p, n, coeffs: Coeffs::Digits(digits) })
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of scale-`n` cylinders, `2^n`.
    #[inline]
    pub fn cells(&self) -> u64 {
        1u64 << self.n
    }

    /// Value on the cylinder with the given index.
    pub fn coeff(&self, i: u64) -> u8 {
        match &self.coeffs {
            Coeffs::Packed(v) => v.get(i) as u8,
            Coeffs::Digits(d) => d[i as usize],
        }
    }

    /// Value on the cylinder `[tau]` for a full-length `tau`.
    pub fn value_at(&self, tau: &BinaryString) -> Result<u8> {
        if tau.len() != self.n {
            return Err(Error::ScaleMismatch { a: tau.len(), b: self.n });
        }
        Ok(self.coeff(tau.index()))
    }

    fn check_compatible(&self, other: &GroupElement) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch { a: self.p, b: other.p });
        }
        if self.n != other.n {
            return Err(Error::ScaleMismatch { a: self.n, b: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_compatible(other)?;
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Packed(a), Coeffs::Packed(b)) => {
                let mut v = a.clone();
                v.xor_assign(b);
                Coeffs::Packed(v)
            }
            (Coeffs::Digits(a), Coeffs::Digits(b)) => Coeffs::Digits(
                a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect(),
            ),
            _ => unreachable!("same p implies same representation"),
        };
        Ok(GroupElement { p: self.p, n: self.n, coeffs })
    }

    pub fn neg(&self) -> GroupElement {
        let coeffs = match &self.coeffs {
            Coeffs::Packed(v) => Coeffs::Packed(v.clone()),
            Coeffs::Digits(d) => {
                Coeffs::Digits(d.iter().map(|&x| (self.p - x) % self.p).collect())
            }
        };
        GroupElement { p: self.p, n: self.n, coeffs }
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    /// Reinterpret at a finer scale `target >= n` by duplicating each
    /// coefficient across the `2^(target-n)` refined cylinders.
    pub fn embed(&self, target: u32) -> Result<GroupElement> {
        if target < self.n {
            return Err(Error::EmbedDown { from: self.n, to: target });
        }
        check_scale(target)?;
        if target == self.n {
            return Ok(self.clone());
        }
        let reps = 1u64 << (target - self.n);
        let coeffs = match &self.coeffs {
            Coeffs::Packed(v) => {
                let mut out = BitVec::zeros(1u64 << target);
                for i in v.iter_ones() {
                    out.fill_range(i * reps, (i + 1) * reps, true);
                }
                Coeffs::Packed(out)
            }
            Coeffs::Digits(d) => {
                let mut out = Vec::with_capacity(1usize << target);
                for &x in d {
                    out.extend(std::iter::repeat(x).take(reps as usize));
                }
                Coeffs::Digits(out)
            }
        };
        Ok(GroupElement { p: self.p, n: target, coeffs })
    }

    /// The block below `tau`: `(g|tau)(omega) = g(tau . omega)`, an element
    /// of scale `n - len(tau)`.
    pub fn restrict(&self, tau: &BinaryString) -> Result<GroupElement> {
        if tau.len() > self.n {
            return Err(Error::StringTooLong { len: tau.len(), n: self.n });
        }
        let sub_n = self.n - tau.len();
        let block = 1u64 << sub_n;
        let start = tau.index() * block;
        let coeffs = match &self.coeffs {
            Coeffs::Packed(v) => Coeffs::Packed(v.slice(start, start + block)),
            Coeffs::Digits(d) => {
                Coeffs::Digits(d[start as usize..(start + block) as usize].to_vec())
            }
        };
        Ok(GroupElement { p: self.p, n: sub_n, coeffs })
    }

    /// How many scale-`n` cylinders carry the value `i`.
    pub fn level_count(&self, i: u8) -> Result<u64> {
        if i >= self.p {
            return Err(Error::ResidueOutOfRange { i, p: self.p });
        }
        Ok(match &self.coeffs {
            Coeffs::Packed(v) => {
                let ones = v.count_ones();
                if i == 1 {
                    ones
                } else {
                    self.cells() - ones
                }
            }
            Coeffs::Digits(d) => d.iter().filter(|&&x| x == i).count() as u64,
        })
    }

    /// Level count of the value `i` restricted to the block below `tau`,
    /// without materializing the restriction.
    pub fn level_count_in_block(&self, tau: &BinaryString, i: u8) -> Result<u64> {
        if i >= self.p {
            return Err(Error::ResidueOutOfRange { i, p: self.p });
        }
        if tau.len() > self.n {
            return Err(Error::StringTooLong { len: tau.len(), n: self.n });
        }
        let block = 1u64 << (self.n - tau.len());
        let start = tau.index() * block;
        Ok(match &self.coeffs {
            Coeffs::Packed(v) => {
                let ones = v.count_ones_range(start, start + block);
                if i == 1 {
                    ones
                } else {
                    block - ones
                }
            }
            Coeffs::Digits(d) => d[start as usize..(start + block) as usize]
                .iter()
                .filter(|&&x| x == i)
                .count() as u64,
        })
    }

    /// Number of cylinders with a nonzero value.
    pub fn weight(&self) -> u64 {
        match &self.coeffs {
            Coeffs::Packed(v) => v.count_ones(),
            Coeffs::Digits(d) => d.iter().filter(|&&x| x != 0).count() as u64,
        }
    }

    /// Number of cylinders where the two elements differ.
    pub fn distance(&self, other: &GroupElement) -> Result<u64> {
        self.check_compatible(other)?;
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Packed(a), Coeffs::Packed(b)) => a.distance(b),
            (Coeffs::Digits(a), Coeffs::Digits(b)) => {
                a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
            }
            _ => unreachable!(),
        })
    }

    /// True if the element is constant on every scale-`m` cylinder, i.e. it
    /// lies in the embedded copy of `G_p^(m)`.
    pub fn is_constant_on_scale(&self, m: u32) -> Result<bool> {
        if m > self.n {
            return Err(Error::ScaleMismatch { a: m, b: self.n });
        }
        if m == self.n {
            // blocks are single cells; nothing to compare
            return Ok(true);
        }
        let block = 1u64 << (self.n - m);
        Ok(match &self.coeffs {
            Coeffs::Packed(v) => (0..(1u64 << m))
                .all(|b| v.uniform_range(b * block, (b + 1) * block).is_some()),
            Coeffs::Digits(d) => d
                .chunks(block as usize)
                .all(|c| c.iter().all(|&x| x == c[0])),
        })
    }

    /// Inverse of [`embed`](Self::embed): the scale-`m` element with the
    /// same values, provided the element is constant on scale-`m` cylinders.
    pub fn truncate_to(&self, m: u32) -> Result<GroupElement> {
        if !self.is_constant_on_scale(m)? {
            return Err(Error::NotBlockwiseConstant { scale: m });
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let block = 1u64 << (self.n - m);
        let digits: Vec<u8> = (0..(1u64 << m))
            .map(|b| self.coeff(b * block))
            .collect();
        GroupElement::from_coeffs(self.p, m, &digits)
    }

    /// The canonical index (coefficient vector as a base-`p` integer), when
    /// the group order fits in `u64`.
    pub fn canonical_index(&self) -> Result<u64> {
        match &self.coeffs {
            Coeffs::Packed(v) => {
                if self.cells() > 63 {
                    return Err(Error::Parse("order exceeds u64 index range".into()));
                }
                let mut idx = 0u64;
                for i in 0..self.cells() {
                    idx = (idx << 1) | v.get(i) as u64;
                }
                Ok(idx)
            }
            Coeffs::Digits(d) => {
                let mut idx: u64 = 0;
                for &x in d {
                    idx = idx
                        .checked_mul(self.p as u64)
                        .and_then(|v| v.checked_add(x as u64))
                        .ok_or_else(|| Error::Parse("order exceeds u64 index range".into()))?;
                }
                Ok(idx)
            }
        }
    }

    /// Canonical text form `p=<p>;n=<n>;<digits>`, digits in index order.
    pub fn encode(&self) -> String {
        let mut s = format!("p={};n={};", self.p, self.n);
        for i in 0..self.cells() {
            s.push(std::char::from_digit(self.coeff(i) as u32, 36).unwrap());
        }
        s
    }

    /// Direct access to the packed bits when p = 2.
    pub(crate) fn packed(&self) -> Option<&BitVec> {
        match &self.coeffs {
            Coeffs::Packed(v) => Some(v),
            Coeffs::Digits(_) => None,
        }
    }

    pub(crate) fn from_packed(n: u32, v: BitVec) -> GroupElement {
        debug_assert_eq!(v.len(), 1u64 << n);
        GroupElement { p: 2, n, coeffs: Coeffs::Packed(v) }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut n = None;
        let mut digits = None;
        for part in s.split(';') {
            if let Some(v) = part.strip_prefix("p=") {
                p = Some(v.parse::<u8>().map_err(|e| Error::Parse(e.to_string()))?);
            } else if let Some(v) = part.strip_prefix("n=") {
                n = Some(v.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?);
            } else {
                digits = Some(part.to_string());
            }
        }
        let (p, n, digits) = match (p, n, digits) {
            (Some(p), Some(n), Some(d)) => (p, n, d),
            _ => return Err(Error::Parse(format!("malformed element {s:?}"))),
        };
        let vals: Vec<u8> = digits
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("invalid digit {c:?}")))
            })
            .collect::<Result<_>>()?;
        GroupElement::from_coeffs(p, n, &vals)
    }
}

/// Exact order `p^(2^n)` of `G_p^(n)`.
pub fn group_order(p: u8, n: u32) -> BigUint {
    counting::pow_u8(p, 1u64 << n)
}

/// The order as a `u64` if it does not exceed `cap`.
pub fn group_order_under(p: u8, n: u32, cap: u64) -> Result<u64> {
    let order = group_order(p, n);
    let capped: BigUint = cap.into();
    if order > capped {
        return Err(Error::CapExceeded { order: order.to_string(), cap });
    }
    Ok(order.try_into().expect("order <= cap fits u64"))
}

/// All elements of `G_p^(n)` in canonical index order, refusing to start if
/// the order exceeds `cap`.
pub fn enumerate_group(
    p: u8,
    n: u32,
    cap: u64,
) -> Result<impl Iterator<Item = GroupElement>> {
    check_prime(p)?;
    check_scale(n)?;
    let order = group_order_under(p, n, cap)?;
    let cells = 1u64 << n;
    let first = GroupElement::zero(p, n)?;
    Ok((0..order).scan(first, move |cur, i| {
        let out = cur.clone();
        // increment the coefficient vector as a base-p counter (last digit
        // least significant) so enumeration is O(1) amortized per element
        if i + 1 < order {
            match &mut cur.coeffs {
                Coeffs::Packed(v) => {
                    let mut j = cells;
                    while j > 0 {
                        j -= 1;
                        if v.get(j) {
                            v.set(j, false);
                        } else {
                            v.set(j, true);
                            break;
                        }
                    }
                }
                Coeffs::Digits(d) => {
                    for x in d.iter_mut().rev() {
                        if *x + 1 < p {
                            *x += 1;
                            break;
                        }
                        *x = 0;
                    }
                }
            }
        }
        Some(out)
    }))
}

/// Deterministic random source: ChaCha8 keyed by a public seed, with
/// independent numbered substreams for parallel draws.
pub struct RandomStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

/// Identifier recorded in reports next to every seed.
pub const RNG_ALGORITHM: &str = "chacha8";

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        RandomStream { seed, stream: 0, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Substream `index` of the same seed; draws are independent of the
    /// parent and of other indices, which makes parallel sampling
    /// deterministic regardless of scheduling.
    pub fn substream(&self, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index.wrapping_add(1));
        RandomStream { seed: self.seed, stream: index.wrapping_add(1), rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream
    }

    /// Uniform element of `G_p^(n)`.
    pub fn element(&mut self, p: u8, n: u32) -> Result<GroupElement> {
        check_prime(p)?;
        check_scale(n)?;
        let cells = 1u64 << n;
        if p == 2 {
            let mut v = BitVec::zeros(cells);
            self.rng.fill(v.words_mut());
            v.mask_tail();
            Ok(GroupElement::from_packed(n, v))
        } else {
            let digits: Vec<u8> =
                (0..cells).map(|_| self.rng.gen_range(0..p)).collect();
            GroupElement::from_coeffs(p, n, &digits)
        }
    }

    /// Uniform integer in `[0, bound)`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.rng.gen_range(0..bound)
    }

    /// Uniform big integer in `[0, bound)` by bit-sampling with rejection.
    pub fn big_below(&mut self, bound: &BigUint) -> BigUint {
        use num_traits::Zero;
        debug_assert!(!bound.is_zero());
        let bits = bound.bits();
        let words = ((bits + 63) / 64) as usize;
        loop {
            let mut raw: Vec<u64> = (0..words).map(|_| self.rng.next_u64()).collect();
            let rem = bits % 64;
            if rem != 0 {
                raw[words - 1] &= (1u64 << rem) - 1;
            }
            let candidate = BigUint::from_slice(
                &raw.iter()
                    .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                    .collect::<Vec<_>>(),
            );
            if &candidate < bound {
                return candidate;
            }
        }
    }

    /// Uniform `k`-subset of `0..cells`, returned sorted.
    pub fn subset(&mut self, cells: u64, k: u64) -> Vec<u64> {
        debug_assert!(k <= cells);
        // Floyd's algorithm: k iterations, no allocation proportional to cells
        let mut chosen = std::collections::BTreeSet::new();
        for j in (cells - k)..cells {
            let t = self.below(j + 1);
            if !chosen.insert(t) {
                chosen.insert(j);
            }
        }
        chosen.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_index_convention() {
        // tau_1 is the most significant bit: "10" -> 2, "01" -> 1
        let t: BinaryString = "10".parse().unwrap();
        assert_eq!(t.index(), 2);
        assert_eq!(t.bit(0), 1);
        assert_eq!(t.bit(1), 0);
        let u: BinaryString = "01".parse().unwrap();
        assert_eq!(u.index(), 1);
        assert_eq!(t.concat(&u).unwrap().to_string(), "1001");
        assert_eq!(t.concat(&u).unwrap().index(), 0b1001);
    }

    #[test]
    fn string_roundtrip_all_lengths() {
        for len in 0..=12u32 {
            for idx in 0..(1u64 << len) {
                let t = BinaryString::from_index(len, idx).unwrap();
                let back: BinaryString = t.to_string().parse().unwrap();
                assert_eq!(back, t);
            }
        }
    }

    #[test]
    fn constant_scale_zero_supported() {
        let g = GroupElement::constant(2, 0, 1).unwrap();
        assert_eq!(g.cells(), 1);
        assert_eq!(g.level_count(1).unwrap(), 1);
        assert_eq!(g.encode(), "p=2;n=0;1");
    }

    #[test]
    fn add_is_componentwise() {
        let g = GroupElement::from_coeffs(3, 1, &[1, 2]).unwrap();
        let h = GroupElement::from_coeffs(3, 1, &[2, 2]).unwrap();
        let s = g.add(&h).unwrap();
        assert_eq!((s.coeff(0), s.coeff(1)), (0, 1));
        assert_eq!(g.add(&g.neg()).unwrap(), GroupElement::zero(3, 1).unwrap());
    }

    #[test]
    fn embed_duplicates_contiguously() {
        // (1,0) at scale 1 becomes (1,1,0,0) at scale 2
        let g = GroupElement::from_coeffs(2, 1, &[1, 0]).unwrap();
        let e = g.embed(2).unwrap();
        let vals: Vec<u8> = (0..4).map(|i| e.coeff(i)).collect();
        assert_eq!(vals, vec![1, 1, 0, 0]);
        assert_eq!(e.truncate_to(1).unwrap(), g);
    }

    #[test]
    fn restrict_is_contiguous_slice() {
        let g = GroupElement::from_coeffs(2, 2, &[1, 1, 0, 1]).unwrap();
        let tau: BinaryString = "1".parse().unwrap();
        let r = g.restrict(&tau).unwrap();
        assert_eq!((r.coeff(0), r.coeff(1)), (0, 1));
        // restriction by the empty string is the identity
        let all = g.restrict(&BinaryString::empty()).unwrap();
        assert_eq!(all, g);
    }

    #[test]
    fn restrict_undoes_embed() {
        let g = GroupElement::from_coeffs(2, 2, &[1, 0, 0, 1]).unwrap();
        let e = g.embed(5).unwrap();
        for tau in BinaryString::all(2) {
            let block = e.restrict(&tau).unwrap();
            let expect = GroupElement::constant(2, 3, g.coeff(tau.index())).unwrap();
            assert_eq!(block, expect);
        }
    }

    #[test]
    fn level_counts_sum_to_cells() {
        let g = GroupElement::from_coeffs(5, 2, &[0, 4, 2, 2]).unwrap();
        let total: u64 = (0..5).map(|i| g.level_count(i).unwrap()).sum();
        assert_eq!(total, g.cells());
        assert_eq!(g.level_count(2).unwrap(), 2);
        assert_eq!(g.weight(), 3);
    }

    #[test]
    fn enumeration_order_and_count() {
        let all: Vec<GroupElement> = enumerate_group(2, 1, 1 << 24).unwrap().collect();
        assert_eq!(all.len(), 4);
        let coeffs: Vec<(u8, u8)> = all.iter().map(|g| (g.coeff(0), g.coeff(1))).collect();
        assert_eq!(coeffs, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        for (i, g) in all.iter().enumerate() {
            assert_eq!(g.canonical_index().unwrap(), i as u64);
        }
        let count = enumerate_group(3, 1, 1 << 24).unwrap().count();
        assert_eq!(count, 9);
    }

    #[test]
    fn enumeration_respects_cap() {
        match enumerate_group(2, 5, 1 << 24) {
            Err(Error::CapExceeded { .. }) => {}
            other => panic!("expected cap error, got {:?}", other.map(|it| it.count())),
        }
        assert!(enumerate_group(2, 4, 1 << 24).is_ok());
    }

    #[test]
    fn encode_roundtrip() {
        let g = GroupElement::from_coeffs(3, 2, &[2, 0, 1, 2]).unwrap();
        assert_eq!(g.encode(), "p=3;n=2;2012");
        let back: GroupElement = g.encode().parse().unwrap();
        assert_eq!(back, g);
        assert!("p=4;n=1;00".parse::<GroupElement>().is_err());
        assert!("p=3;n=1;05".parse::<GroupElement>().is_err());
    }

    #[test]
    fn seeded_stream_reproduces() {
        let mut a = RandomStream::new(17);
        let mut b = RandomStream::new(17);
        for _ in 0..50 {
            assert_eq!(
                a.element(2, 4).unwrap(),
                b.element(2, 4).unwrap()
            );
        }
        let mut c = RandomStream::new(18);
        let fresh: Vec<GroupElement> = (0..8).map(|_| c.element(2, 4).unwrap()).collect();
        let mut c2 = RandomStream::new(18);
        let again: Vec<GroupElement> = (0..8).map(|_| c2.element(2, 4).unwrap()).collect();
        assert_eq!(fresh, again);
    }

    #[test]
    fn substreams_are_independent_of_order() {
        let base = RandomStream::new(5);
        let mut s3 = base.substream(3);
        let x = s3.element(3, 2).unwrap();
        let mut s3_again = RandomStream::new(5).substream(3);
        assert_eq!(s3_again.element(3, 2).unwrap(), x);
        let mut s4 = base.substream(4);
        assert_ne!(s4.element(3, 2).unwrap(), x);
    }

    #[test]
    fn subset_is_uniformly_sized_and_sorted() {
        let mut s = RandomStream::new(9);
        for _ in 0..100 {
            let sub = s.subset(40, 7);
            assert_eq!(sub.len(), 7);
            assert!(sub.windows(2).all(|w| w[0] < w[1]));
            assert!(sub.iter().all(|&x| x < 40));
        }
    }
}
