//! Exact binomial sums shared by the ball and niveau counting code, plus
//! certified probability intervals for density comparisons at scales where
//! the exact rationals are too large to touch.
//!
//! Counts are always exact big integers. The interval type never replaces a
//! count; it only answers order comparisons (`density >= target?`) with
//! directed rounding, so a `yes`/`no` from it is a proof either way.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)` by the multiplicative rule; every
/// intermediate division is exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// `2^e` as a big integer.
pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// `base^e` for a small base.
pub fn pow_u8(base: u8, e: u64) -> BigUint {
    if base == 2 {
        return pow2(e);
    }
    let mut acc = BigUint::one();
    let mut sq = BigUint::from(base);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Number of elements of `F_p^cells` within Hamming distance `k` of a fixed
/// point: `sum_{j<=k} C(cells, j) (p-1)^j`.
pub fn ball_count(p: u8, cells: u64, k: u64) -> BigUint {
    let k = k.min(cells);
    let q = BigUint::from(p - 1);
    let mut total = BigUint::zero();
    let mut qj = BigUint::one();
    let mut c = BigUint::one();
    for j in 0..=k {
        total += &c * &qj;
        if j < k {
            // advance C(cells, j) -> C(cells, j+1) and (p-1)^j -> (p-1)^(j+1)
            c = c * (cells - j) / (j + 1);
            qj *= &q;
        }
    }
    total
}

/// `sum_{w : 2w > b + 2m} C(b, w)` — the strict upper tail of the binomial
/// row `b` past `b/2 + m`.
///
/// For even `b` this uses the symmetric identity
/// `tail = (2^b - Z) / 2` with `Z = sum_{|w - b/2| <= m} C(b, w)`,
/// which needs only `2m + 1` coefficients instead of `b/2` of them.
pub fn upper_tail(b: u64, m: u64) -> BigUint {
    if 2 * m >= b {
        // threshold at or past the end of the row: sum the few surviving terms
        let mut total = BigUint::zero();
        for w in 0..=b {
            if 2 * w > b + 2 * m {
                total += binomial(b, w);
            }
        }
        return total;
    }
    if b % 2 == 1 {
        // only reachable for degenerate rows; keep the direct sum for honesty
        let mut total = BigUint::zero();
        for w in 0..=b {
            if 2 * w > b + 2 * m {
                total += binomial(b, w);
            }
        }
        return total;
    }
    let half = b / 2;
    let center = binomial(b, half);
    let mut band = center.clone();
    let mut up = center;
    for j in 0..m {
        // C(b, half+j) -> C(b, half+j+1)
        up = up * (half - j) / (half + j + 1);
        band += &up << 1;
    }
    (pow2(b) - band) >> 1
}

/// Same tail, but each choice of `w` cells carries a factor `(p-1)^(b-w)`
/// for the unconstrained remaining cells of a `p`-ary alphabet:
/// `sum_{2w > b + 2m} C(b, w) (p-1)^(b-w)`.
pub fn upper_tail_p(p: u8, b: u64, m: u64) -> BigUint {
    if p == 2 {
        return upper_tail(b, m);
    }
    let q = BigUint::from(p - 1);
    let mut total = BigUint::zero();
    let mut c = BigUint::one(); // C(b, b)
    let mut qpow = BigUint::one(); // (p-1)^0
    let mut w = b;
    loop {
        if 2 * w > b + 2 * m {
            total += &c * &qpow;
        } else {
            break;
        }
        if w == 0 {
            break;
        }
        // C(b, w) -> C(b, w-1), (p-1)^(b-w) -> (p-1)^(b-w+1)
        c = c * w / (b - w + 1);
        qpow *= &q;
        w -= 1;
    }
    total
}

/// Mantissa width of the certified floating values; 192 bits leaves a huge
/// margin over the ~10 significant digits any decision here needs.
pub const INTERVAL_MANTISSA_BITS: u64 = 192;

/// Nonnegative floating big-integer `mant * 2^exp`; `mant == 0` means zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fp {
    mant: BigUint,
    exp: i64,
}

impl Fp {
    pub fn zero() -> Self {
        Fp { mant: BigUint::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Fp { mant: BigUint::one(), exp: 0 }
    }

    /// Round to the mantissa width; `down` picks the rounding direction.
    fn rounded(mant: BigUint, exp: i64, down: bool) -> Fp {
        let bits = mant.bits();
        if bits <= INTERVAL_MANTISSA_BITS {
            return Fp { mant, exp };
        }
        let shift = bits - INTERVAL_MANTISSA_BITS;
        let kept = &mant >> shift;
        let exact = &kept << shift == mant;
        let mant = if down || exact { kept } else { kept + 1u32 };
        // the +1 can spill one bit past the width; a second shift is exact
        // enough because only the low bit can be set
        let bits = mant.bits();
        if bits > INTERVAL_MANTISSA_BITS {
            let extra = bits - INTERVAL_MANTISSA_BITS;
            Fp { mant: mant >> extra, exp: exp + shift as i64 + extra as i64 }
        } else {
            Fp { mant, exp: exp + shift as i64 }
        }
    }

    fn mul(&self, other: &Fp, down: bool) -> Fp {
        if self.mant.is_zero() || other.mant.is_zero() {
            return Fp::zero();
        }
        Fp::rounded(&self.mant * &other.mant, self.exp + other.exp, down)
    }

    fn mul_uint(&self, c: &BigUint, down: bool) -> Fp {
        if self.mant.is_zero() || c.is_zero() {
            return Fp::zero();
        }
        Fp::rounded(&self.mant * c, self.exp, down)
    }

    fn add(&self, other: &Fp, down: bool) -> Fp {
        if self.mant.is_zero() {
            return other.clone();
        }
        if other.mant.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let diff = (hi.exp - lo.exp) as u64;
        // a negligible addend cannot move the mantissa; round by an ulp
        if diff > INTERVAL_MANTISSA_BITS + 64 {
            return if down {
                hi.clone()
            } else {
                Fp::rounded(&hi.mant + 1u32, hi.exp, false)
            };
        }
        Fp::rounded((&hi.mant << diff) + &lo.mant, lo.exp, down)
    }

    /// `self - other`, assuming `self >= other`; clamps at zero otherwise.
    fn sub(&self, other: &Fp, down: bool) -> Fp {
        if other.mant.is_zero() {
            return self.clone();
        }
        let (a_mant, b_mant, exp) = if self.exp >= other.exp {
            let diff = (self.exp - other.exp) as u64;
            if diff > INTERVAL_MANTISSA_BITS + 64 {
                // subtracting a negligible amount
                return if down {
                    let m = &self.mant - 1u32;
                    Fp::rounded(m, self.exp, true)
                } else {
                    self.clone()
                };
            }
            (&self.mant << diff, other.mant.clone(), other.exp)
        } else {
            let diff = (other.exp - self.exp) as u64;
            (self.mant.clone(), &other.mant << diff, self.exp)
        };
        if b_mant >= a_mant {
            return Fp::zero();
        }
        Fp::rounded(a_mant - b_mant, exp, down)
    }

    /// Directed-rounding quotient `num / den`.
    fn from_ratio(num: &BigUint, den: &BigUint, down: bool) -> Fp {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Fp::zero();
        }
        let nb = num.bits() as i64;
        let db = den.bits() as i64;
        let shift = (INTERVAL_MANTISSA_BITS as i64 + 2 + db - nb).max(0) as u64;
        let scaled = num << shift;
        let q = &scaled / den;
        let exact = &q * den == scaled;
        let mant = if down || exact { q } else { q + 1u32 };
        Fp::rounded(mant, -(shift as i64), down)
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> BigRational {
        let m = BigInt::from(self.mant.clone());
        if self.exp >= 0 {
            BigRational::from_integer(m << self.exp as u64)
        } else {
            BigRational::new(m, BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Compare against `num / den` exactly.
    fn cmp_ratio(&self, num: &BigUint, den: &BigUint) -> std::cmp::Ordering {
        // mant * 2^exp  <=>  num / den
        let lhs_base = &self.mant * den;
        if self.exp >= 0 {
            (lhs_base << self.exp as u64).cmp(num)
        } else {
            lhs_base.cmp(&(num << (-self.exp) as u64))
        }
    }

    /// Approximate decimal rendering (display only, never a decision).
    pub fn approx_string(&self) -> String {
        if self.mant.is_zero() {
            return "0".into();
        }
        let bits = self.mant.bits();
        let top = if bits > 53 { u64::try_from(&(&self.mant >> (bits - 53))).unwrap() } else {
            u64::try_from(&self.mant).unwrap()
        };
        let log2 = (self.exp as f64) + (bits as f64 - 53.0).max(0.0)
            + (top as f64).log2();
        let log10 = log2 * std::f64::consts::LOG10_2;
        let e = log10.floor();
        let lead = 10f64.powf(log10 - e);
        format!("{:.6}e{}", lead, e as i64)
    }
}

/// Probability-sized interval `[lo, hi]` with outward rounding everywhere;
/// the true value is always inside.
#[derive(Debug, Clone)]
pub struct ProbInterval {
    lo: Fp,
    hi: Fp,
}

impl ProbInterval {
    pub fn zero() -> Self {
        ProbInterval { lo: Fp::zero(), hi: Fp::zero() }
    }

    pub fn one() -> Self {
        ProbInterval { lo: Fp::one(), hi: Fp::one() }
    }

    /// Exact quotient, outward rounded once.
    pub fn from_ratio(num: &BigUint, den: &BigUint) -> Self {
        ProbInterval {
            lo: Fp::from_ratio(num, den, true),
            hi: Fp::from_ratio(num, den, false),
        }
    }

    pub fn mul(&self, other: &ProbInterval) -> Self {
        ProbInterval { lo: self.lo.mul(&other.lo, true), hi: self.hi.mul(&other.hi, false) }
    }

    pub fn mul_uint(&self, c: &BigUint) -> Self {
        ProbInterval { lo: self.lo.mul_uint(c, true), hi: self.hi.mul_uint(c, false) }
    }

    pub fn add(&self, other: &ProbInterval) -> Self {
        ProbInterval { lo: self.lo.add(&other.lo, true), hi: self.hi.add(&other.hi, false) }
    }

    /// `1 - x` for `x` inside `[0, 1]`.
    pub fn one_minus(&self) -> Self {
        ProbInterval { lo: Fp::one().sub(&self.hi, true), hi: Fp::one().sub(&self.lo, false) }
    }

    /// Exact halving.
    pub fn halve(&self) -> Self {
        let half = |f: &Fp| {
            if f.mant.is_zero() { Fp::zero() } else { Fp { mant: f.mant.clone(), exp: f.exp - 1 } }
        };
        ProbInterval { lo: half(&self.lo), hi: half(&self.hi) }
    }

    /// Certified comparison with a rational target: `Some(true)` iff the
    /// whole interval is `>= target`, `Some(false)` iff strictly below, and
    /// `None` when the target falls inside (caller decides conservatively).
    pub fn ge(&self, target: &BigRational) -> Option<bool> {
        use std::cmp::Ordering;
        let num = target.numer().magnitude();
        let den = target.denom().magnitude();
        if self.lo.cmp_ratio(num, den) != Ordering::Less {
            return Some(true);
        }
        if self.hi.cmp_ratio(num, den) == Ordering::Less {
            return Some(false);
        }
        None
    }

    /// Certified lower endpoint as an exact rational.
    pub fn lower_rational(&self) -> BigRational {
        self.lo.to_rational()
    }

    pub fn upper_rational(&self) -> BigRational {
        self.hi.to_rational()
    }

    /// Display helper, e.g. `"4.813068e-1"` (midpoint-ish, from the lower end).
    pub fn approx_string(&self) -> String {
        self.lo.approx_string()
    }
}

/// Central-band mass `Z / 2^b` with `Z = sum_{|w - b/2| <= m} C(b, w)`, for
/// even `b`, computed from the ratio product
/// `C(b, b/2) / 2^b = prod_{i<=b/2} (2i-1) / (2i)` without any huge integer.
pub fn central_band_interval(b: u64, m: u64) -> ProbInterval {
    debug_assert!(b % 2 == 0 && b >= 2);
    let half = b / 2;
    // central probability
    let mut center = ProbInterval::one();
    let mut num_acc: u128 = 1;
    let mut den_acc: u128 = 1;
    for i in 1..=half {
        let (nf, df) = ((2 * i - 1) as u128, (2 * i) as u128);
        if num_acc.checked_mul(nf).is_none() || den_acc.checked_mul(df).is_none() {
            center = center.mul(&ProbInterval::from_ratio(
                &BigUint::from(num_acc),
                &BigUint::from(den_acc),
            ));
            num_acc = 1;
            den_acc = 1;
        }
        num_acc *= nf;
        den_acc *= df;
    }
    center = center.mul(&ProbInterval::from_ratio(
        &BigUint::from(num_acc),
        &BigUint::from(den_acc),
    ));
    // band factor: Z / C(b, b/2) = 1 + 2 * sum_{j=1..m} prod_{i<=j} (half - i + 1)/(half + i)
    let mut band = ProbInterval::one();
    let mut step = ProbInterval::one();
    let two = BigUint::from(2u32);
    for j in 1..=m.min(half) {
        step = step.mul(&ProbInterval::from_ratio(
            &BigUint::from(half - j + 1),
            &BigUint::from(half + j),
        ));
        band = band.add(&step.mul_uint(&two));
    }
    center.mul(&band)
}

/// Certified interval for the single-link niveau density
/// `upper_tail(b, m) / 2^b`; exact quotient for moderate `b`, band identity
/// above that.
pub fn single_link_density_interval(b: u64, m: u64) -> ProbInterval {
    if 2 * m >= b {
        return ProbInterval::from_ratio(&upper_tail(b, m), &pow2(b));
    }
    if b <= (1 << 16) {
        return ProbInterval::from_ratio(&upper_tail(b, m), &pow2(b));
    }
    // density = (1 - Z/2^b) / 2
    central_band_interval(b, m).one_minus().halve()
}

/// Certified interval for `P(X > b/2 + m)` where `X ~ Binomial(n_blocks, q)`
/// and `q` is itself an interval; this is the nested niveau recursion step.
pub fn binomial_tail_interval(n_blocks: u64, margin: u64, q: &ProbInterval) -> ProbInterval {
    let c = (n_blocks + 2 * margin) / 2; // sum over t >= c + 1
    if c >= n_blocks {
        return ProbInterval::zero();
    }
    let r = q.one_minus();
    let np = n_blocks as usize;
    let mut q_pow = vec![ProbInterval::one(); np + 1];
    let mut r_pow = vec![ProbInterval::one(); np + 1];
    for t in 1..=np {
        q_pow[t] = q_pow[t - 1].mul(q);
        r_pow[t] = r_pow[t - 1].mul(&r);
    }
    let mut total = ProbInterval::zero();
    let mut coeff = binomial(n_blocks, c + 1);
    for t in (c + 1)..=n_blocks {
        let term = q_pow[t as usize]
            .mul(&r_pow[(n_blocks - t) as usize])
            .mul_uint(&coeff);
        total = total.add(&term);
        if t < n_blocks {
            // C(N, t) -> C(N, t+1); the division is exact
            coeff = coeff * (n_blocks - t) / (t + 1);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(8, 3), BigUint::from(56u32));
        assert_eq!(binomial(8, 9), BigUint::zero());
        assert_eq!(binomial(4096, 1), BigUint::from(4096u32));
    }

    #[test]
    fn tail_matches_direct_sum() {
        for b in [2u64, 4, 8, 16, 32, 64] {
            for m in 0..=(b / 2 + 2) {
                let direct: BigUint = (0..=b)
                    .filter(|w| 2 * w > b + 2 * m)
                    .map(|w| binomial(b, w))
                    .sum();
                assert_eq!(upper_tail(b, m), direct, "b={b} m={m}");
            }
        }
    }

    #[test]
    fn tail_known_values() {
        // row 16 past 8+3: C(16,12..16) = 1820+560+120+16+1
        assert_eq!(upper_tail(16, 3), BigUint::from(2517u32));
        // row 8 past 4+1: 28+8+1
        assert_eq!(upper_tail(8, 1), BigUint::from(37u32));
        // row 4 past 2+1: C(4,4)
        assert_eq!(upper_tail(4, 1), BigUint::one());
        // degenerate single-cell row: only w=1 beats 1/2 + 0
        assert_eq!(upper_tail(1, 0), BigUint::one());
        assert_eq!(upper_tail(1, 1), BigUint::zero());
    }

    #[test]
    fn p_ary_tail_matches_direct_sum() {
        for p in [3u8, 5] {
            for b in [1u64, 2, 4, 8, 16] {
                for m in 0..=(b / 2 + 1) {
                    let q = BigUint::from(p - 1);
                    let direct: BigUint = (0..=b)
                        .filter(|w| 2 * w > b + 2 * m)
                        .map(|w| binomial(b, w) * q.pow((b - w) as u32))
                        .sum();
                    assert_eq!(upper_tail_p(p, b, m), direct, "p={p} b={b} m={m}");
                }
            }
        }
    }

    #[test]
    fn ball_count_examples() {
        // p=2, 4 cells, radius 1: centre + 4 flips
        assert_eq!(ball_count(2, 4, 1), BigUint::from(5u32));
        // p=3, 4 cells, radius 1: 1 + 4*2
        assert_eq!(ball_count(3, 4, 1), BigUint::from(9u32));
        // radius saturates at the cell count
        assert_eq!(ball_count(2, 4, 99), pow2(4));
    }

    fn exact_ratio(num: &BigUint, den: &BigUint) -> BigRational {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }

    fn assert_contains(iv: &ProbInterval, truth: &BigRational, label: &str) {
        assert!(iv.lower_rational() <= *truth, "{label}: lower endpoint above truth");
        assert!(iv.upper_rational() >= *truth, "{label}: upper endpoint below truth");
    }

    #[test]
    fn interval_ratio_brackets_exact_value() {
        let third = ProbInterval::from_ratio(&BigUint::from(1u32), &BigUint::from(3u32));
        let truth = exact_ratio(&BigUint::one(), &BigUint::from(3u32));
        assert_contains(&third, &truth, "1/3");
        // the bracket is tight: width below 2^-190
        let width = third.upper_rational() - third.lower_rational();
        let ulp = BigRational::new(BigInt::one(), BigInt::one() << 190u32);
        assert!(width < ulp, "interval wider than expected: {width}");
    }

    #[test]
    fn interval_arithmetic_brackets_rational_arithmetic() {
        let a = ProbInterval::from_ratio(&BigUint::from(3u32), &BigUint::from(7u32));
        let b = ProbInterval::from_ratio(&BigUint::from(2u32), &BigUint::from(5u32));
        let ra = exact_ratio(&BigUint::from(3u32), &BigUint::from(7u32));
        let rb = exact_ratio(&BigUint::from(2u32), &BigUint::from(5u32));
        assert_contains(&a.mul(&b), &(&ra * &rb), "product");
        assert_contains(&a.add(&b), &(&ra + &rb), "sum");
        assert_contains(&a.one_minus(), &(BigRational::one() - &ra), "complement");
        assert_contains(&a.halve(), &(&ra / BigRational::from_integer(2.into())), "half");
        assert_contains(
            &a.mul_uint(&BigUint::from(2u32)),
            &(&ra * BigRational::from_integer(2.into())),
            "scale",
        );
    }

    #[test]
    fn interval_comparison_is_certified() {
        let x = ProbInterval::from_ratio(&BigUint::from(37u32), &BigUint::from(256u32));
        let below = exact_ratio(&BigUint::from(36u32), &BigUint::from(256u32));
        let above = exact_ratio(&BigUint::from(38u32), &BigUint::from(256u32));
        assert_eq!(x.ge(&below), Some(true));
        assert_eq!(x.ge(&above), Some(false));
        // a zero-width-ish interval still decides its own exact value
        assert_eq!(x.ge(&exact_ratio(&BigUint::from(37u32), &BigUint::from(256u32))), Some(true));
    }

    #[test]
    fn central_band_matches_exact_mass() {
        for b in [4u64, 8, 16, 64, 256] {
            for m in [0u64, 1, 2, 5] {
                let iv = central_band_interval(b, m);
                let z: BigUint = (0..=b)
                    .filter(|w| {
                        let lo = 2 * w + 2 * m >= b;
                        let hi = 2 * w <= b + 2 * m;
                        lo && hi
                    })
                    .map(|w| binomial(b, w))
                    .sum();
                let truth = exact_ratio(&z, &pow2(b));
                assert_contains(&iv, &truth, &format!("band b={b} m={m}"));
            }
        }
    }

    #[test]
    fn single_link_interval_brackets_exact_density() {
        for b in [2u64, 4, 8, 16, 256, 1024] {
            for m in [0u64, 1, 3, 7] {
                let iv = single_link_density_interval(b, m);
                let truth = exact_ratio(&upper_tail(b, m), &pow2(b));
                assert_contains(&iv, &truth, &format!("link b={b} m={m}"));
            }
        }
    }

    #[test]
    fn large_scale_band_route_agrees_with_exact_route() {
        // force both code paths on the same instance and compare brackets
        let b = 1u64 << 14;
        let m = 3u64;
        let exact = exact_ratio(&upper_tail(b, m), &pow2(b));
        let band = central_band_interval(b, m).one_minus().halve();
        assert_contains(&band, &exact, "band route at b=2^14");
    }

    #[test]
    fn binomial_tail_matches_exact_sum() {
        // nested level: N blocks, success chance a/2^s, margin m
        for (n_blocks, margin, num, den) in
            [(4u64, 1u64, 1u32, 4u32), (16, 3, 37, 256), (64, 2, 1, 2)]
        {
            let q_num = BigUint::from(num);
            let q_den = BigUint::from(den);
            let q = ProbInterval::from_ratio(&q_num, &q_den);
            let iv = binomial_tail_interval(n_blocks, margin, &q);
            let c = (n_blocks + 2 * margin) / 2;
            let p = exact_ratio(&q_num, &q_den);
            let one_minus_p = BigRational::one() - &p;
            let mut truth = BigRational::zero();
            for t in (c + 1)..=n_blocks {
                let term = exact_ratio(&binomial(n_blocks, t), &BigUint::one())
                    * p.pow(t as i32)
                    * one_minus_p.pow((n_blocks - t) as i32);
                truth += term;
            }
            assert_contains(&iv, &truth, &format!("tail N={n_blocks} m={margin}"));
        }
    }

    #[test]
    fn binomial_tail_is_empty_past_the_block_count() {
        let q = ProbInterval::from_ratio(&BigUint::one(), &BigUint::from(2u32));
        let iv = binomial_tail_interval(8, 4, &q);
        assert!(iv.upper_rational().is_zero());
    }
}
