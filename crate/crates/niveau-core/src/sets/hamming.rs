//! Hamming balls `{ g : |{omega : g(omega) != c(omega)}| <= k }` around a
//! centre `c`, measured in scale-`n` cylinders.

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::counting;
use crate::error::{Error, Result};
use crate::group::{group_order, GroupElement, RandomStream};

/// A radius-`k` ball at scale `n` around a centre given at any coarser
/// scale (the centre is embedded once at construction).
///
/// `U(n, k)` is the ball around `0` and `V(n, k) = U(n, k) + 1` the ball
/// around the all-ones element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingBallSpec {
    p: u8,
    n: u32,
    k: u64,
    /// Centre as supplied (scale <= n), kept for reporting.
    center: GroupElement,
    /// Centre embedded to scale n, used for membership tests.
    center_embedded: GroupElement,
}

impl HammingBallSpec {
    /// Ball around an arbitrary centre; `center.n() <= n` is required.
    pub fn around(center: GroupElement, n: u32, k: u64) -> Result<Self> {
        if center.n() > n {
            return Err(Error::ScaleMismatch { a: center.n(), b: n });
        }
        let center_embedded = center.embed(n)?;
        Ok(HammingBallSpec { p: center.p(), n, k, center, center_embedded })
    }

    /// `U(n, k)`: ball around the identity.
    pub fn origin(p: u8, n: u32, k: u64) -> Result<Self> {
        HammingBallSpec::around(GroupElement::zero(p, n)?, n, k)
    }

    /// `V(n, k)`: ball around the all-ones element.
    pub fn ones(p: u8, n: u32, k: u64) -> Result<Self> {
        HammingBallSpec::around(GroupElement::ones(p, n)?, n, k)
    }

    /// Same ball shifted to a new centre at the same scale.
    pub fn translate(&self, by: &GroupElement) -> Result<Self> {
        let c = self.center_embedded.add(&by.embed(self.n)?)?;
        HammingBallSpec::around(c, self.n, self.k)
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn center(&self) -> &GroupElement {
        &self.center
    }

    /// Membership test; the element must live at scale `n` exactly (embed a
    /// coarser element first).
    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        if g.p() != self.p {
            return Err(Error::ModulusMismatch { a: g.p(), b: self.p });
        }
        if g.n() != self.n {
            return Err(Error::ScaleMismatch { a: g.n(), b: self.n });
        }
        Ok(g.distance(&self.center_embedded)? <= self.k)
    }

    /// Exact cardinality `sum_{j <= k} C(2^n, j) (p-1)^j`.
    pub fn count(&self) -> BigUint {
        counting::ball_count(self.p, 1u64 << self.n, self.k)
    }

    /// Exact density inside `G_p^(n)`.
    pub fn density(&self) -> BigRational {
        BigRational::new(self.count().into(), group_order(self.p, self.n).into())
    }

    /// Uniform member, drawn via the radius distribution.
    pub fn sample(&self, rng: &mut RandomStream) -> Result<GroupElement> {
        let cells = 1u64 << self.n;
        let k = self.k.min(cells);
        // cumulative weights over the radius j = 0..=k
        let mut cum = Vec::with_capacity(k as usize + 1);
        let mut total = BigUint::from(0u32);
        for j in 0..=k {
            let w = counting::binomial(cells, j)
                * BigUint::from(self.p as u64 - 1).pow(j as u32);
            total += w;
            cum.push(total.clone());
        }
        let x = rng.big_below(&total);
        let j = cum.partition_point(|c| *c <= x) as u64;
        let flips = rng.subset(cells, j);
        if self.p == 2 {
            // the only nonzero delta is 1, so the flip set is a sparse xor
            let mut delta = crate::bits::BitVec::zeros(cells);
            for &cell in &flips {
                delta.set(cell, true);
            }
            return self
                .center_embedded
                .add(&GroupElement::from_packed(self.n, delta));
        }
        let mut digits: Vec<u8> = (0..cells).map(|i| self.center_embedded.coeff(i)).collect();
        for &cell in &flips {
            let delta = 1 + rng.below(self.p as u64 - 1) as u8;
            digits[cell as usize] = (digits[cell as usize] + delta) % self.p;
        }
        GroupElement::from_coeffs(self.p, self.n, &digits)
    }

    /// Canonical text form, e.g. `p=2;ball=V;n=4;k=3`.
    pub fn encode(&self) -> String {
        let cells = 1u64 << self.n;
        let zero_centre = (0..cells).all(|i| self.center_embedded.coeff(i) == 0);
        let ones_centre = (0..cells).all(|i| self.center_embedded.coeff(i) == 1);
        if zero_centre {
            format!("p={};ball=U;n={};k={}", self.p, self.n, self.k)
        } else if ones_centre {
            format!("p={};ball=V;n={};k={}", self.p, self.n, self.k)
        } else {
            format!(
                "p={};ball=B;n={};k={};center={}",
                self.p,
                self.n,
                self.k,
                self.center.encode()
            )
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = None;
        let mut n = None;
        let mut k = None;
        let mut kind = None;
        // The centre is itself an encoded element containing `;`, so it is
        // always the final field and is split off before tokenizing.
        let (head, center) = match s.find(";center=") {
            Some(idx) => (&s[..idx], Some(s[idx + ";center=".len()..].to_string())),
            None => (s, None),
        };
        for part in head.split(';') {
            if let Some(v) = part.strip_prefix("p=") {
                p = Some(v.parse::<u8>().map_err(|e| Error::Parse(e.to_string()))?);
            } else if let Some(v) = part.strip_prefix("ball=") {
                kind = Some(v.to_string());
            } else if let Some(v) = part.strip_prefix("n=") {
                n = Some(v.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?);
            } else if let Some(v) = part.strip_prefix("k=") {
                k = Some(v.parse::<u64>().map_err(|e| Error::Parse(e.to_string()))?);
            }
        }
        let (p, n, k, kind) = match (p, n, k, kind) {
            (Some(p), Some(n), Some(k), Some(kind)) => (p, n, k, kind),
            _ => return Err(Error::Parse(format!("malformed ball spec {s:?}"))),
        };
        match kind.as_str() {
            "U" => HammingBallSpec::origin(p, n, k),
            "V" => HammingBallSpec::ones(p, n, k),
            "B" => {
                let c: GroupElement = center
                    .ok_or_else(|| Error::Parse("ball=B needs center=".into()))?
                    .parse()?;
                HammingBallSpec::around(c, n, k)
            }
            other => Err(Error::Parse(format!("unknown ball kind {other:?}"))),
        }
    }
}
