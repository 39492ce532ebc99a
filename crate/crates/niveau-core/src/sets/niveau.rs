//! Niveau sets: elements whose value-`i` level count beats half the
//! cylinders by a margin, possibly nested through a chain of scales.
//!
//! For a single link `(n, m)` the set is
//! `A_i(n, m) = { g in G_p^(n) : |g^{-1}(i)|_n > 2^(n-1) + m }`.
//!
//! For a chain `(n_1, m_1), ..., (n_l, m_l)` membership is recursive: `g`
//! at scale `n_l` belongs iff the number of scale-`n_1` cylinders `tau`
//! whose block `g|tau` belongs to the tail chain
//! `(n_2 - n_1, m_2), ..., (n_l - n_1, m_l)` exceeds `2^(n_1 - 1) + m_1`.
//!
//! Because distinct blocks are unconstrained by each other, the exact count
//! obeys a product/sum recursion over the tail count, which also yields an
//! exact uniform sampler that never needs rejection against a sparse set.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bits::BitVec;
use crate::counting;
use crate::error::{Error, Result};
use crate::group::{check_prime, group_order, GroupElement, RandomStream};

/// One link of a niveau chain: a scale and the margin demanded there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainLink {
    pub scale: u32,
    pub margin: u64,
}

impl ChainLink {
    pub fn new(scale: u32, margin: u64) -> Self {
        ChainLink { scale, margin }
    }
}

/// Specification of a (possibly nested) niveau set `A_i(chain)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NiveauSpec {
    p: u8,
    i: u8,
    chain: Vec<ChainLink>,
}

impl NiveauSpec {
    /// Margins of zero are accepted here; use
    /// [`require_positive_margins`](Self::require_positive_margins) for the
    /// strict reading.
    pub fn new(p: u8, i: u8, chain: Vec<ChainLink>) -> Result<Self> {
        check_prime(p)?;
        if i >= p {
            return Err(Error::ResidueOutOfRange { i, p });
        }
        if chain.is_empty() {
            return Err(Error::EmptyChain);
        }
        if chain.windows(2).any(|w| w[0].scale >= w[1].scale) {
            return Err(Error::ChainNotIncreasing);
        }
        // scale sanity comes for free: elements at the final scale must exist
        GroupElement::zero(p, chain.last().unwrap().scale)?;
        Ok(NiveauSpec { p, i, chain })
    }

    /// Single-link convenience constructor for `A_i(n, m)`.
    pub fn single(p: u8, i: u8, n: u32, m: u64) -> Result<Self> {
        NiveauSpec::new(p, i, vec![ChainLink::new(n, m)])
    }

    /// Strict validation: every margin must be at least 1.
    pub fn require_positive_margins(&self) -> Result<()> {
        if let Some(pos) = self.chain.iter().position(|l| l.margin == 0) {
            return Err(Error::ZeroMarginStrict { position: pos });
        }
        Ok(())
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn residue(&self) -> u8 {
        self.i
    }

    pub fn chain(&self) -> &[ChainLink] {
        &self.chain
    }

    pub fn levels(&self) -> usize {
        self.chain.len()
    }

    /// The ambient scale `n_l` at which members live.
    pub fn scale(&self) -> u32 {
        self.chain.last().unwrap().scale
    }

    /// Same chain with the residue replaced.
    pub fn with_residue(&self, i: u8) -> Result<Self> {
        NiveauSpec::new(self.p, i, self.chain.clone())
    }

    /// The tail chain governing blocks below a scale-`n_1` cylinder:
    /// scales shift down by `n_1`, margins and residue are kept.
    pub fn tail(&self) -> Option<NiveauSpec> {
        if self.chain.len() < 2 {
            return None;
        }
        let n1 = self.chain[0].scale;
        let chain = self.chain[1..]
            .iter()
            .map(|l| ChainLink::new(l.scale - n1, l.margin))
            .collect();
        Some(NiveauSpec { p: self.p, i: self.i, chain })
    }

    /// Chain truncated to its first `levels` links.
    pub fn prefix(&self, levels: usize) -> Result<NiveauSpec> {
        if levels == 0 || levels > self.chain.len() {
            return Err(Error::InvalidParameter(format!(
                "prefix length {levels} out of range"
            )));
        }
        NiveauSpec::new(self.p, self.i, self.chain[..levels].to_vec())
    }

    /// Membership; the element must be given at the ambient scale exactly.
    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        if g.p() != self.p {
            return Err(Error::ModulusMismatch { a: g.p(), b: self.p });
        }
        if g.n() != self.scale() {
            return Err(Error::ScaleMismatch { a: g.n(), b: self.scale() });
        }
        Ok(self.contains_unchecked(g))
    }

    fn contains_unchecked(&self, g: &GroupElement) -> bool {
        let first = self.chain[0];
        let blocks = 1u64 << first.scale;
        if self.chain.len() == 1 {
            let hits = g.level_count(self.i).expect("residue validated");
            return 2 * hits > g.cells() + 2 * first.margin;
        }
        let tail = self.tail().expect("len >= 2");
        let sub = g.n() - first.scale;
        let mut hits = 0u64;
        // early accept/reject: remaining blocks cannot change the outcome
        let need = blocks + 2 * first.margin; // hits must satisfy 2*hits > need
        for b in 0..blocks {
            let tau = crate::group::BinaryString::from_index(first.scale, b)
                .expect("index in range");
            let in_tail = if tail.chain.len() == 1 && tail.chain[0].scale == sub {
                // single-link tail over the whole block: count in place
                let c = g.level_count_in_block(&tau, self.i).expect("validated");
                2 * c > (1u64 << sub) + 2 * tail.chain[0].margin
            } else {
                let block = g.restrict(&tau).expect("scale checked");
                tail.contains_unchecked(&block)
            };
            if in_tail {
                hits += 1;
                if 2 * hits > need {
                    return true;
                }
            } else if 2 * (hits + blocks - b - 1) <= need {
                return false;
            }
        }
        2 * hits > need
    }

    /// Exact cardinality via the blockwise recursion.
    ///
    /// Base (`l = 1`): `sum_{2w > 2^n + 2m} C(2^n, w) (p-1)^(2^n - w)`
    /// (choose the cylinders carrying `i`; every other cylinder has `p - 1`
    /// free values). Nested (`l >= 2`): with `N = 2^(n_1)` blocks, tail
    /// count `a` inside a block group of order `M`,
    /// `sum_{2t > N + 2 m_1} C(N, t) a^t (M - a)^(N-t)`.
    pub fn count(&self) -> BigUint {
        let first = self.chain[0];
        match self.tail() {
            None => counting::upper_tail_p(self.p, 1u64 << first.scale, first.margin),
            Some(tail) => {
                let n_blocks = 1u64 << first.scale;
                let a = tail.count();
                let m_order = group_order(self.p, tail.scale());
                let away = &m_order - &a;
                let mut total = BigUint::zero();
                for t in 0..=n_blocks {
                    if 2 * t > n_blocks + 2 * first.margin {
                        total += counting::binomial(n_blocks, t)
                            * a.pow(t as u32)
                            * away.pow((n_blocks - t) as u32);
                    }
                }
                total
            }
        }
    }

    /// Exact density inside `G_p^(n_l)`.
    pub fn density(&self) -> BigRational {
        BigRational::new(self.count().into(), group_order(self.p, self.scale()).into())
    }

    /// Whether the exact count is cheap enough to materialize as a big
    /// integer. The nested recursion raises tail counts (numbers with about
    /// `2^(n_l - n_1)` bits) to block-count powers, so both the ambient scale
    /// and the top-level block count matter.
    pub fn exact_density_affordable(&self) -> bool {
        let scale = self.scale();
        if scale <= 16 {
            return true;
        }
        scale <= 20 && (1u64 << self.chain[0].scale) <= 64
    }

    /// Certified density interval: a `[lo, hi]` bracket with outward
    /// rounding whose endpoints are honest rational bounds on the exact
    /// density. Used where the exact rational (denominator `2^(2^n_l)`) is
    /// too large to compare directly. Only the `p = 2` family needs this.
    pub fn density_interval(&self) -> Result<counting::ProbInterval> {
        if self.p != 2 {
            if self.scale() > 16 {
                return Err(Error::InvalidParameter(format!(
                    "certified density bracket for p = {} is limited to scale <= 16",
                    self.p
                )));
            }
            return Ok(counting::ProbInterval::from_ratio(
                &self.count(),
                &group_order(self.p, self.scale()),
            ));
        }
        let first = self.chain[0];
        match self.tail() {
            None => Ok(counting::single_link_density_interval(
                1u64 << first.scale,
                first.margin,
            )),
            Some(tail) => {
                let n_blocks = 1u64 << first.scale;
                if n_blocks > (1 << 14) {
                    return Err(Error::InvalidParameter(format!(
                        "certified density bracket needs at most 2^14 top-level \
                         blocks, chain has {n_blocks}"
                    )));
                }
                let q = tail.density_interval()?;
                Ok(counting::binomial_tail_interval(n_blocks, first.margin, &q))
            }
        }
    }

    pub fn is_empty_set(&self) -> bool {
        self.count().is_zero()
    }

    /// Exact uniform sample; only available at p = 2 (the only case the
    /// pipeline draws from). Fails if the set is empty. Callers drawing many
    /// elements should build one [`NiveauSampler`] instead, which caches the
    /// big-integer weight tables.
    pub fn sample(&self, rng: &mut RandomStream) -> Result<GroupElement> {
        NiveauSampler::new(self)?.draw(rng)
    }

    /// Canonical text form `p=2;i=1;chain=(2,1),(4,1)`.
    pub fn encode(&self) -> String {
        let links: Vec<String> = self
            .chain
            .iter()
            .map(|l| format!("({},{})", l.scale, l.margin))
            .collect();
        format!("p={};i={};chain={}", self.p, self.i, links.join(","))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = None;
        let mut i = None;
        let mut chain = None;
        for part in s.splitn(3, ';') {
            if let Some(v) = part.strip_prefix("p=") {
                p = Some(v.parse::<u8>().map_err(|e| Error::Parse(e.to_string()))?);
            } else if let Some(v) = part.strip_prefix("i=") {
                i = Some(v.parse::<u8>().map_err(|e| Error::Parse(e.to_string()))?);
            } else if let Some(v) = part.strip_prefix("chain=") {
                chain = Some(v.to_string());
            }
        }
        let (p, i, chain) = match (p, i, chain) {
            (Some(p), Some(i), Some(c)) => (p, i, c),
            _ => return Err(Error::Parse(format!("malformed niveau spec {s:?}"))),
        };
        let mut links = Vec::new();
        for piece in chain.split("),(") {
            let piece = piece.trim_start_matches('(').trim_end_matches(')');
            let (a, b) = piece
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("malformed chain link {piece:?}")))?;
            links.push(ChainLink::new(
                a.trim().parse().map_err(|e: std::num::ParseIntError| {
                    Error::Parse(e.to_string())
                })?,
                b.trim().parse().map_err(|e: std::num::ParseIntError| {
                    Error::Parse(e.to_string())
                })?,
            ));
        }
        NiveauSpec::new(p, i, links)
    }
}

/// Exact uniform sampler over a nonempty niveau set at p = 2, with the
/// cumulative weight tables for every chain suffix computed once.
///
/// Distribution: the number `t` of first-level cylinders landing in the tail
/// set follows its exact weight `C(N, t) a^t (M - a)^(N-t)`; chosen cylinders
/// recurse, the rest draw from the tail complement by rejection (density
/// above one half, so a few tries). Dense suffixes (density at least 1/4)
/// skip their table and draw members by rejection too — same distribution,
/// far cheaper than subset selection at large scales.
pub struct NiveauSampler {
    /// `suffixes[l]` is the chain with the first `l` links stripped and
    /// scales shifted down; members of suffix `l` fill one level-`l` block.
    suffixes: Vec<NiveauSpec>,
    /// Per suffix: `(hit count, cumulative weight)` rows of the first link.
    tables: Vec<Vec<(u64, BigUint)>>,
    /// Per suffix: draw members by rejection instead of the table.
    rejection_ok: Vec<bool>,
}

impl NiveauSampler {
    pub fn new(spec: &NiveauSpec) -> Result<Self> {
        if spec.p() != 2 {
            return Err(Error::InvalidParameter(
                "uniform niveau sampling is implemented for p = 2 only".into(),
            ));
        }
        let mut suffixes = vec![spec.clone()];
        while let Some(t) = suffixes.last().unwrap().tail() {
            suffixes.push(t);
        }
        let mut tables = Vec::with_capacity(suffixes.len());
        let mut rejection_ok = Vec::with_capacity(suffixes.len());
        for s in &suffixes {
            // dense suffixes never touch their table; decide that first so
            // the (potentially large) cumulative rows are not even built
            let total = s.count();
            if total.is_zero() {
                return Err(Error::InvalidParameter(
                    "cannot sample from an empty niveau set".into(),
                ));
            }
            if total * 4u32 >= group_order(2, s.scale()) {
                tables.push(Vec::new());
                rejection_ok.push(true);
                continue;
            }
            let first = s.chain()[0];
            let mut tab: Vec<(u64, BigUint)> = Vec::new();
            let mut cum = BigUint::zero();
            match s.tail() {
                None => {
                    let b = 1u64 << first.scale;
                    for w in 0..=b {
                        if 2 * w > b + 2 * first.margin {
                            cum += counting::binomial(b, w);
                            tab.push((w, cum.clone()));
                        }
                    }
                }
                Some(tail) => {
                    let n_blocks = 1u64 << first.scale;
                    let a = tail.count();
                    let m_order = group_order(2, tail.scale());
                    let away = &m_order - &a;
                    // powers built incrementally; t runs over a short range
                    let np = n_blocks as usize;
                    let mut a_pow = vec![BigUint::from(1u32); np + 1];
                    let mut away_pow = vec![BigUint::from(1u32); np + 1];
                    for t in 1..=np {
                        a_pow[t] = &a_pow[t - 1] * &a;
                        away_pow[t] = &away_pow[t - 1] * &away;
                    }
                    for t in 0..=n_blocks {
                        if 2 * t > n_blocks + 2 * first.margin {
                            cum += counting::binomial(n_blocks, t)
                                * &a_pow[t as usize]
                                * &away_pow[(n_blocks - t) as usize];
                            tab.push((t, cum.clone()));
                        }
                    }
                }
            }
            tables.push(tab);
            rejection_ok.push(false);
        }
        Ok(NiveauSampler { suffixes, tables, rejection_ok })
    }

    /// One exact uniform member of the full chain set.
    pub fn draw(&self, rng: &mut RandomStream) -> Result<GroupElement> {
        let scale = self.suffixes[0].scale();
        let mut bits = BitVec::zeros(1u64 << scale);
        self.fill(0, &mut bits, 0, rng)?;
        Ok(GroupElement::from_packed(scale, bits))
    }

    fn fill(
        &self,
        level: usize,
        out: &mut BitVec,
        start: u64,
        rng: &mut RandomStream,
    ) -> Result<()> {
        let s = &self.suffixes[level];
        if self.rejection_ok[level] {
            loop {
                let g = rng.element(2, s.scale())?;
                if s.contains_unchecked(&g) {
                    out.copy_range_from(start, g.packed().expect("p=2"));
                    return Ok(());
                }
            }
        }
        let first = s.chain()[0];
        let table = &self.tables[level];
        let total = &table.last().expect("nonempty table").1;
        let x = rng.big_below(total);
        let idx = table.partition_point(|(_, c)| *c <= x);
        let hits = table[idx].0;
        match s.tail() {
            None => {
                let b = 1u64 << first.scale;
                let toggled = rng.subset(b, hits);
                // residue i occupies the chosen cylinders; 1 - i the rest
                out.fill_range(start, start + b, s.residue() == 0);
                for &cell in &toggled {
                    out.set(start + cell, s.residue() == 1);
                }
                Ok(())
            }
            Some(tail) => {
                let n_blocks = 1u64 << first.scale;
                let chosen = rng.subset(n_blocks, hits);
                let block = 1u64 << tail.scale();
                let mut inside = chosen.iter().peekable();
                for bidx in 0..n_blocks {
                    let off = start + bidx * block;
                    if inside.peek() == Some(&&bidx) {
                        inside.next();
                        self.fill(level + 1, out, off, rng)?;
                    } else {
                        self.fill_complement(level + 1, out, off, rng)?;
                    }
                }
                Ok(())
            }
        }
    }

    /// Uniform element of a suffix complement, by rejection (the complement
    /// has density above one half, so this terminates quickly).
    fn fill_complement(
        &self,
        level: usize,
        out: &mut BitVec,
        start: u64,
        rng: &mut RandomStream,
    ) -> Result<()> {
        let s = &self.suffixes[level];
        loop {
            let g = rng.element(2, s.scale())?;
            if !s.contains_unchecked(&g) {
                out.copy_range_from(start, g.packed().expect("p=2"));
                return Ok(());
            }
        }
    }
}

/// Block-extension membership: `h` (at a finer scale) extends `g` with
/// margin `m` if for every full-length cylinder `tau` of `g`, the block
/// `h|tau` lies in `A_{g(tau)}(h.n - g.n, m)`.
pub fn in_block_extension(h: &GroupElement, g: &GroupElement, m: u64) -> Result<bool> {
    if h.p() != g.p() {
        return Err(Error::ModulusMismatch { a: h.p(), b: g.p() });
    }
    if h.n() <= g.n() {
        return Err(Error::ScaleMismatch { a: h.n(), b: g.n() });
    }
    let sub = h.n() - g.n();
    let block = 1u64 << sub;
    for tau in crate::group::BinaryString::all(g.n()) {
        let want = g.coeff(tau.index());
        let c = h.level_count_in_block(&tau, want)?;
        if 2 * c <= block + 2 * m {
            return Ok(false);
        }
    }
    Ok(true)
}
