//! Materialized subsets (bitmaps over canonical element indices) and
//! black-box membership predicates.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::group::{enumerate_group, group_order_under, GroupElement};
use crate::sets::{HammingBallSpec, NiveauSpec};

/// A concrete subset of `G_p^(n)`, stored as a bitmap keyed by canonical
/// element index. Construction refuses groups whose order exceeds the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSet {
    p: u8,
    n: u32,
    order: u64,
    bits: BitVec,
}

impl FiniteSet {
    pub fn empty(p: u8, n: u32, cap: u64) -> Result<Self> {
        let order = group_order_under(p, n, cap)?;
        Ok(FiniteSet { p, n, order, bits: BitVec::zeros(order) })
    }

    pub fn from_indices(
        p: u8,
        n: u32,
        cap: u64,
        indices: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        let mut set = FiniteSet::empty(p, n, cap)?;
        for i in indices {
            if i >= set.order {
                return Err(Error::Parse(format!("index {i} out of range")));
            }
            set.bits.set(i, true);
        }
        Ok(set)
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Group order (number of possible members).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn cardinality(&self) -> u64 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.any()
    }

    #[inline]
    pub fn contains_index(&self, i: u64) -> bool {
        i < self.order && self.bits.get(i)
    }

    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        if g.p() != self.p {
            return Err(Error::ModulusMismatch { a: g.p(), b: self.p });
        }
        if g.n() != self.n {
            return Err(Error::ScaleMismatch { a: g.n(), b: self.n });
        }
        Ok(self.bits.get(g.canonical_index()?))
    }

    pub fn insert_index(&mut self, i: u64) {
        self.bits.set(i, true);
    }

    pub fn remove_index(&mut self, i: u64) {
        self.bits.set(i, false);
    }

    pub fn iter_indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones()
    }

    pub fn element(&self, index: u64) -> GroupElement {
        GroupElement::from_index(self.p, self.n, index).expect("index below order")
    }

    pub fn iter_elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.iter_indices().map(|i| self.element(i))
    }

    fn check_same_shape(&self, other: &FiniteSet) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch { a: self.p, b: other.p });
        }
        if self.n != other.n {
            return Err(Error::ScaleMismatch { a: self.n, b: other.n });
        }
        Ok(())
    }

    pub fn union(&self, other: &FiniteSet) -> Result<FiniteSet> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        out.bits.or_assign(&other.bits);
        Ok(out)
    }

    pub fn intersection(&self, other: &FiniteSet) -> Result<FiniteSet> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        out.bits.and_assign(&other.bits);
        Ok(out)
    }

    pub fn minus(&self, other: &FiniteSet) -> Result<FiniteSet> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for i in other.bits.iter_ones() {
            out.bits.set(i, false);
        }
        Ok(out)
    }

    pub fn complement(&self) -> FiniteSet {
        let mut out = self.clone();
        for w in out.bits.words_mut() {
            *w = !*w;
        }
        out.bits.mask_tail();
        out
    }

    pub fn is_subset_of(&self, other: &FiniteSet) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self
            .bits
            .words()
            .iter()
            .zip(other.bits.words())
            .all(|(a, b)| a & !b == 0))
    }

    /// The translate `self + g`.
    pub fn translate(&self, g: &GroupElement) -> Result<FiniteSet> {
        if g.p() != self.p {
            return Err(Error::ModulusMismatch { a: g.p(), b: self.p });
        }
        if g.n() != self.n {
            return Err(Error::ScaleMismatch { a: g.n(), b: self.n });
        }
        let mut out = FiniteSet::empty(self.p, self.n, self.order)?;
        if self.p == 2 {
            let gi = g.canonical_index()?;
            for i in self.iter_indices() {
                out.bits.set(i ^ gi, true);
            }
        } else {
            for e in self.iter_elements() {
                out.bits.set(e.add(g)?.canonical_index()?, true);
            }
        }
        Ok(out)
    }

    /// Pointwise negation `-self`.
    pub fn negation(&self) -> Result<FiniteSet> {
        if self.p == 2 {
            return Ok(self.clone());
        }
        let mut out = FiniteSet::empty(self.p, self.n, self.order)?;
        for e in self.iter_elements() {
            out.bits.set(e.neg().canonical_index()?, true);
        }
        Ok(out)
    }

    /// Persist as a run-length-encoded bitmap with a JSON header.
    pub fn write_rle(&self, path: &Path, spec: &str) -> Result<()> {
        let mut runs: Vec<u64> = Vec::new();
        let mut current = false;
        let mut run = 0u64;
        for i in 0..self.order {
            let b = self.bits.get(i);
            if b == current {
                run += 1;
            } else {
                runs.push(run);
                current = b;
                run = 1;
            }
        }
        runs.push(run);
        let doc = RleFile {
            p: self.p,
            n: self.n,
            order: self.order,
            cardinality: self.cardinality(),
            spec: spec.to_string(),
            library_version: crate::library_version().to_string(),
            runs,
        };
        let data = serde_json::to_string(&doc).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, data)?;
        Ok(())
    }

    pub fn read_rle(path: &Path) -> Result<FiniteSet> {
        let data = std::fs::read_to_string(path)?;
        let doc: RleFile =
            serde_json::from_str(&data).map_err(|e| Error::Parse(e.to_string()))?;
        let mut set = FiniteSet::empty(doc.p, doc.n, doc.order)?;
        let mut pos = 0u64;
        let mut value = false;
        for run in doc.runs {
            if value {
                set.bits.fill_range(pos, pos + run, true);
            }
            pos += run;
            value = !value;
        }
        if pos != doc.order {
            return Err(Error::Parse(format!(
                "run lengths sum to {pos}, expected {}",
                doc.order
            )));
        }
        if set.cardinality() != doc.cardinality {
            return Err(Error::Parse(format!(
                "cardinality mismatch: bitmap has {}, header says {}",
                set.cardinality(),
                doc.cardinality
            )));
        }
        Ok(set)
    }
}

/// On-disk form: header fields plus alternating run lengths, starting with
/// a (possibly zero-length) run of absent elements.
#[derive(Serialize, Deserialize)]
struct RleFile {
    p: u8,
    n: u32,
    order: u64,
    cardinality: u64,
    spec: String,
    library_version: String,
    runs: Vec<u64>,
}

/// A membership oracle with explicit shape, usable where materialization is
/// impossible or unnecessary.
#[derive(Clone)]
pub struct SetPredicate {
    p: u8,
    n: u32,
    description: String,
    f: Arc<dyn Fn(&GroupElement) -> Result<bool> + Send + Sync>,
}

impl std::fmt::Debug for SetPredicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SetPredicate")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("description", &self.description)
            .finish()
    }
}

impl SetPredicate {
    pub fn from_fn(
        p: u8,
        n: u32,
        description: impl Into<String>,
        f: impl Fn(&GroupElement) -> Result<bool> + Send + Sync + 'static,
    ) -> Self {
        SetPredicate { p, n, description: description.into(), f: Arc::new(f) }
    }

    pub fn from_niveau(spec: &NiveauSpec) -> Self {
        let s = spec.clone();
        SetPredicate::from_fn(spec.p(), spec.scale(), spec.encode(), move |g| s.contains(g))
    }

    pub fn from_ball(spec: &HammingBallSpec) -> Self {
        let s = spec.clone();
        SetPredicate::from_fn(spec.p(), spec.n(), spec.encode(), move |g| s.contains(g))
    }

    pub fn from_finite(set: Arc<FiniteSet>, description: impl Into<String>) -> Self {
        let p = set.p();
        let n = set.n();
        SetPredicate::from_fn(p, n, description, move |g| set.contains(g))
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn eval(&self, g: &GroupElement) -> Result<bool> {
        if g.p() != self.p {
            return Err(Error::ModulusMismatch { a: g.p(), b: self.p });
        }
        if g.n() != self.n {
            return Err(Error::ScaleMismatch { a: g.n(), b: self.n });
        }
        (self.f)(g)
    }

    /// Union of two predicates over the same group.
    pub fn union(&self, other: &SetPredicate) -> Result<SetPredicate> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::InvalidParameter(
                "predicate union requires matching shape".into(),
            ));
        }
        let a = self.clone();
        let b = other.clone();
        Ok(SetPredicate::from_fn(
            self.p,
            self.n,
            format!("({}) | ({})", self.description, other.description),
            move |g| Ok(a.eval(g)? || b.eval(g)?),
        ))
    }
}

/// Evaluate a predicate over the whole group (refusing oversized groups)
/// and return the bitmap.
///
/// Large groups are evaluated in parallel over fixed index ranges and the
/// per-range results are merged in index order, so the bitmap (and any
/// error surfaced) is identical to a sequential pass.
pub fn materialize(pred: &SetPredicate, cap: u64) -> Result<FiniteSet> {
    use rayon::prelude::*;

    let mut set = FiniteSet::empty(pred.p(), pred.n(), cap)?;
    let order = set.order();
    let chunk = 1u64 << 11;
    if order <= 2 * chunk {
        for (i, g) in enumerate_group(pred.p(), pred.n(), cap)?.enumerate() {
            if pred.eval(&g)? {
                set.insert_index(i as u64);
            }
        }
        return Ok(set);
    }
    let starts: Vec<u64> = (0..order).step_by(chunk as usize).collect();
    let hits: Vec<Result<Vec<u64>>> = starts
        .par_iter()
        .map(|&start| {
            let stop = (start + chunk).min(order);
            let mut local = Vec::new();
            for i in start..stop {
                let g = GroupElement::from_index(pred.p(), pred.n(), i)?;
                if pred.eval(&g)? {
                    local.push(i);
                }
            }
            Ok(local)
        })
        .collect();
    for h in hits {
        for i in h? {
            set.insert_index(i);
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUMERATION_CAP as CAP;

    #[test]
    fn materialize_matches_spec_count() {
        let spec = NiveauSpec::parse("p=2;i=1;chain=(3,1)").unwrap();
        let set = materialize(&SetPredicate::from_niveau(&spec), CAP).unwrap();
        assert_eq!(set.cardinality(), 37);
        for i in set.iter_indices() {
            assert!(spec.contains(&set.element(i)).unwrap());
        }
    }

    #[test]
    fn set_algebra() {
        let u = materialize(
            &SetPredicate::from_ball(&HammingBallSpec::origin(2, 2, 1).unwrap()),
            CAP,
        )
        .unwrap();
        let v = materialize(
            &SetPredicate::from_ball(&HammingBallSpec::ones(2, 2, 1).unwrap()),
            CAP,
        )
        .unwrap();
        assert_eq!(u.cardinality(), 5);
        assert_eq!(v.cardinality(), 5);
        assert!(u.intersection(&v).unwrap().is_empty());
        assert_eq!(u.union(&v).unwrap().cardinality(), 10);
        assert_eq!(u.complement().cardinality(), 11);
        assert!(u.is_subset_of(&u.union(&v).unwrap()).unwrap());
    }

    #[test]
    fn translate_is_a_bijection() {
        let u = materialize(
            &SetPredicate::from_ball(&HammingBallSpec::origin(2, 2, 1).unwrap()),
            CAP,
        )
        .unwrap();
        let ones = GroupElement::ones(2, 2).unwrap();
        let t = u.translate(&ones).unwrap();
        assert_eq!(t.cardinality(), u.cardinality());
        // translating U by 1 gives V
        let v = materialize(
            &SetPredicate::from_ball(&HammingBallSpec::ones(2, 2, 1).unwrap()),
            CAP,
        )
        .unwrap();
        assert_eq!(t, v);
    }

    #[test]
    fn negation_at_odd_p() {
        let u = materialize(
            &SetPredicate::from_ball(&HammingBallSpec::origin(3, 1, 1).unwrap()),
            CAP,
        )
        .unwrap();
        let n = u.negation().unwrap();
        assert_eq!(n.cardinality(), u.cardinality());
        // the origin ball is symmetric
        assert_eq!(n, u);
        // a translated ball is not
        let shifted = u
            .translate(&GroupElement::from_coeffs(3, 1, &[1, 2]).unwrap())
            .unwrap();
        assert_ne!(shifted.negation().unwrap(), shifted);
    }

    #[test]
    fn rle_roundtrip() {
        let spec = NiveauSpec::parse("p=2;i=1;chain=(2,0),(4,1)").unwrap();
        let set = materialize(&SetPredicate::from_niveau(&spec), CAP).unwrap();
        assert_eq!(set.cardinality(), 61);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("set.rle.json");
        set.write_rle(&path, &spec.encode()).unwrap();
        let back = FiniteSet::read_rle(&path).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            FiniteSet::empty(2, 5, 1 << 24),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn predicate_shape_checked() {
        let spec = NiveauSpec::parse("p=2;i=1;chain=(2,1)").unwrap();
        let pred = SetPredicate::from_niveau(&spec);
        let wrong_scale = GroupElement::ones(2, 3).unwrap();
        assert!(pred.eval(&wrong_scale).is_err());
    }
}
