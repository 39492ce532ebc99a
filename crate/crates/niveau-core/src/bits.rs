//! Packed bit vectors backing p = 2 coefficient arrays, membership bitmaps
//! and rows of F2 linear systems.

/// Fixed-length bit vector stored in 64-bit words, least significant bit of
/// word 0 holding position 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: u64,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: u64) -> usize {
    ((len + 63) / 64) as usize
}

impl BitVec {
    pub fn zeros(len: u64) -> Self {
        BitVec { len, words: vec![0; word_count(len)] }
    }

    pub fn from_fn(len: u64, mut f: impl FnMut(u64) -> bool) -> Self {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> u64 {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        debug_assert!(i < self.len);
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: u64, value: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[(i / 64) as usize];
        let mask = 1u64 << (i % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Set every position in `[start, end)` to `value`.
    pub fn fill_range(&mut self, start: u64, end: u64, value: bool) {
        debug_assert!(start <= end && end <= self.len);
        if start == end {
            return;
        }
        let (fw, fb) = ((start / 64) as usize, start % 64);
        let (lw, lb) = (((end - 1) / 64) as usize, (end - 1) % 64);
        let head = !0u64 << fb;
        let tail = !0u64 >> (63 - lb);
        if fw == lw {
            let mask = head & tail;
            if value {
                self.words[fw] |= mask;
            } else {
                self.words[fw] &= !mask;
            }
            return;
        }
        if value {
            self.words[fw] |= head;
            self.words[lw] |= tail;
            for w in &mut self.words[fw + 1..lw] {
                *w = !0;
            }
        } else {
            self.words[fw] &= !head;
            self.words[lw] &= !tail;
            for w in &mut self.words[fw + 1..lw] {
                *w = 0;
            }
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Population count of `[start, end)`.
    pub fn count_ones_range(&self, start: u64, end: u64) -> u64 {
        debug_assert!(start <= end && end <= self.len);
        if start == end {
            return 0;
        }
        let fw = (start / 64) as usize;
        let lw = ((end - 1) / 64) as usize;
        let head = !0u64 << (start % 64);
        let tail = !0u64 >> (63 - (end - 1) % 64);
        if fw == lw {
            return (self.words[fw] & head & tail).count_ones() as u64;
        }
        let mut total = (self.words[fw] & head).count_ones() as u64
            + (self.words[lw] & tail).count_ones() as u64;
        for w in &self.words[fw + 1..lw] {
            total += w.count_ones() as u64;
        }
        total
    }

    /// If every bit in `[start, end)` agrees, return that bit.
    pub fn uniform_range(&self, start: u64, end: u64) -> Option<bool> {
        let ones = self.count_ones_range(start, end);
        if ones == 0 {
            Some(false)
        } else if ones == end - start {
            Some(true)
        } else {
            None
        }
    }

    /// Copy of `[start, end)` as a new vector.
    pub fn slice(&self, start: u64, end: u64) -> BitVec {
        debug_assert!(start <= end && end <= self.len);
        let len = end - start;
        let mut out = BitVec::zeros(len);
        if len == 0 {
            return out;
        }
        let shift = start % 64;
        let fw = (start / 64) as usize;
        let n_out = out.words.len();
        for k in 0..n_out {
            let lo = self.words.get(fw + k).copied().unwrap_or(0);
            let mut w = lo >> shift;
            if shift != 0 {
                if let Some(hi) = self.words.get(fw + k + 1) {
                    w |= hi << (64 - shift);
                }
            }
            out.words[k] = w;
        }
        out.mask_tail();
        out
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    #[inline]
    pub fn or_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    #[inline]
    pub fn and_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    /// Hamming distance without allocating.
    pub fn distance(&self, other: &BitVec) -> u64 {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as u64)
            .sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi as u64 * 64;
            std::iter::successors(if w == 0 { None } else { Some(w) }, |&m| {
                let next = m & (m - 1);
                if next == 0 {
                    None
                } else {
                    Some(next)
                }
            })
            .map(move |m| base + m.trailing_zeros() as u64)
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Clear any bits beyond `len` in the last word.
    pub fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 >> (64 - rem);
            }
        }
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    /// Overwrite `[start, start + src.len())` with the bits of `src`.
    pub fn copy_range_from(&mut self, start: u64, src: &BitVec) {
        debug_assert!(start + src.len() <= self.len);
        if src.len() == 0 {
            return;
        }
        if start % 64 == 0 && src.len() % 64 == 0 {
            let fw = (start / 64) as usize;
            self.words[fw..fw + src.words.len()].copy_from_slice(&src.words);
            return;
        }
        for i in 0..src.len() {
            self.set(start + i, src.get(i));
        }
    }
}
