//! Fixed-length bit vectors packed into `u64` words, bit `i` of the vector at
//! bit `i % 64` of word `i / 64`. Padding bits past `len` are always zero.

use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedBits {
    len: usize,
    words: Vec<u64>,
}

impl PackedBits {
    pub fn zeros(len: usize) -> Self {
        PackedBits { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut out = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                out.words[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// The cyclic shift `out[i] = self[(i + tau) mod len]`.
    pub fn rotated(&self, tau: usize) -> PackedBits {
        let mut out = PackedBits::zeros(self.len);
        self.rotate_into(tau, &mut out.words);
        out
    }

    /// Writes the cyclic shift by `tau` into `dst` (which must hold `len` bits).
    pub fn rotate_into(&self, tau: usize, dst: &mut [u64]) {
        let len = self.len;
        let tau = tau % len.max(1);
        for w in dst.iter_mut() {
            *w = 0;
        }
        // out[i] = in[i + tau] for i < len - tau, then out[len - tau + j] = in[j]
        shift_down_into(&self.words, len, tau, dst);
        shift_up_into(&self.words, tau, len - tau, dst);
    }

    /// Lowercase hex of the little-endian byte encoding (coordinate `i` is bit `i % 8` of byte `i / 8`).
    pub fn to_hex(&self) -> String {
        let bytes = self.len.div_ceil(8);
        let mut s = String::with_capacity(2 * bytes);
        for b in 0..bytes {
            let byte = (self.words[b / 8] >> (8 * (b % 8))) as u8;
            let _ = write!(s, "{byte:02x}");
        }
        s
    }
}

/// `dst[i] |= src[i + tau]` for `i < len - tau`.
fn shift_down_into(src: &[u64], len: usize, tau: usize, dst: &mut [u64]) {
    let count = len - tau;
    let (ws, bs) = (tau / 64, tau % 64);
    for (j, d) in dst.iter_mut().enumerate().take(count.div_ceil(64)) {
        let lo = src.get(ws + j).copied().unwrap_or(0) >> bs;
        let hi = if bs == 0 { 0 } else { src.get(ws + j + 1).copied().unwrap_or(0) << (64 - bs) };
        *d |= lo | hi;
    }
    mask_tail(dst, count);
}

/// `dst[start + j] |= src[j]` for `j < count`.
fn shift_up_into(src: &[u64], count: usize, start: usize, dst: &mut [u64]) {
    if count == 0 {
        return;
    }
    let (ws, bs) = (start / 64, start % 64);
    let full = count.div_ceil(64);
    for j in 0..full {
        let mut w = src[j];
        if j == full - 1 && !count.is_multiple_of(64) {
            w &= (1u64 << (count % 64)) - 1;
        }
        dst[ws + j] |= w << bs;
        if bs != 0 && ws + j + 1 < dst.len() {
            dst[ws + j + 1] |= w >> (64 - bs);
        }
    }
}

/// Clears every bit at position `>= keep`.
fn mask_tail(dst: &mut [u64], keep: usize) {
    for (j, w) in dst.iter_mut().enumerate() {
        let start = j * 64;
        if start >= keep {
            *w = 0;
        } else if keep - start < 64 {
            *w &= (1u64 << (keep - start)) - 1;
        }
    }
}
