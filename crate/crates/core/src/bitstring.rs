//! Finite binary strings.
//!
//! Programs, inputs and artefacts all share this one representation. Bits are
//! MSB-first everywhere: bit 0 is the leftmost character of the text form and
//! the most significant bit of any integer encoding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest string length [`BitString::enumerate`] accepts unless told otherwise.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// A finite, immutable-by-convention sequence of bits.
///
/// Strings up to 128 bits live inline. Unused low bits of the final storage
/// word are always zero, so the derived equality and hashing compare bits
/// rather than storage.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

#[inline]
fn top_mask(n: usize) -> u64 {
    match n {
        0 => 0,
        64.. => u64::MAX,
        _ => u64::MAX << (64 - n),
    }
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            len: 0,
            words: SmallVec::with_capacity(bits.div_ceil(64)),
        }
    }

    /// Empties the string, keeping its allocation.
    pub fn clear_for_reuse(&mut self) {
        self.len = 0;
        self.words.clear();
    }

    pub fn zeros(n: usize) -> Self {
        let mut s = Self::with_capacity(n);
        s.words.resize(n.div_ceil(64), 0);
        s.len = n;
        s
    }

    pub fn ones(n: usize) -> Self {
        let mut s = Self::with_capacity(n);
        let mut left = n;
        while left > 0 {
            let take = left.min(64);
            s.push_word(u64::MAX, take);
            left -= take;
        }
        s
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut s = Self::new();
        for b in bits {
            s.push(b);
        }
        s
    }

    /// Big-endian fixed-width encoding of `value`.
    pub fn from_unsigned(value: u64, width: usize) -> Result<Self> {
        if width < 64 && value >> width != 0 {
            return Err(Error::ValueOverflow { value, width });
        }
        let mut s = Self::with_capacity(width);
        if width > 64 {
            for _ in 0..width - 64 {
                s.push(false);
            }
            s.push_word(value, 64);
        } else if width > 0 {
            s.push_word(value << (64 - width), width);
        }
        Ok(s)
    }

    /// Inverse of [`BitString::from_unsigned`]; `None` if the value needs more than 64 bits.
    pub fn to_unsigned(&self) -> Option<u64> {
        let mut v: u64 = 0;
        for (i, b) in self.iter().enumerate() {
            if b && self.len - i > 64 {
                return None;
            }
            v = (v << 1) | b as u64;
        }
        Some(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: usize) -> Option<bool> {
        (index < self.len).then(|| self.bit(index))
    }

    #[inline]
    fn bit(&self, index: usize) -> bool {
        (self.words[index / 64] >> (63 - index % 64)) & 1 == 1
    }

    pub fn last(&self) -> Option<bool> {
        self.len.checked_sub(1).map(|i| self.bit(i))
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        let off = self.len % 64;
        if off == 0 {
            self.words.push(0);
        }
        if bit {
            *self.words.last_mut().unwrap() |= 1 << (63 - off);
        }
        self.len += 1;
    }

    /// Appends the `n` most significant bits of `word`.
    fn push_word(&mut self, word: u64, n: usize) {
        debug_assert!(n <= 64);
        if n == 0 {
            return;
        }
        let word = word & top_mask(n);
        let off = self.len % 64;
        if off == 0 {
            self.words.push(word);
        } else {
            *self.words.last_mut().unwrap() |= word >> off;
            if n > 64 - off {
                self.words.push(word << (64 - off));
            }
        }
        self.len += n;
    }

    pub fn extend_from(&mut self, other: &BitString) {
        let mut left = other.len;
        for &w in &other.words {
            let take = left.min(64);
            self.push_word(w, take);
            left -= take;
        }
    }

    /// Appends a copy of the whole current contents.
    pub fn duplicate(&mut self) {
        let snapshot = self.clone();
        self.extend_from(&snapshot);
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = Self::with_capacity(self.len + other.len);
        out.extend_from(self);
        out.extend_from(other);
        out
    }

    /// Left-pads with zeros up to exactly `m` bits.
    pub fn pad_leading_zeros(&self, m: usize) -> Result<BitString> {
        if self.len > m {
            return Err(Error::LengthOverflow {
                len: self.len,
                width: m,
            });
        }
        let mut out = BitString::zeros(m - self.len);
        out.extend_from(self);
        Ok(out)
    }

    /// The substring `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> BitString {
        assert!(start <= end && end <= self.len, "slice out of range");
        let mut out = Self::with_capacity(end - start);
        for i in start..end {
            out.push(self.bit(i));
        }
        out
    }

    pub fn iter(&self) -> Bits<'_> {
        Bits { s: self, pos: 0 }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bits packed MSB-first into bytes, final byte zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.len.div_ceil(8);
        self.words
            .iter()
            .flat_map(|w| w.to_be_bytes())
            .take(n)
            .collect()
    }

    /// All strings of `length` bits in ascending unsigned order, refusing
    /// lengths above [`DEFAULT_ENUMERATION_CAP`].
    pub fn enumerate(length: usize) -> Result<Enumerate> {
        Self::enumerate_with_cap(length, DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_with_cap(length: usize, cap: usize) -> Result<Enumerate> {
        if length > cap || length >= 64 {
            return Err(Error::CapExceeded {
                what: "enumeration length",
                requested: length,
                cap: cap.min(63),
            });
        }
        Ok(Enumerate {
            width: length,
            next: 0,
            end: 1u64 << length,
        })
    }
}

impl Ord for BitString {
    /// Lexicographic order; a proper prefix sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let mut remaining = common;
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            if remaining == 0 {
                break;
            }
            let mask = top_mask(remaining.min(64));
            match (a & mask).cmp(&(b & mask)) {
                Ordering::Equal => {}
                ord => return ord,
            }
            remaining = remaining.saturating_sub(64);
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.pad(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Self::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => return Err(Error::Parse(s.to_owned())),
            }
        }
        Ok(out)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub struct Bits<'a> {
    s: &'a BitString,
    pos: usize,
}

impl Iterator for Bits<'_> {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        let b = self.s.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.s.len - self.pos;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits<'_> {}

impl<'a> IntoIterator for &'a BitString {
    type Item = bool;
    type IntoIter = Bits<'a>;

    fn into_iter(self) -> Bits<'a> {
        self.iter()
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self::from_bits(iter)
    }
}

/// Iterator returned by [`BitString::enumerate`].
#[derive(Debug, Clone)]
pub struct Enumerate {
    width: usize,
    next: u64,
    end: u64,
}

impl Iterator for Enumerate {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        if self.next >= self.end {
            return None;
        }
        let v = self.next;
        self.next += 1;
        Some(BitString::from_unsigned(v, self.width).expect("value below 2^width"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Enumerate {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(bs("10").concat(&bs("001")), bs("10001"));
        assert_eq!(bs("").concat(&bs("101")), bs("101"));
        assert_eq!(bs("1").concat(&bs("")), bs("1"));
    }

    #[test]
    fn pad_examples() {
        assert_eq!(bs("01").pad_leading_zeros(3).unwrap(), bs("001"));
        assert_eq!(bs("").pad_leading_zeros(2).unwrap(), bs("00"));
        assert_eq!(bs("101").pad_leading_zeros(3).unwrap(), bs("101"));
        assert!(matches!(
            bs("101").pad_leading_zeros(2),
            Err(Error::LengthOverflow { len: 3, width: 2 })
        ));
    }

    #[test]
    fn from_unsigned_examples() {
        assert_eq!(BitString::from_unsigned(2, 2).unwrap(), bs("10"));
        assert_eq!(BitString::from_unsigned(0, 3).unwrap(), bs("000"));
        assert_eq!(BitString::from_unsigned(5, 4).unwrap(), bs("0101"));
        assert!(BitString::from_unsigned(4, 2).is_err());
        assert_eq!(BitString::from_unsigned(0, 0).unwrap(), bs(""));
        assert!(BitString::from_unsigned(1, 0).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let one: Vec<_> = BitString::enumerate(1).unwrap().collect();
        assert_eq!(one, vec![bs("0"), bs("1")]);
        let two: Vec<_> = BitString::enumerate(2).unwrap().collect();
        assert_eq!(two, vec![bs("00"), bs("01"), bs("10"), bs("11")]);
        let zero: Vec<_> = BitString::enumerate(0).unwrap().collect();
        assert_eq!(zero, vec![bs("")]);
        match BitString::enumerate(25) {
            Err(Error::CapExceeded { requested, cap, .. }) => {
                assert_eq!((requested, cap), (25, 24))
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn enumerate_is_exhaustive_and_distinct() {
        for n in 0..=16 {
            let all: Vec<_> = BitString::enumerate(n).unwrap().collect();
            assert_eq!(all.len(), 1 << n);
            assert!(all.windows(2).all(|w| w[0] < w[1]), "ascending at n={n}");
        }
    }

    #[test]
    fn lexicographic_order() {
        assert!(bs("") < bs("0"));
        assert!(bs("0") < bs("00"));
        assert!(bs("01") < bs("1"));
        assert!(bs("001100100") < bs("001101100"));
        let long_a = BitString::zeros(70);
        let mut long_b = BitString::zeros(69);
        long_b.push(true);
        assert!(long_a < long_b);
    }

    #[test]
    fn duplicate_across_word_boundary() {
        let mut s = bs("101");
        for _ in 0..6 {
            s.duplicate();
        }
        assert_eq!(s.len(), 3 * 64);
        assert!(s.iter().enumerate().all(|(i, b)| b == (i % 3 != 1)));
        let mut t = BitString::ones(70);
        t.duplicate();
        assert_eq!(t, BitString::ones(140));
    }

    #[test]
    fn bytes_are_msb_first() {
        assert_eq!(bs("1000000011").to_bytes(), vec![0x80, 0xC0]);
        assert!(bs("").to_bytes().is_empty());
    }

    #[test]
    fn rejects_non_binary_text() {
        assert!("0120".parse::<BitString>().is_err());
        assert!(" 01".parse::<BitString>().is_err());
    }

    proptest! {
        #[test]
        fn unsigned_round_trip(w in 0usize..=24, v in any::<u64>()) {
            let v = if w == 0 { 0 } else { v % (1u64 << w) };
            let s = BitString::from_unsigned(v, w).unwrap();
            prop_assert_eq!(s.len(), w);
            prop_assert_eq!(s.to_unsigned(), Some(v));
        }

        #[test]
        fn concat_is_associative(
            a in proptest::collection::vec(any::<bool>(), 0..150),
            b in proptest::collection::vec(any::<bool>(), 0..150),
            c in proptest::collection::vec(any::<bool>(), 0..150),
        ) {
            let (a, b, c) = (BitString::from_bits(a), BitString::from_bits(b), BitString::from_bits(c));
            prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
            prop_assert_eq!(a.concat(&b).len(), a.len() + b.len());
            prop_assert_eq!(a.pad_leading_zeros(a.len()).unwrap(), a.clone());
        }

        #[test]
        fn text_round_trip_and_order(
            a in proptest::collection::vec(any::<bool>(), 0..200),
            b in proptest::collection::vec(any::<bool>(), 0..200),
        ) {
            let (sa, sb) = (BitString::from_bits(a.clone()), BitString::from_bits(b.clone()));
            prop_assert_eq!(sa.to_string().parse::<BitString>().unwrap(), sa.clone());
            prop_assert_eq!(sa.cmp(&sb), a.cmp(&b));
            prop_assert_eq!(sa == sb, a == b);
        }
    }
}
