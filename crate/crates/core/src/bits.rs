//! Fixed-universe bitsets used for element sets and adjacency rows.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A set over the universe `0..len`, packed into 64-bit words.
///
/// The low bit of word 0 is element 0. Used both for subsets of a group's
/// elements and for adjacency rows of dense digraphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn empty(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut s = Self::empty(len);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    /// Universe size (not the cardinality).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.insert(i)
        } else {
            self.remove(i)
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn union_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection_count(&self, other: &Bitset) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &Bitset) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn min_element(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Lowercase hex rendering with `0x` prefix; the least-significant hex
    /// digit carries elements 0..3.
    pub fn to_hex(&self) -> String {
        let mut digits: Vec<u8> = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            for d in 0..16 {
                let nib = (w >> (4 * d)) & 0xf;
                let pos = wi * 16 + d;
                while digits.len() <= pos {
                    digits.push(0);
                }
                digits[pos] = nib as u8;
            }
        }
        while digits.len() > 1 && *digits.last().unwrap() == 0 {
            digits.pop();
        }
        let mut s = String::from("0x");
        for &d in digits.iter().rev() {
            s.push(char::from_digit(d as u32, 16).unwrap());
        }
        s
    }

    /// Parses the `to_hex` format. Bits at or above `len` must be clear.
    pub fn from_hex(len: usize, text: &str) -> Result<Self, String> {
        let body = text
            .strip_prefix("0x")
            .or_else(|| text.strip_prefix("0X"))
            .unwrap_or(text);
        if body.is_empty() {
            return Err(format!("empty bitmask: {text:?}"));
        }
        let mut s = Self::empty(len);
        for (pos, ch) in body.chars().rev().enumerate() {
            let nib = ch
                .to_digit(16)
                .ok_or_else(|| format!("invalid hex digit {ch:?} in {text:?}"))?
                as u64;
            for b in 0..4 {
                if nib >> b & 1 == 1 {
                    let i = pos * 4 + b;
                    if i >= len {
                        return Err(format!(
                            "bit {i} set in {text:?} but universe has only {len} elements"
                        ));
                    }
                    s.insert(i);
                }
            }
        }
        Ok(s)
    }
}

impl fmt::Debug for Bitset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bitset({}/{}, {})", self.count(), self.len, self.to_hex())
    }
}

/// Sequential bit reader over a little-endian word buffer.
///
/// Family encodings consume bits in a fixed order; the same cursor serves
/// both exhaustive indices and sampled words.
pub struct BitCursor<'a> {
    words: &'a [u64],
    pos: usize,
}

impl<'a> BitCursor<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitCursor { words, pos: 0 }
    }

    pub fn next_bit(&mut self) -> bool {
        let w = self.pos / 64;
        let b = self.pos % 64;
        self.pos += 1;
        debug_assert!(w < self.words.len(), "bit cursor overrun");
        self.words[w] >> b & 1 == 1
    }

    pub fn consumed(&self) -> usize {
        self.pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip() {
        let s = Bitset::from_indices(12, &[0, 1, 5, 11]);
        assert_eq!(s.to_hex(), "0x823");
        assert_eq!(Bitset::from_hex(12, "0x823").unwrap(), s);
        assert_eq!(Bitset::empty(4).to_hex(), "0x0");
    }

    #[test]
    fn hex_rejects_out_of_range_bits() {
        assert!(Bitset::from_hex(3, "0x8").is_err());
        assert!(Bitset::from_hex(3, "0x7").is_ok());
    }

    #[test]
    fn iter_and_count_agree() {
        let s = Bitset::from_indices(130, &[0, 63, 64, 65, 129]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 65, 129]);
        assert_eq!(s.count(), 5);
    }

    #[test]
    fn cursor_reads_lsb_first() {
        let words = [0b1011u64];
        let mut c = BitCursor::new(&words);
        assert!(c.next_bit());
        assert!(c.next_bit());
        assert!(!c.next_bit());
        assert!(c.next_bit());
        assert_eq!(c.consumed(), 4);
    }
}
