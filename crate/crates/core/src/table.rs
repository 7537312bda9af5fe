//! Word-packed truth tables.
//!
//! Point `x` of `F_2^n` is the integer whose bit `i` holds `x_{i+1}`, so
//! `x_1` is the least significant bit. Entry `x` of the table lives in bit
//! `x % 64` of word `x / 64`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::BitXor;

use crate::error::{Error, Result};
use crate::MAX_VARS;

/// Masks selecting the lower half of every block of size `2^(j+1)` inside a word.
pub(crate) const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Evaluation table of a Boolean function on `n` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

pub(crate) fn check_vars(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        Err(Error::VariableCount { n })
    } else {
        Ok(())
    }
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

impl TruthTable {
    pub fn zero(n: usize) -> Result<Self> {
        check_vars(n)?;
        Ok(TruthTable { n, words: vec![0; word_count(n)] })
    }

    pub fn one(n: usize) -> Result<Self> {
        check_vars(n)?;
        Ok(TruthTable { n, words: vec![tail_mask(n); word_count(n)] })
    }

    /// Tabulates `f` at every point of `F_2^n`.
    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut t = Self::zero(n)?;
        for x in 0..t.len() as u32 {
            if f(x) {
                t.set(x);
            }
        }
        Ok(t)
    }

    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        check_vars(n)?;
        if bits.len() != 1 << n {
            return Err(Error::TableLength { expected: 1 << n, got: bits.len() });
        }
        Self::from_fn(n, |x| bits[x as usize])
    }

    /// Builds a table from packed words; bits beyond `2^n` must be clear.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        check_vars(n)?;
        if words.len() != word_count(n) {
            return Err(Error::TableLength { expected: word_count(n), got: words.len() });
        }
        if n < 6 && words[0] & !tail_mask(n) != 0 {
            return Err(Error::TableLength { expected: 1 << n, got: 64 });
        }
        Ok(TruthTable { n, words })
    }

    /// Table of the linear function `x -> a·x`.
    pub fn linear(n: usize, a: u32) -> Result<Self> {
        check_vars(n)?;
        check_point(a, n)?;
        Self::from_fn(n, |x| (a & x).count_ones() & 1 == 1)
    }

    /// Table of the single variable `x_i` (1-based).
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::VariableOutOfRange { var: i, n });
        }
        Self::linear(n, 1 << (i - 1))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points, `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        let x = x as usize;
        debug_assert!(x < self.len());
        (self.words[x >> 6] >> (x & 63)) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, x: u32) {
        let x = x as usize;
        self.words[x >> 6] |= 1 << (x & 63);
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(move |x| self.get(x))
    }

    /// Hamming weight `w(f)`.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == 1 << (self.n - 1)
    }

    /// `F(f) = W_f(0) = 2^n - 2 w(f)`.
    pub fn fourier(&self) -> i64 {
        (1i64 << self.n) - 2 * self.weight() as i64
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn constant_value(&self) -> Option<bool> {
        let full = tail_mask(self.n);
        if self.words.iter().all(|&w| w == 0) {
            Some(false)
        } else if self.words.iter().all(|&w| w == full) {
            Some(true)
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.constant_value() == Some(false)
    }

    /// The function `x -> f(x + a)`.
    pub fn translate(&self, a: u32) -> Result<TruthTable> {
        check_point(a, self.n)?;
        let mut words = self.words.clone();
        for (j, &mask) in LOW_HALF.iter().enumerate().take(self.n.min(6)) {
            if a >> j & 1 == 1 {
                let s = 1u32 << j;
                for w in words.iter_mut() {
                    *w = ((*w & mask) << s) | ((*w >> s) & mask);
                }
            }
        }
        let high = (a >> 6) as usize;
        if high != 0 {
            let src = words.clone();
            for (i, w) in words.iter_mut().enumerate() {
                *w = src[i ^ high];
            }
        }
        Ok(TruthTable { n: self.n, words })
    }

    /// First-order derivative `D_a f(x) = f(x + a) + f(x)`.
    pub fn derivative(&self, a: u32) -> Result<TruthTable> {
        Ok(&self.translate(a)? ^ self)
    }

    /// Second-order derivative `D_b D_a f`.
    pub fn second_derivative(&self, a: u32, b: u32) -> Result<TruthTable> {
        self.derivative(a)?.derivative(b)
    }

    /// Pointwise sum over `F_2`. Panics if the variable counts differ.
    pub fn xor(&self, other: &TruthTable) -> TruthTable {
        assert_eq!(self.n, other.n, "xor of truth tables on different variable counts");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        TruthTable { n: self.n, words }
    }

    /// The complement `f + 1`.
    pub fn complement(&self) -> TruthTable {
        let full = tail_mask(self.n);
        TruthTable { n: self.n, words: self.words.iter().map(|w| !w & full).collect() }
    }
}

impl BitXor for &TruthTable {
    type Output = TruthTable;

    fn bitxor(self, rhs: &TruthTable) -> TruthTable {
        self.xor(rhs)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, ", self.n)?;
        for x in 0..self.len() as u32 {
            f.write_str(if self.get(x) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_point(a: u32, n: usize) -> Result<()> {
    if n < 32 && a >> n != 0 {
        Err(Error::PointOutOfRange { point: a, n })
    } else {
        Ok(())
    }
}

/// Standard inner product `a·x = Σ a_i x_i mod 2`.
#[inline]
pub fn dot(a: u32, x: u32) -> bool {
    (a & x).count_ones() & 1 == 1
}
