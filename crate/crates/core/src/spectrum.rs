//! Walsh–Hadamard spectra and the properties derived from them.

use alloc::vec::Vec;

use crate::error::{Error, Parity, Result};
use crate::table::TruthTable;

/// `W_f(a) = Σ_x (-1)^{f(x) + a·x}`, indexed like truth-table points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i64>,
}

/// In-place unnormalised Hadamard butterfly.
pub(crate) fn fwht_in_place(values: &mut [i64]) {
    let len = values.len();
    let mut half = 1;
    while half < len {
        for block in values.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half <<= 1;
    }
}

/// Fast Walsh–Hadamard transform, `O(n·2^n)`. The input table is not touched.
pub fn wht(t: &TruthTable) -> WalshSpectrum {
    let mut values: Vec<i64> = t.bits().map(|b| if b { -1 } else { 1 }).collect();
    fwht_in_place(&mut values);
    WalshSpectrum { n: t.n(), values }
}

impl WalshSpectrum {
    pub(crate) fn from_values(n: usize, values: Vec<i64>) -> Self {
        debug_assert_eq!(values.len(), 1 << n);
        WalshSpectrum { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, a: u32) -> i64 {
        self.values[a as usize]
    }

    /// `L(f) = max_a |W_f(a)|`.
    pub fn linearity(&self) -> u64 {
        self.values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// `N(f) = 2^{n-1} - L(f)/2`.
    pub fn nonlinearity(&self) -> u64 {
        (1u64 << (self.n - 1)) - self.linearity() / 2
    }

    /// `Σ_a W_f(a)^4`.
    pub fn fourth_moment(&self) -> u128 {
        self.values.iter().map(|&v| (v as i128 * v as i128).pow(2) as u128).sum()
    }

    /// `Σ_a W_f(a)^2`, always `2^{2n}`.
    pub fn parseval_sum(&self) -> u128 {
        self.values.iter().map(|&v| (v as i128 * v as i128) as u128).sum()
    }
}

pub fn nonlinearity(t: &TruthTable) -> u64 {
    wht(t).nonlinearity()
}

/// Bent test, `N(f) = 2^{n-1} - 2^{n/2-1}`. Only defined for even `n`.
pub fn is_bent(t: &TruthTable) -> Result<bool> {
    let n = t.n();
    if n % 2 != 0 {
        return Err(Error::Parity { n, required: Parity::Even });
    }
    Ok(nonlinearity(t) == (1 << (n - 1)) - (1 << (n / 2 - 1)))
}

/// Semi-bent test, `N(f) = 2^{n-1} - 2^{(n-1)/2}`. Only defined for odd `n`.
pub fn is_semi_bent(t: &TruthTable) -> Result<bool> {
    let n = t.n();
    if n % 2 == 0 {
        return Err(Error::Parity { n, required: Parity::Odd });
    }
    Ok(nonlinearity(t) == (1 << (n - 1)) - (1 << ((n - 1) / 2)))
}
