//! Weight, Fourier value, Walsh spectrum and nonlinearity of splitting
//! functions and generalised convolutional products, computed from the
//! smaller functions they are built from.

use alloc::vec::Vec;

use crate::anf::{conv_product, Anf};
use crate::error::{Error, Result};
use crate::spectrum::{wht, WalshSpectrum};
use crate::table::check_vars;

/// `F(g + h) = F(g↾) · F(h↾)` for `g` on `x_1..x_s` and `h` on `x_{s+1}..x_n`.
pub fn split_fourier(g: &Anf, h: &Anf) -> Result<i64> {
    check_vars(g.n() + h.n())?;
    Ok(g.to_truth_table().fourier() * h.to_truth_table().fourier())
}

/// `F(f) = 2^{n-r} ∏ F(f_i↾)` for a sum of functions on pairwise disjoint
/// variable blocks. Every part is given on all `n` variables; its block is
/// the set of variables it depends on, and `r` is the total block size.
pub fn multi_split_fourier(parts: &[Anf], n: usize) -> Result<i64> {
    check_vars(n)?;
    let mut used = 0u32;
    let mut product = 1i64;
    for part in parts {
        if part.n() != n {
            return Err(Error::MismatchedVariables { left: n, right: part.n() });
        }
        let block = part.support();
        if block & used != 0 {
            let var = (block & used).trailing_zeros() as usize + 1;
            return Err(Error::OverlappingBlocks { var });
        }
        used |= block;
        product *= if block == 0 {
            // a constant on F_2^0
            if part.contains(0) {
                -1
            } else {
                1
            }
        } else {
            part.restrict_to(block)?.to_truth_table().fourier()
        };
    }
    let r = used.count_ones() as usize;
    Ok(product << (n - r))
}

/// `w(g + h) = 2^{n-s} w(g↾) + 2^s w(h↾) - 2 w(g↾) w(h↾)`.
pub fn split_weight(g: &Anf, h: &Anf) -> Result<u64> {
    let (s, m) = (g.n(), h.n());
    check_vars(s + m)?;
    let wg = g.to_truth_table().weight();
    let wh = h.to_truth_table().weight();
    Ok((wg << m) + (wh << s) - 2 * wg * wh)
}

/// `Σ_{i<k} ∏_{j=1..m} x_{mi+j}` on `n` variables.
pub fn monomial_sum(m: usize, k: usize, n: usize) -> Result<Anf> {
    check_block_params(m, k, n)?;
    let block = (1u32 << m) - 1;
    Anf::from_monomials(n, (0..k).map(|i| block << (m * i)))
}

fn check_block_params(m: usize, k: usize, n: usize) -> Result<()> {
    check_vars(n)?;
    if m == 0 || k == 0 {
        return Err(Error::InvalidParameter("block size m and block count k must be positive"));
    }
    if m * k > n {
        return Err(Error::InvalidParameter("m·k exceeds the number of variables"));
    }
    Ok(())
}

/// `2^{n-mk}(2^m - 2)^k`.
fn monomial_sum_fourier(m: usize, k: usize, n: usize) -> i128 {
    ((1i128 << m) - 2).pow(k as u32) << (n - m * k)
}

/// `w = 2^{n-1} - 2^{n-mk-1}(2^m - 2)^k`; balanced exactly when `m = 1`.
pub fn monomial_sum_weight(m: usize, k: usize, n: usize) -> Result<u64> {
    check_block_params(m, k, n)?;
    Ok(((1i128 << (n - 1)) - monomial_sum_fourier(m, k, n) / 2) as u64)
}

/// `N = 2^{n-1} - 2^{n-mk-1}(2^m - 2)^k` for `m > 1`.
pub fn monomial_sum_nl(m: usize, k: usize, n: usize) -> Result<u64> {
    if m <= 1 {
        return Err(Error::InvalidParameter("monomial_sum_nl needs m > 1"));
    }
    monomial_sum_weight(m, k, n)
}

/// `f = (x_1⋯x_m)·g(x_{m+1}..) + (1 + x_1⋯x_m)·h(x_{m+1}..)` kept as its parts.
#[derive(Debug, Clone)]
pub struct ConvDecomposition {
    m: usize,
    g: Anf,
    h: Anf,
    g_spectrum: WalshSpectrum,
    h_spectrum: WalshSpectrum,
}

impl ConvDecomposition {
    pub fn new(g: Anf, h: Anf, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("pivot block size m must be positive"));
        }
        if g.n() != h.n() {
            return Err(Error::MismatchedVariables { left: g.n(), right: h.n() });
        }
        check_vars(m + g.n())?;
        let g_spectrum = wht(&g.to_truth_table());
        let h_spectrum = wht(&h.to_truth_table());
        Ok(ConvDecomposition { m, g, h, g_spectrum, h_spectrum })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn g(&self) -> &Anf {
        &self.g
    }

    pub fn h(&self) -> &Anf {
        &self.h
    }

    /// Variable count of the assembled function, `m + n`.
    pub fn total_vars(&self) -> usize {
        self.m + self.g.n()
    }

    pub fn assemble(&self) -> Anf {
        conv_product(&self.g, &self.h, self.m).expect("validated at construction")
    }

    fn pivot_multiplicity(&self) -> i64 {
        (1i64 << self.m) - 1
    }

    /// `w(f) = (2^m - 1) w(h↾) + w(g↾)`.
    pub fn weight(&self) -> u64 {
        let n = self.g.n();
        let w = |f0: i64| (((1i64 << n) - f0) / 2) as u64;
        self.pivot_multiplicity() as u64 * w(self.h_spectrum.get(0)) + w(self.g_spectrum.get(0))
    }

    /// `F(f) = (2^m - 1) F(h↾) + F(g↾)`.
    pub fn fourier(&self) -> i64 {
        self.pivot_multiplicity() * self.h_spectrum.get(0) + self.g_spectrum.get(0)
    }

    /// Balanced iff `F(h↾) = -F(g↾)/(2^m - 1)`.
    pub fn is_balanced(&self) -> bool {
        self.fourier() == 0
    }

    /// `W_f(a, b)` with `a ∈ F_2^m` in the low `m` bits of `alpha` and `b ∈ F_2^n` above.
    pub fn walsh(&self, alpha: u32) -> i64 {
        let a = alpha & ((1u32 << self.m) - 1);
        let b = alpha >> self.m;
        let (wg, wh) = (self.g_spectrum.get(b), self.h_spectrum.get(b));
        if a == 0 {
            self.pivot_multiplicity() * wh + wg
        } else if a.count_ones() % 2 == 0 {
            wg - wh
        } else {
            wh - wg
        }
    }

    pub fn spectrum(&self) -> WalshSpectrum {
        let n = self.total_vars();
        WalshSpectrum::from_values(n, (0..1u32 << n).map(|alpha| self.walsh(alpha)).collect())
    }

    /// Lower bound `N(f) >= (2^m - 1) N(h↾) + N(g↾)`.
    pub fn nl_bound(&self) -> u64 {
        self.pivot_multiplicity() as u64 * self.h_spectrum.nonlinearity()
            + self.g_spectrum.nonlinearity()
    }
}

pub fn genconv_weight(g: &Anf, h: &Anf, m: usize) -> Result<u64> {
    Ok(ConvDecomposition::new(g.clone(), h.clone(), m)?.weight())
}

pub fn genconv_balanced(g: &Anf, h: &Anf, m: usize) -> Result<bool> {
    Ok(ConvDecomposition::new(g.clone(), h.clone(), m)?.is_balanced())
}

pub fn genconv_walsh(g: &Anf, h: &Anf, m: usize, alpha: u32) -> Result<i64> {
    let d = ConvDecomposition::new(g.clone(), h.clone(), m)?;
    crate::table::check_point(alpha, d.total_vars())?;
    Ok(d.walsh(alpha))
}

pub fn genconv_nl_bound(g: &Anf, h: &Anf, m: usize) -> Result<u64> {
    Ok(ConvDecomposition::new(g.clone(), h.clone(), m)?.nl_bound())
}

/// Blocks `[x_1..x_{n_1}], [x_{n_1+1}..], ...` as parts on `n` variables.
pub fn consecutive_blocks(parts: &[Anf], n: usize) -> Result<Vec<Anf>> {
    let mut offset = 0;
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        out.push(p.shifted(offset, n)?);
        offset += p.n();
    }
    Ok(out)
}
