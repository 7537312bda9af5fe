//! Algebraic normal form.
//!
//! A monomial is a bit mask over the variables: bit `i` stands for `x_{i+1}`,
//! the empty mask is the constant term. Monomial lists are kept sorted and
//! duplicate-free, so two equal functions have equal `Anf` values.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::table::{check_point, check_vars, TruthTable, LOW_HALF};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Anf {
    n: usize,
    monomials: Vec<u32>,
}

/// In-place binary Möbius transform of a packed table. It is an involution.
pub(crate) fn moebius_in_place(n: usize, words: &mut [u64]) {
    for (j, &mask) in LOW_HALF.iter().enumerate().take(n.min(6)) {
        let s = 1u32 << j;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << s;
        }
    }
    let mut step = 1;
    while step < words.len() {
        for i in 0..words.len() {
            if i & step != 0 {
                words[i] ^= words[i ^ step];
            }
        }
        step <<= 1;
    }
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Sorts and cancels repeated monomials pairwise (sum over `F_2`).
fn normalize(mut monomials: Vec<u32>) -> Vec<u32> {
    monomials.sort_unstable();
    let mut out: Vec<u32> = Vec::with_capacity(monomials.len());
    for m in monomials {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

impl Anf {
    pub fn zero(n: usize) -> Result<Self> {
        check_vars(n)?;
        Ok(Anf { n, monomials: Vec::new() })
    }

    pub fn one(n: usize) -> Result<Self> {
        check_vars(n)?;
        Ok(Anf { n, monomials: alloc::vec![0] })
    }

    /// The single variable `x_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        Self::from_terms(n, &[&[i]])
    }

    /// Sum of the given monomial masks. Repeated masks cancel.
    pub fn from_monomials(n: usize, monomials: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_vars(n)?;
        let monomials: Vec<u32> = monomials.into_iter().collect();
        for &m in &monomials {
            if m & !full_mask(n) != 0 {
                let var = 32 - m.leading_zeros() as usize;
                return Err(Error::VariableOutOfRange { var, n });
            }
        }
        Ok(Anf { n, monomials: normalize(monomials) })
    }

    /// Sum of monomials given as lists of 1-based variable indices; `&[]` is the constant 1.
    pub fn from_terms(n: usize, terms: &[&[usize]]) -> Result<Self> {
        let mut masks = Vec::with_capacity(terms.len());
        for term in terms {
            let mut m = 0u32;
            for &v in term.iter() {
                if v == 0 || v > n {
                    return Err(Error::VariableOutOfRange { var: v, n });
                }
                m |= 1 << (v - 1);
            }
            masks.push(m);
        }
        Self::from_monomials(n, masks)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, monomials: Vec<u32>) -> Self {
        debug_assert!(monomials.windows(2).all(|w| w[0] < w[1]));
        Anf { n, monomials }
    }

    /// Inverse Möbius transform of a truth table.
    pub fn from_truth_table(t: &TruthTable) -> Self {
        let mut words = t.words().to_vec();
        moebius_in_place(t.n(), &mut words);
        let mut monomials = Vec::new();
        for (i, &w) in words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros();
                monomials.push(((i as u32) << 6) | b);
                w &= w - 1;
            }
        }
        Anf { n: t.n(), monomials }
    }

    pub fn to_truth_table(&self) -> TruthTable {
        let mut t = TruthTable::zero(self.n).expect("validated n");
        for &m in &self.monomials {
            t.set(m);
        }
        moebius_in_place(self.n, t.words_mut());
        t
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn monomials(&self) -> &[u32] {
        &self.monomials
    }

    /// Algebraic degree; both constants report 0.
    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.monomials.iter().all(|&m| m == 0)
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    pub fn contains(&self, monomial: u32) -> bool {
        self.monomials.binary_search(&monomial).is_ok()
    }

    /// Mask of all variables that occur in some monomial.
    pub fn support(&self) -> u32 {
        self.monomials.iter().fold(0, |acc, m| acc | m)
    }

    /// Value at point `x`: the parity of monomials contained in `x`.
    pub fn eval(&self, x: u32) -> bool {
        self.monomials.iter().filter(|&&m| m & x == m).count() & 1 == 1
    }

    /// Homogeneous part of the given degree.
    pub fn part_of_degree(&self, d: usize) -> Anf {
        let monomials = self.monomials.iter().copied().filter(|m| m.count_ones() as usize == d).collect();
        Anf { n: self.n, monomials }
    }

    pub fn try_add(&self, other: &Anf) -> Result<Anf> {
        self.same_n(other)?;
        let (a, b) = (&self.monomials, &other.monomials);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Anf { n: self.n, monomials: out })
    }

    pub fn try_mul(&self, other: &Anf) -> Result<Anf> {
        self.same_n(other)?;
        let mut prod = Vec::with_capacity(self.monomials.len() * other.monomials.len());
        for &a in &self.monomials {
            for &b in &other.monomials {
                prod.push(a | b);
            }
        }
        Ok(Anf { n: self.n, monomials: normalize(prod) })
    }

    /// `f + 1`.
    pub fn complement(&self) -> Anf {
        self.try_add(&Anf { n: self.n, monomials: alloc::vec![0] }).expect("same n")
    }

    fn same_n(&self, other: &Anf) -> Result<()> {
        if self.n != other.n {
            Err(Error::MismatchedVariables { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    /// Symbolic derivative `D_a f`: each monomial `x^I` contributes
    /// `Σ x^J` over `J ⊊ I` with `I \ J ⊆ a`.
    pub fn derivative(&self, a: u32) -> Result<Anf> {
        check_point(a, self.n)?;
        let mut out = Vec::new();
        for &m in &self.monomials {
            let shifted = m & a;
            // Enumerate nonempty subsets s of `shifted`; J = m \ s.
            let mut s = shifted;
            while s != 0 {
                out.push(m & !s);
                s = (s - 1) & shifted;
            }
        }
        Ok(Anf { n: self.n, monomials: normalize(out) })
    }

    /// Writes `f = x_var·g + h` with `g, h` free of `x_var`, then removes
    /// `x_var` and compacts the remaining variables to `1..n-1` in order.
    pub fn cofactors(&self, var: usize) -> Result<(Anf, Anf)> {
        if var == 0 || var > self.n {
            return Err(Error::VariableOutOfRange { var, n: self.n });
        }
        if self.n == 1 {
            return Err(Error::VariableCount { n: 0 });
        }
        let bit = 1u32 << (var - 1);
        let low = bit - 1;
        let squeeze = |m: u32| (m & low) | ((m >> 1) & !low);
        let mut g = Vec::new();
        let mut h = Vec::new();
        for &m in &self.monomials {
            if m & bit != 0 {
                g.push(squeeze(m & !bit));
            } else {
                h.push(squeeze(m));
            }
        }
        // squeeze is monotone on masks without `bit`, so order is preserved
        Ok((Anf::from_sorted_unchecked(self.n - 1, g), Anf::from_sorted_unchecked(self.n - 1, h)))
    }

    /// Restriction to the variables in `mask`, compacted to `1..=popcount(mask)`
    /// in increasing order. Fails if `f` depends on a variable outside `mask`.
    pub fn restrict_to(&self, mask: u32) -> Result<Anf> {
        let outside = self.support() & !mask;
        if outside != 0 {
            let var = outside.trailing_zeros() as usize + 1;
            return Err(Error::VariableOutOfRange { var, n: mask.count_ones() as usize });
        }
        let n = mask.count_ones() as usize;
        Anf::from_monomials(n, self.monomials.iter().map(|&m| compress_bits(m, mask)))
    }

    /// Re-embeds `f` into `new_n` variables, moving `x_i` to `x_{i+offset}`.
    pub fn shifted(&self, offset: usize, new_n: usize) -> Result<Anf> {
        if self.n + offset > new_n {
            return Err(Error::VariableCount { n: self.n + offset });
        }
        check_vars(new_n)?;
        Ok(Anf { n: new_n, monomials: self.monomials.iter().map(|m| m << offset).collect() })
    }
}

pub fn anf_to_tt(f: &Anf) -> TruthTable {
    f.to_truth_table()
}

pub fn tt_to_anf(t: &TruthTable) -> Anf {
    Anf::from_truth_table(t)
}

/// Packs the bits of `x` selected by `mask` into the low bits, in order.
pub(crate) fn compress_bits(x: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut k = 0;
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros();
        out |= ((x >> b) & 1) << k;
        k += 1;
        m &= m - 1;
    }
    out
}

impl Add for &Anf {
    type Output = Anf;

    /// Panics on mismatched variable counts; use [`Anf::try_add`] to handle that case.
    fn add(self, rhs: &Anf) -> Anf {
        self.try_add(rhs).expect("adding ANFs on different variable counts")
    }
}

impl Mul for &Anf {
    type Output = Anf;

    fn mul(self, rhs: &Anf) -> Anf {
        self.try_mul(rhs).expect("multiplying ANFs on different variable counts")
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf(n={}, ", self.n)?;
        if self.monomials.is_empty() {
            f.write_str("0")?;
        }
        for (i, &m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m == 0 {
                f.write_str("1")?;
                continue;
            }
            let mut first = true;
            let mut r = m;
            while r != 0 {
                if !first {
                    f.write_str("*")?;
                }
                write!(f, "x{}", r.trailing_zeros() + 1)?;
                first = false;
                r &= r - 1;
            }
        }
        f.write_str(")")
    }
}

/// Direct sum `g(x_1..x_s) + h(x_{s+1}..x_{s+m})` on `s + m` variables.
pub fn direct_sum(g: &Anf, h: &Anf) -> Result<Anf> {
    let n = g.n + h.n;
    check_vars(n)?;
    let g = g.shifted(0, n)?;
    let h = h.shifted(n - h.n, n)?;
    g.try_add(&h)
}

/// Generalised convolutional product on `m + n` variables:
/// `(x_1⋯x_m)·g(x_{m+1}..) + (1 + x_1⋯x_m)·h(x_{m+1}..)`.
pub fn conv_product(g: &Anf, h: &Anf, m: usize) -> Result<Anf> {
    if m == 0 {
        return Err(Error::InvalidParameter("conv_product needs m >= 1"));
    }
    g.same_n(h)?;
    let total = m + g.n;
    check_vars(total)?;
    let pivot = Anf { n: total, monomials: alloc::vec![(1u32 << m) - 1] };
    let g = g.shifted(m, total)?;
    let h = h.shifted(m, total)?;
    // p·g + (1 + p)·h = p·(g + h) + h
    Ok(&(&pivot * &(&g + &h)) + &h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(t: &TruthTable) -> Vec<u8> {
        t.bits().map(u8::from).collect()
    }

    #[test]
    fn anf_to_tt_examples() {
        assert_eq!(bits(&Anf::var(1, 1).unwrap().to_truth_table()), [0, 1]);
        let and = Anf::from_terms(2, &[&[1, 2]]).unwrap();
        assert_eq!(bits(&and.to_truth_table()), [0, 0, 0, 1]);
        let f = Anf::from_terms(2, &[&[1, 2], &[1]]).unwrap();
        assert_eq!(bits(&f.to_truth_table()), [0, 1, 0, 0]);
    }

    #[test]
    fn tt_to_anf_examples() {
        let t = TruthTable::from_bits(1, &[false, true]).unwrap();
        assert_eq!(Anf::from_truth_table(&t), Anf::var(1, 1).unwrap());
        let t = TruthTable::from_bits(2, &[false, false, false, true]).unwrap();
        assert_eq!(Anf::from_truth_table(&t), Anf::from_terms(2, &[&[1, 2]]).unwrap());
        let t = TruthTable::one(2).unwrap();
        assert_eq!(Anf::from_truth_table(&t), Anf::one(2).unwrap());
    }

    #[test]
    fn exhaustive_involution_small_n() {
        for n in 1..=4usize {
            for code in 0u64..1 << (1 << n) {
                let t = TruthTable::from_fn(n, |x| code >> x & 1 == 1).unwrap();
                let f = Anf::from_truth_table(&t);
                assert_eq!(f.to_truth_table(), t);
                // Anf side of the involution
                let back = Anf::from_truth_table(&f.to_truth_table());
                assert_eq!(back, f);
                for x in 0..1u32 << n {
                    assert_eq!(f.eval(x), t.get(x));
                }
            }
        }
    }

    #[test]
    fn degree_conventions() {
        assert_eq!(Anf::zero(3).unwrap().degree(), 0);
        assert_eq!(Anf::one(3).unwrap().degree(), 0);
        assert!(Anf::zero(3).unwrap().is_zero());
        assert!(!Anf::one(3).unwrap().is_zero());
        assert!(Anf::one(3).unwrap().is_constant());
    }

    #[test]
    fn repeated_terms_cancel() {
        let f = Anf::from_terms(3, &[&[1], &[2], &[1]]).unwrap();
        assert_eq!(f, Anf::var(3, 2).unwrap());
        assert!(matches!(Anf::from_terms(2, &[&[3]]), Err(Error::VariableOutOfRange { var: 3, n: 2 })));
    }

    #[test]
    fn symbolic_derivative_matches_table() {
        let f = Anf::from_terms(4, &[&[1, 2, 3], &[2, 4], &[1], &[]]).unwrap();
        let t = f.to_truth_table();
        for a in 0..16 {
            assert_eq!(f.derivative(a).unwrap().to_truth_table(), t.derivative(a).unwrap());
        }
    }

    #[test]
    fn cofactors_recompose() {
        let f = Anf::from_terms(4, &[&[1, 2, 3], &[2, 4], &[2], &[3, 4], &[]]).unwrap();
        let (g, h) = f.cofactors(2).unwrap();
        assert_eq!(g, Anf::from_terms(3, &[&[1, 2], &[3], &[]]).unwrap());
        assert_eq!(h, Anf::from_terms(3, &[&[2, 3], &[]]).unwrap());
        let t = f.to_truth_table();
        let (gt, ht) = (g.to_truth_table(), h.to_truth_table());
        for x in 0..16u32 {
            let rest = (x & 1) | ((x >> 2) << 1);
            let v = if x & 2 != 0 { gt.get(rest) ^ ht.get(rest) } else { ht.get(rest) };
            assert_eq!(t.get(x), v);
        }
    }

    #[test]
    fn direct_sum_examples() {
        let and = Anf::from_terms(2, &[&[1, 2]]).unwrap();
        let s = direct_sum(&and, &and).unwrap();
        assert_eq!(s, Anf::from_terms(4, &[&[1, 2], &[3, 4]]).unwrap());
        let s = direct_sum(&Anf::var(1, 1).unwrap(), &Anf::one(1).unwrap()).unwrap();
        assert_eq!(s, Anf::from_terms(2, &[&[1], &[]]).unwrap());
    }

    #[test]
    fn conv_product_examples() {
        // m = 2, g = x1, h = 1 on one variable: weight 3·2 + 1 = 7
        let f = conv_product(&Anf::var(1, 1).unwrap(), &Anf::one(1).unwrap(), 2).unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(f.to_truth_table().weight(), 7);
        // m = 1, g = 0, h = 1: (1 + x1)
        let f = conv_product(&Anf::zero(1).unwrap(), &Anf::one(1).unwrap(), 1).unwrap();
        assert_eq!(bits(&f.to_truth_table()), [1, 0, 1, 0]);
        assert_eq!(f.to_truth_table().weight(), 2);
        // g = h: f = h on both halves
        let h = Anf::from_terms(2, &[&[1, 2], &[2]]).unwrap();
        let f = conv_product(&h, &h, 1).unwrap();
        assert_eq!(f, h.shifted(1, 3).unwrap());
    }

    #[test]
    fn restrict_to_support() {
        let f = Anf::from_terms(5, &[&[2, 4], &[5]]).unwrap();
        let r = f.restrict_to(f.support()).unwrap();
        assert_eq!(r, Anf::from_terms(3, &[&[1, 2], &[3]]).unwrap());
        assert!(f.restrict_to(0b01010).is_err());
    }
}
