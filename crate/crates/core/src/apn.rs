//! Power moments, the `M` parameter and APN characterisations.
//!
//! `Z_a(f) = {b : D_bD_a f = 0}`, `U_a(f) = {b : D_bD_a f = 1}`,
//! `M_a(f) = |Z_a| - |U_a|` and `M(f) = Σ_{a≠0} M_a(f)`. For a vectorial `F`,
//! `M(F) = Σ_{λ≠0} M(λ·F)`.
//!
//! Most quantities have a generic enumeration path and, for degree at most
//! three, an algebraic path through the linear space of `D_a f`. Both are
//! public so that callers can cross-check them.

use alloc::vec::Vec;

use crate::anf::Anf;
use crate::error::{check_cap, Error, Parity, Result};
use crate::gf2::{span, Echelon};
use crate::quadratic::{bilinear_form, linear_space_quadratic};
use crate::spectrum::{is_bent, is_semi_bent, wht};
use crate::table::{check_point, TruthTable};
use crate::vectorial::VectorialBf;

pub const L4_CAP: usize = 14;
pub const FIRST_ORDER_MOMENT_CAP: usize = 10;
pub const SECOND_ORDER_MOMENT_CAP: usize = 7;
/// Cap for the `O(4^n)` scans over `(a, b)` pairs.
pub const M_SCAN_CAP: usize = 8;
pub const PARTIALLY_BENT_CAP: usize = 10;

/// `L_4(F) = Σ_{λ≠0} Σ_a W_{λ·F}(a)^4`; `n <= 14`.
pub fn power_moment_l4(f: &VectorialBf) -> Result<u128> {
    check_cap("power_moment_l4", f.n(), L4_CAP)?;
    (1..=f.component_count()).map(|l| component_l4(f, l)).sum()
}

/// `Σ_a W_{λ·F}(a)^4` for one component.
pub fn component_l4(f: &VectorialBf, lambda: u32) -> Result<u128> {
    Ok(wht(&f.component(lambda)?).fourth_moment())
}

/// `2^{3n+1}(2^n - 1)`, attained by `L_4` exactly for APN functions.
pub fn l4_bound(n: usize) -> u128 {
    (1u128 << (3 * n + 1)) * ((1u128 << n) - 1)
}

/// `2^{3n}(2^n - 1) + 2^{2n} M(F)`, equal to `L_4(F)` when `deg F <= 3`.
pub fn l4_from_m(n: usize, m: u64) -> u128 {
    (1u128 << (3 * n)) * ((1u128 << n) - 1) + ((m as u128) << (2 * n))
}

/// `2^{2n+1}(2^n - 1)`, the lower bound for both derivative moments.
pub fn derivative_moment_bound(n: usize) -> u128 {
    (1u128 << (2 * n + 1)) * ((1u128 << n) - 1)
}

/// `Σ_{λ≠0} Σ_a F(D_a(λ·F))^2`; `n <= 10`.
pub fn first_order_moment(f: &VectorialBf) -> Result<u128> {
    check_cap("first_order_moment", f.n(), FIRST_ORDER_MOMENT_CAP)?;
    let mut total = 0u128;
    for lambda in 1..=f.component_count() {
        let c = f.component(lambda)?;
        for a in 0..c.len() as u32 {
            let v = c.derivative(a)?.fourier() as i128;
            total += (v * v) as u128;
        }
    }
    Ok(total)
}

/// `Σ_{λ≠0} Σ_{b,c} F(D_bD_c(λ·F))` by enumeration; `n <= 7`.
pub fn second_order_moment(f: &VectorialBf) -> Result<u128> {
    check_cap("second_order_moment", f.n(), SECOND_ORDER_MOMENT_CAP)?;
    let mut total = 0i128;
    for lambda in 1..=f.component_count() {
        let comp = f.component(lambda)?;
        for c in 0..comp.len() as u32 {
            let dc = comp.derivative(c)?;
            for b in 0..comp.len() as u32 {
                total += dc.derivative(b)?.fourier() as i128;
            }
        }
    }
    // Σ_b F(D_b g) = F(g)^2, so the sum is never negative
    Ok(total as u128)
}

/// `2^{2n}(2^n - 1) + 2^n M(F)`, the second-order moment for `deg F <= 3`.
pub fn second_order_moment_algebraic(f: &VectorialBf) -> Result<u128> {
    let n = f.n();
    let m = m_total_algebraic(f)?;
    Ok((1u128 << (2 * n)) * ((1u128 << n) - 1) + ((m as u128) << n))
}

/// `M_a(f)` by scanning every `b`; `n <= 8`.
pub fn m_a(f: &TruthTable, a: u32) -> Result<u64> {
    check_cap("m_a", f.n(), M_SCAN_CAP)?;
    check_point(a, f.n())?;
    let da = f.derivative(a)?;
    let (mut z, mut u) = (0u64, 0u64);
    for b in 0..f.len() as u32 {
        match da.derivative(b)?.constant_value() {
            Some(false) => z += 1,
            Some(true) => u += 1,
            None => {}
        }
    }
    Ok(z - u)
}

fn check_cubic(f: &Anf) -> Result<()> {
    if f.degree() > 3 {
        return Err(Error::DegreeTooHigh { max: 3, found: f.degree() });
    }
    Ok(())
}

/// `M_a(f) = Σ_{b ∈ V(D_a f)} (-1)^{D_bD_a f}` for `deg f <= 3`. The sign map is
/// linear on `V(D_a f)`, so the sum is `2^{dim V}` or `0`.
pub fn m_a_algebraic(f: &Anf, a: u32) -> Result<u64> {
    check_cubic(f)?;
    check_point(a, f.n())?;
    let v = linear_space_quadratic(&f.derivative(a)?)?;
    Ok(if v.has_complementing_structure() { 0 } else { 1 << v.dim() })
}

/// Per-point values `M_a(f)` for `a ≠ 0` and their sum `M(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MProfile {
    n: usize,
    values: Vec<u64>,
    total: u64,
}

impl MProfile {
    fn from_values(n: usize, values: Vec<u64>) -> Self {
        let total = values.iter().sum();
        MProfile { n, values, total }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `M_a` for `a = 1, ..., 2^n - 1` in order.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, a: u32) -> Option<u64> {
        (a as usize).checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    /// `M(f)`.
    pub fn total(&self) -> u64 {
        self.total
    }
}

pub fn m_profile_generic(f: &TruthTable) -> Result<MProfile> {
    check_cap("m_profile", f.n(), M_SCAN_CAP)?;
    let values = (1..f.len() as u32).map(|a| m_a(f, a)).collect::<Result<_>>()?;
    Ok(MProfile::from_values(f.n(), values))
}

pub fn m_profile_algebraic(f: &Anf) -> Result<MProfile> {
    check_cubic(f)?;
    let values = (1..1u32 << f.n()).map(|a| m_a_algebraic(f, a)).collect::<Result<_>>()?;
    Ok(MProfile::from_values(f.n(), values))
}

/// Algebraic path for `deg f <= 3`, enumeration otherwise.
pub fn m_profile(f: &Anf) -> Result<MProfile> {
    if f.degree() <= 3 {
        m_profile_algebraic(f)
    } else {
        m_profile_generic(&f.to_truth_table())
    }
}

/// `M(f) = 2^n (2^{dim V(f)} - 1)` for `deg f <= 2`: `M_a = 2^n` on the
/// radical and `0` elsewhere.
pub fn m_quadratic(f: &Anf) -> Result<u64> {
    let v = bilinear_form(f)?.radical().len();
    Ok((1u64 << f.n()) * ((1u64 << v) - 1))
}

pub fn m_total_generic(f: &VectorialBf) -> Result<u64> {
    check_cap("m_total", f.n(), M_SCAN_CAP)?;
    let mut total = 0;
    for lambda in 1..=f.component_count() {
        total += m_profile_generic(&f.component(lambda)?)?.total();
    }
    Ok(total)
}

pub fn m_total_algebraic(f: &VectorialBf) -> Result<u64> {
    let mut total = 0;
    for lambda in 1..=f.component_count() {
        total += m_profile_algebraic(&f.component_anf(lambda)?)?.total();
    }
    Ok(total)
}

/// `M(λ·F)` by whichever path applies to that component.
pub fn component_m(f: &VectorialBf, lambda: u32) -> Result<u64> {
    Ok(m_profile(&f.component_anf(lambda)?)?.total())
}

/// `M(F)`, choosing the path per component.
pub fn m_total(f: &VectorialBf) -> Result<u64> {
    (1..=f.component_count()).map(|l| component_m(f, l)).sum()
}

/// `M(F) = 2^n Σ_{λ≠0} (2^{dim V(λ·F)} - 1)`, valid when every component has
/// degree at most two.
pub fn m_total_linear_spaces(f: &VectorialBf) -> Result<u64> {
    (1..=f.component_count()).map(|l| m_quadratic(&f.component_anf(l)?)).sum()
}

/// `2^n (2^n - 1)`, the minimum of `M(F)` over functions of degree 2 or 3.
pub fn m_apn_value(n: usize) -> u64 {
    (1u64 << n) * ((1u64 << n) - 1)
}

/// Outcome of the `M(F)` test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApnByM {
    pub apn: bool,
    pub m_total: u64,
    /// For APN `F`, the first `λ` with `M(λ·F) <= 2^n`.
    pub witness: Option<u32>,
}

/// APN iff `M(F) = 2^n(2^n - 1)`; requires `deg F ∈ {2, 3}`.
pub fn is_apn_via_m(f: &VectorialBf) -> Result<ApnByM> {
    let d = f.degree()?;
    if !(2..=3).contains(&d) {
        return Err(Error::DegreeOutOfRange { min: 2, max: 3, found: d });
    }
    let n = f.n();
    let per: Vec<u64> = (1..=f.component_count())
        .map(|l| component_m(f, l))
        .collect::<Result<_>>()?;
    let m_total: u64 = per.iter().sum();
    let apn = m_total == m_apn_value(n);
    let witness = apn
        .then(|| per.iter().position(|&m| m <= 1 << n).map(|i| i as u32 + 1))
        .flatten();
    Ok(ApnByM { apn, m_total, witness })
}

/// Every nonzero derivative is constant or balanced; `n <= 10`.
pub fn is_partially_bent(f: &TruthTable) -> Result<bool> {
    check_cap("is_partially_bent", f.n(), PARTIALLY_BENT_CAP)?;
    for a in 1..f.len() as u32 {
        let d = f.derivative(a)?;
        if !d.is_constant() && !d.is_balanced() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of bent components; `n` even.
pub fn bent_component_count(f: &VectorialBf) -> Result<usize> {
    if f.n() % 2 != 0 {
        return Err(Error::Parity { n: f.n(), required: Parity::Even });
    }
    let mut count = 0;
    for lambda in 1..=f.component_count() {
        count += is_bent(&f.component(lambda)?)? as usize;
    }
    Ok(count)
}

/// Almost bent: every component semi-bent; `n` odd.
pub fn is_ab(f: &VectorialBf) -> Result<bool> {
    if f.n() % 2 == 0 {
        return Err(Error::Parity { n: f.n(), required: Parity::Odd });
    }
    for lambda in 1..=f.component_count() {
        if !is_semi_bent(&f.component(lambda)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Z_a(f)` as a subspace and `U_a(f)` as `rep + Z_a(f)` or empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZaStructure {
    pub basis: Vec<u32>,
    pub coset_rep: Option<u32>,
}

impl ZaStructure {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn z_elements(&self) -> Vec<u32> {
        span(&self.basis)
    }

    pub fn u_elements(&self) -> Vec<u32> {
        match self.coset_rep {
            Some(r) => self.z_elements().into_iter().map(|z| z ^ r).collect(),
            None => Vec::new(),
        }
    }

    /// `|Z_a| - |U_a|`.
    pub fn m_a(&self) -> u64 {
        if self.coset_rep.is_some() {
            0
        } else {
            1 << self.dim()
        }
    }
}

/// By scanning `b`; `n <= 8`.
pub fn z_a_structure(f: &TruthTable, a: u32) -> Result<ZaStructure> {
    check_cap("z_a_structure", f.n(), M_SCAN_CAP)?;
    check_point(a, f.n())?;
    let da = f.derivative(a)?;
    let mut z = Echelon::new();
    let mut rep = None;
    for b in 0..f.len() as u32 {
        match da.derivative(b)?.constant_value() {
            Some(false) => {
                z.insert(b);
            }
            Some(true) if rep.is_none() => rep = Some(b),
            _ => {}
        }
    }
    Ok(ZaStructure { basis: z.basis().to_vec(), coset_rep: rep })
}

/// From `V(D_a f)` and its constants for `deg f <= 3`: `Z_a` is the kernel of
/// the constant map on that space.
pub fn z_a_structure_algebraic(f: &Anf, a: u32) -> Result<ZaStructure> {
    check_cubic(f)?;
    check_point(a, f.n())?;
    let v = linear_space_quadratic(&f.derivative(a)?)?;
    let pivot = v.constants().iter().position(|&c| c).map(|i| v.basis()[i]);
    let basis = v
        .basis()
        .iter()
        .zip(v.constants())
        .filter(|&(&b, _)| Some(b) != pivot)
        .map(|(&b, &c)| if c { b ^ pivot.unwrap_or(0) } else { b })
        .collect();
    Ok(ZaStructure { basis, coset_rep: pivot })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anf(n: usize, terms: &[&[usize]]) -> Anf {
        Anf::from_terms(n, terms).unwrap()
    }

    fn example() -> VectorialBf {
        VectorialBf::from_anfs(&[
            anf(3, &[&[1, 3], &[2, 3], &[1]]),
            anf(3, &[&[2, 3], &[1], &[2]]),
            anf(3, &[&[1, 2], &[1], &[2], &[3]]),
        ])
        .unwrap()
    }

    #[test]
    fn example_moments() {
        let f = example();
        assert_eq!(power_moment_l4(&f), Ok(7168));
        assert_eq!(l4_bound(3), 7168);
        assert_eq!(first_order_moment(&f), Ok(896));
        assert_eq!(second_order_moment(&f), Ok(896));
        assert_eq!(second_order_moment_algebraic(&f), Ok(896));
        assert_eq!(derivative_moment_bound(3), 896);
    }

    #[test]
    fn example_m() {
        let f = example();
        assert_eq!(m_total(&f), Ok(56));
        assert_eq!(m_total_generic(&f), Ok(56));
        assert_eq!(m_total_linear_spaces(&f), Ok(56));
        let r = is_apn_via_m(&f).unwrap();
        assert!(r.apn);
        assert_eq!(r.m_total, 56);
        assert!(r.witness.is_some());
        assert_eq!(is_ab(&f), Ok(true));
    }

    #[test]
    fn identity_moments() {
        let id = VectorialBf::identity(3).unwrap();
        assert_eq!(power_moment_l4(&id), Ok(28672));
        assert!(first_order_moment(&id).unwrap() > derivative_moment_bound(3));
        assert!(second_order_moment(&id).unwrap() > derivative_moment_bound(3));
        assert_eq!(m_total(&id), Ok(8 * 7 * 7));
        assert_eq!(
            is_apn_via_m(&id),
            Err(Error::DegreeOutOfRange { min: 2, max: 3, found: 1 })
        );
        assert_eq!(bent_component_count(&VectorialBf::identity(4).unwrap()), Ok(0));
    }

    #[test]
    fn m_examples() {
        let f = anf(2, &[&[1, 2]]);
        assert_eq!(m_profile(&f).unwrap().values(), &[0, 0, 0]);
        assert_eq!(m_profile_generic(&f.to_truth_table()).unwrap().total(), 0);
        let f = anf(3, &[&[1, 2], &[3]]);
        assert_eq!(m_profile(&f).unwrap().total(), 8);
        assert_eq!(m_profile_generic(&f.to_truth_table()).unwrap().total(), 8);
        assert_eq!(m_quadratic(&f), Ok(8));
        let f = anf(3, &[&[1], &[2]]);
        assert_eq!(m_profile(&f).unwrap().total(), 8 * 7);
    }

    #[test]
    fn m_paths_agree_on_cubics() {
        let f = anf(5, &[&[1, 2, 3], &[2, 4, 5], &[1, 5], &[3]]);
        let alg = m_profile_algebraic(&f).unwrap();
        let gen = m_profile_generic(&f.to_truth_table()).unwrap();
        assert_eq!(alg, gen);
    }

    #[test]
    fn partially_bent_examples() {
        assert_eq!(is_partially_bent(&anf(4, &[&[1, 2], &[3, 4]]).to_truth_table()), Ok(true));
        assert_eq!(is_partially_bent(&anf(4, &[&[1, 2], &[3]]).to_truth_table()), Ok(true));
        assert_eq!(is_partially_bent(&anf(3, &[&[1, 2, 3]]).to_truth_table()), Ok(false));
    }

    #[test]
    fn parity_errors() {
        let f = example();
        assert!(matches!(bent_component_count(&f), Err(Error::Parity { .. })));
        assert!(matches!(is_ab(&VectorialBf::identity(4).unwrap()), Err(Error::Parity { .. })));
    }

    #[test]
    fn z_a_examples() {
        let f = anf(2, &[&[1, 2]]);
        let z = z_a_structure(&f.to_truth_table(), 0b01).unwrap();
        let mut zs = z.z_elements();
        zs.sort_unstable();
        assert_eq!(zs, [0, 1]);
        let mut us = z.u_elements();
        us.sort_unstable();
        assert_eq!(us, [2, 3]);
        let alg = z_a_structure_algebraic(&f, 0b01).unwrap();
        assert_eq!(alg.dim(), 1);
        assert_eq!(alg.m_a(), 0);

        let zero = z_a_structure(&f.to_truth_table(), 0).unwrap();
        assert_eq!((zero.dim(), zero.coset_rep), (2, None));
    }
}
