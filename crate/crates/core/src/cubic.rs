//! Weights of cubic functions.
//!
//! A convolutional product `f = x_{n+1} g + (1 + x_{n+1}) h` with
//! `deg g, deg h <= 2` has `w(f) = w(g↾) + w(h↾)`, and each quadratic weight is
//! known in closed form. [`cubic_conv_weight`] resolves the pair into one row
//! of the case table; [`algorithm1`] reduces an arbitrary cubic to such pairs
//! by splitting on a pivot variable.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::anf::Anf;
use crate::error::{Error, Result};
use crate::quadratic::{bilinear_form, canonical_reduction, linear_space_quadratic};

/// Orientation of an unbalanced quadratic: `q = x_1x_2 + ... + x_{2k-1}x_{2k}`
/// (weight `2^{n-1} - 2^{n-k-1}`) or its complement `q̄ = q + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnbalancedForm {
    Q,
    QBar,
}

impl UnbalancedForm {
    fn sign(self) -> i64 {
        match self {
            UnbalancedForm::Q => -1,
            UnbalancedForm::QBar => 1,
        }
    }
}

/// What a function of degree at most two looks like up to affine equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartKind {
    Zero,
    One,
    /// Balanced; `k = 0` for non-constant affine functions.
    Balanced { k: usize },
    Unbalanced { k: usize, form: UnbalancedForm },
}

impl PartKind {
    pub fn weight(self, n: usize) -> u64 {
        let half = 1i64 << (n - 1);
        (match self {
            PartKind::Zero => 0,
            PartKind::One => 1i64 << n,
            PartKind::Balanced { .. } => half,
            PartKind::Unbalanced { k, form } => half + form.sign() * (1i64 << (n - k - 1)),
        }) as u64
    }

    fn is_quadratic(self) -> bool {
        matches!(self, PartKind::Balanced { k } | PartKind::Unbalanced { k, .. } if k > 0)
    }

    fn half_rank(self) -> usize {
        match self {
            PartKind::Balanced { k } | PartKind::Unbalanced { k, .. } => k,
            _ => 0,
        }
    }
}

pub fn classify_part(f: &Anf) -> Result<PartKind> {
    if f.is_zero() {
        return Ok(PartKind::Zero);
    }
    if f.is_constant() {
        return Ok(PartKind::One);
    }
    let k = bilinear_form(f)?.half_rank();
    if linear_space_quadratic(f)?.has_complementing_structure() {
        return Ok(PartKind::Balanced { k });
    }
    let form = if canonical_reduction(f)?.constant { UnbalancedForm::QBar } else { UnbalancedForm::Q };
    Ok(PartKind::Unbalanced { k, form })
}

/// Row of the weight table for `f = x_{n+1} g + (1 + x_{n+1}) h`.
/// `k` always belongs to `h` and `l` to `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubicWeightCase {
    /// `2^n`
    BothBalanced,
    /// One part is a balanced quadratic, the other is 0: `2^{n-1}`.
    BalancedQuadraticWithZero { balanced_is_h: bool },
    /// One part is a balanced quadratic, the other is 1: `2^n + 2^{n-1}`.
    BalancedQuadraticWithOne { balanced_is_h: bool },
    /// `2^{n-1} ± 2^{n-k-1}`
    UnbalancedHZeroG { k: usize, h: UnbalancedForm },
    /// `2^n + 2^{n-1} ± 2^{n-k-1}`
    UnbalancedHOneG { k: usize, h: UnbalancedForm },
    /// `2^{n-1} ± 2^{n-l-1}`
    ZeroHUnbalancedG { l: usize, g: UnbalancedForm },
    /// `2^n + 2^{n-1} ± 2^{n-l-1}`
    OneHUnbalancedG { l: usize, g: UnbalancedForm },
    /// `2^n ± 2^{n-k-1}`
    UnbalancedHBalancedG { k: usize, h: UnbalancedForm },
    /// `2^n ± 2^{n-l-1}`
    BalancedHUnbalancedG { l: usize, g: UnbalancedForm },
    /// `2^n ± 2^{n-k-1} ± 2^{n-l-1}`, four rows by orientation.
    BothUnbalanced { k: usize, h: UnbalancedForm, l: usize, g: UnbalancedForm },
    /// `g + h` is affine so `f` is not cubic; no table row applies.
    NotCubic,
}

impl CubicWeightCase {
    /// Row number in the table, top to bottom, or `None` for [`CubicWeightCase::NotCubic`].
    pub fn row(&self) -> Option<usize> {
        use UnbalancedForm::*;
        Some(match *self {
            CubicWeightCase::BothBalanced => 1,
            CubicWeightCase::BalancedQuadraticWithZero { .. } => 2,
            CubicWeightCase::BalancedQuadraticWithOne { .. } => 3,
            CubicWeightCase::UnbalancedHZeroG { .. } => 4,
            CubicWeightCase::UnbalancedHOneG { .. } => 5,
            CubicWeightCase::ZeroHUnbalancedG { .. } => 6,
            CubicWeightCase::OneHUnbalancedG { .. } => 7,
            CubicWeightCase::UnbalancedHBalancedG { .. } => 8,
            CubicWeightCase::BalancedHUnbalancedG { .. } => 9,
            CubicWeightCase::BothUnbalanced { h: Q, g: Q, .. } => 10,
            CubicWeightCase::BothUnbalanced { h: QBar, g: QBar, .. } => 11,
            CubicWeightCase::BothUnbalanced { h: QBar, g: Q, .. } => 12,
            CubicWeightCase::BothUnbalanced { h: Q, g: QBar, .. } => 13,
            CubicWeightCase::NotCubic => return None,
        })
    }

    pub fn label(&self) -> &'static str {
        use UnbalancedForm::*;
        match *self {
            CubicWeightCase::BothBalanced => "h and g balanced",
            CubicWeightCase::BalancedQuadraticWithZero { balanced_is_h: true } => {
                "h balanced quadratic, g = 0"
            }
            CubicWeightCase::BalancedQuadraticWithZero { balanced_is_h: false } => {
                "g balanced quadratic, h = 0"
            }
            CubicWeightCase::BalancedQuadraticWithOne { balanced_is_h: true } => {
                "h balanced quadratic, g = 1"
            }
            CubicWeightCase::BalancedQuadraticWithOne { balanced_is_h: false } => {
                "g balanced quadratic, h = 1"
            }
            CubicWeightCase::UnbalancedHZeroG { h: Q, .. } => "h ~ q, g = 0",
            CubicWeightCase::UnbalancedHZeroG { h: QBar, .. } => "h ~ q̄, g = 0",
            CubicWeightCase::UnbalancedHOneG { h: Q, .. } => "h ~ q, g = 1",
            CubicWeightCase::UnbalancedHOneG { h: QBar, .. } => "h ~ q̄, g = 1",
            CubicWeightCase::ZeroHUnbalancedG { g: Q, .. } => "h = 0, g ~ r",
            CubicWeightCase::ZeroHUnbalancedG { g: QBar, .. } => "h = 0, g ~ r̄",
            CubicWeightCase::OneHUnbalancedG { g: Q, .. } => "h = 1, g ~ r",
            CubicWeightCase::OneHUnbalancedG { g: QBar, .. } => "h = 1, g ~ r̄",
            CubicWeightCase::UnbalancedHBalancedG { h: Q, .. } => "h ~ q, g balanced",
            CubicWeightCase::UnbalancedHBalancedG { h: QBar, .. } => "h ~ q̄, g balanced",
            CubicWeightCase::BalancedHUnbalancedG { g: Q, .. } => "h balanced, g ~ r",
            CubicWeightCase::BalancedHUnbalancedG { g: QBar, .. } => "h balanced, g ~ r̄",
            CubicWeightCase::BothUnbalanced { h: Q, g: Q, .. } => "h ~ q, g ~ r",
            CubicWeightCase::BothUnbalanced { h: QBar, g: QBar, .. } => "h ~ q̄, g ~ r̄",
            CubicWeightCase::BothUnbalanced { h: QBar, g: Q, .. } => "h ~ q̄, g ~ r",
            CubicWeightCase::BothUnbalanced { h: Q, g: QBar, .. } => "h ~ q, g ~ r̄",
            CubicWeightCase::NotCubic => "not cubic",
        }
    }

    /// The row's closed form for parts on `n` variables.
    pub fn weight(&self, n: usize) -> Option<u64> {
        let full = 1i64 << n;
        let half = 1i64 << (n - 1);
        let dev = |r: usize, form: UnbalancedForm| form.sign() * (1i64 << (n - r - 1));
        let w = match *self {
            CubicWeightCase::BothBalanced => full,
            CubicWeightCase::BalancedQuadraticWithZero { .. } => half,
            CubicWeightCase::BalancedQuadraticWithOne { .. } => full + half,
            CubicWeightCase::UnbalancedHZeroG { k, h } => half + dev(k, h),
            CubicWeightCase::UnbalancedHOneG { k, h } => full + half + dev(k, h),
            CubicWeightCase::ZeroHUnbalancedG { l, g } => half + dev(l, g),
            CubicWeightCase::OneHUnbalancedG { l, g } => full + half + dev(l, g),
            CubicWeightCase::UnbalancedHBalancedG { k, h } => full + dev(k, h),
            CubicWeightCase::BalancedHUnbalancedG { l, g } => full + dev(l, g),
            CubicWeightCase::BothUnbalanced { k, h, l, g } => full + dev(k, h) + dev(l, g),
            CubicWeightCase::NotCubic => return None,
        };
        Some(w as u64)
    }
}

fn check_pair(g: &Anf, h: &Anf) -> Result<()> {
    if g.n() != h.n() {
        return Err(Error::MismatchedVariables { left: g.n(), right: h.n() });
    }
    for f in [g, h] {
        if f.degree() > 2 {
            return Err(Error::DegreeTooHigh { max: 2, found: f.degree() });
        }
    }
    Ok(())
}

pub fn cubic_weight_case(g: &Anf, h: &Anf) -> Result<CubicWeightCase> {
    check_pair(g, h)?;
    let (hk, gk) = (classify_part(h)?, classify_part(g)?);
    use PartKind::*;
    Ok(match (hk, gk) {
        (Balanced { .. }, Balanced { .. }) => CubicWeightCase::BothBalanced,
        (Balanced { k }, Zero) if k > 0 => {
            CubicWeightCase::BalancedQuadraticWithZero { balanced_is_h: true }
        }
        (Zero, Balanced { k }) if k > 0 => {
            CubicWeightCase::BalancedQuadraticWithZero { balanced_is_h: false }
        }
        (Balanced { k }, One) if k > 0 => {
            CubicWeightCase::BalancedQuadraticWithOne { balanced_is_h: true }
        }
        (One, Balanced { k }) if k > 0 => {
            CubicWeightCase::BalancedQuadraticWithOne { balanced_is_h: false }
        }
        (Unbalanced { k, form }, Zero) => CubicWeightCase::UnbalancedHZeroG { k, h: form },
        (Unbalanced { k, form }, One) => CubicWeightCase::UnbalancedHOneG { k, h: form },
        (Zero, Unbalanced { k, form }) => CubicWeightCase::ZeroHUnbalancedG { l: k, g: form },
        (One, Unbalanced { k, form }) => CubicWeightCase::OneHUnbalancedG { l: k, g: form },
        (Unbalanced { k, form }, Balanced { .. }) => {
            CubicWeightCase::UnbalancedHBalancedG { k, h: form }
        }
        (Balanced { .. }, Unbalanced { k, form }) => {
            CubicWeightCase::BalancedHUnbalancedG { l: k, g: form }
        }
        (Unbalanced { k, form: hf }, Unbalanced { k: l, form: gf }) => {
            CubicWeightCase::BothUnbalanced { k, h: hf, l, g: gf }
        }
        _ => CubicWeightCase::NotCubic,
    })
}

/// Weight of `x_{n+1} g + (1 + x_{n+1}) h` on `n + 1` variables, with the row used.
pub fn cubic_conv_weight(g: &Anf, h: &Anf) -> Result<(u64, CubicWeightCase)> {
    let case = cubic_weight_case(g, h)?;
    let n = g.n();
    let w = match case.weight(n) {
        Some(w) => w,
        None => classify_part(g)?.weight(n) + classify_part(h)?.weight(n),
    };
    Ok((w, case))
}

/// Balanced iff both parts are balanced, or both are unbalanced quadratics
/// with `w(g↾) + w(h↾) = 2^n` (same rank, opposite orientation). The pair
/// `{0, 1}` also sums to `2^n`, though it is not cubic.
pub fn cubic_conv_balanced(g: &Anf, h: &Anf) -> Result<bool> {
    check_pair(g, h)?;
    use PartKind::*;
    Ok(match (classify_part(h)?, classify_part(g)?) {
        (Balanced { .. }, Balanced { .. }) => true,
        (Unbalanced { k: a, form: fa }, Unbalanced { k: b, form: fb }) => a == b && fa != fb,
        (Zero, One) | (One, Zero) => true,
        _ => false,
    })
}

/// Which nonlinearity bound applies to `x_{n+1} g + (1 + x_{n+1}) h`.
/// Each rank parameter belongs to the quadratic it is named after.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubicNlCase {
    QuadraticGAffineH { g_rank: usize },
    AffineGQuadraticH { h_rank: usize },
    BothQuadratic { h_rank: usize, g_rank: usize },
    BothAffine,
}

pub fn cubic_nl_case(g: &Anf, h: &Anf) -> Result<CubicNlCase> {
    check_pair(g, h)?;
    let (hk, gk) = (classify_part(h)?, classify_part(g)?);
    Ok(match (hk.is_quadratic(), gk.is_quadratic()) {
        (false, true) => CubicNlCase::QuadraticGAffineH { g_rank: gk.half_rank() },
        (true, false) => CubicNlCase::AffineGQuadraticH { h_rank: hk.half_rank() },
        (true, true) => CubicNlCase::BothQuadratic { h_rank: hk.half_rank(), g_rank: gk.half_rank() },
        (false, false) => CubicNlCase::BothAffine,
    })
}

/// `N(h↾) + N(g↾)` with the quadratic nonlinearity `2^{n-1} - 2^{n-k-1}`.
pub fn cubic_nl_bound(case: CubicNlCase, n: usize) -> u64 {
    let quad = |k: usize| (1u64 << (n - 1)) - (1u64 << (n - k - 1));
    match case {
        CubicNlCase::QuadraticGAffineH { g_rank } => quad(g_rank),
        CubicNlCase::AffineGQuadraticH { h_rank } => quad(h_rank),
        CubicNlCase::BothQuadratic { h_rank, g_rank } => quad(h_rank) + quad(g_rank),
        CubicNlCase::BothAffine => 0,
    }
}

/// Which side of a split a recursion node came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Root,
    /// The `g + h` cofactor (pivot set to 1).
    Sum,
    /// The `h` cofactor (pivot set to 0).
    Rest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub depth: usize,
    pub branch: Branch,
    /// Variable count of the function at this node.
    pub n: usize,
    /// Pivot variable, 1-based in this node's numbering. `None` on a memo hit.
    pub pivot: Option<usize>,
    /// Table row used when this node is a base case.
    pub row: Option<CubicWeightCase>,
    pub cached: bool,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algorithm1Run {
    pub weight: u64,
    /// Recursion nodes in pre-order.
    pub trace: Vec<TraceNode>,
}

/// Lowest-indexed variable that occurs in a degree-3 monomial.
pub fn algorithm1_pivot(f: &Anf) -> Option<usize> {
    let cubic_vars = f.monomials().iter().filter(|m| m.count_ones() == 3).fold(0u32, |a, m| a | m);
    (cubic_vars != 0).then(|| cubic_vars.trailing_zeros() as usize + 1)
}

struct Walker {
    memo: BTreeMap<Anf, u64>,
    trace: Vec<TraceNode>,
}

impl Walker {
    fn visit(&mut self, f: Anf, branch: Branch, depth: usize) -> Result<u64> {
        if let Some(&w) = self.memo.get(&f) {
            self.trace.push(TraceNode {
                depth,
                branch,
                n: f.n(),
                pivot: None,
                row: None,
                cached: true,
                weight: w,
            });
            return Ok(w);
        }
        let pivot = algorithm1_pivot(&f).ok_or(Error::NotCubic { found: f.degree() })?;
        let slot = self.trace.len();
        self.trace.push(TraceNode { depth, branch, n: f.n(), pivot: Some(pivot), row: None, cached: false, weight: 0 });
        // f = x_p·g + h = x_p·(g + h) + (1 + x_p)·h
        let (g, h) = f.cofactors(pivot)?;
        let sum = &g + &h;
        let w = if h.degree() <= 2 {
            let (w, row) = cubic_conv_weight(&sum, &h)?;
            self.trace[slot].row = Some(row);
            w
        } else {
            self.visit(sum, Branch::Sum, depth + 1)? + self.visit(h, Branch::Rest, depth + 1)?
        };
        self.trace[slot].weight = w;
        self.memo.insert(f, w);
        Ok(w)
    }
}

/// Weight of a cubic by recursive pivot splitting, with the recursion trace.
/// Memoisation is per call.
pub fn algorithm1(f: &Anf) -> Result<Algorithm1Run> {
    let d = f.degree();
    if d != 3 {
        return Err(Error::NotCubic { found: d });
    }
    let mut walker = Walker { memo: BTreeMap::new(), trace: Vec::new() };
    let weight = walker.visit(f.clone(), Branch::Root, 0)?;
    Ok(Algorithm1Run { weight, trace: walker.trace })
}

pub fn algorithm1_weight(f: &Anf) -> Result<u64> {
    Ok(algorithm1(f)?.weight)
}
