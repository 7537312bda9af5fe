#![allow(dead_code)]

use bfcrypt_core::{Anf, TruthTable, VectorialBf};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn anf(n: usize, terms: &[&[usize]]) -> Anf {
    Anf::from_terms(n, terms).unwrap()
}

/// Monomial masks on `n` variables with degree at most `d`, in increasing order.
pub fn monomials_up_to(n: usize, d: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|m| m.count_ones() as usize <= d).collect()
}

/// Every function on `n` variables of degree at most `d`.
pub fn all_anfs(n: usize, d: usize) -> impl Iterator<Item = Anf> {
    let basis = monomials_up_to(n, d);
    assert!(basis.len() < 32);
    (0..1u64 << basis.len()).map(move |sel| {
        let ms = basis.iter().enumerate().filter(|(i, _)| sel >> i & 1 == 1).map(|(_, &m)| m);
        Anf::from_monomials(n, ms).unwrap()
    })
}

pub fn random_anf<R: Rng>(rng: &mut R, n: usize, d: usize) -> Anf {
    let ms = monomials_up_to(n, d).into_iter().filter(|_| rng.gen::<bool>());
    Anf::from_monomials(n, ms).unwrap()
}

/// Random function of degree exactly 3.
pub fn random_cubic<R: Rng>(rng: &mut R, n: usize) -> Anf {
    loop {
        let f = random_anf(rng, n, 3);
        if f.degree() == 3 {
            return f;
        }
    }
}

pub fn random_table<R: Rng>(rng: &mut R, n: usize) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.gen()).unwrap()
}

/// Random `F` whose coordinates have degree at most `d`, with `deg F` in `lo..=d`.
pub fn random_vbf<R: Rng>(rng: &mut R, n: usize, lo: usize, d: usize) -> VectorialBf {
    loop {
        let coords: Vec<Anf> = (0..n).map(|_| random_anf(rng, n, d)).collect();
        let f = VectorialBf::from_anfs(&coords).unwrap();
        if f.degree().unwrap() >= lo {
            return f;
        }
    }
}

/// Pure quadratic `F`: no affine terms in any coordinate.
pub fn random_pure_quadratic<R: Rng>(rng: &mut R, n: usize) -> VectorialBf {
    let quads: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() == 2).collect();
    let coords: Vec<Anf> = (0..n)
        .map(|_| Anf::from_monomials(n, quads.iter().copied().filter(|_| rng.gen::<bool>())).unwrap())
        .collect();
    VectorialBf::from_anfs(&coords).unwrap()
}

pub fn eval_naive(f: &Anf, x: u32) -> bool {
    f.monomials().iter().filter(|&&m| x & m == m).count() % 2 == 1
}

pub fn weight_naive(f: &Anf) -> u64 {
    (0..1u32 << f.n()).filter(|&x| eval_naive(f, x)).count() as u64
}

pub fn walsh_naive(t: &TruthTable, a: u32) -> i64 {
    (0..t.len() as u32)
        .map(|x| if t.get(x) ^ ((a & x).count_ones() % 2 == 1) { -1 } else { 1 })
        .sum()
}

/// Minimum distance to all `2^{n+1}` affine functions.
pub fn nonlinearity_naive(t: &TruthTable) -> u64 {
    let mut best = u64::MAX;
    for a in 0..t.len() as u32 {
        let d = (0..t.len() as u32).filter(|&x| t.get(x) != ((a & x).count_ones() % 2 == 1)).count() as u64;
        best = best.min(d).min(t.len() as u64 - d);
    }
    best
}

pub fn anf_strategy(n: usize, d: usize) -> impl Strategy<Value = Anf> {
    let basis = monomials_up_to(n, d);
    proptest::collection::vec(any::<bool>(), basis.len()).prop_map(move |sel| {
        let ms = basis.iter().zip(sel).filter(|(_, s)| *s).map(|(&m, _)| m);
        Anf::from_monomials(n, ms).unwrap()
    })
}

pub fn table_strategy(n: usize) -> impl Strategy<Value = TruthTable> {
    proptest::collection::vec(any::<bool>(), 1 << n)
        .prop_map(move |bits| TruthTable::from_bits(n, &bits).unwrap())
}

/// Multiplication in `F_2[x]/(poly)`, where `poly` includes the leading term.
pub fn gf_mul(mut a: u32, mut b: u32, n: usize, poly: u32) -> u32 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> n & 1 == 1 {
            a ^= poly;
        }
    }
    r
}

/// `x ↦ x^3` over `F_{2^n}`: APN for every `n`, pure quadratic.
pub fn cube_map(n: usize) -> VectorialBf {
    let poly = match n {
        3 => 0b1011,
        4 => 0b10011,
        5 => 0b100101,
        6 => 0b1000011,
        _ => panic!("no modulus for n={n}"),
    };
    let values: Vec<u32> = (0..1u32 << n).map(|x| gf_mul(gf_mul(x, x, n, poly), x, n, poly)).collect();
    VectorialBf::from_values(n, &values).unwrap()
}

fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Vec<u32> {
    loop {
        let rows: Vec<u32> = (0..n).map(|_| rng.gen_range(1..1u32 << n)).collect();
        if bfcrypt_core::gf2::rank(&rows) == n {
            return rows;
        }
    }
}

/// `A ∘ F ∘ B` for random invertible linear `A`, `B`; preserves APN-ness and degree.
pub fn linear_conjugate<R: Rng>(rng: &mut R, f: &VectorialBf) -> VectorialBf {
    let n = f.n();
    let (a, b) = (random_invertible(rng, n), random_invertible(rng, n));
    let mv = |rows: &[u32], x: u32| bfcrypt_core::gf2::mat_vec(rows, x);
    let values: Vec<u32> = (0..1u32 << n).map(|x| mv(&a, f.value(mv(&b, x)))).collect();
    VectorialBf::from_values(n, &values).unwrap()
}
