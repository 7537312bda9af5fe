mod common;

use bfcrypt_core::cubic::{
    algorithm1, algorithm1_weight, cubic_conv_balanced, cubic_conv_weight, cubic_nl_bound,
    cubic_nl_case, CubicWeightCase,
};
use bfcrypt_core::spectrum::nonlinearity;
use bfcrypt_core::split::{
    consecutive_blocks, genconv_balanced, genconv_nl_bound, genconv_walsh, genconv_weight,
    monomial_sum, monomial_sum_nl, monomial_sum_weight, multi_split_fourier, split_fourier,
    split_weight,
};
use bfcrypt_core::{conv_product, direct_sum, wht, Anf};
use common::*;
use rand::Rng;

#[test]
fn split_forms_match_reassembled_function() {
    for s in 1..=2 {
        for g in all_anfs(s, s) {
            for h in all_anfs(4 - s, 2) {
                let t = direct_sum(&g, &h).unwrap().to_truth_table();
                assert_eq!(split_fourier(&g, &h), Ok(t.fourier()));
                assert_eq!(split_weight(&g, &h), Ok(t.weight()));
            }
        }
    }
    let mut rng = rng(31);
    for _ in 0..200 {
        let s = rng.gen_range(1..6);
        let g = random_anf(&mut rng, s, s);
        let h = random_anf(&mut rng, 6 - s, 6 - s);
        let t = direct_sum(&g, &h).unwrap().to_truth_table();
        assert_eq!(split_fourier(&g, &h), Ok(t.fourier()));
        assert_eq!(split_weight(&g, &h), Ok(t.weight()));
    }
}

#[test]
fn direct_sum_balanced_iff_a_part_is() {
    for g in all_anfs(2, 2) {
        for h in all_anfs(2, 2) {
            let (tg, th) = (g.to_truth_table(), h.to_truth_table());
            let f = direct_sum(&g, &h).unwrap().to_truth_table();
            assert_eq!(f.is_balanced(), tg.is_balanced() || th.is_balanced());
        }
    }
}

#[test]
fn multi_split_matches_brute_force() {
    // all ways to cut four variables into consecutive blocks, all parts
    for cuts in 0..8u32 {
        let mut sizes = vec![1usize];
        for i in 0..3 {
            if cuts >> i & 1 == 1 {
                sizes.push(1);
            } else {
                *sizes.last_mut().unwrap() += 1;
            }
        }
        let mut rng = rng(32 + cuts as u64);
        for _ in 0..64 {
            let parts: Vec<Anf> = sizes.iter().map(|&s| random_anf(&mut rng, s, s)).collect();
            let placed = consecutive_blocks(&parts, 4).unwrap();
            let sum = placed.iter().fold(Anf::zero(4).unwrap(), |acc, p| &acc + p);
            assert_eq!(multi_split_fourier(&placed, 4), Ok(sum.to_truth_table().fourier()));
        }
    }
    let mut rng = rng(33);
    for _ in 0..200 {
        let sizes = [rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2)];
        let parts: Vec<Anf> = sizes.iter().map(|&s| random_anf(&mut rng, s, s)).collect();
        let placed = consecutive_blocks(&parts, 6).unwrap();
        let sum = placed.iter().fold(Anf::zero(6).unwrap(), |acc, p| &acc + p);
        assert_eq!(multi_split_fourier(&placed, 6), Ok(sum.to_truth_table().fourier()));
    }
}

#[test]
fn monomial_sums_match_brute_force() {
    for n in 1..=10 {
        for m in 1..=n {
            for k in 1..=n / m {
                let t = monomial_sum(m, k, n).unwrap().to_truth_table();
                assert_eq!(monomial_sum_weight(m, k, n), Ok(t.weight()), "m={m} k={k} n={n}");
                if m > 1 {
                    assert_eq!(monomial_sum_nl(m, k, n), Ok(nonlinearity(&t)), "m={m} k={k} n={n}");
                }
            }
        }
    }
}

#[test]
fn genconv_closed_forms_exhaustive() {
    for n in 2..=3 {
        let fs: Vec<Anf> = all_anfs(n, 2).collect();
        for m in 1..=3 {
            for g in &fs {
                for h in &fs {
                    let f = conv_product(g, h, m).unwrap().to_truth_table();
                    assert_eq!(genconv_weight(g, h, m), Ok(f.weight()));
                    assert_eq!(genconv_balanced(g, h, m), Ok(f.is_balanced()));
                }
            }
        }
    }
}

#[test]
fn cubic_table_exhaustive() {
    for n in 2..=3 {
        let fs: Vec<Anf> = all_anfs(n, 2).collect();
        for g in &fs {
            for h in &fs {
                let f = conv_product(g, h, 1).unwrap().to_truth_table();
                let (w, case) = cubic_conv_weight(g, h).unwrap();
                assert_eq!(w, f.weight(), "g={g:?} h={h:?}");
                if let Some(row_w) = case.weight(n) {
                    assert_eq!(row_w, w);
                }
                if case == CubicWeightCase::NotCubic {
                    assert!((g + h).degree() <= 1);
                }
                assert_eq!(cubic_conv_balanced(g, h), Ok(f.is_balanced()), "g={g:?} h={h:?}");
                let bound = cubic_nl_bound(cubic_nl_case(g, h).unwrap(), n);
                assert!(nonlinearity(&f) >= bound);
            }
        }
    }
}

#[test]
fn every_table_row_occurs() {
    let fs: Vec<Anf> = all_anfs(3, 2).collect();
    let mut seen = [false; 14];
    for g in &fs {
        for h in &fs {
            let (_, case) = cubic_conv_weight(g, h).unwrap();
            seen[case.row().unwrap_or(0)] = true;
        }
    }
    assert!(seen.iter().all(|&s| s), "{seen:?}");
}

#[test]
fn genconv_walsh_matches_transform() {
    let mut rng = rng(34);
    for _ in 0..100 {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=10 - m);
        let g = random_anf(&mut rng, n, n);
        let h = random_anf(&mut rng, n, n);
        let f = conv_product(&g, &h, m).unwrap().to_truth_table();
        let s = wht(&f);
        for alpha in 0..1u32 << (n + m) {
            assert_eq!(genconv_walsh(&g, &h, m, alpha), Ok(s.get(alpha)));
        }
        assert!(s.nonlinearity() >= genconv_nl_bound(&g, &h, m).unwrap());
    }
}

#[test]
fn algorithm1_matches_popcount() {
    let mut rng = rng(35);
    for n in 3..=10 {
        for _ in 0..100 {
            let f = random_cubic(&mut rng, n);
            let run = algorithm1(&f).unwrap();
            assert_eq!(run.weight, f.to_truth_table().weight(), "{f:?}");
            assert_eq!(run.trace[0].weight, run.weight);
            assert!(run.trace.iter().all(|node| node.cached || node.pivot.is_some()));
        }
    }
    assert!(algorithm1_weight(&anf(3, &[&[1, 2]])).is_err());
}
