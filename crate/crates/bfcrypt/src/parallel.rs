//! Worker pool plumbing. Every fan-out collects in index order, so results do
//! not depend on the number of workers.

use bfcrypt_core::apn::{m_a, m_a_algebraic, M_SCAN_CAP};
use bfcrypt_core::{Anf, VectorialBf};
use rayon::prelude::*;

use crate::error::CliError;

/// A pool with `threads` workers, or one per available core.
pub fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    if threads == Some(0) {
        return Err(CliError::Infeasible("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Infeasible(e.to_string()))
}

/// `op(λ)` for every nonzero component, in order of `λ`.
pub fn per_component<T, F>(pool: &rayon::ThreadPool, f: &VectorialBf, op: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(u32) -> Result<T, CliError> + Sync + Send,
{
    pool.install(|| (1..=f.component_count()).into_par_iter().map(&op).collect())
}

/// `M(f)`, algebraically for degree at most three and by enumeration otherwise.
pub fn m_value(pool: &rayon::ThreadPool, f: &Anf) -> Result<u64, CliError> {
    let points = 1u32..1 << f.n();
    let parts: Vec<u64> = if f.degree() <= 3 {
        pool.install(|| points.into_par_iter().map(|a| m_a_algebraic(f, a)).collect::<Result<_, _>>())?
    } else {
        if f.n() > M_SCAN_CAP {
            return Err(bfcrypt_core::Error::SizeCap { op: "m_a", n: f.n(), cap: M_SCAN_CAP }.into());
        }
        let t = f.to_truth_table();
        pool.install(|| points.into_par_iter().map(|a| m_a(&t, a)).collect::<Result<_, _>>())?
    };
    Ok(parts.iter().sum())
}

pub fn m_total(pool: &rayon::ThreadPool, f: &VectorialBf) -> Result<u64, CliError> {
    let per = per_component(pool, f, |l| Ok(bfcrypt_core::apn::component_m(f, l)?))?;
    Ok(per.iter().sum())
}

pub fn power_moment_l4(pool: &rayon::ThreadPool, f: &VectorialBf) -> Result<u128, CliError> {
    if f.n() > bfcrypt_core::apn::L4_CAP {
        let cap = bfcrypt_core::apn::L4_CAP;
        return Err(bfcrypt_core::Error::SizeCap { op: "power_moment_l4", n: f.n(), cap }.into());
    }
    let per = per_component(pool, f, |l| Ok(bfcrypt_core::apn::component_l4(f, l)?))?;
    Ok(per.iter().sum())
}
