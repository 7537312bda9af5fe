//! Search for APN functions among pure quadratic `F: F_2^n -> F_2^n`.
//!
//! A candidate is a vector of `n·C(n,2)` coefficient bits, one per
//! (coordinate, pair `x_i x_j`); linear and constant terms are zero because
//! adding affine terms to coordinates does not change `δ(F)`. Candidates pass
//! the filter `M(F) = 2^n(2^n - 1)` and every survivor is checked against its
//! difference table before it is reported.
//!
//! Random candidate `i` is drawn from ChaCha8 seeded with the configured seed
//! on stream `i`, so each candidate is independent of scheduling.

use std::fmt;
use std::str::FromStr;

use bfcrypt_core::apn::{bent_component_count, is_ab, m_apn_value};
use bfcrypt_core::gf2::rank;
use bfcrypt_core::{Anf, VectorialBf};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::format::format_anf;

pub const SEARCH_MAX_VARS: usize = 6;
pub const EXHAUSTIVE_MAX_VARS: usize = 4;
const BATCH: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "random" => Ok(SearchMode::Random),
            _ => Err(format!("unknown mode `{s}`, expected `exhaustive` or `random`")),
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Random => "random",
        })
    }
}

/// Which verified APN functions to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Apn,
    /// APN functions with exactly `K` bent components.
    BentComponents(usize),
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "apn" {
            return Ok(Target::Apn);
        }
        s.strip_prefix("bent-components=")
            .and_then(|k| k.parse().ok())
            .map(Target::BentComponents)
            .ok_or_else(|| format!("unknown target `{s}`, expected `apn` or `bent-components=K`"))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Apn => f.write_str("apn"),
            Target::BentComponents(k) => write!(f, "bent-components={k}"),
        }
    }
}

impl Serialize for Target {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub mode: SearchMode,
    /// Candidates to draw in random mode; ignored by exhaustive mode.
    pub samples: u64,
    pub seed: u64,
    pub target: Target,
    /// Stop after this many hits.
    pub limit: Option<usize>,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let n = self.n;
        if !(2..=SEARCH_MAX_VARS).contains(&n) {
            return Err(CliError::Infeasible(format!("search needs 2 <= n <= {SEARCH_MAX_VARS}, got {n}")));
        }
        if self.mode == SearchMode::Exhaustive && n > EXHAUSTIVE_MAX_VARS {
            return Err(CliError::Infeasible(format!(
                "exhaustive mode needs n <= {EXHAUSTIVE_MAX_VARS}, got {n}"
            )));
        }
        if matches!(self.target, Target::BentComponents(_)) && n % 2 == 1 {
            return Err(CliError::Infeasible("bent components need even n".into()));
        }
        Ok(())
    }

    /// Number of candidates the configuration covers.
    pub fn candidate_count(&self) -> u64 {
        match self.mode {
            SearchMode::Exhaustive => 1 << coefficient_bits(self.n),
            SearchMode::Random => self.samples,
        }
    }

    pub fn candidate(&self, index: u64) -> u128 {
        match self.mode {
            SearchMode::Exhaustive => index as u128,
            SearchMode::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(index);
                rng.gen::<u128>() & coefficient_mask(self.n)
            }
        }
    }
}

/// Pairs `(i, j)`, `i < j`, 0-based, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn coefficient_bits(n: usize) -> usize {
    n * n * (n - 1) / 2
}

fn coefficient_mask(n: usize) -> u128 {
    let bits = coefficient_bits(n);
    if bits == 128 {
        u128::MAX
    } else {
        (1u128 << bits) - 1
    }
}

/// Coordinate `c` uses bits `c·P .. (c+1)·P` with `P = C(n,2)`.
pub fn decode(n: usize, coeffs: u128) -> VectorialBf {
    let pairs = pairs(n);
    let coords: Vec<Anf> = (0..n)
        .map(|c| {
            let ms = pairs
                .iter()
                .enumerate()
                .filter(|(p, _)| coeffs >> (c * pairs.len() + p) & 1 == 1)
                .map(|(_, &(i, j))| (1u32 << i) | (1 << j));
            Anf::from_monomials(n, ms).expect("n within range")
        })
        .collect();
    VectorialBf::from_anfs(&coords).expect("n within range")
}

/// `M(F) = 2^n Σ_λ (2^{n - rank B_λ} - 1)` from the bilinear forms, which
/// are linear in `λ`.
pub fn quadratic_m_total(n: usize, coeffs: u128) -> u64 {
    let pairs = pairs(n);
    let forms: Vec<Vec<u32>> = (0..n)
        .map(|c| {
            let mut rows = vec![0u32; n];
            for (p, &(i, j)) in pairs.iter().enumerate() {
                if coeffs >> (c * pairs.len() + p) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            rows
        })
        .collect();
    let mut sum = 0u64;
    let mut rows = vec![0u32; n];
    for lambda in 1u32..1 << n {
        rows.iter_mut().for_each(|r| *r = 0);
        for (c, form) in forms.iter().enumerate() {
            if lambda >> c & 1 == 1 {
                rows.iter_mut().zip(form).for_each(|(r, f)| *r ^= f);
            }
        }
        sum += (1u64 << (n - rank(&rows))) - 1;
    }
    sum << n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub index: u64,
    pub coordinates: Vec<String>,
    pub delta: u32,
    #[serde(rename = "M")]
    pub m: u64,
    pub bent_components: Option<usize>,
    pub ab: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub mode: SearchMode,
    pub seed: u64,
    pub target: Target,
    /// Candidates examined, up to the last hit when a limit stopped the run.
    pub candidates: u64,
    pub filter_passed: u64,
    pub ddt_verified: u64,
    /// Filter survivors whose difference table disagreed; always 0 for a sound filter.
    pub ddt_rejected: u64,
    pub hits: Vec<Hit>,
}

enum Outcome {
    Filtered,
    Rejected,
    Verified(Hit),
}

fn examine(cfg: &SearchConfig, index: u64) -> Result<Outcome, CliError> {
    let n = cfg.n;
    let coeffs = cfg.candidate(index);
    let m = quadratic_m_total(n, coeffs);
    if m != m_apn_value(n) {
        return Ok(Outcome::Filtered);
    }
    let f = decode(n, coeffs);
    let delta = f.ddt()?.delta();
    if delta != 2 {
        return Ok(Outcome::Rejected);
    }
    let even = n % 2 == 0;
    Ok(Outcome::Verified(Hit {
        index,
        coordinates: f.coordinate_anfs().iter().map(format_anf).collect(),
        delta,
        m,
        bent_components: if even { Some(bent_component_count(&f)?) } else { None },
        ab: if even { None } else { Some(is_ab(&f)?) },
    }))
}

pub fn run(cfg: &SearchConfig, pool: &rayon::ThreadPool) -> Result<SearchReport, CliError> {
    cfg.validate()?;
    let mut report = SearchReport {
        n: cfg.n,
        mode: cfg.mode,
        seed: cfg.seed,
        target: cfg.target,
        candidates: 0,
        filter_passed: 0,
        ddt_verified: 0,
        ddt_rejected: 0,
        hits: Vec::new(),
    };
    let total = cfg.candidate_count();
    let limit = cfg.limit.unwrap_or(usize::MAX);
    let mut start = 0;
    while start < total && report.hits.len() < limit {
        let end = (start + BATCH).min(total);
        let outcomes: Vec<Outcome> =
            pool.install(|| (start..end).into_par_iter().map(|i| examine(cfg, i)).collect::<Result<_, _>>())?;
        for (i, outcome) in (start..end).zip(outcomes) {
            report.candidates = i + 1;
            match outcome {
                Outcome::Filtered => {}
                Outcome::Rejected => {
                    report.filter_passed += 1;
                    report.ddt_rejected += 1;
                }
                Outcome::Verified(hit) => {
                    report.filter_passed += 1;
                    report.ddt_verified += 1;
                    let wanted = match cfg.target {
                        Target::Apn => true,
                        Target::BentComponents(k) => hit.bent_components == Some(k),
                    };
                    if wanted {
                        report.hits.push(hit);
                        if report.hits.len() == limit {
                            break;
                        }
                    }
                }
            }
        }
        start = end;
    }
    Ok(report)
}

impl SearchReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# search n={} mode={} seed={} target={}\n",
            self.n, self.mode, self.seed, self.target
        );
        for h in &self.hits {
            let extra = match (h.bent_components, h.ab) {
                (Some(b), _) => format!("bent_components={b}"),
                (_, Some(ab)) => format!("ab={ab}"),
                _ => String::new(),
            };
            out += &format!("{}\tdelta={}\tM={}\t{}\t{}\n", h.index, h.delta, h.m, extra, h.coordinates.join("; "));
        }
        out += &format!(
            "# candidates={} filter_passed={} ddt_verified={} ddt_rejected={} hits={}\n",
            self.candidates,
            self.filter_passed,
            self.ddt_verified,
            self.ddt_rejected,
            self.hits.len()
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_and_modes_parse() {
        assert_eq!("apn".parse(), Ok(Target::Apn));
        assert_eq!("bent-components=10".parse(), Ok(Target::BentComponents(10)));
        assert!("bent-components=".parse::<Target>().is_err());
        assert_eq!(Target::BentComponents(9).to_string(), "bent-components=9");
        assert_eq!("random".parse(), Ok(SearchMode::Random));
        assert!("all".parse::<SearchMode>().is_err());
    }

    #[test]
    fn validation() {
        let cfg = |n, mode, target| SearchConfig { n, mode, samples: 1, seed: 0, target, limit: None };
        assert!(cfg(4, SearchMode::Exhaustive, Target::Apn).validate().is_ok());
        assert!(matches!(cfg(5, SearchMode::Exhaustive, Target::Apn).validate(), Err(CliError::Infeasible(_))));
        assert!(cfg(3, SearchMode::Random, Target::BentComponents(1)).validate().is_err());
        assert!(cfg(7, SearchMode::Random, Target::Apn).validate().is_err());
    }

    #[test]
    fn quadratic_m_matches_core() {
        let cfg = SearchConfig { n: 5, mode: SearchMode::Random, samples: 50, seed: 9, target: Target::Apn, limit: None };
        for i in 0..50 {
            let c = cfg.candidate(i);
            assert_eq!(quadratic_m_total(5, c), bfcrypt_core::apn::m_total(&decode(5, c)).unwrap());
        }
    }

    #[test]
    fn candidates_stay_in_range() {
        for n in 2..=SEARCH_MAX_VARS {
            let cfg = SearchConfig { n, mode: SearchMode::Random, samples: 10, seed: 1, target: Target::Apn, limit: None };
            for i in 0..10 {
                assert_eq!(cfg.candidate(i) & !coefficient_mask(n), 0);
            }
        }
        assert_eq!(coefficient_bits(4), 24);
    }
}
