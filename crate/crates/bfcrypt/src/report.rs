//! JSON-serialisable reports. Field names are part of the CLI contract.

use bfcrypt_core::cubic::{algorithm1, Algorithm1Run, Branch};
use bfcrypt_core::quadratic::{classify_quadratic, linear_space, linear_space_quadratic, QuadraticKind};
use bfcrypt_core::spectrum::{is_bent, is_semi_bent};
use bfcrypt_core::{wht, Anf, VectorialBf};
use serde::Serialize;

use crate::error::CliError;
use crate::format::format_anf;
use crate::parallel;

/// Largest `n` for which `analyze` computes `M(f)`; beyond it the field is null.
pub const ANALYZE_M_CAP: usize = 14;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub n: usize,
    pub anf: String,
    pub degree: usize,
    pub weight: u64,
    pub balanced: bool,
    pub nl: u64,
    pub linearity: u64,
    /// Null for odd `n`.
    pub bent: Option<bool>,
    /// Null for even `n`.
    pub semi_bent: Option<bool>,
    /// Null when the generic scan would exceed its cap.
    #[serde(rename = "dimV")]
    pub dim_v: Option<usize>,
    #[serde(rename = "M")]
    pub m: Option<u64>,
    /// Present for functions of degree exactly two.
    pub quadratic: Option<QuadraticReport>,
    /// Present for functions of degree exactly three.
    pub algorithm1: Option<Algorithm1Report>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct QuadraticReport {
    pub k: usize,
    pub kind: &'static str,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Algorithm1Report {
    pub weight: u64,
    pub trace: Vec<TraceEntry>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TraceEntry {
    pub depth: usize,
    pub branch: &'static str,
    pub n: usize,
    pub pivot: Option<usize>,
    /// Row of the cubic weight table for base cases.
    pub row: Option<usize>,
    pub case: Option<&'static str>,
    pub cached: bool,
    pub weight: u64,
}

impl From<&Algorithm1Run> for Algorithm1Report {
    fn from(run: &Algorithm1Run) -> Self {
        let trace = run
            .trace
            .iter()
            .map(|node| TraceEntry {
                depth: node.depth,
                branch: match node.branch {
                    Branch::Root => "root",
                    Branch::Sum => "g+h",
                    Branch::Rest => "h",
                },
                n: node.n,
                pivot: node.pivot,
                row: node.row.and_then(|r| r.row()),
                case: node.row.map(|r| r.label()),
                cached: node.cached,
                weight: node.weight,
            })
            .collect();
        Algorithm1Report { weight: run.weight, trace }
    }
}

fn kind_name(kind: QuadraticKind) -> &'static str {
    match kind {
        QuadraticKind::Balanced => "balanced",
        QuadraticKind::UnbalancedPlus => "q",
        QuadraticKind::UnbalancedMinus => "q̄",
    }
}

fn dim_v(f: &Anf) -> Result<Option<usize>, CliError> {
    if f.degree() <= 2 {
        return Ok(Some(linear_space_quadratic(f)?.dim()));
    }
    match linear_space(&f.to_truth_table()) {
        Ok(v) => Ok(Some(v.dim())),
        Err(bfcrypt_core::Error::SizeCap { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn analyze(pool: &rayon::ThreadPool, f: &Anf) -> Result<AnalysisReport, CliError> {
    let n = f.n();
    let t = f.to_truth_table();
    let spectrum = wht(&t);
    let degree = f.degree();
    let run = if degree == 3 { Some(algorithm1(f)?) } else { None };
    let quadratic = if degree == 2 {
        let c = classify_quadratic(f)?;
        Some(QuadraticReport { k: c.k, kind: kind_name(c.kind), dim_v: c.dim_v })
    } else {
        None
    };
    let m = if n > ANALYZE_M_CAP {
        None
    } else {
        match parallel::m_value(pool, f) {
            Ok(m) => Some(m),
            Err(CliError::Core(bfcrypt_core::Error::SizeCap { .. })) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(AnalysisReport {
        n,
        anf: format_anf(f),
        degree,
        weight: run.as_ref().map_or(t.weight(), |r| r.weight),
        balanced: t.is_balanced(),
        nl: spectrum.nonlinearity(),
        linearity: spectrum.linearity(),
        bent: is_bent(&t).ok(),
        semi_bent: is_semi_bent(&t).ok(),
        dim_v: dim_v(f)?,
        m,
        quadratic,
        algorithm1: run.as_ref().map(Algorithm1Report::from),
    })
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let mut out = format!(
            "n           {}\nanf         {}\ndegree      {}\nweight      {}\nbalanced    {}\n\
             nl          {}\nlinearity   {}\n",
            self.n, self.anf, self.degree, self.weight, self.balanced, self.nl, self.linearity
        );
        if let Some(b) = self.bent {
            out += &format!("bent        {b}\n");
        }
        if let Some(b) = self.semi_bent {
            out += &format!("semi_bent   {b}\n");
        }
        out += &format!("dimV        {}\n", opt(self.dim_v.map(|d| d.to_string())));
        out += &format!("M           {}\n", opt(self.m.map(|m| m.to_string())));
        if let Some(q) = &self.quadratic {
            out += &format!("quadratic   k={} kind={} dimV={}\n", q.k, q.kind, q.dim_v);
        }
        if let Some(a) = &self.algorithm1 {
            out += &format!("algorithm1  weight={} nodes={}\n", a.weight, a.trace.len());
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ComponentReport {
    pub lambda: u32,
    pub weight: u64,
    pub nl: u64,
    #[serde(rename = "dimV")]
    pub dim_v: Option<usize>,
    #[serde(rename = "M")]
    pub m: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VbfReport {
    pub degree: usize,
    pub permutation: bool,
    pub delta: u32,
    pub apn: bool,
    #[serde(rename = "L4")]
    pub l4: u128,
    #[serde(rename = "M")]
    pub m: u64,
    /// Null for odd `n`.
    pub bent_components: Option<usize>,
    /// Null for even `n`.
    pub ab: Option<bool>,
    pub per_component: Vec<ComponentReport>,
}

struct ComponentFacts {
    report: ComponentReport,
    degree: usize,
    l4: u128,
    bent: Option<bool>,
    semi_bent: Option<bool>,
}

pub fn analyze_vbf(pool: &rayon::ThreadPool, f: &VectorialBf) -> Result<VbfReport, CliError> {
    let n = f.n();
    let ddt = f.ddt()?;
    if n > bfcrypt_core::apn::L4_CAP {
        let cap = bfcrypt_core::apn::L4_CAP;
        return Err(bfcrypt_core::Error::SizeCap { op: "power_moment_l4", n, cap }.into());
    }
    let facts = parallel::per_component(pool, f, |lambda| {
        let t = f.component(lambda)?;
        let anf = Anf::from_truth_table(&t);
        let s = wht(&t);
        let m = if anf.degree() <= 3 {
            bfcrypt_core::apn::m_profile_algebraic(&anf)?.total()
        } else {
            bfcrypt_core::apn::m_profile_generic(&t)?.total()
        };
        Ok(ComponentFacts {
            report: ComponentReport { lambda, weight: t.weight(), nl: s.nonlinearity(), dim_v: dim_v(&anf)?, m },
            degree: anf.degree(),
            l4: s.fourth_moment(),
            bent: is_bent(&t).ok(),
            semi_bent: is_semi_bent(&t).ok(),
        })
    })?;
    let even = n % 2 == 0;
    Ok(VbfReport {
        degree: facts.iter().map(|c| c.degree).max().unwrap_or(0),
        permutation: f.is_permutation(),
        delta: ddt.delta(),
        apn: ddt.delta() == 2,
        l4: facts.iter().map(|c| c.l4).sum(),
        m: facts.iter().map(|c| c.report.m).sum(),
        bent_components: even.then(|| facts.iter().filter(|c| c.bent == Some(true)).count()),
        ab: (!even).then(|| facts.iter().all(|c| c.semi_bent == Some(true))),
        per_component: facts.into_iter().map(|c| c.report).collect(),
    })
}

impl VbfReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "degree           {}\npermutation      {}\ndelta            {}\napn              {}\n\
             L4               {}\nM                {}\n",
            self.degree, self.permutation, self.delta, self.apn, self.l4, self.m
        );
        if let Some(b) = self.bent_components {
            out += &format!("bent_components  {b}\n");
        }
        if let Some(ab) = self.ab {
            out += &format!("ab               {ab}\n");
        }
        out += "lambda  weight  nl  dimV  M\n";
        for c in &self.per_component {
            let dim = c.dim_v.map_or("-".into(), |d| d.to_string());
            out += &format!("{:<7} {:<7} {:<3} {:<5} {}\n", c.lambda, c.weight, c.nl, dim, c.m);
        }
        out
    }
}
