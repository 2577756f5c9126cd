//! Machine-readable run reports.
//!
//! Polynomials and rationals are carried as canonical text; counts are
//! integers. Apart from `timings_ms`, a report depends only on its inputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub mode: String,
    pub quartic: Option<String>,
    pub g: Option<String>,
    pub g_tilde: Option<String>,
    pub perturbation: Option<PerturbationEcho>,
    pub transform: Option<Vec<String>>,
    pub surface: Option<String>,
    pub fields: Vec<String>,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerturbationEcho {
    pub lambda: String,
    pub coeffs: Vec<String>,
    /// Number of automatic retries that were needed (0 for user-supplied).
    pub retries: usize,
    /// Why earlier automatic attempts were discarded.
    pub rejected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelDims {
    pub h0_omega2: usize,
    pub sym2: usize,
    pub h0_omega4: usize,
    pub mu_rank: usize,
    pub ker_mu: usize,
    pub product_rank: usize,
    pub section_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealDims {
    pub bidegree_66: usize,
    pub ideal_block: usize,
    pub quotient: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularNullity {
    pub p: u64,
    pub nullity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub a_terms: usize,
    pub b_terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenParts {
    pub p6: String,
    pub p4: String,
    pub p2: String,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualEcho {
    pub curve_points: usize,
    pub sampled: usize,
    pub vanishing: usize,
    /// Vanishing count with the raw gradient as the plane point.
    pub literal_vanishing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldReport {
    pub field: String,
    pub p: u64,
    pub k: u32,
    pub singular_count: usize,
    /// Hessian rank -> number of singular points.
    pub hessian_ranks: BTreeMap<String, usize>,
    pub nodes: Vec<String>,
    pub orbit_base: Option<String>,
    pub orbit: Option<usize>,
    pub stabilizer: Option<usize>,
    pub group_order: Option<usize>,
    pub orbit_matches_census: Option<bool>,
    pub dual: Option<DualEcho>,
    /// Singular points over the algebraic closure lying over rational
    /// points of the `x0, x1, x2` plane (x3-even surfaces only).
    pub closure_nodes: Option<ClosureNodes>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureNodes {
    pub count: usize,
    /// How many of them are defined over the field.
    pub rational: usize,
    pub hessian_ranks: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub input: InputEcho,
    pub kernel_dims: Option<KernelDims>,
    pub ideal_dims: Option<IdealDims>,
    pub relation: Option<String>,
    pub nullspace_dim: Option<usize>,
    pub modular_nullities: Vec<ModularNullity>,
    pub certificate: Option<CertificateSummary>,
    pub surface: Option<String>,
    pub even_parts: Option<EvenParts>,
    pub disc_degree: Option<u32>,
    pub discriminant: Option<String>,
    pub fields: Vec<FieldReport>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub timings_ms: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn new(input: InputEcho) -> Self {
        RunReport {
            input,
            kernel_dims: None,
            ideal_dims: None,
            relation: None,
            nullspace_dim: None,
            modular_nullities: Vec::new(),
            certificate: None,
            surface: None,
            even_parts: None,
            disc_degree: None,
            discriminant: None,
            fields: Vec::new(),
            checks: Vec::new(),
            verdict: Verdict::Pass,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// PASS iff every recorded check passed.
    pub fn finish(&mut self) {
        self.verdict = if self.checks.iter().all(|c| c.passed) { Verdict::Pass } else { Verdict::Fail };
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

pub fn emit_report(report: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialises");
            s.push('\n');
            s
        }
        ReportFormat::Text => text_report(report),
    }
}

fn text_report(r: &RunReport) -> String {
    let mut out = String::new();
    let opt = |s: &Option<String>| s.clone().unwrap_or_else(|| "-".into());
    let _ = writeln!(out, "mode: {}", r.input.mode);
    if let Some(q) = &r.input.quartic {
        let _ = writeln!(out, "quartic: {q}");
    }
    if let Some(g) = &r.input.g {
        let _ = writeln!(out, "g: {g}");
    }
    if let Some(p) = &r.input.perturbation {
        let _ =
            writeln!(out, "perturbation: lambda={} coeffs=[{}] retries={}", p.lambda, p.coeffs.join(", "), p.retries);
        for r in &p.rejected {
            let _ = writeln!(out, "  rejected {r}");
        }
    }
    if let Some(t) = &r.input.transform {
        let _ = writeln!(out, "transform: [{}]", t.join(", "));
    }
    if let Some(k) = &r.kernel_dims {
        let _ = writeln!(
            out,
            "kernel: h0(2K)={} S^2={} h0(4K)={} rank(mu)={} ker(mu)={} sections rank {}/{}",
            k.h0_omega2, k.sym2, k.h0_omega4, k.mu_rank, k.ker_mu, k.product_rank, k.section_rank
        );
    }
    if let Some(d) = &r.ideal_dims {
        let _ = writeln!(out, "ideal: (6,6)-forms={} block={} quotient={}", d.bidegree_66, d.ideal_block, d.quotient);
    }
    if r.relation.is_some() {
        let _ = writeln!(out, "relation: {}", opt(&r.relation));
    }
    if let Some(n) = r.nullspace_dim {
        let modular: Vec<String> = r.modular_nullities.iter().map(|m| format!("{} mod {}", m.nullity, m.p)).collect();
        let _ = writeln!(out, "nullspace dim: {n} ({})", modular.join(", "));
    }
    if let Some(c) = &r.certificate {
        let _ = writeln!(out, "certificate: A has {} terms, B has {} terms", c.a_terms, c.b_terms);
    }
    let _ = writeln!(out, "surface: {}", opt(&r.surface));
    if let Some(e) = &r.even_parts {
        let _ = writeln!(out, "p6: {}\np4: {}\np2: {}\nc: {}", e.p6, e.p4, e.p2, e.c);
    }
    if let Some(d) = r.disc_degree {
        let _ = writeln!(out, "discriminant degree: {d}");
    }
    for f in &r.fields {
        let ranks: Vec<String> = f.hessian_ranks.iter().map(|(k, v)| format!("rank {k}: {v}")).collect();
        let _ = writeln!(out, "{}: {} singular points ({})", f.field, f.singular_count, ranks.join(", "));
        if let (Some(o), Some(s), Some(g)) = (f.orbit, f.stabilizer, f.group_order) {
            let _ = writeln!(
                out,
                "  group order {g}, orbit of {} has size {o}, stabilizer {s}, equals census: {}",
                opt(&f.orbit_base),
                f.orbit_matches_census.unwrap_or(false)
            );
        }
        if let Some(c) = &f.closure_nodes {
            let ranks: Vec<String> = c.hessian_ranks.iter().map(|(k, v)| format!("rank {k}: {v}")).collect();
            let _ = writeln!(
                out,
                "  over the closure: {} singular points above rational plane points ({}), {} rational",
                c.count,
                ranks.join(", "),
                c.rational
            );
        }
        if let Some(d) = &f.dual {
            let _ = writeln!(
                out,
                "  dual curve: {}/{} sampled points on the discriminant (raw gradient: {})",
                d.vanishing, d.sampled, d.literal_vanishing
            );
        }
    }
    for c in &r.checks {
        let _ = writeln!(out, "[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    let timings: Vec<String> = r.timings_ms.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "timings (ms): {}", timings.join(" "));
    let _ = writeln!(out, "verdict: {}", r.verdict.as_str());
    out
}
