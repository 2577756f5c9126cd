//! End-to-end runs: quartic -> sections -> relation -> sextic -> checks over
//! finite fields.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{rat, Domain, QPoly, Rational};
use crate::curve::{
    assert_smooth_quartic, check_section_basis, mu_kernel, uv_vars, z_vars, CurveError, MuKernel, QuarticCurve,
    SectionBasis, SectionReport, SplitRule,
};
use crate::parse::{parse_poly, ParseError};
use crate::relation::{certify_relation, relation_from_matrix, relation_matrix, IdealBlock, RelationError};
use crate::report::{
    CertificateSummary, ClosureNodes, DualEcho, EvenParts, FieldReport, IdealDims, InputEcho, KernelDims,
    ModularNullity, PerturbationEcho, RunReport,
};
use crate::surface::{
    apply_point_transform, cubic_discriminant, decompose_even, primitive_part, pullback_to_p3, x_vars, PointTransform,
    SexticSurface, SurfaceError,
};
use crate::verify::dual::{dual_plane_map, PlaneMap};
use crate::verify::{
    build_g336, dual_curve_samples_check, even_node_census, invariance_scalar, orbit_and_stabilizer, reduce_mod_q,
    FqContext, FqPoly, NodeReport, ProjectivePoint, VerifyError, DEFAULT_BUDGET,
};

/// Node count of the surfaces this crate constructs.
pub const EXPECTED_NODES: usize = 56;

/// Primes used to cross-check the rational nullity of the relation system.
pub const CROSS_CHECK_PRIMES: [u64; 2] = [1_000_000_007, 998_244_353];

/// The quartic and lift used in the reference Klein example.
pub const KLEIN_QUARTIC: &str = "z0*z1^3 + z1*z2^3 + z2*z0^3";
pub const KLEIN_G: &str = "u0*u1*v1^2 + u1*u2*v2^2 + u2*u0*v0^2";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Config,
    ParseInput,
    Smoothness,
    Kernel,
    Split,
    Sections,
    Relation,
    Certificate,
    Surface,
    Discriminant,
    Verify,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Config => "config",
            Stage::ParseInput => "parse_input",
            Stage::Smoothness => "assert_smooth_quartic",
            Stage::Kernel => "mu_kernel",
            Stage::Split => "split_to_bidegree",
            Stage::Sections => "check_section_basis",
            Stage::Relation => "solve_weighted_relation",
            Stage::Certificate => "certify_relation",
            Stage::Surface => "build_surface",
            Stage::Discriminant => "cubic_discriminant",
            Stage::Verify => "verify",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StageError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("stage {stage}: {error}")]
pub struct PipelineError {
    pub stage: Stage,
    pub error: StageError,
}

fn at<E: Into<StageError>>(stage: Stage) -> impl FnOnce(E) -> PipelineError {
    move |e| PipelineError { stage, error: e.into() }
}

/// How the (2,2)-lift `g` of `f` is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GMode {
    Greedy,
    Explicit(String),
}

/// `gtilde -> lambda * gtilde + sum_m coeffs[m] * (m-th product p_ij p_kl)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub coeffs: [Rational; 6],
    pub lambda: Rational,
}

impl FromStr for Perturbation {
    type Err = String;

    /// `c1,...,c6` optionally followed by `;lambda`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (coeffs, lambda) = match s.split_once(';') {
            Some((c, l)) => (c, Some(l)),
            None => (s, None),
        };
        let values: Vec<Rational> = coeffs.split(',').map(parse_rational).collect::<Result<_, _>>()?;
        let coeffs: [Rational; 6] =
            values.try_into().map_err(|v: Vec<Rational>| format!("expected 6 coefficients, got {}", v.len()))?;
        let lambda = lambda.map(parse_rational).transpose()?.unwrap_or_else(|| rat(1));
        Ok(Perturbation { coeffs, lambda })
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|_| format!("not a rational number: {s:?}"))
}

/// A verification field `F_{p^k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
}

impl FromStr for FieldSpec {
    type Err = String;

    /// `p` or `p^k`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (p, k) = s.split_once('^').unwrap_or((s, "1"));
        let p = p.trim().parse().map_err(|_| format!("bad prime in {s:?}"))?;
        let k = k.trim().parse().map_err(|_| format!("bad extension degree in {s:?}"))?;
        Ok(FieldSpec { p, k })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    Quartic { text: String, g: GMode, perturb: Option<Perturbation> },
    Surface { text: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub input: InputSource,
    pub transform: Option<PointTransform>,
    pub fields: Vec<FieldSpec>,
    /// Census budget in projective points per field.
    pub budget: u64,
    /// Automatic perturbations of `gtilde` tried when it is degenerate.
    pub retries: usize,
    /// Skip relation solving and everything after it.
    pub stop_after_kernel: bool,
    /// Compute the order-336 group and orbits over fields containing
    /// 7th roots of unity.
    pub group: bool,
    /// Curve points sampled by the dual-curve check.
    pub dual_samples: usize,
}

impl RunConfig {
    /// The reference Klein example: explicit lift, sign flip of `x1`,
    /// verification over `F_29` and `F_{13^2}`.
    pub fn klein_reference() -> Self {
        RunConfig {
            input: InputSource::Quartic {
                text: KLEIN_QUARTIC.into(),
                g: GMode::Explicit(KLEIN_G.into()),
                perturb: None,
            },
            transform: Some(PointTransform::diagonal([1, -1, 1, 1]).unwrap()),
            fields: vec![FieldSpec { p: 29, k: 1 }, FieldSpec { p: 13, k: 2 }],
            budget: DEFAULT_BUDGET,
            retries: 3,
            stop_after_kernel: false,
            group: true,
            dual_samples: 2000,
        }
    }

    /// Another quartic with the greedy lift, verified over `F_{13^2}`.
    pub fn for_quartic(text: &str) -> Self {
        RunConfig {
            input: InputSource::Quartic { text: text.into(), g: GMode::Greedy, perturb: None },
            transform: None,
            fields: vec![FieldSpec { p: 13, k: 2 }],
            ..Self::klein_reference()
        }
    }

    pub fn for_surface(text: &str) -> Self {
        RunConfig { input: InputSource::Surface { text: text.into() }, transform: None, ..Self::klein_reference() }
    }

    pub fn contexts(&self) -> Result<Vec<FqContext>, PipelineError> {
        self.fields.iter().map(|f| FqContext::new(f.p, f.k).map_err(at(Stage::Config))).collect()
    }

    fn echo(&self, mode: &str) -> InputEcho {
        let mut echo = InputEcho {
            mode: mode.into(),
            fields: self.fields.iter().map(ToString::to_string).collect(),
            budget: self.budget,
            transform: self.transform.as_ref().map(PointTransform::entries_text),
            ..Default::default()
        };
        match &self.input {
            InputSource::Quartic { text, g, .. } => {
                echo.quartic = Some(text.clone());
                echo.g = Some(match g {
                    GMode::Greedy => "greedy".into(),
                    GMode::Explicit(t) => t.clone(),
                });
            }
            InputSource::Surface { text } => echo.surface = Some(text.clone()),
        }
        echo
    }
}

struct Timer<'a> {
    report: &'a mut RunReport,
}

impl Timer<'_> {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.report.timings_ms.entry(name.to_string()).or_insert(0) += start.elapsed().as_millis() as u64;
        out
    }
}

/// Deterministic perturbation used on automatic retry `attempt` (from 1).
/// The first adds `p01^2 + p02^2 + p12^2`.
pub fn retry_perturbation(attempt: usize) -> Perturbation {
    if attempt == 1 {
        let coeffs = [1, 0, 0, 1, 0, 1].map(rat);
        return Perturbation { coeffs, lambda: rat(1) };
    }
    let coeffs = std::array::from_fn(|m| rat(((attempt * (m + 2) * 37 + m) % 7) as i64 - 3));
    Perturbation { coeffs, lambda: rat(1) }
}

fn is_degenerate(e: &PipelineError) -> bool {
    matches!(
        e.error,
        StageError::Curve(CurveError::GTildeInSpan)
            | StageError::Relation(
                RelationError::NullspaceDimZero | RelationError::NullspaceDimHigh(_) | RelationError::MissingVertexTerm
            )
    )
}

/// Outcome of the symbolic part of a construction.
struct Construction {
    curve: QuarticCurve,
    surface: Option<SexticSurface>,
    discriminant: Option<QPoly>,
}

/// Full construction followed by verification over every configured field.
pub fn run_construct(cfg: &RunConfig) -> Result<RunReport, PipelineError> {
    let InputSource::Quartic { text, g, perturb } = &cfg.input else {
        return Err(PipelineError {
            stage: Stage::Config,
            error: StageError::Config("construct needs a quartic".into()),
        });
    };
    let contexts = cfg.contexts()?;
    let mut rejected = Vec::new();
    let mut attempt = 0;
    loop {
        let retry = (attempt > 0).then(|| retry_perturbation(attempt));
        let mut report = RunReport::new(cfg.echo("construct"));
        let built = construct(cfg, text, g, perturb.as_ref().or(retry.as_ref()), &mut report)?;
        if let Some(surface) = &built.surface {
            let map =
                cfg.transform.as_ref().map_or_else(|| dual_plane_map(&PointTransform::identity()), dual_plane_map);
            let dual = built.discriminant.as_ref().zip(map.as_ref()).map(|(d, m)| (&built.curve, d, m));
            verify_fields(cfg, &contexts, surface, dual, &mut report)?;
        }
        if let Some(echo) = &mut report.input.perturbation {
            echo.retries += attempt;
            echo.rejected = rejected.clone();
        }
        match non_nodal(&report) {
            Some(why) if perturb.is_none() && attempt < cfg.retries => {
                rejected.push(format!("attempt {attempt}: {why}"));
                attempt += 1;
            }
            _ => {
                report.finish();
                return Ok(report);
            }
        }
    }
}

/// Evidence that `gtilde` is special: a general one gives exactly
/// `EXPECTED_NODES` ordinary double points over the closure.
fn non_nodal(report: &RunReport) -> Option<String> {
    report.fields.iter().find_map(|f| {
        let bad_rank = |ranks: &BTreeMap<String, usize>| ranks.keys().any(|r| r != "3");
        let closure = f.closure_nodes.as_ref();
        if bad_rank(&f.hessian_ranks) || closure.is_some_and(|c| bad_rank(&c.hessian_ranks)) {
            Some(format!("{}: singular points with Hessian rank below 3 ({:?})", f.field, f.hessian_ranks))
        } else {
            closure
                .filter(|c| c.count > EXPECTED_NODES)
                .map(|c| format!("{}: {} singular points over the closure", f.field, c.count))
        }
    })
}

fn construct(
    cfg: &RunConfig,
    text: &str,
    g: &GMode,
    perturb: Option<&Perturbation>,
    report: &mut RunReport,
) -> Result<Construction, PipelineError> {
    let mut t = Timer { report };
    let f = parse_poly(text, &z_vars()).map_err(at(Stage::ParseInput))?;
    let curve = QuarticCurve::new(f).map_err(at(Stage::ParseInput))?;
    t.report.input.quartic = Some(curve.f().to_string());
    t.time("smoothness", || assert_smooth_quartic(&curve)).map_err(at(Stage::Smoothness))?;

    let kernel = t.time("mu_kernel", || mu_kernel(&curve)).map_err(at(Stage::Kernel))?;
    let rule = match g {
        GMode::Greedy => SplitRule::Greedy,
        GMode::Explicit(text) => SplitRule::Explicit(parse_poly(text, &uv_vars()).map_err(at(Stage::ParseInput))?),
    };
    let base = SectionBasis::new(&curve, rule).map_err(at(Stage::Split))?;
    if let SplitRule::Explicit(g) = &base.provenance.rule {
        t.report.input.g = Some(g.to_string());
    }
    let base = match perturb {
        Some(p) => base.perturb_gtilde(&p.lambda, &p.coeffs).map_err(at(Stage::Split))?,
        None => base,
    };

    if cfg.stop_after_kernel {
        let sr = check_section_basis(&curve, &base).map_err(at(Stage::Sections))?;
        record_kernel(t.report, &kernel, &sr);
        t.report.input.g_tilde = Some(base.g_tilde.to_string());
        return Ok(Construction { curve, surface: None, discriminant: None });
    }

    let block = t.time("ideal_block", || IdealBlock::new(&curve)).map_err(at(Stage::Relation))?;
    t.report.ideal_dims =
        Some(IdealDims { bidegree_66: block.ambient_dim(), ideal_block: block.dim(), quotient: block.quotient_dim() });

    // retry with deterministic perturbations while gtilde is degenerate
    let mut attempt = 0;
    let (sections, section_report, matrix, relation) = loop {
        let sections = if attempt == 0 {
            base.clone()
        } else {
            let p = retry_perturbation(attempt);
            base.perturb_gtilde(&p.lambda, &p.coeffs).map_err(at(Stage::Split))?
        };
        let result = (|| {
            let sr = check_section_basis(&curve, &sections).map_err(at(Stage::Sections))?;
            let m = t.time("relation_matrix", || relation_matrix(&block, &sections));
            let rel = t.time("nullspace", || relation_from_matrix(&m)).map_err(at(Stage::Relation))?;
            Ok::<_, PipelineError>((sr, m, rel))
        })();
        match result {
            Ok((sr, m, rel)) => break (sections, sr, m, rel),
            Err(e) if is_degenerate(&e) && attempt < cfg.retries => attempt += 1,
            Err(e) => return Err(e),
        }
    };
    let prov = &sections.provenance;
    if attempt > 0 || perturb.is_some() {
        t.report.input.perturbation = Some(PerturbationEcho {
            lambda: prov.lambda.to_string(),
            coeffs: prov.product_coeffs.iter().map(ToString::to_string).collect(),
            retries: attempt,
            rejected: Vec::new(),
        });
    }
    t.report.input.g_tilde = Some(sections.g_tilde.to_string());
    record_kernel(t.report, &kernel, &section_report);
    let ideal_ok = (block.ambient_dim(), block.dim(), block.quotient_dim()) == (784, 300, 484);
    t.report.check("ideal_dims", ideal_ok, format!("{}/{}/{}", block.ambient_dim(), block.dim(), block.quotient_dim()));

    t.report.relation = Some(relation.poly.to_string());
    t.report.nullspace_dim = Some(relation.nullspace_dim);
    let nullities: Vec<ModularNullity> =
        CROSS_CHECK_PRIMES.iter().map(|&p| ModularNullity { p, nullity: matrix.nullity_mod_p(p) }).collect();
    let agree = nullities.iter().all(|m| m.nullity == relation.nullspace_dim);
    t.report.check(
        "nullspace_dim",
        relation.nullspace_dim == 1 && agree,
        format!(
            "rational {}, modular {}",
            relation.nullspace_dim,
            nullities.iter().map(|m| m.nullity.to_string()).collect::<Vec<_>>().join("/")
        ),
    );
    t.report.modular_nullities = nullities;

    let cert =
        t.time("certify", || certify_relation(&relation.poly, &curve, &sections)).map_err(at(Stage::Certificate))?;
    t.report.certificate = Some(CertificateSummary { a_terms: cert.a.len(), b_terms: cert.b.len() });
    t.report.check("certificate", true, "rel(sections) = f(u) A + f(v) B verified exactly");

    let mut surface = pullback_to_p3(&relation);
    if let Some(m) = &cfg.transform {
        surface = apply_point_transform(&surface, m);
    }
    t.report.surface = Some(surface.poly.to_string());
    let discriminant = describe_surface(&surface, &mut *t.report, Some(12))?;
    Ok(Construction { curve, surface: Some(surface), discriminant })
}

fn record_kernel(report: &mut RunReport, kernel: &MuKernel, sections: &SectionReport) {
    report.kernel_dims = Some(KernelDims {
        h0_omega2: kernel.h0_omega2,
        sym2: kernel.source_dim,
        h0_omega4: kernel.target_dim,
        mu_rank: kernel.rank,
        ker_mu: kernel.dim(),
        product_rank: sections.product_rank,
        section_rank: sections.total_rank,
    });
    let dims = (kernel.h0_omega2, kernel.source_dim, kernel.target_dim, kernel.dim());
    report.check(
        "kernel_dims",
        dims == (6, 21, 14, 7) && (sections.product_rank, sections.total_rank) == (6, 7),
        format!(
            "h0(2K)={} S^2={} h0(4K)={} ker={} sections {}/{}",
            dims.0, dims.1, dims.2, dims.3, sections.product_rank, sections.total_rank
        ),
    );
}

/// Evenness, graded pieces and discriminant of a sextic. Returns the
/// discriminant when it exists.
fn describe_surface(
    surface: &SexticSurface,
    report: &mut RunReport,
    expected_disc_degree: Option<u32>,
) -> Result<Option<QPoly>, PipelineError> {
    let even = surface.is_x3_even();
    report.check("evenness", even, if even { "only even powers of x3" } else { "odd power of x3 present" });
    let Ok(parts) = decompose_even(surface) else {
        return Ok(None);
    };
    report.even_parts = Some(EvenParts {
        p6: parts.p6.to_string(),
        p4: parts.p4.to_string(),
        p2: parts.p2.to_string(),
        c: parts.c.to_string(),
    });
    if parts.c.is_zero() {
        report.check("disc_degree", false, "x3^6 coefficient vanishes");
        return Ok(None);
    }
    let start = Instant::now();
    let disc = cubic_discriminant(&parts).map_err(at(Stage::Discriminant))?;
    report.timings_ms.insert("discriminant".into(), start.elapsed().as_millis() as u64);
    let degree = disc.total_degree();
    report.disc_degree = degree;
    report.discriminant = Some(primitive_part(&disc).to_string());
    if let Some(expected) = expected_disc_degree {
        report.check(
            "disc_degree",
            degree == Some(expected) && disc.is_homogeneous(),
            format!("degree {}", degree.map_or("-".into(), |d| d.to_string())),
        );
    }
    Ok(Some(disc))
}

/// Verification of an externally supplied sextic.
pub fn run_verify(cfg: &RunConfig) -> Result<RunReport, PipelineError> {
    let InputSource::Surface { text } = &cfg.input else {
        return Err(PipelineError { stage: Stage::Config, error: StageError::Config("verify needs a surface".into()) });
    };
    let contexts = cfg.contexts()?;
    let mut report = RunReport::new(cfg.echo("verify"));
    let poly = parse_poly(text, &x_vars()).map_err(at(Stage::ParseInput))?;
    let surface = SexticSurface::new(poly).map_err(at(Stage::ParseInput))?;
    report.surface = Some(surface.poly.to_string());
    describe_surface(&surface, &mut report, None)?;
    verify_fields(cfg, &contexts, &surface, None, &mut report)?;
    report.finish();
    Ok(report)
}

fn verify_fields(
    cfg: &RunConfig,
    contexts: &[FqContext],
    surface: &SexticSurface,
    dual: Option<(&QuarticCurve, &QPoly, &PlaneMap)>,
    report: &mut RunReport,
) -> Result<(), PipelineError> {
    for (spec, ctx) in cfg.fields.iter().zip(contexts) {
        let name = format!("GF({spec})");
        let start = Instant::now();
        let reduced = reduce_mod_q(surface, ctx).map_err(at(Stage::Verify))?;
        let nodes = NodeReport::compute(&reduced, cfg.budget).map_err(at(Stage::Verify))?;
        let mut entry = FieldReport {
            field: name.clone(),
            p: spec.p,
            k: spec.k,
            singular_count: nodes.singular_count(),
            hessian_ranks: nodes.rank_histogram().into_iter().map(|(r, n)| (r.to_string(), n)).collect(),
            nodes: nodes.points.iter().map(ToString::to_string).collect(),
            orbit_base: None,
            orbit: None,
            stabilizer: None,
            group_order: None,
            orbit_matches_census: None,
            dual: None,
            closure_nodes: None,
        };
        report.check(
            format!("census {name}"),
            nodes.singular_count() == EXPECTED_NODES && nodes.all_ordinary(3),
            format!("{} singular points, Hessian ranks {:?}", nodes.singular_count(), nodes.rank_histogram()),
        );
        match even_node_census(&reduced) {
            Ok(even) => {
                report.check(
                    format!("rational nodes {name}"),
                    even.rational_count() == nodes.singular_count(),
                    format!(
                        "{} of {} singular points over rational plane points are rational, census found {}",
                        even.rational_count(),
                        even.geometric_count(),
                        nodes.singular_count()
                    ),
                );
                entry.closure_nodes = Some(ClosureNodes {
                    count: even.geometric_count(),
                    rational: even.rational_count(),
                    hessian_ranks: even.rank_histogram().into_iter().map(|(r, n)| (r.to_string(), n)).collect(),
                });
            }
            Err(VerifyError::NotX3Even) => {}
            Err(e) => return Err(at(Stage::Verify)(e)),
        }
        if cfg.group && ctx.zeta7.is_some() {
            group_data(ctx, &reduced, &nodes, &mut entry, report, &name)?;
        }
        if let Some((curve, disc, map)) = dual {
            let checked = match dual_curve_samples_check(curve, disc, map, ctx, cfg.dual_samples) {
                Ok(c) => c,
                // nothing to sample over this field
                Err(VerifyError::NoCurvePoints) => {
                    report.timings_ms.insert(format!("field {name}"), start.elapsed().as_millis() as u64);
                    report.fields.push(entry);
                    continue;
                }
                Err(e) => return Err(at(Stage::Verify)(e)),
            };
            let identity: PlaneMap =
                std::array::from_fn(|i| std::array::from_fn(|j| if i == j { rat(1) } else { Rational::zero() }));
            let literal =
                dual_curve_samples_check(curve, disc, &identity, ctx, cfg.dual_samples).map_err(at(Stage::Verify))?;
            report.check(
                format!("dual curve {name}"),
                checked.passed(),
                format!("{}/{} sampled dual points on the discriminant", checked.vanishing, checked.sampled),
            );
            entry.dual = Some(DualEcho {
                curve_points: checked.curve_points,
                sampled: checked.sampled,
                vanishing: checked.vanishing,
                literal_vanishing: literal.vanishing,
            });
        }
        report.timings_ms.insert(format!("field {name}"), start.elapsed().as_millis() as u64);
        report.fields.push(entry);
    }
    Ok(())
}

/// Group certificate over a field with 7th roots of unity; recorded only
/// when the surface is invariant under both generators.
fn group_data(
    ctx: &FqContext,
    reduced: &FqPoly,
    nodes: &NodeReport,
    entry: &mut FieldReport,
    report: &mut RunReport,
    name: &str,
) -> Result<(), PipelineError> {
    let group = match build_g336(ctx) {
        Ok(g) => g,
        Err(e) => {
            report.check(format!("group {name}"), false, e.to_string());
            return Ok(());
        }
    };
    if group.generators.iter().any(|g| invariance_scalar(reduced, g).is_err()) {
        return Ok(());
    }
    let field = ctx.field;
    let ones = ProjectivePoint(vec![field.one(); 4]);
    let Some(base) = nodes.points.iter().find(|p| **p == ones).or(nodes.points.first()) else {
        return Ok(());
    };
    let (orbit, stabilizer) = orbit_and_stabilizer(&group, base);
    let matches = orbit == nodes.points;
    entry.orbit_base = Some(base.to_string());
    entry.orbit = Some(orbit.len());
    entry.stabilizer = Some(stabilizer);
    entry.group_order = Some(group.order());
    entry.orbit_matches_census = Some(matches);
    report.check(
        format!("group {name}"),
        matches && orbit.len() * stabilizer == group.order(),
        format!("order {}, orbit {}, stabilizer {}", group.order(), orbit.len(), stabilizer),
    );
    Ok(())
}
