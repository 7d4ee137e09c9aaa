//! Job-file driven front end shared by the `formdepth` binary and the C ABI.

pub mod job;
pub mod report;
mod suites;

use std::sync::Arc;
use std::time::Instant;

use crate::arrangement::{
    arrangement_betti_formula, build_frak_s, build_gamma, is_generic, is_reduction, normalize_to_coordinates,
    verify_frak_s_identity, verify_minors_identity, Arrangement,
};
use crate::error::{Error, Result};
use crate::groebner::IdealBasis;
use crate::planeclassify::{classify_conic_pair, family_freeness_scan};
use crate::poly::{Polynomial, Ring};
use crate::productforms::{
    criteria_evaluate, fold_products, general_forms_betti, gradient_ideal, heights_check, rty_check, FormSystem,
};
use crate::resolution::homological_profile;
use crate::scalar::{Field, Scalar, DEFAULT_PRIME};

pub use job::{Command, FieldSpec, JobOptions, JobSpec};
pub use report::{canonical, Report};
pub use suites::SUITES;

pub const DEFAULT_R_MAX: u32 = 8;
pub const DEFAULT_TRIALS: usize = 20;

/// Command-line flags; each wins over the job file's `options`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub r_max: Option<u32>,
    pub suite: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

/// Runs `command`, or the job's own command (default `rty`) when `None`.
pub fn run(command: Option<Command>, job: Option<&JobSpec>, ov: &Overrides) -> Outcome {
    let start = Instant::now();
    let resolved = match (command, job.and_then(|j| j.command.as_deref())) {
        (Some(c), _) => Ok(c),
        (None, Some(name)) => Command::parse(name),
        (None, None) => Ok(Command::Rty),
    };
    let mut report = Report::new(resolved.as_ref().map(|c| c.name()).unwrap_or("unknown"));
    let result = resolved.and_then(|cmd| {
        let ctx = Ctx::new(job, ov);
        match cmd {
            Command::Rty => rty(&ctx, &mut report),
            Command::Arrangement => arrangement(&ctx, &mut report),
            Command::Classify2q => classify2q(&ctx, &mut report),
            Command::BettiPredict => betti_predict(&ctx, &mut report),
            Command::Reduction => reduction(&ctx, &mut report),
            Command::Criteria => criteria(&ctx, &mut report),
            Command::VerifySuite => suites::verify(&ctx, &mut report),
        }
    });
    let exit_code = match result {
        Ok(code) => code,
        Err(e) => {
            report.error = Some((&e).into());
            e.exit_code()
        }
    };
    report.engine.elapsed_ms = start.elapsed().as_millis() as u64;
    Outcome { report, exit_code }
}

/// Parses a job document and runs it; malformed documents yield an error report.
pub fn run_json(text: &str, command: Option<Command>, ov: &Overrides) -> Outcome {
    match JobSpec::from_json(text) {
        Ok(job) => run(command, Some(&job), ov),
        Err(e) => {
            let mut report = Report::new(command.map(|c| c.name()).unwrap_or("unknown"));
            report.error = Some((&e).into());
            Outcome { report, exit_code: e.exit_code() }
        }
    }
}

pub(crate) struct Ctx<'a> {
    job: Option<&'a JobSpec>,
    opts: JobOptions,
}

impl<'a> Ctx<'a> {
    fn new(job: Option<&'a JobSpec>, ov: &Overrides) -> Self {
        let mut opts = job.map(|j| j.options.clone()).unwrap_or_default();
        opts.seed = ov.seed.or(opts.seed);
        opts.trials = ov.trials.or(opts.trials);
        opts.r_max = ov.r_max.or(opts.r_max);
        opts.suite = ov.suite.clone().or(opts.suite);
        Ctx { job, opts }
    }

    fn job(&self) -> Result<&'a JobSpec> {
        self.job.ok_or_else(|| Error::Spec("this command needs a job file (--input)".into()))
    }

    fn ring_and_forms(&self) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
        let job = self.job()?;
        let ring = job.ring()?;
        let forms = job.forms(&ring)?;
        Ok((ring, forms))
    }

    fn system(&self) -> Result<FormSystem> {
        let (ring, forms) = self.ring_and_forms()?;
        if forms.is_empty() {
            return Err(Error::Spec("job has no forms".into()));
        }
        FormSystem::new(&ring, forms)
    }

    fn r_max(&self) -> u32 {
        self.opts.r_max.unwrap_or(DEFAULT_R_MAX)
    }

    /// Field for random suites: the job's, else 𝔽_32003.
    fn suite_field(&self) -> Result<Field> {
        match self.job {
            Some(j) => j.field.field(),
            None => Field::prime(DEFAULT_PRIME as u64),
        }
    }
}

fn rty(ctx: &Ctx, report: &mut Report) -> Result<i32> {
    let sys = ctx.system()?;
    let rep = rty_check(&sys)?;
    report.summary = Some(format!("rty = {}", rep.rty));
    report.verdict("rty", rep.rty);
    report.verdict("saturated", rep.saturated);
    report.detail("n", sys.n());
    report.detail("m", sys.m());
    report.detail("degrees", sys.degrees());
    report.detail("generator_degree", rep.generator_degree);
    report.detail("pd", rep.pd);
    report.detail("depth", rep.depth);
    report.detail("heights", heights_check(&sys)?);
    report.set_betti(&rep.betti);
    report.witness("F", &rep.product);
    if let Some((source, w)) = &rep.witness {
        report.witness("saturation", w);
        report.detail("saturation_witness_source", source);
    }
    Ok(0)
}

fn scalar_strings(m: &[Vec<Scalar>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

fn arrangement(ctx: &Ctx, report: &mut Report) -> Result<i32> {
    let (ring, forms) = ctx.ring_and_forms()?;
    let arr = Arrangement::new(&ring, forms)?;
    let (n, m) = (arr.n(), arr.m());
    let field = ring.field();
    if field.char_divides(m as u64) {
        return Err(Error::Characteristic { characteristic: field.characteristic(), value: m as u64 });
    }
    if m <= n {
        return Err(Error::hypothesis(format!("an arrangement needs m ≥ n + 1 forms, got m = {m}, n = {n}")));
    }
    report.detail("n", n);
    report.detail("m", m);
    let generic = is_generic(&arr)?;
    report.verdict("generic", generic);
    if !generic {
        return Err(Error::hypothesis("arrangement is not generic"));
    }
    let norm = normalize_to_coordinates(&arr)?;
    let na = &norm.arrangement;
    report.detail("A", scalar_strings(&norm.a.0));
    report.detail("normalized_forms", na.forms().iter().map(|l| l.to_string()).collect::<Vec<_>>());
    let gamma = build_gamma(na)?;
    let s = build_frak_s(na)?;
    report.detail("gamma_shape", [gamma.rows(), gamma.cols()]);
    report.detail("frak_s_shape", [s.rows(), s.cols()]);
    let s_identity = verify_frak_s_identity(na)?;
    let minors_identity = verify_minors_identity(&arr)?;
    report.verdict("frak_s_identity", s_identity);
    report.verdict("minors_identity", minors_identity);

    let jac = arr.jacobian_ideal()?;
    let predicted = arrangement_betti_formula(n, m)?;
    let prof = homological_profile(&jac)?;
    let matches = prof.betti == predicted;
    report.set_betti(&prof.betti);
    report.detail("predicted_betti", predicted.triples());
    report.detail("pd", prof.pd);
    report.detail("depth", prof.depth);
    report.verdict("betti_matches", matches);
    report.verdict("rty", prof.depth == 0);
    report.witness("F", arr.defining_polynomial());

    let mut reduction_found = true;
    if ctx.opts.reduction.unwrap_or(true) {
        let r = is_reduction(&jac, &arr.fold_product_ideal()?, ctx.r_max())?;
        report.detail("r_max", ctx.r_max());
        report.detail("reduction_index", r);
        report.verdict("reduction", r.is_some());
        reduction_found = r.is_some();
    }
    report.summary = Some(format!("generic arrangement, n = {n}, m = {m}, betti matches = {matches}"));
    Ok(if !(s_identity && minors_identity && matches && prof.depth == 0) {
        1
    } else if !reduction_found {
        3
    } else {
        0
    })
}

fn classify2q(ctx: &Ctx, report: &mut Report) -> Result<i32> {
    let (ring, forms) = ctx.ring_and_forms()?;
    if let Some(vs) = &ctx.opts.v_values {
        let values = vs
            .iter()
            .map(|v| {
                let p = Polynomial::parse(&ring, v)?;
                if p.is_zero() {
                    return Ok(ring.field().zero());
                }
                p.constant_value().cloned().ok_or_else(|| Error::Spec(format!("v value '{v}' is not a constant")))
            })
            .collect::<Result<Vec<_>>>()?;
        let free = family_freeness_scan(&ring, &values)?;
        report.detail("family_v_values", vs);
        report.detail("family_free", &free);
        report.verdict("family_all_free", free.iter().all(|&b| b));
        if forms.is_empty() {
            return Ok(if free.iter().all(|&b| b) { 0 } else { 1 });
        }
    }
    let [f, g] = <[Polynomial; 2]>::try_from(forms)
        .map_err(|v| Error::Spec(format!("classify2q needs exactly two conics, got {}", v.len())))?;
    let c = classify_conic_pair(&f, &g)?;
    report.summary = Some(format!(
        "{}: e = {}, deg R/J_F = {}, Bourbaki degree = {}, rty = {}",
        c.category.name(),
        c.e,
        c.deg_jf,
        c.bourbaki,
        c.rty
    ));
    report.verdict("category", c.category);
    report.verdict("rty", c.rty);
    report.verdict("free", c.category == crate::planeclassify::Category::Free);
    report.detail("e", c.e);
    report.detail("deg_jf", c.deg_jf);
    report.detail("bourbaki_degree", c.bourbaki);
    report.set_betti(&c.betti);
    report.witness("F", &f * &g);
    Ok(0)
}

fn betti_predict(ctx: &Ctx, report: &mut Report) -> Result<i32> {
    let (ring, forms) = ctx.ring_and_forms()?;
    let n = ring.nvars();
    let all_linear = !forms.is_empty() && forms.iter().all(|f| f.homogeneous_degree() == Some(1));
    let model = match ctx.opts.model.as_deref() {
        Some(m @ ("arrangement" | "general-forms")) => m.to_string(),
        Some(other) => return Err(Error::Spec(format!("unknown model '{other}'"))),
        None if all_linear || (forms.is_empty() && ctx.opts.m.is_some()) => "arrangement".into(),
        None => "general-forms".into(),
    };
    report.detail("model", &model);
    report.detail("n", n);
    let (ranks, table) = if model == "arrangement" {
        let m = if forms.is_empty() {
            ctx.opts.m.ok_or_else(|| Error::Spec("arrangement prediction needs forms or options.m".into()))?
        } else {
            forms.len()
        };
        report.detail("m", m);
        let t = arrangement_betti_formula(n, m)?;
        (t.ranks(), Some(t))
    } else {
        let degrees = if forms.is_empty() {
            ctx.opts.degrees.clone().ok_or_else(|| Error::Spec("general-forms prediction needs forms or options.degrees".into()))?
        } else {
            FormSystem::new(&ring, forms.clone())?.degrees().to_vec()
        };
        report.detail("degrees", &degrees);
        let p = general_forms_betti(n, &degrees)?;
        (p.ranks, p.table)
    };
    report.detail("predicted_ranks", &ranks);
    if let Some(t) = &table {
        report.detail("predicted_betti", t.triples());
    }
    if forms.is_empty() {
        if let Some(t) = &table {
            report.set_betti(t);
        }
        return Ok(0);
    }
    let (_, jf) = if model == "arrangement" {
        let arr = Arrangement::new(&ring, forms)?;
        (arr.defining_polynomial(), arr.jacobian_ideal()?)
    } else {
        gradient_ideal(&FormSystem::new(&ring, forms)?)?
    };
    let prof = homological_profile(&jf)?;
    report.set_betti(&prof.betti);
    let matches = match &table {
        Some(t) => prof.betti == *t,
        None => prof.betti.ranks() == ranks,
    };
    report.detail("depth", prof.depth);
    report.verdict("matches", matches);
    report.verdict("rty", prof.depth == 0);
    Ok(if matches { 0 } else { 1 })
}

fn reduction(ctx: &Ctx, report: &mut Report) -> Result<i32> {
    let (ring, forms) = ctx.ring_and_forms()?;
    let (j, i) = match (&ctx.opts.j, &ctx.opts.i) {
        (Some(j), Some(i)) => (
            IdealBasis::new(&ring, JobSpec::parse_list(&ring, j)?)?,
            IdealBasis::new(&ring, JobSpec::parse_list(&ring, i)?)?,
        ),
        (None, None) => {
            if forms.len() < 2 {
                return Err(Error::Spec("reduction needs options j and i, or at least two forms".into()));
            }
            let sys = FormSystem::new(&ring, forms)?;
            let (_, jf) = gradient_ideal(&sys)?;
            (jf, fold_products(&sys, sys.m() - 1)?)
        }
        _ => return Err(Error::Spec("options j and i must be given together".into())),
    };
    let r_max = ctx.r_max();
    report.detail("r_max", r_max);
    let r = is_reduction(&j, &i, r_max)?;
    report.detail("reduction_index", r);
    report.verdict("reduction", r.is_some());
    match r {
        Some(r) => {
            report.summary = Some(format!("J is a reduction of I with reduction number {r}"));
            Ok(0)
        }
        None => Err(Error::BoundExceeded(format!("no reduction index up to r = {r_max}"))),
    }
}

fn criteria(ctx: &Ctx, report: &mut Report) -> Result<i32> {
    let sys = ctx.system()?;
    let crit = criteria_evaluate(&sys)?;
    for (name, c) in &crit.criteria {
        report.verdict(name, c.verdict);
    }
    let any = crit.any_holds();
    report.verdict("any_criterion_holds", any);
    report.detail("criteria", &crit.criteria);
    let rep = rty_check(&sys)?;
    report.verdict("rty", rep.rty);
    report.set_betti(&rep.betti);
    if any && !rep.rty {
        return Err(Error::Inconsistent("a sufficient criterion holds but R/J_F has positive depth".into()));
    }
    report.summary = Some(if any {
        "rty certified by a criterion".to_string()
    } else {
        format!("criteria inconclusive; computed rty = {}", rep.rty)
    });
    Ok(0)
}
