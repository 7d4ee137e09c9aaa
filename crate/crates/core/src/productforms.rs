//! Products of forms: Jacobian matrices, gradient ideals, the matrices 𝔇(f) and
//! M(f), heights, the RTY decision and the sufficient criteria for it.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arrangement::{is_generic, Arrangement};
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, krull_dimension, saturate_irrelevant, IdealBasis};
use crate::matrix::GradedMatrix;
use crate::monomial::{binomial, Monomial, MonomialOrder};
use crate::poly::{gcd, product, same_ring, Polynomial, Ring};
use crate::random::{random_form, rng};
use crate::resolution::{homological_profile, indeg_syzygies, proportional, BettiTable};
use crate::scalar::Field;

/// Resampling budget for random systems.
pub const SAMPLE_RETRIES: usize = 100;

#[derive(Clone, Debug)]
pub struct FormSystem {
    ring: Arc<Ring>,
    forms: Vec<Polynomial>,
    degrees: Vec<u32>,
    /// Input indices sorted by ascending degree (stable).
    sorted: Vec<usize>,
    coprime: bool,
}

impl FormSystem {
    pub fn new(ring: &Arc<Ring>, forms: Vec<Polynomial>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::Spec("a form system needs at least one form".into()));
        }
        let mut degrees = Vec::with_capacity(forms.len());
        for f in &forms {
            if !same_ring(f.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            match f.homogeneous_degree() {
                Some(d) if d > 0 && !f.is_zero() => degrees.push(d),
                _ if f.is_zero() || f.is_constant() => {
                    return Err(Error::Spec(format!("'{f}' does not have positive degree")))
                }
                _ => return Err(Error::NotHomogeneous(f.to_string())),
            }
        }
        let mut sorted: Vec<usize> = (0..forms.len()).collect();
        sorted.sort_by_key(|&i| degrees[i]);
        let mut coprime = true;
        'outer: for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                if !gcd(&forms[i], &forms[j])?.is_constant() {
                    coprime = false;
                    break 'outer;
                }
            }
        }
        Ok(FormSystem { ring: ring.clone(), forms, degrees, sorted, coprime })
    }

    pub fn parse(ring: &Arc<Ring>, forms: &[&str]) -> Result<Self> {
        let forms = forms.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<_>>()?;
        Self::new(ring, forms)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn sorted_degrees(&self) -> Vec<u32> {
        self.sorted.iter().map(|&i| self.degrees[i]).collect()
    }

    /// Forms in ascending degree order.
    pub fn sorted_forms(&self) -> Vec<Polynomial> {
        self.sorted.iter().map(|&i| self.forms[i].clone()).collect()
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        self.coprime
    }

    pub fn product(&self) -> Polynomial {
        product(&self.ring, &self.forms)
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }

    fn without(&self, j: usize) -> Vec<Polynomial> {
        self.forms.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, f)| f.clone()).collect()
    }

    fn require_coprime(&self) -> Result<()> {
        if self.coprime {
            Ok(())
        } else {
            Err(Error::hypothesis("the forms are not pairwise coprime"))
        }
    }
}

/// Θ(f), rows twisted by `deg F − d_i` and columns by `deg F − 1`.
pub fn jacobian_matrix(sys: &FormSystem) -> Result<GradedMatrix> {
    let total = sys.total_degree() as i64;
    let entries = sys.forms.iter().map(|f| f.gradient()).collect();
    let rows = sys.degrees.iter().map(|&d| total - d as i64).collect();
    GradedMatrix::new(&sys.ring, entries, rows, vec![total - 1; sys.n()])
}

/// `F = ∏ f_i` and `J_F`, cross-checked against the m-minors of M(f) that
/// use one Θ column and all of 𝔇.
pub fn gradient_ideal(sys: &FormSystem) -> Result<(Polynomial, IdealBasis)> {
    let f = sys.product();
    let grad = f.gradient();
    if sys.m() >= 2 {
        let (_, mm) = build_d_m(sys)?;
        let n = sys.n();
        let d_cols: Vec<usize> = (n..mm.cols()).collect();
        let rows: Vec<usize> = (0..sys.m()).collect();
        let minors = (0..n)
            .map(|i| {
                let cols: Vec<usize> = std::iter::once(i).chain(d_cols.iter().copied()).collect();
                mm.submatrix(&rows, &cols).determinant()
            })
            .collect::<Result<Vec<_>>>()?;
        if !proportional(&grad, &minors) {
            return Err(Error::Inconsistent("partials of F differ from the minors of M(f)".into()));
        }
    }
    let ideal = IdealBasis::new(&sys.ring, grad)?;
    Ok((f, ideal))
}

/// Ideal of all products of `k` distinct forms.
pub fn fold_products(sys: &FormSystem, k: usize) -> Result<IdealBasis> {
    let m = sys.m();
    if k == 0 || k > m {
        return Err(Error::Spec(format!("fold size {k} outside 1..={m}")));
    }
    let gens = crate::matrix::combinations(m, k)
        .into_iter()
        .map(|idx| product(&sys.ring, &idx.iter().map(|&i| sys.forms[i].clone()).collect::<Vec<_>>()))
        .collect();
    IdealBasis::new(&sys.ring, gens)
}

/// 𝔇(f): diagonal `−f_1, …, −f_{m−1}` above a last row of `f_m`; and `M = [Θ | 𝔇]`.
pub fn build_d_m(sys: &FormSystem) -> Result<(GradedMatrix, GradedMatrix)> {
    let m = sys.m();
    if m < 2 {
        return Err(Error::hypothesis("𝔇(f) needs at least two forms"));
    }
    let ring = &sys.ring;
    let total = sys.total_degree() as i64;
    let entries: Vec<Vec<Polynomial>> = (0..m)
        .map(|i| {
            (0..m - 1)
                .map(|j| {
                    if i == m - 1 {
                        sys.forms[m - 1].clone()
                    } else if i == j {
                        -&sys.forms[i]
                    } else {
                        Polynomial::zero(ring)
                    }
                })
                .collect()
        })
        .collect();
    let rows: Vec<i64> = sys.degrees.iter().map(|&d| total - d as i64).collect();
    let d = GradedMatrix::new(ring, entries, rows, vec![total; m - 1])?;
    let mm = jacobian_matrix(sys)?.hconcat(&d)?;
    Ok((d, mm))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightCheck {
    pub computed: i64,
    pub predicted: i64,
    pub matches: bool,
}

impl HeightCheck {
    fn new(computed: i64, predicted: i64) -> Self {
        HeightCheck { computed, predicted, matches: computed == predicted }
    }
}

/// Codimensions of `I_{m−1}(𝔇)`, `I_m(M)` and `⟨I_m(Θ), f⟩` against their
/// predicted values `2`, `n`, `n` for general forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Heights {
    pub fold_minors: Option<HeightCheck>,
    pub m_minors: Option<HeightCheck>,
    pub jacobian_with_forms: HeightCheck,
}

pub fn codim(ideal: &IdealBasis) -> Result<i64> {
    Ok(krull_dimension(ideal)?.codim)
}

/// `⟨I_m(Θ(f)), f_1, …, f_m⟩`.
pub fn jacobian_forms_ideal(sys: &FormSystem) -> Result<IdealBasis> {
    let theta = jacobian_matrix(sys)?;
    let mut gens = if sys.m() <= sys.n() { theta.minors(sys.m()) } else { Vec::new() };
    gens.extend(sys.forms.iter().cloned());
    IdealBasis::new(&sys.ring, gens)
}

pub fn heights_check(sys: &FormSystem) -> Result<Heights> {
    let n = sys.n() as i64;
    let (fold_minors, m_minors) = if sys.m() >= 2 {
        let (d, mm) = build_d_m(sys)?;
        let folds = IdealBasis::new(&sys.ring, d.signed_maximal_minors()?)?;
        let ms = IdealBasis::new(&sys.ring, mm.minors(sys.m()))?;
        (Some(HeightCheck::new(codim(&folds)?, 2)), Some(HeightCheck::new(codim(&ms)?, n)))
    } else {
        (None, None)
    };
    let jac = HeightCheck::new(codim(&jacobian_forms_ideal(sys)?)?, n);
    Ok(Heights { fold_minors, m_minors, jacobian_with_forms: jac })
}

#[derive(Clone, Debug)]
pub struct RtyReport {
    pub product: Polynomial,
    pub generator_degree: u32,
    pub pd: usize,
    pub depth: usize,
    pub rty: bool,
    pub betti: BettiTable,
    /// `J_F = J_F^sat`.
    pub saturated: bool,
    /// An element of `J_F^sat \ J_F` when depth is 0, with its provenance.
    pub witness: Option<(String, Polynomial)>,
}

/// Decides the RTY property (depth `R/J_F` = 0) three ways and insists they agree.
pub fn rty_check(sys: &FormSystem) -> Result<RtyReport> {
    sys.require_coprime()?;
    let (f, jf) = gradient_ideal(sys)?;
    let prof = homological_profile(&jf)?;
    let n = sys.n();
    let rty = prof.depth == 0;
    if rty != (prof.pd == n) || rty == prof.saturated {
        return Err(Error::Inconsistent("pd, depth and saturation disagree on RTY".into()));
    }
    let witness = if rty { Some(saturation_witness(sys, &f, &jf)?) } else { None };
    Ok(RtyReport {
        generator_degree: sys.total_degree() - 1,
        product: f,
        pd: prof.pd,
        depth: prof.depth,
        rty,
        betti: prof.betti,
        saturated: prof.saturated,
        witness,
    })
}

fn saturation_witness(sys: &FormSystem, f: &Polynomial, jf: &IdealBasis) -> Result<(String, Polynomial)> {
    let grevlex = MonomialOrder::grevlex();
    let sat = groebner_basis(&saturate_irrelevant(jf)?, &grevlex);
    let j_gb = groebner_basis(jf, &grevlex);
    let mut candidates = Vec::new();
    for j in 0..sys.m() {
        if sys.m() >= 2 {
            let g = product(&sys.ring, &sys.without(j));
            candidates.push((format!("F/f{}", j + 1), g.clone()));
            candidates.push((format!("(F/f{})^2", j + 1), g.pow(2)));
        }
    }
    candidates.push(("F".into(), f.clone()));
    candidates.extend(sat.polys().iter().map(|p| ("saturation generator".to_string(), p.clone())));
    for (label, c) in candidates {
        if sat.contains(&c)? && !j_gb.contains(&c)? {
            return Ok((label, c));
        }
    }
    Err(Error::Inconsistent("depth 0 but no element of the saturation lies outside J_F".into()))
}

/// Predicted resolution of `R/J_F` for general forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralFormsPrediction {
    /// Total ranks `1, n, b_2, …, b_n`.
    pub ranks: Vec<u64>,
    /// Graded table, available for `n = 3`.
    pub table: Option<BettiTable>,
}

/// `b_i = C(m+n−1, m+i−1)·C(m+i−3, m−1)` for `2 ≤ i ≤ n`; graded twists for `n = 3`
/// with `D = deg F − 1`: `D³`, then `(2D)³ ⊕ (2D−1)^{m−1}`, then `2D + d_j − 1`.
pub fn general_forms_betti(n: usize, degrees: &[u32]) -> Result<GeneralFormsPrediction> {
    let m = degrees.len();
    if n < 2 || m == 0 {
        return Err(Error::Spec(format!("general-forms prediction needs n ≥ 2 and m ≥ 1, got n = {n}, m = {m}")));
    }
    if degrees.iter().any(|&d| d < 2) {
        return Err(Error::Spec("general-forms prediction needs degrees ≥ 2".into()));
    }
    let (n_, m_) = (n as i64, m as i64);
    let mut ranks = vec![1, n as u64];
    for i in 2..=n_ {
        ranks.push(binomial(m_ + n_ - 1, m_ + i - 1) * binomial(m_ + i - 3, m_ - 1));
    }
    let table = (n == 3).then(|| {
        let big_d = degrees.iter().sum::<u32>() as i64 - 1;
        let mut entries = vec![(0, 0, 1), (1, big_d, 3), (2, 2 * big_d, 3)];
        if m > 1 {
            entries.push((2, 2 * big_d - 1, m as u64 - 1));
        }
        let mut last: BTreeMap<i64, u64> = BTreeMap::new();
        for &d in degrees {
            *last.entry(2 * big_d + d as i64 - 1).or_default() += 1;
        }
        entries.extend(last.into_iter().map(|(j, r)| (3, j, r)));
        BettiTable::from_entries(entries)
    });
    Ok(GeneralFormsPrediction { ranks, table })
}

/// `𝔡(d_1, …, d_r) = ⌊(d_1 + ⋯ + d_r)/r⌋ − 1`.
pub fn frak_d(degrees: &[u32]) -> i64 {
    if degrees.is_empty() {
        return -1;
    }
    (degrees.iter().sum::<u32>() / degrees.len() as u32) as i64 - 1
}

/// `J_f` has codimension ≥ n (𝔪-primary, or the unit ideal for a linear form).
pub fn is_smooth_form(f: &Polynomial) -> Result<bool> {
    let d = f.homogeneous_degree().filter(|_| !f.is_zero()).ok_or_else(|| Error::NotHomogeneous(f.to_string()))?;
    let field = f.field();
    if field.char_divides(d as u64) {
        return Err(Error::Characteristic { characteristic: field.characteristic(), value: d as u64 });
    }
    if d == 0 {
        return Err(Error::Spec("smoothness of a constant".into()));
    }
    let jf = IdealBasis::new(f.ring(), f.gradient())?;
    Ok(codim(&jf)? >= f.nvars() as i64)
}

fn smooth_or_false(f: &Polynomial) -> Result<bool> {
    match is_smooth_form(f) {
        Err(Error::Characteristic { .. }) => Ok(false),
        r => r,
    }
}

/// No repeated factor: `gcd(F, ∂F/∂x_1, …, ∂F/∂x_n)` is constant.
/// Requires char 0 or char > deg F.
pub fn is_reduced_form(f: &Polynomial) -> Result<bool> {
    let d = f.homogeneous_degree().filter(|_| !f.is_zero()).ok_or_else(|| Error::NotHomogeneous(f.to_string()))?;
    let c = f.field().characteristic();
    if c != 0 && c <= d as u64 {
        return Err(Error::Characteristic { characteristic: c, value: d as u64 });
    }
    let mut g = f.clone();
    for p in f.gradient() {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &p)?;
    }
    Ok(g.is_constant())
}

/// `indeg Syz(∂g/∂x_1, …, ∂g/∂x_n)`; 0 when a partial vanishes or the partials
/// are linearly dependent.
pub fn gradient_syzygy_indeg(g: &Polynomial) -> Result<i64> {
    let grad = g.gradient();
    if grad.iter().any(|p| p.is_zero()) {
        return Ok(0);
    }
    let ideal = IdealBasis::new(g.ring(), grad)?;
    indeg_syzygies(&ideal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

/// One way of matching a system to a criterion's hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub label: String,
    /// Sub-conditions checked, in order; evaluation stops at the first failure.
    pub checks: Vec<(String, bool)>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub verdict: Verdict,
    pub instances: Vec<Instance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CriterionResult {
    fn not_applicable(note: impl Into<String>) -> Self {
        CriterionResult { verdict: Verdict::NotApplicable, instances: Vec::new(), note: Some(note.into()) }
    }

    fn from_instances(instances: Vec<Instance>) -> Self {
        let verdict = if instances.is_empty() {
            Verdict::NotApplicable
        } else if instances.iter().any(|i| i.holds) {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        CriterionResult { verdict, instances, note: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriteriaReport {
    /// Keyed by criterion name.
    pub criteria: BTreeMap<String, CriterionResult>,
}

impl CriteriaReport {
    /// Whether some criterion certifies the RTY property.
    pub fn any_holds(&self) -> bool {
        self.criteria.values().any(|c| c.verdict == Verdict::Holds)
    }
}

/// Records checks in order, short-circuiting on the first failure.
struct Checker {
    checks: Vec<(String, bool)>,
    ok: bool,
}

impl Checker {
    fn new() -> Self {
        Checker { checks: Vec::new(), ok: true }
    }

    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<bool>) -> Result<()> {
        if self.ok {
            let v = f()?;
            self.checks.push((name.into(), v));
            self.ok = v;
        }
        Ok(())
    }

    fn finish(self, label: String) -> Instance {
        Instance { label, holds: self.ok, checks: self.checks }
    }
}

/// Evaluates every machine-checkable sufficient condition for RTY.
pub fn criteria_evaluate(sys: &FormSystem) -> Result<CriteriaReport> {
    let mut criteria = BTreeMap::new();
    criteria.insert("two_forms_one_smooth_i".to_string(), one_smooth(sys, false)?);
    criteria.insert("two_forms_one_smooth_ii".to_string(), one_smooth(sys, true)?);
    criteria.insert("two_forms_jacobian_primary".to_string(), jacobian_primary(sys)?);
    criteria.insert("three_forms".to_string(), three_forms(sys)?);
    criteria.insert("unbalanced_degrees".to_string(), unbalanced(sys)?);
    criteria.insert("fermat".to_string(), fermat(sys)?);
    Ok(CriteriaReport { criteria })
}

/// Splits `F = f·g` with `f = f_j`, `g = F/f_j` and tests the smooth-factor
/// conditions (the first, or with `second` the alternative one).
fn one_smooth(sys: &FormSystem, second: bool) -> Result<CriterionResult> {
    if sys.m() < 2 {
        return Ok(CriterionResult::not_applicable("needs at least two forms"));
    }
    let field = sys.ring.field();
    let mut out = Vec::new();
    for j in 0..sys.m() {
        let f = &sys.forms[j];
        let g = product(&sys.ring, &sys.without(j));
        let d = sys.degrees[j];
        let mut c = Checker::new();
        c.check("pairwise coprime", || Ok(sys.coprime))?;
        c.check(format!("char ∤ {d}"), || Ok(!field.char_divides(d as u64)))?;
        c.check(format!("f{} smooth", j + 1), || smooth_or_false(f))?;
        if second {
            c.check("g ∉ J_f", || {
                let jf = IdealBasis::new(&sys.ring, f.gradient())?;
                Ok(!groebner_basis(&jf, &MonomialOrder::grevlex()).contains(&g)?)
            })?;
        } else {
            c.check(format!("deg g = deg f = {d} ≥ 2"), || Ok(g.degree() == Some(d) && d >= 2))?;
            c.check("indeg Syz(J_g) ≥ 2", || Ok(gradient_syzygy_indeg(&g)? >= 2))?;
        }
        out.push(c.finish(format!("f = f{}, g = F/f{}", j + 1, j + 1)));
    }
    Ok(CriterionResult::from_instances(out))
}

/// The surrogate for transversality: `𝕁 = ⟨I_2(Θ(f, g)), f⟩` is 𝔪-primary.
fn jacobian_primary(sys: &FormSystem) -> Result<CriterionResult> {
    if sys.m() < 2 {
        return Ok(CriterionResult::not_applicable("needs at least two forms"));
    }
    let field = sys.ring.field();
    let n = sys.n() as i64;
    let mut out = Vec::new();
    for j in 0..sys.m() {
        let f = sys.forms[j].clone();
        let g = product(&sys.ring, &sys.without(j));
        let (d, e) = (sys.degrees[j], sys.total_degree() - sys.degrees[j]);
        let mut c = Checker::new();
        c.check("pairwise coprime", || Ok(sys.coprime))?;
        c.check(format!("2 ≤ deg f = {d} ≤ deg g = {e}"), || Ok(2 <= d && d <= e))?;
        c.check(format!("char ∤ {d}, {e}, {}", d + e), || {
            Ok(![d, e, d + e].iter().any(|&k| field.char_divides(k as u64)))
        })?;
        c.check(format!("f{} smooth", j + 1), || smooth_or_false(&f))?;
        c.check("⟨I_2(Θ(f, g)), f⟩ 𝔪-primary", || {
            let pair = FormSystem::new(&sys.ring, vec![f.clone(), g.clone()])?;
            let theta = jacobian_matrix(&pair)?;
            let mut gens = theta.minors(2);
            gens.push(f.clone());
            Ok(codim(&IdealBasis::new(&sys.ring, gens)?)? >= n)
        })?;
        out.push(c.finish(format!("f = f{}, g = F/f{}", j + 1, j + 1)));
    }
    let mut r = CriterionResult::from_instances(out);
    r.note = Some("transversality checked through the 𝔪-primary surrogate".into());
    Ok(r)
}

fn three_forms(sys: &FormSystem) -> Result<CriterionResult> {
    if sys.m() != 3 {
        return Ok(CriterionResult::not_applicable("needs exactly three forms"));
    }
    let mut out = Vec::new();
    for (a, b, c3) in [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0)] {
        let (da, db, dc) = (sys.degrees[a], sys.degrees[b], sys.degrees[c3]);
        if !(2 <= da && da <= db && da + db == dc && dc >= 5) {
            continue;
        }
        let mut c = Checker::new();
        c.check("pairwise coprime", || Ok(sys.coprime))?;
        c.check(format!("{db} ≥ {da} ≥ 2, {da} + {db} = {dc} ≥ 5"), || Ok(true))?;
        c.check(format!("f{} smooth", b + 1), || smooth_or_false(&sys.forms[b]))?;
        c.check(format!("f{} smooth", c3 + 1), || smooth_or_false(&sys.forms[c3]))?;
        out.push(c.finish(format!("(f1, f2, f3) = (f{}, f{}, f{})", a + 1, b + 1, c3 + 1)));
    }
    if out.is_empty() {
        return Ok(CriterionResult {
            verdict: Verdict::Fails,
            instances: Vec::new(),
            note: Some("no labeling meets the degree restriction".into()),
        });
    }
    Ok(CriterionResult::from_instances(out))
}

/// `𝔡(d without d_j) ≥ Σ_{i≠j} d_i − d_j + 3` for some `j ≥ 2` (sorted labels).
pub fn unbalanced_witnesses(sorted_degrees: &[u32]) -> Vec<(usize, i64, i64)> {
    let m = sorted_degrees.len();
    (1..m)
        .filter_map(|j| {
            let rest: Vec<u32> =
                sorted_degrees.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &d)| d).collect();
            let lhs = frak_d(&rest);
            let rhs = rest.iter().sum::<u32>() as i64 - sorted_degrees[j] as i64 + 3;
            (lhs >= rhs).then_some((j, lhs, rhs))
        })
        .collect()
}

fn unbalanced(sys: &FormSystem) -> Result<CriterionResult> {
    if sys.m() < 2 {
        return Ok(CriterionResult::not_applicable("needs at least two forms"));
    }
    if sys.ring.field() != Field::Rational {
        return Ok(CriterionResult::not_applicable("stated in characteristic 0 only"));
    }
    let degs = sys.sorted_degrees();
    if degs[0] < 2 {
        return Ok(CriterionResult::not_applicable("needs all degrees ≥ 2"));
    }
    let witnesses = unbalanced_witnesses(&degs);
    let sorted = sys.sorted_forms();
    // f_1 may be any form of least degree; all others must be smooth.
    let smooth: Vec<bool> = sorted.iter().map(smooth_or_false).collect::<Result<_>>()?;
    let mut c = Checker::new();
    c.check("pairwise coprime", || Ok(sys.coprime))?;
    let mut detail = String::new();
    for (j, l, r) in &witnesses {
        detail.push_str(&format!(" j={}: 𝔡={l} ≥ {r};", j + 1));
    }
    c.check(format!("some j satisfies the degree inequality{detail}"), || Ok(!witnesses.is_empty()))?;
    c.check("all forms but one of least degree smooth", || {
        let non_smooth: Vec<usize> = (0..sorted.len()).filter(|&k| !smooth[k]).collect();
        Ok(match non_smooth.as_slice() {
            [] => true,
            [k] => degs[*k] == degs[0],
            _ => false,
        })
    })?;
    Ok(CriterionResult::from_instances(vec![c.finish(format!("sorted degrees {degs:?}"))]))
}

/// Every term of `f` is a pure power of one variable.
pub fn is_fermat_form(f: &Polynomial) -> bool {
    !f.is_zero() && f.is_homogeneous() && f.terms().iter().all(|(m, _)| m.support().count() == 1)
}

fn fermat(sys: &FormSystem) -> Result<CriterionResult> {
    let (m, n) = (sys.m(), sys.n());
    if m < 2 {
        return Ok(CriterionResult::not_applicable("needs at least two forms"));
    }
    if !sys.forms.iter().all(is_fermat_form) {
        return Ok(CriterionResult::not_applicable("not all forms are Fermat forms"));
    }
    let field = sys.ring.field();
    let sorted = sys.sorted_forms();
    let degs = sys.sorted_degrees();
    let fm = &sorted[m - 1];
    let dm = degs[m - 1];
    let mut c = Checker::new();
    c.check(format!("m = {m} ≤ n + 1"), || Ok(m <= n + 1))?;
    c.check(format!("char ∤ {dm}"), || Ok(!field.char_divides(dm as u64)))?;
    c.check(format!("d_m = {dm} ≥ d_(m-1) + 2 = {}", degs[m - 2] + 2), || Ok(dm >= degs[m - 2] + 2))?;
    c.check("pairwise coprime", || Ok(sys.coprime))?;
    c.check("f_m has full rank", || {
        Ok((0..n).all(|i| !fm.coefficient(&Monomial::var(n, i).with_exponent(i, dm)).is_zero()))
    })?;
    c.check("some monomial x_i1^d1 ⋯ x_i(m-1)^d(m-1) of f1⋯f(m-1) has nonzero coefficient", || {
        let g = product(&sys.ring, &sorted[..m - 1]);
        let mut found = false;
        injections(m - 1, n, &mut |idx| {
            let mut exps = vec![0u32; n];
            for (k, &i) in idx.iter().enumerate() {
                exps[i] += degs[k];
            }
            if !g.coefficient(&Monomial::from_exponents(&exps)).is_zero() {
                found = true;
            }
            found
        });
        Ok(found)
    })?;
    Ok(CriterionResult::from_instances(vec![c.finish(format!("sorted degrees {degs:?}"))]))
}

/// Calls `visit` on every injective map `0..k → 0..n` until it returns true.
fn injections(k: usize, n: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                let stop = rec(k, n, cur, used, visit);
                cur.pop();
                used[i] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }
    rec(k, n, &mut Vec::new(), &mut vec![false; n], visit);
}

/// The explicit system from the induction on `n`: in two variables
/// `x_1^{d_1} + x_2^{d_1}, x_1^{d_2}, x_2^{d_3}, …`, then each new variable
/// deforms the last form by `x_n^{d_m}`. The result is checked to satisfy
/// `codim ⟨I_m(Θ), f⟩ = n`.
pub fn witness_forms(ring: &Arc<Ring>, degrees: &[u32]) -> Result<FormSystem> {
    let (n, m) = (ring.nvars(), degrees.len());
    if n < 2 || m == 0 || m > n + 1 || degrees.iter().any(|&d| d < 2) {
        return Err(Error::Spec(format!("witness forms need n ≥ 2, 1 ≤ m ≤ n + 1 and degrees ≥ 2 (n = {n}, m = {m})")));
    }
    let x = |i: usize, d: u32| Polynomial::var(ring, i).pow(d);
    let mut forms: Vec<Polynomial> = degrees
        .iter()
        .enumerate()
        .map(|(k, &d)| match k {
            0 => &x(0, d) + &x(1, d),
            k if k % 2 == 1 => x(0, d),
            _ => x(1, d),
        })
        .collect();
    for v in 2..n {
        forms[m - 1] = &forms[m - 1] + &x(v, degrees[m - 1]);
    }
    let sys = FormSystem::new(ring, forms)?;
    if codim(&jacobian_forms_ideal(&sys)?)? != n as i64 {
        return Err(Error::hypothesis(format!("no verified witness for n = {n}, degrees {degrees:?}")));
    }
    Ok(sys)
}

/// Seeded dense random forms, resampled until pairwise coprime (and generic,
/// when all forms are linear).
pub fn random_forms(ring: &Arc<Ring>, degrees: &[u32], seed: u64) -> Result<FormSystem> {
    let field = ring.field();
    let top = degrees.iter().copied().max().unwrap_or(0) as u64;
    if field.characteristic() != 0 && field.characteristic() <= top {
        return Err(Error::Characteristic { characteristic: field.characteristic(), value: top });
    }
    let mut r = rng(seed);
    for _ in 0..SAMPLE_RETRIES {
        let forms: Vec<Polynomial> = degrees.iter().map(|&d| random_form(ring, d, &mut r)).collect();
        if forms.iter().any(|f| f.is_zero()) {
            continue;
        }
        let sys = FormSystem::new(ring, forms)?;
        if !sys.coprime {
            continue;
        }
        if degrees.iter().all(|&d| d == 1) && degrees.len() >= ring.nvars() {
            let arr = Arrangement::new(ring, sys.forms.clone())?;
            if !is_generic(&arr)? {
                continue;
            }
        }
        return Ok(sys);
    }
    Err(Error::BoundExceeded(format!("no admissible random system in {SAMPLE_RETRIES} draws")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::is_regular_sequence;

    fn qq3() -> Arc<Ring> {
        Ring::standard(Field::Rational, 3)
    }

    fn fp3() -> Arc<Ring> {
        Ring::standard(Field::prime(32003).unwrap(), 3)
    }

    #[test]
    fn jacobian_and_gradient() {
        let r = qq3();
        let sys = FormSystem::parse(&r, &["x^2+y*z"]).unwrap();
        let th = jacobian_matrix(&sys).unwrap();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert_eq!(th.entries()[0], vec![p("2*x"), p("z"), p("y")]);

        let r2 = Ring::standard(Field::Rational, 2);
        let sys = FormSystem::parse(&r2, &["x", "y", "x+y"]).unwrap();
        let (f, jf) = gradient_ideal(&sys).unwrap();
        assert_eq!(f, Polynomial::parse(&r2, "x^2*y+x*y^2").unwrap());
        assert_eq!(jf.gens(), &[Polynomial::parse(&r2, "2*x*y+y^2").unwrap(), Polynomial::parse(&r2, "x^2+2*x*y").unwrap()]);
        let (d, _) = build_d_m(&sys).unwrap();
        assert_eq!(d, crate::arrangement::build_gamma(&Arrangement::new(&r2, sys.forms().to_vec()).unwrap()).unwrap());

        let sys = FormSystem::parse(&r, &["x^2+y*z", "x^2+y^2+y*z"]).unwrap();
        let (_, jf) = gradient_ideal(&sys).unwrap();
        assert_eq!(jf.degrees(), vec![3, 3, 3]);
    }

    #[test]
    fn folds_and_d() {
        let r = qq3();
        let sys = FormSystem::parse(&r, &["x", "y", "z"]).unwrap();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert_eq!(fold_products(&sys, 2).unwrap().gens(), &[p("x*y"), p("x*z"), p("y*z")]);
        assert_eq!(fold_products(&sys, 3).unwrap().gens(), &[p("x*y*z")]);
        assert!(fold_products(&sys, 4).is_err());

        let sys = random_forms(&fp3(), &[2, 3, 2], 5).unwrap();
        let (d, _) = build_d_m(&sys).unwrap();
        // the (m−1)-fold products F/f_i annihilate 𝔇
        let quotients: Vec<Polynomial> = (0..sys.m()).map(|i| product(&sys.ring, &sys.without(i))).collect();
        let row = GradedMatrix::row(&sys.ring, &quotients).unwrap();
        assert!(row.mul(&d).unwrap().is_zero());
        let folds = fold_products(&sys, 2).unwrap();
        let (_, jf) = gradient_ideal(&sys).unwrap();
        assert!(jf.is_subset_of(&folds).unwrap());
        let mut minors = d.signed_maximal_minors().unwrap();
        minors.reverse();
        assert!(proportional(folds.gens(), &minors));
    }

    #[test]
    fn heights() {
        let sys = random_forms(&fp3(), &[2, 2], 11).unwrap();
        let h = heights_check(&sys).unwrap();
        assert_eq!(
            (h.fold_minors.unwrap().computed, h.m_minors.unwrap().computed, h.jacobian_with_forms.computed),
            (2, 3, 3)
        );
        let sys = FormSystem::parse(&qq3(), &["x^2", "x^5+y^5+z^5"]).unwrap();
        let h = heights_check(&sys).unwrap();
        assert_eq!(h.jacobian_with_forms.computed, 2);
        assert!(!h.jacobian_with_forms.matches);
        let sys = FormSystem::parse(&qq3(), &["x^2+y*z"]).unwrap();
        assert_eq!(heights_check(&sys).unwrap().jacobian_with_forms.computed, 3);
    }

    #[test]
    fn rty_examples() {
        let r = qq3();
        let free = FormSystem::parse(&r, &["x^2+y*z", "x^2+y^2+y*z"]).unwrap();
        let rep = rty_check(&free).unwrap();
        assert!(!rep.rty);
        assert_eq!(rep.depth, 1);
        assert!(rep.witness.is_none());

        let transversal = FormSystem::parse(&r, &["x^2+y*z", "y^2+x*z"]).unwrap();
        let rep = rty_check(&transversal).unwrap();
        assert!(rep.rty && rep.pd == 3 && rep.witness.is_some());

        let bad = FormSystem::parse(&r, &["x*y", "x*z"]).unwrap();
        assert!(matches!(rty_check(&bad), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn general_forms_prediction() {
        let p = general_forms_betti(3, &[2, 2]).unwrap();
        assert_eq!(p.ranks, vec![1, 3, 4, 2]);
        let t = p.table.unwrap();
        assert_eq!((t.twists(1), t.twists(2), t.twists(3)), (vec![3; 3], vec![5, 6, 6, 6], vec![7, 7]));
        let p = general_forms_betti(3, &[2, 2, 2]).unwrap();
        assert_eq!(p.ranks, vec![1, 3, 5, 3]);
        assert_eq!(p.ranks.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum::<i64>(), 0);
        assert!(general_forms_betti(3, &[1, 2]).is_err());

        let sys = random_forms(&fp3(), &[2, 2], 3).unwrap();
        let rep = rty_check(&sys).unwrap();
        assert_eq!(Some(rep.betti), general_forms_betti(3, &[2, 2]).unwrap().table);
    }

    #[test]
    fn criteria_examples() {
        let r = qq3();
        let cubics = FormSystem::parse(&r, &["x^3+y^3+z^3", "x^3+2*y^3+3*z^3+x*y*z"]).unwrap();
        let rep = criteria_evaluate(&cubics).unwrap();
        assert_eq!(rep.criteria["two_forms_one_smooth_i"].verdict, Verdict::Holds);

        let fermat = FormSystem::parse(&r, &["x^5+y^5+z^5", "x^2"]).unwrap();
        let rep = criteria_evaluate(&fermat).unwrap();
        assert_eq!(rep.criteria["two_forms_one_smooth_ii"].verdict, Verdict::Holds);
        assert_eq!(rep.criteria["fermat"].verdict, Verdict::Holds);

        let nearly = FormSystem::parse(&r, &["x^2+y*z", "x^2-y*z"]).unwrap();
        let rep = criteria_evaluate(&nearly).unwrap();
        assert!(!rep.any_holds(), "{rep:?}");
        assert!(rty_check(&nearly).unwrap().rty);

        assert!(unbalanced_witnesses(&[2, 2]).is_empty());
        assert_eq!(unbalanced_witnesses(&[2, 4]), vec![(1, 1, 1)]);
        assert_eq!(frak_d(&[2]), 1);
    }

    #[test]
    fn smooth_and_reduced() {
        let r = qq3();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert!(is_smooth_form(&p("x^2+y*z")).unwrap());
        assert!(!is_smooth_form(&p("x^2")).unwrap());
        assert!(is_smooth_form(&p("x^5+y^5+z^5")).unwrap());
        let r5 = Ring::standard(Field::prime(5).unwrap(), 3);
        assert!(is_smooth_form(&Polynomial::parse(&r5, "x^5+y^5+z^5").unwrap()).is_err());
        assert!(is_reduced_form(&p("(x^2+y*z)*(y^2+x*z)")).unwrap());
        assert!(!is_reduced_form(&p("(x+y)^2*z")).unwrap());
    }

    #[test]
    fn witnesses() {
        let r2 = Ring::standard(Field::Rational, 2);
        let w = witness_forms(&r2, &[2]).unwrap();
        assert_eq!(w.forms(), &[Polynomial::parse(&r2, "x^2+y^2").unwrap()]);
        let w = witness_forms(&r2, &[2, 3]).unwrap();
        assert!(is_regular_sequence(w.forms()).unwrap());
        let w = witness_forms(&qq3(), &[2, 2]).unwrap();
        assert_eq!(heights_check(&w).unwrap().jacobian_with_forms.computed, 3);
        assert!(witness_forms(&r2, &[2, 2, 2, 2]).is_err());
    }

    #[test]
    fn random_systems() {
        let r = fp3();
        let a = random_forms(&r, &[2, 2], 9).unwrap();
        let b = random_forms(&r, &[2, 2], 9).unwrap();
        assert_eq!(a.forms(), b.forms());
        assert!(is_regular_sequence(a.forms()).unwrap());
        let lines = random_forms(&r, &[1; 5], 2).unwrap();
        assert!(is_generic(&Arrangement::new(&r, lines.forms().to_vec()).unwrap()).unwrap());
    }
}
