//! End-to-end scenario runner: reproduces every number in the rank-five
//! bundle construction on the degree-2 moduli fourfold, from the lattice
//! data through the Poincaré transform, Mukai vector, Euler pairings, Ext
//! dimensions and slope verdicts, and emits a machine-readable report.
//!
//! The runner has regression semantics: a failed step is recorded and the
//! run continues, so one discrepancy never hides downstream results.

use serde::{Deserialize, Serialize};

use crate::calculus;
use crate::eps::EpsPolynomial;
use crate::equivalences;
use crate::error::{Error, Result};
use crate::extended::{
    normalize_line, twist, DeformationType, ExtendedVector, ManifoldData, MukaiLine,
};
use crate::lagrangian::{self, BettiVector, GradedDims, LagrangianPair};
use crate::lattice::{is_isometry, BilinearSpace, LatticeVector};
use crate::ratio::{int, parse_ratio, ratio, render, Rational};
use crate::sh;
use crate::stability::{self, DestabilizerVerdict, SheafNumerics};

fn default_type() -> String {
    "K3^[n]".to_string()
}

fn default_n() -> u32 {
    2
}

fn default_c_x() -> String {
    "1".to_string()
}

fn default_genus() -> u64 {
    5
}

fn default_rank_hint() -> i64 {
    5
}

fn default_ns() -> NsConfig {
    NsConfig {
        labels: vec!["lambda".to_string(), "f".to_string()],
        gram: vec![
            vec!["2".to_string(), "2".to_string()],
            vec!["2".to_string(), "0".to_string()],
        ],
    }
}

/// Néron–Severi block of a config document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NsConfig {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<String>>,
}

/// Scenario configuration. The defaults reproduce the construction
/// exactly; unknown keys are errors, and all rationals are "p/q" strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(rename = "type", default = "default_type")]
    pub deformation_type: String,
    #[serde(default = "default_n")]
    pub n: u32,
    #[serde(rename = "c_X", default = "default_c_x")]
    pub c_x: String,
    /// Optional; defaults to the table value for the type and checked
    /// against it when present.
    #[serde(rename = "r_X", default, skip_serializing_if = "Option::is_none")]
    pub r_x: Option<String>,
    /// Optional; calibrated from χ(O, O) = n + 1 when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q2_square: Option<String>,
    #[serde(default = "default_ns")]
    pub ns: NsConfig,
    #[serde(default = "default_genus")]
    pub genus: u64,
    #[serde(default = "default_rank_hint")]
    pub rank_hint: i64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            deformation_type: default_type(),
            n: default_n(),
            c_x: default_c_x(),
            r_x: None,
            q2_square: None,
            ns: default_ns(),
            genus: default_genus(),
            rank_hint: default_rank_hint(),
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("config error: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Builds and validates the manifold: parses the lattice, checks the
    /// type/r_X table, and calibrates ∫𝔮₂² on fourfolds unless configured.
    pub fn build_manifold(&self) -> Result<ManifoldData> {
        let ty: DeformationType = self.deformation_type.parse()?;
        let c_x = parse_ratio(&self.c_x)?;
        let gram = self
            .ns
            .gram
            .iter()
            .map(|row| row.iter().map(|s| parse_ratio(s)).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        let ns = BilinearSpace::new(self.ns.labels.clone(), gram)?;
        let m = match &self.r_x {
            Some(r) => ManifoldData::with_r_x(ty, self.n, c_x, parse_ratio(r)?, ns)?,
            None => ManifoldData::new(ty, self.n, c_x, ns)?,
        };
        let m = match &self.q2_square {
            Some(k) => m.with_q2_square(parse_ratio(k)?),
            None if self.n == 2 => {
                let k = sh::solve_q2_square(&m)?;
                m.with_q2_square(k)
            }
            None => m,
        };
        Ok(m)
    }
}

/// Outcome of one scenario step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepStatus {
    Pass,
    Fail,
}

/// One named result with its value, provenance routes, expected value and
/// pass/fail status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub name: String,
    pub value: String,
    pub routes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub status: StepStatus,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub caveats: Vec<String>,
}

/// Ordered scenario report; deterministic and bit-identical across runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub steps: Vec<StepReport>,
    pub caveats: Vec<String>,
}

impl ScenarioReport {
    pub fn all_passed(&self) -> bool {
        self.steps.iter().all(|s| s.status == StepStatus::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("report error: {e}")))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("og10 scenario report\n");
        for (i, s) in self.steps.iter().enumerate() {
            let badge = match s.status {
                StepStatus::Pass => "pass",
                StepStatus::Fail => "FAIL",
            };
            out.push_str(&format!("[{badge}] step {:2}  {}\n", i + 1, s.name));
            out.push_str(&format!("          value:    {}\n", s.value));
            if let Some(e) = &s.expected {
                out.push_str(&format!("          expected: {e}\n"));
            }
            for r in &s.routes {
                out.push_str(&format!("          route:    {r}\n"));
            }
            for c in &s.caveats {
                out.push_str(&format!("          caveat:   {c}\n"));
            }
        }
        out.push_str("caveats:\n");
        for c in &self.caveats {
            out.push_str(&format!("  - {c}\n"));
        }
        out.push_str(if self.all_passed() {
            "result: all steps passed\n"
        } else {
            "result: FAILURES PRESENT\n"
        });
        out
    }
}

struct StepRecorder {
    steps: Vec<StepReport>,
}

impl StepRecorder {
    fn new() -> Self {
        Self { steps: Vec::new() }
    }

    fn record(
        &mut self,
        name: &str,
        routes: Vec<String>,
        expected: Option<String>,
        caveats: Vec<String>,
        outcome: Result<(String, bool)>,
    ) {
        let (value, status) = match outcome {
            Ok((value, ok)) => (
                value,
                if ok { StepStatus::Pass } else { StepStatus::Fail },
            ),
            Err(e) => (format!("error: {e}"), StepStatus::Fail),
        };
        self.steps.push(StepReport {
            name: name.to_string(),
            value,
            routes,
            expected,
            status,
            caveats,
        });
    }
}

fn lambda_vec(m: &ManifoldData) -> Result<LatticeVector> {
    m.ns().basis_vector(0)
}

fn f_vec(m: &ManifoldData) -> Result<LatticeVector> {
    m.ns().basis_vector(1)
}

fn ext(m: &ManifoldData, a: Rational, l: Rational, ff: Rational, b: Rational) -> Result<ExtendedVector> {
    let mu = lambda_vec(m)?.scale(&l).add(&f_vec(m)?.scale(&ff))?;
    Ok(ExtendedVector::new(a, mu, b))
}

/// Runs the full scenario. Configuration problems are hard errors; step
/// failures are recorded in the report and the run continues.
pub fn run_og10_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let m = cfg.build_manifold()?;
    m.require_fourfold()
        .map_err(|_| Error::InvalidInput("the scenario runs on a fourfold (n = 2)".into()))?;
    if m.ns().dim() != 2 {
        return Err(Error::InvalidInput(
            "the scenario needs the rank-2 lattice with basis (lambda, f)".into(),
        ));
    }
    let g = cfg.genus;
    let rank_hint = int(cfg.rank_hint);
    let mut rec = StepRecorder::new();

    // (1) NS data and the Mukai-flop isometry from the Hilbert-scheme model
    let flop = (|| -> Result<(String, bool)> {
        let hilb = BilinearSpace::from_ints(&["h", "delta"], &[&[2, 0], &[0, -2]])?;
        // h ↦ lambda, h − delta ↦ f, hence delta ↦ lambda − f
        let map = vec![vec![int(1), int(1)], vec![int(0), int(-1)]];
        let ok = is_isometry(&hilb, m.ns(), &map)?;
        let gram = m
            .ns()
            .gram()
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(render).collect();
                format!("[{}]", cells.join(","))
            })
            .collect::<Vec<_>>()
            .join(",");
        Ok((format!("gram=[{gram}]; flop isometry={ok}"), ok))
    })();
    rec.record(
        "ns-and-flop-isometry",
        vec!["exact Gram pullback of the flop map h->lambda, h-delta->f".into()],
        Some("flop isometry=true".into()),
        vec![],
        flop,
    );

    // (2) the two Mukai lines of the Lagrangian structure sheaves
    let section_line = ext(&m, int(0), int(1), int(-3), int(3)).and_then(MukaiLine::new);
    let union_line = ext(&m, int(0), int(1), int(1), int(-3)).and_then(MukaiLine::new);
    let lines = (|| -> Result<(String, bool)> {
        let s = section_line.as_ref().map_err(Clone::clone)?;
        let u = union_line.as_ref().map_err(Clone::clone)?;
        Ok((
            format!("section: {}; union: {}", s.render(m.ns()), u.render(m.ns())),
            true,
        ))
    })();
    rec.record(
        "mukai-lines",
        vec!["rank-zero support data of the two Lagrangian components".into()],
        Some("section: <lambda - 3f + 3β>; union: <lambda + f - 3β>".into()),
        vec![],
        lines,
    );

    // (3) the Poincaré transform: solved, verified, and regression-checked
    // on the line image (which is never a solver input)
    let solved = equivalences::solve_poincare(&m);
    let mut phi_routes = vec!["constraint solve: β↦f, f↦β, Φ(λ-3f+3β) = -2(α + 5/4 β)".into()];
    let image_line = (|| -> Result<MukaiLine> {
        let sol = solved.as_ref().map_err(Clone::clone)?;
        let u = union_line.as_ref().map_err(Clone::clone)?;
        equivalences::act_line(&sol.isometry, u)
    })();
    let phi_outcome = (|| -> Result<(String, bool)> {
        let sol = solved.as_ref().map_err(Clone::clone)?;
        for n in &sol.notes {
            phi_routes.push(n.clone());
        }
        let phi = &sol.isometry;
        let beta = ExtendedVector::beta(2);
        let f_ext = ExtendedVector::from_h2(f_vec(&m)?);
        let swaps = phi.apply(&beta)? == f_ext && phi.apply(&f_ext)? == beta;
        let image = image_line.as_ref().map_err(Clone::clone)?;
        let expected = ext(&m, int(-2), int(0), int(-6), ratio(3, 2)).and_then(MukaiLine::new)?;
        let image_ok = image == &expected;
        let verified = equivalences::verify_isometry(&m, phi.matrix())?;
        Ok((
            format!(
                "isometry verified={verified}; β↦f,f↦β={swaps}; Φ{} = {}",
                union_line.as_ref().map_err(Clone::clone)?.render(m.ns()),
                image.render(m.ns())
            ),
            verified && swaps && image_ok,
        ))
    })();
    rec.record(
        "poincare-isometry",
        phi_routes,
        Some("exact q̃-isometry with Φ<lambda + f - 3β> = <-2α - 6f + 3/2 β>".into()),
        vec!["the equivalence action is fixed only up to sign; lines are projective".into()],
        phi_outcome,
    );

    // (4) rank normalization of the image line, then twist to c₁ = 0
    let normalized = (|| -> Result<ExtendedVector> {
        let line = image_line.as_ref().map_err(Clone::clone)?;
        normalize_line(line, &rank_hint)
    })();
    let twisted = (|| -> Result<ExtendedVector> {
        let v = normalized.as_ref().map_err(Clone::clone)?;
        twist(&m, v, &f_vec(&m)?.scale(&int(-3)))
    })();
    let norm_outcome = (|| -> Result<(String, bool)> {
        let v = normalized.as_ref().map_err(Clone::clone)?;
        let t = twisted.as_ref().map_err(Clone::clone)?;
        let v_expected = ext(&m, int(5), int(0), int(15), ratio(-15, 4))?;
        let t_expected = ext(&m, int(5), int(0), int(0), ratio(-15, 4))?;
        Ok((
            format!("normalized: {}; twisted: {}", v.render(m.ns()), t.render(m.ns())),
            v == &v_expected && t == &t_expected,
        ))
    })();
    rec.record(
        "normalize-and-twist",
        vec![
            "rank-5 normalization of the image line".into(),
            "twist by -3f kills the first Chern class".into(),
        ],
        Some("normalized: 5α + 15f - 15/4 β; twisted: 5α - 15/4 β".into()),
        vec![],
        norm_outcome,
    );

    // (5) the Mukai vector, by the closed formula and the raw projection
    let mukai_cls = (|| -> Result<crate::sh::SHClass> {
        let t = twisted.as_ref().map_err(Clone::clone)?;
        calculus::mukai_vector(&m, t)
    })();
    let mukai_outcome = (|| -> Result<(String, bool)> {
        let t = twisted.as_ref().map_err(Clone::clone)?;
        let cls = mukai_cls.as_ref().map_err(Clone::clone)?;
        let mut expected = sh::SHClass::unit(int(5), 2);
        expected.deg4_q2 = ratio(-15, 4);
        expected.deg8_pt = ratio(45, 32);
        let raw = calculus::t_project_sym2(&m, &calculus::Sym2Ext::square(t))?
            .scale(&(int(1) / (int(2) * t.a())));
        Ok((
            cls.render(&m),
            cls == &expected && cls == &raw,
        ))
    })();
    rec.record(
        "mukai-vector",
        vec![
            "closed fourfold projection formula".into(),
            "independent raw Sym² projection route".into(),
        ],
        Some("5 - 15/4 q2 + 45/32 pt".into()),
        vec![],
        mukai_outcome,
    );

    // (6) discriminant and the Bogomolov-type inequality
    let disc_outcome = (|| -> Result<(String, bool)> {
        let t = twisted.as_ref().map_err(Clone::clone)?;
        let d = calculus::discriminant_coeff(&m, t)?;
        let ok_b = calculus::bogomolov_ok(&m, t)?;
        let o = ExtendedVector::structure_sheaf(&m);
        let d_o = calculus::discriminant_coeff(&m, &o)?;
        Ok((
            format!(
                "Δ(F0) = {} q2; bogomolov pass={}; Δ(O) = {} q2",
                render(&d),
                ok_b,
                render(&d_o)
            ),
            d == int(100) && ok_b && d_o == int(0),
        ))
    })();
    rec.record(
        "discriminant-bogomolov",
        vec!["Δ_SH = c_X (q̃(ṽ,ṽ) + 2 r_X r²) q2".into()],
        Some("Δ(F0) = 100 q2 ≥ 0; Δ(O) = 0 q2".into()),
        vec![],
        disc_outcome,
    );

    // Ext dimensions from the genus input (used by steps 7–9)
    let ext_dims = LagrangianPair::scenario(g).and_then(|p| lagrangian::reducible_ext(&p));
    let completed_dims = ext_dims.as_ref().ok().map(|d| {
        GradedDims::new(vec![d.get(0), d.get(1), d.get(2), d.get(3), 1])
    });

    // (7) the Euler pairing χ(F0, F0) via three routes
    let euler_outcome = (|| -> Result<(String, bool)> {
        let t = twisted.as_ref().map_err(Clone::clone)?;
        let via_formula = calculus::euler_self(&m, t)?;
        let cls = mukai_cls.as_ref().map_err(Clone::clone)?;
        let via_pairing = sh::mukai_pairing(&m, cls, cls)?;
        let dims = completed_dims
            .as_ref()
            .ok_or_else(|| ext_dims.as_ref().err().cloned().unwrap_or_else(|| {
                Error::Internal("ext dimensions unavailable".into())
            }))?;
        let via_dims = int(lagrangian::euler_from_dims(dims));
        let all = via_formula == int(27) && via_pairing == int(27) && via_dims == int(27);
        Ok((
            format!(
                "formula: {}; pairing: {}; ext-sum: {}; q2_square = {}",
                render(&via_formula),
                render(&via_pairing),
                render(&via_dims),
                render(m.q2_square()?)
            ),
            all,
        ))
    })();
    rec.record(
        "euler-pairing-triple",
        vec![
            "closed Euler formula (-1)^n (n+1) r² (q̃/(2 r_X r²))^n".into(),
            "Mukai pairing of the Mukai vector with itself".into(),
            "alternating sum of the Ext dimensions".into(),
        ],
        Some("27 on all three routes; q2_square = 23/25".into()),
        vec![
            "the Mukai-pairing sign convention weights degree 2k by (-1)^k, calibrated so χ(O,O) = n+1".into(),
            "the Euler formula assumes the Mukai vector lies in the Verbitsky component (automatic for this deformation type)".into(),
        ],
        euler_outcome,
    );

    // (8) Ext dimensions of the Lagrangian calculus
    let ext_outcome = (|| -> Result<(String, bool)> {
        let d = ext_dims.as_ref().map_err(Clone::clone)?;
        let completed = completed_dims.as_ref().expect("dims exist");
        let y = lagrangian::yoneda_form(g)?;
        let expected_reducible: Vec<u64> = vec![
            1,
            2 * g,
            if g == 0 { 0 } else { g * (2 * g - 1) },
            2 * g,
            0,
        ];
        let ok = d.dims() == expected_reducible.as_slice()
            && y.ext1_dim == 2 * g
            && y.ext2_dim == if g == 0 { 0 } else { g * (2 * g - 1) }
            && y.nondegenerate;
        Ok((
            format!(
                "reducible: {}; completed self-Ext: {}; yoneda: ext1={}, ext2={}, nondegenerate={}",
                d.render(),
                completed.render(),
                y.ext1_dim,
                y.ext2_dim,
                y.nondegenerate
            ),
            ok,
        ))
    })();
    rec.record(
        "ext-dimensions",
        vec![
            "long exact sequence with pushforward connecting maps".into(),
            "skew Yoneda pairing on Ext¹ with wedge-square Ext²".into(),
        ],
        Some(format!(
            "reducible: (1, {}, {}, {}, 0); ext1 = {}",
            2 * g,
            if g == 0 { 0 } else { g * (2 * g - 1) },
            2 * g,
            2 * g
        )),
        vec![
            "degrees 3 and 4 of the self-Ext algebra are completed by Serre duality and simplicity [completed-by-duality]".into(),
        ],
        ext_outcome,
    );

    // (9) Euler characteristics along the construction
    let chi_outcome = (|| -> Result<(String, bool)> {
        let chi_g = lagrangian::euler_from_dims(&lagrangian::mixed_ext(&BettiVector::p1())?);
        let o = ExtendedVector::structure_sheaf(&m);
        let chi_o = calculus::euler_self(&m, &o)?;
        let chi_f = int(chi_g) + &chi_o;
        Ok((
            format!(
                "χ(G) = {chi_g}; χ(O) = {}; χ(F'') = {}",
                render(&chi_o),
                render(&chi_f)
            ),
            chi_g == -2 && chi_o == int(3) && chi_f == int(1),
        ))
    })();
    rec.record(
        "euler-characteristics",
        vec!["χ(G) from the curve-shifted Ext dimensions; χ(F'') = χ(G) + χ(O)".into()],
        Some("χ(G) = -2; χ(O) = 3; χ(F'') = 1".into()),
        vec![],
        chi_outcome,
    );

    // (10) slope table and destabilizer verdicts
    let slope_outcome = (|| -> Result<(String, bool)> {
        let f = f_vec(&m)?;
        let l = lambda_vec(&m)?;
        let big = SheafNumerics::new(int(5), f.scale(&int(15)))?;
        let mu_big = stability::slope_poly(&m, &big, &f, &l)?;
        let small = SheafNumerics::new(int(1), f.scale(&int(2)))?;
        let mu_small = stability::slope_poly(&m, &small, &f, &l)?;
        let cmp = stability::compare_slopes(&mu_big, &mu_small);
        // the proportional shorthand: μ ∝ (c₁·f-part) q(h, f), with
        // q(h, f) = ε q(l, f) for h = f + εl
        let q_h_f = EpsPolynomial::term(1, m.ns().pair(&l, &f)?);
        let short_big = q_h_f.scale(&int(3));
        let short_small = q_h_f.scale(&int(2));
        let cmp_short = stability::compare_slopes(&short_big, &short_small);
        let v_ok = stability::destabilizer_c1_verdict(&m, &int(3), &int(0))?
            == DestabilizerVerdict::Consistent
            && stability::destabilizer_c1_verdict(&m, &int(0), &int(1))?
                == DestabilizerVerdict::ViolatesFiberBound
            && stability::destabilizer_c1_verdict(&m, &int(0), &int(-1))?
                == DestabilizerVerdict::ViolatesLimitBound;
        let expected_big = EpsPolynomial::from_terms(&[(2, int(72)), (3, int(36))]);
        let expected_small = EpsPolynomial::from_terms(&[(2, int(48)), (3, int(24))]);
        let ok = mu_big == expected_big
            && mu_small == expected_small
            && cmp == std::cmp::Ordering::Greater
            && cmp_short == std::cmp::Ordering::Greater
            && v_ok;
        Ok((
            format!(
                "μ(F'') = {mu_big}; μ(O(2f)) = {mu_small}; μ(F'') > μ(O(2f)) = {}; shorthand 3q(h,f) = {short_big} > 2q(h,f) = {short_small}; verdicts: (3,0)=consistent, (0,1)=violates_fiber_bound, (0,-1)=violates_limit_bound",
                cmp == std::cmp::Ordering::Greater
            ),
            ok,
        ))
    })();
    rec.record(
        "slope-verdicts",
        vec![
            "Fujiki expansion of ∫ c₁ (f + ελ)³ / rank".into(),
            "leading-term comparison in the limit ε → 0⁺".into(),
            "destabilizer c₁ = b·f + c·λ: fiber bound forces c ≤ 0, limit bound forces c ≥ 0".into(),
        ],
        Some("μ(F'') = 72 eps^2 + 36 eps^3 > μ(O(2f)) = 48 eps^2 + 24 eps^3; consistent iff c = 0".into()),
        vec![],
        slope_outcome,
    );

    // (11) polarization square and divisibility, with the documented
    // discrepancy flagged rather than failed
    let pol_outcome = (|| -> Result<(String, bool)> {
        let v = lambda_vec(&m)?.add(&f_vec(&m)?.scale(&int(2)))?;
        let (square, div) = stability::divisor_square_div(&m, &v)?;
        Ok((
            format!("square = {}, divisibility = {div}", render(&square)),
            square == int(10) && div == 2,
        ))
    })();
    rec.record(
        "polarization-square-divisibility",
        vec!["q(lambda + 2f) and gcd of pairings against the basis".into()],
        Some("square = 10, divisibility = 2".into()),
        vec![
            "the quoted fiberwise square of the ambient polarization is 6; this Gram matrix gives 10 — recorded as an open question, not a failure".into(),
        ],
        pol_outcome,
    );

    Ok(ScenarioReport {
        steps: rec.steps,
        caveats: vec![
            "ext-completion: Ext³ and Ext⁴ of the bundle's self-Ext algebra are filled by Serre duality and simplicity; only Ext¹ and Ext² come from the intersection calculus".into(),
            "sign-convention: the Mukai pairing weights degree 2k by (-1)^k, the unique convention reproducing χ(O,O) = n+1".into(),
            "equivalence-sign: cohomological actions of derived equivalences are fixed only up to sign; all transported values are projective lines, so results are unaffected".into(),
            "polarization-square: q(lambda + 2f) = 10 from the configured Gram matrix versus the quoted square 6 — an open discrepancy, flagged and not resolved".into(),
        ],
    })
}

/// Validates a config document the way `manifold check` does: parse,
/// build, and describe.
pub fn check_manifold(cfg: &ScenarioConfig) -> Result<String> {
    let m = cfg.build_manifold()?;
    let q2 = match m.q2_square() {
        Ok(k) => render(k),
        Err(_) => "unset".to_string(),
    };
    Ok(format!(
        "ok: {} with n = {}, c_X = {}, r_X = {}, ns rank {}, q2_square = {}",
        m.deformation_type(),
        m.n(),
        render(m.c_x()),
        render(m.r_x()),
        m.ns().dim(),
        q2
    ))
}
