//! Single-operation evaluation from a JSON document.
//!
//! The document names an operation and its arguments:
//!
//! ```json
//! { "op": "tilde_q", "v": "5alpha - 15/4 beta", "w": "5alpha - 15/4 beta" }
//! ```
//!
//! Vectors are linear-combination strings over the configured basis labels
//! plus `alpha`/`beta`; rationals are `"p/q"` strings. An optional
//! `"config"` object (same schema as the scenario config) overrides the
//! default manifold.

use serde_json::Value;

use crate::calculus;
use crate::eps::{eps_leading, EpsPolynomial};
use crate::equivalences;
use crate::error::{Error, Result};
use crate::expr;
use crate::extended::{self, ExtendedVector, ManifoldData, MukaiLine};
use crate::lagrangian::{self, BettiVector, GradedDims, LagrangianPair};
use crate::lattice::{is_isometry, BilinearSpace};
use crate::ratio::{parse_ratio, render, Rational};
use crate::scenario::ScenarioConfig;
use crate::sh;
use crate::stability::{self, SheafNumerics};

fn input_err(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn get<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key)
        .ok_or_else(|| input_err(format!("missing field '{key}'")))
}

fn get_str<'a>(doc: &'a Value, key: &str) -> Result<&'a str> {
    get(doc, key)?
        .as_str()
        .ok_or_else(|| input_err(format!("field '{key}' must be a string")))
}

fn get_ratio(doc: &Value, key: &str) -> Result<Rational> {
    parse_ratio(get_str(doc, key)?)
}

fn get_u64(doc: &Value, key: &str) -> Result<u64> {
    get(doc, key)?
        .as_u64()
        .ok_or_else(|| input_err(format!("field '{key}' must be a non-negative integer")))
}

fn get_betti(doc: &Value, key: &str) -> Result<BettiVector> {
    let arr = get(doc, key)?
        .as_array()
        .ok_or_else(|| input_err(format!("field '{key}' must be an array")))?;
    let dims = arr
        .iter()
        .map(|v| {
            v.as_u64()
                .ok_or_else(|| input_err(format!("entries of '{key}' must be non-negative integers")))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(BettiVector::new(dims))
}

fn get_h2(doc: &Value, key: &str, m: &ManifoldData) -> Result<crate::lattice::LatticeVector> {
    expr::parse_h2(m.ns(), get_str(doc, key)?)
}

fn get_ext(doc: &Value, key: &str, m: &ManifoldData) -> Result<ExtendedVector> {
    expr::parse_extended(m.ns(), get_str(doc, key)?)
}

fn get_poly(doc: &Value, key: &str) -> Result<EpsPolynomial> {
    let obj = get(doc, key)?
        .as_object()
        .ok_or_else(|| input_err(format!("field '{key}' must map powers to coefficients")))?;
    let mut p = EpsPolynomial::zero();
    for (pow, coeff) in obj {
        let power: u32 = pow
            .parse()
            .map_err(|_| input_err(format!("bad power '{pow}' in '{key}'")))?;
        let c = coeff
            .as_str()
            .ok_or_else(|| input_err("coefficients must be \"p/q\" strings"))?;
        p.add_term(power, parse_ratio(c)?);
    }
    Ok(p)
}

fn get_space(doc: &Value, key: &str) -> Result<BilinearSpace> {
    let obj = get(doc, key)?;
    let labels = get(obj, "labels")?
        .as_array()
        .ok_or_else(|| input_err("labels must be an array"))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| input_err("labels must be strings"))
        })
        .collect::<Result<Vec<_>>>()?;
    let gram = get_matrix(obj, "gram")?;
    BilinearSpace::new(labels, gram)
}

fn get_matrix(doc: &Value, key: &str) -> Result<Vec<Vec<Rational>>> {
    get(doc, key)?
        .as_array()
        .ok_or_else(|| input_err(format!("field '{key}' must be a matrix")))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| input_err("matrix rows must be arrays"))?
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| input_err("matrix entries must be \"p/q\" strings"))
                        .and_then(parse_ratio)
                })
                .collect()
        })
        .collect()
}

fn graded(doc: &Value, key: &str) -> Result<GradedDims> {
    Ok(GradedDims::new(get_betti(doc, key)?.dims().to_vec()))
}

/// Decodes a graded class: optional keys `deg0`, `deg2`, `square`,
/// `product` (pair of degree-2 expressions), `q2`, `dual`, `pt`.
fn get_sh_class(doc: &Value, key: &str, m: &ManifoldData) -> Result<sh::SHClass> {
    let obj = get(doc, key)?;
    if !obj.is_object() {
        return Err(input_err(format!("field '{key}' must be an object")));
    }
    let mut cls = sh::SHClass::zero(m.ns().dim());
    if obj.get("deg0").is_some() {
        cls.deg0 = get_ratio(obj, "deg0")?;
    }
    if obj.get("deg2").is_some() {
        cls.deg2 = get_h2(obj, "deg2", m)?;
    }
    if obj.get("square").is_some() {
        cls = cls.add(&sh::SHClass::sym_square(&get_h2(obj, "square", m)?))?;
    }
    if let Some(p) = obj.get("product") {
        let pair = p
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| input_err("'product' must be a pair of degree-2 expressions"))?;
        let u = expr::parse_h2(
            m.ns(),
            pair[0].as_str().ok_or_else(|| input_err("'product' entries must be strings"))?,
        )?;
        let v = expr::parse_h2(
            m.ns(),
            pair[1].as_str().ok_or_else(|| input_err("'product' entries must be strings"))?,
        )?;
        cls = cls.add(&sh::SHClass::sym_product(&u, &v)?)?;
    }
    if obj.get("q2").is_some() {
        cls.deg4_q2 += get_ratio(obj, "q2")?;
    }
    if obj.get("dual").is_some() {
        cls.deg6_dual = get_h2(obj, "dual", m)?;
    }
    if obj.get("pt").is_some() {
        cls.deg8_pt += get_ratio(obj, "pt")?;
    }
    Ok(cls)
}

fn isometry_from_spec(doc: &Value, m: &ManifoldData) -> Result<equivalences::ExtIsometry> {
    match get(doc, "iso")? {
        Value::String(s) if s == "poincare" => equivalences::poincare_isometry(m),
        Value::String(s) if s == "identity" => Ok(equivalences::ExtIsometry::identity(m)),
        Value::Object(obj) if obj.contains_key("tensor") => {
            let lam = expr::parse_h2(
                m.ns(),
                obj["tensor"]
                    .as_str()
                    .ok_or_else(|| input_err("tensor twist must be a vector string"))?,
            )?;
            equivalences::tensor_action(m, &lam)
        }
        other => Err(input_err(format!("unknown isometry spec: {other}"))),
    }
}

/// Evaluates one operation document and renders the result as text.
pub fn eval_document(doc_text: &str) -> Result<String> {
    let doc: Value = serde_json::from_str(doc_text)
        .map_err(|e| input_err(format!("expression error: {e}")))?;
    let cfg = match doc.get("config") {
        Some(c) => ScenarioConfig::from_json(&c.to_string())?,
        None => ScenarioConfig::default(),
    };
    let m = cfg.build_manifold()?;
    let op = get_str(&doc, "op")?;

    let out = match op {
        "pair" => render(&m.ns().pair(&get_h2(&doc, "v", &m)?, &get_h2(&doc, "w", &m)?)?),
        "is_isometry" => {
            let src = get_space(&doc, "src")?;
            let dst = get_space(&doc, "dst")?;
            is_isometry(&src, &dst, &get_matrix(&doc, "map")?)?.to_string()
        }
        "eps_leading" => match eps_leading(&get_poly(&doc, "p")?) {
            Some((power, coeff)) => format!("power {power}, coefficient {}", render(&coeff)),
            None => "zero polynomial".to_string(),
        },
        "tilde_q" => render(&extended::tilde_q(
            &m,
            &get_ext(&doc, "v", &m)?,
            &get_ext(&doc, "w", &m)?,
        )?),
        "e_operator" => extended::e_operator(&m, &get_h2(&doc, "lambda", &m)?, &get_ext(&doc, "v", &m)?)?
            .render(m.ns()),
        "twist" => extended::twist(&m, &get_ext(&doc, "v", &m)?, &get_h2(&doc, "lambda", &m)?)?
            .render(m.ns()),
        "normalize_line" => {
            let line = MukaiLine::new(get_ext(&doc, "line", &m)?)?;
            extended::normalize_line(&line, &get_ratio(&doc, "rank")?)?.render(m.ns())
        }
        "fujiki4" => render(&sh::fujiki4(
            &m,
            &get_h2(&doc, "a", &m)?,
            &get_h2(&doc, "b", &m)?,
            &get_h2(&doc, "c", &m)?,
            &get_h2(&doc, "d", &m)?,
        )?),
        "solve_q2_square" => render(&sh::solve_q2_square(&m)?),
        "integrate_product" => render(&sh::integrate_product(
            &m,
            &get_sh_class(&doc, "v", &m)?,
            &get_sh_class(&doc, "w", &m)?,
        )?),
        "mukai_pairing" => render(&sh::mukai_pairing(
            &m,
            &get_sh_class(&doc, "v", &m)?,
            &get_sh_class(&doc, "w", &m)?,
        )?),
        "t_monomial" => calculus::t_monomial(&m, get_u64(&doc, "i")? as u32)?.render(&m),
        "t_alpha_gamma2" => calculus::t_alpha_gamma2(&m, &get_h2(&doc, "gamma", &m)?)?.render(&m),
        "t_lambda_beta" => calculus::t_lambda_beta(&get_h2(&doc, "lambda", &m)?).render(&m),
        "psi_gamma2" => calculus::psi_gamma2(&m, &get_h2(&doc, "gamma", &m)?)?.render(&m),
        "mukai_vector" => calculus::mukai_vector(&m, &get_ext(&doc, "v", &m)?)?.render(&m),
        "discriminant_coeff" => calculus::render_discriminant(&calculus::discriminant_coeff(
            &m,
            &get_ext(&doc, "v", &m)?,
        )?),
        "bogomolov_ok" => calculus::bogomolov_ok(&m, &get_ext(&doc, "v", &m)?)?.to_string(),
        "euler_self" => render(&calculus::euler_self(&m, &get_ext(&doc, "v", &m)?)?),
        "r_x_lookup" => {
            let ty: extended::DeformationType = get_str(&doc, "deformation")?.parse()?;
            render(&calculus::r_x_lookup(ty, get_u64(&doc, "n")? as u32)?)
        }
        "verify_isometry" => {
            equivalences::verify_isometry(&m, &get_matrix(&doc, "matrix")?)?.to_string()
        }
        "poincare_isometry" => {
            let sol = equivalences::solve_poincare(&m)?;
            let alpha = ExtendedVector::alpha(m.ns().dim());
            let lam = ExtendedVector::from_h2(m.ns().basis_vector(0)?);
            format!(
                "Φ(α) = {}; Φ({}) = {}; Φ(f) = β; Φ(β) = f",
                sol.isometry.apply(&alpha)?.render(m.ns()),
                m.ns().labels()[0],
                sol.isometry.apply(&lam)?.render(m.ns())
            )
        }
        "act_line" => {
            let iso = isometry_from_spec(&doc, &m)?;
            let line = MukaiLine::new(get_ext(&doc, "line", &m)?)?;
            equivalences::act_line(&iso, &line)?.render(m.ns())
        }
        "sym2_curve_betti" => {
            let b = lagrangian::sym2_curve_betti(get_u64(&doc, "genus")?);
            format!("{:?}", b.dims())
        }
        "mixed_ext" => lagrangian::mixed_ext(&get_betti(&doc, "w_betti")?)?.render(),
        "self_ext_surface" => lagrangian::self_ext_surface(&get_betti(&doc, "z2_betti")?)?.render(),
        "reducible_ext" => {
            let pair = lagrangian_pair(&doc)?;
            lagrangian::reducible_ext(&pair)?.render()
        }
        "euler_from_dims" => lagrangian::euler_from_dims(&graded(&doc, "dims")?).to_string(),
        "ptwist_transport" => {
            let t = lagrangian::ptwist_transport(&graded(&doc, "dims")?)?;
            let triangles: Vec<String> = t.triangles.iter().map(|tr| tr.render()).collect();
            format!(
                "Ext(E,G) = {}; cohomology degrees {:?}; triangles: {}",
                t.ext_e_g.render(),
                t.cohomology.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
                triangles.join(" | ")
            )
        }
        "yoneda_form" => {
            let y = lagrangian::yoneda_form(get_u64(&doc, "genus")?)?;
            format!(
                "ext1 = {}, ext2 = {}, nondegenerate = {}",
                y.ext1_dim, y.ext2_dim, y.nondegenerate
            )
        }
        "slope_poly" => {
            let f = match doc.get("f") {
                Some(_) => get_h2(&doc, "f", &m)?,
                None => m.ns().basis_vector(1)?,
            };
            let s = SheafNumerics::new(get_ratio(&doc, "rank")?, get_h2(&doc, "c1", &m)?)?;
            stability::slope_poly(&m, &s, &f, &get_h2(&doc, "l", &m)?)?.to_string()
        }
        "compare_slopes" => {
            let a = get_poly(&doc, "a")?;
            let b = get_poly(&doc, "b")?;
            match stability::compare_slopes(&a, &b) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            }
            .to_string()
        }
        "destabilizer_c1_verdict" => stability::destabilizer_c1_verdict(
            &m,
            &get_ratio(&doc, "b")?,
            &get_ratio(&doc, "c")?,
        )?
        .to_string(),
        "divisor_square_div" => {
            let (square, div) = stability::divisor_square_div(&m, &get_h2(&doc, "v", &m)?)?;
            format!("square = {}, divisibility = {div}", render(&square))
        }
        other => return Err(input_err(format!("unknown operation '{other}'"))),
    };
    Ok(out)
}

fn lagrangian_pair(doc: &Value) -> Result<LagrangianPair> {
    let ranks = get_betti(doc, "push_ranks")?;
    if ranks.len() != 3 {
        return Err(input_err("push_ranks must have exactly 3 entries"));
    }
    LagrangianPair::new(
        get_betti(doc, "z2_betti")?,
        get_betti(doc, "w_betti")?,
        [ranks.get(0), ranks.get(1), ranks.get(2)],
    )
}
