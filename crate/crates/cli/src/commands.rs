use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use qdeform_core::deform::{
    braiding, check_associativity, check_fid, check_hexagon, check_hochschild_cocycle, check_module_hom, check_moreids,
    check_mu0, check_qybe, check_twist_identity, check_udf_degree, check_wef, deformation_coeffs, twisted_product,
    TwistOperator, TwistTerm,
};
use qdeform_core::modalg::{
    downup_quotient, natural_module_wo, quantum_plane_wo, smash_product_wo, star_action, super_line, tensor_algebra,
    truncate_ideal, y_submodule_quotient, ModuleAlgebra,
};
use qdeform_core::ncalg::RootVector;
use qdeform_core::pairing::{check_relprime, gram_plus, pair, radical_check};
use qdeform_core::qgroup::{PBWMonomial, QGroup, QGroupParams};
use qdeform_core::report::CheckReport;
use qdeform_core::rtwist::{check_xi_cocycle, twisting_element};
use qdeform_core::scalars::{CycScalar, DEFAULT_WORKING_ORDER};

use crate::config::SessionConfig;
use crate::expr::{eval_text, Elem};

/// What a command hands back for emission.
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn pass(result: Value, text: String) -> Self {
        Outcome { result, text, ok: true }
    }
}

fn group(cfg: &SessionConfig) -> Result<Arc<QGroup>> {
    Ok(QGroup::get(&cfg.params)?)
}

fn eval(qg: &QGroup, text: &str, wo: i64) -> Result<Elem> {
    eval_text(text, qg, wo).map_err(|e| anyhow!("in '{text}': {e}"))
}

/// Collects check reports into a JSON list and a text summary.
#[derive(Default)]
struct Reports {
    items: Vec<Value>,
    lines: Vec<String>,
    ok: bool,
}

impl Reports {
    fn new() -> Self {
        Reports { ok: true, ..Default::default() }
    }

    fn push(&mut self, rep: CheckReport) {
        self.ok &= rep.passed();
        self.lines.push(rep.to_string());
        self.items.push(rep.to_json());
    }

    /// Wraps a list of failure messages from the `qgroup` self-checks.
    fn push_list(&mut self, check: &str, instance: &str, checked: usize, failures: Vec<String>) {
        let mut rep = CheckReport::new(check, instance);
        for _ in 0..checked.saturating_sub(failures.len()) {
            rep.tick();
        }
        for f in failures {
            rep.expect(false, || f);
        }
        self.push(rep);
    }

    fn text(&self) -> String {
        self.lines.join("\n")
    }
}

pub fn build(cfg: &SessionConfig) -> Result<Outcome> {
    let qg = group(cfg)?;
    let p = &cfg.params;
    let degrees: Vec<Value> = qg
        .truncated_degrees()
        .iter()
        .map(|z| json!({ "degree": z.to_string(), "pbw_plus": qg.pbw_basis_plus(z).len() }))
        .collect();
    let roots: Vec<String> = p.roots().iter().map(|(i, j)| format!("({i},{j})")).collect();
    let mut reps = Reports::new();
    let rel = qg.check_relations()?;
    reps.push_list("relations", &p.to_string(), 1, rel);
    let dim = qg.check_pbw_dimension(p.height_bound);
    let pbw = match &dim {
        Ok(k) => json!(k),
        Err(e) => {
            reps.push_list("pbw-dimension", &p.to_string(), 1, vec![e.to_string()]);
            Value::Null
        }
    };
    let text = format!(
        "{p}: {} roots, {} truncated degrees, PBW words checked up to height {}: {}\n{}",
        roots.len(),
        degrees.len(),
        p.height_bound,
        if dim.is_ok() { "ok" } else { "failed" },
        reps.text()
    );
    Ok(Outcome {
        result: json!({ "roots": roots, "truncated_degrees": degrees, "pbw_dimension": pbw, "checks": reps.items }),
        text,
        ok: reps.ok,
    })
}

fn elem_json(x: &Elem, params: &QGroupParams) -> Value {
    let terms: Vec<Value> = x
        .terms
        .iter()
        .map(|(m, c)| json!({ "monomial": m, "display": m.display(params), "coeff": c.to_string() }))
        .collect();
    json!({ "normal_form": x.display(params), "terms": terms })
}

pub fn nf(cfg: &SessionConfig, expr: &str) -> Result<Outcome> {
    let qg = group(cfg)?;
    let x = eval(&qg, expr, cfg.working_order)?;
    let mut result = elem_json(&x, &cfg.params);
    result["input"] = json!(expr);
    Ok(Outcome::pass(result, x.display(&cfg.params)))
}

fn t_free(x: &Elem, what: &str) -> Result<qdeform_core::qgroup::AlgebraElement> {
    x.to_algebra().ok_or_else(|| anyhow!("{what} must not involve t"))
}

pub fn pair_cmd(cfg: &SessionConfig, left: &str, right: &str) -> Result<Outcome> {
    let qg = group(cfg)?;
    let y = t_free(&eval(&qg, left, cfg.working_order)?, "--left")?;
    let x = t_free(&eval(&qg, right, cfg.working_order)?, "--right")?;
    let v = pair(&qg, &y, &x)?;
    Ok(Outcome::pass(
        json!({ "left": y.display(&cfg.params), "right": x.display(&cfg.params), "value": v.to_string() }),
        v.to_string(),
    ))
}

pub fn parse_zeta(s: &str, rank: usize) -> Result<RootVector> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad degree '{s}'"))?;
    if v.len() != rank {
        bail!("degree '{s}' has {} entries, rank is {rank}", v.len());
    }
    Ok(RootVector(v))
}

pub fn gram(cfg: &SessionConfig, zeta: &str) -> Result<Outcome> {
    let qg = group(cfg)?;
    let zeta = parse_zeta(zeta, cfg.params.rank())?;
    let g = gram_plus(&qg, &zeta)?;
    let ell = cfg.params.ell;
    let det = g.determinant(ell);
    let mut result = serde_json::to_value(&g)?;
    result["determinant"] = json!(det.to_string());
    result["invertible"] = json!(g.is_invertible(ell));
    let rows: Vec<String> = g.entries.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")).collect();
    let text = format!("gram({zeta}) size {}, det = {det}\n[{}]", g.size(), rows.join("]\n["));
    Ok(Outcome::pass(result, text))
}

pub fn relprime(n: usize, ell: u32, y: u32, z: u32) -> Outcome {
    let v = check_relprime(n, y as u64, z as u64, ell as u64);
    Outcome::pass(json!(v), v.to_string())
}

pub fn twist(cfg: &SessionConfig) -> Result<Outcome> {
    let f = twisting_element(&cfg.params)?;
    let comps = f.to_json();
    let count: usize = f.components.values().map(|t| t.terms.len()).sum();
    let text = format!("F for {}: {} components, {} terms\n{}", cfg.params, f.components.len(), count, f.total().display(&cfg.params));
    Ok(Outcome::pass(json!({ "components": comps }), text))
}

/// Reads a twist written by `twist --out`, either the full envelope or the bare result.
pub fn load_twist(path: &Path, params: &QGroupParams, wo: i64) -> Result<TwistOperator> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(p) = v.get("params") {
        let file_p = (p["n"].as_u64(), p["ell"].as_u64(), p["y"].as_u64(), p["z"].as_u64());
        let want = (Some(params.n as u64), Some(params.ell as u64), Some(params.y as u64), Some(params.z as u64));
        if file_p != want {
            bail!("{} was written for (n, ell, y, z) = {file_p:?}, session has {want:?}", path.display());
        }
    }
    let comps = v
        .get("result")
        .unwrap_or(&v)
        .get("components")
        .and_then(Value::as_object)
        .ok_or_else(|| anyhow!("{}: no components object", path.display()))?;
    let qg = QGroup::get(&params.clone().with_restricted(false))?;
    let mono = |s: &str| -> Result<PBWMonomial> {
        let x = eval(&qg, s, wo)?;
        match x.terms.iter().next() {
            Some((m, c)) if x.terms.len() == 1 && c.is_one() => Ok(m.clone()),
            _ => bail!("'{s}' is not a PBW monomial"),
        }
    };
    let mut components: BTreeMap<RootVector, Vec<TwistTerm>> = BTreeMap::new();
    for terms in comps.values() {
        for t in terms.as_array().ok_or_else(|| anyhow!("component is not a list"))? {
            let field = |k: &str| t.get(k).and_then(Value::as_str).ok_or_else(|| anyhow!("term without '{k}'"));
            let coeff = eval(&qg, field("coeff")?, wo)?
                .as_scalar()
                .ok_or_else(|| anyhow!("coefficient '{}' is not a scalar", field("coeff").unwrap_or("")))?;
            let right = mono(field("right")?)?;
            let term = TwistTerm { coeff, left: mono(field("left")?)?, right: right.clone() };
            components.entry(right.degree(params)).or_default().push(term);
        }
    }
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "F".into());
    Ok(TwistOperator { name, params: params.clone(), components })
}

/// `builtin`, `identity`, `fc:<c>` or a path to a twist JSON file.
pub fn resolve_twist(spec: &str, cfg: &SessionConfig) -> Result<TwistOperator> {
    let p = &cfg.params;
    match spec {
        "builtin" => Ok(TwistOperator::from_twist(&twisting_element(p)?)),
        "identity" => Ok(TwistOperator::identity(p)),
        _ => {
            if let Some(c) = spec.strip_prefix("fc:") {
                if p.n != 2 {
                    bail!("fc:<c> is defined for n = 2 only");
                }
                let c: i64 = c.parse().with_context(|| format!("bad constant in '{spec}'"))?;
                return Ok(TwistOperator::f_c(p, c)?);
            }
            load_twist(Path::new(spec), p, cfg.working_order)
        }
    }
}

/// Catalog entry as given by `algebra` flags or a `deform --algebra` spec.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSpec {
    pub kind: String,
    pub p: Option<u32>,
    pub beta: Vec<String>,
    pub star: bool,
    pub maxdeg: Option<u32>,
}

pub const KINDS: [&str; 9] = ["natural", "qplane", "tensor", "tensor-trunc", "downup", "ysub", "smash", "superline", "commplane"];

impl AlgebraSpec {
    /// `kind[,p=3][,beta=b1:b2][,maxdeg=4][,star]`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = s.split(',').map(str::trim);
        let kind = parts.next().unwrap_or_default().to_string();
        if !KINDS.contains(&kind.as_str()) {
            bail!("unknown algebra kind '{kind}'; expected one of {}", KINDS.join(", "));
        }
        let mut spec = AlgebraSpec { kind, p: None, beta: Vec::new(), star: false, maxdeg: None };
        for part in parts {
            match part.split_once('=') {
                None if part == "star" => spec.star = true,
                Some(("p", v)) => spec.p = Some(v.parse().with_context(|| format!("bad p in '{part}'"))?),
                Some(("maxdeg", v)) => spec.maxdeg = Some(v.parse().with_context(|| format!("bad maxdeg in '{part}'"))?),
                Some(("beta", v)) => spec.beta = v.split(':').map(String::from).collect(),
                _ => bail!("unrecognised algebra option '{part}'"),
            }
        }
        Ok(spec)
    }

    pub fn build(&self, cfg: &SessionConfig) -> Result<ModuleAlgebra> {
        let p = &cfg.params;
        // Weight ratios on ∗-twisted algebras carry t^{±deg}; keep headroom above the product order.
        let wo = cfg.working_order.max(DEFAULT_WORKING_ORDER);
        let maxdeg = self.maxdeg.unwrap_or(cfg.maxdeg);
        let a = match self.kind.as_str() {
            "natural" => natural_module_wo(p, wo),
            "qplane" => quantum_plane_wo(p, maxdeg, wo)?,
            "tensor" => tensor_algebra(&natural_module_wo(p, wo), maxdeg)?,
            "tensor-trunc" => {
                let t = tensor_algebra(&natural_module_wo(p, wo), maxdeg)?;
                truncate_ideal(&t, self.p.unwrap_or(maxdeg))?
            }
            "downup" => downup_quotient(p, maxdeg)?.with_working_order(wo),
            "ysub" => y_submodule_quotient(p, maxdeg)?.with_working_order(wo),
            "smash" => {
                let qg = group(cfg)?;
                let beta = if self.beta.is_empty() {
                    vec![CycScalar::from_int(p.ell, -1); p.rank()]
                } else {
                    self.beta
                        .iter()
                        .map(|b| {
                            let x = eval(&qg, b, wo)?;
                            x.as_scalar()
                                .and_then(|c| c.as_cyc())
                                .ok_or_else(|| anyhow!("beta value '{b}' must be a t-free scalar"))
                        })
                        .collect::<Result<_>>()?
                };
                smash_product_wo(p, &beta, maxdeg, wo)?
            }
            "superline" => super_line(p, maxdeg)?.with_working_order(wo),
            "commplane" => qdeform_core::modalg::commutative_plane(maxdeg, wo),
            other => bail!("unknown algebra kind '{other}'"),
        };
        if self.star && self.kind != "smash" {
            Ok(star_action(&a)?)
        } else {
            Ok(a)
        }
    }
}

pub fn algebra(cfg: &SessionConfig, spec: &AlgebraSpec) -> Result<Outcome> {
    let a = spec.build(cfg)?;
    let mut reps = Reports::new();
    if a.has_product() {
        reps.push(a.check_module_algebra(a.maxdeg));
    }
    reps.push(a.check_relations_act()?);
    reps.push(a.check_category_n()?);
    reps.push(a.check_ejfj());
    let text = format!("{}: dimension {}, maxdeg {}\n{}", a.name, a.dim(), a.maxdeg, reps.text());
    Ok(Outcome { result: json!({ "algebra": a.to_json(), "checks": reps.items }), text, ok: reps.ok })
}

pub const DEFORM_CHECKS: [&str; 6] = ["assoc", "mu0", "cocycle", "udfdeg", "twist", "unit"];

pub fn deform(cfg: &SessionConfig, spec: &AlgebraSpec, twist_spec: &str, checks: &[String]) -> Result<Outcome> {
    for c in checks {
        if !DEFORM_CHECKS.contains(&c.as_str()) {
            bail!("unknown check '{c}'; expected some of {}", DEFORM_CHECKS.join(","));
        }
    }
    let a = spec.build(cfg)?;
    let f = resolve_twist(twist_spec, cfg)?;
    let d = twisted_product(&a, &f, cfg.working_order)?;
    let degcap = a.maxdeg;
    let mut reps = Reports::new();
    for c in checks {
        match c.as_str() {
            "assoc" => reps.push(check_associativity(&d, degcap)),
            "mu0" => reps.push(check_mu0(&d)?),
            "cocycle" => {
                let mu1 = deformation_coeffs(&d, 1)?;
                reps.push(check_hochschild_cocycle(&mu1, &d.base, degcap));
            }
            "udfdeg" => reps.push(check_udf_degree(&f, &a)?),
            "twist" => reps.push(check_twist_identity(&f, (&a, &a, &a), degcap)?),
            "unit" => reps.push(d.check_unit()),
            _ => unreachable!(),
        }
    }
    let text = format!("{} twisted by {} at order {}\n{}", a.name, f.name, cfg.working_order, reps.text());
    Ok(Outcome { result: json!({ "product": d.to_json(), "checks": reps.items }), text, ok: reps.ok })
}

pub const SUITES: [&str; 14] = [
    "relations", "pbw", "hopf", "closed", "xy", "radical", "qybe", "hexagon", "twist", "wef", "moreids", "modhom", "fid", "xi",
];

pub fn verify(cfg: &SessionConfig, suites: &[String]) -> Result<Outcome> {
    for s in suites {
        if !SUITES.contains(&s.as_str()) {
            bail!("unknown suite '{s}'; expected some of {}", SUITES.join(","));
        }
    }
    let p = &cfg.params;
    let qg = group(cfg)?;
    let inst = p.to_string();
    let needs_twist = suites.iter().any(|s| ["qybe", "hexagon", "twist", "wef", "moreids", "modhom"].contains(&s.as_str()));
    let f = if needs_twist { Some(TwistOperator::from_twist(&twisting_element(p)?)) } else { None };
    let v = natural_module_wo(p, cfg.working_order);
    let mut reps = Reports::new();
    for s in suites {
        let f = || f.as_ref().expect("twist built for this suite");
        match s.as_str() {
            "relations" => reps.push_list("relations", &inst, 1, qg.check_relations()?),
            "pbw" => {
                let r = qg.check_pbw_dimension(p.height_bound);
                reps.push_list("pbw-dimension", &inst, 1, r.err().map(|e| vec![e.to_string()]).unwrap_or_default());
            }
            "hopf" => reps.push_list("hopf-axioms", &inst, 1, qg.check_hopf_axioms(3)?),
            "closed" => reps.push_list("coproduct-closed-forms", &inst, 1, qg.check_delta_closed_forms()?),
            "xy" => reps.push_list("xy-identities", &inst, 1, qg.check_xy_identities(3)?),
            "radical" => {
                let entries = radical_check(p)?;
                let bad = entries.iter().filter(|e| !e.passed || e.tested == 0).map(|e| e.generator.clone()).collect();
                reps.push_list("radical", &inst, entries.len(), bad);
            }
            "qybe" => reps.push(check_qybe(&v, &v, &v, f())?),
            "hexagon" => reps.push(check_hexagon(&v, &v, &v, f())?),
            "twist" => reps.push(check_twist_identity(f(), (&v, &v, &v), 3)?),
            "modhom" => reps.push(check_module_hom(&braiding(&v, &v, f())?)?),
            "wef" => {
                let mut all = CheckReport::new("wef", &inst);
                for zeta in qg.truncated_degrees() {
                    for i in 1..=p.rank() {
                        for z in [zeta.clone(), &zeta + &RootVector::simple(p.rank(), i)] {
                            all.merge(check_wef(&z, i, (&v, &v), f())?);
                        }
                    }
                }
                reps.push(all);
            }
            "moreids" => {
                let mut all = CheckReport::new("moreids", &inst);
                for zeta in qg.truncated_degrees() {
                    all.merge(check_moreids(&zeta, (&v, &v, &v), f())?);
                }
                reps.push(all);
            }
            "fid" => reps.push(check_fid(p, 2)),
            "xi" => {
                let x = check_xi_cocycle(p)?;
                let mut rep = CheckReport::new("xi-cocycle", &inst);
                for _ in 0..x.characters {
                    rep.tick();
                }
                rep.expect(x.nowhere_zero, || "xi vanishes somewhere".into());
                for k in 0..x.cocycle_failures {
                    rep.expect(false, || format!("cocycle failure {}", k + 1));
                }
                reps.push(rep);
            }
            _ => unreachable!(),
        }
    }
    Ok(Outcome { result: json!({ "checks": reps.items }), text: reps.text(), ok: reps.ok })
}

