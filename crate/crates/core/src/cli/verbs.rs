//! One function per verb.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use super::report::{Failure, Outcome, Provenance, WithInput};
use super::{DegreeOracle, Options};
use crate::arith::{is_prime_u64, legendre};
use crate::engine::{self, DegreeReport, SubfieldList};
use crate::error::{Error, Result};
use crate::oracle::{self, Expr};
use crate::radical::Radical;
use crate::rgroup::{ff_group, BaseField, FiniteFieldGroup, RadicalGroup};

type VerbResult = std::result::Result<Outcome, Failure>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn strings(rs: &[Radical]) -> Vec<String> {
    rs.iter().map(Radical::format).collect()
}

fn group(spec: &str) -> std::result::Result<RadicalGroup, Failure> {
    RadicalGroup::parse(spec).input(spec)
}

fn rational(s: &str) -> std::result::Result<BigRational, Failure> {
    BigRational::from_str(s.trim())
        .map_err(|_| Error::Parse { offset: 0, message: format!("'{s}' is not a rational number") })
        .input(s)
}

fn require_q(opts: &Options, verb: &str) -> Result<()> {
    match opts.base {
        BaseField::Rationals => Ok(()),
        BaseField::Fp(_) => Err(Error::Domain(format!("{verb} is only available over Q"))),
    }
}

/// Γ over 𝔽_p from generators of the form `c·ζ^u`.
pub(crate) fn ff_from_spec(p: u64, spec: &str) -> std::result::Result<FiniteFieldGroup, Failure> {
    let gens = crate::radical::parse_list(spec).input(spec)?;
    let mut orders = Vec::new();
    for g in &gens {
        if g.exponents().values().any(|e| !e.is_integer()) {
            return Err(Error::Domain(format!("{g} is not a root of unity times an element of F_{p}")).into());
        }
        if g.primes().any(|q| q == p) {
            return Err(Error::Domain(format!("{g} is not a unit in F_{p}")).into());
        }
        orders.push(g.torsion_order());
    }
    Ok(FiniteFieldGroup::from_torsion(p, &orders)?)
}

fn degree_text(r: &DegreeReport) -> String {
    let mut s = format!("[K(Gamma):K] = {} over {}  (index {}", r.total, r.base, r.index);
    s.push_str(if r.kneser { ", Kneser holds)\n" } else { ")\n" });
    if !r.kneser {
        let _ = writeln!(s, "  Kneser fails: {}", r.kneser_detail.describe());
    }
    let c = &r.cyclotomic;
    let _ = writeln!(s, "  torsion order {}, conductor {}, anchor degree {}", c.torsion_order, c.conductor, c.anchor_degree);
    for (ell, f) in &r.per_prime {
        let branch = to_value(&f.branch);
        let _ = write!(s, "  l={ell}: degree {} ({}), index {}, entangled index {}", f.degree, branch.as_str().unwrap_or(""), f.index, f.entangled_index);
        if let Some(x) = f.factor {
            let _ = write!(s, ", factor {x}");
        }
        if let (Some(t), Some(e)) = (f.tau, f.epsilon) {
            let _ = write!(s, ", tau {t}, epsilon {e}");
        }
        s.push('\n');
    }
    s
}

pub fn degree(opts: &Options, spec: &str) -> VerbResult {
    let report = match opts.base {
        BaseField::Rationals => engine::total_degree(&group(spec)?)?,
        BaseField::Fp(p) => engine::total_degree_ff(&ff_from_spec(p, spec)?)?,
    };
    Ok(Outcome::new(Provenance::Engine, to_value(&report), degree_text(&report)))
}

pub fn index(opts: &Options, spec: &str) -> VerbResult {
    match opts.base {
        BaseField::Rationals => {
            let g = group(spec)?;
            let payload = json!({
                "index": g.index(),
                "invariantFactors": g.invariant_factors(),
                "generators": strings(&g.invariant_generators()),
            });
            let text = format!("|Gamma:Q*| = {}  invariants {:?}\n", g.index(), g.invariant_factors());
            Ok(Outcome::new(Provenance::Engine, payload, text))
        }
        BaseField::Fp(p) => {
            let g = ff_from_spec(p, spec)?;
            let text = format!("|Gamma:F_{p}*| = {}  (Gamma cyclic of order {})\n", g.index(), g.order());
            Ok(Outcome::new(Provenance::Engine, json!({"index": g.index(), "order": g.order()}), text))
        }
    }
}

pub fn entangle(opts: &Options, ell: u64, conductor: Option<u64>) -> VerbResult {
    let e = engine::entangled_generators(opts.base, ell)?;
    let mut payload = json!({
        "base": e.base.to_string(),
        "ell": e.ell,
        "params": to_value(&e.params),
        "generators": strings(&e.generators),
        "squareRoots": to_value(&e.square_roots),
        "description": e.describe(),
    });
    let mut text = format!("{}\n  t = {}, s = {}", e.describe(), e.params.t, e.params.s);
    match e.params.w {
        Some(w) => text.push_str(&format!(", w = {w}\n")),
        None => text.push_str(", w undefined\n"),
    }
    if let Some(n) = conductor {
        if n == 0 {
            return Err(Error::Domain("conductor must be positive".into()).into());
        }
        let r = e.restricted(n);
        text.push_str(&format!("  inside Q(zeta({n})): <{}>\n", strings(&r).join(", ")));
        payload["restricted"] = json!({"conductor": n, "generators": strings(&r)});
    }
    Ok(Outcome::new(Provenance::Engine, payload, text))
}

pub fn minpoly(opts: &Options, expr: &str) -> VerbResult {
    require_q(opts, "minpoly")?;
    let e = Expr::parse(expr).input(expr)?;
    let f = oracle::minpoly(&e, opts.max_degree)?;
    let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
    let payload = json!({"expression": e.to_string(), "minpoly": f.to_string(), "degree": f.degree(), "coefficients": coeffs});
    Ok(Outcome::new(Provenance::Oracle, payload, format!("{f}  (degree {})\n", f.degree())))
}

pub fn check_kneser(opts: &Options, spec: &str) -> VerbResult {
    let (verdict, index) = match opts.base {
        BaseField::Rationals => {
            let g = group(spec)?;
            (engine::kneser_condition(&g), g.index())
        }
        BaseField::Fp(p) => {
            let g = ff_from_spec(p, spec)?;
            (engine::kneser_condition_ff(&g), g.index())
        }
    };
    let mut payload = to_value(&verdict);
    let mut text = format!("{}\n", verdict.describe());
    if verdict.holds {
        payload["degree"] = json!(index);
        text.push_str(&format!("  degree = index = {index}\n"));
    }
    Ok(Outcome::new(Provenance::Engine, payload, text))
}

pub fn check_abelian(opts: &Options, a: &str, n: u32) -> VerbResult {
    require_q(opts, "check-abelian")?;
    let a = rational(a)?;
    let v = engine::schinzel_abelian(&a, n)?;
    let witness = v.witness.as_ref().map(|(m, b)| json!({"m": m, "b": b.to_string()}));
    let text = match &v.witness {
        Some((m, b)) => format!("abelian: a^{m} = ({b})^{n}\n"),
        None => "not abelian\n".to_string(),
    };
    Ok(Outcome::new(Provenance::Engine, json!({"a": a.to_string(), "n": n, "abelian": v.abelian, "witness": witness}), text))
}

pub fn irreducible(opts: &Options, a: &str, n: u32) -> VerbResult {
    require_q(opts, "irreducible")?;
    let a = rational(a)?;
    let irr = engine::lang_irreducible(&a, n)?;
    let poly = if a.is_negative() { format!("x^{n} + {}", -a.clone()) } else { format!("x^{n} - {a}") };
    let text = format!("{poly} is {}\n", if irr { "irreducible" } else { "reducible" });
    Ok(Outcome::new(Provenance::Engine, json!({"a": a.to_string(), "n": n, "irreducible": irr}), text))
}

pub fn gauss(p: u64) -> VerbResult {
    engine::gauss_sum(p)?;
    let coeffs: Vec<String> = (0..p).map(|i| if i == 0 { 0 } else { legendre(i as i64, p).expect("odd prime") }.to_string()).collect();
    let star: i64 = if p % 4 == 1 { p as i64 } else { -(p as i64) };
    let text = format!("g_{p} = [{}]\ncheck: square = {star}\n", coeffs.join(", "));
    Ok(Outcome::new(Provenance::Engine, json!({"p": p, "coefficients": coeffs, "square": star, "check": format!("square = {star}")}), text))
}

pub fn express(opts: &Options, s: &str) -> VerbResult {
    require_q(opts, "express")?;
    let a: Radical = s.parse().map_err(|e: Error| Failure { error: e, input: Some(s.into()) })?;
    match engine::cyclotomic_expression(&a)? {
        Some(e) => {
            let coeffs: Vec<String> = e.value.coeffs().iter().map(|c| c.to_string()).collect();
            let payload = json!({"radical": a.format(), "cyclotomic": true, "conductor": e.conductor, "value": e.value.to_string(), "coefficients": coeffs});
            Ok(Outcome::new(Provenance::Engine, payload, format!("{a} = {e}\n")))
        }
        None => Ok(Outcome::new(
            Provenance::Engine,
            json!({"radical": a.format(), "cyclotomic": false}),
            format!("{a} lies in no cyclotomic field\n"),
        )),
    }
}

pub fn subfields(opts: &Options, spec: &str) -> VerbResult {
    require_q(opts, "subfields")?;
    let list = engine::subfields(&group(spec)?)?;
    let text = match &list {
        SubfieldList::Complete { fields } => {
            let mut s = format!("{} intermediate fields up to conjugacy\n", fields.len());
            for f in fields {
                let gens: Vec<&str> = std::iter::once("Q*").chain(f.generators.iter().map(String::as_str)).collect();
                let _ = writeln!(s, "  degree {:>3}  <{}>", f.degree, gens.join(", "));
            }
            s
        }
        SubfieldList::Inapplicable { reason } => format!("inapplicable: {reason}\n"),
    };
    Ok(Outcome::new(Provenance::Engine, to_value(&list), text))
}

pub fn verify(opts: &Options, spec: &str, oracle: &dyn DegreeOracle) -> VerbResult {
    let (engine_deg, oracle_deg, minpoly) = match opts.base {
        BaseField::Rationals => {
            let g = group(spec)?;
            let e = engine::total_degree(&g)?.total;
            let o = oracle.degree(g.generators(), opts.max_degree, opts.seed)?;
            let mp = match g.generators() {
                [a] if (e as usize) <= opts.max_degree => Some(oracle::radical_minpoly(a)?.to_string()),
                _ => None,
            };
            (e, o, mp)
        }
        BaseField::Fp(p) => {
            let g = ff_from_spec(p, spec)?;
            (engine::total_degree_ff(&g)?.total, oracle.degree_ff(&g)?, None)
        }
    };
    let equal = engine_deg == oracle_deg;
    let mut payload = json!({"engine": engine_deg, "oracle": oracle_deg, "equal": equal});
    let mut text = format!("engine {engine_deg}, oracle {oracle_deg}: {}\n", if equal { "equal" } else { "MISMATCH" });
    if let Some(m) = minpoly {
        text.push_str(&format!("  oracle minpoly {m}\n"));
        payload["minpoly"] = json!(m);
    }
    let mut o = Outcome::new(Provenance::Both, payload, text);
    if !equal {
        o.code = 1;
    }
    Ok(o)
}

pub fn ff(p: u64, e: u64) -> VerbResult {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!("{p} is not prime")).into());
    }
    let g = ff_group(p, e)?;
    let report = engine::total_degree_ff(&g)?;
    let mut payload = to_value(&report);
    payload["e"] = json!(e);
    Ok(Outcome::new(Provenance::Engine, payload, degree_text(&report)))
}
