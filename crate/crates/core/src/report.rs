//! Text and JSON renderings of pipeline reports.
//!
//! Both renderings are produced from the same report value. JSON output is
//! checked against [`validate_theorem_json`] or [`validate_analysis_json`]
//! before it is returned.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::linalg::fmt_vector;
use crate::repkit::{SimplicityCertificate, SimplicityStatus, SimplicityVerdict};
use crate::theoremlab::{Condition4, Conclusion, HypothesisReport, TheoremReport};
use crate::Scalar;

fn set(xs: &[usize]) -> String {
    format!("{{{}}}", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn status_word(s: SimplicityStatus) -> &'static str {
    match s {
        SimplicityStatus::Simple => "simple",
        SimplicityStatus::Reducible => "reducible",
        SimplicityStatus::Inconclusive => "inconclusive",
    }
}

fn verdict_line(v: &SimplicityVerdict) -> String {
    let mut s = status_word(v.status).to_string();
    match &v.certificate {
        Some(SimplicityCertificate::OneDimensional) => s.push_str(" (one-dimensional)"),
        Some(SimplicityCertificate::ScalarCommutant) => s.push_str(" (semisimple, scalar commutant)"),
        Some(SimplicityCertificate::Norton { word, eigenvalue, .. }) => {
            let w: Vec<String> = word.iter().map(|i| format!("s{}", i + 1)).collect();
            let _ = write!(s, " (spin-up certificate: word {}, eigenvalue {})", w.join(" "), eigenvalue);
        }
        None => {}
    }
    if let Some(w) = &v.witness {
        let _ = write!(s, "; invariant subspace {w}");
    }
    s
}

pub fn render_analysis(h: &HypothesisReport) -> String {
    let mut out = String::new();
    out.push_str("Generators:\n");
    for g in &h.generators {
        match &g.reflection {
            Some(r) => {
                let _ = writeln!(
                    out,
                    "  {} {}: alpha = {}, lambda = {}, hyperplane = {}, f = {}",
                    g.number,
                    g.label,
                    fmt_vector(&r.alpha),
                    r.lambda,
                    r.hyperplane,
                    fmt_vector(&r.functional)
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "  {} {}: not a reflection ({})",
                    g.number,
                    g.label,
                    g.error.as_deref().unwrap_or("")
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "Condition 1 (reflections): {}",
        if h.all_reflections { "holds" } else { "fails" }
    );
    out.push_str("Condition 2 (generation): by definition\n");
    let _ = writeln!(out, "Condition 3 (V simple): {}", verdict_line(&h.v_simple));
    match &h.condition4 {
        None => out.push_str("Condition 4 (symmetric fixing): not evaluated\n"),
        Some(Condition4::Holds) => out.push_str("Condition 4 (symmetric fixing): holds\n"),
        Some(Condition4::Violations(v)) => {
            out.push_str("Condition 4 (symmetric fixing): fails\n");
            for (i, j) in v {
                let _ = writeln!(out, "  s{i} moves alpha{j} but s{j} fixes alpha{i}");
            }
        }
    }
    if let Some(g) = &h.graph {
        let edges: Vec<String> = g.edges().map(|(a, b)| format!("{{{a},{b}}}")).collect();
        let _ = writeln!(
            out,
            "Graph: {} vertices, edges {}",
            g.vertex_count(),
            if edges.is_empty() { "none".to_string() } else { edges.join(" ") }
        );
    }
    for r in &h.remarks {
        let _ = writeln!(out, "Remark: {r}");
    }
    out
}

fn combination(terms: &[(usize, Scalar)]) -> String {
    terms
        .iter()
        .map(|(i, c)| format!("({c})*alpha{i}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_theorem(r: &TheoremReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Representation: dimension {}, {} generators over {}",
        r.dim, r.generator_count, r.field
    );
    out.push_str(&render_analysis(&r.hypothesis));
    if let Some(c) = r.graph_connected {
        let _ = writeln!(out, "Graph connected: {}", if c { "yes" } else { "no" });
    }
    if let Some(w) = &r.component_witness {
        let _ = writeln!(out, "  invariant span of one component: {w}");
    }
    if let Some(s) = r.alphas_span {
        let _ = writeln!(
            out,
            "Reflection vectors span V: {} (n = {}, k = {})",
            if s { "yes" } else { "no" },
            r.dim,
            r.generator_count
        );
    }
    if let Some(w) = &r.span_witness {
        let _ = writeln!(out, "  invariant span: {w}");
    }
    if let Some(b) = &r.basis_subset {
        let _ = writeln!(out, "Connected basis subset: {}", set(&b.subset));
        for d in &b.deletions {
            let _ = writeln!(out, "  removed {} using {} = 0", d.removed, combination(&d.dependency));
        }
    }
    if !r.per_degree.is_empty() {
        out.push_str("Exterior powers:\n");
        let _ = writeln!(out, "  {:>3} {:>5} {:>10}  {:<12} verdict", "d", "dim", "commutant", "eigenlines");
        for p in &r.per_degree {
            let e = &p.eigenline_checks;
            let lines = format!(
                "{}/{}{}",
                e.checked - e.failures.len(),
                e.checked,
                if e.exhaustive { "" } else { " sampled" }
            );
            let _ = writeln!(
                out,
                "  {:>3} {:>5} {:>10}  {:<12} {}",
                p.d,
                p.dim,
                p.commutant_dim,
                lines,
                verdict_line(&p.verdict)
            );
        }
    }
    for p in &r.per_degree {
        if let Some(t) = &p.move_trace {
            let _ = writeln!(
                out,
                "Move trace, d = {} ({} of {} subsets reached):",
                p.d, t.visited, t.total
            );
            for s in &t.steps {
                let _ = writeln!(
                    out,
                    "  {} -> {} via s{} (c = {}): gamma{} = gamma{}",
                    set(&s.from),
                    set(&s.to),
                    s.added,
                    s.coefficient,
                    set(&s.from),
                    set(&s.to)
                );
            }
        }
    }
    if !r.pairwise.is_empty() {
        out.push_str("Hom dimensions between exterior powers:\n");
        let mut header = String::from("      ");
        for d in &r.degrees_checked {
            let _ = write!(header, "{d:>4}");
        }
        let _ = writeln!(out, "{header}");
        for (row, d) in r.hom_matrix().iter().zip(&r.degrees_checked) {
            let mut line = format!("  {d:>3} ");
            for cell in row {
                match cell {
                    Some(x) => {
                        let _ = write!(line, "{x:>4}");
                    }
                    None => line.push_str("   -"),
                }
            }
            let _ = writeln!(out, "{line}");
        }
    }
    let _ = writeln!(out, "Conclusion: {}", conclusion_line(&r.conclusion));
    out
}

pub fn conclusion_line(c: &Conclusion) -> String {
    match c {
        Conclusion::TheoremVerified => {
            "verified: every exterior power checked is simple, and no two are isomorphic".into()
        }
        Conclusion::HypothesisFailed { condition, reason } => {
            format!("hypothesis failed ({}): {reason}", serde_json::to_value(condition).unwrap().as_str().unwrap())
        }
        Conclusion::CertificationFailed { detail } => format!("certification failed: {detail}"),
    }
}

pub fn theorem_json(r: &TheoremReport) -> Result<Value, String> {
    let v = serde_json::to_value(r).map_err(|e| e.to_string())?;
    validate_theorem_json(&v)?;
    Ok(v)
}

pub fn analysis_json(h: &HypothesisReport) -> Result<Value, String> {
    let v = serde_json::to_value(h).map_err(|e| e.to_string())?;
    validate_analysis_json(&v)?;
    Ok(v)
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or_else(|| format!("{path}: missing \"{key}\""))
}

fn uint(v: &Value, key: &str, path: &str) -> Result<u64, String> {
    field(v, key, path)?
        .as_u64()
        .ok_or_else(|| format!("{path}.{key}: expected a non-negative integer"))
}

fn array<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Vec<Value>, String> {
    field(v, key, path)?
        .as_array()
        .ok_or_else(|| format!("{path}.{key}: expected an array"))
}

fn boolean(v: &Value, key: &str, path: &str) -> Result<bool, String> {
    field(v, key, path)?
        .as_bool()
        .ok_or_else(|| format!("{path}.{key}: expected a boolean"))
}

fn one_of(v: &Value, key: &str, path: &str, allowed: &[&str]) -> Result<String, String> {
    let s = field(v, key, path)?
        .as_str()
        .ok_or_else(|| format!("{path}.{key}: expected a string"))?;
    if allowed.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("{path}.{key}: unexpected value {s:?}"))
    }
}

fn check_scalar(v: &Value, path: &str) -> Result<(), String> {
    v.as_str()
        .ok_or_else(|| format!("{path}: expected a scalar string"))?
        .parse::<Scalar>()
        .map(|_| ())
        .map_err(|e| format!("{path}: {e}"))
}

fn check_vector(v: &Value, path: &str) -> Result<(), String> {
    let xs = v.as_array().ok_or_else(|| format!("{path}: expected a vector"))?;
    xs.iter().enumerate().try_for_each(|(i, x)| check_scalar(x, &format!("{path}[{i}]")))
}

fn check_subspace(v: &Value, path: &str) -> Result<(), String> {
    let ambient = uint(v, "ambient_dim", path)?;
    let dim = uint(v, "dim", path)?;
    let basis = array(v, "basis", path)?;
    if basis.len() as u64 != dim {
        return Err(format!("{path}: basis has {} rows, dim is {dim}", basis.len()));
    }
    for (i, row) in basis.iter().enumerate() {
        check_vector(row, &format!("{path}.basis[{i}]"))?;
        if row.as_array().map(Vec::len) != Some(ambient as usize) {
            return Err(format!("{path}.basis[{i}]: wrong length"));
        }
    }
    Ok(())
}

fn check_verdict(v: &Value, path: &str) -> Result<String, String> {
    let status = one_of(v, "status", path, &["simple", "reducible", "inconclusive"])?;
    uint(v, "commutant_dim", path)?;
    one_of(
        v,
        "semisimplicity",
        path,
        &["unknown", "assumed", "inherited_from_simple_base"],
    )?;
    let witness = field(v, "witness", path)?;
    match (status.as_str(), witness.is_null()) {
        ("reducible", true) => return Err(format!("{path}: reducible without a witness")),
        ("reducible", false) => check_subspace(witness, &format!("{path}.witness"))?,
        (_, false) => return Err(format!("{path}: witness on a non-reducible verdict")),
        _ => {}
    }
    Ok(status)
}

pub fn validate_analysis_json(v: &Value) -> Result<(), String> {
    let p = "hypothesis";
    let gens = array(v, "generators", p)?;
    let mut all = true;
    for (i, g) in gens.iter().enumerate() {
        let gp = format!("{p}.generators[{i}]");
        uint(g, "number", &gp)?;
        field(g, "label", &gp)?.as_str().ok_or(format!("{gp}.label: expected a string"))?;
        let refl = field(g, "reflection", &gp)?;
        let err = field(g, "error", &gp)?;
        if refl.is_null() == err.is_null() {
            return Err(format!("{gp}: exactly one of reflection and error must be present"));
        }
        if !refl.is_null() {
            check_vector(field(refl, "alpha", &gp)?, &format!("{gp}.alpha"))?;
            check_scalar(field(refl, "lambda", &gp)?, &format!("{gp}.lambda"))?;
            check_subspace(field(refl, "hyperplane", &gp)?, &format!("{gp}.hyperplane"))?;
        } else {
            all = false;
        }
    }
    if boolean(v, "all_reflections", p)? != all {
        return Err(format!("{p}.all_reflections disagrees with the generator list"));
    }
    boolean(v, "generation_by_definition", p)?;
    check_verdict(field(v, "v_simple", p)?, &format!("{p}.v_simple"))?;
    let c4 = field(v, "condition4", p)?;
    let graph = field(v, "graph", p)?;
    if all == c4.is_null() || all == graph.is_null() {
        return Err(format!("{p}: condition4 and graph are present exactly when all generators are reflections"));
    }
    if !c4.is_null() && c4 != &json!("holds") {
        let pairs = c4
            .get("violations")
            .and_then(Value::as_array)
            .ok_or(format!("{p}.condition4: expected \"holds\" or violations"))?;
        if pairs.is_empty() {
            return Err(format!("{p}.condition4: empty violation list"));
        }
    }
    array(v, "remarks", p)?;
    Ok(())
}

pub fn validate_theorem_json(v: &Value) -> Result<(), String> {
    let p = "report";
    one_of(v, "mode", p, &["general", "steinberg"])?;
    let n = uint(v, "dim", p)?;
    uint(v, "generator_count", p)?;
    field(v, "field", p)?;
    let degrees = array(v, "degrees_checked", p)?;
    validate_analysis_json(field(v, "hypothesis", p)?)?;
    for key in ["component_witness", "span_witness"] {
        let w = field(v, key, p)?;
        if !w.is_null() {
            check_subspace(w, &format!("{p}.{key}"))?;
        }
    }
    let b = field(v, "basis_subset", p)?;
    if !b.is_null() {
        let subset = array(b, "subset", p)?;
        if subset.len() as u64 != n {
            return Err(format!("{p}.basis_subset: {} elements for dimension {n}", subset.len()));
        }
        array(b, "deletions", p)?;
    }
    let conclusion = one_of(
        field(v, "conclusion", p)?,
        "kind",
        p,
        &["theorem_verified", "hypothesis_failed", "certification_failed"],
    )?;
    let verified = conclusion == "theorem_verified";
    let per_degree = array(v, "per_degree", p)?;
    if verified && per_degree.len() != degrees.len() {
        return Err(format!("{p}: verified report without one entry per checked degree"));
    }
    for (i, d) in per_degree.iter().enumerate() {
        let dp = format!("{p}.per_degree[{i}]");
        let deg = uint(d, "d", &dp)?;
        if deg > n {
            return Err(format!("{dp}: degree above dimension"));
        }
        uint(d, "dim", &dp)?;
        let cd = uint(d, "commutant_dim", &dp)?;
        let status = check_verdict(field(d, "verdict", &dp)?, &format!("{dp}.verdict"))?;
        if verified && (status != "simple" || cd != 1) {
            return Err(format!("{dp}: verified report with a non-simple degree"));
        }
        let e = field(d, "eigenline_checks", &dp)?;
        uint(e, "checked", &dp)?;
        uint(e, "total", &dp)?;
        if verified && !array(e, "failures", &dp)?.is_empty() {
            return Err(format!("{dp}: verified report with eigenline failures"));
        }
        let t = field(d, "move_trace", &dp)?;
        if !t.is_null() {
            for (j, s) in array(t, "steps", &dp)?.iter().enumerate() {
                check_scalar(field(s, "coefficient", &dp)?, &format!("{dp}.move_trace.steps[{j}]"))?;
            }
        }
    }
    for (i, q) in array(v, "pairwise", p)?.iter().enumerate() {
        let qp = format!("{p}.pairwise[{i}]");
        let (k, l) = (uint(q, "k", &qp)?, uint(q, "l", &qp)?);
        if k >= l {
            return Err(format!("{qp}: expected k < l"));
        }
        let h = uint(q, "hom_dim", &qp)?;
        boolean(q, "dimension_separated", &qp)?;
        if verified && h != 0 {
            return Err(format!("{qp}: verified report with a nonzero hom space"));
        }
    }
    if verified {
        let m = degrees.len();
        let pairs = array(v, "pairwise", p)?.len();
        if pairs != m * m.saturating_sub(1) / 2 {
            return Err(format!("{p}: verified report missing pairwise comparisons"));
        }
    }
    Ok(())
}
