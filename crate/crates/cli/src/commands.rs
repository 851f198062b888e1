use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Result};
use cy_core::dga::{DSquaredReport, Dga};
use cy_core::diagram::{Direction, MarkedGraphDiagram, Move, Side, Site};
use cy_core::homology::{
    audit_relations, count_augmentations, count_augmentations_oracle, Assignment, HomologyError, Presentation,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::Input;

/// What a command prints, and the failure that sets exit code 2.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub failure: Option<String>,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, failure: None }
    }
}

fn d_squared_json(r: &DSquaredReport) -> Value {
    let failures: Vec<Value> = r
        .failures()
        .map(|e| json!({"generator": e.generator.to_string(), "degree_ok": e.degree_ok, "residual": e.residual.to_string()}))
        .collect();
    json!({"passed": r.passed(), "checked": r.entries.len(), "failures": failures})
}

fn d_squared_text(r: &DSquaredReport, out: &mut String) {
    if r.passed() {
        writeln!(out, "d^2 = 0 on all {} generators", r.entries.len()).unwrap();
    }
    for e in r.failures() {
        if !e.degree_ok {
            writeln!(out, "d({}) has the wrong degree", e.generator).unwrap();
        }
        writeln!(out, "d^2({}) = {}", e.generator, e.residual).unwrap();
    }
}

fn degree_counts(dga: &Dga) -> Value {
    let m: serde_json::Map<String, Value> =
        dga.count_by_degree().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    Value::Object(m)
}

pub fn build(path: &Path, check_d2: bool, out: Option<&Path>) -> Result<Report> {
    let dga = Input::load(path)?.dga(path)?;
    let mut json = json!({"generators": dga.len(), "by_degree": degree_counts(&dga)});
    let mut text = format!("{} generators", dga.len());
    for (deg, n) in dga.count_by_degree() {
        write!(text, ", {n} in degree {deg}").unwrap();
    }
    text.push('\n');
    let mut failure = None;
    if check_d2 {
        let r = dga.check_d_squared();
        json["d_squared"] = d_squared_json(&r);
        d_squared_text(&r, &mut text);
        if !r.passed() {
            failure = Some(format!("d^2 != 0 on {} generators", r.failures().count()));
        }
    }
    match out {
        Some(p) => fs::write(p, dga.to_json() + "\n")?,
        None => json["dga"] = serde_json::to_value(dga.to_record())?,
    }
    Ok(Report { json, text, failure })
}

pub fn simplify(path: &Path, budget: usize, out: Option<&Path>) -> Result<Report> {
    let dga = Input::load(path)?.dga(path)?;
    let s = dga.simplify(budget);
    let r = s.dga.check_d_squared();
    let steps: Vec<Value> = s
        .steps
        .iter()
        .map(|st| {
            json!({"g": st.g.to_string(), "h": st.h.to_string(), "alpha": st.alpha.to_string(),
                   "replacement": st.replacement.to_string()})
        })
        .collect();
    let mut json = json!({
        "before": dga.len(),
        "after": s.dga.len(),
        "steps": steps,
        "budget_exhausted": s.budget_exhausted,
        "d_squared": d_squared_json(&r),
    });
    let mut text = String::new();
    if s.steps.is_empty() {
        text.push_str("no cancellable pairs\n");
    }
    for st in &s.steps {
        writeln!(text, "cancel {} with {}: {} -> {}", st.g, st.h, st.h, st.replacement).unwrap();
    }
    writeln!(text, "{} generators -> {}", dga.len(), s.dga.len()).unwrap();
    if s.budget_exhausted {
        text.push_str("budget exhausted\n");
    }
    d_squared_text(&r, &mut text);
    match out {
        Some(p) => fs::write(p, s.dga.to_json() + "\n")?,
        None => json["dga"] = serde_json::to_value(s.dga.to_record())?,
    }
    let failure = (!r.passed()).then(|| "d^2 != 0 after simplification".to_string());
    Ok(Report { json, text, failure })
}

fn presentation_json(p: &Presentation) -> Value {
    let vars: Vec<String> = p.variables.iter().map(|v| v.to_string()).collect();
    let rels: Vec<Value> =
        p.relations.iter().map(|r| json!({"name": r.name, "element": r.element.to_string()})).collect();
    json!({"variables": vars, "relations": rels})
}

pub fn homology(path: &Path, simplify: Option<usize>) -> Result<Report> {
    let p = presentation_of(path, simplify)?.0;
    let mut text = format!("# {} variables, {} relations\n", p.variables.len(), p.relations.len());
    text.push_str(&p.to_text());
    Ok(Report::ok(presentation_json(&p), text))
}

/// Presentation of any input, optionally after simplifying its DGA, with the
/// assignments a relations file lists.
fn presentation_of(path: &Path, simplify: Option<usize>) -> Result<(Presentation, Vec<Assignment>)> {
    let input = Input::load(path)?;
    if let (Some(budget), false) = (simplify, matches!(input, Input::Relations(_))) {
        let dga = input.dga(path)?.simplify(budget).dga;
        return Ok((Presentation::from_dga(&dga), Vec::new()));
    }
    let rf = input.presentation(path)?;
    Ok((rf.presentation, rf.listed))
}

/// Oracle count, falling back to the eliminated presentation when the full
/// enumeration is too large. Returns the count and the route taken.
fn oracle_count(p: &Presentation, n: u64, force: bool) -> Result<(u64, &'static str)> {
    match count_augmentations_oracle(p, n, force) {
        Ok(c) => Ok((c, "direct")),
        Err(HomologyError::Infeasible { .. }) => {
            Ok((count_augmentations_oracle(&p.eliminate().reduced, n, force)?, "eliminated"))
        }
        Err(e) => Err(e.into()),
    }
}

pub struct CountOptions {
    pub mods: Vec<u64>,
    pub oracle: bool,
    pub force: bool,
    pub simplify: Option<usize>,
}

pub fn augcount(path: &Path, opts: &CountOptions) -> Result<Report> {
    let (p, listed) = presentation_of(path, opts.simplify)?;
    let named = |a: &Assignment| serde_json::to_value(p.name_assignment(a)).expect("serializable");
    let show = |a: &Assignment| {
        let n = p.name_assignment(a);
        let mut s = format!("u={}", n.mu);
        for (k, v) in &n.values {
            write!(s, " {k}={v}").unwrap();
        }
        s
    };
    let mut results = Vec::new();
    let mut text = String::new();
    let mut failure = None;
    for &n in &opts.mods {
        let r = count_augmentations(&p, n)?;
        let mut entry = json!({
            "modulus": n,
            "count": r.count,
            "solutions": r.solutions.iter().map(named).collect::<Vec<_>>(),
        });
        if r.truncated {
            entry["truncated"] = json!(true);
        }
        writeln!(text, "mod {n}: {} maps", r.count).unwrap();
        for a in &r.solutions {
            writeln!(text, "  {}", show(a)).unwrap();
        }
        if r.truncated {
            text.push_str("  ...\n");
        }
        if opts.oracle {
            let (c, route) = oracle_count(&p, n, opts.force)?;
            entry["oracle"] = json!({"count": c, "route": route, "agrees": c == r.count});
            writeln!(text, "  oracle ({route}): {c}").unwrap();
            if c != r.count {
                failure = Some(format!("mod {n}: solver counts {} but the oracle counts {c}", r.count));
            }
        }
        if !listed.is_empty() {
            let audit = audit_relations(&p, n, &listed)?;
            let rows: Vec<Value> = audit
                .iter()
                .map(|a| {
                    json!({
                        "relation": a.name,
                        "values_at_listed": a.listed_values,
                        "rejects_listed": a.rejects_listed.iter().map(|&k| named(&listed[k])).collect::<Vec<_>>(),
                        "count_without": a.count_without,
                        "rejects": a.rejects.iter().map(named).collect::<Vec<_>>(),
                    })
                })
                .collect();
            entry["listed"] = json!(listed.iter().map(named).collect::<Vec<_>>());
            entry["audit"] = json!(rows);
            writeln!(text, "  audit of {} listed assignments", listed.len()).unwrap();
            for a in &audit {
                let rejected: Vec<String> = a.rejects_listed.iter().map(|&k| show(&listed[k])).collect();
                let rejected = if rejected.is_empty() { "none".to_string() } else { rejected.join(", ") };
                writeln!(text, "  {}: rejects listed {rejected}; {} maps without it", a.name, a.count_without).unwrap();
            }
        }
        results.push(entry);
    }
    Ok(Report { json: json!({"results": results}), text, failure })
}

fn load_diagram(path: &Path) -> Result<MarkedGraphDiagram> {
    Input::load(path)?.diagram(path)
}

fn summary(d: &MarkedGraphDiagram) -> Value {
    json!({"crossings": d.crossing_count(), "vertices": d.vertex_count(), "free_loops": d.free_loops()})
}

pub struct MoveOptions<'a> {
    pub mv: Move,
    pub direction: Direction,
    pub list: bool,
    pub site: Option<usize>,
    pub out: Option<&'a Path>,
}

pub fn apply_move(path: &Path, opts: &MoveOptions, rng: &mut ChaCha8Rng) -> Result<Report> {
    let d = load_diagram(path)?;
    let sites = d.enumerate_move_sites(opts.mv, opts.direction);
    let dir = serde_json::to_value(opts.direction)?;
    if opts.list {
        let mut text = format!("{} {} sites for {}\n", sites.len(), dir.as_str().unwrap_or(""), opts.mv);
        for (k, s) in sites.iter().enumerate() {
            writeln!(text, "{k}: {}", serde_json::to_string(&s.locus)?).unwrap();
        }
        let json = json!({"move": opts.mv.as_str(), "direction": dir, "sites": sites});
        return Ok(Report::ok(json, text));
    }
    if sites.is_empty() {
        bail!("no {} site for {}", dir.as_str().unwrap_or(""), opts.mv);
    }
    let k = match opts.site {
        Some(k) if k < sites.len() => k,
        Some(k) => bail!("site {k} out of range, {} sites", sites.len()),
        None => rng.gen_range(0..sites.len()),
    };
    let after = d.apply_move(&sites[k])?;
    let mut json = json!({"site_index": k, "site": sites[k], "before": summary(&d), "after": summary(&after)});
    let text = format!(
        "{} at site {k} of {}: {} crossings, {} vertices\n",
        opts.mv,
        sites.len(),
        after.crossing_count(),
        after.vertex_count()
    );
    match opts.out {
        Some(p) => fs::write(p, after.to_json() + "\n")?,
        None => json["diagram"] = serde_json::to_value(after.data())?,
    }
    Ok(Report::ok(json, text))
}

fn counts(d: &MarkedGraphDiagram, mods: &[u64]) -> Result<BTreeMap<u64, u64>> {
    let p = Presentation::from_table(&d.crossing_table()?);
    mods.iter().map(|&n| Ok((n, count_augmentations(&p, n)?.count))).collect()
}

fn inverse_direction(mv: Move, dir: Direction) -> Direction {
    match (mv.is_involution(), dir) {
        (true, d) => d,
        (false, Direction::Forward) => Direction::Backward,
        (false, Direction::Backward) => Direction::Forward,
    }
}

pub fn invariance(path: &Path, moves: &[Move], mods: &[u64], rng: &mut ChaCha8Rng) -> Result<Report> {
    let d = load_diagram(path)?;
    let base = counts(&d, mods)?;
    let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or("").to_string();
    let mut entries = Vec::new();
    let mut text = format!("{id}: counts {}\n", show_counts(&base));
    let mut failed = Vec::new();
    for &mv in moves {
        let mut chosen = None;
        for dir in [Direction::Forward, Direction::Backward] {
            let sites = d.enumerate_move_sites(mv, dir);
            if !sites.is_empty() {
                let k = rng.gen_range(0..sites.len());
                chosen = Some((dir, k, sites[k].clone()));
                break;
            }
        }
        let Some((dir, k, site)) = chosen else {
            entries.push(json!({"move": mv.as_str(), "status": "no_site"}));
            writeln!(text, "{mv}: no site").unwrap();
            continue;
        };
        let after = d.apply_move(&site)?;
        let moved = counts(&after, mods)?;
        let restored = restores(&after, &d, mv, inverse_direction(mv, dir));
        let pass = moved == base;
        if !pass {
            failed.push(mv.to_string());
        }
        entries.push(json!({
            "move": mv.as_str(),
            "status": if pass { "pass" } else { "fail" },
            "site_index": k,
            "site": site,
            "counts_after": count_map(&moved),
            "restored_by_inverse": restored,
        }));
        let status = if pass { "PASS" } else { "FAIL" };
        let undo = if restored { "undone" } else { "not undone" };
        writeln!(text, "{mv}: {status} {} ({undo})", show_counts(&moved)).unwrap();
    }
    let json = json!({
        "base": id,
        "moves": moves.iter().map(|m| m.as_str()).collect::<Vec<_>>(),
        "mods": mods,
        "counts_before": count_map(&base),
        "entries": entries,
        "pass": failed.is_empty(),
    });
    let failure = (!failed.is_empty()).then(|| format!("counts changed under {}", failed.join(", ")));
    Ok(Report { json, text, failure })
}

/// Whether some inverse site takes `after` back to a diagram isomorphic to `base`.
fn restores(after: &MarkedGraphDiagram, base: &MarkedGraphDiagram, mv: Move, dir: Direction) -> bool {
    let sites: Vec<Site> = after.enumerate_move_sites(mv, dir);
    sites.iter().any(|s| after.apply_move(s).is_ok_and(|b| b.is_isomorphic(base)))
}

fn count_map(c: &BTreeMap<u64, u64>) -> Value {
    Value::Object(c.iter().map(|(n, k)| (n.to_string(), json!(k))).collect())
}

fn show_counts(c: &BTreeMap<u64, u64>) -> String {
    c.iter().map(|(n, k)| format!("{k} mod {n}")).collect::<Vec<_>>().join(", ")
}

pub fn resolve(path: &Path, sides: &[Side]) -> Result<Report> {
    let d = load_diagram(path)?;
    let mut out = Vec::new();
    let mut text = String::new();
    for &side in sides {
        let l = d.resolve(side)?;
        let name = serde_json::to_value(side)?;
        let comps = l.components().len() + l.free_loops();
        writeln!(text, "{}: {} crossings, {comps} components", name.as_str().unwrap_or(""), l.crossing_count())
            .unwrap();
        out.push(json!({"side": name, "crossings": l.crossing_count(), "components": comps, "diagram": l.data()}));
    }
    Ok(Report::ok(json!({"resolutions": out}), text))
}

pub fn admissible(path: &Path, budget: usize) -> Result<Report> {
    let d = load_diagram(path)?;
    let r = d.is_admissible(budget)?;
    let status = if r.verified() { "verified" } else { "unknown" };
    let mut text = format!("{status}\n");
    for (name, l) in [("plus", &r.plus), ("minus", &r.minus)] {
        let comps = l.components.map_or("?".to_string(), |c| c.to_string());
        writeln!(
            text,
            "{name}: {:?} after {} moves, {} crossings left, {comps} components",
            l.status, l.moves, l.crossings_left
        )
        .unwrap();
    }
    let json = json!({"status": status, "plus": r.plus, "minus": r.minus});
    Ok(Report::ok(json, text))
}
