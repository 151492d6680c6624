//! Command definitions and dispatch. Commands carry no file paths; the
//! presentation text is passed alongside.

use super::parser::{parse, parse_expr, PresentationFile};
use super::printer::{export_dgl, print};
use super::report::{to_value, Report};
use super::Workspace;
use crate::chaincx::{long_toda, toda_coset};
use crate::error::{Error, Result};
use crate::examples::{
    attempt_augmentation, build_rational_pair, build_resolution_fixture, filtration_example, moore_space_bracket,
    verify_resolution_fixture, RationalExamplePair,
};
use crate::lie::{FreeDGL, LieElement};
use crate::polytope::{face_conditions_table, folding_polytope, homology_report, modified_folding_polytope};
use crate::ring::fmt_scalar;
use clap::{Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExampleName {
    /// The rational pair A, B and their separating triple product.
    Rational,
    /// The mod-2 Moore space bracket.
    Moore,
    /// The filtration index certified by the Moore bracket.
    Filtration,
    /// The truncated simplicial resolution and its augmentation.
    Resolution,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Validate every block: DGL axioms, d∘d = 0, chain-map status of maps.
    Check,
    /// Homology of the DGLs (dimensions over Q) and chain complexes (groups).
    Homology {
        /// Restrict to one object.
        #[arg(long)]
        #[serde(default)]
        object: Option<String>,
        #[arg(long)]
        #[serde(default)]
        lo: Option<i64>,
        #[arg(long)]
        #[serde(default)]
        hi: Option<i64>,
    },
    /// Whether a cycle of a DGL bounds; prints a witness u with d(u) = class.
    IsBoundary {
        #[arg(long)]
        object: String,
        #[arg(long = "class")]
        class: String,
    },
    /// Lie triple product of three cycles, bounding elements solved for.
    Massey {
        #[arg(long)]
        object: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Toda bracket <f, g, h> of three maps, as a coset.
    Toda {
        /// Comma-separated names f,g,h.
        #[arg(long, value_delimiter = ',', required = true)]
        maps: Vec<String>,
    },
    /// Long Toda bracket of a composable chain d_1,…,d_n (left to right).
    LongToda {
        #[arg(long, value_delimiter = ',', required = true)]
        maps: Vec<String>,
    },
    /// Folding polytope homology report.
    Polytope {
        #[arg(long)]
        n: usize,
        /// Use the modified polytope.
        #[arg(long)]
        #[serde(default)]
        modified: bool,
        /// Include the facet role table.
        #[arg(long)]
        #[serde(default)]
        table: bool,
    },
    /// Verify the truncated simplicial resolution fixture.
    Resolve {
        #[arg(long, default_value_t = 2)]
        #[serde(default = "default_m")]
        m: i64,
    },
    /// Solve for an augmentation of the resolution fixture into a target DGL.
    Augment {
        /// `A`, `B`, or the name of a DGL in the input file.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 2)]
        #[serde(default = "default_m")]
        m: i64,
    },
    /// Run one of the built-in worked examples.
    Example {
        name: ExampleName,
        #[arg(long, default_value_t = 2)]
        #[serde(default = "default_m")]
        m: i64,
        #[arg(long, default_value_t = 3)]
        #[serde(default = "default_n")]
        n: i64,
        /// Print the example's presentation instead of running it.
        #[arg(long)]
        #[serde(default)]
        dsl: bool,
    },
}

fn default_m() -> i64 {
    2
}

fn default_n() -> i64 {
    3
}

impl Command {
    pub fn needs_input(&self) -> bool {
        matches!(
            self,
            Command::Check | Command::Homology { .. } | Command::IsBoundary { .. } | Command::Massey { .. } | Command::Toda { .. } | Command::LongToda { .. }
        )
    }
}

fn expr_text(d: &FreeDGL, e: &LieElement) -> String {
    d.to_expr(e).to_string()
}

fn dgl_homology(d: &FreeDGL, lo: Option<i64>, hi: Option<i64>) -> Value {
    let dims = d.homology_dims(lo.unwrap_or(1), hi.unwrap_or(d.truncation()));
    Value::Object(dims.into_iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect())
}

fn chain_homology(c: &crate::chaincx::FreeChainComplex, lo: Option<i64>, hi: Option<i64>) -> Value {
    let (Some(a), Some(b)) = (c.min_degree(), c.max_degree()) else { return json!({}) };
    let (a, b) = (lo.unwrap_or(a), hi.unwrap_or(b));
    Value::Object((a..=b).map(|n| (n.to_string(), Value::String(c.homology(n).describe()))).collect())
}

fn check(ws: &Workspace) -> (bool, Value) {
    let mut ok = true;
    let mut out = serde_json::Map::new();
    for (n, d) in &ws.dgls {
        let r = d.check();
        ok &= r.passed;
        out.insert(n.clone(), json!({ "kind": "dgl", "report": to_value(&r) }));
    }
    for (n, c) in &ws.chains {
        let r = c.validate();
        ok &= r.passed;
        out.insert(n.clone(), json!({ "kind": "chain", "report": to_value(&r) }));
    }
    for (n, m) in &ws.maps {
        out.insert(n.clone(), json!({ "kind": "map", "shift": m.shift().to_string(), "chain_map": m.is_chain_map() }));
    }
    (ok, json!({ "objects": out, "valid": ok }))
}

enum Outcome {
    Ok(Value),
    Obstruction(Value),
}

fn massey(d: &FreeDGL, u: &LieElement, v: &LieElement, w: &LieElement) -> Result<Outcome> {
    let mut bounding = Vec::new();
    for (name, x, y) in [("vw", v, w), ("wu", w, u), ("uv", u, v)] {
        let z = d.bracket(x, y);
        match d.is_boundary(&z)? {
            Some(a) => bounding.push(a),
            None => {
                return Ok(Outcome::Obstruction(json!({
                    "defined": false,
                    "unbounded_pair": name,
                    "bracket": expr_text(d, &z),
                })))
            }
        }
    }
    let p = d.lie_massey(u, v, w, &bounding[0], &bounding[1], &bounding[2])?;
    Ok(Outcome::Ok(json!({
        "defined": true,
        "degree": p.degree.to_string(),
        "representative": expr_text(d, &p.representative),
        "class": p.class.iter().map(fmt_scalar).collect::<Vec<_>>(),
        "indeterminacy": p.indeterminacy.iter().map(|g| g.iter().map(fmt_scalar).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "vanishes": p.vanishes,
        "defining_system": {
            "a_vw": expr_text(d, &bounding[0]),
            "a_wu": expr_text(d, &bounding[1]),
            "a_uv": expr_text(d, &bounding[2]),
        },
    })))
}

fn rational_summary(p: &RationalExamplePair) -> Result<Value> {
    let top = 4 * p.m;
    let (ha, hb) = (p.a.homology_dims(1, top), p.b.homology_dims(1, top));
    let survey_a = RationalExamplePair::bracket_survey(&p.a);
    let survey_b = RationalExamplePair::bracket_survey(&p.b);
    let fa = p.f_in(&p.a);
    let fb = p.f_in(&p.b);
    let wa = p.a.is_boundary(&fa)?;
    let wb = p.b.is_boundary(&fb)?;
    let (a, b, c) = (p.b.generator("a")?, p.b.generator("b")?, p.b.generator("c")?);
    let mb = match massey(&p.b, &a, &b, &c)? {
        Outcome::Ok(v) | Outcome::Obstruction(v) => v,
    };
    let dims = |h: &BTreeMap<i64, usize>| -> Value {
        Value::Object(h.iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect())
    };
    Ok(json!({
        "m": p.m.to_string(),
        "homology": { "A": dims(&ha), "B": dims(&hb) },
        "homology_agrees": ha == hb,
        "brackets_bound": {
            "A": survey_a.iter().all(|s| s.4),
            "B": survey_b.iter().all(|s| s.4),
            "pairs_checked": (survey_a.len() + survey_b.len()).to_string(),
        },
        "f": rational_f(),
        "f_witness": { "A": wa.map(|w| expr_text(&p.a, &w)), "B": wb.map(|w| expr_text(&p.b, &w)) },
        "massey_abc_in_B": mb,
    }))
}

fn rational_f() -> String {
    crate::examples::rational::massey_f().to_string()
}

fn run(cmd: &Command, ws: &Workspace) -> Result<Outcome> {
    Ok(match cmd {
        Command::Check => {
            let (ok, v) = check(ws);
            if !ok {
                return Err(Error::Precondition(format!("presentation fails its checks: {}", super::report::canonical(&v))));
            }
            Outcome::Ok(v)
        }
        Command::Homology { object, lo, hi } => {
            let mut table = serde_json::Map::new();
            for (n, d) in &ws.dgls {
                if object.as_ref().is_none_or(|o| o == n) {
                    table.insert(n.clone(), dgl_homology(d, *lo, *hi));
                }
            }
            for (n, c) in &ws.chains {
                if object.as_ref().is_none_or(|o| o == n) {
                    table.insert(n.clone(), chain_homology(c, *lo, *hi));
                }
            }
            if let Some(o) = object {
                if table.is_empty() {
                    return Err(Error::UnknownName(o.clone()));
                }
            }
            Outcome::Ok(json!({ "homology": table }))
        }
        Command::IsBoundary { object, class } => {
            let d = ws.dgl(object)?;
            let z = d.expand(&parse_expr(class)?)?;
            let witness = d.boundary_witness_expr(&z)?;
            Outcome::Ok(json!({
                "object": object,
                "class": expr_text(d, &z),
                "degree": z.degree.to_string(),
                "witness": witness.map(|w| w.to_string()),
            }))
        }
        Command::Massey { object, u, v, w } => {
            let d = ws.dgl(object)?;
            let els: Vec<LieElement> = [u, v, w].iter().map(|t| parse_expr(t).and_then(|e| d.expand(&e))).collect::<Result<_>>()?;
            massey(d, &els[0], &els[1], &els[2])?
        }
        Command::Toda { maps } => {
            let [f, g, h] = maps.as_slice() else {
                return Err(Error::Precondition("toda takes exactly three maps".into()));
            };
            let (f, g, h) = (ws.map(f)?, ws.map(g)?, ws.map(h)?);
            match toda_coset(f, g, h) {
                Ok(r) => Outcome::Ok(json!({ "coset": to_value(&r.coset.view()), "degree": r.theta.shift().to_string() })),
                Err(Error::Precondition(why)) => Outcome::Obstruction(json!({ "defined": false, "reason": why })),
                Err(e) => return Err(e),
            }
        }
        Command::LongToda { maps } => {
            let ms: Vec<_> = maps.iter().map(|m| ws.map(m).cloned()).collect::<Result<_>>()?;
            let r = long_toda(&ms)?;
            let stages: Vec<Value> = r
                .stages
                .iter()
                .map(|s| json!({ "i": s.i.to_string(), "j": s.j.to_string(), "group": s.group, "coset": to_value(&s.coset.view()) }))
                .collect();
            match (&r.obstruction, &r.final_value) {
                (Some((i, j)), _) => Outcome::Obstruction(json!({ "stages": stages, "obstruction": { "i": i.to_string(), "j": j.to_string() } })),
                (None, Some(c)) => Outcome::Ok(json!({ "stages": stages, "coset": to_value(&c.view()) })),
                (None, None) => unreachable!("descent ends with a value or an obstruction"),
            }
        }
        Command::Polytope { n, modified, table } => {
            let (c, sel) = if *modified { modified_folding_polytope(*n)? } else { folding_polytope(*n)? };
            let mut v = to_value(&homology_report(&c, &sel, *modified));
            if *table && !*modified {
                v["facets"] = to_value(&face_conditions_table(*n)?);
            }
            Outcome::Ok(v)
        }
        Command::Resolve { m } | Command::Example { name: ExampleName::Resolution, m, .. } => {
            let r = verify_resolution_fixture(*m)?;
            let good = r.structure.passed && r.acyclic_through_dimension_2 && r.solved_augmentation.success;
            let v = to_value(&r);
            if good {
                Outcome::Ok(v)
            } else {
                Outcome::Obstruction(v)
            }
        }
        Command::Augment { target, m } => {
            let fx = build_resolution_fixture(*m)?;
            let t: Arc<FreeDGL> = match (ws.dgls.get(target), target.as_str()) {
                (Some(d), _) => d.clone(),
                (None, "A") => fx.a.clone(),
                (None, "B") => fx.b.clone(),
                (None, other) => return Err(Error::UnknownName(other.to_string())),
            };
            let has_e = t.generator_index("e").is_ok();
            let r = attempt_augmentation(&fx.w, &t, &crate::examples::resolution::base_images(has_e))?;
            let v = to_value(&r);
            if r.success {
                Outcome::Ok(v)
            } else {
                Outcome::Obstruction(v)
            }
        }
        Command::Example { name, m, n, .. } => match name {
            ExampleName::Rational => Outcome::Ok(rational_summary(&build_rational_pair(*m)?)?),
            ExampleName::Moore => Outcome::Ok(to_value(&moore_space_bracket(*n)?)),
            ExampleName::Filtration => Outcome::Ok(to_value(&filtration_example(*n)?)),
            ExampleName::Resolution => unreachable!("handled with resolve"),
        },
    })
}

/// Presentation text for an example, when it has one.
pub fn example_presentation(name: ExampleName, m: i64) -> Result<String> {
    use super::parser::Item;
    let items = match name {
        ExampleName::Rational | ExampleName::Resolution => {
            let p = build_rational_pair(m)?;
            let mut items = vec![Item::Dgl(export_dgl(&p.a)), Item::Dgl(export_dgl(&p.b))];
            if name == ExampleName::Resolution {
                let fx = build_resolution_fixture(m)?;
                for k in 0..=fx.w.top() {
                    items.push(Item::Dgl(export_dgl(fx.w.level(k))));
                }
            }
            items
        }
        ExampleName::Moore | ExampleName::Filtration => {
            let fx = crate::examples::moore::moore_fixture(3, 2);
            vec![
                Item::Chain(super::export_chain("S3", &fx.sphere)),
                Item::Chain(super::export_chain("S4", &fx.top)),
                Item::Chain(super::export_chain("M", &fx.moore)),
                Item::Map(super::export_map("pinch", "M", "S4", &fx.pinch)),
                Item::Map(super::export_map("inc", "S3", "M", &fx.inc)),
                Item::Map(super::export_map("two", "S3", "S3", &fx.mult)),
            ]
        }
    };
    Ok(print(&PresentationFile { items }))
}

/// Dispatch a command against an optional parsed file.
pub fn dispatch(cmd: &Command, file: Option<&PresentationFile>) -> Report {
    let echo = to_value(cmd);
    if cmd.needs_input() && file.is_none() {
        return Report::invalid(echo, &Error::Precondition("this command needs a presentation file".into()));
    }
    let ws = match file.map(Workspace::build).transpose() {
        Ok(ws) => ws.unwrap_or_default(),
        Err(e) => return Report::invalid(echo, &e),
    };
    if let Command::Example { name, m, dsl: true, .. } = cmd {
        return match example_presentation(*name, *m) {
            Ok(text) => Report::ok(echo, json!({ "presentation": text })),
            Err(e) => Report::invalid(echo, &e),
        };
    }
    match run(cmd, &ws) {
        Ok(Outcome::Ok(v)) => Report::ok(echo, v),
        Ok(Outcome::Obstruction(v)) => Report::obstruction(echo, v),
        Err(e) => Report::invalid(echo, &e),
    }
}

/// Parse `text` (when given) and dispatch.
pub fn run_text(cmd: &Command, text: Option<&str>) -> Report {
    match text.map(parse).transpose() {
        Ok(file) => dispatch(cmd, file.as_ref()),
        Err(e) => Report::invalid(to_value(cmd), &e),
    }
}
