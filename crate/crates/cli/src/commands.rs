//! Subcommand bodies. Each returns human-readable text, a JSON value and a success flag.

use std::fmt::Write as _;

use mackey_core::bredon::{bredon_cohomology, bredon_homology, mackey_homology, GradedAbGroups};
use mackey_core::categories::GroupCategories;
use mackey_core::constant::{counterexample_z2z2, cyclic_exactness_check, is_zbar_module, random_ses, Check, ExactnessReport};
use mackey_core::linalg::{FgAbGroup, Int};
use mackey_core::mackey::{box_product, duality_check, lemma_suite, IsoSearch, Obstruction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{invalid, CliError};
use crate::format;
use crate::workspace::{mackey_decl, Object, Workspace};

pub struct Output {
    pub pretty: String,
    pub machine: Value,
    pub success: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    BredonHomology,
    BredonCohomology,
    MackeyHomology,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::BredonHomology => "bredon-h",
            Flavor::BredonCohomology => "bredon-coh",
            Flavor::MackeyHomology => "mackey-h",
        }
    }
}

fn int_json(v: &Int) -> Value {
    v.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(v.to_string()))
}

fn group_json(g: &FgAbGroup) -> Value {
    json!({
        "group": g.to_string(),
        "torsion": g.torsion_invariants().iter().map(int_json).collect::<Vec<_>>(),
        "rank": g.free_rank(),
    })
}

fn checks_json(checks: &[Check]) -> Value {
    checks.iter().map(|c| json!({ "label": c.label, "holds": c.holds })).collect()
}

fn graded(groups: &GradedAbGroups, len: usize, upper: bool) -> (String, Vec<Value>) {
    let top = len.max(groups.nonzero_degrees().last().map_or(0, |n| n + 1)).max(1);
    let mut text = String::new();
    let mut rows = Vec::new();
    for n in 0..top {
        let g = groups.degree(n);
        let _ = writeln!(text, "H{}{n} = {g}", if upper { "^" } else { "_" });
        let mut row = group_json(&g);
        row["degree"] = json!(n);
        rows.push(row);
    }
    (text, rows)
}

pub fn homology(ws: &Workspace, complex: &str, coeff: &str, flavor: Flavor, orbit: Option<&str>) -> Result<Output, CliError> {
    let (group, cats, x) = ws.complex(complex)?;
    let same = |g: &str| if g == group { Ok(()) } else { Err(invalid(format!("'{coeff}' is over {g}, '{complex}' over {group}"))) };
    let (groups, at) = match flavor {
        Flavor::MackeyHomology => {
            let (g, _, m) = ws.mackey(coeff)?;
            same(g)?;
            let k = match orbit {
                Some(label) => cats.ctx.parse_orbit(label).ok_or_else(|| CliError::UnknownName(format!("no orbit '{label}' for {}", cats.ctx.group.name())))?,
                None => cats.ctx.top(),
            };
            (mackey_homology(cats, x, m, k).map_err(invalid)?, Some(cats.ctx.orbit_label(k)))
        }
        _ => {
            if orbit.is_some() {
                return Err(invalid("--orbit applies to mackey-h only"));
            }
            let (g, covariant, system) = ws.coeff(coeff)?;
            same(g)?;
            let wanted = flavor == Flavor::BredonHomology;
            if covariant != wanted {
                let need = if wanted { "a covariant" } else { "a contravariant" };
                return Err(invalid(format!("{} needs {need} coefficient system; '{coeff}' is not", flavor.name())));
            }
            let h = if wanted { bredon_homology(cats, x, system) } else { bredon_cohomology(cats, x, system) };
            (h, None)
        }
    };
    let (pretty, rows) = graded(&groups, x.len(), flavor == Flavor::BredonCohomology);
    let machine = json!({
        "command": "homology",
        "complex": complex,
        "coeff": coeff,
        "flavor": flavor.name(),
        "orbit": at,
        "degrees": rows,
    });
    Ok(Output { pretty, machine, success: true })
}

pub fn boxed(ws: &Workspace, m: &str, n: &str, name: Option<&str>) -> Result<Output, CliError> {
    let (gm, cats, fm) = ws.mackey(m)?;
    let (gn, _, fn_) = ws.mackey(n)?;
    if gm != gn {
        return Err(invalid(format!("'{m}' is over {gm}, '{n}' over {gn}")));
    }
    let lan = box_product(cats, fm, fn_).map_err(invalid)?;
    let label = name.map(str::to_string).unwrap_or_else(|| format!("{m}_box_{n}"));
    let decl = mackey_decl(&label, gm, cats, &lan.functor);
    let mut pretty = String::new();
    format::write_decl(&mut pretty, &decl);
    let values: Vec<Value> = (0..cats.orbit_count())
        .map(|k| {
            let mut v = group_json(lan.functor.value(k));
            v["orbit"] = json!(cats.ctx.orbit_label(k));
            v
        })
        .collect();
    let machine = json!({ "command": "box", "left": m, "right": n, "name": label, "values": values, "declaration": pretty });
    Ok(Output { pretty, machine, success: true })
}

pub fn dual(ws: &Workspace, complex: &str, budget: usize) -> Result<Output, CliError> {
    let (_, cats, x) = ws.complex(complex)?;
    let report = duality_check(cats, x, budget).map_err(invalid)?;
    let mut pretty = String::new();
    let mut rows = Vec::new();
    for (n, d) in report.degrees.iter().enumerate() {
        let status = match d {
            IsoSearch::Found { .. } => "isomorphic".to_string(),
            IsoSearch::Obstructed(Obstruction::Values(a)) => format!("not isomorphic: values differ at {}", cats.ctx.orbit_label(*a)),
            IsoSearch::Obstructed(Obstruction::Modular { prime }) => format!("not isomorphic: every map is singular mod {prime}"),
            IsoSearch::Undetermined => "undetermined within the search budget".to_string(),
        };
        let _ = writeln!(pretty, "degree {n}: {status}");
        rows.push(json!({ "degree": n, "isomorphic": d.is_found(), "status": status }));
    }
    let all = report.all_isomorphic();
    pretty.push_str(if all { "isomorphic in all degrees\n" } else { "not isomorphic in all degrees\n" });
    let machine = json!({ "command": "dual", "complex": complex, "isomorphic": all, "degrees": rows });
    Ok(Output { pretty, machine, success: all })
}

pub fn check_zbar(ws: &Workspace, m: &str) -> Result<Output, CliError> {
    let (_, cats, f) = ws.mackey(m)?;
    let result = is_zbar_module(cats, f);
    let failures = result.as_ref().err().cloned().unwrap_or_default();
    let mut pretty = format!("{}\n", result.is_ok());
    for x in &failures {
        let _ = writeln!(pretty, "  {}", x.description);
    }
    let machine = json!({
        "command": "check-zbar",
        "functor": m,
        "zbar": result.is_ok(),
        "failures": failures.iter().map(|x| json!({
            "source": cats.ctx.orbit_label(x.source),
            "target": cats.ctx.orbit_label(x.target),
            "point": x.point,
            "description": x.description,
        })).collect::<Vec<_>>(),
    });
    Ok(Output { pretty, machine, success: result.is_ok() })
}

fn named_group(name: &str) -> Result<std::sync::Arc<GroupCategories>, CliError> {
    GroupCategories::by_name(name).ok_or_else(|| CliError::UnknownName(format!("no builtin group '{name}'")))
}

fn check_lines(out: &mut String, checks: &[Check]) {
    for c in checks {
        let _ = writeln!(out, "{c}");
    }
}

pub fn verify_counterexample() -> Result<Output, CliError> {
    let r = counterexample_z2z2().map_err(invalid)?;
    let success = r.passed() && r.stated_data_reproduced();
    let mut pretty = format!("{r}");
    let _ = writeln!(
        pretty,
        "{}",
        if success { "all checks pass" } else if r.passed() { "stated data not fully reproduced" } else { "findings fail" }
    );
    let machine = json!({
        "command": "verify",
        "target": "counterexample",
        "passed": success,
        "stated": checks_json(&r.stated),
        "findings": checks_json(&r.findings),
        "fp_equivalent": r.fp,
        "cfp_equivalent": r.cfp,
    });
    Ok(Output { pretty, machine, success })
}

fn exactness_json(r: &ExactnessReport) -> Value {
    r.subgroups
        .iter()
        .map(|s| json!({ "subgroup": s.label, "fixed_exact": s.fixed_exact, "cofixed_exact": s.cofixed_exact, "gamma_zero": s.gamma_zero }))
        .collect()
}

pub fn verify_cyclic(group: &str, samples: usize, seed: u64) -> Result<Output, CliError> {
    let cats = named_group(group)?;
    if cats.ctx.group.cyclic_generator().is_none() {
        return Err(invalid(format!("{group} is not cyclic")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pretty = String::new();
    let mut rows = Vec::new();
    let mut failures = 0;
    for i in 0..samples {
        let ses = random_ses(&cats, &mut rng, 6, true);
        let r = cyclic_exactness_check(&cats, &ses).map_err(invalid)?;
        let holds = r.consistent() && r.fixed_exact() == r.cofixed_exact();
        failures += usize::from(!holds);
        let check = Check::new(
            format!("sample {i}: rank {} → {}, fixed exact {}, cofixed exact {}", ses.n.rank(), ses.m.rank(), r.fixed_exact(), r.cofixed_exact()),
            holds,
        );
        let _ = writeln!(pretty, "{check}");
        rows.push(json!({ "sample": i, "holds": holds, "fixed_exact": r.fixed_exact(), "cofixed_exact": r.cofixed_exact(), "subgroups": exactness_json(&r) }));
    }
    if failures == 0 {
        let _ = writeln!(pretty, "equivalence confirmed on all {samples} samples");
    } else {
        let _ = writeln!(pretty, "equivalence fails on {failures} of {samples} samples");
    }
    let machine = json!({ "command": "verify", "target": "cyclic", "group": group, "seed": seed, "passed": failures == 0, "samples": rows });
    Ok(Output { pretty, machine, success: failures == 0 })
}

pub fn verify_lemmas(group: &str) -> Result<Output, CliError> {
    let cats = named_group(group)?;
    let checks = lemma_suite(&cats).map_err(invalid)?;
    let success = mackey_core::report::all_hold(&checks);
    let mut pretty = String::new();
    check_lines(&mut pretty, &checks);
    let passed = checks.iter().filter(|c| c.holds).count();
    let _ = writeln!(pretty, "{passed} of {} checks pass", checks.len());
    let machine = json!({ "command": "verify", "target": "lemmas", "group": group, "passed": success, "checks": checks_json(&checks) });
    Ok(Output { pretty, machine, success })
}

pub fn info_group(name: &str) -> Result<Output, CliError> {
    let cats = named_group(name)?;
    Ok(describe_group(name, &cats))
}

fn describe_group(name: &str, cats: &GroupCategories) -> Output {
    let ctx = &cats.ctx;
    let mut pretty = format!("{name}: order {}, {} conjugacy classes of subgroups\n", ctx.group.order(), ctx.orbit_count());
    let mut orbits = Vec::new();
    for (k, o) in ctx.orbits.iter().enumerate() {
        let label = ctx.orbit_label(k);
        let _ = writeln!(pretty, "  {k}: {label}, size {}, subgroup {:?}", o.size(), o.subgroup.elements());
        orbits.push(json!({ "index": k, "label": label, "size": o.size(), "subgroup": o.subgroup.elements() }));
    }
    let machine = json!({ "command": "info", "group": name, "order": ctx.group.order(), "orbits": orbits });
    Output { pretty, machine, success: true }
}

pub fn info_file(ws: &Workspace) -> Output {
    let mut pretty = String::new();
    let mut decls = Vec::new();
    for (name, obj) in ws.names() {
        let (kind, summary) = match obj {
            Object::Group(c) => ("group", format!("order {}, {} orbit types", c.ctx.group.order(), c.orbit_count())),
            Object::GSet { gset, .. } => ("gset", format!("{} points", gset.size())),
            Object::Module { module, .. } => ("module", format!("underlying group {}", module.group())),
            Object::Complex { complex, .. } => ("complex", format!("cells per dimension {:?}", (0..complex.len()).map(|n| complex.cells(n).size()).collect::<Vec<_>>())),
            Object::ZGComplex { complex, .. } => ("zgcomplex", format!("{} degrees", complex.len())),
            Object::Mackey { functor, .. } => ("mackey", functor.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")),
            Object::Coeff { covariant, system, .. } => (
                "coeff",
                format!(
                    "{}: {}",
                    if *covariant { "covariant" } else { "contravariant" },
                    system.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
                ),
            ),
        };
        let over = obj.group_name().map(|g| format!(" over {g}")).unwrap_or_default();
        let _ = writeln!(pretty, "{kind} {name}{over}: {summary}");
        decls.push(json!({ "kind": kind, "name": name, "group": obj.group_name(), "summary": summary }));
    }
    Output { pretty, machine: json!({ "command": "info", "declarations": decls }), success: true }
}

/// Canonical text of a file; with `check`, success means the file is already canonical.
pub fn fmt(text: &str, check: bool) -> Result<Output, CliError> {
    let ws = Workspace::load(text)?;
    let canonical = format::serialize(&ws.doc);
    let same = canonical == text;
    let machine = json!({ "command": "fmt", "canonical": same, "text": canonical });
    let pretty = if check { format!("{}\n", if same { "canonical" } else { "not canonical" }) } else { canonical };
    Ok(Output { pretty, machine, success: !check || same })
}
