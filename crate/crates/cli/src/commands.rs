//! One handler per subcommand.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use zerocohom::brauer::{brauer_monoid, brute_brauer, brute_weak_cocycles, enumerate_modifications, Modification};
use zerocohom::cohomology::{cohomology, Variant};
use zerocohom::module::trivial_module;
use zerocohom::natsys::{hom_complex_compare, natsys_cohomology, NaturalSystem};
use zerocohom::partial::{build_t, enumerate_t_subsets, t_sandwich};
use zerocohom::presentation::{enumerate, gown_presentation, gown_sequences, parse_presentation, Enumeration, Mode, Presentation};
use zerocohom::schur::{brute_multiplier, schur_multiplier};
use zerocohom::semigroup::{categorical_at_zero_witness, predicates, zero_cancellative_witness, Ideal, Semigroup};
use zerocohom::{Computation, Int};

use crate::args::{Coeffs, Command, Source, VariantArg};
use crate::format::{self, Coefficients};
use crate::oracle::{brute_cohomology, order_of};
use crate::report::{self, Report};
use crate::Failure;

const DEFAULT_BOUND: usize = 10_000;
const DEFAULT_GOWN_LENGTH: usize = 3;

pub fn run(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Validate { source, module } => validate(source, module.as_deref()),
        Command::Cohom { source, coeffs, degree, variant, oracle } => cohom(source, coeffs, *degree, *variant, *oracle),
        Command::Schur { source, group, oracle } => schur(source, group, *oracle),
        Command::Brauer { q, n, oracle } => brauer(*q, *n, *oracle),
        Command::Modifications { source, group } => modifications(source, group.as_deref()),
        Command::Gown { semigroup, presentation, bound, monoid } => {
            gown(semigroup.as_deref(), presentation.as_deref(), *bound, *monoid)
        }
        Command::Enumerate { presentation, bound, monoid } => enumerate_cmd(presentation, *bound, *monoid),
        Command::Tsubsets { group } => tsubsets(group),
        Command::Tsemigroup => tsemigroup(),
        Command::Natsys { source, coeffs, degree } => natsys(source, coeffs, *degree),
        Command::CompareComplexes { source, coeffs, degree } => compare(source, coeffs, *degree),
        Command::Oracle { source, coeffs, degree, variant, q, n } => oracle(source, coeffs, *degree, *variant, *q, *n),
    }
}


fn core<E: Into<zerocohom::Error>>(e: E) -> Failure {
    Failure::from(e.into())
}

fn variant_of(v: VariantArg) -> Variant {
    match v {
        VariantArg::Zero => Variant::Zero,
        VariantArg::Em => Variant::Em,
        VariantArg::Bimodule => Variant::Bimodule,
    }
}

fn variant_name(v: VariantArg) -> &'static str {
    match v {
        VariantArg::Zero => "zero",
        VariantArg::Em => "em",
        VariantArg::Bimodule => "bimodule",
    }
}

fn read_presentation(report: &mut Report, path: &Path) -> Result<Presentation, Failure> {
    let text = report.read_input("presentation", path)?;
    parse_presentation(&text).map_err(core)
}

fn run_enumeration(p: &Presentation, bound: usize, monoid: bool) -> Result<zerocohom::presentation::Enumerated, Failure> {
    if bound == 0 {
        return Err(Failure::Input("bound must be positive".into()));
    }
    let mode = if monoid { Mode::Monoid } else { Mode::Semigroup };
    match enumerate(p, bound, mode).map_err(core)? {
        Enumeration::Complete(e) => Ok(e),
        Enumeration::Truncated { .. } => Err(Failure::Cap(format!("presentation has more than {bound} elements"))),
    }
}

fn load(report: &mut Report, source: &Source) -> Result<Semigroup, Failure> {
    if let Some(path) = &source.semigroup {
        let text = report.read_input("semigroup", path)?;
        return format::parse_semigroup(&text).map_err(Failure::Input);
    }
    if let Some(path) = &source.presentation {
        let p = read_presentation(report, path)?;
        let bound = source.bound.unwrap_or(DEFAULT_BOUND);
        report.arg("bound", bound);
        report.arg("monoid", source.monoid);
        return Ok(run_enumeration(&p, bound, source.monoid)?.semigroup);
    }
    Err(Failure::Input("one of --semigroup or --presentation is required".into()))
}

fn group_arg(report: &mut Report, text: &str) -> Result<zerocohom::AbGroup, Failure> {
    report.arg("group", text);
    format::parse_group(text).map_err(Failure::Input)
}

fn coefficients(report: &mut Report, s: &Semigroup, coeffs: &Coeffs) -> Result<Coefficients, Failure> {
    if let Some(path) = &coeffs.module {
        let text = report.read_input("module", path)?;
        return format::parse_module(s, &text).map_err(Failure::Input);
    }
    if let Some(g) = &coeffs.group {
        let a = group_arg(report, g)?;
        return Ok(Coefficients::Left(trivial_module(s, &a)));
    }
    Err(Failure::Input("one of --module or --group is required".into()))
}

fn compute(c: &Coefficients, n: usize, v: Variant) -> Result<Computation, Failure> {
    match c {
        Coefficients::Left(m) => cohomology(m, n, v),
        Coefficients::Both(b) => cohomology(b, n, v),
    }
    .map_err(core)
}

fn brute(c: &Coefficients, n: usize, v: Variant) -> Option<crate::oracle::BruteCount> {
    match c {
        Coefficients::Left(m) => brute_cohomology(m, n, v),
        Coefficients::Both(b) => brute_cohomology(b, n, v),
    }
}

fn triple(s: &Semigroup, t: Option<(usize, usize, usize)>) -> Value {
    match t {
        Some((a, b, c)) => report::names(s, &[a, b, c]),
        None => Value::Null,
    }
}

fn describe(s: &Semigroup) -> Value {
    let p = predicates(s);
    let flag = |f: Option<bool>| f.map_or(json!("not-applicable"), |b| json!(b));
    json!({
        "order": s.len(),
        "elements": s.names(),
        "zero": s.zero().map(|z| s.name(z)),
        "identity": s.identity().map(|e| s.name(e)),
        "has_zero": p.has_zero,
        "is_monoid": p.is_monoid,
        "categorical_at_zero": flag(p.categorical_at_zero),
        "zero_cancellative": flag(p.zero_cancellative),
    })
}

fn validate(source: &Source, module: Option<&Path>) -> Result<Report, Failure> {
    let mut report = Report::new("validate");
    let s = load(&mut report, source)?;
    let mut result = describe(&s);
    if let Some(path) = module {
        let text = report.read_input("module", path)?;
        let c = format::parse_module(&s, &text).map_err(Failure::Input)?;
        let total = match &c {
            Coefficients::Left(m) => m.validate_total().is_ok(),
            Coefficients::Both(_) => false,
        };
        result["module"] = json!({
            "group": report::group(c.group()),
            "bimodule": matches!(c, Coefficients::Both(_)),
            "total_action": total,
        });
    }
    report.result = result;
    report.witnesses = json!({
        "categorical_at_zero_failure": triple(&s, categorical_at_zero_witness(&s)),
        "zero_cancellative_failure": triple(&s, zero_cancellative_witness(&s)),
    });
    Ok(report)
}

fn cochain_entries(s: &Semigroup, c: &zerocohom::cohomology::Cochain<Int>) -> Value {
    let entries: Vec<Value> = c
        .values
        .iter()
        .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
        .map(|(t, v)| json!({ "tuple": report::names(s, t), "value": report::ints(v) }))
        .collect();
    Value::Array(entries)
}

fn cohom(source: &Source, coeffs: &Coeffs, n: usize, variant: VariantArg, check: bool) -> Result<Report, Failure> {
    let mut report = Report::new("cohom");
    let s = load(&mut report, source)?;
    let c = coefficients(&mut report, &s, coeffs)?;
    report.arg("degree", n);
    report.arg("variant", variant_name(variant));
    report.arg("oracle", check);
    let v = variant_of(variant);
    let h = compute(&c, n, v)?;
    report.result = json!({
        "degree": n,
        "variant": variant_name(variant),
        "coefficients": report::group(c.group()),
        "invariant_factors": report::group(h.group()),
        "cochain_count": h.nerve().len(),
    });
    let gens: Vec<Value> = h.witnesses().iter().map(|w| cochain_entries(&s, w)).collect();
    report.witnesses = json!({ "generating_cocycles": gens });
    if check {
        let computed = order_of(h.group().factors());
        let verdict = match brute(&c, n, v) {
            None => json!({ "status": "skipped" }),
            Some(b) => {
                let ok = computed == Some(b.order());
                json!({
                    "status": if ok { "pass" } else { "fail" },
                    "cocycles": b.cocycles,
                    "coboundaries": b.coboundaries,
                    "brute_order": b.order(),
                })
            }
        };
        let failed = verdict["status"] == "fail";
        report.result["oracle"] = verdict;
        if failed {
            return Err(Failure::Mismatch { message: "cohomology order differs from cochain listing".into(), report });
        }
    }
    Ok(report)
}

fn ideal_names(s: &Semigroup) -> impl Fn(&Ideal) -> Value + '_ {
    move |i: &Ideal| report::names(s, i.members())
}

fn schur(source: &Source, group: &str, check: bool) -> Result<Report, Failure> {
    let mut report = Report::new("schur");
    let s = load(&mut report, source)?;
    let a = group_arg(&mut report, group)?;
    report.arg("oracle", check);
    let m = schur_multiplier(&s, &a).map_err(core)?;
    report.result = report::semilattice(&m.semilattice, ideal_names(&s));
    let mut reps = Vec::new();
    for (i, comp) in m.semilattice.components.iter().enumerate() {
        let k = comp.ngens();
        let gens: Vec<Value> = (0..k)
            .map(|j| {
                let class: Vec<Int> = (0..k).map(|l| if l == j { Int::one() } else { Int::zero() }).collect();
                let f = m.representative(i, &class);
                let rows: Vec<Value> = (0..s.len())
                    .map(|x| {
                        Value::Array((0..s.len()).map(|y| f.get(x, y).map_or(Value::Null, |v| report::ints(v))).collect())
                    })
                    .collect();
                Value::Array(rows)
            })
            .collect();
        reps.push(json!({ "component": i, "generators": gens }));
    }
    report.witnesses = json!({ "factor_sets": reps });
    if check {
        let b = brute_multiplier(&s, &a).map_err(core)?;
        let mismatch = m.semilattice.mismatch(&b);
        report.result["oracle"] = json!({ "status": if mismatch.is_none() { "pass" } else { "fail" } });
        if let Some(message) = mismatch {
            return Err(Failure::Mismatch { message, report });
        }
    }
    Ok(report)
}

fn modification_value(m: &Modification) -> Value {
    let g = m.group();
    let n = g.len();
    let pairs: Vec<Value> = (0..n * n)
        .filter(|&k| m.zero_pairs()[k])
        .map(|k| report::names(g, &[k / n, k % n]))
        .collect();
    json!({ "zero_pairs": pairs, "trivial": m.is_trivial() })
}

fn brauer(q: u64, n: u32, check: bool) -> Result<Report, Failure> {
    let mut report = Report::new("brauer");
    report.arg("q", q);
    report.arg("n", n);
    report.arg("oracle", check);
    let b = brauer_monoid(q, n).map_err(core)?;
    let sl = &b.semilattice;
    let mut result = report::semilattice(sl, modification_value);
    result["component_count"] = json!(sl.components.len());
    result["all_trivial"] = json!(sl.components.iter().all(|g| g.is_trivial()));
    result["units"] = json!(b.extension.units);
    report.result = result;
    if check {
        let brute = brute_brauer(q, n).map_err(core)?;
        let mismatch = sl.mismatch(&brute);
        report.result["oracle"] = json!({ "status": if mismatch.is_none() { "pass" } else { "fail" } });
        if let Some(message) = mismatch {
            return Err(Failure::Mismatch { message, report });
        }
    }
    Ok(report)
}

fn group_source(report: &mut Report, source: &Source, group: Option<&str>) -> Result<Semigroup, Failure> {
    match group {
        Some(g) => {
            let a = group_arg(report, g)?;
            format::group_semigroup(&a).map_err(Failure::Input)
        }
        None => load(report, source),
    }
}

fn modifications(source: &Source, group: Option<&str>) -> Result<Report, Failure> {
    let mut report = Report::new("modifications");
    let g = group_source(&mut report, source, group)?;
    let mods = enumerate_modifications(&g).map_err(core)?;
    let list: Vec<Value> = mods
        .iter()
        .map(|m| {
            let mut v = modification_value(m);
            v["structure_failure"] = json!(m.structure_failure());
            v
        })
        .collect();
    report.result = json!({ "group_order": g.len(), "count": mods.len(), "modifications": list });
    Ok(report)
}

fn gown(semigroup: Option<&Path>, presentation: Option<&Path>, bound: Option<usize>, monoid: bool) -> Result<Report, Failure> {
    let mut report = Report::new("gown");
    if let Some(path) = presentation {
        let p = read_presentation(&mut report, path)?;
        let bound = bound.unwrap_or(DEFAULT_BOUND);
        report.arg("bound", bound);
        report.arg("monoid", monoid);
        let mode = if monoid { Mode::Monoid } else { Mode::Semigroup };
        let g = gown_presentation(&p, bound, mode).map_err(core)?;
        let size = match enumerate(&g, bound, mode).map_err(core)? {
            Enumeration::Complete(e) => json!(e.semigroup.len()),
            Enumeration::Truncated { .. } => json!("unknown"),
        };
        report.result = json!({ "presentation": g.to_text(), "order": size });
        return Ok(report);
    }
    let Some(path) = semigroup else {
        return Err(Failure::Input("one of --semigroup or --presentation is required".into()));
    };
    let text = report.read_input("semigroup", path)?;
    let s = format::parse_semigroup(&text).map_err(Failure::Input)?;
    let length = bound.unwrap_or(DEFAULT_GOWN_LENGTH);
    report.arg("bound", length);
    let classes = gown_sequences(&s, length).map_err(core)?;
    let reps: Vec<Value> = classes
        .classes
        .iter()
        .map(|members| json!({ "representative": report::names(&s, &classes.sequences[members[0]]), "size": members.len() }))
        .collect();
    report.result = json!({ "length_bound": length, "sequence_count": classes.sequences.len(), "classes": reps });
    Ok(report)
}

fn enumerate_cmd(path: &Path, bound: usize, monoid: bool) -> Result<Report, Failure> {
    let mut report = Report::new("enumerate");
    let p = read_presentation(&mut report, path)?;
    report.arg("bound", bound);
    report.arg("monoid", monoid);
    let e = run_enumeration(&p, bound, monoid)?;
    let s = &e.semigroup;
    let mut result = describe(s);
    result["table"] = report::table(s);
    report.result = result;
    let forms: Vec<Value> = e.normal_forms.iter().map(|w| w.as_ref().map_or(Value::Null, |w| json!(p.word_to_string(w)))).collect();
    report.witnesses = json!({ "normal_forms": forms, "generators": report::names(s, &e.generators) });
    Ok(report)
}

fn tsubsets(group: &str) -> Result<Report, Failure> {
    let mut report = Report::new("tsubsets");
    let a = group_arg(&mut report, group)?;
    let g = format::group_semigroup(&a).map_err(Failure::Input)?;
    let sets = enumerate_t_subsets(&g).map_err(core)?;
    let list: Vec<Value> = sets
        .iter()
        .map(|t| Value::Array(t.pairs().iter().map(|&(x, y)| report::names(&g, &[x, y])).collect()))
        .collect();
    report.result = json!({ "group_order": g.len(), "count": sets.len(), "subsets": list });
    Ok(report)
}

fn sandwich_value(group: &Semigroup, p: &[Vec<Option<usize>>]) -> Value {
    Value::Array(
        p.iter()
            .map(|row| Value::Array(row.iter().map(|e| e.map_or(Value::Null, |g| json!(group.name(g)))).collect()))
            .collect(),
    )
}

fn tsemigroup() -> Result<Report, Failure> {
    let mut report = Report::new("tsemigroup");
    let t = build_t().map_err(core)?;
    let s = t.semigroup();
    let (units, _) = s.subsemigroup(&t.units).map_err(core)?;
    let d = &t.rees.group;
    report.result = json!({
        "order": s.len(),
        "unit_group": { "order": units.len(), "abelian": units.is_commutative() },
        "ideal_order": t.ideal.len(),
        "rees": {
            "group_order": d.len(),
            "rows": t.rees.i_count,
            "columns": t.rees.lambda_count,
            "sandwich": sandwich_value(d, &t.rees.sandwich),
            "reference_sandwich": sandwich_value(d, &t_sandwich()),
            "matches_reference": t.matches_t_sandwich,
            "idempotent_generated": t.idempotent_generated,
        },
    });
    report.witnesses = json!({
        "generators": { "alpha": s.name(t.alpha), "beta": s.name(t.beta), "gamma": s.name(t.gamma) },
        "units": report::names(s, &t.units),
        "ideal": report::names(s, &t.ideal),
    });
    Ok(report)
}

fn natural_system(report: &mut Report, source: &Source, coeffs: &Coeffs) -> Result<NaturalSystem, Failure> {
    let s = load(report, source)?;
    match coefficients(report, &s, coeffs)? {
        Coefficients::Left(m) => NaturalSystem::from_zero_module(&m).map_err(core),
        Coefficients::Both(_) => Err(Failure::Input("natural systems are built from one-sided modules".into())),
    }
}

fn natsys(source: &Source, coeffs: &Coeffs, top: usize) -> Result<Report, Failure> {
    let mut report = Report::new("natsys");
    let d = natural_system(&mut report, source, coeffs)?;
    report.arg("degree", top);
    let groups = (0..=top)
        .map(|n| natsys_cohomology(&d, n).map(|g| json!({ "degree": n, "invariant_factors": report::group(&g) })))
        .collect::<Result<Vec<_>, _>>()
        .map_err(core)?;
    report.result = json!({ "cohomology": groups });
    Ok(report)
}

fn compare(source: &Source, coeffs: &Coeffs, top: usize) -> Result<Report, Failure> {
    let mut report = Report::new("compare-complexes");
    let d = natural_system(&mut report, source, coeffs)?;
    report.arg("degree", top);
    let r = hom_complex_compare(&d, top).map_err(core)?;
    let opt = |g: &Option<zerocohom::AbGroup>| g.as_ref().map_or(Value::Null, report::group);
    let degrees: Vec<Value> = r
        .degrees
        .iter()
        .map(|c| {
            json!({
                "degree": c.degree,
                "cochains": report::group(&c.cochains),
                "natural_transformations": report::group(&c.natural_transformations),
                "isomorphism": c.isomorphism,
                "chain_map": c.chain_map,
                "cochain_cohomology": opt(&c.cochain_cohomology),
                "hom_cohomology": opt(&c.hom_cohomology),
            })
        })
        .collect();
    let mismatch = r.mismatch();
    report.result = json!({ "degrees": degrees, "agree": mismatch.is_none() });
    match mismatch {
        None => Ok(report),
        Some(message) => Err(Failure::Mismatch { message, report }),
    }
}

/// Counts distinct classes among all weak cocycles, per component.
fn weak_cocycle_classes(q: u64, n: u32) -> Result<(Vec<Option<BigInt>>, Vec<usize>), Failure> {
    let b = brauer_monoid(q, n).map_err(core)?;
    let all = brute_weak_cocycles(b.extension).map_err(core)?;
    let mut seen: Vec<BTreeSet<Vec<Int>>> = vec![BTreeSet::new(); b.semilattice.components.len()];
    for f in &all {
        let (i, class) = b.class_of(f).map_err(core)?;
        seen[i].insert(class);
    }
    let orders = b.semilattice.components.iter().map(|g| g.order()).collect();
    Ok((orders, seen.iter().map(BTreeSet::len).collect()))
}

fn oracle(
    source: &Source,
    coeffs: &Coeffs,
    degree: Option<usize>,
    variant: VariantArg,
    q: Option<u64>,
    n: Option<u32>,
) -> Result<Report, Failure> {
    let mut report = Report::new("oracle");
    let mut checks: BTreeMap<String, Value> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut record = |name: &str, ok: bool, detail: Value| {
        if !ok {
            failures.push(name.to_string());
        }
        checks.insert(name.to_string(), json!({ "status": if ok { "pass" } else { "fail" }, "detail": detail }));
    };
    if let (Some(q), Some(n)) = (q, n) {
        report.arg("q", q);
        report.arg("n", n);
        let fast = brauer_monoid(q, n).map_err(core)?;
        let slow = brute_brauer(q, n).map_err(core)?;
        let m = fast.semilattice.mismatch(&slow);
        record("brauer_semilattice", m.is_none(), json!(m));
        let (orders, classes) = weak_cocycle_classes(q, n)?;
        let ok = orders.iter().zip(&classes).all(|(o, &c)| o.as_ref() == Some(&BigInt::from(c)));
        let orders: Vec<Value> = orders.iter().map(|o| o.as_ref().map_or(Value::Null, report::int)).collect();
        record("weak_cocycle_classes", ok, json!({ "component_orders": orders, "classes_found": classes }));
    }
    if source.semigroup.is_some() || source.presentation.is_some() {
        let s = load(&mut report, source)?;
        let c = coefficients(&mut report, &s, coeffs)?;
        if let (Coefficients::Left(m), true) = (&c, coeffs.module.is_none()) {
            let a = m.group().clone();
            if s.is_monoid() {
                let fast = schur_multiplier(&s, &a).map_err(core)?;
                let slow = brute_multiplier(&s, &a).map_err(core)?;
                let mm = fast.semilattice.mismatch(&slow);
                record("schur_multiplier", mm.is_none(), json!(mm));
            }
        }
        if let Some(k) = degree {
            report.arg("degree", k);
            report.arg("variant", variant_name(variant));
            let v = variant_of(variant);
            let h = compute(&c, k, v)?;
            match brute(&c, k, v) {
                Some(b) => {
                    let ok = order_of(h.group().factors()) == Some(b.order());
                    record("cohomology_order", ok, json!({ "computed": report::group(h.group()), "brute_order": b.order() }));
                }
                None => {
                    checks.insert("cohomology_order".into(), json!({ "status": "skipped" }));
                }
            }
        }
    }
    if checks.is_empty() {
        return Err(Failure::Input("nothing to check: give --q/--n, or a semigroup with --group or --module".into()));
    }
    report.result = json!({ "checks": checks });
    if failures.is_empty() {
        Ok(report)
    } else {
        Err(Failure::Mismatch { message: failures.join(", "), report })
    }
}
