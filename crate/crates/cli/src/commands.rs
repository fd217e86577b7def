use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use semigroup_lab::constructions::{
    self, build_b2, build_b21, build_ic, build_tn2, tn2_indices, verify_homomorphism,
};
use semigroup_lab::divisor::{has_divisor, Agreement, DivisorWitness, SearchOutcome};
use semigroup_lab::nfb::{build_instance, verify_holds, Certificate, NfbInstance};
use semigroup_lab::words::{
    is_isoterm_bounded, satisfies, Counterexample, IsotermCheck, Satisfaction,
};
use semigroup_lab::{
    cross_validate_ds, cross_validate_lds, green as green_data, in_ds, local_submonoid, power_data,
    Error, FiniteSemigroup, Identity, Word,
};
use serde_json::{json, Value};

use crate::report::{Report, Verdict};
use crate::spec::{element_cap, load_spec, Loaded};
use crate::{CliError, DivisorArgs, Target};

fn load(report: &mut Report, arg: &str) -> Result<Loaded, CliError> {
    let start = Instant::now();
    let loaded = load_spec(arg)?;
    report.timings.push(("load", start.elapsed()));
    report.spec = loaded.provenance();
    Ok(loaded)
}

fn labels(s: &FiniteSemigroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| s.label(x).to_string()).collect()
}

pub fn info(arg: &str) -> Result<Report, CliError> {
    let mut r = Report::new("info", Verdict::Verified);
    let loaded = load(&mut r, arg)?;
    let s = &loaded.semigroup;
    let start = Instant::now();
    let pd = power_data(s);
    r.timings.push(("run", start.elapsed()));
    let idempotents = s.idempotents();
    let identity = s.identity().map(|e| s.label(e).to_string());
    let max_index = pd.index.iter().copied().max().unwrap_or(0);
    let max_period = pd.period.iter().copied().max().unwrap_or(0);

    r.line(format!("{} ({})", loaded.source, s.validation()));
    r.line(format!("order: {}", s.len()));
    if idempotents.len() <= 16 {
        r.line(format!(
            "idempotents: {} [{}]",
            idempotents.len(),
            labels(s, &idempotents).join(", ")
        ));
    } else {
        r.line(format!("idempotents: {}", idempotents.len()));
    }
    r.line(format!(
        "identity: {}",
        identity.as_deref().unwrap_or("none")
    ));
    r.line(format!("commutative: {}", s.is_commutative()));
    r.line(format!("max index: {max_index}, max period: {max_period}"));
    r.line(format!(
        "least k with x^k idempotent: {}; subgroup exponent lcm m: {}",
        pd.uniform_k, pd.subgroup_lcm_m
    ));
    r.result = json!({
        "order": s.len(),
        "idempotents": idempotents.len(),
        "identity": identity,
        "commutative": s.is_commutative(),
        "max_index": max_index,
        "max_period": max_period,
        "uniform_k": pd.uniform_k,
        "subgroup_lcm_m": pd.subgroup_lcm_m,
    });
    Ok(r)
}

/// Size of the principal two-sided ideal `S¹xS¹`.
fn ideal_size(s: &FiniteSemigroup, x: usize) -> usize {
    let mut seen = vec![false; s.len()];
    seen[x] = true;
    let mut queue = vec![x];
    while let Some(y) = queue.pop() {
        for a in s.elements() {
            for z in [s.mul(a, y), s.mul(y, a)] {
                if !seen[z] {
                    seen[z] = true;
                    queue.push(z);
                }
            }
        }
    }
    seen.iter().filter(|&&b| b).count()
}

pub fn green(arg: &str) -> Result<Report, CliError> {
    let mut r = Report::new("green", Verdict::Verified);
    let loaded = load(&mut r, arg)?;
    let s = &loaded.semigroup;
    let start = Instant::now();
    let g = green_data(s);
    // Highest D-classes first.
    let mut order: Vec<(usize, usize)> = (0..g.d.len())
        .map(|c| (ideal_size(s, g.d.class(c)[0]), c))
        .collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let d_sizes: Vec<usize> = order.iter().map(|&(_, c)| g.d.class(c).len()).collect();

    let ds_failure =
        (0..g.d.len()).find(|&c| g.d_info[c].contains_idempotent && !g.d_info[c].is_subsemigroup);
    let lds_failure = s
        .idempotents()
        .into_iter()
        .find(|&e| !in_ds(&local_submonoid(s, e).expect("e is idempotent")));
    r.timings.push(("run", start.elapsed()));

    r.line(format!("{} ({})", loaded.source, s.validation()));
    r.line(format!("order: {}", s.len()));
    for (name, p) in [("R", &g.r), ("L", &g.l), ("H", &g.h), ("D = J", &g.d)] {
        r.line(format!("{name}: {} classes", p.len()));
    }
    let sizes: Vec<String> = d_sizes.iter().map(|x| x.to_string()).collect();
    r.line(format!("D-class sizes: {}", sizes.join(", ")));
    match ds_failure {
        None => r.line("DS: true"),
        Some(c) => r.line(format!(
            "DS: false (D-class of {} contains an idempotent and is not a subsemigroup)",
            s.label(g.d.class(c)[0])
        )),
    }
    match lds_failure {
        None => r.line("LDS: true"),
        Some(e) => r.line(format!(
            "LDS: false (local submonoid at {} is not in DS)",
            s.label(e)
        )),
    }
    r.result = json!({
        "order": s.len(),
        "r_classes": g.r.len(),
        "l_classes": g.l.len(),
        "h_classes": g.h.len(),
        "d_classes": g.d.len(),
        "d_class_sizes": d_sizes,
        "in_ds": ds_failure.is_none(),
        "in_lds": lds_failure.is_none(),
    });
    if let Some(c) = ds_failure {
        r.witnesses.push(json!({
            "kind": "d_class_not_subsemigroup",
            "elements": labels(s, g.d.class(c)),
        }));
    }
    if let Some(e) = lds_failure {
        r.witnesses.push(json!({
            "kind": "local_submonoid_not_in_ds",
            "idempotent": s.label(e),
        }));
    }
    Ok(r)
}

fn counterexample_json(s: &FiniteSemigroup, c: &Counterexample) -> Value {
    let assignment: serde_json::Map<String, Value> = c
        .assignment
        .iter()
        .map(|(v, e)| (v.clone(), json!(s.label(*e))))
        .collect();
    json!({
        "kind": "substitution",
        "assignment": assignment,
        "lhs": s.label(c.lhs_value),
        "rhs": s.label(c.rhs_value),
    })
}

fn inconclusive(mut r: Report, e: &Error) -> Report {
    r.verdict = Verdict::Inconclusive;
    r.line(format!("inconclusive: {e}"));
    r.result = json!({ "reason": e.to_string() });
    r
}

pub fn check_id(arg: &str, text: &str, budget: u128) -> Result<Report, CliError> {
    let mut r = Report::new("check-id", Verdict::Verified);
    let id = Identity::parse(text)?;
    let loaded = load(&mut r, arg)?;
    let s = &loaded.semigroup;
    r.bounds = json!({ "budget": budget.to_string() });
    let start = Instant::now();
    let outcome = satisfies(s, &id, budget);
    r.timings.push(("run", start.elapsed()));
    match outcome {
        Ok(Satisfaction::Holds { substitutions }) => {
            r.line(format!("{id}: true ({substitutions} substitutions)"));
            r.result = json!({ "identity": id.to_string(), "holds": true, "substitutions": substitutions.to_string() });
        }
        Ok(Satisfaction::Fails(c)) => {
            r.verdict = Verdict::Refuted;
            r.line(format!("{id}: false"));
            r.line(format!("witness: {}", c.describe(s)));
            r.result = json!({ "identity": id.to_string(), "holds": false });
            r.witnesses.push(counterexample_json(s, &c));
        }
        Err(e @ Error::SearchTooLarge { .. }) => return Ok(inconclusive(r, &e)),
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

pub fn isoterm(arg: &str, text: &str, max_len: usize, budget: u128) -> Result<Report, CliError> {
    let mut r = Report::new("isoterm", Verdict::Verified);
    let u = Word::parse(text)?;
    let loaded = load(&mut r, arg)?;
    let s = &loaded.semigroup;
    r.bounds = json!({ "max_len": max_len, "budget": budget.to_string() });
    let start = Instant::now();
    let outcome = is_isoterm_bounded(s, &u, max_len, budget);
    r.timings.push(("run", start.elapsed()));
    match outcome {
        Ok(IsotermCheck::NoShortCounterexample {
            max_len,
            candidates,
        }) => {
            r.line(format!(
                "{u}: no word v != u of length <= {max_len} with u == v ({candidates} candidates)"
            ));
            r.line("bounded check: longer counterexamples are not ruled out");
            r.result = json!({
                "word": u.to_string(),
                "isoterm_up_to_bound": true,
                "candidates": candidates,
                "caveat": "bounded check; longer counterexamples are not ruled out",
            });
        }
        Ok(IsotermCheck::NotIsoterm { witness }) => {
            r.verdict = Verdict::Refuted;
            r.line(format!("{u}: not an isoterm"));
            r.line(format!("witness: {u} == {witness} holds"));
            r.result = json!({ "word": u.to_string(), "isoterm_up_to_bound": false });
            r.witnesses.push(
                json!({ "kind": "identity", "lhs": u.to_string(), "rhs": witness.to_string() }),
            );
        }
        Err(e @ Error::SearchTooLarge { .. }) => return Ok(inconclusive(r, &e)),
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

/// P0-P2 verdict lines; violations are pushed as witnesses.
fn properties(inst: &NfbInstance, witnesses: &mut Vec<Value>) -> (bool, Vec<String>) {
    let checks = [
        ("P0", inst.check_p0()),
        ("P1", inst.check_p1()),
        ("P2", inst.check_p2()),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, c) in checks {
        match c {
            Ok(()) => lines.push(format!("{name}: pass")),
            Err(v) => {
                ok = false;
                lines.push(format!("{name}: fail ({v})"));
                witnesses.push(
                    json!({ "kind": "property", "property": name, "violation": v.to_string() }),
                );
            }
        }
    }
    (ok, lines)
}

fn instance_json(inst: &NfbInstance) -> Value {
    json!({
        "n": inst.n,
        "k": inst.k,
        "m": inst.m,
        "u_length": inst.u.len(),
        "v_length": inst.v.len(),
        "variables": inst.u.alphabet().len(),
        "x": inst.x_vars,
        "projected_u": inst.projected_u().to_string(),
    })
}

pub fn nfb_gen(
    n: usize,
    k: usize,
    m: usize,
    out: Option<&Path>,
    json_mode: bool,
) -> Result<Report, CliError> {
    let mut r = Report::new("nfb gen", Verdict::Verified);
    let start = Instant::now();
    let inst = build_instance(n, k, m)?;
    let cert = Certificate::from_instance(&inst);
    r.timings.push(("run", start.elapsed()));
    let text = cert.to_string();
    let (ok, property_lines) = properties(&inst, &mut r.witnesses);
    if !ok {
        r.verdict = Verdict::Refuted;
    }
    r.result = instance_json(&inst);
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            r.line(format!(
                "u_{n}: {} symbols, v_{n}: {} symbols, {} variables",
                inst.u.len(),
                inst.v.len(),
                inst.u.alphabet().len()
            ));
            r.lines.extend(property_lines);
            r.line(format!("certificate written to {}", path.display()));
            r.result["certificate_path"] = json!(path.display().to_string());
        }
        None => {
            if json_mode {
                r.result["certificate"] = json!(text);
            }
            r.lines.extend(text.lines().map(String::from));
        }
    }
    Ok(r)
}

pub fn nfb_verify(
    arg: &str,
    n: Option<usize>,
    cert: Option<&Path>,
    budget: u128,
) -> Result<Report, CliError> {
    let mut r = Report::new("nfb verify", Verdict::Verified);
    let loaded = load(&mut r, arg)?;
    let s = &loaded.semigroup;
    r.bounds = json!({ "budget": budget.to_string() });
    let start = Instant::now();
    let inst = match cert {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let cert = Certificate::parse(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if n.is_some_and(|n| n != cert.n) {
                return Err(CliError::Input(format!(
                    "--n {} does not match the certificate's n = {}",
                    n.unwrap(),
                    cert.n
                )));
            }
            match cert.verify() {
                Ok(inst) => inst,
                Err(why) => {
                    r.verdict = Verdict::Refuted;
                    r.line(format!("certificate rejected: {why}"));
                    r.result = json!({ "certificate_valid": false, "reason": why });
                    return Ok(r);
                }
            }
        }
        None => {
            let pd = power_data(s);
            build_instance(
                n.expect("clap requires --n"),
                pd.uniform_k,
                pd.subgroup_lcm_m,
            )?
        }
    };
    r.line(format!(
        "instance n = {}, k = {}, m = {}: {} variables",
        inst.n,
        inst.k,
        inst.m,
        inst.u.alphabet().len()
    ));
    let (properties_ok, property_lines) = properties(&inst, &mut r.witnesses);
    r.lines.extend(property_lines);
    let holds = verify_holds(s, &inst, budget);
    r.timings.push(("run", start.elapsed()));
    r.result = instance_json(&inst);
    r.result["properties"] = json!(properties_ok);
    match holds {
        Ok(Satisfaction::Holds { substitutions }) => {
            r.line(format!(
                "u_{0} == v_{0}: true ({substitutions} substitutions)",
                inst.n
            ));
            r.result["holds"] = json!(true);
            r.result["substitutions"] = json!(substitutions.to_string());
        }
        Ok(Satisfaction::Fails(c)) => {
            r.line(format!("u_{0} == v_{0}: false", inst.n));
            r.line(format!("witness: {}", c.describe(s)));
            r.result["holds"] = json!(false);
            r.witnesses.push(counterexample_json(s, &c));
            r.verdict = Verdict::Refuted;
        }
        Err(e @ Error::SearchTooLarge { .. }) => return Ok(inconclusive(r, &e)),
        Err(e) => return Err(e.into()),
    }
    if !properties_ok {
        r.verdict = Verdict::Refuted;
    }
    Ok(r)
}

fn witness_json(w: &DivisorWitness, host: &FiniteSemigroup, target: &FiniteSemigroup) -> Value {
    let pair = |&(a, t): &(usize, usize)| json!([host.label(a), target.label(t)]);
    json!({
        "kind": "divisor",
        "generators": labels(host, &w.generators),
        "subsemigroup_size": w.subsemigroup.len(),
        "mapping": w.mapping.iter().map(pair).collect::<Vec<_>>(),
        "adjoined_identity": w.adjoined_identity.map(|f| host.label(f).to_string()),
    })
}

pub fn divisor(args: &DivisorArgs) -> Result<Report, CliError> {
    let mut r = Report::new("divisor", Verdict::Inconclusive);
    let loaded = load(&mut r, &args.spec)?;
    let s = &loaded.semigroup;
    let target_name = match args.target {
        Target::B2 => "B_2",
        Target::B21 => "B_2^1",
    };
    r.bounds = json!({ "max_gens": args.max_gens, "cap": args.cap.to_string() });
    let start = Instant::now();
    if args.no_square {
        let target = match args.target {
            Target::B2 => build_b2(),
            Target::B21 => build_b21(),
        };
        let found = match has_divisor(s, &target, args.max_gens, args.cap) {
            Ok(found) => found,
            Err(e @ Error::SearchInconclusive(_)) => return Ok(inconclusive(r, &e)),
            Err(e) => return Err(e.into()),
        };
        r.timings.push(("run", start.elapsed()));
        r.result = json!({ "target": target_name, "host": "S", "found": found.is_some() });
        match found {
            Some(w) => {
                w.validate(s, &target).map_err(CliError::Input)?;
                r.verdict = Verdict::Verified;
                r.line(format!(
                    "{target_name} divides S: {}",
                    w.describe(s, &target)
                ));
                r.witnesses.push(witness_json(&w, s, &target));
            }
            None => r.line(format!(
                "no divisor onto {target_name} with at most {} generators (bounded search)",
                args.max_gens
            )),
        }
        return Ok(r);
    }

    let cap = element_cap()?;
    let cv = match args.target {
        Target::B2 => cross_validate_ds(s, args.max_gens, args.cap, cap)?,
        Target::B21 => cross_validate_lds(s, args.max_gens, args.cap, cap)?,
    };
    r.timings.push(("run", start.elapsed()));
    let class = match args.target {
        Target::B2 => "DS",
        Target::B21 => "LDS",
    };
    r.line(format!("S in {class}: {}", cv.member));
    let found = match &cv.search {
        SearchOutcome::Found(w) => {
            r.line(format!(
                "{target_name} divides S x S: {}",
                w.describe(&cv.product, &cv.target)
            ));
            r.witnesses.push(witness_json(w, &cv.product, &cv.target));
            json!(true)
        }
        SearchOutcome::NotFound => {
            r.line(format!(
                "no divisor onto {target_name} in S x S with at most {} generators (bounded search)",
                args.max_gens
            ));
            json!(false)
        }
        SearchOutcome::Inconclusive(why) => {
            r.line(format!("search inconclusive: {why}"));
            Value::Null
        }
    };
    let agreement = match cv.agreement {
        Agreement::Consistent => "consistent",
        Agreement::InconclusiveBoundTooSmall => "inconclusive (bound too small)",
        Agreement::Inconclusive => "inconclusive",
        Agreement::Contradiction => "contradiction",
    };
    r.line(format!("cross-validation: {agreement}"));
    r.verdict = match (&cv.search, cv.agreement) {
        (_, Agreement::Contradiction) => Verdict::Refuted,
        (SearchOutcome::Found(_), _) => Verdict::Verified,
        _ => Verdict::Inconclusive,
    };
    r.result = json!({
        "target": target_name,
        "host": "S x S",
        "host_size": cv.product.len(),
        "member": cv.member,
        "found": found,
        "agreement": agreement,
    });
    Ok(r)
}

pub fn embed_ic4(check: bool) -> Result<Report, CliError> {
    let mut r = Report::new("embed-ic4", Verdict::Verified);
    let start = Instant::now();
    let ic4 = build_ic(4)?;
    let images = constructions::embed_ic4();
    if !check {
        for (x, m) in ic4.elements().zip(&images) {
            r.line(format!("{} -> {m}", ic4.label(x)));
        }
        r.result = json!({
            "images": ic4.elements().zip(&images)
                .map(|(x, m)| json!([ic4.label(x), m.to_string()]))
                .collect::<Vec<_>>(),
        });
        r.timings.push(("run", start.elapsed()));
        return Ok(r);
    }
    let t42 = build_tn2(4)?;
    let distinct: BTreeSet<_> = images.iter().collect();
    let injective = distinct.len() == images.len();
    let monomial = images.iter().all(|m| m.is_row_monomial());
    let triangular = images.iter().all(|m| m.is_upper_triangular());
    let f = tn2_indices(&images)?;
    let hom = verify_homomorphism(&f, &ic4, &t42);
    r.timings.push(("run", start.elapsed()));
    match hom {
        Ok(pairs) if injective && monomial && triangular => {
            r.line(format!(
                "homomorphism verified over {pairs} pairs; image row-monomial; injective"
            ));
            r.result = json!({ "pairs": pairs, "injective": true, "row_monomial": true, "upper_triangular": true });
        }
        Ok(pairs) => {
            r.verdict = Verdict::Refuted;
            r.line(format!(
                "homomorphism verified over {pairs} pairs; injective: {injective}; row-monomial: {monomial}; upper triangular: {triangular}"
            ));
            r.result = json!({ "pairs": pairs, "injective": injective, "row_monomial": monomial, "upper_triangular": triangular });
        }
        Err(bad) => {
            r.verdict = Verdict::Refuted;
            r.line(format!(
                "not a homomorphism at ({}, {})",
                ic4.label(bad.a),
                ic4.label(bad.b)
            ));
            r.witnesses
                .push(json!({ "kind": "pair", "a": ic4.label(bad.a), "b": ic4.label(bad.b) }));
        }
    }
    Ok(r)
}
