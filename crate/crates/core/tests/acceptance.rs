//! Acceptance suite. One line per criterion, `PASS` or `FAIL`, with the
//! evidence that decided it. Runs without the libtest harness so the lines
//! always appear in the output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use exang::exstruct::objects_up_to;
use exang::format::{self, Fixture};
use exang::proper::{prop41_check, prop48_flags, theorem45_decide, theorem45_sweep, xi_from_subcategory, DistClass};
use exang::quotient::{theorem31_decide, wkc_check};
use exang::{Bounds, Checker, Extension, ExtStructure, Obj, Report, Verdict};
use serde_json::Value;

/// Wall-clock budget for a single criterion at default bounds.
const BUDGET: Duration = Duration::from_secs(60);

const FIXTURES: [&str; 4] = ["F1", "F2", "F3", "A2"];

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn root() -> String {
    format!("{}/../../fixtures", env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> Result<Fixture, String> {
    format::load(format!("{}/{name}.json", root())).map_err(|e| format!("{name}: {e}"))
}

fn oracle(name: &str) -> Result<Value, String> {
    let text = std::fs::read_to_string(format!("{}/oracle/{name}.json", root())).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn bounds() -> Bounds {
    Bounds::default()
}

fn first_failure(rep: &Report) -> String {
    rep.failures()
        .next()
        .map(|f| format!("{} [{}]: {}", f.check, f.instance, f.detail))
        .unwrap_or_default()
}

fn info<'a>(rep: &'a Report, check: &str) -> Vec<&'a str> {
    rep.findings()
        .iter()
        .filter(|f| f.check == check && f.verdict == Verdict::Info)
        .map(|f| f.detail.as_str())
        .collect()
}

fn err(e: exang::Error) -> String {
    e.to_string()
}

fn validation() -> Outcome {
    let mut notes = Vec::new();
    for name in FIXTURES {
        let fx = fixture(name)?;
        let rep = Checker::new(&fx.structure, bounds()).full_suite().map_err(err)?;
        let required = ["R0", "R1", "R2", "EA1/inflation", "EA1/deflation", "EA2", "EA2op"];
        if let Some(missing) = required.iter().find(|c| rep.pass_count(c) == 0) {
            return Ok((false, format!("{name}: no passing {missing} instance")));
        }
        if !rep.ok() {
            return Ok((false, format!("{name}: {}", first_failure(&rep))));
        }
        notes.push(format!("{name} {} EA2", rep.pass_count("EA2")));
    }
    Ok((true, format!("all suites green ({})", notes.join(", "))))
}

fn theorem31_positive() -> Outcome {
    let fx = fixture("F1")?;
    let x = fx.subcategory("X").map_err(err)?;
    let d = theorem31_decide(&fx.structure, x, bounds()).map_err(err)?;
    if !d.yes {
        return Ok((false, "decision is NO".into()));
    }
    let cat = d.quotient.cat();
    let surviving: Vec<&str> = d.quotient.surviving().iter().map(|i| cat.name(i)).collect();
    if surviving != ["S3", "S1"] {
        return Ok((false, format!("surviving {surviving:?}")));
    }
    let suite = Checker::new(d.quotient.structure(), bounds()).full_suite().map_err(err)?;
    if !suite.ok() {
        return Ok((false, format!("quotient suite: {}", first_failure(&suite))));
    }
    let Some(flags) = &d.flags else {
        return Ok((false, "no structural flags".into()));
    };
    let Some(outer) = &flags.outer_failure else {
        return Ok((false, "projected conflation satisfies the outer conditions".into()));
    };
    if flags.nonzero_projectives.is_empty() {
        return Ok((false, "quotient has no nonzero projectives".into()));
    }
    Ok((
        true,
        format!(
            "YES, C/X = add{{{}}}, quotient suite green, not n-exact ({outer}), not angulated (projectives {})",
            surviving.join(", "),
            flags.nonzero_projectives.join(", ")
        ),
    ))
}

fn theorem31_negative() -> Outcome {
    let fx = fixture("F2")?;
    let x = fx.subcategory("X234").map_err(err)?;
    let d = theorem31_decide(&fx.structure, x, bounds()).map_err(err)?;
    if d.yes {
        return Ok((false, "decision is YES".into()));
    }
    let Some(w) = &d.witness else {
        return Ok((false, "NO without witness".into()));
    };
    let cat = fx.structure.cat();
    if wkc_check(&d.quotient, &w.complex).ok() {
        return Ok((false, "witness passes an independent wkc check".into()));
    }
    let ends = (cat.display_obj(w.complex.first()), cat.display_obj(w.complex.last()));
    let ok = ends == ("4".to_string(), "1".to_string());
    Ok((ok, format!("NO, witness {} projects to {}", w.complex.display(cat), w.projected.display(d.quotient.cat()))))
}

fn theorem45_agreement() -> Outcome {
    let mut total = 0;
    let mut proper = 0;
    for name in FIXTURES {
        let fx = fixture(name)?;
        let e = &fx.structure;
        let mut classes = DistClass::coordinate_classes(e);
        for bases in fx.classes.values() {
            classes.push(DistClass::from_bases(e, bases).map_err(err)?);
        }
        for (xi, th) in classes.iter().zip(theorem45_sweep(e, &classes, bounds()).map_err(err)?) {
            total += 1;
            proper += th.proper as usize;
            if !th.agree() {
                return Ok((
                    false,
                    format!("{name}: {} proper={} exangulated={}", xi.describe(e.cat()), th.proper, th.exangulated),
                ));
            }
        }
    }
    Ok((true, format!("{total} candidates, {proper} proper, 0 disagreements")))
}

fn prop48() -> Outcome {
    let fx = fixture("F3")?;
    let e = &fx.structure;
    let h = fx.subcategory("H").map_err(err)?;
    let rep = prop48_flags(e, h, bounds()).map_err(err)?;
    if !rep.ok() {
        return Ok((false, first_failure(&rep)));
    }
    if rep.pass_count("prop48/strongly-covariantly-finite") == 0 {
        return Ok((false, "strong covariant finiteness not certified".into()));
    }
    let witness = "P1 -> S1 -> S3 -> P1";
    if !info(&rep, "prop48/witness").contains(&witness) {
        return Ok((false, format!("witnesses {:?}", info(&rep, "prop48/witness"))));
    }
    let (xi, _) = xi_from_subcategory(e, h).map_err(err)?;
    if xi.is_split() {
        return Ok((false, "ξ(H) is split".into()));
    }
    let th = theorem45_decide(e, &xi, bounds()).map_err(err)?;
    if !th.proper {
        return Ok((false, format!("ξ(H) not proper: {}", first_failure(&th.report))));
    }
    let inj = info(&rep, "prop48/injectives");
    if rep.pass_count("prop48/injectives") == 0 || inj != ["{S3, S1}"] {
        return Ok((false, format!("injectives {inj:?}")));
    }
    if rep.pass_count("prop48/verdict") == 0 {
        return Ok((false, "verdict not certified".into()));
    }
    Ok((
        true,
        format!(
            "witness {witness}, ξ(H) = {} proper and nonsplit, injectives {{S3, S1}}, neither n-exact nor (n+2)-angulated",
            xi.describe(e.cat())
        ),
    ))
}

/// `[1 1]_* [1;1]^* (δ ⊕ ρ)` for `δ, ρ ∈ E(C, A)`.
fn sum_by_formula(e: &ExtStructure, d: &Extension, r: &Extension) -> Result<Extension, String> {
    let cat = e.cat();
    let ident = |x: &Obj, i: usize, j: usize, m: usize| {
        if i % m == j % m {
            cat.identity_coords(x.0[j % m]).to_vec()
        } else {
            vec![0; cat.hom_dim_ind(x.0[j % m], x.0[i % m])]
        }
    };
    let (c, a) = (&d.c, &d.a);
    let diag = cat.from_blocks(c, &c.sum(c), |i, j| ident(c, i, j, c.len()));
    let codiag = cat.from_blocks(&a.sum(a), a, |i, j| ident(a, i, j, a.len()));
    e.push(&codiag, &e.pull(&diag, &e.direct_sum_ext(d, r)).map_err(err)?).map_err(err)
}

fn properties() -> Outcome {
    let mut counts = [0usize; 6];
    let mut outside = 0;
    for name in FIXTURES {
        let fx = fixture(name)?;
        let e = &fx.structure;
        let cat = e.cat();
        let ch = Checker::new(e, bounds());
        let pi = ch.classify_proj_inj();
        let lem = ch.check_lem1(&pi);
        if !lem.ok() {
            return Ok((false, format!("{name} lemma: {}", first_failure(&lem))));
        }
        counts[0] += 1;

        let p41 = prop41_check(e, bounds()).map_err(err)?;
        if !p41.ok() || p41.pass_count("prop41/homotopy-equivalence") == 0 {
            return Ok((false, format!("{name} weak isomorphisms: {}", first_failure(&p41))));
        }
        counts[1] += p41.pass_count("prop41/homotopy-equivalence");

        let classes = DistClass::coordinate_classes(e);
        for (xi, th) in classes.iter().zip(theorem45_sweep(e, &classes, bounds()).map_err(err)?) {
            let rep = &th.report;
            let forms = (rep.failed("class/saturation/deflation"), rep.failed("class/saturation/inflation"));
            if rep.failed("class/saturation/agreement") || forms.0 != forms.1 {
                return Ok((false, format!("{name} saturation forms differ on {}", xi.describe(cat))));
            }
            counts[2] += 1;
            outside += info(rep, "class/saturation/agreement").len();
            if th.proper {
                let comp = ["class/composition/inflation", "class/composition/deflation"];
                if comp.iter().any(|c| rep.failed(c)) || rep.pass_count(comp[0]) == 0 {
                    return Ok((false, format!("{name} composition on {}", xi.describe(cat))));
                }
                counts[3] += 1;
            }
        }

        let mut cones = ch.check_ea2().map_err(err)?;
        cones.merge(ch.check_ea2op().map_err(err)?);
        for check in ["cone/d-squared", "cocone/d-squared"] {
            if cones.failed(check) {
                return Ok((false, format!("{name} {check}: {}", first_failure(&cones))));
            }
            counts[4] += cones.pass_count(check);
        }

        for c in objects_up_to(cat.num_ind(), bounds().max_mult, false) {
            for a in objects_up_to(cat.num_ind(), bounds().max_mult, false) {
                let elems = e.elements(&c, &a);
                for d in &elems {
                    for r in &elems {
                        if sum_by_formula(e, d, r)? != e.add_ext(d, r) {
                            return Ok((false, format!("{name} sum formula at {:?} + {:?}", d.coords, r.coords)));
                        }
                        counts[5] += 1;
                    }
                }
            }
        }
    }
    Ok((
        true,
        format!(
            "lemma on {} fixtures; {} weak isomorphisms with homotopy inverses; saturation forms agree on {} candidates ({} outside the closure hypotheses); composition on {} proper classes; {} cones with d²=0; sum formula on {} pairs",
            counts[0], counts[1], counts[2], outside, counts[3], counts[4], counts[5]
        ),
    ))
}

fn oracle_dims() -> Outcome {
    let mut compared = 0;
    for name in FIXTURES {
        let fx = fixture(name)?;
        let o = oracle(name)?;
        let e = &fx.structure;
        let cat = e.cat();
        for a in 0..cat.num_ind() {
            for b in 0..cat.num_ind() {
                let (na, nb) = (cat.name(a), cat.name(b));
                let hom = o["hom_dims"][na][nb].as_u64();
                let ext = o["ext_dims"][na][nb].as_u64();
                if hom != Some(cat.hom_dim_ind(a, b) as u64) {
                    return Ok((false, format!("{name}: dim Hom({na}, {nb}) oracle {hom:?}")));
                }
                if ext != Some(e.ext_dim_ind(a, b) as u64) {
                    return Ok((false, format!("{name}: dim E({na}, {nb}) oracle {ext:?}")));
                }
                compared += 2;
            }
        }
    }
    let check = &oracle("F2")?["middle_term_check"];
    let (shown, actual) = (&check["4 -> 2/3/4 -> 1/2 -> 1"], &check["4 -> 2/3/4 -> 1/2/3 -> 1"]);
    if shown.as_u64() != Some(0) || actual.as_u64() != Some(1) {
        return Ok((false, format!("middle term counts {shown} and {actual}")));
    }
    let fx = fixture("F2")?;
    let (x, _) = fx.exangle("1:4:1").map_err(err)?;
    let stored = x.display(fx.structure.cat());
    if stored != "4 -> 2/3/4 -> 1/2/3 -> 1" {
        return Ok((false, format!("F2 stores {stored}")));
    }
    let suite = Checker::new(&fx.structure, bounds()).full_suite().map_err(err)?;
    if !suite.ok() {
        return Ok((false, format!("F2: {}", first_failure(&suite))));
    }

    let f3 = fixture("F3")?;
    let (xi, _) = xi_from_subcategory(&f3.structure, f3.subcategory("H").map_err(err)?).map_err(err)?;
    let cat = f3.structure.cat();
    let mut ours = Vec::new();
    for c in 0..cat.num_ind() {
        for a in 0..cat.num_ind() {
            if xi.space(c, a).dim() > 0 {
                ours.push(vec![cat.name(c).to_string(), cat.name(a).to_string()]);
            }
        }
    }
    let theirs: Vec<Vec<String>> = serde_json::from_value(oracle("F3")?["xi_H"].clone()).map_err(|e| e.to_string())?;
    if ours != theirs {
        return Ok((false, format!("ξ(H) support {ours:?}, oracle {theirs:?}")));
    }
    Ok((
        true,
        format!("{compared} dimensions match; middle term 1/2/3 (0 vs 1 realizations), F2 green; ξ(H) matches"),
    ))
}

fn reports(name: &str) -> Result<Vec<String>, String> {
    let fx = fixture(name)?;
    let e = &fx.structure;
    let ch = Checker::new(e, bounds());
    let mut out = vec![ch.full_suite().map_err(err)?.to_json().to_string()];
    for h in fx.subcategories.values() {
        if let Ok(d) = theorem31_decide(e, h, bounds()) {
            out.push(d.report().to_json().to_string());
        }
        if let Ok(rep) = prop48_flags(e, h, bounds()) {
            out.push(rep.to_json().to_string());
        }
    }
    for bases in fx.classes.values() {
        let xi = DistClass::from_bases(e, bases).map_err(err)?;
        out.push(theorem45_decide(e, &xi, bounds()).map_err(err)?.report.to_json().to_string());
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let mut n = 0;
    for name in FIXTURES {
        let (one, two) = (reports(name)?, reports(name)?);
        if one != two {
            return Ok((false, format!("{name}: reports differ between runs")));
        }
        n += one.len();
    }
    Ok((true, format!("{n} JSON reports byte-identical across two runs")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("fixture validation", validation),
        ("quotient positive case", theorem31_positive),
        ("quotient negative case", theorem31_negative),
        ("proper classes vs restricted structures", theorem45_agreement),
        ("left-approximation class", prop48),
        ("property suites", properties),
        ("oracle cross-checks", oracle_dims),
        ("determinism", determinism),
    ];
    println!("acceptance at {}", bounds().describe());
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let took = start.elapsed();
        let ok = ok && took <= BUDGET;
        failed += !ok as usize;
        println!(
            "{} criterion {} ({label}) in {:.1}s: {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
