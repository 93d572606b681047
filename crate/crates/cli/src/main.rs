//! Command-line front end: load a presentation file, run a suite, print a
//! report. Exit status 0 means every check passed (or the verdict is YES),
//! 1 means a check failed (or NO), 2 means the input could not be used.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use exang::exstruct::Bounds;
use exang::format::{self, Fixture};
use exang::proper::{prop48_flags, theorem45_decide, xi_from_subcategory, DistClass};
use exang::quotient::{build_quotient, theorem31_decide, wkc_check};
use exang::{Checker, Report};
use serde_json::json;

#[derive(Parser)]
#[command(name = "exang", version, about = "Check finite n-exangulated categories")]
struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Category, bifunctor, realization and axiom suites.
    Validate { file: PathBuf },
    /// Build the ideal quotient by a subcategory of projective-injectives.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        subcat: String,
        /// Decide whether the quotient is n-exangulated.
        #[arg(long)]
        decide: bool,
    },
    /// Is the image of a stored n-exangle weak kernel-cokernel in the quotient?
    Wkc {
        file: PathBuf,
        #[arg(long)]
        subcat: String,
        /// `C:A:coords`, e.g. `S1:S3:1`.
        #[arg(long)]
        exangle: String,
    },
    /// Proper-class axioms and the restricted structure for a named class.
    Proper {
        file: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// The class cut out by left approximations to a subcategory.
    XiFrom {
        file: PathBuf,
        #[arg(long)]
        subcat: String,
        /// Also report strong covariant finiteness, injectives and the verdict.
        #[arg(long)]
        flags: bool,
    },
}

struct Outcome {
    report: Report,
    verdict: String,
    ok: bool,
    extra: serde_json::Value,
}

impl Outcome {
    fn from_report(report: Report) -> Self {
        let ok = report.ok();
        Outcome {
            report,
            verdict: if ok { "PASS".into() } else { "FAIL".into() },
            ok,
            extra: serde_json::Value::Null,
        }
    }
}

fn load(path: &Path) -> exang::Result<Fixture> {
    format::load(path)
}

fn run(command: &Command, bounds: Bounds) -> exang::Result<Outcome> {
    match command {
        Command::Validate { file } => {
            let fx = load(file)?;
            let ch = Checker::new(&fx.structure, bounds);
            let mut rep = ch.full_suite()?;
            let pi = ch.classify_proj_inj();
            let cat = fx.structure.cat();
            let names = |s: &exang::Subcategory| s.iter().map(|i| cat.name(i).to_string()).collect::<Vec<_>>();
            rep.info("projectives", "", names(&pi.projectives).join(", "));
            rep.info("injectives", "", names(&pi.injectives).join(", "));
            rep.merge(ch.check_lem1(&pi));
            Ok(Outcome::from_report(rep.sorted()))
        }
        Command::Quotient { file, subcat, decide } => {
            let fx = load(file)?;
            let x = fx.subcategory(subcat)?;
            if !decide {
                let q = build_quotient(&fx.structure, x, bounds)?;
                let mut rep = q.checks().clone();
                let surviving: Vec<&str> = q.surviving().iter().map(|i| q.cat().name(i)).collect();
                rep.info("quotient/surviving", subcat.as_str(), surviving.join(", "));
                return Ok(Outcome::from_report(rep.sorted()));
            }
            let d = theorem31_decide(&fx.structure, x, bounds)?;
            let mut out = Outcome::from_report(d.report());
            out.ok = d.yes && out.report.ok();
            out.verdict = if d.yes { "YES: the quotient is n-exangulated".into() } else { "NO: the quotient is not n-exangulated".into() };
            if let Some(w) = &d.witness {
                let cat = d.quotient.base().cat();
                out.verdict.push_str(&format!(
                    "\nwitness: {} projects to {}",
                    w.complex.display(cat),
                    w.projected.display(d.quotient.cat())
                ));
                out.extra = json!({
                    "witness": {
                        "complex": w.complex.display(cat),
                        "projected": w.projected.display(d.quotient.cat()),
                        "extension": w.extension.coords,
                    }
                });
            }
            Ok(out)
        }
        Command::Wkc { file, subcat, exangle } => {
            let fx = load(file)?;
            let q = build_quotient(&fx.structure, fx.subcategory(subcat)?, bounds)?;
            let (x, _) = fx.exangle(exangle)?;
            let mut out = Outcome::from_report(wkc_check(&q, &x));
            out.verdict = if out.ok { "weak kernel-cokernel".into() } else { "not weak kernel-cokernel".into() };
            Ok(out)
        }
        Command::Proper { file, class } => {
            let fx = load(file)?;
            let xi = DistClass::from_bases(&fx.structure, fx.class(class)?)?;
            let th = theorem45_decide(&fx.structure, &xi, bounds)?;
            let mut out = Outcome::from_report(th.report.clone());
            let yn = |b: bool| if b { "yes" } else { "no" };
            out.verdict = format!(
                "{}: proper class {}, restricted structure n-exangulated {}",
                if out.ok { "PASS" } else { "FAIL" },
                yn(th.proper),
                yn(th.exangulated)
            );
            out.extra = json!({ "proper": th.proper, "exangulated": th.exangulated, "agree": th.agree() });
            Ok(out)
        }
        Command::XiFrom { file, subcat, flags } => {
            let fx = load(file)?;
            let h = fx.subcategory(subcat)?;
            let cat = fx.structure.cat();
            if *flags {
                let rep = prop48_flags(&fx.structure, h, bounds)?;
                let mut out = Outcome::from_report(rep);
                let verdict = out
                    .report
                    .findings()
                    .iter()
                    .find(|f| f.check == "prop48/verdict")
                    .map(|f| f.detail.clone());
                if out.report.pass_count("prop48/verdict") > 0 && out.ok {
                    out.verdict = "neither n-exact nor (n+2)-angulated".into();
                } else if let Some(v) = verdict {
                    out.verdict = v;
                }
                return Ok(out);
            }
            let (xi, mut rep) = xi_from_subcategory(&fx.structure, h)?;
            rep.info("xi/class", subcat.as_str(), xi.describe(cat));
            let mut out = Outcome::from_report(rep.sorted());
            out.extra = json!({ "class": xi.describe(cat) });
            Ok(out)
        }
    }
}

fn command_line(command: &Command) -> String {
    match command {
        Command::Validate { file } => format!("validate {}", file.display()),
        Command::Quotient { file, subcat, decide } => {
            format!("quotient {} --subcat {subcat}{}", file.display(), if *decide { " --decide" } else { "" })
        }
        Command::Wkc { file, subcat, exangle } => format!("wkc {} --subcat {subcat} --exangle {exangle}", file.display()),
        Command::Proper { file, class } => format!("proper {} --class {class}", file.display()),
        Command::XiFrom { file, subcat, flags } => {
            format!("xi-from {} --subcat {subcat}{}", file.display(), if *flags { " --flags" } else { "" })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let bounds = Bounds::from_env();
    let header = command_line(&cli.command);
    let out = match run(&cli.command, bounds) {
        Ok(out) => out,
        Err(err) => {
            eprintln!("error: {header}: {err}");
            return ExitCode::from(2);
        }
    };
    println!("exang {header}");
    println!("bounds: {}", bounds.describe());
    print!("{}", out.report);
    println!("verdict: {}", out.verdict);
    if let Some(path) = &cli.json {
        let doc = json!({
            "command": header,
            "bounds": bounds.describe(),
            "ok": out.ok,
            "verdict": out.verdict,
            "report": out.report.to_json(),
            "extra": out.extra,
        });
        let text = serde_json::to_string_pretty(&doc).expect("json value") + "\n";
        if let Err(err) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(2);
        }
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
