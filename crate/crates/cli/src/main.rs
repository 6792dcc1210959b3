//! `hopfcube`: command-line front end.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 property or
//! agreement failure, 3 resource cap. Reports are key-sorted JSON carrying
//! the tool version, the seed (null for deterministic commands) and the
//! order cap in force. The cap can be overridden with `HOPFCUBE_ORDER_CAP`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hopfcube::birkhoff::BirkhoffDatum;
use hopfcube::category::Groups;
use hopfcube::cube::Cube;
use hopfcube::dsl::{self, DslError};
use hopfcube::harness::suites;
use hopfcube::homology::{integral_homology_with, Arithmetic, DEFAULT_BUDGET};
use hopfcube::{higher, hopf, limits, Error, Subgroup};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "hopfcube", version, about = "Higher extensions, central extensions and Hopf formulae for finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prints whether the cube is an n-fold extension.
    CheckExtension {
        cube: PathBuf,
        /// Report the status through every direction (they must agree).
        #[arg(long)]
        dim_report: bool,
    },
    /// Centrality verdict with the bracket report.
    CheckCentral {
        cube: PathBuf,
        #[arg(long, default_value = "ab")]
        datum: String,
    },
    /// Writes the centralized cube as a document.
    Centralize {
        cube: PathBuf,
        #[arg(long, default_value = "ab")]
        datum: String,
        /// Output file; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The n-fold bracket at the top vertex.
    Bracket {
        cube: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        route: Route,
        #[arg(long, default_value = "ab")]
        datum: String,
    },
    /// The Hopf quotient at the top vertex.
    Hopf {
        cube: PathBuf,
        #[arg(long, default_value = "ab")]
        datum: String,
    },
    /// Integral homology of a group through the bar complex.
    Homology {
        group: String,
        #[arg(long)]
        degree: usize,
        /// Dense matrix entries allowed across the two boundary maps.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Runs registered properties; exit 0 iff all pass.
    Verify {
        /// Property ids; all of them when absent.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random cases per randomized property.
        #[arg(long, default_value_t = suites::DEFAULT_BUDGET)]
        budget: usize,
        /// List property ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Explicit,
    Categorical,
    Both,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource_cap() {
            3
        } else if matches!(e, Error::AgreementFailure(_)) {
            2
        } else {
            1
        };
        Failure::new(code, e.to_string())
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        let code = if e.is_resource_cap() { 3 } else { 1 };
        Failure::new(code, e.to_string())
    }
}

/// What a command produced: text for stdout and the exit code.
struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn apply_cap_override() -> Result<(), Failure> {
    match std::env::var(limits::ORDER_CAP_ENV) {
        Ok(v) => {
            let cap: usize = v
                .trim()
                .parse()
                .map_err(|_| Failure::new(1, format!("{} must be a positive integer, got '{v}'", limits::ORDER_CAP_ENV)))?;
            limits::set_order_cap(cap);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    apply_cap_override()?;
    match cli.command {
        Command::CheckExtension { cube, dim_report } => {
            let c = load_cube(&cube)?;
            if !dim_report {
                let ok = c.is_n_fold_extension()?;
                return Ok(Output { text: format!("{ok}\n"), code: 0 });
            }
            let via: Vec<bool> = (0..c.dim()).map(|i| c.is_extension_via(i)).collect::<Result<_, _>>()?;
            let agree = via.windows(2).all(|w| w[0] == w[1]);
            let extension = if c.dim() == 0 { true } else { via[0] };
            Ok(report(
                json!({ "extension": extension, "via_delta": via, "agree": agree }),
                None,
                if agree { 0 } else { 2 },
            ))
        }
        Command::CheckCentral { cube, datum } => {
            let c = load_cube(&cube)?;
            let datum = parse_datum(&datum)?;
            let central = higher::is_n_fold_central(&c, datum)?;
            let r = higher::bracket_report(&c, datum)?;
            let bracket = json!({
                "explicit": r.explicit.as_ref().map(subgroup_json),
                "categorical": r.categorical.iter().map(subgroup_json).collect::<Vec<_>>(),
                "agree": r.agree,
            });
            Ok(report(
                json!({ "central": central, "datum": datum.to_string(), "bracket": bracket }),
                None,
                if r.agree { 0 } else { 2 },
            ))
        }
        Command::Centralize { cube, datum, output } => {
            let c = load_cube(&cube)?;
            let datum = parse_datum(&datum)?;
            let centralized = higher::centralize_n(&c, datum)?;
            let doc = dsl::cube_to_document(&centralized.cube);
            let text = format!("{}\n", serde_json::to_string_pretty(&doc).expect("documents serialize"));
            match output {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display())))?;
                    Ok(report(
                        json!({ "bracket": subgroup_json(&centralized.bracket), "output": path.display().to_string() }),
                        None,
                        0,
                    ))
                }
                None => Ok(Output { text, code: 0 }),
            }
        }
        Command::Bracket { cube, route, datum } => {
            let c = load_cube(&cube)?;
            let datum = parse_datum(&datum)?;
            let explicit = match route {
                Route::Categorical => None,
                _ => Some(higher::bracket_n_explicit(&c, datum)?),
            };
            let categorical = match route {
                Route::Explicit => Vec::new(),
                _ => (0..c.dim())
                    .map(|i| higher::bracket_n_categorical(&c, datum, i))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let mut all: Vec<&Subgroup> = categorical.iter().collect();
            all.extend(explicit.as_ref());
            let agree = all.windows(2).all(|w| w[0] == w[1]);
            let mut body = json!({ "datum": datum.to_string(), "agree": agree });
            if let Some(e) = &explicit {
                body["explicit"] = subgroup_json(e);
            }
            if route != Route::Explicit {
                body["categorical"] = json!(categorical.iter().map(subgroup_json).collect::<Vec<_>>());
            }
            Ok(report(body, None, if agree { 0 } else { 2 }))
        }
        Command::Hopf { cube, datum } => {
            let c = load_cube(&cube)?;
            let datum = parse_datum(&datum)?;
            let r = if c.dim() == 1 {
                hopf::hopf_delta(c.a(0), datum)?
            } else {
                hopf::hopf_delta_n(&c, datum)?
            };
            Ok(report(
                json!({
                    "datum": datum.to_string(),
                    "numerator": subgroup_json(&r.numerator),
                    "denominator": subgroup_json(&r.denominator),
                    "quotient_order": r.quotient.order(),
                    "abelian_invariants": r.abelian_invariants,
                    "presentation_conditions_met": r.presentation_conditions_met,
                }),
                None,
                0,
            ))
        }
        Command::Homology { group, degree, budget } => {
            let g = dsl::parse_group(&group)?;
            let h = integral_homology_with(&g, degree, budget, Arithmetic::Adaptive)?;
            let mut body = serde_json::to_value(&h).expect("invariants serialize");
            body["degree"] = json!(degree);
            Ok(report(body, None, 0))
        }
        Command::Verify { suites: ids, seed, budget, list } => {
            if list {
                let text = suites::registry()
                    .iter()
                    .map(|p| format!("{:<24}{}\n", p.id, p.about))
                    .collect();
                return Ok(Output { text, code: 0 });
            }
            let ids = if ids.is_empty() { suites::all_ids() } else { ids };
            let reports = suites::run_property_suite(&ids, seed, budget);
            let all_passed = reports.iter().all(|r| r.ok());
            Ok(report(
                json!({ "reports": reports, "budget": budget, "all_passed": all_passed }),
                Some(seed),
                if all_passed { 0 } else { 2 },
            ))
        }
    }
}

fn report(mut body: Value, seed: Option<u64>, code: u8) -> Output {
    body["version"] = json!(VERSION);
    body["seed"] = json!(seed);
    body["order_cap"] = json!(limits::order_cap());
    let text = format!("{}\n", serde_json::to_string_pretty(&body).expect("reports serialize"));
    Output { text, code }
}

fn load_cube(path: &Path) -> Result<Cube<Groups>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", path.display())))?;
    dsl::parse_cube(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn parse_datum(s: &str) -> Result<BirkhoffDatum, Failure> {
    s.parse().map_err(|e: Error| Failure::new(1, e.to_string()))
}

fn subgroup_json(h: &Subgroup) -> Value {
    let gens = h.generators();
    let mut v = json!({ "generators": gens, "order": h.order() });
    if let Some(perms) = h.parent().perms() {
        v["cycles"] = json!(gens.iter().map(|&g| perms[g].to_string()).collect::<Vec<_>>());
    }
    v
}
