use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ppmod_cli::scenario::{Bounds, ChainDecl, Declarations, Lit, ModuleDecl, Source, SystemDecl};
use ppmod_cli::{load_scenario, run_scenario, verify_report, CliError, Report, Scenario, Task};

#[derive(Parser)]
#[command(
    name = "ppmod",
    version,
    about = "pp formulas and finitely presented modules over Euclidean rings"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Z, Zmod:n, Fp:p or Fpx:p.
    #[arg(long, global = true, default_value = "Z")]
    ring: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 12)]
    stage_bound: usize,
    #[arg(long, global = true, default_value_t = ppmod::fpmod::DEFAULT_ENUM_BOUND)]
    enum_bound: usize,
    #[arg(long, global = true, default_value_t = 50)]
    pairs: usize,
    /// Print the JSON report instead of one line per task.
    #[arg(long, global = true)]
    json: bool,
    /// Cross-check against brute force where the ring is finite.
    #[arg(long, global = true)]
    with_oracle: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether PHI implies PSI in every module.
    Implies { phi: String, psi: String },
    /// Compute phi(M).
    Evaluate {
        formula: String,
        /// Comma-separated annihilators of a sum of cyclic modules, or a JSON module declaration.
        #[arg(long)]
        module: String,
    },
    /// Build the free realization of a formula.
    FreeRealization { formula: String },
    #[command(subcommand)]
    Chain(ChainCmd),
    #[command(subcommand)]
    Bass(BassCmd),
    /// Compare invariant signatures of two modules on enumerated pairs.
    EqProbe {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Compare the pure-free modules built from the summands instead.
        #[arg(long)]
        pure_free: bool,
        #[arg(long, default_value_t = 1)]
        arity: usize,
    },
    /// Run principal-ideal chains of the ring.
    PerfectProbe {
        #[arg(long)]
        steps: Option<usize>,
    },
    #[command(subcommand)]
    Scenario(ScenarioCmd),
    /// Re-check every certificate in a JSON report.
    Verify { report: PathBuf },
}

#[derive(Args)]
struct ChainSpec {
    /// Stage i is this formula with `i` substituted.
    #[arg(long, conflicts_with = "formula")]
    template: Option<String>,
    /// Explicit stages, in order.
    #[arg(long)]
    formula: Vec<String>,
}

impl ChainSpec {
    fn decl(self) -> ChainDecl {
        ChainDecl {
            template: self.template,
            formulas: (!self.formula.is_empty()).then_some(self.formula),
        }
    }
}

#[derive(Subcommand)]
enum ChainCmd {
    /// Test strictness of a descending chain.
    Analyze {
        #[command(flatten)]
        spec: ChainSpec,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        module: Option<String>,
    },
}

#[derive(Subcommand)]
enum BassCmd {
    /// Build the direct system of free realizations of a chain.
    Build {
        #[command(flatten)]
        spec: ChainSpec,
        #[arg(long, default_value_t = 6)]
        stages: usize,
    },
}

#[derive(Subcommand)]
enum ScenarioCmd {
    /// Run a scenario file.
    Run {
        file: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn module_decl(text: &str) -> Result<ModuleDecl, CliError> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()));
    }
    let lits: Vec<Lit> = text
        .split(',')
        .map(|s| Lit::Text(s.trim().to_owned()))
        .collect();
    Ok(ModuleDecl::Presented {
        gens: lits.len(),
        relations: (0..lits.len())
            .map(|i| {
                (0..lits.len())
                    .map(|j| if i == j { lits[i].clone() } else { Lit::Int(0) })
                    .collect()
            })
            .collect(),
    })
}

fn summands(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_owned()).collect()
}

fn scenario(cli: Cli) -> Result<Scenario, CliError> {
    let g = cli.global;
    let mut decl = Declarations::default();
    let mut one = |f: &str, text: String| {
        decl.formulas.insert(f.to_owned(), text);
        f.to_owned()
    };
    let task = match cli.command {
        Command::Implies { phi, psi } => Task::Implies {
            phi: one("phi", phi),
            psi: one("psi", psi),
        },
        Command::Evaluate { formula, module } => {
            let formula = one("phi", formula);
            decl.modules.insert("M".into(), module_decl(&module)?);
            Task::Evaluate {
                formula,
                module: "M".into(),
            }
        }
        Command::FreeRealization { formula } => Task::FreeRealization {
            formula: one("phi", formula),
        },
        Command::Chain(ChainCmd::Analyze {
            spec,
            steps,
            module,
        }) => {
            decl.chains.insert("C".into(), spec.decl());
            if let Some(m) = &module {
                decl.modules.insert("M".into(), module_decl(m)?);
            }
            Task::ChainAnalyze {
                chain: "C".into(),
                steps,
                module: module.map(|_| "M".into()),
            }
        }
        Command::Bass(BassCmd::Build { spec, stages }) => {
            decl.chains.insert("C".into(), spec.decl());
            decl.systems.insert(
                "S".into(),
                SystemDecl {
                    chain: "C".into(),
                    stages,
                },
            );
            Task::BassBuild { system: "S".into() }
        }
        Command::EqProbe {
            left,
            right,
            pure_free,
            arity,
        } => {
            let mut side = |tag: &str, text: &str| -> Result<Source, CliError> {
                if pure_free {
                    let names: Vec<String> = summands(text)
                        .into_iter()
                        .enumerate()
                        .map(|(i, r)| {
                            let n = format!("{tag}{i}");
                            decl.modules
                                .insert(n.clone(), ModuleDecl::Cyclic(Lit::Text(r)));
                            n
                        })
                        .collect();
                    Ok(Source::PureFree(names))
                } else {
                    decl.modules.insert(tag.into(), module_decl(text)?);
                    Ok(Source::Module(tag.into()))
                }
            };
            let (left, right) = (side("L", &left)?, side("R", &right)?);
            Task::EqProbe {
                left,
                right,
                pairs: None,
                seed: None,
                arity: Some(arity),
            }
        }
        Command::PerfectProbe { steps } => Task::PerfectProbe { steps },
        Command::Scenario(_) | Command::Verify { .. } => unreachable!("handled by the caller"),
    };
    Ok(Scenario {
        ring: g.ring,
        seed: g.seed,
        bounds: Bounds {
            stage_bound: g.stage_bound,
            enum_bound: g.enum_bound,
            pairs: g.pairs,
        },
        declarations: decl,
        tasks: vec![task],
        with_oracle: g.with_oracle,
    })
}

fn emit(report: &Report, json: bool) -> Result<(), CliError> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

fn real_main() -> Result<ExitCode, CliError> {
    let cli = Cli::parse();
    let json = cli.global.json;
    let report = match cli.command {
        Command::Verify { report } => {
            let r: Report = serde_json::from_str(&std::fs::read_to_string(report)?)?;
            let ok = verify_report(&r)?;
            println!(
                "{}",
                if ok {
                    "all certificates verified"
                } else {
                    "certificate check FAILED"
                }
            );
            return Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Scenario(ScenarioCmd::Run { file, out }) => {
            let mut sc = load_scenario(&file)?;
            sc.with_oracle |= cli.global.with_oracle;
            let r = run_scenario(&sc)?;
            if let Some(path) = out {
                std::fs::write(path, serde_json::to_string_pretty(&r)?)?;
            }
            r
        }
        _ => run_scenario(&scenario(cli)?)?,
    };
    emit(&report, json)?;
    Ok(if report.all_completed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
