use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tspread_core::duality::{dual_closed_form, dual_oracle, DualForm};
use tspread_core::fuzz::{run_fuzz, FuzzBounds};
use tspread_core::hypergraph::{edge_ideal, enumerate_edges, prune_isolated};
use tspread_core::powers::power_profile;
use tspread_core::report::{run_report, ReportOptions};
use tspread_core::resolution::betti_table;
use tspread_core::sorting::rees_groebner_binomials;
use tspread_core::{Budget, Error, MonomialIdeal, SpreadInstance};

#[derive(Parser)]
#[command(name = "tspread", about = "Invariants of complete t-spread d-partite edge ideals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// cap on the number of edge-ideal generators
    #[arg(long, global = true)]
    budget_gens: Option<usize>,
    /// RNG seed for the fuzz subcommand
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum PowerCheck {
    Persistence,
    Ass,
    Ntf,
    Normal,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the minimal generators of the edge ideal
    Generators { file: PathBuf },
    /// Betti numbers, projective dimension, and depth
    Betti { file: PathBuf },
    /// Quadratic relations of the Rees presentation
    ReesBinomials { file: PathBuf },
    /// Alexander dual generators with provenance
    Dual { file: PathBuf },
    /// Minimal primes and height
    Primes { file: PathBuf },
    /// Unmixedness, Cohen-Macaulayness, and the Koenig numbers
    Classify { file: PathBuf },
    /// Behaviour of powers: persistence, Ass, NTF, normality
    Powers {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = PowerCheck::All)]
        check: PowerCheck,
    },
    /// The full invariant report
    Report {
        file: PathBuf,
        /// include the power profile in the report
        #[arg(long)]
        with_powers: bool,
    },
    /// Random differential testing of every closed form
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 2,
                Error::Degenerate(_) => 3,
                Error::Budget(_) => 4,
                Error::TheoremViolation(_) => 5,
                Error::Unsupported(_) => 2,
            })
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    match cli.budget_gens {
        Some(n) => Budget::default().with_max_generators(n),
        None => Budget::default(),
    }
}

fn load(path: &PathBuf) -> Result<SpreadInstance, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    SpreadInstance::from_json(&text)
}

/// Prune and build the edge ideal, enforcing the generator budget.
fn prepare(path: &PathBuf, b: &Budget) -> Result<(SpreadInstance, MonomialIdeal), Error> {
    let raw = load(path)?;
    let (inst, _) = prune_isolated(&raw)?;
    let ideal = edge_ideal(&enumerate_edges(&inst));
    if ideal.num_gens() > b.max_generators {
        return Err(Error::Budget(format!(
            "{} generators exceed the budget of {}",
            ideal.num_gens(),
            b.max_generators
        )));
    }
    Ok((inst, ideal))
}

fn emit(cli: &Cli, value: serde_json::Value, table: String) {
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
        Format::Table => print!("{table}"),
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let b = budget(cli);
    match &cli.cmd {
        Cmd::Generators { file } => {
            let raw = load(file)?;
            let (inst, removed) = prune_isolated(&raw)?;
            let ideal = edge_ideal(&enumerate_edges(&inst));
            let gens: Vec<String> = ideal.gens().iter().map(|g| g.to_string()).collect();
            let mut table = String::new();
            for g in &gens {
                table.push_str(g);
                table.push('\n');
            }
            emit(
                cli,
                json!({"schema": 1, "generators": gens, "pruned_vertices": removed}),
                table,
            );
        }
        Cmd::Betti { file } => {
            let (_, ideal) = prepare(file, &b)?;
            let t = betti_table(&ideal)?;
            let table = format!(
                "degree: {}\nbeta: {:?}\nq: {}\npd: {}\ndepth: {}\n",
                t.degree, t.beta, t.q_ideal, t.pd, t.depth
            );
            emit(
                cli,
                json!({
                    "schema": 1, "degree": t.degree, "beta": t.beta,
                    "q": t.q_ideal, "pd": t.pd, "depth": t.depth,
                }),
                table,
            );
        }
        Cmd::ReesBinomials { file } => {
            let (_, ideal) = prepare(file, &b)?;
            let bins = rees_groebner_binomials(&ideal)?;
            let lines: Vec<String> = bins.iter().map(|x| x.to_string()).collect();
            emit(
                cli,
                json!({"schema": 1, "binomials": lines, "count": lines.len()}),
                lines.join("\n") + "\n",
            );
        }
        Cmd::Dual { file } => {
            let (inst, ideal) = prepare(file, &b)?;
            let entries: Vec<serde_json::Value> = if inst.is_interval_form() {
                dual_closed_form(&inst)?
                    .into_iter()
                    .map(|g| {
                        json!({
                            "monomial": g.monomial.to_monomial().to_string(),
                            "form": g.form,
                        })
                    })
                    .collect()
            } else {
                dual_oracle(&ideal, &b)?
                    .1
                    .iter()
                    .map(|m| {
                        json!({
                            "monomial": m.to_monomial().to_string(),
                            "form": DualForm::Transversal,
                        })
                    })
                    .collect()
            };
            let table = entries
                .iter()
                .map(|e| e["monomial"].as_str().unwrap().to_string())
                .collect::<Vec<_>>()
                .join("\n")
                + "\n";
            emit(cli, json!({"schema": 1, "dual_generators": entries}), table);
        }
        Cmd::Primes { file } => {
            let (inst, ideal) = prepare(file, &b)?;
            let (primes, _) = dual_oracle(&ideal, &b)?;
            let ht = tspread_core::duality::height(&ideal, &inst, &b)?;
            let lines: Vec<String> = primes.primes().iter().map(|p| p.to_string()).collect();
            emit(
                cli,
                json!({"schema": 1, "min_primes": lines, "count": lines.len(), "height": ht}),
                format!("{}\nheight: {ht}\n", lines.join("\n")),
            );
        }
        Cmd::Classify { file } => {
            let (inst, ideal) = prepare(file, &b)?;
            let konig = tspread_core::duality::konig_check(&ideal, &inst, &b)?;
            let (unmixed, cm) = if inst.is_interval_form() {
                (
                    Some(tspread_core::duality::is_unmixed(&inst, &b)?),
                    Some(tspread_core::duality::is_cohen_macaulay(&inst, &b)?),
                )
            } else {
                (None, None)
            };
            let table = format!(
                "unmixed: {}\ncohen_macaulay: {}\nmatching: {}\ntransversal: {}\n",
                unmixed.map_or("n/a".into(), |v| v.to_string()),
                cm.map_or("n/a".into(), |v| v.to_string()),
                konig.matching,
                konig.transversal,
            );
            emit(
                cli,
                json!({
                    "schema": 1, "unmixed": unmixed, "cohen_macaulay": cm,
                    "matching": konig.matching, "transversal": konig.transversal,
                    "konig": konig.equal,
                }),
                table,
            );
        }
        Cmd::Powers { file, kmax, check } => {
            let (_, ideal) = prepare(file, &b)?;
            let normal_k = (*kmax).min(2);
            let p = power_profile(&ideal, *kmax, normal_k, &b)?;
            let persistence: Vec<bool> = p.steps.iter().map(|s| s.strong_persistence).collect();
            let ass: Vec<Vec<String>> = p
                .steps
                .iter()
                .map(|s| s.ass.primes().iter().map(|q| q.to_string()).collect())
                .collect();
            let value = match check {
                PowerCheck::Persistence => json!({"schema": 1, "strong_persistence": persistence}),
                PowerCheck::Ass => json!({"schema": 1, "ass_per_k": ass}),
                PowerCheck::Ntf => json!({"schema": 1, "ntf_up_to_k_max": p.ntf, "k_max": p.k_max}),
                PowerCheck::Normal => {
                    json!({"schema": 1, "normal": p.normal, "k_max": p.normal_k_max})
                }
                PowerCheck::All => json!({
                    "schema": 1, "k_max": p.k_max,
                    "generator_counts": p.steps.iter().map(|s| s.num_gens).collect::<Vec<_>>(),
                    "strong_persistence": persistence,
                    "ass_per_k": ass,
                    "ntf_up_to_k_max": p.ntf,
                    "normal": p.normal, "normal_k_max": p.normal_k_max,
                }),
            };
            let table = format!(
                "k_max: {}\nstrong_persistence: {:?}\nntf: {}\nnormal (k <= {}): {}\n",
                p.k_max, persistence, p.ntf, p.normal_k_max, p.normal
            );
            emit(cli, value, table);
        }
        Cmd::Report { file, with_powers } => {
            let raw = load(file)?;
            let opts = ReportOptions {
                with_powers: *with_powers,
                ..ReportOptions::default()
            };
            let r = run_report(&raw, &opts, &b)?;
            let value = serde_json::to_value(&r).unwrap();
            let table = format!(
                "generators: {}\nbeta: {:?}\npd: {}\ndepth: {}\nanalytic_spread: {}\n\
                 min_primes: {}\nheight: {}\nunmixed: {}\ncohen_macaulay: {}\n",
                r.generators.value.len(),
                r.betti.value.beta,
                r.betti.value.pd,
                r.betti.value.depth,
                r.analytic_spread.value,
                r.min_primes.value.len(),
                r.height.value,
                r.unmixed.as_ref().map_or("n/a".into(), |t| t.value.to_string()),
                r.cohen_macaulay.as_ref().map_or("n/a".into(), |t| t.value.to_string()),
            );
            emit(cli, value, table);
        }
        Cmd::Fuzz { count, max_vertices } => {
            let bounds = FuzzBounds {
                max_vertices: *max_vertices,
                ..FuzzBounds::default()
            };
            let out = run_fuzz(cli.seed, *count, &bounds, &b)?;
            let ce = out.counterexample.as_ref().map(|c| {
                json!({
                    "check": c.check,
                    "detail": c.detail,
                    "parts": c.instance.partition().parts().iter()
                        .map(|p| p.vertices().to_vec()).collect::<Vec<_>>(),
                    "t": c.instance.spread().entries(),
                })
            });
            let table = match &out.counterexample {
                None => format!(
                    "instances: {}\nskipped_degenerate: {}\ncounterexamples: 0\n",
                    out.instances_run, out.skipped_degenerate
                ),
                Some(c) => format!(
                    "counterexample in {}: {}\ninstance: {:?} t={:?}\n",
                    c.check,
                    c.detail,
                    c.instance
                        .partition()
                        .parts()
                        .iter()
                        .map(|p| p.vertices().to_vec())
                        .collect::<Vec<_>>(),
                    c.instance.spread().entries(),
                ),
            };
            emit(
                cli,
                json!({
                    "schema": 1, "seed": out.seed, "instances": out.instances_run,
                    "skipped_degenerate": out.skipped_degenerate, "counterexample": ce,
                }),
                table,
            );
            if out.counterexample.is_some() {
                return Err(Error::TheoremViolation(
                    "fuzzing found a closed-form/oracle disagreement".into(),
                ));
            }
        }
    }
    Ok(())
}
