use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qac_core::baxter::{phi_n_check_sl2, verify_baxter_sl2, verify_mutation_identity, Verified};
use qac_core::cluster::{mutate_seq, parse_sequence};
use qac_core::fixtures::{run_all, run_fixture, VerificationReport};
use qac_core::lweight::LWeightMono;
use qac_core::qchar::{kr_qchar_sl2, prefund_minus_qchar_sl2, prefund_plus_qchar_sl2, QCharacter};
use qac_core::quiver::build_gamma_window;
use qac_core::seedfile::SeedFile;
use qac_core::sl2::{factorize, is_simple_product};
use qac_core::{CartanData, Error, Vertex};

#[derive(Parser)]
#[command(name = "qac", version, about = "Exact checks of cluster mutations, q-characters and Baxter relations")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Report elapsed time per check.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one named fixture.
    Fixture { name: String },
    /// Run every fixture and the seeded property sweeps.
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Apply a mutation sequence to a seed file.
    Mutate {
        #[arg(long)]
        seed: String,
        /// e.g. "(1,0);(1,-2);(1,2)"
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// sl2 q-characters.
    #[command(subcommand)]
    Qchar(QcharCommand),
    /// Factorize a positive sl2 l-weight.
    Factorize {
        #[arg(long, allow_hyphen_values = true)]
        lweight: String,
    },
    /// l-weight utilities.
    #[command(subcommand)]
    Lweight(LweightCommand),
    /// Identity checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Export a window of the quiver.
    Quiver(QuiverArgs),
}

#[derive(Subcommand)]
enum QcharCommand {
    /// Kirillov-Reshetikhin module W_{k,q^shift}.
    Kr {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
        #[command(flatten)]
        view: View,
    },
    /// Prefundamental module, truncated.
    Prefund {
        /// + or -
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long)]
        depth: u32,
        #[command(flatten)]
        view: View,
    },
}

#[derive(Args)]
struct View {
    /// Divide by the highest monomial.
    #[arg(long)]
    normalize: bool,
    /// Print the ordinary character instead.
    #[arg(long)]
    character: bool,
}

#[derive(Subcommand)]
enum LweightCommand {
    /// Prints positive, negative, both or neither.
    Classify {
        #[arg(long = "type", default_value = "A1")]
        cartan: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// First mutation at a vertex against its l-identity.
    Mutation {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long, allow_hyphen_values = true)]
        vertex: String,
        /// Half-width of the window around the vertex (default 6 times the lacing number).
        #[arg(long)]
        width: Option<i64>,
    },
    /// Baxter relation of the sl2 KR module W_{k,q^shift}.
    Baxter {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
    },
    /// The phi_N quotient identity.
    PhiN {
        #[arg(long = "N")]
        n: u32,
    },
}

#[derive(Args)]
struct QuiverArgs {
    #[arg(long = "type")]
    cartan: String,
    #[arg(long, allow_hyphen_values = true)]
    base: String,
    /// lo,hi
    #[arg(long, allow_hyphen_values = true)]
    window: String,
    #[arg(long)]
    dot: bool,
}

fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| anyhow!("window must be lo,hi: {text}"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn exit_for(failures: usize) -> ExitCode {
    ExitCode::from(failures.min(125) as u8)
}

fn report_json(r: &VerificationReport, timings: bool) -> serde_json::Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    if timings {
        v["elapsed_ms"] = json!(r.elapsed_ms() as u64);
    }
    v
}

fn print_reports(reports: &[VerificationReport], cli: &Cli) {
    if cli.json {
        let list: Vec<_> = reports.iter().map(|r| report_json(r, cli.timings)).collect();
        println!("{}", serde_json::to_string_pretty(&list).expect("json"));
    } else {
        for r in reports {
            if cli.timings {
                println!("{r} ({} ms)", r.elapsed_ms());
            } else {
                println!("{r}");
            }
        }
        let passed = reports.iter().filter(|r| r.passed()).count();
        println!("{passed}/{} passed", reports.len());
    }
}

fn print_qchar(c: &QCharacter, view: &View, cli: &Cli) -> Result<()> {
    let c = if view.normalize { c.normalize()? } else { c.clone() };
    let text = if view.character { c.character()?.to_string() } else { c.to_string() };
    if cli.json {
        println!("{}", json!({ "qchar": text, "depth": c.depth }));
    } else {
        println!("{text}");
        if let Some(d) = c.depth {
            println!("(truncated at depth {d})");
        }
    }
    Ok(())
}

fn verification(r: qac_core::Result<Verified>, cli: &Cli, start: Instant) -> Result<ExitCode> {
    let ms = start.elapsed().as_millis() as u64;
    match r {
        Ok(v) => {
            if cli.json {
                let mut out = json!({ "name": v.name, "status": "pass", "lhs": v.lhs, "rhs": v.rhs });
                if cli.timings {
                    out["elapsed_ms"] = json!(ms);
                }
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("pass {}\n  {}\n  = {}", v.name, v.lhs, v.rhs);
                if cli.timings {
                    println!("({ms} ms)");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::Mismatch { name, lhs, rhs }) => {
            let out = json!({ "name": name, "status": "fail", "lhs": lhs, "rhs": rhs });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let start = Instant::now();
    match &cli.command {
        Command::Fixture { name } => {
            let r = run_fixture(name)?;
            let failed = usize::from(!r.passed());
            print_reports(&[r], cli);
            Ok(exit_for(failed))
        }
        Command::VerifyAll { seed, samples } => {
            let reports = run_all(*seed, *samples);
            let failed = reports.iter().filter(|r| !r.passed()).count();
            print_reports(&reports, cli);
            Ok(exit_for(failed))
        }
        Command::Mutate { seed, seq } => {
            let text = fs::read_to_string(seed).with_context(|| format!("reading {seed}"))?;
            let file = SeedFile::from_json(&text)?;
            let (cd, s) = file.to_seed()?;
            let ks = parse_sequence(seq)?;
            let out = mutate_seq(&s, &ks)?;
            if cli.json {
                let base: Vertex = file.base.as_deref().unwrap_or("1,0").parse()?;
                println!("{}", SeedFile::from_seed(&cd, base, file.window, &out).to_json());
            } else {
                for (v, a) in &out.attach {
                    println!("{v} : {a}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Qchar(QcharCommand::Kr { k, shift, view }) => {
            print_qchar(&kr_qchar_sl2(*k, *shift), view, cli)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Qchar(QcharCommand::Prefund { sign, shift, depth, view }) => {
            let c = match sign.as_str() {
                "+" | "plus" => prefund_plus_qchar_sl2(*shift, *depth),
                "-" | "minus" => prefund_minus_qchar_sl2(*shift, *depth),
                other => bail!("sign must be + or -, got {other}"),
            };
            print_qchar(&c, view, cli)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Factorize { lweight } => {
            let cd = CartanData::sl2();
            let psi: LWeightMono = lweight.parse()?;
            let f = factorize(&cd, &psi)?;
            let out = json!({
                "invertible": f.invertible.to_string(),
                "strings": f.strings,
                "halflines": f.halflines,
                "simple_as_tensor": is_simple_product(&f.factors()),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Lweight(LweightCommand::Classify { cartan, expr }) => {
            let cd: CartanData = cartan.parse()?;
            let m: LWeightMono = expr.parse()?;
            let sign = m.classify(&cd);
            if cli.json {
                println!("{}", json!({ "lweight": m.to_string(), "class": sign.to_string() }));
            } else {
                println!("{sign}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(VerifyCommand::Mutation { cartan, vertex, width }) => {
            let cd: CartanData = cartan.parse()?;
            let v: Vertex = vertex.parse()?;
            let w = width.unwrap_or(6 * cd.lacing());
            let q = build_gamma_window(&cd, v, v.shift - w, v.shift + w)?;
            verification(verify_mutation_identity(&cd, &q, v), cli, start)
        }
        Command::Verify(VerifyCommand::Baxter { k, shift }) => verification(verify_baxter_sl2(*k, *shift), cli, start),
        Command::Verify(VerifyCommand::PhiN { n }) => verification(phi_n_check_sl2(*n), cli, start),
        Command::Quiver(args) => {
            let cd: CartanData = args.cartan.parse()?;
            let base: Vertex = args.base.parse()?;
            let (lo, hi) = parse_window(&args.window)?;
            let q = build_gamma_window(&cd, base, lo, hi)?;
            if args.dot {
                print!("{}", q.to_dot());
            } else {
                print!("{}", q.to_adjacency());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
