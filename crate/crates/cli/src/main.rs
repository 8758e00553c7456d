use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use largehom::criteria::{check_small, ci_equivalence_report, detect_large, thm_tor_check};
use largehom::report::{CheckReport, Status};
use largehom::ringcore::{split_top_level, Ring, RingIdeal, RingSpec};
use largehom::series::golod_map_check_ideal;
use largehom::Error;

mod commands;

use commands::ModuleKind;

#[derive(Parser, Debug)]
#[command(
    name = "largehom",
    version,
    about = "Large, small and Golod homomorphisms of Artinian graded rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Ring-spec file.
    #[arg(long, global = true)]
    ring: Option<PathBuf>,

    /// Ideal generators, comma separated; overrides the ring-spec file.
    #[arg(long, global = true, allow_hyphen_values = true)]
    ideal: Option<String>,

    /// Truncation degree.
    #[arg(short = 'N', global = true)]
    n: Option<usize>,

    /// Characteristic; overrides the ring-spec file.
    #[arg(long, global = true)]
    prime: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized parts of `paper-examples`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Module for `betti`, `poincare` and `koszul-module`.
    #[arg(long, global = true, value_enum)]
    module: Option<ModuleKind>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Basis, Hilbert function and structure of R.
    RingInfo,
    /// Koszul homology of R, and of I if given.
    Koszul,
    /// Graded Betti table of a module.
    Betti,
    /// Poincare series of a module.
    Poincare,
    /// Deviations of R.
    Deviations,
    /// I ∩ m^2 = mI.
    CheckNc,
    /// Whether R -> R/I is large.
    CheckLarge,
    /// Whether R -> R/mI is small.
    CheckSmall,
    /// R against the Golod bound.
    CheckGolodRing,
    /// Whether R -> R/I is a Golod homomorphism.
    CheckGolodMap,
    /// The equivalent conditions over a complete intersection.
    CiReport,
    /// Vanishing of Tor(mI,k) -> Tor(I,k).
    TorZero,
    /// Whether a module has an acyclic linear part.
    KoszulModule,
    /// Run the bundled fixtures.
    PaperExamples,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

impl Command {
    fn name(self) -> String {
        let s = format!("{self:?}");
        let mut out = String::new();
        for (i, c) in s.chars().enumerate() {
            if c.is_ascii_uppercase() && i > 0 {
                out.push('-');
            }
            out.push(c.to_ascii_lowercase());
        }
        out
    }
}

struct Failure {
    kind: String,
    module: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: e.kind().into(),
            module: e.module().into(),
            message: e.to_string(),
        }
    }
}

struct Inputs {
    spec: Option<RingSpec>,
    ideal: Vec<String>,
    n: usize,
}

impl Inputs {
    fn to_json(&self) -> Value {
        match &self.spec {
            Some(s) => json!({
                "p": s.p,
                "vars": s.vars,
                "relations": s.relations,
                "ideal": self.ideal,
                "N": self.n,
            }),
            None => json!({ "p": null, "vars": null, "relations": null, "ideal": null, "N": self.n }),
        }
    }
}

fn load(cli: &Cli) -> Result<(RingSpec, Ring, RingIdeal), Failure> {
    let path = cli.ring.as_ref().ok_or_else(|| Failure {
        kind: "UsageError".into(),
        module: "cli".into(),
        message: "--ring is required for this command".into(),
    })?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        kind: "IoError".into(),
        module: "cli".into(),
        message: format!("{}: {e}", path.display()),
    })?;
    let mut spec = RingSpec::parse(&text)?;
    if let Some(p) = cli.prime {
        spec.p = p;
    }
    if let Some(i) = &cli.ideal {
        spec.ideal = Some(split_top_level(i));
    }
    let ring = spec.build_ring()?;
    let ideal = RingSpec::ideal_in(&ring, spec.ideal.as_deref().unwrap_or(&[]))?;
    Ok((spec, ring, ideal))
}

fn truncation(cli: &Cli, spec: Option<&RingSpec>) -> Result<usize, Failure> {
    let n = cli.n.or(spec.and_then(|s| s.truncation)).unwrap_or(6);
    if n == 0 {
        return Err(Error::ParseError("truncation N must be at least 1".into()).into());
    }
    Ok(n)
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<CheckReport, Failure> {
    use Command::*;
    if cli.command == PaperExamples {
        inputs.n = truncation(cli, None)?;
        return Ok(commands::paper_examples(inputs.n, cli.seed)?);
    }
    let (spec, ring, ideal) = load(cli)?;
    let n = truncation(cli, Some(&spec))?;
    inputs.n = n;
    inputs.ideal = ideal.trimmed().format_gens();
    inputs.spec = Some(spec);
    let module = |default: ModuleKind| commands::module_of(cli.module.unwrap_or(default), &ring, &ideal);
    let report = match cli.command {
        RingInfo => commands::ring_info(&ring)?,
        Koszul => commands::koszul(&ring, Some(&ideal))?,
        Betti => commands::betti(&module(ModuleKind::K)?, n)?,
        Poincare => commands::poincare(&module(ModuleKind::K)?, n)?,
        Deviations => commands::deviations_report(&ring, n)?,
        CheckNc => commands::check_nc_report(&ideal),
        CheckLarge => detect_large(&ideal, n)?,
        CheckSmall => check_small(&ideal, n)?,
        CheckGolodRing => commands::check_golod_ring(&ring, n)?,
        CheckGolodMap => golod_map_check_ideal(&ideal, n)?,
        CiReport => ci_equivalence_report(&ideal, n)?,
        TorZero => thm_tor_check(&ideal, n)?,
        KoszulModule => commands::koszul_module(&module(ModuleKind::Quotient)?, n)?,
        PaperExamples => unreachable!(),
    };
    Ok(report)
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => {
            let s = other.to_string();
            if s.len() > 160 {
                "... (use --format json)".into()
            } else {
                s
            }
        }
    }
}

fn render_text(command: &str, inputs: &Inputs, r: &CheckReport) -> String {
    let mut out = format!("command: {command}\n");
    if let Some(s) = &inputs.spec {
        out += &format!(
            "ring: k[{}]/({}), p = {}\n",
            s.vars.join(","),
            s.relations.join(", "),
            s.p
        );
        out += &format!(
            "ideal: ({})\n",
            if inputs.ideal.is_empty() {
                "0".into()
            } else {
                inputs.ideal.join(", ")
            }
        );
    }
    out += &format!("N: {}\n", inputs.n);
    let v = &r.verdict;
    out += &match v.status {
        Status::EvidenceUpTo(k) => format!("verdict: EvidenceUpTo({k}) via {}\n", v.rule),
        s => format!("verdict: {} via {}\n", s.name(), v.rule),
    };
    if let Some(w) = &v.witness {
        match w.degree {
            Some(d) => out += &format!("witness (degree {d}): {}\n", w.description),
            None => out += &format!("witness: {}\n", w.description),
        }
    }
    if !v.trace.is_empty() {
        out += "trace:\n";
        for t in &v.trace {
            out += &format!("  {}: {}", t.rule, t.outcome);
            if !t.detail.is_empty() {
                out += &format!(" ({})", t.detail);
            }
            out += "\n";
        }
    }
    if let Value::Object(m) = &r.data {
        out += "data:\n";
        for (k, v) in m {
            out += &format!("  {k}: {}\n", compact(v));
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let command = cli.command.name();
    let mut inputs = Inputs {
        spec: None,
        ideal: Vec::new(),
        n: 0,
    };
    match run(&cli, &mut inputs) {
        Ok(r) => {
            match cli.format {
                Format::Json => {
                    let mut doc = json!({
                        "command": command,
                        "inputs": inputs.to_json(),
                        "verdict": r.verdict,
                        "data": r.data,
                    });
                    if let Some(t) = r.truncation {
                        doc["truncation"] = json!(t);
                    }
                    println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
                }
                Format::Text => print!("{}", render_text(&command, &inputs, &r)),
            }
            if r.status().is_fail() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            match cli.format {
                Format::Json => {
                    let doc = json!({
                        "command": command,
                        "error": { "kind": f.kind, "module": f.module, "message": f.message },
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("error serializes"));
                }
                Format::Text => eprintln!("error [{}/{}]: {}", f.module, f.kind, f.message),
            }
            ExitCode::from(2)
        }
    }
}
