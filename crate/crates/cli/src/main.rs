use std::io::{IsTerminal, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use nssbound::bounds::{applicable_nss_cap, bound_report, ApplicableCap, ReportOptions};
use nssbound::certificate::{
    certificate_search, minimal_certificate_degree, Certificate, SearchMode, SearchOutcome,
};
use nssbound::json;
use nssbound::mixed_volume::{mixed_volume, mixed_volume_oracle, normalized_volume, SupportTuple};
use nssbound::system::SystemFile;
use nssbound::Error;

#[derive(Parser, Debug)]
#[command(
    name = "nssbound",
    version,
    about = "Sparse effective Nullstellensatz bounds and certificates"
)]
struct Cli {
    /// System description (JSON); read from stdin when omitted.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Machine-readable JSON output (the default when stdout is not a terminal).
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized internals.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for volume evaluations.
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mixed volume of exactly n supports.
    Mv {
        /// Also run the random-lifting oracle and require agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Volumes and vertices of each support's convex hull.
    Volume,
    /// Degree bounds.
    Bounds {
        #[command(subcommand)]
        kind: BoundsKind,
    },
    /// Search for an explicit certificate 1 = sum g_i f_i.
    Certificate {
        /// Degree cap on g_i f_i, or `auto` for the applicable bound.
        #[arg(long, default_value = "auto")]
        cap: CapArg,
        #[arg(long, value_enum, default_value_t = Mode::TotalDegree)]
        mode: Mode,
        /// Report the minimal feasible cap and its ratio to the bound.
        #[arg(long)]
        minimal: bool,
    },
    /// Same as `bounds nss --compare`.
    Compare {
        #[arg(long)]
        unmixed: bool,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsKind {
    /// Bounds on deg(g_i f_i).
    Nss(BoundFlags),
    /// Bounds on the Noether exponent.
    Noether(BoundFlags),
}

#[derive(clap::Args, Debug)]
struct BoundFlags {
    /// Use the union of all supports (unmixed bounds only).
    #[arg(long)]
    unmixed: bool,
    /// Add classical comparator bounds.
    #[arg(long)]
    compare: bool,
}

#[derive(Debug, Clone, Copy)]
enum CapArg {
    Auto,
    Fixed(u64),
}

impl std::str::FromStr for CapArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(CapArg::Auto);
        }
        s.parse()
            .map(CapArg::Fixed)
            .map_err(|_| format!("expected a nonnegative integer or `auto`, got {s:?}"))
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    TotalDegree,
    Newton,
}

impl Mode {
    fn label(self) -> &'static str {
        match self {
            Mode::TotalDegree => "total-degree",
            Mode::Newton => "newton",
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Limit(String),
    /// Exit 3 with a JSON body on stdout.
    Infeasible {
        body: Value,
        message: String,
    },
    CrossCheck(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Limit(_) | Failure::Infeasible { .. } => 3,
            Failure::CrossCheck(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LimitExceeded(_) | Error::OutOfRange(_) => Failure::Limit(e.to_string()),
            Error::GenericityFailure(_) | Error::Overflow(_) | Error::CrossCheck(_) => {
                Failure::CrossCheck(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, value: &Value, table: impl FnOnce() -> String) {
        if self.json {
            println!("{}", json::to_canonical_string(value));
        } else {
            print!("{}", table());
        }
    }
}

fn read_system(path: &Option<PathBuf>) -> Result<SystemFile, Failure> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            s
        }
    };
    Ok(SystemFile::parse(&text)?)
}

fn cmd_mv(sys: &SystemFile, oracle: bool, seed: u64, out: &Output) -> Result<(), Failure> {
    let tuple = SupportTuple::new(sys.n, sys.supports.clone())?;
    let mv = mixed_volume(&tuple)?;
    let mut table = format!("mixed volume  {mv}\n");
    if oracle {
        let check = mixed_volume_oracle(&tuple, seed)?;
        if check != mv {
            return Err(Failure::CrossCheck(format!(
                "inclusion-exclusion gives {mv} but the lifting oracle (seed {seed}) gives {check}"
            )));
        }
        table.push_str(&format!("oracle (seed {seed})  {check}  agrees\n"));
    }
    out.emit(&json::int(&mv), || table);
    Ok(())
}

fn cmd_volume(sys: &SystemFile, out: &Output) -> Result<(), Failure> {
    let mut items = Vec::new();
    let mut table = String::new();
    for (i, a) in sys.supports.iter().enumerate() {
        let hull = a.hull();
        let verts: Vec<Value> = hull
            .vertices()
            .iter()
            .map(|v| Value::Array(v.iter().map(json::rational).collect()))
            .collect();
        let nvol = normalized_volume(a);
        items.push(json!({
            "index": i + 1,
            "affine_dim": hull.affine_dim(),
            "volume": json::rational(hull.volume()),
            "normalized_volume": json::int(&nvol),
            "vertices": verts,
        }));
        table.push_str(&format!(
            "A_{}  dim {}  vol {}  n!vol {}  {}\n",
            i + 1,
            hull.affine_dim(),
            hull.volume(),
            nvol,
            hull
        ));
    }
    out.emit(&json!({ "n": sys.n, "polytopes": items }), || table);
    Ok(())
}

fn cmd_bounds(
    sys: &SystemFile,
    noether: bool,
    flags: &BoundFlags,
    out: &Output,
) -> Result<(), Failure> {
    let spec = sys.spec()?;
    let report = bound_report(
        &spec,
        ReportOptions {
            unmixed_only: flags.unmixed,
            compare: flags.compare,
        },
    )?;
    let headline = match (noether, flags.unmixed) {
        (false, true) => Some(&report.unmixed_nss_degree),
        (false, false) => report.mixed_nss.as_ref(),
        (true, true) => Some(&report.unmixed_noether),
        (true, false) => report.noether_mixed.as_ref(),
    }
    .cloned()
    .ok_or_else(|| Failure::CrossCheck("bound missing from report".into()))?;
    let mut value = report.to_json();
    if let Value::Object(o) = &mut value {
        o.insert("bound".into(), json::int(&headline));
        o.insert(
            "kind".into(),
            json!(if noether { "noether" } else { "nss" }),
        );
    }
    let name = if noether {
        "Noether exponent"
    } else {
        "deg(g_i f_i)"
    };
    out.emit(&value, || {
        format!("bound on {name}  {headline}\n{}", report.to_table())
    });
    Ok(())
}

fn applicable_cap(sys: &SystemFile) -> Result<(u64, ApplicableCap), Failure> {
    let bound = applicable_nss_cap(&sys.spec()?)?;
    let cap = bound.cap.to_u64().ok_or_else(|| {
        Failure::Limit(format!(
            "bound {} is too large for a certificate search",
            bound.cap
        ))
    })?;
    Ok((cap, bound))
}

fn certificate_json(cert: &Certificate) -> Value {
    let mut v = cert.to_json();
    if let Value::Object(o) = &mut v {
        o.insert("verified".into(), json!(true));
    }
    v
}

fn certificate_table(cert: &Certificate) -> String {
    let mut s = format!(
        "cap used  {}\nmax deg(g_i f_i)  {}\n",
        cert.cap_used, cert.max_product_degree
    );
    for (i, g) in cert.cofactors.iter().enumerate() {
        s.push_str(&format!("g_{} = {g}\n", i + 1));
    }
    s
}

fn cmd_certificate(
    sys: &SystemFile,
    cap: CapArg,
    mode: Mode,
    minimal: bool,
    out: &Output,
) -> Result<(), Failure> {
    let fs = sys
        .polynomials
        .as_ref()
        .ok_or_else(|| Failure::Input("certificate search needs a `polynomials` entry".into()))?;
    if minimal && mode == Mode::Newton {
        return Err(Failure::Usage(
            "--minimal applies to total-degree mode only".into(),
        ));
    }
    let mut body = Map::new();
    body.insert("mode".into(), json!(mode.label()));

    let applicable = match (mode, cap, minimal) {
        (Mode::TotalDegree, CapArg::Auto, _) | (Mode::TotalDegree, _, true) => {
            Some(applicable_cap(sys)?)
        }
        _ => None,
    };
    if let Some((_, b)) = &applicable {
        body.insert(
            "bound".into(),
            json!({ "value": json::int(&b.cap), "source": b.source }),
        );
    }

    let (outcome, complete) = match mode {
        Mode::Newton => (
            certificate_search(fs, &SearchMode::Newton { common: None }, 0)?,
            true,
        ),
        Mode::TotalDegree => {
            let c = match cap {
                CapArg::Fixed(c) => c,
                CapArg::Auto => applicable.as_ref().unwrap().0,
            };
            let complete = applicable.as_ref().is_some_and(|(p, _)| c >= *p);
            if minimal {
                match minimal_certificate_degree(fs, c)? {
                    Some(cert) => {
                        let (p, _) = applicable.as_ref().unwrap();
                        body.insert("minimal_cap".into(), json!(cert.cap_used));
                        body.insert(
                            "ratio".into(),
                            if *p == 0 {
                                Value::Null
                            } else {
                                json::rational(&BigRational::new(
                                    BigInt::from(cert.cap_used),
                                    BigInt::from(*p),
                                ))
                            },
                        );
                        (SearchOutcome::Found(cert), complete)
                    }
                    None => (SearchOutcome::InfeasibleAtCap { cap: c }, complete),
                }
            } else {
                (
                    certificate_search(fs, &SearchMode::TotalDegree, c)?,
                    complete,
                )
            }
        }
    };

    match outcome {
        SearchOutcome::Found(cert) => {
            body.insert("certificate".into(), certificate_json(&cert));
            body.insert("status".into(), json!("found"));
            let mut table = certificate_table(&cert);
            if let Some(m) = body.get("minimal_cap") {
                table.push_str(&format!("minimal cap  {m}\n"));
            }
            out.emit(&Value::Object(body), || table);
            Ok(())
        }
        SearchOutcome::InfeasibleAtCap { cap } => {
            let message = if complete {
                let source = match mode {
                    Mode::Newton => "unmixed sparse Nullstellensatz bound (Newton polytope form)",
                    Mode::TotalDegree => applicable.as_ref().unwrap().1.source,
                };
                format!(
                    "no certificate at cap {cap}: the ideal is proper, since by the {source} a system without \
                     common zeros always has a certificate within this cap"
                )
            } else {
                format!(
                    "no certificate at cap {cap}; this does not prove the ideal is proper because the cap is \
                     below the applicable bound"
                )
            };
            body.insert("status".into(), json!("infeasible"));
            body.insert("cap".into(), json!(cap));
            body.insert("ideal_is_proper".into(), json!(complete));
            body.insert("message".into(), json!(message));
            Err(Failure::Infeasible {
                body: Value::Object(body),
                message,
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = Output {
        json: cli.json || !std::io::stdout().is_terminal(),
    };
    if let Some(k) = cli.jobs {
        if k == 0 {
            return Err(Failure::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let sys = read_system(&cli.input)?;
    match &cli.command {
        Command::Mv { oracle } => cmd_mv(&sys, *oracle, cli.seed, &out),
        Command::Volume => cmd_volume(&sys, &out),
        Command::Bounds { kind } => match kind {
            BoundsKind::Nss(f) => cmd_bounds(&sys, false, f, &out),
            BoundsKind::Noether(f) => cmd_bounds(&sys, true, f, &out),
        },
        Command::Certificate { cap, mode, minimal } => {
            cmd_certificate(&sys, *cap, *mode, *minimal, &out)
        }
        Command::Compare { unmixed } => cmd_bounds(
            &sys,
            false,
            &BoundFlags {
                unmixed: *unmixed,
                compare: true,
            },
            &out,
        ),
    }
    .map_err(|f| match f {
        Failure::Infeasible { body, message } => {
            out.emit(&body, String::new);
            Failure::Infeasible {
                body: Value::Null,
                message,
            }
        }
        f => f,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m)
                | Failure::Input(m)
                | Failure::Limit(m)
                | Failure::CrossCheck(m) => m.clone(),
                Failure::Infeasible { message, .. } => message.clone(),
            };
            eprintln!("nssbound: {msg}");
            ExitCode::from(f.code())
        }
    }
}
