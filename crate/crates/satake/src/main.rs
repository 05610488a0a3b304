use clap::{Args, Parser, Subcommand};
use satake::cli::{self, JobConfig};

/// Exact spherical-function, Gindikin-Karpelevich and Demazure-Lusztig
/// computations for p-adic Kac-Moody groups, with an SL2 local-field oracle.
#[derive(Parser)]
#[command(name = "satake", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// GCM as inline JSON or a path to a JSON file
    #[arg(long)]
    gcm: Option<String>,
    /// Truncation depth / height bound
    #[arg(long)]
    depth: Option<i64>,
    /// Weyl ball length bound
    #[arg(long)]
    ball: Option<usize>,
    /// Exact rational ("2", "5/2") or "formal" to keep v symbolic
    #[arg(long)]
    q: Option<String>,
    /// Base coweight pairing vector, e.g. "2" or "1,1"
    #[arg(long)]
    lambda: Option<String>,
    /// Chain of pairing vectors, e.g. "2;4;6" or "1,1;2,2"
    #[arg(long)]
    chain: Option<String>,
    /// Laurent window precision for the oracle
    #[arg(long)]
    precision: Option<i64>,
    /// Generator word, comma-separated 0-based indices, e.g. "0,1,0"
    #[arg(long)]
    word: Option<String>,
    /// Largest principal-part degree for the GK census
    #[arg(long = "k-max")]
    k_max: Option<i64>,
    /// Constant exponent assignment for the c-function
    #[arg(long = "cfunction-exponent")]
    cfunction_exponent: Option<i64>,
    /// Also write the JSON document to this path
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate and classify a GCM blockwise
    Classify(CommonArgs),
    /// Positive roots with multiplicities up to a height bound
    Roots(CommonArgs),
    /// Enumerate the Weyl ball of a given length bound
    WeylBall(CommonArgs),
    /// Apply a Demazure-Lusztig operator word to e^lambda
    DlApply(CommonArgs),
    /// The normalized integral T_w(e^lambda) for dominant regular lambda
    Integral(CommonArgs),
    /// Normalized Satake series on a depth window
    Satake(CommonArgs),
    /// Gindikin-Karpelevich product over positive coroots
    Upsilon(CommonArgs),
    /// Rebase the Gindikin-Karpelevich product onto lambda
    GkShift(CommonArgs),
    /// Stabilization report along an increasing dominant chain
    ApproxCheck(CommonArgs),
    /// Macdonald's finite c-function product
    Cfunction(CommonArgs),
    /// SL2 oracle: spherical coset census
    OracleSpherical(CommonArgs),
    /// SL2 oracle: Gindikin-Karpelevich coset census
    OracleGk(CommonArgs),
    /// SL2 oracle: Iwahori-refined census with consistency checks
    OracleIwahori(CommonArgs),
    /// Run the whole verification suite
    VerifyAll(CommonArgs),
}

impl Command {
    fn into_config(self) -> JobConfig {
        let (name, args) = match self {
            Command::Classify(a) => ("classify", a),
            Command::Roots(a) => ("roots", a),
            Command::WeylBall(a) => ("weyl-ball", a),
            Command::DlApply(a) => ("dl-apply", a),
            Command::Integral(a) => ("integral", a),
            Command::Satake(a) => ("satake", a),
            Command::Upsilon(a) => ("upsilon", a),
            Command::GkShift(a) => ("gk-shift", a),
            Command::ApproxCheck(a) => ("approx-check", a),
            Command::Cfunction(a) => ("cfunction", a),
            Command::OracleSpherical(a) => ("oracle-spherical", a),
            Command::OracleGk(a) => ("oracle-gk", a),
            Command::OracleIwahori(a) => ("oracle-iwahori", a),
            Command::VerifyAll(a) => ("verify-all", a),
        };
        JobConfig {
            command: name.to_string(),
            gcm: args.gcm,
            depth: args.depth,
            ball: args.ball,
            q: args.q,
            lambda: args.lambda,
            chain: args.chain,
            precision: args.precision,
            word: args.word,
            k_max: args.k_max,
            cfunction_exponent: args.cfunction_exponent,
            out: args.out,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let config = cli.command.into_config();
    let started = std::time::Instant::now();
    match cli::run(&config) {
        Ok(doc) => {
            let text = serde_json::to_string_pretty(&doc).expect("document serializes");
            println!("{text}");
            if let Some(path) = &config.out {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("cannot write {path}: {e}");
                    std::process::exit(2);
                }
            }
            eprintln!("completed in {:.3}s", started.elapsed().as_secs_f64());
        }
        Err(error) => {
            eprintln!("error: {error}");
            std::process::exit(cli::exit_code_for(&error));
        }
    }
}
