//! One binary over the whole toolkit: each subcommand wraps an engine,
//! reading PRC1 coloring files and CERT certificate files and keeping a
//! strict exit-code contract — 0 when the requested object was found or
//! verified, 1 for a definite negative answer, 2 for usage or internal
//! errors. Runs are deterministic given flags (and `--seed` on the one
//! randomized path); identical invocations write byte-identical files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ramsey_core::cert::PatternCopyCert;
use ramsey_core::duality::{duality, full_duality_scan, DualityOutcome, ScanOutcome};
use ramsey_core::embedding::{shift_search, ShiftOutcome};
use ramsey_core::lattice::Mask;
use ramsey_core::poset::contains_pattern;
use ramsey_core::search::{ramsey_number, verify_certificate, RamseyValue, Verdict};
use ramsey_core::shrub::{
    canonical_shrub, lower_bound_coloring, min_block_size, verify_lower_bound,
};
use ramsey_core::{Certificate, Color, Coloring, Error, FinitePoset, GroundSet, Partition};

#[derive(Parser)]
#[command(
    name = "ramsey",
    version,
    about = "Poset Ramsey toolkit: copy search, shift and duality dichotomies, \
             shrub construction, lower-bound experiments, exact small values"
)]
struct Cli {
    /// Cap the number of worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search one color class of a coloring for an induced copy of a pattern.
    ///
    /// Exit 0 and a COPY certificate when a copy exists, exit 1 when none does.
    Verify {
        /// PRC1 coloring file.
        coloring: PathBuf,
        /// Pattern: lambda, vee, q<n>, chain<l>, antichain<m>, chains<k>x<l>,
        /// or a pattern file.
        #[arg(long)]
        pattern: String,
        /// Color class to search: blue or red.
        #[arg(long)]
        color: String,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one ordering of the shift dichotomy: a red good cube copy on the
    /// low part or a blue chain through every prefix level.
    Shift {
        /// PRC1 coloring file.
        #[arg(long)]
        coloring: PathBuf,
        /// Split `n,k`: the low n labels form the cube part, the top k the
        /// ordered part.
        #[arg(long)]
        split: String,
        /// Comma-separated permutation of the top part's labels.
        #[arg(long, value_delimiter = ',')]
        ordering: Vec<u8>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide one split exactly: red good cube copy or blue shrub, never both.
    ///
    /// The coloring must have no blue Λ; one with a blue Λ is outside the
    /// dichotomy's domain and exits 2.
    Duality {
        /// PRC1 coloring file.
        #[arg(long)]
        coloring: PathBuf,
        /// Split `n,k`: cube part = low n labels, shrub part = top k labels.
        #[arg(long)]
        split: String,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the duality over every k-label choice of the second part: one red
    /// n-cube copy, or a blue shrub for every choice.
    Scan {
        /// PRC1 coloring file.
        #[arg(long)]
        coloring: PathBuf,
        /// Cube dimension; n + k must equal the ground-set size.
        #[arg(long)]
        n: usize,
        /// Second-part size.
        #[arg(long)]
        k: usize,
        /// Write every certificate into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Shrub constructions.
    #[command(subcommand)]
    Shrub(ShrubCommand),
    /// Randomized lower-bound construction: sample one framework per
    /// k-subset Y, resample until the containment property holds everywhere,
    /// then emit the blue-shrub coloring, the framework bundle, and a
    /// from-scratch verification report.
    Lowerbound {
        /// Ground-set size.
        #[arg(long = "N")]
        n: usize,
        /// Size of the shrub part Y.
        #[arg(long)]
        k: usize,
        /// Labels per block (default: the smallest size whose middle
        /// binomial reaches k).
        #[arg(long)]
        blocksize: Option<usize>,
        /// RNG seed; reruns with the same seed are bit-identical.
        #[arg(long)]
        seed: u64,
        /// Resampling passes allowed before giving up (exit 1).
        #[arg(long, default_value_t = 100)]
        budget: usize,
        /// Output prefix: writes <prefix>.prc1 and <prefix>.cert.
        #[arg(long, default_value = "lowerbound")]
        out: PathBuf,
    },
    /// Exact Ramsey number by exhaustive search: smallest n whose cube has
    /// no coloring avoiding both a blue and a red pattern.
    Ramsey {
        /// Blue pattern (same grammar as verify --pattern).
        #[arg(long)]
        blue: String,
        /// Red pattern.
        #[arg(long)]
        red: String,
        /// Largest dimension to search (at most 5).
        #[arg(long)]
        nmax: usize,
        /// Write each dimension's good coloring here as witness_n<n>.prc1.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Re-check a certificate against a coloring with the independent
    /// verifier. Exit 0 on pass, 1 with the reason on fail.
    Check {
        /// CERT certificate file.
        certificate: PathBuf,
        /// PRC1 coloring file.
        coloring: PathBuf,
    },
}

#[derive(Subcommand)]
enum ShrubCommand {
    /// Build the canonical full shrub for a k-label part over k blocks of
    /// the given size, on the smallest ground set that holds them.
    Build {
        /// Number of labels in the shrub part.
        #[arg(long)]
        k: usize,
        /// Labels per block (default: the smallest size whose middle
        /// binomial reaches k).
        #[arg(long)]
        blocksize: Option<usize>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Anything that stops a run: engine errors, bad files, bad flag values.
/// All of them exit 2; definite negative answers never come through here.
struct Failure(String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(e.to_string())
    }
}

type Run = Result<ExitCode, Failure>;

const FOUND: ExitCode = ExitCode::SUCCESS;

fn absent() -> ExitCode {
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
        if let Err(e) = pool {
            eprintln!("error: worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Run {
    match command {
        Command::Verify { coloring, pattern, color, out } => {
            cmd_verify(&coloring, &pattern, &color, out.as_deref())
        }
        Command::Shift { coloring, split, ordering, out } => {
            cmd_shift(&coloring, &split, &ordering, out.as_deref())
        }
        Command::Duality { coloring, split, out } => {
            cmd_duality(&coloring, &split, out.as_deref())
        }
        Command::Scan { coloring, n, k, out_dir } => {
            cmd_scan(&coloring, n, k, out_dir.as_deref())
        }
        Command::Shrub(ShrubCommand::Build { k, blocksize, out }) => {
            cmd_shrub_build(k, blocksize, out.as_deref())
        }
        Command::Lowerbound { n, k, blocksize, seed, budget, out } => {
            cmd_lowerbound(n, k, blocksize, seed, budget, &out)
        }
        Command::Ramsey { blue, red, nmax, witness_dir } => {
            cmd_ramsey(&blue, &red, nmax, witness_dir.as_deref())
        }
        Command::Check { certificate, coloring } => cmd_check(&certificate, &coloring),
    }
}

// ---- file plumbing ----

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_coloring(path: &Path) -> Result<Coloring, Failure> {
    Ok(Coloring::from_prc1(&read_text(path)?)?)
}

/// Certificate to `--out` when given, raw to stdout otherwise.
fn emit(cert: &Certificate, out: Option<&Path>) -> Result<(), Failure> {
    let text = cert.render();
    match out {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---- flag parsing beyond clap ----

fn parse_color(s: &str) -> Result<Color, Failure> {
    match s.to_ascii_lowercase().as_str() {
        "blue" => Ok(Color::Blue),
        "red" => Ok(Color::Red),
        other => Err(Failure(format!("color must be blue or red, got `{other}`"))),
    }
}

/// `n,k` with the low n labels as the first part and the top k as the second.
fn parse_split(s: &str, ground: GroundSet) -> Result<Partition, Failure> {
    let (n, k) = s
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
        .ok_or_else(|| Failure(format!("split must be `n,k`, got `{s}`")))?;
    if n + k != ground.size() {
        return Err(Failure(format!(
            "split {n}+{k} does not cover the {}-label ground set",
            ground.size()
        )));
    }
    let xmask: Mask = if n == 0 { 0 } else { (1 << n) - 1 };
    Ok(Partition::new(ground, xmask, ground.full_mask() & !xmask)?)
}

/// Named patterns — lambda, vee, q<n>, chain<l>, antichain<m>,
/// chains<k>x<l> — with anything unnamed read as a pattern file.
fn load_pattern(spec: &str) -> Result<FinitePoset, Failure> {
    let lower = spec.to_ascii_lowercase();
    match lower.as_str() {
        "lambda" => return Ok(FinitePoset::lambda()),
        "vee" => return Ok(FinitePoset::vee()),
        _ => {}
    }
    if let Some(n) = lower.strip_prefix('q').and_then(|t| t.parse::<usize>().ok()) {
        return Ok(FinitePoset::cube(n)?);
    }
    if let Some(rest) = lower.strip_prefix("chains") {
        if let Some((k, l)) = rest.split_once('x') {
            if let (Ok(k), Ok(l)) = (k.parse::<usize>(), l.parse::<usize>()) {
                return Ok(FinitePoset::independent_chains(k, l)?);
            }
        }
    }
    if let Some(l) = lower.strip_prefix("chain").and_then(|t| t.parse::<usize>().ok()) {
        return Ok(FinitePoset::chain(l)?);
    }
    if let Some(m) = lower.strip_prefix("antichain").and_then(|t| t.parse::<usize>().ok()) {
        return Ok(FinitePoset::antichain(m)?);
    }
    let text = fs::read_to_string(spec).map_err(|e| {
        Failure(format!("`{spec}` names no built-in pattern and is not a readable file: {e}"))
    })?;
    Ok(FinitePoset::parse_pattern(&text)?)
}

// ---- subcommands ----

fn cmd_verify(
    coloring: &Path,
    pattern_spec: &str,
    color_spec: &str,
    out: Option<&Path>,
) -> Run {
    let c = read_coloring(coloring)?;
    let pattern = load_pattern(pattern_spec)?;
    let color = parse_color(color_spec)?;
    match contains_pattern(&c, &pattern, color)? {
        Some(em) => {
            let cert = Certificate::PatternCopy(PatternCopyCert {
                ground: em.ground,
                pattern: em.pattern,
                images: em.images,
                color,
            });
            cert.check(Some(&c))?;
            emit(&cert, out)?;
            Ok(FOUND)
        }
        None => {
            println!("absent");
            Ok(absent())
        }
    }
}

fn cmd_shift(coloring: &Path, split: &str, ordering: &[u8], out: Option<&Path>) -> Run {
    let c = read_coloring(coloring)?;
    let p = parse_split(split, c.ground())?;
    let cert = match shift_search(&c, &p, ordering)? {
        ShiftOutcome::Red(cert) => Certificate::XGood(cert),
        ShiftOutcome::Chain(cert) => Certificate::BlueChain(cert),
    };
    emit(&cert, out)?;
    Ok(FOUND)
}

fn cmd_duality(coloring: &Path, split: &str, out: Option<&Path>) -> Run {
    let c = read_coloring(coloring)?;
    let p = parse_split(split, c.ground())?;
    let cert = match duality(&c, &p)? {
        DualityOutcome::RedBranch(cert) => Certificate::XGood(cert),
        DualityOutcome::BlueBranch(cert) => Certificate::Shrub(cert),
    };
    emit(&cert, out)?;
    Ok(FOUND)
}

fn cmd_scan(coloring: &Path, n: usize, k: usize, out_dir: Option<&Path>) -> Run {
    let c = read_coloring(coloring)?;
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
    }
    match full_duality_scan(&c, n, k)? {
        ScanOutcome::RedCube(em) => {
            println!("red {n}-cube");
            let cert = Certificate::PatternCopy(PatternCopyCert {
                ground: em.ground,
                pattern: em.pattern,
                images: em.images,
                color: Color::Red,
            });
            if let Some(dir) = out_dir {
                emit(&cert, Some(&dir.join("red_cube.cert")))?;
            }
            Ok(FOUND)
        }
        ScanOutcome::Shrubs(certs) => {
            println!("blue shrubs {}", certs.len());
            if let Some(dir) = out_dir {
                for (y, cert) in certs {
                    let path = dir.join(format!("shrub_Y{y:X}.cert"));
                    emit(&Certificate::Shrub(cert), Some(&path))?;
                }
            }
            Ok(FOUND)
        }
    }
}

fn cmd_shrub_build(k: usize, blocksize: Option<usize>, out: Option<&Path>) -> Run {
    if k == 0 {
        return Err(Failure("the shrub part needs at least one label".into()));
    }
    let blocksize = blocksize.unwrap_or_else(|| min_block_size(k));
    let ground = GroundSet::new(k + k * blocksize)?;
    let y: Mask = (1 << k) - 1;
    let a = ground.full_mask() & !y;
    let cert = canonical_shrub(ground, y, a)?;
    emit(&Certificate::Shrub(cert), out)?;
    Ok(FOUND)
}

fn cmd_lowerbound(
    n: usize,
    k: usize,
    blocksize: Option<usize>,
    seed: u64,
    budget: usize,
    out: &Path,
) -> Run {
    let ground = GroundSet::new(n)?;
    if k == 0 || k > n {
        return Err(Failure(format!("k = {k} out of range for N = {n}")));
    }
    let blocksize = blocksize.unwrap_or_else(|| min_block_size(k));
    let outcome = match lower_bound_coloring(ground, k, blocksize, seed, budget) {
        Ok(outcome) => outcome,
        // Exhaustion is this run's definite negative answer, not an error.
        Err(e @ Error::BudgetExhausted { .. }) => {
            println!("{e}");
            return Ok(absent());
        }
        Err(e) => return Err(e.into()),
    };
    let report = verify_lower_bound(&outcome.coloring, &outcome.shrubs, n - k, k)?;
    let prc1 = out.with_extension("prc1");
    let cert = out.with_extension("cert");
    write_text(&prc1, &outcome.coloring.to_prc1())?;
    write_text(&cert, &Certificate::Bundle(outcome.bundle).render())?;
    println!("passes used: {}", outcome.passes_used);
    println!("shrubs checked: {}", report.shrubs_checked);
    println!("independence pairs: {}", report.independence_pairs);
    println!("blue class: {:?}", report.blue_class);
    if report.red_cube_searched {
        println!("red cube search: none found");
    }
    println!("{}", report.bound_line);
    Ok(FOUND)
}

fn cmd_ramsey(blue: &str, red: &str, nmax: usize, witness_dir: Option<&Path>) -> Run {
    let blue_p = load_pattern(blue)?;
    let red_q = load_pattern(red)?;
    let result = ramsey_number(&blue_p, &red_q, nmax)?;
    match result.value {
        RamseyValue::Exact(v) => {
            println!("R = {v}");
            println!("R {blue} {red} = {v}");
        }
        RamseyValue::LowerBoundOnly(b) => {
            println!("R >= {b}");
            println!("R {blue} {red} >= {b}");
        }
    }
    if let Some(dir) = witness_dir {
        fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
        for (n, c) in &result.witnesses {
            write_text(&dir.join(format!("witness_n{n}.prc1")), &c.to_prc1())?;
        }
    }
    Ok(FOUND)
}

fn cmd_check(certificate: &Path, coloring: &Path) -> Run {
    let cert = Certificate::parse(&read_text(certificate)?)?;
    let c = read_coloring(coloring)?;
    match verify_certificate(&cert, &c) {
        Verdict::Pass => {
            println!("pass");
            Ok(FOUND)
        }
        Verdict::Fail(reason) => {
            println!("fail {reason}");
            Ok(absent())
        }
    }
}
