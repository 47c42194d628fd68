use clap::{Parser, Subcommand};
use quadrot::doc::{parse_polygon, PolygonKind};
use quadrot::error::Error;
use quadrot::quad::{offset_class_histogram, offset_variants, Perm};
use quadrot::svg::{render_figure, FigureKind, FigureSpec};
use quadrot::sweep::{run_sweep, SweepOptions};
use quadrot::verify::{verify_document, VerifyOptions};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Vertex-rotation constructions on polygons: verify the identities, draw
/// the figures, sweep seeded random inputs.
#[derive(Parser)]
#[command(name = "quadrot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable identity check on a polygon document
    Verify {
        /// Path to a polygon JSON document
        #[arg(long)]
        input: PathBuf,
        /// Family indices: a single integer or a range like -3..3
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        /// Restrict permutation-indexed checks to one permutation, e.g. 1234
        #[arg(long)]
        perm: Option<String>,
        /// Seed recorded in the report header
        #[arg(long)]
        seed: Option<u64>,
        /// Scale-relative acceptance tolerance for parallelogram documents
        #[arg(long)]
        tol: Option<f64>,
        /// Print residuals at full precision
        #[arg(long)]
        verbose: bool,
    },
    /// Draw a construction figure as SVG
    Svg {
        /// Path to a polygon JSON document (quad or parallelogram)
        #[arg(long)]
        input: PathBuf,
        /// Output SVG path
        #[arg(long)]
        out: PathBuf,
        /// families (distinct families at one n, with pivots) or progression
        /// (one permutation over an n range)
        #[arg(long, default_value = "families")]
        figure: String,
        /// Family indices: single integer or range; defaults to 0 for
        /// families and 0..5 for progression
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        /// Permutation for progression figures, e.g. 1234
        #[arg(long)]
        perm: Option<String>,
        /// Scale-relative acceptance tolerance for parallelogram documents
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the identity checks over seeded random polygons
    Sweep {
        /// quad, parallelogram, triangle or hexagon
        #[arg(long)]
        kind: String,
        /// Number of random instances
        #[arg(long, default_value_t = 100)]
        count: u32,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Family indices: single integer or range
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        /// Print residuals at full precision
        #[arg(long)]
        verbose: bool,
    },
    /// Enumerate the valid angle-offset tuples for a modulus
    Variants {
        /// Offset modulus M; shifts are multiples of pi/M
        #[arg(long, default_value_t = 2)]
        modulus: u32,
    },
}

fn parse_ns(text: &str) -> Result<Vec<i32>, Error> {
    let bad = |t: &str| Error::ValidationError(format!("cannot parse family index '{t}'"));
    if let Some((a, b)) = text.split_once("..") {
        let lo: i32 = a.trim().parse().map_err(|_| bad(a))?;
        let hi: i32 = b.trim().parse().map_err(|_| bad(b))?;
        if lo > hi {
            return Err(Error::ValidationError(format!("empty range '{text}'")));
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![text.trim().parse().map_err(|_| bad(text))?])
    }
}

fn read_document(path: &Path) -> Result<quadrot::doc::PolygonDocument, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_polygon(&text)
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            input,
            n,
            perm,
            seed,
            tol,
            verbose,
        } => {
            let doc = read_document(&input)?;
            let mut opts = VerifyOptions::default();
            if doc.kind == PolygonKind::Hexagon {
                opts.ns = SweepOptions::default_ns(doc.kind);
            }
            if let Some(text) = n {
                opts.ns = parse_ns(&text)?;
            }
            if let Some(text) = perm {
                opts.perms = Some(vec![text.parse::<Perm>()?]);
            }
            if let Some(t) = tol {
                opts.parallelogram_tol = t;
            }
            opts.seed = seed;
            let report = verify_document(&doc, &opts)?;
            print!("{}", report.render(verbose));
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Svg {
            input,
            out,
            figure,
            n,
            perm,
            tol,
        } => {
            let doc = read_document(&input)?;
            let kind: FigureKind = figure.parse()?;
            let ns = match (&n, kind) {
                (Some(text), _) => parse_ns(text)?,
                (None, FigureKind::Families) => vec![0],
                (None, FigureKind::Progression) => (0..=5).collect(),
            };
            let perm = match perm {
                Some(text) => text.parse::<Perm>()?,
                None => Perm::identity(),
            };
            let spec = FigureSpec {
                kind,
                ns,
                perm,
                show_pivots: kind == FigureKind::Families,
            };
            let svg = render_figure(&doc, &spec, tol.unwrap_or(1e-9))?;
            std::fs::write(&out, svg)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            kind,
            count,
            seed,
            n,
            verbose,
        } => {
            if count < 1 {
                return Err(Error::ValidationError("count must be at least 1".into()));
            }
            let kind: PolygonKind = kind.parse()?;
            let ns = match n {
                Some(text) => parse_ns(&text)?,
                None => SweepOptions::default_ns(kind),
            };
            let report = run_sweep(&SweepOptions {
                kind,
                count,
                seed,
                ns,
            })?;
            print!("{}", report.render(verbose));
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Variants { modulus } => {
            if modulus < 1 {
                return Err(Error::ValidationError("modulus must be at least 1".into()));
            }
            let variants = offset_variants(modulus);
            println!("offset variants for modulus M={modulus} (shift step pi/{modulus})");
            for v in &variants {
                let m = v.m();
                println!("({},{},{},{})", m[0], m[1], m[2], m[3]);
            }
            println!("total: {}", variants.len());
            println!("classes:");
            for (key, count) in offset_class_histogram(&variants) {
                println!(
                    "  {{{},{},{},{}}} x{}",
                    key[0], key[1], key[2], key[3], count
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
