//! `bernlab`: command-line access to finite orbits, address curves, algebraic parameters and densities.

mod commands;
mod params;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bernlab", version, about = "Bernoulli convolutions: orbits, address curves, densities")]
pub struct Cli {
    /// Output format; `text` is for reading, the others for machines.
    #[arg(long, short, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Vertex cap for orbit exploration.
    #[arg(long, global = true, default_value_t = bernlab::orbits::graph::DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
    Pgm,
    Pgm16,
    Ppm,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the largest real root of a polynomial (or a named parameter such as tau3, phi2).
    Classify { poly: String },
    /// Finite orbit of a point in Q(β), e.g. `orbit tau2 "(18-3*b)/29"`.
    Orbit { beta: String, point: String },
    /// The k-th Fibonacci cycle mixture at the golden mean.
    Mixture { k: usize },
    /// Markov partition cut at a finite orbit, with its stationary vector.
    Markov { beta: String, point: String },
    /// Rational form of an address curve.
    Curve {
        bitseq: String,
        /// Also evaluate at this parameter.
        #[arg(long)]
        t: Option<String>,
    },
    /// Entry parameter t*; `kl` gives the Komornik-Loreti enclosure.
    Tstar {
        bitseq: String,
        #[arg(long, default_value_t = 64)]
        bits: u32,
    },
    /// Intersections of two address curves.
    Intersect {
        b: String,
        c: String,
        /// Parameter range `lo,hi` (default `1/2,t2`).
        #[arg(long)]
        range: Option<String>,
    },
    /// Parameter from orbit constraints `path,cycle,self|reflection` (path `e` for empty).
    Network {
        #[arg(required = true)]
        constraints: Vec<String>,
    },
    /// Histogram of the Bernoulli convolution at parameter t.
    Density {
        t: String,
        #[arg(long, default_value_t = 4000)]
        bins: usize,
        #[arg(long)]
        iters: Option<usize>,
    },
    /// Standardized densities for nt parameters in [tmin, tmax].
    Grid {
        tmin: String,
        tmax: String,
        #[arg(long, default_value_t = 200)]
        nt: usize,
        #[arg(long, default_value_t = 4000)]
        bins: usize,
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        xmin: f64,
        #[arg(long, default_value_t = 1.0)]
        xmax: f64,
        /// Density mapped to full white.
        #[arg(long, default_value_t = 4.0)]
        vmax: f64,
    },
    /// Hole words of S_b and their counts per length.
    Holes {
        b: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// Parameters with two-address (and countable-address) points from a catalog of curves.
    ScanTwoAddress {
        /// `lo,hi`, e.g. `s2,t2`.
        range: String,
        /// Catalog `2^-k/3, 1-2^-k/3` for k up to this value.
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        /// Explicit catalog, comma separated (overrides --k-max).
        #[arg(long, value_delimiter = ',')]
        catalog: Vec<String>,
    },
    /// Parameters where ½ has exactly two addresses.
    Central {
        range: String,
        /// Catalog `.00overline{01}`, `.00(01)^n overline{0110}` for n up to this value.
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(bytes) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &bytes),
                None => std::io::stdout().lock().write_all(&bytes),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 2 } else { 1 })
        }
    }
}
