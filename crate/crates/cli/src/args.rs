use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grushin_core::mcp::BranchTag;
use grushin_core::SpaceKind;

#[derive(Parser, Debug)]
#[command(
    name = "grushin-lab",
    version,
    about = "Numerical experiments on the Grushin plane, its half-planes and their double"
)]
pub struct Cli {
    /// PRNG seed for Monte Carlo and random-pair commands
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (falls back to GRUSHIN_LAB_JOBS)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// JSON file with option defaults; keys are flag names with underscores
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Endpoint of the geodesic exp_q(t·lam)
    Exp(ExpArgs),
    /// Sampled geodesic with its costate
    Geodesic(GeodesicArgs),
    /// Sub-Riemannian distance between two points
    Distance(DistanceArgs),
    /// Estimate the least N with MCP(0, N)
    McpScan(ScanArgs),
    /// Check MCP(0, N) for a given N
    McpVerify(VerifyArgs),
    /// Monte Carlo check of m(φ_t(A)) ≥ t^N m(A)
    Contract(ContractArgs),
    /// Compare the double of the half-plane with the plane
    DoubleCheck(DoubleArgs),
    /// Weighted curvature tensors at a point
    Curvature(CurvatureArgs),
    /// Cut locus, minimality horizon and meeting points
    Cutlocus(CutArgs),
    /// CSV data for ray fans and cut loci from (0,0) and (1,0)
    Figure(FigureArgs),
}

#[derive(Args, Debug)]
pub struct ExpArgs {
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub q: Option<[f64; 2]>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub lam: Option<[f64; 2]>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub space: Option<SpaceArg>,
}

#[derive(Args, Debug)]
pub struct GeodesicArgs {
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub q: Option<[f64; 2]>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub lam: Option<[f64; 2]>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub q: Option<[f64; 2]>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub p: Option<[f64; 2]>,
    #[arg(long)]
    pub space: Option<SpaceArg>,
    /// Sheet of q when the space is the double
    #[arg(long, value_enum)]
    pub q_copy: Option<CopyArg>,
    /// Sheet of p when the space is the double
    #[arg(long, value_enum)]
    pub p_copy: Option<CopyArg>,
    /// Also run the lattice oracle at this spacing
    #[arg(long)]
    pub oracle_h: Option<f64>,
}

#[derive(Args, Debug, Default)]
pub struct ScanFlags {
    #[arg(long)]
    pub u_min: Option<f64>,
    #[arg(long)]
    pub u_max: Option<f64>,
    #[arg(long)]
    pub n_u: Option<usize>,
    #[arg(long)]
    pub v_min: Option<f64>,
    #[arg(long)]
    pub v_margin: Option<f64>,
    #[arg(long)]
    pub n_v: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub t_grid: Option<Vec<f64>>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub branches: Option<Vec<BranchArg>>,
    /// Skip golden-section refinement of interior maxima
    #[arg(long)]
    pub no_refine: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub space: Option<SpaceArg>,
    #[command(flatten)]
    pub scan: ScanFlags,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub space: Option<SpaceArg>,
    #[arg(long = "N")]
    pub n: Option<f64>,
    #[command(flatten)]
    pub scan: ScanFlags,
}

#[derive(Args, Debug)]
pub struct ContractArgs {
    #[arg(long)]
    pub space: Option<SpaceArg>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub q: Option<[f64; 2]>,
    /// Disk `cx,cy,r`
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "rect"
    )]
    pub disk: Option<Vec<f64>>,
    /// Rectangle `x_min,x_max,y_min,y_max`
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub rect: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Option<Vec<f64>>,
    #[arg(long = "N")]
    pub n: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Statistical slack in standard errors
    #[arg(long)]
    pub sigmas: Option<f64>,
}

#[derive(Args, Debug)]
pub struct DoubleArgs {
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub p: Option<[f64; 2]>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub q: Option<[f64; 2]>,
    /// Check this many random pairs instead of a single one
    #[arg(long)]
    pub pairs: Option<usize>,
    /// Also compare with the lattice oracle on the plane at this spacing
    #[arg(long)]
    pub oracle_h: Option<f64>,
}

#[derive(Args, Debug)]
pub struct CurvatureArgs {
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub p: Option<[f64; 2]>,
    #[arg(long = "N")]
    pub n: Option<f64>,
    /// Finite-difference step for the Gauss curvature oracle
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long)]
    pub space: Option<SpaceArg>,
}

#[derive(Args, Debug)]
pub struct CutArgs {
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub q: Option<[f64; 2]>,
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v: Option<f64>,
    /// Test minimality of the (u, v) ray on [0, t]
    #[arg(long)]
    pub t: Option<f64>,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Number of initial u values per sign of v
    #[arg(long)]
    pub rays: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Rays are followed up to horizon·π
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Half-height of the drawn cut loci
    #[arg(long)]
    pub extent: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopyArg {
    A,
    B,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchArg {
    Vzero,
    Uzero,
    General,
}

impl From<BranchArg> for BranchTag {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Vzero => BranchTag::VZero,
            BranchArg::Uzero => BranchTag::UZero,
            BranchArg::General => BranchTag::General,
        }
    }
}

/// A space as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceArg {
    Single(SpaceKind),
    /// Two right half-planes glued along the axis.
    Double,
    /// `base × ℝᵏ`.
    Product {
        k: u32,
        base: SpaceKind,
    },
}

impl FromStr for SpaceArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("double") {
            return Ok(SpaceArg::Double);
        }
        if let Some(rest) = s.strip_prefix("product:") {
            let (k, base) = match rest.split_once(':') {
                Some((k, b)) => (k, b.parse::<SpaceKind>().map_err(|e| e.to_string())?),
                None => (rest, SpaceKind::HalfPlanePlus),
            };
            let k = k
                .parse::<u32>()
                .map_err(|_| format!("bad product dimension {k:?}"))?;
            return Ok(SpaceArg::Product { k, base });
        }
        s.parse::<SpaceKind>()
            .map(SpaceArg::Single)
            .map_err(|e| e.to_string())
    }
}

impl fmt::Display for SpaceArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceArg::Single(s) => write!(f, "{s}"),
            SpaceArg::Double => f.write_str("double"),
            SpaceArg::Product { k, base } => write!(f, "product:{k}:{base}"),
        }
    }
}

pub fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("expected two comma-separated numbers, got {s:?}"));
    }
    let a = parts[0]
        .parse::<f64>()
        .map_err(|e| format!("{:?}: {e}", parts[0]))?;
    let b = parts[1]
        .parse::<f64>()
        .map_err(|e| format!("{:?}: {e}", parts[1]))?;
    Ok([a, b])
}
