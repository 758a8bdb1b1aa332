use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "cfinv",
    version,
    about = "Exact checks of the determinantal and Pfaffian invariant theorems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "THREADS")]
    pub threads: Option<usize>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pfaffian of an alternating matrix file.
    Pfaffian {
        #[arg(long)]
        input: PathBuf,
        /// Also evaluate by first-row expansion and require agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Invertible X with X^T A X = diag(J~_r, 0).
    NormalForm {
        #[arg(long)]
        input: PathBuf,
    },
    /// T with T^T J~ T = A, for A of skew rank at most 2t - 2.
    Factor {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Generators of the determinantal or Pfaffian ideal.
    IdealGens(CaseArgs),
    /// Hilbert function of the quotient up to --dmax.
    Hilbert(CaseArgs),
    /// Dimensions of the invariants of the parameter ring in degrees 0..=2*dmax.
    InvariantsDim(CaseArgs),
    /// Jacobian dimension, dimension formula and codimension of the boundary.
    Dims(CaseArgs),
    /// Exhaustive point count of the bundle over F_q.
    Points(PointsArgs),
    /// Full degree-by-degree verification.
    Verify(CaseArgs),
    /// Group element relating two points of one fiber.
    RecoverG {
        /// JSON with "phi", "psi", "phi2", "psi2" (GL) or "phi", "phi2" (Sp).
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    /// GL case m,n,t (repeatable).
    #[arg(long = "gl", value_parser = parse_triple)]
    pub gl: Vec<(usize, usize, usize)>,
    /// Sp case n,t (repeatable).
    #[arg(long = "sp", value_parser = parse_pair)]
    pub sp: Vec<(usize, usize)>,
    #[arg(long)]
    pub dmax: Option<u32>,
    /// Comma-separated fields: q for the rationals, or primes.
    #[arg(long, value_delimiter = ',')]
    pub fields: Option<Vec<String>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    /// Largest graded component allowed, in monomials.
    #[arg(long, default_value_t = 200_000)]
    pub cap: u128,
}

#[derive(Args, Debug, Clone)]
pub struct PointsArgs {
    /// GL case r,m,n: maps k^n -> k^r -> k^m.
    #[arg(long = "gl", value_parser = parse_triple)]
    pub gl: Option<(usize, usize, usize)>,
    /// Sp case n,t.
    #[arg(long = "sp", value_parser = parse_pair)]
    pub sp: Option<(usize, usize)>,
    #[arg(long)]
    pub q: u64,
}

fn parse_list(s: &str, len: usize) -> Result<Vec<usize>, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if parts.len() != len {
        return Err(format!("expected {len} comma-separated integers, got {s:?}"));
    }
    Ok(parts)
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let p = parse_list(s, 3)?;
    Ok((p[0], p[1], p[2]))
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let p = parse_list(s, 2)?;
    Ok((p[0], p[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cases() {
        assert_eq!(parse_triple("2,3, 4"), Ok((2, 3, 4)));
        assert!(parse_triple("2,3").is_err());
        assert!(parse_pair("a,2").is_err());
        let cli =
            Cli::try_parse_from(["cfinv", "verify", "--gl", "2,2,2", "--gl", "3,3,2", "--fields", "q,3"]).unwrap();
        let Command::Verify(a) = cli.command else { panic!() };
        assert_eq!(a.gl, vec![(2, 2, 2), (3, 3, 2)]);
        assert_eq!(a.fields, Some(vec!["q".to_string(), "3".to_string()]));
    }
}
