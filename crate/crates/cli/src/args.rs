use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ogc", version, about = "Mod 2 cohomology data of oriented Grassmannians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for independent (k, n) jobs.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print q, Q, p, P or r polynomials.
    Classes {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        class: ClassKind,
        /// Index or inclusive range such as `10-20`.
        #[arg(long)]
        j: Span,
    },
    /// Degreewise dimensions of Koszul homology.
    Koszul {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Highest homological index to report (default 1).
        #[arg(long, default_value_t = 1)]
        max_index: usize,
    },
    /// Minimal presentations of C, K or ker(d_1).
    Present {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModuleKind::K)]
        module: ModuleKind,
        #[arg(long, value_enum, default_value_t = Grading::Koszul)]
        grading: Grading,
        /// Degree cap for ker(d_1) generators.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Characteristic rank over ranges of k and n.
    Charrank {
        #[arg(long)]
        k: Span,
        #[arg(long)]
        n: Span,
    },
    /// Ext^1_C(K, C) in degree 0.
    Ext {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Run an identity battery.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest t for the power-of-two families.
        #[arg(long, default_value_t = 5)]
        t_max: u32,
    },
    /// Recompute the reference tables and compare with the golden files.
    Tables {
        /// A single table id, or all of them.
        #[arg(long, default_value = "all")]
        table: String,
        /// Print the recomputed tables instead of comparing.
        #[arg(long)]
        emit: bool,
        /// Read golden files from this directory instead of the built-in copies.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Compare charrank with the conjectured formula.
    Scan {
        #[arg(long)]
        k: Span,
        #[arg(long)]
        n: Span,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassKind {
    #[value(name = "q")]
    LowerQ,
    #[value(name = "Q")]
    UpperQ,
    #[value(name = "p")]
    LowerP,
    #[value(name = "P")]
    UpperP,
    #[value(name = "r")]
    R,
}

impl ClassKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ClassKind::LowerQ => "q",
            ClassKind::UpperQ => "Q",
            ClassKind::LowerP => "p",
            ClassKind::UpperP => "P",
            ClassKind::R => "r",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "ker_d1")]
    KerD1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grading {
    Koszul,
    Cohomological,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    K3,
    Identities,
    Structural,
}

/// An inclusive range of integers, written `a` or `a-b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a number: {t:?}"));
        let (lo, hi) = match s.split_once('-') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}
