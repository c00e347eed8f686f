//! Subcommand implementations.

mod info;
mod oracle;
mod selftest;

use cellmap_core::exceptional::Tables;
use cellmap_core::puiseux::SamplingOptions;
use cellmap_core::rootdata::CartanType;

use crate::render::Report;
use crate::tables::Registry;
use crate::{Cli, Command, Failure, Global, EXIT_USAGE, TABLE_DIR_VAR};

/// Registered tables and sampling options for one invocation.
pub struct Env {
    pub registry: Registry,
    pub tables: Tables,
    pub opts: SamplingOptions,
}

impl Env {
    pub fn load(g: &Global) -> Result<Env, Failure> {
        let mut registry = Registry::builtin();
        let dir = g.tables.clone().or_else(|| std::env::var_os(TABLE_DIR_VAR).map(Into::into));
        if let Some(d) = dir {
            registry.load_dir(&d, g.force)?;
        }
        let tables = registry.tables()?;
        let opts = SamplingOptions { seed: g.seed, trunc: g.trunc, ..SamplingOptions::default() };
        Ok(Env { registry, tables, opts })
    }
}

pub fn parse_type(s: &str) -> Result<CartanType, Failure> {
    CartanType::parse(s).map_err(|_| {
        Failure::new(
            EXIT_USAGE,
            format!("unknown type '{s}'; supported: A1-A6, B2-B4, C2-C4, D4-D5, G2, F4"),
        )
    })
}

pub fn execute(cli: &Cli) -> Result<Report, Failure> {
    let env = Env::load(&cli.global)?;
    match &cli.command {
        Command::Roots { ty } => info::roots(parse_type(ty)?),
        Command::Classes { ty } => info::classes(&env, parse_type(ty)?),
        Command::Chars { ty } => info::chars(&env, parse_type(ty)?),
        Command::Fakedeg { ty } => info::fakedeg(&env, parse_type(ty)?),
        Command::Orbits { ty } => info::orbits(&env, parse_type(ty)?),
        Command::Springer { ty } => info::springer(&env, parse_type(ty)?),
        Command::Jinduce { ty, levi, rep } => info::jinduce(&env, parse_type(ty)?, levi, rep),
        Command::Kl { ty, orbit, parahoric } => oracle::kl(&env, parse_type(ty)?, orbit, parahoric.as_deref()),
        Command::Verify { ty } => oracle::verify(&env, parse_type(ty)?),
        Command::Av { ty } => oracle::av(&env, parse_type(ty)?),
        Command::Strata { ty } => oracle::strata(&env, parse_type(ty)?),
        Command::Predict { ty } => oracle::predict(&env, parse_type(ty)?),
        Command::Selftest => selftest::selftest(&env),
    }
}
