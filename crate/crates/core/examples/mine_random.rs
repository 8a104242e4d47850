//! Seeded random posets compared across both homology theories.

use posettop::cli::{cmd_mine, MineArgs, Report, RunConfig};

fn main() -> posettop::Result<()> {
    let config = RunConfig { seed: 2024, max_dim: 2, ..RunConfig::default() };
    let args = MineArgs { trials: 40, size: 7, density: 0.35, plant: vec!["sphere6".into()], ..MineArgs::default() };
    print!("{}", cmd_mine(&config, &args)?.to_text());
    Ok(())
}
