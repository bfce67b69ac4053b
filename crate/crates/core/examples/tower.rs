//! Full tower report for a group file, optionally with a config file.
//!
//! cargo run --release --example tower -- examples/groups/sanov.json examples/groups/tower_config.json

use freerank::group::load_group_file;
use freerank::report::{render_text, run_tower, Config};
use serde_json::{Map, Value};

fn main() -> freerank::Result<()> {
    let mut args = std::env::args().skip(1);
    let g = match args.next() {
        Some(path) => load_group_file(path)?,
        None => freerank::catalog::figure_eight(),
    };
    let over: Map<String, Value> = match args.next() {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => Map::new(),
    };
    let cfg = Config::resolve(&g, &over)?;
    let report = run_tower(&g, &cfg)?;
    print!("{}", render_text(&report));
    Ok(())
}
