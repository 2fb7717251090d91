//! Loads a bundled workbench file, runs its tasks and prints the JSON
//! report, as `catcoh run` does.

use std::path::PathBuf;

use catcoh::workbench::{run_file, TaskParams};

fn main() -> catcoh::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "example_c.json".into());
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    let report = run_file(&path, &TaskParams::default())?;
    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    Ok(())
}
