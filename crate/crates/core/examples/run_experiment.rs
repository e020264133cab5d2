//! Drives a shipped experiment from code and writes its CSV and SVG.
//!
//! ```bash
//! cargo run --release --example run_experiment -- capacity-bound /tmp/emit-holo
//! ```

use std::path::PathBuf;

use emit_holo::experiments::{registry, run_named, write_outputs};

fn main() -> emit_holo::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "limits".into());
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("emit-holo"));

    if registry().iter().all(|e| e.name != name) {
        eprintln!("available experiments:");
        for e in registry() {
            eprintln!("  {:<18} {}", e.name, e.description);
        }
        std::process::exit(2);
    }
    let result = run_named(&name, None, Some(42))?;
    println!("{} rows × {} columns", result.table.rows.len(), result.table.headers.len());
    print!("{}", result.summary_text());
    for f in write_outputs(&name, &result, &out)? {
        println!("wrote {}", f.display());
    }
    Ok(())
}
