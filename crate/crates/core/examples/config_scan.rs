//! Running a scan from a configuration: defaults, then a file, then
//! `PHASEREFLECT_*` variables, then explicit overrides.

use phasereflect::cli::{cmd_transition, RunConfig};

fn main() -> phasereflect::Result<()> {
    let file = std::env::temp_dir().join("phasereflect-example.cfg");
    std::fs::write(&file, "n = 3\nq_tilde = 0.2:1.9:6\nsamples = 4000\n")?;
    let cfg = RunConfig::assemble(Some(&file), std::env::vars(), &["seed=3"])?;
    for key in cfg.keys() {
        println!("{key} = {}", cfg.get(key).unwrap_or_default());
    }
    print!("{}", cmd_transition(&cfg)?.to_csv());
    Ok(())
}
