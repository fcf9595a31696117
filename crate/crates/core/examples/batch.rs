//! Drive the command line front end from a batch file.
//!
//!     cargo run --release --example batch

use std::io::Write;

fn main() -> std::io::Result<()> {
    let path = std::env::temp_dir().join("radicals-example-batch.txt");
    let mut f = std::fs::File::create(&path)?;
    writeln!(f, "# identities with entanglement")?;
    writeln!(f, "verify \"rt(-4,4)\"")?;
    writeln!(f, "verify \"rt(5,2), zeta(5)\"")?;
    writeln!(f, "verify \"zeta(8)\"")?;
    writeln!(f, "gauss 5")?;
    writeln!(f, "--base fp:7 degree \"zeta(5)\"")?;
    drop(f);
    let code = radicals::cli::run(["radicals", "--jobs", "2", "batch", path.to_str().expect("utf-8 path")]);
    std::fs::remove_file(&path)?;
    std::process::exit(code);
}
