//! Write the 16-emitter reference suite to a directory, ready for
//! `qemitter report`.
//!
//! Usage: cargo run -p qemitter-core --example generate_suite -- <dir>

fn main() {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "reference-suite".to_string());
    let manifest = qemitter_core::fixtures::write_reference_suite(std::path::Path::new(&dir))
        .expect("suite generation failed");
    println!("{}", manifest.display());
}
