//! Every computation can be packaged as a JSON report whose certificate
//! re-verifies from the serialized form alone — load it later, rebuild
//! the ring from the input echo, and re-establish the claim.
//!
//! Run with: `cargo run --example reports`

use tafkit::commands::{cmd_check_taf, cmd_quad_factor, DEFAULT_GUARD};
use tafkit::report::{render_text, reverify};

fn main() -> Result<(), tafkit::Error> {
    // A negative audit: the certificate names the incomparable pair.
    let report = cmd_check_taf("Z/8[x]/(x^2,2x)", DEFAULT_GUARD)?;
    println!("{}", render_text(&report));

    // The same report as JSON, round-tripped and re-verified.
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    let reloaded: tafkit::report::Report = serde_json::from_str(&json).expect("reports reload");
    println!("reloaded report re-verifies: {}", reverify(&reloaded)?);

    // A quadratic factorization likewise ships its own proof.
    let report = cmd_quad_factor(-11, false, "3+w", false, DEFAULT_GUARD)?;
    println!();
    println!("{}", render_text(&report));
    println!("re-verifies: {}", reverify(&report)?);

    // Tampering is caught: drop a factor and the certificate dies.
    let mut clone = report.clone();
    if let Some(tafkit::report::Certificate::QuadFactorization { factors }) =
        clone.certificate.as_mut()
    {
        factors.pop();
    }
    println!("after dropping a factor, re-verifies: {}", reverify(&clone)?);
    Ok(())
}
