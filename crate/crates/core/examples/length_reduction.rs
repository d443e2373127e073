//! Send a pad shorter than the message and complete it on both ends.
//!
//! ```bash
//! cargo run -p otp-lab --example length_reduction
//! ```

use otp_lab::reduction::{
    self, decrypt_reduced, effective_pad, encrypt_reduced, expected_reduction, max_k,
    reserved_patterns, GeneratedPad,
};
use otp_lab::{BitString, Error, RandomSource, ReductionParams};

fn main() -> Result<(), Error> {
    // Single-bit case: a 9-bit pad for a 10-bit message. 9 is odd, so the
    // completion appends a 1.
    let params = ReductionParams::new(10, 1)?;
    let short = GeneratedPad::from_transmitted("101100100".parse()?, &params)?;
    let message: BitString = "0010110101".parse()?;
    let c = encrypt_reduced(&message, &short, &params)?;
    println!(
        "n=10 k=1: transmitted {} -> effective {}",
        short.bits(),
        effective_pad(&short, &params)?.bits()
    );
    println!(
        "  ciphertext {c}, decrypts to {}",
        decrypt_reduced(&c, &short, &params)?
    );

    println!();
    for n in [10, 12, 64] {
        println!("max_k({n}) = {}", max_k(n));
    }

    let params = ReductionParams::new(10, 2)?;
    println!("\nn=10 k=2");
    for (len, p) in params.length_distribution() {
        println!("  transmit {len} bits with probability {p}");
    }
    for pat in reserved_patterns(&params) {
        println!("  P_{} = {}", pat.index, pat.bits);
    }
    println!("  expected saving {} bits", expected_reduction(params.k())?);

    let mut src = RandomSource::new(7);
    for _ in 0..5 {
        let pad = reduction::generate_reduced_pad(&params, &mut src);
        let eff = effective_pad(&pad, &params)?;
        let c = encrypt_reduced(&message, &pad, &params)?;
        println!(
            "  sent {:<10} ({} bits) effective {} ciphertext {}",
            pad.bits().to_string(),
            pad.original_length(),
            eff.bits(),
            c
        );
    }
    Ok(())
}
