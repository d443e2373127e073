//! Encrypt by making true and false statements about a shared object.
//!
//! ```bash
//! cargo run -p otp-lab --example private_object
//! ```

use otp_lab::private_object::{
    encode_statements, format_statements, otp_object, parse_statements, verify_statements,
    FeatureTable,
};
use otp_lab::{otp, BitString, Error};

fn main() -> Result<(), Error> {
    let pad: BitString = "1011001001".parse()?;
    let message: BitString = "0010110101".parse()?;
    let obj = otp_object(pad.clone())?;

    let stmts = encode_statements(&message, &obj)?;
    let wire = format_statements(&stmts);
    print!("{wire}");
    let claimed: BitString = stmts.iter().map(|s| s.claimed_value).collect();
    println!(
        "claimed values {claimed} == xor ciphertext {}",
        otp::encrypt(&message, &pad)?
    );
    println!(
        "receiver reads {}",
        verify_statements(&parse_statements(&wire)?, &obj)?
    );

    let creature = FeatureTable::creature();
    let secret = BitString::from_bools(vec![true, false, false, true, true, false]);
    println!("\nstatements about a shared creature for {secret}:");
    for s in encode_statements(&secret, &creature)? {
        println!("  {}", s.rendering);
    }
    Ok(())
}
