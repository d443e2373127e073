//! Encrypt and decrypt with a classical one-time pad.
//!
//! ```bash
//! cargo run -p otp-lab --example classic_otp
//! ```

use otp_lab::otp::{self, Pad};
use otp_lab::{BitString, Error, RandomSource};

fn main() -> Result<(), Error> {
    let message: BitString = "0010110101".parse()?;
    let key: BitString = "1011001001".parse()?;

    let ciphertext = otp::encrypt(&message, &key)?;
    println!("M = {message}");
    println!("K = {key}");
    println!("C = M xor K = {ciphertext}");
    println!("C xor K     = {}", otp::decrypt(&ciphertext, &key)?);

    // A Pad enforces single use; the receiver holds its own copy.
    let mut src = RandomSource::new(2024);
    let mut alice = otp::keygen(&mut src, 16)?;
    let mut bob: Pad = alice.bits().clone().into();
    let text = BitString::from_bytes(b"ok");
    let c = alice.encrypt(&text)?;
    println!("\nfresh pad {} encrypts \"ok\" to {c}", bob.bits());
    println!(
        "bob recovers {:?}",
        String::from_utf8(bob.decrypt(&c)?.to_bytes().unwrap()).unwrap()
    );
    match alice.encrypt(&text) {
        Err(Error::PadConsumed) => println!("second use of the same pad is refused"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
