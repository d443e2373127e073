//! Write and read pads in the `OTPD` container.
//!
//! ```bash
//! cargo run -p otp-lab --example pad_files
//! ```

use otp_lab::bitcore::{deserialize_pad, serialize_pad};
use otp_lab::{BitString, Error, RandomSource};

fn hex(bytes: &[u8]) -> String {
    bytes
        .iter()
        .map(|b| format!("{b:02X}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> Result<(), Error> {
    let pad: BitString = "1011001001".parse()?;
    let bytes = serialize_pad(&pad);
    println!("{pad} -> {}", hex(&bytes));
    assert_eq!(deserialize_pad(&bytes)?, pad);

    let path = std::env::temp_dir().join("otp-lab-example.otpd");
    let fresh = RandomSource::new(42).random_bits(16);
    std::fs::write(&path, serialize_pad(&fresh)).expect("write pad");
    let read = deserialize_pad(&std::fs::read(&path).expect("read pad"))?;
    println!("seed 42, 16 bits: {read} ({})", path.display());

    let mut corrupt = bytes.clone();
    *corrupt.last_mut().unwrap() |= 1;
    println!(
        "flipping a padding bit: {}",
        deserialize_pad(&corrupt).unwrap_err()
    );
    println!(
        "cutting a byte: {}",
        deserialize_pad(&bytes[..bytes.len() - 1]).unwrap_err()
    );
    Ok(())
}
