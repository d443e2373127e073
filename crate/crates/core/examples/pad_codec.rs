//! Compress pads using the publicly known message length.
//!
//! ```bash
//! cargo run -p otp-lab --example pad_codec
//! ```

use otp_lab::codec::{codec_census, compress_pad, decompress_pad};
use otp_lab::{BitString, Error};

fn main() -> Result<(), Error> {
    for s in ["1011001001", "1011001000", "1000000000", "0000000000"] {
        let pad: BitString = s.parse()?;
        let small = compress_pad(&pad)?;
        let back = decompress_pad(&small, pad.len())?;
        println!(
            "{pad} -> {:<10} ({} bits) -> {back}",
            small.to_string(),
            small.len()
        );
    }

    let n = 10;
    println!("\ncensus of all {} pads of {n} bits", 1 << n);
    for (saved, count) in codec_census(n)? {
        println!("  save {saved:>2} bits: {count:>4} pads");
    }
    Ok(())
}
