//! Carry bits as theorems and non-theorems of the pq-system.
//!
//! ```bash
//! cargo run -p otp-lab --example facts_channel
//! ```

use otp_lab::facts::{self, derive_oracle, is_theorem, parse_pq};
use otp_lab::{BitString, Error, RandomSource};

fn main() -> Result<(), Error> {
    for s in ["--p---q-----", "-p-q--", "-p-q---", "--p--q-----"] {
        let ps = parse_pq(s)?;
        println!(
            "{s:<14} {:?}: theorem={} derivable={}",
            ps.counts(),
            is_theorem(&ps),
            derive_oracle(&ps, ps.y())
        );
    }
    println!("{:?}", parse_pq("pq--").unwrap_err().to_string());

    let message: BitString = "0110".parse()?;
    let mut src = RandomSource::new(11);
    let strings: Vec<String> = message
        .iter()
        .map(|bit| facts::encode_bit(bit, &mut src, 16))
        .collect::<Result<_, _>>()?;
    println!("\n{message} sent as:");
    for s in &strings {
        println!("  {s}");
    }
    let decoded: BitString = strings
        .iter()
        .map(|s| facts::decode_string(s))
        .collect::<Result<_, _>>()?;
    println!("decoded {decoded}");
    Ok(())
}
