//! Verify secrecy exactly at small sizes and statistically at scale.
//!
//! ```bash
//! cargo run --release -p otp-lab --example secrecy_analysis
//! ```

use otp_lab::analysis::{
    distinguisher_test, eve_guess_rate, exhaustive_secrecy_check, exhaustive_secrecy_check_with,
    misforced_completion, reduction_stats, TrialConfig,
};
use otp_lab::{Error, ReductionParams};

fn main() -> Result<(), Error> {
    let params = ReductionParams::new(4, 2)?;
    println!("{}\n", exhaustive_secrecy_check(&params)?);

    let broken = exhaustive_secrecy_check_with(&ReductionParams::new(3, 1)?, misforced_completion)?;
    println!("mis-forced full-length tail: pass={}\n", broken.pass);

    let cfg = TrialConfig::new(ReductionParams::new(10, 3)?, 100_000, 1)?;
    println!("{}\n", eve_guess_rate(&cfg));

    for k in 1..=4 {
        let cfg = TrialConfig::new(ReductionParams::new(12, k)?, 100_000, 2)?;
        println!("{}\n", reduction_stats(&cfg));
    }

    let cfg = TrialConfig::new(ReductionParams::new(8, 3)?, 1_000_000, 3)?;
    println!("{}", distinguisher_test(&cfg)?);
    Ok(())
}
