//! Prints every separability measure on the toy data sets `a`–`i`.

use dcsi_core::datagen::{generate, GenSpec, Generator};
use dcsi_core::measures::{battery, BatteryConfig, MeasureId};

fn main() -> dcsi_core::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    print!("{:>4}", "");
    for id in MeasureId::ALL {
        print!("{:>8}", id.as_str());
    }
    println!();
    for g in Generator::TOYS {
        let ds = generate(&GenSpec::new(g, seed))?;
        print!("{:>4}", g.as_str());
        for (_, v) in battery(&ds, &MeasureId::ALL, &BatteryConfig::default()) {
            match v {
                Ok(v) => print!("{:>8.2}", v.value),
                Err(_) => print!("{:>8}", "err"),
            }
        }
        println!();
    }
    Ok(())
}
