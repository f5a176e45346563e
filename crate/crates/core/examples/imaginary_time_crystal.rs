//! Periodic resonances of the bulk heat capacity in inverse temperature when
//! the surrogate spectrum has purely imaginary energies.

use nhssh::error::Error;
use nhssh::lattice::ModelParams;
use nhssh::thermo;

fn main() -> nhssh::Result<()> {
    let betas: Vec<f64> = (1..=6000).map(|i| 0.01 * i as f64).collect();
    for delta in [0.8, 1.45, 1.5, 1.6, 2.0] {
        let params = ModelParams::new(1.1, delta, 200);
        match thermo::itc_scan(&params, &betas) {
            Ok(r) => println!(
                "delta = {delta}: {} peaks, period {:.3}, predicted {:.3}",
                r.peak_positions.len(),
                r.measured_period,
                r.predicted_period.unwrap_or(f64::NAN)
            ),
            Err(Error::NoPeaksFound(n)) => println!("delta = {delta}: {n} peaks below beta = 60"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
