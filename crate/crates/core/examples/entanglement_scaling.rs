//! Logarithmic growth of the entanglement entropy with chain length at the
//! critical points of the non-reciprocal chain.
//!
//! ```text
//! cargo run --release --example entanglement_scaling
//! ```

use nhssh::entanglement::{self, Cut};
use nhssh::lattice::ModelParams;

fn main() -> nhssh::Result<()> {
    let sizes: Vec<usize> = (0..13).map(|i| 50 + 16 * i).collect();
    for delta in [0.4583, 1.4866, 0.2] {
        for cut in [Cut::Half, Cut::Centered] {
            let fit = entanglement::ee_scaling_fit(&ModelParams::new(1.1, delta, 50), &sizes, cut)?;
            println!(
                "delta = {delta:<7} cut = {:<9} slope = {:.4}  c = {:.3}  rms = {:.1e}",
                cut.as_str(),
                fit.slope,
                fit.central_charge,
                fit.residual
            );
        }
    }
    Ok(())
}
