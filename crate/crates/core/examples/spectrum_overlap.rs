//! Open-chain spectrum of the non-reciprocal chain against the surrogate
//! Bloch Hamiltonian evaluated at the open-chain standing-wave momenta.
//!
//! ```text
//! cargo run --release --example spectrum_overlap
//! ```

use nhssh::eig;
use nhssh::lattice::{self, MomentumGrid, ModelParams};
use num_complex::Complex64;

fn main() -> nhssh::Result<()> {
    let t1 = 1.1;
    let cells = 80;
    println!("t1 = {t1}, L = {cells}");
    println!("{:>6} {:>12} {:>14} {:>14}", "delta", "max|E|", "open momenta", "uniform grid");
    for delta in [0.2, 0.8, 1.3, 1.6] {
        let params = ModelParams::new(t1, delta, cells);
        let h = lattice::build_realspace(&params)?;
        let open = eig::eigenvalues(&h.entries)?;
        let scale = open.iter().map(|e| e.norm()).fold(0.0, f64::max);
        let nonzero = |v: Vec<Complex64>| -> Vec<Complex64> {
            v.into_iter().filter(|e| e.norm() > 1e-6 * scale).collect()
        };
        let at_open = nonzero(lattice::surrogate_spectrum_obc(&params)?);
        let uniform = nonzero(lattice::surrogate_spectrum(&params, &MomentumGrid::uniform(cells)?)?);
        let open = nonzero(open);
        println!(
            "{delta:>6.2} {scale:>12.4} {:>14.2e} {:>14.2e}",
            eig::hausdorff_distance(&open, &at_open),
            eig::hausdorff_distance(&open, &uniform),
        );
    }
    Ok(())
}
