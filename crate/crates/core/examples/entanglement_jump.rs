//! Half-chain entanglement entropy of the half-filled ground state across
//! the phases at t1 = 1.1, and the correlation-spectrum modes at 1/2.

use nhssh::entanglement::{self, Cut};
use nhssh::lattice::ModelParams;

fn main() -> nhssh::Result<()> {
    let deltas = [0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0, 1.2, 1.4, 1.45, 1.5, 1.6, 1.8];
    let results = entanglement::ee_vs_delta(&ModelParams::new(1.1, 0.0, 120), &deltas, Cut::Half)?;
    println!("{:>6} {:>8} {:>10}", "delta", "EE", "xi ~ 1/2");
    for (d, r) in deltas.iter().zip(&results) {
        let halves = r.xi.iter().filter(|x| (x.re - 0.5).abs() < 0.01).count();
        println!("{d:>6.2} {:>8.4} {halves:>10}", r.ee);
    }
    println!("ln 4 = {:.4}", 4f64.ln());
    Ok(())
}
