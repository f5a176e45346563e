//! Edge entropy and bulk heat capacity of the Hermitian chain.
//!
//! Topological chains (t1 < t2) carry an edge entropy of ln 4 at low
//! temperature; trivial chains near the transition show a negative edge
//! entropy at intermediate temperature. At t1 = t2 the bulk heat capacity
//! is linear in T with slope pi c / 3, c = 1.

use nhssh::lattice::ModelParams;
use nhssh::thermo;

fn main() -> nhssh::Result<()> {
    let temps: Vec<f64> = (0..60).map(|i| 10f64.powf(-3.0 + 3.0 * i as f64 / 59.0)).collect();
    println!("{:>5} {:>10} {:>10} {:>12}", "t1", "s_edge(0)", "min s_edge", "at T");
    for t1 in [0.8, 0.9, 1.1, 1.2, 1.3] {
        let curve = thermo::thermo_curve(&ModelParams::hermitian(t1, 1.0, 200), &temps)?;
        let (i_min, s_min) = curve
            .s_edge
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
        println!("{t1:>5.2} {:>10.6} {s_min:>10.4} {:>12.4}", curve.s_edge[0], curve.temperatures[i_min]);
    }
    println!("ln 4 = {:.6}", 4f64.ln());

    let low: Vec<f64> = (0..21).map(|i| 0.01 + 0.005 * i as f64).collect();
    let curve = thermo::thermo_curve(&ModelParams::hermitian(1.0, 1.0, 200), &low)?;
    let fit = thermo::fit_central_charge_cv(&curve, 0.02, 0.1)?;
    println!(
        "critical chain: C_V/(N T) slope = {:.4} (pi/3 = {:.4}), c = {:.4}",
        fit.slope,
        std::f64::consts::PI / 3.0,
        fit.central_charge
    );
    Ok(())
}
