//! Zero-temperature grand potential and its second derivative in delta;
//! jumps in the thermodynamic-limit curve mark the phase transitions.

use nhssh::lattice::ModelParams;
use nhssh::thermo;
use nhssh::topology;

fn main() -> nhssh::Result<()> {
    let t1 = 1.1;
    let deltas: Vec<f64> = (0..140).map(|i| 0.305 + 0.01 * i as f64).collect();
    let params = ModelParams::new(t1, 0.0, 80);
    let scan = thermo::delta_derivative_scan(&params, &deltas, 2, 1e-3)?;
    println!("{:>7} {:>12} {:>12} {:>12}", "delta", "d2 ext", "d2 surr", "d2 edge");
    for i in (0..deltas.len()).step_by(10) {
        println!(
            "{:>7.3} {:>12.3} {:>12.3} {:>12.3}",
            deltas[i], scan.d_ext[i], scan.d_surr[i], scan.d_edge[i]
        );
    }
    let kinks = thermo::find_kinks(&scan.deltas, &scan.d_surr, 10.0);
    println!("kinks in the thermodynamic-limit curve: {kinks:.3?}");
    println!("critical deltas: {:.4?}", topology::critical_deltas(t1).all());

    let first = thermo::delta_derivative_scan(&params, &deltas, 1, 1e-3)?;
    println!(
        "first-derivative kinks (open chain): {:.3?}",
        thermo::find_kinks(&first.deltas, &first.d_ext, 10.0)
    );
    Ok(())
}
