//! Edge and bulk thermodynamics of the non-reciprocal chain, with the
//! surrogate spectrum as the bulk reference.

use nhssh::lattice::ModelParams;
use nhssh::thermo;

fn main() -> nhssh::Result<()> {
    let t1 = 1.1;
    let temps = [0.01, 0.05, 0.1, 0.2, 0.3, 0.5];
    println!("edge entropy, L = 200 (ln 4 = {:.4})", 4f64.ln());
    print!("{:>6}", "delta");
    for t in temps {
        print!(" {:>8}", format!("T={t}"));
    }
    println!();
    for delta in [0.8, 1.2, 1.3] {
        let curve = thermo::thermo_curve(&ModelParams::new(t1, delta, 200), &temps)?;
        print!("{delta:>6.2}");
        for s in &curve.s_edge {
            print!(" {s:>8.4}");
        }
        println!();
    }

    let low: Vec<f64> = (0..21).map(|i| 0.01 + 0.005 * i as f64).collect();
    let curve = thermo::thermo_curve(&ModelParams::new(t1, 0.4583, 200), &low)?;
    let fit = thermo::fit_central_charge_cv(&curve, 0.02, 0.1)?;
    println!("delta = 0.4583: c = {:.4}", fit.central_charge);

    let cv = thermo::bulk_heat_capacity(&ModelParams::new(t1, t1, 200), &[0.02, 0.05, 0.1, 0.2, 0.5])?;
    let cv: Vec<String> = cv.iter().map(|c| format!("{c:.2e}")).collect();
    println!("delta = t1: C_V/N at T = 0.02, 0.05, 0.1, 0.2, 0.5: {}", cv.join(" "));
    Ok(())
}
