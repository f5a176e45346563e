//! Coarse map of the four phases in the (t1, delta) plane.

use nhssh::topology::{self, PhaseLabel};

fn main() {
    let t1s: Vec<f64> = (0..24).map(|i| 0.2 + 1.8 * i as f64 / 23.0).collect();
    let deltas: Vec<f64> = (0..48).map(|i| 2.0 * i as f64 / 47.0).collect();
    let cells = topology::phase_diagram(&t1s, &deltas);
    println!("rows: t1 from {} (top) to {}; columns: delta from 0 to 2", t1s[0], t1s[t1s.len() - 1]);
    println!("P = topological protected, p = trivial protected, B = topological broken, b = trivial broken");
    for row in cells.chunks(deltas.len()) {
        let line: String = row
            .iter()
            .map(|c| match &c.phase {
                Ok(p) => match p.label {
                    PhaseLabel::TopoProtected => 'P',
                    PhaseLabel::TrivialProtected => 'p',
                    PhaseLabel::TopoBroken => 'B',
                    PhaseLabel::TrivialBroken => 'b',
                },
                Err(_) => '.',
            })
            .collect();
        println!("{:5.2} {line}", row[0].t1);
    }
    let crit = topology::critical_deltas(1.1);
    println!("critical deltas at t1 = 1.1: {:?}", crit.all());
}
