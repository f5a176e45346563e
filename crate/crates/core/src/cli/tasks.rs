use rayon::prelude::*;

use super::config::{Grid, SweepConfig, Task};
use super::CliError;
use crate::entanglement;
use crate::error::Error;
use crate::lattice::{self, Boundary, ModelParams, MomentumGrid};
use crate::thermo;
use crate::{eig, topology};

/// Rows of one output file plus human-readable summary lines.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub report: Vec<String>,
}

fn f(x: f64) -> String {
    format!("{x}")
}

fn point(p: &ModelParams) -> String {
    format!("t1={} t2={} delta={} L={}", p.t1, p.t2, p.delta, p.length)
}

fn numeric(p: &ModelParams, e: Error) -> CliError {
    CliError::Numeric { point: point(p), source: e }
}

fn boundary_str(b: Boundary) -> &'static str {
    match b {
        Boundary::Obc => "obc",
        Boundary::Pbc => "pbc",
    }
}

fn base(cfg: &SweepConfig) -> ModelParams {
    ModelParams::new(cfg.t1, cfg.delta, cfg.length)
        .with_t2(cfg.t2)
        .with_boundary(cfg.boundary)
}

pub fn build(cfg: &SweepConfig) -> Result<Table, CliError> {
    match cfg.task {
        Task::Spectrum => spectrum(cfg),
        Task::PhaseDiagram => phase_diagram(cfg),
        Task::Thermo => thermo_table(cfg),
        Task::Ee => ee(cfg),
        Task::EeScaling => ee_scaling(cfg),
        Task::Derivatives => derivatives(cfg),
        Task::Itc => itc(cfg),
    }
}

fn spectrum(cfg: &SweepConfig) -> Result<Table, CliError> {
    let p = base(cfg);
    let h = lattice::build_realspace(&p).map_err(|e| numeric(&p, e))?;
    let real = eig::eigenvalues(&h.entries).map_err(|e| numeric(&p, e))?;
    let prefix = |kind: &str| {
        vec![f(p.t1), f(p.t2), f(p.delta), p.length.to_string(), boundary_str(p.boundary).into(), kind.into()]
    };
    let mut rows = Vec::new();
    for (i, e) in real.iter().enumerate() {
        let mut r = prefix("realspace");
        r.extend([i.to_string(), String::new(), f(e.re), f(e.im)]);
        rows.push(r);
    }
    let grid = MomentumGrid::uniform(cfg.k_points.unwrap_or(p.length)).map_err(|e| numeric(&p, e))?;
    let (kind, reference) = if p.is_hermitian() {
        ("bloch", lattice::bloch_spectrum(&p, &grid))
    } else if p.t2 == 1.0 {
        ("surrogate", lattice::surrogate_spectrum(&p, &grid).map_err(|e| numeric(&p, e))?)
    } else {
        ("", Vec::new())
    };
    for (i, e) in reference.iter().enumerate() {
        let mut r = prefix(kind);
        r.extend([i.to_string(), f(grid.points[i / 2]), f(e.re), f(e.im)]);
        rows.push(r);
    }
    let mut report = vec![format!("realspace_modes={}", real.len())];
    if !p.is_hermitian() && p.t2 == 1.0 && p.boundary == Boundary::Obc {
        let open = lattice::surrogate_spectrum_obc(&p).map_err(|e| numeric(&p, e))?;
        for (i, e) in open.iter().enumerate() {
            let mut r = prefix("surrogate-open");
            r.extend([i.to_string(), String::new(), f(e.re), f(e.im)]);
            rows.push(r);
        }
    }
    if !reference.is_empty() {
        report.push(format!("{kind}_modes={}", reference.len()));
    }
    Ok(Table {
        columns: vec!["t1", "t2", "delta", "L", "boundary", "kind", "index", "k", "re", "im"],
        rows,
        report,
    })
}

fn phase_diagram(cfg: &SweepConfig) -> Result<Table, CliError> {
    let t1s = cfg.t1_range.unwrap_or(Grid { start: 0.2, stop: 2.0, count: 50 }).values();
    let deltas = cfg.delta_range.unwrap_or(Grid { start: 0.0, stop: 2.0, count: 50 }).values();
    let cells = topology::phase_diagram(&t1s, &deltas);
    let mut critical = 0;
    let rows = cells
        .iter()
        .map(|c| {
            let mut r = vec![f(c.t1), "1".into(), f(c.delta)];
            match &c.phase {
                Ok(ph) => {
                    let sym = match ph.ph_symmetry {
                        topology::PhSymmetry::Protected => "protected",
                        topology::PhSymmetry::Broken => "broken",
                    };
                    r.extend([ph.winding.value.to_string(), f(ph.winding.raw), sym.into(), ph.label.as_str().into()]);
                }
                Err(_) => {
                    critical += 1;
                    r.extend([String::new(), String::new(), String::new(), "critical".into()]);
                }
            }
            r
        })
        .collect();
    Ok(Table {
        columns: vec!["t1", "t2", "delta", "winding", "winding_raw", "ph_symmetry", "label"],
        rows,
        report: vec![format!("cells={} critical={critical}", cells.len())],
    })
}

fn thermo_table(cfg: &SweepConfig) -> Result<Table, CliError> {
    let temps = cfg.t_range.unwrap_or(Grid { start: 0.001, stop: 2.0, count: 400 }).values();
    let template = base(cfg).with_boundary(Boundary::Obc);
    let curves = cfg
        .delta_grid()
        .par_iter()
        .map(|&d| {
            let p = template.with_delta(d);
            thermo::thermo_curve(&p, &temps).map_err(|e| numeric(&p, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    let mut report = Vec::new();
    for c in &curves {
        let p = c.params;
        for i in 0..c.len() {
            rows.push(vec![
                f(p.t1),
                f(p.t2),
                f(p.delta),
                p.length.to_string(),
                f(c.temperatures[i]),
                f(c.s_bulk[i]),
                f(c.s_edge[i]),
                f(c.cv_bulk[i]),
                f(c.s_obc[i]),
            ]);
        }
        if let Ok(fit) = thermo::fit_central_charge_cv(c, 0.02, 0.1) {
            report.push(format!(
                "delta={} central_charge={:.4} slope={:.4} window=0.02:0.1",
                p.delta, fit.central_charge, fit.slope
            ));
        }
    }
    Ok(Table {
        columns: vec!["t1", "t2", "delta", "L", "T", "s_bulk", "s_edge", "cv_bulk", "s_obc"],
        rows,
        report,
    })
}

fn half_modes(r: &entanglement::CorrelationResult) -> usize {
    r.xi.iter().filter(|x| (x.re - 0.5).abs() < 0.01).count()
}

fn ee(cfg: &SweepConfig) -> Result<Table, CliError> {
    let template = base(cfg).with_boundary(Boundary::Obc);
    let deltas = cfg.delta_grid();
    let results = deltas
        .par_iter()
        .map(|&d| {
            let p = template.with_delta(d);
            entanglement::ground_state_correlation(&p, cfg.cut).map_err(|e| numeric(&p, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rows = deltas
        .iter()
        .zip(&results)
        .map(|(&d, r)| {
            vec![
                f(cfg.t1),
                f(cfg.t2),
                f(d),
                cfg.length.to_string(),
                cfg.cut.as_str().into(),
                r.subsystem_size.to_string(),
                f(r.ee),
                f(r.imag_leakage),
                half_modes(r).to_string(),
            ]
        })
        .collect();
    Ok(Table {
        columns: vec!["t1", "t2", "delta", "L", "cut", "L_A", "ee", "imag_leakage", "half_modes"],
        rows,
        report: vec![format!("points={}", deltas.len())],
    })
}

fn ee_scaling(cfg: &SweepConfig) -> Result<Table, CliError> {
    let sizes = cfg
        .sizes
        .clone()
        .unwrap_or_else(|| (0..26).map(|i| 50 + 8 * i).collect());
    let p = base(cfg).with_boundary(Boundary::Obc);
    let fit = entanglement::ee_scaling_fit(&p, &sizes, cfg.cut).map_err(|e| match e {
        Error::InsufficientSizes(_) => CliError::Config(e.to_string()),
        e => numeric(&p, e),
    })?;
    let rows = (0..fit.sizes.len())
        .map(|i| {
            vec![
                f(p.t1),
                f(p.t2),
                f(p.delta),
                cfg.cut.as_str().into(),
                fit.sizes[i].to_string(),
                cfg.cut.sites(fit.sizes[i]).len().to_string(),
                f(fit.ln_sizes[i]),
                f(fit.ee_values[i]),
            ]
        })
        .collect();
    let mut line = format!(
        "slope={:.4} central_charge={:.4} residual={:.2e}",
        fit.slope, fit.central_charge, fit.residual
    );
    if let Some(c) = fit.windowed_central_charge {
        line.push_str(&format!(" windowed_central_charge={c:.4}"));
    }
    Ok(Table {
        columns: vec!["t1", "t2", "delta", "cut", "L", "L_A", "ln_L_A", "ee"],
        rows,
        report: vec![line],
    })
}

fn derivatives(cfg: &SweepConfig) -> Result<Table, CliError> {
    let deltas = cfg
        .delta_range
        .unwrap_or(Grid { start: 0.305, stop: 1.695, count: 140 })
        .values();
    let p = base(cfg).with_boundary(Boundary::Obc);
    let scan = thermo::delta_derivative_scan(&p, &deltas, cfg.order, cfg.step).map_err(|e| match e {
        Error::StepTooLarge { .. } => CliError::Config(e.to_string()),
        e => numeric(&p, e),
    })?;
    let rows = (0..scan.deltas.len())
        .map(|i| {
            vec![
                f(p.t1),
                f(p.t2),
                f(scan.deltas[i]),
                p.length.to_string(),
                scan.order.to_string(),
                f(scan.h),
                f(scan.omega_ext[i]),
                f(scan.omega_surr[i]),
                f(scan.omega_edge[i]),
                f(scan.d_ext[i]),
                f(scan.d_surr[i]),
                f(scan.d_edge[i]),
            ]
        })
        .collect();
    let kinks: Vec<String> = thermo::find_kinks(&scan.deltas, &scan.d_surr, 10.0)
        .iter()
        .map(|k| format!("{k:.4}"))
        .collect();
    Ok(Table {
        columns: vec![
            "t1", "t2", "delta", "L", "order", "h", "omega_ext", "omega_surr", "omega_edge", "d_ext", "d_surr",
            "d_edge",
        ],
        rows,
        report: vec![format!("kinks_d_surr={}", kinks.join(","))],
    })
}

fn itc(cfg: &SweepConfig) -> Result<Table, CliError> {
    let betas = cfg.beta_range.unwrap_or(Grid { start: 0.01, stop: 60.0, count: 6000 }).values();
    let p = base(cfg).with_boundary(Boundary::Obc);
    let predicted = thermo::predicted_itc_period(&p);
    let (cv, peaks, report) = match thermo::itc_scan(&p, &betas) {
        Ok(r) => {
            let line = format!(
                "measured_period={:.4} predicted={} peaks={}",
                r.measured_period,
                predicted.map_or("none".into(), |x| format!("{x:.4}")),
                r.peak_positions.len()
            );
            (r.cv_values, r.peak_positions, line)
        }
        Err(Error::NoPeaksFound(n)) => {
            let bulk = thermo::bulk_energies(&p).map_err(|e| numeric(&p, e))?;
            let cells = p.length as f64;
            let cv = betas
                .par_iter()
                .map(|&b| thermo::heat_capacity(&bulk, 1.0 / b).map(|c| c / cells))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| numeric(&p, e))?;
            let peaks = thermo::find_resonance_peaks(&betas, &cv);
            let line = format!(
                "measured_period=none predicted={} peaks={n}",
                predicted.map_or("none".into(), |x| format!("{x:.4}"))
            );
            (cv, peaks, line)
        }
        Err(e) => return Err(numeric(&p, e)),
    };
    let rows = betas
        .iter()
        .zip(&cv)
        .map(|(&b, &c)| {
            let is_peak = peaks.contains(&b);
            vec![
                f(p.t1),
                f(p.t2),
                f(p.delta),
                p.length.to_string(),
                f(b),
                f(c),
                u8::from(is_peak).to_string(),
            ]
        })
        .collect();
    Ok(Table {
        columns: vec!["t1", "t2", "delta", "L", "beta", "cv_bulk", "peak"],
        rows,
        report: vec![report],
    })
}
