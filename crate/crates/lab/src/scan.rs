//! Parallel phase-diagram scan.

use droplet_core::phase::linspace;
use droplet_core::phase::PhaseGrid;
use droplet_core::{Classifier, Phase};
use rayon::prelude::*;

use crate::Failure;

/// Same grid as [`droplet_core::phase_diagram_scan`], with rows classified
/// in parallel. Cells are independent, so the result does not depend on the
/// schedule.
pub fn parallel_scan(
    tau: f64,
    p_range: (f64, f64),
    c_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<PhaseGrid, Failure> {
    let (np, nc) = resolution;
    if np == 0 || nc == 0 {
        return Err(Failure::BadInput("resolution must be positive".into()));
    }
    let cl = Classifier::new(tau)?;
    let p_values = linspace(p_range.0, p_range.1, np);
    let c_values = linspace(c_range.0, c_range.1, nc);
    let rows: Vec<Vec<Phase>> = c_values
        .par_iter()
        .map(|&c| {
            p_values
                .iter()
                .map(|&p| cl.classify_pc(p, c).map(|x| x.regime.phase))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Ok(PhaseGrid {
        tau,
        p_values,
        c_values,
        phases: rows.concat(),
    })
}
