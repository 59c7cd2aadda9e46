//! Flat `key=value` configuration for Fekete runs.
//!
//! Blank lines are ignored and `#` starts a comment. Keys: `n_points`,
//! `ensemble` (`complex` or `symplectic`), `p`, `c`, `tau`, `seed`,
//! `max_iters`, `grad_tol`, `step_policy` (`backtracking` or `fixed:<step>`),
//! `memory` and `margin`. `n_points`, `p`, `c` and `tau` are required.

use droplet_core::{Ensemble, FeketeConfig, ModelParams, StepPolicy};

use crate::Failure;

/// A parsed run description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    /// Minimiser settings.
    pub fekete: FeketeConfig,
    /// Membership margin for the droplet comparison; `3/√N` when absent.
    pub margin: f64,
}

fn bad(msg: String) -> Failure {
    Failure::BadInput(msg)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.parse()
        .map_err(|_| bad(format!("{key}: cannot parse '{v}'")))
}

/// Parses the configuration text.
pub fn parse(text: &str) -> Result<RunConfig, Failure> {
    let mut n = None;
    let (mut p, mut c, mut tau) = (None, None, None);
    let mut ensemble = Ensemble::Complex;
    let mut seed = None;
    let mut max_iters = None;
    let mut grad_tol = None;
    let mut step = None;
    let mut memory = None;
    let mut margin = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(kv, _)| kv).trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("line {}: expected key=value", lineno + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        match k {
            "n_points" => n = Some(parse_num::<usize>(k, v)?),
            "p" => p = Some(parse_num::<f64>(k, v)?),
            "c" => c = Some(parse_num::<f64>(k, v)?),
            "tau" => tau = Some(parse_num::<f64>(k, v)?),
            "seed" => seed = Some(parse_num::<u64>(k, v)?),
            "max_iters" => max_iters = Some(parse_num::<usize>(k, v)?),
            "grad_tol" => grad_tol = Some(parse_num::<f64>(k, v)?),
            "memory" => memory = Some(parse_num::<usize>(k, v)?),
            "margin" => margin = Some(parse_num::<f64>(k, v)?),
            "ensemble" => {
                ensemble = match v {
                    "complex" => Ensemble::Complex,
                    "symplectic" => Ensemble::Symplectic,
                    _ => return Err(bad(format!("ensemble: unknown '{v}'"))),
                }
            }
            "step_policy" => {
                step = Some(match v.split_once(':') {
                    None if v == "backtracking" => StepPolicy::Backtracking,
                    Some(("fixed", s)) => StepPolicy::Fixed(parse_num::<f64>(k, s)?),
                    _ => return Err(bad(format!("step_policy: unknown '{v}'"))),
                })
            }
            _ => return Err(bad(format!("line {}: unknown key '{k}'", lineno + 1))),
        }
    }
    let missing = |name: &str| bad(format!("missing key '{name}'"));
    let n = n.ok_or_else(|| missing("n_points"))?;
    let params = ModelParams::new(
        p.ok_or_else(|| missing("p"))?,
        c.ok_or_else(|| missing("c"))?,
        tau.ok_or_else(|| missing("tau"))?,
    )?;
    let mut fekete = FeketeConfig::new(n, ensemble, params);
    if let Some(s) = seed {
        fekete.seed = s;
    }
    if let Some(m) = max_iters {
        fekete.max_iters = m;
    }
    if let Some(g) = grad_tol {
        fekete.grad_tol = g;
    }
    if let Some(s) = step {
        fekete.step_policy = s;
    }
    if let Some(m) = memory {
        fekete.memory = m;
    }
    fekete.validate()?;
    let margin = margin.unwrap_or(3.0 / (n as f64).sqrt());
    if !(margin >= 0.0) {
        return Err(bad(format!("margin: {margin} is negative")));
    }
    Ok(RunConfig { fekete, margin })
}
