//! Command implementations. Each returns its [`Output`] instead of writing,
//! which keeps them testable and lets the binary decide where bytes go.

use std::path::{Path, PathBuf};

use droplet_core::fekete::{cluster_sizes, minimize};
use droplet_core::geometry::{self_intersects, solve_r, BoundaryPolyline};
use droplet_core::phase::linspace;
use droplet_core::*;
use serde_json::{Map, Value};
use std::result::Result;

use crate::cli::*;
use crate::config;
use crate::format::{document, fmt, num, render, Table};
use crate::scan::parallel_scan;
use crate::svg::Figure;
use crate::{Failure, Output};

type Res = Result<Output, Failure>;

/// Runs a command. On failure the output gathered so far is still returned.
pub fn run(command: &Command) -> (Output, Option<Failure>) {
    let result = match command {
        Command::Classify(a) => classify_cmd(a),
        Command::Droplet(a) => droplet_cmd(a),
        Command::Scan(a) => scan_cmd(a),
        Command::Energy(a) => energy_cmd(a),
        Command::EnergyCurve(a) => energy_curve_cmd(a),
        Command::Kappa(a) => kappa_cmd(a),
        Command::Univalence(a) => univalence_cmd(a),
        Command::Fekete(a) => return fekete_cmd(a),
        Command::Moments(a) => moments_cmd(a),
    };
    match result {
        Ok(out) => (out, None),
        Err(f) => (Output::default(), Some(f)),
    }
}

fn input(pairs: &[(&str, f64)]) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert((*k).into(), num(*v));
    }
    Value::Object(m)
}

fn dest(out: &mut Output, path: &Option<PathBuf>, content: String) {
    match path {
        Some(p) => out.files.push((p.clone(), content)),
        None => out.stdout.push_str(&content),
    }
}

fn params_of(a: &PointArgs) -> Result<ModelParams, Failure> {
    Ok(ModelParams::new(a.p, a.c, a.tau)?)
}

fn flags_json(regime: &Regime) -> Value {
    Value::Array(
        regime
            .flags
            .iter()
            .map(|f| {
                let mut m = Map::new();
                m.insert("manifold".into(), Value::from(f.manifold.label()));
                m.insert("distance".into(), num(f.distance));
                Value::Object(m)
            })
            .collect(),
    )
}

/// `classify`.
pub fn classify_cmd(a: &PointArgs) -> Res {
    let params = params_of(a)?;
    let cl = classify(&params);
    let mut doc = document("classify");
    doc.insert(
        "input".into(),
        input(&[("p", a.p), ("c", a.c), ("tau", a.tau)]),
    );
    doc.insert("regime".into(), Value::from(cl.regime.phase.label()));
    doc.insert("boundary_flags".into(), flags_json(&cl.regime));
    if let Some(cp) = cl.conformal {
        doc.insert("a".into(), num(cp.a()));
        doc.insert("kappa".into(), num(cp.kappa()));
        doc.insert("R".into(), num(cp.r()));
    }
    if let Some(inv) = cl.inversion {
        let mut m = Map::new();
        m.insert("residual".into(), num(inv.residual));
        m.insert(
            "distinct_solutions".into(),
            Value::from(inv.distinct_solutions),
        );
        doc.insert("inversion".into(), Value::Object(m));
    }
    Ok(Output {
        stdout: render(doc),
        ..Output::default()
    })
}

fn component_name(c: BoundaryComponent) -> &'static str {
    match c {
        BoundaryComponent::Outer => "outer",
        BoundaryComponent::Inner => "inner",
    }
}

fn curves_table(command: &str, header: Vec<String>, curves: &[BoundaryPolyline]) -> String {
    let mut t = Table::new(command, &header, &["curve", "theta", "re", "im"]);
    for curve in curves {
        for s in &curve.samples {
            t.row([
                component_name(curve.component).to_string(),
                fmt(s.theta),
                fmt(s.zeta.re),
                fmt(s.zeta.im),
            ]);
        }
    }
    t.finish()
}

fn curves_svg(curves: &[BoundaryPolyline], title: &str) -> String {
    let mut fig = Figure::new();
    for c in curves {
        fig.polygon(&c.points(), "black", component_name(c.component));
    }
    fig.finish(title)
}

/// `droplet`, in model mode or raw-map mode.
pub fn droplet_cmd(a: &DropletArgs) -> Res {
    if a.n < 8 {
        return Err(Failure::BadInput("n must be at least 8".into()));
    }
    let mut out = Output::default();
    let (header, curves, title) = if a.raw_map {
        let (ka, kk) = (a.a.unwrap_or(f64::NAN), a.kappa.unwrap_or(f64::NAN));
        let r = solve_r(ka, kk, a.tau)?;
        let map = ConformalMap::new(ConformalParams::new(r, ka, kk)?, a.tau);
        let curve = map.sample_boundary(a.n);
        let crossing = self_intersects(&curve.points());
        let univalent = is_univalent(ka, kk, a.tau, 4 * a.n);
        let mut header = vec![
            format!(
                "a={} kappa={} tau={} R={}",
                fmt(ka),
                fmt(kk),
                fmt(a.tau),
                fmt(r)
            ),
            format!("univalent={univalent} self_intersecting={crossing}"),
        ];
        if !univalent || crossing {
            let msg = format!("map for a={ka}, kappa={kk}, tau={} is not univalent", a.tau);
            header.push(format!("warning: {msg}"));
            out.warnings.push(msg);
        }
        (header, vec![curve], "rational map boundary".to_string())
    } else {
        let params = ModelParams::new(a.p.unwrap_or(f64::NAN), a.c.unwrap_or(f64::NAN), a.tau)?;
        let cl = classify(&params);
        let droplet = geometry::build_droplet_with(&params, &cl, a.n)?;
        let mut header = vec![
            format!(
                "p={} c={} tau={}",
                fmt(params.p()),
                fmt(params.c()),
                fmt(params.tau())
            ),
            format!("regime={}", cl.regime.phase.label()),
            format!("area={}", fmt(droplet.area())),
        ];
        if let Some(cp) = cl.conformal {
            header.push(format!(
                "a={} kappa={} R={}",
                fmt(cp.a()),
                fmt(cp.kappa()),
                fmt(cp.r())
            ));
        }
        let curves = droplet.boundaries(a.n);
        if curves.iter().any(|c| c.under_resolved) {
            let msg = "boundary sampling stayed coarse after refinement".to_string();
            header.push(format!("warning: {msg}"));
            out.warnings.push(msg);
        }
        (
            header,
            curves,
            format!("droplet, regime {}", cl.regime.phase.label()),
        )
    };
    if let Some(path) = &a.svg {
        out.files.push((path.clone(), curves_svg(&curves, &title)));
    }
    dest(&mut out, &a.out, curves_table("droplet", header, &curves));
    Ok(out)
}

fn phase_colour(p: Phase) -> &'static str {
    match p {
        Phase::DoublyConnected => "#4477aa",
        Phase::SimplyConnected => "#ee6677",
        Phase::TwoComponents => "#ccbb44",
    }
}

/// `scan`.
pub fn scan_cmd(a: &ScanArgs) -> Res {
    let p_range = (a.p_min, a.p_max);
    let c_range = (a.c_min, a.c_max);
    let grid = if a.sequential {
        phase_diagram_scan(a.tau, p_range, c_range, (a.np, a.nc))?
    } else {
        parallel_scan(a.tau, p_range, c_range, (a.np, a.nc))?
    };
    let header = vec![
        format!(
            "tau={} p=[{},{}] c=[{},{}] np={} nc={}",
            fmt(a.tau),
            fmt(a.p_min),
            fmt(a.p_max),
            fmt(a.c_min),
            fmt(a.c_max),
            a.np,
            a.nc
        ),
        format!(
            "counts I={} II={} III={}",
            grid.count(Phase::DoublyConnected),
            grid.count(Phase::SimplyConnected),
            grid.count(Phase::TwoComponents)
        ),
    ];
    let mut t = Table::new("scan", &header, &["p", "c", "regime"]);
    for (ic, &c) in grid.c_values.iter().enumerate() {
        for (ip, &p) in grid.p_values.iter().enumerate() {
            t.row([fmt(p), fmt(c), grid.get(ic, ip).label().to_string()]);
        }
    }
    let mut out = Output::default();
    if let Some(path) = &a.svg {
        let step = |v: &[f64]| if v.len() > 1 { v[1] - v[0] } else { 1.0 };
        let (dp, dc) = (step(&grid.p_values), step(&grid.c_values));
        let mut fig = Figure::new();
        for (ic, &c) in grid.c_values.iter().enumerate() {
            for (ip, &p) in grid.p_values.iter().enumerate() {
                fig.rect(
                    p - dp / 2.0,
                    c - dc / 2.0,
                    dp,
                    dc,
                    phase_colour(grid.get(ic, ip)),
                );
            }
        }
        out.files.push((
            path.clone(),
            fig.finish(&format!("phase diagram, tau={}", a.tau)),
        ));
    }
    dest(&mut out, &a.out, t.finish());
    Ok(out)
}

fn energy_json(command: &str, inputs: &[(&str, f64)], r: &EnergyReport) -> String {
    let mut doc = document(command);
    doc.insert("input".into(), input(inputs));
    doc.insert("regime".into(), Value::from(r.phase.label()));
    doc.insert("energy".into(), num(r.energy));
    doc.insert("robin".into(), num(r.robin));
    doc.insert("potential_integral".into(), num(r.potential_integral));
    doc.insert("K".into(), num(r.moments_coeff));
    render(doc)
}

/// `energy`.
pub fn energy_cmd(a: &PointArgs) -> Res {
    let r = energy(&params_of(a)?)?;
    Ok(Output {
        stdout: energy_json("energy", &[("p", a.p), ("c", a.c), ("tau", a.tau)], &r),
        ..Output::default()
    })
}

/// `energy-curve`. Regime III rows carry an empty energy.
pub fn energy_curve_cmd(a: &CurveArgs) -> Res {
    if a.n == 0 {
        return Err(Failure::BadInput("n must be positive".into()));
    }
    let cl = Classifier::new(a.tau)?;
    let mut header = vec![format!("c={} tau={}", fmt(a.c), fmt(a.tau))];
    if let Some(pc) = regime1_max_p(a.c, a.tau) {
        header.push(format!("critical_p={}", fmt(pc)));
    }
    let mut t = Table::new("energy-curve", &header, &["p", "regime", "energy"]);
    for p in linspace(a.p_min, a.p_max, a.n) {
        let params = ModelParams::new(p, a.c, a.tau)?;
        let cls = cl.classify(&params)?;
        let e = match (cls.regime.phase, cls.conformal) {
            (Phase::DoublyConnected, _) => fmt(energy_doubly(&params)?.energy),
            (Phase::SimplyConnected, Some(cp)) => fmt(energy_simply(&params, &cp)?.energy),
            _ => String::new(),
        };
        t.row([fmt(p), cls.regime.phase.label().to_string(), e]);
    }
    let mut out = Output::default();
    dest(&mut out, &a.out, t.finish());
    Ok(out)
}

/// `kappa`.
pub fn kappa_cmd(a: &KappaArgs) -> Res {
    let b = kappa_bounds(a.a, a.tau)?;
    let mut doc = document("kappa");
    doc.insert("input".into(), input(&[("a", a.a), ("tau", a.tau)]));
    doc.insert("kappa_min".into(), num(b.min));
    doc.insert("kappa_one".into(), num(b.one));
    doc.insert("kappa_cri".into(), num(b.cri));
    doc.insert("kappa_max".into(), num(b.max));
    Ok(Output {
        stdout: render(doc),
        ..Output::default()
    })
}

/// `univalence`.
pub fn univalence_cmd(a: &UnivalenceArgs) -> Res {
    let b = kappa_bounds(a.a, a.tau)?;
    if a.samples < 3 {
        return Err(Failure::BadInput("samples must be at least 3".into()));
    }
    let mut doc = document("univalence");
    doc.insert(
        "input".into(),
        input(&[("a", a.a), ("kappa", a.kappa), ("tau", a.tau)]),
    );
    doc.insert(
        "univalent".into(),
        Value::from(is_univalent(a.a, a.kappa, a.tau, a.samples)),
    );
    doc.insert("kappa_min".into(), num(b.min));
    doc.insert("kappa_max".into(), num(b.max));
    Ok(Output {
        stdout: render(doc),
        ..Output::default()
    })
}

/// `moments`.
pub fn moments_cmd(a: &MomentsArgs) -> Res {
    let k = moments_coeff(a.z, a.c, a.tau)?;
    let params = ModelParams::new(a.z.abs(), a.c, a.tau)?;
    let mut doc = document("moments");
    doc.insert(
        "input".into(),
        input(&[("z", a.z), ("c", a.c), ("tau", a.tau)]),
    );
    doc.insert(
        "regime".into(),
        Value::from(classify(&params).regime.phase.label()),
    );
    doc.insert("K".into(), num(k));
    Ok(Output {
        stdout: render(doc),
        ..Output::default()
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))
}

/// `fekete`. Writes its outputs even when the run stops before `grad_tol`,
/// then reports non-convergence.
pub fn fekete_cmd(a: &FeketeArgs) -> (Output, Option<Failure>) {
    let run = || -> Result<(Output, bool), Failure> {
        let cfg = config::parse(&read(&a.config)?)?;
        let f = cfg.fekete;
        let res = minimize(&f)?;
        let all: Vec<Complex> = match f.ensemble {
            Ensemble::Complex => res.points.clone(),
            Ensemble::Symplectic => res.points.iter().flat_map(|&z| [z, z.conj()]).collect(),
        };
        let params = f.params;
        let cl = classify(&params);
        let droplet = build_droplet(&params, &cl).ok();
        let sizes = cluster_sizes(&all, cfg.margin);
        let mut header = vec![
            format!(
                "n_points={} ensemble={} p={} c={} tau={} seed={} max_iters={} grad_tol={} memory={}",
                f.n_points,
                match f.ensemble {
                    Ensemble::Complex => "complex",
                    Ensemble::Symplectic => "symplectic",
                },
                fmt(params.p()),
                fmt(params.c()),
                fmt(params.tau()),
                f.seed,
                f.max_iters,
                fmt(f.grad_tol),
                f.memory
            ),
            format!(
                "final_energy={} grad_norm={} iterations={} converged={}",
                fmt(res.final_energy),
                fmt(res.grad_norm),
                res.iterations,
                res.converged
            ),
            format!("regime={} margin={} cluster_sizes={:?}", cl.regime.phase.label(), fmt(cfg.margin), sizes),
        ];
        if let Some(d) = &droplet {
            let m = droplet_match(&all, d, cfg.margin);
            header.push(format!(
                "inside_fraction={} hole_violations={} hull_distance={}",
                fmt(m.inside_fraction),
                m.hole_violations,
                fmt(m.hull_distance)
            ));
        }
        let mut t = Table::new("fekete", &header, &["re", "im"]);
        for z in &res.points {
            t.row([fmt(z.re), fmt(z.im)]);
        }
        let mut out = Output::default();
        if let Some(path) = &a.svg {
            let mut fig = Figure::new();
            if let Some(d) = &droplet {
                for c in d.boundaries(512) {
                    fig.polygon(&c.points(), "black", component_name(c.component));
                }
            }
            fig.dots(&all, 0.15 / (all.len() as f64).sqrt(), "#cc3311");
            out.files.push((path.clone(), fig.finish("Fekete points")));
        }
        dest(&mut out, &a.out, t.finish());
        Ok((out, res.converged))
    };
    match run() {
        Ok((out, true)) => (out, None),
        Ok((out, false)) => (
            out,
            Some(Failure::NonConvergence(
                "grad_tol not reached within max_iters".into(),
            )),
        ),
        Err(f) => (Output::default(), Some(f)),
    }
}
