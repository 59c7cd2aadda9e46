use std::path::Path;
use std::process::{Command, Output};

use droplet_core::*;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_droplet-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = lab(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn as_f64(v: &serde_json::Value) -> f64 {
    v.to_string().parse().unwrap()
}

fn header_value(csv: &str, key: &str) -> Option<String> {
    csv.lines()
        .filter(|l| l.starts_with('#'))
        .flat_map(|l| l.split_whitespace())
        .find_map(|tok| tok.strip_prefix(&format!("{key}=")).map(str::to_string))
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn assert_well_formed(svg: &str) {
    let mut reader = quick_xml::Reader::from_str(svg);
    let mut saw_svg = false;
    loop {
        match reader.read_event().expect("well-formed XML") {
            quick_xml::events::Event::Eof => break,
            quick_xml::events::Event::Start(e) if e.name().as_ref() == b"svg" => {
                saw_svg = true;
                assert!(e.try_get_attribute("viewBox").unwrap().is_some());
            }
            _ => {}
        }
    }
    assert!(saw_svg);
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "--p", "0.3", "--c", "0.4", "--tau", "0.5"]);
    assert_eq!(v["schema"], "droplet-lab/1");
    assert_eq!(v["regime"], "I");
    let v = json(&["classify", "--p", "2", "--c", "1", "--tau", "0"]);
    assert_eq!(v["regime"], "II");
    assert!((as_f64(&v["a"]) - 0.41244672232463614).abs() < 1e-9);
    assert!((as_f64(&v["kappa"]) - 0.15780975929295038).abs() < 1e-9);
    assert!((as_f64(&v["R"]) - 1.018585616073016).abs() < 1e-9);
    assert_eq!(
        json(&["classify", "--p", "1.0", "--c", "0.4", "--tau", "0.5"])["regime"],
        "III"
    );
    assert_eq!(
        json(&["classify", "--p", "1.5", "--c", "0.4", "--tau", "0.5"])["regime"],
        "II"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        lab(&["classify", "--p", "0.3", "--c", "0.4", "--tau", "1.2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(lab(&["classify", "--p", "0.3"]).status.code(), Some(2));
    let out = lab(&["moments", "--z", "1.0", "--c", "0.4", "--tau", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported regime"));
    assert_eq!(
        lab(&["energy", "--p", "1.0", "--c", "0.4", "--tau", "0.5"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn numbers_use_seventeen_digits() {
    let v = json(&["kappa", "--a", "0.7", "--tau", "0.3"]);
    let s = v["kappa_cri"].to_string();
    let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17, "{s}");
    assert!((as_f64(&v["kappa_min"]) + 0.063).abs() < 1e-12);
}

#[test]
fn droplet_curves() {
    let out = stdout(&lab(&[
        "droplet", "--p", "0.3", "--c", "0.4", "--tau", "0.5", "--n", "64",
    ]));
    let mut curves: Vec<String> = data_rows(&out).into_iter().map(|r| r[0].clone()).collect();
    curves.dedup();
    assert_eq!(curves, ["outer", "inner"]);

    let out = stdout(&lab(&[
        "droplet", "--p", "2", "--c", "1", "--tau", "0.3", "--n", "64",
    ]));
    let area: f64 = header_value(&out, "area").unwrap().parse().unwrap();
    assert!((area - std::f64::consts::PI * (1.0 - 0.09)).abs() < 1e-6);
    assert!(data_rows(&out).iter().all(|r| r[0] == "outer"));

    let out = lab(&[
        "droplet",
        "--raw-map",
        "--a",
        "0.7",
        "--kappa",
        "0.45",
        "--tau",
        "0.3",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not univalent"));
    assert_eq!(
        header_value(&stdout(&out), "self_intersecting").as_deref(),
        Some("true")
    );

    assert_eq!(
        lab(&["droplet", "--p", "1.0", "--c", "0.4", "--tau", "0.5"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn svg_outputs_are_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let (a, b) = (path("d.svg"), path("s.svg"));
    assert!(lab(&[
        "droplet",
        "--p",
        "0.3",
        "--c",
        "0.4",
        "--tau",
        "0.5",
        "--svg",
        &a,
        "--out",
        &path("d.csv")
    ])
    .status
    .success());
    assert!(lab(&[
        "scan",
        "--tau",
        "0.3",
        "--np",
        "8",
        "--nc",
        "8",
        "--svg",
        &b,
        "--out",
        &path("s.csv")
    ])
    .status
    .success());
    for f in [a, b] {
        assert_well_formed(&std::fs::read_to_string(f).unwrap());
    }
}

#[test]
fn scan_is_deterministic_and_schedule_free() {
    let args = [
        "scan", "--tau", "0.6", "--np", "24", "--nc", "20", "--p-max", "2.5", "--c-max", "1.5",
    ];
    let par = stdout(&lab(&args));
    assert_eq!(par, stdout(&lab(&args)));
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    assert_eq!(par, stdout(&lab(&seq_args)));

    let zero = stdout(&lab(&["scan", "--tau", "0", "--np", "31", "--nc", "31"]));
    assert!(data_rows(&zero).iter().all(|r| r[2] != "III"));
}

#[test]
fn energy_curve_matches_library() {
    let out = stdout(&lab(&[
        "energy-curve",
        "--c",
        "0",
        "--tau",
        "0.5",
        "--n",
        "11",
    ]));
    assert!(data_rows(&out)
        .iter()
        .all(|r| r[2].parse::<f64>().unwrap() == 0.75));

    let out = stdout(&lab(&[
        "energy-curve",
        "--c",
        "0.15",
        "--tau",
        "0.3",
        "--n",
        "31",
    ]));
    let pc: f64 = header_value(&out, "critical_p").unwrap().parse().unwrap();
    assert_eq!(pc, regime1_max_p(0.15, 0.3).unwrap());
    for row in data_rows(&out) {
        let p: f64 = row[0].parse().unwrap();
        let lib = energy(&ModelParams::new(p, 0.15, 0.3).unwrap());
        match lib {
            Ok(r) => assert_eq!(row[2].parse::<f64>().unwrap(), r.energy),
            Err(_) => assert!(row[2].is_empty()),
        }
    }
}

#[test]
fn moments_identity_through_cli() {
    for (z, c, tau) in [("0.3", "0.4", "0.5"), ("2", "1", "0.3")] {
        let k = as_f64(&json(&["moments", "--z", z, "--c", c, "--tau", tau])["K"]);
        let e = as_f64(&json(&["energy", "--p", z, "--c", c, "--tau", tau])["energy"]);
        assert!((k - (0.75 - e)).abs() < 1e-12);
    }
}

#[test]
fn univalence_command() {
    assert_eq!(
        json(&["univalence", "--a", "0.7", "--kappa", "0.1", "--tau", "0.3"])["univalent"],
        true
    );
    assert_eq!(
        json(&[
            "univalence",
            "--a",
            "0.7",
            "--kappa",
            "-0.2",
            "--tau",
            "0.3"
        ])["univalent"],
        false
    );
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn fekete_run_and_non_convergence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "a.cfg",
        "# regime I run\nn_points=200\np=0.3\nc=0.4\ntau=0.5\nseed=1\nmemory=10\n",
    );
    let svg = dir.path().join("a.svg");
    let out = lab(&["fekete", "--config", &cfg, "--svg", svg.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = stdout(&out);
    assert_eq!(data_rows(&csv).len(), 200);
    let inside: f64 = header_value(&csv, "inside_fraction")
        .unwrap()
        .parse()
        .unwrap();
    assert!(inside >= 0.99);
    assert_eq!(header_value(&csv, "hole_violations").as_deref(), Some("0"));
    assert_well_formed(&std::fs::read_to_string(svg).unwrap());
    assert_eq!(csv, stdout(&lab(&["fekete", "--config", &cfg])));

    let short = write_config(
        dir.path(),
        "b.cfg",
        "n_points=50\nensemble=symplectic\np=0.3\nc=0.4\ntau=0.5\nmax_iters=2\n",
    );
    let out = lab(&["fekete", "--config", &short]);
    assert_eq!(out.status.code(), Some(4));
    let csv = stdout(&out);
    assert_eq!(header_value(&csv, "converged").as_deref(), Some("false"));
    assert!(data_rows(&csv)
        .iter()
        .all(|r| r[1].parse::<f64>().unwrap() > 0.0));

    let broken = write_config(dir.path(), "c.cfg", "n_points=50\np=0.3\n");
    assert_eq!(lab(&["fekete", "--config", &broken]).status.code(), Some(2));
}
