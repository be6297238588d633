use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use qseries::cli::SeriesDocument;
use qseries::radial::RootOfUnity;
use rug::ops::Pow;
use rug::Float;
use serde_json::Value;

fn spec(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/specs")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qseries"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn num(v: &Value) -> f64 {
    v.as_str().expect("numbers are strings").parse().unwrap()
}

#[test]
fn limit_both_modes_agree() {
    let out = run(&[
        "limit",
        &spec("alternating_n2.json"),
        "--mode",
        "both",
        "--precision",
        "128",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "1");
    assert_eq!(r["results"]["classification"], "Converges");
    assert_eq!(num(&r["results"]["closed"]["re"]), 0.5);
    assert!((num(&r["results"]["numeric"]["re"]) - 0.5).abs() < 1e-6);
    assert!(num(&r["results"]["difference"]) < 1e-6);
}

#[test]
fn limit_exit_codes() {
    let out = run(&["limit", &spec("alternating_n2_sixth_root.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["results"]["classification"], "Diverges");

    let out = run(&["limit", &spec("lacunary_a10.json"), "--mode", "closed"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["results"]["classification"], "Oscillates");

    assert_eq!(
        run(&["limit", &spec("empty_period.json")]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["limit", "/definitely/missing.json"]).status.code(),
        Some(4)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(
        run(&["limit", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["limit"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn asympt_geometric_and_theta() {
    let out = run(&[
        "asympt",
        &spec("geometric.json"),
        "--order",
        "3",
        "--em-depth",
        "3",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let terms = r["results"]["terms"].as_array().unwrap();
    let coeff = |lattice: i64| {
        let t = terms.iter().find(|t| t["lattice"] == lattice).unwrap();
        num(&t["coefficient"]["re"])
    };
    assert_eq!(coeff(0), 0.5);
    assert_eq!(coeff(1), 0.25);
    assert_eq!(coeff(2), 0.0);
    assert!((coeff(3) + 1.0 / 48.0).abs() < 1e-15);
    assert!(r["results"]["verification"]["slope"].as_f64().unwrap() >= 4.0);

    let r = json(&run(&["asympt", &spec("theta_n2.json"), "--order", "0"]));
    let first = &r["results"]["terms"][0];
    assert_eq!(first["exponent"], "-1/2");
    assert!((num(&first["coefficient"]["re"]) - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);

    assert_eq!(
        run(&["asympt", &spec("lacunary_a10.json")]).status.code(),
        Some(2)
    );
}

#[test]
fn lacunary_reports() {
    let r = json(&run(&[
        "lacunary",
        &spec("lacunary_a10.json"),
        "--rmax",
        "8",
    ]));
    let res = &r["results"];
    assert_eq!(res["inequality_holds"], true);
    assert_eq!(res["verdict"], "not convergent");
    let gap =
        num(&res["per_residue"][0]["lower_value"]) - num(&res["per_residue"][0]["upper_value"]);
    assert!(num(&res["separation"]) > gap);

    let out = run(&["lacunary", &spec("lacunary_a10.json"), "--base", "1.1"]);
    let r = json(&out);
    assert_eq!(r["results"]["inequality_holds"], false);
    assert_eq!(r["results"]["verdict"], "inconclusive");

    assert_eq!(
        run(&["lacunary", &spec("constant_lacunary.json")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["lacunary", &spec("alternating_n2.json")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn qint_modes() {
    let r = json(&run(&["qint", "--c", "1", "--q", "0.9"]));
    assert!((num(&r["results"]["value"]) - 0.1 / 0.19).abs() < 1e-15);
    let r = json(&run(&["qint", "--pair", "t,2t", "--q", "0.99"]));
    assert_eq!(r["results"]["squeezed"], true);
    assert!((num(&r["results"]["sum"]) - 0.3367).abs() < 1e-4);
    assert_eq!(run(&["qint", "--q", "0.9"]).status.code(), Some(2));
    assert_eq!(
        run(&["qint", "--c", "1", "--q", "1.5"]).status.code(),
        Some(2)
    );
}

fn read_rows(path: &std::path::Path, prec: u32) -> Vec<Vec<Float>> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines()
        .skip(1)
        .map(|l| {
            l.split(',')
                .map(|c| Float::with_val(prec, Float::parse(c).unwrap()))
                .collect()
        })
        .collect()
}

#[test]
fn plot_rectangles_lacunary_corner_identity() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rect.csv");
    let out = run(&[
        "plot",
        &spec("lacunary_a2.json"),
        "--what",
        "rectangles",
        "--q",
        "0.9",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("rect.svg").exists());
    let rows = read_rows(&csv, 256);
    assert!(rows.len() >= 3);
    // M = 2 for a = 2, k = 2, j = 0
    for r in &rows {
        let diff = Float::with_val(256, Float::with_val(256, (&r[2]).pow(2u32)) - &r[3]).abs();
        assert!(diff < 1e-20, "{}", diff);
        let low = Float::with_val(256, Float::with_val(256, r[1].sqrt_ref()) - &r[3]).abs();
        assert!(low < 1e-20);
    }
}

#[test]
fn plot_rectangles_geometric_partition() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("geo.csv");
    let out = run(&[
        "plot",
        &spec("geometric.json"),
        "--q",
        "0.5",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for (n, r) in read_rows(&csv, 256).iter().enumerate().take(20) {
        assert_eq!(r[0], n as u32);
        assert_eq!(r[1], Float::with_val(256, 0.5f64.powi(n as i32 + 1)));
        assert_eq!(r[2], Float::with_val(256, 0.5f64.powi(n as i32)));
    }
}

#[test]
fn plot_convergence_reaches_half() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("conv.csv");
    let out = run(&[
        "plot",
        &spec("alternating_n2.json"),
        "--what",
        "convergence",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = read_rows(&csv, 256);
    let smallest = rows
        .iter()
        .min_by(|a, b| a[0].partial_cmp(&b[0]).unwrap())
        .unwrap();
    assert!((smallest[0].to_f64() - 1e-4).abs() < 1e-12);
    assert!((smallest[1].to_f64() - 0.5).abs() < 1e-3);
}

#[test]
fn unwritable_output_is_exit_4() {
    let out = run(&[
        "plot",
        &spec("alternating_n2.json"),
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&[
        "limit",
        &spec("alternating_n2.json"),
        "--out",
        "/nonexistent-dir/r.json",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reports_are_deterministic() {
    let args = ["limit", &spec("cubic_omega.json"), "--precision", "192"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let timed = json(&run(&["qint", "--c", "2", "--q", "0.5", "--timing"]));
    assert!(timed["wall_time_s"].is_number());
    assert!(json(&run(&["qint", "--c", "2", "--q", "0.5"]))
        .get("wall_time_s")
        .is_none());
}

#[test]
fn csv_and_out_file() {
    let out = run(&["qint", "--c", "1/2", "--q", "0.5", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("schema,1\n"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&[
        "qint",
        "--c",
        "1/2",
        "--q",
        "0.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.stdout.is_empty());
    assert_eq!(
        serde_json::from_str::<Value>(&std::fs::read_to_string(path).unwrap()).unwrap()["schema"],
        "1"
    );
}

#[test]
fn spec_files_round_trip() {
    for name in [
        "alternating_n2.json",
        "alternating_n2_sixth_root.json",
        "cubic_omega.json",
        "lacunary_a10.json",
    ] {
        let doc = SeriesDocument::read(std::path::Path::new(&spec(name))).unwrap();
        let (s, xi) = doc.to_spec(256).unwrap();
        let again = SeriesDocument::from_spec(&s, &xi);
        assert_eq!(again.to_spec(256).unwrap(), (s, xi));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip(
        poly in prop::collection::vec((-50i64..50, 1i64..12), 1..5),
        lead in (1i64..50, 1i64..12),
        values in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 1..6),
        root in prop::option::of((-7i64..7, 1u64..9)),
        prec in 64u32..300,
    ) {
        let mut coeffs: Vec<String> = poly.iter().map(|(p, q)| format!("{p}/{q}")).collect();
        coeffs.push(format!("{}/{}", lead.0, lead.1));
        let doc = SeriesDocument {
            coefficients: qseries::cli::document::CoefficientsDoc {
                period: values.len(),
                values: values.iter().map(|(a, b)| [format!("{a:e}"), format!("{b}")]).collect(),
            },
            exponent: qseries::cli::document::ExponentDoc::Polynomial { coefficients: coeffs },
            root_of_unity: root.map(|(p, n)| qseries::cli::document::RootDoc { p, n }),
        };
        let (s, xi) = doc.to_spec(prec).unwrap();
        let back = SeriesDocument::from_spec(&s, &xi);
        let reparsed = SeriesDocument::from_json(&back.to_json()).unwrap();
        prop_assert_eq!(&reparsed, &back);
        let (s2, xi2) = reparsed.to_spec(prec).unwrap();
        prop_assert_eq!(s2, s);
        prop_assert_eq!(xi2, xi);
        if xi.is_one() {
            prop_assert_eq!(xi, RootOfUnity::one());
        }
    }
}
