use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use cauchy_voronoi_cli::files::{DiagramFile, SiteFile};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cauchy-voronoi"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

fn sites(dir: &Path, name: &str, n: usize, seed: u64) -> PathBuf {
    ok(dir, &["gen", "--n", &n.to_string(), "--seed", &seed.to_string(), "--out", name]);
    dir.join(name)
}

fn attr_values(svg: &str, attr: &str) -> BTreeSet<String> {
    let key = format!("{attr}=\"");
    svg.match_indices(&key)
        .map(|(i, _)| {
            let rest = &svg[i + key.len()..];
            rest[..rest.find('"').unwrap()].to_string()
        })
        .collect()
}

fn polylines<'a>(svg: &'a str, class: &str) -> Vec<&'a str> {
    let key = format!(r#"<polyline class="{class}""#);
    svg.match_indices(&key)
        .map(|(i, _)| {
            let rest = &svg[i..];
            let rest = &rest[rest.find("points=\"").unwrap() + 8..];
            &rest[..rest.find('"').unwrap()]
        })
        .collect()
}

#[test]
fn gen_is_deterministic_and_fast() {
    let dir = tempfile::tempdir().unwrap();
    let a = ok(dir.path(), &["gen", "--n", "1024", "--seed", "42"]);
    let b = ok(dir.path(), &["gen", "--n", "1024", "--seed", "42"]);
    assert_eq!(a, b);
    let c = ok(dir.path(), &["gen", "--n", "1024", "--seed", "43"]);
    assert_ne!(a, c);
    let f: SiteFile = serde_json::from_str(&a).unwrap();
    assert_eq!(f.params().unwrap().len(), 1024);
    assert!(f.sites.iter().all(|s| (-5.0..=5.0).contains(&s.l) && (0.2..=5.0).contains(&s.s)));

    let start = Instant::now();
    cauchy_voronoi_cli::commands::generate(1024, 42, (-5.0, 5.0), (0.2, 5.0)).unwrap();
    assert!(start.elapsed().as_millis() < 100);

    let bad = run(dir.path(), &["gen", "--n", "3", "--s-min", "-1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn divergence_rows_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["divergence", "--a", "0,1", "--b", "0,2", "--check"]);
    for name in ["chi-square", "fisher-rao", "kl", "sqrt-kl", "flat", "flat-reverse", "chernoff-3"] {
        assert!(out.lines().any(|l| l.starts_with(&format!("{name} "))), "{name} missing:\n{out}");
    }
    assert!(out.contains("2.500000000000000e-1"));
    assert!(out.contains("3.141592653589793e0"));

    let only = ok(dir.path(), &["divergence", "--a", "-1,0.5", "--b", "2,3", "--which", "kl"]);
    assert_eq!(only.lines().count(), 3);
    assert_eq!(run(dir.path(), &["divergence", "--a", "0,0", "--b", "0,1"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["divergence", "--a", "0,1", "--b", "0,1", "--which", "nope"]).status.code(), Some(2));
}

#[test]
fn two_sites_give_one_straight_klein_bisector() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("two.json"),
        r#"{"format":"cauchy-voronoi/1","sites":[{"l":-1,"s":1},{"l":1,"s":1}]}"#,
    )
    .unwrap();
    ok(dir.path(), &["voronoi", "--input", "two.json", "--svg", "two.svg"]);
    let svg = read(dir.path(), "two.svg");
    let b = polylines(&svg, "bisector");
    assert_eq!(b.len(), 1, "{svg}");
    assert_eq!(b[0].split_whitespace().count(), 2);
    // mirror-image locations sit mirrored across a diameter, which is their bisector
    let ys: Vec<f64> = b[0].split_whitespace().map(|p| p.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!((ys[0] - 400.0).abs() < 0.01 && (ys[1] - 400.0).abs() < 0.01);
    assert_eq!(attr_values(&svg, "data-cell").len(), 2);
}

#[test]
fn adjacency_is_the_same_in_every_model() {
    let dir = tempfile::tempdir().unwrap();
    sites(dir.path(), "s.json", 24, 11);
    let mut sets = Vec::new();
    for model in ["klein", "poincare", "uhp"] {
        let name = format!("{model}.svg");
        ok(dir.path(), &["delaunay", "--input", "s.json", "--model", model, "--svg", &name]);
        let svg = read(dir.path(), &name);
        assert_eq!(attr_values(&svg, "data-site").len(), 24);
        sets.push(attr_values(&svg, "data-edge"));
    }
    assert!(!sets[0].is_empty());
    assert_eq!(sets[0], sets[1]);
    assert_eq!(sets[0], sets[2]);
}

#[test]
fn flat_reverse_renders_in_the_half_plane_only() {
    let dir = tempfile::tempdir().unwrap();
    sites(dir.path(), "s.json", 12, 5);
    ok(dir.path(), &["voronoi", "--input", "s.json", "--kind", "flat-reverse", "--svg", "fr.svg", "--empty-circles"]);
    let svg = read(dir.path(), "fr.svg");
    assert!(svg.contains("kind=flat-reverse"));
    assert_eq!(attr_values(&svg, "data-cell").len(), 12);
    let bad = run(dir.path(), &["voronoi", "--input", "s.json", "--kind", "flat-reverse", "--model", "klein", "--svg", "x.svg"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!dir.path().join("x.svg").exists());
}

#[test]
fn diagram_files_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    sites(dir.path(), "s.json", 30, 2);
    ok(dir.path(), &["delaunay", "--input", "s.json", "--out", "a.json", "--svg", "a.svg", "--model", "poincare"]);
    ok(dir.path(), &["delaunay", "--input", "s.json", "--out", "b.json"]);
    assert_eq!(read(dir.path(), "a.json"), read(dir.path(), "b.json"));
    let file: DiagramFile = serde_json::from_str(&read(dir.path(), "a.json")).unwrap();
    assert_eq!(file.provenance.seed, Some(2));
    assert!(file.delaunay.is_some());

    ok(dir.path(), &["delaunay", "--diagram", "a.json", "--svg", "c.svg", "--model", "poincare"]);
    assert_eq!(read(dir.path(), "a.svg"), read(dir.path(), "c.svg"));

    std::fs::write(dir.path().join("broken.json"), "{\"format\": \"cauchy-voronoi/1\",\n  \"generators\": [}").unwrap();
    let out = run(dir.path(), &["voronoi", "--diagram", "broken.json", "--svg", "d.svg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn verify_passes_and_detects_problems() {
    let dir = tempfile::tempdir().unwrap();
    sites(dir.path(), "s.json", 40, 9);
    let out = ok(dir.path(), &["verify", "--input", "s.json", "--trials", "2000", "--json", "r.json"]);
    assert_eq!(out.lines().filter(|l| l.contains(" PASS ")).count(), 6, "{out}");
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "r.json")).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["results"].as_array().unwrap().len(), 6);

    let perturbed = run(dir.path(), &["verify", "--input", "s.json", "--checks", "empty-sphere", "--perturb"]);
    assert_eq!(perturbed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&perturbed.stdout).contains("FAIL"));

    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"format":"cauchy-voronoi/1","sites":[{"l":0,"s":1},{"l":0,"s":-2}]}"#,
    )
    .unwrap();
    let bad = run(dir.path(), &["verify", "--input", "bad.json"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("sites[1]"));
    assert_eq!(run(dir.path(), &["verify", "--input", "missing.json"]).status.code(), Some(2));
}

#[test]
fn classify_picks_the_nearest_site() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("s.json"),
        r#"{"format":"cauchy-voronoi/1","sites":[{"l":-4,"s":1},{"l":4,"s":1}],"labels":["left","right"]}"#,
    )
    .unwrap();
    std::fs::write(dir.path().join("x.txt"), "# near the right site\n3.0 4.0 5.0\n3.5 4.5\n").unwrap();
    let out = ok(dir.path(), &["classify", "--sites", "s.json", "--samples", "x.txt"]);
    assert!(out.starts_with("site 1 (right)"), "{out}");
    std::fs::write(dir.path().join("x.json"), "[-5, -4, -3]").unwrap();
    let out = ok(dir.path(), &["classify", "--sites", "s.json", "--samples", "x.json", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["index"], 0);
    std::fs::write(dir.path().join("bad.txt"), "1 2\nthree\n").unwrap();
    let bad = run(dir.path(), &["classify", "--sites", "s.json", "--samples", "bad.txt"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
}

#[test]
fn transform_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["plot-transforms", "--out", "t.svg", "--samples", "200"]);
    assert!(out.contains("nonincreasing"), "{out}");
    let svg = read(dir.path(), "t.svg");
    let curves = polylines(&svg, "curve");
    assert!(curves.len() >= 2);
    let (_, witness) = cauchy_voronoi_cli::render::render_transforms(200).unwrap();
    assert!(witness.windows(2).all(|w| w[1][1] <= w[0][1]));
}
