use std::path::Path;
use std::process::{Command, Output};

use hamming_energy::io::{parse_function, write_function};
use hamming_energy::spectral::fourier_inverse;
use hamming_energy::{Normalization, Point, Spectrum};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamming-energy")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn mu_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["mu", "--n", "2", "--k", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "E=8 |A|=2 mu=1/2 (0.5)\n");
    let o = run(&["mu", "--n", "4", "--k", "2"], dir.path());
    assert!(stdout(&o).starts_with("E=168 |A|=6 mu=7/24"));
}

#[test]
fn energy_of_a_set_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s.txt"), "n=3\n# weight one\n001\n010\n100\n").unwrap();
    let o = run(&["energy", "--set", "s.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "E=21 |A|=3\n");
}

#[test]
fn transform_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("f.txt"), "n=3\n011 0.5\n101 -1.25\n").unwrap();
    let o = run(&["transform", "--fn", "f.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let spectrum_text = stdout(&o);
    let hat = parse_function(&spectrum_text).unwrap();
    assert_eq!(hat.at(Point(0)), (0.5 - 1.25) / 8.0);
    let spectrum = Spectrum::new(3, hat.into_values(), Normalization::Expectation).unwrap();
    let back = fourier_inverse(&spectrum).unwrap();
    assert_eq!(back.at(Point(0b011)), 0.5);
    assert_eq!(back.at(Point(0b101)), -1.25);

    std::fs::write(dir.path().join("hat.txt"), spectrum_text).unwrap();
    let o = run(&["transform", "--fn", "hat.txt", "--inverse"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_function(&stdout(&o)).unwrap(), back);
}

#[test]
fn compress_writes_function_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("f.txt"), "n=3\n011 0.5\n101 -1.25\n").unwrap();
    let o = run(&["compress", "--fn", "f.txt", "--trace", "t.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let g = parse_function(&stdout(&o)).unwrap();
    let values: Vec<f64> = [0b011, 0b101, 0b110].iter().map(|&x| g.at(Point(x))).collect();
    assert!(values.iter().all(|v| (v - values[0]).abs() < 1e-11));
    assert_eq!(g.support().count(), 3);

    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("sweep,pair_i,pair_j,max_change,u2_fourth,l2"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.len() == 6));
    assert_eq!(&rows[0][..3], ["1", "1", "2"]);
    assert_eq!(rows.len() % 3, 0);
}

#[test]
fn optimize_finds_the_constant_value() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["optimize", "--n", "4", "--k", "2", "--starts", "4", "--seed", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let best = text.lines().find_map(|l| l.strip_prefix("best_ratio=")).unwrap();
    let best: f64 = best.split_whitespace().next().unwrap().parse().unwrap();
    assert!((best - 7.0 / 24.0).abs() < 1e-7);
}

#[test]
fn lemma_and_duality_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["lemma-test", "--n", "4", "--k", "2", "--trials", "5"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["pair_checks"], 30);

    std::fs::write(dir.path().join("s.txt"), "n=4\n0011\n0101\n1001\n").unwrap();
    let o = run(&["duality-test", "--n", "4", "--set", "s.txt", "--trials", "5"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["support_size"], 3);
}

#[test]
fn verify_json_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--n-max", "3", "--trials", "2", "--seed", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["cells"].as_array().unwrap().len(), 10);
    assert_eq!(v["cells"][4]["mu_exact"], "1/2");
}

#[test]
fn usage_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["mu", "--n", "3", "--k", "5"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["energy", "--set", "missing.txt"], dir.path()).status.code(), Some(2));

    std::fs::write(dir.path().join("bad.txt"), "n=3\n011 1\n0111 2\n").unwrap();
    let o = run(&["compress", "--fn", "bad.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn function_files_written_by_the_library_parse_in_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let f = hamming_energy::DenseFunction::delta(2, Point(0b10), 1.0).unwrap();
    std::fs::write(dir.path().join("d.txt"), write_function(&f)).unwrap();
    let o = run(&["compress", "--fn", "d.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let g = parse_function(&stdout(&o)).unwrap();
    assert_eq!(g.at(Point(0b01)), g.at(Point(0b10)));
}
