use std::fs;
use std::process::{Command, Output};

use torelli_cli::{
    parse_points, render_csv, scan, DatumType, Format, ScanArgs, CSV_HEADER, EXIT_DOMAIN, EXIT_FILE,
    EXIT_MALFORMED_NUMBER, EXIT_NOT_EXCLUDED, EXIT_USAGE,
};

fn torelli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torelli")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> u8 {
    o.status.code().expect("exit code") as u8
}

#[test]
fn exclude_orthogonal_boundary() {
    let o = torelli(&["exclude", "--type", "so", "--d", "6", "--n", "1", "--copies", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("excluded by so_degree"));
}

#[test]
fn exclude_not_excluded_exit_code() {
    let o = torelli(&["exclude", "--type", "so", "--d", "5", "--n", "1"]);
    assert_eq!(code(&o), EXIT_NOT_EXCLUDED);
    let o = torelli(&["exclude", "--type", "su", "--d", "4", "--n", "2", "--m", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["criterion"], "su_main_inequality");
    assert_eq!(v["margin"], "0/1");
}

#[test]
fn branch_listing() {
    let o = torelli(&["branch", "su", "--n", "3", "--m", "2"]);
    assert_eq!(stdout(&o).trim(), "Std x2, Trivial x2");
    let o = torelli(&["branch", "spin", "--dim-h", "7", "--part", "full"]);
    assert_eq!(stdout(&o).trim(), "Std x4");
}

#[test]
fn scan_cardinality_and_header() {
    let o = torelli(&["scan", "--type", "su", "--d-max", "2", "--n-max", "2", "--m-max", "2", "--copies-max", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(lines.count(), 6);
}

#[test]
fn scan_is_deterministic_and_ordered() {
    let args = ScanArgs {
        kind: DatumType::So,
        d_max: 7,
        n_max: 4,
        m_max: None,
        copies_max: 2,
        v0_max: 4,
        format: Format::Csv,
        out: None,
    };
    let a = scan(&args).unwrap();
    let b = scan(&args).unwrap();
    assert_eq!(render_csv(&a), render_csv(&b));
    let keys: Vec<_> = a.iter().map(|r| (r.d, r.n, r.part.map(|p| p.label()), r.copies, r.dim_v0)).collect();
    let mut sorted = keys.clone();
    sorted.sort_by_key(|x| (x.0, x.1));
    assert_eq!(keys, sorted);
    // d = 6, 7 rows are all excluded, d <= 5 rows with V0 = 0 are not
    for r in &a {
        if r.d >= 6 {
            assert!(r.excluded, "{}", r.csv_row());
        } else if r.dim_v0 == 0 {
            assert!(!r.excluded, "{}", r.csv_row());
        }
    }

    let one = torelli(&["scan", "--type", "so", "--d-max", "3", "--n-max", "3", "--format", "json"]);
    let two = torelli(&["scan", "--type", "so", "--d-max", "3", "--n-max", "3", "--format", "json"]);
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn scan_json_fields_match_csv_header() {
    let o = torelli(&["scan", "--type", "su", "--d-max", "1", "--n-max", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rec = v.as_array().unwrap()[0].as_object().unwrap();
    let fields: Vec<&str> = rec.keys().map(String::as_str).collect();
    assert_eq!(fields.join(","), CSV_HEADER);
    assert_eq!(rec["margin"], "-10/1");
}

#[test]
fn scan_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let o = torelli(&["scan", "--type", "su", "--d-max", "1", "--n-max", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text, format!("{CSV_HEADER}\nsu,1,1,1,,1,0,2,2,0,false,su_main_inequality,-10\n"));
}

#[test]
fn hn_hull_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pts.txt");
    fs::write(&path, "# subobjects\n1 3\n2 4\n1 1/2\n3 4\n").unwrap();
    let o = torelli(&["hn", "hull", "--points", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("vertices: (0,0) (1,3) (2,4) (3,4)"));
    assert!(text.contains("mu_f: 0"));
}

#[test]
fn point_parser_rejects_garbage() {
    assert!(parse_points("1 2/3\n\n4 -5").is_ok());
    assert!(parse_points("1 2/0").is_err());
    assert!(parse_points("x 2").is_err());
    assert!(parse_points("1 2 3").is_err());
}

#[test]
fn clifford_check_is_seeded() {
    let a = torelli(&["clifford", "check", "--coeffs", "1,-2,3/5", "--trials", "40", "--seed", "11"]);
    let b = torelli(&["clifford", "check", "--coeffs", "1,-2,3/5", "--trials", "40", "--seed", "11"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("pass: 40 trials"));
}

#[test]
fn error_exit_codes() {
    assert_eq!(code(&torelli(&["rank", "--type", "su", "--d", "1", "--n", "1", "--frob"])), EXIT_USAGE);
    assert_eq!(code(&torelli(&["rank", "--type", "su", "--d", "one", "--n", "1", "--m", "1"])), EXIT_MALFORMED_NUMBER);
    assert_eq!(code(&torelli(&["clifford", "check", "--coeffs", "1,x"])), EXIT_MALFORMED_NUMBER);
    assert_eq!(code(&torelli(&["hn", "hull", "--points", "/definitely/missing"])), EXIT_FILE);
    assert_eq!(code(&torelli(&["rank", "--type", "su", "--d", "1", "--n", "2", "--m", "3"])), EXIT_DOMAIN);
    assert_eq!(code(&torelli(&["rank", "--type", "so", "--d", "1", "--n", "2", "--part", "na"])), EXIT_DOMAIN);
    assert_eq!(code(&torelli(&["verify", "--suite", "nope"])), EXIT_USAGE);
    let o = torelli(&["rank", "--type", "su", "--d", "0", "--n", "1", "--m", "1"]);
    assert_eq!(code(&o), EXIT_DOMAIN);
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "one-line diagnostic: {err}");
}

#[test]
fn rank_json_uses_integers() {
    let o = torelli(&["rank", "--type", "so", "--d", "6", "--n", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["curve_C"]["g"], 12);
    assert_eq!(v["curve_C"]["rank_f"], 2);
    assert_eq!(v["subvariety_M"]["rank_u"], 10);
}

#[test]
fn verify_single_suite() {
    let o = torelli(&["verify", "--suite", "weights"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 2);
}
