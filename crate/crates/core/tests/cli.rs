use std::path::Path;
use std::process::Command;

use nfabc::cli::report::read_csv;

/// Runs the binary on a whitespace-separated command line.
fn nfabc(line: &str) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nfabc"))
        .args(line.split_whitespace())
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    (code, String::from_utf8_lossy(&out.stdout).into_owned())
}

fn code(line: &str) -> i32 {
    nfabc(line).0
}

#[test]
fn factor_codes() {
    let (c, out) = nfabc("factor --field Q(i) --x 5");
    assert_eq!(c, 0);
    assert_eq!(out.matches("norm=5").count(), 2);
    assert_eq!(code("factor --x 0"), 1);
    assert_eq!(code("factor --field Q(sqrt(-5)) --x 3"), 2);
    assert_eq!(code("factor --x abc"), 1);
}

#[test]
fn height_codes() {
    let (c, out) = nfabc("height --field Q --x 3/4");
    assert_eq!(c, 0);
    assert!(out.contains("h=1.38629436112"));
    let (c, out) = nfabc("height --coords 2,16,18");
    assert_eq!(c, 0);
    assert!(out.contains("H=9\n"), "{out}");
    assert_eq!(code("height --coords 0,0,0"), 1);
    assert_eq!(code("height --field Q(sqrt(-6)) --x 1"), 2);
}

#[test]
fn radical_codes() {
    let (c, out) = nfabc("radical --field Q --a 1 --b 8 --c -9");
    assert_eq!(c, 0);
    assert!(out.contains("G=6\n"));
    let (c, out) = nfabc("radical --x 1 --y 8 --z 9");
    assert_eq!(c, 0);
    assert!(out.contains("G=6\n"));
    assert_eq!(code("radical --a 2 --b 4 --c -6"), 1);
    assert_eq!(code("radical --a 1 --b 1 --c 1"), 1);
    assert_eq!(code("radical --a 1"), 1);
}

#[test]
fn abc_check_example_and_codes() {
    let (c, out) = nfabc("abc-check --theorem 2 --field Q --a 1 --b 8 --c -9 --C 1");
    assert_eq!(c, 0);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let margin: f64 = row[15].parse().unwrap();
    assert!((margin - (18f64.sqrt() - 9f64.ln())).abs() < 1e-9);
    assert_eq!(code("abc-check --theorem 4 --a 1 --b 8 --c -9"), 1);
    assert_eq!(code("abc-check --theorem 1 --a 1 --b 8 --c -9 --C -1"), 1);
}

#[test]
fn corollary_codes() {
    let (c, out) = nfabc("corollary --id 3 --a 5 --b 27 --c -32");
    assert_eq!(c, 0);
    assert!(out.contains("holds=true"));
    assert_eq!(code("corollary --id 8 --alpha 0.5 --a 5 --b 27 --c -32"), 3);
    // sorted (1, 8, 9) has N_b = 2 < N_c = 3
    assert_eq!(code("corollary --id 3 --a 1 --b 8 --c -9"), 3);
    assert_eq!(code("corollary --id 6 --alpha 0.9 --a 5 --b 27 --c -32"), 1);
}

#[test]
fn auxiliary_bound_codes() {
    let (c, out) = nfabc("tidy --x 10");
    assert_eq!(c, 0);
    assert!(out.contains("bound=46.0517018599"));
    assert_eq!(code("tidy --x -1"), 1);
    let yu = "yu-bound --degree 1 --e-p 1 --norm-p 2 --heights 1 --B 10";
    assert_eq!(code(&format!("{yu} --n 1")), 0);
    assert_eq!(code(&format!("{yu} --n 2")), 1);
    let (c, out) = nfabc("landau --field Q(i) --R 5");
    assert_eq!(c, 0);
    assert!(out.contains("first_norms=2 5 5 9 13"));
    assert_eq!(code("landau --R 0"), 1);
}

#[test]
fn sml_codes() {
    let (c, out) = nfabc("sml decide --c1 10 --c2 -31 --c3 30 --a0 31 --a1 112 --a2 452 --C 1");
    assert_eq!(c, 0);
    assert!(out.lines().last().unwrap().starts_with("NoZerosUpToBound,"));
    let (c, out) = nfabc("sml decide --c1 10 --c2 -31 --c3 30 --a0 1 --a1 0 --a2 -12");
    assert_eq!(c, 0);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("ZerosFound,") && last.ends_with(",1"));
    // irreducible, degenerate, repeated root, c3 = 0
    assert_eq!(
        code("sml decide --c1 0 --c2 0 --c3 2 --a0 1 --a1 1 --a2 1"),
        2
    );
    assert_eq!(
        code("sml decide --c1 2 --c2 1 --c3 -2 --a0 1 --a1 2 --a2 3"),
        3
    );
    assert_eq!(
        code("sml decide --c1 4 --c2 -5 --c3 2 --a0 1 --a1 2 --a2 3"),
        1
    );
    assert_eq!(
        code("sml decide --c1 1 --c2 1 --c3 0 --a0 1 --a1 2 --a2 3"),
        1
    );
}

#[test]
fn xyz_round_trip_and_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("xyz.csv");
    let line = format!(
        "xyz search --P 5 --limit 10000 --phi 1 --workers 3 --out {}",
        path.display()
    );
    let (c, out) = nfabc(&line);
    assert_eq!(c, 0);
    assert!(out.contains("lemma9_violations=0"));
    let (header, rows) = read_csv(&path).unwrap();
    assert_eq!(header, nfabc::xyz::CSV_HEADER.map(String::from).to_vec());
    let direct = nfabc::xyz::enumerate_triples(5, 10_000, 1).unwrap();
    assert_eq!(rows.len(), direct.len());
    for (row, t) in rows.iter().zip(&direct) {
        assert_eq!(
            row[..3],
            [t.x.to_string(), t.y.to_string(), t.z.to_string()]
        );
        assert_eq!(row[4], t.g.to_string());
        let log_h: f64 = row[6].parse().unwrap();
        assert!((log_h - t.log_h()).abs() <= 1e-11 * log_h.max(1.0));
    }
    assert_eq!(code("xyz search --P 4 --limit 100"), 1);
    assert_eq!(code("xyz search --P 5 --limit 100 --phi 9"), 1);
}

#[test]
fn abc_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    let base = "abc-check --theorem 3 --field Q(i)";
    let lines = [
        format!("{base} --a 1 --b 1+w --c -2-w --out {}", first.display()),
        format!(
            "{base} --input {} --out {}",
            first.display(),
            second.display()
        ),
    ];
    for l in &lines {
        assert_eq!(code(l), 0, "{l}");
    }
    let read = |p: &Path| read_csv(p).unwrap();
    assert_eq!(read(&first), read(&second));
}

#[test]
fn calibrate_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# defaults\nC_main = 2.5\nG_min = 20\n").unwrap();
    let (c, out) = nfabc(&format!(
        "calibrate --theorem 2 --h-max 200 --config {}",
        cfg.display()
    ));
    assert_eq!(c, 0);
    assert!(out.contains("C="));
    let tidy = format!("tidy --x 2 --config {}", cfg.display());
    std::fs::write(&cfg, "C_main = -1\n").unwrap();
    assert_eq!(code(&tidy), 1);
    std::fs::write(&cfg, "mystery = 1\n").unwrap();
    assert_eq!(code(&tidy), 1);
    assert_eq!(code("calibrate --theorem 2"), 1);
    assert_eq!(code("tidy --x 2 --config /nonexistent/run.cfg"), 1);
}
