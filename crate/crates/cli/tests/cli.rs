use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perm132"))
        .args(args)
        .env_remove("PERM132_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gf_first_level() {
    let o = run(&["gf", "--occ", "1", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[0,0,0,1,5,21,84]\n");
}

#[test]
fn gf_csv() {
    let o = run(&["gf", "--occ", "0", "--order", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coefficient\n0,1\n1,1\n2,2\n3,5\n");
}

#[test]
fn shapes_up_to_two() {
    let o = run(&["shapes", "--max-occ", "2", "--verify-exceptional"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("{\"format_version\":1,\"max_occ\":2}"));
    let shapes: Vec<String> = lines
        .map(|l| {
            let start = l.find('[').unwrap() + 1;
            let end = l.find(']').unwrap();
            l[start..end].split(',').collect::<String>()
        })
        .collect();
    assert_eq!(
        shapes,
        ["1", "132", "1243", "1342", "1423", "2143", "35142"]
    );
}

#[test]
fn verify_catalan() {
    let o = run(&["verify", "--occ", "0", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for (n, c) in [1, 1, 2, 5, 14, 42, 132].iter().enumerate() {
        let row = text.lines().nth(n + 1).unwrap();
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(
            cols,
            [n.to_string().as_str(), &c.to_string(), &c.to_string(), "ok"]
        );
    }
}

#[test]
fn verify_restricted() {
    let o = run(&["verify", "--occ", "1", "--max-n", "7", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn closed_form_json_and_latex() {
    let o = run(&["closed-form", "--occ", "2"]);
    assert_eq!(
        stdout(&o),
        "{\"two_P\":[-4,6,2],\"two_Q\":[4,-30,58,-8,4],\"exponent_num\":-3,\"exponent_den\":2}\n"
    );
    let o = run(&["closed-form", "--occ", "1", "--format", "latex"]);
    assert_eq!(
        stdout(&o),
        "\\Psi_{1}(x)=\\frac{1}{2}\\left(x-1+\\left(-3x+1\\right)(1-4x)^{-1/2}\\right)\n"
    );
}

#[test]
fn restricted_series() {
    let o = run(&["restricted", "--occ", "0", "--k", "3", "--order", "6"]);
    assert_eq!(stdout(&o), "[1,1,2,4,8,16,32]\n");
}

#[test]
fn usage_errors() {
    for args in [
        &["gf", "--occ", "1", "--k", "3"][..],
        &["gf"][..],
        &["frobnicate"][..],
        &["gf", "--occ", "1", "--format", "xml"][..],
        &["verify", "--occ", "1", "--max-n", "11"][..],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn check_invariants_small() {
    let o = run(&["check-invariants", "--max-n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}

#[test]
fn conjectures_small() {
    let o = run(&["conjectures", "--max-occ", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(
        "r = 3: P, Q polynomial: true; 2P, 2Q integral: true; (1-4x) does not divide Q: true"
    ));
    assert!(text.contains("fewer entries than feasible cells: none"));
}

#[test]
fn output_independent_of_threads() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for t in ["1", "3"] {
        let path = dir.path().join(format!("catalog-{t}.jsonl"));
        let o = run(&[
            "shapes",
            "--max-occ",
            "4",
            "--threads",
            t,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        files.push(fs::read(&path).unwrap());
        let o = run(&["gf", "--occ", "3", "--order", "20", "--threads", t]);
        files.push(o.stdout);
    }
    assert_eq!(files[0], files[2]);
    assert_eq!(files[1], files[3]);
}

#[test]
fn catalog_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.jsonl");
    let p = path.to_str().unwrap();

    let fresh = run(&["gf", "--occ", "2", "--order", "8", "--catalog", p]);
    assert_eq!(fresh.status.code(), Some(0));
    assert!(fs::read_to_string(&path)
        .unwrap()
        .starts_with("{\"format_version\":1,\"max_occ\":2}"));

    let cached = run(&["gf", "--occ", "1", "--order", "8", "--catalog", p]);
    assert_eq!(stdout(&cached), "[0,0,0,1,5,21,84,330,1287]\n");
    assert!(cached.stderr.is_empty());

    let grown = run(&["gf", "--occ", "3", "--order", "8", "--catalog", p]);
    assert_eq!(grown.status.code(), Some(0));
    assert!(fs::read_to_string(&path)
        .unwrap()
        .starts_with("{\"format_version\":1,\"max_occ\":3}"));

    let text = fs::read_to_string(&path).unwrap();
    fs::write(
        &path,
        text.replacen("\"format_version\":1", "\"format_version\":0", 1),
    )
    .unwrap();
    let stale = run(&["gf", "--occ", "3", "--order", "8", "--catalog", p]);
    assert_eq!(stdout(&stale), stdout(&grown));
    assert!(String::from_utf8_lossy(&stale.stderr).contains("regenerating"));
}
