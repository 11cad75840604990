use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rootradii"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rootradii")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(path).unwrap()
}

/// Rows of whitespace-separated integers.
fn rows(text: &str) -> Vec<Vec<i128>> {
    text.lines().map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect()).collect()
}

fn stat_lines(text: &str) -> Vec<(&str, &str)> {
    text.lines()
        .filter(|l| l.starts_with(|c: char| c.is_ascii_alphabetic()))
        .map(|l| l.split_once(' ').unwrap())
        .collect()
}

fn without_timings(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("t_")).map(|l| format!("{l}\n")).collect()
}

#[test]
fn risolate_wilkinson_8_with_stats() {
    let out = stdout(&["risolate", "--gen", "wilkinson:8", "--stats"]);
    let roots: Vec<_> = out.lines().filter(|l| l.starts_with(|c: char| c.is_ascii_digit() || c == '-')).collect();
    assert_eq!(roots.len(), 8);
    for (i, line) in roots.iter().enumerate() {
        let v: Vec<i128> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
        assert_eq!(v.len(), 5);
        let k = i as i128 + 1;
        assert!(v[0] <= k * v[1] && k * v[3] <= v[2], "root {k} not in {line}");
        assert_eq!(v[4], 1);
    }
    let keys: Vec<&str> = stat_lines(&out).iter().map(|(k, _)| *k).collect();
    for k in ["n_t0", "n_tstar", "t_radii", "t_total"] {
        assert!(keys.contains(&k), "missing stat {k}");
    }
}

#[test]
fn ccluster_grid_2() {
    let out = stdout(&["ccluster", "--gen", "grid:2", "--epsilon", "1/9007199254740992"]);
    let r = rows(&out);
    assert_eq!(r.len(), 25);
    let mut lattice = Vec::new();
    for v in &r {
        assert_eq!(v.len(), 7);
        assert_eq!(v[6], 1);
        // radius <= 2^-53
        assert!(v[4] * (1 << 53) <= v[5]);
        let re = v[0] as f64 / v[1] as f64;
        let im = v[2] as f64 / v[3] as f64;
        lattice.push((re.round() as i64, im.round() as i64));
    }
    lattice.sort();
    lattice.dedup();
    assert_eq!(lattice.len(), 25);
}

#[test]
fn radii_wilkinson_3() {
    let out = stdout(&["radii", "--gen", "wilkinson:3", "--delta", "1/9"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    let mut radii = [1.0, 2.0, 3.0].to_vec();
    for l in lines {
        let f: Vec<&str> = l.split_whitespace().collect();
        let (lo, hi): (f64, f64) = (f[1].parse().unwrap(), f[2].parse().unwrap());
        radii.retain(|&r| !(lo <= r && r <= hi));
    }
    assert!(radii.is_empty(), "unbracketed radii {radii:?}");
}

#[test]
fn radii_accepts_gaussian_center() {
    let out = stdout(&["radii", "--gen", "wilkinson:3", "--center", "i"]);
    assert!(!out.is_empty());
    let bad = run(&["radii", "--gen", "wilkinson:3", "--center", "1.5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn gen_random_matches_golden() {
    assert_eq!(stdout(&["gen", "--gen", "random:8:8:1"]), golden("random_8_8_1.txt"));
    assert_eq!(stdout(&["gen", "--gen", "random:8:8:9", "--seed", "1"]), golden("random_8_8_1.txt"));
}

/// Sign of the golden polynomial at `n / d`, computed exactly.
fn sign_at(coeffs: &[i128], n: i128, d: i128) -> i128 {
    let deg = coeffs.len() as u32 - 1;
    let v: i128 = coeffs.iter().enumerate().map(|(j, c)| c * n.pow(j as u32) * d.pow(deg - j as u32)).sum();
    v.signum()
}

#[test]
fn risolate_golden_output_is_stable_and_correct() {
    let poly = golden("random_8_8_1.txt");
    let coeffs: Vec<i128> = rows(&poly)[1..].iter().map(|v| v[1]).collect();
    let expect = golden("random_8_8_1.rri");
    for threads in ["1", "3"] {
        assert_eq!(stdout(&["--threads", threads, "risolate", "--gen", "random:8:8:1"]), expect);
    }
    for v in rows(&expect) {
        assert_eq!(v[4], 1);
        let a = sign_at(&coeffs, v[0], v[1]);
        let b = sign_at(&coeffs, v[2], v[3]);
        assert!(a * b < 0, "no sign change on {v:?}");
    }
}

#[test]
fn classic_and_radii_agree_on_roots() {
    let a = stdout(&["risolate", "--gen", "bernoulli:24", "--mode", "classic"]);
    let b = stdout(&["risolate", "--gen", "bernoulli:24", "--mode", "radii"]);
    assert_eq!(rows(&a).len(), rows(&b).len());
}

#[test]
fn stats_are_deterministic_up_to_timings() {
    let args = ["risolate", "--gen", "mignotte:16:8", "--stats"];
    assert_eq!(without_timings(&stdout(&args)), without_timings(&stdout(&args)));
}

#[test]
fn poly_file_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("p.txt");
    fs::write(&poly, "# (x-1)(x+2)\n2\n0 -2\n1 1\n2 1\n").unwrap();
    let out = dir.path().join("roots.txt");
    stdout(&["risolate", "--poly", poly.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let r = rows(&fs::read_to_string(&out).unwrap());
    assert_eq!(r.len(), 2);
    assert!(r[0][0] <= -2 * r[0][1] && -2 * r[0][3] <= r[0][2]);
    assert!(r[1][0] <= r[1][1] && r[1][3] <= r[1][2]);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("bad.txt");
    fs::write(&poly, "3\n0 1\nx\n").unwrap();
    let out = run(&["risolate", "--poly", poly.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    for args in [
        &["risolate", "--gen", "nope:3"][..],
        &["risolate", "--gen", "wilkinson:3", "--mode", "fast"],
        &["risolate", "--gen", "wilkinson:3", "--delta", "-1"],
        &["ccluster", "--gen", "grid:1", "--epsilon", "0"],
        &["risolate", "--poly", "/nonexistent/p.txt"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn precision_cap_exits_3() {
    let out = bin()
        .args(["risolate", "--gen", "mignotte:16:16"])
        .env("ROOTRADII_PREC_CAP", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn bench_rows() {
    let out = stdout(&["bench", "--families", "bernoulli", "--sizes", "64,128"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "family,mode,d,tau,real_roots,n_t0,n_tstar,t_radii,t_total");
    assert_eq!(lines.len(), 5);
    let tests = |l: &str| -> u64 {
        let f: Vec<&str> = l.split(',').collect();
        f[5].parse::<u64>().unwrap() + f[6].parse::<u64>().unwrap()
    };
    for pair in lines[1..].chunks(2) {
        assert!(pair[0].contains(",classic,") && pair[1].contains(",radii,"));
        assert!(tests(pair[1]) < tests(pair[0]), "{pair:?}");
    }

    let out = stdout(&["bench", "--families", "wilkinson,mignotte", "--sizes", "64", "--modes", "radii"]);
    let cols: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(cols[0][4], "64");
    assert_eq!(cols[1][4], "4");
}
