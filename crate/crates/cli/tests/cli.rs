use std::io::Write;
use std::process::{Command, Output};

fn rithmo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rithmo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn csv_ints(text: &str, skip: usize) -> Vec<Vec<i64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').skip(skip).map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn fib_ranges() {
    let out = rithmo(&["fib", "0..14", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let values: Vec<i64> = csv_ints(&stdout(&out), 1).into_iter().map(|r| r[0]).collect();
    assert_eq!(values, [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377]);

    let out = rithmo(&["fib", "-6..6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let values: Vec<i64> = v.as_array().unwrap().iter().map(|e| e["value"].as_i64().unwrap()).collect();
    assert_eq!(values, [-8, 5, -3, 2, -1, 1, 0, 1, 1, 2, 3, 5, 8]);

    let out = rithmo(&["fib", "5..5", "--format", "csv"]);
    assert_eq!(stdout(&out), "k,fib\n5,5\n");

    assert_eq!(code(&rithmo(&["fib", "3..x"])), 2);
    assert_eq!(code(&rithmo(&["fib", "5..1"])), 2);
}

#[test]
fn fib_json_keeps_big_values_exact() {
    let out = rithmo(&["fib", "300..300", "--format", "json"]);
    let text = stdout(&out);
    assert!(text.contains("222232244629420445529739893461909967206666939096499764990979600"));
}

#[test]
fn armies_table() {
    let out = rithmo(&["table", "armies", "--format", "csv", "--check-boethius"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("m,label,2,4,6,8,3,5,7,9\n"));
    let rows = csv_ints(&text, 2);
    let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
    assert_eq!(col(0), [2, 4, 6, 9, 15, 25]);
    assert_eq!(col(7), [9, 81, 90, 100, 190, 361]);
    assert_eq!(rows.iter().map(Vec::len).sum::<usize>(), 48);
}

#[test]
fn extended_table() {
    let out = rithmo(&["table", "extended", "--rows", "15", "--format", "csv", "--check-boethius"]);
    assert_eq!(code(&out), 0);
    let rows = csv_ints(&stdout(&out), 2);
    assert_eq!(rows.len(), 15);
    assert_eq!(rows[13][0], 714);
    assert_eq!(rows[14][7], 15625);
    assert_eq!(rows[11][5], 2318);

    let out = rithmo(&["table", "extended", "--rows", "1", "--format", "csv"]);
    assert_eq!(csv_ints(&stdout(&out), 2), vec![vec![1; 8]]);

    let out = rithmo(&["table", "extended", "--rows", "4", "--generators", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["table"]["rows"][3]["values"][0], 30);

    assert_eq!(code(&rithmo(&["table", "extended", "--rows", "0"])), 2);
    assert_eq!(code(&rithmo(&["table", "extended", "--generators", "0"])), 2);
}

#[test]
fn verify_exit_codes() {
    let out = rithmo(&["verify", "cassini", "--m", "-200..200"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("401 cases, 0 violations"));

    let out = rithmo(&["verify", "row-sum", "--seed", "1,2", "--j", "1..99"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("|mu| = 1"));

    let out = rithmo(&["verify", "nosuch"]);
    assert_eq!(code(&out), 2);

    let out = rithmo(&["verify", "tagiuri-even", "--seed", "-3,7", "--seed", "2,5", "--m", "-5..5", "--k", "0..4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cases"], 2 * 11 * 5);

    let out = rithmo(&["verify", "catalan", "--m", "-3..3", "--k", "0..2", "--format", "csv"]);
    assert_eq!(stdout(&out), "identity,m,k,j,seed_a,seed_b,lhs,rhs,residual\n");
}

#[test]
fn verify_random_seed_flags() {
    let args = ["verify", "sum-of-squares", "--random-seeds", "5", "--rng-seed", "9", "--m", "1..20", "--format", "json"];
    let a = stdout(&rithmo(&args));
    let b = stdout(&rithmo(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["cases"], 100);
    assert_eq!(v["grid"]["seeds"]["rng_seed"], 9);
}

#[test]
fn classify_examples() {
    let out = rithmo(&["classify", "15", "9", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["canonical"]["kind"], "superpartient");
    assert_eq!((v["canonical"]["k"].as_i64(), v["canonical"]["n"].as_i64()), (Some(2), Some(3)));

    let out = rithmo(&["classify", "4", "2"]);
    assert!(stdout(&out).contains("multiple r=2"));
    let out = rithmo(&["classify", "5", "5"]);
    assert!(stdout(&out).contains("equal"));

    assert_eq!(code(&rithmo(&["classify", "0", "5"])), 2);
    assert_eq!(code(&rithmo(&["classify", "-4", "5"])), 2);
}

#[test]
fn progressions() {
    let out = rithmo(&["progressions", "4,6,8,12", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let kinds: Vec<&str> = v.as_array().unwrap().iter().map(|p| p["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"geometric_proportion"));
    assert!(!kinds.contains(&"geometric"));

    let out = rithmo(&["progressions", "1,2,3", "--format", "csv"]);
    assert_eq!(stdout(&out), "kind,t1,t2,t3,t4\narithmetic,1,2,3,\n");

    let a = stdout(&rithmo(&["progressions", "--armies", "--kind", "harmonic", "--format", "csv"]));
    let b = stdout(&rithmo(&["progressions", "--armies", "--kind", "harmonic", "--format", "csv"]));
    assert_eq!(a, b);
    assert!(a.lines().skip(1).all(|l| l.starts_with("harmonic,")));

    assert_eq!(code(&rithmo(&["progressions", ""])), 2);
    assert_eq!(code(&rithmo(&["progressions", "3,0,4"])), 2);
    assert_eq!(code(&rithmo(&["progressions"])), 2);
}

#[test]
fn convergence() {
    let out = rithmo(&["convergence", "--n", "2", "--m-max", "100", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["threshold_index"].as_i64().unwrap() <= 90);

    let out = rithmo(&["convergence", "--n", "3", "--direction", "backward", "--m-max", "60", "--precision", "20", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("index,ratio,abs_error_p20\n-60,"));

    let out = rithmo(&["convergence", "--n", "3", "--direction", "backward", "--m-max", "30"]);
    assert!(stdout(&out).contains("limit -0.61803398874989484820458683436563811772030917980576"));

    // the n = 2 sequence vanishes at index -5, so backward ratios are undefined there
    let out = rithmo(&["convergence", "--n", "2", "--direction", "backward", "--m-max", "30"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("index -5"));

    assert_eq!(code(&rithmo(&["convergence", "--n", "2", "--m-max", "3"])), 2);
    assert_eq!(code(&rithmo(&["convergence"])), 2);
}

#[test]
fn oeis_check() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# synthetic").unwrap();
    for (i, v) in [1, 1, 2, 4, 6, 9, 15, 25, 40].iter().enumerate() {
        writeln!(file, "{} {}", i + 1, v).unwrap();
    }
    let path = file.path().to_str().unwrap();
    let out = rithmo(&["oeis-check", path, "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["offset"], 2);
    assert_eq!(v["matched_prefix"], 9);

    let out = rithmo(&["oeis-check", path, "--n", "2", "--offset", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["matched_prefix"], 0);

    let empty = tempfile::NamedTempFile::new().unwrap();
    let out = rithmo(&["oeis-check", empty.path().to_str().unwrap(), "--n", "1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().nth(1).unwrap().contains(",0,0,"));

    assert_eq!(code(&rithmo(&["oeis-check", "/no/such/file", "--n", "1"])), 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "format = \"csv\"\nprecision = 15").unwrap();
    let path = cfg.path().to_str().unwrap();

    let out = rithmo(&["--config", path, "convergence", "--n", "2", "--m-max", "5"]);
    assert!(stdout(&out).starts_with("index,ratio,abs_error_p15\n"));

    let out = rithmo(&["--config", path, "fib", "1..2", "--format", "json"]);
    assert!(stdout(&out).trim_start().starts_with('['));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = \"red\"").unwrap();
    assert_eq!(code(&rithmo(&["--config", bad.path().to_str().unwrap(), "fib", "1..2"])), 2);
    assert_eq!(code(&rithmo(&["--config", "/no/such.toml", "fib", "1..2"])), 2);
}
