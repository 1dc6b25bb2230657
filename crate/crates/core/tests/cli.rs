use std::process::{Command, Output};

fn rhocert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rhocert"))
        .args(args)
        .env("RHOCERT_SIEVE_LIMIT", "20000")
        .output()
        .expect("run rhocert")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.jsonl");
    let p = path.to_str().unwrap();
    let out = rhocert(&["verify", "--out", p]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("equality at n in {8, 9}"));
    assert!(text.contains("constant 141"));
    assert!(text.contains("n0 = 266"));

    let check = rhocert(&["check-cert", p]);
    assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));

    let original = std::fs::read_to_string(&path).unwrap();
    let tampered = original.replacen("\"pi_k\":15,", "\"pi_k\":16,", 1);
    assert_ne!(tampered, original);
    std::fs::write(&path, tampered).unwrap();
    let check = rhocert(&["check-cert", p]);
    assert_eq!(check.status.code(), Some(1));
    assert!(stdout(&check).contains("elimination_witness"));
}

#[test]
fn verify_fails_below_four_and_a_half() {
    let out = rhocert(&["verify", "--K", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict: FAIL"));
}

#[test]
fn verify_older_constant() {
    let out = rhocert(&["verify", "--K", "17/3", "--strategy", "counting-only"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("max C(n) = 17/3 at n = 9"));
}

#[test]
fn table_rows() {
    let out = rhocert(&["table", "--from", "8", "--to", "12", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<(String, String)> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].to_string(), f[2].to_string())
        })
        .collect();
    let expected: Vec<(String, String)> = [(8, 40), (9, 45), (10, 49), (11, 53), (12, 57)]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    assert_eq!(rows, expected);

    let out = rhocert(&["table", "--from", "1", "--to", "4", "--format", "records"]);
    let uppers: Vec<u64> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["upper"].as_u64().unwrap())
        .collect();
    assert_eq!(uppers, [2, 5, 8, 12]);

    let out = rhocert(&["table", "--from", "5", "--to", "7"]);
    let text = stdout(&out);
    assert!(text.contains("18") && text.contains("25") && text.contains("33"));
}

#[test]
fn table_range_errors() {
    assert_eq!(rhocert(&["table", "--from", "0", "--to", "3"]).status.code(), Some(2));
    assert_eq!(rhocert(&["table", "--from", "9", "--to", "8"]).status.code(), Some(2));
}

#[test]
fn crossover_and_corollary() {
    let out = rhocert(&["crossover"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("n0 = 266"));

    let out = rhocert(&["crossover", "--slope", "3"]);
    assert!(stdout(&out).contains("conditional"));

    let out = rhocert(&["corollary", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("constant: 141"));

    let out = rhocert(&["corollary", "--uniform-c", "7"]);
    let text = stdout(&out);
    assert!(
        text.contains("209.125") && text.contains("at n = 2") && text.contains("constant: 210"),
        "{text}"
    );
}

#[test]
fn usage_errors() {
    assert_eq!(rhocert(&["verify", "--slope", "4"]).status.code(), Some(2));
    assert_eq!(rhocert(&["verify", "--K", "five"]).status.code(), Some(2));
    assert_eq!(rhocert(&["crossover", "--K", "4"]).status.code(), Some(2));
    assert_eq!(rhocert(&["verify", "--sieve-limit", "100"]).status.code(), Some(2));
    assert_eq!(rhocert(&["check-cert", "/nonexistent/cert"]).status.code(), Some(2));
}

#[test]
fn sieve_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rhocert"))
        .args(["primes"])
        .env("RHOCERT_SIEVE_LIMIT", "30")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "1\t2\n2\t3\n3\t5\n4\t7\n5\t11\n6\t13\n7\t17\n8\t19\n9\t23\n10\t29\n");
}
