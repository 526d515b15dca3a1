use std::process::{Command, Output};

const PARAMS: [&str; 8] = ["--alpha", "3,7", "--eta", "10", "--k", "5", "--r", "3"];
const WORKED: &str = "60,60,53~,50~,47~,40,37~,33~,30,27~,23~,20,20~,10~,7~,3~";

fn bressoud(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bressoud"))
        .args(args)
        .env_remove("BRESSOUD_THREADS")
        .output()
        .expect("binary runs")
}

fn with_params<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter()
        .chain(PARAMS.iter())
        .chain(tail)
        .copied()
        .collect()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn phi_trace_json() {
    let o = bressoud(&with_params(
        &["phi"],
        &["--pi", WORKED, "--trace", "--format", "json"],
    ));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tau"], serde_json::json!([50, 30, 20, 10]));
    assert_eq!(v["mu"], "60,60,53~,47~,40,37~,33~,27~,23~,20,7~,3~");
    let ts: Vec<u64> = v["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["t"].as_u64().unwrap())
        .collect();
    assert_eq!(ts, vec![1, 2, 3, 5]);
}

#[test]
fn phi_trace_plain() {
    let o = bressoud(&with_params(&["phi"], &["--pi", WORKED, "--trace"]));
    let text = stdout(&o);
    assert!(
        text.starts_with("tau = (50,30,20,10)\nmu = (60,60,53~,47~,40,37~,33~,27~,23~,20,7~,3~)\n")
    );
    assert_eq!(text.lines().filter(|l| l.starts_with("step")).count(), 4);
}

#[test]
fn psi_recovers_worked_example() {
    let o = bressoud(&with_params(
        &["psi"],
        &[
            "--tau",
            "50,30,20,10",
            "--mu",
            "60,60,53~,47~,40,37~,33~,27~,23~,20,7~,3~",
            "--trace",
        ],
    ));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with(&format!("pi = ({WORKED})\n")));
    assert!(text.contains("InsertedPlain 30"));
}

#[test]
fn count_table() {
    let o = bressoud(&with_params(
        &["count", "--family", "B0bar"],
        &["--max-n", "10", "--format", "csv"],
    ));
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .filter(|l| !l.ends_with(",0"))
        .map(String::from)
        .collect();
    assert_eq!(rows, vec!["0,1", "3,1", "7,1", "10,3"]);
}

#[test]
fn verify_main_passes() {
    let o = bressoud(&with_params(
        &["verify", "--identity", "main"],
        &["--max-n", "40"],
    ));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("overall: PASS"));
}

#[test]
fn verify_classical_and_products() {
    for (id, j) in [
        ("classical", "0"),
        ("classical", "1"),
        ("gfBj", "1"),
        ("gfA0bar", "0"),
        ("factor", "0"),
    ] {
        let o = bressoud(&with_params(
            &["verify", "--identity", id],
            &["--j", j, "--max-n", "30"],
        ));
        assert_eq!(o.status.code(), Some(0), "{id}");
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = with_params(
        &["verify", "--identity", "main"],
        &["--max-n", "40", "--format", "json"],
    );
    let a = bressoud(&args);
    let b = bressoud(&args);
    let mut one_thread = args.clone();
    one_thread.extend(["--threads", "1"]);
    let c = bressoud(&one_thread);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["overall"], true);
    assert_eq!(v["per_n"].as_array().unwrap().len(), 41);
}

#[test]
fn threads_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_bressoud"))
        .args(with_params(&["roundtrip"], &["--max-n", "30"]))
        .env("BRESSOUD_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_bressoud"))
        .args(with_params(&["roundtrip"], &["--max-n", "3"]))
        .env("BRESSOUD_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bands_with_parity_and_types() {
    let grid = "80,80,80~,70,70~,67~,60,60~,55~,53~,50~,47~,45~,43~,37~,35~,27~,20,20,20~,13~,10~,7~,5~,3~";
    let o = bressoud(&[
        "bands", "--pi", grid, "--m", "4", "--alpha", "3,5,7", "--eta", "10", "--k", "5", "--r",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.ends_with("Even")).count(), 6);
    assert_eq!(text.lines().filter(|l| l.ends_with("Odd")).count(), 4);

    let mu3 = "60,60,53~,50~,47~,40,37~,33~,27~,23~,20,7~,3~";
    let o = bressoud(&with_params(
        &["bands"],
        &["--pi", mu3, "--m", "3", "--t", "3", "--format", "json"],
    ));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let typed: Vec<&serde_json::Value> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b.get("band_type").is_some())
        .collect();
    assert!(typed
        .iter()
        .any(|b| b["parts"] == "{27~,23~,20}" && b["band_type"] == "N"));
}

#[test]
fn invalid_input_exits_two() {
    let cases: Vec<Vec<&str>> = vec![
        with_params(&["phi"], &["--pi", "7,3"]),
        with_params(&["phi"], &["--pi", "10,7~,3~"]),
        with_params(&["psi"], &["--tau", "20,20", "--mu", "3~"]),
        with_params(&["verify", "--identity", "nonsense"], &[]),
        vec![
            "count", "--family", "B0bar", "--alpha", "3,6", "--eta", "10", "--k", "5", "--r", "3",
        ],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = bressoud(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
