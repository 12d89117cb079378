use std::path::Path;
use std::process::{Command, Output};

const EULER: &str = r#"{"ancestor":"zero","a":[1],"b":[0,0,0],"m":2}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biliaison"))
        .args(args)
        .env_remove("BILIAISON_STRICT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn sequence_examples() {
    let o = run(&["seq", "join", "[1,3,4]", "[2,2]"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), (r#"{"seq":[1,2,4]}"#, 0));
    let o = run(&["seq", "meet", "[1,3,4]", "[2,2]", "--oracle"]);
    assert_eq!(stdout(&o), r#"{"seq":[2,3]}"#);
    let o = run(&["seq", "meet", "[]", "[5]"]);
    assert_eq!(stdout(&o), r#"{"seq":[]}"#);
    let o = run(&["seq", "le", "[1,1]", "[2,2,2]"]);
    assert_eq!(stdout(&o), r#"{"le":false,"witness":1}"#);
    let o = run(&["seq", "le", "[2,3]", "[1,3,4]"]);
    assert_eq!(stdout(&o), r#"{"le":true}"#);
    let o = run(&["seq", "sigma", "[1,3,4]", "--l", "3"]);
    assert_eq!(stdout(&o), r#"{"l":3,"sigma":2}"#);
}

#[test]
fn unsorted_input_sorted_or_rejected() {
    let o = run(&["seq", "join", "[4,1,3]", "[2,2]"]);
    assert_eq!(stdout(&o), r#"{"seq":[1,2,4]}"#);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let o = run(&["--strict", "seq", "join", "[4,1,3]", "[2,2]"]);
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_biliaison"))
        .args(["seq", "join", "[4,1,3]", "[2,2]"])
        .env("BILIAISON_STRICT", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains(r#""code":"unsorted""#));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let o = run(&["seq", "join", "[1.5]", "[2]"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed_json"));
    assert_eq!(code(&run(&["seq", "frobnicate"])), 2);
    assert_eq!(code(&run(&["seq", "join", "no-such-file.json", "[2]"])), 2);
}

#[test]
fn necessary_example() {
    let o = run(&[
        "minimal",
        "necessary",
        "--c",
        "[1,1,1]",
        "--a",
        "[2,2,2]",
        "--rank-e",
        "5",
        "--m",
        "3",
    ]);
    assert_eq!(
        stdout(&o),
        r#"{"verdict":"NOT_MINIMAL","witness_degree":1,"c_prime":[1,1]}"#
    );
    assert_eq!(code(&o), 1);
    let o = run(&[
        "minimal",
        "necessary",
        "--c",
        "[1,1,1]",
        "--a",
        "[1,1,2]",
        "--rank-e",
        "5",
        "--m",
        "3",
    ]);
    assert_eq!(stdout(&o), r#"{"verdict":"PASS","c_prime":[1,1]}"#);
    assert_eq!(code(&o), 0);
}

#[test]
fn euler_hilbert_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let euler = write(dir.path(), "euler.json", EULER);
    let o = run(&["--ambient", "pn:2", "class", "hilbert", &euler, "--l", "0"]);
    assert_eq!(stdout(&o), r#"{"l":0,"hilbert":3}"#);
    let o = run(&[
        "--ambient",
        "pn:2",
        "class",
        "hilbert",
        &euler,
        "--l",
        "-1",
        "--to",
        "2",
    ]);
    assert_eq!(stdout(&o), r#"{"from":-1,"to":2,"hilbert":[0,3,8,15]}"#);
    let o = run(&["class", "hilbert", &euler, "--l", "0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing_ambient"));
}

#[test]
fn build_output_round_trips() {
    let o = run(&["--ambient", "pn:2", "class", "build", EULER]);
    let built = stdout(&o);
    assert!(
        built.contains(r#""sigma":{"deltas":{"0":3,"1":-1}},"rank":2"#),
        "{built}"
    );
    let again = run(&["class", "build", &built]);
    assert_eq!(stdout(&again), built);
}

#[test]
fn compare_and_meet() {
    let f = r#"{"ancestor":"zero","a":[2],"b":[0,1],"m":1}"#;
    let g = r#"{"ancestor":"zero","a":[3],"b":[1,1],"m":1}"#;
    let o = run(&["class", "compare", f, g]);
    assert_eq!(stdout(&o), r#"{"preceq":false,"succeq":false,"witness":0}"#);
    let o = run(&["class", "meet", f, g]);
    assert!(
        stdout(&o).contains(r#""sigma":{"deltas":{"1":2,"2":-1}}"#),
        "{}",
        stdout(&o)
    );
    let o = run(&["class", "meet", f, g, "--join"]);
    assert!(
        stdout(&o).contains(r#""sigma":{"deltas":{"0":1,"1":1,"3":-1}}"#),
        "{}",
        stdout(&o)
    );
}

#[test]
fn chain_make_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let start = write(
        dir.path(),
        "start.json",
        r#"{"ancestor":"zero","a":[3],"b":[0,0,2,4],"m":2}"#,
    );
    let min = write(
        dir.path(),
        "min.json",
        r#"{"ancestor":"zero","a":[],"b":[0],"m":2}"#,
    );
    let chain = dir.path().join("chain.json");
    let o = run(&[
        "chain",
        "make",
        &start,
        &min,
        "--out",
        chain.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&chain).unwrap();
    assert_eq!(
        text.trim_end(),
        r#"[{"move":"reduce","s":[0,4]},{"move":"elem","a":2,"b":3,"level":2}]"#
    );
    let o = run(&["chain", "check", &start, chain.to_str().unwrap(), &min]);
    assert_eq!(code(&o), 0);
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2], r#"{"passed":true,"steps":2}"#);

    let o = run(&["chain", "check", &start, "[]", &start]);
    assert_eq!(stdout(&o), r#"{"passed":true,"steps":0}"#);
    let o = run(&["chain", "check", &start, "[]", &min]);
    assert_eq!(code(&o), 1);
    let o = run(&[
        "chain",
        "check",
        &start,
        r#"[{"move":"reduce","s":[0]},{"move":"reduce","s":[4]}]"#,
        &min,
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("rank_changed_more_than_once"));
}

#[test]
fn sufficient_with_descriptor_file() {
    let dir = tempfile::tempdir().unwrap();
    let kerq = write(
        dir.path(),
        "kerq.json",
        r#"{"name":"ker q","rank":7,"e":-2,"h0":{"low":-2,"table":[5],"rule":"none"},"ambient":"pn:4"}"#,
    );
    let f = r#"{"ancestor":"ker q","a":[-2,-2,-2,-2,-2],"m":2}"#;
    let o = run(&[
        "--ancestor",
        &kerq,
        "minimal",
        "sufficient",
        f,
        "--minimal-rank",
    ]);
    assert_eq!(stdout(&o), r#"{"verdict":"MINIMAL","window":[-2,-2]}"#);
    let o = run(&["--ancestor", &kerq, "minimal", "sufficient", f]);
    assert_eq!(stdout(&o), r#"{"verdict":"UNKNOWN","window":[-2,-2]}"#);
}

#[test]
fn pool_and_bound() {
    let pool = format!(
        "[{EULER},{}]",
        r#"{"ancestor":"zero","a":[0,2],"b":[0,0,0,0],"m":2}"#
    );
    let o = run(&["--ambient", "pn:2", "minimal", "pool", &pool]);
    let out = stdout(&o);
    assert!(out.contains(r#""attained_by":0"#), "{out}");
    let o = run(&[
        "--ambient",
        "pn:2",
        "minimal",
        "bound",
        EULER,
        "--lower",
        "0",
        "--upper",
        "3",
    ]);
    assert_eq!(stdout(&o), r#"{"bound":10,"lower":0,"upper":3}"#);
}

#[test]
fn sigma_commands() {
    let o = run(&["sigma", "from-pair", "--b", "[0,0,0]", "--a", "[1]"]);
    assert_eq!(stdout(&o), r#"{"deltas":{"0":3,"1":-1}}"#);
    let o = run(&[
        "sigma",
        "leq",
        r#"{"deltas":{"0":1}}"#,
        r#"{"deltas":{"1":1}}"#,
    ]);
    assert_eq!(stdout(&o), r#"{"leq":false,"witness":0}"#);
    let o = run(&["sigma", "table", r#"{"deltas":{"0":3,"1":-1}}"#]);
    assert_eq!(stdout(&o), r#"{"table":[[0,3],[1,2]],"eventual":2}"#);
    let o = run(&[
        "sigma",
        "validate",
        r#"{"deltas":{"-1":1,"0":-2}}"#,
        "--e",
        "0",
        "--rank-e",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let o = run(&[
        "sigma",
        "validate",
        r#"{"deltas":{"-1":-1}}"#,
        "--e",
        "0",
        "--rank-e",
        "2",
    ]);
    assert_eq!(code(&o), 1);
}
