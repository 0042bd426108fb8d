use std::process::{Command, Output};

fn clif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clif")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_results_and_exits_zero() {
    let o = clif(&["eval", "-s", "2,0,0", "-e", "e1 e2 e1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-e2\n");
    let o = clif(&["eval", "-s", "2,0,0", "-e", "exp(0.5*3.14159265*e12)"]);
    assert_eq!(stdout(&o), "e12\n");
    let o = clif(&["eval", "-s", "3,0,0", "-e", "a = e1 + e2", "-e", "a a"]);
    assert_eq!(stdout(&o), "a = e1 + e2\n2\n");
    let o = clif(&["-p", "3", "eval", "-e", "exp(e1)"]);
    assert_eq!(stdout(&o), "1.54 + 1.18e1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(clif(&["eval", "-e", "e1 +"]).status.code(), Some(1));
    assert_eq!(clif(&["eval", "-s", "2,0,0", "-e", "e3"]).status.code(), Some(1));
    assert_eq!(clif(&["eval", "-e", "inv(e1 + e12)"]).status.code(), Some(2));
    assert_eq!(clif(&["eval", "-e", "nope"]).status.code(), Some(2));
    assert_eq!(clif(&["eval", "-s", "9,9,9", "-e", "1"]).status.code(), Some(1));
    assert_eq!(clif(&["bogus"]).status.code(), Some(1));
    assert_eq!(clif(&["table", "-s", "7,0,0"]).status.code(), Some(1));
    assert_eq!(clif(&["json", "import", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(clif(&["--help"]).status.code(), Some(0));
    let o = clif(&["eval", "-e", "e1 +"]);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: syntax error at column 5"));
}

#[test]
fn table_output() {
    let o = clif(&["table", "-s", "2,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<String>> =
        stdout(&o).lines().map(|l| l.replace('|', " ").split_whitespace().map(String::from).collect()).collect();
    assert_eq!(rows[0], ["1", "e1", "e2", "e12"]);
    assert_eq!(rows[3], ["e2", "e2", "-e12", "1", "-e1"]);
}

#[test]
fn json_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("clif-json-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bindings.json");
    let path = file.to_str().unwrap();
    let o =
        clif(&["json", "export", "-s", "4,1,0", "-e", "x = point(1,2,3)", "-e", "t = translator(0,0,1)", "-o", path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = clif(&["json", "import", path, "-e", "apply(t, x) <| point(1,2,4)"]);
    assert_eq!(stdout(&o), "0\n");
    let o = clif(&["eval", "--load", path, "-e", "x"]);
    assert_eq!(stdout(&o), "e1 + 2e2 + 3e3 + 6.5e4 + 7.5e5\n");
    std::fs::write(&file, "{not json").unwrap();
    assert_eq!(clif(&["json", "import", path]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repl_reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_clif"))
        .args(["repl", "-s", "3,0,0"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"meet(e1^e2, e2^e3)\n:sig 2 0 0\ne3\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("e2\nCl(2,0,0)\nerror: syntax error"), "{text}");
}
