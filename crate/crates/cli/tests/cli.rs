//! End-to-end runs of the `implicitize` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_implicitize"))
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// A scratch directory unique to one test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("implicitize-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &std::path::Path, file: &str, text: &str) -> PathBuf {
    let path = dir.join(file);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn trivial_problem() {
    let dir = scratch("trivial");
    let input = write(&dir, "line.prob", "params: t\nx1 = t\nx2 = t\n");
    for alg in ["elimth", "direct", "classical", "ratpar-elimth", "ratpar-direct", "modular-elimth", "single-prime"] {
        let o = run(&["run", "--input", input.to_str().unwrap(), "--algorithm", alg, "--verify", "--kv"]);
        assert!(o.status.success(), "{alg}: {}", String::from_utf8_lossy(&o.stderr));
        let out = stdout(&o);
        assert!(out.contains("len=2\n"), "{alg}: {out}");
        assert!(out.contains("verification=verified"), "{alg}: {out}");
        assert!(out.contains("result=x1 - x2"), "{alg}: {out}");
    }
}

#[test]
fn report_fields() {
    let input = corpus_dir().join("dandrea.prob");
    let o = run(&["run", "--input", input.to_str().unwrap(), "--char", "32003", "--kv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for key in ["input=", "algorithm=direct", "char=32003", "elapsed=", "len=6", "verification=skipped", "result="] {
        assert!(out.contains(key), "missing {key}: {out}");
    }
    let o = run(&["run", "--input", input.to_str().unwrap(), "--algorithm", "modular-direct", "--char", "0", "--kv"]);
    assert!(stdout(&o).contains("primes=2"), "{}", stdout(&o));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["run"]).status.code(), Some(2));
    let input = corpus_dir().join("dandrea.prob");
    let input = input.to_str().unwrap();
    assert_eq!(run(&["run", "--input", input, "--algorithm", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["run", "--input", input, "--primes", "a,b"]).status.code(), Some(2));
    let o = run(&["run", "--input", input, "--algorithm", "modular-direct", "--char", "32003"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["run", "--input", "/nonexistent/problem.prob"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn distinct_exit_codes() {
    let dir = scratch("exit");
    let free = write(&dir, "free.prob", "params: t1 t2\nx1 = t1\nx2 = t2\n");
    let o = run(&["run", "--input", free.to_str().unwrap(), "--algorithm", "direct", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));

    let bad = write(&dir, "bad.prob", "params: t1 t2\nx1 = t1^3\nx2 = t2^3\nx3 = t1 + t2\n");
    let o = run(&["run", "--input", bad.to_str().unwrap(), "--algorithm", "modular-elimth", "--primes", "4,1"]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["run", "--input", bad.to_str().unwrap(), "--algorithm", "modular-elimth", "--primes", "32003,20"]);
    assert!(o.status.success());

    let heavy = corpus_dir().join("robbiano.prob");
    let o = run(&["run", "--input", heavy.to_str().unwrap(), "--algorithm", "classical", "--char", "32003", "--budget", "0.2"]);
    assert_eq!(o.status.code(), Some(5), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn empty_corpus_gives_an_empty_table() {
    let dir = scratch("empty");
    let expect = write(&dir, "none.tsv", "# nothing here\n");
    let o = run(&["corpus", "--dir", dir.to_str().unwrap(), "--expect", expect.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2, "{out}");
}

#[test]
fn corpus_rows() {
    let dir = scratch("rows");
    let expect = write(&dir, "mixed.tsv", "dandrea\t6\norecchia\t10\nrobbiano\t319\n");
    let o = run(&[
        "corpus",
        "--dir",
        corpus_dir().to_str().unwrap(),
        "--expect",
        expect.to_str().unwrap(),
        "--algorithm",
        "classical",
        "--char",
        "32003",
        "--budget",
        "0.2",
        "--workers",
        "2",
        "--kv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("name=dandrea expected=6 len=6") && out.contains("status=PASS"), "{out}");
    assert!(out.contains("name=orecchia expected=10 len=9") && out.contains("status=FAIL"), "{out}");
    assert!(out.contains("name=robbiano expected=319 len=-") && out.contains("status=SKIP"), "{out}");

    let expect = write(&dir, "passing.tsv", "dandrea\t6\nrobbiano\t319\n");
    let o = run(&[
        "corpus",
        "--dir",
        corpus_dir().to_str().unwrap(),
        "--expect",
        expect.to_str().unwrap(),
        "--algorithm",
        "classical",
        "--char",
        "32003",
        "--budget",
        "0.2",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn corpus_over_the_rationals() {
    let dir = scratch("rationals");
    let expect = write(&dir, "small.tsv", "dandrea\t6\nbohemian\t7\nsine\t7\n");
    for alg in ["modular-elimth", "modular-direct", "single-prime", "direct"] {
        let o = run(&[
            "corpus",
            "--dir",
            corpus_dir().to_str().unwrap(),
            "--expect",
            expect.to_str().unwrap(),
            "--algorithm",
            alg,
            "--char",
            "0",
        ]);
        assert!(o.status.success(), "{alg}: {}", stdout(&o));
        assert_eq!(stdout(&o).matches("PASS").count(), 3, "{alg}: {}", stdout(&o));
    }
}
