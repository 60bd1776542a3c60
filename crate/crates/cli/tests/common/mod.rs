use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fock(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fock")).args(args).output().expect("run fock")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Exit code, stdout and stderr of one run, in the golden-file layout.
pub fn transcript(args: &[String]) -> String {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = fock(&refs);
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

pub struct GoldenResult {
    pub name: String,
    pub matched: bool,
    pub diff: String,
}

/// Runs every `*.args` case; with `FOCK_BLESS=1` rewrites the `.out` files instead.
pub fn run_goldens() -> Vec<GoldenResult> {
    let bless = std::env::var("FOCK_BLESS").is_ok_and(|v| v == "1");
    let mut cases: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .expect("golden dir")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "args"))
        .collect();
    cases.sort();
    cases
        .into_iter()
        .map(|case| {
            let args: Vec<String> = std::fs::read_to_string(&case).expect("args").lines().map(String::from).collect();
            let got = transcript(&args);
            let out_path = case.with_extension("out");
            if bless {
                std::fs::write(&out_path, &got).expect("write golden");
            }
            let want = std::fs::read_to_string(&out_path).unwrap_or_default();
            let name = case.file_stem().unwrap().to_string_lossy().into_owned();
            let matched = got == want;
            let diff = if matched { String::new() } else { format!("expected:\n{want}\ngot:\n{got}") };
            GoldenResult { name, matched, diff }
        })
        .collect()
}
