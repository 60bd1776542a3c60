mod common;

#[test]
fn documented_commands_match_golden_output() {
    let results = common::run_goldens();
    assert!(results.len() >= 50, "golden cases missing");
    let bad: Vec<String> = results.iter().filter(|r| !r.matched).map(|r| format!("{}\n{}", r.name, r.diff)).collect();
    assert!(bad.is_empty(), "{}", bad.join("\n\n"));
}
