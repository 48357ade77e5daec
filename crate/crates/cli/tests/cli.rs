use std::process::{Command, Output};

fn graphcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphcalc")).args(args).env_remove("GRAPHCALC_MAX_CLASSES").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn combinatorial_genus_two() {
    let o = graphcalc(&["stable-poly", "--g", "2", "--comb"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "5/24*s^3 + 1/8*s^2");
}

#[test]
fn full_suite_passes() {
    let o = graphcalc(&["verify", "all", "--trunc", "Dx=3,Ds=3,G=2", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(", 0 failed"));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = graphcalc(&["stable-poly", "--g", "2", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    let o = graphcalc(&["psi", "--r", "2", "--trunc", "Dx=1,Ds=1", "--init", "builtin:comb"]);
    assert_eq!(o.status.code(), Some(2));
    let o = graphcalc(&["psi", "--trunc", "Dx=1", "--init", "builtin:comb"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["psi", "--r", "2", "--trunc", "Dx=2,Ds=2,G=2", "--connected"];
    let a = graphcalc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, graphcalc(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["trunc"], "Dx=2,Ds=2,G=2");
    assert!(!v["terms"].as_array().unwrap().is_empty());
}

#[test]
fn layer_formula_agrees_with_counting_function() {
    let genus = graphcalc(&["genus", "--g", "2", "--trunc", "Dx=2,Ds=3", "--init", "builtin:comb", "--format", "text"]);
    let counting = graphcalc(&["counting", "--g", "2", "--kind", "comb", "--trunc", "Dx=2,Ds=3", "--format", "text"]);
    assert_eq!(genus.status.code(), Some(0));
    assert_eq!(stdout(&genus), stdout(&counting));
}

#[test]
fn class_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_graphcalc"))
        .args(["enumerate", "--trunc", "Dx=2,Ds=2,G=1"])
        .env("GRAPHCALC_MAX_CLASSES", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("class limit"));
}

#[test]
fn asymptotic_table() {
    let o = graphcalc(&["verify", "asymptotic", "--quartic", "--G", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "hbar\tnumeric\tpartial_sum\terror\torder");
    assert_eq!(rows.len(), 5);
    assert!(rows[1].starts_with("1/10\t-1.1762509728053"));
}
