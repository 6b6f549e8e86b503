use spintau::cli::run_args;
use spintau::cli::Outcome;

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("spintau").chain(args.iter().copied()))
}

#[test]
fn kw_json_contains_the_seed() {
    let out = run(&["--no-cache", "correlators", "kw", "--gmax", "1", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains(r#"{"g":0,"k":[0,0,0],"v":"1"}"#), "{}", out.stdout);
    assert!(out.stdout.starts_with(r#"{"engine":"kw","#));
    assert!(out.stdout.ends_with('\n'));
}

#[test]
fn text_and_csv_tables() {
    let out = run(&["--no-cache", "correlators", "kw", "--gmax", "1", "--dmax", "3"]);
    assert!(out.stdout.lines().any(|l| l == "<tau_0 tau_0 tau_0>_0 = 1"));
    assert!(out.stdout.lines().any(|l| l == "<tau_1>_1 = 1/24"));
    let csv = run(&["--no-cache", "correlators", "bgw", "--gmax", "1", "--format", "csv"]);
    assert!(csv.stdout.starts_with("g,k,v\n"));
    assert!(csv.stdout.lines().any(|l| l == "1,0,1/8"), "{}", csv.stdout);
}

#[test]
fn volume_text() {
    let out = run(&["--no-cache", "volume", "--g", "1", "--n", "1", "--smax", "0"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim_end(), "V[1,1] = 1/8 + O(s^2)");
}

#[test]
fn tr_eta_worked_value() {
    let out = run(&["--no-cache", "tr", "--curve", "ck", "--gmax", "1", "--nmax", "1", "--eta"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("5/48"), "{}", out.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--no-cache", "volume", "--g", "0", "--n", "0"]).code, 2);
    assert_eq!(run(&["--no-cache", "volume", "--g", "0", "--n", "3", "--smax", "3"]).code, 2);
    assert_eq!(run(&["--no-cache", "tr", "--curve", "airy", "--eta"]).code, 2);
    assert_eq!(run(&["correlators", "nope"]).code, 2);
    assert_eq!(run(&["verify", "trr"]).code, 0);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
}

#[test]
fn verify_json_report() {
    let out = run(&["verify", "vanishing", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["suite"], "vanishing");
}
