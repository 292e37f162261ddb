use std::process::Command;

fn fraclag(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fraclag")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn nodes_emits_provenance_and_rows() {
    let (code, out, _) = fraclag(&["nodes", "--theta", "0", "--beta", "20", "--gamma", "1/3"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("# fraclag "));
    assert!(lines.next().unwrap().starts_with("# config {\"command\":\"nodes\""));
    assert_eq!(lines.next().unwrap(), "panel,sweep_value,theta,beta,gamma,M,index,x");
    assert_eq!(lines.count(), 81);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("fraclag-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = fraclag(&["proj-frac", "--function", "u2_exp", "--m-min", "4", "--m-max", "8", "--out", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(body.contains("\ncustom,u2_exp,figure,u2_exp,"));
    assert_eq!(body.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn validation_errors_exit_1() {
    for args in [
        &["nodes", "--gamma", "0"][..],
        &["nodes", "--gamma", "x"],
        &["proj-frac", "--function", "nope"],
        &["rates", "--m-min", "10", "--m-max", "4"],
        &["proj-gen", "--m-step", "0"],
    ] {
        let (code, _, err) = fraclag(args);
        assert_eq!(code, 1, "{args:?}: {err}");
    }
}

#[test]
fn verify_passes_and_injected_fault_exits_3() {
    let (code, out, _) = fraclag(&["verify"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains(",fail,"));
    let (code, out, _) = fraclag(&["verify", "--inject-fault", "weight-sign"]);
    assert_eq!(code, 3);
    assert_eq!(out.matches(",fail,").count(), 3);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["proj-gen", "--function", "h2,h3", "--gamma", "1/2,1", "--m-max", "24"];
    let (_, one, _) = fraclag(&[&args[..], &["--threads", "1"]].concat());
    let (_, four, _) = fraclag(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
}
