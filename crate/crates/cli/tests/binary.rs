use std::process::{Command, Output};

fn frame_sync(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frame-sync"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn cost_prints_note_and_metadata() {
    let o = frame_sync(&["cost", "--state", "sine-paper", "--N", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# tool: frame-sync "));
    assert!(text.contains("# config: {\"family\":\"sine-paper\",\"N\":2}"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the optimal value"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(frame_sync(&["nonsense"]).status.code(), Some(1));
    assert_eq!(frame_sync(&["cost"]).status.code(), Some(1));
    assert_eq!(
        frame_sync(&["cost", "--state", "round", "--N", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        frame_sync(&["sync-sim", "--state", "flat", "--N", "2", "--trials", "10"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(frame_sync(&["align", "--d", "99"]).status.code(), Some(1));
    assert_eq!(frame_sync(&["--help"]).status.code(), Some(0));
}

#[test]
fn sync_sim_replay_is_byte_identical() {
    let args = [
        "sync-sim",
        "--state",
        "degenerate-demo",
        "--N",
        "3",
        "--trials",
        "5000",
        "--seed",
        "11",
    ];
    let a = frame_sync(&args);
    let b = frame_sync(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(data_rows(&stdout(&a)), data_rows(&stdout(&b)));
}

#[test]
fn config_file_and_json_output() {
    let dir = std::env::temp_dir().join(format!("frame-sync-bin-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("state.json");
    std::fs::write(
        &cfg,
        r#"{"N": 1, "generatorA": [[0,1],[1,1]], "generatorB": [[0,1],[1,1]],
            "sectors": [{"n":0,"e":[0.6,0],"lambdas":[1]}, {"n":1,"e":[0,0.8],"lambdas":[1]}]}"#,
    )
    .unwrap();
    let out = dir.join("cost.json");
    let o = frame_sync(&[
        "cost",
        "--state",
        cfg.to_str().unwrap(),
        "--json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let cost = doc["rows"][0][3].as_f64().unwrap();
    assert!((cost - (2.0 - 2.0 * 0.48)).abs() < 1e-12);
    assert_eq!(doc["metadata"]["config"]["N"], 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn witness_and_align_pass_self_checks() {
    assert_eq!(frame_sync(&["witness"]).status.code(), Some(0));
    let o = frame_sync(&["align", "--d", "5", "--trials", "200", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("total,1000,0"));
}
