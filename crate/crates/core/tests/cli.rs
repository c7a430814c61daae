use std::path::Path;
use std::process::{Command, Output};

use ionic_neuron::decks;
use ionic_neuron::io::MANIFEST_FILE;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ionic-neuron"));
    c.current_dir(env!("CARGO_MANIFEST_DIR"));
    c
}

fn run_in(out: &Path, args: &[&str]) -> Output {
    bin().arg("--out").arg(out).args(args).output().unwrap()
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn neuron_run_writes_trajectory_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_in(tmp.path(), &["neuron", "run", "--deck", "decks/default.json", "--t-end", "1000"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(header(&tmp.path().join("trajectory.csv")), "t_us,v_o,x1,x2,V_mem1,V_mem2,stim");
    assert!(tmp.path().join(MANIFEST_FILE).exists());
}

#[test]
fn quantum_evolve_writes_expectations() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_in(tmp.path(), &["quantum", "evolve", "--N", "4", "--t-end", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(header(&tmp.path().join("expectations.csv")), "t,n_cavity,n_qubit");
}

#[test]
fn bad_arguments_exit_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run_in(tmp.path(), &["teleport"]).status.code(), Some(1));
    assert_eq!(run_in(tmp.path(), &["neuron", "run", "--deck", "decks/missing.json"]).status.code(), Some(1));
    assert_eq!(run_in(tmp.path(), &["quantum", "evolve", "--N", "0"]).status.code(), Some(1));
}

#[test]
fn numerical_failure_exits_with_two_after_writing_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let mut deck = decks::spiking_deck();
    deck.solver.max_steps = 10;
    let path = tmp.path().join("starved.json");
    std::fs::write(&path, serde_json::to_string(&deck).unwrap()).unwrap();
    let out = tmp.path().join("out");
    let o = run_in(&out, &["neuron", "run", "--deck", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(out.join(MANIFEST_FILE).exists());
}

#[test]
fn sweep_writes_one_manifest_per_point() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_in(tmp.path(), &["sweep", "sweeps/gain_scan.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for k in 0..3 {
        assert!(tmp.path().join(format!("point_{k:03}")).join(MANIFEST_FILE).exists());
    }
}

#[test]
fn output_root_comes_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let o = bin()
        .env("IONIC_NEURON_OUT", tmp.path())
        .args(["device", "coherence", "--temperature", "4.2"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(tmp.path().join("device-coherence").join("coherence.csv").exists());
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));
}

#[test]
fn commands_write_only_inside_their_output_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let o = bin()
        .current_dir(tmp.path())
        .arg("--out")
        .arg(&out)
        .args(["network", "ring", "--t-end", "2000"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let entries: Vec<_> = std::fs::read_dir(tmp.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(entries, vec![std::ffi::OsString::from("out")]);
}
