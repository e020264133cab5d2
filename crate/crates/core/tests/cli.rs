use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_emit-holo"))
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("emit-holo-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn list_is_alphabetical_and_complete() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let names: Vec<&str> = text.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for want in [
        "autocorr-fourier",
        "autocorr-green",
        "capacity-bound",
        "capacity-spacing",
        "directivity",
        "dof-saturation",
        "eigen-spacing",
        "packing",
        "polarization",
        "precoders",
        "quality-factor",
    ] {
        assert!(names.contains(&want), "{want} missing");
    }
}

#[test]
fn run_limits_writes_csv_and_svg() {
    let dir = scratch("limits");
    let st = bin().args(["run", "limits", "--out"]).arg(&dir).status().unwrap();
    assert!(st.success());
    let csv = fs::read_to_string(dir.join("limits.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("k0re,G_chu,G_harr,Q_chu,Q_harr"));
    let svg = fs::read_to_string(dir.join("limits.svg")).unwrap();
    assert!(svg.contains("<polyline") && svg.contains("electrical size"));
}

#[test]
fn same_seed_same_bytes_across_thread_caps() {
    let a = scratch("det-a");
    let b = scratch("det-b");
    let cfg = a.join("small.ini");
    fs::write(
        &cfg,
        "[carrier]\nwavelength_m = 1\n[field]\nwindow_wavelengths = 8\n[sweep]\ndistance_min = 0\ndistance_max = 1\ndistance_points = 5\n[monte_carlo]\ntrials = 300\n",
    )
    .unwrap();
    for (dir, threads) in [(&a, "1"), (&b, "3")] {
        let st = bin()
            .args(["run", "autocorr-fourier", "--seed", "7", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(dir)
            .env("EMIT_HOLO_THREADS", threads)
            .status()
            .unwrap();
        assert!(st.success());
    }
    assert_eq!(
        fs::read(a.join("autocorr-fourier.csv")).unwrap(),
        fs::read(b.join("autocorr-fourier.csv")).unwrap()
    );
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    assert_eq!(bin().args(["run", "no-such-experiment"]).status().unwrap().code(), Some(2));

    let bad = dir.join("bad.ini");
    fs::write(&bad, "[carrier\n").unwrap();
    let st = bin().args(["run", "limits", "--config"]).arg(&bad).arg("--out").arg(&dir).status().unwrap();
    assert_eq!(st.code(), Some(3));

    // sources so far away that the received field underflows to zero
    let far = dir.join("far.ini");
    fs::write(
        &far,
        "[carrier]\nwavelength_m = 1\n[field]\nshell_radius_wavelengths = 1e300\nsources_per_trial = 2\n[sweep]\ndistance_min = 0\ndistance_max = 1\ndistance_points = 3\n[monte_carlo]\ntrials = 10\n",
    )
    .unwrap();
    let out = bin().args(["run", "autocorr-green", "--config"]).arg(&far).arg("--out").arg(&dir).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("autocorrelation normalization"));
}

#[test]
fn packing_summary_reports_both_capacities() {
    let dir = scratch("packing");
    let out = bin().args(["run", "packing", "--out"]).arg(&dir).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("capacity_bits_unconstrained"));
    assert!(text.contains("capacity_bits_constrained"));
    assert!(dir.join("packing_summary.txt").exists());
}
