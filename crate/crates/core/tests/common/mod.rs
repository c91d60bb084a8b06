#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// Commands covered by the golden-file suite, keyed by file stem.
pub const GOLDEN_COMMANDS: &[(&str, &[&str])] = &[
    ("shapes_15", &["shapes", "--n", "15"]),
    ("shapes_8_list", &["shapes", "--n", "8", "--list"]),
    (
        "configs_worked",
        &[
            "configs",
            "--tree",
            "(((a,b),c),(d,e))",
            "--per-node",
            "--oracle",
        ],
    ),
    (
        "configs_file",
        &["configs", "--file", "tests/golden/trees.nwk", "--oracle"],
    ),
    (
        "weights_5_uniform",
        &["weights", "--n", "5", "--model", "uniform"],
    ),
    (
        "weights_6_yule",
        &["--json", "weights", "--n", "6", "--model", "yule"],
    ),
    (
        "moments_uniform_exact",
        &["moments", "--model", "uniform", "--n-max", "30", "--exact"],
    ),
    (
        "moments_yule_float",
        &["moments", "--model", "yule", "--n-max", "200", "--float"],
    ),
    (
        "series_s1",
        &["series-check", "--which", "S1", "--order", "30"],
    ),
    (
        "series_s3",
        &["--json", "series-check", "--which", "S3", "--order", "20"],
    ),
    (
        "series_coeffs",
        &["series-check", "--which", "coeffs", "--order", "25"],
    ),
    (
        "distribution_8_yule",
        &["distribution", "--n", "8", "--model", "yule"],
    ),
    (
        "cdf_10_uniform",
        &[
            "distribution",
            "--n",
            "10",
            "--model",
            "uniform",
            "--cdf-grid",
            "-2:2:0.25",
        ],
    ),
    ("extremal_12", &["extremal", "--n", "12"]),
    (
        "sample_uniform",
        &[
            "sample",
            "--n",
            "100",
            "--model",
            "uniform",
            "--samples",
            "2000",
            "--seed",
            "42",
        ],
    ),
    (
        "sample_yule_per",
        &[
            "sample",
            "--n",
            "40",
            "--model",
            "yule",
            "--samples",
            "1000",
            "--seed",
            "7",
            "--per-sample",
        ],
    ),
    ("figure_2", &["report", "--figure", "2"]),
    ("figure_3", &["report", "--figure", "3"]),
    ("figure_4", &["report", "--figure", "4"]),
    ("figure_5", &["report", "--figure", "5"]),
    ("figure_6", &["report", "--figure", "6"]),
    ("figure_7", &["report", "--figure", "7"]),
    ("figure_8", &["--json", "report", "--figure", "8"]),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(stem: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{stem}.out"))
}

pub fn run_cli(args: &[&str], threads: usize) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ancestral"))
        .current_dir(crate_dir())
        .arg("--threads")
        .arg(threads.to_string())
        .args(args)
        .output()
        .expect("binary runs")
}

/// Output of one golden command, or a description of what went wrong.
pub fn check_golden(stem: &str, args: &[&str]) -> Result<(), String> {
    let mut outputs = Vec::new();
    for threads in [1, 1, 4] {
        let out = run_cli(args, threads);
        if !out.status.success() {
            return Err(format!(
                "{stem}: exit {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        outputs.push(out.stdout);
    }
    if outputs.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!(
            "{stem}: output differs between runs or thread counts"
        ));
    }
    let path = golden_path(stem);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &outputs[0]).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let golden = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if golden != outputs[0] {
        return Err(format!("{stem}: output differs from {}", path.display()));
    }
    Ok(())
}
