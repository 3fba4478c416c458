#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the binary inside the golden directory so job paths in messages stay relative.
pub fn quatreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatreg"))
        .args(args)
        .current_dir(golden_dir())
        .env_remove("QUATREG_SEED")
        .output()
        .expect("binary runs")
}

pub struct Golden {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    /// File compared byte for byte against stdout, or stderr when `stderr` is set.
    pub expected: &'static str,
    pub stderr: bool,
}

pub const GOLDEN: &[Golden] = &[
    Golden {
        name: "square over a grid",
        args: &["--format", "json", "check", "square_grid.job.json"],
        exit: 0,
        expected: "square_grid.expected.json",
        stderr: false,
    },
    Golden {
        name: "non-regular witness",
        args: &["--format", "json", "check", "non_regular.job.json"],
        exit: 1,
        expected: "non_regular.expected.json",
        stderr: false,
    },
    Golden {
        name: "malformed expression",
        args: &["check", "malformed.job.json"],
        exit: 2,
        expected: "malformed.expected.stderr",
        stderr: true,
    },
];

/// `Ok(())` when exit code and output match the frozen file.
pub fn run_golden(g: &Golden) -> Result<(), String> {
    let out = quatreg(g.args);
    let code = out.status.code().unwrap_or(-1);
    if code != g.exit {
        return Err(format!("{}: exit {code}, expected {}", g.name, g.exit));
    }
    let expected = std::fs::read(golden_dir().join(g.expected)).map_err(|e| e.to_string())?;
    let actual = if g.stderr { &out.stderr } else { &out.stdout };
    if *actual != expected {
        return Err(format!(
            "{}: output differs from {}\n{}",
            g.name,
            g.expected,
            String::from_utf8_lossy(actual)
        ));
    }
    Ok(())
}
