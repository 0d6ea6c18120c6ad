//! One line per acceptance criterion. Runs the same claims as
//! `gradecheck report`, then drives the binary for the exit-code checks.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use gradecheck::suite::{criterion, Claim, SuiteOptions, CRITERIA};

fn gradecheck(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradecheck")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn claim(id: &str, text: &str, run: impl FnOnce() -> Result<String, String>) -> Claim {
    let t = Instant::now();
    let (passed, detail) = match run() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Claim {
        criterion: 10,
        id: id.into(),
        claim: text.into(),
        anchor: "command line",
        passed,
        checks_run: 1,
        elapsed_s: t.elapsed().as_secs_f64(),
        detail,
    }
}

fn expect_exit(args: &[&str], want: i32) -> Result<(i32, String, String), String> {
    let r = gradecheck(args);
    if r.0 == want {
        Ok(r)
    } else {
        Err(format!("exit {} (wanted {want}); stderr: {}", r.0, r.2.trim()))
    }
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn cli_claims() -> Vec<Claim> {
    let dir = tempfile::tempdir().expect("temp dir");
    let d = dir.path();
    let alg = d.join("ctc-6.algebra.json");
    let gr = d.join("ctc-6.grading.json");
    let mut out = Vec::new();

    out.push(claim("10.cli-emit-verify", "emitted catalog files verify with exit 0", || {
        expect_exit(&["catalog", "--name", "ctc-6", "--emit", path(d)], 0)?;
        let (_, stdout, _) = expect_exit(&["verify", "--algebra", path(&alg), "--grading", path(&gr), "--involution"], 0)?;
        let v: serde_json::Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
        if v["report"]["passed"] == true && v["rank_of_components"] == v["dim"] {
            Ok(format!("{} homogeneous components", v["components"].as_object().map_or(0, |m| m.len())))
        } else {
            Err(stdout)
        }
    }));

    out.push(claim("10.cli-corrupt", "a valid but wrong degree exits 1 with a counterexample", || {
        let text = std::fs::read_to_string(&gr).map_err(|e| e.to_string())?;
        let bad = text.replacen("[5, [0, 0, 1]]", "[5, [0, 1, 1]]", 1);
        if bad == text {
            return Err("degree line for index 5 not found".into());
        }
        let badp = d.join("bad.grading.json");
        std::fs::write(&badp, bad).map_err(|e| e.to_string())?;
        let (_, stdout, _) = expect_exit(&["verify", "--algebra", path(&alg), "--grading", path(&badp)], 1)?;
        let v: serde_json::Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
        match &v["report"]["counterexample"] {
            serde_json::Value::Null => Err("no counterexample".into()),
            c => Ok(c.to_string()),
        }
    }));

    out.push(claim("10.cli-missing", "a missing file exits 2", || {
        let (_, _, err) = expect_exit(&["verify", "--algebra", path(&d.join("nope.json")), "--grading", path(&gr)], 2)?;
        Ok(err.trim().to_string())
    }));

    out.push(claim("10.cli-unreduced", "an unreduced scalar in a file exits 2", || {
        let text = std::fs::read_to_string(&alg).map_err(|e| e.to_string())?;
        let bad = text.replacen("\"1\", \"0\"", "\"2/2\", \"0\"", 1);
        let badp = d.join("bad.algebra.json");
        std::fs::write(&badp, bad).map_err(|e| e.to_string())?;
        let (_, _, err) = expect_exit(&["verify", "--algebra", path(&badp), "--grading", path(&gr)], 2)?;
        Ok(err.trim().to_string())
    }));

    out.push(claim("10.cli-unknown", "an unknown catalog name exits 1", || {
        expect_exit(&["catalog", "--name", "no-such-grading"], 1).map(|r| r.2.trim().to_string())
    }));

    out.push(claim("10.cli-report", "report --suite paper --fast exits 0 and records every claim", || {
        let rp = d.join("report.json");
        expect_exit(&["report", "--suite", "paper", "--fast", "--out", path(&rp)], 0)?;
        let text = std::fs::read_to_string(&rp).map_err(|e| e.to_string())?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let n = v["claims"].as_array().map_or(0, |c| c.len());
        if v["failed"] == 0 && n > 0 {
            Ok(format!("{n} claims"))
        } else {
            Err(format!("failed = {}", v["failed"]))
        }
    }));
    out
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut failed = 0;
    for (n, title) in CRITERIA {
        let t = Instant::now();
        let mut claims = criterion(n, &opts);
        if n == 10 {
            claims.extend(cli_claims());
        }
        let bad: Vec<&Claim> = claims.iter().filter(|c| !c.passed).collect();
        let checks: u64 = claims.iter().map(|c| c.checks_run).sum();
        let status = if bad.is_empty() && !claims.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {status} {title} ({} claims, {checks} checks, {:.1}s)", claims.len(), t.elapsed().as_secs_f64());
        for c in &bad {
            println!("    {} {}: {}", c.id, c.claim, c.detail);
        }
        if status == "FAIL" {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria fail", CRITERIA.len());
        ExitCode::FAILURE
    }
}
