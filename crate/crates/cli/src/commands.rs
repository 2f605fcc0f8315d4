use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use sqg_core::io::{
    atomic_write, format_record, parse_config, parse_config_lenient, read_checkpoint, read_field,
    shells_csv, spectrum_csv, write_checkpoint, write_field, RunConfig,
};
use sqg_core::iteration::{base_state, run_from, StepOutcome};
use sqg_core::multiplier::{apply, registry};
use sqg_core::verify::{feasibility, lookup, suite, CheckReport, SuiteConfig};

use crate::{Cli, Command, Format};

pub fn dispatch(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Run { resume, steps } => cmd_run(cli, resume.as_deref(), *steps),
        Command::Verify { checks } => cmd_verify(cli, checks),
        Command::Feasibility => cmd_feasibility(cli),
        Command::Export {
            field,
            format,
            apply,
        } => cmd_export(cli, field, *format, apply.as_deref()),
    }
}

fn read_config_text(cli: &Cli) -> Result<Option<String>> {
    match &cli.config {
        None => Ok(None),
        Some(p) => fs::read_to_string(p)
            .with_context(|| format!("reading config {}", p.display()))
            .map(Some),
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let Some(text) = read_config_text(cli)? else {
        bail!(sqg_core::Error::InvalidArgument(
            "this command needs --config".into()
        ));
    };
    let mut cfg = parse_config(&text)?;
    if let Some(out) = &cli.out {
        cfg.out_dir = out.clone();
    }
    Ok(cfg)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    atomic_write(path, text.as_bytes()).with_context(|| format!("writing {}", path.display()))
}

/// Lines of a JSON-lines file whose `"n"` is below `n`; empty if absent.
fn lines_before(path: &Path, n: usize) -> Result<Vec<String>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let v: Value = serde_json::from_str(line)
            .with_context(|| format!("parsing a line of {}", path.display()))?;
        match v.get("n").and_then(Value::as_u64) {
            Some(m) if (m as usize) < n => out.push(line.to_string()),
            Some(_) => {}
            None => bail!("{}: line without a step index", path.display()),
        }
    }
    Ok(out)
}

fn joined(lines: &[String]) -> String {
    let mut s = lines.join("\n");
    if !s.is_empty() {
        s.push('\n');
    }
    s
}

fn cmd_run(cli: &Cli, resume: Option<&Path>, steps: Option<usize>) -> Result<u8> {
    let mut cfg = load_config(cli)?;
    if let Some(n) = steps {
        cfg.params.steps = n;
    }
    let params = &cfg.params;
    let out = &cfg.out_dir;
    ensure_dir(out)?;
    let emit = cfg.emit;

    let header = json!({
        "config": cfg.canonical(),
        "paramsHash": params.hash(),
        "feasibility": feasibility(params),
    });
    write_text(
        &out.join("run.json"),
        &format!("{}\n", serde_json::to_string_pretty(&header)?),
    )?;

    let ledger_path = out.join("ledger.jsonl");
    let diag_path = out.join("diagnostics.jsonl");
    let series_path = out.join("series.jsonl");
    let start = match resume {
        Some(dir) => read_checkpoint(dir, params)?,
        None => base_state(params)?,
    };
    let (mut ledger, mut diags, mut series) = match resume {
        Some(_) => (
            lines_before(&ledger_path, start.n)?,
            lines_before(&diag_path, start.n)?,
            lines_before(&series_path, start.n)?,
        ),
        None => (Vec::new(), Vec::new(), Vec::new()),
    };
    if emit.fields && resume.is_none() {
        write_checkpoint(out, &start, params)?;
    }

    let quiet = cli.quiet;
    let observe = |o: &StepOutcome| -> sqg_core::Result<()> {
        let r = &o.record;
        if !quiet {
            eprintln!(
                "step {} -> {}: lambda {} -> {}, |q|_X / r = {:.4e}, master residual {:.2e}",
                r.n,
                r.n + 1,
                r.lambda_n,
                r.lambda_next,
                r.ratio_q_over_r,
                r.master_residual
            );
        }
        if emit.ledger {
            ledger.push(format_record(r));
            atomic_write(&ledger_path, joined(&ledger).as_bytes())?;
        }
        if emit.reports {
            diags.push(serde_json::to_string(&o.diagnostics)?);
            series.push(serde_json::to_string(&o.series)?);
            atomic_write(&diag_path, joined(&diags).as_bytes())?;
            atomic_write(&series_path, joined(&series).as_bytes())?;
        }
        if emit.fields {
            write_checkpoint(out, &o.state, params)?;
        }
        Ok(())
    };
    let result = run_from(params, start, params.steps, observe)?;

    if emit.fields {
        write_field(&out.join("theta.sqf1"), &result.theta)?;
        write_field(&out.join("f.sqf1"), &result.state.f_leq)?;
    }
    if emit.csv {
        write_text(&out.join("theta_shells.csv"), &shells_csv(&result.theta))?;
    }
    if !quiet {
        println!(
            "{} step(s) done, n = {}, |theta|_(H^-1/2) = {:.6e}, output in {}",
            result.ledger.len(),
            result.state.n,
            result.theta_norm(),
            out.display()
        );
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, names: &[String]) -> Result<u8> {
    let (suite_cfg, out) = match read_config_text(cli)? {
        Some(_) => {
            let cfg = load_config(cli)?;
            let s = SuiteConfig {
                trials: cfg.verify_trials,
                seed: cfg.params.seed,
                params: Some(cfg.params.clone()),
                ..SuiteConfig::default()
            };
            (s, cfg.out_dir)
        }
        None => (
            SuiteConfig::default(),
            cli.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        ),
    };
    let checks = if names.is_empty() {
        suite(&suite_cfg)
    } else {
        names
            .iter()
            .map(|n| lookup(n, &suite_cfg))
            .collect::<sqg_core::Result<Vec<_>>>()?
    };
    let mut reports: Vec<CheckReport> = Vec::with_capacity(checks.len());
    for c in &checks {
        let r = c.run()?;
        if !cli.quiet {
            println!(
                "{:<17} defect {:.3e}  tolerance {:.1e}  {}",
                r.check,
                r.max_defect,
                r.tolerance,
                if r.pass { "PASS" } else { "FAIL" }
            );
        }
        reports.push(r);
    }
    ensure_dir(&out)?;
    write_text(
        &out.join("reports.json"),
        &format!("{}\n", serde_json::to_string_pretty(&reports)?),
    )?;
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 3 })
}

fn cmd_feasibility(cli: &Cli) -> Result<u8> {
    let Some(text) = read_config_text(cli)? else {
        bail!(sqg_core::Error::InvalidArgument(
            "feasibility needs --config".into()
        ));
    };
    let (cfg, violations) = parse_config_lenient(&text)?;
    let report = feasibility(&cfg.params);
    let body = json!({ "report": report, "violations": violations });
    println!("{}", serde_json::to_string_pretty(&body)?);
    Ok(if report.pass { 0 } else { 2 })
}

fn cmd_export(cli: &Cli, field: &Path, format: Format, symbol: Option<&str>) -> Result<u8> {
    let mut f = read_field(field)?;
    if let Some(spec) = symbol {
        f = apply(registry::lookup(spec)?.as_ref(), &f);
    }
    let (csv, suffix) = match format {
        Format::Spectrum => (spectrum_csv(&f), "spectrum"),
        Format::Shells => (shells_csv(&f), "shells"),
    };
    match &cli.out {
        Some(dir) => {
            ensure_dir(dir)?;
            let stem = field
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let path = dir.join(format!("{stem}_{suffix}.csv"));
            write_text(&path, &csv)?;
            if !cli.quiet {
                println!("{}", path.display());
            }
        }
        None => print!("{csv}"),
    }
    Ok(0)
}
