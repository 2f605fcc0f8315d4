//! Flat `key = value` run configuration with `#` comments.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::iteration::{BaseKind, IterationParams, SeparationPolicy};

/// Which artifacts a run writes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmitSet {
    pub fields: bool,
    pub ledger: bool,
    pub csv: bool,
    pub reports: bool,
}

impl Default for EmitSet {
    fn default() -> Self {
        EmitSet {
            fields: true,
            ledger: true,
            csv: true,
            reports: true,
        }
    }
}

impl EmitSet {
    pub const NAMES: [&'static str; 4] = ["fields", "ledger", "csv", "reports"];

    fn parse(value: &str) -> std::result::Result<Self, String> {
        let mut e = EmitSet {
            fields: false,
            ledger: false,
            csv: false,
            reports: false,
        };
        for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "all" => e = EmitSet::default(),
                "fields" => e.fields = true,
                "ledger" => e.ledger = true,
                "csv" => e.csv = true,
                "reports" => e.reports = true,
                other => return Err(format!("unknown emit item {other:?}")),
            }
        }
        Ok(e)
    }

    pub fn canonical(&self) -> String {
        let on = [self.fields, self.ledger, self.csv, self.reports];
        Self::NAMES
            .iter()
            .zip(on)
            .filter(|(_, b)| *b)
            .map(|(n, _)| *n)
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: IterationParams,
    pub out_dir: PathBuf,
    pub emit: EmitSet,
    /// Trials per statistical check in `verify`.
    pub verify_trials: usize,
}

impl RunConfig {
    pub fn canonical(&self) -> String {
        format!(
            "{}out_dir = {}\nemit = {}\nverify_trials = {}\n",
            self.params.canonical(),
            self.out_dir.display(),
            self.emit.canonical(),
            self.verify_trials
        )
    }
}

const KEYS: [&str; 18] = [
    "lambda0",
    "lambda1",
    "b",
    "beta",
    "nu",
    "gamma",
    "c0",
    "eps0",
    "steps",
    "grid_cap",
    "oversample",
    "separation",
    "seed",
    "out_dir",
    "emit",
    "base",
    "base_stress",
    "verify_trials",
];

struct Entry {
    line: usize,
    value: String,
}

fn lines(text: &str) -> Result<BTreeMap<String, Entry>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| Error::Parse {
            line,
            message: format!("expected `key = value`, found {body:?}"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if !KEYS.contains(&key) {
            return Err(Error::Parse {
                line,
                message: format!("unknown key {key:?}"),
            });
        }
        if value.is_empty() {
            return Err(Error::Parse {
                line,
                message: format!("missing value for {key}"),
            });
        }
        if let Some(prev) = map.insert(
            key.to_string(),
            Entry {
                line,
                value: value.to_string(),
            },
        ) {
            return Err(Error::Parse {
                line,
                message: format!("{key} already set on line {}", prev.line),
            });
        }
    }
    Ok(map)
}

fn value<T: std::str::FromStr>(map: &BTreeMap<String, Entry>, key: &str) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(e) => e.value.parse().map(Some).map_err(|_| Error::Parse {
            line: e.line,
            message: format!("cannot read {key} = {:?}", e.value),
        }),
    }
}

fn choice<T>(
    map: &BTreeMap<String, Entry>,
    key: &str,
    pick: impl Fn(&str) -> Option<T>,
    allowed: &str,
) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(e) => pick(&e.value).map(Some).ok_or_else(|| Error::Parse {
            line: e.line,
            message: format!("{key} must be one of {allowed}, found {:?}", e.value),
        }),
    }
}

/// Parses and validates a configuration. Syntax errors stop at the first bad
/// line; semantic errors are collected and reported together.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let (config, problems) = parse_config_lenient(text)?;
    if problems.is_empty() {
        Ok(config)
    } else {
        Err(Error::Validation(problems))
    }
}

/// Parses a configuration and lists violated constraints without rejecting
/// it. Missing required keys are still an error.
pub fn parse_config_lenient(text: &str) -> Result<(RunConfig, Vec<String>)> {
    let map = lines(text)?;
    let lambda0: Option<u64> = value(&map, "lambda0")?;
    let lambda1: Option<u64> = value(&map, "lambda1")?;
    let b: Option<f64> = value(&map, "b")?;
    let beta: Option<f64> = value(&map, "beta")?;
    let gamma: Option<f64> = value(&map, "gamma")?;
    let separation = choice(
        &map,
        "separation",
        |v| match v {
            "strict48" => Some(SeparationPolicy::Strict48),
            "warn" => Some(SeparationPolicy::Warn),
            _ => None,
        },
        "strict48|warn",
    )?;
    let base = choice(
        &map,
        "base",
        |v| match v {
            "zero" => Some(BaseKind::Zero),
            "seeded" => Some(BaseKind::Seeded),
            _ => None,
        },
        "zero|seeded",
    )?;
    let emit = match map.get("emit") {
        None => EmitSet::default(),
        Some(e) => EmitSet::parse(&e.value).map_err(|message| Error::Parse {
            line: e.line,
            message,
        })?,
    };

    let mut problems = Vec::new();
    for (key, present) in [
        ("lambda0", lambda0.is_some()),
        ("beta", beta.is_some()),
        ("gamma", gamma.is_some()),
    ] {
        if !present {
            problems.push(format!("missing required key {key}"));
        }
    }
    let b = match (b, lambda1, lambda0) {
        (Some(b), None, _) => Some(b),
        (None, Some(l1), Some(l0)) if l0 >= 2 => Some(IterationParams::b_for(l0, l1)),
        (None, Some(_), _) => {
            problems.push("lambda1 needs lambda0 >= 2".to_string());
            None
        }
        (Some(_), Some(_), _) => {
            problems.push("set either b or lambda1, not both".to_string());
            None
        }
        (None, None, _) => {
            problems.push("missing required key b (or lambda1)".to_string());
            None
        }
    };

    if !problems.is_empty() {
        return Err(Error::Validation(problems));
    }
    let mut params = IterationParams::new(
        lambda0.unwrap_or(0),
        b.unwrap_or(f64::NAN),
        beta.unwrap_or(f64::NAN),
        gamma.unwrap_or(f64::NAN),
    );
    if let Some(v) = value(&map, "nu")? {
        params.nu = v;
    }
    if let Some(v) = value(&map, "c0")? {
        params.c0 = v;
    }
    if let Some(v) = value(&map, "eps0")? {
        params.eps0 = v;
    }
    if let Some(v) = value(&map, "steps")? {
        params.steps = v;
    }
    if let Some(v) = value(&map, "grid_cap")? {
        params.grid_cap = v;
    }
    if let Some(v) = value(&map, "oversample")? {
        params.oversample = v;
    }
    if let Some(v) = value(&map, "seed")? {
        params.seed = v;
    }
    if let Some(v) = value(&map, "base_stress")? {
        params.base_stress = v;
    }
    if let Some(v) = separation {
        params.separation = v;
    }
    if let Some(v) = base {
        params.base = v;
    }
    let out_dir: PathBuf = value::<String>(&map, "out_dir")?
        .unwrap_or_else(|| "out".into())
        .into();
    let verify_trials: usize = value(&map, "verify_trials")?.unwrap_or(100);
    if verify_trials == 0 {
        problems.push("verify_trials must be at least 1".to_string());
    }

    problems.extend(params.violations());
    let config = RunConfig {
        params,
        out_dir,
        emit,
        verify_trials,
    };
    Ok((config, problems))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = "\
# seeded desk-scale run
lambda0 = 2
b = 6.585
beta = 0.25
nu = 0
gamma = 1
c0 = 2
eps0 = 0.01
steps = 1
grid_cap = 2048
oversample = 4
separation = warn
seed = 7
out_dir = runs/a   # trailing comment
emit = ledger,fields
";

    #[test]
    fn full_config_echoes() {
        let c = parse_config(FULL).unwrap();
        assert_eq!(c.params.lambda0, 2);
        assert_eq!(c.params.seed, 7);
        assert_eq!(c.out_dir, PathBuf::from("runs/a"));
        assert!(c.emit.ledger && c.emit.fields && !c.emit.csv);
        let again = parse_config(&c.canonical()).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.canonical(), c.canonical());
    }

    #[test]
    fn ceiling_example() {
        let c = parse_config(FULL).unwrap();
        let l1 = crate::iteration::lambda(2, c.params.b, 1).unwrap();
        assert_eq!(l1, 97);
        assert!(48 * 2 <= l1);
    }

    #[test]
    fn lambda1_sets_b() {
        let c = parse_config("lambda0 = 2\nlambda1 = 96\nbeta = 0.25\ngamma = 1\n").unwrap();
        assert_eq!(crate::iteration::lambda(2, c.params.b, 1).unwrap(), 96);
    }

    #[test]
    fn beta_gamma_conflict() {
        let text = FULL
            .replace("beta = 0.25", "beta = 0.5")
            .replace("gamma = 1\n", "gamma = 1.4\n");
        match parse_config(&text) {
            Err(Error::Validation(v)) => {
                assert!(
                    v.iter().any(|m| m.contains("min(1/3, 3 - 2 gamma)")),
                    "{v:?}"
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn every_violation_listed() {
        let text = "lambda0 = 1\nb = 0.5\nbeta = 0.5\ngamma = 2\nc0 = 1\ngrid_cap = 100\n";
        match parse_config(text) {
            Err(Error::Validation(v)) => assert!(v.len() >= 5, "{v:?}"),
            other => panic!("{other:?}"),
        }
        match parse_config("b = 2\n") {
            Err(Error::Validation(v)) => {
                for key in ["lambda0", "beta", "gamma"] {
                    assert!(v.iter().any(|m| m.contains(key)), "{v:?}");
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        let cases = [
            ("lambda0 = 2\nnonsense\n", 2),
            ("lambda0 = 2\n\nfoo = 3\n", 3),
            ("lambda0 = x\n", 1),
            ("lambda0 = 2\nlambda0 = 3\n", 2),
            ("separation = sometimes\n", 1),
            ("emit = pictures\n", 1),
        ];
        for (text, want) in cases {
            match parse_config(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
