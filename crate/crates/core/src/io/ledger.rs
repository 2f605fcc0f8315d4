//! One JSON object per step, keys in a fixed order, floats with 17
//! significant digits.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::iteration::LedgerRecord;

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// The ledger line for one record, without a trailing newline.
pub fn format_record(r: &LedgerRecord) -> String {
    let x = &r.xnorm;
    let mut s = String::with_capacity(512);
    write!(
        s,
        "{{\"n\":{},\"lambda_n\":{},\"lambda_next\":{},\"r_n\":{},\"r_next\":{},\"mu_next\":{},\
         \"alpha\":{},\"xnorm\":{{\"qM1\":{},\"qM2\":{},\"qM3\":{},\"qT\":{},\"qD\":{},\"q_next\":{}}},\
         \"ratio_q_over_r\":{},\"master_residual\":{},\"decomp_residual\":{},\"holder_besov_f\":{},\
         \"partial_sum_reg\":{},\"separation_ok\":{},\"alias_tail\":{}}}",
        r.n,
        r.lambda_n,
        r.lambda_next,
        num(r.r_n),
        num(r.r_next),
        num(r.mu_next),
        num(r.alpha),
        num(x.qm1),
        num(x.qm2),
        num(x.qm3),
        num(x.qt),
        num(x.qd),
        num(x.q_next),
        num(r.ratio_q_over_r),
        num(r.master_residual),
        num(r.decomp_residual),
        num(r.holder_besov_f),
        num(r.partial_sum_reg),
        r.separation_ok,
        num(r.alias_tail),
    )
    .expect("writing to a String");
    s
}

/// Schema checks beyond the key set: positive scales, ordered frequencies,
/// non-negative norms.
pub fn validate_record(r: &LedgerRecord) -> Vec<String> {
    let mut v = Vec::new();
    if r.lambda_next <= r.lambda_n {
        v.push(format!(
            "lambda_next {} must exceed lambda_n {}",
            r.lambda_next, r.lambda_n
        ));
    }
    for (name, x) in [
        ("r_n", r.r_n),
        ("r_next", r.r_next),
        ("mu_next", r.mu_next),
        ("alpha", r.alpha),
    ] {
        if !(x > 0.0) {
            v.push(format!("{name} = {x} must be positive"));
        }
    }
    let x = &r.xnorm;
    for (name, val) in [
        ("xnorm.qM1", x.qm1),
        ("xnorm.qM2", x.qm2),
        ("xnorm.qM3", x.qm3),
        ("xnorm.qT", x.qt),
        ("xnorm.qD", x.qd),
        ("xnorm.q_next", x.q_next),
        ("ratio_q_over_r", r.ratio_q_over_r),
        ("master_residual", r.master_residual),
        ("decomp_residual", r.decomp_residual),
        ("holder_besov_f", r.holder_besov_f),
        ("partial_sum_reg", r.partial_sum_reg),
        ("alias_tail", r.alias_tail),
    ] {
        if !(val >= 0.0) {
            v.push(format!("{name} = {val} must be non-negative"));
        }
    }
    v
}

/// Parses and validates one ledger line; `line` numbers errors.
pub fn parse_record(text: &str, line: usize) -> Result<LedgerRecord> {
    let r: LedgerRecord = serde_json::from_str(text).map_err(|e| Error::Parse {
        line,
        message: e.to_string(),
    })?;
    let v = validate_record(&r);
    if v.is_empty() {
        Ok(r)
    } else {
        Err(Error::Validation(
            v.into_iter().map(|m| format!("line {line}: {m}")).collect(),
        ))
    }
}

/// Every record of a ledger file; step indices must increase by one.
pub fn parse_ledger(text: &str) -> Result<Vec<LedgerRecord>> {
    let mut out: Vec<LedgerRecord> = Vec::new();
    for (i, l) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let r = parse_record(l, i + 1)?;
        if let Some(prev) = out.last() {
            if r.n != prev.n + 1 {
                return Err(Error::Validation(vec![format!(
                    "line {}: step {} does not follow step {}",
                    i + 1,
                    r.n,
                    prev.n
                )]));
            }
        }
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iteration::ChannelNorms;

    fn sample(n: usize) -> LedgerRecord {
        LedgerRecord {
            n,
            lambda_n: 2,
            lambda_next: 96,
            r_n: 0.8408964152537145,
            r_next: 0.31947155212313627,
            mu_next: 1.0 / 3.0,
            alpha: 0.51,
            xnorm: ChannelNorms {
                qm1: 0.1,
                qm2: 2e-5,
                qm3: 0.0066,
                qt: 2.13,
                qd: 0.0,
                q_next: 2.14,
            },
            ratio_q_over_r: 6.7,
            master_residual: 4.7e-13,
            decomp_residual: 4.7e-12,
            holder_besov_f: 1.25,
            partial_sum_reg: 0.95,
            separation_ok: true,
            alias_tail: 2.8e-12,
        }
    }

    #[test]
    fn round_trip_exact() {
        let r = sample(0);
        let line = format_record(&r);
        assert_eq!(parse_record(&line, 1).unwrap(), r);
        assert!(line.starts_with(
            "{\"n\":0,\"lambda_n\":2,\"lambda_next\":96,\"r_n\":8.4089641525371450e-1"
        ));
    }

    #[test]
    fn key_order_matches_serde_field_order() {
        let v: serde_json::Value = serde_json::from_str(&format_record(&sample(0))).unwrap();
        let ours: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        let theirs = serde_json::to_value(sample(0)).unwrap();
        let mut t: Vec<_> = theirs.as_object().unwrap().keys().cloned().collect();
        let mut o = ours.clone();
        o.sort();
        t.sort();
        assert_eq!(o, t);
    }

    #[test]
    fn rejects_extra_and_missing_keys() {
        let line = format_record(&sample(0));
        let extra = line.replacen("{", "{\"bogus\":1,", 1);
        assert!(matches!(
            parse_record(&extra, 3),
            Err(Error::Parse { line: 3, .. })
        ));
        let missing = line.replacen("\"n\":0,", "", 1);
        assert!(parse_record(&missing, 1).is_err());
    }

    #[test]
    fn rejects_bad_values() {
        let mut r = sample(0);
        r.xnorm.qt = f64::NAN;
        assert!(parse_record(&format_record(&r), 1).is_err());
        let mut r = sample(0);
        r.r_n = -1.0;
        assert!(matches!(
            parse_record(&format_record(&r), 1),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn monotone_steps() {
        let text = format!(
            "{}\n{}\n",
            format_record(&sample(0)),
            format_record(&sample(1))
        );
        assert_eq!(parse_ledger(&text).unwrap().len(), 2);
        let text = format!(
            "{}\n{}\n",
            format_record(&sample(1)),
            format_record(&sample(1))
        );
        assert!(parse_ledger(&text).is_err());
    }
}
