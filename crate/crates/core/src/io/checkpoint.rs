//! `checkpoint_{n}/` holding `f_leq.sqf1`, `q.sqf1` and `meta.json`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{atomic_write, read_field, write_field};
use crate::error::{Error, Result};
use crate::iteration::{lambda, IterationParams, StepState};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckpointMeta {
    pub n: usize,
    pub lambda_n: u64,
    pub r_n: f64,
    pub params_hash: String,
}

pub fn checkpoint_dir(out: &Path, n: usize) -> PathBuf {
    out.join(format!("checkpoint_{n}"))
}

/// Saves `state` under `out/checkpoint_{n}` and returns that directory.
pub fn write_checkpoint(
    out: &Path,
    state: &StepState,
    params: &IterationParams,
) -> Result<PathBuf> {
    let dir = checkpoint_dir(out, state.n);
    fs::create_dir_all(&dir)?;
    write_field(&dir.join("f_leq.sqf1"), &state.f_leq)?;
    write_field(&dir.join("q.sqf1"), &state.q)?;
    let lambda_n = lambda(params.lambda0, params.b, state.n)?;
    let meta = CheckpointMeta {
        n: state.n,
        lambda_n,
        r_n: (lambda_n as f64).powf(-params.beta),
        params_hash: params.hash(),
    };
    let mut text = serde_json::to_string_pretty(&meta)?;
    text.push('\n');
    atomic_write(&dir.join("meta.json"), text.as_bytes())?;
    Ok(dir)
}

/// Loads a checkpoint written for the same construction parameters.
pub fn read_checkpoint(dir: &Path, params: &IterationParams) -> Result<StepState> {
    let meta: CheckpointMeta = serde_json::from_slice(&fs::read(dir.join("meta.json"))?)?;
    let hash = params.hash();
    if meta.params_hash != hash {
        return Err(Error::Checkpoint(format!(
            "{} was written with parameters {} but the configuration hashes to {hash}",
            dir.display(),
            meta.params_hash
        )));
    }
    let lambda_n = lambda(params.lambda0, params.b, meta.n)?;
    if lambda_n != meta.lambda_n {
        return Err(Error::Checkpoint(format!(
            "lambda_{} = {} in metadata, {lambda_n} from parameters",
            meta.n, meta.lambda_n
        )));
    }
    Ok(StepState {
        n: meta.n,
        f_leq: read_field(&dir.join("f_leq.sqf1"))?,
        q: read_field(&dir.join("q.sqf1"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random_field;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let params = IterationParams::new(2, 2.0, 0.25, 1.0);
        let state = StepState {
            n: 1,
            f_leq: random_field(1, 8, true),
            q: random_field(2, 16, true),
        };
        let d = write_checkpoint(dir.path(), &state, &params).unwrap();
        assert!(d.ends_with("checkpoint_1"));
        assert_eq!(read_checkpoint(&d, &params).unwrap(), state);
        let meta: CheckpointMeta =
            serde_json::from_slice(&fs::read(d.join("meta.json")).unwrap()).unwrap();
        assert_eq!((meta.n, meta.lambda_n), (1, 4));
        let mut other = params.clone();
        other.beta = 0.2;
        assert!(matches!(
            read_checkpoint(&d, &other),
            Err(Error::Checkpoint(_))
        ));
        let mut longer = params;
        longer.steps = 7;
        assert!(read_checkpoint(&d, &longer).is_ok());
    }
}
