//! Files: the SQF1 field format, run configuration, ledgers, checkpoints and
//! CSV exports.

mod checkpoint;
mod config;
mod export;
mod ledger;
mod sqf;

pub use checkpoint::{checkpoint_dir, read_checkpoint, write_checkpoint, CheckpointMeta};
pub use config::{parse_config, parse_config_lenient, EmitSet, RunConfig};
pub use export::{shells_csv, spectrum_csv};
pub use ledger::{format_record, parse_ledger, parse_record, validate_record};
pub use sqf::{decode_field, encode_field, read_field, write_field, SQF_MAGIC, SQF_VERSION};

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::Result;

/// Writes `bytes` to a sibling temporary file, syncs it, then renames it over
/// `path`.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}
