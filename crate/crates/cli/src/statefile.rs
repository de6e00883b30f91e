//! JSON state files: `{"dims": [d1, d2], "re": [[…]], "im": [[…]]}`.
//!
//! Numbers are written with 17 significant digits, which round-trips every
//! f64 exactly; writing is done by hand so the byte layout is deterministic
//! (same state, same bytes).

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use entwit_core::criteria::DensityState;
use entwit_core::linalg::{ComplexMatrix, C64};

use crate::CliError;

#[derive(Debug, Deserialize)]
struct RawStateFile {
    dims: [usize; 2],
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// FNV-1a digest of the raw file bytes, for report provenance.
pub fn digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a:{hash:016x}")
}

/// Load and validate a state file. Every failure maps to exit code 2.
pub fn load(path: &Path) -> Result<(DensityState, String), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::invalid_file(format!("cannot read {}: {e}", path.display())))?;
    let file_digest = digest(&bytes);
    let raw: RawStateFile = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::invalid_file(format!("cannot parse {}: {e}", path.display())))?;

    let [d1, d2] = raw.dims;
    let total = d1.checked_mul(d2).filter(|t| *t > 0).ok_or_else(|| {
        CliError::invalid_file(format!("bad dims [{d1}, {d2}] in {}", path.display()))
    })?;
    for (name, rows) in [("re", &raw.re), ("im", &raw.im)] {
        if rows.len() != total || rows.iter().any(|r| r.len() != total) {
            return Err(CliError::invalid_file(format!(
                "\"{name}\" must be a {total}x{total} matrix in {}",
                path.display()
            )));
        }
    }

    let matrix = ComplexMatrix::from_fn(total, total, |i, j| C64::new(raw.re[i][j], raw.im[i][j]));
    let state = DensityState::new(matrix, (d1, d2))
        .map_err(|e| CliError::invalid_file(format!("{}: {e}", path.display())))?;
    Ok((state, file_digest))
}

/// Serialize a state to the canonical JSON layout.
pub fn to_json(state: &DensityState) -> String {
    let (d1, d2) = state.dims();
    let total = d1 * d2;
    let mut out = String::new();
    let _ = write!(out, "{{\n  \"dims\": [{d1}, {d2}],\n");
    for (key, pick) in [
        ("re", (|z: C64| z.re) as fn(C64) -> f64),
        ("im", (|z: C64| z.im) as fn(C64) -> f64),
    ] {
        let _ = writeln!(out, "  \"{key}\": [");
        for i in 0..total {
            let row: Vec<String> = (0..total)
                .map(|j| format!("{:.16e}", pick(state.matrix().get(i, j))))
                .collect();
            let comma = if i + 1 < total { "," } else { "" };
            let _ = writeln!(out, "    [{}]{comma}", row.join(", "));
        }
        let comma = if key == "re" { "," } else { "" };
        let _ = writeln!(out, "  ]{comma}");
    }
    out.push('}');
    out.push('\n');
    out
}

/// Write a state file; returns the digest of the written bytes.
pub fn save(path: &Path, state: &DensityState) -> Result<String, CliError> {
    let body = to_json(state);
    std::fs::write(path, body.as_bytes())
        .map_err(|e| CliError::invalid_file(format!("cannot write {}: {e}", path.display())))?;
    Ok(digest(body.as_bytes()))
}
