//! Output files are staged in a temporary file next to their destination and
//! renamed into place, so a failed command never leaves a partial file.

use std::io::Write;
use std::path::{Path, PathBuf};

use qdel::{save_image, GrayImage};
use tempfile::{Builder, NamedTempFile};

use crate::error::{CliError, CliResult};

pub struct Staged {
    file: NamedTempFile,
    dest: PathBuf,
}

fn parent_dir(dest: &Path) -> &Path {
    match dest.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    }
}

fn temp_beside(dest: &Path, suffix: &str) -> CliResult<NamedTempFile> {
    let dir = parent_dir(dest);
    Builder::new()
        .prefix(".qdel-")
        .suffix(suffix)
        .tempfile_in(dir)
        .map_err(|e| CliError::io(dir, e))
}

pub fn stage_bytes(dest: &Path, bytes: &[u8]) -> CliResult<Staged> {
    let mut file = temp_beside(dest, ".tmp")?;
    file.write_all(bytes)
        .and_then(|()| file.flush())
        .map_err(|e| CliError::io(dest, e))?;
    Ok(Staged {
        file,
        dest: dest.to_path_buf(),
    })
}

pub fn stage_image(dest: &Path, img: &GrayImage<f64>) -> CliResult<Staged> {
    // The encoder picks the format from the extension, so keep it.
    let ext = dest.extension().and_then(|e| e.to_str()).unwrap_or("");
    let file = temp_beside(dest, &format!(".{ext}"))?;
    save_image(img, file.path()).map_err(|e| match e {
        qdel::Error::UnsupportedFormat { reason, .. } => qdel::Error::UnsupportedFormat {
            path: dest.to_path_buf(),
            reason,
        },
        other => other,
    })?;
    Ok(Staged {
        file,
        dest: dest.to_path_buf(),
    })
}

/// Moves every staged file into place.
pub fn commit(staged: Vec<Staged>) -> CliResult<()> {
    for s in staged {
        s.file.persist(&s.dest).map_err(|e| CliError::io(&s.dest, e.error))?;
    }
    Ok(())
}
