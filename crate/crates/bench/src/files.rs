use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{BenchError, Result};

/// Writes `bytes` to a temporary file next to `path`, then renames it into
/// place, so readers never observe a partial file.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut file = fs::File::create(&tmp).map_err(|e| BenchError::io(&tmp, e))?;
    file.write_all(bytes).map_err(|e| BenchError::io(&tmp, e))?;
    file.sync_all().map_err(|e| BenchError::io(&tmp, e))?;
    drop(file);
    fs::rename(&tmp, path).map_err(|e| BenchError::io(path, e))
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| BenchError::io(path, e))
}
