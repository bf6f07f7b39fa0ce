//! Output directory handling: atomic file writes and the config sidecar.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never observe a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp"));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Files written under one output directory.
pub struct OutDir {
    dir: PathBuf,
    pub written: Vec<PathBuf>,
}

impl OutDir {
    pub fn create(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf(), written: Vec::new() })
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> std::io::Result<()> {
        let path = self.dir.join(name);
        write_atomic(&path, bytes)?;
        self.written.push(path);
        Ok(())
    }

    /// `<command>.config.json`: the run configuration and its SHA-256. Data
    /// files carry no timestamps or hashes, so they stay byte-identical across
    /// repeated runs.
    pub fn write_sidecar<C: Serialize>(&mut self, command: &str, config: &C) -> std::io::Result<()> {
        let canonical = serde_json::to_vec(config).map_err(std::io::Error::other)?;
        let body = serde_json::json!({
            "command": command,
            "config": config,
            "config_sha256": sha256_hex(&canonical),
        });
        let mut text = serde_json::to_string_pretty(&body).map_err(std::io::Error::other)?;
        text.push('\n');
        self.write(&format!("{command}.config.json"), text.as_bytes())
    }
}
