//! Artifact output: atomic file writes and config-stamped CSV/JSON.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Writes `contents` to a temporary file next to `path`, syncs it and
/// renames it into place, so readers never see a partial file.
pub fn atomic_write(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::Domain(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

/// Prefixes a CSV body with a `# config: {...}` comment line.
pub fn csv_with_config(config: &Value, body: &str) -> String {
    format!("# config: {}\n{body}", serde_json::to_string(config).expect("json value"))
}

/// Serializes `{"config": config, "result": value}` as pretty JSON.
pub fn json_with_config<T: Serialize>(config: &Value, value: &T) -> Result<String> {
    let doc = serde_json::json!({ "config": config, "result": value });
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_file() {
        let dir = std::env::temp_dir().join(format!("rootflow-io-{}", std::process::id()));
        let path = dir.join("out.csv");
        atomic_write(&path, b"a\n").unwrap();
        atomic_write(&path, b"b\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "b\n");
        let leftovers: Vec<_> = fs::read_dir(&dir)
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().contains(".tmp"))
            .collect();
        assert!(leftovers.is_empty());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn config_header() {
        let cfg = serde_json::json!({"seed": 3});
        let s = csv_with_config(&cfg, "x,y\n1,2\n");
        assert_eq!(s.lines().next(), Some(r#"# config: {"seed":3}"#));
        let j: Value = serde_json::from_str(&json_with_config(&cfg, &[1, 2]).unwrap()).unwrap();
        assert_eq!(j["config"]["seed"], 3);
        assert_eq!(j["result"][1], 2);
    }
}
