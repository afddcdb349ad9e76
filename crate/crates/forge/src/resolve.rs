//! Finding model text for a command-line model argument.

use std::path::{Path, PathBuf};

/// Environment variable naming a directory searched for `<name>.model`.
pub const MODELS_ENV: &str = "SOLITON_FORGE_MODELS";

/// Model files compiled into the binary, by catalog id.
pub const EMBEDDED: [(&str, &str); 4] = [
    ("gs3d", include_str!("../../../models/gs3d.model")),
    ("typeB", include_str!("../../../models/typeB.model")),
    ("flat3", include_str!("../../../models/flat3.model")),
    ("flat4", include_str!("../../../models/flat4.model")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    /// What diagnostics call the model: a path or a bare name.
    pub label: String,
    pub text: String,
}

/// Resolution order: an existing file path, then `$SOLITON_FORGE_MODELS/<arg>.model`,
/// then the embedded copy of a shipped model.
pub fn resolve(arg: &str, models_dir: Option<&Path>) -> Result<Source, String> {
    let p = Path::new(arg);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {arg}: {e}"))?;
        return Ok(Source { label: arg.to_string(), text });
    }
    if let Some(dir) = models_dir {
        let cand: PathBuf = dir.join(format!("{arg}.model"));
        if cand.is_file() {
            let text = std::fs::read_to_string(&cand).map_err(|e| format!("cannot read {}: {e}", cand.display()))?;
            return Ok(Source { label: cand.display().to_string(), text });
        }
    }
    EMBEDDED
        .iter()
        .find(|(id, _)| *id == arg)
        .map(|(id, text)| Source { label: format!("{id}.model"), text: text.to_string() })
        .ok_or_else(|| format!("model `{arg}` not found (not a file, not in ${MODELS_ENV}, not a shipped model)"))
}
