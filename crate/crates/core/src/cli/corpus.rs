use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::permgroup::named::by_name;
use crate::permgroup::{GroupFile, PermGroup};

/// Group files of the default corpus, compiled in so the binary needs no data
/// directory.
const DEFAULT_CORPUS: &[(&str, &str, usize)] = &[
    ("C2", include_str!("../../corpus/C2.grp"), 2),
    ("C3", include_str!("../../corpus/C3.grp"), 3),
    ("C4", include_str!("../../corpus/C4.grp"), 4),
    ("V4", include_str!("../../corpus/V4.grp"), 4),
    ("S3", include_str!("../../corpus/S3.grp"), 6),
    ("D8", include_str!("../../corpus/D8.grp"), 8),
    ("Q8", include_str!("../../corpus/Q8.grp"), 8),
    ("A4", include_str!("../../corpus/A4.grp"), 12),
    ("S4", include_str!("../../corpus/S4.grp"), 24),
    ("C2xS3", include_str!("../../corpus/C2xS3.grp"), 12),
    ("S3xS3", include_str!("../../corpus/S3xS3.grp"), 36),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    /// Where the generators came from; `None` for built-in entries.
    pub path: Option<PathBuf>,
    pub file: GroupFile,
    pub order: Option<usize>,
    pub notes: Option<String>,
}

impl CorpusEntry {
    /// Enumerates the group and checks the declared order.
    pub fn build(&self, cap: usize) -> Result<PermGroup> {
        let g = self.file.build(cap)?;
        if let Some(o) = self.order {
            if g.order() != o {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("{}: declared order {o}, generated {}", self.name, g.order()),
                });
            }
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusManifest {
    pub entries: Vec<CorpusEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    #[serde(default)]
    entry: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    file: PathBuf,
    order: Option<usize>,
    notes: Option<String>,
}

impl CorpusManifest {
    pub fn default_corpus() -> Self {
        let entries = DEFAULT_CORPUS
            .iter()
            .map(|&(name, text, order)| CorpusEntry {
                name: name.to_string(),
                path: None,
                file: GroupFile::parse(text).expect("built-in corpus parses"),
                order: Some(order),
                notes: None,
            })
            .collect();
        CorpusManifest { entries }
    }

    /// Parses a TOML manifest of `[[entry]]` tables; file paths are resolved
    /// against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let raw: RawManifest = toml::from_str(text).map_err(|e| Error::Parse {
            line: 0,
            msg: e.to_string(),
        })?;
        let mut seen = HashSet::new();
        let mut entries = Vec::new();
        for e in raw.entry {
            if !seen.insert(e.name.clone()) {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("duplicate corpus name `{}`", e.name),
                });
            }
            let path = base.join(&e.file);
            entries.push(CorpusEntry {
                name: e.name,
                file: GroupFile::read(&path)?,
                path: Some(path),
                order: e.order,
                notes: e.notes,
            });
        }
        Ok(CorpusManifest { entries })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Resolves `--group`: an existing group file, a default-corpus name, or a
/// family name such as `S5` or `D10`.
pub fn resolve_group(spec: &str) -> Result<CorpusEntry> {
    let path = Path::new(spec);
    if path.is_file() {
        let name = path.file_stem().map_or(spec.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(CorpusEntry {
            name,
            file: GroupFile::read(path)?,
            path: Some(path.to_path_buf()),
            order: None,
            notes: None,
        });
    }
    if let Some(e) = CorpusManifest::default_corpus().get(spec) {
        return Ok(e.clone());
    }
    let g = by_name(spec).ok_or_else(|| Error::Parse {
        line: 0,
        msg: format!("`{spec}` is neither a group file nor a known group name"),
    })?;
    Ok(CorpusEntry {
        name: spec.to_string(),
        file: GroupFile::from(&g),
        path: None,
        order: Some(g.order()),
        notes: None,
    })
}
