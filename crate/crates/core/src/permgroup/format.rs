use std::path::Path;

use crate::error::{Error, Result};
use crate::permgroup::group::PermGroup;
use crate::permgroup::perm::Perm;

/// Parsed contents of a group file, before enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupFile {
    /// Reads `degree n` followed by one generator per line as 1-based images.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut generators = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: no + 1, msg };
            match degree {
                None => {
                    let mut it = line.split_whitespace();
                    if it.next() != Some("degree") {
                        return Err(err("expected `degree n`".into()));
                    }
                    let n: usize = it
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("missing degree".into()))?;
                    if it.next().is_some() {
                        return Err(err("trailing tokens after degree".into()));
                    }
                    degree = Some(n);
                }
                Some(n) => {
                    let imgs: Vec<usize> = line
                        .split_whitespace()
                        .map(|t| match t.parse::<usize>() {
                            Ok(v) if v >= 1 => Ok(v - 1),
                            _ => Err(err(format!("bad image `{t}`"))),
                        })
                        .collect::<Result<_>>()?;
                    if imgs.len() != n {
                        return Err(err(format!("expected {n} images, found {}", imgs.len())));
                    }
                    generators.push(Perm::new(imgs).map_err(|e| err(e.to_string()))?);
                }
            }
        }
        let degree = degree.ok_or(Error::Parse {
            line: 0,
            msg: "empty group file".into(),
        })?;
        Ok(GroupFile { degree, generators })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical text form; parsing it back yields the same generators.
    pub fn to_text(&self) -> String {
        let mut out = format!("degree {}\n", self.degree);
        for g in &self.generators {
            let line: Vec<String> = g.images().iter().map(|&x| (x as usize + 1).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn build(&self, cap: usize) -> Result<PermGroup> {
        PermGroup::with_cap(self.degree, self.generators.clone(), cap)
    }
}

impl From<&PermGroup> for GroupFile {
    fn from(g: &PermGroup) -> Self {
        GroupFile {
            degree: g.degree(),
            generators: g.generators().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = GroupFile::parse("# S3\ndegree 3\n2 1 3\n2 3 1\n").unwrap();
        assert_eq!(f.generators.len(), 2);
        assert_eq!(GroupFile::parse(&f.to_text()).unwrap(), f);
        assert_eq!(f.build(100).unwrap().order(), 6);
    }

    #[test]
    fn rejects_malformed() {
        assert!(GroupFile::parse("").is_err());
        assert!(GroupFile::parse("degree 3\n1 2\n").is_err());
        assert!(GroupFile::parse("degree 3\n1 1 2\n").is_err());
        assert!(GroupFile::parse("degree 3\n0 1 2\n").is_err());
        assert!(matches!(
            GroupFile::parse("deg 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
