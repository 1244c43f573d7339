//! JSON table files: `{"N": n, "entries": [{"x": {...}, "fx": {...}}, ...]}`.

use std::fmt;
use std::path::{Path, PathBuf};

use bicyclic_core::{Elem, Error as CoreError, TabulatedEndo};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Serialize, Deserialize)]
pub struct TableFile {
    #[serde(rename = "N")]
    pub bound: u64,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Entry {
    pub x: Elem,
    pub fx: Elem,
}

impl From<&TabulatedEndo> for TableFile {
    fn from(t: &TabulatedEndo) -> Self {
        TableFile {
            bound: t.domain_bound(),
            entries: t.entries().map(|(x, fx)| Entry { x, fx }).collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("MalformedEntry at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("MissingEntry: {}", KeyList(.0))]
    MissingEntry(Vec<Elem>),

    #[error("MalformedEntry: entry {index}: {reason}")]
    MalformedEntry { index: usize, reason: String },
}

struct KeyList<'a>(&'a [Elem]);

impl fmt::Display for KeyList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} absent key(s):", self.0.len())?;
        for k in self.0 {
            write!(f, " {k}")?;
        }
        Ok(())
    }
}

pub fn parse_table(text: &str) -> Result<TabulatedEndo, TableError> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| TableError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    TabulatedEndo::from_entries(file.bound, file.entries.iter().map(|e| (e.x, e.fx))).map_err(|e| {
        match e {
            CoreError::MissingEntry { keys } => TableError::MissingEntry(keys),
            CoreError::MalformedEntry { index, reason } => {
                TableError::MalformedEntry { index, reason }
            }
            other => TableError::MalformedEntry {
                index: 0,
                reason: other.to_string(),
            },
        }
    })
}

/// Reads a table file and checks that it covers `Window(N)` exactly.
pub fn load_table(path: &Path) -> Result<TabulatedEndo, TableError> {
    let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_table(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bicyclic_core::oracle::tabulate;
    use bicyclic_core::NormalForm;

    fn identity_file(bound: u64) -> TableFile {
        TableFile::from(&tabulate(NormalForm::IDENTITY, bound).unwrap())
    }

    #[test]
    fn complete_file_loads() {
        let text = serde_json::to_string(&identity_file(2)).unwrap();
        let t = parse_table(&text).unwrap();
        assert_eq!(t.len(), 27);
    }

    #[test]
    fn missing_key_is_listed() {
        let mut file = identity_file(2);
        file.entries.retain(|e| e.x != Elem::new(2, 2, 1));
        let err = parse_table(&serde_json::to_string(&file).unwrap()).unwrap_err();
        assert!(matches!(&err, TableError::MissingEntry(keys) if keys == &[Elem::new(2, 2, 1)]));
        assert!(err.to_string().contains("(2,2,1)"));
    }

    #[test]
    fn image_on_unknown_ray_is_malformed() {
        let mut file = identity_file(2);
        file.entries[4].fx = Elem::new(0, 0, 7);
        let err = parse_table(&serde_json::to_string(&file).unwrap()).unwrap_err();
        assert!(
            matches!(err, TableError::MalformedEntry { index: 4, .. }),
            "{err}"
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_table("{\"N\": 1,\n \"entries\": [{\"x\": {\"i\": 0}}]}").unwrap_err();
        match err {
            TableError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
    }
}
