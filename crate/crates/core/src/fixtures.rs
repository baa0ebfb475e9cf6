//! Plain-text fixture tables.
//!
//! One entry per line: `label | value | provenance`. Blank lines and lines
//! starting with `#` are ignored. The shipped tables are compiled in; a
//! directory with the same file names can be loaded instead.

use std::path::Path;

use crate::error::{Error, Result};

pub const HESSE: &str = "hesse_fixtures.txt";
pub const BIELLIPTIC: &str = "bielliptic_table.txt";
pub const GRAM: &str = "gram_fixtures.txt";
pub const E2_CLASSES: &str = "e2_classes.txt";

pub const FILE_NAMES: [&str; 4] = [HESSE, BIELLIPTIC, GRAM, E2_CLASSES];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: String,
    pub value: String,
    pub provenance: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Table {
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.splitn(3, '|').map(str::trim).collect();
            if parts.len() != 3 || parts[0].is_empty() {
                return Err(Error::Fixture(format!("{name}:{}: expected `label | value | provenance`", n + 1)));
            }
            entries.push(Entry {
                label: parts[0].to_string(),
                value: parts[1].to_string(),
                provenance: parts[2].to_string(),
            });
        }
        Ok(Table { name: name.to_string(), entries })
    }

    pub fn get(&self, label: &str) -> Result<&Entry> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .ok_or_else(|| Error::Fixture(format!("{}: missing entry {label:?}", self.name)))
    }

    /// Entries whose label starts with `prefix`, in file order.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.label.starts_with(prefix))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixtures {
    pub hesse: Table,
    pub bielliptic: Table,
    pub gram: Table,
    pub e2_classes: Table,
}

impl Fixtures {
    pub fn embedded() -> Self {
        let t = |name, text| Table::parse(name, text).expect("shipped fixture parses");
        Fixtures {
            hesse: t(HESSE, include_str!("../fixtures/hesse_fixtures.txt")),
            bielliptic: t(BIELLIPTIC, include_str!("../fixtures/bielliptic_table.txt")),
            gram: t(GRAM, include_str!("../fixtures/gram_fixtures.txt")),
            e2_classes: t(E2_CLASSES, include_str!("../fixtures/e2_classes.txt")),
        }
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| -> Result<Table> {
            let p = dir.join(name);
            let text = std::fs::read_to_string(&p).map_err(|e| Error::Fixture(format!("{}: {e}", p.display())))?;
            Table::parse(name, &text)
        };
        Ok(Fixtures {
            hesse: read(HESSE)?,
            bielliptic: read(BIELLIPTIC)?,
            gram: read(GRAM)?,
            e2_classes: read(E2_CLASSES)?,
        })
    }
}
