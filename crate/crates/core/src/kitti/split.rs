use std::collections::HashSet;

use crate::error::{Error, Result};

/// Ordered frame ids, e.g. `000003`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplitList(pub Vec<String>);

impl SplitList {
    pub fn ids(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn parse_split(text: &str) -> Result<SplitList> {
    let mut seen = HashSet::new();
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let id = line.trim();
        if id.is_empty() {
            continue;
        }
        if id.contains(char::is_whitespace) {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("frame id `{id}` contains whitespace"),
            });
        }
        if !seen.insert(id) {
            return Err(Error::Validation(format!("duplicate frame id `{id}` on line {}", i + 1)));
        }
        ids.push(id.to_string());
    }
    Ok(SplitList(ids))
}
