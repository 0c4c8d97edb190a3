//! Lookup from a data value mentioned in a question to the column holding
//! it. Keys are lowercase with single spaces; they are not lemmatized, so
//! "dishes" and "dish" stay distinct values.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::mini_rdb::{ColumnType, Database, Value};
use crate::schema_graph::ValueColumnConfig;

pub const DEFAULT_MAX_KEYS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueEntry {
    /// The value as first seen in the data, original casing.
    pub value: String,
    pub attribute: String,
    pub table: String,
}

/// A key present in more than one indexed column. The earlier column in
/// config order keeps the key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub key: String,
    pub kept: (String, String),
    pub dropped: (String, String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValueIndexError {
    #[error("value index column {table}.{column}: unknown table")]
    UnknownTable { table: String, column: String },
    #[error("value index column {table}.{column}: unknown column")]
    UnknownColumn { table: String, column: String },
    #[error("value index column {table}.{column} is not text")]
    NotText { table: String, column: String },
    #[error("value index would exceed {max} keys")]
    TooManyKeys { max: usize },
}

#[derive(Debug, Clone, Default)]
pub struct ValueIndex {
    entries: HashMap<String, ValueEntry>,
    collisions: Vec<Collision>,
}

/// Lowercases and collapses whitespace runs to single spaces.
pub fn normalize_value(text: &str) -> String {
    text.split_whitespace().map(str::to_lowercase).collect::<Vec<_>>().join(" ")
}

impl ValueIndex {
    pub fn build(db: &Database, columns: &[ValueColumnConfig]) -> Result<Self, ValueIndexError> {
        Self::build_with_limit(db, columns, DEFAULT_MAX_KEYS)
    }

    /// Indexes every distinct value of the configured text columns, failing
    /// once more than `max_keys` keys would be stored.
    pub fn build_with_limit(
        db: &Database,
        columns: &[ValueColumnConfig],
        max_keys: usize,
    ) -> Result<Self, ValueIndexError> {
        let mut index = ValueIndex::default();
        for vc in columns {
            let table = db
                .table(&vc.table)
                .ok_or_else(|| ValueIndexError::UnknownTable { table: vc.table.clone(), column: vc.column.clone() })?;
            let idx = table
                .column_index(&vc.column)
                .ok_or_else(|| ValueIndexError::UnknownColumn { table: vc.table.clone(), column: vc.column.clone() })?;
            if table.columns[idx].ty != ColumnType::Text {
                return Err(ValueIndexError::NotText { table: vc.table.clone(), column: vc.column.clone() });
            }
            for row in &table.rows {
                let Value::Text(raw) = &row[idx] else { continue };
                let key = normalize_value(raw);
                if key.is_empty() {
                    continue;
                }
                match index.entries.get(&key) {
                    Some(existing) if existing.table == vc.table && existing.attribute == vc.column => {}
                    Some(existing) => {
                        let dropped = (vc.table.clone(), vc.column.clone());
                        if !index.collisions.iter().any(|c| c.key == key && c.dropped == dropped) {
                            index.collisions.push(Collision {
                                key,
                                kept: (existing.table.clone(), existing.attribute.clone()),
                                dropped,
                            });
                        }
                    }
                    None => {
                        if index.entries.len() >= max_keys {
                            return Err(ValueIndexError::TooManyKeys { max: max_keys });
                        }
                        index.entries.insert(
                            key,
                            ValueEntry { value: raw.clone(), attribute: vc.column.clone(), table: vc.table.clone() },
                        );
                    }
                }
            }
        }
        Ok(index)
    }

    /// Joins `phrase` with single spaces, lowercases, and looks it up.
    pub fn lookup<S: AsRef<str>>(&self, phrase: &[S]) -> Option<&ValueEntry> {
        let joined = phrase.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" ");
        self.entries.get(&normalize_value(&joined))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn collisions(&self) -> &[Collision] {
        &self.collisions
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}
