//! A tiny in-memory relational engine for the restricted query dialect:
//! `SELECT DISTINCT` projections over a chain of `NATURAL JOIN`s filtered by
//! conjunctive equality predicates.
//!
//! Tables are loaded from CSV once and never mutated afterwards, so a
//! [`Database`] can be shared freely between threads.

mod exec;
mod load;
mod parser;

pub use exec::{execute, natural_join};
pub use load::{load_csv, LoadError};
pub use parser::{is_keyword, parse_sql, SyntaxError};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnType {
    Text,
    Real,
    Integer,
}

impl ColumnType {
    pub fn is_numeric(self) -> bool {
        matches!(self, ColumnType::Real | ColumnType::Integer)
    }
}

impl fmt::Display for ColumnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColumnType::Text => "text",
            ColumnType::Real => "real",
            ColumnType::Integer => "integer",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: ColumnType,
}

impl Column {
    pub fn new(name: impl Into<String>, ty: ColumnType) -> Self {
        Column { name: name.into(), ty }
    }
}

/// A cell value. Reals compare and hash by bit pattern, which is exact
/// equality for the finite values the loader accepts (apart from `-0.0`).
#[derive(Debug, Clone)]
pub enum Value {
    Text(String),
    Integer(i64),
    Real(f64),
}

impl Value {
    pub fn ty(&self) -> ColumnType {
        match self {
            Value::Text(_) => ColumnType::Text,
            Value::Integer(_) => ColumnType::Integer,
            Value::Real(_) => ColumnType::Real,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Text(_) => None,
            Value::Integer(i) => Some(*i as f64),
            Value::Real(r) => Some(*r),
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Text(a), Value::Text(b)) => a == b,
            (Value::Integer(a), Value::Integer(b)) => a == b,
            (Value::Real(a), Value::Real(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}

impl Eq for Value {}

impl Hash for Value {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Value::Text(s) => s.hash(state),
            Value::Integer(i) => i.hash(state),
            Value::Real(r) => r.to_bits().hash(state),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Text(s) => f.write_str(s),
            Value::Integer(i) => write!(f, "{i}"),
            Value::Real(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Text(t) => s.serialize_str(t),
            Value::Integer(i) => s.serialize_i64(*i),
            Value::Real(r) => s.serialize_f64(*r),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    /// Checks the table invariants: unique column names, rectangular rows,
    /// and values matching their declared column types.
    pub fn new(name: impl Into<String>, columns: Vec<Column>, rows: Vec<Vec<Value>>) -> Result<Self, ExecError> {
        let name = name.into();
        for (i, c) in columns.iter().enumerate() {
            if columns[..i].iter().any(|o| o.name == c.name) {
                return Err(ExecError::DuplicateColumn(c.name.clone()));
            }
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(ExecError::MalformedRow { table: name, row: r });
            }
            if row.iter().zip(&columns).any(|(v, c)| v.ty() != c.ty) {
                return Err(ExecError::MalformedRow { table: name, row: r });
            }
        }
        Ok(Table { name, columns, rows })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Database {
    tables: BTreeMap<String, Table>,
}

impl Database {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, table: Table) -> Result<(), ExecError> {
        if self.tables.contains_key(&table.name) {
            return Err(ExecError::DuplicateTable(table.name));
        }
        self.tables.insert(table.name.clone(), table);
        Ok(())
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.get(name)
    }

    pub fn tables(&self) -> impl Iterator<Item = &Table> {
        self.tables.values()
    }
}

/// Query output: distinct rows in a deterministic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl ResultTable {
    /// Removes duplicate rows and sorts by the rows' string renderings.
    pub fn from_rows(columns: Vec<String>, rows: Vec<Vec<Value>>) -> Self {
        let mut keyed: Vec<(Vec<String>, Vec<Value>)> =
            rows.into_iter().map(|r| (r.iter().map(Value::to_string).collect(), r)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| type_order(&a.1, &b.1)));
        keyed.dedup_by(|a, b| a.1 == b.1);
        ResultTable { columns, rows: keyed.into_iter().map(|(_, r)| r).collect() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Values of one column, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[idx]).collect())
    }
}

// Tie-breaker for rows whose renderings collide, e.g. Text("1") vs Integer(1).
fn type_order(a: &[Value], b: &[Value]) -> Ordering {
    let rank = |v: &Value| v.ty() as u8;
    a.iter().map(rank).cmp(b.iter().map(rank))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExecError {
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("unknown column {0:?}")]
    UnknownColumn(String),
    #[error("tables {left:?} and {right:?} share no column to join on")]
    NoSharedColumns { left: String, right: String },
    #[error("duplicate table {0:?}")]
    DuplicateTable(String),
    #[error("duplicate column {0:?}")]
    DuplicateColumn(String),
    #[error("row {row} of table {table:?} does not match the table's columns")]
    MalformedRow { table: String, row: usize },
}
