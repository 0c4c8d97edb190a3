//! The query template and its AST:
//!
//! ```text
//! SELECT DISTINCT <columns> FROM <t1> [NATURAL JOIN <ti>]* [WHERE <a>='<v>' [and <a>='<v>']*]
//! ```
//!
//! `DISTINCT` is unconditional, so the AST has no flag for it. Column names
//! are unqualified; the schema graph rejects configs where that would be
//! ambiguous.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::schema_graph::{GraphError, SchemaGraph};
use crate::semantic_mapper::MappedElements;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Literal {
    Text(String),
    /// Kept as written (`-?digits[.digits]`) so rendering is lossless.
    Number(String),
}

impl Literal {
    pub fn as_str(&self) -> &str {
        match self {
            Literal::Text(s) | Literal::Number(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Predicate {
    pub column: String,
    pub value: Literal,
}

impl Predicate {
    pub fn new(column: impl Into<String>, value: Literal) -> Self {
        Predicate { column: column.into(), value }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SqlQuery {
    pub projection: Vec<String>,
    /// Joined left to right with NATURAL JOIN.
    pub tables: Vec<String>,
    /// Conjunction of equalities.
    pub predicates: Vec<Predicate>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("no column could be chosen for the answer")]
    NoProjection,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Fills the template from mapped elements.
///
/// The projection is the explicitly requested attributes plus the display
/// attribute of every table named in the question. If that is empty, the
/// display attributes of all involved tables are used instead.
pub fn build_query(elements: &MappedElements, graph: &SchemaGraph) -> Result<SqlQuery, BuildError> {
    if elements.tables.is_empty() {
        return Err(BuildError::NoProjection);
    }
    let tables = graph.join_path(&elements.tables)?;

    let display = |t: &String| graph.table(t).map(|info| info.display_attribute.clone());
    let mut projection: BTreeSet<String> = elements.attributes.iter().map(|a| a.attribute.clone()).collect();
    projection.extend(elements.anchor_tables.iter().filter_map(display));
    if projection.is_empty() {
        projection.extend(elements.tables.iter().filter_map(display));
    }
    if projection.is_empty() {
        return Err(BuildError::NoProjection);
    }

    let predicates =
        elements.predicates.iter().map(|p| Predicate::new(&p.attribute, Literal::Text(p.value.clone()))).collect();
    Ok(SqlQuery { projection: projection.into_iter().collect(), tables, predicates })
}

/// Renders the canonical text: projection sorted, tables and predicates in
/// AST order, strings single-quoted with quotes doubled.
pub fn render_sql(q: &SqlQuery) -> String {
    let mut columns: Vec<&str> = q.projection.iter().map(String::as_str).collect();
    columns.sort_unstable();
    let mut out = format!("SELECT DISTINCT {} FROM ", columns.join(", "));
    for (i, t) in q.tables.iter().enumerate() {
        if i > 0 {
            out.push_str(" NATURAL JOIN ");
        }
        out.push_str(t);
    }
    for (i, p) in q.predicates.iter().enumerate() {
        out.push_str(if i == 0 { " WHERE " } else { " and " });
        match &p.value {
            Literal::Text(s) => write!(out, "{}='{}'", p.column, s.replace('\'', "''")),
            Literal::Number(n) => write!(out, "{}={}", p.column, n),
        }
        .expect("writing to a String cannot fail");
    }
    out
}

impl std::fmt::Display for SqlQuery {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_sql(self))
    }
}
