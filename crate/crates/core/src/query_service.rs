//! The question → SQL → rows pipeline over immutable, shareable state.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::mini_rdb::{execute, load_csv, parse_sql, Database, LoadError, Value};
use crate::schema_graph::{ConfigError, SchemaConfig, SchemaGraph, SynonymConfig, TableInfo};
use crate::semantic_mapper::{map_question, MapError, MappingTrace, TraceEntry};
use crate::sql_builder::{build_query, render_sql, BuildError};
use crate::text_pipeline::{analyze, Lexicon, LexiconError};
use crate::value_index::{ValueIndex, ValueIndexError};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Schema(#[from] ConfigError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    ValueIndex(#[from] ValueIndexError),
    #[error("cannot open {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Answered,
    CannotAnswer,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryResponse {
    pub question: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sql: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<Value>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl QueryResponse {
    fn failed(question: &str, status: Status, message: impl Into<String>, trace: Option<MappingTrace>) -> Self {
        QueryResponse {
            question: question.to_string(),
            status,
            sql: None,
            columns: None,
            rows: None,
            trace: trace.map(|t| t.entries),
            message: Some(message.into()),
        }
    }
}

/// Tables, columns and synonyms, for clients that help users phrase
/// questions.
#[derive(Debug, Clone, Serialize)]
pub struct SchemaInventory<'a> {
    pub tables: &'a [TableInfo],
    pub synonyms: &'a [SynonymConfig],
}

/// Everything needed to answer questions. Built once, then read-only.
#[derive(Debug)]
pub struct Engine {
    lexicon: Lexicon,
    graph: SchemaGraph,
    index: ValueIndex,
    db: Database,
}

impl Engine {
    pub fn new(lexicon: Lexicon, graph: SchemaGraph, db: Database) -> Result<Self, EngineError> {
        let index = ValueIndex::build(&db, graph.value_columns())?;
        for c in index.collisions() {
            tracing::warn!(key = %c.key, kept = ?c.kept, dropped = ?c.dropped, "value index collision");
        }
        Ok(Engine { lexicon, graph, index, db })
    }

    /// Loads the schema config, one `<table>.csv` per declared table from
    /// `data_dir`, and the lexicon.
    pub fn load(schema_path: &Path, data_dir: &Path, lexicon_path: &Path) -> Result<Self, EngineError> {
        let config = SchemaConfig::load(schema_path)?;
        let graph = SchemaGraph::build(&config)?;
        let db = load_database(&graph, data_dir)?;
        let lexicon = Lexicon::load(lexicon_path)?;
        Self::new(lexicon, graph, db)
    }

    pub fn graph(&self) -> &SchemaGraph {
        &self.graph
    }

    pub fn database(&self) -> &Database {
        &self.db
    }

    pub fn value_index(&self) -> &ValueIndex {
        &self.index
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn schema_inventory(&self) -> SchemaInventory<'_> {
        SchemaInventory { tables: self.graph.tables(), synonyms: self.graph.synonyms() }
    }

    /// Runs the full pipeline. Never fails: every problem is folded into
    /// the response status.
    pub fn answer_question(&self, text: &str) -> QueryResponse {
        let candidates = match analyze(&self.lexicon, text) {
            Ok(c) => c,
            Err(e) => return QueryResponse::failed(text, Status::Error, e.to_string(), None),
        };
        let (elements, trace) = match map_question(&candidates, &self.index, &self.graph) {
            Ok(mapped) => mapped,
            Err(MapError::NothingMapped { trace }) => {
                return QueryResponse::failed(
                    text,
                    Status::CannotAnswer,
                    "This question cannot be answered: no word in it matches a table, column or known value.",
                    Some(trace),
                )
            }
        };
        let query = match build_query(&elements, &self.graph) {
            Ok(q) => q,
            Err(BuildError::NoProjection) => {
                return QueryResponse::failed(
                    text,
                    Status::CannotAnswer,
                    "This question cannot be answered: it does not say what to return.",
                    Some(trace),
                )
            }
            Err(e) => {
                tracing::error!(error = %e, question = text, "query construction failed");
                return QueryResponse::failed(
                    text,
                    Status::Error,
                    "The question could not be turned into a query.",
                    Some(trace),
                );
            }
        };

        // Run exactly the text shown to the user.
        let sql = render_sql(&query);
        let result =
            parse_sql(&sql).map_err(|e| e.to_string()).and_then(|q| execute(&q, &self.db).map_err(|e| e.to_string()));
        match result {
            Ok(table) => QueryResponse {
                question: text.to_string(),
                status: Status::Answered,
                sql: Some(sql),
                columns: Some(table.columns),
                rows: Some(table.rows),
                trace: Some(trace.entries),
                message: None,
            },
            Err(detail) => {
                tracing::error!(error = %detail, sql = %sql, "query execution failed");
                let mut resp = QueryResponse::failed(
                    text,
                    Status::Error,
                    "The generated query could not be executed.",
                    Some(trace),
                );
                resp.sql = Some(sql);
                resp
            }
        }
    }
}

/// Reads `<data_dir>/<table>.csv` for every table in the graph.
pub fn load_database(graph: &SchemaGraph, data_dir: &Path) -> Result<Database, EngineError> {
    let mut db = Database::new();
    for t in graph.tables() {
        let path = data_dir.join(format!("{}.csv", t.physical_name));
        let file = std::fs::File::open(&path)
            .map_err(|source| EngineError::Io { path: path.display().to_string(), source })?;
        let table = load_csv(std::io::BufReader::new(file), &t.physical_name, &t.columns)?;
        db.insert(table).expect("graph table names are unique");
    }
    Ok(db)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> Engine {
        let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        Engine::load(&data.join("schema.json"), &data, &data.join("lexicon.tsv")).unwrap()
    }

    #[test]
    fn answers_italian_question() {
        let r = engine().answer_question("what are the italian restaurants?");
        assert_eq!(r.status, Status::Answered);
        assert_eq!(
            r.sql.as_deref(),
            Some("SELECT DISTINCT restaurant_name FROM restaurants NATURAL JOIN cuisines WHERE cuisine='Italian'")
        );
        assert!(!r.rows.unwrap().is_empty());
        assert!(r.message.is_none());
    }

    #[test]
    fn unanswerable_and_invalid_questions() {
        let e = engine();
        let r = e.answer_question("sing me a song");
        assert_eq!(r.status, Status::CannotAnswer);
        assert!(r.message.is_some() && r.sql.is_none());
        assert_eq!(r.trace.map(|t| t.len()), Some(1));

        let r = e.answer_question("   ");
        assert_eq!(r.status, Status::Error);
        assert!(r.sql.is_none());
    }

    #[test]
    fn execution_failures_are_errors_not_cannot_answer() {
        let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        let graph = SchemaGraph::build(&SchemaConfig::load(data.join("schema.json")).unwrap()).unwrap();
        let mut db = load_database(&graph, &data).unwrap();
        // Drop a column the schema promises so execution hits UnknownColumn.
        let restaurants = db.table("restaurants").unwrap().clone();
        let keep: Vec<usize> =
            (0..restaurants.columns.len()).filter(|&i| restaurants.columns[i].name != "restaurant_name").collect();
        let broken = crate::mini_rdb::Table::new(
            "restaurants",
            keep.iter().map(|&i| restaurants.columns[i].clone()).collect(),
            restaurants.rows.iter().map(|r| keep.iter().map(|&i| r[i].clone()).collect()).collect(),
        )
        .unwrap();
        let mut fresh = Database::new();
        fresh.insert(broken).unwrap();
        fresh.insert(db.table("cuisines").unwrap().clone()).unwrap();
        db = fresh;
        let e = Engine::new(Lexicon::load(data.join("lexicon.tsv")).unwrap(), graph, db).unwrap();
        let r = e.answer_question("which restaurants are in kingston");
        assert_eq!(r.status, Status::Error);
        assert!(r.sql.is_some());
        assert!(!r.message.unwrap().contains("restaurant_name"));
    }

    #[test]
    fn missing_data_file_is_reported() {
        let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        let err =
            Engine::load(&data.join("schema.json"), Path::new("/nonexistent"), &data.join("lexicon.tsv")).unwrap_err();
        assert!(matches!(err, EngineError::Io { .. }));
    }
}
