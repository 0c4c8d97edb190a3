//! Natural-language question answering over a small relational database.
//!
//! A question flows through the crate in this order:
//!
//! 1. [`text_pipeline`] tokenizes, lemmatizes and POS-tags the question and
//!    extracts candidate phrases (nouns, adjectives, noun phrases).
//! 2. [`semantic_mapper`] maps each candidate to a data value through the
//!    [`value_index`], or to a table/attribute through the [`schema_graph`].
//! 3. [`sql_builder`] fills the fixed `SELECT DISTINCT … FROM … NATURAL JOIN …
//!    WHERE …` template from the mapped elements.
//! 4. [`mini_rdb`] parses and executes that SQL against CSV-loaded tables.
//!
//! [`query_service::Engine`] holds the loaded state and runs all four steps.

pub mod mini_rdb;
pub mod query_service;
pub mod schema_graph;
pub mod semantic_mapper;
pub mod sql_builder;
pub mod text_pipeline;
pub mod value_index;

pub use mini_rdb::{Database, ResultTable, Table};
pub use query_service::{Engine, QueryResponse, Status};
pub use schema_graph::{SchemaConfig, SchemaGraph};
pub use semantic_mapper::{MappedElements, MappingTrace};
pub use sql_builder::SqlQuery;
pub use text_pipeline::{CandidatePhrase, Lexicon, Tag};
pub use value_index::ValueIndex;
