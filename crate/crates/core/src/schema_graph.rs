//! Property graph of the backend schema: table, attribute and synonym nodes
//! joined by `has_attribute`, `synonym_of` and `references` edges.
//!
//! Node labels are lowercase and lemmatized so question lemmas can be looked
//! up directly. Attribute labels come from column names with underscores
//! read as spaces (`aggregate_rating` → "aggregate rating"). Physical names
//! live on [`TableInfo`] only. The graph is immutable once built.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mini_rdb::{Column, ColumnType};
use crate::text_pipeline::lemmatize;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemaConfig {
    pub tables: Vec<TableConfig>,
    #[serde(default)]
    pub references: Vec<ReferenceConfig>,
    #[serde(default)]
    pub synonyms: Vec<SynonymConfig>,
    #[serde(default)]
    pub value_index_columns: Vec<ValueColumnConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableConfig {
    pub name: String,
    pub display_attribute: String,
    pub columns: Vec<Column>,
    /// Word users call the table by; defaults to the lemmatized name.
    #[serde(default)]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceConfig {
    pub left_table: String,
    pub right_table: String,
    pub column: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Table,
    Attribute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynonymConfig {
    pub word: String,
    pub target_kind: TargetKind,
    pub target_table: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_attribute: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValueColumnConfig {
    pub table: String,
    pub column: String,
}

impl SchemaConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("cannot read schema config: {0}")]
    Io(String),
    #[error("invalid schema config: {0}")]
    Parse(String),
    #[error("schema config declares no tables")]
    NoTables,
    #[error("table {0:?} is declared twice")]
    DuplicateTable(String),
    #[error("table {0:?} has no columns")]
    NoColumns(String),
    #[error("table {table:?} declares column {column:?} twice")]
    DuplicateColumn { table: String, column: String },
    #[error("display attribute {column:?} is not a column of table {table:?}")]
    UnknownDisplayAttribute { table: String, column: String },
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("unknown column {column:?} in table {table:?}")]
    UnknownColumn { table: String, column: String },
    #[error("column {column:?} appears in tables {tables:?} but is not a declared reference column")]
    AmbiguousColumn { column: String, tables: Vec<String> },
    #[error("synonym {0:?} targets an attribute but names none")]
    MissingSynonymAttribute(String),
    #[error("empty label for {0}")]
    EmptyLabel(String),
    #[error("label {label:?} is used twice for {kind:?} nodes")]
    DuplicateLabel { label: String, kind: NodeKind },
    #[error("value index column {table}.{column} is not text")]
    NonTextValueColumn { table: String, column: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NodeId(usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Table,
    Attribute,
    Synonym,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemaNode {
    pub id: NodeId,
    pub label: String,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    HasAttribute,
    SynonymOf,
    References { column: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemaEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableInfo {
    pub physical_name: String,
    pub label: String,
    pub display_attribute: String,
    pub columns: Vec<Column>,
}

impl TableInfo {
    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }
}

/// A node whose label matched a lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMatch {
    pub node: NodeId,
    pub kind: NodeKind,
}

/// What a matched node ultimately stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolvedElement {
    Table { table: String },
    Attribute { table: String, attribute: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("no tables to join")]
    NoTables,
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("tables {0:?} cannot be reached through declared references")]
    DisconnectedTables(Vec<String>),
    #[error("schema graph is corrupt: {0}")]
    GraphCorrupt(String),
}

#[derive(Debug, Clone)]
pub struct SchemaGraph {
    nodes: Vec<SchemaNode>,
    edges: Vec<SchemaEdge>,
    tables: Vec<TableInfo>,
    /// Table node id per entry of `tables`.
    table_nodes: Vec<NodeId>,
    /// Owning table index per node (synonyms: their target's table).
    owner: Vec<usize>,
    by_label: HashMap<String, Vec<NodeId>>,
    synonyms: Vec<SynonymConfig>,
    value_columns: Vec<ValueColumnConfig>,
}

/// Lowercases, splits on whitespace and underscores, lemmatizes each word.
pub fn normalize_label(text: &str) -> String {
    text.to_lowercase()
        .split(|c: char| c.is_whitespace() || c == '_')
        .filter(|w| !w.is_empty())
        .map(lemmatize)
        .collect::<Vec<_>>()
        .join(" ")
}

impl SchemaGraph {
    /// Validates the config and materializes the graph. The first violated
    /// constraint is reported.
    pub fn build(config: &SchemaConfig) -> Result<Self, ConfigError> {
        validate(config)?;

        let mut g = SchemaGraph {
            nodes: Vec::new(),
            edges: Vec::new(),
            tables: Vec::new(),
            table_nodes: Vec::new(),
            owner: Vec::new(),
            by_label: HashMap::new(),
            synonyms: config.synonyms.clone(),
            value_columns: config.value_index_columns.clone(),
        };
        let mut seen: BTreeSet<(String, NodeKind, usize)> = BTreeSet::new();
        let mut attr_nodes: HashMap<(usize, String), NodeId> = HashMap::new();

        for (ti, t) in config.tables.iter().enumerate() {
            let label = normalize_label(t.label.as_deref().unwrap_or(&t.name));
            if label.is_empty() {
                return Err(ConfigError::EmptyLabel(format!("table {:?}", t.name)));
            }
            // Table labels are unique graph-wide, so the owner slot is unused.
            if !seen.insert((label.clone(), NodeKind::Table, 0)) {
                return Err(ConfigError::DuplicateLabel { label, kind: NodeKind::Table });
            }
            let tnode = g.add_node(label.clone(), NodeKind::Table, ti);
            g.table_nodes.push(tnode);
            g.tables.push(TableInfo {
                physical_name: t.name.clone(),
                label,
                display_attribute: t.display_attribute.clone(),
                columns: t.columns.clone(),
            });
            for c in &t.columns {
                let label = normalize_label(&c.name);
                if label.is_empty() {
                    return Err(ConfigError::EmptyLabel(format!("column {}.{}", t.name, c.name)));
                }
                if !seen.insert((label.clone(), NodeKind::Attribute, ti)) {
                    return Err(ConfigError::DuplicateLabel { label, kind: NodeKind::Attribute });
                }
                let anode = g.add_node(label, NodeKind::Attribute, ti);
                g.edges.push(SchemaEdge { from: tnode, to: anode, kind: EdgeKind::HasAttribute });
                attr_nodes.insert((ti, c.name.clone()), anode);
            }
        }

        for r in &config.references {
            let (l, rt) = (g.table_index(&r.left_table).unwrap(), g.table_index(&r.right_table).unwrap());
            g.edges.push(SchemaEdge {
                from: g.table_nodes[l],
                to: g.table_nodes[rt],
                kind: EdgeKind::References { column: r.column.clone() },
            });
        }

        for s in &config.synonyms {
            let label = normalize_label(&s.word);
            if label.is_empty() {
                return Err(ConfigError::EmptyLabel(format!("synonym {:?}", s.word)));
            }
            if !seen.insert((label.clone(), NodeKind::Synonym, 0)) {
                return Err(ConfigError::DuplicateLabel { label, kind: NodeKind::Synonym });
            }
            let ti = g.table_index(&s.target_table).unwrap();
            let target = match s.target_kind {
                TargetKind::Table => g.table_nodes[ti],
                TargetKind::Attribute => {
                    let attr = s.target_attribute.clone().unwrap_or_default();
                    attr_nodes[&(ti, attr)]
                }
            };
            let snode = g.add_node(label, NodeKind::Synonym, ti);
            g.edges.push(SchemaEdge { from: snode, to: target, kind: EdgeKind::SynonymOf });
        }

        for ids in g.by_label.values_mut() {
            let (nodes, owner, tables) = (&g.nodes, &g.owner, &g.tables);
            ids.sort_by(|a, b| {
                let key = |id: &NodeId| (nodes[id.0].kind, &tables[owner[id.0]].physical_name, id.0);
                key(a).cmp(&key(b))
            });
        }
        Ok(g)
    }

    fn add_node(&mut self, label: String, kind: NodeKind, owner: usize) -> NodeId {
        let id = NodeId(self.nodes.len());
        self.by_label.entry(label.clone()).or_default().push(id);
        self.nodes.push(SchemaNode { id, label, kind });
        self.owner.push(owner);
        id
    }

    fn table_index(&self, name: &str) -> Option<usize> {
        self.tables.iter().position(|t| t.physical_name == name)
    }

    pub fn nodes(&self) -> &[SchemaNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[SchemaEdge] {
        &self.edges
    }

    pub fn node(&self, id: NodeId) -> Option<&SchemaNode> {
        self.nodes.get(id.0)
    }

    /// Tables in declaration order.
    pub fn tables(&self) -> &[TableInfo] {
        &self.tables
    }

    pub fn table(&self, physical_name: &str) -> Option<&TableInfo> {
        self.table_index(physical_name).map(|i| &self.tables[i])
    }

    /// Position of a table in declaration order; used to order table lists.
    pub fn table_rank(&self, physical_name: &str) -> Option<usize> {
        self.table_index(physical_name)
    }

    pub fn synonyms(&self) -> &[SynonymConfig] {
        &self.synonyms
    }

    pub fn value_columns(&self) -> &[ValueColumnConfig] {
        &self.value_columns
    }

    pub fn count(&self, kind: NodeKind) -> usize {
        self.nodes.iter().filter(|n| n.kind == kind).count()
    }

    /// All nodes labelled `label`: tables, then attributes, then synonyms,
    /// each group ordered by owning table name.
    pub fn lookup(&self, label: &str) -> Vec<GraphMatch> {
        self.by_label
            .get(label)
            .into_iter()
            .flatten()
            .map(|&node| GraphMatch { node, kind: self.nodes[node.0].kind })
            .collect()
    }

    /// Follows a synonym to its target and names the owning table of
    /// attributes.
    pub fn resolve(&self, m: &GraphMatch) -> Result<ResolvedElement, GraphError> {
        let node = self.nodes.get(m.node.0).ok_or_else(|| GraphError::GraphCorrupt(format!("no node {:?}", m.node)))?;
        let target = match node.kind {
            NodeKind::Synonym => {
                let mut out = self.edges.iter().filter(|e| e.from == node.id && e.kind == EdgeKind::SynonymOf);
                match (out.next(), out.next()) {
                    (Some(e), None) => &self.nodes[e.to.0],
                    _ => {
                        return Err(GraphError::GraphCorrupt(format!(
                            "synonym {:?} needs exactly one synonym_of edge",
                            node.label
                        )))
                    }
                }
            }
            _ => node,
        };
        match target.kind {
            NodeKind::Table => {
                let ti = self
                    .table_nodes
                    .iter()
                    .position(|&t| t == target.id)
                    .ok_or_else(|| GraphError::GraphCorrupt(format!("orphan table node {:?}", target.label)))?;
                Ok(ResolvedElement::Table { table: self.tables[ti].physical_name.clone() })
            }
            NodeKind::Attribute => {
                let mut owners = self.edges.iter().filter(|e| e.to == target.id && e.kind == EdgeKind::HasAttribute);
                let (Some(edge), None) = (owners.next(), owners.next()) else {
                    return Err(GraphError::GraphCorrupt(format!(
                        "attribute {:?} needs exactly one owning table",
                        target.label
                    )));
                };
                let ti = self
                    .table_nodes
                    .iter()
                    .position(|&t| t == edge.from)
                    .ok_or_else(|| GraphError::GraphCorrupt("has_attribute from a non-table".into()))?;
                let table = &self.tables[ti];
                let column = table
                    .columns
                    .iter()
                    .find(|c| normalize_label(&c.name) == target.label)
                    .ok_or_else(|| GraphError::GraphCorrupt(format!("no column for {:?}", target.label)))?;
                Ok(ResolvedElement::Attribute { table: table.physical_name.clone(), attribute: column.name.clone() })
            }
            NodeKind::Synonym => {
                Err(GraphError::GraphCorrupt(format!("synonym {:?} points at another synonym", node.label)))
            }
        }
    }

    /// Orders `tables` so each one after the first shares a declared
    /// reference with an earlier one. Starts from the earliest-declared
    /// table and always adds the earliest-declared reachable table next.
    pub fn join_path<S: AsRef<str>>(&self, tables: &[S]) -> Result<Vec<String>, GraphError> {
        let mut wanted = BTreeSet::new();
        for t in tables {
            let t = t.as_ref();
            wanted.insert(self.table_index(t).ok_or_else(|| GraphError::UnknownTable(t.to_string()))?);
        }
        let Some(&first) = wanted.iter().next() else {
            return Err(GraphError::NoTables);
        };
        let mut order = vec![first];
        wanted.remove(&first);
        while let Some(&next) = wanted.iter().find(|&&c| order.iter().any(|&p| self.references(p, c))) {
            order.push(next);
            wanted.remove(&next);
        }
        if !wanted.is_empty() {
            return Err(GraphError::DisconnectedTables(
                wanted.into_iter().map(|i| self.tables[i].physical_name.clone()).collect(),
            ));
        }
        Ok(order.into_iter().map(|i| self.tables[i].physical_name.clone()).collect())
    }

    fn references(&self, a: usize, b: usize) -> bool {
        let (na, nb) = (self.table_nodes[a], self.table_nodes[b]);
        self.edges.iter().any(|e| {
            matches!(e.kind, EdgeKind::References { .. })
                && ((e.from == na && e.to == nb) || (e.from == nb && e.to == na))
        })
    }
}

fn validate(config: &SchemaConfig) -> Result<(), ConfigError> {
    if config.tables.is_empty() {
        return Err(ConfigError::NoTables);
    }
    let mut names = BTreeSet::new();
    for t in &config.tables {
        if !names.insert(t.name.as_str()) {
            return Err(ConfigError::DuplicateTable(t.name.clone()));
        }
        if t.columns.is_empty() {
            return Err(ConfigError::NoColumns(t.name.clone()));
        }
        let mut cols = BTreeSet::new();
        for c in &t.columns {
            if !cols.insert(c.name.as_str()) {
                return Err(ConfigError::DuplicateColumn { table: t.name.clone(), column: c.name.clone() });
            }
        }
        if !cols.contains(t.display_attribute.as_str()) {
            return Err(ConfigError::UnknownDisplayAttribute {
                table: t.name.clone(),
                column: t.display_attribute.clone(),
            });
        }
    }

    let table = |name: &str| {
        config.tables.iter().find(|t| t.name == name).ok_or_else(|| ConfigError::UnknownTable(name.to_string()))
    };
    fn column<'a>(t: &'a TableConfig, name: &str) -> Result<&'a Column, ConfigError> {
        t.columns
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| ConfigError::UnknownColumn { table: t.name.clone(), column: name.to_string() })
    }

    for r in &config.references {
        column(table(&r.left_table)?, &r.column)?;
        column(table(&r.right_table)?, &r.column)?;
    }

    // Generated SQL uses unqualified names, so a column name shared between
    // tables is only allowed as a declared join column.
    let mut owners: HashMap<&str, Vec<String>> = HashMap::new();
    for t in &config.tables {
        for c in &t.columns {
            owners.entry(c.name.as_str()).or_default().push(t.name.clone());
        }
    }
    let mut shared: Vec<_> = owners.into_iter().filter(|(_, ts)| ts.len() > 1).collect();
    shared.sort();
    for (col, tables) in shared {
        if !config.references.iter().any(|r| r.column == col) {
            return Err(ConfigError::AmbiguousColumn { column: col.to_string(), tables });
        }
    }

    for s in &config.synonyms {
        let t = table(&s.target_table)?;
        if s.target_kind == TargetKind::Attribute {
            let attr =
                s.target_attribute.as_deref().ok_or_else(|| ConfigError::MissingSynonymAttribute(s.word.clone()))?;
            column(t, attr)?;
        }
    }

    for v in &config.value_index_columns {
        let c = column(table(&v.table)?, &v.column)?;
        if c.ty != ColumnType::Text {
            return Err(ConfigError::NonTextValueColumn { table: v.table.clone(), column: v.column.clone() });
        }
    }
    Ok(())
}
