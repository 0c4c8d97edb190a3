//! Maps candidate phrases onto the database: first as data values through
//! the value index, then as tables or attributes through the schema graph.
//! The mapped pieces are compiled into three lists (tables, attributes,
//! attribute=value pairs) that fill the query template.

use serde::Serialize;
use thiserror::Error;

use crate::schema_graph::{NodeKind, ResolvedElement, SchemaGraph};
use crate::text_pipeline::{CandidatePhrase, PhraseKind, Span};
use crate::value_index::ValueIndex;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MappingResult {
    Predicate { table: String, attribute: String, value: String },
    Attribute { table: String, attribute: String },
    Table { table: String },
    Unmapped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MappingSource {
    ValueIndex,
    GraphDirect,
    GraphSynonym,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingOutcome {
    pub candidate: CandidatePhrase,
    pub result: MappingResult,
    pub source: MappingSource,
}

impl MappingOutcome {
    pub fn is_mapped(&self) -> bool {
        self.result != MappingResult::Unmapped
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    #[serde(flatten)]
    pub outcome: MappingOutcome,
    /// Set when a longer mapped phrase already covers this candidate; the
    /// candidate is then not mapped on its own.
    pub absorbed_by: Option<String>,
}

/// One entry per extracted candidate, in extraction order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MappingTrace {
    pub entries: Vec<TraceEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AttributeRef {
    pub table: String,
    pub attribute: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ValuePredicate {
    pub table: String,
    pub attribute: String,
    pub value: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MappedElements {
    /// Every table touched by any mapping, in schema declaration order.
    pub tables: Vec<String>,
    /// Requested attributes that are not constrained by a predicate.
    pub attributes: Vec<AttributeRef>,
    pub predicates: Vec<ValuePredicate>,
    /// Tables named directly (or through a table synonym) in the question.
    pub anchor_tables: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("no word in the question matches a table, column or known value")]
    NothingMapped { trace: MappingTrace },
}

/// Maps one phrase: value index on the surface words, then on the lemmas,
/// then a graph lookup on the lemmas. The first hit wins.
pub fn map_candidate(phrase: &CandidatePhrase, index: &ValueIndex, graph: &SchemaGraph) -> MappingOutcome {
    let outcome = |result, source| MappingOutcome { candidate: phrase.clone(), result, source };

    if let Some(hit) = index.lookup(&phrase.words).or_else(|| index.lookup(&phrase.lemmas)) {
        return outcome(
            MappingResult::Predicate {
                table: hit.table.clone(),
                attribute: hit.attribute.clone(),
                value: hit.value.clone(),
            },
            MappingSource::ValueIndex,
        );
    }

    for m in graph.lookup(&phrase.lemma_text()) {
        let Ok(resolved) = graph.resolve(&m) else { continue };
        let source = if m.kind == NodeKind::Synonym { MappingSource::GraphSynonym } else { MappingSource::GraphDirect };
        let result = match resolved {
            ResolvedElement::Table { table } => MappingResult::Table { table },
            ResolvedElement::Attribute { table, attribute } => MappingResult::Attribute { table, attribute },
        };
        return outcome(result, source);
    }

    outcome(MappingResult::Unmapped, MappingSource::None)
}

/// Maps all candidates and compiles the template lists.
///
/// Noun phrases go first, longest span first; a mapped phrase absorbs the
/// single-word candidates inside it. Remaining single words follow in
/// source order.
pub fn map_question(
    candidates: &[CandidatePhrase],
    index: &ValueIndex,
    graph: &SchemaGraph,
) -> Result<(MappedElements, MappingTrace), MapError> {
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&i| {
        let c = &candidates[i];
        let is_phrase = c.kind == PhraseKind::NounPhrase;
        (!is_phrase, if is_phrase { usize::MAX - c.span.len() } else { 0 }, c.span.start)
    });

    let mut slots: Vec<Option<TraceEntry>> = vec![None; candidates.len()];
    let mut claimed: Vec<(Span, String)> = Vec::new();
    let mut mapped: Vec<MappingResult> = Vec::new();

    for i in order {
        let c = &candidates[i];
        if let Some((_, by)) = claimed.iter().find(|(span, _)| span.overlaps(&c.span)) {
            slots[i] = Some(TraceEntry {
                outcome: MappingOutcome {
                    candidate: c.clone(),
                    result: MappingResult::Unmapped,
                    source: MappingSource::None,
                },
                absorbed_by: Some(by.clone()),
            });
            continue;
        }
        let outcome = map_candidate(c, index, graph);
        if outcome.is_mapped() {
            if c.kind == PhraseKind::NounPhrase {
                claimed.push((c.span, c.surface_text()));
            }
            mapped.push(outcome.result.clone());
        }
        slots[i] = Some(TraceEntry { outcome, absorbed_by: None });
    }

    let trace = MappingTrace { entries: slots.into_iter().flatten().collect() };
    if mapped.is_empty() {
        return Err(MapError::NothingMapped { trace });
    }
    Ok((compile(&mapped, graph), trace))
}

fn compile(mapped: &[MappingResult], graph: &SchemaGraph) -> MappedElements {
    let mut e = MappedElements::default();
    let mut tables: Vec<String> = Vec::new();
    let mut attributes: Vec<AttributeRef> = Vec::new();
    for r in mapped {
        match r {
            MappingResult::Predicate { table, attribute, value } => {
                let p = ValuePredicate { table: table.clone(), attribute: attribute.clone(), value: value.clone() };
                push_unique(&mut e.predicates, p);
                push_unique(&mut tables, table.clone());
            }
            MappingResult::Attribute { table, attribute } => {
                push_unique(&mut attributes, AttributeRef { table: table.clone(), attribute: attribute.clone() });
                push_unique(&mut tables, table.clone());
            }
            MappingResult::Table { table } => {
                push_unique(&mut e.anchor_tables, table.clone());
                push_unique(&mut tables, table.clone());
            }
            MappingResult::Unmapped => {}
        }
    }
    e.attributes = attributes
        .into_iter()
        .filter(|a| !e.predicates.iter().any(|p| p.table == a.table && p.attribute == a.attribute))
        .collect();
    let rank = |t: &String| graph.table_rank(t).unwrap_or(usize::MAX);
    tables.sort_by_key(rank);
    e.anchor_tables.sort_by_key(rank);
    e.tables = tables;
    e
}

fn push_unique<T: PartialEq>(list: &mut Vec<T>, item: T) {
    if !list.contains(&item) {
        list.push(item);
    }
}
