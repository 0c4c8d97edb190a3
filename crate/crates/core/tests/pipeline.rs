mod common;

use common::{fixture_engine, random_question};
use nliq_core::mini_rdb::parse_sql;
use nliq_core::semantic_mapper::{map_question, MappingResult};
use nliq_core::text_pipeline::analyze;
use nliq_core::Status;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn fast_food_question_end_to_end() {
    let engine = fixture_engine();
    let r = engine.answer_question("What are the restaurants and cities in India that serve fast food");
    assert_eq!(r.status, Status::Answered, "{r:?}");
    let sql = r.sql.unwrap();
    assert_eq!(
        sql,
        "SELECT DISTINCT city, restaurant_name FROM restaurants NATURAL JOIN cuisines \
         WHERE cuisine='Fast Food' and country_name='India'"
    );
    let rows: Vec<String> = r.rows.unwrap().iter().map(|row| format!("{}|{}", row[0], row[1])).collect();
    assert_eq!(rows, ["New Delhi|Quick Bite"]);
}

#[test]
fn fast_food_phrase_absorbs_its_words() {
    let engine = fixture_engine();
    let candidates = analyze(engine.lexicon(), "which restaurants serve fast food").unwrap();
    let (elements, trace) = map_question(&candidates, engine.value_index(), engine.graph()).unwrap();
    assert!(elements.attributes.is_empty());
    assert_eq!(elements.predicates.len(), 1);
    assert_eq!(elements.predicates[0].value, "Fast Food");
    let food = trace.entries.iter().find(|e| e.outcome.candidate.lemma_text() == "food").unwrap();
    assert_eq!(food.absorbed_by.as_deref(), Some("fast food"));
}

#[test]
fn unanswerable_question_keeps_trace() {
    let engine = fixture_engine();
    let r = engine.answer_question("sing me a song");
    assert_eq!(r.status, Status::CannotAnswer);
    assert!(r.sql.is_none());
    assert!(r.message.is_some());
    let trace = r.trace.unwrap();
    assert!(trace.iter().all(|e| e.outcome.result == MappingResult::Unmapped));
}

#[test]
fn trace_lists_every_candidate_once() {
    let engine = fixture_engine();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let text = random_question(&mut rng, 200);
        let Ok(candidates) = analyze(engine.lexicon(), &text) else { continue };
        let trace = match map_question(&candidates, engine.value_index(), engine.graph()) {
            Ok((_, trace)) => trace,
            Err(nliq_core::semantic_mapper::MapError::NothingMapped { trace }) => trace,
        };
        let traced: Vec<_> = trace.entries.iter().map(|e| e.outcome.candidate.clone()).collect();
        assert_eq!(traced, candidates, "{text:?}");
    }
}

#[test]
fn answered_sql_always_parses_back() {
    let engine = fixture_engine();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let text = random_question(&mut rng, 300);
        let r = engine.answer_question(&text);
        if r.status == Status::Answered {
            let sql = r.sql.as_deref().unwrap();
            let q = parse_sql(sql).unwrap();
            assert_eq!(Some(&q.projection), r.columns.as_ref());
        }
    }
}

#[test]
fn identical_questions_get_identical_answers() {
    let engine = fixture_engine();
    let q = "what restaurants in mumbai have chinese food?";
    let first = engine.answer_question(q);
    engine.answer_question("list the restaurants in canada");
    engine.answer_question("hello");
    assert_eq!(engine.answer_question(q), first);
}
