#![allow(dead_code)]

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use nliq_core::mini_rdb::{is_keyword, Column, ColumnType, Database, Table, Value};
use nliq_core::sql_builder::{Literal, Predicate, SqlQuery};
use nliq_core::Engine;
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn fixture_engine() -> Engine {
    let data = data_dir();
    Engine::load(&data.join("schema.json"), &data, &data.join("lexicon.tsv")).expect("fixture loads")
}

/// Brute-force evaluation: full cross product of the FROM tables, keep
/// combinations where every repeated column name agrees, then filter,
/// project and de-duplicate. Returns `None` if a name does not resolve.
pub fn oracle(q: &SqlQuery, db: &Database) -> Option<HashSet<Vec<Value>>> {
    let tables: Vec<&Table> = q.tables.iter().map(|t| db.table(t)).collect::<Option<_>>()?;
    let columns: Vec<&Column> = tables.iter().flat_map(|t| t.columns.iter()).collect();
    let first_index = |name: &str| columns.iter().position(|c| c.name == name);
    let projection: Vec<usize> = q.projection.iter().map(|c| first_index(c)).collect::<Option<_>>()?;
    let filters: Vec<(usize, &Literal)> =
        q.predicates.iter().map(|p| Some((first_index(&p.column)?, &p.value))).collect::<Option<_>>()?;

    let mut combos: Vec<Vec<Value>> = vec![vec![]];
    for t in &tables {
        let mut next = Vec::new();
        for prefix in &combos {
            for row in &t.rows {
                let mut r = prefix.clone();
                r.extend(row.iter().cloned());
                next.push(r);
            }
        }
        combos = next;
    }

    let mut out = HashSet::new();
    for row in combos {
        let joined = (0..columns.len())
            .all(|i| (0..i).filter(|&j| columns[j].name == columns[i].name).all(|j| row[i] == row[j]));
        if !joined {
            continue;
        }
        if !filters.iter().all(|(i, lit)| literal_matches(&row[*i], lit)) {
            continue;
        }
        out.insert(projection.iter().map(|&i| row[i].clone()).collect());
    }
    Some(out)
}

fn literal_matches(v: &Value, lit: &Literal) -> bool {
    let text = match lit {
        Literal::Text(s) | Literal::Number(s) => s.as_str(),
    };
    match v {
        Value::Text(s) => s.to_lowercase() == text.to_lowercase(),
        Value::Integer(i) => text.parse::<f64>().map(|f| f == *i as f64).unwrap_or(false),
        Value::Real(r) => text.parse::<f64>().map(|f| f == *r).unwrap_or(false),
    }
}

const POOL: [(&str, ColumnType); 5] = [
    ("a", ColumnType::Integer),
    ("b", ColumnType::Text),
    ("c", ColumnType::Real),
    ("d", ColumnType::Text),
    ("e", ColumnType::Integer),
];

const TEXTS: [&str; 5] = ["x", "X", "y", "Yy", "z"];
const REALS: [f64; 3] = [0.5, 1.0, 1.5];

fn random_value(rng: &mut impl Rng, ty: ColumnType) -> Value {
    match ty {
        ColumnType::Integer => Value::Integer(rng.random_range(0..3)),
        ColumnType::Text => Value::Text(TEXTS.choose(rng).unwrap().to_string()),
        ColumnType::Real => Value::Real(*REALS.choose(rng).unwrap()),
    }
}

fn random_literal(rng: &mut impl Rng, ty: ColumnType) -> Literal {
    match ty {
        ColumnType::Text => {
            let s = TEXTS.choose(rng).unwrap();
            Literal::Text(if rng.random_bool(0.5) { s.to_uppercase() } else { s.to_string() })
        }
        ColumnType::Integer => Literal::Number(["0", "1", "2", "1.0", "-1"].choose(rng).unwrap().to_string()),
        ColumnType::Real => Literal::Number(["0.5", "1", "1.50", "2"].choose(rng).unwrap().to_string()),
    }
}

/// A random database of up to 3 tables (up to 20 rows and 4 columns each)
/// and a query over all of them. Each table shares at least one column
/// with the previous one, so the NATURAL JOIN chain is always valid.
pub fn random_instance(rng: &mut impl Rng) -> (Database, SqlQuery) {
    let n_tables = rng.random_range(1..=3);
    let mut db = Database::new();
    let mut names = Vec::new();
    let mut prev: Vec<usize> = Vec::new();
    let mut seen_cols: Vec<usize> = Vec::new();
    for t in 0..n_tables {
        let width = rng.random_range(1..=4);
        let mut cols: Vec<usize> = Vec::new();
        if let Some(&shared) = prev.choose(rng) {
            cols.push(shared);
        }
        while cols.len() < width {
            let c = rng.random_range(0..POOL.len());
            if !cols.contains(&c) {
                cols.push(c);
            }
        }
        let columns: Vec<Column> = cols.iter().map(|&c| Column::new(POOL[c].0, POOL[c].1)).collect();
        let n_rows = rng.random_range(0..=20);
        let rows = (0..n_rows).map(|_| columns.iter().map(|c| random_value(rng, c.ty)).collect()).collect();
        let name = format!("t{t}");
        db.insert(Table::new(name.clone(), columns, rows).unwrap()).unwrap();
        names.push(name);
        for &c in &cols {
            if !seen_cols.contains(&c) {
                seen_cols.push(c);
            }
        }
        prev = cols;
    }

    let mut projection: Vec<String> =
        seen_cols.iter().filter(|_| rng.random_bool(0.5)).map(|&c| POOL[c].0.to_string()).collect();
    if projection.is_empty() {
        projection.push(POOL[*seen_cols.choose(rng).unwrap()].0.to_string());
    }
    projection.sort();
    let n_preds = rng.random_range(0..=3);
    let predicates = (0..n_preds)
        .map(|_| {
            let c = *seen_cols.choose(rng).unwrap();
            Predicate::new(POOL[c].0, random_literal(rng, POOL[c].1))
        })
        .collect();
    (db, SqlQuery { projection, tables: names, predicates })
}

fn random_ident(rng: &mut impl Rng) -> String {
    const FIRST: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
    const REST: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_0123456789";
    loop {
        let len = rng.random_range(1..=10);
        let mut s = String::new();
        s.push(*FIRST.choose(rng).unwrap() as char);
        for _ in 1..len {
            s.push(*REST.choose(rng).unwrap() as char);
        }
        if !is_keyword(&s) {
            return s;
        }
    }
}

fn random_text(rng: &mut impl Rng) -> String {
    const PIECES: [&str; 10] = ["o'brien", "''", "fast food", " ", "é", "日本", "AND", "'", "=", "x"];
    let n = rng.random_range(0..5);
    (0..n).map(|_| *PIECES.choose(rng).unwrap()).collect()
}

/// A random query in canonical form (projection sorted and distinct).
pub fn random_query(rng: &mut impl Rng) -> SqlQuery {
    let mut projection: Vec<String> = (0..rng.random_range(1..=5)).map(|_| random_ident(rng)).collect();
    projection.sort();
    projection.dedup();
    let tables = (0..rng.random_range(1..=4)).map(|_| random_ident(rng)).collect();
    let predicates = (0..rng.random_range(0..=4))
        .map(|_| {
            let value = if rng.random_bool(0.5) {
                Literal::Text(random_text(rng))
            } else {
                let int: i64 = rng.random_range(-10_000..10_000);
                if rng.random_bool(0.5) {
                    Literal::Number(int.to_string())
                } else {
                    Literal::Number(format!("{int}.{:02}", rng.random_range(0..100)))
                }
            };
            Predicate::new(random_ident(rng), value)
        })
        .collect();
    SqlQuery { projection, tables, predicates }
}

/// Random text of at most `max_chars` characters drawn from ASCII, Latin,
/// CJK, emoji, combining marks, control and whitespace characters, mixed
/// with schema and value words.
pub fn random_question(rng: &mut impl Rng, max_chars: usize) -> String {
    const WORDS: [&str; 14] = [
        "restaurants",
        "italian",
        "rating",
        "mumbai",
        "fast",
        "food",
        "what",
        "are",
        "the",
        "?",
        "cities",
        "india",
        "new delhi",
        "'s",
    ];
    let target = rng.random_range(0..=max_chars);
    let mut s = String::new();
    let mut len = 0;
    while len < target {
        let piece: String = match rng.random_range(0..8) {
            0 => WORDS.choose(rng).unwrap().to_string(),
            1 => " ".into(),
            2 => char::from_u32(rng.random_range(0x20..0x7f)).unwrap().to_string(),
            3 => char::from_u32(rng.random_range(0xa0..0x250)).unwrap().to_string(),
            4 => char::from_u32(rng.random_range(0x4e00..0x9fff)).unwrap().to_string(),
            5 => char::from_u32(rng.random_range(0x1f300..0x1f64f)).unwrap().to_string(),
            6 => char::from_u32(rng.random_range(0x300..0x36f)).unwrap().to_string(),
            _ => ['\t', '\n', '\u{0}', '\u{200b}', '\u{3000}', 'İ', 'ß', '\''].choose(rng).unwrap().to_string(),
        };
        let n = piece.chars().count();
        if len + n > target {
            break;
        }
        s.push_str(&piece);
        len += n;
    }
    s
}
