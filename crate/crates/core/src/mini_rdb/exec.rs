use std::collections::HashMap;

use super::{Column, Database, ExecError, ResultTable, Table, Value};
use crate::sql_builder::{Literal, SqlQuery};

/// Equi-joins two tables on every column name they share.
///
/// Output columns are `left`'s columns followed by `right`'s non-shared
/// columns. Text keys compare exactly (case-sensitive).
pub fn natural_join(left: &Table, right: &Table) -> Result<Table, ExecError> {
    let shared: Vec<(usize, usize)> =
        left.columns.iter().enumerate().filter_map(|(li, c)| right.column_index(&c.name).map(|ri| (li, ri))).collect();
    if shared.is_empty() {
        return Err(ExecError::NoSharedColumns { left: left.name.clone(), right: right.name.clone() });
    }
    let right_extra: Vec<usize> = (0..right.columns.len()).filter(|ri| !shared.iter().any(|(_, s)| s == ri)).collect();

    let mut by_key: HashMap<Vec<&Value>, Vec<&Vec<Value>>> = HashMap::new();
    for row in &right.rows {
        let key = shared.iter().map(|(_, ri)| &row[*ri]).collect();
        by_key.entry(key).or_default().push(row);
    }

    let mut rows = Vec::new();
    for lrow in &left.rows {
        let key: Vec<&Value> = shared.iter().map(|(li, _)| &lrow[*li]).collect();
        for rrow in by_key.get(&key).into_iter().flatten() {
            let mut out = lrow.clone();
            out.extend(right_extra.iter().map(|ri| rrow[*ri].clone()));
            rows.push(out);
        }
    }

    let mut columns: Vec<Column> = left.columns.clone();
    columns.extend(right_extra.iter().map(|ri| right.columns[*ri].clone()));
    Ok(Table { name: format!("{} NATURAL JOIN {}", left.name, right.name), columns, rows })
}

/// Runs a query: joins left to right, filters, projects, de-duplicates and
/// sorts.
///
/// Text predicates compare case-insensitively; numeric columns compare
/// numerically against the literal.
pub fn execute(query: &SqlQuery, db: &Database) -> Result<ResultTable, ExecError> {
    let mut names = query.tables.iter();
    let first = names.next().ok_or_else(|| ExecError::UnknownTable(String::new()))?;
    let lookup = |name: &String| db.table(name).ok_or_else(|| ExecError::UnknownTable(name.clone()));
    let mut joined = lookup(first)?.clone();
    for name in names {
        joined = natural_join(&joined, lookup(name)?)?;
    }

    let column = |name: &str| joined.column_index(name).ok_or_else(|| ExecError::UnknownColumn(name.to_string()));
    let filters =
        query.predicates.iter().map(|p| Ok((column(&p.column)?, &p.value))).collect::<Result<Vec<_>, ExecError>>()?;
    let projection = query.projection.iter().map(|c| column(c)).collect::<Result<Vec<_>, _>>()?;

    let rows = joined
        .rows
        .iter()
        .filter(|row| filters.iter().all(|(idx, lit)| matches(&row[*idx], lit)))
        .map(|row| projection.iter().map(|idx| row[*idx].clone()).collect())
        .collect();
    Ok(ResultTable::from_rows(query.projection.clone(), rows))
}

fn matches(value: &Value, literal: &Literal) -> bool {
    let lit = literal.as_str();
    match value {
        Value::Text(s) => s.to_lowercase() == lit.to_lowercase(),
        Value::Integer(i) => match lit.parse::<i64>() {
            Ok(n) => *i == n,
            Err(_) => lit.parse::<f64>().is_ok_and(|f| *i as f64 == f),
        },
        Value::Real(r) => lit.parse::<f64>().is_ok_and(|f| *r == f),
    }
}
