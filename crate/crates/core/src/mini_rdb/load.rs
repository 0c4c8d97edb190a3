use std::io::Read;

use thiserror::Error;

use super::{Column, ColumnType, Table, Value};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("table {table:?}: header {found:?} does not match declared columns {expected:?}")]
    HeaderMismatch { table: String, expected: Vec<String>, found: Vec<String> },
    #[error("table {table:?}, row {row}, column {column:?}: {value:?} is not a valid {ty}")]
    TypeError { table: String, row: usize, column: String, value: String, ty: ColumnType },
    #[error("table {table:?}, row {row}: expected {expected} fields, found {found}")]
    RaggedRow { table: String, row: usize, expected: usize, found: usize },
    #[error("table {table:?}: {source}")]
    Csv {
        table: String,
        #[source]
        source: csv::Error,
    },
}

/// Reads an RFC 4180 CSV stream into a table with the declared columns.
///
/// The header must list the declared column names in order. Rows are
/// numbered from 1 (the first row after the header) in errors. Numeric
/// fields are parsed strictly: no surrounding whitespace, no empty values,
/// finite reals only.
pub fn load_csv<R: Read>(reader: R, table_name: &str, columns: &[Column]) -> Result<Table, LoadError> {
    let csv_err = |source| LoadError::Csv { table: table_name.to_string(), source };
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(reader);
    let mut records = rdr.records();

    let header = match records.next() {
        Some(r) => r.map_err(csv_err)?,
        None => csv::StringRecord::new(),
    };
    let found: Vec<String> = header.iter().map(str::to_string).collect();
    let expected: Vec<String> = columns.iter().map(|c| c.name.clone()).collect();
    if found != expected {
        return Err(LoadError::HeaderMismatch { table: table_name.to_string(), expected, found });
    }

    let mut rows = Vec::new();
    for (i, record) in records.enumerate() {
        let row = i + 1;
        let record = record.map_err(csv_err)?;
        if record.len() != columns.len() {
            return Err(LoadError::RaggedRow {
                table: table_name.to_string(),
                row,
                expected: columns.len(),
                found: record.len(),
            });
        }
        let values = record
            .iter()
            .zip(columns)
            .map(|(field, col)| {
                parse_field(field, col.ty).ok_or_else(|| LoadError::TypeError {
                    table: table_name.to_string(),
                    row,
                    column: col.name.clone(),
                    value: field.to_string(),
                    ty: col.ty,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(values);
    }

    Ok(Table { name: table_name.to_string(), columns: columns.to_vec(), rows })
}

fn parse_field(field: &str, ty: ColumnType) -> Option<Value> {
    match ty {
        ColumnType::Text => Some(Value::Text(field.to_string())),
        ColumnType::Integer => field.parse().ok().map(Value::Integer),
        ColumnType::Real => {
            let looks_numeric = field.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
            if !looks_numeric {
                return None;
            }
            field.parse::<f64>().ok().filter(|r| r.is_finite()).map(Value::Real)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn restaurant_columns() -> Vec<Column> {
        vec![
            Column::new("restaurant_id", ColumnType::Integer),
            Column::new("restaurant_name", ColumnType::Text),
            Column::new("city", ColumnType::Text),
            Column::new("country_name", ColumnType::Text),
            Column::new("rating_text", ColumnType::Text),
            Column::new("aggregate_rating", ColumnType::Real),
            Column::new("currency", ColumnType::Text),
        ]
    }

    #[test]
    fn loads_fixture_restaurants() {
        let file = std::fs::File::open(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/restaurants.csv")).unwrap();
        let t = load_csv(file, "restaurants", &restaurant_columns()).unwrap();
        assert_eq!(t.rows.len(), 10);
        assert_eq!(t.columns.len(), 7);
        assert_eq!(t.rows[0][5], Value::Real(4.8));
        // Quoted field with an embedded comma.
        assert_eq!(t.rows[9][1], Value::Text("Harbour Grill, Bar & Kitchen".into()));
    }

    #[test]
    fn header_must_match_in_order() {
        let err = load_csv("id,name\n1,x\n".as_bytes(), "r", &restaurant_columns()).unwrap_err();
        assert!(matches!(err, LoadError::HeaderMismatch { .. }));
        let cols = vec![Column::new("a", ColumnType::Text), Column::new("b", ColumnType::Text)];
        assert!(matches!(load_csv("b,a\n".as_bytes(), "t", &cols), Err(LoadError::HeaderMismatch { .. })));
        assert!(matches!(load_csv("".as_bytes(), "t", &cols), Err(LoadError::HeaderMismatch { .. })));
    }

    #[test]
    fn numeric_fields_are_strict() {
        let cols = vec![Column::new("n", ColumnType::Integer), Column::new("r", ColumnType::Real)];
        let ok = load_csv("n,r\n-3,4.8\n7,1e2\n".as_bytes(), "t", &cols).unwrap();
        assert_eq!(ok.rows[0], vec![Value::Integer(-3), Value::Real(4.8)]);
        assert_eq!(ok.rows[1][1], Value::Real(100.0));
        for bad in ["n,r\n 1,2\n", "n,r\n1.5,2\n", "n,r\n,2\n", "n,r\n1,\n", "n,r\n1,NaN\n", "n,r\n1,inf\n"] {
            assert!(
                matches!(load_csv(bad.as_bytes(), "t", &cols), Err(LoadError::TypeError { row: 1, .. })),
                "{bad:?} should fail"
            );
        }
    }

    #[test]
    fn ragged_rows_are_reported() {
        let cols = vec![Column::new("a", ColumnType::Text), Column::new("b", ColumnType::Text)];
        let err = load_csv("a,b\nx,y\nz\n".as_bytes(), "t", &cols).unwrap_err();
        assert!(matches!(err, LoadError::RaggedRow { row: 2, expected: 2, found: 1, .. }));
    }

    #[test]
    fn quoting_and_empty_text() {
        let cols = vec![Column::new("a", ColumnType::Text), Column::new("b", ColumnType::Text)];
        let t = load_csv("a,b\n\"say \"\"hi\"\"\",\n".as_bytes(), "t", &cols).unwrap();
        assert_eq!(t.rows[0], vec![Value::Text("say \"hi\"".into()), Value::Text(String::new())]);
    }
}
