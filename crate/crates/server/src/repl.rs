use std::io::{self, BufRead, Write};

use nliq_core::mini_rdb::Value;
use nliq_core::semantic_mapper::{MappingResult, TraceEntry};
use nliq_core::text_pipeline::PhraseKind;
use nliq_core::{Engine, QueryResponse, Status};

pub const PROMPT: &str = "nliq> ";
pub const QUIT: &str = ":quit";

/// Reads one question per line until `:quit` or end of input.
pub fn run_repl<R: BufRead, W: Write>(engine: &Engine, input: R, mut out: W, trace: bool) -> io::Result<()> {
    let mut lines = input.lines();
    loop {
        write!(out, "{PROMPT}")?;
        out.flush()?;
        let Some(line) = lines.next() else {
            writeln!(out)?;
            return Ok(());
        };
        let line = line?;
        let question = line.trim();
        if question.is_empty() {
            continue;
        }
        if question == QUIT {
            return Ok(());
        }
        write_response(&mut out, &engine.answer_question(question), trace)?;
    }
}

pub fn write_response<W: Write>(out: &mut W, resp: &QueryResponse, trace: bool) -> io::Result<()> {
    if let Some(sql) = &resp.sql {
        writeln!(out, "{sql}")?;
    }
    match resp.status {
        Status::Answered => {
            let columns = resp.columns.as_deref().unwrap_or_default();
            let rows = resp.rows.as_deref().unwrap_or_default();
            write_table(out, columns, rows)?;
        }
        Status::CannotAnswer => writeln!(out, "{}", resp.message.as_deref().unwrap_or("cannot answer"))?,
        Status::Error => writeln!(out, "error: {}", resp.message.as_deref().unwrap_or("unknown"))?,
    }
    if trace {
        if let Some(entries) = &resp.trace {
            writeln!(out, "trace:")?;
            for e in entries {
                writeln!(out, "  {}", trace_line(e))?;
            }
        }
    }
    Ok(())
}

fn trace_line(e: &TraceEntry) -> String {
    let c = &e.outcome.candidate;
    let kind = match c.kind {
        PhraseKind::Noun => "noun",
        PhraseKind::Adjective => "adjective",
        PhraseKind::NounPhrase => "noun phrase",
    };
    let head = format!("{} ({kind})", c.surface_text());
    if let Some(by) = &e.absorbed_by {
        return format!("{head} -> part of \"{by}\"");
    }
    let target = match &e.outcome.result {
        MappingResult::Predicate { table, attribute, value } => format!("{table}.{attribute} = '{value}'"),
        MappingResult::Attribute { table, attribute } => format!("{table}.{attribute}"),
        MappingResult::Table { table } => format!("table {table}"),
        MappingResult::Unmapped => return format!("{head} -> unmapped"),
    };
    let source = serde_json::to_value(e.outcome.source).ok().and_then(|v| v.as_str().map(str::to_string));
    format!("{head} -> {target} [{}]", source.unwrap_or_default())
}

pub fn write_table<W: Write>(out: &mut W, columns: &[String], rows: &[Vec<Value>]) -> io::Result<()> {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(Value::to_string).collect()).collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let rule: String = widths.iter().map(|w| format!("+{}", "-".repeat(w + 2))).collect::<String>() + "+";
    let line = |vals: &[String]| -> String {
        let mut s: String =
            vals.iter().zip(&widths).map(|(v, w)| format!("| {v}{} ", " ".repeat(w - v.chars().count()))).collect();
        s.push('|');
        s
    };
    writeln!(out, "{rule}")?;
    writeln!(out, "{}", line(columns))?;
    writeln!(out, "{rule}")?;
    for r in &cells {
        writeln!(out, "{}", line(r))?;
    }
    writeln!(out, "{rule}")?;
    let n = rows.len();
    writeln!(out, "({n} row{})", if n == 1 { "" } else { "s" })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_pads_to_widest_cell() {
        let mut out = Vec::new();
        let rows = vec![vec![Value::Text("Café Ü".into()), Value::Real(4.8)]];
        write_table(&mut out, &["name".into(), "r".into()], &rows).unwrap();
        let text = String::from_utf8(out).unwrap();
        let expected = "\
+--------+-----+
| name   | r   |
+--------+-----+
| Café Ü | 4.8 |
+--------+-----+
(1 row)
";
        assert_eq!(text, expected);
    }

    #[test]
    fn empty_result_still_has_header() {
        let mut out = Vec::new();
        write_table(&mut out, &["city".into()], &[]).unwrap();
        assert!(String::from_utf8(out).unwrap().ends_with("(0 rows)\n"));
    }
}
