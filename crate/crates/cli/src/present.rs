//! Matrix rendering. Matrices are stored in ascending-mask order; this
//! layer owns any reordering for display.

use descon::subset::size_lex_order;
use descon::{Ring, SubsetMask, SubsetMatrix};
use serde_json::{json, Value};

use crate::args::Format;

pub fn row_order(n: usize, paper_order: bool) -> Vec<SubsetMask> {
    if paper_order {
        size_lex_order(n)
    } else {
        SubsetMask::all(n).collect()
    }
}

pub fn render_matrix<R: Ring>(m: &SubsetMatrix<R>, format: Format, paper_order: bool) -> String {
    let order = row_order(m.n(), paper_order);
    match format {
        Format::Text => render_text(m, &order),
        Format::Csv => render_csv(m, &order),
        Format::Json => render_json(m, &order, paper_order),
    }
}

fn render_text<R: Ring>(m: &SubsetMatrix<R>, order: &[SubsetMask]) -> String {
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(order.len() + 1);
    let mut header = vec!["S\\T".to_string()];
    header.extend(order.iter().map(ToString::to_string));
    grid.push(header);
    for s in order {
        let mut row = vec![s.to_string()];
        row.extend(order.iter().map(|t| m.get(*s, *t).render()));
        grid.push(row);
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &grid {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(j, (cell, &w))| {
                if j == 0 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv<R: Ring>(m: &SubsetMatrix<R>, order: &[SubsetMask]) -> String {
    let mut out = String::new();
    let header: Vec<String> = std::iter::once("S\\T".to_string())
        .chain(order.iter().map(ToString::to_string))
        .map(|s| csv_field(&s))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for s in order {
        let row: Vec<String> = std::iter::once(s.to_string())
            .chain(order.iter().map(|t| m.get(*s, *t).render()))
            .map(|c| csv_field(&c))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn render_json<R: Ring>(m: &SubsetMatrix<R>, order: &[SubsetMask], paper_order: bool) -> String {
    let entries: Vec<Value> = order
        .iter()
        .map(|s| Value::Array(order.iter().map(|t| m.get(*s, *t).to_json()).collect()))
        .collect();
    let value = json!({
        "n": m.n(),
        "order": if paper_order { "size-lex" } else { "ascending-bitmask" },
        "ring": m.ring().as_str(),
        "labels": order.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "entries": entries,
    });
    let mut text = serde_json::to_string(&value).expect("json values serialize");
    text.push('\n');
    text
}
