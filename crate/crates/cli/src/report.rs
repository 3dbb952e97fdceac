//! Structured outputs and their text rendering.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableData {
    pub table: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub case: String,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeData {
    pub case: String,
    pub walls: Vec<WallData>,
    pub chambers: Vec<ChamberData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallData {
    pub divisor: String,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberData {
    pub model: String,
    pub lower: String,
    pub upper: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub case: String,
    pub item: String,
    pub expected: String,
    pub computed: String,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    pub items: Vec<CheckItem>,
}

impl RunReport {
    pub fn failures(&self) -> usize {
        self.items.iter().filter(|i| !i.passed()).count()
    }
}

/// Right-aligned columns; the case column is left-aligned.
pub fn render_table(t: &TableData) -> String {
    let mut widths: Vec<usize> = t.columns.iter().map(String::len).collect();
    let case_width = t
        .rows
        .iter()
        .map(|r| r.case.len())
        .chain(std::iter::once("case".len()))
        .max()
        .unwrap_or(4);
    for row in &t.rows {
        for (w, v) in widths.iter_mut().zip(&row.values) {
            *w = (*w).max(v.to_string().len());
        }
    }
    let mut out = format!("{}\n", t.table);
    out.push_str(&format!("{:<case_width$}", "case"));
    for (c, w) in t.columns.iter().zip(&widths) {
        out.push_str(&format!("  {c:>w$}"));
    }
    out.push('\n');
    for row in &t.rows {
        out.push_str(&format!("{:<case_width$}", row.case));
        for (v, w) in row.values.iter().zip(&widths) {
            out.push_str(&format!("  {v:>w$}"));
        }
        out.push('\n');
    }
    out
}

pub fn render_cone(c: &ConeData) -> String {
    let mut out = format!("movable cone of {}\n", c.case);
    let walls: Vec<&str> = c.walls.iter().map(|w| w.divisor.as_str()).collect();
    out.push_str(&format!("walls: {}\n", walls.join(", ")));
    let model_width = c.chambers.iter().map(|ch| ch.model.len()).max().unwrap_or(0);
    for (i, wall) in c.walls.iter().enumerate() {
        out.push_str(&format!("  wall {:<10} {}\n", wall.divisor, wall.kind));
        if let Some(ch) = c.chambers.get(i) {
            out.push_str(&format!(
                "    {:<model_width$}  [{}, {}]\n",
                ch.model, ch.lower, ch.upper
            ));
        }
    }
    out
}

pub fn render_report(r: &RunReport) -> String {
    let mut out = String::new();
    for i in &r.items {
        if i.passed() {
            out.push_str(&format!("PASS {:<5} {}: {}\n", i.case, i.item, i.computed));
        } else {
            out.push_str(&format!(
                "FAIL {:<5} {}: expected {}, computed {}\n",
                i.case, i.item, i.expected, i.computed
            ));
        }
    }
    out.push_str(&format!(
        "{} checks, {} failed\n",
        r.items.len(),
        r.failures()
    ));
    out
}
