//! Command results and their text / JSON / TSV renderings.

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "fkalg/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

/// Outcome of one subcommand: summary fields, an optional table, and the
/// verdict that decides the exit code.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub fields: Vec<(String, Value)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), pass: true, fields: Vec::new(), header: Vec::new(), rows: Vec::new() }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.into(), value.into()));
    }

    pub fn columns(&mut self, names: &[&str]) {
        self.header = names.iter().map(|s| s.to_string()).collect();
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        self.rows.push(cells);
    }

    /// Record a check; any failing check fails the report.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.pass &= ok;
        self.field(key, if ok { "PASS" } else { "FAIL" });
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => serde_json::to_string_pretty(&self.json()).expect("report serializes") + "\n",
            Format::Tsv => self.tsv(),
        }
    }

    fn json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("schema".into(), json!(SCHEMA));
        obj.insert("command".into(), json!(self.command));
        obj.insert("pass".into(), json!(self.pass));
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.clone());
        }
        if !self.header.is_empty() {
            let rows: Vec<Value> = self
                .rows
                .iter()
                .map(|r| Value::Object(self.header.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
        }
        Value::Object(obj)
    }

    fn text(&self) -> String {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.fields {
            out.push_str(&format!("{k:<width$}  {}\n", cell(v)));
        }
        if !self.header.is_empty() {
            let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
            let widths: Vec<usize> = (0..self.header.len())
                .map(|i| cells.iter().map(|r| r.get(i).map_or(0, |c| c.chars().count())).chain([self.header[i].len()]).max().unwrap())
                .collect();
            if !self.fields.is_empty() {
                out.push('\n');
            }
            let line = |r: &[String]| {
                let parts: Vec<String> = r.iter().zip(&widths).map(|(c, &w)| pad(c, w)).collect();
                parts.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(&self.header));
            for r in &cells {
                out.push_str(&line(r));
            }
        }
        out.push_str(if self.pass { "result  PASS\n" } else { "result  FAIL\n" });
        out
    }

    fn tsv(&self) -> String {
        let mut out = String::new();
        if self.header.is_empty() {
            for (k, v) in &self.fields {
                out.push_str(&format!("{k}\t{}\n", cell(v)));
            }
        } else {
            out.push_str(&(self.header.join("\t") + "\n"));
            for r in &self.rows {
                out.push_str(&(r.iter().map(cell).collect::<Vec<_>>().join("\t") + "\n"));
            }
        }
        out
    }
}

fn pad(s: &str, w: usize) -> String {
    let n = s.chars().count();
    format!("{s}{}", " ".repeat(w.saturating_sub(n)))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings() {
        let mut r = Report::new("demo");
        r.field("graph", "A:3");
        r.columns(&["d", "dim"]);
        r.row(vec![json!(0), json!(1)]);
        r.row(vec![json!(1), json!(2)]);
        r.check("agree", true);
        assert!(r.render(Format::Text).ends_with("result  PASS\n"));
        assert_eq!(r.render(Format::Tsv), "d\tdim\n0\t1\n1\t2\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["rows"][1]["dim"], 2);
    }
}
