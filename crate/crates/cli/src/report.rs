//! Run reports: one JSON object in machine mode, aligned text otherwise.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// Field order is fixed by the struct; maps inside are key-sorted.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, outputs: Value) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            outputs,
            matches: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        if let Value::Object(map) = &self.inputs {
            for (k, v) in map {
                out.push_str(&format!("  {k} = {}\n", scalar(v)));
            }
        }
        if let Value::Object(map) = &self.outputs {
            for (k, v) in map {
                match v {
                    Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                        out.push_str(&format!("{k}:\n"));
                        out.push_str(&table(rows));
                    }
                    _ => out.push_str(&format!("{k}: {}\n", scalar(v))),
                }
            }
        }
        if let Some(m) = self.matches {
            out.push_str(&format!("match: {m}\n"));
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table(rows: &[Value]) -> String {
    let cols: Vec<String> = match &rows[0] {
        Value::Object(m) => m.keys().cloned().collect(),
        _ => unreachable!(),
    };
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|c| r.get(c).map(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..cols.len())
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].len())
                .chain([cols[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |row: &[String]| {
        let parts: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        format!("  {}\n", parts.join("  "))
    };
    let mut out = line(&cols);
    for r in &cells {
        out.push_str(&line(r));
    }
    out
}

/// Fixed-precision decimal so reports are byte-stable.
pub fn decimal(x: f64) -> String {
    format!("{x:.12}")
}
