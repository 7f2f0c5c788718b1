//! Deterministic table and sidecar writers: CSV with a `#` metadata
//! header, and a JSON run summary next to it.

use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub struct Table {
    pub header_lines: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footer_lines: Vec<String>,
}

pub fn fmt(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.12e}")
    }
}

impl Table {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for l in &self.header_lines {
            s.push_str("# ");
            s.push_str(l);
            s.push('\n');
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        for l in &self.footer_lines {
            s.push_str("# ");
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}

#[derive(Serialize)]
pub struct Sidecar {
    pub command: String,
    pub config: String,
    pub columns: Vec<String>,
    pub rows: usize,
    pub summary: std::collections::BTreeMap<String, String>,
}

pub fn write_outputs(path: &Path, table: &Table, sidecar: &Sidecar) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(table.render().as_bytes())?;
    let meta_path = path.with_extension(match path.extension() {
        Some(e) => format!("{}.meta.json", e.to_string_lossy()),
        None => "meta.json".to_string(),
    });
    let mut m = std::fs::File::create(meta_path)?;
    let json = serde_json::to_string_pretty(sidecar).expect("sidecar serializes");
    m.write_all(json.as_bytes())?;
    m.write_all(b"\n")?;
    Ok(())
}
