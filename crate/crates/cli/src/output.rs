use serde_json::{json, Value};

use crate::config::{Format, Resolved};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A table in all three formats: text lines, CSV rows under `columns`, JSON records.
pub struct Emission {
    pub columns: &'static str,
    pub text: Vec<String>,
    pub csv: Vec<String>,
    pub json: Value,
}

fn header_line(r: &Resolved) -> String {
    let params: String = r.params.iter().map(|(k, v)| format!(" {k}={v}")).collect();
    format!(
        "# bigdeg {VERSION} command={} config={} seed={} depth={}{params}",
        r.command,
        r.hash(),
        r.seed,
        r.depth.map_or("-".to_string(), |d| d.to_string())
    )
}

pub fn render(r: &Resolved, e: &Emission) -> String {
    match r.format {
        Format::Text => {
            let mut out = header_line(r) + "\n";
            for l in &e.text {
                out.push_str(l);
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut out = format!("{}\n{}\n", header_line(r), e.columns);
            for l in &e.csv {
                out.push_str(l);
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let header = json!({
                "tool": "bigdeg",
                "version": VERSION,
                "command": r.command,
                "config": r.hash(),
                "seed": r.seed,
                "depth": r.depth,
                "params": r.params.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
            });
            let doc = json!({ "header": header, "data": e.json });
            serde_json::to_string_pretty(&doc).expect("json renders") + "\n"
        }
    }
}

/// Quotes a CSV field when needed.
pub fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
