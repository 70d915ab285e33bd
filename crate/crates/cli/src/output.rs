use std::fs;
use std::io::{self, Write};
use std::path::Path;

use bergkern::repro::Units;
use serde_json::{json, Value};

/// `{"command", "units", "normalization", "result"}`.
pub fn json_document(command: &str, units: Units, result: Value) -> String {
    let doc = json!({
        "command": command,
        "units": match units {
            Units::True => "true",
            Units::Scaled => "scaled_2pi",
        },
        "normalization": units.describe(),
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serialisable document");
    s.push('\n');
    s
}

/// Comment lines naming the command and units, then a CSV table.
pub fn csv_document(command: &str, units: Units, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("# bergkern {command}\n# units: {}\n", units.describe());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv"));
    out
}

pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// Shortest round-trip representation, so output is stable across runs.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}
