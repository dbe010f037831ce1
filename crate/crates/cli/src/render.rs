//! Output formats. Every command builds one JSON document; text and CSV are
//! renderings of that same document so the three modes carry the same data.

use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Output {
    Json,
    Csv,
    Text,
}

pub fn render(doc: &Value, output: Output) -> String {
    match output {
        Output::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("json values serialize");
            s.push('\n');
            s
        }
        Output::Text => {
            let mut lines = Vec::new();
            flatten("", doc, &mut lines);
            let mut s = String::new();
            for (k, v) in lines {
                s.push_str(&k);
                s.push_str(": ");
                s.push_str(&v);
                s.push('\n');
            }
            s
        }
        Output::Csv => csv(doc),
    }
}

/// Element rows when the document carries them, `key,value` rows otherwise.
fn csv(doc: &Value) -> String {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    match doc.pointer("/result/element_rows").and_then(Value::as_array) {
        Some(rows) => {
            w.write_record(["element", "order", "class_representative"]).expect("in-memory write");
            for r in rows {
                w.write_record([
                    scalar(&r["element"]),
                    scalar(&r["order"]),
                    scalar(&r["class_representative"]),
                ])
                .expect("in-memory write");
            }
        }
        None => {
            let mut lines = Vec::new();
            flatten("", doc, &mut lines);
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in lines {
                w.write_record([k, v]).expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", joined.join("; "))));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), item, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

/// Wraps a command result with the self-describing header.
pub fn envelope(command: &str, group: Option<Value>, word: Option<String>, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), SCHEMA_VERSION.into());
    m.insert("tool_version".into(), env!("CARGO_PKG_VERSION").into());
    m.insert("command".into(), command.into());
    if let Some(g) = group {
        m.insert("group".into(), g);
    }
    if let Some(w) = word {
        m.insert("word".into(), w.into());
    }
    m.insert("result".into(), result);
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_flattens_nested_values() {
        let doc = json!({"a": {"b": 1, "c": ["x", "y"]}, "d": [{"e": true}]});
        assert_eq!(render(&doc, Output::Text), "a.b: 1\na.c: [x; y]\nd[0].e: true\n");
    }

    #[test]
    fn csv_quotes_cycle_strings() {
        let doc = json!({"result": {"element_rows": [
            {"element": "(1,2)", "order": 2, "class_representative": "(1,2)"}
        ]}});
        assert_eq!(
            render(&doc, Output::Csv),
            "element,order,class_representative\n\"(1,2)\",2,\"(1,2)\"\n"
        );
    }
}
