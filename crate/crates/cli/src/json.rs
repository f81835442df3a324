//! Pretty JSON with short arrays kept on one line, so matrices print one
//! row per line.

use serde_json::Value;

fn scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| scalar(x) || matches!(x, Value::Array(a) if a.iter().all(scalar))),
        Value::Object(map) => map.is_empty(),
        _ => true,
    }
}

fn write_inline(out: &mut String, v: &Value) {
    match v {
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_inline(out, x);
            }
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("values serialize")),
    }
}

fn write(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        _ if inline(v) => write_inline(out, v),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

pub fn pretty<T: serde::Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("values serialize");
    let mut out = String::new();
    write(&mut out, &v, 0);
    out.push('\n');
    out
}
