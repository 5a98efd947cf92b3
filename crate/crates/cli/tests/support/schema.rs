//! A small JSON Schema checker covering the keywords the report schema uses.

use std::sync::OnceLock;

use regex::Regex;
use serde_json::Value;

const SCHEMA: &str = include_str!("../../schema/report.schema.json");

fn schema() -> &'static Value {
    static SCHEMA_VALUE: OnceLock<Value> = OnceLock::new();
    SCHEMA_VALUE.get_or_init(|| serde_json::from_str(SCHEMA).expect("schema parses"))
}

pub fn validate_report(instance: &Value) {
    let mut errors = Vec::new();
    check(schema(), instance, "$", &mut errors);
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

pub fn violations(instance: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema(), instance, "$", &mut errors);
    errors
}

fn resolve<'a>(reference: &str) -> &'a Value {
    let name = reference
        .strip_prefix("#/$defs/")
        .expect("local $defs reference");
    &schema()["$defs"][name]
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "number" => v.is_number(),
        "integer" => v.is_u64() || v.is_i64(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        other => panic!("unsupported type {other}"),
    }
}

fn accepts(schema: &Value, v: &Value) -> bool {
    let mut errors = Vec::new();
    check(schema, v, "", &mut errors);
    errors.is_empty()
}

fn check(schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let Some(obj) = schema.as_object() else {
        return;
    };
    for (key, rule) in obj {
        match key.as_str() {
            "$schema" | "$id" | "title" | "description" | "$defs" | "then" => {}
            "$ref" => check(resolve(rule.as_str().unwrap()), v, path, errors),
            "type" => {
                let ok = match rule {
                    Value::String(t) => type_matches(t, v),
                    Value::Array(ts) => ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)),
                    _ => panic!("bad type rule"),
                };
                if !ok {
                    errors.push(format!("{path}: expected type {rule}, found {v}"));
                }
            }
            "const" if v != rule => errors.push(format!("{path}: expected {rule}, found {v}")),
            "enum" if !rule.as_array().unwrap().contains(v) => {
                errors.push(format!("{path}: {v} not in {rule}"))
            }
            "required" => {
                if let Some(o) = v.as_object() {
                    for name in rule.as_array().unwrap() {
                        if !o.contains_key(name.as_str().unwrap()) {
                            errors.push(format!("{path}: missing {name}"));
                        }
                    }
                }
            }
            "properties" => {
                if let Some(o) = v.as_object() {
                    for (name, sub) in rule.as_object().unwrap() {
                        if let Some(field) = o.get(name) {
                            check(sub, field, &format!("{path}.{name}"), errors);
                        }
                    }
                }
            }
            "additionalProperties" if rule == &Value::Bool(false) => {
                if let Some(o) = v.as_object() {
                    let known = obj["properties"].as_object().unwrap();
                    for name in o.keys().filter(|k| !known.contains_key(*k)) {
                        errors.push(format!("{path}: unexpected field {name}"));
                    }
                }
            }
            "items" => {
                if let Some(a) = v.as_array() {
                    for (i, item) in a.iter().enumerate() {
                        check(rule, item, &format!("{path}[{i}]"), errors);
                    }
                }
            }
            "minItems" => {
                if v.as_array()
                    .is_some_and(|a| (a.len() as u64) < rule.as_u64().unwrap())
                {
                    errors.push(format!("{path}: too few items"));
                }
            }
            "minimum" | "maximum" | "exclusiveMinimum" => {
                if let Some(x) = v.as_f64() {
                    let bound = rule.as_f64().unwrap();
                    let ok = match key.as_str() {
                        "minimum" => x >= bound,
                        "maximum" => x <= bound,
                        _ => x > bound,
                    };
                    if !ok {
                        errors.push(format!("{path}: {x} violates {key} {bound}"));
                    }
                }
            }
            "pattern" => {
                if let Some(s) = v.as_str() {
                    if !Regex::new(rule.as_str().unwrap()).unwrap().is_match(s) {
                        errors.push(format!("{path}: '{s}' does not match {rule}"));
                    }
                }
            }
            "oneOf" => {
                let branches = rule.as_array().unwrap();
                let matching = branches.iter().filter(|s| accepts(s, v)).count();
                if matching != 1 {
                    errors.push(format!("{path}: matches {matching} oneOf branches"));
                }
                if matching == 0 {
                    for branch in branches {
                        check(branch, v, path, errors);
                    }
                }
            }
            "allOf" => {
                for sub in rule.as_array().unwrap() {
                    check(sub, v, path, errors);
                }
            }
            "if" => {
                if accepts(rule, v) {
                    if let Some(then) = obj.get("then") {
                        check(then, v, path, errors);
                    }
                }
            }
            "const" | "enum" | "additionalProperties" => {}
            other => panic!("schema keyword {other} is not supported by this checker"),
        }
    }
}
