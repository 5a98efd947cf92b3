//! Edge lists with arbitrary node labels. Labels are mapped to dense indices
//! in order of first appearance; the core only ever sees indices.

use std::collections::HashMap;

use cliquemdl::{Error, Graph, Result, VertexSubset};

#[derive(Debug, Clone, Default)]
pub struct Labels {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Labels {
    fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.names.len();
        self.names.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }

    pub fn get(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn names_of(&self, subset: &VertexSubset) -> Vec<String> {
        subset
            .as_slice()
            .iter()
            .map(|&v| self.names[v].clone())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
}

/// Parses `label label` lines; `#` comments and blank lines are skipped.
pub fn parse_labeled_edge_list(text: &str) -> Result<(Graph, Labels)> {
    let mut labels = Labels::default();
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two node labels, found {} tokens", tokens.len()),
            });
        }
        let u = labels.intern(tokens[0]);
        let v = labels.intern(tokens[1]);
        if u == v {
            return Err(Error::SelfLoop {
                line: line_no,
                node: u,
            });
        }
        edges.push((u, v));
    }
    let graph = Graph::new(labels.len(), edges)?;
    Ok((graph, labels))
}
