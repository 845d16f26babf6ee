//! Directed acyclic sum networks: the model type, its on-disk text format,
//! structural validation, reachability, and reduction to an all-ones sum.
//!
//! A network has source nodes `s_1..s_m` holding independent messages,
//! exactly one sink that must recover `sum_i a_i * x_i` over F_q, and
//! unit-capacity directed edges. The file format is a small TOML document
//! with a fixed key order so that serialization is byte-stable:
//!
//! ```toml
//! field_q = 2
//! nodes = ["s1", "s2", "v", "rho"]
//! edges = [
//!     { id = "e1", tail = "s1", head = "rho" },
//! ]
//! sources = [
//!     { node = "s1", coeff = 1 },
//! ]
//! sink = "rho"
//! ```

use serde::Deserialize;

use crate::error::Error;
use crate::galois::PrimeField;
use crate::Result;

/// Index into `Network::nodes`.
pub type NodeIx = usize;
/// Index into `Network::edges`; file order is the canonical edge order.
pub type EdgeIx = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: NodeIx,
    pub head: NodeIx,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    pub node: NodeIx,
    /// Coefficient of this source's message in the target sum; nonzero.
    pub coeff: u64,
}

/// A validated sum network. Construction goes through [`Network::build`] or
/// [`parse_network`], so a value of this type always satisfies the
/// structural rules (acyclic, degree constraints, reachable sink, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    field: PrimeField,
    nodes: Vec<String>,
    edges: Vec<Edge>,
    sources: Vec<Source>,
    sink: NodeIx,
}

/// Result of [`Network::normalize_to_sum`]: the same topology with all
/// coefficients forced to 1, plus the substitution that was applied
/// (`y_i = substitution[i] * x_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub network: Network,
    pub substitution: Vec<u64>,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Network {
    /// Validates and assembles a network from raw parts. Node and edge order
    /// is preserved and canonical.
    pub fn build(
        q: u64,
        node_ids: Vec<String>,
        edge_list: Vec<(String, String, String)>,
        source_list: Vec<(String, u64)>,
        sink_id: &str,
    ) -> Result<Network> {
        let field = PrimeField::new(q)
            .map_err(|_| Error::Validation(format!("field_q = {q} is not a usable prime")))?;

        let mut index = std::collections::HashMap::new();
        for (i, id) in node_ids.iter().enumerate() {
            if !valid_ident(id) {
                return Err(Error::Validation(format!("node id {id:?} is not an identifier")));
            }
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate node {id}")));
            }
        }
        let node_of = |id: &str| -> Result<NodeIx> {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Validation(format!("undeclared node {id}")))
        };

        let mut edge_ids = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(edge_list.len());
        for (id, tail, head) in edge_list {
            if !valid_ident(&id) {
                return Err(Error::Validation(format!("edge id {id:?} is not an identifier")));
            }
            if !edge_ids.insert(id.clone()) {
                return Err(Error::Validation(format!("duplicate edge {id}")));
            }
            edges.push(Edge {
                id,
                tail: node_of(&tail)?,
                head: node_of(&head)?,
            });
        }

        if source_list.is_empty() {
            return Err(Error::Validation("no sources declared".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut sources = Vec::with_capacity(source_list.len());
        for (id, coeff) in source_list {
            let node = node_of(&id)?;
            if !seen.insert(node) {
                return Err(Error::Validation(format!("duplicate source {id}")));
            }
            if coeff == 0 || coeff >= q {
                return Err(Error::Validation(format!(
                    "source {id} coefficient {coeff} outside [1, {q})"
                )));
            }
            sources.push(Source { node, coeff });
        }

        let sink = node_of(sink_id)?;
        if sources.iter().any(|s| s.node == sink) {
            return Err(Error::Validation(format!("sink {sink_id} is also a source")));
        }

        let n = Network {
            field,
            nodes: node_ids,
            edges,
            sources,
            sink,
        };
        n.validate_structure()?;
        Ok(n)
    }

    fn validate_structure(&self) -> Result<()> {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &self.edges {
            outdeg[e.tail] += 1;
            indeg[e.head] += 1;
        }

        // Kahn's algorithm; a leftover node names the cycle.
        let mut deg = indeg.clone();
        let mut queue: std::collections::VecDeque<NodeIx> =
            (0..n).filter(|&v| deg[v] == 0).collect();
        let mut seen = 0usize;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for e in &self.edges {
                if e.tail == v {
                    deg[e.head] -= 1;
                    if deg[e.head] == 0 {
                        queue.push_back(e.head);
                    }
                }
            }
        }
        if seen != n {
            let culprit = (0..n).find(|&v| deg[v] > 0).unwrap();
            return Err(Error::Validation(format!(
                "cycle through node {}",
                self.nodes[culprit]
            )));
        }

        for s in &self.sources {
            if indeg[s.node] != 0 {
                let offending = self.edges.iter().find(|e| e.head == s.node).unwrap();
                return Err(Error::Validation(format!(
                    "source {} has incoming edge {}",
                    self.nodes[s.node], offending.id
                )));
            }
        }
        if outdeg[self.sink] != 0 {
            let offending = self.edges.iter().find(|e| e.tail == self.sink).unwrap();
            return Err(Error::Validation(format!(
                "sink {} has outgoing edge {}",
                self.nodes[self.sink], offending.id
            )));
        }
        let is_source: std::collections::HashSet<NodeIx> =
            self.sources.iter().map(|s| s.node).collect();
        for v in 0..n {
            if indeg[v] == 0 && !is_source.contains(&v) {
                return Err(Error::Validation(format!(
                    "node {} has no incoming edges and is not a source",
                    self.nodes[v]
                )));
            }
            if outdeg[v] == 0 && v != self.sink {
                return Err(Error::Validation(format!(
                    "node {} has no outgoing edges and is not the sink",
                    self.nodes[v]
                )));
            }
        }

        // Degree rules plus acyclicity already force this, but the guarantee
        // is load-bearing for everything downstream, so check it directly.
        for s in &self.sources {
            let (reached, _) = self.reachable(&[s.node])?;
            if !reached.contains(&self.sink) {
                return Err(Error::Validation(format!(
                    "source {} has no path to the sink",
                    self.nodes[s.node]
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sources(&self) -> &[Source] {
        &self.sources
    }

    pub fn sink(&self) -> NodeIx {
        self.sink
    }

    pub fn node_name(&self, v: NodeIx) -> &str {
        &self.nodes[v]
    }

    pub fn node_index(&self, id: &str) -> Result<NodeIx> {
        self.nodes
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::UnknownName(format!("node {id}")))
    }

    pub fn edge_index(&self, id: &str) -> Result<EdgeIx> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::UnknownName(format!("edge {id}")))
    }

    /// Position of `node` in the source list, if it is a source.
    pub fn source_position(&self, node: NodeIx) -> Option<usize> {
        self.sources.iter().position(|s| s.node == node)
    }

    pub fn out_edges(&self, v: NodeIx) -> Vec<EdgeIx> {
        (0..self.edges.len()).filter(|&e| self.edges[e].tail == v).collect()
    }

    pub fn in_edges(&self, v: NodeIx) -> Vec<EdgeIx> {
        (0..self.edges.len()).filter(|&e| self.edges[e].head == v).collect()
    }

    /// Forward reachability from a node set. Returns sorted node and edge
    /// index lists; an edge is reached exactly when its tail is reached.
    pub fn reachable(&self, from: &[NodeIx]) -> Result<(Vec<NodeIx>, Vec<EdgeIx>)> {
        let mut mark = vec![false; self.nodes.len()];
        let mut stack = Vec::new();
        for &v in from {
            if v >= self.nodes.len() {
                return Err(Error::UnknownName(format!("node index {v}")));
            }
            if !mark[v] {
                mark[v] = true;
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                if e.tail == v && !mark[e.head] {
                    mark[e.head] = true;
                    stack.push(e.head);
                }
            }
        }
        let nodes = (0..self.nodes.len()).filter(|&v| mark[v]).collect();
        let edges = (0..self.edges.len())
            .filter(|&e| mark[self.edges[e].tail])
            .collect();
        Ok((nodes, edges))
    }

    /// Same topology with every coefficient forced to 1; the returned
    /// substitution records the original coefficients. Idempotent.
    pub fn normalize_to_sum(&self) -> Normalized {
        let substitution: Vec<u64> = self.sources.iter().map(|s| s.coeff).collect();
        let mut network = self.clone();
        for s in &mut network.sources {
            s.coeff = 1;
        }
        Normalized {
            network,
            substitution,
        }
    }

    /// Canonical text form; fixed key order, four-space indent, stable.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field_q = {}\n", self.field.modulus()));
        let names: Vec<String> = self.nodes.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&format!("nodes = [{}]\n", names.join(", ")));
        out.push_str("edges = [\n");
        for e in &self.edges {
            out.push_str(&format!(
                "    {{ id = {:?}, tail = {:?}, head = {:?} }},\n",
                e.id, self.nodes[e.tail], self.nodes[e.head]
            ));
        }
        out.push_str("]\n");
        out.push_str("sources = [\n");
        for s in &self.sources {
            out.push_str(&format!(
                "    {{ node = {:?}, coeff = {} }},\n",
                self.nodes[s.node], s.coeff
            ));
        }
        out.push_str("]\n");
        out.push_str(&format!("sink = {:?}\n", self.nodes[self.sink]));
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    field_q: u64,
    nodes: Vec<String>,
    edges: Vec<EdgeDoc>,
    sources: Vec<SourceDoc>,
    sink: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: String,
    tail: String,
    head: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceDoc {
    node: String,
    coeff: u64,
}

/// Parses and validates the text form produced by [`Network::serialize`].
pub fn parse_network(text: &str) -> Result<Network> {
    let doc: NetworkDoc =
        toml::from_str(text).map_err(|e| Error::Parse(format!("network document: {e}")))?;
    Network::build(
        doc.field_q,
        doc.nodes,
        doc.edges.into_iter().map(|e| (e.id, e.tail, e.head)).collect(),
        doc.sources.into_iter().map(|s| (s.node, s.coeff)).collect(),
        &doc.sink,
    )
}
