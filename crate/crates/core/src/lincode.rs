//! Linear network codes over a sum network.
//!
//! A rate `l/n` code assigns every edge `e` a global encoding matrix `g_e`
//! of shape `s*(l+kappa) x n`: the symbol carried by `e` is `x * g_e` where
//! `x = (m_1, k_1, ..., m_s, k_s)` lays out each source's `l` message
//! symbols followed by its `kappa` one-time key symbols. Keys are private
//! uniform randomness of their source; they never need to be decoded.
//!
//! The code file format mirrors the network format: a TOML document with a
//! fixed header followed by one flat row-major matrix per edge:
//!
//! ```toml
//! q = 2
//! l = 2
//! kappa = 0
//! n = 1
//! s = 2
//!
//! [encodings]
//! e1 = [1, 1, 0, 0]
//! ```

use serde::Deserialize;

use crate::error::Error;
use crate::galois::{FieldMatrix, PrimeField};
use crate::netmodel::Network;
use crate::Result;

/// A linear network code. Encodings are stored as `(edge_id, matrix)` pairs
/// whose order is canonical for serialization (network edge order for
/// constructed codes, document order for parsed ones).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: PrimeField,
    msg_len: usize,
    key_len: usize,
    edge_dim: usize,
    sources: usize,
    encodings: Vec<(String, FieldMatrix)>,
}

/// Witness that an edge's encoding cannot be computed from its tail's
/// incoming symbols: one column of `g_e` outside their column span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalViolation {
    pub edge: String,
    pub column: Vec<u64>,
}

/// One assignment of messages and keys to every source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// `messages[i]` has the code's `msg_len` entries.
    pub messages: Vec<Vec<u64>>,
    /// `keys[i]` has the code's `key_len` entries.
    pub keys: Vec<Vec<u64>>,
}

impl Realization {
    /// Lays sources out as `(m_1, k_1, ..., m_s, k_s)`.
    pub fn flatten(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (m, k) in self.messages.iter().zip(&self.keys) {
            out.extend_from_slice(m);
            out.extend_from_slice(k);
        }
        out
    }
}

/// Symbols carried by every edge for one realization, in canonical edge
/// order of the network the code was evaluated against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMessages {
    pub per_edge: Vec<(String, Vec<u64>)>,
}

impl EdgeMessages {
    pub fn for_edge(&self, id: &str) -> Option<&[u64]> {
        self.per_edge
            .iter()
            .find(|(e, _)| e == id)
            .map(|(_, v)| v.as_slice())
    }
}

impl LinearCode {
    /// Assembles a code from parts, checking every matrix shape.
    pub fn from_parts(
        field: PrimeField,
        msg_len: usize,
        key_len: usize,
        edge_dim: usize,
        sources: usize,
        encodings: Vec<(String, FieldMatrix)>,
    ) -> Result<LinearCode> {
        if msg_len == 0 || edge_dim == 0 || sources == 0 {
            return Err(Error::Precondition(
                "msg_len, edge_dim and source count must be positive".into(),
            ));
        }
        let rows = sources * (msg_len + key_len);
        let mut ids = std::collections::HashSet::new();
        for (id, g) in &encodings {
            if !ids.insert(id.clone()) {
                return Err(Error::Validation(format!("duplicate encoding for edge {id}")));
            }
            if g.field() != field || g.rows() != rows || g.cols() != edge_dim {
                return Err(Error::Dimension(format!(
                    "encoding for edge {id} is {}x{}, expected {rows}x{edge_dim}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        Ok(LinearCode {
            field,
            msg_len,
            key_len,
            edge_dim,
            sources,
            encodings,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn msg_len(&self) -> usize {
        self.msg_len
    }

    pub fn key_len(&self) -> usize {
        self.key_len
    }

    pub fn edge_dim(&self) -> usize {
        self.edge_dim
    }

    pub fn source_count(&self) -> usize {
        self.sources
    }

    /// Total row count of every encoding matrix: `s * (l + kappa)`.
    pub fn row_count(&self) -> usize {
        self.sources * (self.msg_len + self.key_len)
    }

    pub fn encodings(&self) -> &[(String, FieldMatrix)] {
        &self.encodings
    }

    pub fn matrix_for(&self, edge_id: &str) -> Result<&FieldMatrix> {
        self.encodings
            .iter()
            .find(|(id, _)| id == edge_id)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::UnknownName(format!("no encoding for edge {edge_id}")))
    }

    /// Row range of source block `i` (messages followed by keys).
    pub fn block_rows(&self, i: usize) -> std::ops::Range<usize> {
        let w = self.msg_len + self.key_len;
        i * w..(i + 1) * w
    }

    /// All message-row indices, block by block.
    pub fn message_rows(&self) -> Vec<usize> {
        let w = self.msg_len + self.key_len;
        (0..self.sources)
            .flat_map(|i| i * w..i * w + self.msg_len)
            .collect()
    }

    /// All key-row indices, block by block.
    pub fn key_rows(&self) -> Vec<usize> {
        let w = self.msg_len + self.key_len;
        (0..self.sources)
            .flat_map(|i| i * w + self.msg_len..(i + 1) * w)
            .collect()
    }

    /// Checks that this code is shaped for `n` and that source-edge
    /// encodings only involve their own source's symbols.
    pub fn validate_against(&self, n: &Network) -> Result<()> {
        if self.field != n.field() {
            return Err(Error::Dimension(format!(
                "code field q = {} does not match network field q = {}",
                self.field.modulus(),
                n.field().modulus()
            )));
        }
        if self.sources != n.sources().len() {
            return Err(Error::Dimension(format!(
                "code declares {} sources, network has {}",
                self.sources,
                n.sources().len()
            )));
        }
        if self.encodings.len() != n.edges().len() {
            return Err(Error::Dimension(format!(
                "code has {} encodings, network has {} edges",
                self.encodings.len(),
                n.edges().len()
            )));
        }
        for e in n.edges() {
            let g = self.matrix_for(&e.id)?;
            if let Some(i) = n.source_position(e.tail) {
                let own = self.block_rows(i);
                for r in 0..g.rows() {
                    if own.contains(&r) {
                        continue;
                    }
                    for c in 0..g.cols() {
                        if g.get(r, c) != 0 {
                            return Err(Error::Validation(format!(
                                "source edge {} mixes in symbols of another source (row {r})",
                                e.id
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Encodings in canonical network edge order.
    pub fn aligned(&self, n: &Network) -> Result<Vec<&FieldMatrix>> {
        n.edges().iter().map(|e| self.matrix_for(&e.id)).collect()
    }

    /// Horizontal stack `[g_e : e in w]` over an edge index set, in the
    /// order given.
    pub fn stacked(&self, n: &Network, w: &[usize]) -> Result<FieldMatrix> {
        let mats = self.aligned(n)?;
        let parts: Vec<&FieldMatrix> = w.iter().map(|&e| mats[e]).collect();
        FieldMatrix::hconcat_all(self.field, self.row_count(), &parts)
    }

    /// Zeroes every row block outside `keep` (positions in the source list).
    pub fn truncate(&self, keep: &[usize]) -> LinearCode {
        let keep_set: std::collections::HashSet<usize> = keep.iter().copied().collect();
        let mut out = self.clone();
        for (_, g) in &mut out.encodings {
            for i in 0..self.sources {
                if keep_set.contains(&i) {
                    continue;
                }
                for r in self.block_rows(i) {
                    for c in 0..g.cols() {
                        g.set(r, c, 0);
                    }
                }
            }
        }
        out
    }

    /// Canonical text form of the code.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("q = {}\n", self.field.modulus()));
        out.push_str(&format!("l = {}\n", self.msg_len));
        out.push_str(&format!("kappa = {}\n", self.key_len));
        out.push_str(&format!("n = {}\n", self.edge_dim));
        out.push_str(&format!("s = {}\n", self.sources));
        out.push_str("\n[encodings]\n");
        for (id, g) in &self.encodings {
            let flat: Vec<String> = g.entries().iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{id} = [{}]\n", flat.join(", ")));
        }
        out
    }
}

/// The decoding target: `s*(l+kappa) x l` with `a_i * I_l` on source `i`'s
/// message rows and zero on key rows. A decoder `D` must satisfy
/// `G_in * D = target`.
pub fn target_matrix(n: &Network, msg_len: usize, key_len: usize) -> FieldMatrix {
    let f = n.field();
    let s = n.sources().len();
    let w = msg_len + key_len;
    let mut t = FieldMatrix::zeros(f, s * w, msg_len);
    for (i, src) in n.sources().iter().enumerate() {
        for j in 0..msg_len {
            t.set(i * w + j, j, src.coeff);
        }
    }
    t
}

/// Computes the symbol every edge carries for one realization.
pub fn evaluate(code: &LinearCode, n: &Network, x: &Realization) -> Result<EdgeMessages> {
    code.validate_against(n)?;
    if x.messages.len() != code.sources || x.keys.len() != code.sources {
        return Err(Error::Dimension(format!(
            "realization covers {} sources, code has {}",
            x.messages.len().min(x.keys.len()),
            code.sources
        )));
    }
    for (i, (m, k)) in x.messages.iter().zip(&x.keys).enumerate() {
        if m.len() != code.msg_len || k.len() != code.key_len {
            return Err(Error::Dimension(format!(
                "realization for source {i} has wrong lengths"
            )));
        }
    }
    let flat = x.flatten();
    let mut per_edge = Vec::with_capacity(n.edges().len());
    for e in n.edges() {
        let g = code.matrix_for(&e.id)?;
        per_edge.push((e.id.clone(), g.row_vec_mul(&flat)?));
    }
    Ok(EdgeMessages { per_edge })
}

/// Local realizability: every edge leaving a non-source node must carry a
/// function of the symbols entering that node, i.e. `colspace(g_e)` must lie
/// inside the column span of the incoming encodings. Returns the first
/// violation in canonical edge order, or `None` when the code is realizable.
pub fn check_local(code: &LinearCode, n: &Network) -> Result<Option<LocalViolation>> {
    code.validate_against(n)?;
    let mats = code.aligned(n)?;
    for (ei, e) in n.edges().iter().enumerate() {
        if n.source_position(e.tail).is_some() {
            continue;
        }
        let incoming = n.in_edges(e.tail);
        let parts: Vec<&FieldMatrix> = incoming.iter().map(|&d| mats[d]).collect();
        let g_in = FieldMatrix::hconcat_all(code.field(), code.row_count(), &parts)?;
        let base_rank = g_in.rank();
        for c in 0..mats[ei].cols() {
            let col = mats[ei].select_cols(&[c]);
            let joined = FieldMatrix::hconcat(&g_in, &col)?;
            if joined.rank() != base_rank {
                return Ok(Some(LocalViolation {
                    edge: e.id.clone(),
                    column: col.column(0),
                }));
            }
        }
    }
    Ok(None)
}

/// Sink decodability: stacks the encodings entering the sink and solves for
/// a decoding matrix `D` with `G_in * D = target`. Returns `None` when the
/// target sum is not computable from what reaches the sink.
pub fn check_decodable(code: &LinearCode, n: &Network) -> Result<Option<FieldMatrix>> {
    code.validate_against(n)?;
    let in_edges = n.in_edges(n.sink());
    let g_in = code.stacked(n, &in_edges)?;
    let target = target_matrix(n, code.msg_len(), code.key_len());
    g_in.solve_right(&target)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeDoc {
    q: u64,
    l: usize,
    kappa: usize,
    n: usize,
    s: usize,
    encodings: toml::map::Map<String, toml::Value>,
}

/// Parses the text form produced by [`LinearCode::serialize`]. Entries must
/// already be reduced (in `[0, q)`): the round trip is required to be exact.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let doc: CodeDoc =
        toml::from_str(text).map_err(|e| Error::Parse(format!("code document: {e}")))?;
    let field = PrimeField::new(doc.q)
        .map_err(|_| Error::Parse(format!("code document: q = {} is not a usable prime", doc.q)))?;
    let rows = doc.s * (doc.l + doc.kappa);
    let mut encodings = Vec::new();
    for (id, value) in doc.encodings.iter() {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse(format!("encoding for edge {id} is not an array")))?;
        let mut flat = Vec::with_capacity(arr.len());
        for v in arr {
            let x = v
                .as_integer()
                .ok_or_else(|| Error::Parse(format!("non-integer entry in encoding {id}")))?;
            if x < 0 || x as u64 >= doc.q {
                return Err(Error::Parse(format!(
                    "entry {x} in encoding {id} outside [0, {})",
                    doc.q
                )));
            }
            flat.push(x as u64);
        }
        if flat.len() != rows * doc.n {
            return Err(Error::Parse(format!(
                "encoding {id} has {} entries, expected {}",
                flat.len(),
                rows * doc.n
            )));
        }
        let g = FieldMatrix::from_flat(field, rows, doc.n, &flat)?;
        encodings.push((id.clone(), g));
    }
    LinearCode::from_parts(field, doc.l, doc.kappa, doc.n, doc.s, encodings)
}
