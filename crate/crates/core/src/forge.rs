//! Code construction and search.
//!
//! Four builders live here:
//!
//! - `build_routing_user_secure`: one path per source, chosen so that the
//!   paths of `min{C_min, s}` distinct sources are edge-disjoint (via unit
//!   max flow; a per-source shortest-path pick can funnel every source
//!   through one bottleneck edge, which hands a single wiretap the whole
//!   sum). Each used edge carries the weighted partial sum of the sources
//!   routed through it; the result is a rate-1 keyless code that keeps the
//!   sum hidden from any adversary smaller than that boundary.
//! - `build_base_sum_code`: randomized local encoders, accepted when the
//!   sink can decode `l` parallel sums. The base is keyless and is the raw
//!   material for the secure transform.
//! - `secure_transform` / `check_transform` / `apply_transform`: converts a
//!   keyless decodable base of block size `b` into a code with `b − r`
//!   messages and `r` one-time keys per source, by an invertible
//!   block-diagonal change of variables. The accepted plans sample every
//!   block inverse with one shared left part, which keeps the sink's
//!   decoder alive; acceptance requires the span condition below for every
//!   wiretap set of size `r`, which is exactly equivalent to passing the
//!   strict sweep.
//! - `search_codes`: exhaustive or randomized enumeration of local-encoder
//!   assignments, reporting the first (lowest-index) decodable code that
//!   survives the requested security sweep, or certified exhaustion.
//!
//! Everything randomized is reproducible from its seed; everything
//! exhaustive reports deterministic canonical positions.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::cutlab;
use crate::error::Error;
use crate::galois::{self, FieldMatrix, PrimeField};
use crate::lincode::{self, LinearCode};
use crate::netmodel::{EdgeIx, Network, NodeIx};
use crate::sentinel::{self, Mode};
use crate::Result;

// ---------------------------------------------------------------------------
// Routing construction.

/// Builds the rate-1 keyless code that routes every source along one path
/// and sums on shared edges. Paths are selected so that `min{C_min, s}`
/// distinct sources travel edge-disjointly (max flow with one unit per
/// source); remaining sources take shortest paths, ties broken by
/// lexicographic edge order, and once such a path steps onto an already
/// claimed edge it follows that path's remainder so no edge ever forks.
///
/// The output passes the user-secure sweep for every `r < min{C_min, s}`:
/// a wiretap of that size misses at least one disjoint path entirely, so
/// some source never enters its view and the sum stays unresolvable.
pub fn build_routing_user_secure(n: &Network) -> Result<LinearCode> {
    let flow_paths = cutlab::source_flow_paths(n)?;
    // succ[e] = Some(next edge) on the path through e, None when e enters
    // the sink. Shared by every path that uses e.
    let mut succ: HashMap<EdgeIx, Option<EdgeIx>> = HashMap::new();
    let mut paths: Vec<Option<Vec<EdgeIx>>> = vec![None; n.sources().len()];
    let claim = |succ: &mut HashMap<EdgeIx, Option<EdgeIx>>, path: &[EdgeIx]| {
        for (k, &e) in path.iter().enumerate() {
            if succ.contains_key(&e) {
                break;
            }
            succ.insert(e, path.get(k + 1).copied());
        }
    };
    for (i, p) in flow_paths.iter().enumerate() {
        if let Some(path) = p {
            claim(&mut succ, path);
            paths[i] = Some(path.clone());
        }
    }
    for (i, src) in n.sources().iter().enumerate() {
        if paths[i].is_some() {
            continue;
        }
        let path = best_constrained_path(n, src.node, &succ)?;
        claim(&mut succ, &path);
        paths[i] = Some(path);
    }

    let field = n.field();
    let s = n.sources().len();
    let mut columns: Vec<Vec<u64>> = vec![vec![0; s]; n.edges().len()];
    for (i, p) in paths.iter().enumerate() {
        let coeff = n.sources()[i].coeff;
        for &e in p.as_ref().expect("every source was routed") {
            columns[e][i] = field.add(columns[e][i], coeff);
        }
    }
    let encodings: Vec<(String, FieldMatrix)> = n
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let m = FieldMatrix::from_flat(field, s, 1, &columns[e])?;
            Ok((edge.id.clone(), m))
        })
        .collect::<Result<_>>()?;
    let code = LinearCode::from_parts(field, 1, 0, 1, s, encodings)?;
    if lincode::check_local(&code, n)?.is_some() {
        return Err(Error::Internal("routing produced a locally unrealizable code".into()));
    }
    if lincode::check_decodable(&code, n)?.is_none() {
        return Err(Error::Internal("routing produced an undecodable code".into()));
    }
    Ok(code)
}

/// Shortest source→sink path under the claimed-edge rule, ties by
/// lexicographic edge sequence. Exhaustive over the DAG's paths; fine at
/// workbench scale.
fn best_constrained_path(
    n: &Network,
    start: NodeIx,
    succ: &HashMap<EdgeIx, Option<EdgeIx>>,
) -> Result<Vec<EdgeIx>> {
    fn chain(succ: &HashMap<EdgeIx, Option<EdgeIx>>, mut e: EdgeIx) -> Vec<EdgeIx> {
        let mut out = vec![e];
        while let Some(Some(next)) = succ.get(&e) {
            out.push(*next);
            e = *next;
        }
        out
    }
    fn consider(best: &mut Option<Vec<EdgeIx>>, cand: Vec<EdgeIx>) {
        let better = match best {
            None => true,
            Some(b) => (cand.len(), &cand) < (b.len(), b),
        };
        if better {
            *best = Some(cand);
        }
    }
    fn search(
        n: &Network,
        v: NodeIx,
        succ: &HashMap<EdgeIx, Option<EdgeIx>>,
        current: &mut Vec<EdgeIx>,
        best: &mut Option<Vec<EdgeIx>>,
    ) {
        if v == n.sink() {
            consider(best, current.clone());
            return;
        }
        if let Some(b) = best {
            if current.len() + 1 > b.len() {
                return;
            }
        }
        for e in n.out_edges(v) {
            if succ.contains_key(&e) {
                let mut cand = current.clone();
                cand.extend(chain(succ, e));
                consider(best, cand);
            } else {
                current.push(e);
                search(n, n.edges()[e].head, succ, current, best);
                current.pop();
            }
        }
    }
    let mut best = None;
    search(n, start, succ, &mut Vec::new(), &mut best);
    best.ok_or_else(|| {
        Error::Internal(format!(
            "no path from {} to the sink despite network validation",
            n.node_name(start)
        ))
    })
}

// ---------------------------------------------------------------------------
// Randomized base construction.

/// A constructed keyless base code, possibly over a larger prime field than
/// the input network (the topology and coefficients carry over verbatim).
#[derive(Debug, Clone)]
pub struct ConstructedBase {
    pub code: LinearCode,
    /// The network the code verifies against; differs from the input only
    /// in the field modulus when escalation was needed.
    pub network: Network,
    pub escalated: bool,
    pub attempts_used: u64,
}

/// Rebuilds the same topology, coefficients and sink over modulus `q`.
pub fn with_field(n: &Network, q: u64) -> Result<Network> {
    let edge_list: Vec<(String, String, String)> = n
        .edges()
        .iter()
        .map(|e| {
            (
                e.id.clone(),
                n.node_name(e.tail).to_string(),
                n.node_name(e.head).to_string(),
            )
        })
        .collect();
    let source_list: Vec<(String, u64)> = n
        .sources()
        .iter()
        .map(|s| (n.node_name(s.node).to_string(), s.coeff))
        .collect();
    Network::build(
        q,
        n.nodes().to_vec(),
        edge_list,
        source_list,
        n.node_name(n.sink()),
    )
}

/// Edges in a deterministic topological order: by topological position of
/// the tail node (Kahn, smallest node index first), then by edge index.
fn topo_edges(n: &Network) -> Vec<EdgeIx> {
    let v = n.nodes().len();
    let mut indeg = vec![0usize; v];
    for e in n.edges() {
        indeg[e.head] += 1;
    }
    let mut ready: std::collections::BTreeSet<NodeIx> = (0..v).filter(|&x| indeg[x] == 0).collect();
    let mut pos = vec![0usize; v];
    let mut next = 0;
    while let Some(&x) = ready.iter().next() {
        ready.remove(&x);
        pos[x] = next;
        next += 1;
        for e in n.out_edges(x) {
            let h = n.edges()[e].head;
            indeg[h] -= 1;
            if indeg[h] == 0 {
                ready.insert(h);
            }
        }
    }
    let mut order: Vec<EdgeIx> = (0..n.edges().len()).collect();
    order.sort_by_key(|&e| (pos[n.edges()[e].tail], e));
    order
}

/// Local encoder content for one edge, before global assembly.
enum LocalEncoder {
    /// Rows of the owning source's block, `(l+κ)·edge_dim` entries row-major.
    Source(Vec<u64>),
    /// Mixing matrix over the tail's in-edge symbols,
    /// `(indeg·edge_dim)·edge_dim` entries row-major.
    Mix(Vec<u64>),
}

/// Assembles global encoding matrices from local encoders given in the
/// `topo_edges` order used to produce them.
fn assemble(
    n: &Network,
    field: PrimeField,
    msg_len: usize,
    key_len: usize,
    edge_dim: usize,
    order: &[EdgeIx],
    locals: &[LocalEncoder],
) -> Result<Vec<(String, FieldMatrix)>> {
    let s = n.sources().len();
    let rows = s * (msg_len + key_len);
    let block = msg_len + key_len;
    let mut globals: Vec<Option<FieldMatrix>> = vec![None; n.edges().len()];
    for (k, &e) in order.iter().enumerate() {
        let tail = n.edges()[e].tail;
        let g = match (&locals[k], n.source_position(tail)) {
            (LocalEncoder::Source(entries), Some(i)) => {
                let mut m = FieldMatrix::zeros(field, rows, edge_dim);
                for rr in 0..block {
                    for cc in 0..edge_dim {
                        m.set(i * block + rr, cc, entries[rr * edge_dim + cc]);
                    }
                }
                m
            }
            (LocalEncoder::Mix(entries), None) => {
                let ins = n.in_edges(tail);
                let parts: Vec<&FieldMatrix> = ins
                    .iter()
                    .map(|&ie| globals[ie].as_ref().expect("topological order"))
                    .collect();
                let stacked = FieldMatrix::hconcat_all(field, rows, &parts)?;
                let mix = FieldMatrix::from_flat(field, ins.len() * edge_dim, edge_dim, entries)?;
                stacked.mul(&mix)?
            }
            _ => {
                return Err(Error::Internal(
                    "local encoder kind does not match edge kind".into(),
                ))
            }
        };
        globals[e] = Some(g);
    }
    Ok(n
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| (edge.id.clone(), globals[e].take().expect("all edges assembled")))
        .collect())
}

/// Randomized construction of a keyless rate-`l` base code (`edge_dim` 1).
/// Draws local encoders uniformly in topological order and accepts the
/// first decodable outcome. When the network's own field yields nothing
/// within `attempts`, retries over a prime larger than twice the edge
/// count, where random codes decode with high probability.
pub fn build_base_sum_code(
    n: &Network,
    l: usize,
    attempts: u64,
    seed: u64,
) -> Result<Option<ConstructedBase>> {
    if l == 0 {
        return Err(Error::Precondition("rate must be positive".into()));
    }
    let c_min = cutlab::compute_c_min(n)?.value;
    if l as u64 > c_min {
        return Err(Error::Precondition(format!(
            "rate {l} exceeds the single-source cut bound {c_min}"
        )));
    }
    let escalation = galois::next_prime(2 * n.edges().len() as u64 + 1);
    let mut phases = vec![(n.field().modulus(), false)];
    if n.field().modulus() < escalation {
        phases.push((escalation, true));
    }
    for (q, escalated) in phases {
        let net = if escalated { with_field(n, q)? } else { n.clone() };
        let field = net.field();
        let order = topo_edges(&net);
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ if escalated { 0x45534341 } else { 0 });
        for attempt in 0..attempts {
            let locals: Vec<LocalEncoder> = order
                .iter()
                .map(|&e| {
                    let tail = net.edges()[e].tail;
                    if net.source_position(tail).is_some() {
                        LocalEncoder::Source((0..l).map(|_| rng.gen_range(0..q)).collect())
                    } else {
                        let d = net.in_edges(tail).len();
                        LocalEncoder::Mix((0..d).map(|_| rng.gen_range(0..q)).collect())
                    }
                })
                .collect();
            let encodings = assemble(&net, field, l, 0, 1, &order, &locals)?;
            let code = LinearCode::from_parts(field, l, 0, 1, net.sources().len(), encodings)?;
            if lincode::check_decodable(&code, &net)?.is_some() {
                return Ok(Some(ConstructedBase {
                    code,
                    network: net,
                    escalated,
                    attempts_used: attempt + 1,
                }));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Secure transform.

/// An invertible block-diagonal change of variables: block `i` re-encodes
/// source `i`'s symbols, the first `msg_len` coordinates of each
/// transformed block being messages and the rest one-time keys.
#[derive(Debug, Clone)]
pub struct TransformPlan {
    blocks: Vec<FieldMatrix>,
    msg_len: usize,
}

impl TransformPlan {
    /// Validates squareness, equal sizes, invertibility, and `msg_len`.
    pub fn new(blocks: Vec<FieldMatrix>, msg_len: usize) -> Result<Self> {
        let b = match blocks.first() {
            Some(m) => m.rows(),
            None => return Err(Error::Precondition("a plan needs at least one block".into())),
        };
        if msg_len == 0 || msg_len > b {
            return Err(Error::Precondition(format!(
                "message length {msg_len} outside 1..={b}"
            )));
        }
        for (i, m) in blocks.iter().enumerate() {
            if m.rows() != b || m.cols() != b {
                return Err(Error::Dimension(format!(
                    "block {i} is {}x{}, expected {b}x{b}",
                    m.rows(),
                    m.cols()
                )));
            }
            m.invert()
                .map_err(|_| Error::Precondition(format!("block {i} is singular")))?;
        }
        Ok(TransformPlan { blocks, msg_len })
    }

    pub fn identity(field: PrimeField, sources: usize, block: usize) -> Result<Self> {
        Self::new(
            (0..sources)
                .map(|_| FieldMatrix::identity(field, block))
                .collect(),
            block,
        )
    }

    pub fn blocks(&self) -> &[FieldMatrix] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].rows()
    }

    pub fn msg_len(&self) -> usize {
        self.msg_len
    }

    pub fn key_len(&self) -> usize {
        self.block_size() - self.msg_len
    }

    /// The assembled block-diagonal matrix.
    pub fn assembled(&self) -> FieldMatrix {
        let b = self.block_size();
        let s = self.blocks.len();
        let field = self.blocks[0].field();
        let mut a = FieldMatrix::zeros(field, s * b, s * b);
        for (i, m) in self.blocks.iter().enumerate() {
            for rr in 0..b {
                for cc in 0..b {
                    a.set(i * b + rr, i * b + cc, m.get(rr, cc));
                }
            }
        }
        a
    }

    /// Global column indices of the message coordinates: the first
    /// `msg_len` columns of every block.
    pub fn message_columns(&self) -> Vec<usize> {
        let b = self.block_size();
        (0..self.blocks.len())
            .flat_map(|i| (0..self.msg_len).map(move |j| i * b + j))
            .collect()
    }

    /// The message columns of the assembled inverse: block-diagonal
    /// embedding of each `A_i^{-1}` restricted to its first `msg_len`
    /// columns. This is the subspace whose avoidance of every wiretapped
    /// span is equivalent to strict security of the transformed code.
    pub fn inverse_message_columns(&self) -> Result<FieldMatrix> {
        let b = self.block_size();
        let s = self.blocks.len();
        let field = self.blocks[0].field();
        let mut out = FieldMatrix::zeros(field, s * b, s * self.msg_len);
        for (i, m) in self.blocks.iter().enumerate() {
            let inv = m.invert()?;
            for rr in 0..b {
                for cc in 0..self.msg_len {
                    out.set(i * b + rr, i * self.msg_len + cc, inv.get(rr, cc));
                }
            }
        }
        Ok(out)
    }
}

/// Applies a plan to a keyless base: encodings become `A·g_e` and the
/// variables are re-read as `msg_len` messages plus keys per source.
pub fn apply_transform(base: &LinearCode, plan: &TransformPlan) -> Result<LinearCode> {
    if base.key_len() != 0 {
        return Err(Error::Precondition("the base code must be keyless".into()));
    }
    if plan.blocks().len() != base.source_count() || plan.block_size() != base.msg_len() {
        return Err(Error::Dimension(format!(
            "plan of {} blocks of size {} against a base with {} sources of block size {}",
            plan.blocks().len(),
            plan.block_size(),
            base.source_count(),
            base.msg_len()
        )));
    }
    let a = plan.assembled();
    let encodings: Vec<(String, FieldMatrix)> = base
        .encodings()
        .iter()
        .map(|(id, g)| Ok((id.clone(), a.mul(g)?)))
        .collect::<Result<_>>()?;
    LinearCode::from_parts(
        base.field(),
        plan.msg_len(),
        plan.key_len(),
        base.edge_dim(),
        base.source_count(),
        encodings,
    )
}

/// Verdict of the span condition over every wiretap set of one size.
#[derive(Debug, Clone)]
pub struct TransformCheck {
    pub holds: bool,
    /// First violating wiretap set in canonical order, when any.
    pub witness: Option<Vec<EdgeIx>>,
    pub sets_checked: u64,
}

/// Evaluates, for every wiretap set `W` of size `r`, whether the span of
/// the plan's inverse message columns meets the span of the wiretapped
/// base encodings only at zero. True for all `W` exactly when the
/// transformed code passes the strict sweep at level `r`, for any
/// invertible block-diagonal plan, which is what makes this check and the
/// sweep meaningful cross-checks of each other.
pub fn check_transform(
    n: &Network,
    base: &LinearCode,
    plan: &TransformPlan,
    r: usize,
) -> Result<TransformCheck> {
    base.validate_against(n)?;
    if base.key_len() != 0 {
        return Err(Error::Precondition("the base code must be keyless".into()));
    }
    if plan.blocks().len() != base.source_count() || plan.block_size() != base.msg_len() {
        return Err(Error::Dimension("plan shapes do not match the base".into()));
    }
    if plan.key_len() != r {
        return Err(Error::Dimension(format!(
            "plan hides {} coordinates per source but the level is {r}",
            plan.key_len()
        )));
    }
    let a_t = plan.inverse_message_columns()?;
    let m = n.edges().len();
    if r > m {
        return Err(Error::Precondition(format!(
            "wiretap size {r} exceeds the edge count {m}"
        )));
    }
    let mut checked = 0u64;
    for w in (0..m).combinations(r) {
        checked += 1;
        let g_w = base.stacked(n, &w)?;
        if !galois::span_intersection_trivial(&a_t, &g_w)? {
            return Ok(TransformCheck {
                holds: false,
                witness: Some(w),
                sets_checked: checked,
            });
        }
    }
    Ok(TransformCheck {
        holds: true,
        witness: None,
        sets_checked: checked,
    })
}

/// Outcome of the randomized transform search.
#[derive(Debug)]
pub struct TransformOutcome {
    pub result: Option<(LinearCode, TransformPlan)>,
    pub attempts_used: u64,
    /// Fewest violating wiretap sets seen across failed attempts; 0 on
    /// success.
    pub best_violations: u64,
    /// Wiretap sets per attempt.
    pub sets: u64,
}

/// Searches for a plan converting a keyless decodable base into a strictly
/// secure code with `r` keys per source. Sampled plans share the first
/// `b − r` columns across every block inverse, which preserves the sink's
/// ability to decode the transformed sum; acceptance requires the span
/// condition on every wiretap set. The returned code is re-verified with
/// the sweep and the decodability check before being handed back.
pub fn secure_transform(
    n: &Network,
    base: &LinearCode,
    r: usize,
    attempts: u64,
    seed: u64,
) -> Result<TransformOutcome> {
    base.validate_against(n)?;
    if base.key_len() != 0 {
        return Err(Error::Precondition("the base code must be keyless".into()));
    }
    if lincode::check_decodable(base, n)?.is_none() {
        return Err(Error::Precondition("the base code does not decode the sum".into()));
    }
    let b = base.msg_len();
    if r >= b {
        return Err(Error::Precondition(format!(
            "level {r} must be smaller than the block size {b}"
        )));
    }
    let field = base.field();
    let s = base.source_count();
    if r == 0 {
        let plan = TransformPlan::identity(field, s, b)?;
        let code = apply_transform(base, &plan)?;
        return Ok(TransformOutcome {
            result: Some((code, plan)),
            attempts_used: 0,
            best_violations: 0,
            sets: 1,
        });
    }
    let m = n.edges().len();
    let wiretaps: Vec<Vec<EdgeIx>> = (0..m).combinations(r).collect();
    let stacked: Vec<FieldMatrix> = wiretaps
        .iter()
        .map(|w| base.stacked(n, w))
        .collect::<Result<_>>()?;
    let q = field.modulus();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut best_violations = u64::MAX;
    for attempt in 0..attempts {
        // Shared left part across all block inverses keeps decodability.
        let shared: Vec<Vec<u64>> = (0..b)
            .map(|_| (0..b - r).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        let mut blocks = Vec::with_capacity(s);
        let mut singular = false;
        for _ in 0..s {
            let mut rows = shared.clone();
            for row in rows.iter_mut() {
                row.extend((0..r).map(|_| rng.gen_range(0..q)));
            }
            let inv_block = FieldMatrix::from_rows(field, &rows, b)?;
            match inv_block.invert() {
                Ok(a_i) => blocks.push(a_i),
                Err(_) => {
                    singular = true;
                    break;
                }
            }
        }
        if singular {
            continue;
        }
        let plan = TransformPlan::new(blocks, b - r)?;
        let a_t = plan.inverse_message_columns()?;
        let violations = stacked
            .iter()
            .filter(|g_w| !galois::span_intersection_trivial(&a_t, g_w).unwrap_or(false))
            .count() as u64;
        if violations > 0 {
            best_violations = best_violations.min(violations);
            continue;
        }
        let code = apply_transform(base, &plan)?;
        let sweep = sentinel::sweep(n, &code, Mode::Secure, r, u128::MAX)?;
        if !sweep.holds() {
            return Err(Error::Internal(
                "span condition accepted a plan the sweep rejects".into(),
            ));
        }
        if lincode::check_decodable(&code, n)?.is_none() {
            return Err(Error::Internal(
                "shared-column plan failed to preserve decodability".into(),
            ));
        }
        return Ok(TransformOutcome {
            result: Some((code, plan)),
            attempts_used: attempt + 1,
            best_violations: 0,
            sets: wiretaps.len() as u64,
        });
    }
    Ok(TransformOutcome {
        result: None,
        attempts_used: attempts,
        best_violations: if best_violations == u64::MAX { 0 } else { best_violations },
        sets: wiretaps.len() as u64,
    })
}

/// A finished secure construction: base, plan, transformed code, and the
/// network it verifies against (field possibly escalated).
#[derive(Debug)]
pub struct SecureBuild {
    pub network: Network,
    pub base: LinearCode,
    pub plan: TransformPlan,
    pub code: LinearCode,
    pub escalated: bool,
    pub base_attempts: u64,
    pub transform_attempts: u64,
}

/// End-to-end secure construction: random base of block size `msg_len + r`,
/// then the transform. Retries over an escalated prime field (larger than
/// both twice the edge count and twice the number of wiretap sets) when
/// the network's own field yields nothing.
pub fn build_secure_code(
    n: &Network,
    msg_len: usize,
    r: usize,
    attempts: u64,
    seed: u64,
) -> Result<Option<SecureBuild>> {
    if msg_len == 0 {
        return Err(Error::Precondition("rate must be positive".into()));
    }
    let b = msg_len + r;
    let c_min = cutlab::compute_c_min(n)?.value;
    if b as u64 > c_min {
        return Err(Error::Precondition(format!(
            "rate {msg_len} plus level {r} exceeds the single-source cut bound {c_min}"
        )));
    }
    let m = n.edges().len() as u64;
    let mut sets: u64 = 1;
    for k in 0..r as u64 {
        sets = sets.saturating_mul(m - k) / (k + 1);
    }
    let escalation = galois::next_prime(2 * m.max(sets) + 1);
    let mut phases = vec![(n.field().modulus(), false)];
    if n.field().modulus() < escalation {
        phases.push((escalation, true));
    }
    for (phase, (q, escalated)) in phases.into_iter().enumerate() {
        let net = if escalated { with_field(n, q)? } else { n.clone() };
        let base = match build_base_sum_code(&net, b, attempts, seed.wrapping_add(phase as u64))? {
            Some(base) => base,
            None => continue,
        };
        let outcome = secure_transform(
            &base.network,
            &base.code,
            r,
            attempts,
            seed.wrapping_add(1000 + phase as u64),
        )?;
        if let Some((code, plan)) = outcome.result {
            return Ok(Some(SecureBuild {
                network: base.network,
                base: base.code,
                plan,
                code,
                escalated,
                base_attempts: base.attempts_used,
                transform_attempts: outcome.attempts_used,
            }));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Search.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    Randomized,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Randomized => "randomized",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub msg_len: usize,
    pub edge_dim: usize,
    pub key_len: usize,
    pub q: u64,
    pub r: usize,
    pub mode: Mode,
    pub budget: u128,
    pub seed: u64,
    pub strategy: Strategy,
}

#[derive(Debug)]
pub enum SearchResult {
    /// The lowest-canonical-index code that decodes and passes the sweep.
    Found(LinearCode),
    /// The whole space was enumerated and holds no such code.
    Exhausted,
    /// The space exceeds the budget (exhaustive) or the budget was spent
    /// without a hit (randomized). Never claims exhaustion.
    BudgetExceeded,
}

#[derive(Debug)]
pub struct SearchOutcome {
    pub mode: Mode,
    pub msg_len: usize,
    pub edge_dim: usize,
    pub key_len: usize,
    pub q: u64,
    pub r: usize,
    pub strategy: Strategy,
    /// Size of the full local-encoder space.
    pub space: u128,
    /// Canonical position count established by the verdict: index of the
    /// found code plus one, the full space on exhaustion, or the draws
    /// spent by a randomized run.
    pub examined: u64,
    pub result: SearchResult,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&LinearCode> {
        match &self.result {
            SearchResult::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Per-edge option counts for the local-encoder space.
fn option_counts(n: &Network, p: &SearchParams, order: &[EdgeIx]) -> Vec<u128> {
    let block = p.msg_len + p.key_len;
    order
        .iter()
        .map(|&e| {
            let tail = n.edges()[e].tail;
            let exp = if n.source_position(tail).is_some() {
                block * p.edge_dim
            } else {
                n.in_edges(tail).len() * p.edge_dim * p.edge_dim
            };
            (p.q as u128).saturating_pow(exp as u32)
        })
        .collect()
}

fn locals_from_digits(
    n: &Network,
    p: &SearchParams,
    order: &[EdgeIx],
    digits: &[u128],
) -> Vec<LocalEncoder> {
    let block = p.msg_len + p.key_len;
    order
        .iter()
        .zip(digits)
        .map(|(&e, &digit)| {
            let tail = n.edges()[e].tail;
            let count = if n.source_position(tail).is_some() {
                block * p.edge_dim
            } else {
                n.in_edges(tail).len() * p.edge_dim * p.edge_dim
            };
            let mut rest = digit;
            let entries: Vec<u64> = (0..count)
                .map(|_| {
                    let v = (rest % p.q as u128) as u64;
                    rest /= p.q as u128;
                    v
                })
                .collect();
            if n.source_position(tail).is_some() {
                LocalEncoder::Source(entries)
            } else {
                LocalEncoder::Mix(entries)
            }
        })
        .collect()
}

/// Enumerates or samples local-encoder assignments over `F_q`, keeping
/// codes that decode and pass the security sweep at level `r`. Exhaustive
/// runs report the lowest-index hit or certified exhaustion; randomized
/// runs report the hit with the lowest draw position. Both are
/// reproducible: the exhaustive order is canonical and the randomized
/// stream is seeded per chunk.
pub fn search_codes(n: &Network, p: &SearchParams) -> Result<SearchOutcome> {
    if p.msg_len == 0 || p.edge_dim == 0 {
        return Err(Error::Precondition("rate and edge dimension must be positive".into()));
    }
    let net = if p.q == n.field().modulus() {
        n.clone()
    } else {
        with_field(n, p.q)?
    };
    let order = topo_edges(&net);
    let counts = option_counts(&net, p, &order);
    let space = counts
        .iter()
        .fold(1u128, |acc, &c| acc.saturating_mul(c));
    let outcome = |result, examined| SearchOutcome {
        mode: p.mode,
        msg_len: p.msg_len,
        edge_dim: p.edge_dim,
        key_len: p.key_len,
        q: p.q,
        r: p.r,
        strategy: p.strategy,
        space,
        examined,
        result,
    };

    let evaluate = |digits: &[u128]| -> Result<Option<LinearCode>> {
        let locals = locals_from_digits(&net, p, &order, digits);
        let encodings = assemble(
            &net,
            net.field(),
            p.msg_len,
            p.key_len,
            p.edge_dim,
            &order,
            &locals,
        )?;
        let code = LinearCode::from_parts(
            net.field(),
            p.msg_len,
            p.key_len,
            p.edge_dim,
            net.sources().len(),
            encodings,
        )?;
        if lincode::check_decodable(&code, &net)?.is_none() {
            return Ok(None);
        }
        let sweep = sentinel::sweep(&net, &code, p.mode, p.r, u128::MAX)?;
        Ok(if sweep.holds() { Some(code) } else { None })
    };

    let digits_at = |mut ix: u128| -> Vec<u128> {
        counts
            .iter()
            .map(|&c| {
                let d = ix % c;
                ix /= c;
                d
            })
            .collect()
    };

    match p.strategy {
        Strategy::Exhaustive => {
            if space > p.budget {
                return Ok(outcome(SearchResult::BudgetExceeded, 0));
            }
            let total = space as u64;
            let best = AtomicU64::new(u64::MAX);
            const CHUNK: u64 = 1 << 10;
            let chunks = total.div_ceil(CHUNK).max(1);
            (0..chunks).into_par_iter().try_for_each(|c| -> Result<()> {
                for ix in c * CHUNK..(c * CHUNK + CHUNK).min(total) {
                    if ix >= best.load(Ordering::Relaxed) {
                        break;
                    }
                    if evaluate(&digits_at(ix as u128))?.is_some() {
                        best.fetch_min(ix, Ordering::Relaxed);
                        break;
                    }
                }
                Ok(())
            })?;
            let winner = best.load(Ordering::Relaxed);
            if winner == u64::MAX {
                Ok(outcome(SearchResult::Exhausted, total))
            } else {
                let code = evaluate(&digits_at(winner as u128))?
                    .ok_or_else(|| Error::Internal("found index no longer evaluates".into()))?;
                Ok(outcome(SearchResult::Found(code), winner + 1))
            }
        }
        Strategy::Randomized => {
            let draws = u64::try_from(p.budget).unwrap_or(u64::MAX);
            let hit: Mutex<Option<(u64, Vec<u128>)>> = Mutex::new(None);
            const CHUNK: u64 = 1 << 10;
            let chunks = draws.div_ceil(CHUNK).max(1);
            (0..chunks).into_par_iter().try_for_each(|c| -> Result<()> {
                let mut rng = ChaCha20Rng::seed_from_u64(p.seed);
                rng.set_stream(c);
                for pos in c * CHUNK..(c * CHUNK + CHUNK).min(draws) {
                    {
                        let guard = hit.lock().unwrap();
                        if guard.as_ref().is_some_and(|(best, _)| pos >= *best) {
                            break;
                        }
                    }
                    let digits: Vec<u128> =
                        counts.iter().map(|&cnt| rng.gen_range(0..cnt)).collect();
                    if evaluate(&digits)?.is_some() {
                        let mut guard = hit.lock().unwrap();
                        if guard.as_ref().map_or(true, |(best, _)| pos < *best) {
                            *guard = Some((pos, digits));
                        }
                        break;
                    }
                }
                Ok(())
            })?;
            let hit = hit.into_inner().unwrap();
            match hit {
                Some((pos, digits)) => {
                    let code = evaluate(&digits)?
                        .ok_or_else(|| Error::Internal("hit no longer evaluates".into()))?;
                    Ok(outcome(SearchResult::Found(code), pos + 1))
                }
                None => Ok(outcome(SearchResult::BudgetExceeded, draws)),
            }
        }
    }
}
