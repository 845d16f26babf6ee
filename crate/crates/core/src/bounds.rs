//! Capacity bounds for secure sum computation at a given adversary size.
//!
//! Everything in the report is an exact integer derived from cut values:
//!
//! - `lower`: achievable rate from single-source cuts, `C_min − r`.
//! - `isolated_upper`: `min{C_min, D_min − r}`, the coarser bound from
//!   cuts restricted to edges only one source can reach.
//! - `augmented_upper`: `min{C_min, A_min − r}`, the sharper bound from
//!   cuts augmented with their feeder blockers. Never exceeds
//!   `isolated_upper` because every isolated cut induces an augmented cut
//!   of the same size with no feeders left.
//! - `user_secure_exists` / `user_secure_upper`: whether any code can keep
//!   the *sum* hidden at level `r` (possible iff `r < min{C_min, s}`), and
//!   the rate cap `min{C_min, G_min − r}` when it can.
//!
//! Differences saturate at zero: a negative rate bound carries no more
//! information than zero. On multi-edge trees the bracket closes and the
//! exact secure capacity is reported; elsewhere it is reported only when
//! the lower and upper ends already meet.

use serde::Serialize;

use crate::cutlab;
use crate::netmodel::Network;
use crate::Result;

/// Cut values, capacity brackets, and witnesses for one `(network, r)`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub r: u64,
    pub source_count: u64,
    pub c_min: u64,
    pub c_min_source: String,
    pub c_min_witness: Vec<String>,
    /// `None` when no source admits an isolated cut.
    pub d_min: Option<u64>,
    pub d_min_witness: Option<Vec<String>>,
    pub a_min: u64,
    pub a_min_cut: Vec<String>,
    pub a_min_witness: Vec<String>,
    pub g_min: u64,
    pub g_min_witness: Vec<String>,
    pub lower: u64,
    pub isolated_upper: u64,
    pub augmented_upper: u64,
    pub exact_secure_capacity: Option<u64>,
    pub user_secure_exists: bool,
    pub user_secure_upper: u64,
    pub is_multi_edge_tree: bool,
}

/// Computes every bound in one pass.
pub fn bounds_report(n: &Network, r: u64) -> Result<BoundsReport> {
    let c = cutlab::compute_c_min(n)?;
    let d = cutlab::compute_d_min(n)?;
    let a = cutlab::compute_a_min(n)?;
    let (g_min, g_witness) = cutlab::compute_g_min(n)?;
    let tree = cutlab::is_multi_edge_tree(n);

    let lower = c.value.saturating_sub(r);
    let isolated_upper = match d.value() {
        Some(d_min) => c.value.min(d_min.saturating_sub(r)),
        None => c.value,
    };
    let augmented_upper = c.value.min(a.value.saturating_sub(r));
    let exact_secure_capacity = if tree || lower == augmented_upper {
        Some(lower)
    } else {
        None
    };
    let s = n.sources().len() as u64;
    let user_secure_exists = r < c.value.min(s);
    let user_secure_upper = if user_secure_exists {
        c.value.min(g_min.saturating_sub(r))
    } else {
        0
    };

    Ok(BoundsReport {
        r,
        source_count: s,
        c_min: c.value,
        c_min_source: n.node_name(n.sources()[c.best.source].node).to_string(),
        c_min_witness: cutlab::edge_ids(n, &c.best.edges),
        d_min: d.value(),
        d_min_witness: d
            .best
            .as_ref()
            .map(|cut| cutlab::edge_ids(n, &cut.edges)),
        a_min: a.value,
        a_min_cut: cutlab::edge_ids(n, &a.witness.cut),
        a_min_witness: cutlab::edge_ids(n, &a.witness.augmented),
        g_min,
        g_min_witness: cutlab::edge_ids(n, &g_witness),
        lower,
        isolated_upper,
        augmented_upper,
        exact_secure_capacity,
        user_secure_exists,
        user_secure_upper,
        is_multi_edge_tree: tree,
    })
}

/// The report viewed for strict security; all fields are filled either way.
pub fn secure_bounds(n: &Network, r: u64) -> Result<BoundsReport> {
    bounds_report(n, r)
}

/// The report viewed for sum security; all fields are filled either way.
pub fn user_secure_bounds(n: &Network, r: u64) -> Result<BoundsReport> {
    bounds_report(n, r)
}

/// Exact secure capacity on multi-edge trees, `None` elsewhere.
pub fn tree_capacity(n: &Network, r: u64) -> Result<Option<u64>> {
    if !cutlab::is_multi_edge_tree(n) {
        return Ok(None);
    }
    let c = cutlab::compute_c_min(n)?;
    Ok(Some(c.value.saturating_sub(r)))
}
