//! Security verification for linear sum-network codes.
//!
//! Two independent routes establish every verdict:
//!
//! 1. Exact algebra. A wiretap set `W` observes `Y_W = x · G(W)` where
//!    `G(W)` stacks the wiretapped edge encodings. With `A` the message
//!    rows and `B` the key rows of `G(W)`, the observations reveal nothing
//!    about the messages iff `rowspace(A) ⊆ rowspace(B)` (strict mode), and
//!    nothing about the target sum iff `rank([P | G(W)]) = rank(P) +
//!    rank(G(W))` for the target matrix `P` (user mode).
//! 2. A brute-force entropy oracle that enumerates every realization of
//!    messages and keys, tabulates the exact joint distribution of the
//!    protected quantity and the observations, and computes mutual
//!    information in `log_q` units as an exact rational. The oracle shares
//!    no linear-algebra shortcuts with route 1, which is what makes
//!    cross-checking the two meaningful.
//!
//! Failed checks come back with a machine-verifiable witness: a combiner
//! over the observed symbols together with the nonzero functional of the
//! protected data it equals on every realization. `witness_spot_check`
//! replays that identity on random realizations.

use std::collections::HashMap;

use itertools::Itertools;
use num_rational::Rational64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::cutlab::CutReport;
use crate::error::Error;
use crate::galois::FieldMatrix;
use crate::lincode::{self, LinearCode};
use crate::netmodel::{EdgeIx, Network};
use crate::Result;

/// What the adversary must stay ignorant of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Nothing about any message symbol may leak.
    Secure,
    /// Nothing about the computed sum may leak.
    UserSecure,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Secure => "secure",
            Mode::UserSecure => "user_secure",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "secure" => Ok(Mode::Secure),
            "user_secure" | "user-secure" => Ok(Mode::UserSecure),
            other => Err(Error::Parse(format!(
                "unknown mode {other:?}; expected \"secure\" or \"user_secure\""
            ))),
        }
    }
}

/// Proof that a wiretap set leaks.
///
/// `combiner` has one coefficient per observed symbol (edges in `wiretap`
/// order, symbols within an edge in order). On every realization,
/// `Y_W · combiner` equals:
///
/// - in `Secure` mode, `m · leaked` where `m` is the flat message vector of
///   all sources (`leaked` has one entry per message symbol and is nonzero);
/// - in `UserSecure` mode, `f · leaked` where `f` is the vector of computed
///   target values (`leaked` has one entry per target coordinate, nonzero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub mode: Mode,
    pub wiretap: Vec<EdgeIx>,
    pub combiner: Vec<u64>,
    pub leaked: Vec<u64>,
}

/// Result of sweeping all wiretap sets of one size.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub mode: Mode,
    pub r: usize,
    /// Number of wiretap sets of size `r`.
    pub total: u64,
    /// Position of the verdict in canonical subset order: equal to `total`
    /// on a pass, the 1-based index of the first violating set otherwise.
    pub examined: u64,
    pub violation: Option<Violation>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exact mutual information between protected data and observations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub mode: Mode,
    pub wiretap: Vec<EdgeIx>,
    /// Realizations enumerated (all of them, never a sample).
    pub states: u128,
    /// `I(S; Y_W)` in `log_q` units.
    pub mutual_information: Rational64,
}

impl OracleReport {
    pub fn leak_free(&self) -> bool {
        self.mutual_information == Rational64::from_integer(0)
    }
}

fn canonical_wiretap(n: &Network, wiretap: &[EdgeIx]) -> Result<Vec<EdgeIx>> {
    let mut w: Vec<EdgeIx> = wiretap.to_vec();
    w.sort_unstable();
    w.dedup();
    if let Some(&bad) = w.iter().find(|&&e| e >= n.edges().len()) {
        return Err(Error::UnknownName(format!("edge index {bad}")));
    }
    Ok(w)
}

fn mat_vec(m: &FieldMatrix, v: &[u64]) -> Result<Vec<u64>> {
    if v.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "vector of length {} against {} columns",
            v.len(),
            m.cols()
        )));
    }
    let f = m.field();
    Ok((0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        })
        .collect())
}

/// Checks one wiretap set in strict mode. `None` means nothing about the
/// messages leaks; otherwise the returned witness explains the leak.
pub fn secure_check(
    n: &Network,
    code: &LinearCode,
    wiretap: &[EdgeIx],
) -> Result<Option<Violation>> {
    code.validate_against(n)?;
    let w = canonical_wiretap(n, wiretap)?;
    secure_check_inner(n, code, &w)
}

fn secure_check_inner(n: &Network, code: &LinearCode, w: &[EdgeIx]) -> Result<Option<Violation>> {
    let g = code.stacked(n, w)?;
    let a = g.select_rows(&code.message_rows());
    let b = g.select_rows(&code.key_rows());
    // rowspace(A) ⊆ rowspace(B) iff every column-kernel vector of B also
    // kills A. A surviving kernel vector φ is itself the breach: B·φ = 0
    // wipes the key contribution out of Y_W·φ, leaving the message
    // functional A·φ in the clear.
    let kernel = b.right_kernel_basis();
    for k in 0..kernel.cols() {
        let phi = kernel.column(k);
        let leaked = mat_vec(&a, &phi)?;
        if leaked.iter().any(|&x| x != 0) {
            return Ok(Some(Violation {
                mode: Mode::Secure,
                wiretap: w.to_vec(),
                combiner: phi,
                leaked,
            }));
        }
    }
    Ok(None)
}

/// Checks one wiretap set in user mode. `None` means the observations are
/// independent of the computed sum.
pub fn user_secure_check(
    n: &Network,
    code: &LinearCode,
    wiretap: &[EdgeIx],
) -> Result<Option<Violation>> {
    code.validate_against(n)?;
    let w = canonical_wiretap(n, wiretap)?;
    user_secure_check_inner(n, code, &w)
}

fn user_secure_check_inner(
    n: &Network,
    code: &LinearCode,
    w: &[EdgeIx],
) -> Result<Option<Violation>> {
    let p = lincode::target_matrix(n, code.msg_len(), code.key_len());
    let g = code.stacked(n, w)?;
    let joint = FieldMatrix::hconcat(&p, &g)?;
    if joint.rank() == p.rank() + g.rank() {
        return Ok(None);
    }
    // Rank collapse means the column spaces intersect: P·a = G(W)·c for
    // some a ≠ 0. Any kernel basis of [P | G(W)] must then contain a vector
    // whose first block is nonzero, because vectors with a = 0 only span
    // the kernel of G(W), which is too small to account for the collapse.
    let kernel = joint.right_kernel_basis();
    let f = p.field();
    let l = code.msg_len();
    for k in 0..kernel.cols() {
        let v = kernel.column(k);
        let (a_part, b_part) = v.split_at(l);
        if a_part.iter().any(|&x| x != 0) {
            let combiner: Vec<u64> = b_part.iter().map(|&x| f.neg(x)).collect();
            return Ok(Some(Violation {
                mode: Mode::UserSecure,
                wiretap: w.to_vec(),
                combiner,
                leaked: a_part.to_vec(),
            }));
        }
    }
    Err(Error::Internal(
        "rank collapse without a kernel vector touching the target".into(),
    ))
}

/// Dispatches to the check for `mode`.
pub fn check(
    n: &Network,
    code: &LinearCode,
    mode: Mode,
    wiretap: &[EdgeIx],
) -> Result<Option<Violation>> {
    match mode {
        Mode::Secure => secure_check(n, code, wiretap),
        Mode::UserSecure => user_secure_check(n, code, wiretap),
    }
}

fn binomial(m: usize, r: usize) -> u128 {
    let r = r.min(m - r);
    let mut acc: u128 = 1;
    for k in 0..r {
        acc = acc.saturating_mul((m - k) as u128) / (k as u128 + 1);
    }
    acc
}

/// Checks every wiretap set of size exactly `r` in canonical order and
/// reports the first violation, if any. Checking one size suffices for a
/// verdict about all sizes up to `r`: a subset of a silent set is silent,
/// so a leak at size `r' < r` extends to a leak at size `r`.
///
/// Refuses outright when the number of subsets exceeds `budget`.
pub fn sweep(
    n: &Network,
    code: &LinearCode,
    mode: Mode,
    r: usize,
    budget: u128,
) -> Result<SweepReport> {
    code.validate_against(n)?;
    let m = n.edges().len();
    if r > m {
        return Err(Error::Precondition(format!(
            "wiretap size {r} exceeds the edge count {m}"
        )));
    }
    let total = binomial(m, r);
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: format!("sweep over wiretap sets of size {r}"),
            needed: total,
            budget,
        });
    }
    let subsets: Vec<Vec<EdgeIx>> = (0..m).combinations(r).collect();
    let hit: Option<Result<(usize, Violation)>> = subsets
        .par_iter()
        .enumerate()
        .find_map_first(|(i, w)| {
            let res = match mode {
                Mode::Secure => secure_check_inner(n, code, w),
                Mode::UserSecure => user_secure_check_inner(n, code, w),
            };
            match res {
                Ok(None) => None,
                Ok(Some(v)) => Some(Ok((i, v))),
                Err(e) => Some(Err(e)),
            }
        });
    let total_u = total as u64;
    match hit {
        None => Ok(SweepReport {
            mode,
            r,
            total: total_u,
            examined: total_u,
            violation: None,
        }),
        Some(Ok((i, violation))) => Ok(SweepReport {
            mode,
            r,
            total: total_u,
            examined: i as u64 + 1,
            violation: Some(violation),
        }),
        Some(Err(e)) => Err(e),
    }
}

fn checked_power(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

fn saturating_power(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Exact `log_q` of a count that must be a power of the field size.
/// Linear encodings always produce such counts; anything else is a bug.
fn log_exact(mut c: u64, modulus: u64) -> Result<i64> {
    if c == 0 {
        return Err(Error::Internal("zero count in entropy table".into()));
    }
    let mut e = 0i64;
    while c > 1 {
        if c % modulus != 0 {
            return Err(Error::Internal(format!(
                "count {c} is not a power of the field size {modulus}; \
                 the encodings are not all linear"
            )));
        }
        c /= modulus;
        e += 1;
    }
    Ok(e)
}

fn entropy(counts: impl IntoIterator<Item = u64>, modulus: u64, dims: usize, states: u64) -> Result<Rational64> {
    let mut weighted: i64 = 0;
    for c in counts {
        weighted += c as i64 * log_exact(c, modulus)?;
    }
    Ok(Rational64::from_integer(dims as i64) - Rational64::new(weighted, states as i64))
}

#[derive(Default)]
struct OracleTables {
    joint: HashMap<(u64, u128), u64>,
    protected: HashMap<u64, u64>,
    observed: HashMap<u128, u64>,
}

impl OracleTables {
    fn absorb(mut self, other: OracleTables) -> OracleTables {
        for (k, v) in other.joint {
            *self.joint.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.protected {
            *self.protected.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.observed {
            *self.observed.entry(k).or_insert(0) += v;
        }
        self
    }
}

/// Realization spaces beyond this size would overflow the exact rational
/// entropy arithmetic, whatever budget the caller offers.
const ORACLE_STATE_CAP: u128 = 1 << 48;

/// Brute-force mutual information between the protected quantity and the
/// observations on `wiretap`, by exhaustive enumeration of all `q^(s(l+κ))`
/// realizations. Refuses when that count exceeds `budget`; it never samples.
///
/// The result is exact: for linear encodings every fiber of the joint
/// distribution has a power-of-`q` size, so each entropy term is an integer
/// multiple of `1/states` in `log_q` units.
pub fn entropy_oracle(
    n: &Network,
    code: &LinearCode,
    mode: Mode,
    wiretap: &[EdgeIx],
    budget: u128,
) -> Result<OracleReport> {
    code.validate_against(n)?;
    let w = canonical_wiretap(n, wiretap)?;
    let modulus = n.field().modulus();
    let dims = code.row_count();
    let states = saturating_power(modulus, dims);
    let effective = budget.min(ORACLE_STATE_CAP);
    if states > effective {
        return Err(Error::BudgetExceeded {
            what: "entropy oracle over all realizations".into(),
            needed: states,
            budget: effective,
        });
    }
    let obs_symbols = code.edge_dim() * w.len();
    if checked_power(modulus, obs_symbols).is_none() {
        return Err(Error::Precondition(
            "observation space too wide to index exactly".into(),
        ));
    }
    let aligned = code.aligned(n)?;
    let mats: Vec<&FieldMatrix> = w.iter().map(|&e| aligned[e]).collect();
    let field = n.field();

    // Positions of the protected digits inside a flat realization.
    let msg_positions = code.message_rows();
    let l = code.msg_len();
    let coeffs: Vec<u64> = n.sources().iter().map(|s| s.coeff).collect();
    let block_starts: Vec<usize> = (0..code.source_count())
        .map(|i| code.block_rows(i).start)
        .collect();
    let protected_dims = match mode {
        Mode::Secure => msg_positions.len(),
        Mode::UserSecure => l,
    };

    let total = states as u64;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let tables = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<OracleTables> {
            let mut t = OracleTables::default();
            let mut x = vec![0u64; dims];
            for ix in c * CHUNK..(c * CHUNK + CHUNK).min(total) {
                let mut rest = ix;
                for d in x.iter_mut() {
                    *d = rest % modulus;
                    rest /= modulus;
                }
                let s_ix: u64 = match mode {
                    Mode::Secure => {
                        let mut acc = 0u64;
                        for &pos in msg_positions.iter().rev() {
                            acc = acc * modulus + x[pos];
                        }
                        acc
                    }
                    Mode::UserSecure => {
                        let mut acc = 0u64;
                        for j in (0..l).rev() {
                            let mut f_j = 0u64;
                            for (i, &a) in coeffs.iter().enumerate() {
                                f_j = field.add(f_j, field.mul(a, x[block_starts[i] + j]));
                            }
                            acc = acc * modulus + f_j;
                        }
                        acc
                    }
                };
                let mut y_ix: u128 = 0;
                for m in &mats {
                    for sym in m.row_vec_mul(&x)? {
                        y_ix = y_ix * modulus as u128 + sym as u128;
                    }
                }
                *t.joint.entry((s_ix, y_ix)).or_insert(0) += 1;
                *t.protected.entry(s_ix).or_insert(0) += 1;
                *t.observed.entry(y_ix).or_insert(0) += 1;
            }
            Ok(t)
        })
        .try_reduce(OracleTables::default, |a, b| Ok(a.absorb(b)))?;

    let h_s = entropy(tables.protected.values().copied(), modulus, dims, total)?;
    let h_y = entropy(tables.observed.values().copied(), modulus, dims, total)?;
    let h_sy = entropy(tables.joint.values().copied(), modulus, dims, total)?;
    let mi = h_s + h_y - h_sy;
    // Sanity: uniform independent inputs make H(S) exactly the digit count.
    if h_s != Rational64::from_integer(protected_dims as i64) && mode == Mode::Secure {
        return Err(Error::Internal(
            "message entropy does not match its digit count".into(),
        ));
    }
    Ok(OracleReport {
        mode,
        wiretap: w,
        states,
        mutual_information: mi,
    })
}

/// Replays a violation's leak identity on `samples` random realizations.
/// Returns false the moment one realization disagrees.
pub fn witness_spot_check(
    n: &Network,
    code: &LinearCode,
    violation: &Violation,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    code.validate_against(n)?;
    let w = canonical_wiretap(n, &violation.wiretap)?;
    if violation.combiner.len() != code.edge_dim() * w.len() {
        return Err(Error::Dimension(format!(
            "combiner has {} coefficients for {} observed symbols",
            violation.combiner.len(),
            code.edge_dim() * w.len()
        )));
    }
    let expected_leak = match violation.mode {
        Mode::Secure => code.source_count() * code.msg_len(),
        Mode::UserSecure => code.msg_len(),
    };
    if violation.leaked.len() != expected_leak {
        return Err(Error::Dimension(format!(
            "leak functional has {} coefficients, expected {expected_leak}",
            violation.leaked.len()
        )));
    }
    let field = n.field();
    let modulus = field.modulus();
    let aligned = code.aligned(n)?;
    let mats: Vec<&FieldMatrix> = w.iter().map(|&e| aligned[e]).collect();
    let msg_positions = code.message_rows();
    let coeffs: Vec<u64> = n.sources().iter().map(|s| s.coeff).collect();
    let block_starts: Vec<usize> = (0..code.source_count())
        .map(|i| code.block_rows(i).start)
        .collect();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x: Vec<u64> = (0..code.row_count())
            .map(|_| rng.gen_range(0..modulus))
            .collect();
        let mut lhs = 0u64;
        let mut k = 0usize;
        for m in &mats {
            for sym in m.row_vec_mul(&x)? {
                lhs = field.add(lhs, field.mul(sym, violation.combiner[k]));
                k += 1;
            }
        }
        let rhs = match violation.mode {
            Mode::Secure => msg_positions
                .iter()
                .zip(&violation.leaked)
                .fold(0u64, |acc, (&pos, &c)| acc_add(field, acc, x[pos], c)),
            Mode::UserSecure => (0..code.msg_len())
                .map(|j| {
                    let f_j = coeffs
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (i, &a)| acc_add(field, acc, x[block_starts[i] + j], a));
                    (j, f_j)
                })
                .fold(0u64, |acc, (j, f_j)| {
                    acc_add(field, acc, f_j, violation.leaked[j])
                }),
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn acc_add(field: crate::galois::PrimeField, acc: u64, value: u64, coeff: u64) -> u64 {
    field.add(acc, field.mul(value, coeff))
}

/// Whether the symbols on a cut's augmented edge set determine the partial
/// sum over its isolated sources, once all other source blocks are zeroed.
/// Returns the recovery matrix when they do.
pub fn truncated_sum_condition(
    n: &Network,
    code: &LinearCode,
    report: &CutReport,
) -> Result<Option<FieldMatrix>> {
    code.validate_against(n)?;
    if let Some(&bad) = report
        .isolated
        .iter()
        .find(|&&i| i >= code.source_count())
    {
        return Err(Error::UnknownName(format!("source position {bad}")));
    }
    let truncated = code.truncate(&report.isolated);
    let g = truncated.stacked(n, &report.augmented)?;
    let field = n.field();
    let l = code.msg_len();
    let mut partial = FieldMatrix::zeros(field, code.row_count(), l);
    for &i in &report.isolated {
        let rows = code.block_rows(i);
        let coeff = n.sources()[i].coeff;
        for j in 0..l {
            partial.set(rows.start + j, j, coeff);
        }
    }
    g.solve_right(&partial)
}
