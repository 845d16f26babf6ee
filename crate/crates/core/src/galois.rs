//! Exact arithmetic and dense linear algebra over prime fields F_q.
//!
//! Everything downstream (cut certificates aside) reduces to rank
//! computations over small prime fields, so this module keeps the
//! representation deliberately plain: elements are `u64` residues, matrices
//! are row-major `Vec<u64>`, and elimination is exact. Products are taken in
//! `u128`, which bounds the modulus at `2^63`.

use crate::error::Error;
use crate::Result;

/// Largest accepted modulus; products of two residues must fit in `u128`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// A prime field F_q, `q` prime. Copyable tag passed alongside raw residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    /// Builds the field, rejecting composite or out-of-range moduli.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 || q > MAX_MODULUS || !is_prime(q) {
            return Err(Error::BadModulus(q));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Reduces an arbitrary integer into `[0, q)`.
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.q);
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::Singular);
        }
        // q is prime, so a^(q-2) inverts a.
        Ok(self.pow(a, self.q - 2))
    }
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    };
    // This witness set decides primality for every 64-bit integer.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.saturating_add(1);
    if c <= 2 {
        return 2;
    }
    if c % 2 == 0 {
        c += 1;
    }
    while !is_prime(c) {
        c += 2;
    }
    c
}

/// Dense row-major matrix over a prime field. Zero-row and zero-column
/// shapes are legal: they arise naturally from empty wiretap sets and
/// keyless codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from explicit rows, reducing entries mod q. All rows must have
    /// the same length; an empty row list yields a 0 x `cols_hint` matrix.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>], cols_hint: usize) -> Result<Self> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(cols_hint);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "ragged rows: expected {cols} entries, found {}",
                    r.len()
                )));
            }
            entries.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds from a flat row-major slice.
    pub fn from_flat(field: PrimeField, rows: usize, cols: usize, flat: &[u64]) -> Result<Self> {
        if flat.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "flat length {} does not match {rows}x{cols}",
                flat.len()
            )));
        }
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            entries: flat.iter().map(|&x| field.reduce(x)).collect(),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Vertical stack; operands must agree on column count and field.
    pub fn stack_rows(a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix> {
        if a.field != b.field {
            return Err(Error::Dimension("stacking over different fields".into()));
        }
        if a.cols != b.cols {
            return Err(Error::Dimension(format!(
                "stacking {}x{} on {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let mut entries = a.entries.clone();
        entries.extend_from_slice(&b.entries);
        Ok(FieldMatrix {
            field: a.field,
            rows: a.rows + b.rows,
            cols: a.cols,
            entries,
        })
    }

    /// Horizontal concatenation; operands must agree on row count and field.
    pub fn hconcat(a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix> {
        if a.field != b.field {
            return Err(Error::Dimension("concatenating over different fields".into()));
        }
        if a.rows != b.rows {
            return Err(Error::Dimension(format!(
                "concatenating {}x{} with {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let mut m = FieldMatrix::zeros(a.field, a.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                m.set(r, c, a.get(r, c));
            }
            for c in 0..b.cols {
                m.set(r, a.cols + c, b.get(r, c));
            }
        }
        Ok(m)
    }

    /// Horizontal concatenation of many matrices (empty list allowed when a
    /// row count is supplied).
    pub fn hconcat_all(field: PrimeField, rows: usize, parts: &[&FieldMatrix]) -> Result<FieldMatrix> {
        let mut acc = FieldMatrix::zeros(field, rows, 0);
        for p in parts {
            acc = FieldMatrix::hconcat(&acc, p)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        if self.field != rhs.field {
            return Err(Error::Dimension("multiplying over different fields".into()));
        }
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "multiplying {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = f.add(out.get(r, c), f.mul(a, rhs.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Left action of a row vector: `x * self`, returning a row of length
    /// `cols`. `x` must have `rows` entries.
    pub fn row_vec_mul(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.rows {
            return Err(Error::Dimension(format!(
                "row vector length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let f = self.field;
        let mut out = vec![0u64; self.cols];
        for (r, &xv) in x.iter().enumerate() {
            if xv == 0 {
                continue;
            }
            let row = self.row(r);
            for c in 0..self.cols {
                out[c] = f.add(out[c], f.mul(xv, row[c]));
            }
        }
        Ok(out)
    }

    /// Keeps the listed rows (in the given order).
    pub fn select_rows(&self, keep: &[usize]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, keep.len(), self.cols);
        for (i, &r) in keep.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(r, c));
            }
        }
        m
    }

    /// Keeps the listed columns (in the given order).
    pub fn select_cols(&self, keep: &[usize]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, self.rows, keep.len());
        for r in 0..self.rows {
            for (j, &c) in keep.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    /// In-place reduction to row echelon form; returns the pivot columns.
    /// Pivoting is deterministic: first nonzero entry scanning down.
    fn echelon(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    let a = self.get(row, c);
                    let b = self.get(p, c);
                    self.set(row, c, b);
                    self.set(p, c, a);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.echelon();
        (m, pivots)
    }

    /// Exact rank via elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix via Gauss-Jordan against the identity.
    pub fn invert(&self) -> Result<FieldMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "inverting non-square {}x{}",
                self.rows, self.cols
            )));
        }
        let aug = FieldMatrix::hconcat(self, &FieldMatrix::identity(self.field, self.rows))?;
        let (red, pivots) = aug.rref();
        // The identity block keeps the augmented rows independent, so the
        // pivot count alone proves nothing; singularity shows up as a pivot
        // escaping into the right block.
        if pivots.len() != self.rows || pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::Singular);
        }
        let right: Vec<usize> = (self.cols..2 * self.cols).collect();
        Ok(red.select_cols(&right))
    }

    /// Solves `self * d = target` for `d`, or returns `None` when no solution
    /// exists. Free variables are set to zero, making the result
    /// deterministic.
    pub fn solve_right(&self, target: &FieldMatrix) -> Result<Option<FieldMatrix>> {
        if target.rows != self.rows {
            return Err(Error::Dimension(format!(
                "solving {}x{} against target with {} rows",
                self.rows, self.cols, target.rows
            )));
        }
        let aug = FieldMatrix::hconcat(self, target)?;
        let (red, pivots) = aug.rref();
        // A pivot landing in the target block certifies inconsistency.
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut d = FieldMatrix::zeros(self.field, self.cols, target.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for c in 0..target.cols {
                d.set(pc, c, red.get(r, self.cols + c));
            }
        }
        Ok(Some(d))
    }

    /// Basis of the right kernel `{v : self * v = 0}`, one column per basis
    /// vector (possibly zero columns).
    pub fn right_kernel_basis(&self) -> FieldMatrix {
        let f = self.field;
        let (red, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = FieldMatrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            basis.set(fc, j, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, j, f.neg(red.get(r, fc)));
            }
        }
        basis
    }
}

/// True iff every row of `a` lies in the row space of `b`.
/// Decided exactly: rank([a; b]) == rank(b).
pub fn rowspace_contained(a: &FieldMatrix, b: &FieldMatrix) -> Result<bool> {
    let stacked = FieldMatrix::stack_rows(a, b)?;
    Ok(stacked.rank() == b.rank())
}

/// True iff the column spans of `a` and `b` intersect only in zero.
/// Decided exactly: rank([a | b]) == rank(a) + rank(b).
pub fn span_intersection_trivial(a: &FieldMatrix, b: &FieldMatrix) -> Result<bool> {
    let joined = FieldMatrix::hconcat(a, b)?;
    Ok(joined.rank() == a.rank() + b.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn modulus_must_be_prime() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(251).is_ok());
        assert!(matches!(PrimeField::new(1), Err(Error::BadModulus(1))));
        assert!(matches!(PrimeField::new(4), Err(Error::BadModulus(4))));
        assert!(matches!(PrimeField::new(91), Err(Error::BadModulus(91)))); // 7 * 13
    }

    #[test]
    fn primality_and_next_prime() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael number
        assert!(is_prime(1_000_000_007));
        assert_eq!(next_prime(1), 2);
        assert_eq!(next_prime(2), 3);
        assert_eq!(next_prime(13), 17);
        assert_eq!(next_prime(240), 241);
    }

    #[test]
    fn field_arithmetic_small_cases() {
        let f3 = f(3);
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.sub(0, 1), 2);
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.neg(1), 2);
        assert_eq!(f3.inv(2).unwrap(), 2);
        assert!(f3.inv(0).is_err());
    }

    #[test]
    fn rank_of_dependent_rows() {
        // Third row is the sum of the first two, so the rank drops to 2.
        let m = FieldMatrix::from_rows(
            f(2),
            &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
            3,
        )
        .unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_edge_shapes() {
        let z = FieldMatrix::zeros(f(5), 0, 4);
        assert_eq!(z.rank(), 0);
        let z = FieldMatrix::zeros(f(5), 4, 0);
        assert_eq!(z.rank(), 0);
        let z = FieldMatrix::zeros(f(5), 3, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(FieldMatrix::identity(f(5), 4).rank(), 4);
    }

    #[test]
    fn rowspace_containment_scaled_row() {
        // (2,1) = 2 * (1,2) over F_3.
        let a = FieldMatrix::from_rows(f(3), &[vec![2, 1]], 2).unwrap();
        let b = FieldMatrix::from_rows(f(3), &[vec![1, 2]], 2).unwrap();
        assert!(rowspace_contained(&a, &b).unwrap());
        // But (1,1) is not a multiple of (1,2) over F_3.
        let c = FieldMatrix::from_rows(f(3), &[vec![1, 1]], 2).unwrap();
        assert!(!rowspace_contained(&c, &b).unwrap());
    }

    #[test]
    fn rowspace_containment_in_empty() {
        let b = FieldMatrix::zeros(f(2), 0, 3);
        let zero_row = FieldMatrix::from_rows(f(2), &[vec![0, 0, 0]], 3).unwrap();
        let one_row = FieldMatrix::from_rows(f(2), &[vec![1, 0, 0]], 3).unwrap();
        assert!(rowspace_contained(&zero_row, &b).unwrap());
        assert!(!rowspace_contained(&one_row, &b).unwrap());
    }

    #[test]
    fn span_intersection_cases() {
        // Columns (1,0,0),(0,1,0) vs column (1,1,1) over F_2: trivial.
        let a = FieldMatrix::from_rows(f(2), &[vec![1, 0], vec![0, 1], vec![0, 0]], 2).unwrap();
        let b = FieldMatrix::from_rows(f(2), &[vec![1], vec![1], vec![1]], 1).unwrap();
        assert!(span_intersection_trivial(&a, &b).unwrap());
        // vs column (1,1,0): that is the sum of a's columns, so nontrivial.
        let c = FieldMatrix::from_rows(f(2), &[vec![1], vec![1], vec![0]], 1).unwrap();
        assert!(!span_intersection_trivial(&a, &c).unwrap());
    }

    #[test]
    fn invert_involutive_example() {
        // (1 1; 0 1) over F_2 is its own inverse.
        let m = FieldMatrix::from_rows(f(2), &[vec![1, 1], vec![0, 1]], 2).unwrap();
        assert_eq!(m.invert().unwrap(), m);
        let singular = FieldMatrix::from_rows(f(2), &[vec![1, 1], vec![1, 1]], 2).unwrap();
        assert!(matches!(singular.invert(), Err(Error::Singular)));
    }

    #[test]
    fn solve_right_unique_and_infeasible() {
        // Columns (1,0) and (1,1); target (0,1) needs both: d = (1,1).
        let g = FieldMatrix::from_rows(f(2), &[vec![1, 1], vec![0, 1]], 2).unwrap();
        let t = FieldMatrix::from_rows(f(2), &[vec![0], vec![1]], 1).unwrap();
        let d = g.solve_right(&t).unwrap().unwrap();
        assert_eq!(d, FieldMatrix::from_rows(f(2), &[vec![1], vec![1]], 1).unwrap());
        // Target outside the column space has no solution.
        let g2 = FieldMatrix::from_rows(f(2), &[vec![1, 1], vec![1, 1]], 2).unwrap();
        let t2 = FieldMatrix::from_rows(f(2), &[vec![1], vec![0]], 1).unwrap();
        assert!(g2.solve_right(&t2).unwrap().is_none());
    }

    #[test]
    fn kernel_basis_annihilates() {
        let m = FieldMatrix::from_rows(f(3), &[vec![1, 2, 0], vec![0, 0, 1]], 3).unwrap();
        let k = m.right_kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    fn arb_matrix(q: u64, max_dim: usize) -> impl Strategy<Value = FieldMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..q, r * c)
                .prop_map(move |flat| FieldMatrix::from_flat(f(q), r, c, &flat).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_never_exceeds_dims(m in arb_matrix(5, 6)) {
            let r = m.rank();
            prop_assert!(r <= m.rows().min(m.cols()));
        }

        #[test]
        fn rank_matches_transpose(m in arb_matrix(3, 6)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_subadditive_under_stacking(
            a in arb_matrix(3, 5),
            b in arb_matrix(3, 5),
        ) {
            prop_assume!(a.cols() == b.cols());
            let s = FieldMatrix::stack_rows(&a, &b).unwrap();
            prop_assert!(s.rank() <= a.rank() + b.rank());
            prop_assert!(s.rank() >= a.rank().max(b.rank()));
        }

        #[test]
        fn mutual_containment_is_rank_equality(
            a in arb_matrix(2, 4),
            b in arb_matrix(2, 4),
        ) {
            prop_assume!(a.cols() == b.cols());
            let both = rowspace_contained(&a, &b).unwrap() && rowspace_contained(&b, &a).unwrap();
            let s = FieldMatrix::stack_rows(&a, &b).unwrap();
            let equal = a.rank() == b.rank() && b.rank() == s.rank();
            prop_assert_eq!(both, equal);
        }

        #[test]
        fn inverse_roundtrips(m in arb_matrix(7, 5)) {
            prop_assume!(m.rows() == m.cols());
            if let Ok(inv) = m.invert() {
                let id = FieldMatrix::identity(m.field(), m.rows());
                prop_assert_eq!(m.mul(&inv).unwrap(), id.clone());
                prop_assert_eq!(inv.mul(&m).unwrap(), id);
            } else {
                prop_assert!(m.rank() < m.rows());
            }
        }

        #[test]
        fn solve_right_solutions_verify(
            m in arb_matrix(3, 5),
            flat in proptest::collection::vec(0..3u64, 25),
        ) {
            let t = FieldMatrix::from_flat(f(3), m.rows(), 25 / 5, &flat[..m.rows() * (25 / 5)]).unwrap();
            if let Some(d) = m.solve_right(&t).unwrap() {
                prop_assert_eq!(m.mul(&d).unwrap(), t);
            } else {
                // Inconsistency certified by a rank jump.
                let joined = FieldMatrix::hconcat(&m, &t).unwrap();
                prop_assert!(joined.rank() > m.rank());
            }
        }

        #[test]
        fn kernel_dimension_complements_rank(m in arb_matrix(3, 6)) {
            let k = m.right_kernel_basis();
            prop_assert_eq!(k.cols(), m.cols() - m.rank());
            prop_assert!(m.mul(&k).unwrap().is_zero());
        }

        #[test]
        fn span_intersection_symmetric(
            a in arb_matrix(2, 4),
            b in arb_matrix(2, 4),
        ) {
            prop_assume!(a.rows() == b.rows());
            prop_assert_eq!(
                span_intersection_trivial(&a, &b).unwrap(),
                span_intersection_trivial(&b, &a).unwrap()
            );
        }
    }
}
