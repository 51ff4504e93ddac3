//! Dense linear algebra over a finite-field alphabet context.
//!
//! The centerpiece is [`rre`]: reduced row echelon form with the invertible
//! row transform recorded, so that `T * A = R` exactly. Zero rows are kept in
//! R, which keeps T square. On top of that sit a left-solver with a canonical
//! solution (free unknowns zero) and the block-structure maskability test
//! used by the matrix masking constructions: each column of an RRE matrix is
//! associated with the row of its lowermost nonzero entry, and a row can
//! absorb columns whose exclusion budgets sum to at most q - 1.

use crate::ring::AlphabetCtx;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixOverField {
    ctx: AlphabetCtx,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl MatrixOverField {
    pub fn new(ctx: AlphabetCtx, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if !ctx.is_field() {
            return Err(Error::ContextKind("matrix construction"));
        }
        if data.len() != rows * cols {
            return Err(Error::Parameter(format!(
                "matrix data length {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| v >= ctx.q()) {
            return Err(Error::Parameter(format!("entry {bad} is outside [{}]", ctx.q())));
        }
        Ok(Self { ctx, rows, cols, data })
    }

    pub fn zeros(ctx: AlphabetCtx, rows: usize, cols: usize) -> Result<Self> {
        Self::new(ctx, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(ctx: AlphabetCtx, n: usize) -> Result<Self> {
        let mut m = Self::zeros(ctx, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn from_rows(ctx: AlphabetCtx, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parameter("ragged rows".into()));
        }
        Self::new(ctx, rows.len(), cols, rows.concat())
    }

    pub fn ctx(&self) -> &AlphabetCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(i < self.rows && j < self.cols && v < self.ctx.q());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// New matrix made of the given columns, in the given order.
    pub fn submatrix_cols(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Self { ctx: self.ctx, rows: self.rows, cols: cols.len(), data }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self { ctx: self.ctx, rows: self.cols, cols: self.rows, data }
    }

    /// Row vector times matrix: `z * self`, `z` of length `rows`.
    pub fn left_mul_vec(&self, z: &[u32]) -> Vec<u32> {
        assert_eq!(z.len(), self.rows);
        let ctx = &self.ctx;
        let mut out = vec![0u32; self.cols];
        for (i, &zi) in z.iter().enumerate() {
            if zi == 0 {
                continue;
            }
            for j in 0..self.cols {
                let t = ctx.mul(zi, self.get(i, j));
                out[j] = ctx.add(out[j], t);
            }
        }
        out
    }

    pub fn mat_mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let ctx = &self.ctx;
        let mut data = vec![0u32; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    data[idx] = ctx.add(data[idx], ctx.mul(a, rhs.get(k, j)));
                }
            }
        }
        Self { ctx: self.ctx, rows: self.rows, cols: rhs.cols, data }
    }

    /// Serializes to the shared matrix text format: a header line
    /// `q rows cols` followed by one line of space-separated entries per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.ctx.q(), self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text format produced by [`Self::to_text`]. Round-trips
    /// bit-exactly.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 3 {
            return Err(Error::Parse(format!("bad matrix header {header:?}")));
        }
        let q: u32 = head[0].parse().map_err(|_| Error::Parse("bad q".into()))?;
        let rows: usize = head[1].parse().map_err(|_| Error::Parse("bad row count".into()))?;
        let cols: usize = head[2].parse().map_err(|_| Error::Parse("bad col count".into()))?;
        let ctx = AlphabetCtx::new(q)?;
        let mut data = Vec::with_capacity(rows * cols);
        for line in lines {
            for tok in line.split_whitespace() {
                let v: u32 = tok.parse().map_err(|_| Error::Parse(format!("bad entry {tok:?}")))?;
                data.push(v);
            }
        }
        if data.len() != rows * cols {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                rows * cols,
                data.len()
            )));
        }
        Self::new(ctx, rows, cols, data)
    }
}

#[derive(Debug, Clone)]
pub struct RreResult {
    /// The reduced row echelon form, zero rows retained.
    pub r: MatrixOverField,
    /// Invertible transform with `t * a = r`.
    pub t: MatrixOverField,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Reduced row echelon form by Gaussian elimination, scanning columns left to
/// right and always picking the topmost unused row with a nonzero entry as
/// pivot. Deterministic for a given input.
pub fn rre(a: &MatrixOverField) -> RreResult {
    let ctx = *a.ctx();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut t = MatrixOverField::identity(ctx, rows).expect("field ctx");
    let mut rank = 0usize;
    let mut pivot_cols = Vec::new();

    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&i| r.get(i, col) != 0) else {
            continue;
        };
        if pivot_row != rank {
            for j in 0..cols {
                let (x, y) = (r.get(rank, j), r.get(pivot_row, j));
                r.set(rank, j, y);
                r.set(pivot_row, j, x);
            }
            for j in 0..rows {
                let (x, y) = (t.get(rank, j), t.get(pivot_row, j));
                t.set(rank, j, y);
                t.set(pivot_row, j, x);
            }
        }
        let inv = ctx.inv(r.get(rank, col)).expect("pivot is nonzero");
        if inv != 1 {
            for j in 0..cols {
                r.set(rank, j, ctx.mul(inv, r.get(rank, j)));
            }
            for j in 0..rows {
                t.set(rank, j, ctx.mul(inv, t.get(rank, j)));
            }
        }
        for i in 0..rows {
            if i == rank {
                continue;
            }
            let factor = r.get(i, col);
            if factor == 0 {
                continue;
            }
            for j in 0..cols {
                let sub = ctx.mul(factor, r.get(rank, j));
                r.set(i, j, ctx.sub(r.get(i, j), sub));
            }
            for j in 0..rows {
                let sub = ctx.mul(factor, t.get(rank, j));
                t.set(i, j, ctx.sub(t.get(i, j), sub));
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    RreResult { r, t, rank, pivot_cols }
}

/// Solves `z * a = target` for a row vector z of length `a.rows()`. Returns
/// the canonical solution with all free unknowns set to zero, or `None` when
/// the system is inconsistent.
pub fn solve_left(a: &MatrixOverField, target: &[u32]) -> Option<Vec<u32>> {
    assert_eq!(target.len(), a.cols(), "target length must match column count");
    let at = a.transpose();
    let red = rre(&at);
    let rhs = red.t.left_mul_vec_col(target);
    // rows of R beyond the rank are zero; the transformed target must vanish there
    if rhs.iter().skip(red.rank).any(|&v| v != 0) {
        return None;
    }
    let mut z = vec![0u32; a.rows()];
    for (i, &p) in red.pivot_cols.iter().enumerate() {
        z[p] = rhs[i];
    }
    Some(z)
}

/// Basis of the left kernel `{ v : v * a = 0 }`, one vector per free column
/// of the transposed system, in increasing free-column order.
pub fn left_kernel_basis(a: &MatrixOverField) -> Vec<Vec<u32>> {
    let ctx = *a.ctx();
    let at = a.transpose();
    let red = rre(&at);
    let dim = a.rows();
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; dim];
    for &p in &red.pivot_cols {
        is_pivot[p] = true;
    }
    for free in 0..dim {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u32; dim];
        v[free] = 1;
        for (i, &p) in red.pivot_cols.iter().enumerate() {
            v[p] = ctx.neg(red.r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

impl MatrixOverField {
    /// Matrix times column vector, returned as a plain vector.
    fn left_mul_vec_col(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let ctx = &self.ctx;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for (j, &x) in v.iter().enumerate() {
                    acc = ctx.add(acc, ctx.mul(self.get(i, j), x));
                }
                acc
            })
            .collect()
    }
}

/// Associates every column of an RRE matrix with the row of its lowermost
/// nonzero entry. Errors on an all-zero column, which no shift can mask.
pub fn column_block_assignment(r: &MatrixOverField) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(r.cols());
    for j in 0..r.cols() {
        let Some(i) = (0..r.rows()).rev().find(|&i| r.get(i, j) != 0) else {
            return Err(Error::UnmaskableColumn(j));
        };
        out.push(i);
    }
    Ok(out)
}

/// Block maskability: true iff every column has a nonzero lowermost entry
/// and, for each row, the exclusion budgets of the columns assigned to it sum
/// to at most q - 1. A column stuck at level s carries budget s; with all
/// budgets 1 this is the familiar "at most q - 1 columns per block".
pub fn maskable_check(r: &MatrixOverField, budgets: &[u32]) -> bool {
    assert_eq!(budgets.len(), r.cols(), "one budget per column");
    let Ok(assignment) = column_block_assignment(r) else {
        return false;
    };
    let mut load = vec![0u64; r.rows()];
    for (j, &row) in assignment.iter().enumerate() {
        load[row] += budgets[j] as u64;
    }
    load.iter().all(|&l| l <= (r.ctx().q() - 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ctx;

    fn mat(q: u32, rows: &[&[u32]]) -> MatrixOverField {
        let ctx = make_ctx(q).unwrap();
        MatrixOverField::from_rows(ctx, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    /// 3x5 ternary parity-check matrix of the [5,2,3] code used across the
    /// test suite.
    fn ternary_5_2_3() -> MatrixOverField {
        mat(3, &[&[1, 0, 0, 1, 0], &[0, 1, 0, 1, 1], &[0, 0, 1, 0, 1]])
    }

    /// The 2x8 ternary masking matrix built from a doubled [4,2,3] Hamming
    /// parity check.
    fn ternary_2x8() -> MatrixOverField {
        mat(3, &[&[1, 1, 0, 0, 1, 1, 1, 1], &[0, 0, 1, 1, 1, 1, 2, 2]])
    }

    #[test]
    fn mod_ring_context_is_rejected() {
        let ctx = make_ctx(6).unwrap();
        assert_eq!(
            MatrixOverField::zeros(ctx, 2, 2).unwrap_err(),
            Error::ContextKind("matrix construction")
        );
    }

    #[test]
    fn rre_of_identity_is_identity() {
        let ctx = make_ctx(3).unwrap();
        let i3 = MatrixOverField::identity(ctx, 3).unwrap();
        let red = rre(&i3);
        assert_eq!(red.r, i3);
        assert_eq!(red.t, i3);
        assert_eq!(red.rank, 3);
        assert_eq!(red.pivot_cols, vec![0, 1, 2]);
    }

    #[test]
    fn rre_of_zero_matrix() {
        let ctx = make_ctx(3).unwrap();
        let z = MatrixOverField::zeros(ctx, 2, 3).unwrap();
        let red = rre(&z);
        assert_eq!(red.rank, 0);
        assert_eq!(red.r, z);
    }

    #[test]
    fn rre_of_systematic_matrix_is_itself() {
        let h = ternary_5_2_3();
        let red = rre(&h);
        assert_eq!(red.r, h);
        assert_eq!(red.rank, 3);
        assert_eq!(red.t, MatrixOverField::identity(*h.ctx(), 3).unwrap());
    }

    #[test]
    fn transform_reproduces_input() {
        let a = mat(4, &[&[2, 3, 1], &[1, 1, 0], &[3, 2, 1]]);
        let red = rre(&a);
        assert_eq!(red.t.mat_mul(&a), red.r);
    }

    #[test]
    fn solve_left_on_identity() {
        let ctx = make_ctx(3).unwrap();
        let i2 = MatrixOverField::identity(ctx, 2).unwrap();
        assert_eq!(solve_left(&i2, &[1, 2]).unwrap(), vec![1, 2]);
    }

    #[test]
    fn solve_left_canonical_solution() {
        // columns 0 and 4 of the [5,2,3] matrix, solved as a 3-unknown system
        let h = ternary_5_2_3();
        let a = h.submatrix_cols(&[0, 4]);
        let z = solve_left(&a, &[1, 1]).unwrap();
        assert_eq!(z, vec![1, 1, 0]);
        assert_eq!(a.left_mul_vec(&z), vec![1, 1]);
    }

    #[test]
    fn solve_left_inconsistent_returns_none() {
        let ctx = make_ctx(3).unwrap();
        let zero = MatrixOverField::zeros(ctx, 2, 2).unwrap();
        assert!(solve_left(&zero, &[1, 0]).is_none());
    }

    #[test]
    fn block_assignment_examples() {
        let ctx = make_ctx(3).unwrap();
        let i3 = MatrixOverField::identity(ctx, 3).unwrap();
        assert_eq!(column_block_assignment(&i3).unwrap(), vec![0, 1, 2]);

        let single = mat(5, &[&[1, 2, 3, 4, 1]]);
        assert_eq!(column_block_assignment(&single).unwrap(), vec![0; 5]);

        let r = rre(&ternary_2x8().submatrix_cols(&[0, 2, 4])).r;
        let assign = column_block_assignment(&r).unwrap();
        assert_eq!(assign, vec![0, 1, 1]);
    }

    #[test]
    fn zero_column_is_unmaskable() {
        let m = mat(3, &[&[1, 0], &[0, 0]]);
        assert_eq!(column_block_assignment(&m).unwrap_err(), Error::UnmaskableColumn(1));
        assert!(!maskable_check(&m, &[1, 1]));
    }

    #[test]
    fn maskability_examples() {
        let ctx = make_ctx(2).unwrap();
        let i4 = MatrixOverField::identity(ctx, 4).unwrap();
        assert!(maskable_check(&i4, &[1; 4]));

        // any three columns of the 2x8 matrix stay maskable over F_3
        let h = ternary_2x8();
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    let r = rre(&h.submatrix_cols(&[a, b, c])).r;
                    assert!(maskable_check(&r, &[1, 1, 1]), "cols {a},{b},{c}");
                }
            }
        }

        // q = 2: two budget-1 columns in one block exceed q - 1 = 1
        let row = mat(2, &[&[1, 1]]);
        assert!(!maskable_check(&row, &[1, 1]));
    }

    #[test]
    fn left_kernel_spans_the_solution_space() {
        let h = ternary_5_2_3();
        let a = h.submatrix_cols(&[0, 4]); // 3x2, rank 2
        let basis = left_kernel_basis(&a);
        assert_eq!(basis.len(), 1);
        for v in &basis {
            assert!(a.left_mul_vec(v).iter().all(|&x| x == 0));
        }
        // full-rank square matrix has a trivial left kernel
        let ctx = make_ctx(3).unwrap();
        let i3 = MatrixOverField::identity(ctx, 3).unwrap();
        assert!(left_kernel_basis(&i3).is_empty());
        // zero matrix: everything is in the kernel
        let z = MatrixOverField::zeros(ctx, 2, 3).unwrap();
        assert_eq!(left_kernel_basis(&z).len(), 2);
    }

    #[test]
    fn text_format_round_trip() {
        let h = ternary_2x8();
        let text = h.to_text();
        assert!(text.starts_with("3 2 8\n"));
        let back = MatrixOverField::parse_text(&text).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(MatrixOverField::parse_text("").is_err());
        assert!(MatrixOverField::parse_text("3 2 2\n1 2\n1").is_err());
        assert!(MatrixOverField::parse_text("3 1 2\n1 x").is_err());
        // entry out of range
        assert!(MatrixOverField::parse_text("3 1 2\n1 7").is_err());
    }
}
