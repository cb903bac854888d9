//! Exact integer linear algebra for boundary operators: sparse matrices,
//! Smith normal form, and rational kernel bases.
//!
//! Everything is arbitrary precision (`BigInt`/`BigRational`) and fully
//! deterministic — pivot choices are fixed by (|value|, position), so the
//! same matrix always produces the same reduction. Matrices here are small
//! (boundary operators of graph complexes), so the reductions work on a
//! dense working copy.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}×{1} · {2}×{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("entry ({0}, {1}) outside a {2}×{3} matrix")]
    IndexOutOfRange(usize, usize, usize, usize),
    #[error("matrix market line {0}: {1}")]
    MatrixMarket(usize, String),
}

/// Sparse integer matrix; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| ((i, i), BigInt::one())).collect();
        SparseIntMatrix { rows: n, cols: n, entries }
    }

    /// Build from (row, col, value) triples; duplicates accumulate.
    pub fn from_triples<I, V>(rows: usize, cols: usize, triples: I) -> Result<Self, LinAlgError>
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut m = SparseIntMatrix::new(rows, cols);
        for (r, c, v) in triples {
            m.add_to(r, c, v.into())?;
        }
        Ok(m)
    }

    /// Dense test helper.
    pub fn from_rows(data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = SparseIntMatrix::new(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.add_to(i, j, BigInt::from(v)).unwrap();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterate nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) -> Result<(), LinAlgError> {
        if r >= self.rows || c >= self.cols {
            return Err(LinAlgError::IndexOutOfRange(r, c, self.rows, self.cols));
        }
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
        Ok(())
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: BigInt) -> Result<(), LinAlgError> {
        if r >= self.rows || c >= self.cols {
            return Err(LinAlgError::IndexOutOfRange(r, c, self.rows, self.cols));
        }
        if v.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry((r, c)).or_insert_with(BigInt::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
        Ok(())
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let entries = self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect();
        SparseIntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn multiply(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        // row index of `other`
        let mut rows_of: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            rows_of.entry(r).or_default().push((c, v));
        }
        let mut out = SparseIntMatrix::new(self.rows, other.cols);
        for (&(i, k), v) in &self.entries {
            if let Some(row) = rows_of.get(&k) {
                for &(j, w) in row {
                    out.add_to(i, j, v * w)?;
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
        if x.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch(self.rows, self.cols, x.len(), 1));
        }
        let mut y = vec![BigInt::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            y[r] += v * &x[c];
        }
        Ok(y)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Smith normal form over ℤ. Pivoting is deterministic: among nonzero
    /// entries of the remaining submatrix, pick the one of smallest absolute
    /// value, breaking ties by (row, col).
    pub fn smith_normal_form(&self) -> SmithForm {
        let mut a = self.to_dense();
        let (r, c) = (self.rows, self.cols);
        let mut factors: Vec<BigInt> = Vec::new();
        let mut t = 0;
        while t < r.min(c) {
            // pivot selection
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !a[i][j].is_zero()
                        && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }

            // clear column t and row t; a failed exact division re-enters the
            // loop with a strictly smaller pivot, so this terminates
            let mut clean = true;
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    if !q.is_zero() {
                        for j in t..c {
                            let s = &q * &a[t][j];
                            a[i][j] -= s;
                        }
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    if !q.is_zero() {
                        for i in t..r {
                            let s = &q * &a[i][t];
                            a[i][j] -= s;
                        }
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }

            // divisibility fix-up: the pivot must divide the rest
            let mut fixed = true;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for jj in t..c {
                            let s = a[i][jj].clone();
                            a[t][jj] += s;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                factors.push(a[t][t].clone());
                t += 1;
            }
        }
        let rank = factors.len();
        SmithForm { invariant_factors: factors, rank }
    }

    /// Rank over ℚ (fraction-free echelon on a dense copy).
    pub fn rational_rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Primitive integer vectors spanning ker(self) over ℚ, one per free
    /// column of the reduced echelon form, in ascending free-column order.
    /// Each vector has its first nonzero entry positive.
    pub fn rational_kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let (rref, pivots) = self.echelon();
        let pivot_set: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(row, &col)| (col, row)).collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains_key(&f) {
                continue;
            }
            let mut x = vec![BigRational::zero(); self.cols];
            x[f] = BigRational::one();
            for (&col, &row) in &pivot_set {
                x[col] = -rref[row][f].clone();
            }
            basis.push(primitive_integer(&x));
        }
        basis
    }

    /// Reduced row echelon form over ℚ with the list of pivot columns.
    fn echelon(&self) -> (Vec<Vec<BigRational>>, Vec<usize>) {
        let mut a: Vec<Vec<BigRational>> = self
            .to_dense()
            .into_iter()
            .map(|row| row.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].recip();
            for x in a[row].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i != row && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..self.cols {
                        let s = &f * &a[row][j];
                        a[i][j] -= s;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// Matrix Market "coordinate integer general", entries sorted row-major,
    /// 1-based indices.
    pub fn to_matrix_market(&self) -> String {
        let mut s = String::from("%%MatrixMarket matrix coordinate integer general\n");
        s.push_str(&format!("{} {} {}\n", self.rows, self.cols, self.entries.len()));
        for (&(r, c), v) in &self.entries {
            s.push_str(&format!("{} {} {}\n", r + 1, c + 1, v));
        }
        s
    }

    pub fn from_matrix_market(text: &str) -> Result<Self, LinAlgError> {
        let mut lines = text.lines().enumerate();
        let (ln, header) = lines
            .next()
            .ok_or_else(|| LinAlgError::MatrixMarket(1, "empty input".into()))?;
        let header_fields: Vec<&str> = header.split_whitespace().collect();
        if header_fields.len() < 4
            || !header_fields[0].starts_with("%%MatrixMarket")
            || header_fields[1] != "matrix"
            || header_fields[2] != "coordinate"
            || header_fields[3] != "integer"
        {
            return Err(LinAlgError::MatrixMarket(
                ln + 1,
                "expected '%%MatrixMarket matrix coordinate integer general'".into(),
            ));
        }
        let mut size: Option<(usize, usize, usize)> = None;
        let mut m = SparseIntMatrix::new(0, 0);
        let mut seen = 0usize;
        for (ln, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| LinAlgError::MatrixMarket(ln + 1, msg.into());
            if size.is_none() {
                if fields.len() != 3 {
                    return Err(bad("size line needs 'rows cols nnz'"));
                }
                let r = fields[0].parse().map_err(|_| bad("bad row count"))?;
                let c = fields[1].parse().map_err(|_| bad("bad col count"))?;
                let n = fields[2].parse().map_err(|_| bad("bad entry count"))?;
                size = Some((r, c, n));
                m = SparseIntMatrix::new(r, c);
                continue;
            }
            if fields.len() != 3 {
                return Err(bad("entry line needs 'row col value'"));
            }
            let r: usize = fields[0].parse().map_err(|_| bad("bad row index"))?;
            let c: usize = fields[1].parse().map_err(|_| bad("bad col index"))?;
            let v: BigInt = fields[2].parse().map_err(|_| bad("bad integer value"))?;
            if r == 0 || c == 0 {
                return Err(bad("indices are 1-based"));
            }
            m.add_to(r - 1, c - 1, v).map_err(|e| bad(&e.to_string()))?;
            seen += 1;
        }
        let (_, _, n) = size.ok_or_else(|| LinAlgError::MatrixMarket(0, "missing size line".into()))?;
        if seen != n {
            return Err(LinAlgError::MatrixMarket(0, format!("expected {n} entries, found {seen}")));
        }
        Ok(m)
    }
}

impl fmt::Display for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}×{} ({} nonzero)", self.rows, self.cols, self.entries.len())?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Invariant factors d₁ | d₂ | … | d_r of a matrix over ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Factors > 1, i.e. the torsion part of the cokernel restricted to the
    /// image lattice.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }
}

/// Clear denominators and content; normalize the first nonzero entry to be
/// positive.
fn primitive_integer(x: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in x {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: Vec<BigInt> = x.iter().map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for v in &out {
        gcd = gcd.gcd(v);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for v in out.iter_mut() {
            *v /= &gcd;
        }
    }
    if let Some(first) = out.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in out.iter_mut() {
                *v = -std::mem::take(v);
            }
        }
    }
    out
}
