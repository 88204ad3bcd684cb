//! Exact linear algebra: sparse matrices over F_p (rank, kernels, row-span
//! membership) and small dense matrices over any [`Field`].
//!
//! The mod-p elimination first splits a matrix into the connected components
//! of its row/column incidence graph; the graded matrices built by the
//! verifier are block diagonal by g7-weight, so this cuts the work by roughly
//! the number of blocks squared. Each block is then row reduced in chunks:
//! every row of a chunk is reduced against the current pivots in parallel,
//! using u64 accumulators and reducing mod p only when the next pivot column
//! is read or the accumulated bound nears overflow. New pivots are then
//! extracted from the chunk by ordinary forward elimination.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::par::{self, Parallelism};

const CHUNK_ROWS: usize = 128;

/// A sparse matrix over F_p. Rows hold `(column, residue)` pairs sorted by
/// column with residues in `[1, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrixModP {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<Vec<(u32, u32)>>,
}

fn normalize_row(mut row: Vec<(u32, u64)>, p: u32) -> Vec<(u32, u32)> {
    row.sort_by_key(|&(c, _)| c);
    let mut out: Vec<(u32, u32)> = Vec::with_capacity(row.len());
    let mut iter = row.into_iter().peekable();
    while let Some((c, mut v)) = iter.next() {
        v %= p as u64;
        while let Some(&(c2, v2)) = iter.peek() {
            if c2 != c {
                break;
            }
            v = (v + v2 % p as u64) % p as u64;
            iter.next();
        }
        if v != 0 {
            out.push((c, v as u32));
        }
    }
    out
}

impl SparseMatrixModP {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Self { rows, cols, p, data: vec![Vec::new(); rows] }
    }

    /// Builds from rows of `(column, value)` pairs; values are reduced mod p,
    /// duplicates summed and zeros dropped.
    pub fn from_rows(cols: usize, p: u32, rows: Vec<Vec<(u32, u64)>>) -> Self {
        let data: Vec<_> = rows.into_iter().map(|r| normalize_row(r, p)).collect();
        for row in &data {
            if let Some(&(c, _)) = row.last() {
                assert!((c as usize) < cols, "column {c} out of range");
            }
        }
        Self { rows: data.len(), cols, p, data }
    }

    pub fn from_dense(p: u32, dense: &[Vec<i64>]) -> Self {
        let cols = dense.first().map_or(0, Vec::len);
        let rows = dense
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, &v)| (c as u32, v.rem_euclid(p as i64) as u64))
                    .collect()
            })
            .collect();
        Self::from_rows(cols, p, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(u32, u32)] {
        &self.data[i]
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                data[c as usize].push((r as u32, v));
            }
        }
        Self { rows: self.cols, cols: self.rows, p: self.p, data }
    }

    /// `A v` for a dense vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let p = self.p as u64;
        Ok(self
            .data
            .iter()
            .map(|row| (row.iter().map(|&(c, x)| x as u64 * v[c as usize] as u64 % p).sum::<u64>() % p) as u32)
            .collect())
    }

    /// Row blocks of the connected components of the incidence graph, with
    /// their (sorted) global columns. Columns touched by no row are omitted.
    fn components(&self) -> Vec<(Vec<usize>, Vec<u32>)> {
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut parent: Vec<u32> = (0..self.cols as u32).collect();
        for row in &self.data {
            for w in row.windows(2) {
                let a = find(&mut parent, w[0].0);
                let b = find(&mut parent, w[1].0);
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        let mut blocks: BTreeMap<u32, (Vec<usize>, Vec<u32>)> = BTreeMap::new();
        for (r, row) in self.data.iter().enumerate() {
            if let Some(&(c, _)) = row.first() {
                let root = find(&mut parent, c);
                blocks.entry(root).or_default().0.push(r);
            }
        }
        for c in 0..self.cols as u32 {
            let root = find(&mut parent, c);
            if let Some(block) = blocks.get_mut(&root) {
                block.1.push(c);
            }
        }
        blocks.into_values().collect()
    }

    /// Dense local copy of one block: rows re-indexed onto `cols`.
    fn block_rows(&self, rows: &[usize], cols: &[u32]) -> Vec<Vec<(u32, u32)>> {
        let mut local = vec![u32::MAX; self.cols];
        for (i, &c) in cols.iter().enumerate() {
            local[c as usize] = i as u32;
        }
        rows.iter()
            .map(|&r| self.data[r].iter().map(|&(c, v)| (local[c as usize], v)).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rank_with(Parallelism::default())
    }

    pub fn rank_with(&self, mode: Parallelism) -> usize {
        let blocks = self.components();
        let ranks = par::map(&blocks, mode, |(rows, cols)| {
            let mut local = self.block_rows(rows, cols);
            // Densest columns last, sparsest rows first.
            let mut counts = vec![0usize; cols.len()];
            for row in &local {
                for &(c, _) in row {
                    counts[c as usize] += 1;
                }
            }
            let mut order: Vec<u32> = (0..cols.len() as u32).collect();
            order.sort_by_key(|&c| (counts[c as usize], c));
            let mut new_pos = vec![0u32; cols.len()];
            for (i, &c) in order.iter().enumerate() {
                new_pos[c as usize] = i as u32;
            }
            for row in &mut local {
                for e in row.iter_mut() {
                    e.0 = new_pos[e.0 as usize];
                }
                row.sort_by_key(|&(c, _)| c);
            }
            local.sort_by_key(Vec::len);
            Echelon::build(&local, cols.len(), self.p, mode).rank()
        });
        ranks.into_iter().sum()
    }

    /// Basis of `{v : A v = 0}` in reduced form: one vector per non-pivot
    /// column `f` of the reduced row echelon form, with `v[f] = 1` and zeros
    /// at the other non-pivot columns, ordered by `f`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        self.kernel_basis_with(Parallelism::default())
    }

    pub fn kernel_basis_with(&self, mode: Parallelism) -> Vec<Vec<u32>> {
        let blocks = self.components();
        let mut covered = vec![false; self.cols];
        for (_, cols) in &blocks {
            for &c in cols {
                covered[c as usize] = true;
            }
        }
        let local_kernels = par::map(&blocks, mode, |(rows, cols)| {
            let local = self.block_rows(rows, cols);
            let ech = Echelon::build(&local, cols.len(), self.p, mode);
            ech.kernel(mode)
        });
        let mut keyed: Vec<(usize, Vec<u32>)> = Vec::new();
        for ((_, cols), kernel) in blocks.iter().zip(local_kernels) {
            for (free, v) in kernel {
                let mut g = vec![0u32; self.cols];
                for (i, x) in v.into_iter().enumerate() {
                    g[cols[i] as usize] = x;
                }
                keyed.push((cols[free] as usize, g));
            }
        }
        for (c, _) in covered.iter().enumerate().filter(|(_, &cov)| !cov) {
            let mut g = vec![0u32; self.cols];
            g[c] = 1;
            keyed.push((c, g));
        }
        keyed.sort_by_key(|(f, _)| *f);
        keyed.into_iter().map(|(_, v)| v).collect()
    }

    /// Basis of `{w : w^T A = 0}`.
    pub fn left_kernel_basis(&self) -> Vec<Vec<u32>> {
        self.transpose().kernel_basis()
    }

    pub fn left_kernel_basis_with(&self, mode: Parallelism) -> Vec<Vec<u32>> {
        self.transpose().kernel_basis_with(mode)
    }

    /// Whether `v` is a linear combination of the rows.
    pub fn in_row_span(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let ech = Echelon::build(&self.data, self.cols, self.p, Parallelism::default());
        let mut acc: Vec<u64> = v.iter().map(|&x| (x % self.p) as u64).collect();
        ech.reduce(&mut acc);
        Ok(acc.iter().all(|&x| x == 0))
    }

    /// Debug dump: header `rows cols p`, then sorted `r c v` triples.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.p);
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                writeln!(out, "{r} {c} {v}").unwrap();
            }
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::MatrixFormat(m.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<u64> = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| bad("header must be three integers")))
            .collect::<Result<_>>()?;
        let [rows, cols, p] = header[..] else {
            return Err(bad("header must be `rows cols p`"));
        };
        let mut data: Vec<Vec<(u32, u64)>> = vec![Vec::new(); rows as usize];
        for line in lines {
            let t: Vec<u64> = line
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| bad("entries must be integers")))
                .collect::<Result<_>>()?;
            let [r, c, v] = t[..] else {
                return Err(bad("entries must be `r c v` triples"));
            };
            if r >= rows || c >= cols {
                return Err(bad("entry out of range"));
            }
            data[r as usize].push((c as u32, v));
        }
        Ok(Self::from_rows(cols as usize, p as u32, data))
    }
}

/// Row echelon form over F_p. Each pivot row is stored from its pivot column
/// on, normalized so that the pivot entry is 1.
struct Echelon {
    p: u64,
    cols: usize,
    max_delay: u64,
    pivot_of: Vec<Option<u32>>,
    pivot_cols: Vec<usize>,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    fn new(cols: usize, p: u32) -> Self {
        let p = p as u64;
        let sq = (p - 1).max(1) * (p - 1).max(1);
        Self {
            p,
            cols,
            max_delay: ((u64::MAX - p) / sq).max(1),
            pivot_of: vec![None; cols],
            pivot_cols: Vec::new(),
            rows: Vec::new(),
        }
    }

    fn build(rows: &[Vec<(u32, u32)>], cols: usize, p: u32, mode: Parallelism) -> Self {
        let mut ech = Echelon::new(cols, p);
        for chunk in rows.chunks(CHUNK_ROWS) {
            if ech.rank() == cols {
                break;
            }
            ech.absorb(chunk, mode);
        }
        ech
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `acc` against every pivot; afterwards every entry is in
    /// `[0, p)` and zero at every pivot column.
    fn reduce(&self, acc: &mut [u64]) {
        self.reduce_from(acc, 0);
    }

    /// Like [`reduce`](Self::reduce) but only with pivots at columns `>= start`.
    fn reduce_from(&self, acc: &mut [u64], start: usize) {
        let p = self.p;
        let first = self.pivot_cols.partition_point(|&c| c < start);
        let mut pending = 0;
        for &c in &self.pivot_cols[first..] {
            let f = acc[c] % p;
            if f == 0 {
                acc[c] = 0;
                continue;
            }
            let m = p - f;
            let (_, row) = &self.rows[self.pivot_of[c].unwrap() as usize];
            for (a, &v) in acc[c..].iter_mut().zip(row) {
                *a += m * v as u64;
            }
            pending += 1;
            if pending >= self.max_delay {
                for a in acc[c..].iter_mut() {
                    *a %= p;
                }
                pending = 0;
            }
        }
        for a in acc.iter_mut() {
            *a %= p;
        }
    }

    fn push_pivot(&mut self, col: usize, values: Vec<u32>) {
        self.pivot_of[col] = Some(self.rows.len() as u32);
        let at = self.pivot_cols.partition_point(|&c| c < col);
        self.pivot_cols.insert(at, col);
        self.rows.push((col, values));
    }

    fn absorb(&mut self, chunk: &[Vec<(u32, u32)>], mode: Parallelism) {
        let p = self.p;
        let mut accs: Vec<Vec<u64>> = chunk
            .iter()
            .map(|row| {
                let mut acc = vec![0u64; self.cols];
                for &(c, v) in row {
                    acc[c as usize] = v as u64;
                }
                acc
            })
            .collect();
        {
            let this = &*self;
            par::for_each_mut(&mut accs, mode, |acc| this.reduce(acc));
        }
        // Forward elimination inside the chunk; rows are already zero at
        // every existing pivot column, and stay so.
        for i in 0..accs.len() {
            let Some(lead) = accs[i].iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = inv_mod(accs[i][lead], p);
            let values: Vec<u32> = accs[i][lead..].iter().map(|&x| (x * inv % p) as u32).collect();
            let (_, rest) = accs.split_at_mut(i + 1);
            par::for_each_mut(rest, mode, |acc| {
                let f = acc[lead];
                if f == 0 {
                    return;
                }
                let m = p - f;
                for (a, &v) in acc[lead..].iter_mut().zip(&values) {
                    *a = (*a + m * v as u64) % p;
                }
            });
            self.push_pivot(lead, values);
        }
    }

    /// Right kernel as `(free column, vector)` pairs, ordered by free column.
    fn kernel(&self, mode: Parallelism) -> Vec<(usize, Vec<u32>)> {
        let p = self.p;
        // Fully reduce each pivot row against the pivots to its right.
        let reduced: Vec<(usize, Vec<u64>)> = par::map(&self.rows, mode, |(col, values)| {
            let mut acc = vec![0u64; self.cols];
            for (a, &v) in acc[*col..].iter_mut().zip(values) {
                *a = v as u64;
            }
            self.reduce_from(&mut acc, col + 1);
            (*col, acc)
        });
        (0..self.cols)
            .filter(|&c| self.pivot_of[c].is_none())
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (col, row) in &reduced {
                    v[*col] = ((p - row[free]) % p) as u32;
                }
                (free, v)
            })
            .collect()
    }
}

fn inv_mod(x: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Incrementally grown basis in reduced row echelon form over an exact field.
#[derive(Clone, Debug)]
pub struct RowBasis<K> {
    cols: usize,
    rows: Vec<(usize, Vec<K>)>,
}

impl<K: Field> RowBasis<K> {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [K]) {
        for (c, row) in &self.rows {
            if v[*c].is_zero() {
                continue;
            }
            let f = v[*c].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<K>) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        self.reduce(&mut v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[lead].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        for (_, row) in &mut self.rows {
            if row[lead].is_zero() {
                continue;
            }
            let f = row[lead].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        self.rows.push((lead, v));
        Ok(true)
    }

    pub fn contains(&self, v: &[K]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut v = v.to_vec();
        self.reduce(&mut v);
        Ok(v.iter().all(Field::is_zero))
    }
}

/// A small dense matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<K> {
    cols: usize,
    rows: Vec<Vec<K>>,
}

impl<K: Field> DenseMatrix<K> {
    pub fn new(cols: usize, rows: Vec<Vec<K>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
        }
        Ok(Self { cols, rows })
    }

    pub fn rows(&self) -> &[Vec<K>] {
        &self.rows
    }

    pub fn row_basis(&self) -> RowBasis<K> {
        let mut basis = RowBasis::new(self.cols);
        for r in &self.rows {
            basis.insert(r.clone()).expect("row length checked");
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.row_basis().rank()
    }

    pub fn in_row_span(&self, v: &[K]) -> Result<bool> {
        self.row_basis().contains(v)
    }

    /// Indices of the lexicographically first maximal independent set of rows.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis = RowBasis::new(self.cols);
        let mut picked = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            if basis.insert(r.clone()).expect("row length checked") {
                picked.push(i);
            }
        }
        picked
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeFieldElement;
    use proptest::prelude::*;

    /// Textbook dense elimination, independent of the chunked engine.
    fn oracle_rank(p: u64, m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(rank, piv);
            let inv = inv_mod(a[rank][c], p);
            for x in a[rank].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot = a[rank].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != rank && row[c] != 0 {
                    let f = row[c];
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(SparseMatrixModP::from_dense(263, &[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(SparseMatrixModP::zeros(3, 4, 263).rank(), 0);
        assert_eq!(SparseMatrixModP::from_dense(263, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).rank(), 3);
    }

    #[test]
    fn small_kernels() {
        let id = SparseMatrixModP::from_dense(263, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(id.kernel_basis().is_empty());
        let m = SparseMatrixModP::from_dense(263, &[vec![1, 1]]);
        assert_eq!(m.kernel_basis(), vec![vec![262, 1]]);
        let z = SparseMatrixModP::zeros(1, 2, 7);
        assert_eq!(z.kernel_basis(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn row_span_membership() {
        let m = SparseMatrixModP::from_dense(263, &[vec![1, 2, 3], vec![0, 1, 1]]);
        assert!(m.in_row_span(&[1, 2, 3]).unwrap());
        assert!(m.in_row_span(&[2, 5, 7]).unwrap());
        assert!(!m.in_row_span(&[0, 0, 1]).unwrap());
        let z = SparseMatrixModP::zeros(2, 3, 263);
        assert!(!z.in_row_span(&[1, 1, 1]).unwrap());
        assert!(matches!(z.in_row_span(&[1]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dump_round_trip() {
        let m = SparseMatrixModP::from_dense(263, &[vec![1, 0, 5], vec![0, 0, 0], vec![262, 3, 0]]);
        let text = m.dump();
        assert!(text.starts_with("3 3 263\n0 0 1\n0 2 5\n2 0 262\n"));
        assert_eq!(SparseMatrixModP::parse_dump(&text).unwrap(), m);
        assert!(SparseMatrixModP::parse_dump("2 2").is_err());
        assert!(SparseMatrixModP::parse_dump("2 2 5\n3 0 1").is_err());
    }

    #[test]
    fn large_prime_delayed_reduction() {
        // Near 2^31 only a handful of products fit before reduction.
        let p = 2147483647u32;
        let rows: Vec<Vec<i64>> = (0..40)
            .map(|i| (0..30).map(|j| ((i * 7919 + j * 104729) % 2147483647) as i64 * (i + j + 1) as i64 % p as i64).collect())
            .collect();
        let m = SparseMatrixModP::from_dense(p, &rows);
        assert_eq!(m.rank(), oracle_rank(p as u64, &rows));
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn exact_field_path() {
        let f = |x: i64| PrimeFieldElement::from_i64(x, 13);
        let m = DenseMatrix::new(3, vec![vec![f(1), f(2), f(3)], vec![f(2), f(4), f(6)], vec![f(0), f(1), f(1)]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.independent_rows(), vec![0, 2]);
        assert!(m.in_row_span(&[f(1), f(3), f(4)]).unwrap());
        assert!(!m.in_row_span(&[f(0), f(0), f(1)]).unwrap());
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..14, 1usize..14).prop_flat_map(|(r, c)| {
            proptest::collection::vec(
                proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => 0i64..23], c),
                r,
            )
        })
    }

    proptest! {
        #[test]
        fn rank_matches_oracle_and_transpose(m in arb_matrix()) {
            let a = SparseMatrixModP::from_dense(23, &m);
            let r = a.rank();
            prop_assert_eq!(r, oracle_rank(23, &m));
            prop_assert_eq!(r, a.transpose().rank());
            prop_assert_eq!(r, a.rank_with(Parallelism::Sequential));
        }

        #[test]
        fn kernel_is_a_complement_of_rank(m in arb_matrix()) {
            let a = SparseMatrixModP::from_dense(23, &m);
            let k = a.kernel_basis();
            prop_assert_eq!(k.len() + a.rank(), a.cols());
            for v in &k {
                prop_assert!(a.mul_vec(v).unwrap().iter().all(|&x| x == 0));
            }
            let kt = SparseMatrixModP::from_rows(a.cols(), 23, k.iter().map(|v| v.iter().enumerate().map(|(c, &x)| (c as u32, x as u64)).collect()).collect());
            prop_assert_eq!(kt.rank(), k.len());
            prop_assert_eq!(k, a.kernel_basis_with(Parallelism::Sequential));
        }

        #[test]
        fn rows_are_in_their_span(m in arb_matrix(), i in 0usize..14) {
            let a = SparseMatrixModP::from_dense(23, &m);
            let i = i % m.len();
            let v: Vec<u32> = m[i].iter().map(|&x| x as u32).collect();
            prop_assert!(a.in_row_span(&v).unwrap());
        }
    }
}
