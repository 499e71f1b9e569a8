//! Dense linear algebra over a prime field `F_p`.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p`, `p < 2^16` so products fit in `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        let prime = (2..(1 << 16)).contains(&p) && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    /// `±1` reduced mod `p`.
    pub fn sign(self, negative: bool) -> u32 {
        if negative {
            self.p - 1
        } else {
            1
        }
    }

    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p));
        // Fermat
        let (mut base, mut exp, mut acc) = (a % self.p, self.p - 2, 1u32);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `target -= factor * source`, entrywise.
    pub fn axpy(self, target: &mut [u32], factor: u32, source: &[u32]) {
        if factor == 0 {
            return;
        }
        for (t, &s) in target.iter_mut().zip(source) {
            *t = self.sub(*t, self.mul(factor, s));
        }
    }
}

/// A row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix[{}x{} mod {}]", self.rows, self.cols, self.field.p)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl FpMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Entries are reduced mod `p`; every row must have length `cols`.
    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if let Some(row) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DomainMismatch(format!("matrix row of length {}, expected {cols}", row.len())));
        }
        let data = rows.iter().flatten().map(|&x| x % field.p).collect();
        Ok(FpMatrix { field, rows: rows.len(), cols, data })
    }

    /// The matrix whose `j`-th column is `columns[j]`, each of length `rows`.
    pub fn from_columns(field: Fp, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x % field.p;
            }
        }
        m
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.data[i * self.cols + j] = value % self.field.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// `self · other`
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DomainMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = FpMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        row_reduce(self.field, &mut rows, self.cols).len()
    }

    /// A basis of `{v : self · v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut rows = self.to_rows();
        let pivots = row_reduce(f, &mut rows, self.cols);
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = f.neg(rows[r][free]);
                }
                v
            })
            .collect()
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, the nonzero rows coming first.
fn row_reduce(f: Fp, rows: &mut [Vec<u32>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r {
                let factor = row[c];
                f.axpy(row, factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Incrementally built echelon basis of a subspace of `F_p^n`. Each stored
/// vector carries its coordinates with respect to a list of tracked
/// generators; untracked generators contribute nothing.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    len: usize,
    /// `pivot_of[i]` is the stored vector whose leading index is `i`.
    pivot_of: Vec<Option<usize>>,
    vectors: Vec<Vec<u32>>,
    coords: Vec<Vec<u32>>,
    tracked: usize,
}

impl Echelon {
    pub fn new(field: Fp, len: usize) -> Self {
        Echelon { field, len, pivot_of: vec![None; len], vectors: Vec::new(), coords: Vec::new(), tracked: 0 }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn tracked(&self) -> usize {
        self.tracked
    }

    /// Reduces `v` against the stored vectors; returns the residue and the
    /// tracked coordinates of the part removed.
    pub fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.field;
        let mut residue = v.to_vec();
        let mut coords = vec![0; self.tracked];
        for i in 0..self.len {
            if residue[i] == 0 {
                continue;
            }
            if let Some(k) = self.pivot_of[i] {
                let factor = f.mul(residue[i], f.inv(self.vectors[k][i]));
                f.axpy(&mut residue, factor, &self.vectors[k]);
                for (c, &x) in coords.iter_mut().zip(&self.coords[k]) {
                    *c = f.add(*c, f.mul(factor, x));
                }
            }
        }
        (residue, coords)
    }

    /// Adds an untracked generator. Returns false when it was dependent.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let (residue, coords) = self.reduce(v);
        self.store(residue, coords.into_iter().map(|c| self.field.neg(c)).collect())
    }

    /// Adds `v` as a new tracked generator when it is independent of the
    /// stored span. Returns false, tracking nothing, otherwise.
    pub fn insert_tracked(&mut self, v: &[u32]) -> bool {
        let (residue, removed) = self.reduce(v);
        if residue.iter().all(|&x| x == 0) {
            return false;
        }
        self.tracked += 1;
        for c in &mut self.coords {
            c.push(0);
        }
        let mut coords: Vec<u32> = removed.into_iter().map(|c| self.field.neg(c)).collect();
        coords.push(1);
        self.store(residue, coords)
    }

    fn store(&mut self, residue: Vec<u32>, coords: Vec<u32>) -> bool {
        let Some(lead) = residue.iter().position(|&x| x != 0) else {
            return false;
        };
        let mut coords = coords;
        coords.resize(self.tracked, 0);
        self.pivot_of[lead] = Some(self.vectors.len());
        self.vectors.push(residue);
        self.coords.push(coords);
        true
    }

    /// Tracked coordinates of `v`, when `v` lies in the stored span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (residue, coords) = self.reduce(v);
        residue.iter().all(|&x| x == 0).then_some(coords)
    }
}
