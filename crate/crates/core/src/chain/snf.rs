//! Dense integer matrices and Smith normal form.

use std::fmt;

use num::integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Builds a matrix from columns; all columns must have `rows` entries.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::NotComposable(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b != 0 {
                        let v = a
                            .checked_mul(b)
                            .and_then(|p| p.checked_add(out.get(r, c)))
                            .ok_or(Error::Overflow)?;
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        let col = IntMatrix::from_columns(v.len(), &[v.to_vec()]);
        Ok(self.mul(&col)?.column(0))
    }

    /// Rows and columns permuted: entry `(r, c)` of the result is entry
    /// `(row_perm[r], col_perm[c])` of `self`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (r, &pr) in row_perm.iter().enumerate() {
            for (c, &pc) in col_perm.iter().enumerate() {
                out.set(r, c, self.get(pr, pc));
            }
        }
        out
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.d.get(i, i)).collect()
    }

    /// A basis of the kernel lattice of `M`: the last columns of `V`.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        (self.rank..self.v.cols())
            .map(|c| self.v.column(c))
            .collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

fn add_scaled(dst: &mut [i64], src: &[i64], q: i64) -> Result<()> {
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = s
                .checked_mul(q)
                .and_then(|p| d.checked_add(p))
                .ok_or(Error::Overflow)?;
        }
    }
    Ok(())
}

fn row_pair(m: &mut IntMatrix, target: usize, src: usize) -> (&mut [i64], &[i64]) {
    let cols = m.cols;
    let (lo, hi) = m.data.split_at_mut(target.max(src) * cols);
    if target < src {
        (&mut lo[target * cols..(target + 1) * cols], &hi[..cols])
    } else {
        (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
    }
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
            for c in 0..m.cols {
                m.data.swap(i * m.cols + c, j * m.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in std::iter::once(&mut self.a).chain(self.v.as_mut()) {
            for r in 0..m.rows {
                m.data.swap(r * m.cols + i, r * m.cols + j);
            }
        }
    }

    /// `row[target] += q * row[src]`.
    fn add_row(&mut self, target: usize, src: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
            let (dst, s) = row_pair(m, target, src);
            add_scaled(dst, s, q)?;
        }
        Ok(())
    }

    /// `col[target] += q * col[src]`.
    fn add_col(&mut self, target: usize, src: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for m in std::iter::once(&mut self.a).chain(self.v.as_mut()) {
            for r in 0..m.rows {
                let s = m.get(r, src);
                if s != 0 {
                    let v = s
                        .checked_mul(q)
                        .and_then(|p| p.checked_add(m.get(r, target)))
                        .ok_or(Error::Overflow)?;
                    m.set(r, target, v);
                }
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
            for c in 0..m.cols {
                let k = i * m.cols + c;
                m.data[k] = -m.data[k];
            }
        }
    }

    /// `(col_i, col_j) <- (x col_i + y col_j, s col_i + t col_j)`.
    fn combine_cols(&mut self, i: usize, j: usize, [x, y, s, t]: [i64; 4]) -> Result<()> {
        for m in std::iter::once(&mut self.a).chain(self.v.as_mut()) {
            for r in 0..m.rows {
                let (ci, cj) = (m.get(r, i), m.get(r, j));
                let lin = |p: i64, q: i64| -> Result<i64> {
                    p.checked_mul(ci)
                        .zip(q.checked_mul(cj))
                        .and_then(|(a, b)| a.checked_add(b))
                        .ok_or(Error::Overflow)
                };
                let (ni, nj) = (lin(x, y)?, lin(s, t)?);
                m.set(r, i, ni);
                m.set(r, j, nj);
            }
        }
        Ok(())
    }

    /// Smallest-magnitude entry in the first nonzero column at or after `t`,
    /// restricted to rows at or after `t`.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let a = &self.a;
        for c in t..a.cols {
            let best = (t..a.rows)
                .filter(|&r| a.get(r, c) != 0)
                .min_by_key(|&r| a.get(r, c).unsigned_abs());
            if let Some(r) = best {
                return Some((r, c));
            }
        }
        None
    }

    fn diagonalize(&mut self) -> Result<usize> {
        let mut t = 0;
        while t < self.a.rows.min(self.a.cols) {
            let Some((r, c)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let p = self.a.get(t, t);
                for i in t + 1..self.a.rows {
                    let e = self.a.get(i, t);
                    if e != 0 {
                        self.add_row(i, t, -(e / p))?;
                    }
                }
                let small = (t + 1..self.a.rows)
                    .filter(|&i| self.a.get(i, t) != 0)
                    .min_by_key(|&i| self.a.get(i, t).unsigned_abs());
                if let Some(i) = small {
                    self.swap_rows(t, i);
                    continue;
                }
                // column t is now zero below the pivot, so column operations
                // against it only touch row t of `a`
                for j in t + 1..self.a.cols {
                    let e = self.a.get(t, j);
                    if e != 0 {
                        let q = -(e / p);
                        if self.v.is_some() {
                            self.add_col(j, t, q)?;
                        } else {
                            self.a.set(t, j, e + q * p);
                        }
                    }
                }
                let small = (t + 1..self.a.cols)
                    .filter(|&j| self.a.get(t, j) != 0)
                    .min_by_key(|&j| self.a.get(t, j).unsigned_abs());
                match small {
                    Some(j) => self.swap_cols(t, j),
                    None => break,
                }
            }
            if self.a.get(t, t) < 0 {
                self.negate_row(t);
            }
            t += 1;
        }
        Ok(t)
    }

    /// Replaces `diag(a, b)` at positions `i < j` by `diag(gcd, lcm)`.
    fn gcd_lcm(&mut self, i: usize, j: usize) -> Result<()> {
        let (a, b) = (self.a.get(i, i), self.a.get(j, j));
        if b % a == 0 {
            return Ok(());
        }
        let e = a.extended_gcd(&b);
        let g = e.gcd;
        if self.u.is_none() && self.v.is_none() {
            self.a.set(i, i, g);
            self.a
                .set(j, j, (a / g).checked_mul(b).ok_or(Error::Overflow)?);
            return Ok(());
        }
        // [[a,0],[0,b]] -> [[a,b],[0,b]] -> [[g,0],[by,ab/g]] -> [[g,0],[0,ab/g]]
        self.add_row(i, j, 1)?;
        self.combine_cols(i, j, [e.x, e.y, -(b / g), a / g])?;
        let q = (b / g).checked_mul(e.y).ok_or(Error::Overflow)?;
        self.add_row(j, i, -q)?;
        if self.a.get(j, j) < 0 {
            self.negate_row(j);
        }
        Ok(())
    }

    fn run(&mut self) -> Result<usize> {
        let rank = self.diagonalize()?;
        for i in 0..rank {
            for j in i + 1..rank {
                self.gcd_lcm(i, j)?;
            }
        }
        Ok(rank)
    }
}

/// Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Smith> {
    let mut red = Reducer {
        a: m.clone(),
        u: Some(IntMatrix::identity(m.rows)),
        v: Some(IntMatrix::identity(m.cols)),
    };
    let rank = red.run()?;
    Ok(Smith {
        d: red.a,
        u: red.u.unwrap(),
        v: red.v.unwrap(),
        rank,
    })
}

/// Nonzero invariant factors, without tracking transforms.
pub fn invariant_factors(m: &IntMatrix) -> Result<Vec<i64>> {
    let mut red = Reducer {
        a: m.clone(),
        u: None,
        v: None,
    };
    let rank = red.run()?;
    Ok((0..rank).map(|i| red.a.get(i, i)).collect())
}
