//! Dense polynomial matrices, minors and reduced minors.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{gcd_many, same_ring, Poly, Rational, Ring};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// Row and column selections of a minor, both strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorIndex {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// All minors of one order with their GCD and the reduced minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorReport {
    pub order: usize,
    pub minors: Vec<(MinorIndex, Poly)>,
    /// Monic GCD of the minors; zero when every minor vanishes.
    pub gcd: Poly,
    /// `minors[i] = gcd * reduced[i]`.
    pub reduced: Vec<Poly>,
}

impl MinorReport {
    /// The order-0 convention: a single empty minor equal to 1.
    pub fn order_zero(ring: &Ring) -> Self {
        MinorReport {
            order: 0,
            minors: vec![(
                MinorIndex {
                    rows: Vec::new(),
                    cols: Vec::new(),
                },
                Poly::one(ring),
            )],
            gcd: Poly::one(ring),
            reduced: vec![Poly::one(ring)],
        }
    }

    pub fn len(&self) -> usize {
        self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minors.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = &Poly> {
        self.minors.iter().map(|(_, p)| p)
    }
}

/// Lexicographically ordered `r`-subsets of `0..n`.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::Dimension("matrices need at least one row and one column".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("rows have different lengths".into()));
        }
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| !same_ring(p.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    /// Parses a grid of polynomial strings.
    pub fn parse<S: AsRef<str>>(ring: &Ring, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| Poly::parse(s.as_ref(), ring)).collect())
            .collect::<Result<Vec<Vec<Poly>>>>()?;
        Self::new(ring, parsed)
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Self::from_fn(ring, rows, cols, |_, _| Poly::zero(ring))
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        Self::from_fn(
            ring,
            n,
            n,
            |i, j| if i == j { Poly::one(ring) } else { Poly::zero(ring) },
        )
    }

    pub fn diag(ring: &Ring, d: &[Poly]) -> Self {
        Self::from_fn(ring, d.len(), d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                Poly::zero(ring)
            }
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(same_ring(p.ring(), &self.ring), "ring mismatch");
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl FnMut(&Poly) -> Poly) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl FnMut(&Poly) -> Result<Poly>) -> Result<Self> {
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.ring, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Poly::zero(&self.ring), |acc, k| {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        }))
    }

    fn zip_with(&self, other: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} versus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            f(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, p: &Poly) -> Self {
        self.map(|e| e * p)
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map(|e| e.scale(c))
    }

    /// `v * self` for a row vector `v` of length `rows`.
    pub fn left_apply(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.rows {
            return Err(Error::Dimension("row vector length".into()));
        }
        Ok((0..self.cols)
            .map(|j| (0..self.rows).fold(Poly::zero(&self.ring), |acc, i| &acc + &(&v[i] * self.get(i, j))))
            .collect())
    }

    /// `self * v` for a column vector `v` of length `cols`.
    pub fn right_apply(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("column vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(Poly::zero(&self.ring), |acc, j| &acc + &(self.get(i, j) * &v[j])))
            .collect())
    }

    /// Determinant of the submatrix on `rows` x `cols` by Laplace expansion
    /// along rows, memoized over column subsets.
    fn det_of(&self, rows: &[usize], cols: &[usize]) -> Poly {
        let n = rows.len();
        debug_assert_eq!(n, cols.len());
        if n == 0 {
            return Poly::one(&self.ring);
        }
        assert!(n <= 31, "determinant too large for subset memoization");
        // level: masks of size k hold the determinant of the last k rows
        let mut level: HashMap<u32, Poly> = HashMap::new();
        let last = rows[n - 1];
        for (c, &col) in cols.iter().enumerate() {
            let e = self.get(last, col);
            if !e.is_zero() {
                level.insert(1 << c, e.clone());
            }
        }
        for k in (0..n - 1).rev() {
            let row = rows[k];
            let mut next: HashMap<u32, Poly> = HashMap::new();
            for (mask, sub) in &level {
                for (c, &col) in cols.iter().enumerate() {
                    if mask & (1 << c) != 0 {
                        continue;
                    }
                    let e = self.get(row, col);
                    if e.is_zero() {
                        continue;
                    }
                    // sign from the position of c among the selected columns
                    let below = (mask & ((1u32 << c) - 1)).count_ones();
                    let term = e * sub;
                    let entry = next.entry(mask | (1 << c)).or_insert_with(|| Poly::zero(&self.ring));
                    *entry = if below.is_multiple_of(2) {
                        &*entry + &term
                    } else {
                        &*entry - &term
                    };
                }
            }
            next.retain(|_, p| !p.is_zero());
            level = next;
        }
        level
            .remove(&((1u32 << n) - 1))
            .unwrap_or_else(|| Poly::zero(&self.ring))
    }

    pub fn determinant(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.det_of(&idx, &idx))
    }

    pub fn minor(&self, index: &MinorIndex) -> Poly {
        self.det_of(&index.rows, &index.cols)
    }

    /// All `r x r` minors, ordered lexicographically by (rows, cols).
    pub fn minors(&self, r: usize) -> Result<MinorReport> {
        let max = self.rows.min(self.cols);
        if r == 0 || r > max {
            return Err(Error::MinorOrder { order: r, max });
        }
        let row_sets = combinations(self.rows, r);
        let col_sets = combinations(self.cols, r);
        let mut minors = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                let v = self.det_of(rs, cs);
                minors.push((
                    MinorIndex {
                        rows: rs.clone(),
                        cols: cs.clone(),
                    },
                    v,
                ));
            }
        }
        let gcd = gcd_many(&self.ring, minors.iter().map(|(_, p)| p))?;
        let reduced = if gcd.is_zero() {
            minors.iter().map(|_| Poly::zero(&self.ring)).collect()
        } else {
            minors
                .iter()
                .map(|(_, p)| p.exact_divide(&gcd))
                .collect::<Result<_>>()?
        };
        Ok(MinorReport {
            order: r,
            minors,
            gcd,
            reduced,
        })
    }

    /// Minors of order `r`, allowing `r = 0` (a single minor equal to 1).
    pub fn minors_or_unit(&self, r: usize) -> Result<MinorReport> {
        if r == 0 {
            Ok(MinorReport::order_zero(&self.ring))
        } else {
            self.minors(r)
        }
    }

    /// Largest order with a nonzero minor; 0 for the zero matrix.
    pub fn rank(&self) -> usize {
        let max = self.rows.min(self.cols);
        for r in (1..=max).rev() {
            let row_sets = combinations(self.rows, r);
            let col_sets = combinations(self.cols, r);
            for rs in &row_sets {
                for cs in &col_sets {
                    if !self.det_of(rs, cs).is_zero() {
                        return r;
                    }
                }
            }
        }
        0
    }

    /// Polynomial inverse of a matrix whose determinant is a nonzero
    /// constant, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let det = self.determinant()?;
        let c = match det.constant_value() {
            Some(c) if !num_traits::Zero::is_zero(&c) => c,
            _ => return Err(Error::NotUnimodular(det.to_string())),
        };
        let inv_c = c.recip();
        let n = self.rows;
        let inv = Self::from_fn(&self.ring, n, n, |i, j| {
            // (i, j) entry of adj = cofactor (j, i)
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let cof = self.det_of(&rows, &cols).scale(&inv_c);
            if (i + j) % 2 == 0 {
                cof
            } else {
                -cof
            }
        });
        debug_assert_eq!(self.mul(&inv).ok(), Some(Self::identity(&self.ring, n)));
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}\n{self}", self.rows, self.cols)
    }
}
