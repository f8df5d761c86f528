//! Exact sparse linear algebra over the rationals.
//!
//! Every cohomology dimension in the crate bottoms out in one of the routines
//! here: ranks, kernels, images, and quotients of subspaces given by spanning
//! sets. Subspaces are always kept in reduced row echelon form, so a subspace
//! has exactly one [`SubspaceBasis`] and downstream representatives are
//! reproducible.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-3/4"` or `" 7 / 2 "`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sparse vector: index → nonzero coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: BTreeMap<usize, Rational>,
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, c)| (i, format_rational(c))))
            .finish()
    }
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::new();
        v.entries.insert(i, Rational::one());
        v
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        let mut v = Self::new();
        for (i, c) in values.iter().enumerate() {
            v.add_at(i, c.clone());
        }
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut v = Self::new();
        for (i, c) in pairs {
            v.add_at(i, c);
        }
        v
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (&i, c) in &self.entries {
            out[i] = c.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.entries.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn add_at(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c);
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            self.add_at(i, x * c);
        }
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.entries.clear();
        } else {
            for x in self.entries.values_mut() {
                *x *= c;
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut v = self.clone();
        v.add_scaled(other, &-Rational::one());
        v
    }

    /// Re-indexes coordinates; `None` drops the coordinate.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter_map(|(&i, c)| f(i).map(|j| (j, c.clone()))),
        )
    }
}

/// Sparse rational matrix, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, x) in entries {
            if r >= rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: r + 1,
                });
            }
            if c >= cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: c + 1,
                });
            }
            m.columns[c].add_at(r, x);
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                m.columns[c].add_at(r, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        for col in &columns {
            if let Some(m) = col.max_index() {
                if m >= rows {
                    return Err(Error::DimensionMismatch {
                        expected: rows,
                        found: m + 1,
                    });
                }
            }
        }
        Ok(Self { rows, columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c].get(r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, x) in col.iter() {
                rows[r].add_at(c, x.clone());
            }
        }
        rows
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.cols(),
            columns: self.row_vectors(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, x) in v.iter() {
            out.add_scaled(&self.columns[c], x);
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols() != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                found: other.rows,
            });
        }
        Ok(SparseMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.mul_vec(c)).collect(),
        })
    }

    pub fn scaled(&self, c: &Rational) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            columns: self.columns.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols(),
                found: other.rows * other.cols(),
            });
        }
        Ok(SparseMatrix {
            rows: self.rows,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }
}

/// Subspace of `k^ambient_dim` in reduced row echelon form: pivots strictly
/// increasing, each pivot entry 1, and every other vector zero in that column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_vectors(ambient_dim, (0..ambient_dim).map(SparseVec::unit))
            .expect("unit vectors are in range")
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(ambient_dim: usize, vs: I) -> Result<Self> {
        let mut b = Self::empty(ambient_dim);
        for v in vs {
            b.insert(v)?;
        }
        Ok(b)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, v: &SparseVec) -> Result<()> {
        match v.max_index() {
            Some(m) if m >= self.ambient_dim => Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: m + 1,
            }),
            _ => Ok(()),
        }
    }

    /// Remainder of `v` after clearing every pivot column, together with the
    /// coefficients (one per basis vector) that were removed.
    pub fn reduce_with_coeffs(&self, v: &SparseVec) -> (SparseVec, Vec<Rational>) {
        let mut coeffs = vec![Rational::zero(); self.vectors.len()];
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter_map(|(i, c)| self.pivot_row.get(&i).map(|&r| (r, c.clone())))
            .collect();
        let mut rem = v.clone();
        for (r, c) in hits {
            rem.add_scaled(&self.vectors[r], &-c.clone());
            coeffs[r] = c;
        }
        (rem, coeffs)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with_coeffs(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> Result<bool> {
        self.check(&v)?;
        let mut rem = self.reduce(&v);
        let (p, lead) = match rem.leading() {
            None => return Ok(false),
            Some((p, c)) => (p, c.clone()),
        };
        rem.scale(&lead.recip());
        for row in &mut self.vectors {
            if let Some(c) = row.get(p).cloned() {
                row.add_scaled(&rem, &-c);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.vectors.insert(at, rem);
        self.pivot_row = self.pivots.iter().enumerate().map(|(r, &q)| (q, r)).collect();
        Ok(true)
    }

    pub fn extend<I: IntoIterator<Item = SparseVec>>(&mut self, vs: I) -> Result<()> {
        for v in vs {
            self.insert(v)?;
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        let mut s = self.clone();
        s.extend(other.vectors.iter().cloned())?;
        Ok(s)
    }
}

/// Rank by fraction-controlled Gaussian elimination with Markowitz pivoting:
/// each step picks the nonzero entry minimising `(row_nnz - 1) * (col_nnz - 1)`,
/// ties broken by (row, column) so the run is deterministic.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut rows: Vec<BTreeMap<usize, Rational>> = m
        .row_vectors()
        .into_iter()
        .map(|v| v.entries)
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut active: BTreeSet<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &active {
            let rn = rows[r].len() - 1;
            for &c in rows[r].keys() {
                let cost = rn * (col_rows[c].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, r, c));
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        rank += 1;
        active.remove(&pr);
        let pivot_row = std::mem::take(&mut rows[pr]);
        for &c in pivot_row.keys() {
            col_rows[c].remove(&pr);
        }
        let pivot = pivot_row[&pc].clone();
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            let factor = &rows[r][&pc] / &pivot;
            for (&c, x) in &pivot_row {
                let entry = rows[r].entry(c).or_insert_with(Rational::zero);
                let was_zero = entry.is_zero();
                *entry -= &factor * x;
                if entry.is_zero() {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else if was_zero {
                    col_rows[c].insert(r);
                }
            }
            if rows[r].is_empty() {
                active.remove(&r);
            }
        }
    }
    rank
}

/// Echelon basis of the right null space.
pub fn kernel_basis(m: &SparseMatrix) -> SubspaceBasis {
    let row_space = SubspaceBasis::from_vectors(m.cols(), m.row_vectors())
        .expect("row vectors live in the column space");
    let pivots: BTreeSet<usize> = row_space.pivots.iter().copied().collect();
    let mut kernel = SubspaceBasis::empty(m.cols());
    for f in (0..m.cols()).filter(|c| !pivots.contains(c)) {
        let mut v = SparseVec::unit(f);
        for (row, &p) in row_space.vectors.iter().zip(&row_space.pivots) {
            if let Some(c) = row.get(f) {
                v.add_at(p, -c.clone());
            }
        }
        kernel.insert(v).expect("kernel vector in range");
    }
    kernel
}

/// Echelon basis of the column space.
pub fn image_basis(m: &SparseMatrix) -> SubspaceBasis {
    SubspaceBasis::from_vectors(m.rows(), m.columns.iter().cloned())
        .expect("columns live in the row space")
}

/// Coefficients of `v` in the echelon basis `s`, or `None` if `v ∉ span(s)`.
pub fn membership(v: &SparseVec, s: &SubspaceBasis) -> Result<Option<Vec<Rational>>> {
    s.check(v)?;
    let (rem, coeffs) = s.reduce_with_coeffs(v);
    Ok(rem.is_zero().then_some(coeffs))
}

pub fn quotient_dim(ambient_dim: usize, sub: &SubspaceBasis) -> usize {
    ambient_dim - sub.dim()
}

/// `(N + B) / B` for a numerator spanning set `N` and denominator `B` in a
/// common ambient space, with canonical representatives: numerator vectors are
/// reduced modulo the echelon form of `B` and the remainders echelonised.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub denominator: SubspaceBasis,
    pub representatives: SubspaceBasis,
}

impl Subquotient {
    pub fn new<I>(numerator: I, denominator: SubspaceBasis) -> Result<Self>
    where
        I: IntoIterator<Item = SparseVec>,
    {
        let mut reps = SubspaceBasis::empty(denominator.ambient_dim());
        for v in numerator {
            denominator.check(&v)?;
            reps.insert(denominator.reduce(&v))?;
        }
        Ok(Self {
            denominator,
            representatives: reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.dim()
    }

    /// Coordinates of the class of `v` in the representative basis; `None` if
    /// `v` is not in `span(representatives) + denominator`.
    pub fn coords(&self, v: &SparseVec) -> Result<Option<Vec<Rational>>> {
        let rem = self.denominator.reduce(v);
        membership(&rem, &self.representatives)
    }

    pub fn is_zero_class(&self, v: &SparseVec) -> bool {
        self.denominator.contains(v)
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        assert_eq!(rank(&SparseMatrix::zero(4, 2)), 0);
        assert_eq!(rank(&SparseMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&SparseMatrix::identity(3)).dim(), 0);
        assert_eq!(kernel_basis(&SparseMatrix::zero(2, 3)).dim(), 3);
        let k = kernel_basis(&SparseMatrix::from_i64(&[&[1, 1, 0]]));
        assert_eq!(k.dim(), 2);
        assert_eq!(k.vectors()[0], SparseVec::from_dense(&[rat(1), rat(-1), rat(0)]));
        assert_eq!(k.vectors()[1], SparseVec::unit(2));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&SparseMatrix::identity(3)), SubspaceBasis::full(3));
        assert_eq!(image_basis(&SparseMatrix::zero(3, 2)).dim(), 0);
        let im = image_basis(&SparseMatrix::from_i64(&[&[1], &[2]]));
        assert_eq!(im.vectors(), &[SparseVec::from_dense(&[rat(1), rat(2)])]);
    }

    #[test]
    fn membership_examples() {
        let b = SubspaceBasis::from_vectors(2, [SparseVec::unit(0)]).unwrap();
        assert_eq!(membership(&SparseVec::new(), &b).unwrap(), Some(vec![rat(0)]));
        assert_eq!(membership(&SparseVec::unit(0), &b).unwrap(), Some(vec![rat(1)]));
        let v = SparseVec::from_dense(&[rat(1), rat(1)]);
        assert_eq!(membership(&v, &b).unwrap(), None);
        assert!(matches!(
            membership(&SparseVec::unit(5), &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_dim(5, &SubspaceBasis::empty(5)), 5);
        assert_eq!(quotient_dim(3, &SubspaceBasis::full(3)), 0);
        let one = SubspaceBasis::from_vectors(4, [SparseVec::unit(2)]).unwrap();
        assert_eq!(quotient_dim(4, &one), 3);
    }

    #[test]
    fn echelon_invariants_hold() {
        let m = SparseMatrix::from_i64(&[&[0, 2, 4, 1], &[0, 1, 2, 0], &[3, 0, 1, 1]]);
        let im = image_basis(&m.transpose());
        let p = im.pivots();
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        for (v, &q) in im.vectors().iter().zip(p) {
            assert_eq!(v.get(q), Some(&rat(1)));
            for &other in p.iter().filter(|&&o| o != q) {
                assert!(v.get(other).is_none());
            }
        }
    }

    #[test]
    fn subquotient_counts_classes() {
        // numerator: e0, e1, e2 ; denominator: e0 + e1
        let den = SubspaceBasis::from_vectors(3, [SparseVec::from_dense(&[rat(1), rat(1), rat(0)])]).unwrap();
        let sq = Subquotient::new((0..3).map(SparseVec::unit), den).unwrap();
        assert_eq!(sq.dim(), 2);
        assert!(sq.is_zero_class(&SparseVec::from_dense(&[rat(2), rat(2), rat(0)])));
        let c = sq.coords(&SparseVec::unit(0)).unwrap().unwrap();
        let c1 = sq.coords(&SparseVec::unit(1)).unwrap().unwrap();
        assert_eq!(c.iter().zip(&c1).map(|(a, b)| a + b).collect::<Vec<_>>(), vec![rat(0); 2]);
    }

    #[test]
    fn matrix_entries_are_range_checked() {
        assert!(SparseMatrix::from_entries(2, 2, [(2, 0, rat(1))]).is_err());
        let m = SparseMatrix::from_entries(2, 2, [(1, 0, rat(3)), (1, 0, rat(-3))]).unwrap();
        assert_eq!(m.nnz(), 0);
    }
}
