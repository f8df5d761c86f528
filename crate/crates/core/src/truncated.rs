//! Cohomology of truncated complexes of subquotients.
//!
//! A [`Filtered`] space is a coordinate space whose first `offset` coordinates
//! lie above the truncation level and whose remaining coordinates (the *tail*)
//! form the level-`N` slab. It carries cocycles and boundaries computed in the
//! whole space; because every map is level non-increasing and coordinates
//! above the level come first, reduced echelon bases restrict to the tail by
//! keeping the vectors whose pivot lies in it.
//!
//! For a piece `A --f--> B --g--> C` of a complex of such spaces the
//! cohomology at `B` is computed as
//!
//! ```text
//!   { z ∈ Z_tail(B) : g(z) ∈ B_tail(C) }  /  ( B(B) + f(Z(A)) )_tail
//! ```
//!
//! The numerator only looks at level `N`, while denominators may use sources
//! from the whole space — the kernel-versus-image asymmetry that keeps
//! truncated counts from overcounting.

use crate::error::{Error, Result};
use crate::ratmat::{kernel_basis, SparseMatrix, SparseVec, Subquotient, SubspaceBasis};
use crate::slices::tail_intersection;

#[derive(Clone, Debug)]
pub struct Filtered {
    pub dim: usize,
    pub offset: usize,
    /// Cocycles in the whole space (echelon form).
    pub cocycles: SubspaceBasis,
    /// Boundaries in the whole space (echelon form); exact on the tail.
    pub boundaries: SubspaceBasis,
}

impl Filtered {
    pub fn new(dim: usize, offset: usize, cocycles: SubspaceBasis, boundaries: SubspaceBasis) -> Self {
        Self {
            dim,
            offset,
            cocycles,
            boundaries,
        }
    }

    pub fn cocycles_tail(&self) -> Vec<SparseVec> {
        tail_intersection(&self.cocycles, self.offset)
    }

    pub fn boundaries_tail(&self) -> SubspaceBasis {
        SubspaceBasis::from_vectors(self.dim, tail_intersection(&self.boundaries, self.offset))
            .expect("tail vectors live in the space")
    }

    /// `Z_tail / B_tail`.
    pub fn cohomology(&self) -> Subquotient {
        Subquotient::new(self.cocycles_tail(), self.boundaries_tail()).expect("same ambient space")
    }

    pub fn is_tail(&self, v: &SparseVec) -> bool {
        v.leading().is_none_or(|(i, _)| i >= self.offset)
    }
}

/// Coordinate layout of a direct sum of filtered spaces: all parts' upper
/// coordinates first (part by part), then all tails.
#[derive(Clone, Debug)]
pub struct Layout {
    parts: Vec<(usize, usize)>,
    upper_start: Vec<usize>,
    tail_start: Vec<usize>,
    dim: usize,
    offset: usize,
}

impl Layout {
    pub fn new(parts: &[&Filtered]) -> Self {
        let parts: Vec<(usize, usize)> = parts.iter().map(|p| (p.dim, p.offset)).collect();
        let mut upper_start = Vec::new();
        let mut acc = 0;
        for &(_, off) in &parts {
            upper_start.push(acc);
            acc += off;
        }
        let offset = acc;
        let mut tail_start = Vec::new();
        for &(dim, off) in &parts {
            tail_start.push(acc);
            acc += dim - off;
        }
        Self {
            parts,
            upper_start,
            tail_start,
            dim: acc,
            offset,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, part: usize, i: usize) -> usize {
        let off = self.parts[part].1;
        if i < off {
            self.upper_start[part] + i
        } else {
            self.tail_start[part] + i - off
        }
    }

    pub fn embed(&self, part: usize, v: &SparseVec) -> SparseVec {
        v.remap(|i| Some(self.index(part, i)))
    }

    pub fn project(&self, part: usize, v: &SparseVec) -> SparseVec {
        let (dim, off) = self.parts[part];
        let (us, ts) = (self.upper_start[part], self.tail_start[part]);
        v.remap(|j| {
            if j >= us && j < us + off {
                Some(j - us)
            } else if j >= ts && j < ts + dim - off {
                Some(j - ts + off)
            } else {
                None
            }
        })
    }

    /// Block matrix from `(row_part, col_part, block)` triples.
    pub fn block_matrix(rows: &Layout, cols: &Layout, blocks: &[(usize, usize, &SparseMatrix)]) -> Result<SparseMatrix> {
        let mut entries = Vec::new();
        for &(rp, cp, m) in blocks {
            if m.rows() != rows.parts[rp].0 || m.cols() != cols.parts[cp].0 {
                return Err(Error::DimensionMismatch {
                    expected: rows.parts[rp].0,
                    found: m.rows(),
                });
            }
            for (c, col) in m.columns().iter().enumerate() {
                for (r, x) in col.iter() {
                    entries.push((rows.index(rp, r), cols.index(cp, c), x.clone()));
                }
            }
        }
        SparseMatrix::from_entries(rows.dim, cols.dim, entries)
    }

    pub fn sum(&self, parts: &[&Filtered]) -> Filtered {
        let mut z = SubspaceBasis::empty(self.dim);
        let mut b = SubspaceBasis::empty(self.dim);
        for (k, p) in parts.iter().enumerate() {
            z.extend(p.cocycles.vectors().iter().map(|v| self.embed(k, v)))
                .expect("embedded vectors fit");
            b.extend(p.boundaries.vectors().iter().map(|v| self.embed(k, v)))
                .expect("embedded vectors fit");
        }
        Filtered::new(self.dim, self.offset, z, b)
    }
}

/// Cohomology at `mid` of `prev --f--> mid --g--> next` (either end optional).
pub fn cohomology_at(
    prev: Option<(&Filtered, &SparseMatrix)>,
    mid: &Filtered,
    next: Option<(&SparseMatrix, &Filtered)>,
) -> Result<Subquotient> {
    let z_tail = mid.cocycles_tail();
    let numerator = match next {
        None => z_tail,
        Some((g, next)) => {
            let target = next.boundaries_tail();
            let mut cols = Vec::with_capacity(z_tail.len());
            for z in &z_tail {
                let gz = g.mul_vec(z);
                if !next.is_tail(&gz) {
                    return Err(Error::OutsideSlab("map raised the truncation level".into()));
                }
                cols.push(target.reduce(&gz));
            }
            let m = SparseMatrix::from_columns(next.dim, cols)?;
            kernel_basis(&m)
                .vectors()
                .iter()
                .map(|c| {
                    let mut v = SparseVec::new();
                    for (k, x) in c.iter() {
                        v.add_scaled(&z_tail[k], x);
                    }
                    v
                })
                .collect()
        }
    };
    let mut den = mid.boundaries.clone();
    if let Some((prev, f)) = prev {
        for z in prev.cocycles.vectors() {
            den.insert(f.mul_vec(z))?;
        }
    }
    let den_tail = SubspaceBasis::from_vectors(mid.dim, tail_intersection(&den, mid.offset))?;
    Subquotient::new(numerator, den_tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::rat;

    fn space(dim: usize, offset: usize, z: &[SparseVec], b: &[SparseVec]) -> Filtered {
        Filtered::new(
            dim,
            offset,
            SubspaceBasis::from_vectors(dim, z.iter().cloned()).unwrap(),
            SubspaceBasis::from_vectors(dim, b.iter().cloned()).unwrap(),
        )
    }

    #[test]
    fn tail_restriction() {
        // coordinate 0 is above the level; boundary e0 + e1 does not lie in the tail
        let u = SparseVec::from_dense(&[rat(1), rat(1), rat(0)]);
        let f = space(3, 1, &[SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(2)], &[u]);
        assert_eq!(f.cocycles_tail().len(), 2);
        assert_eq!(f.boundaries_tail().dim(), 0);
        assert_eq!(f.cohomology().dim(), 2);
    }

    #[test]
    fn map_kernel_and_cokernel() {
        // k^2 --[[1,0],[0,0]]--> k^2, no truncation
        let full = |n| space(n, 0, &(0..n).map(SparseVec::unit).collect::<Vec<_>>(), &[]);
        let a = full(2);
        let m = SparseMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        let ker = cohomology_at(None, &a, Some((&m, &a))).unwrap();
        let coker = cohomology_at(Some((&a, &m)), &a, None).unwrap();
        assert_eq!((ker.dim(), coker.dim()), (1, 1));
    }

    #[test]
    fn layout_roundtrip() {
        let a = space(3, 1, &[], &[]);
        let b = space(2, 2, &[], &[]);
        let l = Layout::new(&[&a, &b]);
        assert_eq!(l.dim(), 5);
        assert_eq!((0..3).map(|i| l.index(0, i)).collect::<Vec<_>>(), vec![0, 3, 4]);
        assert_eq!((0..2).map(|i| l.index(1, i)).collect::<Vec<_>>(), vec![1, 2]);
        let v = SparseVec::from_dense(&[rat(1), rat(2), rat(3)]);
        assert_eq!(l.project(0, &l.embed(0, &v)), v);
        assert!(l.project(1, &l.embed(0, &v)).is_zero());
    }
}
