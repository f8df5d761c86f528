//! Lie–Rinehart cohomology of `(S, Der A)` with values in eulerian modules.
//!
//! `Der A` is free on `D`, `E` with `[E, D] = s D`, `s = ℓ − 2`. The
//! Chevalley–Eilenberg complex in internal degree `j` reads
//!
//! ```text
//! N_j  --d⁰-->  N_{j+s} ⊕ N_j  --d¹-->  N_{j+s}
//! d⁰(n)    = (D·n, E·n)
//! d¹(n, m) = D·m − E·n + s·n
//! ```
//!
//! with the first summand of `C¹` the value on `D` and the second the value on
//! `E`. For the coefficient modules `H^q(S,U)` each `N_i` is modelled at the
//! cochain level by a truncated Koszul space, so the whole complex is a complex
//! of subquotients (see [`crate::truncated`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hochschild::Koszul;
use crate::lifting::{build_lifting, Theta};
use crate::par::Exec;
use crate::ratmat::{rat, SparseMatrix, SubspaceBasis};
use crate::slices::{stabilize, StabilizationCertificate, Truncation};
use crate::truncated::{cohomology_at, Filtered, Layout};

/// Cochain model of an eulerian module around internal degree `j`:
/// `N_j` and `N_{j+s}` as filtered spaces with the `D` and `E` actions.
#[derive(Clone, Debug)]
pub struct EulerianModuleData {
    pub j: i64,
    pub s: i64,
    pub low: Filtered,
    pub high: Filtered,
    /// `D : N_j → N_{j+s}`.
    pub d: SparseMatrix,
    /// `E` on `N_j`.
    pub e_low: SparseMatrix,
    /// `E` on `N_{j+s}`.
    pub e_high: SparseMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Shortcut,
    FullComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrReport {
    pub j: i64,
    pub dims: [usize; 3],
    pub provenance: Provenance,
}

impl EulerianModuleData {
    /// `H^q(S,U)` at degrees `j`, `j+s`, truncated at `(n, slack)`, with the
    /// actions induced by the `D` and `E` liftings.
    pub fn from_hochschild(k: &Koszul, q: u32, j: i64, n: u32, slack: u32, exec: Exec) -> Result<Self> {
        let alg = k.algebra();
        let d = build_lifting(Theta::D, alg)?;
        let e = build_lifting(Theta::E, alg)?;
        let s = alg.d_deg() as i64;
        let (lo, hi) = exec.join(|| k.space(q, j, n, slack, exec), || k.space(q, j + s, n, slack, exec));
        let ((_, low), (_, high)) = (lo?, hi?);
        let big = n + slack;
        let dm = d.sharp_matrix(k, q, j, big, exec)?;
        let e_low = e.sharp_matrix(k, q, j, big, exec)?;
        let e_high = e.sharp_matrix(k, q, j + s, big, exec)?;
        Ok(Self {
            j,
            s,
            low,
            high,
            d: dm,
            e_low,
            e_high,
        })
    }

    /// A finite-dimensional eulerian module with `E` acting by degree.
    pub fn finite(j: i64, s: i64, d: SparseMatrix) -> Self {
        let full = |n: usize| Filtered::new(n, 0, SubspaceBasis::full(n), SubspaceBasis::empty(n));
        let (lo, hi) = (d.cols(), d.rows());
        Self {
            j,
            s,
            low: full(lo),
            high: full(hi),
            e_low: SparseMatrix::identity(lo).scaled(&rat(j)),
            e_high: SparseMatrix::identity(hi).scaled(&rat(j + s)),
            d,
        }
    }

    fn layouts(&self) -> [Layout; 3] {
        [
            Layout::new(&[&self.low]),
            Layout::new(&[&self.high, &self.low]),
            Layout::new(&[&self.high]),
        ]
    }

    /// `d⁰`, `d¹` in layout coordinates.
    fn differentials(&self, l: &[Layout; 3]) -> Result<(SparseMatrix, SparseMatrix)> {
        let d0 = Layout::block_matrix(&l[1], &l[0], &[(0, 0, &self.d), (1, 0, &self.e_low)])?;
        let shifted = SparseMatrix::identity(self.high.dim)
            .scaled(&rat(self.s))
            .sub(&self.e_high)?;
        let d1 = Layout::block_matrix(&l[2], &l[1], &[(0, 1, &self.d), (0, 0, &shifted)])?;
        Ok((d0, d1))
    }

    /// Dimensions of `H^p` of the full degree-`j` Chevalley–Eilenberg complex.
    pub fn ce_full_dims(&self) -> Result<LrReport> {
        let l = self.layouts();
        let (d0, d1) = self.differentials(&l)?;
        let c0 = l[0].sum(&[&self.low]);
        let c1 = l[1].sum(&[&self.high, &self.low]);
        let c2 = l[2].sum(&[&self.high]);
        let h0 = cohomology_at(None, &c0, Some((&d0, &c1)))?;
        let h1 = cohomology_at(Some((&c0, &d0)), &c1, Some((&d1, &c2)))?;
        let h2 = cohomology_at(Some((&c1, &d1)), &c2, None)?;
        Ok(LrReport {
            j: self.j,
            dims: [h0.dim(), h1.dim(), h2.dim()],
            provenance: Provenance::FullComplex,
        })
    }

    /// `(ker, ker + coker, coker)` of `D : N_0 → N_s`; valid in degree zero.
    pub fn lr_dims_shortcut(&self) -> Result<LrReport> {
        if self.j != 0 {
            return Err(Error::InvalidSpec("the shortcut applies in internal degree 0".into()));
        }
        let ker = cohomology_at(None, &self.low, Some((&self.d, &self.high)))?.dim();
        let coker = cohomology_at(Some((&self.low, &self.d)), &self.high, None)?.dim();
        Ok(LrReport {
            j: 0,
            dims: [ker, ker + coker, coker],
            provenance: Provenance::Shortcut,
        })
    }

    /// Contraction with `E`, `h(n, m) = m` and `h(p) = (−p, 0)`, satisfies
    /// `h d + d h = j·id` on every cochain of the model.
    pub fn euler_homotopy_check(&self) -> Result<bool> {
        if self.j == 0 {
            return Err(Error::InvalidSpec("the Euler homotopy is trivial in degree 0".into()));
        }
        let l = self.layouts();
        let (d0, d1) = self.differentials(&l)?;
        let id_low = SparseMatrix::identity(self.low.dim);
        let neg_high = SparseMatrix::identity(self.high.dim).scaled(&rat(-1));
        let h1 = Layout::block_matrix(&l[0], &l[1], &[(0, 1, &id_low)])?;
        let h2 = Layout::block_matrix(&l[1], &l[2], &[(0, 0, &neg_high)])?;
        let j = rat(self.j);
        let scalar = |n: usize| SparseMatrix::identity(n).scaled(&j);
        let on_c0 = h1.mul(&d0)?;
        let on_c1 = d0.mul(&h1)?.sub(&h2.mul(&d1)?.scaled(&rat(-1)))?;
        let on_c2 = d1.mul(&h2)?;
        Ok(on_c0 == scalar(l[0].dim()) && on_c1 == scalar(l[1].dim()) && on_c2 == scalar(l[2].dim()))
    }
}

/// Row `q` of the `E₂` page through the ker/coker shortcut, stabilized.
pub fn lr_row(k: &Koszul, q: u32, trunc: Truncation, exec: Exec) -> Result<(LrReport, StabilizationCertificate)> {
    stabilize(&format!("H_S(L, H^{q}(S,U))"), trunc, |n, s| {
        let r = EulerianModuleData::from_hochschild(k, q, 0, n, s, exec)?.lr_dims_shortcut()?;
        Ok((r.dims.to_vec(), r))
    })
}

/// Full Chevalley–Eilenberg cohomology of `H^q(S,U)` in degree `j`, stabilized.
pub fn ce_full_row(k: &Koszul, q: u32, j: i64, trunc: Truncation, exec: Exec) -> Result<(LrReport, StabilizationCertificate)> {
    stabilize(&format!("CE(L, H^{q}(S,U))_{j}"), trunc, |n, s| {
        let r = EulerianModuleData::from_hochschild(k, q, j, n, s, exec)?.ce_full_dims()?;
        Ok((r.dims.to_vec(), r))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::{Algebra, ArrangementSpec};

    #[test]
    fn zero_action_gives_direct_sums() {
        let m = EulerianModuleData::finite(0, 1, SparseMatrix::zero(3, 2));
        assert_eq!(m.ce_full_dims().unwrap().dims, [2, 5, 3]);
        assert_eq!(m.lr_dims_shortcut().unwrap().dims, [2, 5, 3]);
    }

    #[test]
    fn shortcut_matches_full_complex_on_finite_modules() {
        let d = SparseMatrix::from_i64(&[&[1, 0], &[0, 0], &[2, 0]]);
        let m = EulerianModuleData::finite(0, 1, d);
        let (a, b) = (m.ce_full_dims().unwrap(), m.lr_dims_shortcut().unwrap());
        assert_eq!(a.dims, b.dims);
        assert_eq!(a.dims, [1, 3, 2]);
    }

    #[test]
    fn nonzero_degrees_are_acyclic() {
        let d = SparseMatrix::from_i64(&[&[1, 3], &[0, 1]]);
        for j in [-2, -1, 1, 2] {
            let m = EulerianModuleData::finite(j, 2, d.clone());
            assert_eq!(m.ce_full_dims().unwrap().dims, [0, 0, 0]);
            assert!(m.euler_homotopy_check().unwrap());
        }
        assert!(EulerianModuleData::finite(0, 2, d).euler_homotopy_check().is_err());
    }

    #[test]
    fn bottom_row_for_three_lines() {
        let k = Koszul::new(Algebra::lines(ArrangementSpec::three_lines(rat(1)).unwrap()));
        let (r, _) = lr_row(&k, 0, Truncation::starting_at(2, 2), Exec::default()).unwrap();
        assert_eq!(r.dims, [1, 3, 2]);
        let m = EulerianModuleData::from_hochschild(&k, 0, 1, 3, 2, Exec::default()).unwrap();
        assert!(m.euler_homotopy_check().unwrap());
        assert_eq!(m.ce_full_dims().unwrap().dims, [0, 0, 0]);
    }
}
