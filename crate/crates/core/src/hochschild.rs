//! Hochschild cochains `Hom_{S^e}(K_•, U)` through the Koszul resolution.
//!
//! Two variables (line arrangements):
//!
//! ```text
//! δ⁰(u)           = [x,u] x̂ + [y,u] ŷ
//! δ¹(a x̂ + b ŷ)   = ([x,b] − [y,a]) x̂∧ŷ
//! ```
//!
//! One variable (`A_h`, `S = k[x]`): `δ(u) = [x,u] x̂`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::pbw::{Algebra, AlgebraKind, Gen, PbwElement};
use crate::ratmat::{image_basis, kernel_basis, SparseMatrix, SubspaceBasis, Subquotient};
use crate::slices::{
    map_matrix, stabilize, Cochain, ComplexId, SliceBasis, SliceKey, StabilizationCertificate, Truncation, Wedge,
};
use crate::truncated::Filtered;

pub type HochschildCochain = Cochain;

/// The Koszul cochain complex of `S` with coefficients in `U`.
#[derive(Clone, Debug)]
pub struct Koszul {
    alg: Algebra,
}

impl Koszul {
    pub fn new(alg: Algebra) -> Self {
        Self { alg }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn nvars(&self) -> u32 {
        match self.alg.kind() {
            AlgebraKind::Lines(_) => 2,
            AlgebraKind::Ah(_) => 1,
        }
    }

    pub fn complex_id(&self) -> ComplexId {
        match self.alg.kind() {
            AlgebraKind::Lines(_) => ComplexId::HochschildKoszul,
            AlgebraKind::Ah(_) => ComplexId::HochschildOneVar,
        }
    }

    /// `δ` on a `q`-cochain; zero past the top of the complex.
    pub fn delta(&self, q: u32, c: &Cochain) -> Cochain {
        let x = PbwElement::gen(Gen::X);
        let y = PbwElement::gen(Gen::Y);
        let a = &self.alg;
        match (self.nvars(), q) {
            (2, 0) => {
                let u = c.component(Wedge::ONE);
                Cochain::from_components([(Wedge::X, a.commutator(&x, &u)), (Wedge::Y, a.commutator(&y, &u))])
            }
            (2, 1) => {
                let (cx, cy) = (c.component(Wedge::X), c.component(Wedge::Y));
                Cochain::single(Wedge::XY, a.commutator(&x, &cy).sub(&a.commutator(&y, &cx)))
            }
            (1, 0) => Cochain::single(Wedge::X, a.commutator(&x, &c.component(Wedge::ONE))),
            _ => Cochain::zero(),
        }
    }

    pub fn is_cocycle(&self, q: u32, c: &Cochain) -> bool {
        self.delta(q, c).is_zero()
    }

    fn require_lines(&self) -> Result<()> {
        match self.alg.kind() {
            AlgebraKind::Lines(_) => Ok(()),
            AlgebraKind::Ah(_) => Err(Error::InvalidSpec(
                "E-truncated slabs exist only for line arrangements; A_h uses bidegree windows".into(),
            )),
        }
    }

    pub fn slab(&self, q: u32, degree: i64, level: u32) -> SliceBasis {
        SliceBasis::build(
            SliceKey {
                complex: self.complex_id(),
                q,
                degree,
                e_bound: level,
                slack: 0,
            },
            &self.alg,
        )
    }

    /// Matrix of `δ_q` from the level-`level` slab at `(q, degree)` to the
    /// slab at `(q+1, degree)` of the same level.
    pub fn delta_matrix(&self, q: u32, degree: i64, level: u32, exec: Exec) -> Result<(SliceBasis, SliceBasis, SparseMatrix)> {
        self.require_lines()?;
        let src = self.slab(q, degree, level);
        let tgt = self.slab(q + 1, degree, level);
        let m = map_matrix(&src, &tgt, exec, |c| self.delta(q, c))?;
        Ok((src, tgt, m))
    }

    /// Cocycles and boundaries of `(q, degree)` in the slab of level `n + slack`,
    /// with tail at level `n`.
    pub fn space(&self, q: u32, degree: i64, n: u32, slack: u32, exec: Exec) -> Result<(SliceBasis, Filtered)> {
        self.require_lines()?;
        let big = n + slack;
        let (basis, cocycles) = if q < self.nvars() {
            let (src, _, m) = self.delta_matrix(q, degree, big, exec)?;
            (src, kernel_basis(&m))
        } else {
            let b = self.slab(q, degree, big);
            let full = SubspaceBasis::full(b.dim());
            (b, full)
        };
        let boundaries = if q > 0 {
            let (_, _, m) = self.delta_matrix(q - 1, degree, big, exec)?;
            image_basis(&m)
        } else {
            SubspaceBasis::empty(basis.dim())
        };
        let offset = basis.offset_above(n);
        let dim = basis.dim();
        Ok((basis, Filtered::new(dim, offset, cocycles, boundaries)))
    }

    /// Truncated cohomology at a single `(N, σ)`.
    pub fn cohomology_at(&self, q: u32, degree: i64, n: u32, slack: u32, exec: Exec) -> Result<SliceCohomology> {
        let (basis, space) = self.space(q, degree, n, slack, exec)?;
        let sq = space.cohomology();
        Ok(SliceCohomology { basis, space, sq })
    }

    /// `H^q(S,U)_degree`, stabilized over the truncation level.
    pub fn cohomology(&self, q: u32, degree: i64, trunc: Truncation, exec: Exec) -> Result<CohomologyReport> {
        let what = format!("H^{q}(S,U)_{degree}");
        let (sc, certificate) = stabilize(&what, trunc, |n, s| {
            let sc = self.cohomology_at(q, degree, n, s, exec)?;
            Ok((vec![sc.dim()], sc))
        })?;
        let representatives = sc.representatives();
        for r in &representatives {
            if !self.is_cocycle(q, r) {
                return Err(Error::NotCocycle(format!("representative {r} of {what}")));
            }
        }
        Ok(CohomologyReport {
            q,
            degree,
            dim: sc.dim(),
            representatives,
            certificate,
            slice: sc,
        })
    }

    /// True iff no nonzero combination of the given cocycles is a coboundary.
    pub fn classes_independent(&self, q: u32, degree: i64, classes: &[Cochain], trunc: Truncation, exec: Exec) -> Result<bool> {
        for c in classes {
            if !self.is_cocycle(q, c) {
                return Err(Error::NotCocycle(c.to_string()));
            }
        }
        let n = classes
            .iter()
            .map(Cochain::e_truncation_degree)
            .max()
            .unwrap_or(0)
            .max(trunc.e_start);
        let sc = self.cohomology_at(q, degree, n, trunc.slack, exec)?;
        let mut span = SubspaceBasis::empty(sc.basis.dim());
        let b = sc.space.boundaries_tail();
        for c in classes {
            let v = sc.basis.to_vector(c)?;
            if !span.insert(b.reduce(&v))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Truncated cohomology of one slice together with its coordinate system.
#[derive(Clone, Debug)]
pub struct SliceCohomology {
    pub basis: SliceBasis,
    pub space: Filtered,
    pub sq: Subquotient,
}

impl SliceCohomology {
    pub fn dim(&self) -> usize {
        self.sq.dim()
    }

    pub fn representatives(&self) -> Vec<Cochain> {
        self.sq
            .representatives
            .vectors()
            .iter()
            .map(|v| self.basis.from_vector(v))
            .collect()
    }

    /// Coordinates of the class of `c` in the representative basis.
    pub fn class_coords(&self, c: &Cochain) -> Result<Option<Vec<crate::ratmat::Rational>>> {
        let v = self.basis.to_vector(c)?;
        self.sq.coords(&v)
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub q: u32,
    pub degree: i64,
    pub dim: usize,
    pub representatives: Vec<Cochain>,
    pub certificate: StabilizationCertificate,
    pub slice: SliceCohomology,
}

/// Serializable view of a [`CohomologyReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyDoc {
    pub q: u32,
    pub i: i64,
    pub dim: usize,
    pub representatives: Vec<String>,
    pub stabilization: StabilizationCertificate,
}

impl CohomologyReport {
    pub fn doc(&self) -> CohomologyDoc {
        CohomologyDoc {
            q: self.q,
            i: self.degree,
            dim: self.dim,
            representatives: self.representatives.iter().map(ToString::to_string).collect(),
            stabilization: self.certificate.clone(),
        }
    }
}
