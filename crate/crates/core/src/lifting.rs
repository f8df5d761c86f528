//! Liftings of derivations to the Koszul resolution and the induced action on
//! Hochschild cohomology.
//!
//! The resolution is `P_q = S^e ⊗ Λ^q W` with `b(1|1⊗x_i) = x_i|1 − 1|x_i` and
//! `b(1|1⊗x∧y) = b(x)⊗y − b(y)⊗x`. For a derivation `θ` of `S` the lifting is
//!
//! ```text
//! θ₀ = θ^e
//! θ₁(1|1⊗x_i)  = Σ_j Δ_j(θ x_i) ⊗ x_j
//! θ₂(1|1⊗x∧y)  = (Δ_x(θ x) + Δ_y(θ y)) ⊗ x∧y
//! ```
//!
//! and on a `q`-cochain `φ` the sharp operator is
//! `θ^♯(φ)(w) = [θ, φ(w)] − Σ_j B_j · φ(w_j)` where `θ_q(1|1⊗w) = Σ_j B_j ⊗ w_j`
//! and `(s|t)·u = s u t`.

use std::collections::BTreeMap;

use num::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hochschild::{CohomologyReport, Koszul, SliceCohomology};
use crate::par::Exec;
use crate::pbw::{Algebra, AlgebraKind, BiTensor, Gen, PbwElement};
use crate::poly::{Exp2, Poly};
use crate::ratmat::{rat, Rational, SparseMatrix, SparseVec, Subquotient, SubspaceBasis};
use crate::slices::{map_matrix, stabilize, Cochain, StabilizationCertificate, Truncation, Wedge};
use crate::truncated::{cohomology_at, Filtered};

/// `(Δ_x g, Δ_y g)` with `g⊗1 − 1⊗g = Δ_x·(x|1 − 1|x) + Δ_y·(y|1 − 1|y)`,
/// expanding `x^a y^b` with the `x`-factor first.
pub fn difference_quotients(g: &Poly) -> (BiTensor, BiTensor) {
    let mut dx = BiTensor::zero();
    let mut dy = BiTensor::zero();
    for ((a, b), c) in g.terms() {
        for j in 0..a {
            dx.add_term((j, 0), (a - 1 - j, b), c.clone());
        }
        for j in 0..b {
            dy.add_term((a, j), (0, b - 1 - j), c.clone());
        }
    }
    (dx, dy)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theta {
    /// `D = F ∂_y`.
    D,
    /// Euler derivation `E = x∂_x + y∂_y`.
    E,
    /// `y ∈ A_h`, acting on `k[x]` by `h ∂_x`.
    AhY,
}

impl Theta {
    pub fn element(self) -> PbwElement {
        match self {
            Theta::D => PbwElement::gen(Gen::D),
            Theta::E => PbwElement::gen(Gen::E),
            Theta::AhY => PbwElement::gen(Gen::Y),
        }
    }

    /// Internal degree of `θ` (shift of `∇_θ`).
    pub fn degree(self, alg: &Algebra) -> i64 {
        match self {
            Theta::D => alg.d_deg() as i64,
            Theta::E | Theta::AhY => 0,
        }
    }
}

/// Element of `S^e ⊗ Λ^q W`: one bitensor per exterior label.
pub type KoszulChain = BTreeMap<Wedge, BiTensor>;

fn chain_add(acc: &mut KoszulChain, w: Wedge, t: &BiTensor) {
    let slot = acc.entry(w).or_default();
    *slot = slot.add(t);
    if slot.is_zero() {
        acc.remove(&w);
    }
}

#[derive(Clone, Debug)]
pub struct LiftingData {
    pub theta: Theta,
    nvars: u32,
    /// `θ(x_i)` for the variables of `S`.
    values: Vec<Poly>,
    /// `θ₁(1|1⊗x_i)` for each variable label.
    pub theta1: BTreeMap<Wedge, KoszulChain>,
    /// Coefficient of `x∧y` in `θ₂(1|1⊗x∧y)` (two variables only).
    pub theta2: Option<BiTensor>,
}

fn var_labels(nvars: u32) -> Vec<Wedge> {
    if nvars == 2 {
        vec![Wedge::X, Wedge::Y]
    } else {
        vec![Wedge::X]
    }
}

fn var_exp(w: Wedge) -> Exp2 {
    if w == Wedge::X {
        (1, 0)
    } else {
        (0, 1)
    }
}

/// `x_i|1 − 1|x_i`.
fn koszul_b1(w: Wedge) -> BiTensor {
    let mut t = BiTensor::zero();
    t.add_term(var_exp(w), (0, 0), Rational::one());
    t.add_term((0, 0), var_exp(w), -Rational::one());
    t
}

pub fn build_lifting(theta: Theta, alg: &Algebra) -> Result<LiftingData> {
    let (nvars, values) = match (theta, alg.kind()) {
        (Theta::D, AlgebraKind::Lines(s)) => (2, vec![Poly::zero(), s.f().clone()]),
        (Theta::E, AlgebraKind::Lines(_)) => (2, vec![Poly::x(), Poly::y()]),
        (Theta::AhY, AlgebraKind::Ah(s)) => (1, vec![s.h().to_poly()]),
        _ => {
            return Err(Error::InvalidSpec(format!("{theta:?} does not act on this algebra")));
        }
    };
    let labels = var_labels(nvars);
    let mut theta1 = BTreeMap::new();
    for (w, v) in labels.iter().zip(&values) {
        let (dx, dy) = difference_quotients(v);
        let mut chain = KoszulChain::new();
        chain_add(&mut chain, Wedge::X, &dx);
        if nvars == 2 {
            chain_add(&mut chain, Wedge::Y, &dy);
        }
        theta1.insert(*w, chain);
    }
    let theta2 = (nvars == 2).then(|| {
        let (dxx, _) = difference_quotients(&values[0]);
        let (_, dyy) = difference_quotients(&values[1]);
        dxx.add(&dyy)
    });
    let data = LiftingData {
        theta,
        nvars,
        values,
        theta1,
        theta2,
    };
    data.check_chain_identity()?;
    Ok(data)
}

impl LiftingData {
    /// `θ` on a monomial of `S`.
    fn theta_mono(&self, e: Exp2) -> Poly {
        let mut out = Poly::zero();
        if e.0 > 0 {
            out = &out + &(&self.values[0] * &Poly::monomial(e.0 - 1, e.1, rat(e.0 as i64)));
        }
        if e.1 > 0 && self.nvars == 2 {
            out = &out + &(&self.values[1] * &Poly::monomial(e.0, e.1 - 1, rat(e.1 as i64)));
        }
        out
    }

    /// `θ^e(l|r) = θ(l)|r + l|θ(r)`.
    fn theta_e(&self, t: &BiTensor) -> BiTensor {
        let mut out = BiTensor::zero();
        for (l, r, c) in t.terms() {
            let lp = Poly::monomial(l.0, l.1, c.clone());
            let rp = Poly::monomial(r.0, r.1, Rational::one());
            out = out
                .add(&BiTensor::pure(&self.theta_mono(l).scale(c), &rp))
                .add(&BiTensor::pure(&lp, &self.theta_mono(r)));
        }
        out
    }

    /// `θ₁` extended as a `θ^e`-operator to `S^e ⊗ W`.
    fn theta1_apply(&self, chain: &KoszulChain) -> KoszulChain {
        let mut out = KoszulChain::new();
        for (w, s) in chain {
            chain_add(&mut out, *w, &self.theta_e(s));
            if let Some(img) = self.theta1.get(w) {
                for (w2, t) in img {
                    chain_add(&mut out, *w2, &s.mul(t));
                }
            }
        }
        out
    }

    /// `b` on `S^e ⊗ W`.
    fn b1(chain: &KoszulChain) -> BiTensor {
        chain
            .iter()
            .fold(BiTensor::zero(), |acc, (w, s)| acc.add(&s.mul(&koszul_b1(*w))))
    }

    /// Verifies `ε∘θ₀ = θ∘ε` on the monomials of `θ`'s values and
    /// `b∘θ_q = θ_{q−1}∘b` on the resolution generators.
    pub fn check_chain_identity(&self) -> Result<()> {
        let labels = var_labels(self.nvars);
        for w in &labels {
            let lhs = Self::b1(&self.theta1[w]);
            let rhs = self.theta_e(&koszul_b1(*w));
            if lhs != rhs {
                return Err(Error::ChainIdentity(format!("degree 1 at {w}: {lhs:?} ≠ {rhs:?}")));
            }
        }
        for v in &self.values {
            for (e, _) in v.terms() {
                let t = BiTensor::pure(&Poly::monomial(e.0, e.1, Rational::one()), &Poly::one());
                if self.theta_e(&t).collapse() != self.theta_mono(e) {
                    return Err(Error::ChainIdentity("augmentation".into()));
                }
            }
        }
        if let Some(t2) = &self.theta2 {
            // b(x∧y) = b(x)⊗y − b(y)⊗x
            let mut bxy = KoszulChain::new();
            chain_add(&mut bxy, Wedge::Y, &koszul_b1(Wedge::X));
            chain_add(&mut bxy, Wedge::X, &koszul_b1(Wedge::Y).scale(&-Rational::one()));
            let rhs = self.theta1_apply(&bxy);
            let mut lhs = KoszulChain::new();
            for (w, s) in &bxy {
                chain_add(&mut lhs, *w, &t2.mul(s));
            }
            if lhs != rhs {
                return Err(Error::ChainIdentity(format!("degree 2: {lhs:?} ≠ {rhs:?}")));
            }
        }
        Ok(())
    }

    /// Copy with `θ₂` (or `θ₁` in one variable) perturbed by `1|1`, bypassing
    /// the chain check — a negative control for [`chain_map_check`].
    pub fn corrupted(&self) -> LiftingData {
        let mut bad = self.clone();
        match &mut bad.theta2 {
            Some(t2) => *t2 = t2.add(&BiTensor::one()),
            None => {
                let c = bad.theta1.get_mut(&Wedge::X).expect("x label");
                chain_add(c, Wedge::X, &BiTensor::one());
            }
        }
        bad
    }

    /// `θ^♯` on a `q`-cochain.
    pub fn sharp(&self, alg: &Algebra, q: u32, c: &Cochain) -> Cochain {
        let th = self.theta.element();
        let mut out = Cochain::zero();
        for (w, u) in c.components() {
            out.add_component(*w, &alg.commutator(&th, u));
        }
        match q {
            0 => {}
            1 => {
                for (wi, img) in &self.theta1 {
                    for (wj, b) in img {
                        let phi = c.component(*wj);
                        if !phi.is_zero() {
                            out.add_component_scaled(*wi, &alg.bimodule_eval(b, &phi), &-Rational::one());
                        }
                    }
                }
            }
            2 => {
                if let Some(t2) = &self.theta2 {
                    let phi = c.component(Wedge::XY);
                    if !phi.is_zero() {
                        out.add_component_scaled(Wedge::XY, &alg.bimodule_eval(t2, &phi), &-Rational::one());
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Matrix of `θ^♯` between the level-`level` slabs of `(q, i)` and `(q, i + deg θ)`.
    pub fn sharp_matrix(&self, k: &Koszul, q: u32, i: i64, level: u32, exec: Exec) -> Result<SparseMatrix> {
        let src = k.slab(q, i, level);
        let tgt = k.slab(q, i + self.theta.degree(k.algebra()), level);
        map_matrix(&src, &tgt, exec, |c| self.sharp(k.algebra(), q, c))
    }
}

/// `δ∘θ^♯ = θ^♯∘δ` on every basis element of the `(q, i)` slab at `level`.
pub fn chain_map_check(k: &Koszul, lift: &LiftingData, q: u32, i: i64, level: u32) -> bool {
    let alg = k.algebra();
    let b = k.slab(q, i, level);
    (0..b.dim()).all(|j| {
        let c = b.element(j);
        k.delta(q, &lift.sharp(alg, q, &c)) == lift.sharp(alg, q + 1, &k.delta(q, &c))
    })
}

/// The induced map on cohomology in representative coordinates.
#[derive(Clone, Debug)]
pub struct NablaMatrix {
    pub theta: Theta,
    pub q: u32,
    pub source_degree: i64,
    pub target_degree: i64,
    pub level: u32,
    pub slack: u32,
    pub matrix: SparseMatrix,
    pub source: SliceCohomology,
    pub target: SliceCohomology,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NablaDoc {
    pub theta: Theta,
    pub q: u32,
    pub source_degree: i64,
    pub target_degree: i64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl NablaMatrix {
    pub fn rank(&self) -> usize {
        crate::ratmat::rank(&self.matrix)
    }

    pub fn kernel_dim(&self) -> usize {
        self.matrix.cols() - self.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.matrix.rows() - self.rank()
    }

    pub fn doc(&self) -> NablaDoc {
        NablaDoc {
            theta: self.theta,
            q: self.q,
            source_degree: self.source_degree,
            target_degree: self.target_degree,
            rows: self.matrix.rows(),
            cols: self.matrix.cols(),
            entries: (0..self.matrix.rows())
                .map(|r| {
                    (0..self.matrix.cols())
                        .map(|c| crate::ratmat::format_rational(&self.matrix.get(r, c)))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Maximum number of `(N+2, σ+2)` retries when a column fails membership.
pub const NABLA_RETRIES: u32 = 3;

/// `∇_θ^q : H^q_i → H^q_{i+deg θ}`, both sides finite dimensional.
/// Starts at the larger of the two stabilized levels.
pub fn nabla(k: &Koszul, lift: &LiftingData, q: u32, i: i64, trunc: Truncation, exec: Exec) -> Result<NablaMatrix> {
    let j = i + lift.theta.degree(k.algebra());
    let src: CohomologyReport = k.cohomology(q, i, trunc, exec)?;
    let tgt: CohomologyReport = k.cohomology(q, j, trunc, exec)?;
    let mut n = src
        .certificate
        .reported_n
        .unwrap_or(trunc.e_start)
        .max(tgt.certificate.reported_n.unwrap_or(trunc.e_start));
    let mut slack = trunc.slack;
    let mut last_err = None;
    for _ in 0..=NABLA_RETRIES {
        match nabla_at(k, lift, q, i, n, slack, exec) {
            Ok(m) if m.source.dim() == src.dim && m.target.dim() == tgt.dim => return Ok(m),
            Ok(m) => {
                last_err = Some(Error::MembershipFailed(format!(
                    "dims changed at N={n}: {}→{}",
                    m.source.dim(),
                    m.target.dim()
                )))
            }
            Err(e @ Error::MembershipFailed(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        n += 2;
        slack += 2;
    }
    Err(last_err.unwrap_or_else(|| Error::MembershipFailed("nabla".into())))
}

/// `∇_θ^q` at a fixed truncation.
pub fn nabla_at(k: &Koszul, lift: &LiftingData, q: u32, i: i64, n: u32, slack: u32, exec: Exec) -> Result<NablaMatrix> {
    let alg = k.algebra();
    let j = i + lift.theta.degree(alg);
    let (source, target) = exec.join(
        || k.cohomology_at(q, i, n, slack, exec),
        || k.cohomology_at(q, j, n, slack, exec),
    );
    let (source, target) = (source?, target?);
    let reps = source.representatives();
    let cols = exec.try_map(&reps, |r| {
        let img = lift.sharp(alg, q, r);
        let coords = target
            .class_coords(&img)?
            .ok_or_else(|| Error::MembershipFailed(format!("∇ of {r} at N={n}")))?;
        Ok::<_, Error>(SparseVec::from_dense(&coords))
    })?;
    let matrix = SparseMatrix::from_columns(target.dim(), cols)?;
    Ok(NablaMatrix {
        theta: lift.theta,
        q,
        source_degree: i,
        target_degree: j,
        level: n,
        slack,
        matrix,
        source,
        target,
    })
}

/// `∇_E∘∇_D − ∇_D∘∇_E = (ℓ−2)∇_D` on `H^q_i`, checked on matrices.
pub fn lie_morphism_check(k: &Koszul, q: u32, i: i64, trunc: Truncation, exec: Exec) -> Result<bool> {
    let alg = k.algebra();
    let d = build_lifting(Theta::D, alg)?;
    let e = build_lifting(Theta::E, alg)?;
    let nd = nabla(k, &d, q, i, trunc, exec)?;
    let (n, s) = (nd.level, nd.slack);
    let ne_src = nabla_at(k, &e, q, i, n, s, exec)?;
    let ne_tgt = nabla_at(k, &e, q, i + d.theta.degree(alg), n, s, exec)?;
    let lhs = ne_tgt.matrix.mul(&nd.matrix)?.sub(&nd.matrix.mul(&ne_src.matrix)?)?;
    Ok(lhs == nd.matrix.scaled(&rat(alg.d_deg() as i64)))
}

/// Kernel and cokernel of `∇_θ^q : H^q_i → H^q_{i + deg θ}` computed at the
/// cochain level, valid even when the cohomology slices are infinite.
#[derive(Clone, Debug)]
pub struct NablaKerCoker {
    pub kernel: Subquotient,
    pub cokernel: Subquotient,
    pub source_basis: crate::slices::SliceBasis,
    pub target_basis: crate::slices::SliceBasis,
    pub source: Filtered,
    pub target: Filtered,
    pub sharp: SparseMatrix,
}

impl NablaKerCoker {
    pub fn dims(&self) -> (usize, usize) {
        (self.kernel.dim(), self.cokernel.dim())
    }

    /// Whether the classes of the given target cocycles are independent in the cokernel.
    pub fn cokernel_independent(&self, cs: &[Cochain]) -> Result<bool> {
        let mut span = SubspaceBasis::empty(self.target.dim);
        for c in cs {
            let v = self.target_basis.to_vector(c)?;
            let rem = self.cokernel.denominator.reduce(&v);
            if !span.insert(rem)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn nabla_ker_coker_at(k: &Koszul, lift: &LiftingData, q: u32, i: i64, n: u32, slack: u32, exec: Exec) -> Result<NablaKerCoker> {
    let j = i + lift.theta.degree(k.algebra());
    let (a, b) = exec.join(
        || k.space(q, i, n, slack, exec),
        || k.space(q, j, n, slack, exec),
    );
    let ((source_basis, source), (target_basis, target)) = (a?, b?);
    let sharp = lift.sharp_matrix(k, q, i, n + slack, exec)?;
    let kernel = cohomology_at(None, &source, Some((&sharp, &target)))?;
    let cokernel = cohomology_at(Some((&source, &sharp)), &target, None)?;
    Ok(NablaKerCoker {
        kernel,
        cokernel,
        source_basis,
        target_basis,
        source,
        target,
        sharp,
    })
}

/// Stabilized `(dim ker, dim coker)` of `∇_θ^q` on degree `i`.
pub fn nabla_ker_coker(
    k: &Koszul,
    lift: &LiftingData,
    q: u32,
    i: i64,
    trunc: Truncation,
    exec: Exec,
) -> Result<(NablaKerCoker, StabilizationCertificate)> {
    let what = format!("ker/coker of ∇_{:?} on H^{q}_{i}", lift.theta);
    stabilize(&what, trunc, |n, s| {
        let kc = nabla_ker_coker_at(k, lift, q, i, n, s, exec)?;
        let (a, b) = kc.dims();
        Ok((vec![a, b], kc))
    })
}

/// `θ^♯(c) = i·c` for the Euler lifting on every basis element of the slab.
pub fn euler_eigen_check(k: &Koszul, q: u32, i: i64, level: u32) -> Result<bool> {
    let alg = k.algebra();
    let e = build_lifting(Theta::E, alg)?;
    let b = k.slab(q, i, level);
    let s = rat(i);
    Ok((0..b.dim()).all(|j| {
        let c = b.element(j);
        e.sharp(alg, q, &c) == c.scale(&s)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::{AhSpec, ArrangementSpec};
    use crate::poly::UPoly;

    fn three(t: i64) -> Algebra {
        Algebra::lines(ArrangementSpec::three_lines(rat(t)).unwrap())
    }

    #[test]
    fn difference_quotient_examples() {
        let (dx, dy) = difference_quotients(&Poly::x());
        assert_eq!(dx, BiTensor::one());
        assert!(dy.is_zero());
        let (dx, dy) = difference_quotients(&Poly::parse("y^2").unwrap());
        assert!(dx.is_zero());
        assert_eq!(dy, BiTensor::pure(&Poly::y(), &Poly::one()).add(&BiTensor::pure(&Poly::one(), &Poly::y())));
        let t = rat(5);
        let f = Poly::parse("y^2 + 5 x y").unwrap();
        let (dx, dy) = difference_quotients(&f);
        assert_eq!(dx, BiTensor::pure(&Poly::one(), &Poly::y()).scale(&t));
        let expect = BiTensor::pure(&Poly::y(), &Poly::one())
            .add(&BiTensor::pure(&Poly::one(), &Poly::y()))
            .add(&BiTensor::pure(&Poly::x(), &Poly::one()).scale(&t));
        assert_eq!(dy, expect);
    }

    #[test]
    fn liftings_pass_chain_identity() {
        for l in 3..=6 {
            let a = Algebra::lines(ArrangementSpec::generic(l).unwrap());
            build_lifting(Theta::D, &a).unwrap();
            build_lifting(Theta::E, &a).unwrap();
        }
        let a = Algebra::ah(AhSpec::new(UPoly::x_pow(2)).unwrap());
        let y = build_lifting(Theta::AhY, &a).unwrap();
        let expect = BiTensor::pure(&Poly::x(), &Poly::one()).add(&BiTensor::pure(&Poly::one(), &Poly::x()));
        assert_eq!(y.theta1[&Wedge::X][&Wedge::X], expect);
        assert!(build_lifting(Theta::AhY, &three(1)).is_err());
    }

    #[test]
    fn corrupted_lifting_fails_chain_identity() {
        let a = three(1);
        let d = build_lifting(Theta::D, &a).unwrap();
        assert!(d.corrupted().check_chain_identity().is_err());
    }

    #[test]
    fn euler_lifting_scales_by_q() {
        let e = build_lifting(Theta::E, &three(1)).unwrap();
        assert_eq!(e.theta1[&Wedge::X][&Wedge::X], BiTensor::one());
        assert_eq!(e.theta1[&Wedge::Y][&Wedge::Y], BiTensor::one());
        assert_eq!(e.theta2.as_ref().unwrap(), &BiTensor::one().scale(&rat(2)));
    }

    #[test]
    fn sharp_examples() {
        let a = three(1);
        let d = build_lifting(Theta::D, &a).unwrap();
        let s = Cochain::single(Wedge::ONE, a.parse("x y^2").unwrap());
        // [D, s] = F ∂_y s
        let expect = Cochain::single(Wedge::ONE, a.parse("2 x y^3 + 2 x^2 y^2").unwrap());
        assert_eq!(d.sharp(&a, 0, &s), expect);
        let dy = Cochain::single(Wedge::Y, a.parse("D").unwrap());
        // −(F_y D + F) ŷ with F_y = 2y + x
        let expect = Cochain::single(Wedge::Y, a.parse("-2 y D - x D - y^2 - x y").unwrap());
        assert_eq!(d.sharp(&a, 1, &dy), expect);
    }
}
