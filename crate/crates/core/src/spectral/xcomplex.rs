//! The degree-zero complex `X• = (U ⊗ Λ• V_U^*)_0` for three lines, in
//! cohomological degrees 2 → 3 → 4, and the lower bound for `dim HH³(U)`.
//!
//! The differential on `u ⊗ x̂∧ŷ` has an `x̂∧ŷ∧D̂` term that is not available
//! here. Dropping the `x̂∧ŷ∧D̂` coordinate (the projection `π`) keeps every
//! other quantity computable, and since `π` is linear,
//! `dim π(ker d³) − dim π(im d²)` bounds `dim HH³` from below.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::pbw::{Algebra, Gen, PbwElement};
use crate::ratmat::{image_basis, kernel_basis, rat, Rational, SparseMatrix, SparseVec, Subquotient, SubspaceBasis};
use crate::slices::{
    map_matrix, stabilize, tail_intersection, Cochain, ComplexId, SliceBasis, SliceKey, StabilizationCertificate,
    Truncation, Wedge,
};

/// A cochain of `X•`; labels are wedges of `x̂, ŷ, D̂, Ê`.
pub type XCochain = Cochain;

pub const XY: Wedge = Wedge(0b0011);
pub const XE: Wedge = Wedge(0b1001);
pub const YE: Wedge = Wedge(0b1010);
pub const XD: Wedge = Wedge(0b0101);
pub const YD: Wedge = Wedge(0b0110);
pub const DE: Wedge = Wedge(0b1100);
pub const XYD: Wedge = Wedge(0b0111);
pub const XYE: Wedge = Wedge(0b1011);
pub const XDE: Wedge = Wedge(0b1101);
pub const YDE: Wedge = Wedge(0b1110);
pub const XYDE: Wedge = Wedge(0b1111);

/// `X•` for `F = y(y + t x)`.
#[derive(Clone, Debug)]
pub struct XComplex {
    alg: Algebra,
    t: Rational,
}

impl XComplex {
    pub fn new(alg: Algebra) -> Result<Self> {
        let t = match alg.arrangement() {
            Some(s) if s.line_count() == 3 => s.slopes()[1].clone(),
            _ => return Err(Error::InvalidSpec("the X complex is implemented for three lines".into())),
        };
        Ok(Self { alg, t })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    fn br(&self, g: Gen, u: &PbwElement) -> PbwElement {
        self.alg.commutator(&PbwElement::gen(g), u)
    }

    /// `(t x + 2y) u`.
    fn fy_times(&self, u: &PbwElement) -> PbwElement {
        let fy = PbwElement::gen(Gen::X).scale(&self.t).add(&PbwElement::gen(Gen::Y).scale(&rat(2)));
        self.alg.multiply(&fy, u)
    }

    /// `[E, u] − k u`.
    fn euler_shift(&self, u: &PbwElement, k: i64) -> PbwElement {
        self.br(Gen::E, u).sub(&u.scale(&rat(k)))
    }

    /// `d²` followed by `π`; exact on the five `x̂∧ŷ`-free labels.
    pub fn d2_projected(&self, c: &XCochain) -> XCochain {
        let mut out = XCochain::zero();
        for (w, u) in c.components() {
            match *w {
                XY => out.add_component(XYE, &self.euler_shift(u, 2)),
                _ => {
                    for (w2, v) in self.d2_free(*w, u).components() {
                        if *w2 != XYD {
                            out.add_component(*w2, v);
                        }
                    }
                }
            }
        }
        out
    }

    /// `d²(u ⊗ w)` for an `x̂∧ŷ`-free label `w`.
    pub fn d2_free(&self, w: Wedge, u: &PbwElement) -> XCochain {
        let neg = rat(-1);
        let mut out = XCochain::zero();
        match w {
            XE => {
                out.add_component_scaled(XYE, &self.br(Gen::Y, u), &neg);
                out.add_component_scaled(XDE, &self.br(Gen::D, u), &neg);
                let uy = self.alg.multiply(u, &PbwElement::gen(Gen::Y));
                out.add_component_scaled(YDE, &uy, &self.t);
            }
            YE => {
                out.add_component(XYE, &self.br(Gen::X, u));
                let v = self.fy_times(u).sub(&self.br(Gen::Y, u)).sub(&self.br(Gen::D, u));
                out.add_component(YDE, &v);
            }
            XD => {
                out.add_component_scaled(XYD, &self.br(Gen::Y, u), &neg);
                out.add_component(XDE, &self.euler_shift(u, 2));
            }
            YD => {
                out.add_component(XYD, &self.br(Gen::X, u));
                out.add_component(YDE, &self.euler_shift(u, 2));
            }
            DE => {
                out.add_component(XDE, &self.br(Gen::X, u));
                out.add_component(YDE, &self.br(Gen::Y, u));
            }
            _ => {}
        }
        out
    }

    /// `d³ : X³ → X⁴`.
    pub fn d3(&self, c: &XCochain) -> XCochain {
        let mut top = PbwElement::zero();
        for (w, u) in c.components() {
            let v = match *w {
                XYD => self.euler_shift(u, 3).neg(),
                XYE => self.br(Gen::D, u).sub(&self.fy_times(u)).add(&self.br(Gen::Y, u)),
                XDE => self.br(Gen::Y, u).neg(),
                YDE => self.br(Gen::X, u),
                _ => PbwElement::zero(),
            };
            top = top.add(&v);
        }
        XCochain::single(XYDE, top)
    }

    pub fn slab(&self, q: u32, level: u32) -> SliceBasis {
        SliceBasis::build(
            SliceKey {
                complex: ComplexId::XComplex,
                q,
                degree: 0,
                e_bound: level,
                slack: 0,
            },
            &self.alg,
        )
    }

    /// `d³∘d² = 0` on every `x̂∧ŷ`-free basis element of the level-`level` slab.
    pub fn d3_d2_vanishes(&self, level: u32) -> bool {
        let b = self.slab(2, level);
        b.monomials().iter().filter(|(_, w)| *w != XY).all(|&(m, w)| {
            let u = PbwElement::mono(m, Rational::from_integer(1.into()));
            self.d3(&self.d2_free(w, &u)).is_zero()
        })
    }

    /// The printed cocycles `ω₂, ω₃, ω₄`.
    pub fn printed_omegas(&self) -> Result<Vec<XCochain>> {
        let a = &self.alg;
        let t = &self.t;
        // t (2yDE + F E + y²(E − E²)) with F = y² + t x y
        let w2_yde = a
            .parse("2 y D E + 2 y^2 E - y^2 E^2")?
            .add(&a.parse("x y E")?.scale(t))
            .scale(t);
        Ok(vec![
            XCochain::from_components([(XDE, a.parse("D^2 - 2 y D E + y^2 E^2 - y^2 E")?), (YDE, w2_yde)]),
            XCochain::single(YDE, a.parse("D^2")?),
            XCochain::single(YDE, a.parse("x D")?),
        ])
    }

    /// A cocycle with `x̂∧ŷ∧Ê`-component exactly `D²`, found by solving
    /// `d³ = 0` in the smallest slab (from `start` up) where it exists.
    pub fn corrected_omega1(&self, start: u32, exec: Exec) -> Result<XCochain> {
        let seed = XCochain::single(XYE, self.alg.parse("D^2")?);
        for level in start..=start + 8 {
            let src = self.slab(3, level);
            let tgt = self.slab(4, level);
            let free: Vec<usize> = (0..src.dim()).filter(|&i| src.monomials()[i].1 != XYE).collect();
            let m = map_matrix(&src, &tgt, exec, |c| self.d3(c))?;
            let mut cols: Vec<SparseVec> = free.iter().map(|&i| m.column(i).clone()).collect();
            cols.push(tgt.to_vector(&self.d3(&seed))?);
            let sys = SparseMatrix::from_columns(tgt.dim(), cols)?;
            let last = free.len();
            let ker = kernel_basis(&sys);
            if let Some(k) = ker.vectors().iter().find(|v| v.get(last).is_some()) {
                let lead = k.get(last).expect("checked").clone();
                let mut c = seed.clone();
                for (j, x) in k.iter() {
                    if j < last {
                        c = c.add(&src.element(free[j]).scale(&(x / &lead)));
                    }
                }
                debug_assert!(self.d3(&c).is_zero());
                return Ok(c);
            }
        }
        Err(Error::NotCocycle("no cocycle with x̂∧ŷ∧Ê-component D² in the searched slabs".into()))
    }

    fn project(&self, b: &SliceBasis, v: &SparseVec) -> SparseVec {
        v.remap(|i| (b.monomials()[i].1 != XYD).then_some(i))
    }

    /// `π(Z_tail)` and `π(im d²)_tail` at `(n, slack)`.
    fn projected_spaces(&self, n: u32, slack: u32, exec: Exec) -> Result<(SliceBasis, Vec<SparseVec>, SubspaceBasis)> {
        let big = n + slack;
        let (x2, x3, x4) = (self.slab(2, big), self.slab(3, big), self.slab(4, big));
        let (m2, m3) = exec.join(
            || map_matrix(&x2, &x3, exec, |c| self.d2_projected(c)),
            || map_matrix(&x3, &x4, exec, |c| self.d3(c)),
        );
        let (m2, m3) = (m2?, m3?);
        let offset = x3.offset_above(n);
        let z_tail = tail_intersection(&kernel_basis(&m3), offset);
        let numerator: Vec<SparseVec> = z_tail.iter().map(|z| self.project(&x3, z)).collect();
        let b = image_basis(&m2);
        let den = SubspaceBasis::from_vectors(x3.dim(), tail_intersection(&b, offset))?;
        Ok((x3, numerator, den))
    }

    /// Truncated `dim π(ker d³) − dim π(im d²)` at a single `(n, slack)`.
    pub fn hh3_bound_at(&self, n: u32, slack: u32, exec: Exec) -> Result<usize> {
        let (_, num, den) = self.projected_spaces(n, slack, exec)?;
        Ok(Subquotient::new(num, den)?.dim())
    }

    /// Whether the classes of `cs` stay independent after `π`, modulo `π(im d²)`.
    pub fn independent_mod_boundaries(&self, cs: &[XCochain], slack: u32, exec: Exec) -> Result<bool> {
        let n = cs.iter().map(Cochain::e_truncation_degree).max().unwrap_or(0);
        let (x3, _, den) = self.projected_spaces(n, slack, exec)?;
        let mut span = SubspaceBasis::empty(x3.dim());
        for c in cs {
            if !self.d3(c).is_zero() {
                return Err(Error::NotCocycle(c.to_string()));
            }
            let v = self.project(&x3, &x3.to_vector(c)?);
            if !span.insert(den.reduce(&v))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hh3Report {
    pub lower_bound: usize,
    pub certificate: StabilizationCertificate,
    /// `d³∘d² = 0` on the `x̂∧ŷ`-free generators.
    pub d3_d2_vanishes: bool,
    /// `ω₂, ω₃, ω₄` are cocycles.
    pub printed_cocycles: bool,
    pub omega1: String,
    /// `ω₁, …, ω₄` independent modulo coboundaries after `π`.
    pub omegas_independent: bool,
}

/// Stabilized lower bound for `dim HH³(U)` with its supporting checks.
pub fn hh3_lower_bound(alg: &Algebra, trunc: Truncation, exec: Exec) -> Result<Hh3Report> {
    let x = XComplex::new(alg.clone())?;
    let (lower_bound, certificate) = stabilize("π-projected HH³ bound", trunc, |n, s| {
        let d = x.hh3_bound_at(n, s, exec)?;
        Ok((vec![d], d))
    })?;
    let printed = x.printed_omegas()?;
    let printed_cocycles = printed.iter().all(|c| x.d3(c).is_zero());
    let omega1 = x.corrected_omega1(2, exec)?;
    let mut all = vec![omega1.clone()];
    all.extend(printed);
    let omegas_independent = printed_cocycles && x.independent_mod_boundaries(&all, trunc.slack, exec)?;
    Ok(Hh3Report {
        lower_bound,
        certificate,
        d3_d2_vanishes: x.d3_d2_vanishes(trunc.e_start.min(4)),
        printed_cocycles,
        omega1: omega1.to_string(),
        omegas_independent,
    })
}
