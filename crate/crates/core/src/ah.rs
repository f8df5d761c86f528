//! Hochschild cohomology of `A_h = k⟨x, y⟩/(yx − xy − h(x))`.
//!
//! With `S = k[x]` and `L = S·y`, the one-variable Koszul complex gives
//! `H⁰(S, A_h) = S` and `H¹(S, A_h) = A_h / h A_h`; the derivation `y` acts by
//! `∇⁰(s) = h s'` and `∇¹(ū) = −h' u mod h A_h`. Since `L` has rank one the
//! spectral sequence has two columns and
//!
//! ```text
//! HH⁰ = ker ∇⁰,   HH¹ = coker ∇⁰ ⊕ ker ∇¹,   HH² = coker ∇¹.
//! ```
//!
//! Everything is computed inside a bidegree window `x ≤ X`, `y ≤ Y`. Coordinates
//! outside the window come first, then the window ordered by `y` and `x`
//! descending, so echelon bases expose their intersection with the window.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lifting::{build_lifting, LiftingData, Theta};
use crate::par::Exec;
use crate::pbw::{AhSpec, Algebra, Gen, Mono, PbwElement};
use crate::poly::UPoly;
use crate::ratmat::{kernel_basis, rank, Rational, SparseMatrix, SparseVec, Subquotient, SubspaceBasis};
use crate::slices::{tail_intersection, Cochain, Wedge};

/// Bidegree window with the `x`-slack used for boundary sources.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub x_max: u32,
    pub y_max: u32,
    pub x_slack: u32,
}

impl Window {
    /// Default slack `(Y + 2)·max(deg h, 1)`.
    pub fn new(h: &UPoly, x_max: u32, y_max: u32) -> Self {
        let dh = h.degree().unwrap_or(0).max(1);
        Self {
            x_max,
            y_max,
            x_slack: (y_max + 2) * dh,
        }
    }

    pub fn contains(&self, (a, b): (u32, u32)) -> bool {
        a <= self.x_max && b <= self.y_max
    }

    fn monomials(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = (0..=self.y_max)
            .flat_map(|b| (0..=self.x_max).map(move |a| (a, b)))
            .collect();
        v.sort_by_key(|&(a, b)| std::cmp::Reverse((b, a)));
        v
    }
}

fn mono(a: u32, b: u32) -> PbwElement {
    PbwElement::mono(Mono::new(a, b, 0, 0), Rational::from_integer(1.into()))
}

fn xy(m: &Mono) -> (u32, u32) {
    (m.x, m.y)
}

/// Coordinates covering a window and every monomial of some auxiliary elements.
struct Coords {
    order: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
    offset: usize,
}

impl Coords {
    fn new<'a>(w: &Window, extra: impl IntoIterator<Item = &'a PbwElement>) -> Self {
        let outside: BTreeSet<(u32, u32)> = extra
            .into_iter()
            .flat_map(|u| u.terms().map(|(m, _)| xy(m)).collect::<Vec<_>>())
            .filter(|p| !w.contains(*p))
            .collect();
        let offset = outside.len();
        let order: Vec<(u32, u32)> = outside.into_iter().chain(w.monomials()).collect();
        let index = order.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Self { order, index, offset }
    }

    fn dim(&self) -> usize {
        self.order.len()
    }

    fn vector(&self, u: &PbwElement) -> SparseVec {
        let mut v = SparseVec::new();
        for (m, c) in u.terms() {
            v.add_at(self.index[&xy(m)], c.clone());
        }
        v
    }

    fn element(&self, v: &SparseVec) -> PbwElement {
        let mut u = PbwElement::zero();
        for (i, c) in v.iter() {
            let (a, b) = self.order[i];
            u.add_term(Mono::new(a, b, 0, 0), c.clone());
        }
        u
    }

    /// Span of `gens` intersected with the window.
    fn tail_span(&self, gens: &[PbwElement]) -> Result<SubspaceBasis> {
        let full = SubspaceBasis::from_vectors(self.dim(), gens.iter().map(|g| self.vector(g)))?;
        SubspaceBasis::from_vectors(self.dim(), tail_intersection(&full, self.offset))
    }
}

/// The one-variable Koszul complex of `A_h` with its `y`-lifting.
#[derive(Clone, Debug)]
pub struct AhComplex {
    alg: Algebra,
    h: UPoly,
    lift: LiftingData,
}

impl AhComplex {
    pub fn new(h: UPoly) -> Result<Self> {
        let alg = Algebra::ah(AhSpec::new(h.clone())?);
        let lift = build_lifting(Theta::AhY, &alg)?;
        Ok(Self { alg, h, lift })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn h(&self) -> &UPoly {
        &self.h
    }

    pub fn delta(&self, u: &PbwElement) -> PbwElement {
        self.alg.commutator(&PbwElement::gen(Gen::X), u)
    }

    /// Lifting-based `y^♯` on `q`-cochains, `q ∈ {0, 1}`.
    pub fn sharp(&self, q: u32, u: &PbwElement) -> PbwElement {
        let w = if q == 0 { Wedge::ONE } else { Wedge::X };
        self.lift
            .sharp(&self.alg, q, &Cochain::single(w, u.clone()))
            .component(w)
    }

    fn big_box(&self, w: &Window, extra_y: u32) -> Vec<PbwElement> {
        (0..=w.y_max + extra_y)
            .flat_map(|b| (0..=w.x_max + w.x_slack).map(move |a| mono(a, b)))
            .collect()
    }

    fn boundaries(&self, w: &Window, exec: Exec) -> Vec<PbwElement> {
        exec.map(&self.big_box(w, 1), |u| self.delta(u))
    }

    fn window_elements(w: &Window) -> Vec<PbwElement> {
        w.monomials().into_iter().map(|(a, b)| mono(a, b)).collect()
    }

    /// `{u ∈ window : [x, u] = 0}`, optionally also `[y, u] = 0`.
    fn window_kernel(&self, w: &Window, with_y: bool) -> Result<Vec<PbwElement>> {
        let src = Self::window_elements(w);
        let imgs: Vec<PbwElement> = src.iter().map(|u| self.delta(u)).collect();
        let ys: Vec<PbwElement> = if with_y { src.iter().map(|u| self.sharp(0, u)).collect() } else { vec![] };
        let cx = Coords::new(w, &imgs);
        let cy = Coords::new(w, &ys);
        let rows = cx.dim() + cy.dim();
        let cols = (0..src.len())
            .map(|i| {
                let mut v = cx.vector(&imgs[i]);
                if with_y {
                    for (j, c) in cy.vector(&ys[i]).iter() {
                        v.add_at(cx.dim() + j, c.clone());
                    }
                }
                v
            })
            .collect();
        let m = SparseMatrix::from_columns(rows, cols)?;
        Ok(kernel_basis(&m)
            .vectors()
            .iter()
            .map(|k| {
                let mut u = PbwElement::zero();
                for (i, c) in k.iter() {
                    u.add_scaled(&src[i], c);
                }
                u
            })
            .collect())
    }

    /// Windowed `H^q(S, A_h)` with representatives.
    pub fn hochschild(&self, q: u32, w: &Window, exec: Exec) -> Result<(usize, Vec<PbwElement>)> {
        match q {
            0 => {
                let z = self.window_kernel(w, false)?;
                Ok((z.len(), z))
            }
            1 => {
                let b = self.boundaries(w, exec);
                let c = Coords::new(w, &b);
                let den = c.tail_span(&b)?;
                let num: Vec<SparseVec> = (c.offset..c.dim()).map(SparseVec::unit).collect();
                let sq = Subquotient::new(num, den)?;
                let reps = sq.representatives.vectors().iter().map(|v| c.element(v)).collect();
                Ok((sq.dim(), reps))
            }
            _ => Ok((0, Vec::new())),
        }
    }

    /// `dim ker ∇⁰` on the window.
    pub fn nabla0_kernel(&self, w: &Window) -> Result<usize> {
        Ok(self.window_kernel(w, true)?.len())
    }

    /// `dim coker ∇⁰` on the window: `(Z⁰ ∩ W) / (y^♯ Z⁰_big ∩ W)`.
    pub fn nabla0_cokernel(&self, w: &Window, exec: Exec) -> Result<usize> {
        let num = self.window_kernel(w, false)?;
        let big = Window {
            x_max: w.x_max + w.x_slack,
            ..*w
        };
        let zbig = self.window_kernel(&big, false)?;
        let imgs = exec.map(&zbig, |z| self.sharp(0, z));
        let c = Coords::new(w, imgs.iter().chain(&num));
        let den = c.tail_span(&imgs)?;
        Ok(Subquotient::new(num.iter().map(|u| c.vector(u)), den)?.dim())
    }

    /// `dim ker ∇¹` on the window.
    pub fn nabla1_kernel(&self, w: &Window, exec: Exec) -> Result<usize> {
        let src = Self::window_elements(w);
        let imgs = exec.map(&src, |u| self.sharp(1, u));
        let x_t = imgs
            .iter()
            .flat_map(|u| u.terms().map(|(m, _)| m.x).collect::<Vec<_>>())
            .max()
            .unwrap_or(0)
            .max(w.x_max);
        let wt = Window { x_max: x_t, ..*w };
        let bt = self.boundaries(&wt, exec);
        let ct = Coords::new(&wt, bt.iter().chain(&imgs));
        let den_t = ct.tail_span(&bt)?;
        let cols = imgs.iter().map(|u| den_t.reduce(&ct.vector(u))).collect();
        let m = SparseMatrix::from_columns(ct.dim(), cols)?;
        let bs = self.boundaries(w, exec);
        let cs = Coords::new(w, &bs);
        let den_s = cs.tail_span(&bs)?;
        let num: Vec<SparseVec> = kernel_basis(&m)
            .vectors()
            .iter()
            .map(|k| {
                let mut u = PbwElement::zero();
                for (i, c) in k.iter() {
                    u.add_scaled(&src[i], c);
                }
                cs.vector(&u)
            })
            .collect();
        Ok(Subquotient::new(num, den_s)?.dim())
    }

    /// `dim coker ∇¹` on the window: `W / ((B + y^♯ C¹_big) ∩ W)`.
    pub fn nabla1_cokernel(&self, w: &Window, exec: Exec) -> Result<usize> {
        let mut gens = self.boundaries(w, exec);
        gens.extend(exec.map(&self.big_box(w, 0), |u| self.sharp(1, u)));
        let c = Coords::new(w, &gens);
        let den = c.tail_span(&gens)?;
        Ok(c.dim() - c.offset - den.dim())
    }

    /// `f(x) y^b ↦ (f mod h) y^b`: normal form in `A_h / h A_h`.
    pub fn reduce_mod_h(&self, u: &PbwElement) -> Result<PbwElement> {
        let mut by_y: HashMap<u32, Vec<Rational>> = HashMap::new();
        for (m, c) in u.terms() {
            let v = by_y.entry(m.y).or_default();
            if v.len() <= m.x as usize {
                v.resize(m.x as usize + 1, Rational::from_integer(0.into()));
            }
            v[m.x as usize] += c;
        }
        let mut out = PbwElement::zero();
        for (b, coeffs) in by_y {
            let r = UPoly::new(coeffs).div_rem(&self.h)?.1;
            for (a, c) in r.coeffs().iter().enumerate() {
                out.add_term(Mono::new(a as u32, b, 0, 0), c.clone());
            }
        }
        Ok(out)
    }

    /// Standard basis `x^a y^b` (`a < deg h`, `b ≤ Y`) of the windowed `A_h / h A_h`.
    fn quotient_basis(&self, y_max: u32) -> Vec<(u32, u32)> {
        let dh = self.h.degree().unwrap_or(0);
        (0..=y_max).flat_map(|b| (0..dh).map(move |a| (a, b))).collect()
    }

    fn quotient_matrix(&self, y_max: u32, f: impl Fn(&PbwElement) -> Result<PbwElement>) -> Result<SparseMatrix> {
        let basis = self.quotient_basis(y_max);
        let index: HashMap<(u32, u32), usize> = basis.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let cols = basis
            .iter()
            .map(|&(a, b)| {
                let img = self.reduce_mod_h(&f(&mono(a, b))?)?;
                let mut v = SparseVec::new();
                for (m, c) in img.terms() {
                    v.add_at(index[&xy(m)], c.clone());
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::from_columns(basis.len(), cols)
    }

    /// `∇¹` on `⊕_{b ≤ Y} S/(h) y^b` from the lifting.
    pub fn nabla1_lifting(&self, y_max: u32) -> Result<SparseMatrix> {
        self.quotient_matrix(y_max, |u| Ok(self.sharp(1, u)))
    }

    /// `∇¹(ū) = −h' u` on the same basis.
    pub fn nabla1_closed(&self, y_max: u32) -> Result<SparseMatrix> {
        let hp = PbwElement::from_poly(&self.h.derivative().to_poly()).neg();
        self.quotient_matrix(y_max, |u| Ok(self.alg.multiply(&hp, u)))
    }

    /// `∇⁰` on `S_{≤X}` from the lifting and from `s ↦ h s'`, in the basis of `S_{≤X+deg h}`.
    pub fn nabla0_pair(&self, x_max: u32) -> Result<(SparseMatrix, SparseMatrix)> {
        let rows = (x_max + self.h.degree().unwrap_or(0) + 1) as usize;
        let col = |u: &PbwElement| {
            let mut v = SparseVec::new();
            for (m, c) in u.terms() {
                v.add_at(m.x as usize, c.clone());
            }
            v
        };
        let lifted = (0..=x_max).map(|a| col(&self.sharp(0, &mono(a, 0)))).collect();
        let closed = (0..=x_max)
            .map(|a| {
                let s = UPoly::x_pow(a);
                col(&PbwElement::from_poly(&(&self.h * &s.derivative()).to_poly()))
            })
            .collect();
        Ok((SparseMatrix::from_columns(rows, lifted)?, SparseMatrix::from_columns(rows, closed)?))
    }
}

/// Closed-form data: `d = gcd(h, h')` and the ideal `I ⊂ S/(h)` generated by `h/d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AhClosedForm {
    pub h: String,
    pub d: String,
    pub dim_s_mod_h: usize,
    pub dim_s_mod_d: usize,
    pub dim_i: usize,
}

impl AhClosedForm {
    pub fn new(h: &UPoly) -> Result<Self> {
        let d = h.gcd(&h.derivative());
        let dh = h.degree().unwrap_or(0) as usize;
        let (g, r) = h.div_rem(&d)?;
        debug_assert!(r.is_zero());
        // I is spanned by the classes of x^i·(h/d) in S/(h)
        let cols = (0..dh.max(1))
            .map(|i| {
                let rem = (&g * &UPoly::x_pow(i as u32)).div_rem(h)?.1;
                Ok(SparseVec::from_dense(
                    &(0..dh as u32).map(|k| rem.coeff(k)).collect::<Vec<_>>(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let dim_i = if dh == 0 { 0 } else { rank(&SparseMatrix::from_columns(dh, cols)?) };
        Ok(Self {
            h: h.to_string(),
            d: d.to_string(),
            dim_s_mod_h: dh,
            dim_s_mod_d: d.degree().unwrap_or(0) as usize,
            dim_i,
        })
    }

    /// `[HH⁰, HH¹, HH²]` truncated at `y ≤ Y`.
    pub fn predict(&self, y_max: u32) -> [usize; 3] {
        let ys = y_max as usize + 1;
        [1, self.dim_s_mod_h + ys * self.dim_i, ys * self.dim_s_mod_d]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AhReport {
    pub h: String,
    pub window: Window,
    /// Windowed `dim H⁰(S, A_h)`, `dim H¹(S, A_h)`.
    pub hochschild: [usize; 2],
    /// `(ker, coker)` of `∇⁰` and of `∇¹`.
    pub nabla0: (usize, usize),
    pub nabla1: (usize, usize),
    pub hh: [usize; 3],
    pub closed_form: AhClosedForm,
    pub predicted: [usize; 3],
    pub nabla_agree: bool,
    pub matches: bool,
}

/// Full windowed pipeline for one `h`.
pub fn ah_hh_dims(h: &UPoly, w: Window, exec: Exec) -> Result<AhReport> {
    let dh = h.degree().unwrap_or(0);
    if w.x_max < dh {
        return Err(Error::WindowTooSmall(format!("x-window {} below deg h = {dh}", w.x_max)));
    }
    let cx = AhComplex::new(h.clone())?;
    let closed_form = AhClosedForm::new(h)?;
    let (h0, _) = cx.hochschild(0, &w, exec)?;
    let (h1, _) = cx.hochschild(1, &w, exec)?;
    let nabla0 = (cx.nabla0_kernel(&w)?, cx.nabla0_cokernel(&w, exec)?);
    let nabla1 = (cx.nabla1_kernel(&w, exec)?, cx.nabla1_cokernel(&w, exec)?);
    let hh = [nabla0.0, nabla0.1 + nabla1.0, nabla1.1];
    let (l0, c0) = cx.nabla0_pair(w.x_max)?;
    let nabla_agree = l0 == c0 && cx.nabla1_lifting(w.y_max)? == cx.nabla1_closed(w.y_max)?;
    let predicted = closed_form.predict(w.y_max);
    Ok(AhReport {
        h: h.to_string(),
        window: w,
        hochschild: [h0, h1],
        nabla0,
        nabla1,
        hh,
        matches: hh == predicted && nabla_agree,
        closed_form,
        predicted,
        nabla_agree,
    })
}

/// Independent count of `dim (W / (h·A_h ∩ W))` for the window `x ≤ X`, `y ≤ Y`,
/// from the products `h·x^c y^b` alone.
pub fn quotient_oracle(h: &UPoly, x_max: u32, y_max: u32) -> usize {
    let width = x_max as usize + 1;
    let dh = h.degree().unwrap_or(0);
    let mut total = 0;
    for _b in 0..=y_max {
        // left multiplication by h acts on the x-coefficient of each y^b
        let cols: Vec<SparseVec> = (0..=x_max.saturating_sub(dh))
            .filter(|c| c + dh <= x_max)
            .map(|c| {
                let p = h * &UPoly::x_pow(c);
                SparseVec::from_dense(&(0..width as u32).map(|k| p.coeff(k)).collect::<Vec<_>>())
            })
            .collect();
        let r = rank(&SparseMatrix::from_columns(width, cols).expect("fits the window"));
        total += width - r;
    }
    total
}
