//! PBW normal forms in the two algebra families.
//!
//! * `U = U(S, Der A)` for a central arrangement of ℓ lines through the origin:
//!   generators `x, y, D, E` with `[y,x] = 0`, `[D,x] = 0`, `[D,y] = F`,
//!   `[E,x] = x`, `[E,y] = y`, `[E,D] = (ℓ−2)D`, where `F = ∏ (y + tᵢx)`.
//! * `A_h`: generators `x, y` with `yx = xy + h(x)`.
//!
//! Elements are kept as maps from ordered monomials `x^a y^b D^c E^m` to
//! coefficients. Products are computed with the closed forms of the rewriting
//! system rather than by adjacent swaps:
//!
//! ```text
//! E^m · w   = w · (E + |w|)^m                 (w homogeneous)
//! D^c · s   = Σ_j C(c,j) ad_D^j(s) · D^(c−j)   ad_D(s) = F ∂_y s
//! y^b · f   = Σ_j C(b,j) ad_y^j(f) · y^(b−j)   ad_y(f) = h f'
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_terms, parse_terms, Exp2, Poly, UPoly};
use crate::ratmat::{format_rational, rat, Rational};

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// A central arrangement `Q = x·∏(y + tᵢx)` with `t₁ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementSpec {
    slopes: Vec<Rational>,
    f: Poly,
}

impl ArrangementSpec {
    pub fn new(slopes: Vec<Rational>) -> Result<Self> {
        if slopes.len() < 2 {
            return Err(Error::InvalidSpec(format!(
                "need at least 3 lines (2 slopes), got {} slope(s)",
                slopes.len()
            )));
        }
        if !slopes[0].is_zero() {
            return Err(Error::InvalidSpec("the first slope must be 0".into()));
        }
        for (i, s) in slopes.iter().enumerate() {
            if slopes[..i].contains(s) {
                return Err(Error::InvalidSpec(format!(
                    "repeated slope {}: lines must be distinct",
                    format_rational(s)
                )));
            }
        }
        let f = slopes
            .iter()
            .fold(Poly::one(), |acc, t| &acc * &(&Poly::y() + &Poly::x().scale(t)));
        let spec = Self { slopes, f };
        spec.saito_check()?;
        Ok(spec)
    }

    /// Three lines `x = 0`, `y = 0`, `y + tx = 0`.
    pub fn three_lines(t: Rational) -> Result<Self> {
        Self::new(vec![Rational::zero(), t])
    }

    /// ℓ lines with slopes `0, 1, …, ℓ−2`.
    pub fn generic(line_count: u32) -> Result<Self> {
        if line_count < 3 {
            return Err(Error::InvalidSpec(format!("need ℓ ≥ 3, got {line_count}")));
        }
        Self::new((0..line_count as i64 - 1).map(rat).collect())
    }

    pub fn line_count(&self) -> u32 {
        self.slopes.len() as u32 + 1
    }

    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    pub fn d_deg(&self) -> u32 {
        self.line_count() - 2
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn q(&self) -> Poly {
        &Poly::x() * &self.f
    }

    /// `E = x∂_x + y∂_y`, `D = F∂_y`: the coefficient matrix `[[x, y], [0, F]]`
    /// must have determinant `Q`, and `F` must be homogeneous of degree ℓ−1
    /// and divisible by `y`.
    pub fn saito_check(&self) -> Result<()> {
        let det = &(&Poly::x() * &self.f) - &(&Poly::y() * &Poly::zero());
        if det != self.q() {
            return Err(Error::InvalidSpec("Saito determinant differs from Q".into()));
        }
        if !self.f.is_homogeneous() || self.f.degree() != Some(self.line_count() - 1) {
            return Err(Error::InvalidSpec("F is not homogeneous of degree ℓ−1".into()));
        }
        if self.f.div_exact(&Poly::y()).is_none() {
            return Err(Error::InvalidSpec("F is not divisible by y".into()));
        }
        Ok(())
    }
}

/// `A_h = k⟨x, y⟩ / (yx − xy − h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AhSpec {
    h: UPoly,
}

impl AhSpec {
    pub fn new(h: UPoly) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::InvalidSpec("h must be nonzero".into()));
        }
        Ok(Self { h })
    }

    pub fn h(&self) -> &UPoly {
        &self.h
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X,
    Y,
    D,
    E,
}

impl Gen {
    pub fn letter(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
            Gen::D => 'D',
            Gen::E => 'E',
        }
    }
}

/// The PBW monomial `x^x y^y D^d E^e`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub x: u32,
    pub y: u32,
    pub d: u32,
    pub e: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { x: 0, y: 0, d: 0, e: 0 };

    pub fn new(x: u32, y: u32, d: u32, e: u32) -> Self {
        Self { x, y, d, e }
    }

    pub fn gen(g: Gen) -> Self {
        match g {
            Gen::X => Mono::new(1, 0, 0, 0),
            Gen::Y => Mono::new(0, 1, 0, 0),
            Gen::D => Mono::new(0, 0, 1, 0),
            Gen::E => Mono::new(0, 0, 0, 1),
        }
    }

    fn word(&self) -> Vec<(char, u32)> {
        vec![('x', self.x), ('y', self.y), ('D', self.d), ('E', self.e)]
    }
}

/// Element of `U` or `A_h` in PBW normal form.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PbwElement {
    terms: BTreeMap<Mono, Rational>,
}

impl PbwElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::mono(Mono::ONE, Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::mono(Mono::ONE, c)
    }

    pub fn mono(m: Mono, c: Rational) -> Self {
        let mut u = Self::zero();
        u.add_term(m, c);
        u
    }

    pub fn gen(g: Gen) -> Self {
        Self::mono(Mono::gen(g), Rational::one())
    }

    /// Embeds `s ∈ S` (written with `x` before `y`, which is already normal).
    pub fn from_poly(p: &Poly) -> Self {
        let mut u = Self::zero();
        for ((a, b), c) in p.terms() {
            u.add_term(Mono::new(a, b, 0, 0), c.clone());
        }
        u
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rational)>>(terms: I) -> Self {
        let mut u = Self::zero();
        for (m, c) in terms {
            u.add_term(m, c);
        }
        u
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &PbwElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(*m, x * c);
        }
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> PbwElement {
        let mut out = PbwElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> PbwElement {
        self.scale(&-Rational::one())
    }

    /// Largest `E`-exponent; 0 for `E`-free elements.
    pub fn e_truncation_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.e).max().unwrap_or(0)
    }

    /// Left multiplication by `x^a y^b`; valid in both families as long as
    /// `b = 0` for `A_h` (where `S = k[x]`).
    pub fn shift_xy(&self, a: u32, b: u32) -> PbwElement {
        PbwElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono::new(m.x + a, m.y + b, m.d, m.e), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(m, c)| (c.clone(), m.word()));
        f.write_str(&format_terms(terms))
    }
}

/// Element of `S ⊗ S` (or `k[x] ⊗ k[x]`), expanded into monomial pairs.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiTensor {
    terms: BTreeMap<(Exp2, Exp2), Rational>,
}

impl BiTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::pure(&Poly::one(), &Poly::one())
    }

    pub fn pure(left: &Poly, right: &Poly) -> Self {
        let mut t = Self::zero();
        for (l, a) in left.terms() {
            for (r, b) in right.terms() {
                t.add_term(l, r, a * b);
            }
        }
        t
    }

    pub fn add_term(&mut self, l: Exp2, r: Exp2, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((l, r)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(l, r));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp2, Exp2, &Rational)> {
        self.terms.iter().map(|(&(l, r), c)| (l, r, c))
    }

    pub fn add(&self, other: &BiTensor) -> BiTensor {
        let mut out = self.clone();
        for (l, r, c) in other.terms() {
            out.add_term(l, r, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BiTensor) -> BiTensor {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> BiTensor {
        let mut out = BiTensor::zero();
        for (l, r, x) in self.terms() {
            out.add_term(l, r, x * c);
        }
        out
    }

    /// Product in `S^e` (commutative, componentwise).
    pub fn mul(&self, other: &BiTensor) -> BiTensor {
        let mut out = BiTensor::zero();
        for (l, r, c) in self.terms() {
            for (l2, r2, d) in other.terms() {
                out.add_term((l.0 + l2.0, l.1 + l2.1), (r.0 + r2.0, r.1 + r2.1), c * d);
            }
        }
        out
    }

    /// Multiplication map `S ⊗ S → S`.
    pub fn collapse(&self) -> Poly {
        Poly::from_terms(self.terms().map(|(l, r, c)| ((l.0 + r.0, l.1 + r.1), c.clone())))
    }
}

impl fmt::Debug for BiTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(l, r, c)| {
                format!(
                    "{}·({}|{})",
                    format_rational(c),
                    Poly::monomial(l.0, l.1, Rational::one()),
                    Poly::monomial(r.0, r.1, Rational::one())
                )
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Lines(ArrangementSpec),
    Ah(AhSpec),
}

/// A word letter for [`Algebra::normalize`].
#[derive(Clone, Debug)]
pub enum Letter {
    Gen(Gen),
    Poly(Poly),
}

type AdMemo = HashMap<(u32, u32, u32), Arc<Poly>>;

/// One of the two algebras, with a shared memo of iterated `ad` values.
#[derive(Clone)]
pub struct Algebra {
    kind: AlgebraKind,
    memo: Arc<RwLock<AdMemo>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Algebra {
    pub fn lines(spec: ArrangementSpec) -> Self {
        Self::from_kind(AlgebraKind::Lines(spec))
    }

    pub fn ah(spec: AhSpec) -> Self {
        Self::from_kind(AlgebraKind::Ah(spec))
    }

    fn from_kind(kind: AlgebraKind) -> Self {
        Self {
            kind,
            memo: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn arrangement(&self) -> Option<&ArrangementSpec> {
        match &self.kind {
            AlgebraKind::Lines(s) => Some(s),
            AlgebraKind::Ah(_) => None,
        }
    }

    pub fn ah_spec(&self) -> Option<&AhSpec> {
        match &self.kind {
            AlgebraKind::Ah(s) => Some(s),
            AlgebraKind::Lines(_) => None,
        }
    }

    /// Internal degree of `D`; 0 for `A_h`.
    pub fn d_deg(&self) -> u32 {
        self.arrangement().map_or(0, ArrangementSpec::d_deg)
    }

    pub fn generators(&self) -> &'static [Gen] {
        match self.kind {
            AlgebraKind::Lines(_) => &[Gen::X, Gen::Y, Gen::D, Gen::E],
            AlgebraKind::Ah(_) => &[Gen::X, Gen::Y],
        }
    }

    /// `|x^a y^b D^c E^m| = a + b + (ℓ−2)c`.
    pub fn degree(&self, m: &Mono) -> i64 {
        (m.x + m.y + self.d_deg() * m.d) as i64
    }

    /// `ad_D^j(x^a y^b)` or, for `A_h`, `ad_y^j(x^a)`.
    fn ad_power(&self, j: u32, a: u32, b: u32) -> Arc<Poly> {
        if let Some(p) = self.memo.read().expect("memo lock").get(&(j, a, b)) {
            return p.clone();
        }
        let p = if j == 0 {
            Poly::monomial(a, b, Rational::one())
        } else {
            let prev = self.ad_power(j - 1, a, b);
            match &self.kind {
                AlgebraKind::Lines(s) => s.f() * &prev.dy(),
                AlgebraKind::Ah(s) => &s.h().to_poly() * &prev.dx(),
            }
        };
        let p = Arc::new(p);
        self.memo
            .write()
            .expect("memo lock")
            .insert((j, a, b), p.clone());
        p
    }

    fn mul_mono_into(&self, m1: &Mono, m2: &Mono, coef: &Rational, out: &mut PbwElement) {
        match &self.kind {
            AlgebraKind::Lines(spec) => {
                let k = rat((m2.x + m2.y + spec.d_deg() * m2.d) as i64);
                // (E + k)^{m1.e} · E^{m2.e}
                let e_terms: Vec<(u32, Rational)> = (0..=m1.e)
                    .map(|r| {
                        let kp = num::pow::pow(k.clone(), (m1.e - r) as usize);
                        (r + m2.e, binomial(m1.e, r) * kp)
                    })
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                for j in 0..=m1.d {
                    let ad = self.ad_power(j, m2.x, m2.y);
                    if ad.is_zero() {
                        break;
                    }
                    let bj = coef * binomial(m1.d, j);
                    for ((a, b), c) in ad.terms() {
                        let cj = &bj * c;
                        for (e, ec) in &e_terms {
                            out.add_term(
                                Mono::new(m1.x + a, m1.y + b, m1.d - j + m2.d, *e),
                                &cj * ec,
                            );
                        }
                    }
                }
            }
            AlgebraKind::Ah(_) => {
                for j in 0..=m1.y {
                    let ad = self.ad_power(j, m2.x, 0);
                    if ad.is_zero() {
                        break;
                    }
                    let bj = coef * binomial(m1.y, j);
                    for ((a, _), c) in ad.terms() {
                        out.add_term(Mono::new(m1.x + a, m1.y - j + m2.y, 0, 0), &bj * c);
                    }
                }
            }
        }
    }

    pub fn multiply(&self, u: &PbwElement, v: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m1, c1) in u.terms() {
            for (m2, c2) in v.terms() {
                self.mul_mono_into(m1, m2, &(c1 * c2), &mut out);
            }
        }
        out
    }

    pub fn commutator(&self, u: &PbwElement, v: &PbwElement) -> PbwElement {
        self.multiply(u, v).sub(&self.multiply(v, u))
    }

    pub fn gen(&self, g: Gen) -> PbwElement {
        PbwElement::gen(g)
    }

    /// Normal form of a product of generators and polynomials.
    pub fn normalize(&self, word: &[Letter]) -> PbwElement {
        word.iter().fold(PbwElement::one(), |acc, l| {
            let v = match l {
                Letter::Gen(g) => PbwElement::gen(*g),
                Letter::Poly(p) => PbwElement::from_poly(p),
            };
            self.multiply(&acc, &v)
        })
    }

    pub fn pow(&self, u: &PbwElement, n: u32) -> PbwElement {
        (0..n).fold(PbwElement::one(), |acc, _| self.multiply(&acc, u))
    }

    pub fn degree_components(&self, u: &PbwElement) -> BTreeMap<i64, PbwElement> {
        let mut out: BTreeMap<i64, PbwElement> = BTreeMap::new();
        for (m, c) in u.terms() {
            out.entry(self.degree(m)).or_default().add_term(*m, c.clone());
        }
        out
    }

    /// `Σ w · l·u·r` for `bt = Σ w (l ⊗ r)`.
    pub fn bimodule_eval(&self, bt: &BiTensor, u: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        // group by right factor so each right multiplication happens once
        let mut by_right: BTreeMap<Exp2, Vec<(Exp2, Rational)>> = BTreeMap::new();
        for (l, r, c) in bt.terms() {
            by_right.entry(r).or_default().push((l, c.clone()));
        }
        for (r, lefts) in by_right {
            let ur = self.multiply(u, &PbwElement::mono(Mono::new(r.0, r.1, 0, 0), Rational::one()));
            for (l, c) in lefts {
                out.add_scaled(&ur.shift_xy(l.0, l.1), &c);
            }
        }
        out
    }

    /// Parses `x^a y^b D^c E^m` sums; letters may appear in any order and are
    /// normalized.
    pub fn parse(&self, s: &str) -> Result<PbwElement> {
        let letters: &[char] = match self.kind {
            AlgebraKind::Lines(_) => &['x', 'y', 'D', 'E'],
            AlgebraKind::Ah(_) => &['x', 'y'],
        };
        let mut out = PbwElement::zero();
        for (c, word) in parse_terms(s, letters)? {
            let mut w = Vec::new();
            for (ch, n) in word {
                let g = match ch {
                    'x' => Gen::X,
                    'y' => Gen::Y,
                    'D' => Gen::D,
                    _ => Gen::E,
                };
                w.extend(std::iter::repeat_n(Letter::Gen(g), n as usize));
            }
            out.add_scaled(&self.normalize(&w), &c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three(t: i64) -> Algebra {
        Algebra::lines(ArrangementSpec::three_lines(rat(t)).unwrap())
    }

    fn w(gs: &[Gen]) -> Vec<Letter> {
        gs.iter().map(|&g| Letter::Gen(g)).collect()
    }

    #[test]
    fn presentation_rewrites() {
        let u = three(1);
        assert_eq!(u.normalize(&w(&[Gen::E, Gen::X])), u.parse("x E + x").unwrap());
        assert_eq!(u.normalize(&w(&[Gen::D, Gen::Y])), u.parse("y D + y^2 + x y").unwrap());
        assert_eq!(u.normalize(&w(&[Gen::Y, Gen::X])), u.parse("x y").unwrap());
        assert_eq!(
            u.normalize(&w(&[Gen::E, Gen::E, Gen::X])),
            u.parse("x E^2 + 2 x E + x").unwrap()
        );
        let a = Algebra::ah(AhSpec::new(UPoly::x_pow(2)).unwrap());
        assert_eq!(a.normalize(&w(&[Gen::Y, Gen::X])), a.parse("x y + x^2").unwrap());
    }

    #[test]
    fn products_and_brackets() {
        let u = three(2);
        let x = PbwElement::gen(Gen::X);
        let y = PbwElement::gen(Gen::Y);
        let d = PbwElement::gen(Gen::D);
        assert_eq!(u.multiply(&PbwElement::one(), &d), d);
        assert_eq!(u.multiply(&x, &y), u.parse("x y").unwrap());
        assert_eq!(u.multiply(&d, &d), u.parse("D^2").unwrap());
        assert!(u.commutator(&x, &y).is_zero());
        assert_eq!(u.commutator(&d, &y), u.parse("y^2 + 2 x y").unwrap());
        assert!(u.commutator(&d, &d).is_zero());
    }

    #[test]
    fn relations_hold_for_general_l() {
        for l in 3..=6 {
            let u = Algebra::lines(ArrangementSpec::generic(l).unwrap());
            let g = |g| PbwElement::gen(g);
            let f = PbwElement::from_poly(u.arrangement().unwrap().f());
            assert!(u.commutator(&g(Gen::Y), &g(Gen::X)).is_zero());
            assert!(u.commutator(&g(Gen::D), &g(Gen::X)).is_zero());
            assert_eq!(u.commutator(&g(Gen::D), &g(Gen::Y)), f);
            assert_eq!(u.commutator(&g(Gen::E), &g(Gen::X)), g(Gen::X));
            assert_eq!(u.commutator(&g(Gen::E), &g(Gen::Y)), g(Gen::Y));
            assert_eq!(
                u.commutator(&g(Gen::E), &g(Gen::D)),
                g(Gen::D).scale(&rat(l as i64 - 2))
            );
        }
    }

    #[test]
    fn degree_components_examples() {
        let u3 = three(1);
        let v = u3.parse("x + D").unwrap();
        let c = u3.degree_components(&v);
        assert_eq!(c.len(), 1);
        assert_eq!(c[&1], v);
        let e5 = u3.parse("E^5").unwrap();
        assert_eq!(u3.degree_components(&e5)[&0], e5);
        let u4 = Algebra::lines(ArrangementSpec::generic(4).unwrap());
        let c = u4.degree_components(&u4.parse("x + D").unwrap());
        assert_eq!(c[&1], u4.parse("x").unwrap());
        assert_eq!(c[&2], u4.parse("D").unwrap());
    }

    #[test]
    fn bimodule_eval_examples() {
        let u = three(1);
        let d = PbwElement::gen(Gen::D);
        assert_eq!(u.bimodule_eval(&BiTensor::one(), &d), d);
        let y = Poly::y();
        assert_eq!(u.bimodule_eval(&BiTensor::pure(&y, &Poly::one()), &d), u.parse("y D").unwrap());
        assert_eq!(
            u.bimodule_eval(&BiTensor::pure(&Poly::one(), &y), &d),
            u.parse("y D + y^2 + x y").unwrap()
        );
    }

    #[test]
    fn e_truncation_examples() {
        let u = three(1);
        assert_eq!(u.parse("x^2 y").unwrap().e_truncation_degree(), 0);
        assert_eq!(u.parse("D E^3").unwrap().e_truncation_degree(), 3);
        assert_eq!(u.parse("x E + y E^2").unwrap().e_truncation_degree(), 2);
    }

    #[test]
    fn spec_validation() {
        assert!(ArrangementSpec::three_lines(rat(0)).is_err());
        assert!(ArrangementSpec::new(vec![rat(1), rat(2)]).is_err());
        assert!(ArrangementSpec::new(vec![rat(0)]).is_err());
        assert!(ArrangementSpec::new(vec![rat(0), rat(1), rat(1)]).is_err());
        assert!(AhSpec::new(UPoly::zero()).is_err());
        let s = ArrangementSpec::three_lines(rat(3)).unwrap();
        assert_eq!(s.f(), &Poly::parse("y^2 + 3 x y").unwrap());
        assert_eq!(s.q(), Poly::parse("x y^2 + 3 x^2 y").unwrap());
    }

    #[test]
    fn print_parse_roundtrip() {
        let u = three(1);
        let v = u.parse("E x D y - 1/2").unwrap();
        assert_eq!(u.parse(&v.to_string()).unwrap(), v);
        assert_eq!(PbwElement::zero().to_string(), "0");
        assert!(u.parse("x + q").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(binomial(3, 0), rat(1));
        assert_eq!(binomial(2, 3), rat(0));
    }
}
