//! Finite slabs of cochain spaces and the truncation protocol.
//!
//! A slab is the set of cochains `u ⊗ ω` of one internal degree whose PBW
//! monomial `u` has `E`-exponent at most `N`. Every map in the crate is
//! `E`-degree non-increasing, so slabs form subcomplexes.
//!
//! Basis order puts the *highest* `E`-exponent first. Consequently the level-`N`
//! slab is a suffix of the level-`N + σ` slab, and reduced echelon forms taken
//! in the larger slab expose their intersection with the smaller one as the
//! vectors whose pivot lies in that suffix.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pbw::{Algebra, Mono, PbwElement};
use crate::par::Exec;
use crate::ratmat::{Rational, SparseMatrix, SparseVec, SubspaceBasis};

/// Exterior monomial in the duals `x̂, ŷ, D̂, Ê`, as a bit set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wedge(pub u8);

impl Wedge {
    pub const ONE: Wedge = Wedge(0);
    pub const X: Wedge = Wedge(1);
    pub const Y: Wedge = Wedge(2);
    pub const D: Wedge = Wedge(4);
    pub const E: Wedge = Wedge(8);
    pub const XY: Wedge = Wedge(3);

    pub fn rank(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, other: Wedge) -> bool {
        self.0 & other.0 == other.0
    }

    /// `a ∧ b` in the canonical order `x̂ < ŷ < D̂ < Ê`: `None` if they share a
    /// factor, otherwise the union with the sign of the sorting permutation.
    #[allow(clippy::self_named_constructors)]
    pub fn wedge(a: Wedge, b: Wedge) -> Option<(i64, Wedge)> {
        if a.0 & b.0 != 0 {
            return None;
        }
        // each factor of b passes over the factors of a that sit above it
        let mut swaps = 0;
        for bit in 0..4 {
            if b.0 & (1 << bit) != 0 {
                swaps += (a.0 >> (bit + 1)).count_ones();
            }
        }
        Some((if swaps % 2 == 0 { 1 } else { -1 }, Wedge(a.0 | b.0)))
    }

    /// Internal degree of the dual generators: `x̂, ŷ ↦ −1`, `D̂ ↦ −(ℓ−2)`, `Ê ↦ 0`.
    pub fn degree(self, d_deg: u32) -> i64 {
        -(((self.0 & 1) + ((self.0 >> 1) & 1)) as i64) - (((self.0 >> 2) & 1) as i64) * d_deg as i64
    }

    pub fn all_of_rank(r: u32, nbits: u8) -> Vec<Wedge> {
        (0u8..(1 << nbits)).map(Wedge).filter(|w| w.rank() == r).collect()
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let names = ["x̂", "ŷ", "D̂", "Ê"];
        let parts: Vec<&str> = (0..4).filter(|b| self.0 & (1 << b) != 0).map(|b| names[b]).collect();
        f.write_str(&parts.join("∧"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexId {
    /// Koszul cochains `U ⊗ Λ^q (kx ⊕ ky)^*`.
    HochschildKoszul,
    /// One-variable Koszul cochains for `A_h`.
    HochschildOneVar,
    /// Chevalley–Eilenberg cochains on `kD ⊕ kE`.
    Ce,
    /// Total cochains on `x̂, ŷ, D̂, Ê`.
    XComplex,
}

impl ComplexId {
    pub fn labels(self, q: u32) -> Vec<Wedge> {
        match self {
            ComplexId::HochschildKoszul => Wedge::all_of_rank(q, 2),
            ComplexId::HochschildOneVar => Wedge::all_of_rank(q, 1),
            ComplexId::Ce => Wedge::all_of_rank(q, 4)
                .into_iter()
                .filter(|w| w.0 & 3 == 0)
                .collect(),
            ComplexId::XComplex => Wedge::all_of_rank(q, 4),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceKey {
    pub complex: ComplexId,
    pub q: u32,
    pub degree: i64,
    pub e_bound: u32,
    pub slack: u32,
}

impl SliceKey {
    pub fn hochschild(q: u32, degree: i64, e_bound: u32) -> Self {
        Self {
            complex: ComplexId::HochschildKoszul,
            q,
            degree,
            e_bound,
            slack: 0,
        }
    }
}

/// PBW monomials of the given internal degree with `E`-exponent ≤ `e_bound`,
/// highest `E` first, then by `(D, y, x)` exponents.
pub fn monomials_of_degree(alg: &Algebra, degree: i64, e_bound: u32) -> Vec<Mono> {
    if degree < 0 {
        return Vec::new();
    }
    let n = degree as u32;
    let s = alg.d_deg().max(1);
    let mut base = Vec::new();
    for c in 0..=n / s {
        let rem = n - s * c;
        for b in 0..=rem {
            base.push(Mono::new(rem - b, b, c, 0));
        }
    }
    let mut out = Vec::with_capacity(base.len() * (e_bound as usize + 1));
    for e in (0..=e_bound).rev() {
        out.extend(base.iter().map(|m| Mono { e, ..*m }));
    }
    out
}

/// Ordered basis of one slab.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    key: SliceKey,
    monomials: Vec<(Mono, Wedge)>,
    index: HashMap<(Mono, Wedge), usize>,
}

impl SliceBasis {
    pub fn build(key: SliceKey, alg: &Algebra) -> Self {
        let mut monomials = Vec::new();
        let labels = key.complex.labels(key.q);
        let by_label: Vec<(Wedge, Vec<Mono>)> = labels
            .iter()
            .map(|&w| {
                (w, monomials_of_degree(alg, key.degree - w.degree(alg.d_deg()), key.e_bound))
            })
            .collect();
        for e in (0..=key.e_bound).rev() {
            for (w, monos) in &by_label {
                monomials.extend(monos.iter().filter(|m| m.e == e).map(|m| (*m, *w)));
            }
        }
        Self::from_monomials(key, monomials)
    }

    pub fn from_monomials(key: SliceKey, monomials: Vec<(Mono, Wedge)>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Self { key, monomials, index }
    }

    pub fn key(&self) -> &SliceKey {
        &self.key
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[(Mono, Wedge)] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Mono, w: Wedge) -> Option<usize> {
        self.index.get(&(*m, w)).copied()
    }

    /// Number of leading coordinates with `E`-exponent above `level`.
    pub fn offset_above(&self, level: u32) -> usize {
        self.monomials.iter().take_while(|(m, _)| m.e > level).count()
    }

    pub fn element(&self, i: usize) -> Cochain {
        let (m, w) = self.monomials[i];
        Cochain::single(w, PbwElement::mono(m, Rational::from_integer(1.into())))
    }

    pub fn to_vector(&self, c: &Cochain) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (w, u) in c.components() {
            for (m, x) in u.terms() {
                let i = self.index_of(m, *w).ok_or_else(|| {
                    Error::OutsideSlab(format!(
                        "{m:?}⊗{w} not in slab q={} i={} N={}",
                        self.key.q, self.key.degree, self.key.e_bound
                    ))
                })?;
                v.add_at(i, x.clone());
            }
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &SparseVec) -> Cochain {
        let mut c = Cochain::zero();
        for (i, x) in v.iter() {
            let (m, w) = self.monomials[i];
            c.add_term(w, m, x.clone());
        }
        c
    }

    pub fn dump(&self) -> SliceDump {
        SliceDump {
            key: self.key,
            dim: self.dim(),
            monomials: self
                .monomials
                .iter()
                .map(|(m, w)| format!("{}⊗{w}", PbwElement::mono(*m, Rational::from_integer(1.into()))))
                .collect(),
        }
    }
}

/// JSON-exportable view of a slab basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceDump {
    pub key: SliceKey,
    pub dim: usize,
    pub monomials: Vec<String>,
}

/// `U`-valued cochain: one PBW element per exterior label.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Cochain {
    comps: BTreeMap<Wedge, PbwElement>,
}

impl Cochain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(w: Wedge, u: PbwElement) -> Self {
        let mut c = Self::zero();
        c.add_component(w, &u);
        c
    }

    pub fn from_components<I: IntoIterator<Item = (Wedge, PbwElement)>>(it: I) -> Self {
        let mut c = Self::zero();
        for (w, u) in it {
            c.add_component(w, &u);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Wedge, &PbwElement)> {
        self.comps.iter()
    }

    pub fn component(&self, w: Wedge) -> PbwElement {
        self.comps.get(&w).cloned().unwrap_or_default()
    }

    pub fn add_component(&mut self, w: Wedge, u: &PbwElement) {
        self.add_component_scaled(w, u, &Rational::from_integer(1.into()));
    }

    pub fn add_component_scaled(&mut self, w: Wedge, u: &PbwElement, c: &Rational) {
        if c.is_zero() || u.is_zero() {
            return;
        }
        let slot = self.comps.entry(w).or_default();
        slot.add_scaled(u, c);
        if slot.is_zero() {
            self.comps.remove(&w);
        }
    }

    pub fn add_term(&mut self, w: Wedge, m: Mono, c: Rational) {
        self.add_component(w, &PbwElement::mono(m, c));
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (w, u) in &other.comps {
            out.add_component(*w, u);
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        let mut out = Cochain::zero();
        for (w, u) in &self.comps {
            out.add_component_scaled(*w, u, c);
        }
        out
    }

    pub fn e_truncation_degree(&self) -> u32 {
        self.comps.values().map(PbwElement::e_truncation_degree).max().unwrap_or(0)
    }

    /// Internal degrees present (`|u| + deg ω`).
    pub fn degrees(&self, alg: &Algebra) -> Vec<i64> {
        let mut ds: Vec<i64> = self
            .comps
            .iter()
            .flat_map(|(w, u)| {
                u.terms()
                    .map(move |(m, _)| alg.degree(m) + w.degree(alg.d_deg()))
                    .collect::<Vec<_>>()
            })
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(w, u)| if *w == Wedge::ONE { format!("({u})") } else { format!("({u})⊗{w}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Truncated-computation trace: one entry per evaluated `(N, σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationCertificate {
    pub trace: Vec<StabilizationStep>,
    pub verdict: Verdict,
    /// `N` whose result was reported.
    pub reported_n: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationStep {
    pub n: u32,
    pub slack: u32,
    pub dims: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Stable,
    NotStable,
}

/// How far the truncation sweep may go.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub e_start: u32,
    pub slack: u32,
    pub e_max: u32,
}

impl Default for Truncation {
    fn default() -> Self {
        Self::starting_at(6, 3)
    }
}

impl Truncation {
    /// Sweep from `e_start` with up to 12 increments.
    pub fn starting_at(e_start: u32, slack: u32) -> Self {
        Self {
            e_start,
            slack,
            e_max: e_start + 12,
        }
    }
}

/// Number of consecutive identical evaluations required.
pub const STABLE_RUN: usize = 3;

/// Evaluates `compute(N, σ)` for `N = start, start+1, …` until three consecutive
/// evaluations report identical dims, and returns the payload of the first of
/// those three. Running past `e_max` yields [`Error::NotStable`].
pub fn stabilize<T, F>(what: &str, trunc: Truncation, mut compute: F) -> Result<(T, StabilizationCertificate)>
where
    F: FnMut(u32, u32) -> Result<(Vec<usize>, T)>,
{
    let mut trace: Vec<StabilizationStep> = Vec::new();
    let mut payloads: Vec<T> = Vec::new();
    for n in trunc.e_start..=trunc.e_max {
        let (dims, payload) = compute(n, trunc.slack)?;
        trace.push(StabilizationStep {
            n,
            slack: trunc.slack,
            dims,
        });
        payloads.push(payload);
        let k = trace.len();
        if k >= STABLE_RUN && trace[k - STABLE_RUN..].iter().all(|s| s.dims == trace[k - 1].dims) {
            let first = k - STABLE_RUN;
            let reported_n = trace[first].n;
            let payload = payloads.swap_remove(first);
            return Ok((
                payload,
                StabilizationCertificate {
                    trace,
                    verdict: Verdict::Stable,
                    reported_n: Some(reported_n),
                },
            ));
        }
    }
    Err(Error::NotStable {
        what: what.to_string(),
        max_bound: trunc.e_max,
    })
}

/// Matrix of a cochain map between two slabs, one column per source basis
/// element; columns are computed under `exec`.
pub fn map_matrix<F>(src: &SliceBasis, tgt: &SliceBasis, exec: Exec, f: F) -> Result<SparseMatrix>
where
    F: Fn(&Cochain) -> Cochain + Sync,
{
    let idx: Vec<usize> = (0..src.dim()).collect();
    let cols = exec.try_map(&idx, |&i| tgt.to_vector(&f(&src.element(i))))?;
    SparseMatrix::from_columns(tgt.dim(), cols)
}

/// Reduced echelon basis of `vectors` together with its intersection with the
/// coordinates `≥ offset` (valid because earlier coordinates come first).
pub fn tail_intersection(basis: &SubspaceBasis, offset: usize) -> Vec<SparseVec> {
    basis
        .vectors()
        .iter()
        .zip(basis.pivots())
        .filter(|(_, &p)| p >= offset)
        .map(|(v, _)| v.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::ArrangementSpec;
    use crate::ratmat::rat;

    fn three() -> Algebra {
        Algebra::lines(ArrangementSpec::three_lines(rat(1)).unwrap())
    }

    #[test]
    fn basis_examples() {
        let u = three();
        let b = SliceBasis::build(SliceKey::hochschild(0, 0, 2), &u);
        assert_eq!(b.dim(), 3);
        let b = SliceBasis::build(SliceKey::hochschild(2, 0, 0), &u);
        assert_eq!(b.dim(), 6);
        assert!(b.monomials().iter().all(|(_, w)| *w == Wedge::XY));
        let b = SliceBasis::build(SliceKey::hochschild(1, -2, 5), &u);
        assert_eq!(b.dim(), 0);
    }

    #[test]
    fn dimension_formula_three_lines() {
        let u = three();
        for q in 0..=2u32 {
            for i in -1..=3i64 {
                for n in 0..=3u32 {
                    let b = SliceBasis::build(SliceKey::hochschild(q, i, n), &u);
                    let k = i + q as i64;
                    let abc = if k < 0 { 0 } else { ((k + 1) * (k + 2) / 2) as usize };
                    let binom = [1, 2, 1][q as usize];
                    assert_eq!(b.dim(), binom * abc * (n as usize + 1), "q={q} i={i} n={n}");
                }
            }
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        let u = three();
        let b = SliceBasis::build(SliceKey::hochschild(1, 0, 3), &u);
        assert!(b.to_vector(&Cochain::zero()).unwrap().is_zero());
        let eta2 = Cochain::single(Wedge::X, u.parse("y").unwrap());
        let v = b.to_vector(&eta2).unwrap();
        assert_eq!(v.nnz(), 1);
        let (i, c) = v.leading().unwrap();
        assert_eq!(b.monomials()[i], (Mono::new(0, 1, 0, 0), Wedge::X));
        assert_eq!(c, &rat(1));
        for i in 0..b.dim() {
            let e = b.element(i);
            assert_eq!(b.to_vector(&e).unwrap(), SparseVec::unit(i));
            assert_eq!(b.from_vector(&SparseVec::unit(i)), e);
        }
        let outside = Cochain::single(Wedge::X, u.parse("y E^4").unwrap());
        assert!(matches!(b.to_vector(&outside), Err(Error::OutsideSlab(_))));
    }

    #[test]
    fn lower_level_is_a_suffix() {
        let u = three();
        let big = SliceBasis::build(SliceKey::hochschild(1, 1, 5), &u);
        let small = SliceBasis::build(SliceKey::hochschild(1, 1, 2), &u);
        let off = big.offset_above(2);
        assert_eq!(big.dim() - off, small.dim());
        assert_eq!(&big.monomials()[off..], small.monomials());
    }

    #[test]
    fn stabilize_constant_is_immediate() {
        let (p, cert) = stabilize("const", Truncation::default(), |n, _| Ok((vec![5], n))).unwrap();
        assert_eq!(p, 6);
        assert_eq!(cert.trace.len(), 3);
        assert_eq!(cert.verdict, Verdict::Stable);
    }

    #[test]
    fn stabilize_reports_growth() {
        let r = stabilize("growing", Truncation::starting_at(0, 1), |n, _| Ok((vec![n as usize], ())));
        assert!(matches!(r, Err(Error::NotStable { max_bound: 12, .. })));
        let (p, cert) =
            stabilize("late", Truncation::starting_at(0, 1), |n, _| Ok((vec![n.min(4) as usize], n))).unwrap();
        assert_eq!(p, 4);
        assert_eq!(cert.reported_n, Some(4));
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(Wedge::wedge(Wedge::X, Wedge::Y), Some((1, Wedge::XY)));
        assert_eq!(Wedge::wedge(Wedge::Y, Wedge::X), Some((-1, Wedge::XY)));
        assert_eq!(Wedge::wedge(Wedge::X, Wedge::X), None);
        assert_eq!(Wedge::wedge(Wedge::E, Wedge(7)), Some((-1, Wedge(15))));
        assert_eq!(Wedge::XY.to_string(), "x̂∧ŷ");
    }

    #[test]
    fn slice_dump_is_json() {
        let b = SliceBasis::build(SliceKey::hochschild(0, 1, 0), &three());
        let s = serde_json::to_string(&b.dump()).unwrap();
        let back: SliceDump = serde_json::from_str(&s).unwrap();
        assert_eq!(back.dim, 3);
    }
}
