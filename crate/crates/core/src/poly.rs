//! Commutative polynomials: `Poly` for S = k[x, y] and `UPoly` for k[x].
//!
//! Also houses the small term parser shared with the PBW text format.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratmat::{format_rational, parse_rational, rat, Rational};

/// Exponent pair `(a, b)` for `x^a y^b`.
pub type Exp2 = (u32, u32);

/// Polynomial in `x, y` with rational coefficients; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Exp2, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(a: u32, b: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp2, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp2, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: Exp2, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn shift(&self, a: u32, b: u32) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&(p, q), c)| ((p + a, q + b), c.clone())).collect(),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&(a, b)| a + b);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn dx(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|((a, _), _)| *a > 0)
                .map(|(&(a, b), c)| ((a - 1, b), c * rat(a as i64))),
        )
    }

    pub fn dy(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b > 0)
                .map(|(&(a, b), c)| ((a, b - 1), c * rat(b as i64))),
        )
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        if other.is_zero() {
            return None;
        }
        // Divide using the lex-largest term (x-exponent first) as leading term.
        let lead = |p: &Poly| p.terms.iter().next_back().map(|(&e, c)| (e, c.clone()));
        let (le, lc) = lead(other)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(((a, b), c)) = lead(&rem) {
            if a < le.0 || b < le.1 {
                return None;
            }
            let t = Poly::monomial(a - le.0, b - le.1, c / &lc);
            rem = &rem - &(&t * other);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn parse(s: &str) -> Result<Poly> {
        let mut p = Poly::zero();
        for (c, word) in parse_terms(s, &['x', 'y'])? {
            let (mut a, mut b) = (0, 0);
            for (ch, n) in word {
                if ch == 'x' {
                    a += n;
                } else {
                    b += n;
                }
            }
            p.add_term((a, b), c);
        }
        Ok(p)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(&(a, b), c)| (c.clone(), vec![('x', a), ('y', b)]));
        f.write_str(&format_terms(terms))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(p, q), d) in &rhs.terms {
                out.add_term((a + p, b + q), c * d);
            }
        }
        out
    }
}

/// Polynomial in one variable `x`; `coeffs[i]` is the coefficient of `x^i`,
/// with no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    pub fn x_pow(n: u32) -> Self {
        let mut c = vec![Rational::zero(); n as usize + 1];
        c[n as usize] = Rational::one();
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        (!self.coeffs.is_empty()).then(|| self.coeffs.len() as u32 - 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32) -> Rational {
        self.coeffs.get(i as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let Some(dd) = d.degree() else {
            return Err(Error::InvalidSpec("division by the zero polynomial".into()));
        };
        let lc = d.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        let dd = dd as usize;
        if n <= dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        Ok((UPoly::new(quot), UPoly::new(rem)))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("b nonzero").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(self.coeffs.iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
    }

    pub fn parse(s: &str) -> Result<UPoly> {
        let p = Poly::parse_x_only(s)?;
        let deg = p.terms.keys().map(|e| e.0).max().unwrap_or(0);
        Ok(UPoly::new((0..=deg).map(|i| p.coeff(i, 0)).collect()))
    }
}

impl Poly {
    fn parse_x_only(s: &str) -> Result<Poly> {
        let mut p = Poly::zero();
        for (c, word) in parse_terms(s, &['x'])? {
            p.add_term((word.iter().map(|w| w.1).sum(), 0), c);
        }
        Ok(p)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), vec![('x', i as u32)]));
        f.write_str(&format_terms(terms))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n as u32).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n as u32).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

/// A parsed term: coefficient and the ordered word of `(letter, power)` factors.
pub type Term = (Rational, Vec<(char, u32)>);

/// Parses `+`/`-` separated terms such as `3/2 x^2 y - D*E + 7`. Factors are
/// separated by `*` or whitespace; the letter order inside a term is kept so
/// that noncommutative callers can normalize the word themselves.
pub fn parse_terms(s: &str, letters: &[char]) -> Result<Vec<Term>> {
    let err = |m: &str| Error::Parse(format!("{m} in {s:?}"));
    let chars: Vec<char> = s.chars().collect();
    let mut terms = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let read_int = |i: &mut usize| -> Option<String> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (*i > start).then(|| chars[start..*i].iter().collect())
    };
    skip_ws(&mut i);
    if i == chars.len() {
        return Err(err("empty expression"));
    }
    let mut first = true;
    while i < chars.len() {
        let mut sign = Rational::one();
        skip_ws(&mut i);
        if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if !first {
            return Err(err("expected '+' or '-'"));
        }
        first = false;
        let mut coeff = sign;
        let mut word = Vec::new();
        let mut seen_factor = false;
        loop {
            skip_ws(&mut i);
            if i >= chars.len() || chars[i] == '+' || chars[i] == '-' {
                break;
            }
            if chars[i] == '*' {
                if !seen_factor {
                    return Err(err("dangling '*'"));
                }
                i += 1;
                continue;
            }
            if chars[i].is_ascii_digit() {
                let n = read_int(&mut i).expect("digit");
                skip_ws(&mut i);
                let num = if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    skip_ws(&mut i);
                    let d = read_int(&mut i).ok_or_else(|| err("bad fraction"))?;
                    format!("{n}/{d}")
                } else {
                    n
                };
                coeff *= parse_rational(&num)?;
            } else if letters.contains(&chars[i]) {
                let ch = chars[i];
                i += 1;
                skip_ws(&mut i);
                let mut pow = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    skip_ws(&mut i);
                    pow = read_int(&mut i)
                        .ok_or_else(|| err("bad exponent"))?
                        .parse()
                        .map_err(|_| err("exponent too large"))?;
                }
                word.push((ch, pow));
            } else {
                return Err(err(&format!("unexpected character {:?}", chars[i])));
            }
            seen_factor = true;
        }
        if !seen_factor {
            return Err(err("empty term"));
        }
        terms.push((coeff, word));
    }
    Ok(terms)
}

/// Formats terms as `c x^a y^b` joined by ` + ` / ` - `; zero powers are omitted.
pub fn format_terms<I: IntoIterator<Item = Term>>(terms: I) -> String {
    let mut out = String::new();
    for (c, word) in terms {
        let factors: Vec<String> = word
            .iter()
            .filter(|(_, n)| *n > 0)
            .map(|&(ch, n)| if n == 1 { ch.to_string() } else { format!("{ch}^{n}") })
            .collect();
        let neg = c.is_negative();
        let mag = c.abs();
        let mut body = Vec::new();
        if !mag.is_one() || factors.is_empty() {
            body.push(format_rational(&mag));
        }
        body.extend(factors);
        let body = body.join(" ");
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::ratio;

    #[test]
    fn parse_and_print() {
        let p = Poly::parse("y^2 + 3/2 x*y - 1").unwrap();
        assert_eq!(p.coeff(0, 2), rat(1));
        assert_eq!(p.coeff(1, 1), ratio(3, 2));
        assert_eq!(p.coeff(0, 0), rat(-1));
        assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
        assert_eq!(Poly::parse("0").unwrap(), Poly::zero());
        assert_eq!(Poly::parse("-x").unwrap().to_string(), "-x");
        assert!(Poly::parse("x^").is_err());
        assert!(Poly::parse("z").is_err());
        assert!(Poly::parse("").is_err());
        assert!(Poly::parse("x y y").is_ok());
    }

    #[test]
    fn derivatives() {
        let f = Poly::parse("y^2 + 2 x y").unwrap();
        assert_eq!(f.dy(), Poly::parse("2 y + 2 x").unwrap());
        assert_eq!(f.dx(), Poly::parse("2 y").unwrap());
    }

    #[test]
    fn exact_division() {
        let f = Poly::parse("y^2 + 2 x y").unwrap();
        assert_eq!(f.div_exact(&Poly::y()), Some(Poly::parse("y + 2x").unwrap()));
        assert_eq!(f.div_exact(&Poly::x()), None);
    }

    #[test]
    fn gcd_is_monic() {
        let h = UPoly::from_i64(&[0, 0, 0, 2]); // 2x^3
        let g = h.gcd(&h.derivative());
        assert_eq!(g, UPoly::x_pow(2));
        let h = UPoly::parse("x^3 - x").unwrap();
        assert_eq!(h.gcd(&h.derivative()), UPoly::one());
        assert_eq!(UPoly::zero().gcd(&UPoly::zero()), UPoly::zero());
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = UPoly::parse("x^4 - 3x + 1/2").unwrap();
        let b = UPoly::parse("2x^2 + 1").unwrap();
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert!(a.div_rem(&UPoly::zero()).is_err());
    }

    #[test]
    fn upoly_parse_print() {
        let h = UPoly::parse("x^2-1").unwrap();
        assert_eq!(h.to_string(), "x^2 - 1");
        assert_eq!(UPoly::parse("1").unwrap(), UPoly::one());
        assert!(UPoly::parse("y").is_err());
    }
}
