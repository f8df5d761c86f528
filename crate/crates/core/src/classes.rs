//! Explicit cocycle bases of `H¹(S,U)_0` and `H¹(S,U)_1` for three lines
//! `F = y(y + t x)`.

use crate::error::{Error, Result};
use crate::pbw::Algebra;
use crate::ratmat::Rational;
use crate::slices::{Cochain, Wedge};

fn slope(alg: &Algebra) -> Result<Rational> {
    match alg.arrangement() {
        Some(s) if s.line_count() == 3 => Ok(s.slopes()[1].clone()),
        _ => Err(Error::InvalidSpec("explicit classes exist for three lines only".into())),
    }
}

fn form(alg: &Algebra, a: &str, b: &str) -> Cochain {
    Cochain::from_components([
        (Wedge::X, alg.parse(a).expect("well-formed")),
        (Wedge::Y, alg.parse(b).expect("well-formed")),
    ])
}

/// `a x̂ + t·b ŷ`.
fn form_t(alg: &Algebra, a: &str, b: &str, t: &Rational) -> Cochain {
    Cochain::from_components([
        (Wedge::X, alg.parse(a).expect("well-formed")),
        (Wedge::Y, alg.parse(b).expect("well-formed").scale(t)),
    ])
}

/// `η₁, …, η₅` spanning `H¹(S,U)_0`.
pub fn eta(alg: &Algebra) -> Result<Vec<Cochain>> {
    let t = slope(alg)?;
    Ok(vec![
        form_t(alg, "-y E + D", "y E", &t),
        form(alg, "y", "0"),
        form(alg, "0", "x"),
        form(alg, "0", "y"),
        form(alg, "0", "D"),
    ])
}

/// `ζ₁, …, ζ₈` spanning `H¹(S,U)_1`.
pub fn zeta(alg: &Algebra) -> Result<Vec<Cochain>> {
    let t = slope(alg)?;
    // t (2yDE + F E + y²(E − E²)) with F = y² + t x y
    let zeta1_y = alg
        .parse("2 y D E + 2 y^2 E - y^2 E^2")?
        .add(&alg.parse("x y E")?.scale(&t))
        .scale(&t);
    Ok(vec![
        Cochain::from_components([(Wedge::X, alg.parse("D^2 - 2 y D E + y^2 E^2 - y^2 E")?), (Wedge::Y, zeta1_y)]),
        form_t(alg, "-y^2 E + y D", "y^2 E", &t),
        form(alg, "y^2", "0"),
        form(alg, "0", "x^2"),
        form(alg, "0", "x y"),
        form(alg, "0", "x D"),
        form(alg, "0", "y D"),
        form(alg, "0", "D^2"),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::Koszul;
    use crate::pbw::ArrangementSpec;
    use crate::ratmat::rat;

    #[test]
    fn classes_are_cocycles() {
        for t in [1, 3, -2] {
            let k = Koszul::new(Algebra::lines(ArrangementSpec::three_lines(rat(t)).unwrap()));
            let a = k.algebra();
            assert!(eta(a).unwrap().iter().chain(&zeta(a).unwrap()).all(|c| k.is_cocycle(1, c)));
        }
        assert!(eta(&Algebra::lines(ArrangementSpec::generic(4).unwrap())).is_err());
    }
}
