use lrh_core::ah::{ah_hh_dims, quotient_oracle, AhComplex, AhReport, Window};
use lrh_core::par::Exec;
use lrh_core::poly::UPoly;

const FAMILY: [&str; 6] = ["1", "x", "x^2", "x^3", "x^2 - 1", "x^3 - x"];

#[test]
fn windowed_dims_match_closed_forms() {
    for s in FAMILY {
        let h = UPoly::parse(s).unwrap();
        for (x, y) in [(4, 1), (8, 6)] {
            let r = ah_hh_dims(&h, Window::new(&h, x, y), Exec::default()).unwrap();
            assert!(r.nabla_agree, "h = {s}");
            assert_eq!(r.hh, r.predicted, "h = {s}, window ({x},{y}): {r:?}");
            assert!(r.matches);
        }
    }
}

#[test]
fn x_squared_example() {
    let h = UPoly::parse("x^2").unwrap();
    let r = ah_hh_dims(&h, Window::new(&h, 8, 4), Exec::default()).unwrap();
    assert_eq!(r.hh, [1, 7, 5]);
    let s = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<AhReport>(&s).unwrap(), r);
}

#[test]
fn coker_of_commutator_matches_oracle() {
    for s in FAMILY {
        let h = UPoly::parse(s).unwrap();
        let c = AhComplex::new(h.clone()).unwrap();
        for y in 0..=3 {
            for x in 0..=6 {
                let (d, _) = c.hochschild(1, &Window::new(&h, x, y), Exec::default()).unwrap();
                assert_eq!(d, quotient_oracle(&h, x, y), "h = {s}, window ({x},{y})");
            }
        }
    }
}

#[test]
fn more_slack_changes_nothing() {
    let h = UPoly::parse("x^3 - x").unwrap();
    let c = AhComplex::new(h.clone()).unwrap();
    let w = Window::new(&h, 5, 3);
    let wider = Window { x_slack: w.x_slack + 6, ..w };
    assert_eq!(
        c.hochschild(1, &w, Exec::default()).unwrap().0,
        c.hochschild(1, &wider, Exec::default()).unwrap().0
    );
    assert_eq!(c.nabla1_kernel(&w, Exec::default()).unwrap(), c.nabla1_kernel(&wider, Exec::default()).unwrap());
}
