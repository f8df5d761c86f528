use lrh_core::classes;
use lrh_core::hochschild::Koszul;
use lrh_core::par::Exec;
use lrh_core::pbw::{Algebra, ArrangementSpec};
use lrh_core::ratmat::rat;
use lrh_core::slices::{Cochain, Truncation, Wedge};
use lrh_core::Error;

fn koszul(t: i64) -> Koszul {
    Koszul::new(Algebra::lines(ArrangementSpec::three_lines(rat(t)).unwrap()))
}

fn one_form(k: &Koszul, a: &str, b: &str) -> Cochain {
    let alg = k.algebra();
    Cochain::from_components([(Wedge::X, alg.parse(a).unwrap()), (Wedge::Y, alg.parse(b).unwrap())])
}

fn etas(k: &Koszul) -> Vec<Cochain> {
    classes::eta(k.algebra()).unwrap()
}

fn zetas(k: &Koszul) -> Vec<Cochain> {
    classes::zeta(k.algebra()).unwrap()
}

#[test]
fn h1_dimensions_and_cocycles() {
    for t in [1, 2, -1] {
        let k = koszul(t);
        let tr = Truncation::default();
        let r0 = k.cohomology(1, 0, tr, Exec::default()).unwrap();
        let r1 = k.cohomology(1, 1, tr, Exec::default()).unwrap();
        assert_eq!((r0.dim, r1.dim), (5, 8), "t = {t}");
        let e = etas(&k);
        let z = zetas(&k);
        assert!(e.iter().all(|c| k.is_cocycle(1, c)));
        assert!(z.iter().all(|c| k.is_cocycle(1, c)));
        assert!(k.classes_independent(1, 0, &e, tr, Exec::default()).unwrap());
        assert!(k.classes_independent(1, 1, &z, tr, Exec::default()).unwrap());
    }
}

#[test]
fn f_y_hat_is_a_coboundary() {
    let k = koszul(1);
    let f = one_form(&k, "0", "y^2 + x y");
    assert!(k.is_cocycle(1, &f));
    assert!(!k.classes_independent(1, 1, &[f], Truncation::default(), Exec::default()).unwrap());
}

#[test]
fn h2_degree_zero_does_not_stabilize() {
    // H²(S,U)_0 = D² k[E] x̂∧ŷ is infinite dimensional: truncated dims grow with N.
    let k = koszul(1);
    let r = k.cohomology(2, 0, Truncation::starting_at(2, 3), Exec::default());
    assert!(matches!(r, Err(Error::NotStable { .. })));
    let d: Vec<usize> = (2..6).map(|n| k.cohomology_at(2, 0, n, 3, Exec::default()).unwrap().dim()).collect();
    assert_eq!(d, vec![3, 4, 5, 6]);
}

#[test]
fn delta_squares_to_zero_on_slabs() {
    let k = koszul(3);
    for i in -1..=2 {
        let b = k.slab(0, i, 3);
        for j in 0..b.dim() {
            let c = b.element(j);
            assert!(k.delta(1, &k.delta(0, &c)).is_zero());
        }
    }
}

#[test]
fn cohomology_doc_roundtrips() {
    let k = koszul(1);
    let r = k.cohomology(0, 2, Truncation::starting_at(1, 2), Exec::Sequential).unwrap();
    let doc = r.doc();
    let s = serde_json::to_string(&doc).unwrap();
    assert_eq!(serde_json::from_str::<lrh_core::hochschild::CohomologyDoc>(&s).unwrap(), doc);
    assert_eq!(doc.dim, 3);
}
