use lrh_core::hochschild::Koszul;
use lrh_core::lr_ce::{ce_full_row, lr_row, EulerianModuleData, Provenance};
use lrh_core::par::Exec;
use lrh_core::pbw::{Algebra, ArrangementSpec};
use lrh_core::ratmat::rat;
use lrh_core::slices::Truncation;

fn koszul(t: i64) -> Koszul {
    Koszul::new(Algebra::lines(ArrangementSpec::three_lines(rat(t)).unwrap()))
}

#[test]
fn rows_of_the_second_page() {
    let k = koszul(1);
    let expect = [[1, 3, 2], [0, 3, 3], [1, 1, 0]];
    for q in 0..3 {
        let (r, cert) = lr_row(&k, q, Truncation::default(), Exec::default()).unwrap();
        assert_eq!(r.dims, expect[q as usize], "q = {q}");
        assert_eq!(r.provenance, Provenance::Shortcut);
        assert!(cert.reported_n.is_some());
    }
}

#[test]
fn shortcut_agrees_with_full_complex_in_degree_zero() {
    let k = koszul(2);
    for q in 0..3 {
        let (a, _) = lr_row(&k, q, Truncation::default(), Exec::default()).unwrap();
        let (b, _) = ce_full_row(&k, q, 0, Truncation::default(), Exec::default()).unwrap();
        assert_eq!(a.dims, b.dims, "q = {q}");
    }
}

#[test]
fn nonzero_degrees_vanish() {
    let k = koszul(1);
    for q in 0..3 {
        for j in [-2, -1, 1, 2] {
            let (r, _) = ce_full_row(&k, q, j, Truncation::starting_at(3, 3), Exec::default()).unwrap();
            assert_eq!(r.dims, [0, 0, 0], "q = {q}, j = {j}");
            let m = EulerianModuleData::from_hochschild(&k, q, j, 3, 3, Exec::default()).unwrap();
            assert!(m.euler_homotopy_check().unwrap(), "q = {q}, j = {j}");
        }
    }
}
