use lrh_core::classes;
use lrh_core::hochschild::Koszul;
use lrh_core::lifting::{
    build_lifting, chain_map_check, lie_morphism_check, nabla, nabla_ker_coker, euler_eigen_check, Theta,
};
use lrh_core::par::Exec;
use lrh_core::pbw::{Algebra, ArrangementSpec};
use lrh_core::ratmat::rat;
use lrh_core::slices::Truncation;

fn koszul(t: i64) -> Koszul {
    Koszul::new(Algebra::lines(ArrangementSpec::three_lines(rat(t)).unwrap()))
}

#[test]
fn nabla_d_on_rows_zero_and_one() {
    let k = koszul(1);
    let d = build_lifting(Theta::D, k.algebra()).unwrap();
    let tr = Truncation::default();
    let n0 = nabla(&k, &d, 0, 0, tr, Exec::default()).unwrap();
    assert_eq!((n0.kernel_dim(), n0.cokernel_dim()), (1, 2));
    let n1 = nabla(&k, &d, 1, 0, tr, Exec::default()).unwrap();
    assert_eq!((n1.matrix.cols(), n1.matrix.rows()), (5, 8));
    assert_eq!((n1.kernel_dim(), n1.cokernel_dim()), (0, 3));
}

#[test]
fn cokernel_of_nabla_one_is_spanned_by_three_zetas() {
    for t in [1, 2] {
        let k = koszul(t);
        let d = build_lifting(Theta::D, k.algebra()).unwrap();
        let (kc, _) = nabla_ker_coker(&k, &d, 1, 0, Truncation::default(), Exec::default()).unwrap();
        assert_eq!(kc.dims(), (0, 3));
        let z = classes::zeta(k.algebra()).unwrap();
        let picked = [z[0].clone(), z[5].clone(), z[7].clone()];
        assert!(kc.cokernel_independent(&picked).unwrap(), "t = {t}");
    }
}

#[test]
fn nabla_two_has_one_dim_kernel_and_is_onto() {
    let k = koszul(1);
    let d = build_lifting(Theta::D, k.algebra()).unwrap();
    let (kc, cert) = nabla_ker_coker(&k, &d, 2, 0, Truncation::default(), Exec::default()).unwrap();
    assert_eq!(kc.dims(), (1, 0));
    assert!(cert.reported_n.is_some());
}

#[test]
fn sharp_commutes_with_delta() {
    let k = koszul(2);
    let alg = k.algebra();
    for theta in [Theta::D, Theta::E] {
        let l = build_lifting(theta, alg).unwrap();
        for q in 0..=2 {
            for i in -1..=1 {
                assert!(chain_map_check(&k, &l, q, i, 3), "{theta:?} q={q} i={i}");
            }
        }
    }
}

#[test]
fn corrupted_lifting_breaks_chain_map() {
    let k = koszul(1);
    let bad = build_lifting(Theta::D, k.algebra()).unwrap().corrupted();
    assert!(!chain_map_check(&k, &bad, 1, 0, 3));
}

#[test]
fn euler_acts_by_degree() {
    let k = koszul(1);
    for q in 0..=2 {
        for i in -2..=2 {
            assert!(euler_eigen_check(&k, q, i, 3).unwrap());
        }
    }
}

#[test]
fn nabla_is_a_lie_morphism() {
    for l in [3, 5] {
        let k = Koszul::new(Algebra::lines(ArrangementSpec::generic(l).unwrap()));
        assert!(lie_morphism_check(&k, 0, 0, Truncation::starting_at(2, 2), Exec::default()).unwrap());
        assert!(lie_morphism_check(&k, 1, 0, Truncation::default(), Exec::default()).unwrap());
    }
}
