mod common;

use common::*;
use proptest::prelude::*;
use twodof_core::factor::{right_coprime_mfd, stable_mfd, Factorization};
use twodof_core::polyalg::{q, PolyMat, RatFn, RatMat};
use twodof_core::stabilize::{
    cr_from_x, is_internally_stabilizing, solve_bezout, stabilizing_feedback, stable_doubly_coprime,
    youla_controller, StableDoublyCoprime,
};
use twodof_core::verify::{closed_loop, ClosedLoopConfig};

fn example_plant() -> RatMat {
    RatMat::scalar(RatFn::new(&p(&[-1, 1]) * &p(&[2, 1]), p(&[-2, 1]).pow(2)).unwrap())
}

fn unstable_2x2() -> RatMat {
    RatMat::new(2, 2, vec![rf(&[1], &[-1, 1]), rf(&[1], &[2, 1]), RatFn::zero(), rf(&[2, 1], &[3, 1])]).unwrap()
}

fn dc(pl: &RatMat) -> StableDoublyCoprime {
    stable_doubly_coprime(&right_coprime_mfd(pl).unwrap(), &q(1)).unwrap()
}

fn check_youla(dc: &StableDoublyCoprime, pl: &RatMat, k: &RatMat) -> Result<(), TestCaseError> {
    match youla_controller(dc, k) {
        Ok(cy) => {
            let r = is_internally_stabilizing(pl, &cy).unwrap();
            prop_assert!(r.stabilizing(), "K = {k} gave Cy = {cy}: {r}");
        }
        // singular or improper denominator: inadmissible, not a failure of the parametrization
        Err(twodof_core::Error::InadmissibleParameter) => {}
        Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bezout_identity_siso(pl in siso_plant()) {
        let d = solve_bezout(&right_coprime_mfd(&RatMat::scalar(pl)).unwrap()).unwrap();
        prop_assert!(d.bezout_residual().unwrap().is_identity());
        let lhs = d.dl.to_ratmat().inv().unwrap().mul(&d.nl.to_ratmat()).unwrap();
        prop_assert_eq!(lhs, d.n.to_ratmat().mul(&d.d.to_ratmat().inv().unwrap()).unwrap());
    }

    #[test]
    fn bezout_identity_mimo(pl in plant_2x2(true)) {
        let d = solve_bezout(&right_coprime_mfd(&pl).unwrap()).unwrap();
        prop_assert!(d.bezout_residual().unwrap().is_identity());
    }

    #[test]
    fn youla_sweep_unstable_siso(k in youla_parameter()) {
        let pl = example_plant();
        check_youla(&dc(&pl), &pl, &RatMat::scalar(k))?;
    }

    #[test]
    fn youla_sweep_stable_siso(k in youla_parameter()) {
        let pl = RatMat::scalar(rf(&[3, 1], &[2, 3, 1]));
        check_youla(&dc(&pl), &pl, &RatMat::scalar(k))?;
    }

    #[test]
    fn youla_sweep_mimo(ks in prop::collection::vec(youla_parameter(), 4)) {
        let pl = unstable_2x2();
        check_youla(&dc(&pl), &pl, &RatMat::new(2, 2, ks).unwrap())?;
    }

    #[test]
    fn cr_from_x_realizes_n_x(x in stable_proper(2, 4)) {
        let pl = example_plant();
        let s = stable_mfd(&right_coprime_mfd(&pl).unwrap(), &q(2)).unwrap();
        let x = RatMat::scalar(x);
        let cy = stabilizing_feedback(&s).unwrap();
        let cr = cr_from_x(&pl, &cy, &s, &x).unwrap();
        let rep = closed_loop(&pl, &ClosedLoopConfig::TwoDof { cy, cr }).unwrap();
        prop_assert_eq!(rep.t_yr, s.numerator().mul(&x).unwrap());
        prop_assert_eq!(rep.t_ur, s.denominator().mul(&x).unwrap());
    }

    #[test]
    fn stabilizing_feedback_on_random_plants(pl in plant_2x2(true)) {
        let s = stable_mfd(&right_coprime_mfd(&pl).unwrap(), &q(1)).unwrap();
        let cy = stabilizing_feedback(&s).unwrap();
        prop_assert!(is_internally_stabilizing(&pl, &cy).unwrap().stabilizing());
    }

    #[test]
    fn verdict_invariant_under_unimodular_right_factor(c in -3i64..=3, k in 0usize..=2) {
        let pl = unstable_2x2();
        let mfd = right_coprime_mfd(&pl).unwrap();
        let u = PolyMat::new(2, 2, vec![p(&[1]), twodof_core::Poly::monomial(q(c), k), twodof_core::Poly::zero(), p(&[1])]).unwrap();
        let moved = mfd.right_multiply(&u).unwrap();
        let plant_moved = moved.plant().unwrap();
        prop_assert_eq!(&plant_moved, &pl);
        let cy = stabilizing_feedback(&stable_mfd(&mfd, &q(1)).unwrap()).unwrap();
        prop_assert_eq!(
            is_internally_stabilizing(&pl, &cy).unwrap(),
            is_internally_stabilizing(&plant_moved, &cy).unwrap()
        );
    }
}

#[test]
fn central_controller_on_example_plant() {
    let pl = example_plant();
    let d = dc(&pl);
    let cy = youla_controller(&d, &RatMat::zeros(1, 1)).unwrap();
    assert!(is_internally_stabilizing(&pl, &cy).unwrap().stabilizing());
    let cy = youla_controller(&d, &RatMat::scalar(rf(&[1], &[1, 1]))).unwrap();
    assert!(is_internally_stabilizing(&pl, &cy).unwrap().stabilizing());
}
