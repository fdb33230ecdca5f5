mod common;

use common::*;
use proptest::prelude::*;
use twodof_core::factor::{right_coprime_mfd, stable_mfd, StableMfd};
use twodof_core::polyalg::{q, to_f64, RatFn, RatMat};
use twodof_core::stabilize::{cr_from_x, stable_doubly_coprime, youla_controller, TwoDofController};
use twodof_core::synthesis::{fig3_realization, model_matching};
use twodof_core::verify::{certify, closed_loop, dc_gain, dominant_time_constant, simulate_step, ClosedLoopConfig};

fn example_plant() -> RatMat {
    RatMat::scalar(RatFn::new(&p(&[-1, 1]) * &p(&[2, 1]), p(&[-2, 1]).pow(2)).unwrap())
}

fn smfd_of(pl: &RatMat) -> StableMfd {
    stable_mfd(&right_coprime_mfd(pl).unwrap(), &q(1)).unwrap()
}

fn check_fig3(pl: &RatMat, c: &TwoDofController) -> Result<(), TestCaseError> {
    let fig2 = closed_loop(pl, &ClosedLoopConfig::TwoDof { cy: c.cy().clone(), cr: c.cr().clone() }).unwrap();
    let blocks = fig3_realization(c, &q(1)).unwrap();
    let fig3 = closed_loop(pl, &blocks.config()).unwrap();
    prop_assert_eq!(&fig3.t_yr, &fig2.t_yr);
    prop_assert_eq!(&fig3.t_ur, &fig2.t_ur);
    prop_assert!(fig3.block_checks.iter().all(|c| c.holds), "{:?}", fig3.block_checks);
    // the composite reproduces both controller blocks
    prop_assert_eq!(&blocks.cff.mul(&blocks.cfb).unwrap(), c.cy());
    prop_assert_eq!(&blocks.cff.mul(&blocks.r).unwrap(), c.cr());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fig3_matches_fig2_on_example_plant(x in stable_proper(2, 4)) {
        let smfd = stable_mfd(&right_coprime_mfd(&example_plant()).unwrap(), &q(2)).unwrap();
        let x = RatMat::scalar(x);
        let t = smfd.nprime().mul(&x).unwrap();
        let r = model_matching(&smfd, &t, None).unwrap();
        check_fig3(&example_plant(), &r.controller)?;
    }

    #[test]
    fn fig3_matches_fig2_with_youla_feedback(pl in plant_2x2(true), k in youla_parameter(), xs in prop::collection::vec(stable_proper(1, 3), 4)) {
        let mfd = right_coprime_mfd(&pl).unwrap();
        let dc = stable_doubly_coprime(&mfd, &q(1)).unwrap();
        let k = RatMat::diag(&[k.clone(), k]);
        let Ok(cy) = youla_controller(&dc, &k) else { return Ok(()) };
        let x = RatMat::new(2, 2, xs).unwrap();
        let cr = cr_from_x(&pl, &cy, &dc.right, &x).unwrap();
        let c = TwoDofController::new(&pl, cy, cr).unwrap();
        check_fig3(&pl, &c)?;
    }

    #[test]
    fn certified_designs_settle_to_dc_gain(x in stable_proper(2, 4)) {
        let pl = RatMat::scalar(rf(&[3, 1], &[2, 3, 1]));
        let smfd = smfd_of(&pl);
        let x = RatMat::scalar(x);
        let t = smfd.nprime().mul(&x).unwrap();
        let r = model_matching(&smfd, &t, None).unwrap();
        prop_assert!(certify(&closed_loop(&pl, &r.configuration).unwrap(), &t).all_hold());
        let gain = dc_gain(&r.achieved_t).unwrap();
        let Some(tau) = dominant_time_constant(&r.achieved_t) else { return Ok(()) };
        // 30 time constants leaves room for repeated-pole polynomial growth
        let traces = simulate_step(&r.achieved_t, 30.0 * tau, tau / 100.0).unwrap();
        let y = traces[0].final_values()[0];
        prop_assert!((y - to_f64(gain.get(0, 0))).abs() < 1e-5, "y = {y}, gain = {gain:?}");
    }
}

#[test]
fn negative_control_detects_perturbed_target() {
    let pl = RatMat::scalar(rf(&[1], &[-2, 1]));
    let rep = closed_loop(&pl, &ClosedLoopConfig::UnityFeedback { cff: RatMat::scalar(rf(&[-4], &[1])) }).unwrap();
    assert_eq!(rep.t_yr, RatMat::scalar(rf(&[-4], &[2, 1])));
    assert!(certify(&rep, &RatMat::scalar(rf(&[-4], &[2, 1]))).all_hold());
    assert!(!certify(&rep, &RatMat::scalar(rf(&[-4], &[3, 1]))).all_hold());
}

#[test]
fn simulation_uniform_grid_and_channel_counts() {
    let t = RatMat::new(2, 2, vec![rf(&[1], &[1, 1]), rf(&[1], &[2, 1]), RatFn::zero(), rf(&[1], &[3, 1])]).unwrap();
    let traces = simulate_step(&t, 2.0, 0.01).unwrap();
    assert_eq!(traces.len(), 2);
    for tr in &traces {
        assert_eq!(tr.outputs.len(), 2);
        assert!(tr.outputs.iter().all(|o| o.len() == tr.time.len()));
        assert!(tr.time.windows(2).all(|w| ((w[1] - w[0]) - 0.01).abs() < 1e-12));
    }
}
