//! Module-level invariants on randomized instances that cut across crates'
//! public API: pedal assemble/decompose identity and witness re-assertion.

mod common;

use common::{random_pedal, PedalClass, Rng};

use germcalc::calculus::integrate_i;
use germcalc::germs::{assemble_pedal, decompose_pedal};

#[test]
fn assemble_then_decompose_is_the_identity() {
    let mut rng = Rng::new(0x90b5_0001);
    for case in 0..200 {
        let g = random_pedal(&mut rng, PedalClass::Any);
        let m = assemble_pedal(&g);
        let back = decompose_pedal(&m).unwrap_or_else(|e| {
            panic!(
                "case {case}: decompose failed with {e} for n = {}, p = {}",
                g.n(),
                g.p()
            )
        });
        assert_eq!(back.p(), g.p(), "case {case}: p must be recovered verbatim");
        let window = back.n().common_valid(g.n());
        assert!(
            back.n().agrees_to(g.n(), window),
            "case {case}: n must be recovered inside the window: {:?}",
            back.n().first_difference_to(g.n(), window)
        );
    }
}

#[test]
fn accepted_fronts_satisfy_their_stored_witness() {
    let mut rng = Rng::new(0x90b5_0002);
    for case in 0..200 {
        let front = integrate_i(&random_pedal(&mut rng, PedalClass::Any)).expect("integrates");
        assert!(
            front.witness_holds(),
            "case {case}: witness identity violated"
        );
    }
}
