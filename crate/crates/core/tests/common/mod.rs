//! Deterministic random generators shared by the integration suites.
//!
//! A tiny SplitMix64 keeps every run byte-reproducible without pulling an
//! RNG dependency into the tests.
#![allow(dead_code)] // each test target uses a different slice of this

use germcalc::germs::PedalGerm;
use germcalc::jet::Jet2;
use germcalc::Coeff;

pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Uniform nonzero in `-mag..=mag`.
    pub fn nonzero(&mut self, mag: i64) -> i64 {
        loop {
            let v = self.int(-mag, mag);
            if v != 0 {
                return v;
            }
        }
    }
}

pub const ORDER: u32 = 8;

/// A random jet with up to `max_terms` terms of total degree <= `max_deg`
/// and integer coefficients in `-coeff_mag..=coeff_mag`.
pub fn random_jet(rng: &mut Rng, max_deg: u32, max_terms: usize, coeff_mag: i64) -> Jet2 {
    let mut entries = Vec::new();
    let terms = rng.int(0, max_terms as i64) as usize;
    for _ in 0..terms {
        let i = rng.int(0, max_deg as i64) as u32;
        let j = rng.int(0, (max_deg - i) as i64) as u32;
        entries.push(((i, j), Coeff::from_int(rng.int(-coeff_mag, coeff_mag))));
    }
    Jet2::from_coeffs(ORDER, entries).expect("degrees bounded")
}

/// Which pedal class the generator should force.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum PedalClass {
    /// No forcing: the draw decides.
    Any,
    /// `dp/dx(0,0) != 0`.
    NonSingular,
    /// `dp/dx(0,0) = 0`, rest free.
    Singular,
    /// `dp/dx(0,0) = 0`, `d2p/dx2(0,0) != 0`, `dp/dy(0,0) != 0`.
    Whitney,
}

/// A random pedal germ within the generator bounds: `n = c*x` plus up to two
/// extra terms of degree <= 3, `p` with up to six terms of degree <= 4, all
/// coefficients in `[-5, 5]`. `deg(n) + deg(p) <= 7` keeps integration
/// inside the truncation order.
pub fn random_pedal(rng: &mut Rng, class: PedalClass) -> PedalGerm {
    // n: guaranteed dn/dx(0,0) != 0, n(0,0) = 0.
    let mut n_entries = vec![((1u32, 0u32), Coeff::from_int(rng.nonzero(5)))];
    for _ in 0..rng.int(0, 2) {
        let i = rng.int(0, 3) as u32;
        let j = rng.int(0, 3 - i as i64) as u32;
        if (i, j) == (0, 0) || (i, j) == (1, 0) {
            continue;
        }
        n_entries.push(((i, j), Coeff::from_int(rng.int(-5, 5))));
    }
    let n = Jet2::from_coeffs(ORDER, n_entries).expect("degrees bounded");

    // p: up to six terms of degree <= 4 away from the constant slot.
    let mut p_entries = Vec::new();
    for _ in 0..rng.int(1, 6) {
        let i = rng.int(0, 4) as u32;
        let j = rng.int(0, 4 - i as i64) as u32;
        if (i, j) == (0, 0) {
            continue;
        }
        p_entries.push(((i, j), Coeff::from_int(rng.int(-5, 5))));
    }
    match class {
        PedalClass::Any => {}
        PedalClass::NonSingular => {
            p_entries.retain(|(e, _)| *e != (1, 0));
            p_entries.push(((1, 0), Coeff::from_int(rng.nonzero(5))));
        }
        PedalClass::Singular => {
            p_entries.retain(|(e, _)| *e != (1, 0));
        }
        PedalClass::Whitney => {
            p_entries.retain(|(e, _)| *e != (1, 0) && *e != (2, 0) && *e != (0, 1));
            p_entries.push(((2, 0), Coeff::from_int(rng.nonzero(5))));
            p_entries.push(((0, 1), Coeff::from_int(rng.nonzero(5))));
        }
    }
    let mut p = Jet2::from_coeffs(ORDER, p_entries).expect("degrees bounded");
    if p.is_zero() {
        // give the degenerate draw a singular-but-nonzero default
        let fallback = if class == PedalClass::NonSingular {
            (1, 0)
        } else {
            (0, 1)
        };
        p = Jet2::monomial(Coeff::from_int(rng.nonzero(5)), fallback, ORDER).unwrap();
    }
    PedalGerm::new(n, p).expect("generator respects the invariants")
}
