//! Singularity recognition by exact origin criteria.
//!
//! Pedal side: `(p, y)` is a local diffeomorphism iff `dp/dx(0,0) != 0`
//! (non-singular germ); otherwise `d2p/dx2(0,0) != 0` makes the local
//! algebra the cross-cap one, and `dp/dy(0,0) != 0` makes the Morse
//! residual a diffeomorphism: together, the Whitney umbrella. Legendrian
//! side: with `L` the reduced Legendrian Jacobian (`L(0,0) = 0` by
//! normalization), `dL/dx(0,0) != 0` is the cuspidal edge (the null field
//! d/dx is transverse to `{L = 0}`) and otherwise `d2L/dx2(0,0) != 0`
//! together with the nonvanishing 2x2 Jacobian of `(L, dL/dx)` at the
//! origin is the swallowtail.
//!
//! Everything outside those classes is an explicit `Unrecognized` outcome
//! carrying the full diagnostics; there is no tolerance anywhere.

use crate::coeff::Coeff;
use crate::germs::{GermError, MapGerm3, NormalizedLegendrianGerm, PedalGerm};
use crate::jet::Jet2;
use crate::legendrian::lj_reduced;

/// Recognition outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    NonSingular,
    WhitneyUmbrella,
    Swallowtail,
    CuspidalEdge,
    Unrecognized,
}

impl Tag {
    pub fn name(self) -> &'static str {
        match self {
            Tag::NonSingular => "NonSingular",
            Tag::WhitneyUmbrella => "WhitneyUmbrella",
            Tag::Swallowtail => "Swallowtail",
            Tag::CuspidalEdge => "CuspidalEdge",
            Tag::Unrecognized => "Unrecognized",
        }
    }
}

/// One evaluated criterion: its name and the exact rational value it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub criterion: &'static str,
    pub value: Coeff,
}

/// A classification with every tested quantity on record, successful or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub tag: Tag,
    pub diagnostics: Vec<Diagnostic>,
}

impl Classification {
    fn new(tag: Tag, diagnostics: Vec<Diagnostic>) -> Self {
        Classification { tag, diagnostics }
    }
}

fn diag(criterion: &'static str, value: Coeff) -> Diagnostic {
    Diagnostic { criterion, value }
}

/// Classify a pedal germ from the exact origin derivatives of `p`.
pub fn classify_pedal(g: &PedalGerm) -> Classification {
    let p = g.p();
    let p_x = p.coeff(1, 0);
    let p_y = p.coeff(0, 1);
    let p_xx = p.coeff(2, 0).mul_int(2);
    let n_x = g.n().coeff(1, 0);
    let diagnostics = vec![
        diag("dp/dx(0,0)", p_x.clone()),
        diag("d2p/dx2(0,0)", p_xx.clone()),
        diag("dp/dy(0,0)", p_y.clone()),
        diag("dn/dx(0,0)", n_x),
    ];
    let tag = if !p_x.is_zero() {
        Tag::NonSingular
    } else if !p_xx.is_zero() && !p_y.is_zero() {
        Tag::WhitneyUmbrella
    } else {
        Tag::Unrecognized
    };
    Classification::new(tag, diagnostics)
}

/// Classical cross-cap criterion, the independent oracle: with the kernel
/// direction `d/dx` at the origin, the three vectors `dm/dy(0)`,
/// `d2m/dx2(0)`, `d2m/dxdy(0)` must be linearly independent.
pub fn whitney_criterion(m: &MapGerm3) -> Result<bool, GermError> {
    let dx_at_origin = [m.c1.coeff(1, 0), m.c2.coeff(1, 0), m.c3.coeff(1, 0)];
    if dx_at_origin.iter().any(|c| !c.is_zero()) {
        return Err(GermError::KernelNotX);
    }
    let v1 = [m.c1.coeff(0, 1), m.c2.coeff(0, 1), m.c3.coeff(0, 1)];
    let v2 = [
        m.c1.coeff(2, 0).mul_int(2),
        m.c2.coeff(2, 0).mul_int(2),
        m.c3.coeff(2, 0).mul_int(2),
    ];
    let v3 = [m.c1.coeff(1, 1), m.c2.coeff(1, 1), m.c3.coeff(1, 1)];
    Ok(!det3(&v1, &v2, &v3).is_zero())
}

fn det3(a: &[Coeff; 3], b: &[Coeff; 3], c: &[Coeff; 3]) -> Coeff {
    let minor = |i: usize, j: usize| &(&b[i] * &c[j]) - &(&b[j] * &c[i]);
    let t0 = &a[0] * &minor(1, 2);
    let t1 = &a[1] * &minor(0, 2);
    let t2 = &a[2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

/// Classify a normalized Legendrian germ through its reduced Legendrian
/// Jacobian.
pub fn classify_legendrian(germ: &NormalizedLegendrianGerm) -> Classification {
    classify_front_from_lj(&lj_reduced(germ))
}

/// The decision tree on a reduced Legendrian Jacobian jet `L` with
/// `L(0,0) = 0`. Exposed separately so unit-factor invariance can be tested
/// on `u * L` directly.
pub fn classify_front_from_lj(lift: &Jet2) -> Classification {
    let l_x = lift.coeff(1, 0);
    let l_y = lift.coeff(0, 1);
    let l_xx = lift.coeff(2, 0).mul_int(2);
    let l_xy = lift.coeff(1, 1);
    // Jacobian of (L, dL/dx) at the origin:
    // | L_x   L_y  |
    // | L_xx  L_xy |
    let jac_det = &(&l_x * &l_xy) - &(&l_y * &l_xx);
    let diagnostics = vec![
        diag("LJ(0,0)", lift.coeff(0, 0)),
        diag("dLJ/dx(0,0)", l_x.clone()),
        diag("d2LJ/dx2(0,0)", l_xx.clone()),
        diag("det D(LJ, dLJ/dx)(0,0)", jac_det.clone()),
    ];
    let tag = if !l_x.is_zero() {
        Tag::CuspidalEdge
    } else if !l_xx.is_zero() && !jac_det.is_zero() {
        Tag::Swallowtail
    } else {
        Tag::Unrecognized
    };
    Classification::new(tag, diagnostics)
}

/// The class pairing along integration: non-singular germs integrate to
/// cuspidal edges, Whitney umbrellas to swallowtails.
pub fn corresponding_tag(pedal: Tag) -> Tag {
    match pedal {
        Tag::NonSingular => Tag::CuspidalEdge,
        Tag::WhitneyUmbrella => Tag::Swallowtail,
        _ => Tag::Unrecognized,
    }
}

/// Report of the classification correspondence along integration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub pedal: Classification,
    pub legendrian: Classification,
    pub consistent: bool,
}

/// Classify a pedal germ and its integral, checking the pairing
/// non-singular <-> cuspidal edge, Whitney umbrella <-> swallowtail,
/// unrecognized <-> unrecognized.
pub fn correspondence_check(
    g: &PedalGerm,
) -> Result<CorrespondenceReport, crate::calculus::CalculusError> {
    let pedal = classify_pedal(g);
    let front = crate::calculus::integrate_i(g)?;
    let legendrian = classify_legendrian(&front);
    let consistent = corresponding_tag(pedal.tag) == legendrian.tag;
    Ok(CorrespondenceReport {
        pedal,
        legendrian,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::germs::{assemble_pedal, validate_normalized, PedalGerm};

    fn jet(text: &str) -> Jet2 {
        parse_expr(text, 8).unwrap()
    }

    fn pedal(n: &str, p: &str) -> PedalGerm {
        PedalGerm::new(jet(n), jet(p)).unwrap()
    }

    #[test]
    fn pedal_fixtures() {
        assert_eq!(
            classify_pedal(&pedal("-x", "-x^2 - y")).tag,
            Tag::WhitneyUmbrella
        );
        assert_eq!(classify_pedal(&pedal("x", "x")).tag, Tag::NonSingular);
        let c = classify_pedal(&pedal("x", "x^2"));
        assert_eq!(c.tag, Tag::Unrecognized);
        // all four tested quantities are on record
        assert_eq!(c.diagnostics.len(), 4);
        assert_eq!(c.diagnostics[2].criterion, "dp/dy(0,0)");
        assert!(c.diagnostics[2].value.is_zero());
    }

    #[test]
    fn whitney_criterion_fixtures() {
        // normalized Whitney umbrella: vectors (0,-1,1), (0,-2,0), (1,0,0)
        let m = assemble_pedal(&pedal("-x", "-x^2 - y"));
        assert!(whitney_criterion(&m).unwrap());

        // cuspidal-edge-like image (x^3, x^2, y): third vector vanishes
        let m = crate::germs::MapGerm3::new(jet("x^3"), jet("x^2"), jet("y")).unwrap();
        assert!(!whitney_criterion(&m).unwrap());

        // the Whitney normal form itself
        let m = crate::germs::MapGerm3::new(jet("x*y"), jet("x^2"), jet("y")).unwrap();
        assert!(whitney_criterion(&m).unwrap());
    }

    #[test]
    fn whitney_criterion_requires_x_kernel() {
        let m = crate::germs::MapGerm3::new(jet("x"), jet("y"), jet("x + y")).unwrap();
        assert_eq!(
            whitney_criterion(&m),
            Err(crate::germs::GermError::KernelNotX)
        );
    }

    #[test]
    fn legendrian_fixtures() {
        let st = validate_normalized(&jet("1/4*x^4 + 1/2*x^2*y"), &jet("-1/3*x^3 - x*y")).unwrap();
        let c = classify_legendrian(&st);
        assert_eq!(c.tag, Tag::Swallowtail);
        // L = -x^2 - y: L_xx = -2, det = -2
        assert_eq!(c.diagnostics[2].value, Coeff::from_int(-2));
        assert_eq!(c.diagnostics[3].value, Coeff::from_int(-2));

        let ce = validate_normalized(&jet("1/3*x^3"), &jet("1/2*x^2")).unwrap();
        assert_eq!(classify_legendrian(&ce).tag, Tag::CuspidalEdge);

        let st4 = validate_normalized(&jet("3*x^4 + x^2*y"), &jet("-4*x^3 - 2*x*y")).unwrap();
        let c4 = classify_legendrian(&st4);
        assert_eq!(c4.tag, Tag::Swallowtail);
        // L = -12x^2 - 2y: det = -(-2)(-24) = -48
        assert_eq!(c4.diagnostics[3].value, Coeff::from_int(-48));
    }

    #[test]
    fn degenerate_fronts_are_accepted_but_unrecognized() {
        // (x^4/4, x^3/3, y) has witness n = x but LJ = x^2: beyond the two
        // recognized front classes
        let front = validate_normalized(&jet("1/4*x^4"), &jet("1/3*x^3")).unwrap();
        let c = classify_legendrian(&front);
        assert_eq!(c.tag, Tag::Unrecognized);
        assert_eq!(c.diagnostics[1].value, Coeff::from_int(0)); // dLJ/dx(0,0)
        assert_eq!(c.diagnostics[2].value, Coeff::from_int(2)); // d2LJ/dx2(0,0)
        assert_eq!(c.diagnostics[3].value, Coeff::from_int(0)); // Jacobian det
    }

    #[test]
    fn correspondence_fixtures() {
        let r = correspondence_check(&pedal("-x", "-x^2 - y")).unwrap();
        assert_eq!(r.pedal.tag, Tag::WhitneyUmbrella);
        assert_eq!(r.legendrian.tag, Tag::Swallowtail);
        assert!(r.consistent);

        let r = correspondence_check(&pedal("x", "x")).unwrap();
        assert_eq!(r.pedal.tag, Tag::NonSingular);
        assert_eq!(r.legendrian.tag, Tag::CuspidalEdge);
        assert!(r.consistent);

        let r = correspondence_check(&pedal("x", "x^2 + y^2")).unwrap();
        assert_eq!(r.pedal.tag, Tag::Unrecognized);
        assert_eq!(r.legendrian.tag, Tag::Unrecognized);
        assert!(r.consistent);
    }

    #[test]
    fn unit_factor_invariance_on_fixtures() {
        for lj in ["-x^2 - y", "x", "-12*x^2 - 2*y", "x^2"] {
            let l = jet(lj);
            let base = classify_front_from_lj(&l).tag;
            for unit in ["1 + x", "1 + y", "1 + x + y^2"] {
                let scaled = l.mul(&jet(unit)).unwrap();
                assert_eq!(classify_front_from_lj(&scaled).tag, base, "{lj} * {unit}");
            }
        }
    }

    #[test]
    fn scaling_chain_preserves_swallowtail() {
        // Eq-(3)-to-Eq-(4) scaling: source (x, y/6), target (12X, 12Y, 6Z)
        let st = validate_normalized(&jet("1/4*x^4 + 1/2*x^2*y"), &jet("-1/3*x^3 - x*y")).unwrap();
        let u = jet("x");
        let v = jet("1/6*y");
        let phi1 = st
            .phi1()
            .compose2(&u, &v)
            .unwrap()
            .scale(&Coeff::from_int(12));
        let phi2 = st
            .phi2()
            .compose2(&u, &v)
            .unwrap()
            .scale(&Coeff::from_int(12));
        let scaled = validate_normalized(&phi1, &phi2).unwrap();
        assert_eq!(classify_legendrian(&scaled).tag, Tag::Swallowtail);
        assert_eq!(phi1, jet("3*x^4 + x^2*y"));
        assert_eq!(phi2, jet("-4*x^3 - 2*x*y"));
    }
}
