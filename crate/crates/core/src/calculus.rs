//! The integration and differentiation transforms between pedal germs and
//! normalized Legendrian germs, plus their round-trip reports.
//!
//! Integration sends `(n, p)` to `(int0_x(n*p), int0_x(p), y)`; the result
//! is always a normalized Legendrian germ with witness `n`, and that is
//! asserted at runtime rather than trusted, so truncation bugs near the top
//! degree surface here instead of downstream. Differentiation sends a
//! validated front back to `(n, d(phi2)/dx)`. On jets the two transforms
//! invert each other exactly in one direction and up to the `x`-constant
//! part in the other, which is the content of the round-trip reports.

use thiserror::Error;

use crate::germs::{validate_normalized, GermError, NormalizedLegendrianGerm, PedalGerm};
use crate::jet::{Exp, Jet2, JetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error(transparent)]
    Jet(#[from] JetError),
    /// Integration produced a front that fails validation: either a bug or
    /// truncation data loss; never expected for inputs within the order.
    #[error("integrated germ failed post-validation: {0}")]
    PostValidationFailed(GermError),
    /// The recovered witness disagrees with the input `n` inside the window.
    #[error("integrated germ witness mismatch at x^{}*y^{}", (.0).0, (.0).1)]
    WitnessMismatch(Exp),
}

impl CalculusError {
    pub fn code(&self) -> &'static str {
        match self {
            CalculusError::Jet(e) => e.code(),
            CalculusError::PostValidationFailed(e) => e.code(),
            CalculusError::WitnessMismatch(_) => "WitnessMismatch",
        }
    }
}

/// The integration transform: `(n, p)` to the front
/// `(int0_x(n*p), int0_x(p), y)` with stored witness `n`.
pub fn integrate_i(g: &PedalGerm) -> Result<NormalizedLegendrianGerm, CalculusError> {
    let product = g.n().mul(g.p())?;
    let phi1 = product.int0_x()?;
    let phi2 = g.p().int0_x()?;

    // Post-validate instead of trusting the construction.
    let recovered =
        validate_normalized(&phi1, &phi2).map_err(CalculusError::PostValidationFailed)?;
    let window = recovered.pedal_n().common_valid(g.n());
    if let Some((exp, _, _)) = recovered.pedal_n().first_difference_to(g.n(), window) {
        return Err(CalculusError::WitnessMismatch(exp));
    }

    // Store the exact input witness, not the re-divided one: above the
    // division window the input is strictly more informative.
    Ok(NormalizedLegendrianGerm::from_parts_unchecked(
        phi1,
        phi2,
        g.n().clone(),
    ))
}

/// The differentiation transform: a validated front maps to the pedal pair
/// `(n, d(phi2)/dx)`. Validity is guaranteed by the stored witness, so this
/// cannot fail.
pub fn differentiate_d(germ: &NormalizedLegendrianGerm) -> PedalGerm {
    PedalGerm::from_parts_unchecked(germ.pedal_n().clone(), germ.phi2().d_dx())
}

/// One compared component of a round-trip report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDiff {
    pub component: &'static str,
    pub monomial: Exp,
    pub expected: String,
    pub got: String,
}

/// Exact component-by-component verdict of a round trip, with the first
/// differing monomial per component on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub equal: bool,
    pub compared_degree: u32,
    pub mismatches: Vec<ComponentDiff>,
}

fn compare(components: &[(&'static str, &Jet2, &Jet2)]) -> RoundtripReport {
    let compared_degree = components
        .iter()
        .map(|(_, a, b)| a.common_valid(b))
        .min()
        .unwrap_or(0);
    let mut mismatches = Vec::new();
    for (name, a, b) in components {
        if let Some((exp, want, got)) = a.first_difference_to(b, compared_degree) {
            mismatches.push(ComponentDiff {
                component: name,
                monomial: exp,
                expected: want.to_string(),
                got: got.to_string(),
            });
        }
    }
    RoundtripReport {
        equal: mismatches.is_empty(),
        compared_degree,
        mismatches,
    }
}

/// Check `differentiate(integrate(g)) = g` exactly.
pub fn roundtrip_di(g: &PedalGerm) -> Result<RoundtripReport, CalculusError> {
    let back = differentiate_d(&integrate_i(g)?);
    Ok(compare(&[("n", g.n(), back.n()), ("p", g.p(), back.p())]))
}

/// Check `integrate(differentiate(P)) = P` exactly. Fronts outside the
/// image of integration (nonzero x-constant part) are honestly reported as
/// not equal.
pub fn roundtrip_id(germ: &NormalizedLegendrianGerm) -> Result<RoundtripReport, CalculusError> {
    let back = integrate_i(&differentiate_d(germ))?;
    Ok(compare(&[
        ("phi1", germ.phi1(), back.phi1()),
        ("phi2", germ.phi2(), back.phi2()),
    ]))
}
