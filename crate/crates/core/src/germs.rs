//! The two germ classes and their validation/decomposition logic.
//!
//! A [`PedalGerm`] is the pair `(n, p)` of a map-germ of pedal unfolding
//! type `(n*p, p, y)`: `n(0,0) = 0`, `dn/dx(0,0) != 0`, `p(0,0) = 0`.
//!
//! A [`NormalizedLegendrianGerm`] is a pair `(phi1, phi2)` standing for the
//! front `(phi1, phi2, y)` that admits a smooth normal in the chart where
//! the first normal component is nonzero. Acceptance recovers the witness
//! `n` with `d(phi1)/dx = n * d(phi2)/dx` by jet division; the normalization
//! condition "unit normal at the origin is +-d/dX" is exactly `n(0,0) = 0`
//! in that chart, and the kernel-field condition forces `dn/dx(0,0) != 0`.

use thiserror::Error;

use crate::jet::{divide, Jet2, JetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("third component is not the coordinate y")]
    ThirdComponentNotY,
    #[error("invariant violated: {condition}")]
    InvariantViolation { condition: &'static str },
    #[error("no smooth normal field exists at this jet order (division fails near x^{0}*y^{1})")]
    NotLegendrianAtJetOrder(u32, u32),
    #[error("d(phi2)/dx does not vanish at the origin")]
    ConditionBViolated,
    #[error("the unit normal at the origin is not +-d/dX (n(0,0) != 0)")]
    ConditionCViolated,
    #[error("the recovered normal witness has dn/dx(0,0) = 0")]
    KernelFieldDegenerate,
    #[error("the kernel of the differential at the origin is not d/dx")]
    KernelNotX,
    #[error(transparent)]
    Jet(#[from] JetError),
}

impl GermError {
    pub fn code(&self) -> &'static str {
        match self {
            GermError::ThirdComponentNotY => "ThirdComponentNotY",
            GermError::InvariantViolation { .. } => "InvariantViolation",
            GermError::NotLegendrianAtJetOrder(..) => "NotLegendrianAtJetOrder",
            GermError::ConditionBViolated => "ConditionBViolated",
            GermError::ConditionCViolated => "ConditionCViolated",
            GermError::KernelFieldDegenerate => "KernelFieldDegenerate",
            GermError::KernelNotX => "KernelNotX",
            GermError::Jet(e) => e.code(),
        }
    }
}

/// A map-germ `(R^2,0) -> (R^3,0)` given by its three component jets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGerm3 {
    pub c1: Jet2,
    pub c2: Jet2,
    pub c3: Jet2,
}

impl MapGerm3 {
    /// All components must share one truncation order and vanish at the
    /// origin (the germ maps 0 to 0).
    pub fn new(c1: Jet2, c2: Jet2, c3: Jet2) -> Result<Self, GermError> {
        if c1.order() != c2.order() || c1.order() != c3.order() {
            return Err(JetError::OrderMismatch(c1.order(), c2.order().max(c3.order())).into());
        }
        for c in [&c1, &c2, &c3] {
            if !c.coeff(0, 0).is_zero() {
                return Err(GermError::InvariantViolation {
                    condition: "component does not vanish at the origin",
                });
            }
        }
        Ok(MapGerm3 { c1, c2, c3 })
    }

    pub fn order(&self) -> u32 {
        self.c1.order()
    }

    pub fn eval(&self, x: f64, y: f64) -> [f64; 3] {
        [self.c1.eval(x, y), self.c2.eval(x, y), self.c3.eval(x, y)]
    }
}

/// The pair `(n, p)` of a map-germ of pedal unfolding type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PedalGerm {
    n: Jet2,
    p: Jet2,
}

impl PedalGerm {
    pub fn new(n: Jet2, p: Jet2) -> Result<Self, GermError> {
        if n.order() != p.order() {
            return Err(JetError::OrderMismatch(n.order(), p.order()).into());
        }
        if !n.coeff(0, 0).is_zero() {
            return Err(GermError::InvariantViolation {
                condition: "n(0,0) != 0",
            });
        }
        if n.coeff(1, 0).is_zero() {
            return Err(GermError::InvariantViolation {
                condition: "dn/dx(0,0) = 0",
            });
        }
        if !p.coeff(0, 0).is_zero() {
            return Err(GermError::InvariantViolation {
                condition: "p(0,0) != 0",
            });
        }
        if p.is_zero() {
            return Err(GermError::InvariantViolation {
                condition: "p is the zero jet",
            });
        }
        Ok(PedalGerm { n, p })
    }

    /// Skips validation; used where the invariants are already certified.
    pub fn from_parts_unchecked(n: Jet2, p: Jet2) -> Self {
        PedalGerm { n, p }
    }

    pub fn n(&self) -> &Jet2 {
        &self.n
    }

    pub fn p(&self) -> &Jet2 {
        &self.p
    }

    pub fn order(&self) -> u32 {
        self.n.order()
    }
}

/// A validated normalized Legendrian front `(phi1, phi2, y)` together with
/// its certified decomposition witness `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedLegendrianGerm {
    phi1: Jet2,
    phi2: Jet2,
    pedal_n: Jet2,
}

impl NormalizedLegendrianGerm {
    pub fn phi1(&self) -> &Jet2 {
        &self.phi1
    }

    pub fn phi2(&self) -> &Jet2 {
        &self.phi2
    }

    /// The witness `n` with `d(phi1)/dx = n * d(phi2)/dx` up to the
    /// guaranteed degree.
    pub fn pedal_n(&self) -> &Jet2 {
        &self.pedal_n
    }

    pub fn order(&self) -> u32 {
        self.phi1.order()
    }

    /// The front as a map-germ `(phi1, phi2, y)`.
    pub fn as_map(&self) -> MapGerm3 {
        MapGerm3 {
            c1: self.phi1.clone(),
            c2: self.phi2.clone(),
            c3: Jet2::var_y(self.order()),
        }
    }

    pub(crate) fn from_parts_unchecked(phi1: Jet2, phi2: Jet2, pedal_n: Jet2) -> Self {
        NormalizedLegendrianGerm {
            phi1,
            phi2,
            pedal_n,
        }
    }
}

/// Assemble the map `(n*p, p, y)` from a pedal pair.
pub fn assemble_pedal(g: &PedalGerm) -> MapGerm3 {
    let order = g.order();
    MapGerm3 {
        c1: g.n().mul(g.p()).expect("orders match by construction"),
        c2: g.p().clone(),
        c3: Jet2::var_y(order),
    }
}

/// Recover the pedal pair from an assembled map: `p` is the second
/// component, `n` the jet quotient of the first by the second. Fails with
/// `NotDivisible` when the germ is not of pedal unfolding type (e.g. the
/// Whitney umbrella normal form `(xy, x^2, y)` itself) and with a named
/// invariant violation when the quotient exists but is not a pedal witness.
pub fn decompose_pedal(m: &MapGerm3) -> Result<PedalGerm, GermError> {
    if m.c3 != Jet2::var_y(m.order()) {
        return Err(GermError::ThirdComponentNotY);
    }
    let p = m.c2.clone();
    let n = divide(&m.c1, &p).map_err(GermError::from)?.jet;
    PedalGerm::new(n, p)
}

/// Accept `(phi1, phi2, y)` as a normalized Legendrian germ, recovering and
/// storing the witness `n`. The error order mirrors the decision path:
/// division failure, then the normalization conditions, then kernel-field
/// degeneracy.
pub fn validate_normalized(
    phi1: &Jet2,
    phi2: &Jet2,
) -> Result<NormalizedLegendrianGerm, GermError> {
    if phi1.order() != phi2.order() {
        return Err(JetError::OrderMismatch(phi1.order(), phi2.order()).into());
    }
    if !phi1.coeff(0, 0).is_zero() || !phi2.coeff(0, 0).is_zero() {
        return Err(GermError::InvariantViolation {
            condition: "phi does not vanish at the origin",
        });
    }
    let dphi1 = phi1.d_dx();
    let dphi2 = phi2.d_dx();
    let n = match divide(&dphi1, &dphi2) {
        Ok(q) => q.jet,
        Err(JetError::NotDivisible(i, j)) => {
            return Err(GermError::NotLegendrianAtJetOrder(i, j));
        }
        Err(JetError::ZeroDivisor) => {
            // d(phi2)/dx = 0: no chart witness exists at all.
            return Err(GermError::NotLegendrianAtJetOrder(0, 0));
        }
        Err(e) => return Err(e.into()),
    };
    if !phi2.coeff(1, 0).is_zero() {
        return Err(GermError::ConditionBViolated);
    }
    if !n.coeff(0, 0).is_zero() {
        return Err(GermError::ConditionCViolated);
    }
    if n.coeff(1, 0).is_zero() {
        return Err(GermError::KernelFieldDegenerate);
    }
    let germ = NormalizedLegendrianGerm {
        phi1: phi1.clone(),
        phi2: phi2.clone(),
        pedal_n: n,
    };
    debug_assert!(germ.witness_holds());
    Ok(germ)
}

impl NormalizedLegendrianGerm {
    /// Re-assert the stored witness: `n * d(phi2)/dx = d(phi1)/dx` up to the
    /// guaranteed degree.
    pub fn witness_holds(&self) -> bool {
        let dphi1 = self.phi1.d_dx();
        let dphi2 = self.phi2.d_dx();
        let prod = match self.pedal_n.mul(&dphi2) {
            Ok(p) => p,
            Err(_) => return false,
        };
        prod.agrees_to(&dphi1, prod.common_valid(&dphi1))
    }
}
