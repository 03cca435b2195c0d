//! Normal fields, Legendrian-lift rank checking, and the Legendrian
//! Jacobian.
//!
//! The unit normal of a normalized front has a nonzero first component near
//! the origin, so everything is computed with the unnormalized
//! representative `nu = (1, nu2, nu3)` in that affine chart: the chart map
//! to the unit sphere is a local diffeomorphism near `(1, 0, 0)` and a unit
//! normalization would leave the rational-jet ring. The reduced Legendrian
//! Jacobian `d(phi2)/dx` differs from the true signed area density by the
//! positive unit `1/||nu||`, and every recognition criterion downstream is
//! invariant under multiplication by a positive unit; tests assert that
//! instead of assuming it.

use crate::coeff::Coeff;
use crate::germs::NormalizedLegendrianGerm;
use crate::jet::Jet2;

/// The unnormalized normal `nu = (1, nu2, nu3)` along a normalized front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalField {
    pub nu1: Jet2,
    pub nu2: Jet2,
    pub nu3: Jet2,
}

/// Build the normal field `nu = (1, -n, -(d(phi1)/dy - n*d(phi2)/dy))`.
///
/// Both orthogonality identities `nu . dPhi/dx = 0` and `nu . dPhi/dy = 0`
/// hold up to the guaranteed degree and are asserted here.
pub fn normal_field(germ: &NormalizedLegendrianGerm) -> NormalField {
    let order = germ.order();
    let n = germ.pedal_n();
    let nu2 = n.neg();
    let nu3 = germ
        .phi1()
        .d_dy()
        .sub(&n.mul(&germ.phi2().d_dy()).expect("orders match"))
        .expect("orders match")
        .neg();
    let field = NormalField {
        nu1: Jet2::one(order),
        nu2,
        nu3,
    };

    let (dot_x, dot_y) = orthogonality_defects(germ, &field);
    debug_assert!(
        dot_x.is_zero() && dot_y.is_zero(),
        "normal field failed orthogonality: {dot_x} / {dot_y}"
    );
    field
}

/// The two orthogonality dot products, truncated to the window where they
/// are certified; both must be the zero jet for a genuine normal field.
pub fn orthogonality_defects(germ: &NormalizedLegendrianGerm, field: &NormalField) -> (Jet2, Jet2) {
    let phi1_x = germ.phi1().d_dx();
    let phi2_x = germ.phi2().d_dx();
    let phi1_y = germ.phi1().d_dy();
    let phi2_y = germ.phi2().d_dy();

    // nu . dPhi/dx = phi1_x + nu2*phi2_x   (third slot: d(y)/dx = 0)
    let dot_x = phi1_x
        .add(&field.nu2.mul(&phi2_x).expect("orders match"))
        .expect("orders match");
    // nu . dPhi/dy = phi1_y + nu2*phi2_y + nu3
    let dot_y = phi1_y
        .add(&field.nu2.mul(&phi2_y).expect("orders match"))
        .expect("orders match")
        .add(&field.nu3)
        .expect("orders match");

    (truncate_to_valid(&dot_x), truncate_to_valid(&dot_y))
}

fn truncate_to_valid(j: &Jet2) -> Jet2 {
    let v = j.valid_degree();
    Jet2::from_coeffs(
        j.order(),
        j.terms()
            .filter(|((i, jj), _)| i + jj <= v)
            .map(|(e, c)| (e, c.clone())),
    )
    .expect("subset of an existing jet")
}

/// Is the Legendrian lift `(x,y) -> (phi1, phi2, y, nu2, nu3)` an immersion
/// at the origin? Rank of the 5x2 Jacobian must be 2; since the `y`-row
/// contributes `(0, 1)`, this reduces to the x-partial column being nonzero.
pub fn lift_rank_check(germ: &NormalizedLegendrianGerm, field: &NormalField) -> bool {
    // The y-row contributes the Jacobian row (0, 1), so the columns are
    // independent exactly when the x-partial column is nonzero: any
    // proportionality x_col = lambda * y_col forces lambda = 0 there.
    let x_col = [
        germ.phi1().coeff(1, 0),
        germ.phi2().coeff(1, 0),
        field.nu2.coeff(1, 0),
        field.nu3.coeff(1, 0),
    ];
    x_col.iter().any(|c| !c.is_zero())
}

/// The reduced Legendrian Jacobian `d(phi2)/dx`: equal to the true
/// Legendrian Jacobian up to the positive unit `||nu||` in the chart
/// `n1 = 1/||nu||`, and the representative every criterion consumes.
pub fn lj_reduced(germ: &NormalizedLegendrianGerm) -> Jet2 {
    germ.phi2().d_dx()
}

/// The exact 3x3 determinant `det(dPhi/dx, dPhi/dy, nu)` with the
/// unnormalized normal in the last slot. Satisfies
/// `lj_det = lj_reduced * (1 + nu2^2 + nu3^2)` exactly.
pub fn lj_det(germ: &NormalizedLegendrianGerm, field: &NormalField) -> Jet2 {
    let phi1_x = germ.phi1().d_dx();
    let phi2_x = germ.phi2().d_dx();
    let phi1_y = germ.phi1().d_dy();
    let phi2_y = germ.phi2().d_dy();
    let m = |a: &Jet2, b: &Jet2| a.mul(b).expect("orders match");

    // | phi1_x  phi1_y  1   |
    // | phi2_x  phi2_y  nu2 |
    // | 0       1       nu3 |
    let t1 = m(&phi1_x, &m(&phi2_y, &field.nu3));
    let t2 = m(&phi1_x, &field.nu2);
    let t3 = m(&phi1_y, &m(&phi2_x, &field.nu3));
    let t4 = phi2_x;
    t1.sub(&t2)
        .and_then(|a| a.sub(&t3))
        .and_then(|a| a.add(&t4))
        .expect("orders match")
}

/// The positive unit `1 + nu2^2 + nu3^2 = ||nu||^2` relating `lj_det` to
/// `lj_reduced`.
pub fn norm_squared(field: &NormalField) -> Jet2 {
    let order = field.nu1.order();
    let m = |a: &Jet2, b: &Jet2| a.mul(b).expect("orders match");
    Jet2::one(order)
        .add(&m(&field.nu2, &field.nu2))
        .and_then(|a| a.add(&m(&field.nu3, &field.nu3)))
        .expect("orders match")
}

/// Component-wise cross product `dPhi/dx x dPhi/dy`; equals
/// `lj_reduced * nu` component-wise.
pub fn tangent_cross_product(germ: &NormalizedLegendrianGerm) -> [Jet2; 3] {
    let phi1_x = germ.phi1().d_dx();
    let phi2_x = germ.phi2().d_dx();
    let phi1_y = germ.phi1().d_dy();
    let phi2_y = germ.phi2().d_dy();
    let m = |a: &Jet2, b: &Jet2| a.mul(b).expect("orders match");

    // (phi1_x, phi2_x, 0) x (phi1_y, phi2_y, 1)
    let cx = phi2_x.clone();
    let cy = phi1_x.neg();
    let cz = m(&phi1_x, &phi2_y)
        .sub(&m(&phi2_x, &phi1_y))
        .expect("orders match");
    [cx, cy, cz]
}

/// Origin value of the normal field: always `(1, 0, 0)` for accepted germs.
pub fn normal_at_origin(field: &NormalField) -> [Coeff; 3] {
    [
        field.nu1.coeff(0, 0),
        field.nu2.coeff(0, 0),
        field.nu3.coeff(0, 0),
    ]
}
