//! Exact arithmetic on truncated bivariate power series (jets).
//!
//! A [`Jet2`] is a polynomial in `x`, `y` with rational coefficients,
//! truncated at a fixed total degree `order`. It is the carrier for every
//! function-germ symbol in the toolkit. Coefficients are stored sparsely
//! (no zeros) so that equality is map equality.
//!
//! Truncation makes top-degree information of some operations meaningless:
//! each jet therefore carries a `valid` degree, and coefficients of total
//! degree above it may disagree with the underlying germ. Differentiation
//! lowers it by one, division by `ord(p)`; comparisons that certify germ
//! identities restrict to the common valid degree via [`Jet2::agrees_to`].

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::Coeff;

/// Exponent pair `(i, j)` for the monomial `x^i * y^j`.
pub type Exp = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("term x^{0}*y^{1} exceeds truncation order {2}")]
    DegreeOverflow(u32, u32, u32),
    #[error("substituted series has a nonzero constant term")]
    NotAGerm,
    #[error("no power-series quotient exists: inconsistent near x^{0}*y^{1}")]
    NotDivisible(u32, u32),
    #[error("division by the zero jet")]
    ZeroDivisor,
}

impl JetError {
    /// Stable name used verbatim in CLI JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            JetError::OrderMismatch(..) => "OrderMismatch",
            JetError::DegreeOverflow(..) => "DegreeOverflow",
            JetError::NotAGerm => "NotAGerm",
            JetError::NotDivisible(..) => "NotDivisible",
            JetError::ZeroDivisor => "ZeroDivisor",
        }
    }
}

/// A truncated bivariate power series with exact rational coefficients.
#[derive(Clone)]
pub struct Jet2 {
    order: u32,
    valid: u32,
    coeffs: BTreeMap<Exp, Coeff>,
}

/// Equality is truncation order plus coefficient map; the valid degree is
/// bookkeeping, not part of the value.
impl PartialEq for Jet2 {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}

impl Eq for Jet2 {}

impl Jet2 {
    pub fn zero(order: u32) -> Self {
        Jet2 {
            order,
            valid: order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: Coeff, order: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((0, 0), c);
        }
        Jet2 {
            order,
            valid: order,
            coeffs,
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(Coeff::one(), order)
    }

    /// The monomial jet `c * x^i * y^j`.
    pub fn monomial(c: Coeff, exp: Exp, order: u32) -> Result<Self, JetError> {
        if exp.0 + exp.1 > order {
            return Err(JetError::DegreeOverflow(exp.0, exp.1, order));
        }
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Ok(Jet2 {
            order,
            valid: order,
            coeffs,
        })
    }

    pub fn var_x(order: u32) -> Self {
        Self::monomial(Coeff::one(), (1, 0), order).expect("order >= 1")
    }

    pub fn var_y(order: u32) -> Self {
        Self::monomial(Coeff::one(), (0, 1), order).expect("order >= 1")
    }

    /// Canonicalizing constructor: drops zero coefficients, rejects exponent
    /// pairs beyond the order.
    pub fn from_coeffs<I>(order: u32, entries: I) -> Result<Self, JetError>
    where
        I: IntoIterator<Item = (Exp, Coeff)>,
    {
        let mut coeffs: BTreeMap<Exp, Coeff> = BTreeMap::new();
        for (exp, c) in entries {
            if exp.0 + exp.1 > order {
                return Err(JetError::DegreeOverflow(exp.0, exp.1, order));
            }
            if c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(exp).or_insert_with(Coeff::zero);
            *entry = &*entry + &c;
            if entry.is_zero() {
                coeffs.remove(&exp);
            }
        }
        Ok(Jet2 {
            order,
            valid: order,
            coeffs,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree up to which the coefficients are certified to match the
    /// underlying germ.
    pub fn valid_degree(&self) -> u32 {
        self.valid
    }

    pub(crate) fn with_valid(mut self, valid: u32) -> Self {
        self.valid = valid.min(self.order);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^i * y^j` (zero when absent).
    pub fn coeff(&self, i: u32, j: u32) -> Coeff {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, &Coeff)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Total degree of the lowest nonzero term, if any.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).min()
    }

    /// Total degree of the highest nonzero term (0 for the zero jet).
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    // ------------------------------------------------------------------
    // Ring operations
    // ------------------------------------------------------------------

    pub fn add(&self, other: &Jet2) -> Result<Jet2, JetError> {
        self.check_order(other)?;
        let mut coeffs = self.coeffs.clone();
        for (exp, c) in &other.coeffs {
            let entry = coeffs.entry(*exp).or_insert_with(Coeff::zero);
            *entry = &*entry + c;
            if entry.is_zero() {
                coeffs.remove(exp);
            }
        }
        Ok(Jet2 {
            order: self.order,
            valid: self.valid.min(other.valid),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Jet2) -> Result<Jet2, JetError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Jet2 {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c)).collect();
        Jet2 {
            order: self.order,
            valid: self.valid,
            coeffs,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Jet2 {
        if c.is_zero() {
            return Jet2::zero(self.order).with_valid(self.valid);
        }
        let coeffs = self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect();
        Jet2 {
            order: self.order,
            valid: self.valid,
            coeffs,
        }
    }

    /// Cauchy product, discarding all terms of total degree above the order.
    pub fn mul(&self, other: &Jet2) -> Result<Jet2, JetError> {
        self.check_order(other)?;
        let mut coeffs: BTreeMap<Exp, Coeff> = BTreeMap::new();
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &other.coeffs {
                let exp = (i1 + i2, j1 + j2);
                if exp.0 + exp.1 > self.order {
                    continue;
                }
                let entry = coeffs.entry(exp).or_insert_with(Coeff::zero);
                *entry = &*entry + &(c1 * c2);
                if entry.is_zero() {
                    coeffs.remove(&exp);
                }
            }
        }
        Ok(Jet2 {
            order: self.order,
            valid: self.valid.min(other.valid),
            coeffs,
        })
    }

    // ------------------------------------------------------------------
    // Calculus
    // ------------------------------------------------------------------

    /// Formal partial derivative in `x`. The result keeps the order; its
    /// valid degree drops by one (degree-`order` data of the derivative
    /// would require degree-`order + 1` input).
    pub fn d_dx(&self) -> Jet2 {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((i, _), _)| *i > 0)
            .map(|((i, j), c)| ((i - 1, *j), c.mul_int(i64::from(*i))))
            .collect();
        Jet2 {
            order: self.order,
            valid: self.valid.saturating_sub(1),
            coeffs,
        }
    }

    /// Formal partial derivative in `y`.
    pub fn d_dy(&self) -> Jet2 {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((_, j), _)| *j > 0)
            .map(|((i, j), c)| ((*i, j - 1), c.mul_int(i64::from(*j))))
            .collect();
        Jet2 {
            order: self.order,
            valid: self.valid.saturating_sub(1),
            coeffs,
        }
    }

    /// Term-wise antiderivative in `x` with zero constant of integration:
    /// `x^i y^j` maps to `x^(i+1) y^j / (i+1)`, so the result vanishes on
    /// the line `x = 0`. Raises [`JetError::DegreeOverflow`] instead of
    /// silently truncating, so exact fixture comparisons stay trustworthy.
    pub fn int0_x(&self) -> Result<Jet2, JetError> {
        let mut coeffs = BTreeMap::new();
        for ((i, j), c) in &self.coeffs {
            if i + j + 1 > self.order {
                return Err(JetError::DegreeOverflow(i + 1, *j, self.order));
            }
            coeffs.insert((i + 1, *j), c.div_int(i64::from(i + 1)));
        }
        let valid = (self.valid + 1).min(self.order);
        Ok(Jet2 {
            order: self.order,
            valid,
            coeffs,
        })
    }

    /// The part independent of `x`, i.e. the restriction to the line `x = 0`
    /// viewed as a jet (`f(0, y)`).
    pub fn x_constant_part(&self) -> Jet2 {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((i, _), _)| *i == 0)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        Jet2 {
            order: self.order,
            valid: self.valid,
            coeffs,
        }
    }

    /// Substitution `f(u(x,y), v(x,y))`, truncated to the common order.
    /// `u` and `v` must be germs at the origin (zero constant term).
    pub fn compose2(&self, u: &Jet2, v: &Jet2) -> Result<Jet2, JetError> {
        self.check_order(u)?;
        self.check_order(v)?;
        if !u.coeff(0, 0).is_zero() || !v.coeff(0, 0).is_zero() {
            return Err(JetError::NotAGerm);
        }
        let order = self.order;
        let max_i = self.coeffs.keys().map(|(i, _)| *i).max().unwrap_or(0);
        let max_j = self.coeffs.keys().map(|(_, j)| *j).max().unwrap_or(0);
        let u_pows = powers(u, max_i)?;
        let v_pows = powers(v, max_j)?;
        let mut acc = Jet2::zero(order);
        for ((i, j), c) in &self.coeffs {
            let term = u_pows[*i as usize].mul(&v_pows[*j as usize])?.scale(c);
            acc = acc.add(&term)?;
        }
        let valid = self.valid.min(u.valid).min(v.valid);
        Ok(acc.with_valid(valid))
    }

    /// Floating-point evaluation, Horner in `y` inside Horner in `x`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let n = self.order as usize;
        // rows[i][j] = coefficient of x^i y^j
        let mut rows = vec![vec![0.0f64; n + 1]; n + 1];
        for ((i, j), c) in &self.coeffs {
            rows[*i as usize][*j as usize] = c.to_f64();
        }
        let mut acc = 0.0;
        for row in rows.iter().rev() {
            let mut inner = 0.0;
            for c in row.iter().rev() {
                inner = inner * y + c;
            }
            acc = acc * x + inner;
        }
        acc
    }

    // ------------------------------------------------------------------
    // Comparison helpers
    // ------------------------------------------------------------------

    /// Do the two jets agree on every monomial of total degree <= `deg`?
    pub fn agrees_to(&self, other: &Jet2, deg: u32) -> bool {
        self.first_difference_to(other, deg).is_none()
    }

    pub fn common_valid(&self, other: &Jet2) -> u32 {
        self.valid.min(other.valid)
    }

    /// First monomial of total degree <= `deg` where the jets differ, in
    /// graded order, together with both coefficients.
    pub fn first_difference_to(&self, other: &Jet2, deg: u32) -> Option<(Exp, Coeff, Coeff)> {
        let mut exps: Vec<Exp> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|(i, j)| i + j <= deg)
            .collect();
        exps.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
        exps.dedup();
        for exp in exps {
            let a = self.coeff(exp.0, exp.1);
            let b = other.coeff(exp.0, exp.1);
            if a != b {
                return Some((exp, a, b));
            }
        }
        None
    }

    fn check_order(&self, other: &Jet2) -> Result<(), JetError> {
        if self.order != other.order {
            Err(JetError::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }
}

fn powers(base: &Jet2, up_to: u32) -> Result<Vec<Jet2>, JetError> {
    let mut pows = Vec::with_capacity(up_to as usize + 1);
    pows.push(Jet2::one(base.order()));
    for k in 1..=up_to {
        let next = pows[k as usize - 1].mul(base)?;
        pows.push(next);
    }
    Ok(pows)
}

// ----------------------------------------------------------------------
// Division
// ----------------------------------------------------------------------

/// Result of [`divide`]: the quotient jet plus a uniqueness flag for the
/// coefficients inside the guaranteed-degree window. Coefficients above the
/// window are undetermined by truncated data and are set to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub jet: Jet2,
    pub unique: bool,
}

/// Solve `q = n * p` for `n` by graded elimination on coefficient unknowns.
///
/// Homogeneous degree by homogeneous degree, the unknown slice `N_m` of the
/// quotient satisfies `N_m * P_o = R_d` where `P_o` is the lowest form of
/// `p`, `d = m + o`, and `R_d` is the degree-`d` residual of `q` minus the
/// already-determined part of the product. Each slice is an exact linear
/// solve; an inconsistency at any degree inside the inputs' validity
/// certifies that no smooth quotient exists.
///
/// On success `mul(n, p)` agrees with `q` up to the common valid degree and
/// the quotient's valid degree is that degree minus `ord(p)`.
pub fn divide(q: &Jet2, p: &Jet2) -> Result<Quotient, JetError> {
    if q.order() != p.order() {
        return Err(JetError::OrderMismatch(q.order(), p.order()));
    }
    if p.is_zero() {
        return Err(JetError::ZeroDivisor);
    }
    let v = q.common_valid(p);
    let o = p.lowest_degree().expect("nonzero divisor");
    if o > v {
        // Divisor indistinguishable from zero inside its trusted window.
        return Err(JetError::ZeroDivisor);
    }

    let p_low = homogeneous_slice(p, o);
    let mut n = Jet2::zero(q.order());
    let mut unique = true;

    for d in 0..=v {
        // Residual slice R_d = Q_d - sum_{e < d - o} N_e * P_{d - e}.
        let mut residual: BTreeMap<Exp, Coeff> = homogeneous_slice(q, d);
        for ((ni, nj), nc) in n.terms() {
            let e = ni + nj;
            if e + o > d {
                continue;
            }
            let pd = d - e;
            for ((pi, pj), pc) in p.terms() {
                if pi + pj != pd {
                    continue;
                }
                let exp = (ni + pi, nj + pj);
                let entry = residual.entry(exp).or_insert_with(Coeff::zero);
                *entry = &*entry - &(nc * pc);
                if entry.is_zero() {
                    residual.remove(&exp);
                }
            }
        }

        if d < o {
            // No quotient slice can reach this degree; the residual must
            // already vanish.
            if let Some(exp) = first_graded(&residual) {
                return Err(JetError::NotDivisible(exp.0, exp.1));
            }
            continue;
        }

        let m = d - o;
        match solve_slice(&p_low, o, m, d, &residual) {
            SliceSolution::Solved { coeffs, pinned_all } => {
                unique &= pinned_all;
                for (exp, c) in coeffs {
                    if !c.is_zero() {
                        n = n.add(&Jet2::monomial(c, exp, n.order())?)?;
                    }
                }
            }
            SliceSolution::Inconsistent(exp) => {
                return Err(JetError::NotDivisible(exp.0, exp.1));
            }
        }
    }

    Ok(Quotient {
        jet: n.with_valid(v - o),
        unique,
    })
}

fn homogeneous_slice(j: &Jet2, d: u32) -> BTreeMap<Exp, Coeff> {
    j.terms()
        .filter(|((i, jj), _)| i + jj == d)
        .map(|(e, c)| (e, c.clone()))
        .collect()
}

fn first_graded(slice: &BTreeMap<Exp, Coeff>) -> Option<Exp> {
    slice
        .keys()
        .copied()
        .min_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)))
}

enum SliceSolution {
    Solved {
        coeffs: Vec<(Exp, Coeff)>,
        pinned_all: bool,
    },
    Inconsistent(Exp),
}

/// Solve the homogeneous slice equation `N_m * P_o = R_d` for the `m + 1`
/// unknown coefficients of `N_m` by exact Gaussian elimination. Rows are the
/// degree-`d` monomials `x^i y^(d-i)`, columns the unknowns `x^a y^(m-a)`.
fn solve_slice(
    p_low: &BTreeMap<Exp, Coeff>,
    o: u32,
    m: u32,
    d: u32,
    residual: &BTreeMap<Exp, Coeff>,
) -> SliceSolution {
    let ncols = (m + 1) as usize;
    let nrows = (d + 1) as usize;
    // Augmented matrix, row i <-> monomial x^i y^(d-i).
    let mut mat: Vec<Vec<Coeff>> = (0..nrows)
        .map(|i| {
            let mut row = Vec::with_capacity(ncols + 1);
            for a in 0..=m {
                let c = if (i as u32) >= a && (i as u32) - a <= o {
                    let s = i as u32 - a;
                    p_low.get(&(s, o - s)).cloned().unwrap_or_else(Coeff::zero)
                } else {
                    Coeff::zero()
                };
                row.push(c);
            }
            let rhs = residual
                .get(&(i as u32, d - i as u32))
                .cloned()
                .unwrap_or_else(Coeff::zero);
            row.push(rhs);
            row
        })
        .collect();
    // Remember each row's monomial for error reporting across swaps.
    let mut row_exp: Vec<Exp> = (0..nrows).map(|i| (i as u32, d - i as u32)).collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut rank_row = 0usize;
    for col in 0..ncols {
        let Some(pr) = (rank_row..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank_row, pr);
        row_exp.swap(rank_row, pr);
        let inv = mat[rank_row][col].recip().expect("nonzero pivot");
        for c in mat[rank_row].iter_mut() {
            *c = &*c * &inv;
        }
        let pivot_row = mat[rank_row].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != rank_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (cell, pivot_cell) in row.iter_mut().zip(&pivot_row) {
                    *cell = &*cell - &(&factor * pivot_cell);
                }
            }
        }
        pivot_of_col[col] = Some(rank_row);
        rank_row += 1;
    }

    // Inconsistent row: all-zero coefficients with nonzero rhs.
    for r in 0..nrows {
        if mat[r][..ncols].iter().all(Coeff::is_zero) && !mat[r][ncols].is_zero() {
            return SliceSolution::Inconsistent(row_exp[r]);
        }
    }

    let mut coeffs = Vec::with_capacity(ncols);
    let mut pinned_all = true;
    for (a, pivot) in pivot_of_col.iter().enumerate() {
        let value = match pivot {
            Some(r) => mat[*r][ncols].clone(),
            None => {
                // Free unknown inside the window: set to zero, flag it.
                pinned_all = false;
                Coeff::zero()
            }
        };
        coeffs.push(((a as u32, m - a as u32), value));
    }
    SliceSolution::Solved { coeffs, pinned_all }
}

// ----------------------------------------------------------------------
// Canonical printing
// ----------------------------------------------------------------------

/// Canonical form: terms sorted by total degree (descending), then by
/// descending x-exponent; coefficients printed as `a` or `a/b`, unit
/// coefficients elided. This is the CLI echo format and the parser's
/// round-trip target.
impl fmt::Display for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(Exp, &Coeff)> = self.terms().collect();
        terms.sort_by_key(|&((i, j), _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        for (k, ((i, j), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let monomial = monomial_string(i, j);
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == Coeff::one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{mag}*{monomial}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Jet2[order {}, valid {}]({})",
            self.order, self.valid, self
        )
    }
}

fn monomial_string(i: u32, j: u32) -> String {
    let mut s = String::new();
    if i == 1 {
        s.push('x');
    } else if i > 1 {
        s.push_str(&format!("x^{i}"));
    }
    if j >= 1 {
        if !s.is_empty() {
            s.push('*');
        }
        if j == 1 {
            s.push('y');
        } else {
            s.push_str(&format!("y^{j}"));
        }
    }
    s
}
