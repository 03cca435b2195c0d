//! Floating-point sampling of germs: surface meshes over a grid, the
//! singular locus `{LJ = 0}` by marching squares, and y-slice fronts with
//! their normals.
//!
//! Classification never reads any of this; sampling exists for
//! visualization and the geometry checks. Output is deterministic: the same
//! inputs produce byte-identical files.

use std::collections::HashMap;

use crate::germs::{MapGerm3, NormalizedLegendrianGerm};
use crate::jet::Jet2;
use crate::legendrian::lj_reduced;

/// Closed rectangle `[x_min, x_max] x [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range2 {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Range2 {
    pub fn is_finite(&self) -> bool {
        [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite())
            && self.x_min < self.x_max
            && self.y_min < self.y_max
    }
}

/// A sampled parametric surface: grid vertices, quad faces, and the domain
/// coordinates each vertex came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 4]>,
    pub domain_coords: Vec<[f64; 2]>,
}

/// An ordered polyline in the plane or in space.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline<const N: usize> {
    pub points: Vec<[f64; N]>,
    pub closed: bool,
}

impl<const N: usize> Polyline<N> {
    pub fn empty() -> Self {
        Polyline {
            points: Vec::new(),
            closed: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub type Polyline2 = Polyline<2>;
pub type Polyline3 = Polyline<3>;

/// Evaluate the three components of a map over a grid.
///
/// Vertex `(i, j)` sits at row-major index `j * (nx + 1) + i`; faces are the
/// grid quads. `nx, ny >= 1` and a finite range are caller contracts.
pub fn sample_surface(m: &MapGerm3, range: Range2, res: (u32, u32)) -> SurfaceMesh {
    let (nx, ny) = res;
    assert!(nx >= 1 && ny >= 1, "grid resolution must be at least 1x1");
    assert!(
        range.is_finite(),
        "sampling range must be finite and nonempty"
    );
    let mut vertices = Vec::with_capacity(((nx + 1) * (ny + 1)) as usize);
    let mut domain_coords = Vec::with_capacity(vertices.capacity());
    for j in 0..=ny {
        let y = grid_coord(range.y_min, range.y_max, j, ny);
        for i in 0..=nx {
            let x = grid_coord(range.x_min, range.x_max, i, nx);
            vertices.push(m.eval(x, y));
            domain_coords.push([x, y]);
        }
    }
    let mut faces = Vec::with_capacity((nx * ny) as usize);
    let stride = (nx + 1) as usize;
    for j in 0..ny as usize {
        for i in 0..nx as usize {
            let a = j * stride + i;
            faces.push([a, a + 1, a + 1 + stride, a + stride]);
        }
    }
    SurfaceMesh {
        vertices,
        faces,
        domain_coords,
    }
}

fn grid_coord(lo: f64, hi: f64, k: u32, n: u32) -> f64 {
    lo + (hi - lo) * (k as f64) / (n as f64)
}

/// The singular locus `{LJ = 0}` of a normalized front: the traced curve in
/// the source plane and its image on the front. Both are empty when no sign
/// change is found (reported by [`Locus::is_empty`], never an error).
#[derive(Debug, Clone, PartialEq)]
pub struct Locus {
    pub domain: Polyline2,
    pub image: Polyline3,
}

impl Locus {
    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }
}

/// Marching squares on the reduced Legendrian Jacobian, with one linear
/// interpolation per crossed edge and no root polishing. When the locus has
/// several components the longest chain is returned.
pub fn singular_locus(germ: &NormalizedLegendrianGerm, range: Range2, res: (u32, u32)) -> Locus {
    let lift = lj_reduced(germ);
    let domain = contour_zero(&lift, range, res);
    let image_points = domain
        .points
        .iter()
        .map(|&[x, y]| [germ.phi1().eval(x, y), germ.phi2().eval(x, y), y])
        .collect();
    let image = Polyline3 {
        points: image_points,
        closed: domain.closed,
    };
    Locus { domain, image }
}

/// Grid edge `(i, j, axis)` with axis 0 = horizontal `[i..i+1]` at row `j`,
/// axis 1 = vertical.
type EdgeKey = (usize, usize, u8);

/// Trace the zero set of a jet over a grid. Returns the longest chained
/// polyline (closed when it is a loop), or an empty polyline when no grid
/// edge changes sign.
pub fn contour_zero(f: &Jet2, range: Range2, res: (u32, u32)) -> Polyline2 {
    let (nx, ny) = res;
    assert!(nx >= 1 && ny >= 1, "grid resolution must be at least 1x1");
    assert!(
        range.is_finite(),
        "sampling range must be finite and nonempty"
    );

    // Corner values.
    let stride = (nx + 1) as usize;
    let mut values = vec![0.0f64; stride * (ny + 1) as usize];
    let mut xs = vec![0.0f64; (nx + 1) as usize];
    let mut ys = vec![0.0f64; (ny + 1) as usize];
    for (i, x) in xs.iter_mut().enumerate() {
        *x = grid_coord(range.x_min, range.x_max, i as u32, nx);
    }
    for (j, y) in ys.iter_mut().enumerate() {
        *y = grid_coord(range.y_min, range.y_max, j as u32, ny);
    }
    for j in 0..=ny as usize {
        for i in 0..=nx as usize {
            values[j * stride + i] = f.eval(xs[i], ys[j]);
        }
    }
    let inside = |v: f64| v <= 0.0;

    // One interpolated crossing per grid edge, shared between cells.
    let mut points: Vec<[f64; 2]> = Vec::new();
    let mut edge_point: HashMap<EdgeKey, usize> = HashMap::new();
    let mut segments: Vec<(usize, usize)> = Vec::new();

    let crossing = |i: usize,
                    j: usize,
                    axis: u8,
                    points: &mut Vec<[f64; 2]>,
                    edge_point: &mut HashMap<EdgeKey, usize>,
                    values: &[f64]| {
        *edge_point.entry((i, j, axis)).or_insert_with(|| {
            let (v0, v1, p0, p1) = if axis == 0 {
                (
                    values[j * stride + i],
                    values[j * stride + i + 1],
                    [xs[i], ys[j]],
                    [xs[i + 1], ys[j]],
                )
            } else {
                (
                    values[j * stride + i],
                    values[(j + 1) * stride + i],
                    [xs[i], ys[j]],
                    [xs[i], ys[j + 1]],
                )
            };
            let t = if v0 == v1 { 0.5 } else { v0 / (v0 - v1) };
            points.push([p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])]);
            points.len() - 1
        })
    };

    for j in 0..ny as usize {
        for i in 0..nx as usize {
            let bl = inside(values[j * stride + i]);
            let br = inside(values[j * stride + i + 1]);
            let tr = inside(values[(j + 1) * stride + i + 1]);
            let tl = inside(values[(j + 1) * stride + i]);

            // Edges of this cell, as shared keys.
            let bottom = (i, j, 0u8);
            let top = (i, j + 1, 0u8);
            let left = (i, j, 1u8);
            let right = (i + 1, j, 1u8);

            let pairs: &[(EdgeKey, EdgeKey)] = match (bl, br, tr, tl) {
                (false, false, false, false) | (true, true, true, true) => &[],
                (true, false, false, false) | (false, true, true, true) => &[(left, bottom)],
                (false, true, false, false) | (true, false, true, true) => &[(bottom, right)],
                (false, false, true, false) | (true, true, false, true) => &[(right, top)],
                (false, false, false, true) | (true, true, true, false) => &[(top, left)],
                (true, true, false, false) | (false, false, true, true) => &[(left, right)],
                (false, true, true, false) | (true, false, false, true) => &[(bottom, top)],
                (true, false, true, false) | (false, true, false, true) => {
                    // Saddle: disambiguate with the cell center.
                    let cx = 0.5 * (xs[i] + xs[i + 1]);
                    let cy = 0.5 * (ys[j] + ys[j + 1]);
                    let center_in = inside(f.eval(cx, cy));
                    if bl == center_in {
                        &[(left, top), (bottom, right)]
                    } else {
                        &[(left, bottom), (top, right)]
                    }
                }
            };
            for (e0, e1) in pairs {
                let a = crossing(e0.0, e0.1, e0.2, &mut points, &mut edge_point, &values);
                let b = crossing(e1.0, e1.1, e1.2, &mut points, &mut edge_point, &values);
                if a != b {
                    segments.push((a, b));
                }
            }
        }
    }

    chain_longest(&points, &segments)
}

/// Chain segments into polylines by shared endpoints and keep the longest.
fn chain_longest(points: &[[f64; 2]], segments: &[(usize, usize)]) -> Polyline2 {
    if segments.is_empty() {
        return Polyline2::empty();
    }
    let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push(k);
        adjacency.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut best: Option<Polyline2> = None;

    // Open chains first (degree-1 start points), then remaining loops.
    let mut starts: Vec<usize> = adjacency
        .iter()
        .filter(|(_, segs)| segs.len() == 1)
        .map(|(&p, _)| p)
        .collect();
    starts.sort_unstable();
    let mut loop_starts: Vec<usize> = adjacency.keys().copied().collect();
    loop_starts.sort_unstable();

    for start in starts.into_iter().chain(loop_starts) {
        let Some(first_seg) = adjacency[&start].iter().find(|&&k| !used[k]) else {
            continue;
        };
        let mut chain = vec![start];
        let mut current = start;
        let mut seg = *first_seg;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            current = if a == current { b } else { a };
            chain.push(current);
            match adjacency[&current].iter().find(|&&k| !used[k]) {
                Some(&next) => seg = next,
                None => break,
            }
        }
        let closed = chain.len() > 2 && chain.first() == chain.last();
        let mut pts: Vec<[f64; 2]> = chain.iter().map(|&i| points[i]).collect();
        if closed {
            pts.pop();
        }
        let candidate = Polyline2 {
            points: pts,
            closed,
        };
        if best
            .as_ref()
            .map(|b| candidate.points.len() > b.points.len())
            .unwrap_or(true)
        {
            best = Some(candidate);
        }
        if used.iter().all(|&u| u) {
            break;
        }
    }
    best.unwrap_or_else(Polyline2::empty)
}

/// A planar slice of a front at fixed `y0`: the curve
/// `x -> (phi1(x, y0), phi2(x, y0))` with the unit-normalized slice normal
/// `(1, -n(x, y0)) / ||.||` at every sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceFront {
    pub y0: f64,
    pub points: Vec<[f64; 2]>,
    pub normals: Vec<[f64; 2]>,
}

/// Sample a y-slice of the front with `n >= 2` points including endpoints.
pub fn slice_front(
    germ: &NormalizedLegendrianGerm,
    y0: f64,
    range_x: (f64, f64),
    n: u32,
) -> SliceFront {
    assert!(n >= 2, "a slice needs at least two samples");
    assert!(range_x.0.is_finite() && range_x.1.is_finite() && range_x.0 < range_x.1);
    let mut points = Vec::with_capacity(n as usize);
    let mut normals = Vec::with_capacity(n as usize);
    for k in 0..n {
        let x = grid_coord(range_x.0, range_x.1, k, n - 1);
        points.push([germ.phi1().eval(x, y0), germ.phi2().eval(x, y0)]);
        let nv = germ.pedal_n().eval(x, y0);
        let norm = (1.0 + nv * nv).sqrt();
        normals.push([1.0 / norm, -nv / norm]);
    }
    SliceFront {
        y0,
        points,
        normals,
    }
}

// ----------------------------------------------------------------------
// Exporters
// ----------------------------------------------------------------------

/// Format with 9 significant digits, trailing zeros trimmed (the shape of
/// C's `%.9g`). All file exporters use this, which is what makes re-runs
/// byte-identical.
pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let neg = v < 0.0;
    let sci = format!("{:.8e}", v.abs());
    let (mantissa, exp_str) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp_str.parse().expect("exponent");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    debug_assert_eq!(digits.len(), 9);
    let body = if (-4..9).contains(&exp) {
        if exp >= 0 {
            let point = (exp + 1) as usize;
            let frac = digits[point..].trim_end_matches('0');
            if frac.is_empty() {
                digits[..point].to_string()
            } else {
                format!("{}.{}", &digits[..point], frac)
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            let with_zeros = format!("{zeros}{digits}");
            format!("0.{}", with_zeros.trim_end_matches('0'))
        }
    } else {
        let frac = digits[1..].trim_end_matches('0');
        if frac.is_empty() {
            format!("{}e{}", &digits[..1], exp)
        } else {
            format!("{}.{}e{}", &digits[..1], frac, exp)
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Wavefront-style OBJ text: `v x y z` lines then `f a b c d` lines with
/// 1-based indices and LF line endings.
pub fn mesh_to_obj(mesh: &SurfaceMesh) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        out.push_str(&format!(
            "v {} {} {}\n",
            fmt_sig9(v[0]),
            fmt_sig9(v[1]),
            fmt_sig9(v[2])
        ));
    }
    for f in &mesh.faces {
        out.push_str(&format!(
            "f {} {} {} {}\n",
            f[0] + 1,
            f[1] + 1,
            f[2] + 1,
            f[3] + 1
        ));
    }
    out
}

/// CSV with header `x,y` or `x,y,z`.
pub fn polyline_to_csv<const N: usize>(line: &Polyline<N>) -> String {
    let mut out = String::from(if N == 2 { "x,y\n" } else { "x,y,z\n" });
    for p in &line.points {
        let row: Vec<String> = p.iter().map(|&v| fmt_sig9(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// CSV of a slice front: position plus unit normal per row.
pub fn slice_to_csv(slice: &SliceFront) -> String {
    let mut out = String::from("x,y,nx,ny\n");
    for (p, n) in slice.points.iter().zip(&slice.normals) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig9(p[0]),
            fmt_sig9(p[1]),
            fmt_sig9(n[0]),
            fmt_sig9(n[1])
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::germs::{assemble_pedal, validate_normalized, MapGerm3, PedalGerm};

    fn jet(text: &str) -> Jet2 {
        parse_expr(text, 8).unwrap()
    }

    fn swallowtail_front() -> NormalizedLegendrianGerm {
        validate_normalized(&jet("1/4*x^4 + 1/2*x^2*y"), &jet("-1/3*x^3 - x*y")).unwrap()
    }

    fn cuspidal_front() -> NormalizedLegendrianGerm {
        validate_normalized(&jet("1/3*x^3"), &jet("1/2*x^2")).unwrap()
    }

    const UNIT: Range2 = Range2 {
        x_min: -1.0,
        x_max: 1.0,
        y_min: -1.0,
        y_max: 1.0,
    };

    #[test]
    fn mesh_counts_follow_resolution() {
        let g = PedalGerm::new(jet("-x"), jet("-x^2 - y")).unwrap();
        let st4 = MapGerm3::new(jet("3*x^4 + x^2*y"), jet("-4*x^3 - 2*x*y"), jet("y")).unwrap();
        let mesh = sample_surface(&st4, UNIT, (40, 40));
        assert_eq!(mesh.vertices.len(), 1681);
        assert_eq!(mesh.faces.len(), 1600);
        assert_eq!(mesh.domain_coords.len(), 1681);

        // direct evaluation at a grid point
        let m = assemble_pedal(&g);
        let mesh = sample_surface(&m, UNIT, (2, 2));
        assert_eq!(mesh.vertices.last().unwrap(), &[2.0, -2.0, 1.0]);
    }

    #[test]
    fn zero_germ_meshes_to_origin() {
        let z = MapGerm3::new(Jet2::zero(8), Jet2::zero(8), Jet2::zero(8)).unwrap();
        let mesh = sample_surface(&z, UNIT, (3, 3));
        assert!(mesh.vertices.iter().all(|v| v == &[0.0, 0.0, 0.0]));
    }

    #[test]
    fn locus_of_the_swallowtail_front_tracks_the_parabola() {
        let locus = singular_locus(&swallowtail_front(), UNIT, (100, 100));
        assert!(!locus.is_empty());
        let cell = 2.0 / 100.0;
        for &[x, y] in &locus.domain.points {
            assert!(
                (y + x * x).abs() < cell,
                "({x}, {y}) deviates from y = -x^2"
            );
        }
        assert_eq!(locus.domain.points.len(), locus.image.points.len());
    }

    #[test]
    fn locus_of_the_cuspidal_front_is_the_y_axis() {
        let locus = singular_locus(&cuspidal_front(), UNIT, (100, 100));
        assert!(!locus.is_empty());
        for &[x, _] in &locus.domain.points {
            assert!(x.abs() < 2.0 / 100.0, "x = {x} deviates from x = 0");
        }
        // the trace spans the whole y-range
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &[_, y] in &locus.domain.points {
            lo = lo.min(y);
            hi = hi.max(y);
        }
        assert!(lo <= -0.99 && hi >= 0.99);
    }

    #[test]
    fn positive_jacobian_has_empty_locus() {
        let positive = jet("1 + x^2 + y^2");
        let line = contour_zero(&positive, UNIT, (50, 50));
        assert!(line.is_empty());
        // a normalized front always has LJ(0,0) = 0, so an empty locus needs
        // a window away from the origin: LJ = x on x in [1/2, 1]
        let away = Range2 {
            x_min: 0.5,
            x_max: 1.0,
            y_min: -1.0,
            y_max: 1.0,
        };
        let locus = singular_locus(&cuspidal_front(), away, (50, 50));
        assert!(locus.is_empty());
    }

    #[test]
    fn slice_of_the_cuspidal_front_is_an_ordinary_cusp() {
        let s = slice_front(&cuspidal_front(), 0.0, (-1.0, 1.0), 201);
        // midpoint is the cusp point (0, 0) with normal (1, 0)
        let mid = &s.points[100];
        assert!(mid[0].abs() < 1e-15 && mid[1].abs() < 1e-15);
        assert_eq!(s.normals[100], [1.0, 0.0]);
        // curve is (t^3/3, t^2/2)
        let p = &s.points[150]; // x = 0.5
        assert!((p[0] - 0.5f64.powi(3) / 3.0).abs() < 1e-15);
        assert!((p[1] - 0.5f64.powi(2) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn slice_normals_are_orthogonal_to_the_analytic_tangent() {
        let front = swallowtail_front();
        let s = slice_front(&front, -0.5, (-1.0, 1.0), 101);
        let dphi1 = front.phi1().d_dx();
        let dphi2 = front.phi2().d_dx();
        for (k, (p, nrm)) in s.points.iter().zip(&s.normals).enumerate() {
            let _ = p;
            let x = -1.0 + 2.0 * (k as f64) / 100.0;
            let t = [dphi1.eval(x, -0.5), dphi2.eval(x, -0.5)];
            let tn = (t[0] * t[0] + t[1] * t[1]).sqrt();
            if tn < 1e-12 {
                continue;
            }
            let dot = (t[0] * nrm[0] + t[1] * nrm[1]).abs();
            assert!(dot <= 1e-9 * tn, "sample {k}: |t.n| = {dot}");
        }
    }

    #[test]
    fn central_difference_tangents_converge_to_orthogonality() {
        // the discrete-tangent defect is O(h^2) away from cusps
        let front = swallowtail_front();
        let n = 4001u32;
        let s = slice_front(&front, -0.5, (-1.0, 1.0), n);
        let h = 2.0 / ((n - 1) as f64);
        for k in 1..(n as usize - 1) {
            let t = [
                s.points[k + 1][0] - s.points[k - 1][0],
                s.points[k + 1][1] - s.points[k - 1][1],
            ];
            let tn = (t[0] * t[0] + t[1] * t[1]).sqrt();
            // skip the cusp neighborhoods at x = +-1/sqrt(2), where the
            // exact tangent collapses and the O(h^2) bound does not apply
            if tn < 0.5 * h {
                continue;
            }
            let dot = (t[0] * s.normals[k][0] + t[1] * s.normals[k][1]).abs();
            assert!(
                dot <= 10.0 * h * h * tn,
                "sample {k}: {} vs {}",
                dot,
                h * h * tn
            );
        }
    }

    #[test]
    fn formatter_shapes() {
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(-0.0), "0");
        assert_eq!(fmt_sig9(2.0), "2");
        assert_eq!(fmt_sig9(-2.0), "-2");
        assert_eq!(fmt_sig9(0.5), "0.5");
        assert_eq!(fmt_sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(fmt_sig9(1e-5), "1e-5");
        assert_eq!(fmt_sig9(123456789.0), "123456789");
        assert_eq!(fmt_sig9(1234567890.0), "1.23456789e9");
        assert_eq!(fmt_sig9(-0.001), "-0.001");
    }

    #[test]
    fn exporters_are_deterministic() {
        let front = swallowtail_front();
        let mesh = sample_surface(&front.as_map(), UNIT, (10, 10));
        assert_eq!(mesh_to_obj(&mesh), mesh_to_obj(&mesh));
        let obj = mesh_to_obj(&mesh);
        assert!(obj.starts_with("v "));
        assert!(obj.contains("\nf 1 2 13 12\n"));

        let locus = singular_locus(&front, UNIT, (20, 20));
        let csv = polyline_to_csv(&locus.domain);
        assert!(csv.starts_with("x,y\n"));
        let csv3 = polyline_to_csv(&locus.image);
        assert!(csv3.starts_with("x,y,z\n"));

        let s = slice_front(&front, -0.5, (-1.0, 1.0), 9);
        assert!(slice_to_csv(&s).starts_with("x,y,nx,ny\n"));
    }
}
