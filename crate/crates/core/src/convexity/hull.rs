use std::cmp::Ordering;
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::geometry::{add3, cross3, scale3, Geometry, Model, Vec3};

/// Inward shrink applied to points on the equator of the chart hemisphere.
const EQUATOR_SHRINK: f64 = 1e-9;

/// Convex hull in a straightening chart centred at `frame`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hull<G: Geometry> {
    /// Hull vertices in counterclockwise order, a subset of the input.
    pub vertices: Vec<G::Point>,
    /// Positions of the vertices in the input list.
    pub indices: Vec<usize>,
    pub frame: G::Point,
    /// Chart coordinates of the vertices about `frame`.
    pub chart: Vec<Complex64>,
    /// Number of input points moved off the chart equator.
    pub perturbed: usize,
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalize(a: Vec3) -> Option<Vec3> {
    let n = dot(a, a).sqrt();
    (n > 1e-300 && n.is_finite()).then(|| scale3(a, 1.0 / n))
}

fn min_dot(points: &[Vec3], c: Vec3) -> f64 {
    points.iter().map(|&p| dot(p, c)).fold(f64::INFINITY, f64::min)
}

/// Centre of a hemisphere containing every unit vector, chosen to maximise
/// the smallest `<x_i, c>` over a set of candidates. Returns the centre and
/// that smallest value.
pub fn hemisphere_frame(lifts: &[Vec3]) -> Result<(Vec3, f64)> {
    if lifts.is_empty() {
        return Err(GeomError::InvalidParams("empty point set".into()));
    }
    let mut best: Option<(Vec3, f64)> = None;
    let consider = |best: &mut Option<(Vec3, f64)>, c: Option<Vec3>| {
        if let Some(c) = c {
            let m = min_dot(lifts, c);
            if best.is_none_or(|(_, b)| m > b) {
                *best = Some((c, m));
            }
        }
    };
    consider(&mut best, normalize(lifts.iter().fold([0.0; 3], |a, &p| add3(a, p))));
    if let Some((c, m)) = best {
        if m > EQUATOR_SHRINK {
            return Ok((c, m));
        }
    }
    let n = lifts.len();
    for &p in lifts {
        consider(&mut best, Some(p));
    }
    if n <= 256 {
        for i in 0..n {
            for j in i + 1..n {
                consider(&mut best, normalize(add3(lifts[i], lifts[j])));
            }
        }
    }
    if n <= 48 {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (lifts[i], lifts[j], lifts[k]);
                    let d1 = add3(b, scale3(a, -1.0));
                    let d2 = add3(c, scale3(a, -1.0));
                    if let Some(nrm) = normalize(cross3(d1, d2)) {
                        consider(&mut best, Some(nrm));
                        consider(&mut best, Some(scale3(nrm, -1.0)));
                    }
                }
            }
        }
    }
    match best {
        Some((c, m)) if m > -EQUATOR_SHRINK => Ok((c, m)),
        _ => Err(GeomError::NoCommonHemisphere),
    }
}

/// Frame point for charting a point set: the normalised sum of the lifts on
/// the hyperboloid, or a hemisphere centre on the sphere.
pub(crate) fn frame_for<G: Geometry>(points: &[G::Point]) -> Result<G::Point> {
    let lifts: Vec<Vec3> = points.iter().map(|&p| G::lift(p)).collect();
    match G::MODEL {
        Model::Hyperbolic => G::unlift(lifts.iter().fold([0.0; 3], |a, &p| add3(a, p))),
        Model::Spherical => G::unlift(hemisphere_frame(&lifts)?.0),
    }
}

/// Chart coordinates about `frame`, shrinking points within
/// `EQUATOR_SHRINK` of the frame's equator. Returns the coordinates and the
/// number of points moved.
pub(crate) fn chart_about<G: Geometry>(frame: G::Point, points: &[G::Point]) -> Result<(Vec<Complex64>, usize)> {
    let mut moved = 0;
    let mut out = Vec::with_capacity(points.len());
    for &p in points {
        let local = G::translate_inv(frame, p)?;
        if G::MODEL == Model::Spherical {
            let d = G::dist(G::origin(), local);
            let limit = FRAC_PI_2 - EQUATOR_SHRINK;
            if d > FRAC_PI_2 + EQUATOR_SHRINK {
                return Err(GeomError::NoCommonHemisphere);
            }
            if d >= limit {
                let (_, theta) = G::polar(G::origin(), local)?;
                out.push(G::chart(G::from_polar(G::origin(), limit, theta)?)?);
                moved += 1;
                continue;
            }
        }
        out.push(G::chart(local)?);
    }
    Ok((out, moved))
}

/// Normalised orientation `sin` of the turn `o -> a -> b`; positive for a
/// left turn.
pub(crate) fn turn(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    let (u, v) = (a - o, b - o);
    let den = u.norm() * v.norm();
    if den == 0.0 {
        return 0.0;
    }
    (u.re * v.im - u.im * v.re) / den
}

fn same(a: Complex64, b: Complex64, eq_abs: f64) -> bool {
    (a - b).norm() <= eq_abs * (1.0 + a.norm().max(b.norm()))
}

fn lex(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Geodesic convex hull: straighten, run Andrew's monotone chain with an
/// `eq_abs` collinearity band (collinear points dropped), map back.
pub fn hull<G: Geometry>(points: &[G::Point], eq_abs: f64) -> Result<Hull<G>> {
    if points.is_empty() {
        return Err(GeomError::InvalidParams("hull of an empty point set".into()));
    }
    let frame = frame_for::<G>(points)?;
    let (chart, perturbed) = chart_about::<G>(frame, points)?;

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| lex(chart[i], chart[j]).then(i.cmp(&j)));
    let mut uniq: Vec<usize> = Vec::with_capacity(order.len());
    for i in order {
        if !uniq.iter().any(|&j| same(chart[i], chart[j], eq_abs)) {
            uniq.push(i);
        }
    }

    let idx = if uniq.len() <= 2 {
        uniq
    } else {
        let chain = |seq: &mut dyn Iterator<Item = usize>| {
            let mut out: Vec<usize> = Vec::new();
            for i in seq {
                while out.len() >= 2 && turn(chart[out[out.len() - 2]], chart[out[out.len() - 1]], chart[i]) <= eq_abs {
                    out.pop();
                }
                out.push(i);
            }
            out
        };
        let mut lower = chain(&mut uniq.iter().copied());
        let mut upper = chain(&mut uniq.iter().rev().copied());
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    };

    Ok(Hull {
        vertices: idx.iter().map(|&i| points[i]).collect(),
        chart: idx.iter().map(|&i| chart[i]).collect(),
        indices: idx,
        frame,
        perturbed,
    })
}

/// Reference hull by exhaustion: a point is a vertex unless it repeats an
/// earlier point or lies in a closed triangle or segment spanned by others.
/// Quartic; intended for small inputs in tests.
pub fn hull_brute_force<G: Geometry>(points: &[G::Point], eq_abs: f64) -> Result<Vec<usize>> {
    let frame = frame_for::<G>(points)?;
    let (w, _) = chart_about::<G>(frame, points)?;
    let n = w.len();
    let on_segment = |p: Complex64, a: Complex64, b: Complex64| {
        turn(a, b, p).abs() <= eq_abs && (p - a).re * (b - a).re + (p - a).im * (b - a).im >= 0.0 && (p - b).re * (a - b).re + (p - b).im * (a - b).im >= 0.0
    };
    let in_triangle = |p: Complex64, a: Complex64, b: Complex64, c: Complex64| {
        let orient = turn(a, b, c);
        if orient.abs() <= eq_abs {
            return false;
        }
        let s = orient.signum();
        s * turn(a, b, p) >= -eq_abs && s * turn(b, c, p) >= -eq_abs && s * turn(c, a, p) >= -eq_abs
    };
    let mut keep = Vec::new();
    'points: for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        for &j in &others {
            if same(w[i], w[j], eq_abs) {
                if j < i {
                    continue 'points;
                }
                continue;
            }
        }
        let distinct: Vec<usize> = others.into_iter().filter(|&j| !same(w[i], w[j], eq_abs)).collect();
        for (x, &a) in distinct.iter().enumerate() {
            for (y, &b) in distinct.iter().enumerate().skip(x + 1) {
                // a repeated pair spans no segment
                if !same(w[a], w[b], eq_abs) && on_segment(w[i], w[a], w[b]) {
                    continue 'points;
                }
                for &c in distinct.iter().skip(y + 1) {
                    if in_triangle(w[i], w[a], w[b], w[c]) {
                        continue 'points;
                    }
                }
            }
        }
        keep.push(i);
    }
    Ok(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Hyperbolic, Spherical};
    use crate::hyperbolic::{h_segment_point, HPoint};
    use crate::spherical::SPoint;
    use std::f64::consts::PI;

    fn hp(x: f64, y: f64) -> HPoint {
        HPoint::from_xy(x, y).unwrap()
    }

    #[test]
    fn triangle_keeps_all_vertices() {
        let pts = [hp(0.1, 0.1), hp(0.6, 0.0), hp(0.0, 0.5)];
        let h = hull::<Hyperbolic>(&pts, 1e-12).unwrap();
        assert_eq!(h.vertices.len(), 3);
        // counterclockwise
        assert!(turn(h.chart[0], h.chart[1], h.chart[2]) > 0.0);
    }

    #[test]
    fn interior_and_collinear_points_dropped() {
        let (a, b) = (hp(-0.5, 0.2), hp(0.4, -0.3));
        let mut pts = vec![a, b];
        for j in 1..5 {
            pts.push(h_segment_point(a, b, j as f64 / 5.0).unwrap());
        }
        let h = hull::<Hyperbolic>(&pts, 1e-12).unwrap();
        let mut idx = h.indices.clone();
        idx.sort();
        assert_eq!(idx, vec![0, 1]);
        let sq = [hp(0.5, 0.5), hp(-0.5, 0.5), hp(-0.5, -0.5), hp(0.5, -0.5), hp(0.0, 0.1)];
        assert_eq!(hull::<Hyperbolic>(&sq, 1e-12).unwrap().vertices.len(), 4);
    }

    #[test]
    fn single_point_and_duplicates() {
        let h = hull::<Hyperbolic>(&[hp(0.3, 0.2)], 1e-12).unwrap();
        assert_eq!(h.vertices, vec![hp(0.3, 0.2)]);
        let h = hull::<Hyperbolic>(&[hp(0.3, 0.2), hp(0.3, 0.2), hp(0.0, 0.0)], 1e-12).unwrap();
        assert_eq!(h.vertices.len(), 2);
    }

    #[test]
    fn figure_one_points() {
        let r = (0.45 * PI).tan();
        let pts = [
            SPoint::ORIGIN,
            SPoint::new(Complex64::from_polar(r, PI / 6.0)).unwrap(),
            SPoint::new(Complex64::from_polar(r, PI / 3.0)).unwrap(),
        ];
        let h = hull::<Spherical>(&pts, 1e-12).unwrap();
        assert_eq!(h.vertices.len(), 3);
        assert_eq!(h.perturbed, 0);
    }

    #[test]
    fn no_common_hemisphere() {
        // vertices of a regular tetrahedron
        let t = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
        let pts: Vec<SPoint> = t.iter().map(|v| SPoint::from_sphere(scale3(*v, 1.0 / 3f64.sqrt()))).collect();
        assert!(matches!(hull::<Spherical>(&pts, 1e-12), Err(GeomError::NoCommonHemisphere)));
    }

    #[test]
    fn equator_points_are_shrunk() {
        // three points spread around the equator only fit in the closed
        // hemisphere about the origin
        let pts: Vec<SPoint> = (0..3).map(|j| SPoint::new(Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 3.0)).unwrap()).collect();
        let lifts: Vec<Vec3> = pts.iter().map(|p| p.to_sphere()).collect();
        let (_, m) = hemisphere_frame(&lifts).unwrap();
        assert!(m.abs() < 1e-12);
        let h = hull::<Spherical>(&pts, 1e-12).unwrap();
        assert_eq!(h.perturbed, 3);
        assert_eq!(h.vertices.len(), 3);
    }

    #[test]
    fn idempotent() {
        let pts = [hp(0.1, 0.7), hp(-0.3, 0.2), hp(0.5, -0.4), hp(0.0, 0.0), hp(-0.6, -0.6)];
        let h1 = hull::<Hyperbolic>(&pts, 1e-12).unwrap();
        let h2 = hull::<Hyperbolic>(&h1.vertices, 1e-12).unwrap();
        let mut a: Vec<_> = h1.vertices.iter().map(|p| (p.z().re.to_bits(), p.z().im.to_bits())).collect();
        let mut b: Vec<_> = h2.vertices.iter().map(|p| (p.z().re.to_bits(), p.z().im.to_bits())).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
