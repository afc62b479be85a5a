use crate::error::{Error, Result};

/// Areas below this are treated as degenerate (m²).
pub const DEGENERATE_AREA: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Shoelace area, positive for counter-clockwise vertex order.
pub fn signed_area(poly: &[Point2]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let twice: f64 = poly
        .iter()
        .zip(poly.iter().cycle().skip(1))
        .map(|(a, b)| a.x * b.y - b.x * a.y)
        .sum();
    0.5 * twice
}

pub fn polygon_area(poly: &[Point2]) -> f64 {
    signed_area(poly).abs()
}

/// Sutherland–Hodgman clipping of `subject` against the convex polygon `clip`.
///
/// Either winding is accepted for `clip`. The result is empty when the
/// polygons do not overlap with positive area.
pub fn convex_clip(subject: &[Point2], clip: &[Point2]) -> Result<Vec<Point2>> {
    if clip.len() < 3 {
        return Err(Error::DegenerateGeometry(format!(
            "clip polygon has {} vertices",
            clip.len()
        )));
    }
    let orientation = signed_area(clip);
    if orientation.abs() < DEGENERATE_AREA {
        return Err(Error::DegenerateGeometry(format!(
            "clip polygon area {:e} is below {DEGENERATE_AREA:e}",
            orientation.abs()
        )));
    }
    let sign = orientation.signum();

    let mut output = subject.to_vec();
    for (&a, &b) in clip.iter().zip(clip.iter().cycle().skip(1)) {
        if output.is_empty() {
            break;
        }
        let input = std::mem::take(&mut output);
        let side = |p: Point2| sign * cross(a, b, p);
        let mut prev = *input.last().unwrap();
        let mut prev_side = side(prev);
        for &cur in &input {
            let cur_side = side(cur);
            if cur_side >= 0.0 {
                if prev_side < 0.0 {
                    output.push(intersect(prev, cur, prev_side, cur_side));
                }
                output.push(cur);
            } else if prev_side >= 0.0 {
                output.push(intersect(prev, cur, prev_side, cur_side));
            }
            prev = cur;
            prev_side = cur_side;
        }
    }
    if output.len() < 3 {
        output.clear();
    }
    Ok(output)
}

// point on segment p->q where the signed side distance crosses zero
fn intersect(p: Point2, q: Point2, sp: f64, sq: f64) -> Point2 {
    let t = sp / (sp - sq);
    Point2::new(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn square(x0: f64, y0: f64, side: f64) -> Vec<Point2> {
        vec![
            Point2::new(x0, y0),
            Point2::new(x0 + side, y0),
            Point2::new(x0 + side, y0 + side),
            Point2::new(x0, y0 + side),
        ]
    }

    #[test]
    fn areas() {
        assert_eq!(polygon_area(&square(0.0, 0.0, 1.0)), 1.0);
        let tri = [Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), Point2::new(0.0, 2.0)];
        assert_eq!(polygon_area(&tri), 2.0);
        assert_eq!(polygon_area(&tri[..2]), 0.0);
        let mut cw = square(0.0, 0.0, 1.0);
        cw.reverse();
        assert_eq!(signed_area(&cw), -1.0);
        assert_eq!(polygon_area(&cw), 1.0);
    }

    #[test]
    fn self_clip_is_identity() {
        let s = square(0.0, 0.0, 1.0);
        let out = convex_clip(&s, &s).unwrap();
        assert!((polygon_area(&out) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn half_overlap() {
        let out = convex_clip(&square(0.0, 0.0, 1.0), &square(0.5, 0.0, 1.0)).unwrap();
        assert!((polygon_area(&out) - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn disjoint_is_empty() {
        let out = convex_clip(&square(0.0, 0.0, 1.0), &square(3.0, 3.0, 1.0)).unwrap();
        assert!(out.is_empty());
        assert_eq!(polygon_area(&out), 0.0);
    }

    #[test]
    fn clockwise_clip_works() {
        let mut clip = square(0.5, 0.0, 1.0);
        clip.reverse();
        let out = convex_clip(&square(0.0, 0.0, 1.0), &clip).unwrap();
        assert!((polygon_area(&out) - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn degenerate_clip_rejected() {
        let line = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(2.0, 0.0)];
        assert!(matches!(
            convex_clip(&square(0.0, 0.0, 1.0), &line),
            Err(Error::DegenerateGeometry(_))
        ));
        assert!(convex_clip(&square(0.0, 0.0, 1.0), &line[..2]).is_err());
    }

    proptest! {
        #[test]
        fn clipped_area_bounded(
            x0 in -2.0f64..2.0, y0 in -2.0f64..2.0, s0 in 0.1f64..3.0,
            x1 in -2.0f64..2.0, y1 in -2.0f64..2.0, s1 in 0.1f64..3.0,
        ) {
            let a = square(x0, y0, s0);
            let b = square(x1, y1, s1);
            let area = polygon_area(&convex_clip(&a, &b).unwrap());
            prop_assert!(area <= polygon_area(&a).min(polygon_area(&b)) + 1e-12);
            // axis-aligned overlap has a closed form
            let ox = ((x0 + s0).min(x1 + s1) - x0.max(x1)).max(0.0);
            let oy = ((y0 + s0).min(y1 + s1) - y0.max(y1)).max(0.0);
            prop_assert!((area - ox * oy).abs() <= 1e-9);
        }
    }
}
