use std::fmt::Write as _;

use crate::detection::ObjectLabel;
use crate::error::{Error, Result};
use crate::geometry::Point3;

/// Parse KITTI object labels:
/// `type trunc occ alpha left top right bottom h w l x y z ry [score]`.
pub fn parse_labels(text: &str) -> Result<Vec<ObjectLabel>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_line(l).map_err(|message| Error::Parse { line: i + 1, message }))
        .collect()
}

fn parse_line(line: &str) -> std::result::Result<ObjectLabel, String> {
    let line = line.replace('\u{2212}', "-");
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 15 && fields.len() != 16 {
        return Err(format!("expected 15 or 16 fields, found {}", fields.len()));
    }
    let num = |i: usize| -> std::result::Result<f64, String> {
        fields[i]
            .parse::<f64>()
            .map_err(|_| format!("field {} (`{}`) is not a number", i + 1, fields[i]))
    };
    let occlusion = fields[2]
        .parse::<i32>()
        .or_else(|_| num(2).map(|v| v as i32))
        .map_err(|_| format!("occlusion `{}` is not an integer", fields[2]))?;
    Ok(ObjectLabel {
        class_name: fields[0].to_string(),
        truncation: num(1)?,
        occlusion,
        alpha: num(3)?,
        bbox2d: [num(4)?, num(5)?, num(6)?, num(7)?],
        h: num(8)?,
        w: num(9)?,
        l: num(10)?,
        location: Point3::new(num(11)?, num(12)?, num(13)?),
        rotation_y: num(14)?,
        score: if fields.len() == 16 { Some(num(15)?) } else { None },
    })
}

/// Serialize in the benchmark's precision: two decimals, four for scores.
pub fn write_labels(labels: &[ObjectLabel]) -> String {
    let mut out = String::new();
    for o in labels {
        let [l, t, r, b] = o.bbox2d;
        let p = o.location;
        let _ = write!(
            out,
            "{} {:.2} {} {:.2} {:.2} {:.2} {:.2} {:.2} {:.2} {:.2} {:.2} {:.2} {:.2} {:.2} {:.2}",
            o.class_name, o.truncation, o.occlusion, o.alpha, l, t, r, b, o.h, o.w, o.l, p.x, p.y, p.z, o.rotation_y
        );
        if let Some(s) = o.score {
            let _ = write!(out, " {s:.4}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ground_truth_line() {
        let labels = parse_labels("Car 0.0 0 −1.58 100 150 200 250 1.5 1.6 3.9 2.0 1.7 15.0 −1.6").unwrap();
        let o = &labels[0];
        assert_eq!(o.class_name, "Car");
        assert_eq!(o.h, 1.5);
        assert_eq!(o.location, Point3::new(2.0, 1.7, 15.0));
        assert_eq!(o.rotation_y, -1.6);
        assert_eq!(o.score, None);
    }

    #[test]
    fn detection_line() {
        let text = "Car 0.0 0 -1.58 100 150 200 250 1.5 1.6 3.9 2.0 1.7 15.0 -1.6 0.93\n";
        assert_eq!(parse_labels(text).unwrap()[0].score, Some(0.93));
    }

    #[test]
    fn dont_care() {
        let text = "DontCare -1 -1 -10 503.89 169.71 590.61 190.13 -1 -1 -1 -1000 -1000 -1000 -10\n";
        let o = &parse_labels(text).unwrap()[0];
        assert!(o.is_dont_care());
        assert!(o.box3d().is_err());
    }

    #[test]
    fn wrong_field_count_names_line() {
        let text = "Car 0.0 0 -1.58 100 150 200 250 1.5 1.6 3.9 2.0 1.7 15.0 -1.6\n\nCar 0.0 0 -1.58 100 150 200 250 1.5 1.6 3.9 2.0 1.7\n";
        let err = parse_labels(text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().contains("line 3"));
    }

    #[test]
    fn bad_number() {
        let text = "Car 0.0 0 -1.58 100 150 200 250 1.5 1.6 abc 2.0 1.7 15.0 -1.6\n";
        assert!(matches!(parse_labels(text), Err(Error::Parse { line: 1, .. })));
    }

    fn printed(v: f64) -> f64 {
        format!("{v:.2}").parse().unwrap()
    }

    proptest! {
        #[test]
        fn round_trip_at_printed_precision(
            trunc in 0.0f64..1.0, occ in 0i32..4, alpha in -3.0f64..3.0,
            bbox in proptest::array::uniform4(0.0f64..1242.0),
            dims in proptest::array::uniform3(0.1f64..10.0),
            loc in proptest::array::uniform3(-50.0f64..80.0),
            ry in -3.0f64..3.0, score in proptest::option::of(0.0f64..1.0),
        ) {
            let o = ObjectLabel {
                class_name: "Car".into(), truncation: trunc, occlusion: occ, alpha, bbox2d: bbox,
                h: dims[0], w: dims[1], l: dims[2], location: Point3::new(loc[0], loc[1], loc[2]),
                rotation_y: ry, score,
            };
            let back = parse_labels(&write_labels(std::slice::from_ref(&o))).unwrap().remove(0);
            prop_assert_eq!(&back.class_name, "Car");
            prop_assert_eq!(back.occlusion, occ);
            for (a, b) in [(back.truncation, trunc), (back.alpha, alpha), (back.h, dims[0]), (back.w, dims[1]),
                           (back.l, dims[2]), (back.location.x, loc[0]), (back.location.y, loc[1]),
                           (back.location.z, loc[2]), (back.rotation_y, ry)] {
                prop_assert_eq!(a, printed(b));
            }
            for (a, b) in back.bbox2d.iter().zip(bbox) {
                prop_assert_eq!(*a, printed(b));
            }
            let expected_score = score.map(|s| format!("{s:.4}").parse::<f64>().unwrap());
            prop_assert_eq!(back.score, expected_score);
            // printing is a fixed point
            prop_assert_eq!(write_labels(std::slice::from_ref(&back)), write_labels(&[o]));
        }
    }
}
