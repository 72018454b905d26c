use jost_web::{landscape, poles_json, trajectory_json};
use serde_json::Value;

#[test]
fn landscape_shape_and_minimum() {
    let v = landscape(4.0, 1.0, 0, (-1.0, 1.0), (-1.0, 0.0), 41, 21).unwrap();
    assert_eq!(v.len(), 2 * 41 * 21);
    let (mut best, mut at) = (f64::INFINITY, 0);
    for (i, pair) in v.chunks(2).enumerate() {
        if pair[0] < best {
            best = pair[0];
            at = i;
        }
    }
    // lattice spacing 0.05; the bound state is at -0.638i
    let (x, y) = (-1.0 + 0.05 * (at % 41) as f64, -1.0 + 0.05 * (at / 41) as f64);
    assert!(x.abs() < 0.06 && (y + 0.638).abs() < 0.06);
}

#[test]
fn landscape_marks_undefined_points() {
    let v = landscape(4.0, 1.0, 1, (-1.0, 1.0), (-1.0, 1.0), 3, 3).unwrap();
    assert!(v[8].is_nan() && v[9].is_nan());
    assert!(landscape(4.0, 1.0, 0, (-1.0, 1.0), (-1.0, 1.0), 1, 3).is_err());
}

#[test]
fn poles_as_json() {
    let text = poles_json(4.0, 1.0, 0, (-6.0, 6.0), (-2.0, 3.0)).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let poles = v.as_array().unwrap();
    assert_eq!(poles.len(), 3);
    assert_eq!(poles[1]["class"], "bound");
    assert!(poles_json(-1.0, 1.0, 0, (-6.0, 6.0), (-2.0, 3.0)).is_err());
}

#[test]
fn sweep_as_json() {
    let text = trajectory_json(1.0, 0, 2.0, 4.0, 10, (-0.1, 0.1), (-1.0, 1.0)).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let tracks = v.as_array().unwrap();
    assert_eq!(tracks.len(), 1);
    let points = tracks[0]["points"].as_array().unwrap();
    assert_eq!(points.len(), 11);
    assert_eq!(points[0][1]["class"], "virtual");
    assert_eq!(points[10][1]["class"], "bound");
}
