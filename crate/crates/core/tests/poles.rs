mod common;

use common::{bound_kappas, c, lattice_minima, virtual_gammas};
use jost_core::jost::{AnalyticSquareWell, JostEvaluator, NumericJost};
use jost_core::poles::{count_zeros, find_poles, refine_zero, ScanRegion};
use jost_core::potential::PotentialSpec;
use jost_core::square_well::SquareWellParams;
use jost_core::PoleClass;

fn sw(v0: f64, l: usize) -> AnalyticSquareWell {
    AnalyticSquareWell::new(SquareWellParams::new(v0, 1.0).unwrap(), l)
}

fn numeric(v0: f64, l: usize) -> NumericJost {
    NumericJost::new(PotentialSpec::square_well(v0, 1.0).unwrap(), l)
}

fn wide() -> ScanRegion {
    ScanRegion::new((-6.0, 6.0), (-2.0, 3.0)).unwrap()
}

#[test]
fn bound_states_match_bisection() {
    for v0 in [4.0, 12.0, 30.0] {
        let kappas = bound_kappas(v0, 1.0);
        let top = v0.sqrt();
        let region = ScanRegion::new((-0.2, 0.2), (-top - 0.1, -0.01)).unwrap();
        let scan = find_poles(&sw(v0, 0), &region).unwrap();
        let mut found: Vec<f64> = scan.records.iter().map(|r| -r.k0.im).collect();
        found.sort_by(|a, b| b.total_cmp(a));
        assert_eq!(found.len(), kappas.len(), "V0={v0}");
        for (f, k) in found.iter().zip(&kappas) {
            assert!((f - k).abs() < 1e-9, "V0={v0}: {f} vs {k}");
        }
    }
}

#[test]
fn virtual_state_matches_bisection() {
    let gammas = virtual_gammas(2.0, 1.0);
    assert_eq!(gammas.len(), 1);
    let guess = c(0.0, gammas[0] + 0.01);
    let rec = refine_zero(&numeric(2.0, 0), guess, 1e-12).unwrap();
    assert_eq!(rec.classification, Some(PoleClass::Virtual));
    assert!((rec.k0.im - gammas[0]).abs() < 1e-9);
}

#[test]
fn poles_sit_at_lattice_minima() {
    let j = sw(4.0, 0);
    let minima = lattice_minima(|k| j.jost(k).map(|f| f.norm()).unwrap_or(f64::NAN), (-6.0, 6.0), (-2.0, 3.0), 240, 0.5);
    let scan = find_poles(&j, &wide()).unwrap();
    assert_eq!(minima.len(), scan.records.len());
    for rec in &scan.records {
        assert!(minima.iter().any(|m| (m - rec.k0).norm() < 0.1), "{}", rec.k0);
    }
}

#[test]
fn numeric_scan_agrees_with_closed_form_scan() {
    for (v0, l) in [(4.0, 0), (10.0, 1)] {
        let a = find_poles(&numeric(v0, l), &wide()).unwrap();
        let b = find_poles(&sw(v0, l), &wide()).unwrap();
        assert_eq!(a.records.len(), b.records.len());
        assert_eq!(a.winding, b.winding);
        for (x, y) in a.records.iter().zip(&b.records) {
            assert!((x.k0 - y.k0).norm() < 1e-7, "{} vs {}", x.k0, y.k0);
            assert_eq!(x.classification, y.classification, "{} vs {}", x.k0, y.k0);
        }
    }
}

#[test]
fn resonances_come_in_mirror_pairs() {
    for (v0, l) in [(4.0, 0), (10.0, 1), (25.0, 2)] {
        let scan = find_poles(&sw(v0, l), &wide()).unwrap();
        for r in &scan.records {
            let mirror = -r.k0.conj();
            assert!(
                scan.records.iter().any(|s| (s.k0 - mirror).norm() < 1e-9 * (1.0 + r.k0.norm())),
                "V0={v0} l={l}: no mirror for {}",
                r.k0
            );
        }
    }
}

#[test]
fn zero_count_is_additive() {
    let j = sw(4.0, 0);
    let whole = count_zeros(&j, &wide()).unwrap();
    let cuts = [-2.3, 0.37, 2.9];
    let mut edges = vec![-6.0];
    edges.extend(cuts);
    edges.push(6.0);
    let parts: usize = edges
        .windows(2)
        .map(|w| count_zeros(&j, &ScanRegion::new((w[0], w[1]), (-2.0, 3.0)).unwrap()).unwrap())
        .sum();
    assert_eq!(parts, whole);
    assert_eq!(whole, 3);
}

#[test]
fn winding_matches_refined_pole_count() {
    let j = numeric(4.0, 0);
    let scan = find_poles(&j, &wide()).unwrap();
    assert_eq!(scan.records.len(), count_zeros(&j, &wide()).unwrap());
}
