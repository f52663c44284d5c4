//! Support functions and worst-case-scenario extraction for each
//! uncertainty-set class.

use crate::linalg::{dot, norm2};
use crate::model::{GeneralEllipsoid, UncertaintySet};
use crate::Error;

/// Maximum of `cᵀw` over the set, with a scenario attaining it.
#[derive(Clone, Debug)]
pub struct WorstCase {
    pub value: f64,
    pub scenario: Vec<f64>,
}

/// `max { cᵀw : c ∈ 𝒰 }` and a maximizer.
///
/// Ellipsoids use `ĉᵀw + ‖Cᵀw‖₂` with maximizer `ĉ + Cξ*`,
/// `ξ* = Cᵀw / ‖Cᵀw‖₂` (the center when the norm vanishes). Intervals
/// move each coordinate with `wᵢ ≠ 0` to its active bound and keep the
/// center where `wᵢ = 0`. Finite sets scan scenarios, ties broken by
/// lowest index.
pub fn support(set: &UncertaintySet, w: &[f64]) -> Result<WorstCase, Error> {
    if w.len() != set.dimension() {
        return Err(Error::InvalidInput(format!(
            "direction has length {}, set dimension is {}",
            w.len(),
            set.dimension()
        )));
    }
    Ok(match set {
        UncertaintySet::Interval(s) => {
            let mut value = 0.0;
            let mut scenario = Vec::with_capacity(w.len());
            for i in 0..w.len() {
                let c = s.center()[i];
                let d = s.halfwidth()[i];
                value += c * w[i] + d * w[i].abs();
                let shift = if w[i] > 0.0 {
                    d
                } else if w[i] < 0.0 {
                    -d
                } else {
                    0.0
                };
                scenario.push(c + shift);
            }
            WorstCase { value, scenario }
        }
        UncertaintySet::Finite(s) => {
            let mut best = 0usize;
            let mut value = dot(s.scenario(0), w);
            for j in 1..s.count() {
                let v = dot(s.scenario(j), w);
                if v > value {
                    value = v;
                    best = j;
                }
            }
            WorstCase { value, scenario: s.scenario(best).to_vec() }
        }
        UncertaintySet::AxisParallel(s) => {
            // Cᵀw with C = diag(√(1/Dᵢᵢ)); avoids materializing the matrix.
            let ct_w: Vec<f64> = (0..w.len()).map(|i| s.inv_diag(i).sqrt() * w[i]).collect();
            let norm = norm2(&ct_w);
            let value = dot(s.center(), w) + norm;
            let scenario = if norm == 0.0 {
                s.center().to_vec()
            } else {
                (0..w.len())
                    .map(|i| s.center()[i] + s.inv_diag(i).sqrt() * ct_w[i] / norm)
                    .collect()
            };
            WorstCase { value, scenario }
        }
        UncertaintySet::Ellipsoid(s) => {
            let ct_w = s.shape_t_vec(w);
            let norm = norm2(&ct_w);
            let value = dot(s.center(), w) + norm;
            let scenario = if norm == 0.0 {
                s.center().to_vec()
            } else {
                let xi: Vec<f64> = ct_w.iter().map(|v| v / norm).collect();
                let c_xi = s.shape().mul_vec(&xi);
                s.center().iter().zip(&c_xi).map(|(a, b)| a + b).collect()
            };
            WorstCase { value, scenario }
        }
    })
}

/// Worst case of `cᵀ(x − y)` style directions for a general ellipsoid,
/// returning the recovered scenario `ĉ + Cξ*`.
pub fn ellipsoid_worst_case(set: &GeneralEllipsoid, w: &[f64]) -> WorstCase {
    let ct_w = set.shape_t_vec(w);
    let norm = norm2(&ct_w);
    let value = dot(set.center(), w) + norm;
    let scenario = if norm == 0.0 {
        set.center().to_vec()
    } else {
        let xi: Vec<f64> = ct_w.iter().map(|v| v / norm).collect();
        let c_xi = set.shape().mul_vec(&xi);
        set.center().iter().zip(&c_xi).map(|(a, b)| a + b).collect()
    };
    WorstCase { value, scenario }
}

/// Whether `c` satisfies the set's defining inequality (or matches a
/// listed scenario) within `tol`.
pub fn membership(set: &UncertaintySet, c: &[f64], tol: f64) -> bool {
    assert_eq!(c.len(), set.dimension(), "dimension mismatch in membership check");
    match set {
        UncertaintySet::Interval(s) => (0..c.len())
            .all(|i| c[i] >= s.lower(i) - tol && c[i] <= s.upper(i) + tol),
        UncertaintySet::Finite(s) => (0..s.count()).any(|j| {
            s.scenario(j).iter().zip(c).all(|(a, b)| (a - b).abs() <= tol)
        }),
        UncertaintySet::AxisParallel(s) => {
            let mut quad = 0.0;
            for i in 0..c.len() {
                let r = c[i] - s.center()[i];
                quad += s.diag()[i] * r * r;
            }
            quad <= 1.0 + tol
        }
        UncertaintySet::Ellipsoid(s) => match s.gauge_sq(c, tol) {
            Some(g) => g <= 1.0 + tol,
            None => false,
        },
    }
}

/// Symmetry center, when the set is closed under reflecting any single
/// coordinate about it. Intervals and axis-parallel ellipsoids always
/// qualify; a general ellipsoid qualifies iff `CCᵀ` is diagonal (within
/// 1e−10 of its diagonal scale); a finite set only when it is a
/// singleton.
pub fn axis_symmetry_center(set: &UncertaintySet) -> Option<Vec<f64>> {
    match set {
        UncertaintySet::Interval(s) => Some(s.center().to_vec()),
        UncertaintySet::AxisParallel(s) => Some(s.center().to_vec()),
        UncertaintySet::Ellipsoid(s) => {
            let q = s.gram();
            let scale = q.max_abs_diagonal().max(1.0);
            if q.max_abs_off_diagonal() <= 1e-10 * scale {
                Some(s.center().to_vec())
            } else {
                None
            }
        }
        UncertaintySet::Finite(s) => {
            if s.count() == 1 {
                Some(s.scenario(0).to_vec())
            } else {
                None
            }
        }
    }
}

pub fn is_axis_symmetric(set: &UncertaintySet) -> bool {
    axis_symmetry_center(set).is_some()
}
