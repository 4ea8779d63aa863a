//! Export formats: finite-group value vectors as JSON `[re, im]` lists and
//! SU(2) grid samples as CSV.

use std::fmt::Write as _;

use crate::charfunc::{BiFunction, CharFunc};
use crate::error::Result;
use crate::groups::{HaarQuadrature, SU2Element};
use crate::linalg::{vec_from_pairs, vec_to_pairs, C64};
use crate::representations::Su2;

/// Header of [`su2_samples_csv`].
pub const SU2_CSV_HEADER: &str = "phi,theta,psi,re,im";
/// Header of [`product_samples_csv`].
pub const PRODUCT_CSV_HEADER: &str = "phi1,theta1,psi1,phi2,theta2,psi2,re,im";

pub fn values_to_json(values: &[C64]) -> String {
    let v = nalgebra::DVector::from_column_slice(values);
    serde_json::to_string(&vec_to_pairs(&v)).expect("serializable")
}

pub fn values_from_json(text: &str) -> Result<Vec<C64>> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text)?;
    Ok(vec_from_pairs(&pairs).iter().copied().collect())
}

/// One row per quadrature node: Euler angles then `φ`.
pub fn su2_samples_csv(phi: &CharFunc<Su2>, quad: &HaarQuadrature) -> String {
    let mut out = String::from(SU2_CSV_HEADER);
    out.push('\n');
    for (g, [a, b, c]) in quad.nodes().iter().zip(quad.angles()) {
        let v = phi.evaluate(g);
        let _ = writeln!(out, "{a:.12},{b:.12},{c:.12},{:.15e},{:.15e}", v.re, v.im);
    }
    out
}

/// One row per pair of nodes from the two grids.
pub fn product_samples_csv<F>(phi: &F, left: &HaarQuadrature, right: &HaarQuadrature) -> String
where
    F: BiFunction<Base = Su2>,
{
    let values = phi.grid_values(left.nodes(), right.nodes());
    let mut out = String::from(PRODUCT_CSV_HEADER);
    out.push('\n');
    for (a, [p1, t1, s1]) in left.angles().iter().enumerate() {
        for (b, [p2, t2, s2]) in right.angles().iter().enumerate() {
            let v = values[(a, b)];
            let _ = writeln!(
                out,
                "{p1:.12},{t1:.12},{s1:.12},{p2:.12},{t2:.12},{s2:.12},{:.15e},{:.15e}",
                v.re, v.im
            );
        }
    }
    out
}

/// Parses a CSV row written by [`su2_samples_csv`] back into a node and value.
pub fn parse_su2_sample(line: &str) -> Option<(SU2Element, C64)> {
    let f: Vec<f64> = line.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    match f.as_slice() {
        [a, b, c, re, im] => Some((SU2Element::from_euler(*a, *b, *c), C64::new(*re, *im))),
        _ => None,
    }
}
