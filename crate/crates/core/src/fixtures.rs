//! Small reference data sets used throughout the tests, the CLI examples
//! and the browser demo.
//!
//! * A: `phi = (-1, 0, 0, 1)` and `psi = (0, 1, -1, 0)` on `x1..x4`, giving the
//!   two data sets `{phi}` and `{phi, psi}`.
//! * B: three measurements on `x1..x3` with three non-invertible operations
//!   forming, with the identity, a transitive monoid incarnation of dimension 2.
//! * C: the constant data sets `{1, 2}` and `{-1, 1}` on `x1, x2`.

use crate::actions::Incarnation;
use crate::data::{DataSet, Domain, Endo};
use crate::rational::Rational;

fn q(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

fn domain(n: usize) -> Domain {
    Domain::new((1..=n).map(|i| format!("x{i}"))).expect("distinct")
}

pub fn fixture_a_phi() -> DataSet {
    DataSet::new(domain(4), [("phi".to_string(), qs(&[-1, 0, 0, 1]))]).expect("valid")
}

pub fn fixture_a_psi() -> DataSet {
    DataSet::new(
        domain(4),
        [("phi".to_string(), qs(&[-1, 0, 0, 1])), ("psi".to_string(), qs(&[0, 1, -1, 0]))],
    )
    .expect("valid")
}

pub fn fixture_b_dataset() -> DataSet {
    DataSet::new(
        domain(3),
        [
            ("phi1".to_string(), qs(&[2, 2, 3])),
            ("phi2".to_string(), qs(&[2, 2, 2])),
            ("phi3".to_string(), qs(&[1, 2, 2])),
        ],
    )
    .expect("valid")
}

/// `g1, g2, g3` (zero-based images).
pub fn fixture_b_ops() -> Vec<(String, Endo)> {
    vec![
        ("g1".to_string(), Endo::new(vec![1, 1, 2]).expect("valid")),
        ("g2".to_string(), Endo::new(vec![1, 1, 1]).expect("valid")),
        ("g3".to_string(), Endo::new(vec![0, 1, 1]).expect("valid")),
    ]
}

/// `(Φ, {id, g1, g2, g3})`
pub fn fixture_b() -> Incarnation {
    let mut ops = vec![("id".to_string(), Endo::identity(3))];
    ops.extend(fixture_b_ops());
    Incarnation::new(fixture_b_dataset(), ops).expect("fixture operations are valid")
}

/// `({1, 2}, {-1, 1})` as constant measurements on two points.
pub fn fixture_c() -> (DataSet, DataSet) {
    let ones = DataSet::new(domain(2), [("one".to_string(), qs(&[1, 1])), ("two".to_string(), qs(&[2, 2]))])
        .expect("valid");
    let signs = DataSet::new(
        domain(2),
        [("minus_one".to_string(), qs(&[-1, -1])), ("plus_one".to_string(), qs(&[1, 1]))],
    )
    .expect("valid");
    (ones, signs)
}

/// `1 ↦ -1, 2 ↦ 1` as indices into the two sets of [`fixture_c`].
pub fn fixture_c_alpha() -> Vec<usize> {
    vec![0, 1]
}
