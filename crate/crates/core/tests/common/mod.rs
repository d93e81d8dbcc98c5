#![allow(dead_code)]

use gravent_core::prelude::*;
use proptest::prelude::*;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn unit_phases() -> PhaseSet {
    phase_gaps(&GravityConfig::dimensionless(1.0, 1.0, 2.0, 1.0).unwrap()).unwrap()
}

pub fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
}

pub fn state() -> impl Strategy<Value = PureBipartiteState> {
    [complex(), complex(), complex(), complex()]
        .prop_filter("non-zero", |a| a.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3)
        .prop_map(|a| PureBipartiteState::normalized(a).unwrap())
}

pub fn phase_set() -> impl Strategy<Value = PhaseSet> {
    (0.1f64..5.0, 1.2f64..10.0)
        .prop_map(|(mass, d)| phase_gaps(&GravityConfig::dimensionless(mass, 1.0, d, 1.0).unwrap()).unwrap())
}

/// Random `|k| ≤ 1`.
pub fn overlap() -> impl Strategy<Value = Complex64> {
    (0.0f64..=1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

pub fn qubit_vector() -> impl Strategy<Value = CVector> {
    (complex(), complex())
        .prop_filter("non-zero", |(a, b)| a.norm_sqr() + b.norm_sqr() > 1e-3)
        .prop_map(|(a, b)| CVector::new(vec![a, b]).normalized().unwrap())
}

/// Random mixed qubit state: convex mix of two pure projectors.
pub fn qubit_density() -> impl Strategy<Value = CMatrix> {
    (qubit_vector(), qubit_vector(), 0.0f64..1.0)
        .prop_map(|(u, v, w)| u.outer().scale(c(w, 0.0)).add(&v.outer().scale(c(1.0 - w, 0.0))))
}

/// Random 2×2 unitary from Euler angles and a global phase.
pub fn unitary2() -> impl Strategy<Value = CMatrix> {
    (0.0f64..6.3, 0.0f64..6.3, 0.0f64..6.3, 0.0f64..6.3).prop_map(|(a, b, g, d)| {
        let e = |x: f64| Complex64::from_polar(1.0, x);
        let (cs, sn) = ((g / 2.0).cos(), (g / 2.0).sin());
        CMatrix::from_rows(
            2,
            vec![
                e(d - a / 2.0 - b / 2.0) * cs,
                -e(d - a / 2.0 + b / 2.0) * sn,
                e(d + a / 2.0 - b / 2.0) * sn,
                e(d + a / 2.0 + b / 2.0) * cs,
            ],
        )
        .unwrap()
    })
}

pub fn matrix(dim: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec(complex(), dim * dim).prop_map(move |d| CMatrix::from_rows(dim, d).unwrap())
}

pub fn hermitian(dim: usize) -> impl Strategy<Value = CMatrix> {
    matrix(dim).prop_map(|m| m.add(&m.adjoint()).scale(c(0.5, 0.0)))
}
