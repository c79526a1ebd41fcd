//! Fourier–Motzkin elimination over arbitrary-precision rationals.
//!
//! Decides the same question as [`super::lp::feasible_point`] by a
//! completely different route, which makes it useful as a cross-check on
//! small systems. The number of rows can grow doubly exponentially, so keep
//! inputs tiny.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::lp::LinearSystem;

type Row = (Vec<BigRational>, BigRational);

/// Whether `A x <= b, x >= 0` has a solution.
pub fn is_feasible(sys: &LinearSystem) -> bool {
    let n = sys.num_vars;
    let mut rows: Vec<Row> = Vec::new();
    for r in &sys.rows {
        let mut a = vec![BigRational::zero(); n];
        for &(v, c) in &r.coeffs {
            a[v] += BigRational::from_integer(BigInt::from(c));
        }
        rows.push((a, BigRational::from_integer(r.rhs.into())));
    }
    for v in 0..n {
        let mut a = vec![BigRational::zero(); n];
        a[v] = BigRational::from_integer((-1).into());
        rows.push((a, BigRational::zero()));
    }
    for v in 0..n {
        rows = eliminate(rows, v);
        if rows.iter().any(|(a, b)| a.iter().all(Zero::is_zero) && b.is_negative()) {
            return false;
        }
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

fn eliminate(rows: Vec<Row>, v: usize) -> Vec<Row> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out: BTreeSet<(Vec<BigRational>, BigRational)> = BTreeSet::new();
    for (a, b) in rows {
        if a[v].is_positive() {
            pos.push((a, b));
        } else if a[v].is_negative() {
            neg.push((a, b));
        } else {
            out.insert(normalize((a, b)));
        }
    }
    for (pa, pb) in &pos {
        for (na, nb) in &neg {
            let fp = na[v].abs();
            let fn_ = pa[v].clone();
            let a: Vec<BigRational> = pa.iter().zip(na).map(|(x, y)| x * &fp + y * &fn_).collect();
            let b = pb * &fp + nb * &fn_;
            out.insert(normalize((a, b)));
        }
    }
    out.into_iter().collect()
}

/// Scales a row so its first nonzero coefficient has magnitude one, which
/// lets the set above drop duplicates.
fn normalize((a, b): Row) -> Row {
    match a.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = lead.abs();
            (a.iter().map(|x| x / &s).collect(), b / s)
        }
        None => (a, b),
    }
}
