//! Exact feasibility for small systems `A x <= b, x >= 0` with integer
//! coefficients, via a dense phase-one simplex with Bland's rule.
//!
//! The tableau is generic over the number type. [`feasible_point`] first
//! runs it on `Ratio<i128>` with checked arithmetic and falls back to
//! `BigRational` if any intermediate value would overflow, so the answer is
//! exact either way.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

/// One row `sum coeff * x_var <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, i64)>,
    pub rhs: i64,
}

impl Constraint {
    pub fn new(coeffs: Vec<(usize, i64)>, rhs: i64) -> Self {
        Self { coeffs, rhs }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub rows: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<(usize, i64)>, rhs: i64) {
        debug_assert!(coeffs.iter().all(|&(v, _)| v < self.num_vars));
        self.rows.push(Constraint::new(coeffs, rhs));
    }

    /// Whether `x` (non-negative) satisfies every row.
    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|r| {
                let lhs = r
                    .coeffs
                    .iter()
                    .fold(BigRational::zero(), |acc, &(v, c)| acc + &x[v] * BigInt::from(c));
                lhs <= BigRational::from_integer(r.rhs.into())
            })
    }
}

trait Exact: Clone + PartialOrd + Zero + One + Signed {
    fn from_i64(v: i64) -> Self;
    fn add_(&self, o: &Self) -> Option<Self>;
    fn sub_(&self, o: &Self) -> Option<Self>;
    fn mul_(&self, o: &Self) -> Option<Self>;
    fn div_(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigRational;
}

impl Exact for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn add_(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Exact for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn add_(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

struct Overflow;

/// A feasible point of `sys`, or `None` if the system is infeasible.
pub fn feasible_point(sys: &LinearSystem) -> Option<Vec<BigRational>> {
    match phase_one::<Ratio<i128>>(sys) {
        Ok(r) => r,
        Err(Overflow) => phase_one::<BigRational>(sys).unwrap_or_else(|_| unreachable!("big rationals never overflow")),
    }
}

/// Same as [`feasible_point`] but always in arbitrary precision.
pub fn feasible_point_big(sys: &LinearSystem) -> Option<Vec<BigRational>> {
    phase_one::<BigRational>(sys).unwrap_or_else(|_| unreachable!("big rationals never overflow"))
}

fn phase_one<T: Exact>(sys: &LinearSystem) -> Result<Option<Vec<BigRational>>, Overflow> {
    let n = sys.num_vars;
    let m = sys.rows.len();
    let artificial: Vec<usize> = (0..m).filter(|&i| sys.rows[i].rhs < 0).collect();
    // Columns: originals, one slack per row, one artificial per negative row.
    let cols = n + m + artificial.len();
    let rhs_col = cols;
    let mut tab: Vec<Vec<T>> = vec![vec![T::zero(); cols + 1]; m + 1];
    let mut basis = vec![0usize; m];
    let mut art_of_row = vec![usize::MAX; m];
    for (k, &i) in artificial.iter().enumerate() {
        art_of_row[i] = n + m + k;
    }
    for (i, row) in sys.rows.iter().enumerate() {
        let sign: i64 = if row.rhs < 0 { -1 } else { 1 };
        for &(v, c) in &row.coeffs {
            let cur = tab[i][v].add_(&T::from_i64(sign * c)).ok_or(Overflow)?;
            tab[i][v] = cur;
        }
        tab[i][n + i] = T::from_i64(sign);
        tab[i][rhs_col] = T::from_i64(sign * row.rhs);
        if row.rhs < 0 {
            tab[i][art_of_row[i]] = T::one();
            basis[i] = art_of_row[i];
        } else {
            basis[i] = n + i;
        }
    }
    // Phase-one objective: minimize the sum of artificials. Reduced costs
    // start as minus the sum of the artificial rows.
    for &i in &artificial {
        let (rows, obj) = tab.split_at_mut(m);
        for (j, (o, a)) in obj[0].iter_mut().zip(&rows[i]).enumerate() {
            if basis[i] != j {
                *o = o.sub_(a).ok_or(Overflow)?;
            }
        }
    }
    for &i in &artificial {
        tab[m][art_of_row[i]] = T::zero();
    }

    while let Some(enter) = (0..cols).find(|&j| tab[m][j].is_negative()) {
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = tab[i][rhs_col].div_(&tab[i][enter]).ok_or(Overflow)?;
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            // Phase one is bounded below by zero; an unbounded ray cannot occur.
            unreachable!("phase-one objective is bounded");
        };
        pivot(&mut tab, r, enter)?;
        basis[r] = enter;
    }

    if !tab[m][rhs_col].is_zero() {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = tab[i][rhs_col].to_big();
        }
    }
    debug_assert!(sys.satisfied_by(&x));
    Ok(Some(x))
}

fn pivot<T: Exact>(tab: &mut [Vec<T>], r: usize, c: usize) -> Result<(), Overflow> {
    let p = tab[r][c].clone();
    if !p.is_one() {
        for v in tab[r].iter_mut() {
            if !v.is_zero() {
                *v = v.div_(&p).ok_or(Overflow)?;
            }
        }
    }
    let prow = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if pv.is_zero() {
                continue;
            }
            *v = v.sub_(&f.mul_(pv).ok_or(Overflow)?).ok_or(Overflow)?;
        }
    }
    Ok(())
}
