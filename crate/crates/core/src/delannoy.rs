//! Delannoy paths whose diagonal steps carry one of two colors.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::base::BaseAlgebraSpec;
use crate::error::{Error, Result};
use crate::scalar::{integer, Rational, RingContext};
use crate::shuffle::{ErbWeight, ShuffleAlgebra};

/// Default cap on `m + n` for explicit enumeration.
pub const ENUMERATION_BOUND: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Color {
    Solid,
    Dashed,
}

/// Steps, ordered `Right < Up < Diag(Solid) < Diag(Dashed)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Step {
    Right,
    Up,
    Diag(Color),
}

impl Step {
    pub const ALL: [Step; 4] = [
        Step::Right,
        Step::Up,
        Step::Diag(Color::Solid),
        Step::Diag(Color::Dashed),
    ];

    pub fn delta(self) -> (u32, u32) {
        match self {
            Step::Right => (1, 0),
            Step::Up => (0, 1),
            Step::Diag(_) => (1, 1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Step::Right => "R",
            Step::Up => "U",
            Step::Diag(Color::Solid) => "D1",
            Step::Diag(Color::Dashed) => "D2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DelannoyPath {
    steps: Vec<Step>,
}

impl DelannoyPath {
    pub fn new(steps: Vec<Step>) -> Self {
        DelannoyPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn endpoint(&self) -> (u32, u32) {
        self.steps.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.delta();
            (x + dx, y + dy)
        })
    }

    pub fn diagonals(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Diag(_))).count()
    }

    /// The same path with every diagonal given the solid color.
    pub fn uncolored(&self) -> DelannoyPath {
        DelannoyPath::new(
            self.steps
                .iter()
                .map(|s| match s {
                    Step::Diag(_) => Step::Diag(Color::Solid),
                    s => *s,
                })
                .collect(),
        )
    }
}

impl fmt::Display for DelannoyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.steps.iter().map(|s| s.label()).collect();
        f.write_str(&labels.join(" "))
    }
}

fn binom(n: u32, k: u32) -> BigUint {
    binomial(BigUint::from(n), BigUint::from(k))
}

fn check_r(m: u32, n: u32, r: u32) -> Result<()> {
    let max = m.min(n);
    if r > max {
        Err(Error::DiagonalOutOfRange { m, n, r, max })
    } else {
        Ok(())
    }
}

/// Paths from `(0,0)` to `(m,n)` with exactly `r` diagonal steps:
/// `C(m+n-r, m) C(m, r)`.
pub fn count_d(m: u32, n: u32, r: u32) -> Result<BigUint> {
    check_r(m, n, r)?;
    Ok(binom(m + n - r, m) * binom(m, r))
}

/// Colored paths with exactly `r` diagonals: `2^r D(m, n, r)`.
pub fn count_e(m: u32, n: u32, r: u32) -> Result<BigUint> {
    Ok(count_d(m, n, r)? << r as usize)
}

/// All colored paths to `(m, n)`.
pub fn e_total(m: u32, n: u32) -> BigUint {
    (0..=m.min(n)).map(|r| count_e(m, n, r).expect("r in range")).sum()
}

/// All uncolored paths to `(m, n)` (the central Delannoy numbers when `m = n`).
pub fn d_total(m: u32, n: u32) -> BigUint {
    (0..=m.min(n)).map(|r| count_d(m, n, r).expect("r in range")).sum()
}

/// `E(m, n)` for `m, n <= size` from
/// `E(m,n) = E(m-1,n) + E(m,n-1) + 2 E(m-1,n-1)` with unit boundary.
pub fn e_table(size: usize) -> Vec<Vec<BigUint>> {
    let mut t = vec![vec![BigUint::one(); size + 1]; size + 1];
    for m in 1..=size {
        for n in 1..=size {
            t[m][n] = &t[m - 1][n] + &t[m][n - 1] + (&t[m - 1][n - 1] << 1usize);
        }
    }
    t
}

/// Every colored path to `(m, n)` in lexicographic step order, provided
/// `m + n <= bound`.
pub fn enumerate_colored_bounded(m: u32, n: u32, bound: u32) -> Result<Vec<DelannoyPath>> {
    if m + n > bound {
        return Err(Error::EnumerationBound { m, n, bound });
    }
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity((m + n) as usize);
    fn rec(x: u32, y: u32, m: u32, n: u32, steps: &mut Vec<Step>, out: &mut Vec<DelannoyPath>) {
        if (x, y) == (m, n) {
            out.push(DelannoyPath::new(steps.clone()));
            return;
        }
        for s in Step::ALL {
            let (dx, dy) = s.delta();
            if x + dx <= m && y + dy <= n {
                steps.push(s);
                rec(x + dx, y + dy, m, n, steps, out);
                steps.pop();
            }
        }
    }
    rec(0, 0, m, n, &mut steps, &mut out);
    Ok(out)
}

pub fn enumerate_colored(m: u32, n: u32) -> Result<Vec<DelannoyPath>> {
    enumerate_colored_bounded(m, n, ENUMERATION_BOUND)
}

/// Rows `0..=size`; row `k` lists `E(0,k), E(1,k-1), ..., E(k,0)`.
pub fn triangle(size: usize) -> Vec<Vec<BigUint>> {
    let t = e_table(size);
    (0..=size)
        .map(|k| (0..=k).map(|m| t[m][k - m].clone()).collect())
        .collect()
}

/// One row per line, entries separated by `", "`.
pub fn render_triangle(rows: &[Vec<BigUint>]) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(", "));
        out.push('\n');
    }
    out
}

/// The rows read as one sequence, `index value` per line, offset 0.
pub fn render_bfile(rows: &[Vec<BigUint>]) -> String {
    let mut out = String::new();
    for (i, v) in rows.iter().flatten().enumerate() {
        out.push_str(&format!("{i} {v}\n"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GfKind {
    /// `1 / (1 - x - y - xy)`
    Plain,
    /// `1 / (1 - x - y - 2xy)`
    Colored,
}

/// Coefficients of `1 / D(x, y)` for total order at most `order`, where
/// `den[i][j]` is the coefficient of `x^i y^j` in `D` and `den[0][0] != 0`.
///
/// The result is indexed `[i][j]` with `i + j <= order`.
pub fn invert_series(den: &[Vec<Rational>], order: usize) -> Result<Vec<Vec<Rational>>> {
    let d = |i: usize, j: usize| {
        den.get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    };
    let d00 = d(0, 0);
    if d00.is_zero() {
        return Err(Error::InvalidArgument(
            "series with zero constant term is not invertible".into(),
        ));
    }
    let inv00 = d00.recip();
    let mut f: Vec<Vec<Rational>> = (0..=order).map(|i| vec![Rational::zero(); order + 1 - i]).collect();
    for total in 0..=order {
        for i in 0..=total {
            let j = total - i;
            if total == 0 {
                f[0][0] = inv00.clone();
                continue;
            }
            let mut acc = Rational::zero();
            for a in 0..=i {
                for b in 0..=j {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let c = d(a, b);
                    if !c.is_zero() {
                        acc += c * &f[i - a][j - b];
                    }
                }
            }
            f[i][j] = -acc * &inv00;
        }
    }
    Ok(f)
}

/// Integer coefficients of the plain or colored Delannoy generating
/// function, indexed `[m][n]` with `m + n <= order`.
pub fn gf_coefficients(kind: GfKind, order: usize) -> Vec<Vec<BigInt>> {
    let xy = match kind {
        GfKind::Plain => -1,
        GfKind::Colored => -2,
    };
    let den = vec![vec![integer(1), integer(-1)], vec![integer(-1), integer(xy)]];
    let f = invert_series(&den, order).expect("constant term is one");
    f.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| {
                    debug_assert!(c.is_integer());
                    c.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Four independent computations of the number of colored paths to
/// `(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub m: u32,
    pub n: u32,
    /// Coefficient sum of `1^{(x)(m+1)} diamond 1^{(x)(n+1)}` at `lambda = kappa = 1`.
    #[serde(serialize_with = "as_string")]
    pub product_sum: BigInt,
    #[serde(serialize_with = "as_string")]
    pub e_total: BigUint,
    pub enumerated: usize,
    #[serde(serialize_with = "as_string")]
    pub generating_function: BigInt,
}

fn as_string<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl BridgeReport {
    pub fn agrees(&self) -> bool {
        let e = BigInt::from(self.e_total.clone());
        self.product_sum == e && BigInt::from(self.enumerated) == e && self.generating_function == e
    }
}

impl fmt::Display for BridgeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}): product {} | formula {} | paths {} | series {} -> {}",
            self.m,
            self.n,
            self.product_sum,
            self.e_total,
            self.enumerated,
            self.generating_function,
            if self.agrees() { "agree" } else { "MISMATCH" }
        )
    }
}

/// Shuffle algebra over `A = k` with `lambda = kappa = 1`, for bridge checks.
pub fn unit_weight_algebra() -> ShuffleAlgebra {
    let ctx = RingContext::weight_ring();
    ShuffleAlgebra::new(
        BaseAlgebraSpec::scalars(),
        ErbWeight::constant(&ctx, integer(1), integer(1)),
    )
}

/// Compare the four counts for `(m, n)`; `m + n` must be within the
/// enumeration bound.
pub fn coefficient_bridge(alg: &ShuffleAlgebra, m: u32, n: u32) -> Result<BridgeReport> {
    let paths = enumerate_colored(m, n)?;
    let product = alg.closed_form_kk(m as usize, n as usize)?;
    let assignment = [
        (crate::scalar::LAMBDA.to_string(), integer(1)),
        (crate::scalar::KAPPA.to_string(), integer(1)),
    ]
    .into_iter()
    .collect();
    let product_sum = product
        .substitute(&assignment)?
        .iter()
        .map(|(_, c)| c.as_constant().expect("numeric after substitution"))
        .fold(Rational::zero(), |a, b| a + b);
    let order = (m + n) as usize;
    let gf = gf_coefficients(GfKind::Colored, order);
    Ok(BridgeReport {
        m,
        n,
        product_sum: product_sum.to_integer(),
        e_total: e_total(m, n),
        enumerated: paths.len(),
        generating_function: gf[m as usize][n as usize].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn diagonal_counts() {
        assert_eq!(count_d(1, 1, 1), Ok(u(1)));
        assert_eq!(count_d(4, 3, 0), Ok(u(35)));
        assert_eq!(count_d(2, 2, 1), Ok(u(6)));
        assert_eq!(count_e(1, 1, 1), Ok(u(2)));
        assert_eq!(count_e(3, 5, 0), Ok(u(56)));
        assert_eq!(count_e(1, 2, 1), Ok(u(4)));
        assert_eq!(
            count_d(2, 1, 2),
            Err(Error::DiagonalOutOfRange {
                m: 2,
                n: 1,
                r: 2,
                max: 1
            })
        );
    }

    #[test]
    fn totals() {
        assert_eq!(e_total(1, 1), u(4));
        assert_eq!(e_total(2, 2), u(22));
        assert_eq!(e_total(2, 3), u(46));
        assert_eq!(e_total(0, 7), u(1));
        let t = e_table(6);
        for m in 0..=6u32 {
            for n in 0..=6u32 {
                assert_eq!(t[m as usize][n as usize], e_total(m, n));
            }
        }
    }

    #[test]
    fn small_enumerations() {
        let p = enumerate_colored(1, 1).unwrap();
        let text: Vec<String> = p.iter().map(ToString::to_string).collect();
        assert_eq!(text, ["R U", "U R", "D1", "D2"]);
        assert_eq!(enumerate_colored(1, 2).unwrap().len(), 7);
        let p = enumerate_colored(0, 3).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].to_string(), "U U U");
        assert_eq!(
            enumerate_colored(8, 7).err(),
            Some(Error::EnumerationBound { m: 8, n: 7, bound: 14 })
        );
    }

    #[test]
    fn printed_triangle() {
        let text = render_triangle(&triangle(5));
        assert_eq!(
            text,
            "1\n1, 1\n1, 4, 1\n1, 7, 7, 1\n1, 10, 22, 10, 1\n1, 13, 46, 46, 13, 1\n"
        );
        let b = render_bfile(&triangle(2));
        assert_eq!(b, "0 1\n1 1\n2 1\n3 1\n4 4\n5 1\n");
    }

    #[test]
    fn series_coefficients() {
        let c = gf_coefficients(GfKind::Colored, 4);
        assert_eq!(c[1][1], BigInt::from(4));
        assert_eq!(c[0][4], BigInt::from(1));
        let p = gf_coefficients(GfKind::Plain, 8);
        for m in 0..=8u32 {
            for n in 0..=(8 - m) {
                assert_eq!(p[m as usize][n as usize], BigInt::from(d_total(m, n)));
            }
        }
    }

    #[test]
    fn bridge_examples() {
        let alg = unit_weight_algebra();
        let r = coefficient_bridge(&alg, 1, 1).unwrap();
        assert!(r.agrees());
        assert_eq!(r.e_total, u(4));
        let r = coefficient_bridge(&alg, 1, 3).unwrap();
        assert!(r.agrees());
        assert_eq!(r.e_total, u(10));
        assert!(coefficient_bridge(&alg, 3, 3).unwrap().agrees());
    }
}
