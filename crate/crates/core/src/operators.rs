//! Concrete ERB operators on finite truncations of function algebras, and
//! tools to check or infer the identity they satisfy.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lincomb::{render_terms, LinComb};
use crate::scalar::{integer, Rational, RingContext, ScalarPoly};
use crate::shuffle::{ErbTarget, ErbWeight};

/// Coordinates with respect to a [`Basis`], keyed by basis label.
pub type Vector = LinComb<i64>;

/// A finite window of a basis with a multiplication rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Basis {
    /// `x^n`, `0 <= n <= max_degree`.
    Polynomial { max_degree: i64 },
    /// `t^n`, `-window <= n <= window`.
    Laurent { window: i64 },
    /// `t_k = x(x-1)...(x-k+1)/k!`, `0 <= k <= max_index`.
    FallingFactorial { max_index: i64 },
}

impl Basis {
    pub fn labels(&self) -> std::ops::RangeInclusive<i64> {
        match *self {
            Basis::Polynomial { max_degree } => 0..=max_degree,
            Basis::Laurent { window } => -window..=window,
            Basis::FallingFactorial { max_index } => 0..=max_index,
        }
    }

    pub fn contains(&self, label: i64) -> bool {
        self.labels().contains(&label)
    }

    pub fn label_name(&self, label: i64) -> String {
        match self {
            Basis::Polynomial { .. } => match label {
                0 => "1".into(),
                1 => "x".into(),
                n => format!("x^{n}"),
            },
            Basis::Laurent { .. } => match label {
                0 => "1".into(),
                1 => "t".into(),
                n => format!("t^{n}"),
            },
            Basis::FallingFactorial { .. } => format!("t_{label}"),
        }
    }

    fn unit_label(&self) -> bool {
        !matches!(self, Basis::FallingFactorial { .. })
    }
}

/// A truncated commutative algebra over a coefficient ring.
///
/// Products that leave the window are reported as [`Error::Overflow`].
#[derive(Debug, Clone)]
pub struct TruncatedAlgebra {
    basis: Basis,
    ctx: Arc<RingContext>,
    // t_j * t_k in the t-basis, for j <= k and j + k <= max_index
    ff_products: Arc<BTreeMap<(i64, i64), Vec<Rational>>>,
}

impl TruncatedAlgebra {
    pub fn new(basis: Basis, ctx: &Arc<RingContext>) -> Result<Self> {
        let bound = match basis {
            Basis::Polynomial { max_degree: b }
            | Basis::Laurent { window: b }
            | Basis::FallingFactorial { max_index: b } => b,
        };
        if bound < 0 {
            return Err(Error::InvalidArgument("truncation bound must be non-negative".into()));
        }
        let mut ff_products = BTreeMap::new();
        if let Basis::FallingFactorial { max_index } = basis {
            for j in 0..=max_index {
                for k in j..=max_index - j {
                    ff_products.insert((j, k), falling_factorial_product(j, k));
                }
            }
        }
        Ok(TruncatedAlgebra {
            basis,
            ctx: ctx.clone(),
            ff_products: Arc::new(ff_products),
        })
    }

    pub fn polynomial(max_degree: i64, ctx: &Arc<RingContext>) -> Result<Self> {
        Self::new(Basis::Polynomial { max_degree }, ctx)
    }

    pub fn laurent(window: i64, ctx: &Arc<RingContext>) -> Result<Self> {
        Self::new(Basis::Laurent { window }, ctx)
    }

    pub fn falling_factorial(max_index: i64, ctx: &Arc<RingContext>) -> Result<Self> {
        Self::new(Basis::FallingFactorial { max_index }, ctx)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn zero(&self) -> Vector {
        Vector::zero(&self.ctx)
    }

    /// The multiplicative unit (`x^0`, `t^0` or `t_0`).
    pub fn one(&self) -> Vector {
        self.element(0)
    }

    /// The basis element with the given label. Labels outside the window are
    /// not checked here; products involving them are.
    pub fn element(&self, label: i64) -> Vector {
        Vector::basis(&self.ctx, label)
    }

    fn check(&self, v: &Vector) -> Result<()> {
        if !crate::scalar::same_context(v.context(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        for &label in v.keys() {
            if !self.basis.contains(label) {
                return Err(Error::Overflow(format!(
                    "{} lies outside the truncation",
                    self.basis.label_name(label)
                )));
            }
        }
        Ok(())
    }

    fn basis_product(&self, i: i64, j: i64) -> Result<Vec<(i64, Rational)>> {
        let overflow = || {
            Error::Overflow(format!(
                "{} * {} leaves the truncation",
                self.basis.label_name(i),
                self.basis.label_name(j)
            ))
        };
        let sum = i + j;
        match self.basis {
            Basis::Polynomial { .. } | Basis::Laurent { .. } => {
                if self.basis.contains(sum) {
                    Ok(vec![(sum, Rational::one())])
                } else {
                    Err(overflow())
                }
            }
            Basis::FallingFactorial { .. } => {
                let key = (i.min(j), i.max(j));
                let coeffs = self.ff_products.get(&key).ok_or_else(overflow)?;
                Ok(coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k as i64, c.clone()))
                    .collect())
            }
        }
    }

    pub fn mul(&self, u: &Vector, v: &Vector) -> Result<Vector> {
        self.check(u)?;
        self.check(v)?;
        let mut out = self.zero();
        for (&i, ci) in u.iter() {
            for (&j, cj) in v.iter() {
                let c = ci * cj;
                for (k, r) in self.basis_product(i, j)? {
                    out.add_term(k, c.scale(&r));
                }
            }
        }
        Ok(out)
    }

    /// Coefficients of `v` in powers of `x`, lowest first. Only meaningful
    /// for the polynomial and falling-factorial bases.
    pub fn to_power_basis(&self, v: &Vector) -> Result<Vec<ScalarPoly>> {
        let top = v.keys().copied().max().unwrap_or(0).max(0) as usize;
        let mut out = vec![ScalarPoly::zero(&self.ctx); top + 1];
        for (&k, c) in v.iter() {
            match self.basis {
                Basis::Polynomial { .. } => out[k as usize] = &out[k as usize] + c,
                Basis::FallingFactorial { .. } => {
                    for (i, r) in falling_factorial_in_powers(k).into_iter().enumerate() {
                        if !r.is_zero() {
                            out[i] = &out[i] + &c.scale(&r);
                        }
                    }
                }
                Basis::Laurent { .. } => {
                    return Err(Error::InvalidArgument("Laurent polynomials have no power basis".into()))
                }
            }
        }
        Ok(out)
    }

    pub fn render(&self, v: &Vector) -> String {
        render_terms(
            v.iter()
                .rev()
                .map(|(&k, c)| (self.basis.label_name(k), k == 0 && self.basis.unit_label(), c)),
        )
    }
}

/// `x(x-1)...(x-k+1)/k!` as coefficients of `1, x, ..., x^k`.
pub fn falling_factorial_in_powers(k: i64) -> Vec<Rational> {
    let mut poly = vec![Rational::one()];
    for i in 0..k {
        // multiply by (x - i)
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * integer(i);
        }
        poly = next;
    }
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    poly.into_iter()
        .map(|c| c / Rational::from_integer(fact.clone()))
        .collect()
}

fn binomial_at(x: i64, k: i64) -> Rational {
    if x < k {
        return Rational::zero();
    }
    Rational::from_integer(num_integer::binomial(BigInt::from(x), BigInt::from(k)))
}

/// `t_j * t_k` in the t-basis. Since `t_k(x) = C(x, k)`, the coefficients
/// are the forward differences at zero of `C(x,j) C(x,k)`.
fn falling_factorial_product(j: i64, k: i64) -> Vec<Rational> {
    let d = (j + k) as usize;
    let mut values: Vec<Rational> = (0..=d as i64).map(|x| binomial_at(x, j) * binomial_at(x, k)).collect();
    let mut out = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        out.push(values[0].clone());
        values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// A linear operator given by its images on basis labels.
///
/// A label mapped to `None` is in the domain but its image leaves the
/// truncation; applying the operator there is an overflow error. Labels
/// absent from `images` are outside the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleOperator {
    pub name: String,
    basis: Basis,
    images: BTreeMap<i64, Option<Vector>>,
}

impl RuleOperator {
    pub fn new(name: impl Into<String>, basis: Basis, images: BTreeMap<i64, Option<Vector>>) -> Self {
        RuleOperator {
            name: name.into(),
            basis,
            images,
        }
    }

    /// `c * id` on the given domain.
    pub fn scalar_op<I>(name: impl Into<String>, alg: &TruncatedAlgebra, domain: I, c: &ScalarPoly) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        let images = domain.into_iter().map(|k| (k, Some(alg.element(k).scale(c)))).collect();
        Self::new(name, alg.basis(), images)
    }

    pub fn identity(alg: &TruncatedAlgebra) -> Self {
        Self::scalar_op("id", alg, alg.basis().labels(), &ScalarPoly::one(alg.context()))
    }

    pub fn zero_like(&self, ctx: &Arc<RingContext>) -> Self {
        let images = self.images.keys().map(|&k| (k, Some(Vector::zero(ctx)))).collect();
        Self::new("0", self.basis, images)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn domain(&self) -> impl Iterator<Item = i64> + '_ {
        self.images.keys().copied()
    }

    pub fn image(&self, label: i64) -> Result<&Vector> {
        match self.images.get(&label) {
            None => Err(Error::OutsideDomain(label)),
            Some(None) => Err(Error::Overflow(format!(
                "{}({}) leaves the truncation",
                self.name,
                self.basis.label_name(label)
            ))),
            Some(Some(v)) => Ok(v),
        }
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        v.try_map_linear(|&k| self.image(k).cloned())
    }

    fn map_images<F>(&self, name: String, mut f: F) -> Self
    where
        F: FnMut(i64, &Vector) -> Vector,
    {
        let images = self
            .images
            .iter()
            .map(|(&k, img)| (k, img.as_ref().map(|v| f(k, v))))
            .collect();
        Self::new(name, self.basis, images)
    }

    /// `-lambda * id - P`.
    pub fn adjoint(&self, lambda: &ScalarPoly) -> Self {
        let ctx = lambda.context().clone();
        self.map_images(format!("adj({})", self.name), |k, v| {
            let mut out = Vector::term(k, -lambda);
            out.add_scaled(v, &ScalarPoly::from_int(&ctx, -1));
            out
        })
    }

    /// Equal images on the same domain, ignoring names.
    pub fn same_action(&self, other: &Self) -> bool {
        self.basis == other.basis && self.images == other.images
    }

    pub fn scale(&self, c: &ScalarPoly) -> Self {
        self.map_images(format!("({c})*{}", self.name), |_, v| v.scale(c))
    }

    /// `a * P1 + b * P2` on the common domain.
    pub fn combine(p1: &Self, p2: &Self, a: &ScalarPoly, b: &ScalarPoly) -> Result<Self> {
        if p1.basis != p2.basis {
            return Err(Error::BasisMismatch);
        }
        let mut images = BTreeMap::new();
        for (&k, i1) in &p1.images {
            let Some(i2) = p2.images.get(&k) else { continue };
            let img = match (i1, i2) {
                (Some(u), Some(v)) => {
                    let mut out = u.scale(a);
                    out.add_scaled(v, b);
                    Some(out)
                }
                _ => None,
            };
            images.insert(k, img);
        }
        Ok(Self::new(
            format!("({a})*{} + ({b})*{}", p1.name, p2.name),
            p1.basis,
            images,
        ))
    }

    /// Render `P(e_k) = ...` lines for the domain.
    pub fn describe(&self, alg: &TruncatedAlgebra) -> String {
        let mut out = String::new();
        for (&k, img) in &self.images {
            let rhs = match img {
                Some(v) => alg.render(v),
                None => "(leaves truncation)".into(),
            };
            out.push_str(&format!("{}({}) = {}\n", self.name, self.basis.label_name(k), rhs));
        }
        out
    }
}

/// Weight of `a P1 + b P2` for compatible `P1`, `P2`:
/// `(a l1 + b l2, a^2 k1 + b^2 k2 + ab (g12 + g21))`.
pub fn predicted_weight(
    w1: &ErbWeight,
    w2: &ErbWeight,
    a: &ScalarPoly,
    b: &ScalarPoly,
    gamma12: &ScalarPoly,
    gamma21: &ScalarPoly,
) -> Result<ErbWeight> {
    let lambda = a.try_mul(&w1.lambda)?.try_add(&b.try_mul(&w2.lambda)?)?;
    let kappa =
        (a * a).try_mul(&w1.kappa)? + (b * b).try_mul(&w2.kappa)? + (a * b).try_mul(&gamma12.try_add(gamma21)?)?;
    ErbWeight::new(lambda, kappa)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub x: String,
    pub y: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of an identity check over probe pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub status: Status,
    pub weight: [String; 2],
    pub probes_checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn new(weight: &ErbWeight, probes_checked: usize, counterexample: Option<Counterexample>) -> Self {
        Report {
            status: if counterexample.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            weight: [weight.lambda.to_string(), weight.kappa.to_string()],
            probes_checked,
            counterexample,
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        write!(
            f,
            "{status}: weight ({}, {}), {} probe pairs",
            self.weight[0], self.weight[1], self.probes_checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(
                f,
                "\n  {} at x = {}, y = {}\n  lhs = {}\n  rhs = {}",
                c.case, c.x, c.y, c.lhs, c.rhs
            )?;
        }
        Ok(())
    }
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

/// Evaluate `check` on every ordered probe pair in parallel and keep the
/// first error or failure in canonical order.
fn scan_pairs<F>(probes: &[Vector], check: F) -> Result<Option<Counterexample>>
where
    F: Fn(&Vector, &Vector) -> Result<Option<Counterexample>> + Sync,
{
    let outcomes: Vec<Result<Option<Counterexample>>> = ordered_pairs(probes.len())
        .into_par_iter()
        .map(|(i, j)| check(&probes[i], &probes[j]))
        .collect();
    for o in outcomes {
        if let Some(c) = o? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Check `P(x)P(y) = P(xP(y)) + P(P(x)y) + lambda P(xy) + kappa xy` on every
/// ordered pair of probes.
pub fn verify_erb_identity(
    p: &RuleOperator,
    w: &ErbWeight,
    alg: &TruncatedAlgebra,
    probes: &[Vector],
) -> Result<Report> {
    let one = ScalarPoly::one(alg.context());
    let found = scan_pairs(probes, |x, y| {
        let px = p.apply(x)?;
        let py = p.apply(y)?;
        let lhs = alg.mul(&px, &py)?;
        let xy = alg.mul(x, y)?;
        let mut rhs = p.apply(&alg.mul(x, &py)?)?;
        rhs.add_scaled(&p.apply(&alg.mul(&px, y)?)?, &one);
        rhs.add_scaled(&p.apply(&xy)?, &w.lambda);
        rhs.add_scaled(&xy, &w.kappa);
        Ok((lhs != rhs).then(|| Counterexample {
            case: format!("{} is not ERB of weight {w}", p.name),
            x: alg.render(x),
            y: alg.render(y),
            lhs: alg.render(&lhs),
            rhs: alg.render(&rhs),
        }))
    })?;
    Ok(Report::new(w, probes.len() * probes.len(), found))
}

/// Constants of the compatibility identity
/// `P_i(u)P_j(v) = P_i(uP_j(v)) + P_j(P_i(u)v) + alpha_ij P_i(uv) + beta_ij P_j(uv) + gamma_ij uv`.
#[derive(Debug, Clone)]
pub struct CompatConstants {
    pub alpha12: ScalarPoly,
    pub beta12: ScalarPoly,
    pub gamma12: ScalarPoly,
    pub alpha21: ScalarPoly,
    pub beta21: ScalarPoly,
    pub gamma21: ScalarPoly,
}

impl CompatConstants {
    /// The constants for a pair `(P, adjoint(P))` of weight `(lambda, kappa)`.
    pub fn adjoint_pair(w: &ErbWeight) -> Self {
        let ctx = w.context();
        let zero = ScalarPoly::zero(ctx);
        CompatConstants {
            alpha12: zero.clone(),
            beta12: zero,
            gamma12: -&w.kappa,
            alpha21: w.lambda.clone(),
            beta21: w.lambda.clone(),
            gamma21: &w.lambda * &w.lambda - &w.kappa,
        }
    }
}

/// Check both compatibility identities on every ordered probe pair, after
/// the side conditions `beta12 + alpha21 = lambda1` and
/// `alpha12 + beta21 = lambda2`.
#[allow(clippy::too_many_arguments)]
pub fn compatibility_check(
    p1: &RuleOperator,
    p2: &RuleOperator,
    w1: &ErbWeight,
    w2: &ErbWeight,
    consts: &CompatConstants,
    alg: &TruncatedAlgebra,
    probes: &[Vector],
) -> Result<Report> {
    let side = |lhs: ScalarPoly, rhs: &ScalarPoly, what: &str| {
        (lhs != *rhs).then(|| Counterexample {
            case: format!("side condition {what}"),
            x: String::new(),
            y: String::new(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    };
    let combined = ErbWeight::new(w1.lambda.clone(), w2.lambda.clone())?;
    if let Some(c) = side(
        &consts.beta12 + &consts.alpha21,
        &w1.lambda,
        "beta12 + alpha21 = lambda1",
    )
    .or_else(|| {
        side(
            &consts.alpha12 + &consts.beta21,
            &w2.lambda,
            "alpha12 + beta21 = lambda2",
        )
    }) {
        return Ok(Report::new(&combined, 0, Some(c)));
    }
    let one = ScalarPoly::one(alg.context());
    let cases = [
        ("(1,2)", p1, p2, &consts.alpha12, &consts.beta12, &consts.gamma12),
        ("(2,1)", p2, p1, &consts.alpha21, &consts.beta21, &consts.gamma21),
    ];
    let mut checked = 0;
    for (label, pi, pj, alpha, beta, gamma) in cases {
        let found = scan_pairs(probes, |u, v| {
            let piu = pi.apply(u)?;
            let pjv = pj.apply(v)?;
            let lhs = alg.mul(&piu, &pjv)?;
            let uv = alg.mul(u, v)?;
            let mut rhs = pi.apply(&alg.mul(u, &pjv)?)?;
            rhs.add_scaled(&pj.apply(&alg.mul(&piu, v)?)?, &one);
            rhs.add_scaled(&pi.apply(&uv)?, alpha);
            rhs.add_scaled(&pj.apply(&uv)?, beta);
            rhs.add_scaled(&uv, gamma);
            Ok((lhs != rhs).then(|| Counterexample {
                case: format!("compatibility {label} of {} and {}", pi.name, pj.name),
                x: alg.render(u),
                y: alg.render(v),
                lhs: alg.render(&lhs),
                rhs: alg.render(&rhs),
            }))
        })?;
        checked += probes.len() * probes.len();
        if found.is_some() {
            return Ok(Report::new(&combined, checked, found));
        }
    }
    Ok(Report::new(&combined, checked, None))
}

/// The solution set of the linear constraints on `(lambda, kappa)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WeightSolution {
    Empty,
    Unique {
        lambda: String,
        kappa: String,
    },
    /// `point + t * direction`
    Line {
        point: [String; 2],
        direction: [String; 2],
    },
    All,
}

impl fmt::Display for WeightSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSolution::Empty => f.write_str("no weight"),
            WeightSolution::Unique { lambda, kappa } => write!(f, "unique weight ({lambda}, {kappa})"),
            WeightSolution::Line { point, direction } => write!(
                f,
                "family ({}, {}) + t*({}, {})",
                point[0], point[1], direction[0], direction[1]
            ),
            WeightSolution::All => f.write_str("every weight"),
        }
    }
}

/// Rank-reduced solution of `rows * (lambda, kappa)^T = rhs` over the
/// rationals.
pub fn solve_two_unknowns(rows: &[[Rational; 3]]) -> WeightSolution {
    // Gaussian elimination on the augmented matrix [a b | c]
    let mut m: Vec<[Rational; 3]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..2 {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[2].is_zero()) {
        return WeightSolution::Empty;
    }
    let s = |q: &Rational| q.to_string();
    match pivots.as_slice() {
        [0, 1] => WeightSolution::Unique {
            lambda: s(&m[0][2]),
            kappa: s(&m[1][2]),
        },
        [0] => {
            // lambda + b kappa = c
            let b = &m[0][1];
            WeightSolution::Line {
                point: [s(&m[0][2]), "0".into()],
                direction: [s(&-b), "1".into()],
            }
        }
        [1] => WeightSolution::Line {
            point: ["0".into(), s(&m[0][2])],
            direction: ["1".into(), "0".into()],
        },
        _ => WeightSolution::All,
    }
}

/// Collect `lambda P(xy) + kappa xy = P(x)P(y) - P(xP(y)) - P(P(x)y)`
/// coefficientwise over all ordered probe pairs and solve for the weight.
/// The operator's coefficients must be rational constants.
pub fn infer_weight(p: &RuleOperator, alg: &TruncatedAlgebra, probes: &[Vector]) -> Result<WeightSolution> {
    let numeric = |c: &ScalarPoly| c.as_constant().ok_or_else(|| Error::NonNumeric(c.to_string()));
    let blocks: Vec<Result<Vec<[Rational; 3]>>> = ordered_pairs(probes.len())
        .into_par_iter()
        .map(|(i, j)| {
            let (x, y) = (&probes[i], &probes[j]);
            let px = p.apply(x)?;
            let py = p.apply(y)?;
            let xy = alg.mul(x, y)?;
            let a = p.apply(&xy)?;
            let mut c = alg.mul(&px, &py)?;
            c = &c - &p.apply(&alg.mul(x, &py)?)?;
            c = &c - &p.apply(&alg.mul(&px, y)?)?;
            let labels: std::collections::BTreeSet<i64> = a.keys().chain(xy.keys()).chain(c.keys()).copied().collect();
            labels
                .into_iter()
                .map(|k| Ok([numeric(&a.coeff(&k))?, numeric(&xy.coeff(&k))?, numeric(&c.coeff(&k))?]))
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for b in blocks {
        rows.extend(b?);
    }
    Ok(solve_two_unknowns(&rows))
}

/// The Jackson pair on `x^n`, `1 <= n <= max_degree`:
/// `P+(x^n) = x^n / (1 - q^n)` and `P-(x^n) = -q^n x^n / (1 - q^n)`.
pub fn jackson_pair(alg: &TruncatedAlgebra, q: &Rational) -> Result<(RuleOperator, RuleOperator)> {
    let Basis::Polynomial { max_degree } = alg.basis() else {
        return Err(Error::InvalidArgument(
            "the Jackson operators act on polynomials".into(),
        ));
    };
    if q.is_zero() {
        return Err(Error::InvalidArgument("q must be nonzero".into()));
    }
    let mut plus = BTreeMap::new();
    let mut minus = BTreeMap::new();
    let mut qn = Rational::one();
    for n in 1..=max_degree {
        qn *= q;
        if qn.is_one() {
            return Err(Error::RootOfUnity {
                q: q.to_string(),
                n: n as u32,
            });
        }
        let denom = (Rational::one() - &qn).recip();
        plus.insert(n, Some(alg.element(n).scale_rational(&denom)));
        minus.insert(n, Some(alg.element(n).scale_rational(&(-&qn * &denom))));
    }
    Ok((
        RuleOperator::new("P+", alg.basis(), plus),
        RuleOperator::new("P-", alg.basis(), minus),
    ))
}

/// Projections of Laurent polynomials onto non-negative and negative powers.
pub fn laurent_split(alg: &TruncatedAlgebra) -> Result<(RuleOperator, RuleOperator)> {
    let Basis::Laurent { window } = alg.basis() else {
        return Err(Error::InvalidArgument(
            "the splitting acts on Laurent polynomials".into(),
        ));
    };
    if window < 1 {
        return Err(Error::InvalidArgument("the window must be at least 1".into()));
    }
    let zero = alg.zero();
    let mut plus = BTreeMap::new();
    let mut minus = BTreeMap::new();
    for n in -window..=window {
        let e = alg.element(n);
        let (p, m) = if n >= 0 { (e, zero.clone()) } else { (zero.clone(), e) };
        plus.insert(n, Some(p));
        minus.insert(n, Some(m));
    }
    Ok((
        RuleOperator::new("P+", alg.basis(), plus),
        RuleOperator::new("P-", alg.basis(), minus),
    ))
}

/// `Q(t_k) = a t_{k+1} + b (-t_k - t_{k+1})` on the falling-factorial basis.
/// The top index is flagged since its image leaves the truncation.
pub fn falling_factorial_op(alg: &TruncatedAlgebra, a: &ScalarPoly, b: &ScalarPoly) -> Result<RuleOperator> {
    let Basis::FallingFactorial { max_index } = alg.basis() else {
        return Err(Error::InvalidArgument("expected the falling-factorial basis".into()));
    };
    let mut images = BTreeMap::new();
    for k in 0..=max_index {
        let img = (k < max_index).then(|| {
            let mut v = Vector::term(k + 1, a - b);
            v.add_term(k, -b);
            v
        });
        images.insert(k, img);
    }
    Ok(RuleOperator::new("Q", alg.basis(), images))
}

/// Target for lifting words into a truncated algebra with a chosen
/// operator of declared weight.
#[derive(Debug, Clone)]
pub struct OperatorTarget<'a> {
    pub alg: &'a TruncatedAlgebra,
    pub op: &'a RuleOperator,
    pub weight: ErbWeight,
}

impl ErbTarget for OperatorTarget<'_> {
    type Elem = Vector;

    fn weight(&self) -> &ErbWeight {
        &self.weight
    }

    fn one(&self) -> Result<Vector> {
        if !self.alg.basis().contains(0) {
            return Err(Error::Overflow("the unit lies outside the truncation".into()));
        }
        Ok(self.alg.one())
    }

    fn zero(&self) -> Vector {
        self.alg.zero()
    }

    fn add(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        a.try_add(b)
    }

    fn scale(&self, c: &ScalarPoly, a: &Vector) -> Result<Vector> {
        Ok(a.scale(c))
    }

    fn mul(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        self.alg.mul(a, b)
    }

    fn apply_p(&self, a: &Vector) -> Result<Vector> {
        self.op.apply(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn ab() -> Arc<RingContext> {
        RingContext::new(["lambda", "kappa", "a", "b"], false).unwrap()
    }

    fn var(ctx: &Arc<RingContext>, s: &str) -> ScalarPoly {
        ScalarPoly::parse(ctx, s).unwrap()
    }

    #[test]
    fn jackson_values() {
        let ctx = ab();
        let alg = TruncatedAlgebra::polynomial(6, &ctx).unwrap();
        let (p, m) = jackson_pair(&alg, &integer(2)).unwrap();
        assert_eq!(p.image(1).unwrap(), &alg.element(1).scale_rational(&integer(-1)));
        assert_eq!(m.image(1).unwrap(), &alg.element(1).scale_rational(&integer(2)));
        let sum = RuleOperator::combine(&p, &m, &var(&ctx, "1"), &var(&ctx, "1")).unwrap();
        for n in 1..=6 {
            assert_eq!(sum.image(n).unwrap(), &alg.element(n));
        }
        assert_eq!(p.image(0), Err(Error::OutsideDomain(0)));
        assert_eq!(
            jackson_pair(&alg, &integer(-1)).err(),
            Some(Error::RootOfUnity { q: "-1".into(), n: 2 })
        );
    }

    #[test]
    fn adjoint_is_an_involution() {
        let ctx = ab();
        let alg = TruncatedAlgebra::polynomial(6, &ctx).unwrap();
        let (p, m) = jackson_pair(&alg, &rational(1, 3)).unwrap();
        let lambda = var(&ctx, "lambda");
        assert_eq!(p.adjoint(&lambda).adjoint(&lambda).image(3), p.image(3));
        let minus_one = var(&ctx, "-1");
        for n in 1..=6 {
            assert_eq!(p.adjoint(&minus_one).image(n), m.image(n));
        }
        let z = p.zero_like(&ctx).adjoint(&lambda);
        assert_eq!(z.image(2).unwrap(), &alg.element(2).scale(&-&lambda));
    }

    #[test]
    fn laurent_projections() {
        let ctx = ab();
        let alg = TruncatedAlgebra::laurent(3, &ctx).unwrap();
        let (p, m) = laurent_split(&alg).unwrap();
        let mut v = alg.element(-1);
        v.add_term(0, var(&ctx, "3"));
        v.add_term(2, var(&ctx, "1"));
        assert_eq!(alg.render(&p.apply(&v).unwrap()), "t^2 + 3");
        assert_eq!(alg.render(&m.apply(&v).unwrap()), "t^-1");
    }

    #[test]
    fn falling_factorial_images() {
        let ctx = ab();
        let alg = TruncatedAlgebra::falling_factorial(6, &ctx).unwrap();
        let q = falling_factorial_op(&alg, &var(&ctx, "a"), &var(&ctx, "b")).unwrap();
        let powers = alg.to_power_basis(q.image(0).unwrap()).unwrap();
        assert_eq!(powers, vec![var(&ctx, "-b"), var(&ctx, "a - b")]);
        assert!(matches!(q.image(6), Err(Error::Overflow(_))));
        // t_1 * t_1 = x^2 = 2 t_2 + t_1
        let sq = alg.mul(&alg.element(1), &alg.element(1)).unwrap();
        assert_eq!(alg.render(&sq), "2*t_2 + t_1");
        assert!(matches!(
            alg.mul(&alg.element(4), &alg.element(3)),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn scalar_and_zero_operators() {
        let ctx = RingContext::new(["lambda", "mu"], false).unwrap();
        let alg = TruncatedAlgebra::polynomial(8, &ctx).unwrap();
        let mu = var(&ctx, "mu");
        let lambda = var(&ctx, "lambda");
        let op = RuleOperator::scalar_op("mu*id", &alg, alg.basis().labels(), &mu);
        let probes: Vec<Vector> = (0..=4).map(|n| alg.element(n)).collect();
        let w = ErbWeight::new(lambda.clone(), -(&mu * &mu) - &mu * &lambda).unwrap();
        assert!(verify_erb_identity(&op, &w, &alg, &probes).unwrap().passed());
        let zero = op.zero_like(&ctx);
        let w0 = ErbWeight::new(lambda.clone(), ScalarPoly::zero(&ctx)).unwrap();
        assert!(verify_erb_identity(&zero, &w0, &alg, &probes).unwrap().passed());
        let w1 = ErbWeight::new(lambda, ScalarPoly::one(&ctx)).unwrap();
        let r = verify_erb_identity(&zero, &w1, &alg, &probes).unwrap();
        assert!(!r.passed());
        assert_eq!(r.counterexample.unwrap().x, "1");
    }

    #[test]
    fn overflow_is_an_error() {
        let ctx = ab();
        let alg = TruncatedAlgebra::polynomial(4, &ctx).unwrap();
        let id = RuleOperator::identity(&alg);
        let w = ErbWeight::new(var(&ctx, "lambda"), var(&ctx, "-1 - lambda")).unwrap();
        let probes = vec![alg.element(3)];
        assert!(matches!(
            verify_erb_identity(&id, &w, &alg, &probes),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn weight_inference() {
        let ctx = ab();
        let alg = TruncatedAlgebra::polynomial(8, &ctx).unwrap();
        let (p, _) = jackson_pair(&alg, &integer(2)).unwrap();
        let probes = vec![alg.element(1), alg.element(2)];
        assert_eq!(
            infer_weight(&p, &alg, &probes).unwrap(),
            WeightSolution::Unique {
                lambda: "-1".into(),
                kappa: "0".into()
            }
        );
        let id = RuleOperator::identity(&alg);
        assert_eq!(
            infer_weight(&id, &alg, &probes).unwrap(),
            WeightSolution::Line {
                point: ["-1".into(), "0".into()],
                direction: ["-1".into(), "1".into()]
            }
        );
        let images = (0..=8)
            .map(|n| (n, Some(alg.element(n).scale_rational(&integer(n)))))
            .collect();
        let euler = RuleOperator::new("E", alg.basis(), images);
        assert_eq!(infer_weight(&euler, &alg, &probes).unwrap(), WeightSolution::Empty);
        let (plus, minus) = jackson_pair(&alg, &integer(2)).unwrap();
        let q = RuleOperator::combine(&plus, &minus, &var(&ctx, "a"), &var(&ctx, "b")).unwrap();
        assert!(matches!(infer_weight(&q, &alg, &probes), Err(Error::NonNumeric(_))));
    }

    #[test]
    fn solver_cases() {
        let r = |a: i64, b: i64, c: i64| [integer(a), integer(b), integer(c)];
        assert_eq!(solve_two_unknowns(&[]), WeightSolution::All);
        assert_eq!(solve_two_unknowns(&[r(0, 0, 1)]), WeightSolution::Empty);
        assert_eq!(
            solve_two_unknowns(&[r(0, 2, 4)]),
            WeightSolution::Line {
                point: ["0".into(), "2".into()],
                direction: ["1".into(), "0".into()]
            }
        );
        assert_eq!(
            solve_two_unknowns(&[r(1, 1, 3), r(1, -1, 1)]),
            WeightSolution::Unique {
                lambda: "2".into(),
                kappa: "1".into()
            }
        );
    }

    #[test]
    fn basis_mismatch() {
        let ctx = ab();
        let poly = TruncatedAlgebra::polynomial(3, &ctx).unwrap();
        let laurent = TruncatedAlgebra::laurent(3, &ctx).unwrap();
        let one = var(&ctx, "1");
        assert_eq!(
            RuleOperator::combine(
                &RuleOperator::identity(&poly),
                &RuleOperator::identity(&laurent),
                &one,
                &one
            ),
            Err(Error::BasisMismatch)
        );
    }
}
