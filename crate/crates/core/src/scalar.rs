//! Exact coefficient arithmetic.
//!
//! Coefficients are sparse multivariate polynomials with arbitrary-precision
//! rational coefficients in a fixed, ordered set of named indeterminates.
//! A [`RingContext`] may additionally adjoin `mu` as a root of
//! `t^2 - lambda*t + kappa`, in which case every polynomial is kept in the
//! normal form where `mu` appears with exponent at most one.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::text::Cursor;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub const LAMBDA: &str = "lambda";
pub const KAPPA: &str = "kappa";
pub const MU: &str = "mu";

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `p`, `-p` or `p/q` into a rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::parse_at(text, 0, format!("`{t}` is not a rational number"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse_at(text, 0, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// The ordered set of indeterminates a family of polynomials lives over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Vec<String>,
    mu_relation: bool,
    // (lambda, kappa, mu) slots, present iff mu_relation
    mu_slots: Option<(usize, usize, usize)>,
}

impl RingContext {
    pub fn new<I, S>(names: I, mu_relation: bool) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = n
                .chars()
                .enumerate()
                .all(|(j, c)| c.is_ascii_alphabetic() || c == '_' || (j > 0 && c.is_ascii_digit()));
            if n.is_empty() || !valid {
                return Err(Error::InvalidContext(format!("`{n}` is not a valid symbol name")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidContext(format!("duplicate symbol `{n}`")));
            }
        }
        let find = |s: &str| names.iter().position(|n| n == s);
        let mu_slots = if mu_relation {
            match (find(LAMBDA), find(KAPPA), find(MU)) {
                (Some(l), Some(k), Some(m)) => Some((l, k, m)),
                _ => {
                    return Err(Error::InvalidContext(
                        "the mu relation needs lambda, kappa and mu among the indeterminates".into(),
                    ))
                }
            }
        } else {
            None
        };
        Ok(Arc::new(RingContext {
            names,
            mu_relation,
            mu_slots,
        }))
    }

    /// `Q[lambda, kappa]`.
    pub fn weight_ring() -> Arc<Self> {
        Self::new([LAMBDA, KAPPA], false).expect("static context")
    }

    /// `Q[lambda, kappa, mu] / (mu^2 - lambda*mu + kappa)`.
    pub fn hopf_ring() -> Arc<Self> {
        Self::new([LAMBDA, KAPPA, MU], true).expect("static context")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mu_relation(&self) -> bool {
        self.mu_relation
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

pub(crate) fn same_context(a: &Arc<RingContext>, b: &Arc<RingContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn add(&self, other: &Self) -> Self {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients over a [`RingContext`].
#[derive(Clone)]
pub struct ScalarPoly {
    ctx: Arc<RingContext>,
    terms: BTreeMap<Exponents, Rational>,
}

impl ScalarPoly {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        ScalarPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Arc<RingContext>, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Exponents::zero(ctx.len()), c);
        }
        p
    }

    pub fn from_int(ctx: &Arc<RingContext>, n: i64) -> Self {
        Self::constant(ctx, integer(n))
    }

    pub fn var(ctx: &Arc<RingContext>, name: &str) -> Result<Self> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        let mut e = Exponents::zero(ctx.len());
        e.0[i] = 1;
        let mut p = Self::zero(ctx);
        p.terms.insert(e, Rational::one());
        Ok(p)
    }

    /// Build a polynomial from raw `(exponents, coefficient)` pairs.
    pub fn from_terms<I>(ctx: &Arc<RingContext>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (e, c) in terms {
            if e.len() != ctx.len() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} in a ring with {} indeterminates",
                    e.len(),
                    ctx.len()
                )));
            }
            p.add_term(Exponents(e), c);
        }
        p.reduce_mu();
        Ok(p)
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// Sum of all coefficients, i.e. the value at every indeterminate = 1
    /// (ignoring the mu relation).
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out.reduce_mu();
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(&self.ctx);
        if r.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect();
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Rewrite `mu^2 -> lambda*mu - kappa` until every `mu` exponent is at
    /// most one. A no-op when the context has no mu relation.
    pub fn reduce_mu(&mut self) {
        let Some((l, k, m)) = self.ctx.mu_slots else {
            return;
        };
        loop {
            let high: Vec<Exponents> = self.terms.keys().filter(|e| e.0[m] >= 2).cloned().collect();
            if high.is_empty() {
                return;
            }
            for e in high {
                let c = self.terms.remove(&e).unwrap();
                let mut via_lambda = e.clone();
                via_lambda.0[m] -= 1;
                via_lambda.0[l] += 1;
                let mut via_kappa = e;
                via_kappa.0[m] -= 2;
                via_kappa.0[k] += 1;
                self.add_term(via_kappa, -c.clone());
                self.add_term(via_lambda, c);
            }
        }
    }

    /// Whether the polynomial is already in mu-normal form.
    pub fn is_mu_reduced(&self) -> bool {
        match self.ctx.mu_slots {
            Some((_, _, m)) => self.terms.keys().all(|e| e.0[m] <= 1),
            None => true,
        }
    }

    fn check_assignment(&self, assignment: &BTreeMap<String, Rational>) -> Result<()> {
        if let Some(mu) = assignment.get(MU) {
            if self.ctx.mu_relation {
                let l = assignment
                    .get(LAMBDA)
                    .ok_or_else(|| Error::MissingSymbol(LAMBDA.into()))?;
                let k = assignment
                    .get(KAPPA)
                    .ok_or_else(|| Error::MissingSymbol(KAPPA.into()))?;
                if mu * mu - l * mu + k != Rational::zero() {
                    return Err(Error::MuRelationViolated);
                }
            }
        }
        Ok(())
    }

    /// Evaluate at a point. Every indeterminate that occurs must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        self.check_assignment(assignment)?;
        let mut values = Vec::with_capacity(self.ctx.len());
        for name in &self.ctx.names {
            values.push(assignment.get(name));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ex) in e.0.iter().enumerate() {
                if ex == 0 {
                    continue;
                }
                let v = values[i].ok_or_else(|| Error::MissingSymbol(self.ctx.names[i].clone()))?;
                t *= num_traits::pow(v.clone(), ex as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute rational values for some indeterminates, keeping the rest
    /// symbolic. The result stays in the same context.
    pub fn substitute(&self, assignment: &BTreeMap<String, Rational>) -> Result<Self> {
        self.check_assignment(assignment)?;
        let values: Vec<Option<&Rational>> = self.ctx.names.iter().map(|n| assignment.get(n)).collect();
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut e = e.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    c *= num_traits::pow((*v).clone(), e.0[i] as usize);
                    e.0[i] = 0;
                }
            }
            out.add_term(e, c);
        }
        out.reduce_mu();
        Ok(out)
    }

    /// Parse the textual rendering produced by `Display`.
    pub fn parse(ctx: &Arc<RingContext>, text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let p = parse_sum(ctx, &mut cur)?;
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        Ok(p)
    }

    fn fmt_monomial(&self, e: &Exponents, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &ex) in e.0.iter().enumerate() {
            if ex == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.ctx.names[i])?;
            if ex > 1 {
                write!(f, "^{ex}")?;
            }
        }
        Ok(())
    }

    /// Whether `Display` output needs parentheses when used as a factor.
    pub fn needs_parens(&self) -> bool {
        self.terms.len() > 1
    }
}

impl PartialEq for ScalarPoly {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for ScalarPoly {}

impl std::hash::Hash for ScalarPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (e, c) in &self.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarPoly({self})")
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e.is_constant() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                self.fmt_monomial(e, f)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&ScalarPoly> for &ScalarPoly {
            type Output = ScalarPoly;
            /// Panics if the operands live in different ring contexts; use the
            /// `try_*` methods for a fallible version.
            fn $m(self, rhs: &ScalarPoly) -> ScalarPoly {
                self.$checked(rhs)
                    .expect("scalar operands from different ring contexts")
            }
        }
        impl $tr<ScalarPoly> for ScalarPoly {
            type Output = ScalarPoly;
            fn $m(self, rhs: ScalarPoly) -> ScalarPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ScalarPoly> for ScalarPoly {
            type Output = ScalarPoly;
            fn $m(self, rhs: &ScalarPoly) -> ScalarPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        -&self
    }
}

pub(crate) fn parse_sum(ctx: &Arc<RingContext>, cur: &mut Cursor<'_>) -> Result<ScalarPoly> {
    let mut acc = ScalarPoly::zero(ctx);
    let mut negate = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let t = parse_product(ctx, cur)?;
        acc = if negate { acc - t } else { acc + t };
        if cur.eat('+') {
            negate = false;
        } else if cur.eat('-') {
            negate = true;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product(ctx: &Arc<RingContext>, cur: &mut Cursor<'_>) -> Result<ScalarPoly> {
    let mut acc = parse_factor(ctx, cur)?;
    loop {
        if cur.eat('*') {
            acc = acc * parse_factor(ctx, cur)?;
        } else if cur.eat('/') {
            cur.skip_ws();
            let at = cur.pos();
            let d = parse_factor(ctx, cur)?;
            match d.as_constant() {
                Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                _ => return Err(cur.error_at(at, "division is only allowed by nonzero rational constants")),
            }
        } else {
            return Ok(acc);
        }
    }
}

/// A single factor: a number, an indeterminate, or a parenthesised sum,
/// optionally raised to a natural power.
pub(crate) fn parse_factor(ctx: &Arc<RingContext>, cur: &mut Cursor<'_>) -> Result<ScalarPoly> {
    let base = match cur.peek() {
        Some('(') => {
            cur.eat('(');
            let inner = parse_sum(ctx, cur)?;
            cur.expect(')')?;
            inner
        }
        Some(c) if c.is_ascii_digit() => {
            let n = cur.integer().expect("digit present");
            ScalarPoly::constant(ctx, Rational::from_integer(n))
        }
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            let start = cur.pos();
            let name = cur.ident().expect("identifier present");
            ScalarPoly::var(ctx, name).map_err(|_| cur.error_at(start, format!("unknown indeterminate `{name}`")))?
        }
        _ => return Err(cur.error("expected a number, an indeterminate or `(`")),
    };
    if cur.eat('^') {
        let n = cur.small_integer()?;
        Ok(base.pow(n))
    } else {
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> Arc<RingContext> {
        RingContext::hopf_ring()
    }

    fn p(ctx: &Arc<RingContext>, s: &str) -> ScalarPoly {
        ScalarPoly::parse(ctx, s).unwrap()
    }

    #[test]
    fn additive_identities() {
        let ctx = RingContext::weight_ring();
        assert_eq!(p(&ctx, "lambda + 1") + p(&ctx, "-lambda"), ScalarPoly::one(&ctx));
        assert_eq!(ScalarPoly::zero(&ctx) + p(&ctx, "kappa"), p(&ctx, "kappa"));
        let h = hopf();
        assert_eq!(p(&h, "mu") + p(&h, "mu"), p(&h, "2*mu"));
    }

    #[test]
    fn mu_squared_reduces_only_under_relation() {
        let h = hopf();
        let mu = ScalarPoly::var(&h, MU).unwrap();
        assert_eq!(&mu * &mu, p(&h, "lambda*mu - kappa"));
        let free = RingContext::new([LAMBDA, KAPPA, MU], false).unwrap();
        let mu = ScalarPoly::var(&free, MU).unwrap();
        let sq = &mu * &mu;
        assert_eq!(sq.to_string(), "mu^2");
    }

    #[test]
    fn difference_of_squares() {
        let ctx = RingContext::new(["a", "b"], false).unwrap();
        assert_eq!(p(&ctx, "(a+b)*(a-b)"), p(&ctx, "a^2 - b^2"));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = RingContext::weight_ring();
        let b = RingContext::new(["q"], false).unwrap();
        assert_eq!(
            ScalarPoly::one(&a).try_add(&ScalarPoly::one(&b)),
            Err(Error::ContextMismatch)
        );
        assert_eq!(
            ScalarPoly::one(&a).try_mul(&ScalarPoly::one(&b)),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn mu_relation_requires_symbols() {
        assert!(matches!(
            RingContext::new([LAMBDA, MU], true),
            Err(Error::InvalidContext(_))
        ));
        assert!(RingContext::new(["x", "x"], false).is_err());
    }

    fn point(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn evaluation_examples() {
        let ctx = RingContext::weight_ring();
        let at = point(&[(LAMBDA, integer(1)), (KAPPA, integer(1))]);
        assert_eq!(p(&ctx, "lambda + kappa").eval(&at).unwrap(), integer(2));
        let at = point(&[(LAMBDA, rational(1, 2)), (KAPPA, integer(3))]);
        assert_eq!(p(&ctx, "4*lambda*kappa").eval(&at).unwrap(), integer(6));

        let h = hopf();
        let at = point(&[(LAMBDA, integer(2)), (KAPPA, integer(1)), (MU, integer(1))]);
        // 1 - 2 + 1 = 0, so (2, 1, 1) lies on the relation
        assert_eq!(p(&h, "lambda*mu - kappa").eval(&at).unwrap(), integer(1));
        assert_eq!(p(&h, "mu^2").eval(&at).unwrap(), integer(1));
    }

    #[test]
    fn evaluation_errors() {
        let h = hopf();
        let bad = point(&[(LAMBDA, integer(1)), (KAPPA, integer(1)), (MU, integer(1))]);
        assert_eq!(p(&h, "mu").eval(&bad), Err(Error::MuRelationViolated));
        let partial = point(&[(LAMBDA, integer(1))]);
        assert_eq!(
            p(&h, "lambda + kappa").eval(&partial),
            Err(Error::MissingSymbol(KAPPA.into()))
        );
    }

    #[test]
    fn rendering_is_graded_lex_and_parses_back() {
        let ctx = RingContext::new(["a", "b", "q"], false).unwrap();
        let x = p(&ctx, "3 - 2*b + a^2*q/4 + a*b - 1/3*q");
        assert_eq!(x.to_string(), "1/4*a^2*q + a*b - 2*b - 1/3*q + 3");
        assert_eq!(p(&ctx, &x.to_string()), x);
        assert_eq!(p(&ctx, "-a").to_string(), "-a");
        assert_eq!(ScalarPoly::zero(&ctx).to_string(), "0");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let ctx = RingContext::weight_ring();
        match ScalarPoly::parse(&ctx, "lambda + zeta") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 10),
            other => panic!("unexpected {other:?}"),
        }
        assert!(ScalarPoly::parse(&ctx, "lambda +").is_err());
        assert!(ScalarPoly::parse(&ctx, "1/lambda").is_err());
        assert!(ScalarPoly::parse(&ctx, "1/0").is_err());
    }

    #[test]
    fn substitution_keeps_remaining_symbols() {
        let h = hopf();
        let x = p(&h, "lambda*mu - kappa + 2");
        let s = x.substitute(&point(&[(LAMBDA, integer(3))])).unwrap();
        assert_eq!(s, p(&h, "3*mu - kappa + 2"));
    }
}
