//! Finite linear combinations with [`ScalarPoly`] coefficients.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{same_context, Rational, RingContext, ScalarPoly};

/// A basis key that can be printed given the generator names of the base
/// algebra.
pub trait Render {
    fn render(&self, generators: &[String]) -> String;

    /// Whether the key is a multiplicative unit that may be omitted after a
    /// coefficient.
    fn is_unit_key(&self) -> bool {
        false
    }
}

/// `sum c_k * k` over basis keys `k`, with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    ctx: Arc<RingContext>,
    terms: BTreeMap<K, ScalarPoly>,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        LinComb {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The single basis element `k` with coefficient one.
    pub fn basis(ctx: &Arc<RingContext>, k: K) -> Self {
        Self::term(k, ScalarPoly::one(ctx))
    }

    pub fn term(k: K, c: ScalarPoly) -> Self {
        let mut out = Self::zero(c.context());
        out.add_term(k, c);
        out
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, ScalarPoly> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, ScalarPoly> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> ScalarPoly {
        self.terms
            .get(k)
            .cloned()
            .unwrap_or_else(|| ScalarPoly::zero(&self.ctx))
    }

    pub(crate) fn check(&self, other: &Self) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Add `c * k`. The coefficient must live in this combination's ring.
    pub fn add_term(&mut self, k: K, c: ScalarPoly) {
        debug_assert!(same_context(&self.ctx, c.context()));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &ScalarPoly) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (k, v) in &other.terms {
            let v = if unit { v.clone() } else { v * c };
            self.add_term(k.clone(), v);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &ScalarPoly::one(&self.ctx));
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &ScalarPoly::from_int(&self.ctx, -1));
        Ok(out)
    }

    pub fn scale(&self, c: &ScalarPoly) -> Self {
        let mut out = Self::zero(&self.ctx);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&ScalarPoly::constant(&self.ctx, r.clone()))
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&crate::scalar::integer(-1))
    }

    /// Apply a linear map defined on basis keys.
    pub fn map_linear<L, F>(&self, mut f: F) -> LinComb<L>
    where
        L: Ord + Clone,
        F: FnMut(&K) -> LinComb<L>,
    {
        let mut out = LinComb::zero(&self.ctx);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Fallible variant of [`LinComb::map_linear`].
    pub fn try_map_linear<L, F>(&self, mut f: F) -> Result<LinComb<L>>
    where
        L: Ord + Clone,
        F: FnMut(&K) -> Result<LinComb<L>>,
    {
        let mut out = LinComb::zero(&self.ctx);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Collapse through a scalar-valued linear functional.
    pub fn try_fold_scalar<F>(&self, mut f: F) -> Result<ScalarPoly>
    where
        F: FnMut(&K) -> Result<ScalarPoly>,
    {
        let mut acc = ScalarPoly::zero(&self.ctx);
        for (k, c) in &self.terms {
            let v = f(k)?;
            if !v.is_zero() {
                acc = acc + c * &v;
            }
        }
        Ok(acc)
    }

    /// Substitute rational values for some indeterminates in every
    /// coefficient.
    pub fn substitute(&self, assignment: &BTreeMap<String, Rational>) -> Result<Self> {
        let mut out = Self::zero(&self.ctx);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.substitute(assignment)?);
        }
        Ok(out)
    }

    /// Sum of the coefficient polynomials' rational coefficients.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms
            .values()
            .fold(Rational::from_integer(0.into()), |acc, c| acc + c.coefficient_sum())
    }
}

impl<K: Ord + Clone + Render> LinComb<K> {
    /// Text form, e.g. `2*lambda*[1|1] - [x]`.
    pub fn render(&self, generators: &[String]) -> String {
        render_terms(
            self.terms
                .iter()
                .map(|(k, c)| (k.render(generators), k.is_unit_key(), c)),
        )
    }
}

/// Join `coeff*key` terms with signs; a unit key prints as its coefficient.
pub(crate) fn render_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (String, bool, &'a ScalarPoly)>,
{
    let mut out = String::new();
    for (i, (key, unit_key, c)) in terms.into_iter().enumerate() {
        let (negative, body) = render_coeff(c);
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        match body {
            Some(body) if unit_key => out.push_str(&body),
            Some(body) => {
                out.push_str(&body);
                out.push('*');
                out.push_str(&key);
            }
            None => out.push_str(&key),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Sign and multiplier text for a coefficient; `None` means the multiplier
/// is one.
fn render_coeff(c: &ScalarPoly) -> (bool, Option<String>) {
    if c.num_terms() == 1 {
        let (_, lead) = c.terms().next().unwrap();
        let negative = lead < &Rational::from_integer(0.into());
        let abs = if negative { -c } else { c.clone() };
        if abs.is_one() {
            (negative, None)
        } else {
            (negative, Some(abs.to_string()))
        }
    } else {
        (false, Some(format!("({c})")))
    }
}

impl<K: Ord + Clone> std::ops::Add<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        self.try_add(rhs).expect("operands from different ring contexts")
    }
}

impl<K: Ord + Clone> std::ops::Sub<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        self.try_sub(rhs).expect("operands from different ring contexts")
    }
}

impl<K: Ord + Clone + std::fmt::Debug> std::fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, c.to_string())))
            .finish()
    }
}

/// Parse `coeff*key + coeff*key - ...` where every term ends in a key read by
/// `key`, and `coeff` is an optional product of scalar factors.
pub(crate) fn parse_combination<K, F>(
    ctx: &Arc<RingContext>,
    cur: &mut crate::text::Cursor<'_>,
    mut key: F,
) -> Result<LinComb<K>>
where
    K: Ord + Clone,
    F: FnMut(&mut crate::text::Cursor<'_>) -> Result<K>,
{
    let mut out = LinComb::zero(ctx);
    if cur.rest().trim() == "0" {
        cur.eat('0');
        return Ok(out);
    }
    let mut negate = cur.eat('-');
    if !negate {
        cur.eat('+');
    }
    loop {
        let mut coeff = ScalarPoly::one(ctx);
        loop {
            if cur.peek() == Some('[') {
                break;
            }
            let factor = crate::scalar::parse_factor(ctx, cur)?;
            coeff = coeff * factor;
            while cur.eat('/') {
                cur.skip_ws();
                let at = cur.pos();
                let d = crate::scalar::parse_factor(ctx, cur)?;
                match d.as_constant() {
                    Some(c) if c != Rational::from_integer(0.into()) => coeff = coeff.scale(&c.recip()),
                    _ => return Err(cur.error_at(at, "division is only allowed by nonzero rational constants")),
                }
            }
            cur.expect('*')?;
        }
        let k = key(cur)?;
        out.add_term(k, if negate { -coeff } else { coeff });
        if cur.eat('+') {
            negate = false;
        } else if cur.eat('-') {
            negate = true;
        } else if cur.at_end() {
            return Ok(out);
        } else {
            return Err(cur.error("expected `+`, `-` or end of input"));
        }
    }
}
