//! The commutative base algebra `A`: polynomials in finitely many named
//! generators, each declared primitive when bialgebra data is requested.
//! Zero generators gives `A = k`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::lincomb::{parse_combination, LinComb, Render};
use crate::scalar::{Rational, RingContext, ScalarPoly};
use crate::text::Cursor;

/// Exponent vector over the generators of a [`BaseAlgebraSpec`]; all zeros is
/// the unit `1_A`.
///
/// Ordered by descending total degree, then descending exponents, so that
/// leading terms print first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseMonomial(Vec<u32>);

impl BaseMonomial {
    pub fn unit(spec: &BaseAlgebraSpec) -> Self {
        BaseMonomial(vec![0; spec.generators.len()])
    }

    pub fn from_exponents(spec: &BaseAlgebraSpec, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != spec.generators.len() {
            return Err(Error::SpecMismatch(format!(
                "{} exponents for {} generators",
                exponents.len(),
                spec.generators.len()
            )));
        }
        Ok(BaseMonomial(exponents))
    }

    /// The generator with index `i`, raised to `e`.
    pub fn generator(spec: &BaseAlgebraSpec, i: usize, e: u32) -> Self {
        let mut m = Self::unit(spec);
        m.0[i] = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        BaseMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn parse(spec: &BaseAlgebraSpec, cur: &mut Cursor<'_>) -> Result<Self> {
        let mut m = Self::unit(spec);
        if cur.peek() == Some('1') {
            cur.eat('1');
            return Ok(m);
        }
        loop {
            cur.skip_ws();
            let at = cur.pos();
            let name = cur.ident().ok_or_else(|| cur.error("expected a generator or `1`"))?;
            let i = spec
                .index_of(name)
                .ok_or_else(|| cur.error_at(at, format!("unknown generator `{name}`")))?;
            let e = if cur.eat('^') { cur.small_integer()? } else { 1 };
            m.0[i] += e;
            if !cur.eat('*') {
                return Ok(m);
            }
        }
    }
}

impl Ord for BaseMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for BaseMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Render for BaseMonomial {
    fn is_unit_key(&self) -> bool {
        self.is_unit()
    }

    fn render(&self, generators: &[String]) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (name, &e) in generators.iter().zip(&self.0) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl Render for (BaseMonomial, BaseMonomial) {
    fn render(&self, generators: &[String]) -> String {
        format!("{} (x) {}", self.0.render(generators), self.1.render(generators))
    }
}

pub type BaseElement = LinComb<BaseMonomial>;
pub type BasePair = LinComb<(BaseMonomial, BaseMonomial)>;

/// Generators of the polynomial algebra `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseAlgebraSpec {
    generators: Vec<String>,
    bialgebra: bool,
}

impl BaseAlgebraSpec {
    pub fn new<I, S>(generators: I, bialgebra: bool) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        for (i, g) in generators.iter().enumerate() {
            let mut chars = g.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidArgument(format!("`{g}` is not a valid generator name")));
            }
            if generators[..i].contains(g) {
                return Err(Error::InvalidArgument(format!("duplicate generator `{g}`")));
            }
        }
        Ok(Arc::new(BaseAlgebraSpec { generators, bialgebra }))
    }

    /// `A = k`, with `Delta(1) = 1 (x) 1` and `epsilon = id`.
    pub fn scalars() -> Arc<Self> {
        Arc::new(BaseAlgebraSpec {
            generators: Vec::new(),
            bialgebra: true,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn bialgebra_enabled(&self) -> bool {
        self.bialgebra
    }

    pub fn is_scalars(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn one(&self, ctx: &Arc<RingContext>) -> BaseElement {
        BaseElement::basis(ctx, BaseMonomial::unit(self))
    }

    pub fn generator(&self, ctx: &Arc<RingContext>, name: &str) -> Result<BaseElement> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::SpecMismatch(format!("unknown generator `{name}`")))?;
        Ok(BaseElement::basis(ctx, BaseMonomial::generator(self, i, 1)))
    }

    /// All monomials of total degree at most `max_degree`, in basis order.
    pub fn monomials_up_to(&self, max_degree: u32) -> Vec<BaseMonomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.generators.len()];
        fn rec(i: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<BaseMonomial>) {
            if i == current.len() {
                out.push(BaseMonomial(current.clone()));
                return;
            }
            for e in 0..=budget {
                current[i] = e;
                rec(i + 1, budget - e, current, out);
            }
            current[i] = 0;
        }
        rec(0, max_degree, &mut current, &mut out);
        out.sort();
        out
    }

    fn require_bialgebra(&self) -> Result<()> {
        if self.bialgebra {
            Ok(())
        } else {
            Err(Error::BialgebraDisabled)
        }
    }

    fn check_monomials(&self, u: &BaseElement) -> Result<()> {
        match u.keys().next() {
            Some(m) if m.0.len() != self.generators.len() => Err(Error::SpecMismatch(format!(
                "monomial over {} generators used with an algebra of {}",
                m.0.len(),
                self.generators.len()
            ))),
            _ => Ok(()),
        }
    }

    pub fn mul(&self, u: &BaseElement, v: &BaseElement) -> Result<BaseElement> {
        u.check(v)?;
        self.check_monomials(u)?;
        self.check_monomials(v)?;
        let mut out = BaseElement::zero(u.context());
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// `Delta_A` on a single monomial.
    pub fn monomial_coproduct(&self, ctx: &Arc<RingContext>, m: &BaseMonomial) -> BasePair {
        let mut acc: Vec<(Vec<u32>, Vec<u32>, BigInt)> = vec![(Vec::new(), Vec::new(), BigInt::from(1))];
        for &e in &m.0 {
            let mut next = Vec::with_capacity(acc.len() * (e as usize + 1));
            for (l, r, c) in &acc {
                for i in 0..=e {
                    let mut l = l.clone();
                    let mut r = r.clone();
                    l.push(i);
                    r.push(e - i);
                    next.push((l, r, c * binomial(BigInt::from(e), BigInt::from(i))));
                }
            }
            acc = next;
        }
        let mut out = BasePair::zero(ctx);
        for (l, r, c) in acc {
            out.add_term(
                (BaseMonomial(l), BaseMonomial(r)),
                ScalarPoly::constant(ctx, Rational::from_integer(c)),
            );
        }
        out
    }

    pub fn coproduct(&self, u: &BaseElement) -> Result<BasePair> {
        self.require_bialgebra()?;
        self.check_monomials(u)?;
        Ok(u.map_linear(|m| self.monomial_coproduct(u.context(), m)))
    }

    pub fn monomial_counit(&self, m: &BaseMonomial) -> bool {
        m.is_unit()
    }

    /// The constant term.
    pub fn counit(&self, u: &BaseElement) -> Result<ScalarPoly> {
        self.require_bialgebra()?;
        self.check_monomials(u)?;
        Ok(u.coeff(&BaseMonomial::unit(self)))
    }

    /// Maximum total degree of a monomial in `u`.
    pub fn degree(&self, u: &BaseElement) -> Result<u32> {
        self.check_monomials(u)?;
        u.keys().map(BaseMonomial::degree).max().ok_or(Error::ZeroElement)
    }

    pub fn render(&self, u: &BaseElement) -> String {
        u.render(&self.generators)
    }

    /// Parse a base element such as `3 + 2*x - lambda*x^2*y`.
    ///
    /// Generator names are read as monomial factors; any other identifier
    /// must be an indeterminate of `ctx`.
    pub fn parse(&self, ctx: &Arc<RingContext>, text: &str) -> Result<BaseElement> {
        for g in &self.generators {
            if ctx.index_of(g).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "`{g}` is both a generator and a coefficient indeterminate"
                )));
            }
        }
        let mut cur = Cursor::new(text);
        let mut out = BaseElement::zero(ctx);
        if cur.rest().trim() == "0" {
            return Ok(out);
        }
        let mut negate = cur.eat('-');
        if !negate {
            cur.eat('+');
        }
        loop {
            let mut coeff = ScalarPoly::one(ctx);
            let mut mono = BaseMonomial::unit(self);
            loop {
                cur.skip_ws();
                let save = cur.pos();
                let generator = cur.ident().and_then(|name| self.index_of(name));
                match generator {
                    Some(i) => {
                        let e = if cur.eat('^') { cur.small_integer()? } else { 1 };
                        mono.0[i] += e;
                    }
                    None => {
                        cur.set_pos(save);
                        coeff = coeff * crate::scalar::parse_factor(ctx, &mut cur)?;
                        while cur.eat('/') {
                            cur.skip_ws();
                            let at = cur.pos();
                            match crate::scalar::parse_factor(ctx, &mut cur)?.as_constant() {
                                Some(c) if c != Rational::from_integer(0.into()) => coeff = coeff.scale(&c.recip()),
                                _ => return Err(cur.error_at(at, "division by a non-constant")),
                            }
                        }
                    }
                }
                if !cur.eat('*') {
                    break;
                }
            }
            out.add_term(mono, if negate { -coeff } else { coeff });
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
}

/// Parse a monomial on its own, e.g. `x^2*y` or `1`.
pub fn parse_monomial(spec: &BaseAlgebraSpec, text: &str) -> Result<BaseMonomial> {
    let mut cur = Cursor::new(text);
    let m = BaseMonomial::parse(spec, &mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(m)
}

/// Parse a pair such as `2*[x] (x) [1] + [1] (x) [x]`.
pub fn parse_pair_text(spec: &BaseAlgebraSpec, ctx: &Arc<RingContext>, text: &str) -> Result<BasePair> {
    let mut cur = Cursor::new(text);
    parse_combination(ctx, &mut cur, |cur| {
        cur.expect('[')?;
        let l = BaseMonomial::parse(spec, cur)?;
        cur.expect(']')?;
        if !cur.eat_str("(x)") {
            return Err(cur.error("expected `(x)`"));
        }
        cur.expect('[')?;
        let r = BaseMonomial::parse(spec, cur)?;
        cur.expect(']')?;
        Ok((l, r))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<BaseAlgebraSpec>, Arc<RingContext>) {
        (
            BaseAlgebraSpec::new(["x", "y"], true).unwrap(),
            RingContext::weight_ring(),
        )
    }

    #[test]
    fn products() {
        let (a, ctx) = setup();
        let p = |s: &str| a.parse(&ctx, s).unwrap();
        assert_eq!(a.mul(&p("x"), &p("x^2")).unwrap(), p("x^3"));
        assert_eq!(a.mul(&p("1"), &p("2*x - y")).unwrap(), p("2*x - y"));
        assert_eq!(a.mul(&p("x + y"), &p("x - y")).unwrap(), p("x^2 - y^2"));
    }

    #[test]
    fn coproducts() {
        let (a, ctx) = setup();
        let p = |s: &str| a.parse(&ctx, s).unwrap();
        let pair = |s: &str| parse_pair_text(&a, &ctx, s).unwrap();
        assert_eq!(a.coproduct(&p("1")).unwrap(), pair("[1] (x) [1]"));
        assert_eq!(a.coproduct(&p("x")).unwrap(), pair("[x] (x) [1] + [1] (x) [x]"));
        assert_eq!(
            a.coproduct(&p("x^2")).unwrap(),
            pair("[x^2] (x) [1] + 2*[x] (x) [x] + [1] (x) [x^2]")
        );
        let k = BaseAlgebraSpec::scalars();
        let one = k.one(&ctx);
        assert_eq!(k.coproduct(&one).unwrap().len(), 1);
    }

    #[test]
    fn counit_and_degree() {
        let (a, ctx) = setup();
        let p = |s: &str| a.parse(&ctx, s).unwrap();
        assert!(a.counit(&p("1")).unwrap().is_one());
        assert!(a.counit(&p("x")).unwrap().is_zero());
        assert_eq!(a.counit(&p("3 + 2*x")).unwrap(), ScalarPoly::from_int(&ctx, 3));
        assert_eq!(a.degree(&p("1")), Ok(0));
        assert_eq!(a.degree(&p("x")), Ok(1));
        assert_eq!(a.degree(&p("x^2*y + x")), Ok(3));
        assert_eq!(a.degree(&BaseElement::zero(&ctx)), Err(Error::ZeroElement));
    }

    #[test]
    fn bialgebra_data_required() {
        let ctx = RingContext::weight_ring();
        let a = BaseAlgebraSpec::new(["x"], false).unwrap();
        let x = a.generator(&ctx, "x").unwrap();
        assert_eq!(a.coproduct(&x), Err(Error::BialgebraDisabled));
        assert_eq!(a.counit(&x), Err(Error::BialgebraDisabled));
    }

    #[test]
    fn spec_mismatch() {
        let ctx = RingContext::weight_ring();
        let a = BaseAlgebraSpec::new(["x"], true).unwrap();
        let b = BaseAlgebraSpec::new(["x", "y"], true).unwrap();
        let x = a.generator(&ctx, "x").unwrap();
        assert!(matches!(b.mul(&x, &x), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn render_and_parse() {
        let (a, ctx) = setup();
        let u = a.parse(&ctx, "lambda*x^2*y - 3/2 + (lambda + kappa)*y").unwrap();
        let text = a.render(&u);
        assert_eq!(text, "lambda*x^2*y + (lambda + kappa)*y - 3/2");
        assert_eq!(a.parse(&ctx, &text).unwrap(), u);
    }

    #[test]
    fn monomial_listing() {
        let (a, _) = setup();
        let ms = a.monomials_up_to(2);
        assert_eq!(ms.len(), 6);
        assert!(ms[5].is_unit());
    }
}
