//! The free commutative ERB algebra on `A`: tensor words, the product
//! `diamond`, the shift operator `P` and the lift of algebra maps.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::binomial;

use crate::base::{BaseAlgebraSpec, BaseMonomial};
use crate::error::{Error, Result};
use crate::lincomb::{parse_combination, LinComb, Render};
use crate::scalar::{same_context, Rational, RingContext, ScalarPoly, KAPPA, LAMBDA};
use crate::text::Cursor;

/// A pure tensor `a_0 (x) a_1 (x) ... (x) a_m` of base monomials.
///
/// Longer words sort first; words of equal length compare letter by letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<BaseMonomial>);

impl Word {
    pub fn new(letters: Vec<BaseMonomial>) -> Result<Self> {
        if letters.is_empty() {
            Err(Error::EmptyWord)
        } else {
            Ok(Word(letters))
        }
    }

    /// `1_A^{(x) len}`.
    pub fn ones(spec: &BaseAlgebraSpec, len: usize) -> Result<Self> {
        Self::new(vec![BaseMonomial::unit(spec); len])
    }

    pub fn letter(m: BaseMonomial) -> Self {
        Word(vec![m])
    }

    pub fn letters(&self) -> &[BaseMonomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn head(&self) -> &BaseMonomial {
        &self.0[0]
    }

    /// The word without its first letter, if any letters remain.
    pub fn tail(&self) -> Option<Word> {
        (self.0.len() > 1).then(|| Word(self.0[1..].to_vec()))
    }

    /// `m (x) self`.
    pub fn prefixed(&self, m: &BaseMonomial) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(m.clone());
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    /// `self (x) other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Multiply `m` into the first letter.
    pub fn mul_head(&self, m: &BaseMonomial) -> Word {
        let mut letters = self.0.clone();
        letters[0] = letters[0].mul(m);
        Word(letters)
    }

    /// Sum of letter degrees plus the number of tensor signs.
    pub fn filtration_degree(&self) -> u32 {
        self.0.iter().map(BaseMonomial::degree).sum::<u32>() + (self.0.len() as u32 - 1)
    }

    pub(crate) fn parse(spec: &BaseAlgebraSpec, cur: &mut Cursor<'_>) -> Result<Word> {
        cur.expect('[')?;
        let mut letters = vec![BaseMonomial::parse(spec, cur)?];
        while cur.eat('|') {
            letters.push(BaseMonomial::parse(spec, cur)?);
        }
        cur.expect(']')?;
        Ok(Word(letters))
    }

    fn generator_count(&self) -> usize {
        self.0[0].exponents().len()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Render for Word {
    fn render(&self, generators: &[String]) -> String {
        let inner: Vec<String> = self.0.iter().map(|m| m.render(generators)).collect();
        format!("[{}]", inner.join("|"))
    }
}

impl Render for (Word, Word) {
    fn render(&self, generators: &[String]) -> String {
        format!("{} (x) {}", self.0.render(generators), self.1.render(generators))
    }
}

impl Render for (Word, Word, Word) {
    fn render(&self, generators: &[String]) -> String {
        format!(
            "{} (x) {} (x) {}",
            self.0.render(generators),
            self.1.render(generators),
            self.2.render(generators)
        )
    }
}

pub type TensorElement = LinComb<Word>;

/// The pair `(lambda, kappa)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErbWeight {
    pub lambda: ScalarPoly,
    pub kappa: ScalarPoly,
}

impl ErbWeight {
    pub fn new(lambda: ScalarPoly, kappa: ScalarPoly) -> Result<Self> {
        if !same_context(lambda.context(), kappa.context()) {
            return Err(Error::ContextMismatch);
        }
        Ok(ErbWeight { lambda, kappa })
    }

    /// The indeterminates `lambda` and `kappa` of `ctx`.
    pub fn symbolic(ctx: &Arc<RingContext>) -> Result<Self> {
        Self::new(ScalarPoly::var(ctx, LAMBDA)?, ScalarPoly::var(ctx, KAPPA)?)
    }

    pub fn constant(ctx: &Arc<RingContext>, lambda: Rational, kappa: Rational) -> Self {
        ErbWeight {
            lambda: ScalarPoly::constant(ctx, lambda),
            kappa: ScalarPoly::constant(ctx, kappa),
        }
    }

    pub fn context(&self) -> &Arc<RingContext> {
        self.lambda.context()
    }
}

impl fmt::Display for ErbWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lambda, self.kappa)
    }
}

type WordCache = HashMap<(Word, Word), Arc<TensorElement>>;

/// The algebra of tensor words over `A` with the product of weight
/// `(lambda, kappa)`.
///
/// Products of basis words are memoized; the cache is shared between
/// threads and never changes observable results.
pub struct ShuffleAlgebra {
    base: Arc<BaseAlgebraSpec>,
    weight: ErbWeight,
    cache: Mutex<WordCache>,
}

impl fmt::Debug for ShuffleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ShuffleAlgebra")
            .field("base", &self.base)
            .field("weight", &self.weight.to_string())
            .finish()
    }
}

impl ShuffleAlgebra {
    pub fn new(base: Arc<BaseAlgebraSpec>, weight: ErbWeight) -> Self {
        ShuffleAlgebra {
            base,
            weight,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &Arc<BaseAlgebraSpec> {
        &self.base
    }

    pub fn weight(&self) -> &ErbWeight {
        &self.weight
    }

    pub fn context(&self) -> &Arc<RingContext> {
        self.weight.context()
    }

    pub fn generators(&self) -> &[String] {
        self.base.generators()
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement::zero(self.context())
    }

    /// The unit `1_A`, a word of length one.
    pub fn one(&self) -> TensorElement {
        self.word(Word::letter(BaseMonomial::unit(&self.base)))
    }

    pub fn word(&self, w: Word) -> TensorElement {
        TensorElement::basis(self.context(), w)
    }

    /// `1^{(x) len}`.
    pub fn ones(&self, len: usize) -> Result<TensorElement> {
        Ok(self.word(Word::ones(&self.base, len)?))
    }

    pub fn scalar(&self, c: i64) -> ScalarPoly {
        ScalarPoly::from_int(self.context(), c)
    }

    /// Check that `u` lives in this algebra.
    pub fn check(&self, u: &TensorElement) -> Result<()> {
        if !same_context(u.context(), self.context()) {
            return Err(Error::ContextMismatch);
        }
        match u.keys().next() {
            Some(w) if w.generator_count() != self.base.generators().len() => Err(Error::SpecMismatch(format!(
                "word over {} generators used with an algebra of {}",
                w.generator_count(),
                self.base.generators().len()
            ))),
            _ => Ok(()),
        }
    }

    /// The product of two elements.
    pub fn diamond(&self, u: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
        self.check(u)?;
        self.check(v)?;
        let mut out = self.zero();
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                let prod = self.diamond_words(a, b);
                out.add_scaled(&prod, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// The product of two basis words.
    pub fn diamond_words(&self, a: &Word, b: &Word) -> Arc<TensorElement> {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let value = Arc::new(self.diamond_uncached(a, b));
        self.cache
            .lock()
            .expect("cache poisoned")
            .entry(key)
            .or_insert(value)
            .clone()
    }

    fn diamond_uncached(&self, a: &Word, b: &Word) -> TensorElement {
        let ctx = self.context();
        let head = a.head().mul(b.head());
        match (a.tail(), b.tail()) {
            (None, None) => TensorElement::basis(ctx, Word::letter(head)),
            (None, Some(bt)) => TensorElement::basis(ctx, bt.prefixed(&head)),
            (Some(at), None) => TensorElement::basis(ctx, at.prefixed(&head)),
            (Some(at), Some(bt)) => {
                let unit = BaseMonomial::unit(&self.base);
                let mut inner = (*self.diamond_words(&at, &bt.prefixed(&unit))).clone();
                inner.add_scaled(&self.diamond_words(&at.prefixed(&unit), &bt), &self.scalar(1));
                let merged = self.diamond_words(&at, &bt);
                inner.add_scaled(&merged, &self.weight.lambda);
                let mut out = inner.map_linear(|w| TensorElement::basis(ctx, w.prefixed(&head)));
                if !self.weight.kappa.is_zero() {
                    let contracted = merged.map_linear(|w| TensorElement::basis(ctx, w.mul_head(&head)));
                    out.add_scaled(&contracted, &self.weight.kappa);
                }
                out
            }
        }
    }

    /// The shift `u -> 1_A (x) u`.
    pub fn p_shift(&self, u: &TensorElement) -> TensorElement {
        let unit = BaseMonomial::unit(&self.base);
        u.map_linear(|w| TensorElement::basis(u.context(), w.prefixed(&unit)))
    }

    /// Left action of `A` on the first tensor factor.
    pub fn mul_head(&self, m: &BaseMonomial, u: &TensorElement) -> TensorElement {
        u.map_linear(|w| TensorElement::basis(u.context(), w.mul_head(m)))
    }

    /// `1^{(x)(m+1)} diamond 1^{(x)(n+1)}` for `A = k`, from the closed
    /// binomial formula rather than the recursion.
    pub fn closed_form_kk(&self, m: usize, n: usize) -> Result<TensorElement> {
        if !self.base.is_scalars() {
            return Err(Error::RequiresScalarBase(self.base.generators().len()));
        }
        let bin = |a: usize, b: usize| Rational::from_integer(binomial(BigInt::from(a), BigInt::from(b)));
        let lambda = &self.weight.lambda;
        let kappa = &self.weight.kappa;
        let mut out = self.zero();
        for r in 0..=m.min(n) {
            let outer = bin(m + n - r, m) * bin(m, r);
            for i in 0..=r {
                let c = (lambda.pow((r - i) as u32) * kappa.pow(i as u32)).scale(&(&outer * bin(r, i)));
                out.add_term(Word::ones(&self.base, m + n + 1 - r - i)?, c);
            }
        }
        Ok(out)
    }

    /// Both sides of the ERB identity for the shift operator at `(u, v)`:
    /// `P(u)P(v)` and `P(uP(v)) + P(P(u)v) + lambda P(uv) + kappa uv`.
    pub fn erb_identity_sides(&self, u: &TensorElement, v: &TensorElement) -> Result<(TensorElement, TensorElement)> {
        let pu = self.p_shift(u);
        let pv = self.p_shift(v);
        let lhs = self.diamond(&pu, &pv)?;
        let uv = self.diamond(u, v)?;
        let mut rhs = self.p_shift(&self.diamond(u, &pv)?);
        rhs.add_scaled(&self.p_shift(&self.diamond(&pu, v)?), &self.scalar(1));
        rhs.add_scaled(&self.p_shift(&uv), &self.weight.lambda);
        rhs.add_scaled(&uv, &self.weight.kappa);
        Ok((lhs, rhs))
    }

    /// Maximum filtration degree over the words of `u`.
    pub fn filtration_degree(&self, u: &TensorElement) -> Result<u32> {
        self.check(u)?;
        u.keys().map(Word::filtration_degree).max().ok_or(Error::ZeroElement)
    }

    pub fn render(&self, u: &TensorElement) -> String {
        u.render(self.base.generators())
    }

    /// Parse the text form, e.g. `2*lambda*[1|1] - [x]`.
    pub fn parse(&self, text: &str) -> Result<TensorElement> {
        let mut cur = Cursor::new(text);
        let base = self.base.clone();
        parse_combination(self.context(), &mut cur, |cur| Word::parse(&base, cur))
    }

    /// All words with `1..=max_len` letters drawn from `letters`.
    pub fn words_over(letters: &[BaseMonomial], max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<BaseMonomial>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for m in letters {
                    let mut w = w.clone();
                    w.push(m.clone());
                    next.push(w);
                }
            }
            out.extend(next.iter().cloned().map(Word));
            layer = next;
        }
        out
    }
}

/// A commutative ERB algebra that words can be lifted into.
pub trait ErbTarget {
    type Elem: Clone;

    /// The weight the target's operator is declared to have.
    fn weight(&self) -> &ErbWeight;
    fn one(&self) -> Result<Self::Elem>;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, c: &ScalarPoly, a: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn apply_p(&self, a: &Self::Elem) -> Result<Self::Elem>;
}

impl ErbTarget for ShuffleAlgebra {
    type Elem = TensorElement;

    fn weight(&self) -> &ErbWeight {
        &self.weight
    }

    fn one(&self) -> Result<TensorElement> {
        Ok(ShuffleAlgebra::one(self))
    }

    fn zero(&self) -> TensorElement {
        ShuffleAlgebra::zero(self)
    }

    fn add(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        a.try_add(b)
    }

    fn scale(&self, c: &ScalarPoly, a: &TensorElement) -> Result<TensorElement> {
        if !same_context(c.context(), a.context()) {
            return Err(Error::ContextMismatch);
        }
        Ok(a.scale(c))
    }

    fn mul(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        self.diamond(a, b)
    }

    fn apply_p(&self, a: &TensorElement) -> Result<TensorElement> {
        Ok(self.p_shift(a))
    }
}

/// The ring of coefficients itself with the operator `c * id`.
///
/// `c * id` satisfies the ERB identity exactly when `kappa = -c^2 - lambda*c`,
/// which is checked on construction.
#[derive(Debug, Clone)]
pub struct ScalarTarget {
    weight: ErbWeight,
    factor: ScalarPoly,
}

impl ScalarTarget {
    pub fn new(weight: ErbWeight, factor: ScalarPoly) -> Result<Self> {
        if !same_context(weight.context(), factor.context()) {
            return Err(Error::ContextMismatch);
        }
        let required = -(&factor * &factor) - &weight.lambda * &factor;
        if required != weight.kappa {
            return Err(Error::WeightMismatch(format!(
                "({factor})*id has kappa = {required}, not {}",
                weight.kappa
            )));
        }
        Ok(ScalarTarget { weight, factor })
    }

    pub fn factor(&self) -> &ScalarPoly {
        &self.factor
    }
}

impl ErbTarget for ScalarTarget {
    type Elem = ScalarPoly;

    fn weight(&self) -> &ErbWeight {
        &self.weight
    }

    fn one(&self) -> Result<ScalarPoly> {
        Ok(ScalarPoly::one(self.weight.context()))
    }

    fn zero(&self) -> ScalarPoly {
        ScalarPoly::zero(self.weight.context())
    }

    fn add(&self, a: &ScalarPoly, b: &ScalarPoly) -> Result<ScalarPoly> {
        a.try_add(b)
    }

    fn scale(&self, c: &ScalarPoly, a: &ScalarPoly) -> Result<ScalarPoly> {
        c.try_mul(a)
    }

    fn mul(&self, a: &ScalarPoly, b: &ScalarPoly) -> Result<ScalarPoly> {
        a.try_mul(b)
    }

    fn apply_p(&self, a: &ScalarPoly) -> Result<ScalarPoly> {
        self.factor.try_mul(a)
    }
}

/// Extend `f`, given by its values on the generators of `A`, to the unique
/// ERB algebra map `f_bar` out of the free algebra:
/// `f_bar(a) = f(a)` and `f_bar(a (x) w) = f(a) * P(f_bar(w))`.
pub fn lift<T: ErbTarget>(alg: &ShuffleAlgebra, images: &[T::Elem], target: &T, u: &TensorElement) -> Result<T::Elem> {
    alg.check(u)?;
    if target.weight() != alg.weight() {
        return Err(Error::WeightMismatch(format!(
            "source has weight {}, target {}",
            alg.weight(),
            target.weight()
        )));
    }
    if images.len() != alg.generators().len() {
        return Err(Error::InvalidArgument(format!(
            "{} generator images for {} generators",
            images.len(),
            alg.generators().len()
        )));
    }
    let mut letter_cache: HashMap<BaseMonomial, T::Elem> = HashMap::new();
    let mut letter = |m: &BaseMonomial| -> Result<T::Elem> {
        if let Some(v) = letter_cache.get(m) {
            return Ok(v.clone());
        }
        let mut acc = target.one()?;
        for (img, &e) in images.iter().zip(m.exponents()) {
            for _ in 0..e {
                acc = target.mul(&acc, img)?;
            }
        }
        letter_cache.insert(m.clone(), acc.clone());
        Ok(acc)
    };
    let mut out = target.zero();
    for (w, c) in u.iter() {
        let letters = w.letters();
        let mut value = letter(&letters[letters.len() - 1])?;
        for m in letters[..letters.len() - 1].iter().rev() {
            value = target.mul(&letter(m)?, &target.apply_p(&value)?)?;
        }
        out = target.add(&out, &target.scale(c, &value)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kk() -> ShuffleAlgebra {
        let ctx = RingContext::weight_ring();
        ShuffleAlgebra::new(BaseAlgebraSpec::scalars(), ErbWeight::symbolic(&ctx).unwrap())
    }

    #[test]
    fn two_by_two_over_scalars() {
        let alg = kk();
        let u = alg.ones(2).unwrap();
        let got = alg.diamond(&u, &u).unwrap();
        assert_eq!(got, alg.parse("2*[1|1|1] + lambda*[1|1] + kappa*[1]").unwrap());
        assert_eq!(got, alg.closed_form_kk(1, 1).unwrap());
    }

    #[test]
    fn two_by_three_letters() {
        let ctx = RingContext::weight_ring();
        let alg = ShuffleAlgebra::new(
            BaseAlgebraSpec::new(["a0", "a1", "b0", "b1", "b2"], true).unwrap(),
            ErbWeight::symbolic(&ctx).unwrap(),
        );
        let u = alg.parse("[a0|a1]").unwrap();
        let v = alg.parse("[b0|b1|b2]").unwrap();
        let expected = alg
            .parse(
                "[a0*b0|a1|b1|b2] + [a0*b0|b1|a1|b2] + [a0*b0|b1|b2|a1] \
                 + lambda*[a0*b0|b1|a1*b2] + lambda*[a0*b0|a1*b1|b2] \
                 + kappa*[a0*b0|b1*a1*b2] + kappa*[a0*b0*a1*b1|b2]",
            )
            .unwrap();
        assert_eq!(alg.diamond(&u, &v).unwrap(), expected);
    }

    #[test]
    fn closed_form_examples() {
        let alg = kk();
        assert_eq!(alg.closed_form_kk(0, 5).unwrap(), alg.ones(6).unwrap());
        assert_eq!(
            alg.closed_form_kk(1, 2).unwrap(),
            alg.parse("3*[1|1|1|1] + 2*lambda*[1|1|1] + 2*kappa*[1|1]").unwrap()
        );
    }

    #[test]
    fn closed_form_needs_scalar_base() {
        let ctx = RingContext::weight_ring();
        let alg = ShuffleAlgebra::new(
            BaseAlgebraSpec::new(["x"], true).unwrap(),
            ErbWeight::symbolic(&ctx).unwrap(),
        );
        assert_eq!(alg.closed_form_kk(1, 1), Err(Error::RequiresScalarBase(1)));
    }

    #[test]
    fn unit_and_zero() {
        let ctx = RingContext::weight_ring();
        let alg = ShuffleAlgebra::new(
            BaseAlgebraSpec::new(["x", "y"], true).unwrap(),
            ErbWeight::symbolic(&ctx).unwrap(),
        );
        let v = alg.parse("[x|y^2] - lambda*[y]").unwrap();
        assert_eq!(alg.diamond(&alg.one(), &v).unwrap(), v);
        assert!(alg.diamond(&alg.zero(), &v).unwrap().is_zero());
    }

    #[test]
    fn shift_examples() {
        let ctx = RingContext::weight_ring();
        let alg = ShuffleAlgebra::new(
            BaseAlgebraSpec::new(["a", "b", "c", "x", "y"], true).unwrap(),
            ErbWeight::symbolic(&ctx).unwrap(),
        );
        assert_eq!(alg.p_shift(&alg.one()), alg.ones(2).unwrap());
        assert_eq!(alg.p_shift(&alg.parse("[x|y]").unwrap()), alg.parse("[1|x|y]").unwrap());
        assert_eq!(
            alg.p_shift(&alg.parse("2*[a] + 3*[b|c]").unwrap()),
            alg.parse("2*[1|a] + 3*[1|b|c]").unwrap()
        );
    }

    #[test]
    fn render_round_trip() {
        let alg = kk();
        let u = alg.closed_form_kk(2, 2).unwrap();
        let text = alg.render(&u);
        assert!(text.starts_with("6*[1|1|1|1|1]"), "{text}");
        assert_eq!(alg.parse(&text).unwrap(), u);
        assert_eq!(alg.parse("0").unwrap(), alg.zero());
        assert!(alg.parse("[1|").is_err());
        assert!(alg.parse("2*").is_err());
    }

    #[test]
    fn lift_into_scalars_is_counit() {
        let ctx = RingContext::hopf_ring();
        let alg = ShuffleAlgebra::new(BaseAlgebraSpec::scalars(), ErbWeight::symbolic(&ctx).unwrap());
        let mu = ScalarPoly::var(&ctx, crate::scalar::MU).unwrap();
        let target = ScalarTarget::new(alg.weight().clone(), -&mu).unwrap();
        for k in 0..5 {
            let got = lift(&alg, &[], &target, &alg.ones(k + 1).unwrap()).unwrap();
            assert_eq!(got, (-&mu).pow(k as u32));
        }
    }

    #[test]
    fn lift_rejects_weight_mismatch() {
        let ctx = RingContext::weight_ring();
        let alg = ShuffleAlgebra::new(BaseAlgebraSpec::scalars(), ErbWeight::symbolic(&ctx).unwrap());
        let other = ShuffleAlgebra::new(
            BaseAlgebraSpec::scalars(),
            ErbWeight::constant(&ctx, Rational::from_integer(1.into()), Rational::from_integer(0.into())),
        );
        assert!(matches!(
            lift(&alg, &[], &other, &alg.one()),
            Err(Error::WeightMismatch(_))
        ));
        let c = ScalarPoly::from_int(&ctx, 2);
        assert!(matches!(
            ScalarTarget::new(alg.weight().clone(), c),
            Err(Error::WeightMismatch(_))
        ));
    }
}
