//! Bialgebra structure on the free algebra: counit, coproduct, the lifted
//! operator on pairs, and the antipode for `A = k`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::base::{BaseAlgebraSpec, BaseMonomial};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{same_context, RingContext, ScalarPoly, MU};
use crate::shuffle::{ErbWeight, ShuffleAlgebra, TensorElement, Word};
use crate::text::Cursor;

pub type TensorPair = LinComb<(Word, Word)>;
pub type TensorTriple = LinComb<(Word, Word, Word)>;

/// A linear map given on basis words.
pub type WordMap<'a> = dyn Fn(&Word) -> Result<TensorElement> + Sync + 'a;

/// The free algebra over a bialgebra `A`, with coefficients in
/// `Q[lambda, kappa, mu] / (mu^2 - lambda*mu + kappa)`.
#[derive(Debug)]
pub struct HopfAlgebra {
    alg: ShuffleAlgebra,
    mu: ScalarPoly,
    coproducts: Mutex<HashMap<Word, Arc<TensorPair>>>,
    antipodes: Mutex<Vec<TensorElement>>,
}

impl HopfAlgebra {
    /// Uses symbolic `lambda`, `kappa`, `mu` in the standard quotient ring.
    pub fn new(base: Arc<BaseAlgebraSpec>) -> Result<Self> {
        Self::with_context(base, &RingContext::hopf_ring())
    }

    pub fn with_context(base: Arc<BaseAlgebraSpec>, ctx: &Arc<RingContext>) -> Result<Self> {
        if !ctx.mu_relation() {
            return Err(Error::InvalidContext(
                "the coproduct needs a ring with the mu relation".into(),
            ));
        }
        if !base.bialgebra_enabled() {
            return Err(Error::BialgebraDisabled);
        }
        let weight = ErbWeight::symbolic(ctx)?;
        Ok(HopfAlgebra {
            alg: ShuffleAlgebra::new(base, weight),
            mu: ScalarPoly::var(ctx, MU)?,
            coproducts: Mutex::new(HashMap::new()),
            antipodes: Mutex::new(Vec::new()),
        })
    }

    pub fn algebra(&self) -> &ShuffleAlgebra {
        &self.alg
    }

    pub fn mu(&self) -> &ScalarPoly {
        &self.mu
    }

    pub fn context(&self) -> &Arc<RingContext> {
        self.alg.context()
    }

    fn unit_word(&self) -> Word {
        Word::letter(BaseMonomial::unit(self.alg.base()))
    }

    /// `(-mu)^m` on `1^{(x)(m+1)}` words, zero when any letter is not `1_A`.
    pub fn counit_word(&self, w: &Word) -> ScalarPoly {
        if w.letters().iter().all(BaseMonomial::is_unit) {
            (-&self.mu).pow(w.len() as u32 - 1)
        } else {
            ScalarPoly::zero(self.context())
        }
    }

    pub fn counit(&self, u: &TensorElement) -> Result<ScalarPoly> {
        self.alg.check(u)?;
        u.try_fold_scalar(|w| Ok(self.counit_word(w)))
    }

    /// `P_bar(a (x) b) = P(a) (x) eps(b) 1 + mu a (x) eps(b) 1 + a (x) P(b)`.
    pub fn pbar(&self, t: &TensorPair) -> TensorPair {
        let ctx = self.context();
        let unit = BaseMonomial::unit(self.alg.base());
        let one = self.unit_word();
        let mut out = TensorPair::zero(ctx);
        for ((a, b), c) in t.iter() {
            let e = self.counit_word(b);
            if !e.is_zero() {
                let ce = c * &e;
                out.add_term((a.prefixed(&unit), one.clone()), ce.clone());
                out.add_term((a.clone(), one.clone()), &ce * &self.mu);
            }
            out.add_term((a.clone(), b.prefixed(&unit)), c.clone());
        }
        out
    }

    /// Slotwise product `(a (x) b) * (c (x) d) = (a c) (x) (b d)`.
    pub fn pair_product(&self, s: &TensorPair, t: &TensorPair) -> Result<TensorPair> {
        if !same_context(s.context(), self.context()) || !same_context(t.context(), self.context()) {
            return Err(Error::ContextMismatch);
        }
        let mut out = TensorPair::zero(self.context());
        for ((a, b), c1) in s.iter() {
            for ((x, y), c2) in t.iter() {
                let left = self.alg.diamond_words(a, x);
                let right = self.alg.diamond_words(b, y);
                let c = c1 * c2;
                for (l, cl) in left.iter() {
                    let cl = &c * cl;
                    for (r, cr) in right.iter() {
                        out.add_term((l.clone(), r.clone()), &cl * cr);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Delta` on a basis word, by recursion on the length:
    /// `Delta(a) = Delta_A(a)` and
    /// `Delta(a (x) w) = Delta_A(a) * P_bar(Delta(w))`.
    pub fn coproduct_word(&self, w: &Word) -> Arc<TensorPair> {
        if let Some(hit) = self.coproducts.lock().expect("cache poisoned").get(w) {
            return hit.clone();
        }
        let ctx = self.context();
        let base = self.alg.base();
        let head = base.monomial_coproduct(ctx, w.head());
        let value = match w.tail() {
            None => {
                head.map_linear(|(l, r)| TensorPair::basis(ctx, (Word::letter(l.clone()), Word::letter(r.clone()))))
            }
            Some(tail) => {
                let lifted = self.pbar(&self.coproduct_word(&tail));
                let mut out = TensorPair::zero(ctx);
                for ((l, r), c) in head.iter() {
                    for ((x, y), d) in lifted.iter() {
                        out.add_term((x.mul_head(l), y.mul_head(r)), c * d);
                    }
                }
                out
            }
        };
        let value = Arc::new(value);
        self.coproducts
            .lock()
            .expect("cache poisoned")
            .entry(w.clone())
            .or_insert(value)
            .clone()
    }

    pub fn coproduct(&self, u: &TensorElement) -> Result<TensorPair> {
        self.alg.check(u)?;
        let mut out = TensorPair::zero(self.context());
        for (w, c) in u.iter() {
            out.add_scaled(&self.coproduct_word(w), c);
        }
        Ok(out)
    }

    /// `Delta(1^{(x)(k+1)})` from its closed formula.
    pub fn coproduct_kk(&self, k: usize) -> Result<TensorPair> {
        let base = self.alg.base();
        if !base.is_scalars() {
            return Err(Error::RequiresScalarBase(base.generators().len()));
        }
        let ctx = self.context();
        let ones = |n: usize| Word::ones(base, n);
        let mut out = TensorPair::zero(ctx);
        for i in 0..=k {
            out.add_term((ones(i + 1)?, ones(k + 1 - i)?), ScalarPoly::one(ctx));
        }
        for i in 0..k {
            out.add_term((ones(i + 1)?, ones(k - i)?), self.mu.clone());
        }
        Ok(out)
    }

    /// Both sides of `Delta(P(u)) = (P(u) + mu u) (x) 1 + (id (x) P) Delta(u)`.
    pub fn cocycle_sides(&self, u: &TensorElement) -> Result<(TensorPair, TensorPair)> {
        let pu = self.alg.p_shift(u);
        let lhs = self.coproduct(&pu)?;
        let one = self.unit_word();
        let unit = BaseMonomial::unit(self.alg.base());
        let mut rhs = TensorPair::zero(self.context());
        for (w, c) in pu.iter() {
            rhs.add_term((w.clone(), one.clone()), c.clone());
        }
        for (w, c) in u.iter() {
            rhs.add_term((w.clone(), one.clone()), c * &self.mu);
        }
        for ((a, b), c) in self.coproduct(u)?.iter() {
            rhs.add_term((a.clone(), b.prefixed(&unit)), c.clone());
        }
        Ok((lhs, rhs))
    }

    pub fn filtration_degree(&self, u: &TensorElement) -> Result<u32> {
        self.alg.filtration_degree(u)
    }

    /// `(eps (x) id) Delta(u)` and `(id (x) eps) Delta(u)`, each collapsed to
    /// a single element.
    pub fn counit_contractions(&self, u: &TensorElement) -> Result<(TensorElement, TensorElement)> {
        let d = self.coproduct(u)?;
        let mut left = self.alg.zero();
        let mut right = self.alg.zero();
        for ((a, b), c) in d.iter() {
            left.add_term(b.clone(), c * &self.counit_word(a));
            right.add_term(a.clone(), c * &self.counit_word(b));
        }
        Ok((left, right))
    }

    /// `(Delta (x) id) Delta(u)` and `(id (x) Delta) Delta(u)`.
    pub fn coassociativity_sides(&self, u: &TensorElement) -> Result<(TensorTriple, TensorTriple)> {
        let d = self.coproduct(u)?;
        let mut left = TensorTriple::zero(self.context());
        let mut right = TensorTriple::zero(self.context());
        for ((a, b), c) in d.iter() {
            for ((x, y), e) in self.coproduct_word(a).iter() {
                left.add_term((x.clone(), y.clone(), b.clone()), c * e);
            }
            for ((x, y), e) in self.coproduct_word(b).iter() {
                right.add_term((a.clone(), x.clone(), y.clone()), c * e);
            }
        }
        Ok((left, right))
    }

    /// Largest `deg(a) + deg(b)` over the terms of `Delta(u)`.
    pub fn coproduct_degree(&self, u: &TensorElement) -> Result<u32> {
        let d = self.coproduct(u)?;
        d.keys()
            .map(|(a, b)| a.filtration_degree() + b.filtration_degree())
            .max()
            .ok_or(Error::ZeroElement)
    }

    /// `(F * G)(u)`: apply `F` and `G` to the two slots of `Delta(u)` and
    /// multiply.
    pub fn convolve(&self, f: &WordMap<'_>, g: &WordMap<'_>, u: &TensorElement) -> Result<TensorElement> {
        let d = self.coproduct(u)?;
        let mut out = self.alg.zero();
        let mut left_cache: HashMap<&Word, TensorElement> = HashMap::new();
        let mut right_cache: HashMap<&Word, TensorElement> = HashMap::new();
        for ((a, b), c) in d.iter() {
            if !left_cache.contains_key(a) {
                left_cache.insert(a, f(a)?);
            }
            if !right_cache.contains_key(b) {
                right_cache.insert(b, g(b)?);
            }
            let prod = self.alg.diamond(&left_cache[a], &right_cache[b])?;
            out.add_scaled(&prod, c);
        }
        Ok(out)
    }

    /// The map `w -> eps(w) 1`.
    pub fn unit_counit(&self, w: &Word) -> Result<TensorElement> {
        Ok(self.alg.one().scale(&self.counit_word(w)))
    }

    /// The identity on basis words.
    pub fn identity(&self, w: &Word) -> Result<TensorElement> {
        Ok(self.alg.word(w.clone()))
    }

    /// The antipode on a basis word; only words `1^{(x)(k+1)}` over `A = k`
    /// are supported.
    pub fn antipode_word(&self, w: &Word) -> Result<TensorElement> {
        let base = self.alg.base();
        if !base.is_scalars() {
            return Err(Error::RequiresScalarBase(base.generators().len()));
        }
        self.antipode_kk(w.len() - 1)
    }

    /// `S(1^{(x)(k+1)})`, solved from `m (S (x) id) Delta = unit . eps`
    /// one length at a time.
    pub fn antipode_kk(&self, k: usize) -> Result<TensorElement> {
        let base = self.alg.base();
        if !base.is_scalars() {
            return Err(Error::RequiresScalarBase(base.generators().len()));
        }
        let mut memo = self.antipodes.lock().expect("cache poisoned");
        while memo.len() <= k {
            let n = memo.len();
            let mut s = self.alg.one().scale(&(-&self.mu).pow(n as u32));
            for (i, si) in memo.iter().enumerate() {
                let minus_one = ScalarPoly::from_int(self.context(), -1);
                s.add_scaled(&self.alg.diamond(si, &self.alg.ones(n + 1 - i)?)?, &minus_one);
                s.add_scaled(&self.alg.diamond(si, &self.alg.ones(n - i)?)?, &-&self.mu);
            }
            memo.push(s);
        }
        Ok(memo[k].clone())
    }

    pub fn render_pair(&self, t: &TensorPair) -> String {
        t.render(self.alg.generators())
    }

    /// Parse the text form of a pair, e.g. `[1|1] (x) [1] + mu*[1] (x) [1]`.
    pub fn parse_pair(&self, text: &str) -> Result<TensorPair> {
        parse_pair(self.alg.base(), self.context(), text)
    }
}

pub(crate) fn parse_pair(base: &BaseAlgebraSpec, ctx: &Arc<RingContext>, text: &str) -> Result<TensorPair> {
    let mut cur = Cursor::new(text);
    crate::lincomb::parse_combination(ctx, &mut cur, |cur| {
        let l = Word::parse(base, cur)?;
        if !cur.eat_str("(x)") {
            return Err(cur.error("expected `(x)` between the two slots"));
        }
        let r = Word::parse(base, cur)?;
        Ok((l, r))
    })
}
