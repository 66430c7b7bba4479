//! Verification suites: each property of each module, checked exactly on
//! exhaustive or seeded samples.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::base::{BaseAlgebraSpec, BaseElement, BaseMonomial};
use crate::delannoy::{self, GfKind};
use crate::document::{parse_document, serialize_element, serialize_pair, Value};
use crate::error::Result;
use crate::hopf::{HopfAlgebra, TensorPair};
use crate::operators::{
    compatibility_check, falling_factorial_op, infer_weight, jackson_pair, laurent_split, predicted_weight,
    verify_erb_identity, CompatConstants, OperatorTarget, RuleOperator, TruncatedAlgebra, Vector, WeightSolution,
};
use crate::scalar::{integer, Rational, RingContext, ScalarPoly, KAPPA, LAMBDA, MU};
use crate::shuffle::{lift, ErbWeight, ScalarTarget, ShuffleAlgebra, TensorElement, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Scalar,
    Base,
    Shuffle,
    Hopf,
    Delannoy,
    Operators,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Scalar,
        Suite::Base,
        Suite::Shuffle,
        Suite::Hopf,
        Suite::Delannoy,
        Suite::Operators,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Scalar => "scalar",
            Suite::Base => "base",
            Suite::Shuffle => "shuffle",
            Suite::Hopf => "hopf",
            Suite::Delannoy => "delannoy",
            Suite::Operators => "operators",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Bounds for the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// Largest `k` for checks on `1^{(x)(k+1)}` and largest `m, n` for
    /// product checks over `A = k`.
    pub max_degree: usize,
    pub seed: u64,
    /// Number of random samples for sampled checks.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_degree: 8,
            seed: 42,
            samples: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "ok    {}: {} ({} cases)", self.suite.name(), c.name, c.cases)?,
                Some(msg) => writeln!(f, "FAIL  {}: {}: {msg}", self.suite.name(), c.name)?,
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(
            f,
            "suite {}: {} checks, {} cases, {} failed",
            self.suite.name(),
            self.checks.len(),
            self.cases(),
            failed
        )
    }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteReport {
    let checks = match suite {
        Suite::Scalar => scalar_checks(config),
        Suite::Base => base_checks(config),
        Suite::Shuffle => shuffle_checks(config),
        Suite::Hopf => hopf_checks(config),
        Suite::Delannoy => delannoy_checks(config),
        Suite::Operators => operator_checks(config),
    };
    SuiteReport {
        suite,
        seed: config.seed,
        checks,
    }
}

/// Run `f` on every case in parallel; the first failure in input order is
/// reported. `f` returns `Ok(None)` on success and a description otherwise.
pub fn check_all<T, F>(name: &str, cases: &[T], f: F) -> CheckOutcome
where
    T: Sync,
    F: Fn(&T) -> Result<Option<String>> + Sync,
{
    let results: Vec<Option<String>> = cases
        .par_iter()
        .map(|c| match f(c) {
            Ok(r) => r,
            Err(e) => Some(format!("error: {e}")),
        })
        .collect();
    CheckOutcome {
        name: name.to_string(),
        cases: cases.len(),
        failure: results.into_iter().flatten().next(),
    }
}

fn differ<T: PartialEq>(what: impl FnOnce() -> String, a: &T, b: &T) -> Option<String> {
    (a != b).then(what)
}

// ---------------------------------------------------------------- scalar

fn random_poly(rng: &mut ChaCha8Rng, ctx: &Arc<RingContext>) -> ScalarPoly {
    let n = ctx.len();
    let terms = rng.gen_range(0..4);
    let mut raw = Vec::new();
    for _ in 0..terms {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let c = Rational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=3)));
        raw.push((e, c));
    }
    ScalarPoly::from_terms(ctx, raw).expect("exponent vectors sized to the context")
}

fn scalar_checks(config: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for ctx in [RingContext::weight_ring(), RingContext::hopf_ring()] {
        let tag = if ctx.mu_relation() { "quotient" } else { "free" };
        let triples: Vec<[ScalarPoly; 3]> = (0..config.samples)
            .map(|_| {
                [
                    random_poly(&mut rng, &ctx),
                    random_poly(&mut rng, &ctx),
                    random_poly(&mut rng, &ctx),
                ]
            })
            .collect();
        out.push(check_all(&format!("ring axioms ({tag})"), &triples, |[p, q, r]| {
            Ok(differ(
                || format!("associativity at {p}, {q}, {r}"),
                &(&(p * q) * r),
                &(p * &(q * r)),
            )
            .or_else(|| differ(|| format!("commutativity at {p}, {q}"), &(p * q), &(q * p)))
            .or_else(|| {
                differ(
                    || format!("distributivity at {p}, {q}, {r}"),
                    &(p * &(q + r)),
                    &(p * q + p * r),
                )
            })
            .or_else(|| {
                differ(
                    || format!("additive associativity at {p}, {q}, {r}"),
                    &(&(p + q) + r),
                    &(p + &(q + r)),
                )
            }))
        }));
        out.push(check_all(
            &format!("mu reduction idempotent ({tag})"),
            &triples,
            |[p, q, _]| {
                let prod = p * q;
                let mut again = prod.clone();
                again.reduce_mu();
                Ok(differ(|| format!("reducing {prod} changed it"), &prod, &again)
                    .or_else(|| (!prod.is_mu_reduced()).then(|| format!("{prod} not reduced"))))
            },
        ));
    }
    // evaluation at points on the curve mu^2 = lambda mu - kappa
    let ctx = RingContext::hopf_ring();
    let cases: Vec<(ScalarPoly, ScalarPoly, BTreeMap<String, Rational>)> = (0..config.samples)
        .map(|_| {
            let lambda = Rational::new(BigInt::from(rng.gen_range(-6..=6)), BigInt::from(rng.gen_range(1..=3)));
            let mu = Rational::new(BigInt::from(rng.gen_range(-6..=6)), BigInt::from(rng.gen_range(1..=3)));
            let kappa = &lambda * &mu - &mu * &mu;
            let point = [(LAMBDA, lambda), (KAPPA, kappa), (MU, mu)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            (random_poly(&mut rng, &ctx), random_poly(&mut rng, &ctx), point)
        })
        .collect();
    out.push(check_all("evaluation is a ring map", &cases, |(p, q, at)| {
        let (ep, eq) = (p.eval(at)?, q.eval(at)?);
        let (prod, sum) = ((p * q).eval(at)?, (p + q).eval(at)?);
        Ok(differ(|| format!("eval(pq) at {p}, {q}"), &prod, &(&ep * &eq))
            .or_else(|| differ(|| format!("eval(p+q) at {p}, {q}"), &sum, &(ep + eq))))
    }));
    out
}

// ---------------------------------------------------------------- base

fn base_checks(_config: &VerifyConfig) -> Vec<CheckOutcome> {
    let ctx = RingContext::weight_ring();
    let spec = BaseAlgebraSpec::new(["x", "y"], true).expect("valid generators");
    let monos = spec.monomials_up_to(6);
    let elem = |m: &BaseMonomial| BaseElement::basis(&ctx, m.clone());
    let pairs: Vec<(BaseMonomial, BaseMonomial)> = spec
        .monomials_up_to(3)
        .iter()
        .flat_map(|a| spec.monomials_up_to(3).into_iter().map(move |b| (a.clone(), b)))
        .collect();
    let mut out = Vec::new();
    out.push(check_all("counit is multiplicative", &pairs, |(a, b)| {
        let (u, v) = (elem(a), elem(b));
        let lhs = spec.counit(&spec.mul(&u, &v)?)?;
        let rhs = spec.counit(&u)? * spec.counit(&v)?;
        Ok(differ(|| format!("at {a:?}, {b:?}"), &lhs, &rhs))
    }));
    out.push(check_all("degree is subadditive", &pairs, |(a, b)| {
        let (u, v) = (elem(a), elem(b));
        let d = spec.degree(&spec.mul(&u, &v)?)?;
        Ok((d > spec.degree(&u)? + spec.degree(&v)?).then(|| format!("at {a:?}, {b:?}")))
    }));
    out.push(check_all("coproduct coassociative and counital", &monos, |m| {
        let d = spec.monomial_coproduct(&ctx, m);
        let mut left = LinCombTriple::zero(&ctx);
        let mut right = LinCombTriple::zero(&ctx);
        let mut counit_left = BaseElement::zero(&ctx);
        let mut counit_right = BaseElement::zero(&ctx);
        for ((a, b), c) in d.iter() {
            for ((x, y), e) in spec.monomial_coproduct(&ctx, a).iter() {
                left.add_term((x.clone(), y.clone(), b.clone()), c * e);
            }
            for ((x, y), e) in spec.monomial_coproduct(&ctx, b).iter() {
                right.add_term((a.clone(), x.clone(), y.clone()), c * e);
            }
            if a.is_unit() {
                counit_left.add_term(b.clone(), c.clone());
            }
            if b.is_unit() {
                counit_right.add_term(a.clone(), c.clone());
            }
        }
        Ok(differ(|| format!("coassociativity at {m:?}"), &left, &right)
            .or_else(|| differ(|| format!("left counit at {m:?}"), &counit_left, &elem(m)))
            .or_else(|| differ(|| format!("right counit at {m:?}"), &counit_right, &elem(m))))
    }));
    out.push(check_all("degree zero is the scalars", &monos, |m| {
        Ok((m.degree() == 0 && !m.is_unit()).then(|| format!("{m:?} has degree 0")))
    }));
    out
}

type LinCombTriple = crate::lincomb::LinComb<(BaseMonomial, BaseMonomial, BaseMonomial)>;

// ---------------------------------------------------------------- shuffle

/// Symbolic `A = k` algebra in `Q[lambda, kappa]`.
pub fn scalar_base_algebra() -> ShuffleAlgebra {
    let ctx = RingContext::weight_ring();
    ShuffleAlgebra::new(
        BaseAlgebraSpec::scalars(),
        ErbWeight::symbolic(&ctx).expect("symbols present"),
    )
}

/// Symbolic algebra over `A = k[x, y]`.
pub fn two_generator_algebra() -> ShuffleAlgebra {
    let ctx = RingContext::weight_ring();
    ShuffleAlgebra::new(
        BaseAlgebraSpec::new(["x", "y"], true).expect("valid generators"),
        ErbWeight::symbolic(&ctx).expect("symbols present"),
    )
}

/// A random word of length `1..=max_len` with letters of degree at most
/// `max_letter_degree`.
pub fn random_word(rng: &mut ChaCha8Rng, letters: &[BaseMonomial], max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::new(
        (0..len)
            .map(|_| letters.choose(rng).expect("letters").clone())
            .collect(),
    )
    .expect("nonempty")
}

/// Seeded triples of random words over `k[x, y]`, word length at most 3
/// and letter degree at most 2.
pub fn random_word_triples(alg: &ShuffleAlgebra, seed: u64, count: usize) -> Vec<[TensorElement; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = alg.base().monomials_up_to(2);
    (0..count)
        .map(|_| [(); 3].map(|_| alg.word(random_word(&mut rng, &letters, 3))))
        .collect()
}

fn round_trip_element(alg: &ShuffleAlgebra, u: &TensorElement) -> Option<String> {
    let text = serialize_element(alg.base(), u);
    match parse_document(&text) {
        Ok(doc) if doc.value == Value::Element(u.clone()) => None,
        Ok(_) => Some(format!("round trip changed {}", alg.render(u))),
        Err(e) => Some(format!("round trip failed: {e}")),
    }
}

fn round_trip_pair(h: &HopfAlgebra, t: &TensorPair) -> Option<String> {
    let text = serialize_pair(h.algebra().base(), t);
    match parse_document(&text) {
        Ok(doc) if doc.value == Value::Pair(t.clone()) => None,
        Ok(_) => Some(format!("round trip changed {}", h.render_pair(t))),
        Err(e) => Some(format!("round trip failed: {e}")),
    }
}

fn shuffle_checks(config: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let kk = scalar_base_algebra();
    let top = config.max_degree;
    let grid: Vec<(usize, usize)> = (0..=top).flat_map(|m| (0..=top).map(move |n| (m, n))).collect();
    out.push(check_all("recursion matches closed form over k", &grid, |&(m, n)| {
        let got = kk.diamond(&kk.ones(m + 1)?, &kk.ones(n + 1)?)?;
        let want = kk.closed_form_kk(m, n)?;
        Ok(differ(|| format!("at (m, n) = ({m}, {n})"), &got, &want).or_else(|| round_trip_element(&kk, &got)))
    }));
    let small = top.min(5);
    let cube: Vec<(usize, usize, usize)> = (0..=small)
        .flat_map(|m| (0..=small).flat_map(move |n| (0..=small).map(move |p| (m, n, p))))
        .collect();
    out.push(check_all("commutative and associative over k", &cube, |&(m, n, p)| {
        let (u, v, w) = (kk.ones(m + 1)?, kk.ones(n + 1)?, kk.ones(p + 1)?);
        let uv = kk.diamond(&u, &v)?;
        let vu = kk.diamond(&v, &u)?;
        let left = kk.diamond(&uv, &w)?;
        let right = kk.diamond(&u, &kk.diamond(&v, &w)?)?;
        Ok(differ(|| format!("commutativity at ({m}, {n})"), &uv, &vu)
            .or_else(|| differ(|| format!("associativity at ({m}, {n}, {p})"), &left, &right)))
    }));
    let square: Vec<(usize, usize)> = (0..=small).flat_map(|m| (0..=small).map(move |n| (m, n))).collect();
    out.push(check_all("shift is ERB over k", &square, |&(m, n)| {
        let (l, r) = kk.erb_identity_sides(&kk.ones(m + 1)?, &kk.ones(n + 1)?)?;
        Ok(differ(|| format!("at ({m}, {n})"), &l, &r))
    }));

    let xy = two_generator_algebra();
    let triples = random_word_triples(&xy, config.seed, config.samples);
    out.push(check_all(
        "commutative and associative over k[x,y]",
        &triples,
        |[u, v, w]| {
            let uv = xy.diamond(u, v)?;
            let vu = xy.diamond(v, u)?;
            let left = xy.diamond(&uv, w)?;
            let right = xy.diamond(u, &xy.diamond(v, w)?)?;
            let show = || format!("at {}, {}, {}", xy.render(u), xy.render(v), xy.render(w));
            Ok(differ(|| format!("commutativity {}", show()), &uv, &vu)
                .or_else(|| differ(|| format!("associativity {}", show()), &left, &right))
                .or_else(|| round_trip_element(&xy, &uv)))
        },
    ));
    out.push(check_all(
        "unit and shift identity over k[x,y]",
        &triples,
        |[u, v, _]| {
            let (l, r) = xy.erb_identity_sides(u, v)?;
            Ok(
                differ(|| format!("unit at {}", xy.render(u)), &xy.diamond(&xy.one(), u)?, u)
                    .or_else(|| differ(|| format!("ERB identity at {}, {}", xy.render(u), xy.render(v)), &l, &r)),
            )
        },
    ));
    out.push(check_all("product respects filtration", &triples, |[u, v, _]| {
        let d = xy.filtration_degree(&xy.diamond(u, v)?)?;
        Ok((d > xy.filtration_degree(u)? + xy.filtration_degree(v)?)
            .then(|| format!("at {}, {}", xy.render(u), xy.render(v))))
    }));

    // lifting an algebra map k[x,y] -> Sh(k[x,y]) given by random images
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    let letters = xy.base().monomials_up_to(1);
    let images = [
        xy.word(random_word(&mut rng, &letters, 2)),
        xy.word(random_word(&mut rng, &letters, 2)),
    ];
    let inclusion = [xy.parse("[x]").expect("word"), xy.parse("[y]").expect("word")];
    let sample: Vec<(TensorElement, TensorElement)> = (0..config.samples.min(60))
        .map(|_| {
            (
                xy.word(random_word(&mut rng, &letters, 2)),
                xy.word(random_word(&mut rng, &letters, 2)),
            )
        })
        .collect();
    out.push(check_all("lift is an ERB morphism", &sample, |(u, v)| {
        let f = |t: &TensorElement| lift(&xy, &images, &xy, t);
        let id = lift(&xy, &inclusion, &xy, u)?;
        let (fu, fv) = (f(u)?, f(v)?);
        let mul_lhs = f(&xy.diamond(u, v)?)?;
        let mul_rhs = xy.diamond(&fu, &fv)?;
        let shift_lhs = f(&xy.p_shift(u))?;
        let shift_rhs = xy.p_shift(&fu);
        Ok(differ(|| format!("inclusion lift at {}", xy.render(u)), &id, u)
            .or_else(|| {
                differ(
                    || format!("multiplicativity at {}, {}", xy.render(u), xy.render(v)),
                    &mul_lhs,
                    &mul_rhs,
                )
            })
            .or_else(|| {
                differ(
                    || format!("operator compatibility at {}", xy.render(u)),
                    &shift_lhs,
                    &shift_rhs,
                )
            }))
    }));
    out.push(jackson_lift_check(config));
    out
}

/// Lift into `k[x]` with the Jackson operator `aP+ + bP-` of weight
/// `(-(a+b), ab)`, sending `x` to `x`.
fn jackson_lift_check(config: &VerifyConfig) -> CheckOutcome {
    let ctx = RingContext::new(["a", "b"], false).expect("valid");
    let a = ScalarPoly::var(&ctx, "a").expect("a");
    let b = ScalarPoly::var(&ctx, "b").expect("b");
    let weight = ErbWeight::new(-(&a + &b), &a * &b).expect("same ring");
    let alg = ShuffleAlgebra::new(BaseAlgebraSpec::new(["x"], true).expect("valid"), weight.clone());
    let poly = TruncatedAlgebra::polynomial(16, &ctx).expect("bound");
    let (plus, minus) = jackson_pair(&poly, &integer(2)).expect("2 is not a root of unity");
    let q = RuleOperator::combine(&plus, &minus, &a, &b).expect("same basis");
    let target = OperatorTarget {
        alg: &poly,
        op: &q,
        weight,
    };
    let x = poly.element(1);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let letters = vec![
        BaseMonomial::generator(alg.base(), 0, 1),
        BaseMonomial::generator(alg.base(), 0, 2),
    ];
    let words: Vec<(Word, Word)> = (0..config.samples.min(40))
        .map(|_| (random_word(&mut rng, &letters, 2), random_word(&mut rng, &letters, 2)))
        .collect();
    let mut outcome = check_all("lift into k[x] with a Jackson operator", &words, |(u, v)| {
        let (u, v) = (alg.word(u.clone()), alg.word(v.clone()));
        let f = |t: &TensorElement| lift(&alg, std::slice::from_ref(&x), &target, t);
        let lhs = f(&alg.diamond(&u, &v)?)?;
        let rhs = poly.mul(&f(&u)?, &f(&v)?)?;
        Ok(differ(
            || format!("at {}, {}", alg.render(&u), alg.render(&v)),
            &lhs,
            &rhs,
        ))
    });
    let xx = alg.parse("[x|x]").expect("word");
    let direct = poly.mul(&x, &q.apply(&x).expect("in domain")).expect("in range");
    if outcome.failure.is_none() {
        outcome.failure = match lift(&alg, std::slice::from_ref(&x), &target, &xx) {
            Ok(v) if v == direct => None,
            Ok(v) => Some(format!(
                "x (x) x lifts to {}, expected {}",
                poly.render(&v),
                poly.render(&direct)
            )),
            Err(e) => Some(e.to_string()),
        };
    }
    outcome
}

// ---------------------------------------------------------------- hopf

/// All words over the letters of degree at most `max` with filtration
/// degree at most `max`.
pub fn words_up_to_degree(spec: &BaseAlgebraSpec, max: u32) -> Vec<Word> {
    let letters = spec.monomials_up_to(max);
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<BaseMonomial>> = letters.iter().map(|m| vec![m.clone()]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in frontier {
            let word = Word::new(w.clone()).expect("nonempty");
            if word.filtration_degree() > max {
                continue;
            }
            for m in &letters {
                let mut longer = w.clone();
                longer.push(m.clone());
                next.push(longer);
            }
            out.push(word);
        }
        frontier = next;
    }
    out.sort();
    out
}

fn hopf_word_checks(h: &HopfAlgebra, words: &[Word], tag: &str) -> Vec<CheckOutcome> {
    let alg = h.algebra();
    vec![
        check_all(&format!("counit laws ({tag})"), words, |w| {
            let u = alg.word(w.clone());
            let (l, r) = h.counit_contractions(&u)?;
            Ok(differ(|| format!("left at {}", alg.render(&u)), &l, &u)
                .or_else(|| differ(|| format!("right at {}", alg.render(&u)), &r, &u)))
        }),
        check_all(&format!("coassociativity ({tag})"), words, |w| {
            let u = alg.word(w.clone());
            let (l, r) = h.coassociativity_sides(&u)?;
            Ok(differ(|| format!("at {}", alg.render(&u)), &l, &r))
        }),
        check_all(&format!("cocycle identity ({tag})"), words, |w| {
            let u = alg.word(w.clone());
            let (l, r) = h.cocycle_sides(&u)?;
            Ok(differ(|| format!("at {}", alg.render(&u)), &l, &r))
        }),
        check_all(&format!("coproduct respects filtration ({tag})"), words, |w| {
            let u = alg.word(w.clone());
            let d = h.coproduct_degree(&u)?;
            let deg = h.filtration_degree(&u)?;
            Ok((d > deg).then(|| format!("at {}: {d} > {deg}", alg.render(&u))))
        }),
        check_all(&format!("counit and shift ({tag})"), words, |w| {
            let u = alg.word(w.clone());
            let lhs = h.counit(&alg.p_shift(&u))?;
            let rhs = -h.mu() * &h.counit(&u)?;
            let delta = h.coproduct(&u)?;
            let augmented = u.try_sub(&alg.one().scale(&h.counit(&u)?))?;
            let kernel = if augmented.is_zero() {
                ScalarPoly::zero(h.context())
            } else {
                h.counit(&augmented)?
            };
            Ok(differ(|| format!("eps(P(u)) at {}", alg.render(&u)), &lhs, &rhs)
                .or_else(|| (!kernel.is_zero()).then(|| format!("u - eps(u)1 not in ker eps at {}", alg.render(&u))))
                .or_else(|| round_trip_pair(h, &delta)))
        }),
    ]
}

fn hopf_pair_checks(h: &HopfAlgebra, pairs: &[(Word, Word)], tag: &str) -> Vec<CheckOutcome> {
    let alg = h.algebra();
    vec![
        check_all(&format!("coproduct is multiplicative ({tag})"), pairs, |(a, b)| {
            let (u, v) = (alg.word(a.clone()), alg.word(b.clone()));
            let lhs = h.coproduct(&alg.diamond(&u, &v)?)?;
            let rhs = h.pair_product(&h.coproduct(&u)?, &h.coproduct(&v)?)?;
            Ok(differ(
                || format!("at {}, {}", alg.render(&u), alg.render(&v)),
                &lhs,
                &rhs,
            ))
        }),
        check_all(&format!("counit is multiplicative ({tag})"), pairs, |(a, b)| {
            let (u, v) = (alg.word(a.clone()), alg.word(b.clone()));
            let lhs = h.counit(&alg.diamond(&u, &v)?)?;
            let rhs = h.counit(&u)? * h.counit(&v)?;
            Ok(differ(
                || format!("at {}, {}", alg.render(&u), alg.render(&v)),
                &lhs,
                &rhs,
            ))
        }),
        check_all(&format!("lifted operator is ERB on pairs ({tag})"), pairs, |(a, b)| {
            let s = h.coproduct_word(a);
            let t = h.coproduct_word(b);
            let w = alg.weight();
            let one = ScalarPoly::one(h.context());
            let ps = h.pbar(&s);
            let pt = h.pbar(&t);
            let lhs = h.pair_product(&ps, &pt)?;
            let st = h.pair_product(&s, &t)?;
            let mut rhs = h.pbar(&h.pair_product(&s, &pt)?);
            rhs.add_scaled(&h.pbar(&h.pair_product(&ps, &t)?), &one);
            rhs.add_scaled(&h.pbar(&st), &w.lambda);
            rhs.add_scaled(&st, &w.kappa);
            Ok(differ(
                || {
                    format!(
                        "at Delta({}), Delta({})",
                        alg.render(&alg.word(a.clone())),
                        alg.render(&alg.word(b.clone()))
                    )
                },
                &lhs,
                &rhs,
            ))
        }),
    ]
}

fn hopf_checks(config: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let h = HopfAlgebra::new(BaseAlgebraSpec::scalars()).expect("bialgebra");
    let alg = h.algebra();
    let ks: Vec<usize> = (0..=config.max_degree).collect();
    let ones: Vec<Word> = ks
        .iter()
        .map(|&k| Word::ones(alg.base(), k + 1).expect("nonempty"))
        .collect();
    out.extend(hopf_word_checks(&h, &ones, "A = k"));
    out.push(check_all("coproduct matches closed formula (A = k)", &ks, |&k| {
        let got = h.coproduct(&alg.ones(k + 1)?)?;
        Ok(differ(|| format!("at k = {k}"), &got, &h.coproduct_kk(k)?))
    }));
    out.push(check_all("counit of 1^(k+1) is (-mu)^k", &ks, |&k| {
        let got = h.counit(&alg.ones(k + 1)?)?;
        Ok(differ(|| format!("at k = {k}"), &got, &(-h.mu()).pow(k as u32)))
    }));
    let target = ScalarTarget::new(alg.weight().clone(), -h.mu()).expect("-mu id has weight (lambda, kappa)");
    out.push(check_all("counit equals lift into (k, -mu id)", &ks, |&k| {
        let u = alg.ones(k + 1)?;
        Ok(differ(
            || format!("at k = {k}"),
            &h.counit(&u)?,
            &lift(alg, &[], &target, &u)?,
        ))
    }));
    let eps = |w: &Word| h.unit_counit(w);
    let id = |w: &Word| h.identity(w);
    let s = |w: &Word| h.antipode_word(w);
    let conv_ks: Vec<usize> = ks.iter().copied().filter(|&k| k <= 6).collect();
    out.push(check_all("eps * eps = eps", &conv_ks, |&k| {
        let u = alg.ones(k + 1)?;
        Ok(differ(
            || format!("at k = {k}"),
            &h.convolve(&eps, &eps, &u)?,
            &eps(&Word::ones(alg.base(), k + 1)?)?,
        ))
    }));
    // fill the antipode memo in order before the parallel checks
    h.antipode_kk(config.max_degree).expect("A = k");
    out.push(check_all("S * id = id * S = eps", &ks, |&k| {
        let u = alg.ones(k + 1)?;
        let unit = alg.one().scale(&(-h.mu()).pow(k as u32));
        let left = h.convolve(&s, &id, &u)?;
        let right = h.convolve(&id, &s, &u)?;
        let antipode = h.antipode_kk(k)?;
        Ok(differ(|| format!("S * id at k = {k}"), &left, &unit)
            .or_else(|| differ(|| format!("id * S at k = {k}"), &right, &unit))
            .or_else(|| round_trip_element(alg, &antipode)))
    }));
    let kk_pairs: Vec<(Word, Word)> = (0..=config.max_degree.min(4))
        .flat_map(|m| (0..=config.max_degree.min(4)).map(move |n| (m, n)))
        .map(|(m, n)| (ones[m].clone(), ones[n].clone()))
        .collect();
    out.extend(hopf_pair_checks(&h, &kk_pairs, "A = k"));

    let g = HopfAlgebra::new(BaseAlgebraSpec::new(["x", "y"], true).expect("valid")).expect("bialgebra");
    let max = 4.min(config.max_degree as u32);
    let words = words_up_to_degree(g.algebra().base(), max);
    out.extend(hopf_word_checks(&g, &words, "A = k[x,y]"));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut pairs: Vec<(Word, Word)> = Vec::new();
    let small: Vec<&Word> = words.iter().filter(|w| w.filtration_degree() <= max / 2).collect();
    for _ in 0..config.samples.min(80) {
        let a = (*small.choose(&mut rng).expect("words")).clone();
        let b = (*small.choose(&mut rng).expect("words")).clone();
        pairs.push((a, b));
    }
    out.extend(hopf_pair_checks(&g, &pairs, "A = k[x,y]"));
    out
}

// ---------------------------------------------------------------- delannoy

fn delannoy_checks(_config: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let alg = delannoy::unit_weight_algebra();
    let upto = |n: u32| -> Vec<(u32, u32)> { (0..=n).flat_map(|m| (0..=n - m).map(move |k| (m, k))).collect() };
    out.push(check_all("four-way count agreement", &upto(10), |&(m, n)| {
        let r = delannoy::coefficient_bridge(&alg, m, n)?;
        Ok((!r.agrees()).then(|| r.to_string()))
    }));
    out.push(check_all("enumeration by diagonal count", &upto(10), |&(m, n)| {
        let paths = delannoy::enumerate_colored(m, n)?;
        for r in 0..=m.min(n) {
            let count = paths.iter().filter(|p| p.diagonals() == r as usize).count();
            if BigUint::from(count) != delannoy::count_e(m, n, r)? {
                return Ok(Some(format!("E({m},{n},{r})")));
            }
        }
        if paths.iter().any(|p| p.endpoint() != (m, n)) {
            return Ok(Some(format!("endpoint at ({m},{n})")));
        }
        let mut plain: Vec<_> = paths.iter().map(|p| p.uncolored()).collect();
        plain.sort();
        plain.dedup();
        Ok((BigUint::from(plain.len()) != delannoy::d_total(m, n)).then(|| format!("uncolored D({m},{n})")))
    }));
    let gf = delannoy::gf_coefficients(GfKind::Colored, 12);
    out.push(check_all("series coefficients match totals", &upto(12), |&(m, n)| {
        let e = BigInt::from(delannoy::e_total(m, n));
        Ok((gf[m as usize][n as usize] != e).then(|| format!("at ({m},{n})")))
    }));
    let table = delannoy::e_table(20);
    let grid: Vec<(usize, usize)> = (0..=20).flat_map(|m| (0..=20).map(move |n| (m, n))).collect();
    out.push(check_all("recurrence, boundary and symmetry", &grid, |&(m, n)| {
        let e = &table[m][n];
        if m == 0 || n == 0 {
            return Ok((*e != BigUint::from(1u32)).then(|| format!("boundary at ({m},{n})")));
        }
        let rec = &table[m - 1][n] + &table[m][n - 1] + (&table[m - 1][n - 1] << 1usize);
        Ok(
            (*e != rec || *e != table[n][m] || *e != delannoy::e_total(m as u32, n as u32))
                .then(|| format!("at ({m},{n})")),
        )
    }));
    out
}

// ---------------------------------------------------------------- operators

fn poly(ctx: &Arc<RingContext>, text: &str) -> ScalarPoly {
    ScalarPoly::parse(ctx, text).expect("static polynomial")
}

fn single(name: &str, report: Result<crate::operators::Report>) -> CheckOutcome {
    let failure = match report {
        Ok(r) if r.passed() => None,
        Ok(r) => Some(r.to_string()),
        Err(e) => Some(format!("error: {e}")),
    };
    CheckOutcome {
        name: name.into(),
        cases: 1,
        failure,
    }
}

fn expect(name: &str, ok: bool, detail: impl FnOnce() -> String) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        cases: 1,
        failure: (!ok).then(detail),
    }
}

/// All checks on the operator gallery. Also used by the CLI `ops` command.
pub fn operator_checks(_config: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let ctx = RingContext::new(["lambda", "kappa", "mu", "a", "b", "c", "d"], false).expect("valid");
    let a = poly(&ctx, "a");
    let b = poly(&ctx, "b");
    let one = poly(&ctx, "1");

    // Jackson operators
    let pol = TruncatedAlgebra::polynomial(24, &ctx).expect("bound");
    let (plus, minus) = jackson_pair(&pol, &integer(2)).expect("q = 2");
    let q = RuleOperator::combine(&plus, &minus, &a, &b).expect("same basis");
    let w_jackson = ErbWeight::new(-(&a + &b), &a * &b).expect("same ring");
    let probes: Vec<Vector> = (1..=12).map(|n| pol.element(n)).collect();
    out.push(single(
        "Jackson aP+ + bP- has weight (-(a+b), ab)",
        verify_erb_identity(&q, &w_jackson, &pol, &probes),
    ));
    let w_rb = ErbWeight::new(poly(&ctx, "-1"), poly(&ctx, "0")).expect("same ring");
    let probes10: Vec<Vector> = (1..=10).map(|n| pol.element(n)).collect();
    out.push(single(
        "Jackson pair is compatible",
        compatibility_check(
            &plus,
            &minus,
            &w_rb,
            &w_rb,
            &CompatConstants::adjoint_pair(&w_rb),
            &pol,
            &probes10,
        ),
    ));
    out.push(expect(
        "adjoint of P+ at lambda = -1 is P-",
        plus.adjoint(&poly(&ctx, "-1")).same_action(&minus),
        || "adj(P+) != P-".into(),
    ));
    out.push(single(
        "zero operator has weight (lambda, 0)",
        verify_erb_identity(
            &plus.zero_like(&ctx),
            &ErbWeight::new(poly(&ctx, "lambda"), poly(&ctx, "0")).expect("ring"),
            &pol,
            &probes,
        ),
    ));
    out.push(expect(
        "Jackson images",
        (1..=12).all(|n| {
            let qn = num_traits::pow(integer(2), n as usize);
            let denom = (integer(1) - &qn).recip();
            let want = pol.element(n).scale(&(&a - &b.scale(&qn)).scale(&denom));
            q.image(n).ok() == Some(&want)
        }),
        || "Q(x^n) differs from (a - q^n b) x^n / (1 - q^n)".into(),
    ));

    // Laurent splitting
    let lau = TruncatedAlgebra::laurent(6, &ctx).expect("bound");
    let (lp, lm) = laurent_split(&lau).expect("window");
    let lq = RuleOperator::combine(&lp, &lm, &a, &b).expect("same basis");
    let lprobes: Vec<Vector> = (-3..=3).map(|n| lau.element(n)).collect();
    out.push(single(
        "Laurent aP+ + bP- has weight (-(a+b), ab)",
        verify_erb_identity(&lq, &w_jackson, &lau, &lprobes),
    ));

    // falling factorials
    let ff = TruncatedAlgebra::falling_factorial(16, &ctx).expect("bound");
    let fq = falling_factorial_op(&ff, &a, &b).expect("basis");
    let fprobes: Vec<Vector> = (0..=6).map(|k| ff.element(k)).collect();
    let w_ff = ErbWeight::new(&a + &b, &a * &b).expect("same ring");
    out.push(single(
        "falling-factorial Q has weight (a+b, ab)",
        verify_erb_identity(&fq, &w_ff, &ff, &fprobes),
    ));
    let shift = falling_factorial_op(&ff, &one, &poly(&ctx, "0")).expect("basis");
    let w_one = ErbWeight::new(one.clone(), poly(&ctx, "0")).expect("same ring");
    out.push(single(
        "falling-factorial shift is Rota-Baxter of weight 1",
        verify_erb_identity(&shift, &w_one, &ff, &fprobes),
    ));
    let q21 = RuleOperator::combine(&shift, &shift.adjoint(&one), &poly(&ctx, "2"), &one).expect("same basis");
    out.push(single(
        "roots (2, 1) give weight (3, 2)",
        verify_erb_identity(
            &q21,
            &ErbWeight::new(poly(&ctx, "3"), poly(&ctx, "2")).expect("ring"),
            &ff,
            &fprobes,
        ),
    ));
    let closed_form_ok = (0..=6).all(|k| {
        // t_k ((a-b) x - a k - b) / (k+1), with x = t_1 and 1 = t_0
        let mut factor = Vector::term(1, &a - &b);
        factor.add_term(0, -(&a.scale(&integer(k)) + &b));
        let Ok(prod) = ff.mul(&ff.element(k), &factor) else {
            return false;
        };
        fq.image(k).ok() == Some(&prod.scale_rational(&Rational::new(1.into(), (k + 1).into())))
    });
    out.push(expect("falling-factorial Q in closed form", closed_form_ok, || {
        "Q(t_k) differs from t_k((a-b)x - ak - b)/(k+1)".into()
    }));

    // adjoint and scaling on a symbolic ERB operator of weight (lambda, kappa):
    // P = c P+ + d P- on Laurent polynomials, lambda = -(c+d), kappa = cd
    let c = poly(&ctx, "c");
    let d = poly(&ctx, "d");
    let p = RuleOperator::combine(&lp, &lm, &c, &d).expect("same basis");
    let w = ErbWeight::new(-(&c + &d), &c * &d).expect("same ring");
    let adj = p.adjoint(&w.lambda);
    out.push(expect(
        "adjoint is an involution",
        adj.adjoint(&w.lambda).same_action(&p),
        || "adj(adj(P)) != P".into(),
    ));
    out.push(single(
        "P has weight (lambda, kappa)",
        verify_erb_identity(&p, &w, &lau, &lprobes),
    ));
    out.push(single(
        "adjoint has the same weight",
        verify_erb_identity(&adj, &w, &lau, &lprobes),
    ));
    let mu = poly(&ctx, "mu");
    let scaled_w = ErbWeight::new(&w.lambda * &mu, &w.kappa * &(&mu * &mu)).expect("same ring");
    out.push(single(
        "mu P has weight (lambda mu, kappa mu^2)",
        verify_erb_identity(&p.scale(&mu), &scaled_w, &lau, &lprobes),
    ));
    let consts = CompatConstants::adjoint_pair(&w);
    out.push(single(
        "P and its adjoint are compatible",
        compatibility_check(&p, &adj, &w, &w, &consts, &lau, &lprobes),
    ));
    let combo = RuleOperator::combine(&p, &adj, &a, &b).expect("same basis");
    let predicted = predicted_weight(&w, &w, &a, &b, &consts.gamma12, &consts.gamma21).expect("same ring");
    let expected = ErbWeight::new(
        &w.lambda * &(&a + &b),
        &(&a * &b) * &(&w.lambda * &w.lambda) + &(&(&a - &b) * &(&a - &b)) * &w.kappa,
    )
    .expect("same ring");
    out.push(expect(
        "predicted weight of aP + b adj(P)",
        predicted == expected,
        || format!("{predicted} != {expected}"),
    ));
    out.push(single(
        "aP + b adj(P) has the predicted weight",
        verify_erb_identity(&combo, &expected, &lau, &lprobes),
    ));
    let w_rb_lau = ErbWeight::new(poly(&ctx, "-1"), poly(&ctx, "0")).expect("ring");
    let rb_combo = RuleOperator::combine(&lp, &lp.adjoint(&w_rb_lau.lambda), &a, &b).expect("same basis");
    out.push(single(
        "Rota-Baxter P gives aP + b adj(P) of weight (lambda(a+b), ab lambda^2)",
        verify_erb_identity(
            &rb_combo,
            &ErbWeight::new(-(&a + &b), &a * &b).expect("ring"),
            &lau,
            &lprobes,
        ),
    ));
    out.push(single(
        "(P, P) compatible with alpha = lambda when P is Rota-Baxter",
        compatibility_check(
            &lp,
            &lp,
            &w_rb_lau,
            &w_rb_lau,
            &CompatConstants {
                alpha12: poly(&ctx, "-1"),
                beta12: poly(&ctx, "0"),
                gamma12: poly(&ctx, "0"),
                alpha21: poly(&ctx, "-1"),
                beta21: poly(&ctx, "0"),
                gamma21: poly(&ctx, "0"),
            },
            &lau,
            &lprobes,
        ),
    ));

    // scalar operators
    let lambda = poly(&ctx, "lambda");
    let small = TruncatedAlgebra::polynomial(8, &ctx).expect("bound");
    let sprobes: Vec<Vector> = (0..=4).map(|n| small.element(n)).collect();
    let mu_id = RuleOperator::scalar_op("mu*id", &small, small.basis().labels(), &mu);
    out.push(single(
        "mu id has weight (lambda, -mu^2 - mu lambda)",
        verify_erb_identity(
            &mu_id,
            &ErbWeight::new(lambda.clone(), -(&mu * &mu) - &mu * &lambda).expect("ring"),
            &small,
            &sprobes,
        ),
    ));
    let id = RuleOperator::identity(&small);
    out.push(single(
        "id has weight (lambda, -1 - lambda)",
        verify_erb_identity(
            &id,
            &ErbWeight::new(lambda.clone(), poly(&ctx, "-1 - lambda")).expect("ring"),
            &small,
            &sprobes,
        ),
    ));
    let inferred = infer_weight(&id, &small, &sprobes);
    out.push(expect(
        "inferred weights of id form the line kappa = -1 - lambda",
        matches!(&inferred, Ok(WeightSolution::Line { point, direction })
            if point == &["-1".to_string(), "0".to_string()] && direction == &["-1".to_string(), "1".to_string()]),
        || format!("{inferred:?}"),
    ));
    let (jp, _) = jackson_pair(&small, &integer(2)).expect("q = 2");
    let jprobes = vec![small.element(1), small.element(2)];
    let inferred = infer_weight(&jp, &small, &jprobes);
    out.push(expect(
        "inferred weight of P+ is unique",
        inferred
            == Ok(WeightSolution::Unique {
                lambda: "-1".into(),
                kappa: "0".into(),
            }),
        || format!("{inferred:?}"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_listing_by_degree() {
        let spec = BaseAlgebraSpec::new(["x"], true).unwrap();
        let words = words_up_to_degree(&spec, 2);
        // [1], [x], [x^2], [1|1], [1|x], [x|1], [1|1|1]
        assert_eq!(words.len(), 7);
        assert!(words.iter().all(|w| w.filtration_degree() <= 2));
    }

    #[test]
    fn suites_pass_on_small_bounds() {
        let config = VerifyConfig {
            max_degree: 3,
            seed: 7,
            samples: 20,
        };
        for suite in [Suite::Scalar, Suite::Base, Suite::Shuffle, Suite::Hopf] {
            let report = run_suite(suite, &config);
            assert!(report.passed(), "{report}");
        }
    }
}
