//! Coefficient sequences and the quantities read directly off them.
//!
//! A [`CoefficientSequence`] is a lazy rule `n ↦ c_n` with an optional explicit
//! prefix that overrides the rule on the first indices. Values are memoized
//! contiguously and validated against `(0,1)` when first computed, so an
//! inadmissible construction fails at the offending index rather than at
//! construction time.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{checked_div, int, pow, rat, Rational};

/// Which of the two interleavings of `s_n` and `1 - s_n` builds `c_n`.
///
/// `First`: `c_n = 1 - s_n` for odd `n`, `c_n = s_n` for even `n`.
/// `Second`: `c_n = s_n` for odd `n`, `c_n = 1 - s_n` for even `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    First,
    Second,
}

impl Variant {
    pub fn flipped(self) -> Self {
        match self {
            Variant::First => Variant::Second,
            Variant::Second => Variant::First,
        }
    }
}

/// Closed-form rules for the auxiliary sequence `s_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum SRule {
    /// `s_n = 1 / base^n`.
    InversePower { base: u64 },
    /// `s_n = 1 / (n + shift)!`.
    Factorial { shift: u64 },
    /// `s_n = lead / ratio^(n-1)`.
    Geometric { lead: Rational, ratio: u64 },
    /// `s_1 = K² / ((2+ε)K² - (1+ε))`, `s_n = 1/K^n` for `n ≥ 2`.
    HaarEps { eps: Rational, k: u64 },
    /// A finite list `s_1, s_2, ...`.
    Explicit(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SSequence {
    rule: SRule,
}

impl SSequence {
    pub fn new(rule: SRule) -> Self {
        Self { rule }
    }

    pub fn inverse_power(base: u64) -> Self {
        Self::new(SRule::InversePower { base })
    }

    pub fn factorial(shift: u64) -> Self {
        Self::new(SRule::Factorial { shift })
    }

    pub fn geometric(lead: Rational, ratio: u64) -> Self {
        Self::new(SRule::Geometric { lead, ratio })
    }

    pub fn haar_eps(eps: Rational, k: u64) -> Self {
        Self::new(SRule::HaarEps { eps, k })
    }

    pub fn explicit(values: Vec<Rational>) -> Self {
        Self::new(SRule::Explicit(values))
    }

    pub fn rule(&self) -> &SRule {
        &self.rule
    }

    /// The raw value `s_n`, without the `(0,1)` check.
    pub fn value(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::IndexOutOfRange { quantity: "s", index: 0 });
        }
        let exp = n as u32;
        match &self.rule {
            SRule::InversePower { base } => {
                checked_div(&int(1), &pow(&Rational::from_integer(BigInt::from(*base)), exp))
            }
            SRule::Factorial { shift } => {
                let top = n as u64 + shift;
                let fact: BigInt = (1..=top).map(BigInt::from).product();
                Ok(Rational::new(BigInt::one(), fact))
            }
            SRule::Geometric { lead, ratio } => {
                let denom = pow(&Rational::from_integer(BigInt::from(*ratio)), exp - 1);
                checked_div(lead, &denom)
            }
            SRule::HaarEps { eps, k } => {
                let k = Rational::from_integer(BigInt::from(*k));
                if n == 1 {
                    let k2 = &k * &k;
                    let denom = (int(2) + eps) * &k2 - (int(1) + eps);
                    checked_div(&k2, &denom)
                } else {
                    checked_div(&int(1), &pow(&k, exp))
                }
            }
            SRule::Explicit(values) => values.get(n - 1).cloned().ok_or(Error::PrefixExhausted {
                quantity: "s",
                index: n,
                len: values.len(),
            }),
        }
    }

    /// `s_n`, required to lie in `(0,1)`.
    pub fn get(&self, n: usize) -> Result<Rational> {
        let value = self.value(n)?;
        if in_unit_interval(&value) {
            Ok(value)
        } else {
            Err(Error::DomainViolation { quantity: "s", index: n, value })
        }
    }

    /// `s_1, ..., s_len`, each validated.
    pub fn prefix(&self, len: usize) -> Result<Vec<Rational>> {
        (1..=len).map(|n| self.get(n)).collect()
    }
}

/// Orthonormal-weight data `n ↦ α_n²` from which `c_n` can be recovered.
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaSqRule {
    /// `α_1² = first`, `α_n² = even` for even `n`, `α_n² = odd` for odd `n ≥ 3`.
    Periodic {
        first: Rational,
        even: Rational,
        odd: Rational,
    },
    Explicit(Vec<Rational>),
    /// `α_n²` of an existing sequence.
    Of(CoefficientSequence),
}

impl AlphaSqRule {
    pub fn value(&self, n: usize) -> Result<Rational> {
        match self {
            AlphaSqRule::Periodic { first, even, odd } => Ok(match n {
                0 => return Err(Error::IndexOutOfRange { quantity: "alpha_sq", index: 0 }),
                1 => first.clone(),
                n if n % 2 == 0 => even.clone(),
                _ => odd.clone(),
            }),
            AlphaSqRule::Explicit(values) => {
                if n == 0 {
                    return Err(Error::IndexOutOfRange { quantity: "alpha_sq", index: 0 });
                }
                values.get(n - 1).cloned().ok_or(Error::PrefixExhausted {
                    quantity: "alpha_sq",
                    index: n,
                    len: values.len(),
                })
            }
            AlphaSqRule::Of(seq) => seq.alpha_sq(n),
        }
    }
}

/// The rule behind a [`CoefficientSequence`].
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `c_n ≡ 1/2`.
    Chebyshev,
    /// `c_n ≡ c`.
    Constant(Rational),
    /// `c_{2n-1} = (6n+4)/(9n+9)`, `c_{2n} = (n+1)/(3n+5)`.
    KsCounterexample,
    /// Interleave `s_n` and `1 - s_n` according to `variant`.
    FromS { s: SSequence, variant: Variant },
    /// `c_1 = α_1²`, `c_n = α_n² / (1 - c_{n-1})`.
    FromAlpha(AlphaSqRule),
    /// Only the explicit prefix is defined.
    Explicit,
}

struct Inner {
    family: Family,
    prefix: Vec<Rational>,
    /// `cache[i]` is the unswitched value at index `i + 1`.
    cache: RwLock<Vec<Rational>>,
}

/// A coefficient sequence `n ↦ c_n ∈ (0,1)`, `n ≥ 1`, with `a_n = 1 - c_n`.
///
/// Cloning is cheap and clones share the memo cache.
#[derive(Clone)]
pub struct CoefficientSequence {
    inner: Arc<Inner>,
    switched: bool,
}

impl PartialEq for CoefficientSequence {
    fn eq(&self, other: &Self) -> bool {
        self.switched == other.switched
            && self.inner.family == other.inner.family
            && self.inner.prefix == other.inner.prefix
    }
}

impl fmt::Debug for CoefficientSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientSequence")
            .field("family", &self.inner.family)
            .field("prefix", &self.inner.prefix)
            .field("switched", &self.switched)
            .finish()
    }
}

impl CoefficientSequence {
    pub fn new(family: Family) -> Self {
        Self::with_parts(family, Vec::new(), false)
    }

    fn with_parts(family: Family, prefix: Vec<Rational>, switched: bool) -> Self {
        Self {
            inner: Arc::new(Inner { family, prefix, cache: RwLock::new(Vec::new()) }),
            switched,
        }
    }

    pub fn chebyshev() -> Self {
        Self::new(Family::Chebyshev)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(Family::Constant(c))
    }

    pub fn from_s(s: SSequence, variant: Variant) -> Self {
        Self::new(Family::FromS { s, variant })
    }

    /// A sequence defined only on `1..=values.len()`.
    pub fn explicit(values: Vec<Rational>) -> Self {
        Self::with_parts(Family::Explicit, values, false)
    }

    /// The same rule with `prefix` overriding its first values.
    pub fn with_prefix(&self, prefix: Vec<Rational>) -> Self {
        Self::with_parts(self.inner.family.clone(), prefix, self.switched)
    }

    /// The rule, before the explicit prefix and the switch flag apply.
    pub fn family(&self) -> &Family {
        &self.inner.family
    }

    /// The explicit prefix, in the unswitched orientation.
    pub fn prefix(&self) -> &[Rational] {
        &self.inner.prefix
    }

    /// Whether `c_n` reads as `1 - (rule value)`.
    pub fn is_switched(&self) -> bool {
        self.switched
    }

    /// The sequence with the roles of `a_n` and `c_n` exchanged.
    ///
    /// Families closed under the exchange are rewritten in place (the two
    /// interleavings swap, constants map to their complement), every other
    /// family toggles the switch flag. Either way this is an involution.
    pub fn switch(&self) -> Self {
        let flipped_prefix = || self.inner.prefix.iter().map(|p| int(1) - p).collect();
        match &self.inner.family {
            Family::Chebyshev | Family::Explicit => {
                Self::with_parts(self.inner.family.clone(), flipped_prefix(), self.switched)
            }
            Family::Constant(c) => Self::with_parts(Family::Constant(int(1) - c), flipped_prefix(), self.switched),
            Family::FromS { s, variant } => Self::with_parts(
                Family::FromS { s: s.clone(), variant: variant.flipped() },
                flipped_prefix(),
                self.switched,
            ),
            Family::KsCounterexample | Family::FromAlpha(_) => {
                Self::with_parts(self.inner.family.clone(), self.inner.prefix.clone(), !self.switched)
            }
        }
    }

    fn rule_value(&self, n: usize, prev: Option<&Rational>) -> Result<Rational> {
        if let Some(value) = self.inner.prefix.get(n - 1) {
            return Ok(value.clone());
        }
        match &self.inner.family {
            Family::Chebyshev => Ok(rat(1, 2)),
            Family::Constant(c) => Ok(c.clone()),
            Family::KsCounterexample => {
                let half = ((n + 1) / 2) as i64;
                Ok(if n % 2 == 1 {
                    rat(6 * half + 4, 9 * half + 9)
                } else {
                    rat(half + 1, 3 * half + 5)
                })
            }
            Family::FromS { s, variant } => {
                let s_n = s.value(n)?;
                let odd = n % 2 == 1;
                Ok(match (variant, odd) {
                    (Variant::First, true) | (Variant::Second, false) => int(1) - s_n,
                    _ => s_n,
                })
            }
            Family::FromAlpha(rule) => {
                let alpha_sq = rule.value(n)?;
                match prev {
                    None => Ok(alpha_sq),
                    Some(prev) => checked_div(&alpha_sq, &(int(1) - prev)),
                }
            }
            Family::Explicit => Err(Error::PrefixExhausted {
                quantity: "c",
                index: n,
                len: self.inner.prefix.len(),
            }),
        }
    }

    fn raw(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::IndexOutOfRange { quantity: "c", index: 0 });
        }
        {
            let cache = self.inner.cache.read().unwrap_or_else(|e| e.into_inner());
            if let Some(value) = cache.get(n - 1) {
                return Ok(value.clone());
            }
        }
        let mut cache = self.inner.cache.write().unwrap_or_else(|e| e.into_inner());
        while cache.len() < n {
            let index = cache.len() + 1;
            let value = self.rule_value(index, cache.last())?;
            if !in_unit_interval(&value) {
                // Report in the caller's orientation.
                let value = if self.switched { int(1) - value } else { value };
                return Err(Error::DomainViolation { quantity: "c", index, value });
            }
            cache.push(value);
        }
        Ok(cache[n - 1].clone())
    }

    /// `c_n`, `n ≥ 1`.
    pub fn c(&self, n: usize) -> Result<Rational> {
        let raw = self.raw(n)?;
        Ok(if self.switched { int(1) - raw } else { raw })
    }

    /// `a_n = 1 - c_n`, `n ≥ 1`.
    pub fn a(&self, n: usize) -> Result<Rational> {
        Ok(int(1) - self.c(n)?)
    }

    /// `a_n` extended by `a_0 = 1`.
    fn a_ext(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            Ok(int(1))
        } else {
            self.a(n)
        }
    }

    /// `c_1, ..., c_len`.
    pub fn coefficients(&self, len: usize) -> Result<Vec<Rational>> {
        (1..=len).map(|n| self.c(n)).collect()
    }

    /// Squared orthonormal recurrence weight: `α_1² = c_1`, `α_n² = c_n a_{n-1}`.
    pub fn alpha_sq(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::IndexOutOfRange { quantity: "alpha_sq", index: 0 });
        }
        Ok(self.c(n)? * self.a_ext(n - 1)?)
    }

    /// Haar weight `h(n) = ∏_{k=1}^{n} a_{k-1}/c_k` with `a_0 = 1`.
    pub fn haar(&self, n: usize) -> Result<Rational> {
        let mut h = int(1);
        for k in 1..=n {
            h = h * self.a_ext(k - 1)? / self.c(k)?;
        }
        Ok(h)
    }

    /// `h(0), ..., h(max)`.
    pub fn haar_values(&self, max: usize) -> Result<HaarValues> {
        let mut values = Vec::with_capacity(max + 1);
        values.push(int(1));
        for k in 1..=max {
            let next = &values[k - 1] * self.a_ext(k - 1)? / self.c(k)?;
            values.push(next);
        }
        Ok(HaarValues { values })
    }

    /// `P_n(x)` by the forward recurrence.
    pub fn eval_p(&self, n: usize, x: &Rational) -> Result<Rational> {
        if n == 0 {
            return Ok(int(1));
        }
        let mut prev = int(1);
        let mut cur = x.clone();
        for k in 1..n {
            let next = (x * &cur - self.c(k)? * &prev) / self.a(k)?;
            prev = std::mem::replace(&mut cur, next);
        }
        Ok(cur)
    }

    /// Monomial coefficients of `P_0, ..., P_max`; entry `k` of row `n` is the
    /// coefficient of `x^k` in `P_n`.
    pub fn monomial_basis(&self, max: usize) -> Result<Vec<Vec<Rational>>> {
        let mut rows: Vec<Vec<Rational>> = vec![vec![int(1)]];
        if max >= 1 {
            rows.push(vec![int(0), int(1)]);
        }
        for k in 1..max {
            let (c, a) = (self.c(k)?, self.a(k)?);
            let mut next = vec![Rational::zero(); k + 2];
            for (i, coeff) in rows[k].iter().enumerate() {
                next[i + 1] += coeff;
            }
            for (i, coeff) in rows[k - 1].iter().enumerate() {
                next[i] -= &c * coeff;
            }
            for coeff in &mut next {
                *coeff /= &a;
            }
            rows.push(next);
        }
        Ok(rows)
    }

    /// Monomial coefficients of `P_n` (length `n + 1`).
    pub fn monomial_coeffs(&self, n: usize) -> Result<Vec<Rational>> {
        Ok(self.monomial_basis(n)?.swap_remove(n))
    }

    /// `|P_n(0)|` from the closed form `∏_{k=1}^{n/2} c_{2k-1}/a_{2k-1}` (zero for odd `n`).
    pub fn p_at_zero_abs(&self, n: usize) -> Result<Rational> {
        if n % 2 == 1 {
            return Ok(Rational::zero());
        }
        let mut product = int(1);
        for k in 1..=n / 2 {
            product = product * self.c(2 * k - 1)? / self.a(2 * k - 1)?;
        }
        Ok(product)
    }
}

/// Haar weights `h(0..=max)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HaarValues {
    values: Vec<Rational>,
}

impl HaarValues {
    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.values
    }

    /// Largest index held.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }
}

pub(crate) fn in_unit_interval(value: &Rational) -> bool {
    value.is_positive() && *value < int(1)
}
