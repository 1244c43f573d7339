//! Injective endomorphisms of the three-ray extension and their normal forms.
//!
//! Maps act on the right and compose diagrammatically: `f ∘ g` applies `f`
//! first, then `g`. Every classified injective endomorphism is written as
//! `α₍ₖ₎ ∘ λ^m ∘ ϖ₃^w` and stored as the triple `(k, m, w)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::semigroup::{Elem, Ray};

/// Number of rays in the family the normal forms act on.
pub const LAYERS: u64 = 3;

/// Generator maps, each evaluated straight from its defining formula.
pub mod generators {
    use super::*;

    fn shifted(x: Elem, by: u64, ray: Ray) -> Result<Elem> {
        let i =
            x.i.checked_add(by)
                .ok_or(Error::Overflow("generator image"))?;
        let j =
            x.j.checked_add(by)
                .ok_or(Error::Overflow("generator image"))?;
        Ok(Elem { i, j, ray })
    }

    /// `λ: (i, j, [p)) ↦ (i+1, j+1, [p))`, on any family `{[0), ..., [n−1)}`.
    pub fn lambda(x: Elem) -> Result<Elem> {
        shifted(x, 1, x.ray)
    }

    pub fn lambda_pow(x: Elem, m: u64) -> Result<Elem> {
        shifted(x, m, x.ray)
    }

    /// `ϖₙ: (i, j, [p)) ↦ (i+p, j+p, [n−1−p))`.
    pub fn varpi(x: Elem, n: u64) -> Result<Elem> {
        let p = x.p();
        if p >= n {
            return Err(Error::UnsupportedFamily { elem: x, layers: n });
        }
        shifted(x, p, Ray::new(n - 1 - p))
    }

    /// `α₍ₖ₎`, the injective monoid endomorphism with multiplier `k` on
    /// `{[0), [1), [2)}`: scales `(i, j)` by `k` on the two lower rays and
    /// `(i+1, j+1)` by `k` on `[2)`.
    pub fn alpha(x: Elem, k: u64) -> Result<Elem> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "alpha multiplier must be positive".into(),
            ));
        }
        let scale = |v: u64, lift: u64| -> Result<u64> {
            v.checked_add(lift)
                .and_then(|v| v.checked_mul(k))
                .map(|v| v - lift)
                .ok_or(Error::Overflow("alpha image"))
        };
        match x.p() {
            0 | 1 => Ok(Elem {
                i: scale(x.i, 0)?,
                j: scale(x.j, 0)?,
                ray: x.ray,
            }),
            2 => Ok(Elem {
                i: scale(x.i, 1)?,
                j: scale(x.j, 1)?,
                ray: x.ray,
            }),
            _ => Err(Error::UnsupportedFamily {
                elem: x,
                layers: LAYERS,
            }),
        }
    }
}

/// The endomorphism `α₍ₖ₎ ∘ λ^m ∘ ϖ₃^w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawNormalForm")]
pub struct NormalForm {
    k: u64,
    m: u64,
    w: u8,
}

#[derive(Deserialize)]
struct RawNormalForm {
    k: u64,
    m: u64,
    w: u64,
}

impl TryFrom<RawNormalForm> for NormalForm {
    type Error = Error;

    fn try_from(raw: RawNormalForm) -> Result<Self> {
        NormalForm::new(raw.k, raw.m, raw.w)
    }
}

impl NormalForm {
    pub const IDENTITY: NormalForm = NormalForm { k: 1, m: 0, w: 0 };
    pub const LAMBDA: NormalForm = NormalForm { k: 1, m: 1, w: 0 };
    pub const VARPI: NormalForm = NormalForm { k: 1, m: 0, w: 1 };

    pub fn new(k: u64, m: u64, w: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if w > 1 {
            return Err(Error::InvalidParameter(format!(
                "w must be 0 or 1, got {w}"
            )));
        }
        Ok(NormalForm { k, m, w: w as u8 })
    }

    pub fn alpha(k: u64) -> Result<Self> {
        NormalForm::new(k, 0, 0)
    }

    pub fn lambda_pow(m: u64) -> Self {
        NormalForm { k: 1, m, w: 0 }
    }

    pub fn k(self) -> u64 {
        self.k
    }

    pub fn m(self) -> u64 {
        self.m
    }

    pub fn w(self) -> u64 {
        u64::from(self.w)
    }

    /// Whether the trailing layer reversal `ϖ₃` is present.
    pub fn reverses(self) -> bool {
        self.w == 1
    }

    /// Closed-form image of `x`.
    ///
    /// Every case is `(k·i + c, k·j + c, [q))` with `c` and `q` depending on
    /// the input layer and on `w`.
    pub fn apply(self, x: Elem) -> Result<Elem> {
        let (k, m) = (self.k, self.m);
        let (offset, ray) = match (self.reverses(), x.p()) {
            (false, p @ (0 | 1)) => (Some(m), p),
            (false, 2) => (m.checked_add(k - 1), 2),
            (true, 0) => (Some(m), 2),
            (true, 1) => (m.checked_add(1), 1),
            (true, 2) => (m.checked_add(k).and_then(|v| v.checked_add(1)), 0),
            _ => {
                return Err(Error::UnsupportedFamily {
                    elem: x,
                    layers: LAYERS,
                })
            }
        };
        let offset = offset.ok_or(Error::Overflow("normal form image"))?;
        let coord = |v: u64| {
            v.checked_mul(k)
                .and_then(|v| v.checked_add(offset))
                .ok_or(Error::Overflow("normal form image"))
        };
        let image = Elem::new(coord(x.i)?, coord(x.j)?, ray);
        #[cfg(debug_assertions)]
        debug_assert_eq!(
            Ok(image),
            self.apply_stepwise(x),
            "closed form disagrees for {self} at {x}"
        );
        Ok(image)
    }

    /// Image of `x` obtained by running `α₍ₖ₎`, then `λ` `m` times, then `ϖ₃`
    /// if `w = 1`.
    pub fn apply_stepwise(self, x: Elem) -> Result<Elem> {
        let mut y = generators::alpha(x, self.k)?;
        for _ in 0..self.m {
            y = generators::lambda(y)?;
        }
        if self.reverses() {
            y = generators::varpi(y, LAYERS)?;
        }
        Ok(y)
    }

    /// `self ∘ g`: apply `self`, then `g`.
    ///
    /// Moving the trailing `ϖ₃` of `self` past `α₍ₖ₂₎` uses
    /// `ϖ₃ ∘ α₍ₖ₎ = α₍ₖ₎ ∘ ϖ₃ ∘ λ^(k−1)`, and two reversals collapse
    /// to `λ²`.
    pub fn compose(self, g: NormalForm) -> Result<NormalForm> {
        let overflow = || Error::Overflow("composition");
        let k = self.k.checked_mul(g.k).ok_or_else(overflow)?;
        let base =
            g.k.checked_mul(self.m)
                .and_then(|v| v.checked_add(g.m))
                .ok_or_else(overflow)?;
        let (m, w) = match (self.reverses(), g.reverses()) {
            (false, false) => (Some(base), 0),
            (false, true) => (Some(base), 1),
            (true, false) => (base.checked_add(g.k - 1), 1),
            (true, true) => (base.checked_add(g.k).and_then(|v| v.checked_add(1)), 0),
        };
        Ok(NormalForm {
            k,
            m: m.ok_or_else(overflow)?,
            w,
        })
    }

    /// The composite obtained if `ϖ₃` is commuted past `α₍ₖ₎` at the cost of
    /// `λ^k` rather than `λ^(k−1)`. This is not a valid composition law when
    /// `self` reverses layers: its λ-exponent then exceeds the true one by
    /// exactly 1. Kept so that the discrepancy can be tested.
    pub fn compose_with_unit_overshoot(self, g: NormalForm) -> Result<NormalForm> {
        if !self.reverses() {
            return self.compose(g);
        }
        // α₍ₖ₁₎λ^m₁ϖ₃ ∘ α₍ₖ₂₎λ^m₂ϖ₃^w  ->  α₍ₖ₁ₖ₂₎ λ^(k₂m₁ + k₂ + m₂) ϖ₃ ϖ₃^w, with ϖ₃² = λ²
        let overflow = || Error::Overflow("composition");
        let k = self.k.checked_mul(g.k).ok_or_else(overflow)?;
        let m =
            g.k.checked_mul(self.m)
                .and_then(|v| v.checked_add(g.k))
                .and_then(|v| v.checked_add(g.m))
                .and_then(|v| v.checked_add(if g.reverses() { 2 } else { 0 }))
                .ok_or_else(overflow)?;
        Ok(NormalForm { k, m, w: 1 - g.w })
    }

    /// Image in `(ℕ,·) ⋉ (ω,+)`; only defined without the layer reversal.
    pub fn to_sd(self) -> Result<SdPair> {
        if self.reverses() {
            return Err(Error::NotInSubmonoid {
                k: self.k,
                m: self.m,
            });
        }
        Ok(SdPair {
            k: self.k,
            m: self.m,
        })
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}.l{}.w{}", self.k, self.m, self.w)
    }
}

impl FromStr for NormalForm {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let err = || ParseError::new(s, "normal form a<k>.l<m>.w<w> with k >= 1, w in {0,1}");
        let mut parts = s.trim().split('.');
        let mut field = |prefix: char| -> std::result::Result<u64, ParseError> {
            let digits = parts
                .next()
                .and_then(|p| p.strip_prefix(prefix))
                .ok_or_else(err)?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            digits.parse().map_err(|_| err())
        };
        let (k, m, w) = (field('a')?, field('l')?, field('w')?);
        if parts.next().is_some() {
            return Err(err());
        }
        NormalForm::new(k, m, w).map_err(|_| err())
    }
}

/// Element `(k, m)` of `(ℕ,·) ⋉ (ω,+)` with `ℕ` acting by multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SdPair {
    pub k: u64,
    pub m: u64,
}

impl SdPair {
    pub const IDENTITY: SdPair = SdPair { k: 1, m: 0 };

    pub fn new(k: u64, m: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Ok(SdPair { k, m })
    }

    /// `(k₁, m₁)(k₂, m₂) = (k₁k₂, k₂m₁ + m₂)`.
    // Not `std::ops::Mul`: the product is fallible on overflow.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: SdPair) -> Result<SdPair> {
        let k = self.k.checked_mul(rhs.k);
        let m = rhs.k.checked_mul(self.m).and_then(|v| v.checked_add(rhs.m));
        match (k, m) {
            (Some(k), Some(m)) => Ok(SdPair { k, m }),
            _ => Err(Error::Overflow("semidirect product")),
        }
    }

    pub fn to_normal_form(self) -> NormalForm {
        NormalForm {
            k: self.k,
            m: self.m,
            w: 0,
        }
    }
}

impl fmt::Display for SdPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.m)
    }
}

impl FromStr for SdPair {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let err = || ParseError::new(s, "pair (k,m) with k >= 1");
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(err)?;
        let (k, m) = inner.split_once(',').ok_or_else(err)?;
        let num = |t: &str| {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            t.parse::<u64>().map_err(|_| err())
        };
        SdPair::new(num(k)?, num(m)?).map_err(|_| err())
    }
}
