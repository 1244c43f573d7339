//! Elements of the bicyclic extension over a family of rays.
//!
//! An element is a triple `(i, j, [p))` where `(i, j)` lives in the bicyclic
//! monoid and `[p) = {x ∈ ω : x ≥ p}` is a member of an ω-closed family of
//! rays. Every non-empty inductive subset of ω is such a ray, so a family
//! is stored as the sorted list of ray starts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// The ray `[start) = {x ∈ ω : x ≥ start}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ray(u64);

impl Ray {
    pub const fn new(start: u64) -> Self {
        Ray(start)
    }

    pub const fn start(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: u64) -> bool {
        x >= self.0
    }

    /// `self ∩ (−shift + other)`, which is again a ray.
    pub fn meet_shifted(self, other: Ray, shift: u64) -> Ray {
        Ray(self.0.max(other.0.saturating_sub(shift)))
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{})", self.0)
    }
}

/// A finite ω-closed family of rays, sorted ascending by start.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    rays: Vec<Ray>,
}

impl Family {
    /// Validates `starts` as an ω-closed family.
    ///
    /// For rays `[a)` and `[b)` the shifted intersection `[a) ∩ (−n + [b))`
    /// is `[max(a, b − n))`, which no longer changes once `n ≥ b`, so only
    /// shifts up to the largest start are examined.
    pub fn from_starts<I>(starts: I) -> Result<Family>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut rays: Vec<Ray> = starts.into_iter().map(Ray).collect();
        if rays.is_empty() {
            return Err(Error::EmptyFamily);
        }
        rays.sort_unstable();
        if let Some(dup) = rays.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateRay(dup[0]));
        }
        let family = Family { rays };
        let max_start = family.rays.last().map_or(0, |r| r.0);
        for &first in &family.rays {
            for &second in &family.rays {
                for shift in 0..=max_start {
                    if !family.contains_ray(first.meet_shifted(second, shift)) {
                        return Err(Error::NotOmegaClosed {
                            first,
                            second,
                            shift,
                        });
                    }
                }
            }
        }
        Ok(family)
    }

    /// The family `{[0), [1), ..., [n−1)}`.
    pub fn canonical(n: u64) -> Result<Family> {
        if n == 0 {
            return Err(Error::EmptyFamily);
        }
        Ok(Family {
            rays: (0..n).map(Ray).collect(),
        })
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains_ray(&self, ray: Ray) -> bool {
        self.rays.binary_search(&ray).is_ok()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.contains_ray(x.ray)
    }

    /// Product of two family members; the result is again a member.
    pub fn mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::NotInFamily { ray: x.ray });
            }
        }
        let product = a.mul(b)?;
        debug_assert!(self.contains(product), "family not closed under product");
        Ok(product)
    }

    /// Natural partial order `a ≼ b`, in closed form.
    ///
    /// `b · (c, c, [q))` keeps `i − j` fixed, never decreases `j`, and
    /// never decreases `p + j`; conversely any such `a` with ray in the
    /// family is reached with `c = a.j` and `q = a.p`.
    pub fn nat_leq(&self, a: Elem, b: Elem) -> bool {
        let diff = |x: Elem| i128::from(x.i) - i128::from(x.j);
        let height = |x: Elem| u128::from(x.ray.0) + u128::from(x.j);
        diff(a) == diff(b) && a.j >= b.j && height(a) >= height(b) && self.contains(a)
    }

    /// Natural partial order straight from the definition: searches for an
    /// idempotent `e = (c, c, [q))` with `a = b · e`. Only `c ≤ max(a.j, b.j)`
    /// can succeed.
    pub fn nat_leq_by_search(&self, a: Elem, b: Elem) -> bool {
        let c_max = a.j.max(b.j);
        (0..=c_max).any(|c| {
            self.rays
                .iter()
                .any(|&q| b.mul(Elem::idempotent(c, q)).is_ok_and(|p| p == a))
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ray in &self.rays {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}", ray.0)?;
        }
        Ok(())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let starts = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u64>().map_err(|_| {
                    Error::InvalidParameter(format!("bad ray start {:?} in family {s:?}", t.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Family::from_starts(starts)
    }
}

/// An element `(i, j, [p))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem {
    pub i: u64,
    pub j: u64,
    #[serde(rename = "p")]
    pub ray: Ray,
}

impl Elem {
    pub const IDENTITY: Elem = Elem::new(0, 0, 0);

    pub const fn new(i: u64, j: u64, p: u64) -> Self {
        Elem { i, j, ray: Ray(p) }
    }

    pub const fn idempotent(c: u64, ray: Ray) -> Self {
        Elem { i: c, j: c, ray }
    }

    pub const fn p(self) -> u64 {
        self.ray.0
    }

    pub fn is_idempotent(self) -> bool {
        self.i == self.j
    }

    /// The semigroup product.
    // Not `std::ops::Mul`: the product is fallible on overflow.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Elem) -> Result<Elem> {
        use std::cmp::Ordering::*;
        match self.j.cmp(&rhs.i) {
            Less => self.mul_descending(rhs),
            Greater => self.mul_ascending(rhs),
            Equal => {
                let product = self.mul_descending(rhs)?;
                debug_assert_eq!(Ok(product), self.mul_ascending(rhs));
                Ok(product)
            }
        }
    }

    // j₁ ≤ i₂: (i₁ − j₁ + i₂, j₂, (j₁ − i₂ + F₁) ∩ F₂)
    fn mul_descending(self, rhs: Elem) -> Result<Elem> {
        debug_assert!(self.j <= rhs.i);
        let i = self
            .i
            .checked_add(rhs.i - self.j)
            .ok_or(Error::Overflow("product"))?;
        let ray = Ray(self.ray.0.saturating_sub(rhs.i - self.j).max(rhs.ray.0));
        Ok(Elem { i, j: rhs.j, ray })
    }

    // j₁ ≥ i₂: (i₁, j₁ − i₂ + j₂, F₁ ∩ (i₂ − j₁ + F₂))
    fn mul_ascending(self, rhs: Elem) -> Result<Elem> {
        debug_assert!(self.j >= rhs.i);
        let j = (self.j - rhs.i)
            .checked_add(rhs.j)
            .ok_or(Error::Overflow("product"))?;
        let ray = Ray(self.ray.0.max(rhs.ray.0.saturating_sub(self.j - rhs.i)));
        Ok(Elem { i: self.i, j, ray })
    }

    pub fn inverse(self) -> Elem {
        Elem {
            i: self.j,
            j: self.i,
            ray: self.ray,
        }
    }

    /// Two elements are D-related exactly when their rays coincide.
    pub fn d_related(self, other: Elem) -> bool {
        self.ray == other.ray
    }

    /// `(i, j, [p)) ↦ (i, j, [p − s))`, the isomorphism from the rays
    /// `[s), ..., [t)` onto `[0), ..., [t − s)`.
    pub fn shift_down(self, s: u64) -> Result<Elem> {
        let p = self.ray.0.checked_sub(s).ok_or(Error::RayUnderflow {
            elem: self,
            shift: s,
        })?;
        Ok(Elem {
            ray: Ray(p),
            ..self
        })
    }

    /// Membership in the corner `(m,m,[0)) · S · (m,m,[0))`, which is the
    /// image of `λ^m`.
    pub fn in_corner(self, m: u64) -> bool {
        self.i >= m && self.j >= m
    }

    /// `(m,m,[0)) · self · (m,m,[0))`.
    pub fn sandwich(self, m: u64) -> Result<Elem> {
        let e = Elem::idempotent(m, Ray(0));
        e.mul(self)?.mul(e)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.ray.0)
    }
}

impl FromStr for Elem {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Elem, ParseError> {
        let err = || ParseError::new(s, "element (i,j,p)");
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(err)?;
        let mut parts = inner.split(',');
        let mut next = || -> std::result::Result<u64, ParseError> {
            let part = parts.next().ok_or_else(err)?;
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            part.parse().map_err(|_| err())
        };
        let (i, j, p) = (next()?, next()?, next()?);
        if parts.next().is_some() {
            return Err(err());
        }
        Ok(Elem::new(i, j, p))
    }
}

/// The finite truncation `{(i, j, R) : i, j ≤ bound, R ∈ family}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub bound: u64,
}

impl Window {
    pub const fn new(bound: u64) -> Self {
        Window { bound }
    }

    pub fn contains(self, x: Elem) -> bool {
        x.i <= self.bound && x.j <= self.bound
    }

    /// Number of elements over a family of `rays` members.
    pub fn size(self, rays: usize) -> usize {
        let side = self.bound as usize + 1;
        side * side * rays
    }

    /// Enumerates the window in `(i, j, p)` lexicographic order.
    pub fn elements(self, family: &Family) -> impl Iterator<Item = Elem> + '_ {
        let bound = self.bound;
        (0..=bound).flat_map(move |i| {
            (0..=bound).flat_map(move |j| family.rays().iter().map(move |&ray| Elem { i, j, ray }))
        })
    }

    pub fn collect(self, family: &Family) -> Vec<Elem> {
        self.elements(family).collect()
    }
}
