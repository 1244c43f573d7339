//! Brute-force oracles over finite windows.
//!
//! A window check can only show that a table is *consistent with* a law on
//! the sampled elements; it never certifies the law globally. Reports are
//! worded accordingly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::endo::NormalForm;
use crate::error::{Error, Result};
use crate::semigroup::{Elem, Window};
use crate::three_rays;

/// Counterexample lists keep at most this many entries.
pub const MAX_COUNTEREXAMPLES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

impl Counterexample {
    pub fn new(
        inputs: impl fmt::Display,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        Counterexample {
            inputs: inputs.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

/// Outcome of one named law checked over a parameter grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub grid: String,
    pub status: Status,
    pub checks: u64,
    /// Total number of failed checks; `counterexamples` may be truncated.
    pub violations: u64,
    pub counterexamples: Vec<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(
            f,
            "{status} {} [{}] checks={}",
            self.suite, self.grid, self.checks
        )?;
        if self.violations > 0 {
            write!(f, " violations={}", self.violations)?;
            for c in &self.counterexamples {
                write!(
                    f,
                    "\n    {}: expected {}, got {}",
                    c.inputs, c.expected, c.actual
                )?;
            }
        }
        if let Some(note) = &self.note {
            write!(f, "\n    note: {note}")?;
        }
        Ok(())
    }
}

/// Accumulates checks for a [`Report`].
#[derive(Debug)]
pub struct ReportBuilder {
    suite: String,
    grid: String,
    checks: u64,
    violations: u64,
    counterexamples: Vec<Counterexample>,
    note: Option<String>,
}

impl ReportBuilder {
    pub fn new(suite: impl Into<String>, grid: impl Into<String>) -> Self {
        ReportBuilder {
            suite: suite.into(),
            grid: grid.into(),
            checks: 0,
            violations: 0,
            counterexamples: Vec::new(),
            note: None,
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records one check; `witness` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        self.checks += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn check_eq<T>(&mut self, inputs: impl fmt::Display, expected: &T, actual: &T)
    where
        T: PartialEq + fmt::Debug,
    {
        self.check(expected == actual, || {
            Counterexample::new(inputs, format!("{expected:?}"), format!("{actual:?}"))
        });
    }

    fn fail(&mut self, witness: Counterexample) {
        self.violations += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(witness);
        }
    }

    pub fn finish(self) -> Report {
        Report {
            status: if self.violations == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            suite: self.suite,
            grid: self.grid,
            checks: self.checks,
            violations: self.violations,
            counterexamples: self.counterexamples,
            note: self.note,
        }
    }
}

/// An explicit self-map of the three-ray extension restricted to a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatedEndo {
    bound: u64,
    table: BTreeMap<Elem, Elem>,
}

impl TabulatedEndo {
    /// Builds a table from `(x, image)` pairs, requiring exactly one entry for
    /// every element of `Window(bound)` and images on the three rays.
    pub fn from_entries<I>(bound: u64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Elem, Elem)>,
    {
        let fam = three_rays();
        let window = Window::new(bound);
        let mut table = BTreeMap::new();
        for (index, (x, fx)) in entries.into_iter().enumerate() {
            let reason = if !fam.contains(x) || !window.contains(x) {
                Some(format!(
                    "key {x} is outside Window({bound}) over rays 0,1,2"
                ))
            } else if !fam.contains(fx) {
                Some(format!(
                    "image {fx} has ray start {}, expected 0, 1 or 2",
                    fx.p()
                ))
            } else if table.insert(x, fx).is_some() {
                Some(format!("duplicate key {x}"))
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Error::MalformedEntry { index, reason });
            }
        }
        let missing: Vec<Elem> = window
            .elements(&fam)
            .filter(|x| !table.contains_key(x))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingEntry { keys: missing });
        }
        Ok(TabulatedEndo { bound, table })
    }

    pub fn from_fn(bound: u64, mut f: impl FnMut(Elem) -> Result<Elem>) -> Result<Self> {
        let fam = three_rays();
        let table = Window::new(bound)
            .elements(&fam)
            .map(|x| Ok((x, f(x)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(TabulatedEndo { bound, table })
    }

    pub fn domain_bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get(&self, x: Elem) -> Option<Elem> {
        self.table.get(&x).copied()
    }

    /// Entries in ascending key order.
    pub fn entries(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.table.iter().map(|(&x, &fx)| (x, fx))
    }

    fn at(&self, x: Elem) -> Result<Elem> {
        self.get(x).ok_or_else(|| Error::NotClassifiable {
            reason: format!("no table entry for {x}"),
        })
    }
}

/// `table[x] = f(x)` on `Window(bound)`.
pub fn tabulate(f: NormalForm, bound: u64) -> Result<TabulatedEndo> {
    TabulatedEndo::from_fn(bound, |x| f.apply(x))
}

/// Checks `T[x·y] = T[x]·T[y]` for all `x, y` in `Window(window)`.
///
/// Products of window elements have coordinates up to `2·window`, so the
/// table must cover that range.
pub fn verify_homomorphism(t: &TabulatedEndo, window: u64) -> Result<Report> {
    let needed = window.checked_mul(2).ok_or(Error::Overflow("window"))?;
    if needed > t.bound {
        return Err(Error::DomainTooSmall {
            bound: t.bound,
            window,
            needed,
        });
    }
    let fam = three_rays();
    let elems = Window::new(window).collect(&fam);
    let mut report = ReportBuilder::new(
        "homomorphism",
        format!(
            "pairs from Window({window}), table domain Window({})",
            t.bound
        ),
    )
    .note("pass means consistent with a homomorphism on the sampled pairs");
    for &x in &elems {
        for &y in &elems {
            let lhs = x.mul(y).and_then(|xy| t.at(xy));
            let rhs = t.at(x).and_then(|fx| fx.mul(t.at(y)?));
            report.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
                Counterexample::new(format!("x={x}, y={y}"), show(&rhs), show(&lhs))
            });
        }
    }
    Ok(report.finish())
}

fn show(r: &Result<Elem>) -> String {
    match r {
        Ok(e) => e.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Checks that the table values are pairwise distinct.
pub fn verify_injective(t: &TabulatedEndo) -> Report {
    let mut report = ReportBuilder::new("injective", format!("Window({})", t.bound));
    let mut seen: BTreeMap<Elem, Elem> = BTreeMap::new();
    for (x, fx) in t.entries() {
        let clash = seen.insert(fx, x);
        report.check(clash.is_none(), || {
            Counterexample::new(
                format!("{} and {x}", clash.unwrap()),
                "distinct images",
                format!("both map to {fx}"),
            )
        });
    }
    report.finish()
}

/// Recovers the normal form `(k, m, w)` whose restriction is `t`.
///
/// The image of the identity `(0,0,[0))` is `(m,m,[0))` when `w = 0` and
/// `(m,m,[2))` when `w = 1`; the image of `(1,0,[0))` is `(k+m, m, ·)` in
/// both cases. The candidate is then checked against every table entry.
pub fn decompose(t: &TabulatedEndo) -> Result<NormalForm> {
    if t.bound < 2 {
        return Err(Error::InvalidParameter(format!(
            "decomposition needs a table domain of at least Window(2), got Window({})",
            t.bound
        )));
    }
    let e0 = t.at(Elem::IDENTITY)?;
    if e0.p() == 1 {
        return Err(Error::MiddleLayerIdentityImage { image: e0 });
    }
    if !e0.is_idempotent() {
        return Err(Error::NotClassifiable {
            reason: format!("identity image {e0} is not idempotent"),
        });
    }
    let w = if e0.p() == 0 { 0 } else { 1 };
    let m = e0.i;
    let t10 = t.at(Elem::new(1, 0, 0))?;
    let k = i128::from(t10.i) - i128::from(t10.j);
    if k < 1 {
        return Err(Error::NonPositiveK(k));
    }
    let candidate = NormalForm::new(k as u64, m, w)?;
    for (x, fx) in t.entries() {
        let expected = candidate.apply(x)?;
        if expected != fx {
            return Err(Error::NotClassifiable {
                reason: format!("{candidate} sends {x} to {expected}, table has {fx}"),
            });
        }
    }
    Ok(candidate)
}

/// Every normal form with `k ≤ k_max`, `m ≤ m_max`, in `(k, m, w)` order.
pub fn normal_form_grid(k_max: u64, m_max: u64) -> impl Iterator<Item = NormalForm> {
    (1..=k_max).flat_map(move |k| {
        (0..=m_max).flat_map(move |m| {
            (0..=1).map(move |w| NormalForm::new(k, m, w).expect("grid parameters are valid"))
        })
    })
}

/// Window on which the exclusion scanner inspects images.
pub const SCAN_WINDOW: u64 = 8;

/// For each normal form on the grid, checks on `Window(8)` that the image
/// meets each of the three rays and that the identity is not sent to `[1)`.
pub fn scan_exclusions(k_max: u64, m_max: u64) -> Report {
    let fam = three_rays();
    let elems = Window::new(SCAN_WINDOW).collect(&fam);
    let mut report = ReportBuilder::new(
        "exclusion-scan",
        format!("k=1..={k_max}, m=0..={m_max}, w=0..=1, Window({SCAN_WINDOW})"),
    )
    .note("covers the classified normal forms only; completeness relies on every injective endomorphism having a normal form");
    for f in normal_form_grid(k_max, m_max) {
        let layers: BTreeSet<u64> = elems
            .iter()
            .filter_map(|&x| f.apply(x).ok())
            .map(Elem::p)
            .collect();
        for (layer, missing) in [(2, "rays 0,1"), (0, "rays 1,2"), (1, "rays 0,2")] {
            report.check(layers.contains(&layer), || {
                Counterexample::new(
                    f,
                    format!("image meets [{layer})"),
                    format!("image inside {missing}"),
                )
            });
        }
        let e0 = f.apply(Elem::IDENTITY);
        report.check(e0.as_ref().is_ok_and(|e| e.p() != 1), || {
            Counterexample::new(f, "identity image off [1)", show(&e0))
        });
    }
    report.finish()
}
