//! Named laws checked exhaustively on finite windows.
//!
//! Each function returns one [`Report`]. Pointwise sides are evaluated with
//! the generator maps in [`crate::endo::generators`] or with
//! [`NormalForm::apply_stepwise`], never with the closed forms they check.

use std::collections::{BTreeMap, BTreeSet};

use crate::endo::generators::{alpha, lambda, lambda_pow, varpi};
use crate::endo::{NormalForm, SdPair, LAYERS};
use crate::error::{Error, Result};
use crate::oracle::{
    decompose, normal_form_grid, scan_exclusions, tabulate, Counterexample, Report, ReportBuilder,
    TabulatedEndo,
};
use crate::semigroup::{Elem, Family, Ray, Window};
use crate::three_rays;

/// Optional overrides for the default grids.
///
/// `k_max` and `m_max` replace the normal-form parameter ranges; `window`
/// replaces the evaluation window of every law that uses one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteConfig {
    pub k_max: Option<u64>,
    pub m_max: Option<u64>,
    pub window: Option<u64>,
}

impl SuiteConfig {
    fn k(&self, default: u64) -> u64 {
        self.k_max.unwrap_or(default)
    }

    fn m(&self, default: u64) -> u64 {
        self.m_max.unwrap_or(default)
    }

    fn n(&self, default: u64) -> u64 {
        self.window.unwrap_or(default)
    }
}

type ElemMap<'a> = dyn Fn(Elem) -> Result<Elem> + 'a;

fn family(n: u64) -> Family {
    Family::canonical(n).expect("positive family size")
}

fn show<T: std::fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn same<T: PartialEq>(a: &Result<T>, b: &Result<T>) -> bool {
    matches!((a, b), (Ok(x), Ok(y)) if x == y)
}

/// Laws of the semigroup itself.
pub fn core_suite(cfg: &SuiteConfig) -> Vec<Report> {
    let mut reports = vec![
        associativity(&three_rays(), cfg.n(6)),
        identity_element(cfg.n(6)),
        inverse_axioms(cfg.n(8)),
        inverse_uniqueness(cfg.n(8) / 2, cfg.n(8)),
        order_closed_form(cfg.n(8)),
        order_partial_order(cfg.n(6)),
        order_chains(),
        d_relation_classes(cfg.n(6)),
        d_relation_witnesses(cfg.n(4)),
    ];
    for (s, t) in [(1, 2), (0, 1), (1, 1)] {
        reports.push(shift_isomorphism(s, t, cfg.n(6)));
    }
    reports.push(corner_predicate(cfg.n(12), 4));
    reports.push(ray_inductive(64));
    reports
}

/// Laws of the endomorphisms, their normal forms and the oracles built on
/// them.
pub fn identity_suite(cfg: &SuiteConfig) -> Vec<Report> {
    let mut reports = Vec::new();
    for n in 2..=5 {
        reports.push(generator_endomorphisms(n, cfg.n(8)));
        reports.push(generator_identities(n, cfg.n(12)));
    }
    reports.push(corner_equality(&[1, 2, 3], cfg.n(12)));
    reports.push(commutation_relations(cfg.k(5), cfg.n(10)));
    reports.push(compose_soundness(cfg.k(4), cfg.m(4), cfg.n(6)));
    reports.push(compose_associativity(cfg.k(4), cfg.m(4)));
    reports.push(identity_law(cfg.k(4), cfg.m(4), cfg.n(6)));
    reports.push(endomorphism_property(cfg.k(4), cfg.m(4), cfg.n(6)));
    reports.push(injectivity(cfg.k(4), cfg.m(4), cfg.n(10)));
    reports.push(overshoot_regression(cfg.k(4), cfg.m(4), cfg.n(12)));
    reports.push(semidirect_model(cfg.k(6), cfg.m(6)));
    reports.push(normal_form_uniqueness(cfg.k(8), cfg.m(8)));
    reports.push(decompose_roundtrip(cfg.k(5), cfg.m(5), cfg.n(16).max(2)));
    reports.push(middle_layer_rejection());
    reports.push(right_cancellation(cfg.k(5), cfg.n(10)));
    reports.push(scan_exclusions(cfg.k(5), cfg.m(5)));
    reports
}

pub fn associativity(fam: &Family, window: u64) -> Report {
    let elems = Window::new(window).collect(fam);
    let mut report = ReportBuilder::new(
        "associativity",
        format!("triples from Window({window}) over rays {fam}"),
    );
    for &x in &elems {
        for &y in &elems {
            let xy = x.mul(y);
            for &z in &elems {
                let left = xy.as_ref().map_err(Clone::clone).and_then(|xy| xy.mul(z));
                let right = y.mul(z).and_then(|yz| x.mul(yz));
                report.check(same(&left, &right), || {
                    Counterexample::new(format!("x={x}, y={y}, z={z}"), show(&right), show(&left))
                });
            }
        }
    }
    report.finish()
}

/// `(0,0,[0))` is a two-sided identity over each family `{[0), ..., [n−1))}`, `n ≤ 5`.
pub fn identity_element(window: u64) -> Report {
    let mut report = ReportBuilder::new(
        "identity-element",
        format!("Window({window}) over rays 0..n, n=1..=5"),
    );
    for n in 1..=5 {
        for x in Window::new(window).elements(&family(n)) {
            report.check_eq(format!("1*{x}"), &Ok(x), &Elem::IDENTITY.mul(x));
            report.check_eq(format!("{x}*1"), &Ok(x), &x.mul(Elem::IDENTITY));
        }
    }
    report.finish()
}

pub fn inverse_axioms(window: u64) -> Report {
    let mut report = ReportBuilder::new(
        "inverse-axioms",
        format!("Window({window}) over rays 0,1,2"),
    );
    for x in Window::new(window).elements(&three_rays()) {
        let y = x.inverse();
        report.check_eq(
            format!("x x' x, x={x}"),
            &Ok(x),
            &x.mul(y).and_then(|e| e.mul(x)),
        );
        report.check_eq(
            format!("x' x x', x={x}"),
            &Ok(y),
            &y.mul(x).and_then(|e| e.mul(y)),
        );
    }
    report.finish()
}

/// For `x` in the small window, `x⁻¹` is the only `y` in the large window
/// with `xyx = x` and `yxy = y`.
pub fn inverse_uniqueness(small: u64, large: u64) -> Report {
    let fam = three_rays();
    let candidates = Window::new(large).collect(&fam);
    let mut report = ReportBuilder::new(
        "inverse-uniqueness",
        format!("x in Window({small}), candidates in Window({large})"),
    );
    for x in Window::new(small).elements(&fam) {
        let found: Vec<Elem> = candidates
            .iter()
            .copied()
            .filter(|&y| {
                let xyx = x.mul(y).and_then(|e| e.mul(x));
                let yxy = y.mul(x).and_then(|e| e.mul(y));
                xyx == Ok(x) && yxy == Ok(y)
            })
            .collect();
        report.check_eq(x, &vec![x.inverse()], &found);
    }
    report.finish()
}

pub fn order_closed_form(window: u64) -> Report {
    let fam = three_rays();
    let elems = Window::new(window).collect(&fam);
    let mut report = ReportBuilder::new(
        "order-closed-form",
        format!("pairs from Window({window}) over rays 0,1,2"),
    );
    for &a in &elems {
        for &b in &elems {
            let closed = fam.nat_leq(a, b);
            let searched = fam.nat_leq_by_search(a, b);
            report.check(closed == searched, || {
                Counterexample::new(
                    format!("{a} <= {b}"),
                    format!("search: {searched}"),
                    format!("closed form: {closed}"),
                )
            });
        }
    }
    report.finish()
}

/// Reflexivity, antisymmetry and transitivity of the natural order.
pub fn order_partial_order(window: u64) -> Report {
    let fam = three_rays();
    let elems = Window::new(window).collect(&fam);
    let n = elems.len();
    let leq: Vec<Vec<bool>> = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| fam.nat_leq(a, b)).collect())
        .collect();
    let mut report = ReportBuilder::new(
        "order-partial-order",
        format!("Window({window}) over rays 0,1,2"),
    );
    for a in 0..n {
        report.check(leq[a][a], || {
            Counterexample::new(elems[a], "reflexive", "not <= itself")
        });
        for b in 0..n {
            report.check(!(leq[a][b] && leq[b][a]) || a == b, || {
                Counterexample::new(
                    format!("{} and {}", elems[a], elems[b]),
                    "antisymmetric",
                    "mutually <=",
                )
            });
            if !leq[a][b] {
                continue;
            }
            for c in 0..n {
                report.check(!leq[b][c] || leq[a][c], || {
                    Counterexample::new(
                        format!("{} <= {} <= {}", elems[a], elems[b], elems[c]),
                        "transitive",
                        "first not <= last",
                    )
                });
            }
        }
    }
    report.finish()
}

/// The two descending chains of idempotents and non-idempotents on the three rays.
pub fn order_chains() -> Report {
    let fam = three_rays();
    let mut report = ReportBuilder::new("order-chains", "fixed chains over rays 0,1,2");
    let chains = [
        [Elem::new(0, 0, 2), Elem::new(0, 0, 1), Elem::new(0, 0, 0)],
        [Elem::new(2, 2, 0), Elem::new(1, 1, 1), Elem::new(0, 0, 2)],
    ];
    for chain in chains {
        for pair in chain.windows(2) {
            report.check_eq(
                format!("{} <= {}", pair[0], pair[1]),
                &true,
                &fam.nat_leq(pair[0], pair[1]),
            );
            report.check_eq(
                format!("{} <= {} (search)", pair[0], pair[1]),
                &true,
                &fam.nat_leq_by_search(pair[0], pair[1]),
            );
            report.check_eq(
                format!("{} <= {}", pair[1], pair[0]),
                &false,
                &fam.nat_leq(pair[1], pair[0]),
            );
        }
    }
    report.finish()
}

/// Partitions `elems` greedily by `related`, checking that the result is a
/// genuine partition into equivalence classes. Returns the class count.
fn partition(
    elems: &[Elem],
    related: impl Fn(Elem, Elem) -> bool,
    report: &mut ReportBuilder,
) -> usize {
    let mut reps: Vec<Elem> = Vec::new();
    for &x in elems {
        let hits: Vec<Elem> = reps.iter().copied().filter(|&r| related(r, x)).collect();
        report.check(hits.len() <= 1, || {
            Counterexample::new(x, "related to at most one class", format!("{hits:?}"))
        });
        report.check(related(x, x), || {
            Counterexample::new(x, "reflexive", "not related to itself")
        });
        if let Some(&r) = hits.first() {
            report.check(related(x, r), || {
                Counterexample::new(format!("{x}, {r}"), "symmetric", "one direction only")
            });
        } else {
            reps.push(x);
        }
    }
    reps.len()
}

/// D-relatedness is an equivalence with exactly `n` classes over each
/// family `{[0), ..., [n−1))}`.
pub fn d_relation_classes(window: u64) -> Report {
    let mut report = ReportBuilder::new(
        "d-relation-classes",
        format!("Window({window}) over rays 0..n, n=1..=5"),
    );
    for n in 1..=5u64 {
        let elems = Window::new(window).collect(&family(n));
        let classes = partition(&elems, Elem::d_related, &mut report);
        report.check_eq(
            format!("class count over {n} rays"),
            &(n as usize),
            &classes,
        );
    }
    report.finish()
}

/// Same-ray pairs have the explicit witness `z = (a.i, b.i, ray)`; for
/// different rays no witness exists in the window.
pub fn d_relation_witnesses(window: u64) -> Report {
    let fam = three_rays();
    let elems = Window::new(window).collect(&fam);
    let mut report = ReportBuilder::new(
        "d-relation-witnesses",
        format!("pairs and witnesses from Window({window})"),
    );
    let connects = |z: Elem, a: Elem, b: Elem| {
        z.mul(z.inverse()) == a.mul(a.inverse()) && z.inverse().mul(z) == b.mul(b.inverse())
    };
    for &a in &elems {
        for &b in &elems {
            if a.d_related(b) {
                let z = Elem {
                    i: a.i,
                    j: b.i,
                    ray: a.ray,
                };
                report.check(connects(z, a, b), || {
                    Counterexample::new(format!("{a}, {b}"), format!("witness {z}"), "fails")
                });
            } else {
                let found = elems.iter().copied().find(|&z| connects(z, a, b));
                report.check(found.is_none(), || {
                    Counterexample::new(
                        format!("{a}, {b}"),
                        "no witness",
                        format!("{}", found.unwrap()),
                    )
                });
            }
        }
    }
    report.finish()
}

/// Shifting rays down by `s` maps the rays `[s), ..., [t)` isomorphically
/// onto `[0), ..., [t−s)`.
pub fn shift_isomorphism(s: u64, t: u64, window: u64) -> Report {
    let mut report = ReportBuilder::new(
        format!("shift-isomorphism s={s} t={t}"),
        format!("pairs from Window({window}) over rays {s}..={t}"),
    );
    let source = match Family::from_starts(s..=t) {
        Ok(f) => f,
        Err(e) => {
            report.check(false, || {
                Counterexample::new(format!("rays {s}..={t}"), "omega-closed", e)
            });
            return report.finish();
        }
    };
    let target = family(t - s + 1);
    let elems = Window::new(window).collect(&source);
    for &a in &elems {
        for &b in &elems {
            let lhs = a.mul(b).and_then(|ab| ab.shift_down(s));
            let rhs = a.shift_down(s).and_then(|x| x.mul(b.shift_down(s)?));
            report.check(same(&lhs, &rhs), || {
                Counterexample::new(format!("a={a}, b={b}"), show(&rhs), show(&lhs))
            });
        }
    }
    let image: BTreeSet<Elem> = elems.iter().filter_map(|a| a.shift_down(s).ok()).collect();
    let expected: BTreeSet<Elem> = Window::new(window).elements(&target).collect();
    report.check_eq("injective", &elems.len(), &image.len());
    report.check(image == expected, || {
        Counterexample::new("image", "target window", "differs")
    });
    let classes = partition(&elems, Elem::d_related, &mut report);
    report.check_eq("D-class count", &((t - s + 1) as usize), &classes);
    report.finish()
}

/// `in_corner(a, m)` agrees with the fixed points of `x ↦ e·x·e`, `e = (m,m,[0))`.
pub fn corner_predicate(window: u64, m_max: u64) -> Report {
    let mut report = ReportBuilder::new(
        "corner-predicate",
        format!("Window({window}), m=0..={m_max}"),
    );
    for a in Window::new(window).elements(&three_rays()) {
        for m in 0..=m_max {
            let fixed = a.sandwich(m) == Ok(a);
            report.check_eq(format!("a={a}, m={m}"), &fixed, &a.in_corner(m));
        }
    }
    report.finish()
}

/// `{e·x·e : x ∈ W}`, truncated to the window, equals both the region
/// `i, j ≥ m` of the window and `λ^m(Window(N−m))`; every sandwich lies in
/// the corner.
pub fn corner_equality(ms: &[u64], window: u64) -> Report {
    let fam = three_rays();
    let win = Window::new(window);
    let mut report =
        ReportBuilder::new("corner-equality", format!("Window({window}), m in {ms:?}"));
    for &m in ms {
        let mut sandwiches = BTreeSet::new();
        for x in win.elements(&fam) {
            match x.sandwich(m) {
                Ok(y) => {
                    report.check(y.in_corner(m), || {
                        Counterexample::new(format!("x={x}, m={m}"), "i,j >= m", y)
                    });
                    sandwiches.insert(y);
                }
                Err(e) => report.check(false, || {
                    Counterexample::new(format!("x={x}, m={m}"), "sandwich", e)
                }),
            }
        }
        let truncated: BTreeSet<Elem> = sandwiches
            .into_iter()
            .filter(|&y| win.contains(y))
            .collect();
        let region: BTreeSet<Elem> = win
            .elements(&fam)
            .filter(|y| y.i >= m && y.j >= m)
            .collect();
        let shifted: BTreeSet<Elem> = Window::new(window.saturating_sub(m))
            .elements(&fam)
            .filter_map(|x| lambda_pow(x, m).ok())
            .collect();
        report.check(truncated == region, || {
            Counterexample::new(
                format!("m={m}"),
                format!("{} region elements", region.len()),
                format!("{} sandwiches", truncated.len()),
            )
        });
        report.check(shifted == region, || {
            Counterexample::new(
                format!("m={m}"),
                format!("{} region elements", region.len()),
                format!("{} shifted", shifted.len()),
            )
        });
    }
    report.finish()
}

/// Rays are closed under successor, `(−1 + F) ∩ F = F` at membership level.
pub fn ray_inductive(limit: u64) -> Report {
    let mut report = ReportBuilder::new("ray-inductive", format!("starts and points 0..={limit}"));
    for start in 0..=limit {
        let ray = Ray::new(start);
        for x in 0..=limit {
            report.check(!ray.contains(x) || ray.contains(x + 1), || {
                Counterexample::new(format!("{ray}, x={x}"), "x+1 in ray", "missing")
            });
            let shifted_meet = ray.contains(x + 1) && ray.contains(x);
            report.check_eq(format!("{ray}, x={x}"), &ray.contains(x), &shifted_meet);
        }
    }
    report.finish()
}

/// `λ` and `ϖₙ` are injective endomorphisms over `n` rays.
pub fn generator_endomorphisms(n: u64, window: u64) -> Report {
    let fam = family(n);
    let elems = Window::new(window).collect(&fam);
    let mut report = ReportBuilder::new(
        format!("generator-endomorphisms n={n}"),
        format!("pairs from Window({window}) over rays 0..{n}"),
    );
    let maps: [(&str, &ElemMap); 2] = [("lambda", &lambda), ("varpi", &|x| varpi(x, n))];
    for (name, f) in maps {
        for &x in &elems {
            for &y in &elems {
                let lhs = x.mul(y).and_then(f);
                let rhs = f(x).and_then(|fx| fx.mul(f(y)?));
                report.check(same(&lhs, &rhs), || {
                    Counterexample::new(format!("{name}: x={x}, y={y}"), show(&rhs), show(&lhs))
                });
            }
        }
        let mut seen = BTreeMap::new();
        for &x in &elems {
            let fx = f(x);
            let clash = fx.as_ref().ok().and_then(|&fx| seen.insert(fx, x));
            report.check(fx.is_ok() && clash.is_none(), || {
                Counterexample::new(
                    format!("{name}: x={x}"),
                    "distinct image",
                    format!("{} shared with {clash:?}", show(&fx)),
                )
            });
        }
    }
    report.finish()
}

/// `ϖₙ² = λ^(n−1)` and `ϖₙλ = λϖₙ` pointwise.
pub fn generator_identities(n: u64, window: u64) -> Report {
    let mut report = ReportBuilder::new(
        format!("generator-identities n={n}"),
        format!("Window({window}) over rays 0..{n}"),
    );
    for x in Window::new(window).elements(&family(n)) {
        let square = varpi(x, n).and_then(|y| varpi(y, n));
        report.check(same(&square, &lambda_pow(x, n - 1)), || {
            Counterexample::new(
                format!("varpi^2 at {x}"),
                show(&lambda_pow(x, n - 1)),
                show(&square),
            )
        });
        let vl = varpi(x, n).and_then(lambda);
        let lv = lambda(x).and_then(|y| varpi(y, n));
        report.check(same(&vl, &lv), || {
            Counterexample::new(format!("varpi lambda at {x}"), show(&lv), show(&vl))
        });
    }
    report.finish()
}

type PointMap = Box<dyn Fn(Elem) -> Result<Elem>>;

fn chain(maps: Vec<PointMap>) -> impl Fn(Elem) -> Result<Elem> {
    move |x| maps.iter().try_fold(x, |y, f| f(y))
}

fn alpha_map(k: u64) -> PointMap {
    Box::new(move |x| alpha(x, k))
}

fn lambda_map(m: u64) -> PointMap {
    Box::new(move |x| lambda_pow(x, m))
}

fn varpi_map() -> PointMap {
    Box::new(|x| varpi(x, LAYERS))
}

/// Moving `λ` and `ϖ₃` past `α₍ₖ₎`, pointwise and symbolically.
pub fn commutation_relations(k_max: u64, window: u64) -> Report {
    let fam = three_rays();
    let elems = Window::new(window).collect(&fam);
    let mut report = ReportBuilder::new(
        "commutation-relations",
        format!("k=1..={k_max}, Window({window})"),
    );
    for k in 1..=k_max {
        let laws: [(&str, PointMap, PointMap); 3] = [
            (
                "lambda.alpha = alpha.lambda^k",
                Box::new(chain(vec![lambda_map(1), alpha_map(k)])),
                Box::new(chain(vec![alpha_map(k), lambda_map(k)])),
            ),
            (
                "varpi.alpha.varpi = alpha.lambda^(k+1)",
                Box::new(chain(vec![varpi_map(), alpha_map(k), varpi_map()])),
                Box::new(chain(vec![alpha_map(k), lambda_map(k + 1)])),
            ),
            (
                "varpi.alpha = alpha.varpi.lambda^(k-1)",
                Box::new(chain(vec![varpi_map(), alpha_map(k)])),
                Box::new(chain(vec![alpha_map(k), varpi_map(), lambda_map(k - 1)])),
            ),
        ];
        for (name, lhs, rhs) in &laws {
            for &x in &elems {
                let (l, r) = (lhs(x), rhs(x));
                report.check(same(&l, &r), || {
                    Counterexample::new(format!("{name}, k={k}, x={x}"), show(&r), show(&l))
                });
            }
        }
        let symbolic = (|| -> Result<[(NormalForm, NormalForm); 3]> {
            let a = NormalForm::alpha(k)?;
            let (l, v) = (NormalForm::LAMBDA, NormalForm::VARPI);
            Ok([
                (l.compose(a)?, a.compose(NormalForm::lambda_pow(k))?),
                (
                    v.compose(a)?.compose(v)?,
                    a.compose(NormalForm::lambda_pow(k + 1))?,
                ),
                (
                    v.compose(a)?,
                    a.compose(v)?.compose(NormalForm::lambda_pow(k - 1))?,
                ),
            ])
        })();
        match symbolic {
            Ok(pairs) => {
                for ((lhs, rhs), (name, _, _)) in pairs.iter().zip(&laws) {
                    report.check_eq(format!("symbolic {name}, k={k}"), rhs, lhs);
                }
            }
            Err(e) => report.check(false, || {
                Counterexample::new(format!("k={k}"), "symbolic composition", e)
            }),
        }
    }
    report.finish()
}

fn grid_label(k_max: u64, m_max: u64) -> String {
    format!("k=1..={k_max}, m=0..={m_max}, w=0..=1")
}

/// `compose(f, g)` agrees with applying `f` then `g`.
pub fn compose_soundness(k_max: u64, m_max: u64, window: u64) -> Report {
    let elems = Window::new(window).collect(&three_rays());
    let forms: Vec<NormalForm> = normal_form_grid(k_max, m_max).collect();
    let mut report = ReportBuilder::new(
        "compose-soundness",
        format!(
            "{}, pairs of forms, Window({window})",
            grid_label(k_max, m_max)
        ),
    );
    for &f in &forms {
        for &g in &forms {
            let h = f.compose(g);
            for &x in &elems {
                let symbolic = h.as_ref().map_err(Clone::clone).and_then(|h| h.apply(x));
                let pointwise = f.apply_stepwise(x).and_then(|y| g.apply_stepwise(y));
                report.check(same(&symbolic, &pointwise), || {
                    Counterexample::new(
                        format!("{f} o {g} at {x}"),
                        show(&pointwise),
                        show(&symbolic),
                    )
                });
            }
        }
    }
    report.finish()
}

pub fn compose_associativity(k_max: u64, m_max: u64) -> Report {
    let forms: Vec<NormalForm> = normal_form_grid(k_max, m_max).collect();
    let mut report = ReportBuilder::new(
        "compose-associativity",
        format!("{}, triples of forms", grid_label(k_max, m_max)),
    );
    for &f in &forms {
        for &g in &forms {
            for &h in &forms {
                let left = f.compose(g).and_then(|fg| fg.compose(h));
                let right = g.compose(h).and_then(|gh| f.compose(gh));
                report.check(same(&left, &right), || {
                    Counterexample::new(format!("{f}, {g}, {h}"), show(&right), show(&left))
                });
            }
        }
    }
    report.finish()
}

/// Composing with the identity form (`λ⁰`) changes nothing.
pub fn identity_law(k_max: u64, m_max: u64, window: u64) -> Report {
    let elems = Window::new(window).collect(&three_rays());
    let mut report = ReportBuilder::new(
        "identity-law",
        format!("{}, Window({window})", grid_label(k_max, m_max)),
    );
    let zero = NormalForm::lambda_pow(0);
    for x in &elems {
        report.check_eq(
            format!("lambda^0 at {x}"),
            &Ok(*x),
            &zero.apply_stepwise(*x),
        );
    }
    for f in normal_form_grid(k_max, m_max) {
        report.check_eq(format!("1 o {f}"), &Ok(f), &zero.compose(f));
        report.check_eq(format!("{f} o 1"), &Ok(f), &f.compose(zero));
    }
    report.finish()
}

pub fn endomorphism_property(k_max: u64, m_max: u64, window: u64) -> Report {
    let elems = Window::new(window).collect(&three_rays());
    let mut report = ReportBuilder::new(
        "endomorphism-property",
        format!("{}, pairs from Window({window})", grid_label(k_max, m_max)),
    );
    for f in normal_form_grid(k_max, m_max) {
        let images: Vec<Result<Elem>> = elems.iter().map(|&x| f.apply(x)).collect();
        for (&x, fx) in elems.iter().zip(&images) {
            for (&y, fy) in elems.iter().zip(&images) {
                let lhs = x.mul(y).and_then(|xy| f.apply(xy));
                let rhs = match (fx, fy) {
                    (Ok(a), Ok(b)) => a.mul(*b),
                    (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                };
                report.check(same(&lhs, &rhs), || {
                    Counterexample::new(format!("{f}: x={x}, y={y}"), show(&rhs), show(&lhs))
                });
            }
        }
    }
    report.finish()
}

pub fn injectivity(k_max: u64, m_max: u64, window: u64) -> Report {
    let mut report = ReportBuilder::new(
        "injectivity",
        format!("{}, Window({window})", grid_label(k_max, m_max)),
    );
    for f in normal_form_grid(k_max, m_max) {
        match tabulate(f, window) {
            Ok(t) => {
                let inner = crate::oracle::verify_injective(&t);
                report.check(inner.passed(), || {
                    Counterexample::new(f, "injective", format!("{} collisions", inner.violations))
                });
            }
            Err(e) => report.check(false, || Counterexample::new(f, "tabulation", e)),
        }
    }
    report.finish()
}

/// When the left factor reverses layers, the unit-overshoot composition
/// law has a λ-exponent exactly one above the pointwise composite, while
/// [`NormalForm::compose`] matches it.
///
/// The true exponent is read off the image of `(0,0,[0))`, which is
/// `(m,m,[0))` or `(m,m,[2))`.
pub fn overshoot_regression(k_max: u64, m_max: u64, window: u64) -> Report {
    let forms: Vec<NormalForm> = normal_form_grid(k_max, m_max).collect();
    let mut report = ReportBuilder::new(
        "overshoot-regression",
        format!("{}, reversing left factor", grid_label(k_max, m_max)),
    )
    .note("pass means the unit-overshoot exponents were confirmed wrong by exactly one");
    for &f in forms.iter().filter(|f| f.reverses()) {
        for &g in &forms {
            let measured = f
                .apply_stepwise(Elem::IDENTITY)
                .and_then(|y| g.apply_stepwise(y))
                .map(|e| e.i);
            let corrected = f.compose(g).map(|h| h.m());
            let overshoot = f.compose_with_unit_overshoot(g).map(|h| h.m());
            report.check(same(&corrected, &measured), || {
                Counterexample::new(
                    format!("{f} o {g}"),
                    format!("lambda^{}", show(&measured)),
                    format!("compose gives lambda^{}", show(&corrected)),
                )
            });
            let excess = match (&overshoot, &measured) {
                (Ok(o), Ok(m)) => o.checked_sub(*m),
                _ => None,
            };
            report.check(excess == Some(1), || {
                Counterexample::new(
                    format!("{f} o {g}"),
                    "overshoot by 1",
                    format!("{excess:?}"),
                )
            });
        }
    }
    // ϖ₃∘ϖ₃ is λ², not λ³.
    let overshoot = NormalForm::VARPI.compose_with_unit_overshoot(NormalForm::VARPI);
    report.check_eq(
        "overshoot varpi o varpi",
        &NormalForm::new(1, 3, 0),
        &overshoot,
    );
    for x in Window::new(window).elements(&three_rays()) {
        let square = varpi(x, LAYERS).and_then(|y| varpi(y, LAYERS));
        report.check(same(&square, &lambda_pow(x, 2)), || {
            Counterexample::new(
                format!("varpi^2 at {x}"),
                show(&lambda_pow(x, 2)),
                show(&square),
            )
        });
        let wrong = overshoot
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|h| h.apply_stepwise(x));
        report.check(!same(&square, &wrong), || {
            Counterexample::new(
                format!("lambda^3 at {x}"),
                "differs from varpi^2",
                show(&wrong),
            )
        });
    }
    report.finish()
}

/// Forms without the layer reversal correspond to `(ℕ,·) ⋉ (ω,+)`.
pub fn semidirect_model(k_max: u64, m_max: u64) -> Report {
    let forms: Vec<NormalForm> = normal_form_grid(k_max, m_max)
        .filter(|f| !f.reverses())
        .collect();
    let mut report = ReportBuilder::new(
        "semidirect-model",
        format!("k=1..={k_max}, m=0..={m_max}, w=0"),
    );
    let mut images = BTreeSet::new();
    for &f in &forms {
        let p = f.to_sd();
        report.check_eq(
            format!("round trip {f}"),
            &Ok(f),
            &p.clone().map(SdPair::to_normal_form),
        );
        if let Ok(p) = p {
            images.insert(p);
        }
        for &g in &forms {
            let via_forms = f.compose(g).and_then(NormalForm::to_sd);
            let via_pairs = f.to_sd().and_then(|a| a.mul(g.to_sd()?));
            report.check(same(&via_forms, &via_pairs), || {
                Counterexample::new(format!("{f} o {g}"), show(&via_pairs), show(&via_forms))
            });
        }
    }
    report.check_eq("injective", &forms.len(), &images.len());
    let grid: BTreeSet<SdPair> = (1..=k_max)
        .flat_map(|k| (0..=m_max).map(move |m| SdPair { k, m }))
        .collect();
    report.check(grid == images, || {
        Counterexample::new("image", "every pair on the grid", "some missing")
    });
    report.check_eq(
        "reversal excluded",
        &Err(Error::NotInSubmonoid { k: 1, m: 0 }),
        &NormalForm::VARPI.to_sd(),
    );
    report.finish()
}

/// Images of `(1,0,[0))` and `(0,0,[0))` separate all forms on the grid.
pub fn normal_form_uniqueness(k_max: u64, m_max: u64) -> Report {
    let mut report = ReportBuilder::new("normal-form-uniqueness", grid_label(k_max, m_max));
    let mut seen: BTreeMap<(Elem, Elem), NormalForm> = BTreeMap::new();
    for f in normal_form_grid(k_max, m_max) {
        let key = f
            .apply(Elem::new(1, 0, 0))
            .and_then(|a| Ok((a, f.apply(Elem::IDENTITY)?)));
        match key {
            Ok(key) => {
                let clash = seen.insert(key, f);
                report.check(clash.is_none(), || {
                    Counterexample::new(
                        f,
                        "unique signature",
                        format!("shared with {}", clash.unwrap()),
                    )
                });
            }
            Err(e) => report.check(false, || Counterexample::new(f, "signature", e)),
        }
    }
    report.finish()
}

pub fn decompose_roundtrip(k_max: u64, m_max: u64, bound: u64) -> Report {
    let mut report = ReportBuilder::new(
        "decompose-roundtrip",
        format!("{}, table domain Window({bound})", grid_label(k_max, m_max)),
    )
    .note("recovered forms are consistent with the tables on the window");
    for f in normal_form_grid(k_max, m_max) {
        let recovered = tabulate(f, bound).and_then(|t| decompose(&t));
        report.check_eq(f, &Ok(f), &recovered);
    }
    report.finish()
}

/// Tables sending the identity into `[1)` are rejected.
pub fn middle_layer_rejection() -> Report {
    let mut report = ReportBuilder::new("middle-layer-rejection", "synthetic tables on Window(4)");
    for m in 0..=5 {
        let image = Elem::new(m, m, 1);
        let table = TabulatedEndo::from_fn(4, |x| {
            if x == Elem::IDENTITY {
                Ok(image)
            } else {
                NormalForm::LAMBDA.apply(x)
            }
        });
        let outcome = table.and_then(|t| decompose(&t));
        report.check_eq(
            format!("identity -> {image}"),
            &Err(Error::MiddleLayerIdentityImage { image }),
            &outcome,
        );
    }
    report.finish()
}

/// Cancelling the injective right factor `λ²` from
/// `ϖ₃∘α₍ₖ₎∘λ² = α₍ₖ₎∘ϖ₃∘λ^(k−1)∘λ²` leaves agreement of the left factors.
pub fn right_cancellation(k_max: u64, window: u64) -> Report {
    let elems = Window::new(window).collect(&three_rays());
    let mut report = ReportBuilder::new(
        "right-cancellation",
        format!("k=1..={k_max}, h=lambda^2, Window({window})"),
    );
    let h = |x: Elem| lambda_pow(x, 2);
    for k in 1..=k_max {
        let a = chain(vec![varpi_map(), alpha_map(k)]);
        let b = chain(vec![alpha_map(k), varpi_map(), lambda_map(k - 1)]);
        let mut h_images: BTreeMap<Elem, Elem> = BTreeMap::new();
        for &x in &elems {
            let (ax, bx) = (a(x), b(x));
            let (ahx, bhx) = (ax.clone().and_then(h), bx.clone().and_then(h));
            report.check(same(&ahx, &bhx), || {
                Counterexample::new(format!("k={k}, x={x}: premise"), show(&bhx), show(&ahx))
            });
            for y in [&ax, &bx].into_iter().flatten() {
                if let Ok(hy) = h(*y) {
                    let clash = h_images.insert(hy, *y).filter(|prev| prev != y);
                    report.check(clash.is_none(), || {
                        Counterexample::new(format!("k={k}, h at {y}"), "injective", "collision")
                    });
                }
            }
            report.check(same(&ax, &bx), || {
                Counterexample::new(format!("k={k}, x={x}: conclusion"), show(&bx), show(&ax))
            });
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids_pass() {
        let cfg = SuiteConfig {
            k_max: Some(2),
            m_max: Some(2),
            window: Some(3),
        };
        for report in core_suite(&cfg).into_iter().chain(identity_suite(&cfg)) {
            assert!(report.passed(), "{report}");
            assert!(report.checks > 0, "{report}");
        }
    }

    #[test]
    fn broken_family_reported_not_panicking() {
        let report = shift_isomorphism(0, 0, 2);
        assert!(report.passed());
        assert_eq!(report.suite, "shift-isomorphism s=0 t=0");
    }

    #[test]
    fn failing_law_is_reported() {
        let mut b = ReportBuilder::new("x", "y");
        for i in 0..40 {
            b.check_eq(i, &0, &1);
        }
        let r = b.finish();
        assert!(!r.passed());
        assert_eq!(r.violations, 40);
        assert_eq!(r.counterexamples.len(), 32);
    }
}
