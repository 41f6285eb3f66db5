//! Named verification suites. Each suite runs a list of checks per base and
//! reports every outcome; library errors count as failed checks.

use std::collections::BTreeSet;

use betaint::addition::{
    addition_report, balance_growth, closest_point_property, compatibility_scan, diff_set_scan, oplus,
    subtraction_failures, symmetry_failures, xi,
};
use betaint::capset::{identification_windows, verify_identifications, verify_union_theorem, window_algebra_check, Window};
use betaint::integers::{brute_force_points, gap_values, PointSequence};
use betaint::words::catalog::{balance_witness, quadratic_morphisms, sturmian_decomposition};
use betaint::words::language::{contains_factor, imbalance};
use betaint::words::morphism::{power, right_conjugate_witness, verify_intertwining, word, Morphism};
use betaint::words::{balance, complexity, language_equal};
use betaint::{make_base, rational_rank, Family, FieldElement, Mode, PisotBase};
use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Gaps,
    Language,
    UnionTheorem,
    CapIdentities,
    Addition,
    Sturmian,
    Counterexamples,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Gaps => "gaps",
            Suite::Language => "language",
            Suite::UnionTheorem => "union-theorem",
            Suite::CapIdentities => "cap-identities",
            Suite::Addition => "addition",
            Suite::Sturmian => "sturmian",
            Suite::Counterexamples => "counterexamples",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub maxlen: Option<usize>,
    pub bound: Option<i64>,
    pub prefix: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub base: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

type Outcome = Result<String, String>;

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, base: &str, name: &str, f: impl FnOnce() -> Outcome) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            base: base.to_string(),
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn ensure(cond: bool, ok: impl FnOnce() -> String, err: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(ok())
    } else {
        Err(err())
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn inv_basis(b: &PisotBase, a: i64, c: i64) -> FieldElement {
    b.int(a) + b.beta_pow(-1).scale(&q(c))
}

fn poly(cs: &[i64]) -> PisotBase {
    PisotBase::from_polynomial(cs.iter().map(|&c| BigInt::from(c)).collect()).expect("known Pisot polynomial")
}

fn plus(m: u32, n: u32) -> PisotBase {
    make_base(Family::Plus, m, n).expect("valid grid base")
}

fn minus(m: u32, n: u32) -> PisotBase {
    make_base(Family::Minus, m, n).expect("valid grid base")
}

fn grid() -> Vec<PisotBase> {
    vec![plus(1, 1), plus(2, 1), plus(2, 2), plus(3, 2), plus(3, 3), minus(3, 1), minus(4, 1), minus(4, 2), minus(5, 2)]
}

fn seq(b: &PisotBase, mode: Mode) -> Result<PointSequence, String> {
    PointSequence::new(b, mode).map_err(|e| e.to_string())
}

/// Bases a suite runs on when none is given.
fn default_bases(suite: Suite) -> Vec<PisotBase> {
    match suite {
        Suite::Gaps => {
            let mut g = grid();
            g.push(poly(&[-1, -1, 0, 1]));
            g
        }
        Suite::Language | Suite::Sturmian => grid(),
        Suite::UnionTheorem => vec![plus(2, 1), plus(3, 1), plus(4, 1)],
        Suite::CapIdentities => vec![plus(1, 1), plus(2, 1), plus(3, 1), minus(3, 1), minus(4, 1)],
        Suite::Addition => vec![plus(1, 1), plus(2, 1), plus(3, 1), plus(2, 2), minus(3, 1), minus(4, 1), minus(5, 2)],
        Suite::Counterexamples => Vec::new(),
    }
}

/// Why `suite` does not apply to `base`, if it doesn't.
pub fn not_applicable(suite: Suite, base: &PisotBase) -> Option<String> {
    let quadratic = base.family() != Family::General;
    match suite {
        Suite::Gaps | Suite::Addition => None,
        Suite::Language | Suite::Sturmian if !quadratic => Some("needs a quadratic base (plus:m,n or minus:m,n)".into()),
        Suite::UnionTheorem if !(base.family() == Family::Plus && base.n() == 1 && base.m() >= 2) => {
            Some("needs plus:m,1 with m >= 2".into())
        }
        Suite::CapIdentities if !(quadratic && base.is_unit()) => Some("needs a quadratic unit base (n = 1)".into()),
        Suite::Counterexamples => Some("runs fixed examples and takes no --base".into()),
        _ => None,
    }
}

pub fn run(suite: Suite, base: Option<&PisotBase>, opts: &Options) -> SuiteReport {
    let bases = match base {
        Some(b) => vec![b.clone()],
        None => default_bases(suite),
    };
    let mut r = Runner { checks: Vec::new() };
    match suite {
        Suite::Counterexamples => counterexamples(&mut r),
        _ => {
            for b in &bases {
                match suite {
                    Suite::Gaps => gaps(&mut r, b, opts.bound.unwrap_or(20)),
                    Suite::Language => language(&mut r, b, opts.maxlen.unwrap_or(30), opts.prefix.unwrap_or(40_000)),
                    Suite::UnionTheorem => union(&mut r, b, opts.bound.unwrap_or(20)),
                    Suite::CapIdentities => cap_identities(&mut r, b, opts.bound.unwrap_or(10)),
                    Suite::Addition => addition(&mut r, b, opts.bound.unwrap_or(100)),
                    Suite::Sturmian => sturmian(&mut r, b, opts.maxlen.unwrap_or(100), opts.prefix.unwrap_or(40_000)),
                    Suite::Counterexamples => unreachable!(),
                }
            }
        }
    }
    SuiteReport {
        suite,
        passed: r.checks.iter().all(|c| c.passed),
        checks: r.checks,
    }
}

/// `Δ₁` restated from its closed form, independently of the library.
fn expected_delta1(b: &PisotBase, mode: Mode) -> FieldElement {
    let (m, n) = (i64::from(b.m()), i64::from(b.n()));
    match (b.family(), mode) {
        (Family::Plus, Mode::Pos) => inv_basis(b, 0, n),
        (Family::Minus, Mode::Pos) => inv_basis(b, 1, -n),
        (Family::Plus, Mode::Neg) if m == n => inv_basis(b, 0, m),
        (Family::Plus, Mode::Neg) => inv_basis(b, 1, n),
        (Family::Minus, Mode::Neg) => inv_basis(b, 2, -n),
        (Family::General, _) => unreachable!(),
    }
}

fn gaps(r: &mut Runner, b: &PisotBase, bound: i64) {
    let quadratic = b.family() != Family::General;
    let modes: &[Mode] = if quadratic { &[Mode::Pos, Mode::Neg] } else { &[Mode::Pos] };
    let (lo, hi) = (b.int(-bound), b.int(bound));
    for &mode in modes {
        let tag = format!("{} {}", b.label(), mode_name(mode));
        let mut oracle = Vec::new();
        r.check(&tag, "oracle matches gap enumeration", || {
            oracle = brute_force_points(b, mode, &lo, &hi, None)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|p| p.value)
                .collect();
            let from_gaps = seq(b, mode)?.points_in(&lo, &hi);
            ensure(
                oracle == from_gaps,
                || format!("{} points in [{lo}, {hi}]", oracle.len()),
                || format!("oracle {} points, gap word {} points", oracle.len(), from_gaps.len()),
            )
        });
        r.check(&tag, "gaps take the stated values", || {
            let g = gap_values(b, mode).map_err(|e| e.to_string())?;
            if quadratic {
                let d1 = expected_delta1(b, mode);
                if g.delta0() != &b.int(1) || g.delta1() != &d1 {
                    return Err(format!("Δ = {:?}, expected 1 and {d1}", strings(&g.deltas)));
                }
            }
            let allowed: BTreeSet<_> = g.deltas.iter().cloned().collect();
            for w in oracle.windows(2) {
                let d = &w[1] - &w[0];
                if !allowed.contains(&d) {
                    return Err(format!("gap {d} after {}", w[0]));
                }
            }
            Ok(format!("Δ = {}", strings(&g.deltas).join(", ")))
        });
    }
}

fn strings(xs: &[FieldElement]) -> Vec<String> {
    xs.iter().map(|x| betaint::algebraic::InverseBasis(x).to_string()).collect()
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Pos => "pos",
        Mode::Neg => "neg",
    }
}

fn words(b: &PisotBase, prefix: usize) -> Result<(Vec<u8>, Vec<u8>), String> {
    Ok((seq(b, Mode::Pos)?.positive_word(prefix), seq(b, Mode::Neg)?.positive_word(prefix)))
}

fn languages_agree(u: &[u8], v: &[u8], maxlen: usize) -> Outcome {
    let eq = language_equal(u, v, maxlen).map_err(|e| e.to_string())?;
    match eq.iter().position(|&x| !x) {
        Some(i) => Err(format!("factor sets differ at length {}", i + 1)),
        None => Ok(format!("equal up to length {maxlen}")),
    }
}

fn language(r: &mut Runner, b: &PisotBase, maxlen: usize, prefix: usize) {
    let tag = b.label();
    let (m, n) = (b.m(), b.n());
    let (name, image) = match b.family() {
        Family::Plus if m == n => ("L(u_β) = L(u_{-β})", None),
        Family::Plus => ("L(u_β) = L(π̃(u_{-β}))", Some(Morphism::from_strs(&["0", "01"]))),
        _ => ("L(u_β) = L(π(u_{-β}))", Some(Morphism::from_strs(&["0", "10"]))),
    };
    r.check(&tag, name, || {
        let (u, v) = words(b, prefix)?;
        let v = match &image {
            Some(f) => f.apply(&v).map_err(|e| e.to_string())?,
            None => v,
        };
        languages_agree(&u, &v, maxlen)
    });
    if (m, n, b.family()) == (1, 1, Family::Plus) {
        r.check(&tag, "u_{-β}⁺ = 0·u_β", || {
            let (u, v) = words(b, 1000)?;
            let mut shifted = vec![0];
            shifted.extend_from_slice(&u[..999]);
            ensure(v == shifted, || "first 1000 letters agree".into(), || "words differ".into())
        });
    }
    let c = match quadratic_morphisms(b) {
        Ok(c) => c,
        Err(e) => return r.check(&tag, "morphisms", || Err(e.to_string())),
    };
    if b.family() == Family::Plus && m == n {
        r.check(&tag, "φ²(a)w = wφ̄²(a) with w = (0^m1)^m", || {
            let mut unit = vec![0; m as usize];
            unit.push(1);
            let expected = power(&unit, m as usize);
            let w = right_conjugate_witness(&c.phi.pow(2), &c.anti.pow(2), None);
            ensure(
                w.as_ref() == Some(&expected),
                || format!("w = {}", betaint::words::morphism::word_to_string(&expected)),
                || format!("witness {w:?}"),
            )
        });
    }
    if let Some(k) = &c.conjugate {
        r.check(&tag, "splitting map intertwines φ̄² and ψ", || {
            ensure(verify_intertwining(&k.splitter, &c.anti.pow(2), &k.psi), || format!("ψ = {}", k.psi), || "fails".into())
        });
        r.check(&tag, "conjugation factor", || {
            let w = right_conjugate_witness(&k.left, &k.right, None);
            ensure(
                w.as_ref() == Some(&k.factor),
                || format!("w = {}", betaint::words::morphism::word_to_string(&k.factor)),
                || format!("witness {w:?}"),
            )
        });
    }
    if let Some(dec) = sturmian_decomposition(b) {
        r.check(&tag, "φ̄² factors over E, φ, φ̃", || {
            let composed = Morphism::compose_all(&dec).map_err(|e| e.to_string())?;
            ensure(composed == c.anti.pow(2), || format!("{} factors", dec.len()), || format!("composition gives {composed}"))
        });
    }
}

fn union(r: &mut Runner, b: &PisotBase, bound: i64) {
    r.check(&b.label(), "Z_β⁺ = (Z_{-β} ∪ βZ_{-β})⁺", || {
        let w = Window::closed(b.int(0), b.int(bound)).map_err(|e| e.to_string())?;
        let u = verify_union_theorem(b, &w).map_err(|e| e.to_string())?;
        ensure(
            u.passed(),
            || format!("{} points in [0, {bound}], oracle agrees, intersection {{0}}", u.sequences.left),
            || format!("{u:?}"),
        )
    });
}

fn cap_identities(r: &mut Runner, b: &PisotBase, bound: i64) {
    let tag = b.label();
    let Ok(w) = Window::closed(b.int(-bound), b.int(bound)) else {
        return r.check(&tag, "window", || Err(format!("bad bound {bound}")));
    };
    r.check(&tag, "Z_β and Z_{-β} as cut-and-project sets", || {
        let id = verify_identifications(b, &w).map_err(|e| e.to_string())?;
        ensure(
            id.passed(),
            || format!("Ω₊ = {}, Ω₋ = {} on [-{bound}, {bound}]", id.positive_window, id.negative_window),
            || format!("{id:?}"),
        )
    });
    r.check(&tag, "window union, translation, unit scaling", || {
        let (omega, _) = identification_windows(b).map_err(|e| e.to_string())?;
        let a = window_algebra_check(b, &omega, &b.int(1), &b.beta(), &w).map_err(|e| e.to_string())?;
        ensure(a.passed(), || format!("Ω = {omega}, x₀ = 1, α = β"), || format!("{a:?}"))
    });
}

fn set_string(s: &BTreeSet<FieldElement>) -> String {
    let v: Vec<FieldElement> = s.iter().cloned().collect();
    format!("{{{}}}", strings(&v).join(", "))
}

fn addition(r: &mut Runner, b: &PisotBase, bound: i64) {
    let quadratic = b.family() != Family::General;
    let tag = b.label();
    let modes: &[Mode] = if quadratic { &[Mode::Neg, Mode::Pos] } else { &[Mode::Pos] };
    for &mode in modes {
        let s = match seq(b, mode) {
            Ok(s) => s,
            Err(e) => return r.check(&tag, "point set", || Err(e)),
        };
        let rank = rational_rank(&s.gaps().deltas);
        let independent = rank == s.gaps().len();
        r.check(&format!("{tag} {}", mode_name(mode)), "⊕ agrees with + whenever the sum is a point", || {
            let v = compatibility_scan(&s, bound);
            if independent {
                ensure(
                    v.is_empty(),
                    || format!("gaps independent; no violations for |j| <= |k| <= {bound}"),
                    || format!("{} violations, first (j, k, index) = {:?}", v.len(), (v[0].j, v[0].k, v[0].sum_index)),
                )
            } else {
                Ok(format!("gaps dependent (rank {rank}); {} violations, not asserted", v.len()))
            }
        });
    }
    if !quadratic {
        return;
    }
    let s = match seq(b, Mode::Neg) {
        Ok(s) => s,
        Err(e) => return r.check(&tag, "point set", || Err(e)),
    };
    let (m, n) = (b.m(), b.n());
    if (b.family(), m, n) == (Family::Plus, 1, 1) {
        r.check(&tag, "t₅ + t₅ against t₁₀ and t₁₁", || {
            let a = addition_report(&s, 5, 5);
            let ok = s.point(5) == inv_basis(b, 4, 1)
                && oplus(&s, 5, 5) == inv_basis(b, 7, 3)
                && a.diff == inv_basis(b, 1, -1)
                && &a.sum - s.point(11) == inv_basis(b, 1, -2)
                && a.closest_index == 11;
            ensure(ok, || "t₅+t₅-t₁₀ = 1-1/b, closest point t₁₁".into(), || format!("{a:?}"))
        });
    }
    if b.family() == Family::Plus && n == 1 {
        let x = xi(b).expect("x^2 - mx - 1");
        r.check(&tag, "t_j + t_k - t_{j+k} ∈ {0, ξ}", || {
            let d = diff_set_scan(&s, bound);
            let allowed: BTreeSet<_> = [b.int(0), x.clone()].into_iter().collect();
            ensure(d.is_subset(&allowed), || format!("ξ = {}; values {}", strings(std::slice::from_ref(&x))[0], set_string(&d)), || {
                format!("values {}", set_string(&d))
            })
        });
        r.check(&tag, "t_j + t_{-j} = ξ", || {
            let f = symmetry_failures(&s, 3 * bound / 2).map_err(|e| e.to_string())?;
            ensure(f.is_empty(), || format!("for 1 <= j <= {}", 3 * bound / 2), || format!("fails at j = {f:?}"))
        });
        r.check(&tag, "t_j - t_k ∈ t_{j-k} - {0, ξ}", || {
            let f = subtraction_failures(&s, bound / 2).map_err(|e| e.to_string())?;
            ensure(f.is_empty(), || format!("for |j|, |k| <= {}", bound / 2), || format!("{} failures", f.len()))
        });
        if m >= 2 {
            r.check(&tag, "t_{j+k} is the point closest to t_j + t_k", || {
                let ok = closest_point_property(&s, bound).map_err(|e| e.to_string())?;
                ensure(ok, || format!("for |j|, |k| <= {bound}"), || "fails".into())
            });
        }
    }
    if b.family() == Family::Minus && n == 1 {
        r.check(&tag, "t_j + t_k - t_{j+k} ∈ {-η, 0, η}, η = 1 - 1/β", || {
            let eta = inv_basis(b, 1, -1);
            let d = diff_set_scan(&s, bound);
            let allowed: BTreeSet<_> = [-&eta, b.int(0), eta.clone()].into_iter().collect();
            ensure(d.is_subset(&allowed), || format!("values {}", set_string(&d)), || format!("values {}", set_string(&d)))
        });
    }
}

fn sturmian(r: &mut Runner, b: &PisotBase, maxlen: usize, prefix: usize) {
    let tag = b.label();
    let v = match seq(b, Mode::Neg) {
        Ok(s) => s.positive_word(prefix),
        Err(e) => return r.check(&tag, "gap word", || Err(e)),
    };
    if b.is_unit() {
        r.check(&tag, "complexity n + 1", || {
            for n in 1..=maxlen {
                let c = complexity(&v, n).map_err(|e| e.to_string())?;
                if c != n + 1 {
                    return Err(format!("C({n}) = {c}"));
                }
            }
            Ok(format!("for n <= {maxlen}"))
        });
        r.check(&tag, "1-balanced", || {
            let c = balance(&v, 2 * maxlen).map_err(|e| e.to_string())?;
            ensure(c == 1, || format!("factors up to length {}", 2 * maxlen), || format!("balance {c}"))
        });
    } else {
        r.check(&tag, "unbalanced factor pair occurs", || {
            let w = balance_witness(b).ok_or("no witness for this base")?;
            for f in [&w.named.0, &w.named.1, &w.pair.0, &w.pair.1] {
                if !contains_factor(&v, f) {
                    return Err(format!("factor {} missing", betaint::words::morphism::word_to_string(f)));
                }
            }
            let d = imbalance(&w.pair.0, &w.pair.1);
            let show = betaint::words::morphism::word_to_string;
            ensure(d >= 2, || format!("{} vs {} differ by {d}", show(&w.pair.0), show(&w.pair.1)), || "pair is balanced".into())
        });
    }
}

fn counterexamples(r: &mut Runner) {
    let b = poly(&[-1, -1, 0, 1]);
    let tag = b.label();
    r.check(&tag, "t₁ ⊕ t₂ = t₃ but t₁ + t₂ = t₄", || {
        let s = seq(&b, Mode::Pos)?;
        let g = s.gaps();
        if g.deltas[0] != &g.deltas[2] + &g.deltas[3] || rational_rank(&g.deltas) == g.deltas.len() {
            return Err("expected the dependence Δ₀ = Δ₂ + Δ₃".into());
        }
        let sum = s.point(1) + s.point(2);
        let ok = oplus(&s, 1, 2) == s.point(3) && sum != s.point(3) && sum == s.point(4);
        ensure(ok, || format!("Δ₀ = Δ₂ + Δ₃, rank {}", rational_rank(&g.deltas)), || format!("t₁ + t₂ = {sum}"))
    });
    let b = minus(3, 1);
    r.check(&b.label(), "closest point to t₆ + t₆ is t₁₁ = 18 - 7/β", || {
        let s = seq(&b, Mode::Neg)?;
        let a = addition_report(&s, 6, 6);
        ensure(a.closest_index == 11 && a.closest == inv_basis(&b, 18, -7), || "t₁₁ ≠ t₁₂".into(), || format!("{a:?}"))
    });
    for m in 4..=7u32 {
        let b = minus(m, 1);
        r.check(&b.label(), "closest point to t₂ + t_{m-2} is t_{m-1} = m - 1/β", || {
            let s = seq(&b, Mode::Neg)?;
            let a = addition_report(&s, 2, i64::from(m) - 2);
            let ok = a.closest_index == i64::from(m) - 1 && a.closest == inv_basis(&b, i64::from(m), -1);
            ensure(ok, || format!("t_{}", m - 1), || format!("{a:?}"))
        });
    }
    let b = poly(&[-1, 0, 0, 0, 0, -1, 1]);
    let tag = b.label();
    let s = match seq(&b, Mode::Pos) {
        Ok(s) => s,
        Err(e) => return r.check(&tag, "point set", || Err(e)),
    };
    r.check(&tag, "six independent gaps, ⊕ compatible", || {
        ensure(s.positive_word(8) == word("01234500"), String::new, || "unexpected gap word".into())?;
        let rank = rational_rank(&s.gaps().deltas);
        let v = compatibility_scan(&s, 100);
        ensure(rank == 6 && v.is_empty(), || "rank 6, no violations up to 100".into(), || format!("rank {rank}, {} violations", v.len()))
    });
    r.check(&tag, "balance grows with the factor length", || {
        let g = balance_growth(&s, &[100, 400, 1600]).map_err(|e| e.to_string())?;
        let cs: Vec<u32> = g.iter().map(|&(_, c)| c).collect();
        ensure(
            cs.windows(2).all(|w| w[0] <= w[1]) && cs[0] < cs[2],
            || format!("balances {cs:?} at lengths 100, 400, 1600"),
            || format!("balances {cs:?}"),
        )
    });
}
