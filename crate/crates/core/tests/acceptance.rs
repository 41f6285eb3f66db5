//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p betaint --test acceptance`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use betaint::addition::{
    addition_report, closest_point_property, compatibility_scan, diff_set_scan, oplus, symmetry_failures, xi,
    balance_growth,
};
use betaint::capset::{verify_identifications, verify_union_theorem, Window};
use betaint::integers::{brute_force_points, gap_values, PointSequence};
use betaint::numeration::{EventuallyPeriodicWord, Mode, NumerationSystem};
use betaint::words::catalog::{balance_witness, quadratic_morphisms, sturmian_decomposition};
use betaint::words::language::{contains_factor, imbalance};
use betaint::words::morphism::{power, right_conjugate_witness, verify_intertwining, word, Morphism};
use betaint::words::{balance, complexity, language_equal};
use betaint::{make_base, rational_rank, Family, FieldElement, PisotBase};
use num_bigint::BigInt;
use num_rational::BigRational;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

const PLUS_GRID: [(u32, u32); 5] = [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)];
const MINUS_GRID: [(u32, u32); 4] = [(3, 1), (4, 1), (4, 2), (5, 2)];

fn grid() -> Vec<PisotBase> {
    PLUS_GRID
        .iter()
        .map(|&(m, n)| make_base(Family::Plus, m, n).unwrap())
        .chain(MINUS_GRID.iter().map(|&(m, n)| make_base(Family::Minus, m, n).unwrap()))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `a + c/β`.
fn inv_basis(b: &PisotBase, a: i64, c: i64) -> FieldElement {
    b.int(a) + b.beta_pow(-1).scale(&q(c))
}

fn poly(cs: &[i64]) -> PisotBase {
    PisotBase::from_polynomial(cs.iter().map(|&c| BigInt::from(c)).collect()).unwrap()
}

fn c1_shift_identity() -> Check {
    let b = make_base(Family::Plus, 1, 1).unwrap();
    let neg = PointSequence::new(&b, Mode::Neg).map_err(|e| e.to_string())?;
    let pos = PointSequence::new(&b, Mode::Pos).map_err(|e| e.to_string())?;
    let mut expected = vec![0];
    expected.extend(pos.positive_word(999));
    ensure(neg.positive_word(1000) == expected, || "u_{-τ}⁺ differs from 0·u_τ".into())
}

fn c2_golden_sums() -> Check {
    let b = make_base(Family::Plus, 1, 1).unwrap();
    let s = PointSequence::new(&b, Mode::Neg).map_err(|e| e.to_string())?;
    ensure(s.point(5) == inv_basis(&b, 4, 1), || format!("t5 = {}", s.point(5)))?;
    ensure(s.point(10) == inv_basis(&b, 7, 3), || format!("t10 = {}", s.point(10)))?;
    ensure(s.point(11) == inv_basis(&b, 7, 4), || format!("t11 = {}", s.point(11)))?;
    let r = addition_report(&s, 5, 5);
    ensure(r.diff == inv_basis(&b, 1, -1), || format!("t5+t5-t10 = {}", r.diff))?;
    let d11 = &r.sum - s.point(11);
    ensure(d11 == inv_basis(&b, 1, -2), || format!("t5+t5-t11 = {d11}"))?;
    ensure(r.closest_index == 11, || format!("closest index {}", r.closest_index))
}

/// Closed forms restated here, independently of the library.
fn expected_delta1(b: &PisotBase, mode: Mode) -> FieldElement {
    let (m, n) = (i64::from(b.m()), i64::from(b.n()));
    match (b.family(), mode) {
        (Family::Plus, Mode::Pos) => inv_basis(b, 0, n),
        (Family::Minus, Mode::Pos) => inv_basis(b, 1, -n),
        (Family::Plus, Mode::Neg) if m == n => inv_basis(b, 0, m),
        (Family::Plus, Mode::Neg) => inv_basis(b, 1, n),
        (Family::Minus, Mode::Neg) => inv_basis(b, 2, -n),
        _ => unreachable!(),
    }
}

fn c3_gaps_vs_oracle() -> Check {
    for b in grid() {
        for mode in [Mode::Pos, Mode::Neg] {
            let tag = format!("{} {mode:?}", b.label());
            let (lo, hi) = (b.int(0), b.int(30));
            let oracle: Vec<_> = brute_force_points(&b, mode, &lo, &hi, None)
                .map_err(|e| format!("{tag}: {e}"))?
                .into_iter()
                .map(|p| p.value)
                .collect();
            let seq = PointSequence::new(&b, mode).map_err(|e| e.to_string())?;
            let gaps = seq.points_in(&lo, &hi);
            ensure(oracle == gaps, || format!("{tag}: oracle has {} points, gap words {}", oracle.len(), gaps.len()))?;
            let d1 = expected_delta1(&b, mode);
            let g = gap_values(&b, mode).map_err(|e| e.to_string())?;
            ensure(g.delta0() == &b.int(1) && g.delta1() == &d1, || format!("{tag}: gap_values {:?}", g.deltas))?;
            for w in oracle.windows(2) {
                let d = &w[1] - &w[0];
                ensure(d == b.int(1) || d == d1, || format!("{tag}: gap {d} after {}", w[0]))?;
            }
        }
    }
    Ok(())
}

fn c4_reference_strings() -> Check {
    for b in grid() {
        let sys = NumerationSystem::new(&b, Mode::Neg).map_err(|e| e.to_string())?;
        let (m, n) = (b.m(), b.n());
        let expected = match b.family() {
            Family::Plus => EventuallyPeriodicWord::new(vec![m], vec![m - n]),
            _ => EventuallyPeriodicWord::periodic(vec![m - 1, n]),
        };
        let dl = sys.d_expansion(sys.l(), 10_000).map_err(|e| e.to_string())?;
        ensure(dl == expected, || format!("{}: d(l) = {dl}, expected {expected}", b.label()))?;
        ensure(sys.reference_words().0 == &expected, || format!("{}: cached low word", b.label()))?;
    }
    Ok(())
}

const PREFIX: usize = 40_000;

fn words(b: &PisotBase) -> Result<(Vec<u8>, Vec<u8>), String> {
    let pos = PointSequence::new(b, Mode::Pos).map_err(|e| e.to_string())?;
    let neg = PointSequence::new(b, Mode::Neg).map_err(|e| e.to_string())?;
    Ok((pos.positive_word(PREFIX), neg.positive_word(PREFIX)))
}

fn all_equal(tag: &str, u: &[u8], v: &[u8]) -> Check {
    let eq = language_equal(u, v, 30).map_err(|e| format!("{tag}: {e}"))?;
    match eq.iter().position(|&x| !x) {
        Some(i) => Err(format!("{tag}: languages differ at length {}", i + 1)),
        None => Ok(()),
    }
}

fn c5_languages() -> Check {
    for m in 1..=3 {
        let b = make_base(Family::Plus, m, m).unwrap();
        let (u, v) = words(&b)?;
        all_equal(&b.label(), &u, &v)?;
    }
    for &(m, n) in PLUS_GRID.iter().filter(|(m, n)| m > n) {
        let b = make_base(Family::Plus, m, n).unwrap();
        let (u, v) = words(&b)?;
        let pt = Morphism::from_strs(&["0", "01"]);
        all_equal(&b.label(), &u, &pt.apply(&v).unwrap())?;
    }
    for (m, n) in MINUS_GRID {
        let b = make_base(Family::Minus, m, n).unwrap();
        let (u, v) = words(&b)?;
        let p = Morphism::from_strs(&["0", "10"]);
        all_equal(&b.label(), &u, &p.apply(&v).unwrap())?;
    }
    Ok(())
}

fn c6_conjugacy() -> Check {
    for m in 1..=3u32 {
        let b = make_base(Family::Plus, m, m).unwrap();
        let c = quadratic_morphisms(&b).map_err(|e| e.to_string())?;
        let mut unit = vec![0; m as usize];
        unit.push(1);
        let expected = power(&unit, m as usize);
        let w = right_conjugate_witness(&c.phi.pow(2), &c.anti.pow(2), None);
        ensure(w.as_ref() == Some(&expected), || format!("{}: witness {w:?}", b.label()))?;
    }
    for b in grid() {
        let c = quadratic_morphisms(&b).map_err(|e| e.to_string())?;
        if let Some(k) = &c.conjugate {
            ensure(verify_intertwining(&k.splitter, &c.anti.pow(2), &k.psi), || {
                format!("{}: intertwining fails", b.label())
            })?;
            let w = right_conjugate_witness(&k.left, &k.right, None);
            ensure(w.as_ref() == Some(&k.factor), || format!("{}: conjugation factor {w:?}", b.label()))?;
        }
    }
    let units = (1..=5)
        .map(|m| make_base(Family::Plus, m, 1).unwrap())
        .chain((3..=5).map(|m| make_base(Family::Minus, m, 1).unwrap()));
    for b in units {
        let dec = sturmian_decomposition(&b).ok_or_else(|| format!("{}: no decomposition", b.label()))?;
        let composed = Morphism::compose_all(&dec).map_err(|e| e.to_string())?;
        let anti = quadratic_morphisms(&b).map_err(|e| e.to_string())?.anti;
        ensure(composed == anti.pow(2), || format!("{}: decomposition gives {composed}", b.label()))?;
    }
    Ok(())
}

fn c7_union() -> Check {
    for m in [2, 3] {
        let b = make_base(Family::Plus, m, 1).unwrap();
        let w = Window::closed(b.int(0), b.int(20)).unwrap();
        let r = verify_union_theorem(&b, &w).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {r:?}", b.label()))?;
    }
    Ok(())
}

fn c8_identifications() -> Check {
    let bases = [
        make_base(Family::Plus, 1, 1),
        make_base(Family::Plus, 2, 1),
        make_base(Family::Minus, 3, 1),
        make_base(Family::Minus, 4, 1),
    ];
    for b in bases {
        let b = b.unwrap();
        let w = Window::closed(b.int(-10), b.int(10)).unwrap();
        let r = verify_identifications(&b, &w).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {r:?}", b.label()))?;
    }
    Ok(())
}

fn c9_sturmian() -> Check {
    for b in grid() {
        let (_, v) = words(&b)?;
        let tag = b.label();
        if b.is_unit() {
            for n in 1..=100 {
                let c = complexity(&v, n).map_err(|e| format!("{tag}: {e}"))?;
                ensure(c == n + 1, || format!("{tag}: C({n}) = {c}"))?;
            }
            let c = balance(&v, 200).map_err(|e| format!("{tag}: {e}"))?;
            ensure(c == 1, || format!("{tag}: balance {c}"))?;
        } else {
            let w = balance_witness(&b).ok_or_else(|| format!("{tag}: no witness"))?;
            for f in [&w.named.0, &w.named.1, &w.pair.0, &w.pair.1] {
                ensure(contains_factor(&v, f), || format!("{tag}: factor {f:?} missing"))?;
            }
            ensure(imbalance(&w.pair.0, &w.pair.1) >= 2, || format!("{tag}: pair is balanced"))?;
        }
    }
    Ok(())
}

fn c10_xi() -> Check {
    for m in 1..=3 {
        let b = make_base(Family::Plus, m, 1).unwrap();
        let tag = b.label();
        let s = PointSequence::new(&b, Mode::Neg).map_err(|e| e.to_string())?;
        let x = xi(&b).map_err(|e| e.to_string())?;
        let expected = if m == 1 { b.beta_pow(-2) } else { -b.beta_pow(-1) };
        ensure(x == expected, || format!("{tag}: ξ = {x}"))?;
        let allowed: BTreeSet<_> = [b.int(0), x.clone()].into_iter().collect();
        let d = diff_set_scan(&s, 200);
        ensure(d.is_subset(&allowed), || format!("{tag}: differences {d:?}"))?;
        let f = symmetry_failures(&s, 300).map_err(|e| e.to_string())?;
        ensure(f.is_empty(), || format!("{tag}: t_j + t_-j != ξ at {f:?}"))?;
        if m >= 2 {
            let ok = closest_point_property(&s, 150).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{tag}: closest-point property fails"))?;
        }
    }
    Ok(())
}

fn c11_minus_bound() -> Check {
    for m in [3, 4] {
        let b = make_base(Family::Minus, m, 1).unwrap();
        let s = PointSequence::new(&b, Mode::Neg).map_err(|e| e.to_string())?;
        let eta = inv_basis(&b, 1, -1);
        let allowed: BTreeSet<_> = [-&eta, b.int(0), eta.clone()].into_iter().collect();
        let d = diff_set_scan(&s, 200);
        ensure(d.is_subset(&allowed), || format!("{}: differences {d:?}", b.label()))?;
    }
    Ok(())
}

fn c12_counterexamples() -> Check {
    let b = poly(&[-1, -1, 0, 1]);
    let s = PointSequence::new(&b, Mode::Pos).map_err(|e| e.to_string())?;
    ensure(s.positive_word(24) == word("012340010120123012340123"), || "u_β prefix".into())?;
    let g = s.gaps();
    ensure(g.deltas[0] == &g.deltas[2] + &g.deltas[3], || "Δ0 != Δ2 + Δ3".into())?;
    ensure(rational_rank(&g.deltas) < g.deltas.len(), || "gaps independent".into())?;
    let sum = s.point(1) + s.point(2);
    ensure(oplus(&s, 1, 2) == s.point(3) && sum != s.point(3) && sum == s.point(4), || format!("t1 + t2 = {sum}"))?;
    let v = compatibility_scan(&s, 10);
    ensure(v.iter().any(|v| (v.j, v.k, v.sum_index) == (1, 2, 4)), || format!("violations {v:?}"))?;

    let b = make_base(Family::Minus, 3, 1).unwrap();
    let s = PointSequence::new(&b, Mode::Neg).map_err(|e| e.to_string())?;
    ensure(s.point(6) == inv_basis(&b, 9, -3), || format!("t6 = {}", s.point(6)))?;
    let r = addition_report(&s, 6, 6);
    ensure(r.closest_index == 11 && r.closest == inv_basis(&b, 18, -7), || format!("{r:?}"))?;
    for m in 4..=7u32 {
        let b = make_base(Family::Minus, m, 1).unwrap();
        let s = PointSequence::new(&b, Mode::Neg).map_err(|e| e.to_string())?;
        let r = addition_report(&s, 2, i64::from(m) - 2);
        ensure(
            r.closest_index == i64::from(m) - 1 && r.closest == inv_basis(&b, i64::from(m), -1),
            || format!("{}: {r:?}", b.label()),
        )?;
    }
    Ok(())
}

fn c13_degree_six() -> Check {
    let b = poly(&[-1, 0, 0, 0, 0, -1, 1]);
    let s = PointSequence::new(&b, Mode::Pos).map_err(|e| e.to_string())?;
    let v = compatibility_scan(&s, 100);
    ensure(v.is_empty(), || format!("violations {v:?}"))?;
    let rank = rational_rank(&s.gaps().deltas);
    ensure(rank == 6, || format!("rank {rank}"))?;
    let g = balance_growth(&s, &[100, 400, 1600]).map_err(|e| e.to_string())?;
    let cs: Vec<u32> = g.iter().map(|&(_, c)| c).collect();
    ensure(cs.windows(2).all(|w| w[0] <= w[1]) && cs[0] < cs[2], || format!("balances {g:?}"))?;
    println!("    balances at lengths 100, 400, 1600: {cs:?}");
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("1 golden shift identity u_{-τ}⁺ = 0·u_τ", Some(Duration::from_secs(1)), c1_shift_identity),
        ("2 golden-ratio sums t5 + t5", None, c2_golden_sums),
        ("3 gap closed forms vs oracle", Some(Duration::from_secs(30)), c3_gaps_vs_oracle),
        ("4 reference strings d_{-β}(l)", None, c4_reference_strings),
        ("5 language theorems", Some(Duration::from_secs(60)), c5_languages),
        ("6 conjugacy, intertwining, decompositions", None, c6_conjugacy),
        ("7 union theorem", None, c7_union),
        ("8 cut-and-project identifications", None, c8_identifications),
        ("9 Sturmian dichotomy", None, c9_sturmian),
        ("10 addition structure for x^2 - mx - 1", Some(Duration::from_secs(60)), c10_xi),
        ("11 difference bound for x^2 - mx + 1", None, c11_minus_bound),
        ("12 counterexamples", None, c12_counterexamples),
        ("13 degree-six base", None, c13_degree_six),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(()), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(()) => println!("PASS criterion {name} ({took:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} ({took:.2?}): {e}");
            }
        }
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
