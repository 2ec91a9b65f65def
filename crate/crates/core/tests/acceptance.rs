use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qac_core::baxter::{
    chi_ell, chi_ell_poly, duality_d, duality_d_expr, first_mutation_from_qchar, identify_z_to_ell,
    phi_n_check_sl2, verify_mutation_identity, verify_mutation_window, Side,
};
use qac_core::cluster::{f_hom, frozen_lift, initial_seed, mutate, multidegree, Seed};
use qac_core::fixtures::{factorize_sweep, laurent_sweep, web_sweep};
use qac_core::qchar::{kr_qchar_sl2, limit_stabilizes, prefund_minus_qchar_sl2, prefund_plus_qchar_sl2};
use qac_core::quiver::{build_gamma_window, build_ice_hminus};
use qac_core::sl2::{factorize, is_simple_product, random_positive, simple_qchar_oracle};
use qac_core::{CartanData, LWeightMono, Monomial, Poly, VarKey, Vertex, Weight};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(what: &str, got: &Poly, want: &Poly) -> Result<(), String> {
    ensure(got == want, || format!("{what}: got {got}, want {want}"))
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn omega(n: i64) -> Weight {
    Weight::from_ints(&[(1, n)])
}

fn ell(i: u32, r: i64) -> Monomial {
    Monomial::var(VarKey::ell(i, r))
}

fn ell_minus(r: i64) -> Monomial {
    Monomial::var(VarKey::ell_minus(1, r))
}

fn sum(terms: impl IntoIterator<Item = Monomial>) -> Poly {
    let mut p = Poly::zero();
    for m in terms {
        p.add_term(m, BigInt::from(1));
    }
    p
}

/// sl2 KR ladder, term j: Y_s ... Y_{s+2(k-j-1)} Y_{s+2(k-j)+2}^{-1} ... Y_{s+2k}^{-1},
/// as lists of (shift, exponent).
fn kr_ladder(k: i64, s: i64) -> Vec<Vec<(i64, i64)>> {
    (0..=k)
        .map(|j| {
            let mut m: Vec<(i64, i64)> = (0..k - j).map(|l| (s + 2 * l, 1)).collect();
            m.extend((k - j..k).map(|l| (s + 2 * l + 2, -1)));
            m
        })
        .collect()
}

fn ladder_qchar(k: i64, s: i64) -> Poly {
    sum(kr_ladder(k, s).into_iter().map(|m| {
        let mut out = Monomial::one();
        for (r, e) in m {
            out.mul_var(VarKey::y(1, r), e);
        }
        out
    }))
}

/// Y_r^e -> [e w] l_{r-1}^e l_{r+1}^{-e}.
fn ladder_ell(k: i64, s: i64) -> Poly {
    sum(kr_ladder(k, s).into_iter().map(|m| {
        let w: i64 = m.iter().map(|(_, e)| e).sum();
        let mut out = Monomial::from_weight(omega(w));
        for (r, e) in m {
            out.mul_var(VarKey::ell(1, r - 1), e);
            out.mul_var(VarKey::ell(1, r + 1), -e);
        }
        out
    }))
}

fn identified(cd: &CartanData, seed: &Seed, v: Vertex) -> Result<Poly, String> {
    identify_z_to_ell(cd, &seed.attach[&v].to_laurent().map_err(e)?).map_err(e)
}

fn c1_triple_mutation() -> Outcome {
    let cd = CartanData::sl2();
    let q = build_gamma_window(&cd, Vertex::new(1, 0), -6, 6).map_err(e)?;
    let mut seed = initial_seed(&q);
    for (v, k, s) in [((1, 0), 1, -1), ((1, -2), 2, -3), ((1, 2), 3, -3)] {
        let v = Vertex::new(v.0, v.1);
        seed = mutate(&seed, v).map_err(e)?;
        same(&format!("mutation at {v}"), &identified(&cd, &seed, v)?, &ladder_ell(k, s))?;
    }
    Ok("three new variables match".into())
}

fn c2_relb2() -> Outcome {
    let cd = CartanData::sl2();
    let q = build_gamma_window(&cd, Vertex::new(1, 0), -6, 6).map_err(e)?;
    let start = initial_seed(&q);
    let mut n = 0;
    for v in q.mutable().collect::<Vec<_>>() {
        verify_mutation_identity(&cd, &q, v).map_err(e)?;
        let r = v.shift;
        let lhs = identified(&cd, &mutate(&start, v).map_err(e)?, v)?.mul_monomial(&ell(1, r));
        let rhs = sum([ell(1, r - 2).with_weight(omega(1)), ell(1, r + 2).with_weight(omega(-1))]);
        same(&format!("relB2 at a = q^{}", r - 1), &lhs, &rhs)?;
        n += 1;
    }
    Ok(format!("{n} vertices"))
}

fn c3_exsl3() -> Outcome {
    let cd: CartanData = "A2".parse().map_err(e)?;
    let q = build_gamma_window(&cd, Vertex::new(1, 0), -3, 3).map_err(e)?;
    let v = Vertex::new(1, 0);
    let got = identified(&cd, &mutate(&initial_seed(&q), v).map_err(e)?, v)?;
    let a1 = Weight::from_ints(&[(1, 2), (2, -1)]);
    let half = a1.scale(&BigRational::new(1.into(), 2.into()));
    let num = sum([&ell(2, 1) * &ell(1, -2), (&ell(1, 2) * &ell(2, -1)).with_weight(-&a1)]);
    let want = num.mul_monomial(&ell(1, 0).inv().with_weight(half));
    same("exsl3", &got, &want)?;
    Ok(format!("{got}"))
}

fn c4_structural() -> Outcome {
    let mut total = 0;
    for ty in ["A1", "A2", "A3", "B2", "G2"] {
        let cd: CartanData = ty.parse().map_err(e)?;
        let base = Vertex::new(1, 0);
        let w = 6 * cd.lacing();
        let checked = verify_mutation_window(&cd, base, w).map_err(e)?;
        let q = build_gamma_window(&cd, base, -w, w).map_err(e)?;
        let start = initial_seed(&q);
        for v in q.mutable().collect::<Vec<_>>() {
            let got = identified(&cd, &mutate(&start, v).map_err(e)?, v)?;
            let want = first_mutation_from_qchar(&cd, v.node, v.shift).map_err(e)?;
            same(&format!("{ty} {v}"), &got, &want)?;
        }
        total += checked.len();
    }
    Ok(format!("{total} vertices over 5 types"))
}

fn c5_phi_n() -> Outcome {
    let quotient = sum([Monomial::var(VarKey::y(1, 1)), Monomial::var_pow(VarKey::y(1, 3), -1)]);
    for n in 2..=6i64 {
        phi_n_check_sl2(n as u32).map_err(e)?;
        let s = 1 - 2 * n;
        let num = &ladder_qchar(n - 1, s) + &ladder_qchar(n + 1, s);
        same(&format!("N={n}"), &(&quotient * &ladder_qchar(n, s)), &num)?;
    }
    Ok("N = 2..6".into())
}

fn c6_normlimit() -> Outcome {
    let a_inv = |r: i64| {
        let mut m = Monomial::one();
        m.mul_var(VarKey::y(1, r - 1), -1);
        m.mul_var(VarKey::y(1, r + 1), -1);
        m
    };
    for s in [-2i64, 0, 2] {
        limit_stabilizes(s, 8).map_err(e)?;
        for k in 2..=8u32 {
            let mut m = Monomial::one();
            let mut ladder = vec![m.clone()];
            for j in 0..k as i64 - 1 {
                m = &m * &a_inv(s - 2 * j);
                ladder.push(m.clone());
            }
            let want = sum(ladder);
            let kr = kr_qchar_sl2(k, 1 - 2 * k as i64 + s)
                .normalize()
                .and_then(|c| c.truncate_depth(k - 1))
                .map_err(e)?;
            same(&format!("KR k={k} s={s}"), &kr.poly, &want)?;
            let minus = prefund_minus_qchar_sl2(s, k - 1).normalize().map_err(e)?;
            same(&format!("L- s={s} depth {}", k - 1), &minus.poly, &want)?;
        }
        for depth in 0..=10u32 {
            let chars = sum((0..=depth as i64).map(|n| Monomial::from_weight(omega(-2 * n))));
            let plus = prefund_plus_qchar_sl2(s, depth).normalize().and_then(|c| c.character()).map_err(e)?;
            let minus = prefund_minus_qchar_sl2(s, depth).normalize().and_then(|c| c.character()).map_err(e)?;
            same(&format!("L+ character depth {depth}"), &plus, &chars)?;
            same(&format!("L- character depth {depth}"), &minus, &chars)?;
        }
    }
    Ok("s in {-2,0,2}, k = 2..8, depths 0..10".into())
}

fn c7_laurent() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ty in ["A1", "A2", "B2"] {
        let cd: CartanData = ty.parse().map_err(e)?;
        laurent_sweep(&mut rng, &cd, 100, 8).map_err(e)?;
    }
    Ok("300 sequences".into())
}

fn seed_key(s: &Seed) -> String {
    let mut key = s.quiver.canonical().to_adjacency();
    for (v, a) in &s.attach {
        key.push_str(&format!("{v}={a};"));
    }
    key
}

fn c8_multigrading() -> Outcome {
    let cd: CartanData = "A2".parse().map_err(e)?;
    let ice = build_ice_hminus(&cd, Vertex::new(1, 0), 6).map_err(e)?;
    let ice_seed = ice.initial_seed(&cd);
    let free_seed = ice.coefficient_free_seed();
    let mut best: HashMap<String, usize> = HashMap::new();
    let mut stack = vec![(ice_seed, free_seed, 0usize)];
    let mut checked = 0;
    while let Some((y, x, len)) = stack.pop() {
        if best.get(&seed_key(&y)).is_some_and(|&l| l <= len) {
            continue;
        }
        best.insert(seed_key(&y), len);
        if len == 6 {
            continue;
        }
        for k in y.quiver.mutable().collect::<Vec<_>>() {
            if y.history.last() == Some(&k) {
                continue;
            }
            let y2 = mutate(&y, k).map_err(e)?;
            let x2 = mutate(&x, k).map_err(e)?;
            let (yv, xv) = (y2.attach[&k].to_laurent().map_err(e)?, x2.attach[&k].to_laurent().map_err(e)?);
            multidegree(&cd, &yv).map_err(|err| format!("{k} after {:?}: {err}", y2.history))?;
            let deg = multidegree(&cd, &f_hom(&cd, &xv)).map_err(e)?;
            ensure(deg.is_zero(), || format!("F({xv}) has degree {deg}"))?;
            same(&format!("frozen lift at {k}"), &yv, &frozen_lift(&cd, &xv))?;
            checked += 1;
            stack.push((y2, x2, len + 1));
        }
    }
    Ok(format!("{} seeds, {checked} variables", best.len()))
}

fn c9_factorization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    factorize_sweep(&mut rng, 1000).map_err(e)?;
    let web = web_sweep(&mut rng, 1000).map_err(e)?;
    let cd = CartanData::sl2();
    let mut products = 0;
    for _ in 0..200 {
        let (a, b) = (random_positive(&mut rng, 2), random_positive(&mut rng, 2));
        let ab = &a * &b;
        let oracle = simple_qchar_oracle(&cd, &ab, 6).map_err(e)?;
        let top = LWeightMono::from_monomial(&oracle.top().map_err(e)?).map_err(e)?;
        ensure(top.same_lweight(&ab, &cd), || format!("top of L({ab}) is {top}"))?;
        let mut factors = factorize(&cd, &a).map_err(e)?.factors();
        factors.extend(factorize(&cd, &b).map_err(e)?.factors());
        if !is_simple_product(&factors) {
            continue;
        }
        let split = simple_qchar_oracle(&cd, &a, 6)
            .and_then(|qa| qa.mul(&simple_qchar_oracle(&cd, &b, 6)?))
            .map_err(e)?;
        same(&format!("L({a}) L({b})"), &split.poly, &oracle.poly)?;
        products += 1;
    }
    for k in 1..=4i64 {
        let s = rng.gen_range(-10..=10);
        let psi = (0..k).fold(LWeightMono::unit(), |acc, j| &acc * &LWeightMono::y(1, s + 2 * j));
        let got = simple_qchar_oracle(&cd, &psi, 6).map_err(e)?;
        same(&format!("W({k},{s})"), &got.poly, &ladder_qchar(k, s))?;
    }
    Ok(format!("1000 round trips, {}, {products} products", web.lhs))
}

fn c10_duality() -> Outcome {
    for s in -6..=6i64 {
        let plus = sum([ell(1, s - 1).with_weight(omega(1)), ell(1, s + 3).with_weight(omega(-1))])
            .mul_monomial(&ell(1, s + 1).inv());
        let got = chi_ell(&kr_qchar_sl2(1, s), Side::Plus).map_err(e)?;
        same(&format!("plus side s={s}"), &got.to_laurent(), &plus)?;
        let minus = sum([ell_minus(1 - s).with_weight(omega(1)), ell_minus(-s - 3).with_weight(omega(-1))])
            .mul_monomial(&ell_minus(-s - 1).inv());
        same(&format!("D(plus) s={s}"), &duality_d(&plus).map_err(e)?, &minus)?;
        let d = duality_d_expr(&got).map_err(e)?;
        same(&format!("D expr s={s}"), &d.to_laurent(), &minus)?;
        let cd = CartanData::sl2();
        for k in 1..=3i64 {
            let lhs = duality_d(&chi_ell_poly(&cd, &ladder_qchar(k, s), Side::Plus).map_err(e)?).map_err(e)?;
            let rhs = chi_ell_poly(&cd, &ladder_qchar(k, -s - 2 * k), Side::Minus).map_err(e)?;
            same(&format!("D W({k},{s})"), &lhs, &rhs)?;
        }
    }
    Ok("s = -6..6".into())
}

fn run(n: u32, title: &str, limit: Duration, f: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|detail| {
        if elapsed <= limit {
            Ok(detail)
        } else {
            Err(format!("took {elapsed:?}, limit {limit:?}"))
        }
    });
    let ms = elapsed.as_millis();
    match &outcome {
        Ok(detail) => println!("PASS criterion {n}: {title} ({detail}) [{ms} ms]"),
        Err(why) => println!("FAIL criterion {n}: {title}: {why} [{ms} ms]"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        run(1, "sl2 triple mutation", secs(1), c1_triple_mutation),
        run(2, "sl2 Baxter relation at every interior vertex", secs(1), c2_relb2),
        run(3, "sl3 first mutation", secs(1), c3_exsl3),
        run(4, "first mutation in A1 A2 A3 B2 G2", secs(10), c4_structural),
        run(5, "phi_N quotient", secs(1), c5_phi_n),
        run(6, "normalized limits and characters", secs(5), c6_normlimit),
        run(7, "Laurent phenomenon and involutivity", secs(30), c7_laurent),
        run(8, "multigrading of the A2 ice quiver", secs(10), c8_multigrading),
        run(9, "sl2 factorization and web property", secs(30), c9_factorization),
        run(10, "duality on sl2 l-characters", secs(1), c10_duality),
    ];
    let passed = results.iter().filter(|ok| **ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
