use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Poly;
use crate::algebra::var::VarKey;
use crate::algebra::weight::Weight;
use crate::baxter::{
    chi_ell_poly, first_mutation_from_qchar, identify_z_to_ell, phi_n_check_sl2, verify_baxter_sl2,
    verify_mutation_identity, duality_d, Side, Verified,
};
use crate::cartan::CartanData;
use crate::cluster::{initial_seed, is_laurent, mutate, Seed};
use crate::error::{Error, Result};
use crate::lweight::LWeightMono;
use crate::qchar::{kr_qchar_sl2, limit_stabilizes};
use crate::quiver::{build_gamma_window, Vertex};
use crate::sl2::{
    factorize, is_simple_product, random_factor, random_positive, web_property_check, Factor, HalfLine, QString,
};

pub const FIXTURES: [&str; 9] = [
    "6.1.1",
    "6.1.2",
    "B2-seed",
    "exsl3",
    "fact-sl2",
    "normlimit-sl2",
    "phiN",
    "relB2",
    "web-sl2",
];

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unsupported => "unsupported",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    fn from_result(name: &str, start: Instant, r: Result<Verified>) -> Self {
        let elapsed = start.elapsed();
        let (status, lhs, rhs) = match r {
            Ok(v) => (Status::Pass, v.lhs, v.rhs),
            Err(Error::Mismatch { name: what, lhs, rhs }) => (Status::Fail, format!("{what}: {lhs}"), rhs),
            Err(Error::UnsupportedCase(msg)) => (Status::Unsupported, msg, String::new()),
            Err(e) => (Status::Fail, e.to_string(), String::new()),
        };
        Self {
            name: name.to_string(),
            status,
            lhs,
            rhs,
            elapsed,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn elapsed_ms(&self) -> u128 {
        self.elapsed.as_millis()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.status, self.name)?;
        if self.status != Status::Pass {
            write!(f, "\n  lhs: {}\n  rhs: {}", self.lhs, self.rhs)?;
        }
        Ok(())
    }
}

fn all_ok(name: &str, checks: Vec<Verified>) -> Verified {
    let lhs: Vec<String> = checks.iter().map(|c| c.lhs.clone()).collect();
    let rhs: Vec<String> = checks.iter().map(|c| c.rhs.clone()).collect();
    Verified {
        name: name.to_string(),
        lhs: lhs.join("; "),
        rhs: rhs.join("; "),
    }
}

fn check_eq(name: String, lhs: &Poly, rhs: &Poly) -> Result<Verified> {
    if lhs == rhs {
        Ok(Verified {
            name,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    } else {
        Err(Error::Mismatch {
            name,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }
}

/// The sl2 triple mutation (1,0), (1,−2), (1,2) on [−6,6], each new variable
/// against χ_ℓ of the KR module it should be.
pub fn triple_mutation_sl2() -> Result<Verified> {
    let cd = CartanData::sl2();
    let q = build_gamma_window(&cd, Vertex::new(1, 0), -6, 6)?;
    let steps = [(Vertex::new(1, 0), 1, -1), (Vertex::new(1, -2), 2, -3), (Vertex::new(1, 2), 3, -3)];
    let mut seed = initial_seed(&q);
    let mut checks = Vec::new();
    for (v, k, s) in steps {
        seed = mutate(&seed, v)?;
        let lhs = identify_z_to_ell(&cd, &seed.attach[&v].to_laurent()?)?;
        let rhs = chi_ell_poly(&cd, &kr_qchar_sl2(k, s).poly, Side::Plus)?;
        checks.push(check_eq(format!("mutation at {v}"), &lhs, &rhs)?);
    }
    Ok(all_ok("6.1.1", checks))
}

fn mutation_at(cd: &CartanData, window: (i64, i64), v: Vertex) -> Result<Verified> {
    let q = build_gamma_window(cd, v, window.0, window.1)?;
    verify_mutation_identity(cd, &q, v)
}

/// sl3 first mutation at (1,0) from the q-character side: [α₁/2](ℓ_{2,1}ℓ_{1,−2} + [−α₁]ℓ_{1,2}ℓ_{2,−1})/ℓ_{1,0}.
pub fn exsl3() -> Result<Verified> {
    let cd: CartanData = "A2".parse()?;
    let half = num_rational::BigRational::new(1.into(), 2.into());
    let a1 = cd.alpha(1);
    let l = |i, r| Monomial::var(VarKey::ell(i, r));
    let mut num = Poly::monomial(&l(2, 1) * &l(1, -2));
    num.add_term((&l(1, 2) * &l(2, -1)).with_weight(-&a1), 1.into());
    let expect = num.mul_monomial(&l(1, 0).inv().with_weight(a1.scale(&half)));
    let got = first_mutation_from_qchar(&cd, 1, 0)?;
    check_eq("exsl3".into(), &got, &expect)?;
    let m = mutation_at(&cd, (-3, 3), Vertex::new(1, 0))?;
    check_eq("exsl3 mutation".into(), &m.lhs.parse()?, &expect)
}

/// Identified initial variables of the B2 figure and their D-mirrors.
pub fn b2_seed() -> Result<Verified> {
    let cd: CartanData = "B2".parse()?;
    let q = build_gamma_window(&cd, Vertex::new(2, -1), -13, -1)?;
    let figure: Vec<Vertex> = [(2, -1), (2, -3), (1, -3), (1, -5), (2, -5), (2, -7), (1, -7), (1, -9), (2, -9), (2, -11), (1, -11), (1, -13)]
        .iter()
        .map(|&(i, r)| Vertex::new(i, r))
        .collect();
    let mut checks = Vec::new();
    for v in figure {
        if !q.contains(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let w = Weight::omega(v.node).scale(&num_rational::BigRational::new((-v.shift).into(), (2 * cd.d(v.node)).into()));
        let plus = identify_z_to_ell(&cd, &Poly::var(VarKey::z(v.node, v.shift)))?;
        let expect = Poly::monomial(Monomial::var(VarKey::ell(v.node, v.shift)).with_weight(w.clone()));
        checks.push(check_eq(format!("B2 {v}"), &plus, &expect)?);
        let minus = Poly::monomial(Monomial::var(VarKey::ell_minus(v.node, -v.shift)).with_weight(w));
        checks.push(check_eq(format!("B2 mirror {v}"), &duality_d(&plus)?, &minus)?);
    }
    Ok(all_ok("B2-seed", checks))
}

pub fn fact_sl2() -> Result<Verified> {
    let cd = CartanData::sl2();
    let cases: [(&str, Vec<QString>, Vec<HalfLine>); 3] = [
        ("Y(1,-1)·Y(1,1)", vec![QString::new(-1, 2)], vec![]),
        ("Y(1,-1)·Y(1,3)", vec![QString::new(-1, 1), QString::new(3, 1)], vec![]),
        ("Psi(1,0)^2", vec![], vec![HalfLine { base: 0 }, HalfLine { base: 0 }]),
    ];
    let mut checks = Vec::new();
    for (text, strings, halflines) in cases {
        let psi: LWeightMono = text.parse()?;
        let f = factorize(&cd, &psi)?;
        let name = format!("factorize {text}");
        if f.strings != strings || f.halflines != halflines || !f.multiply().same_lweight(&psi, &cd) {
            return Err(Error::Mismatch {
                name,
                lhs: f.to_string(),
                rhs: format!("{strings:?} {halflines:?}"),
            });
        }
        checks.push(Verified {
            name,
            lhs: f.to_string(),
            rhs: text.to_string(),
        });
    }
    Ok(all_ok("fact-sl2", checks))
}

pub fn web_sl2() -> Result<Verified> {
    let s = |a, b| Factor::String(QString::new(a, b));
    let h = |b| Factor::Half(HalfLine { base: b });
    let simple = web_property_check(&[s(0, 1), s(4, 2), s(-6, 1)])?;
    let not_simple = web_property_check(&[s(0, 2), s(2, 2), s(10, 1)])?;
    let mixed = web_property_check(&[h(0), h(4), s(-3, 2)])?;
    if simple.lhs != "true" || not_simple.lhs != "false" {
        return Err(Error::Mismatch {
            name: "web-sl2".into(),
            lhs: format!("{} {}", simple.lhs, not_simple.lhs),
            rhs: "true false".into(),
        });
    }
    Ok(all_ok("web-sl2", vec![simple, not_simple, mixed]))
}

pub fn normlimit_sl2() -> Result<Verified> {
    let mut checks = Vec::new();
    for s in [-2, 0, 2] {
        let n = limit_stabilizes(s, 8)?;
        checks.push(Verified {
            name: format!("s={s}"),
            lhs: format!("s={s}: k=2..8"),
            rhs: format!("{n} depths"),
        });
    }
    Ok(all_ok("normlimit-sl2", checks))
}

pub fn phi_n() -> Result<Verified> {
    Ok(all_ok("phiN", (2..=6).map(phi_n_check_sl2).collect::<Result<_>>()?))
}

pub fn relb2() -> Result<Verified> {
    let cd = CartanData::sl2();
    let q = build_gamma_window(&cd, Vertex::new(1, 0), -6, 6)?;
    let mut checks = vec![verify_baxter_sl2(1, -1)?];
    for v in q.mutable().collect::<Vec<_>>() {
        checks.push(verify_mutation_identity(&cd, &q, v)?);
    }
    Ok(all_ok("relB2", checks))
}

fn dispatch(name: &str) -> Result<Verified> {
    match name {
        "6.1.1" => triple_mutation_sl2(),
        "6.1.2" => mutation_at(&"A2".parse()?, (-3, 3), Vertex::new(1, 0)),
        "relB2" => relb2(),
        "exsl3" => exsl3(),
        "phiN" => phi_n(),
        "B2-seed" => b2_seed(),
        "normlimit-sl2" => normlimit_sl2(),
        "web-sl2" => web_sl2(),
        "fact-sl2" => fact_sl2(),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

pub fn run_fixture(name: &str) -> Result<VerificationReport> {
    if !FIXTURES.contains(&name) {
        return Err(Error::UnknownFixture(name.to_string()));
    }
    let start = Instant::now();
    Ok(VerificationReport::from_result(name, start, dispatch(name)))
}

/// Windows used for random mutation sequences.
pub fn sweep_window(cd: &CartanData) -> (i64, i64) {
    match cd.lacing() {
        1 if cd.rank() == 1 => (-8, 8),
        1 => (-6, 6),
        _ => (-8, 8),
    }
}

/// Random mutation sequences of length 1..=max_len: all attachments stay Laurent
/// and mutating the last vertex again restores the previous seed.
pub fn laurent_sweep(rng: &mut impl Rng, cd: &CartanData, samples: usize, max_len: usize) -> Result<Verified> {
    let (lo, hi) = sweep_window(cd);
    let q = build_gamma_window(cd, Vertex::new(1, 0), lo, hi)?;
    let start = initial_seed(&q);
    for n in 0..samples {
        let len = rng.gen_range(1..=max_len);
        let mut seed: Seed = start.clone();
        let mut prev = seed.clone();
        for _ in 0..len {
            let k = seed.quiver.mutable().choose(rng).ok_or_else(|| Error::EmptyWindow(cd.name()))?;
            prev = seed;
            seed = mutate(&prev, k)?;
        }
        let seq: Vec<String> = seed.history.iter().map(Vertex::to_string).collect();
        if !is_laurent(&seed) {
            return Err(Error::Counterexample(format!("{cd} sample {n}: not Laurent after {}", seq.join(";"))));
        }
        let last = *seed.history.last().expect("nonempty sequence");
        let back = mutate(&seed, last)?;
        if !back.quiver.canonical_eq(&prev.quiver) || back.attach != prev.attach {
            return Err(Error::Counterexample(format!("{cd} sample {n}: re-mutation at {last} after {}", seq.join(";"))));
        }
    }
    Ok(Verified {
        name: format!("laurent {cd}"),
        lhs: format!("{samples} sequences"),
        rhs: "laurent and involutive".into(),
    })
}

/// factorize ∘ multiply is the identity on random positive sl2 ℓ-weights.
pub fn factorize_sweep(rng: &mut impl Rng, samples: usize) -> Result<Verified> {
    let cd = CartanData::sl2();
    for _ in 0..samples {
        let psi = random_positive(rng, 4);
        let f = factorize(&cd, &psi)?;
        if !f.multiply().same_lweight(&psi, &cd) || !is_simple_product(&f.factors()) || factorize(&cd, &f.multiply())? != f {
            return Err(Error::Counterexample(format!("factorize {psi} -> {f}")));
        }
    }
    Ok(Verified {
        name: "factorize round trip".into(),
        lhs: format!("{samples} samples"),
        rhs: "round trip".into(),
    })
}

/// Web property on random triples and quadruples.
pub fn web_sweep(rng: &mut impl Rng, samples: usize) -> Result<Verified> {
    let mut simple = 0;
    for _ in 0..samples {
        let n = rng.gen_range(3..=4);
        let factors: Vec<Factor> = (0..n).map(|_| random_factor(rng, -20, 20, 3)).collect();
        if web_property_check(&factors)?.lhs == "true" {
            simple += 1;
        }
    }
    Ok(Verified {
        name: "web property".into(),
        lhs: format!("{samples} samples, {simple} simple"),
        rhs: "no counterexample".into(),
    })
}

/// Fixtures in canonical order, then the seeded property sweeps when `samples > 0`.
pub fn run_all(seed: u64, samples: usize) -> Vec<VerificationReport> {
    let mut out: Vec<VerificationReport> = FIXTURES
        .iter()
        .map(|name| run_fixture(name).expect("registered fixture"))
        .collect();
    if samples == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for ty in ["A1", "A2", "B2"] {
        let start = Instant::now();
        let cd: CartanData = ty.parse().expect("known type");
        let name = format!("sweep-laurent-{ty}");
        let r = laurent_sweep(&mut rng, &cd, samples.min(100), 8);
        out.push(VerificationReport::from_result(&name, start, r));
    }
    let start = Instant::now();
    let r = factorize_sweep(&mut rng, samples);
    out.push(VerificationReport::from_result("sweep-factorize", start, r));
    let start = Instant::now();
    let r = web_sweep(&mut rng, samples);
    out.push(VerificationReport::from_result("sweep-web", start, r));
    out
}
