use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::algebra::weight::Weight;
use crate::baxter::Verified;
use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::lweight::LWeightMono;
use crate::qchar::{kr_qchar_sl2, prefund_plus_qchar_sl2, QCharacter};

/// The KR module W_{len, q^start}, support {start, start+2, ..., start+2(len−1)}.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct QString {
    pub start: i64,
    pub len: u32,
}

/// L⁺_{q^base}, support {base+1, base+3, ...}.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct HalfLine {
    pub base: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Factor {
    String(QString),
    Half(HalfLine),
}

impl QString {
    pub fn new(start: i64, len: u32) -> Self {
        assert!(len >= 1, "a q-string has positive length");
        Self { start, len }
    }

    pub fn end(&self) -> i64 {
        self.start + 2 * (self.len as i64 - 1)
    }
}

impl fmt::Display for QString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({},{})", self.len, self.start)
    }
}

impl fmt::Display for HalfLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L+({})", self.base)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::String(s) => s.fmt(f),
            Factor::Half(h) => h.fmt(f),
        }
    }
}

impl Factor {
    /// (lowest point, highest point or None when unbounded).
    fn support(&self) -> (i64, Option<i64>) {
        match self {
            Factor::String(s) => (s.start, Some(s.end())),
            Factor::Half(h) => (h.base + 1, None),
        }
    }

    pub fn lweight(&self) -> LWeightMono {
        match self {
            Factor::String(s) => (0..s.len as i64).fold(LWeightMono::unit(), |acc, j| &acc * &LWeightMono::y(1, s.start + 2 * j)),
            Factor::Half(h) => LWeightMono::psi(1, h.base),
        }
    }

    fn qchar(&self, depth: u32) -> QCharacter {
        match self {
            Factor::String(s) => kr_qchar_sl2(s.len, s.start),
            Factor::Half(h) => prefund_plus_qchar_sl2(h.base, depth),
        }
    }
}

fn contains(outer: (i64, Option<i64>), inner: (i64, Option<i64>)) -> bool {
    let top_ok = match (outer.1, inner.1) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => b <= a,
    };
    outer.0 <= inner.0 && top_ok
}

/// The union of the supports is one step-2 progression that properly contains both.
pub fn special_position(a: &Factor, b: &Factor) -> bool {
    let (sa, sb) = (a.support(), b.support());
    if (sa.0 - sb.0).rem_euclid(2) != 0 {
        return false;
    }
    if sa.1.is_none() && sb.1.is_none() {
        return false;
    }
    let touches = |x: (i64, Option<i64>), y: (i64, Option<i64>)| x.1.map_or(true, |hi| y.0 <= hi + 2);
    let contiguous = touches(sa, sb) && touches(sb, sa);
    contiguous && !contains(sa, sb) && !contains(sb, sa)
}

pub fn is_simple_product(factors: &[Factor]) -> bool {
    factors
        .iter()
        .enumerate()
        .all(|(i, a)| factors[i + 1..].iter().all(|b| !special_position(a, b)))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Factorization {
    pub invertible: Weight,
    pub strings: Vec<QString>,
    pub halflines: Vec<HalfLine>,
}

impl Factorization {
    pub fn factors(&self) -> Vec<Factor> {
        self.strings
            .iter()
            .map(|s| Factor::String(*s))
            .chain(self.halflines.iter().map(|h| Factor::Half(*h)))
            .collect()
    }

    /// The product ℓ-weight.
    pub fn multiply(&self) -> LWeightMono {
        self.factors()
            .iter()
            .fold(LWeightMono::token(self.invertible.clone()), |acc, f| &acc * &f.lweight())
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invertible)?;
        for x in self.factors() {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

fn require_sl2(cd: &CartanData) -> Result<()> {
    if cd.rank() == 1 {
        Ok(())
    } else {
        Err(Error::NotSl2(cd.to_string()))
    }
}

/// The unique factorization of a positive sl2 ℓ-weight into KR modules,
/// positive prefundamentals and an invertible.
///
/// With n_r the running sum of the Ψ-exponents along a parity chain, each
/// level set {n ≥ l} splits into maximal runs; bounded runs are strings and a
/// run that reaches the top is a halfline.
pub fn factorize(cd: &CartanData, psi: &LWeightMono) -> Result<Factorization> {
    require_sl2(cd)?;
    if !psi.is_positive(cd) {
        return Err(Error::NotPositive(psi.to_string()));
    }
    let pf = psi.psi_form(cd);
    let mut chains: BTreeMap<i64, BTreeMap<i64, i64>> = BTreeMap::new();
    for (&(_, r), e) in &pf.psi {
        chains.entry(r.rem_euclid(2)).or_default().insert(r, *e);
    }
    let mut strings = Vec::new();
    let mut halflines = Vec::new();
    let mut total_len = 0i64;
    for exps in chains.values() {
        let lo = *exps.keys().next().expect("nonempty chain");
        let hi = *exps.keys().next_back().expect("nonempty chain");
        let mut levels = Vec::new();
        let mut run = 0;
        let mut r = lo;
        while r <= hi {
            run += exps.get(&r).copied().unwrap_or(0);
            levels.push((r, run));
            r += 2;
        }
        let top = levels.iter().map(|x| x.1).max().unwrap_or(0);
        for level in 1..=top {
            let mut start: Option<i64> = None;
            for &(r, n) in &levels {
                match (n >= level, start) {
                    (true, None) => start = Some(r),
                    (false, Some(s)) => {
                        let len = ((r - s) / 2) as u32;
                        strings.push(QString::new(s + 1, len));
                        total_len += len as i64;
                        start = None;
                    }
                    _ => {}
                }
            }
            if let Some(s) = start {
                halflines.push(HalfLine { base: s });
            }
        }
    }
    strings.sort();
    halflines.sort();
    Ok(Factorization {
        invertible: &pf.weight - &Weight::omega(1).scale_int(total_len),
        strings,
        halflines,
    })
}

/// q-character of L(psi) as the product of its prime factors, truncated at `depth`.
pub fn simple_qchar_oracle(cd: &CartanData, psi: &LWeightMono, depth: u32) -> Result<QCharacter> {
    let f = factorize(cd, psi)?;
    let token = QCharacter::new(cd.clone(), crate::Poly::weight(f.invertible.clone()), Some(depth));
    product_qchar(&f.factors(), depth)?.mul(&token)
}

/// The product of the factor q-characters, truncated at `depth`.
pub fn product_qchar(factors: &[Factor], depth: u32) -> Result<QCharacter> {
    let mut acc = QCharacter::new(CartanData::sl2(), crate::Poly::one(), Some(depth));
    for f in factors {
        acc = acc.mul(&f.qchar(depth))?;
    }
    Ok(acc)
}

fn product_is_simple_by_qchar(factors: &[Factor]) -> Result<bool> {
    let cd = CartanData::sl2();
    let len: u32 = factors
        .iter()
        .map(|f| match f {
            Factor::String(s) => s.len,
            Factor::Half(_) => 0,
        })
        .sum();
    let depth = 2 + 2 * len;
    let psi = factors.iter().fold(LWeightMono::unit(), |acc, f| &acc * &f.lweight());
    Ok(product_qchar(factors, depth)? == simple_qchar_oracle(&cd, &psi, depth)?)
}

/// Simplicity of the whole tensor product (by q-characters) against simplicity
/// of every pair (by q-characters) and against the pairwise position test.
pub fn web_property_check(factors: &[Factor]) -> Result<Verified> {
    let whole = product_is_simple_by_qchar(factors)?;
    let mut pairs = true;
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            pairs &= product_is_simple_by_qchar(&[*a, *b])?;
        }
    }
    let pairwise = is_simple_product(factors);
    let shown: Vec<String> = factors.iter().map(Factor::to_string).collect();
    let name = format!("web {}", shown.join(" "));
    if whole != pairs || whole != pairwise {
        return Err(Error::Counterexample(format!(
            "{name}: tensor simple {whole}, pairs simple {pairs}, pairwise position {pairwise}"
        )));
    }
    Ok(Verified {
        name,
        lhs: whole.to_string(),
        rhs: pairwise.to_string(),
    })
}

/// A random factor with shifts in `[lo, hi]`; one in four is a halfline.
pub fn random_factor(rng: &mut impl Rng, lo: i64, hi: i64, max_len: u32) -> Factor {
    if rng.gen_range(0..4) == 0 {
        Factor::Half(HalfLine { base: rng.gen_range(lo..=hi) })
    } else {
        Factor::String(QString::new(rng.gen_range(lo..=hi), rng.gen_range(1..=max_len)))
    }
}

/// A random positive sl2 ℓ-weight built from up to `max_factors` factors.
pub fn random_positive(rng: &mut impl Rng, max_factors: usize) -> LWeightMono {
    let n = rng.gen_range(0..=max_factors);
    let mut out = LWeightMono::token(Weight::omega(1).scale_int(rng.gen_range(-3..=3)));
    for _ in 0..n {
        out = &out * &random_factor(rng, -20, 20, 4).lweight();
    }
    out
}
