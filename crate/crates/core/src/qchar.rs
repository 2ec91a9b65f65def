use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Poly;
use crate::algebra::var::VarKey;
use crate::algebra::weight::Weight;
use crate::cartan::{a_monomial, varpi, CartanData};
use crate::error::{Error, Result};
use crate::lweight::dominance_certificate;

/// A (possibly truncated) q-character. With `depth = Some(n)` only the terms
/// whose weight lies within height n of the top weight are meaningful.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QCharacter {
    pub cartan: CartanData,
    pub poly: Poly,
    pub depth: Option<u32>,
}

impl fmt::Display for QCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn y(r: i64) -> Monomial {
    Monomial::var(VarKey::y(1, r))
}

/// χ_q(W_{k,q^s}) for sl2: top Y_s Y_{s+2} ··· Y_{s+2k−2}, then the A^{-1} ladder
/// A_{s+2k−1}^{-1}, A_{s+2k−1}^{-1}A_{s+2k−3}^{-1}, ...
pub fn kr_qchar_sl2(k: u32, s: i64) -> QCharacter {
    let cd = CartanData::sl2();
    let k = k as i64;
    let mut m = Monomial::one();
    for j in 0..k {
        m = &m * &y(s + 2 * j);
    }
    let mut poly = Poly::monomial(m.clone());
    for j in 0..k {
        m = &m * &a_monomial(&cd, 1, s + 2 * (k - j) - 1).inv();
        poly.add_term(m.clone(), BigInt::from(1));
    }
    QCharacter {
        cartan: cd,
        poly,
        depth: None,
    }
}

/// Ψ_{1,s} · Σ_{r ≤ n} [−2rω₁].
pub fn prefund_plus_qchar_sl2(s: i64, depth: u32) -> QCharacter {
    let psi = Monomial::var(VarKey::psi(1, s));
    let mut poly = Poly::zero();
    for r in 0..=depth as i64 {
        poly.add_term(psi.with_weight(Weight::omega(1).scale_int(-2 * r)), BigInt::from(1));
    }
    QCharacter {
        cartan: CartanData::sl2(),
        poly,
        depth: Some(depth),
    }
}

/// Ψ_{1,s}^{-1} · Σ_{r ≤ n} A_{1,s}^{-1} A_{1,s−2}^{-1} ··· A_{1,s−2r+2}^{-1}.
pub fn prefund_minus_qchar_sl2(s: i64, depth: u32) -> QCharacter {
    let cd = CartanData::sl2();
    let mut m = Monomial::var_pow(VarKey::psi(1, s), -1);
    let mut poly = Poly::monomial(m.clone());
    for j in 0..depth as i64 {
        m = &m * &a_monomial(&cd, 1, s - 2 * j).inv();
        poly.add_term(m.clone(), BigInt::from(1));
    }
    QCharacter {
        cartan: cd,
        poly,
        depth: Some(depth),
    }
}

impl QCharacter {
    pub fn new(cartan: CartanData, poly: Poly, depth: Option<u32>) -> Self {
        Self { cartan, poly, depth }
    }

    fn weight_of(&self, m: &Monomial) -> Result<Weight> {
        varpi(&self.cartan, m)
    }

    /// Each term with the root coordinates of its weight.
    fn root_coords(&self) -> Result<Vec<(&Monomial, Vec<BigRational>)>> {
        self.poly
            .terms()
            .map(|(m, _)| Ok((m, self.cartan.root_coords(&self.weight_of(m)?))))
            .collect()
    }

    /// The unique term whose weight dominates all others.
    pub fn top(&self) -> Result<Monomial> {
        Ok(self.top_coords()?.0)
    }

    fn top_coords(&self) -> Result<(Monomial, Vec<BigRational>)> {
        let no_top = || Error::NoUniqueTop(self.poly.to_string());
        let coords = self.root_coords()?;
        let height = |v: &[BigRational]| v.iter().fold(BigRational::zero(), |a, b| a + b);
        let best = coords
            .iter()
            .max_by(|a, b| height(&a.1).cmp(&height(&b.1)))
            .ok_or_else(no_top)?;
        for (m, c) in &coords {
            if m != &best.0 && !height_above(&best.1, c).is_some_and(|h| h > BigInt::zero()) {
                return Err(no_top());
            }
        }
        Ok((best.0.clone(), best.1.clone()))
    }

    /// Divides by the top monomial.
    pub fn normalize(&self) -> Result<QCharacter> {
        let top = self.top()?;
        Ok(Self {
            cartan: self.cartan.clone(),
            poly: self.poly.mul_monomial(&top.inv()),
            depth: self.depth,
        })
    }

    /// The ordinary character ϖ(χ_q).
    pub fn character(&self) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in self.poly.terms() {
            out.add_term(Monomial::from_weight(self.weight_of(m)?), c.clone());
        }
        Ok(out)
    }

    /// Keeps the terms within height `depth` of the top weight.
    pub fn truncate_depth(&self, depth: u32) -> Result<QCharacter> {
        if let Some(d) = self.depth {
            if d < depth {
                return Err(Error::DepthMismatch(Some(d), Some(depth)));
            }
        }
        let (_, top) = self.top_coords()?;
        let mut poly = Poly::zero();
        for (m, c) in self.root_coords()? {
            let h = height_above(&top, &c).ok_or_else(|| Error::NoUniqueTop(self.poly.to_string()))?;
            if h <= BigInt::from(depth) {
                poly.add_term(m.clone(), self.poly.coeff(m));
            }
        }
        Ok(Self {
            cartan: self.cartan.clone(),
            poly,
            depth: Some(depth),
        })
    }

    /// Keeps m' when m·m'^{-1} is a product of A_{i,r} with r ≤ R − d_i.
    pub fn truncate_le_r(&self, r_cap: i64) -> Result<QCharacter> {
        let top = self.top()?;
        let mut poly = Poly::zero();
        for (m, c) in self.poly.terms() {
            let quotient = (&top / m).without_weight();
            let cert = dominance_certificate(&self.cartan, &Monomial::one(), &quotient)?;
            let keep = match cert {
                Some(v) => v.keys().all(|&(i, r)| r <= r_cap - self.cartan.d(i)),
                None => false,
            };
            if keep {
                poly.add_term(m.clone(), c.clone());
            }
        }
        Ok(Self {
            cartan: self.cartan.clone(),
            poly,
            depth: self.depth,
        })
    }

    /// Product; a truncated factor truncates the result at the smaller depth.
    pub fn mul(&self, other: &QCharacter) -> Result<QCharacter> {
        if self.cartan != other.cartan {
            return Err(Error::InvalidArgument(format!(
                "characters of {} and {}",
                self.cartan, other.cartan
            )));
        }
        let depth = match (self.depth, other.depth) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let prod = Self {
            cartan: self.cartan.clone(),
            poly: &self.poly * &other.poly,
            depth: None,
        };
        match depth {
            Some(d) => prod.truncate_depth(d),
            None => Ok(prod),
        }
    }

    /// Exact comparison; truncated characters must share the same depth.
    pub fn agrees_with(&self, other: &QCharacter) -> Result<bool> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch(self.depth, other.depth));
        }
        Ok(self.cartan == other.cartan && self.poly == other.poly)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// Height of top − c when it lies in Q⁺.
fn height_above(top: &[BigRational], c: &[BigRational]) -> Option<BigInt> {
    let mut h = BigInt::zero();
    for (a, b) in top.iter().zip(c) {
        let d = a - b;
        if !d.is_integer() || d.is_negative() {
            return None;
        }
        h += d.to_integer();
    }
    Some(h)
}

/// Normalized χ_q(W_{k,q^{1−2k+s}}) against normalized χ_q(L⁻_{1,q^s}) through
/// A-degree k−1, for k = 2..=k_max, on both q-characters and characters.
/// Returns the number of k checked, or the first disagreement.
pub fn limit_stabilizes(s: i64, k_max: u32) -> Result<u32> {
    if k_max < 2 {
        return Err(Error::InvalidArgument(format!("k_max = {k_max} < 2")));
    }
    for k in 2..=k_max {
        let kr = kr_qchar_sl2(k, 1 - 2 * k as i64 + s).normalize()?.truncate_depth(k - 1)?;
        let minus = prefund_minus_qchar_sl2(s, k - 1).normalize()?;
        if !kr.agrees_with(&minus)? {
            return Err(Error::Mismatch {
                name: format!("normalized KR k={k} vs L-"),
                lhs: kr.to_string(),
                rhs: minus.to_string(),
            });
        }
        let plus = prefund_plus_qchar_sl2(s, k - 1).normalize()?;
        let (a, b) = (kr.character()?, plus.character()?);
        if a != b {
            return Err(Error::Mismatch {
                name: format!("normalized character k={k} vs L+"),
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
        }
    }
    Ok(k_max - 1)
}

/// The A-monomials of a normalized character all have weight in −Q⁺.
pub fn in_negative_cone(c: &QCharacter) -> Result<bool> {
    for (m, _) in c.character()?.terms() {
        if c.cartan.q_plus_height(&-m.weight()).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
