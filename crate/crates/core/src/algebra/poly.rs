use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};

use super::monomial::Monomial;
use super::var::VarKey;
use super::weight::Weight;
use crate::error::{Error, Result};

/// Exact integer coefficient ring for [`LPoly`].
pub trait Coefficient:
    Clone + Debug + Display + Eq + Ord + Hash + Integer + Signed + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: Clone + Debug + Display + Eq + Ord + Hash + Integer + Signed + FromPrimitive + Send + Sync + 'static
{
}

/// Sparse Laurent polynomial with weight-token monomials and exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LPoly<C: Coefficient = BigInt> {
    terms: BTreeMap<Monomial, C>,
}

pub type Poly = LPoly<BigInt>;

impl<C: Coefficient> Default for LPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> LPoly<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(C::from_i64(c).expect("coefficient out of range"))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(C::one(), m)
    }

    pub fn var(key: VarKey) -> Self {
        Self::monomial(Monomial::var(key))
    }

    pub fn var_pow(key: VarKey, e: i64) -> Self {
        Self::monomial(Monomial::var_pow(key, e))
    }

    pub fn weight(w: Weight) -> Self {
        Self::monomial(Monomial::from_weight(w))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// The single term of a one-term polynomial.
    pub fn as_term(&self) -> Option<(&Monomial, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// `Some(m)` when the polynomial is `±m`, i.e. a unit of the Laurent ring.
    pub fn as_unit(&self) -> Option<(C, &Monomial)> {
        let (m, c) = self.as_term()?;
        if c.abs().is_one() {
            Some((c.clone(), m))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(t, c)| (t * m, c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Componentwise minimum over all terms (the monomial content).
    pub fn content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, m| acc.meet(m))
    }

    /// Applies `f` to every monomial, collecting like terms.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    pub fn map_vars(&self, mut f: impl FnMut(VarKey) -> VarKey) -> Self {
        self.map_monomials(|m| m.map_vars(&mut f))
    }

    pub fn vars(&self) -> std::collections::BTreeSet<VarKey> {
        self.terms.keys().flat_map(|m| m.exps().keys().copied()).collect()
    }

    /// Exact Laurent division: returns `q` with `q * den == self`.
    ///
    /// Both sides are first divided by their monomial content, which turns
    /// the problem into polynomial division with nonnegative exponents; the
    /// quotient is then found by reduction in the lexicographic order.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        let fail = || Error::DivisionFailure {
            num: self.to_string(),
            den: den.to_string(),
        };
        if den.is_zero() {
            return Err(fail());
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((dm, dc)) = den.as_term() {
            let inv = dm.inv();
            let mut q = Self::zero();
            for (m, c) in &self.terms {
                let (quo, rem) = c.div_rem(dc);
                if !rem.is_zero() {
                    return Err(fail());
                }
                q.terms.insert(m * &inv, quo);
            }
            return Ok(q);
        }
        let cn = self.content();
        let cd = den.content();
        let n = self.mul_monomial(&cn.inv());
        let d = den.mul_monomial(&cd.inv());
        let (ldm, ldc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();

        let (n_deg, n_wt) = degree_box(&n);
        let (d_deg, d_wt) = degree_box(&d);
        let within_box = |t: &Monomial| {
            t.exps().iter().all(|(k, e)| {
                *e <= n_deg.get(k).copied().unwrap_or(0) - d_deg.get(k).copied().unwrap_or(0)
            }) && t.weight().coords().all(|(i, c)| {
                let hi = n_wt.get(&i).cloned().unwrap_or_else(BigRational::zero)
                    - d_wt.get(&i).cloned().unwrap_or_else(BigRational::zero);
                *c <= hi
            })
        };

        let mut r = n;
        let mut q = Self::zero();
        while let Some((lm, lc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let t = &lm / &ldm;
            if !t.is_nonnegative() || !within_box(&t) {
                return Err(fail());
            }
            let (c, rem) = lc.div_rem(&ldc);
            if !rem.is_zero() {
                return Err(fail());
            }
            for (dm, dc) in &d.terms {
                r.add_term(dm * &t, -(dc.clone() * c.clone()));
            }
            q.add_term(t, c);
        }
        Ok(q.mul_monomial(&(&cn / &cd)))
    }

    /// Ring homomorphism sending each mapped variable to its image.
    ///
    /// Negative powers are only allowed when the image is `±monomial`.
    pub fn substitute(&self, map: &BTreeMap<VarKey, LPoly<C>>) -> Result<Self> {
        self.substitute_with(|k| map.get(k).cloned())
    }

    /// Like [`substitute`](Self::substitute) with the images supplied by a function.
    pub fn substitute_with(&self, mut image: impl FnMut(&VarKey) -> Option<LPoly<C>>) -> Result<Self> {
        let mut cache: HashMap<VarKey, Option<LPoly<C>>> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut mono = Monomial::from_weight(m.weight().clone());
            let mut coeff = c.clone();
            let mut factors: Vec<LPoly<C>> = Vec::new();
            for (k, &e) in m.exps() {
                let img = cache.entry(*k).or_insert_with(|| image(k));
                match img {
                    None => mono.mul_var(*k, e),
                    Some(p) => {
                        if let Some((sign, um)) = p.as_unit() {
                            if e.is_odd() && sign.is_negative() {
                                coeff = -coeff;
                            }
                            mono = &mono * &um.pow(e);
                        } else if e < 0 {
                            return Err(Error::NonInvertibleSubstitution {
                                var: k.to_string(),
                                image: p.to_string(),
                            });
                        } else {
                            for _ in 0..e {
                                factors.push(p.clone());
                            }
                        }
                    }
                }
            }
            let mut t = Self::term(coeff, mono);
            for f in &factors {
                t = &t * f;
            }
            out += &t;
        }
        Ok(out)
    }
}

fn degree_box<C: Coefficient>(p: &LPoly<C>) -> (HashMap<VarKey, i64>, HashMap<u32, BigRational>) {
    let mut deg: HashMap<VarKey, i64> = HashMap::new();
    let mut wt: HashMap<u32, BigRational> = HashMap::new();
    for m in p.terms.keys() {
        for (k, e) in m.exps() {
            let d = deg.entry(*k).or_insert(0);
            *d = (*d).max(*e);
        }
        for (i, c) in m.weight().coords() {
            let w = wt.entry(i).or_insert_with(BigRational::zero);
            if *c > *w {
                *w = c.clone();
            }
        }
    }
    (deg, wt)
}

impl<C: Coefficient> From<Monomial> for LPoly<C> {
    fn from(m: Monomial) -> Self {
        Self::monomial(m)
    }
}

impl<C: Coefficient> AddAssign<&LPoly<C>> for LPoly<C> {
    fn add_assign(&mut self, rhs: &LPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<C: Coefficient> SubAssign<&LPoly<C>> for LPoly<C> {
    fn sub_assign(&mut self, rhs: &LPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<C: Coefficient> Add for &LPoly<C> {
    type Output = LPoly<C>;
    fn add(self, rhs: &LPoly<C>) -> LPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coefficient> Add for LPoly<C> {
    type Output = LPoly<C>;
    fn add(mut self, rhs: LPoly<C>) -> LPoly<C> {
        self += &rhs;
        self
    }
}

impl<C: Coefficient> Sub for &LPoly<C> {
    type Output = LPoly<C>;
    fn sub(self, rhs: &LPoly<C>) -> LPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coefficient> Sub for LPoly<C> {
    type Output = LPoly<C>;
    fn sub(mut self, rhs: LPoly<C>) -> LPoly<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coefficient> Neg for &LPoly<C> {
    type Output = LPoly<C>;
    fn neg(self) -> LPoly<C> {
        LPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Coefficient> Neg for LPoly<C> {
    type Output = LPoly<C>;
    fn neg(self) -> LPoly<C> {
        -&self
    }
}

impl<C: Coefficient> Mul for &LPoly<C> {
    type Output = LPoly<C>;
    fn mul(self, rhs: &LPoly<C>) -> LPoly<C> {
        let mut out = LPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for LPoly<C> {
    type Output = LPoly<C>;
    fn mul(self, rhs: LPoly<C>) -> LPoly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Mul<&Monomial> for &LPoly<C> {
    type Output = LPoly<C>;
    fn mul(self, rhs: &Monomial) -> LPoly<C> {
        self.mul_monomial(rhs)
    }
}

impl<C: Coefficient> std::iter::Sum for LPoly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut out = Self::zero();
        for p in iter {
            out += &p;
        }
        out
    }
}

impl<C: Coefficient> std::iter::Product for LPoly<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut out = Self::one();
        for p in iter {
            out = &out * &p;
        }
        out
    }
}

/// Canonical text form: terms from the leading one down, joined by ` + ` / ` - `.
impl<C: Coefficient> fmt::Display for LPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{} * {}", mag, m)?;
            }
        }
        Ok(())
    }
}
