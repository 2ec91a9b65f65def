use std::cmp::Ordering;
use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Peekable;
use std::ops::{Div, Mul};

use super::var::VarKey;
use super::weight::Weight;

/// A Laurent monomial `[w] * x1^e1 * ... * xk^ek`.
///
/// Ordering is the lexicographic monomial order: variables are scanned in
/// canonical `VarKey` order (a larger exponent wins at the first difference),
/// and the weight part is compared last. It is compatible with
/// multiplication, which is what exact division relies on.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    weight: Weight,
    exps: BTreeMap<VarKey, i64>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(key: VarKey) -> Self {
        Self::var_pow(key, 1)
    }

    pub fn var_pow(key: VarKey, e: i64) -> Self {
        let mut m = Self::one();
        m.mul_var(key, e);
        m
    }

    pub fn from_weight(weight: Weight) -> Self {
        Self {
            weight,
            exps: BTreeMap::new(),
        }
    }

    pub fn from_parts(weight: Weight, exps: impl IntoIterator<Item = (VarKey, i64)>) -> Self {
        let mut m = Self::from_weight(weight);
        for (k, e) in exps {
            m.mul_var(k, e);
        }
        m
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn exps(&self) -> &BTreeMap<VarKey, i64> {
        &self.exps
    }

    pub fn exponent(&self, key: &VarKey) -> i64 {
        self.exps.get(key).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.weight.is_zero() && self.exps.is_empty()
    }

    /// True when the monomial has no variables (a pure weight token).
    pub fn is_weight_only(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul_var(&mut self, key: VarKey, e: i64) {
        if e == 0 {
            return;
        }
        let x = self.exps.entry(key).or_insert(0);
        *x += e;
        if *x == 0 {
            self.exps.remove(&key);
        }
    }

    pub fn mul_weight(&mut self, w: &Weight) {
        self.weight += w;
    }

    pub fn with_weight(&self, w: Weight) -> Self {
        Self {
            weight: w,
            exps: self.exps.clone(),
        }
    }

    pub fn without_weight(&self) -> Self {
        self.with_weight(Weight::zero())
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        Self {
            weight: self.weight.scale_int(e),
            exps: self.exps.iter().map(|(k, x)| (*k, x * e)).collect(),
        }
    }

    /// Componentwise minimum of exponents and weight coordinates.
    pub fn meet(&self, other: &Self) -> Self {
        let mut m = Self::from_weight(self.weight.meet(&other.weight));
        for k in self.exps.keys().chain(other.exps.keys()) {
            let e = self.exponent(k).min(other.exponent(k));
            if e != 0 {
                m.exps.insert(*k, e);
            }
        }
        m
    }

    /// All exponents and weight coordinates are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.exps.values().all(|&e| e > 0) && self.weight.is_nonnegative()
    }

    /// Rebuilds the monomial with each variable passed through `f`.
    pub fn map_vars(&self, mut f: impl FnMut(VarKey) -> VarKey) -> Self {
        Self::from_parts(self.weight.clone(), self.exps.iter().map(|(k, e)| (f(*k), *e)))
    }

    pub fn vars(&self) -> impl Iterator<Item = (&VarKey, &i64)> {
        self.exps.iter()
    }
}

fn cmp_sparse<K: Ord, V: Ord + Default>(
    mut a: Peekable<btree_map::Iter<'_, K, V>>,
    mut b: Peekable<btree_map::Iter<'_, K, V>>,
) -> Ordering {
    let zero = V::default();
    loop {
        let (ka, kb) = match (a.peek(), b.peek()) {
            (None, None) => return Ordering::Equal,
            (Some((ka, _)), None) => (Some(*ka), None),
            (None, Some((kb, _))) => (None, Some(*kb)),
            (Some((ka, _)), Some((kb, _))) => (Some(*ka), Some(*kb)),
        };
        let ord = match (ka, kb) {
            (Some(x), Some(y)) if x == y => {
                let va = a.next().unwrap().1;
                let vb = b.next().unwrap().1;
                va.cmp(vb)
            }
            (Some(x), Some(y)) if x < y => a.next().unwrap().1.cmp(&zero),
            (Some(_), None) => a.next().unwrap().1.cmp(&zero),
            _ => zero.cmp(b.next().unwrap().1),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_sparse(self.exps.iter().peekable(), other.exps.iter().peekable()).then_with(|| {
            cmp_sparse(
                self.weight.raw().iter().peekable(),
                other.weight.raw().iter().peekable(),
            )
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut out = self.clone();
        out.weight += &rhs.weight;
        for (k, e) in &rhs.exps {
            out.mul_var(*k, *e);
        }
        out
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        &self * &rhs
    }
}

impl Div for &Monomial {
    type Output = Monomial;
    fn div(self, rhs: &Monomial) -> Monomial {
        self * &rhs.inv()
    }
}

impl Div for Monomial {
    type Output = Monomial;
    fn div(self, rhs: Monomial) -> Monomial {
        &self / &rhs
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        if !self.weight.is_zero() {
            write!(f, "{}", self.weight)?;
            first = false;
        }
        for (k, e) in &self.exps {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", k)?;
            } else {
                write!(f, "{}^{}", k, e)?;
            }
        }
        Ok(())
    }
}
