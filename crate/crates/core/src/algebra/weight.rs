use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A rational combination of fundamental weights, stored sparsely by node.
///
/// Zero coordinates are never stored, so the zero weight is the empty map
/// regardless of rank.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight {
    coords: BTreeMap<u32, BigRational>,
}

impl Weight {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The fundamental weight ω_i.
    pub fn omega(i: u32) -> Self {
        Self::from_coord(i, BigRational::from_integer(1.into()))
    }

    pub fn from_coord(i: u32, c: BigRational) -> Self {
        let mut w = Self::zero();
        w.add_coord(i, c);
        w
    }

    pub fn from_ints(pairs: &[(u32, i64)]) -> Self {
        let mut w = Self::zero();
        for &(i, c) in pairs {
            w.add_coord(i, BigRational::from_integer(c.into()));
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: u32) -> BigRational {
        self.coords.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn raw(&self) -> &BTreeMap<u32, BigRational> {
        &self.coords
    }

    pub fn coords(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coords.iter().map(|(&i, c)| (i, c))
    }

    pub fn add_coord(&mut self, i: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(i).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(&i);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coords: self.coords.iter().map(|(&i, x)| (i, x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Componentwise minimum, treating absent coordinates as zero.
    pub fn meet(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in self.coords.keys().chain(other.coords.keys()) {
            let m = std::cmp::min(self.coord(*i), other.coord(*i));
            if !m.is_zero() {
                out.coords.insert(*i, m);
            }
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.values().all(|c| !c.is_negative())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(mut self, rhs: Weight) -> Weight {
        self += &rhs;
        self
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (&i, c) in &rhs.coords {
            self.add_coord(i, c.clone());
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|(&i, c)| (i, -c)).collect(),
        }
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self + &(-rhs)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Mul<i64> for &Weight {
    type Output = Weight;
    fn mul(self, rhs: i64) -> Weight {
        self.scale_int(rhs)
    }
}

/// Renders the bracketed token, e.g. `[3/2*w1 - 1*w2]`; the zero weight is `[0]`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.coords.is_empty() {
            write!(f, "0")?;
        }
        for (n, (i, c)) in self.coords.iter().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, false) => write!(f, "{}*w{}", mag, i)?,
                (0, true) => write!(f, "-{}*w{}", mag, i)?,
                (_, false) => write!(f, " + {}*w{}", mag, i)?,
                (_, true) => write!(f, " - {}*w{}", mag, i)?,
            }
        }
        write!(f, "]")
    }
}
