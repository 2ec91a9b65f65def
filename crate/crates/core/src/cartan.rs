use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::monomial::Monomial;
use crate::algebra::var::{Family, VarKey};
use crate::algebra::weight::Weight;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum CartanKind {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

/// Cartan matrix and symmetrizer of a simple Lie algebra, Kac numbering.
///
/// Nodes are 1-based in every public method.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CartanData {
    kind: CartanKind,
    n: usize,
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
    /// Inverse of (C_{j,i}); column j holds the root coordinates of ω_{j+1}.
    inv: Vec<Vec<BigRational>>,
}

fn invert(c: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let n = c.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = (0..n).map(|i| BigRational::from_integer(c[j][i].into())).collect();
            row.extend((0..n).map(|k| BigRational::from_integer(i64::from(k == j).into())));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("Cartan matrix is invertible");
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..2 * n {
                    let v = &m[col][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn link(c: &mut [Vec<i64>], i: usize, j: usize) {
    c[i - 1][j - 1] = -1;
    c[j - 1][i - 1] = -1;
}

impl CartanData {
    pub fn new(kind: CartanKind, n: usize) -> Result<Self> {
        let bad = || Error::UnknownCartanType(format!("{kind:?}{n}"));
        let n_ok = match kind {
            CartanKind::A => n >= 1,
            CartanKind::B | CartanKind::C => n >= 2,
            CartanKind::D => n >= 4,
            CartanKind::E6 => n == 6,
            CartanKind::E7 => n == 7,
            CartanKind::E8 => n == 8,
            CartanKind::F4 => n == 4,
            CartanKind::G2 => n == 2,
        };
        if !n_ok {
            return Err(bad());
        }
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut d = vec![1i64; n];
        match kind {
            CartanKind::A => (1..n).for_each(|i| link(&mut c, i, i + 1)),
            CartanKind::B => {
                (1..n).for_each(|i| link(&mut c, i, i + 1));
                c[n - 1][n - 2] = -2;
                d = vec![2; n];
                d[n - 1] = 1;
            }
            CartanKind::C => {
                (1..n).for_each(|i| link(&mut c, i, i + 1));
                c[n - 2][n - 1] = -2;
                d[n - 1] = 2;
            }
            CartanKind::D => {
                (1..n - 1).for_each(|i| link(&mut c, i, i + 1));
                link(&mut c, n - 2, n);
            }
            CartanKind::E6 | CartanKind::E7 | CartanKind::E8 => {
                (1..n - 1).for_each(|i| link(&mut c, i, i + 1));
                link(&mut c, n - 3, n);
            }
            CartanKind::F4 => {
                (1..4).for_each(|i| link(&mut c, i, i + 1));
                c[2][1] = -2;
                d = vec![2, 2, 1, 1];
            }
            CartanKind::G2 => {
                c[0][1] = -1;
                c[1][0] = -3;
                d = vec![3, 1];
            }
        }
        let inv = invert(&c);
        Ok(Self { kind, n, c, d, inv })
    }

    pub fn sl2() -> Self {
        Self::new(CartanKind::A, 1).unwrap()
    }

    pub fn kind(&self) -> CartanKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> impl Iterator<Item = u32> {
        1..=self.n as u32
    }

    pub fn has_node(&self, i: u32) -> bool {
        i >= 1 && i as usize <= self.n
    }

    /// C_{i,j}.
    pub fn c(&self, i: u32, j: u32) -> i64 {
        self.c[i as usize - 1][j as usize - 1]
    }

    pub fn d(&self, i: u32) -> i64 {
        self.d[i as usize - 1]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    /// The lacing number d = max d_i.
    pub fn lacing(&self) -> i64 {
        *self.d.iter().max().unwrap()
    }

    pub fn omega(&self, i: u32) -> Weight {
        Weight::omega(i)
    }

    /// α_i = Σ_j C_{j,i} ω_j.
    pub fn alpha(&self, i: u32) -> Weight {
        let mut w = Weight::zero();
        for j in self.nodes() {
            w.add_coord(j, BigRational::from_integer(self.c(j, i).into()));
        }
        w
    }

    /// Coordinates of `w` in the simple-root basis.
    pub fn root_coords(&self, w: &Weight) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.n];
        for (j, x) in w.coords() {
            if j == 0 || j as usize > self.n {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += &self.inv[i][j as usize - 1] * x;
            }
        }
        out
    }

    /// `Some(height)` when `w` lies in the positive root cone Q⁺.
    pub fn q_plus_height(&self, w: &Weight) -> Option<BigInt> {
        let coords = self.root_coords(w);
        let mut h = BigInt::zero();
        for c in coords {
            if !c.is_integer() || c.is_negative() {
                return None;
            }
            h += c.to_integer();
        }
        Some(h)
    }

    pub fn name(&self) -> String {
        match self.kind {
            CartanKind::A => format!("A{}", self.n),
            CartanKind::B => format!("B{}", self.n),
            CartanKind::C => format!("C{}", self.n),
            CartanKind::D => format!("D{}", self.n),
            k => format!("{k:?}"),
        }
    }
}

impl fmt::Display for CartanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Accepts `A2`, `B2`, `G2`, `E6`, ... and `slN` for type A_{N-1}.
impl FromStr for CartanData {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::UnknownCartanType(s.to_string());
        if let Some(rest) = t.strip_prefix("sl") {
            let n: usize = rest.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            return Self::new(CartanKind::A, n - 1);
        }
        let (head, rest) = t.split_at(t.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let n: usize = rest.parse().map_err(|_| bad())?;
        let kind = match head {
            "A" => CartanKind::A,
            "B" => CartanKind::B,
            "C" => CartanKind::C,
            "D" => CartanKind::D,
            "E" => match n {
                6 => CartanKind::E6,
                7 => CartanKind::E7,
                8 => CartanKind::E8,
                _ => return Err(bad()),
            },
            "F" => CartanKind::F4,
            "G" => CartanKind::G2,
            _ => return Err(bad()),
        };
        Self::new(kind, n).map_err(|_| bad())
    }
}

/// A_{i,r} as a monomial in Y-variables.
pub fn a_monomial(cd: &CartanData, i: u32, r: i64) -> Monomial {
    let di = cd.d(i);
    let mut m = Monomial::one();
    m.mul_var(VarKey::y(i, r - di), 1);
    m.mul_var(VarKey::y(i, r + di), 1);
    for j in cd.nodes() {
        if j == i {
            continue;
        }
        let shifts: &[i64] = match cd.c(j, i) {
            0 => &[],
            -1 => &[0],
            -2 => &[-1, 1],
            -3 => &[-2, 0, 2],
            other => panic!("unexpected Cartan entry {other}"),
        };
        for s in shifts {
            m.mul_var(VarKey::y(j, r + s), -1);
        }
    }
    m
}

/// The weight map ϖ: Y ↦ ω_i, A ↦ α_i, Ψ ↦ 0, plus the weight part.
pub fn varpi(cd: &CartanData, m: &Monomial) -> Result<Weight> {
    let mut w = m.weight().clone();
    for (k, e) in m.exps() {
        match k.family {
            Family::Y => w += &cd.omega(k.node).scale_int(*e),
            Family::AInvBase => w += &cd.alpha(k.node).scale_int(*e),
            Family::Psi => {}
            _ => return Err(Error::UnsupportedVariable(k.to_string())),
        }
    }
    Ok(w)
}

/// A univariate Laurent polynomial in z, exponent ↦ coefficient.
pub type QNumber = BTreeMap<i64, BigInt>;

fn qn_mul(a: &QNumber, b: &QNumber) -> QNumber {
    let mut out = QNumber::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn qn_shift_add(out: &mut QNumber, a: &QNumber, shift: i64) {
    for (e, c) in a {
        *out.entry(e + shift).or_insert_with(BigInt::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
}

/// [m]_z = (z^m − z^{−m}) / (z − z^{−1}).
pub fn q_integer(m: i64) -> QNumber {
    let mut out = QNumber::new();
    let (k, sign) = if m < 0 { (-m, -1) } else { (m, 1) };
    for j in 0..k {
        out.insert(k - 1 - 2 * j, BigInt::from(sign));
    }
    out
}

pub fn q_factorial(m: u32) -> QNumber {
    let mut out: QNumber = [(0, BigInt::one())].into_iter().collect();
    for k in 1..=m as i64 {
        out = qn_mul(&out, &q_integer(k));
    }
    out
}

/// Symmetric q-binomial, via [n,k] = z^{−k}[n−1,k] + z^{n−k}[n−1,k−1].
pub fn q_binomial(n: u32, k: u32) -> QNumber {
    if k > n {
        return QNumber::new();
    }
    let mut row: Vec<QNumber> = vec![[(0, BigInt::one())].into_iter().collect()];
    for m in 1..=n as i64 {
        let mut next = Vec::with_capacity(row.len() + 1);
        for j in 0..=m {
            let mut x = QNumber::new();
            if j < m {
                qn_shift_add(&mut x, &row[j as usize], -j);
            }
            if j > 0 {
                qn_shift_add(&mut x, &row[j as usize - 1], m - j);
            }
            next.push(x);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// `[m]_{z^{d}}`, the q_i-integer of a node with symmetrizer d.
pub fn q_integer_at(m: i64, d: i64) -> QNumber {
    q_integer(m).into_iter().map(|(e, c)| (e * d, c)).collect()
}
