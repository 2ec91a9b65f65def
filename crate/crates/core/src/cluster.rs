use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Poly;
use crate::algebra::var::{Family, VarKey};
use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::quiver::{column, Column, IceQuiver, Quiver, Vertex};

/// A cluster variable written as `num / den` in the initial variables.
///
/// Everything produced by mutation has `den = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Attachment {
    pub num: Poly,
    pub den: Poly,
}

impl Attachment {
    pub fn laurent(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn fraction(num: Poly, den: Poly) -> Self {
        Self { num, den }
    }

    pub fn to_laurent(&self) -> Result<Poly> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            self.num.div_exact(&self.den)
        }
    }
}

impl fmt::Display for Attachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Seed {
    pub quiver: Quiver,
    pub attach: BTreeMap<Vertex, Attachment>,
    pub history: Vec<Vertex>,
}

impl Seed {
    pub fn get(&self, v: Vertex) -> Option<&Attachment> {
        self.attach.get(&v)
    }

    /// Same quiver up to frozen-frozen arrows and same attachments.
    pub fn equivalent(&self, other: &Seed) -> bool {
        self.quiver.canonical_eq(&other.quiver) && self.attach == other.attach
    }
}

/// Attaches z_{i,r} to every vertex.
pub fn initial_seed(q: &Quiver) -> Seed {
    initial_seed_with(q, Family::Z)
}

pub fn initial_seed_with(q: &Quiver, family: Family) -> Seed {
    Seed {
        quiver: q.clone(),
        attach: q
            .vertices()
            .iter()
            .map(|v| (*v, Attachment::laurent(Poly::var(VarKey::new(family, v.node, v.shift)))))
            .collect(),
        history: Vec::new(),
    }
}

/// Frozen variable of a column.
pub fn frozen_var(c: Column) -> VarKey {
    VarKey::new(Family::Frozen, c.node, c.residue)
}

impl IceQuiver {
    /// z_{i,s} on G⁻ and the column variable f_j on each connector.
    pub fn initial_seed(&self, cd: &CartanData) -> Seed {
        let mut s = initial_seed(&self.quiver);
        for v in self.connectors.values() {
            s.attach.insert(*v, Attachment::laurent(Poly::var(frozen_var(column(cd, *v)))));
        }
        s
    }

    /// u_{i,s} on the coefficient-free quiver G⁻.
    pub fn coefficient_free_seed(&self) -> Seed {
        initial_seed_with(&self.coefficient_free(), Family::U)
    }
}

/// The two monomials of the exchange relation at `k`: (in-product, out-product).
pub fn exchange_products(s: &Seed, k: Vertex) -> Result<(Poly, Poly)> {
    let prod = |arrows: Vec<(Vertex, u32)>| -> Result<Poly> {
        let mut p = Poly::one();
        for (v, m) in arrows {
            let x = s.attach[&v].to_laurent()?;
            p = &p * &x.pow(m);
        }
        Ok(p)
    };
    Ok((prod(s.quiver.in_arrows(k))?, prod(s.quiver.out_arrows(k))?))
}

/// Fomin–Zelevinsky mutation at a mutable vertex.
pub fn mutate(s: &Seed, k: Vertex) -> Result<Seed> {
    let quiver = s.quiver.mutate_at(k)?;
    let (inp, outp) = exchange_products(s, k)?;
    let old = s.attach[&k].to_laurent()?;
    let new = (&inp + &outp).div_exact(&old)?;
    let mut attach = s.attach.clone();
    attach.insert(k, Attachment::laurent(new));
    let mut history = s.history.clone();
    history.push(k);
    Ok(Seed {
        quiver,
        attach,
        history,
    })
}

pub fn mutate_seq(s: &Seed, ks: &[Vertex]) -> Result<Seed> {
    let mut cur = s.clone();
    for k in ks {
        cur = mutate(&cur, *k)?;
    }
    Ok(cur)
}

/// Every attachment is a Laurent polynomial: its denominator divides exactly.
pub fn is_laurent(s: &Seed) -> bool {
    s.attach.values().all(|a| a.to_laurent().is_ok())
}

/// Parses `(1,0);(1,-2);(1,2)`.
pub fn parse_sequence(text: &str) -> Result<Vec<Vertex>> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiDegree {
    pub coords: BTreeMap<Column, i64>,
}

impl MultiDegree {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&mut self, c: Column, e: i64) {
        let x = self.coords.entry(c).or_insert(0);
        *x += e;
        if *x == 0 {
            self.coords.remove(&c);
        }
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|(c, e)| format!("{e}*e[{c}]")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn monomial_degree(cd: &CartanData, m: &Monomial) -> Result<MultiDegree> {
    let mut d = MultiDegree::default();
    for (k, e) in m.exps() {
        let c = match k.family {
            Family::Z | Family::U => column(cd, Vertex::new(k.node, k.shift)),
            Family::Frozen => Column {
                node: k.node,
                residue: k.shift,
            },
            _ => return Err(Error::UnsupportedVariable(k.to_string())),
        };
        d.add(c, *e);
    }
    Ok(d)
}

/// deg z_{i,s} = deg f_j = e_j for (i,s) in column j; errors unless all terms agree.
pub fn multidegree(cd: &CartanData, p: &Poly) -> Result<MultiDegree> {
    let mut common: Option<MultiDegree> = None;
    for (m, _) in p.terms() {
        let d = monomial_degree(cd, m)?;
        match &common {
            None => common = Some(d),
            Some(c) if *c == d => {}
            Some(c) => return Err(Error::NotHomogeneous(format!("{c} vs {d} in {p}"))),
        }
    }
    Ok(common.unwrap_or_default())
}

/// F(u_{i,s}) = z_{i,s} / f_j.
pub fn f_hom(cd: &CartanData, p: &Poly) -> Poly {
    p.substitute_with(|k| {
        (k.family == Family::U).then(|| {
            let v = Vertex::new(k.node, k.shift);
            &Poly::var(VarKey::z(k.node, k.shift)) * &Poly::var_pow(frozen_var(column(cd, v)), -1)
        })
    })
    .expect("monomial images are always invertible")
}

/// F(x) times the smallest monomial in the f_j making every f-exponent nonnegative.
pub fn frozen_lift(cd: &CartanData, x: &Poly) -> Poly {
    let fx = f_hom(cd, x);
    let fvars: Vec<VarKey> = fx.vars().into_iter().filter(|k| k.family == Family::Frozen).collect();
    let mut lowest: BTreeMap<VarKey, i64> = BTreeMap::new();
    for (m, _) in fx.terms() {
        for &k in &fvars {
            let e = m.exponent(&k);
            let slot = lowest.entry(k).or_insert(e);
            *slot = (*slot).min(e);
        }
    }
    let lift = Monomial::from_parts(
        Default::default(),
        lowest.into_iter().filter(|(_, e)| *e < 0).map(|(k, e)| (k, -e)),
    );
    fx.mul_monomial(&lift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{build_gamma_window, build_ice_hminus};

    fn v(i: u32, r: i64) -> Vertex {
        Vertex::new(i, r)
    }
    fn z(i: u32, r: i64) -> Poly {
        Poly::var(VarKey::z(i, r))
    }

    #[test]
    fn initial() {
        let q = build_gamma_window(&CartanData::sl2(), v(1, 0), -4, 4).unwrap();
        let s = initial_seed(&q);
        assert_eq!(s.attach[&v(1, 0)].to_string(), "z(1,0)");
        assert_eq!(s.attach[&v(1, 4)].to_string(), "z(1,4)");
        assert!(s.history.is_empty());
        assert!(is_laurent(&s));
    }

    #[test]
    fn sl2_first_mutation() {
        let q = build_gamma_window(&CartanData::sl2(), v(1, 0), -4, 4).unwrap();
        let s = mutate(&initial_seed(&q), v(1, 0)).unwrap();
        let expect = (&z(1, -2) + &z(1, 2)).div_exact(&z(1, 0)).unwrap();
        assert_eq!(s.attach[&v(1, 0)].num, expect);
        assert_eq!(s.history, vec![v(1, 0)]);
    }

    #[test]
    fn sl3_first_mutation() {
        let cd: CartanData = "sl3".parse().unwrap();
        let q = build_gamma_window(&cd, v(1, 0), -3, 3).unwrap();
        let s = mutate(&initial_seed(&q), v(1, 0)).unwrap();
        let expect = (&(&z(1, -2) * &z(2, 1)) + &(&z(1, 2) * &z(2, -1))).div_exact(&z(1, 0)).unwrap();
        assert_eq!(s.attach[&v(1, 0)].num, expect);
    }

    #[test]
    fn double_mutation_restores() {
        let cd: CartanData = "B2".parse().unwrap();
        let q = build_gamma_window(&cd, v(2, -1), -13, -1).unwrap();
        let s0 = initial_seed(&q);
        let seq = vec![v(2, -5), v(1, -7), v(2, -7)];
        let s1 = mutate_seq(&s0, &seq).unwrap();
        for k in s1.quiver.mutable().collect::<Vec<_>>() {
            let back = mutate_seq(&s1, &[k, k]).unwrap();
            assert!(back.equivalent(&s1), "{k}");
        }
        assert!(mutate_seq(&s0, &[]).unwrap().equivalent(&s0));
    }

    #[test]
    fn exchange_relation_holds() {
        let cd: CartanData = "A2".parse().unwrap();
        let q = build_gamma_window(&cd, v(1, 0), -6, 6).unwrap();
        let mut s = initial_seed(&q);
        for k in [v(1, 0), v(2, -1), v(1, -2), v(1, 0)] {
            let (inp, outp) = exchange_products(&s, k).unwrap();
            let old = s.attach[&k].num.clone();
            s = mutate(&s, k).unwrap();
            assert_eq!(&s.attach[&k].num * &old, &inp + &outp);
        }
        assert!(is_laurent(&s));
    }

    #[test]
    fn frozen_is_rejected() {
        let q = build_gamma_window(&CartanData::sl2(), v(1, 0), -4, 4).unwrap();
        assert!(matches!(mutate(&initial_seed(&q), v(1, 4)), Err(Error::FrozenVertex(_))));
        assert!(matches!(mutate(&initial_seed(&q), v(1, 6)), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn non_laurent_seed() {
        let q = build_gamma_window(&CartanData::sl2(), v(1, 0), -4, 4).unwrap();
        let mut s = initial_seed(&q);
        s.attach.insert(v(1, 0), Attachment::fraction(Poly::one(), &z(1, 0) + &Poly::one()));
        assert!(!is_laurent(&s));
    }

    #[test]
    fn sequence_parsing() {
        assert_eq!(
            parse_sequence("(1,0);(1,-2); (1,2)").unwrap(),
            vec![v(1, 0), v(1, -2), v(1, 2)]
        );
        assert!(parse_sequence("").unwrap().is_empty());
    }

    #[test]
    fn degrees() {
        let sl3: CartanData = "sl3".parse().unwrap();
        let d = multidegree(&sl3, &z(1, 0)).unwrap();
        assert_eq!(d.coords.len(), 1);
        assert_eq!(d.coords.values().copied().collect::<Vec<_>>(), vec![1]);
        assert!(matches!(
            multidegree(&sl3, &(&z(1, 0) + &z(2, 1))),
            Err(Error::NotHomogeneous(_))
        ));
        let u = Poly::var(VarKey::u(1, -2));
        let fu = f_hom(&sl3, &u);
        assert_eq!(fu.to_string(), "z(1,-2) * f(1,0)^-1");
        assert!(multidegree(&sl3, &fu).unwrap().is_zero());
        assert!(matches!(
            multidegree(&sl3, &Poly::var(VarKey::y(1, 0))),
            Err(Error::UnsupportedVariable(_))
        ));
    }

    #[test]
    fn f_hom_is_multiplicative() {
        let sl3: CartanData = "sl3".parse().unwrap();
        let a = &Poly::var(VarKey::u(1, -2)) + &Poly::var(VarKey::u(2, -1));
        let b = Poly::var_pow(VarKey::u(2, -3), -1);
        assert_eq!(f_hom(&sl3, &(&a * &b)), &f_hom(&sl3, &a) * &f_hom(&sl3, &b));
    }

    #[test]
    fn lift_examples() {
        let sl2 = CartanData::sl2();
        assert_eq!(frozen_lift(&sl2, &Poly::var(VarKey::u(1, 0))), z(1, 0));
        let p = &z(1, 0) + &z(1, -2);
        assert_eq!(frozen_lift(&sl2, &p), p);
        // brute force: smallest a with all f-exponents of F(x) f^a nonnegative
        let x = &Poly::var_pow(VarKey::u(1, -2), 2) + &Poly::var_pow(VarKey::u(1, -4), -1);
        let fx = f_hom(&sl2, &x);
        let f = Poly::var(frozen_var(column(&sl2, v(1, 0))));
        let a = (0..10)
            .find(|a| {
                (&fx * &f.pow(*a)).terms().all(|(m, _)| m.exps().iter().all(|(k, e)| k.family != Family::Frozen || *e >= 0))
            })
            .unwrap();
        assert_eq!(frozen_lift(&sl2, &x), &fx * &f.pow(a));
    }

    #[test]
    fn ice_seeds() {
        let cd: CartanData = "A2".parse().unwrap();
        let ice = build_ice_hminus(&cd, v(1, 0), 6).unwrap();
        let s = ice.initial_seed(&cd);
        assert_eq!(s.attach[&v(1, 0)].to_string(), "f(1,0)");
        assert_eq!(s.attach[&v(2, 1)].to_string(), "f(2,1)");
        assert_eq!(s.attach[&v(1, -2)].to_string(), "z(1,-2)");
        let g = ice.coefficient_free_seed();
        assert!(!g.quiver.contains(v(1, 0)));
        assert_eq!(g.attach[&v(2, -1)].to_string(), "u(2,-1)");
        assert_eq!(
            g.quiver.mutable().collect::<Vec<_>>(),
            s.quiver.mutable().collect::<Vec<_>>()
        );
    }
}
