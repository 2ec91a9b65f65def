use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub node: u32,
    pub shift: i64,
}

impl Vertex {
    pub fn new(node: u32, shift: i64) -> Self {
        Self { node, shift }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.node, self.shift)
    }
}

/// Parses `1,-2` or `(1,-2)`.
impl FromStr for Vertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("bad vertex {s:?}"),
        };
        let (a, b) = t.split_once(',').ok_or_else(bad)?;
        Ok(Vertex::new(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ))
    }
}

/// ψ(i,r) = (i, r + d_i), the relabelling V → W.
pub fn psi_relabel(v: Vertex, cd: &CartanData) -> Vertex {
    Vertex::new(v.node, v.shift + cd.d(v.node))
}

pub fn psi_unrelabel(w: Vertex, cd: &CartanData) -> Vertex {
    Vertex::new(w.node, w.shift - cd.d(w.node))
}

/// A column of Γ: the vertices of one node joined by the arrows
/// (i,r) → (i,r+2d_i). For simply-laced types this is just the node.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Column {
    pub node: u32,
    pub residue: i64,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.node, self.residue)
    }
}

pub fn column(cd: &CartanData, v: Vertex) -> Column {
    Column {
        node: v.node,
        residue: v.shift.rem_euclid(2 * cd.d(v.node)),
    }
}

/// Targets of the Γ-arrows leaving `v`.
pub fn gamma_out(cd: &CartanData, v: Vertex) -> Vec<Vertex> {
    let i = v.node;
    cd.nodes()
        .filter(|&j| cd.c(i, j) != 0)
        .map(|j| Vertex::new(j, v.shift + cd.d(i) * cd.c(i, j)))
        .collect()
}

/// Sources of the Γ-arrows entering `v`.
pub fn gamma_in(cd: &CartanData, v: Vertex) -> Vec<Vertex> {
    let i = v.node;
    cd.nodes()
        .filter(|&j| cd.c(j, i) != 0)
        .map(|j| Vertex::new(j, v.shift - cd.d(j) * cd.c(j, i)))
        .collect()
}

pub fn gamma_neighbors(cd: &CartanData, v: Vertex) -> Vec<Vertex> {
    let mut out = gamma_out(cd, v);
    out.extend(gamma_in(cd, v));
    out
}

/// A finite quiver with integer arrow multiplicities and frozen vertices.
///
/// Arrows are stored one way only: a pair never has arrows in both directions.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Quiver {
    vertices: BTreeSet<Vertex>,
    arrows: BTreeMap<(Vertex, Vertex), u32>,
    frozen: BTreeSet<Vertex>,
}

impl Quiver {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>, frozen: impl IntoIterator<Item = Vertex>) -> Self {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        let frozen = frozen.into_iter().filter(|v| vertices.contains(v)).collect();
        Self {
            vertices,
            arrows: BTreeMap::new(),
            frozen,
        }
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn frozen(&self) -> &BTreeSet<Vertex> {
        &self.frozen
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_frozen(&self, v: Vertex) -> bool {
        self.frozen.contains(&v)
    }

    pub fn mutable(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied().filter(|v| !self.frozen.contains(v))
    }

    pub fn arrows(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.arrows.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    pub fn multiplicity(&self, a: Vertex, b: Vertex) -> u32 {
        self.arrows.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Skew-symmetric exchange matrix entry: #(a→b) − #(b→a).
    pub fn b(&self, a: Vertex, b: Vertex) -> i64 {
        self.multiplicity(a, b) as i64 - self.multiplicity(b, a) as i64
    }

    /// Adds `m` arrows a→b, cancelling against existing b→a arrows.
    pub fn add_arrows(&mut self, a: Vertex, b: Vertex, m: u32) {
        assert!(a != b, "loop at {a}");
        if m == 0 {
            return;
        }
        let back = self.multiplicity(b, a);
        if back > m {
            self.arrows.insert((b, a), back - m);
        } else {
            self.arrows.remove(&(b, a));
            if m > back {
                *self.arrows.entry((a, b)).or_insert(0) += m - back;
            }
        }
    }

    pub fn in_arrows(&self, k: Vertex) -> Vec<(Vertex, u32)> {
        self.arrows.iter().filter(|((_, b), _)| *b == k).map(|(&(a, _), &m)| (a, m)).collect()
    }

    pub fn out_arrows(&self, k: Vertex) -> Vec<(Vertex, u32)> {
        self.arrows.iter().filter(|((a, _), _)| *a == k).map(|(&(_, b), &m)| (b, m)).collect()
    }

    /// Quiver mutation at a mutable vertex.
    pub fn mutate_at(&self, k: Vertex) -> Result<Quiver> {
        if !self.contains(k) {
            return Err(Error::UnknownVertex(k.to_string()));
        }
        if self.is_frozen(k) {
            return Err(Error::FrozenVertex(k.to_string()));
        }
        let ins = self.in_arrows(k);
        let outs = self.out_arrows(k);
        let mut q = self.clone();
        for &(a, p) in &ins {
            for &(c, r) in &outs {
                q.add_arrows(a, c, p * r);
            }
        }
        for &(a, p) in &ins {
            q.arrows.remove(&(a, k));
            q.arrows.insert((k, a), p);
        }
        for &(c, r) in &outs {
            q.arrows.remove(&(k, c));
            q.arrows.insert((c, k), r);
        }
        Ok(q.canonical())
    }

    /// Drops arrows between two frozen vertices.
    pub fn canonical(&self) -> Quiver {
        let mut q = self.clone();
        q.arrows.retain(|(a, b), _| !(self.frozen.contains(a) && self.frozen.contains(b)));
        q
    }

    pub fn canonical_eq(&self, other: &Quiver) -> bool {
        self.canonical() == other.canonical()
    }

    /// Full subquiver on `keep`; frozen status is inherited.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Quiver {
        let mut q = Quiver::new(
            self.vertices.intersection(keep).copied(),
            self.frozen.intersection(keep).copied(),
        );
        q.arrows = self
            .arrows
            .iter()
            .filter(|((a, b), _)| keep.contains(a) && keep.contains(b))
            .map(|(k, m)| (*k, *m))
            .collect();
        q
    }

    /// Plain adjacency-list export, one vertex per line.
    pub fn to_adjacency(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let tag = if self.is_frozen(*v) { " frozen" } else { "" };
            let outs: Vec<String> = self
                .out_arrows(*v)
                .into_iter()
                .map(|(w, m)| if m == 1 { w.to_string() } else { format!("{w}x{m}") })
                .collect();
            writeln!(s, "{v}{tag} -> {}", outs.join(" ")).unwrap();
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for v in &self.vertices {
            let shape = if self.is_frozen(*v) { "box" } else { "ellipse" };
            writeln!(s, "  \"{v}\" [shape={shape}];").unwrap();
        }
        for (a, b, m) in self.arrows() {
            for _ in 0..m {
                writeln!(s, "  \"{a}\" -> \"{b}\";").unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

fn component_in_window(cd: &CartanData, base: Vertex, lo: i64, hi: i64) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([base]);
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for w in gamma_neighbors(cd, v) {
            if w.shift >= lo && w.shift <= hi && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn add_gamma_arrows(cd: &CartanData, q: &mut Quiver) {
    let verts: Vec<Vertex> = q.vertices.iter().copied().collect();
    for v in verts {
        for w in gamma_out(cd, v) {
            if q.contains(w) {
                q.add_arrows(v, w, 1);
            }
        }
    }
}

/// The connected component of Γ through `base`, restricted to shifts in
/// `[r_min, r_max]`. Vertices with a Γ-neighbour outside the window are frozen.
pub fn build_gamma_window(cd: &CartanData, base: Vertex, r_min: i64, r_max: i64) -> Result<Quiver> {
    if !cd.has_node(base.node) || base.shift < r_min || base.shift > r_max {
        return Err(Error::EmptyWindow(format!("{base} not in [{r_min}, {r_max}]")));
    }
    let comp = component_in_window(cd, base, r_min, r_max);
    let frozen: Vec<Vertex> = comp
        .iter()
        .copied()
        .filter(|v| gamma_neighbors(cd, *v).iter().any(|w| w.shift < r_min || w.shift > r_max))
        .collect();
    let mut q = Quiver::new(comp, frozen);
    add_gamma_arrows(cd, &mut q);
    Ok(q)
}

/// The ice quiver H⁻: the part of the component with W-label shift ≤ 0
/// (that is `s + d_i ≤ 0`) down to `-depth`, plus one frozen connector per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IceQuiver {
    pub quiver: Quiver,
    pub connectors: BTreeMap<Column, Vertex>,
}

impl IceQuiver {
    /// G⁻ without the connectors, keeping the bottom boundary frozen.
    pub fn coefficient_free(&self) -> Quiver {
        let keep: BTreeSet<Vertex> = self
            .quiver
            .vertices()
            .iter()
            .copied()
            .filter(|v| !self.connectors.values().any(|c| c == v))
            .collect();
        self.quiver.induced(&keep)
    }

    pub fn is_connector(&self, v: Vertex) -> bool {
        self.connectors.values().any(|c| *c == v)
    }
}

pub fn build_ice_hminus(cd: &CartanData, base: Vertex, depth: i64) -> Result<IceQuiver> {
    if depth <= 0 || !cd.has_node(base.node) {
        return Err(Error::EmptyWindow(format!("depth {depth}")));
    }
    let margin = 8 * cd.lacing() + 2;
    let lo = (-depth).min(base.shift) - margin;
    let hi = base.shift.max(0) + margin;
    let comp = component_in_window(cd, base, lo, hi);
    let minus: BTreeSet<Vertex> = comp
        .iter()
        .copied()
        .filter(|v| v.shift + cd.d(v.node) <= 0 && v.shift >= -depth)
        .collect();
    if minus.is_empty() {
        return Err(Error::EmptyWindow(format!("no vertex of {base}'s component in [-{depth}, 0]")));
    }
    let mut connectors: BTreeMap<Column, Vertex> = BTreeMap::new();
    for v in &minus {
        for w in gamma_neighbors(cd, *v) {
            if w.shift + cd.d(w.node) > 0 {
                if let Some(old) = connectors.insert(column(cd, w), w) {
                    if old != w {
                        return Err(Error::InvalidArgument(format!(
                            "column {} has two connectors {old} and {w}",
                            column(cd, w)
                        )));
                    }
                }
            }
        }
    }
    let bottom: Vec<Vertex> = minus
        .iter()
        .copied()
        .filter(|v| gamma_neighbors(cd, *v).iter().any(|w| w.shift < -depth))
        .collect();
    let mut q = Quiver::new(
        minus.iter().copied().chain(connectors.values().copied()),
        bottom.into_iter().chain(connectors.values().copied()),
    );
    add_gamma_arrows(cd, &mut q);
    Ok(IceQuiver { quiver: q, connectors })
}
