use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::poly::Poly;
use crate::algebra::text::parse_poly;
use crate::cartan::CartanData;
use crate::cluster::{initial_seed, Attachment, Seed};
use crate::error::{Error, Result};
use crate::quiver::{build_gamma_window, Quiver, Vertex};

/// JSON form of a seed.
///
/// Only `cartan` and `window` are required: the quiver defaults to the Γ-window
/// through `base` (default `1,0`) and attachments default to z_{i,r}.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeedFile {
    pub cartan: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    pub window: [i64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frozen: Option<Vec<String>>,
    #[serde(default)]
    pub attachments: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<(String, String, u32)>>,
}

impl SeedFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("seed files always serialize")
    }

    pub fn cartan(&self) -> Result<CartanData> {
        self.cartan.parse()
    }

    pub fn to_seed(&self) -> Result<(CartanData, Seed)> {
        let cd = self.cartan()?;
        let base: Vertex = self.base.as_deref().unwrap_or("1,0").parse()?;
        let window = build_gamma_window(&cd, base, self.window[0], self.window[1])?;
        let frozen: Vec<Vertex> = match &self.frozen {
            Some(list) => list.iter().map(|v| v.parse()).collect::<Result<_>>()?,
            None => window.frozen().iter().copied().collect(),
        };
        let mut quiver = Quiver::new(window.vertices().iter().copied(), frozen.iter().copied());
        match &self.arrows {
            Some(list) => {
                for (a, b, m) in list {
                    let (a, b): (Vertex, Vertex) = (a.parse()?, b.parse()?);
                    for v in [a, b] {
                        if !quiver.contains(v) {
                            return Err(Error::UnknownVertex(v.to_string()));
                        }
                    }
                    quiver.add_arrows(a, b, *m);
                }
            }
            None => {
                for (a, b, m) in window.arrows() {
                    quiver.add_arrows(a, b, m);
                }
            }
        }
        for v in &frozen {
            if !quiver.contains(*v) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        let mut seed = initial_seed(&quiver);
        for (v, text) in &self.attachments {
            let v: Vertex = v.parse()?;
            if !quiver.contains(v) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            let p: Poly = parse_poly(text)?;
            seed.attach.insert(v, Attachment::laurent(p));
        }
        Ok((cd, seed))
    }

    /// Writes every vertex, arrow and attachment explicitly.
    pub fn from_seed(cd: &CartanData, base: Vertex, window: [i64; 2], seed: &Seed) -> Self {
        Self {
            cartan: cd.name(),
            base: Some(format!("{},{}", base.node, base.shift)),
            window,
            frozen: Some(seed.quiver.frozen().iter().map(|v| format!("{},{}", v.node, v.shift)).collect()),
            attachments: seed
                .attach
                .iter()
                .map(|(v, a)| (format!("{},{}", v.node, v.shift), a.to_string()))
                .collect(),
            arrows: Some(
                seed.quiver
                    .arrows()
                    .map(|(a, b, m)| (format!("{},{}", a.node, a.shift), format!("{},{}", b.node, b.shift), m))
                    .collect(),
            ),
        }
    }
}
