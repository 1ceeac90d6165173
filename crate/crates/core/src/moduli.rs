//! Stratifications of tropical moduli spaces as posets of stable types, and
//! connectedness through codimension one.
//!
//! The stratum of a stable weighted graph `(Γ, w)` has dimension `|E(Γ)|`.
//! A cover `(upper, lower)` means `lower` is a one-edge weighted contraction
//! of `upper`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::atlas::{downward_closure, enumerate_legged, Filter};
use crate::canon::{canonical_form, CanonicalForm, LegMode};
use crate::connectivity::{is_p_regular, is_three_edge_connected};
use crate::error::{precondition, Error, Result};
use crate::graph::WeightedGraph;
use crate::util::DisjointSet;

/// A sublocus of `M_{g,n}^trop`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Locus {
    /// Every stable type.
    #[default]
    All,
    /// Types with all weights zero.
    Pure,
    /// Closure of the 3-regular, 3-edge-connected types: types whose graph
    /// is 3-edge-connected.
    ThreeEc,
    /// Closure of the `p`-regular types with zero weights.
    PRegular(usize),
}

impl std::str::FromStr for Locus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Locus::All),
            "pure" => Ok(Locus::Pure),
            "3ec" => Ok(Locus::ThreeEc),
            _ => match s.strip_prefix("preg:").map(str::parse::<usize>) {
                Some(Ok(p)) if p >= 3 => Ok(Locus::PRegular(p)),
                _ => precondition(format!("unknown locus {s:?}")),
            },
        }
    }
}

impl std::fmt::Display for Locus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Locus::All => f.write_str("all"),
            Locus::Pure => f.write_str("pure"),
            Locus::ThreeEc => f.write_str("3ec"),
            Locus::PRegular(p) => write!(f, "preg:{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub graph: WeightedGraph,
    pub dimension: usize,
    pub form: CanonicalForm,
}

#[derive(Clone, Debug)]
pub struct StrataPoset {
    pub genus: usize,
    pub legs: u32,
    pub locus: Locus,
    /// Decreasing dimension, then canonical form.
    pub strata: Vec<Stratum>,
    /// `(upper, lower)` index pairs, sorted.
    pub covers: Vec<(usize, usize)>,
}

/// The poset of strata of `locus` in `M_{g,n}^trop`.
///
/// `ThreeEc` and `PRegular` are defined for `n = 0` and are the downward
/// closures of their top-dimensional strata (for `ThreeEc`, within types
/// whose graph stays 3-edge-connected, which contraction never breaks).
pub fn build_poset(g: usize, n: u32, locus: Locus) -> Result<StrataPoset> {
    if 2 * g + n as usize <= 2 {
        return precondition("2g − 2 + n must be positive");
    }
    if matches!(locus, Locus::ThreeEc | Locus::PRegular(_)) && n > 0 {
        return precondition("this locus is defined without legs");
    }
    let pure_top = |p: usize, filter: Filter| -> Result<Vec<WeightedGraph>> {
        if g < 2 && n == 0 {
            return Ok(Vec::new());
        }
        Ok(enumerate_legged(p, g, n, LegMode::Labeled, filter)?
            .into_iter()
            .map(WeightedGraph::pure)
            .collect())
    };
    let closure = match locus {
        Locus::All => downward_closure(pure_top(3, Filter::All)?, |_| true),
        Locus::Pure => downward_closure(pure_top(3, Filter::All)?, WeightedGraph::is_pure),
        Locus::ThreeEc => downward_closure(pure_top(3, Filter::ThreeEdgeConnected)?, |wg| {
            is_three_edge_connected(wg.graph())
        }),
        Locus::PRegular(p) => {
            let top: Vec<WeightedGraph> = pure_top(p, Filter::All)?
                .into_iter()
                .filter(|wg| is_p_regular(wg.graph(), p))
                .collect();
            downward_closure(top, |_| true)
        }
    };
    let strata: Vec<Stratum> = closure
        .into_iter()
        .map(|(form, graph)| Stratum {
            dimension: graph.graph().edge_count(),
            graph,
            form,
        })
        .collect();
    let index: BTreeMap<&CanonicalForm, usize> = strata
        .iter()
        .enumerate()
        .map(|(i, s)| (&s.form, i))
        .collect();
    let mut covers = BTreeSet::new();
    for (i, s) in strata.iter().enumerate() {
        for e in s.graph.graph().edges() {
            let (c, _) = s.graph.weighted_contract_edge(e);
            if let Some(&j) = index.get(&canonical_form(&c, LegMode::Labeled)) {
                covers.insert((i, j));
            }
        }
    }
    Ok(StrataPoset {
        genus: g,
        legs: n,
        locus,
        strata,
        covers: covers.into_iter().collect(),
    })
}

impl StrataPoset {
    pub fn top_dimension(&self) -> Option<usize> {
        self.strata.iter().map(|s| s.dimension).max()
    }

    /// Strata that are not the lower end of any cover.
    pub fn maximal(&self) -> Vec<usize> {
        let lower: BTreeSet<usize> = self.covers.iter().map(|&(_, l)| l).collect();
        (0..self.strata.len())
            .filter(|i| !lower.contains(i))
            .collect()
    }

    pub fn dimension_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for s in &self.strata {
            *out.entry(s.dimension).or_insert(0) += 1;
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct StratumDoc {
            id: String,
            dimension: usize,
            graph: crate::io::GraphDoc,
        }
        #[derive(Serialize)]
        struct PosetDoc<'a> {
            genus: usize,
            legs: u32,
            locus: String,
            strata: Vec<StratumDoc>,
            covers: &'a [(usize, usize)],
        }
        let doc = PosetDoc {
            genus: self.genus,
            legs: self.legs,
            locus: self.locus.to_string(),
            strata: self
                .strata
                .iter()
                .map(|s| StratumDoc {
                    id: s.form.short_id(),
                    dimension: s.dimension,
                    graph: crate::io::GraphDoc::from_weighted(&s.graph),
                })
                .collect(),
            covers: &self.covers,
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// Hasse diagram with one rank per dimension.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "digraph \"M_{}_{}_{}\" {{",
            self.genus, self.legs, self.locus
        );
        out.push_str("  rankdir=TB;\n");
        for (d, _) in self.dimension_profile().iter().rev() {
            let _ = write!(out, "  {{ rank=same;");
            for s in self.strata.iter().filter(|s| s.dimension == *d) {
                let _ = write!(out, " \"s{}\";", s.form.short_id());
            }
            out.push_str(" }\n");
        }
        for s in &self.strata {
            let w: Vec<String> = s.graph.weights().iter().map(u32::to_string).collect();
            let _ = writeln!(
                out,
                "  \"s{}\" [label=\"dim {} | w {}\"];",
                s.form.short_id(),
                s.dimension,
                w.join(",")
            );
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(
                out,
                "  \"s{}\" -> \"s{}\";",
                self.strata[a].form.short_id(),
                self.strata[b].form.short_id()
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Outcome of [`connected_through_codim_one`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Codim1Report {
    pub connected: bool,
    pub top_dimension: usize,
    /// Every maximal stratum has the top dimension.
    pub pure_dimensional: bool,
    /// Components of the strata of dimension `≥ d − 1`, as stratum ids.
    pub components: Vec<Vec<String>>,
}

/// Whether the strata of dimension at least `d − 1` (`d` the top dimension)
/// form a connected graph under the covers between them.
pub fn connected_through_codim_one(poset: &StrataPoset) -> Result<Codim1Report> {
    let Some(d) = poset.top_dimension() else {
        return precondition("poset is empty");
    };
    let kept: Vec<usize> = (0..poset.strata.len())
        .filter(|&i| poset.strata[i].dimension + 1 >= d)
        .collect();
    let pos: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut ds = DisjointSet::new(kept.len());
    for &(a, b) in &poset.covers {
        if let (Some(&x), Some(&y)) = (pos.get(&a), pos.get(&b)) {
            ds.union(x, y);
        }
    }
    let mut comps: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (k, &i) in kept.iter().enumerate() {
        comps
            .entry(ds.find(k))
            .or_default()
            .push(poset.strata[i].form.short_id());
    }
    let pure_dimensional = poset
        .maximal()
        .iter()
        .all(|&i| poset.strata[i].dimension == d);
    Ok(Codim1Report {
        connected: comps.len() == 1,
        top_dimension: d,
        pure_dimensional,
        components: comps.into_values().collect(),
    })
}

/// Codimension-one connectedness of the 3-edge-connected locus of
/// `M_g^trop`, which maps onto the tropical Schottky locus with finite
/// fibers and without loss of dimension.
pub fn check_schottky_codim1(g: usize) -> Result<Codim1Report> {
    if g < 2 {
        return precondition("genus must be at least 2");
    }
    connected_through_codim_one(&build_poset(g, 0, Locus::ThreeEc)?)
}
