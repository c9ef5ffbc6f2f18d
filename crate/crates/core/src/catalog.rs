//! The catalog of affine Coxeter graphs.
//!
//! Families are written in ASCII as At, Bt, Ct, Dt, E6t, E7t, E8t, F4t and
//! G2t (t for tilde). At(1) is the two-vertex graph with an infinite bond;
//! At(n) for n ≥ 2 is the (n+1)-cycle. All other families are trees.

use std::fmt;

use thiserror::Error;

use crate::graph::{CoxeterGraph, EdgeLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    ATilde,
    BTilde,
    CTilde,
    DTilde,
    E6Tilde,
    E7Tilde,
    E8Tilde,
    F4Tilde,
    G2Tilde,
}

pub const ALL_FAMILIES: [Family; 9] = [
    Family::ATilde,
    Family::BTilde,
    Family::CTilde,
    Family::DTilde,
    Family::E6Tilde,
    Family::E7Tilde,
    Family::E8Tilde,
    Family::F4Tilde,
    Family::G2Tilde,
];

impl Family {
    pub fn parse(token: &str) -> Option<Family> {
        match token.to_ascii_lowercase().as_str() {
            "at" => Some(Family::ATilde),
            "bt" => Some(Family::BTilde),
            "ct" => Some(Family::CTilde),
            "dt" => Some(Family::DTilde),
            "e6t" => Some(Family::E6Tilde),
            "e7t" => Some(Family::E7Tilde),
            "e8t" => Some(Family::E8Tilde),
            "f4t" => Some(Family::F4Tilde),
            "g2t" => Some(Family::G2Tilde),
            _ => None,
        }
    }

    pub fn takes_rank(&self) -> bool {
        matches!(self, Family::ATilde | Family::BTilde | Family::CTilde | Family::DTilde)
    }

    pub fn min_rank(&self) -> u32 {
        match self {
            Family::ATilde => 1,
            Family::BTilde => 3,
            Family::CTilde => 2,
            Family::DTilde => 4,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::ATilde => "At",
            Family::BTilde => "Bt",
            Family::CTilde => "Ct",
            Family::DTilde => "Dt",
            Family::E6Tilde => "E6t",
            Family::E7Tilde => "E7t",
            Family::E8Tilde => "E8t",
            Family::F4Tilde => "F4t",
            Family::G2Tilde => "G2t",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("family {0} needs a rank parameter")]
    MissingRank(Family),
    #[error("family {0} has a fixed rank; drop the parameter")]
    UnexpectedRank(Family),
    #[error("family {family} requires rank ≥ {min}, got {got}")]
    RankTooSmall { family: Family, min: u32, got: u32 },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub family: Family,
    pub rank: Option<u32>,
    pub graph: CoxeterGraph,
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        match self.rank {
            Some(n) => format!("{}({n})", self.family),
            None => self.family.to_string(),
        }
    }
}

/// Vertex names: single letters while they last, v0, v1, ... beyond that.
fn vertex_names(count: usize) -> Vec<String> {
    if count <= 26 {
        (0..count).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..count).map(|i| format!("v{i}")).collect()
    }
}

fn build(count: usize, edges: &[(usize, usize, EdgeLabel)]) -> CoxeterGraph {
    let names = vertex_names(count);
    let mut g = CoxeterGraph::new();
    for name in &names {
        g.add_vertex(name).expect("fresh vertex");
    }
    for &(a, b, label) in edges {
        g.add_edge(a, b, label).expect("fresh edge");
    }
    g
}

const L3: EdgeLabel = EdgeLabel::Finite(3);
const L4: EdgeLabel = EdgeLabel::Finite(4);
const L6: EdgeLabel = EdgeLabel::Finite(6);

pub fn catalog(family: Family, rank: Option<u32>) -> Result<CatalogEntry, CatalogError> {
    if family.takes_rank() {
        let n = rank.ok_or(CatalogError::MissingRank(family))?;
        if n < family.min_rank() {
            return Err(CatalogError::RankTooSmall { family, min: family.min_rank(), got: n });
        }
    } else if rank.is_some() {
        return Err(CatalogError::UnexpectedRank(family));
    }

    let graph = match (family, rank) {
        (Family::ATilde, Some(1)) => build(2, &[(0, 1, EdgeLabel::Infinite)]),
        (Family::ATilde, Some(n)) => {
            let count = n as usize + 1;
            let mut edges: Vec<(usize, usize, EdgeLabel)> =
                (0..count - 1).map(|i| (i, i + 1, L3)).collect();
            edges.push((count - 1, 0, L3));
            build(count, &edges)
        }
        (Family::BTilde, Some(n)) => {
            // Path with a 4-label at one end and a fork of two leaves at the other.
            let n = n as usize;
            let mut edges = vec![(0, 1, L4)];
            for i in 1..n - 2 {
                edges.push((i, i + 1, L3));
            }
            edges.push((n - 2, n - 1, L3));
            edges.push((n - 2, n, L3));
            build(n + 1, &edges)
        }
        (Family::CTilde, Some(n)) => {
            let n = n as usize;
            let mut edges = vec![(0, 1, L4)];
            for i in 1..n - 1 {
                edges.push((i, i + 1, L3));
            }
            edges.push((n - 1, n, L4));
            build(n + 1, &edges)
        }
        (Family::DTilde, Some(n)) => {
            // Two leaves forked onto each end of a spine of n - 3 vertices.
            let n = n as usize;
            let spine_first = 2;
            let spine_last = n - 2;
            let mut edges = vec![(0, spine_first, L3), (1, spine_first, L3)];
            for i in spine_first..spine_last {
                edges.push((i, i + 1, L3));
            }
            edges.push((spine_last, n - 1, L3));
            edges.push((spine_last, n, L3));
            build(n + 1, &edges)
        }
        (Family::E6Tilde, None) => build(
            7,
            &[(0, 1, L3), (1, 2, L3), (2, 3, L3), (3, 4, L3), (2, 5, L3), (5, 6, L3)],
        ),
        (Family::E7Tilde, None) => build(
            8,
            &[
                (0, 1, L3),
                (1, 2, L3),
                (2, 3, L3),
                (3, 4, L3),
                (4, 5, L3),
                (5, 6, L3),
                (3, 7, L3),
            ],
        ),
        (Family::E8Tilde, None) => build(
            9,
            &[
                (0, 1, L3),
                (1, 2, L3),
                (2, 3, L3),
                (3, 4, L3),
                (4, 5, L3),
                (5, 6, L3),
                (6, 7, L3),
                (2, 8, L3),
            ],
        ),
        (Family::F4Tilde, None) => build(5, &[(0, 1, L3), (1, 2, L4), (2, 3, L3), (3, 4, L3)]),
        (Family::G2Tilde, None) => build(3, &[(0, 1, L6), (1, 2, L3)]),
        _ => unreachable!("validated above"),
    };
    Ok(CatalogEntry { family, rank, graph })
}

/// Parses "At 2", "G2t" style family/rank pairs.
pub fn catalog_from_tokens(family: &str, rank: Option<u32>) -> Result<CatalogEntry, CatalogError> {
    let fam = Family::parse(family).ok_or_else(|| CatalogError::UnknownFamily(family.to_string()))?;
    catalog(fam, rank)
}

/// Every catalog entry with at most `max_vertices` vertices, smallest first.
pub fn entries_up_to(max_vertices: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for count in 2..=max_vertices {
        for family in ALL_FAMILIES {
            if family.takes_rank() {
                let n = count as u32 - 1;
                if n >= family.min_rank() {
                    out.push(catalog(family, Some(n)).expect("valid rank"));
                }
            } else {
                let fixed = catalog(family, None).expect("fixed family");
                if fixed.graph.vertex_count() == count {
                    out.push(fixed);
                }
            }
        }
    }
    out
}
