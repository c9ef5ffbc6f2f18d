//! Certifying a Coxeter graph infinite by exhibiting an induced subgraph
//! that matches an affine catalog shape with edge labels at least as large.
//!
//! The search is exhaustive induced-subgraph matching over every catalog
//! template that fits, intended for desk-scale graphs. Absence of a witness
//! proves nothing; presence certifies the group is infinite.

use crate::catalog::{entries_up_to, CatalogEntry};
use crate::graph::{CoxeterGraph, Vertex};

#[derive(Debug, Clone)]
pub struct AffineWitness {
    /// Host vertices forming the induced match, ordered like the template's
    /// declaration order.
    pub vertices: Vec<Vertex>,
    pub entry: CatalogEntry,
}

impl AffineWitness {
    pub fn describe(&self, g: &CoxeterGraph) -> String {
        let names: Vec<&str> = self.vertices.iter().map(|&v| g.vertex_name(v)).collect();
        format!("{{{}}} matches {}", names.join(", "), self.entry.name())
    }
}

/// First witness found, scanning templates smallest-first in a fixed order.
pub fn find_affine_witness(g: &CoxeterGraph) -> Option<AffineWitness> {
    for entry in entries_up_to(g.vertex_count()) {
        if let Some(vertices) = find_induced_embedding(&entry.graph, g) {
            return Some(AffineWitness { vertices, entry });
        }
    }
    None
}

/// An injective map from template vertices to host vertices under which the
/// induced host subgraph has exactly the template's edges, each with a label
/// ≥ the template's label. Returns the image in template vertex order.
fn find_induced_embedding(template: &CoxeterGraph, host: &CoxeterGraph) -> Option<Vec<Vertex>> {
    let tn = template.vertex_count();
    if tn > host.vertex_count() {
        return None;
    }
    let mut assignment: Vec<Vertex> = Vec::with_capacity(tn);
    let mut used = vec![false; host.vertex_count()];
    if backtrack(template, host, &mut assignment, &mut used) {
        Some(assignment)
    } else {
        None
    }
}

fn backtrack(
    template: &CoxeterGraph,
    host: &CoxeterGraph,
    assignment: &mut Vec<Vertex>,
    used: &mut [bool],
) -> bool {
    let next = assignment.len();
    if next == template.vertex_count() {
        return true;
    }
    'candidates: for cand in 0..host.vertex_count() {
        if used[cand] {
            continue;
        }
        for (prev, &image) in assignment.iter().enumerate() {
            match template.label(prev, next) {
                Some(need) => match host.label(image, cand) {
                    Some(have) if have >= need => {}
                    _ => continue 'candidates,
                },
                None => {
                    if host.label(image, cand).is_some() {
                        continue 'candidates;
                    }
                }
            }
        }
        assignment.push(cand);
        used[cand] = true;
        if backtrack(template, host, assignment, used) {
            return true;
        }
        assignment.pop();
        used[cand] = false;
    }
    false
}
