//! Text specifications of centre sets.
//!
//! * `a,b,c` lists vertex ids. Use `;` as the separator when ids contain
//!   commas (lattice ids such as `0,0;0,4`). A string that is itself a vertex
//!   id names that single vertex.
//! * `every:k` takes every `k`-th vertex in index order, starting at index 0.
//! * `sublattice:k` takes lattice vertices whose coordinates are all
//!   divisible by `k`.

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};

pub fn parse_centers(g: &WeightedGraph, spec: &str) -> Result<VertexSet> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::InvalidCenters("empty spec".into()));
    }
    if let Some(k) = spec.strip_prefix("every:") {
        let k = positive(k)?;
        return Ok(VertexSet::new(g.len(), (0..g.len()).step_by(k)));
    }
    if let Some(k) = spec.strip_prefix("sublattice:") {
        let k = positive(k)? as i64;
        let mut chosen = Vec::new();
        for x in 0..g.len() {
            let coords = g
                .id(x)
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidCenters(format!("`{}` is not a lattice id", g.id(x))))?;
            if coords.iter().all(|c| c.rem_euclid(k) == 0) {
                chosen.push(x);
            }
        }
        return Ok(VertexSet::new(g.len(), chosen));
    }
    if g.index_of(spec).is_ok() {
        return VertexSet::from_ids(g, &[spec]);
    }
    let sep = if spec.contains(';') { ';' } else { ',' };
    let ids: Vec<&str> = spec.split(sep).map(str::trim).filter(|s| !s.is_empty()).collect();
    if ids.is_empty() {
        return Err(Error::InvalidCenters(format!("no ids in `{spec}`")));
    }
    VertexSet::from_ids(g, &ids)
}

fn positive(text: &str) -> Result<usize> {
    match text.trim().parse::<usize>() {
        Ok(k) if k > 0 => Ok(k),
        _ => Err(Error::InvalidCenters(format!("expected a positive integer, got `{text}`"))),
    }
}
