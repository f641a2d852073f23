use crate::error::Result;
use crate::potentials::PotentialModel;

use super::stationary::stationary_points_reduced;

/// Number of local minima over a grid of `(u, h/a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaMap {
    pub u: Vec<f64>,
    pub h_over_a: Vec<f64>,
    /// `counts[i][j]` belongs to `(u[i], h_over_a[j])`.
    pub counts: Vec<Vec<usize>>,
}

impl MinimaMap {
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, usize)> + '_ {
        self.u.iter().enumerate().flat_map(move |(i, &u)| {
            self.h_over_a
                .iter()
                .enumerate()
                .map(move |(j, &k)| (u, k, self.counts[i][j]))
        })
    }
}

pub fn minima_structure_map(
    model: &PotentialModel,
    u: &[f64],
    h_over_a: &[f64],
) -> Result<MinimaMap> {
    let a = model.params().a;
    let mut counts = Vec::with_capacity(u.len());
    for &ui in u {
        let mut row = Vec::with_capacity(h_over_a.len());
        for &k in h_over_a {
            row.push(stationary_points_reduced(model, ui, k * a)?.minima_count());
        }
        counts.push(row);
    }
    Ok(MinimaMap {
        u: u.to_vec(),
        h_over_a: h_over_a.to_vec(),
        counts,
    })
}
