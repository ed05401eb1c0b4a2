//! Shared fixtures for the benchmarks: the transformer grid the law suite
//! quantifies over, pre-enumerated so each bench measures the operation
//! under test rather than its setup.

use duplex::laws::trio;
use duplex::model::{enumerate_morphisms, EnumCaps, FiniteMorphism};

/// Every transformer between every ordered pair of the three base
/// boundaries (139 tables).
pub fn hom_grid() -> Vec<FiniteMorphism> {
    let corpus = trio();
    let caps = EnumCaps::default();
    let mut grid = Vec::new();
    for dom in &corpus {
        for cod in &corpus {
            grid.extend(enumerate_morphisms(dom, cod, &caps).expect("trio is within caps"));
        }
    }
    grid
}

/// Index pairs `(i, j)` such that `grid[i]` followed by `grid[j]` composes.
pub fn composable_pairs(grid: &[FiniteMorphism]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (i, f) in grid.iter().enumerate() {
        for (j, g) in grid.iter().enumerate() {
            if f.cod().same_shape(g.dom()) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_every_transformer_between_the_base_boundaries() {
        assert_eq!(hom_grid().len(), 139);
    }

    #[test]
    fn every_listed_pair_composes() {
        let grid = hom_grid();
        let pairs = composable_pairs(&grid);
        assert!(!pairs.is_empty());
        for (i, j) in pairs {
            duplex::model::compose_tables(&grid[i], &grid[j]).expect("pair must compose");
        }
    }
}
