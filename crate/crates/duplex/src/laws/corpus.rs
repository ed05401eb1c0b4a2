//! The standard instance corpus the law checker runs against, plus the
//! knobs that bound the more expensive suites.

use crate::model::derived::{sum_container, unit_container};
use crate::model::{EnumCaps, FiniteContainer, Value};

/// The boundary with one request and one response.
pub fn unit_c() -> FiniteContainer {
    unit_container()
}

/// Two requests with one and two responses: the smallest boundary where a
/// backward table has any freedom.
pub fn c2() -> FiniteContainer {
    FiniteContainer::new(
        "C2",
        vec![
            (Value::atom("q0"), vec![Value::atom("r0")]),
            (Value::atom("q1"), vec![Value::atom("r0"), Value::atom("r1")]),
        ],
    )
    .expect("C2 is well formed")
}

/// Two requests with two responses each.
pub fn c3() -> FiniteContainer {
    FiniteContainer::new(
        "C3",
        vec![
            (Value::atom("p0"), vec![Value::atom("r0"), Value::atom("r1")]),
            (Value::atom("p1"), vec![Value::atom("r0"), Value::atom("r1")]),
        ],
    )
    .expect("C3 is well formed")
}

/// A derived instance: the choice of [`c2`] and [`c3`], exercised through
/// the same laws as the hand-written boundaries.
pub fn choice_instance() -> FiniteContainer {
    sum_container(&c2(), &c3())
}

/// The three base boundaries.
pub fn trio() -> Vec<FiniteContainer> {
    vec![unit_c(), c2(), c3()]
}

/// The default corpus: the trio plus one derived instance.
pub fn default_corpus() -> Vec<FiniteContainer> {
    vec![unit_c(), c2(), c3(), choice_instance()]
}

/// Bounds for the law run.
///
/// Laws whose instance spaces grow exponentially (iteration above all) are
/// checked exhaustively up to these bounds rather than sampled: within the
/// bound every single case is visited, so a pass is a proof over that
/// fragment and a failure always carries a concrete witness.
#[derive(Debug, Clone)]
pub struct LawConfig {
    /// Iteration depth for the full-corpus iteration laws.
    pub star_depth: usize,
    /// Ceiling on iteration-tree count when comparing the typed route
    /// against the table route pointwise; depth shrinks per boundary until
    /// the tree count fits.
    pub star_agree_budget: usize,
    /// Enumeration caps for transformer spaces.
    pub caps: EnumCaps,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            star_depth: 3,
            star_agree_budget: 200,
            caps: EnumCaps::default(),
        }
    }
}

impl LawConfig {
    /// A cheaper configuration for runs that only need to expose seeded
    /// defects, not certify the full depth.
    pub fn probe() -> Self {
        LawConfig {
            star_depth: 2,
            star_agree_budget: 50,
            caps: EnumCaps::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{enumerate_morphisms, hom_count};

    #[test]
    fn transformer_space_sizes_are_pinned() {
        let trio = trio();
        let grid: Vec<Vec<u128>> = trio
            .iter()
            .map(|a| trio.iter().map(|b| hom_count(a, b)).collect())
            .collect();
        assert_eq!(grid, vec![vec![1, 2, 2], vec![2, 12, 16], vec![4, 36, 64]]);
        let total: u128 = grid.iter().flatten().sum();
        assert_eq!(total, 139);

        let caps = EnumCaps::default();
        for (i, a) in trio.iter().enumerate() {
            for (j, b) in trio.iter().enumerate() {
                let homs = enumerate_morphisms(a, b, &caps).unwrap();
                assert_eq!(homs.len() as u128, grid[i][j]);
            }
        }
    }

    #[test]
    fn composable_pair_and_triple_counts_are_pinned() {
        let trio = trio();
        let count = |a: &FiniteContainer, b: &FiniteContainer| hom_count(a, b);
        let mut pairs: u128 = 0;
        let mut triples: u128 = 0;
        for a in &trio {
            for b in &trio {
                for c in &trio {
                    pairs += count(a, b) * count(b, c);
                    for d in &trio {
                        triples += count(a, b) * count(b, c) * count(c, d);
                    }
                }
            }
        }
        assert_eq!(pairs, 10_063);
        assert_eq!(triples, 739_603);
    }

    #[test]
    fn choice_instance_shape() {
        let x = choice_instance();
        assert_eq!(x.request_count(), 4);
        let arities: Vec<usize> = (0..4).map(|i| x.responses(i).len()).collect();
        assert_eq!(arities, vec![1, 2, 2, 2]);
    }
}
