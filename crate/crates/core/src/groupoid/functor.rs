use super::FiniteGroupoid;
use crate::error::{Error, Result};

/// Arrow map of a groupoid homomorphism `G1 -> G2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidFunctor {
    map: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn new(map: Vec<usize>) -> Self {
        GroupoidFunctor { map }
    }

    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidFunctor {
            map: (0..g.n_arrows()).collect(),
        }
    }

    pub fn apply(&self, arrow: usize) -> usize {
        self.map[arrow]
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.map
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GroupoidFunctor) -> GroupoidFunctor {
        GroupoidFunctor {
            map: first.map.iter().map(|&a| self.map[a]).collect(),
        }
    }

    pub fn apply_tuple(&self, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&a| self.map[a]).collect()
    }

    pub fn is_surjective(&self, target: &FiniteGroupoid) -> bool {
        let mut hit = vec![false; target.n_arrows()];
        for &a in &self.map {
            hit[a] = true;
        }
        hit.into_iter().all(|x| x)
    }

    /// Units to units, endpoints and products preserved.
    pub fn validate(&self, source: &FiniteGroupoid, target: &FiniteGroupoid) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFunctor(msg));
        if self.map.len() != source.n_arrows() {
            return bad(format!(
                "arrow map has {} entries for {} arrows",
                self.map.len(),
                source.n_arrows()
            ));
        }
        if let Some(&a) = self.map.iter().find(|&&a| a >= target.n_arrows()) {
            return bad(format!("image {a} out of range"));
        }
        for &u in source.units() {
            if !target.is_unit(self.map[u]) {
                return bad(format!("unit {u} maps to non-unit {}", self.map[u]));
            }
        }
        for g in 0..source.n_arrows() {
            let fg = self.map[g];
            if target.src(fg) != self.map[source.src(g)] || target.rng(fg) != self.map[source.rng(g)] {
                return bad(format!("arrow {g} endpoints not preserved"));
            }
            for &h in source.arrows_with_range(source.src(g)) {
                if target.compose(fg, self.map[h]) != Some(self.map[source.mul(g, h)]) {
                    return bad(format!("product of ({g}, {h}) not preserved"));
                }
            }
        }
        Ok(())
    }
}
