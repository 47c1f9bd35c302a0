use std::fmt;

use super::FiniteGroupoid;
use crate::zlinalg::{is_unimodular, IntMatrix};

/// A G-module with free fibers: `Z^fiber_rank(u)` over each unit `u` and a
/// unimodular action `rank(rng g) x rank(src g)` for each arrow `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    /// Indexed by unit position.
    fiber_rank: Vec<usize>,
    /// Indexed by arrow id.
    action: Vec<IntMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleViolation {
    Shape { arrow: usize },
    UnitNotIdentity { unit: usize },
    NotUnimodular { arrow: usize },
    NotFunctorial { g: usize, h: usize },
    Inverse { arrow: usize },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::Shape { arrow } => write!(f, "action of arrow {arrow} has the wrong shape"),
            ModuleViolation::UnitNotIdentity { unit } => write!(f, "unit {unit} does not act as the identity"),
            ModuleViolation::NotUnimodular { arrow } => write!(f, "action of arrow {arrow} is not unimodular"),
            ModuleViolation::NotFunctorial { g, h } => {
                write!(
                    f,
                    "action of the product of ({g}, {h}) is not the product of the actions"
                )
            }
            ModuleViolation::Inverse { arrow } => {
                write!(f, "inverse of arrow {arrow} does not act by the inverse matrix")
            }
        }
    }
}

impl GModule {
    /// Raw constructor; pair with [`GModule::validate`].
    pub fn new(fiber_rank: Vec<usize>, action: Vec<IntMatrix>) -> Self {
        GModule { fiber_rank, action }
    }

    /// Fiber rank at a unit (by unit position).
    pub fn rank_at(&self, unit_pos: usize) -> usize {
        self.fiber_rank[unit_pos]
    }

    pub fn fiber_ranks(&self) -> &[usize] {
        &self.fiber_rank
    }

    /// Fiber rank at a unit arrow id.
    pub fn fiber(&self, g: &FiniteGroupoid, unit: usize) -> usize {
        self.fiber_rank[g.unit_index(unit).expect("unit")]
    }

    pub fn action(&self, arrow: usize) -> &IntMatrix {
        &self.action[arrow]
    }

    pub fn validate(&self, g: &FiniteGroupoid) -> Result<(), ModuleViolation> {
        if self.fiber_rank.len() != g.n_units() || self.action.len() != g.n_arrows() {
            return Err(ModuleViolation::Shape {
                arrow: self.action.len().min(g.n_arrows()),
            });
        }
        for a in 0..g.n_arrows() {
            let shape = (self.fiber(g, g.rng(a)), self.fiber(g, g.src(a)));
            if self.action[a].shape() != shape {
                return Err(ModuleViolation::Shape { arrow: a });
            }
        }
        for &u in g.units() {
            if !self.action[u].is_identity() {
                return Err(ModuleViolation::UnitNotIdentity { unit: u });
            }
        }
        for a in 0..g.n_arrows() {
            if !is_unimodular(&self.action[a]) {
                return Err(ModuleViolation::NotUnimodular { arrow: a });
            }
        }
        for a in 0..g.n_arrows() {
            for &b in g.arrows_with_range(g.src(a)) {
                let ab = g.mul(a, b);
                if self.action[ab] != self.action[a].matmul(&self.action[b]) {
                    return Err(ModuleViolation::NotFunctorial { g: a, h: b });
                }
            }
        }
        for a in 0..g.n_arrows() {
            if !self.action[a].matmul(&self.action[g.inv(a)]).is_identity() {
                return Err(ModuleViolation::Inverse { arrow: a });
            }
        }
        Ok(())
    }
}
