//! Finite groupoids, their nerves, modules and functors, and the boundary
//! matrices built from them.
//!
//! Composition follows one convention everywhere: `g * h` is defined iff
//! `src(g) == rng(h)`, and then `rng(gh) = rng(g)`, `src(gh) = src(h)`.
//! Units are arrows; `src` and `rng` return unit arrow ids.

mod complex;
mod functor;
mod module;
mod nerve;

use std::fmt;

pub use complex::{bar_boundary_matrix_b, bar_homotopy_matrix, boundary_matrix_d, coinvariants_collapse};
pub(crate) use complex::{bar_terms, merge_at};
pub use functor::GroupoidFunctor;
pub use module::{GModule, ModuleViolation};
pub use nerve::{default_cap, Nerve};

use crate::error::{Error, Result};

/// Explicit finite groupoid with full composition table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    units: Vec<usize>,
    unit_pos: Vec<Option<usize>>,
    src: Vec<usize>,
    rng: Vec<usize>,
    /// Row-major `n x n`; `comp[g * n + h]` is `Some(gh)` iff composable.
    comp: Vec<Option<usize>>,
    inv: Vec<usize>,
    /// Arrows grouped by range unit position, ascending ids.
    by_range: Vec<Vec<usize>>,
}

/// First violated groupoid axiom, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    UnitEndpoints { unit: usize },
    EndpointNotUnit { arrow: usize },
    ComposableUndefined { g: usize, h: usize },
    NonComposableDefined { g: usize, h: usize },
    CompositeEndpoints { g: usize, h: usize },
    LeftIdentity { arrow: usize },
    RightIdentity { arrow: usize },
    Associativity { g: usize, h: usize, k: usize },
    Inverse { arrow: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "malformed tables: {s}"),
            Violation::UnitEndpoints { unit } => write!(f, "unit {unit} is not its own source and range"),
            Violation::EndpointNotUnit { arrow } => write!(f, "arrow {arrow} has a source or range that is not a unit"),
            Violation::ComposableUndefined { g, h } => write!(f, "({g}, {h}) is composable but has no product"),
            Violation::NonComposableDefined { g, h } => write!(f, "({g}, {h}) is not composable but has a product"),
            Violation::CompositeEndpoints { g, h } => write!(f, "product of ({g}, {h}) has the wrong source or range"),
            Violation::LeftIdentity { arrow } => write!(f, "range unit does not act as identity on arrow {arrow}"),
            Violation::RightIdentity { arrow } => write!(f, "source unit does not act as identity on arrow {arrow}"),
            Violation::Associativity { g, h, k } => write!(f, "associativity fails on triple ({g}, {h}, {k})"),
            Violation::Inverse { arrow } => write!(f, "inverse of arrow {arrow} is wrong"),
        }
    }
}

impl FiniteGroupoid {
    /// Assembles a groupoid from raw tables without checking the axioms.
    /// `comp` is row-major `n x n`.
    pub fn from_tables_unchecked(
        units: Vec<usize>,
        src: Vec<usize>,
        rng: Vec<usize>,
        comp: Vec<Option<usize>>,
        inv: Vec<usize>,
    ) -> Self {
        let n = src.len();
        let mut units = units;
        units.sort_unstable();
        units.dedup();
        let mut unit_pos = vec![None; n];
        for (i, &u) in units.iter().enumerate() {
            if u < n {
                unit_pos[u] = Some(i);
            }
        }
        let mut by_range = vec![Vec::new(); units.len()];
        for g in 0..n {
            if let Some(Some(p)) = rng.get(g).and_then(|&r| unit_pos.get(r)) {
                by_range[*p].push(g);
            }
        }
        FiniteGroupoid {
            units,
            unit_pos,
            src,
            rng,
            comp,
            inv,
            by_range,
        }
    }

    /// Checked constructor from raw tables.
    pub fn from_tables(
        units: Vec<usize>,
        src: Vec<usize>,
        rng: Vec<usize>,
        comp: Vec<Option<usize>>,
        inv: Vec<usize>,
    ) -> Result<Self> {
        let g = Self::from_tables_unchecked(units, src, rng, comp, inv);
        g.validate().map_err(Error::InvalidGroupoid)?;
        Ok(g)
    }

    /// Builds the composition table from a product closure evaluated on
    /// composable pairs only, then validates.
    pub fn build(
        units: Vec<usize>,
        src: Vec<usize>,
        rng: Vec<usize>,
        inv: Vec<usize>,
        mut product: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = src.len();
        let mut comp = vec![None; n * n];
        for g in 0..n {
            for h in 0..n {
                if src[g] == rng[h] {
                    comp[g * n + h] = Some(product(g, h));
                }
            }
        }
        Self::from_tables(units, src, rng, comp, inv)
    }

    pub fn n_arrows(&self) -> usize {
        self.src.len()
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn n_units(&self) -> usize {
        self.units.len()
    }

    /// Position of a unit arrow in [`FiniteGroupoid::units`].
    pub fn unit_index(&self, unit: usize) -> Option<usize> {
        self.unit_pos.get(unit).copied().flatten()
    }

    pub fn is_unit(&self, g: usize) -> bool {
        self.unit_index(g).is_some()
    }

    pub fn src(&self, g: usize) -> usize {
        self.src[g]
    }

    pub fn rng(&self, g: usize) -> usize {
        self.rng[g]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.comp[g * self.n_arrows() + h]
    }

    /// Product of a composable pair; panics otherwise.
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.compose(g, h)
            .unwrap_or_else(|| panic!("arrows {g} and {h} are not composable"))
    }

    /// Arrows whose range is the given unit, ascending.
    pub fn arrows_with_range(&self, unit: usize) -> &[usize] {
        self.unit_index(unit).map_or(&[], |p| &self.by_range[p])
    }

    /// Checks every groupoid axiom; reports the first failure.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.n_arrows();
        if self.rng.len() != n || self.inv.len() != n || self.comp.len() != n * n {
            return Err(Violation::Shape(format!(
                "{n} arrows but {} ranges, {} inverses and {} composition entries",
                self.rng.len(),
                self.inv.len(),
                self.comp.len()
            )));
        }
        if let Some(&u) = self.units.iter().find(|&&u| u >= n) {
            return Err(Violation::Shape(format!("unit {u} out of range")));
        }
        for &u in &self.units {
            if self.src[u] != u || self.rng[u] != u {
                return Err(Violation::UnitEndpoints { unit: u });
            }
        }
        for g in 0..n {
            if !self.is_unit(self.src[g]) || !self.is_unit(self.rng[g]) {
                return Err(Violation::EndpointNotUnit { arrow: g });
            }
            if self.inv[g] >= n {
                return Err(Violation::Shape(format!("inverse of {g} out of range")));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let composable = self.src[g] == self.rng[h];
                match (composable, self.compose(g, h)) {
                    (true, None) => return Err(Violation::ComposableUndefined { g, h }),
                    (false, Some(_)) => return Err(Violation::NonComposableDefined { g, h }),
                    (true, Some(gh)) => {
                        if gh >= n || self.rng[gh] != self.rng[g] || self.src[gh] != self.src[h] {
                            return Err(Violation::CompositeEndpoints { g, h });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for g in 0..n {
            if self.compose(self.rng[g], g) != Some(g) {
                return Err(Violation::LeftIdentity { arrow: g });
            }
            if self.compose(g, self.src[g]) != Some(g) {
                return Err(Violation::RightIdentity { arrow: g });
            }
        }
        for g in 0..n {
            for &h in self.arrows_with_range(self.src[g]) {
                let gh = self.mul(g, h);
                for &k in self.arrows_with_range(self.src[h]) {
                    if self.compose(gh, k) != self.compose(g, self.mul(h, k)) {
                        return Err(Violation::Associativity { g, h, k });
                    }
                }
            }
        }
        for g in 0..n {
            let i = self.inv[g];
            if self.compose(g, i) != Some(self.rng[g]) || self.compose(i, g) != Some(self.src[g]) {
                return Err(Violation::Inverse { arrow: g });
            }
        }
        Ok(())
    }

    /// Number of orbits of the unit space (connected components).
    pub fn orbit_count(&self) -> usize {
        self.orbit_labels().iter().max().map_or(0, |m| m + 1)
    }

    /// Orbit label per unit position, numbered by first appearance.
    pub fn orbit_labels(&self) -> Vec<usize> {
        let k = self.n_units();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for g in 0..self.n_arrows() {
            let a = find(&mut parent, self.unit_pos[self.src[g]].expect("valid"));
            let b = find(&mut parent, self.unit_pos[self.rng[g]].expect("valid"));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; k];
        let mut next = 0;
        let mut out = vec![0; k];
        for (i, slot) in out.iter_mut().enumerate() {
            let r = find(&mut parent, i);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            *slot = label[r];
        }
        out
    }
}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroupoid")
            .field("arrows", &self.n_arrows())
            .field("units", &self.units)
            .field("src", &self.src)
            .field("rng", &self.rng)
            .finish()
    }
}
