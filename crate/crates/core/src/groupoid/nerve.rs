use std::cmp::Ordering;
use std::sync::OnceLock;

use super::FiniteGroupoid;
use crate::error::{Error, Result};

const DEFAULT_CAP: usize = 2_000_000;

/// Tuple cap for nerves and windows; `GROUPOIDAL_CAP` overrides the default.
pub fn default_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("GROUPOIDAL_CAP")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_CAP)
    })
}

/// Composable strings `(g_1, ..., g_n)` with `src(g_i) == rng(g_{i+1})`, in
/// lexicographic order of arrow ids. Degree 0 lists the units as 1-tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    degree: usize,
    width: usize,
    flat: Vec<usize>,
}

impl Nerve {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.flat.len() / self.width
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.flat[i * self.width..(i + 1) * self.width]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[usize]> {
        self.flat.chunks_exact(self.width)
    }

    /// Position of a tuple, by binary search.
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        if t.len() != self.width {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.tuple(mid).cmp(t) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub(crate) fn position(&self, t: &[usize]) -> usize {
        self.index_of(t)
            .unwrap_or_else(|| panic!("tuple {t:?} missing from degree {} nerve", self.degree))
    }
}

impl FiniteGroupoid {
    /// `|G^(n)|` by dynamic programming over range units, saturating.
    pub fn nerve_count(&self, n: usize) -> usize {
        if n == 0 {
            return self.n_units();
        }
        // paths[u] = number of strings of the current length whose first arrow has range u
        let mut paths: Vec<u128> = self
            .units()
            .iter()
            .map(|&u| self.arrows_with_range(u).len() as u128)
            .collect();
        for _ in 1..n {
            let next = self
                .units()
                .iter()
                .map(|&u| {
                    self.arrows_with_range(u)
                        .iter()
                        .map(|&g| paths[self.unit_index(self.src(g)).expect("unit")])
                        .fold(0u128, u128::saturating_add)
                })
                .collect();
            paths = next;
        }
        let total = paths.into_iter().fold(0u128, u128::saturating_add);
        usize::try_from(total).unwrap_or(usize::MAX)
    }

    pub fn nerve(&self, n: usize) -> Result<Nerve> {
        self.nerve_with_cap(n, default_cap())
    }

    pub fn nerve_with_cap(&self, n: usize, cap: usize) -> Result<Nerve> {
        let count = self.nerve_count(n);
        if count > cap {
            return Err(Error::DegreeTooLarge { degree: n, count, cap });
        }
        if n == 0 {
            return Ok(Nerve {
                degree: 0,
                width: 1,
                flat: self.units().to_vec(),
            });
        }
        let mut flat = Vec::with_capacity(count * n);
        let mut stack = Vec::with_capacity(n);
        for g in 0..self.n_arrows() {
            stack.push(g);
            self.extend_strings(n, &mut stack, &mut flat);
            stack.pop();
        }
        Ok(Nerve {
            degree: n,
            width: n,
            flat,
        })
    }

    fn extend_strings(&self, n: usize, stack: &mut Vec<usize>, out: &mut Vec<usize>) {
        if stack.len() == n {
            out.extend_from_slice(stack);
            return;
        }
        let last = *stack.last().expect("nonempty");
        for &h in self.arrows_with_range(self.src(last)) {
            stack.push(h);
            self.extend_strings(n, stack, out);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteGroupoid {
        FiniteGroupoid::build(vec![0], vec![0, 0], vec![0, 0], vec![0, 1], |g, h| g ^ h).unwrap()
    }

    #[test]
    fn group_nerve_sizes() {
        let g = z2();
        assert_eq!(g.nerve(2).unwrap().len(), 4);
        assert_eq!(g.nerve(0).unwrap().tuple(0), &[0]);
        assert_eq!(g.nerve_count(5), 32);
    }

    #[test]
    fn lexicographic_and_searchable() {
        let n = z2().nerve(3).unwrap();
        let all: Vec<Vec<usize>> = n.iter().map(<[usize]>::to_vec).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (i, t) in n.iter().enumerate() {
            assert_eq!(n.index_of(t), Some(i));
        }
        assert_eq!(n.index_of(&[0, 2, 0]), None);
    }

    #[test]
    fn cap_is_an_error() {
        assert_eq!(
            z2().nerve_with_cap(4, 10),
            Err(Error::DegreeTooLarge {
                degree: 4,
                count: 16,
                cap: 10
            })
        );
    }
}
