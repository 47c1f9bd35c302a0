use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::matrix::IntMatrix;
use super::snf::invariant_factors;
use crate::error::{Error, Result};

/// Isomorphism type of a finitely generated abelian group:
/// `Z^free_rank + Z/t_1 + ... + Z/t_k` with `t_1 | t_2 | ... | t_k`, all `t_i >= 2`.
///
/// The normal form makes group equality plain structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct FgAbGroup {
    free_rank: usize,
    #[serde(serialize_with = "serialize_ints")]
    torsion: Vec<BigInt>,
}

#[doc(hidden)]
pub fn serialize_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic_orders(0, &[BigInt::from(order)])
    }

    /// Normalizes an arbitrary direct sum of cyclic groups (orders 0 and 1
    /// mean `Z` and the trivial group respectively).
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.abs_ref();
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        let diag = IntMatrix::diagonal(&finite);
        let torsion = invariant_factors(&diag).into_iter().filter(|t| !t.is_one()).collect();
        FgAbGroup {
            free_rank: free,
            torsion,
        }
    }

    /// Checked constructor from invariant factors already in normal form.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if torsion.iter().any(|t| *t < two) {
            return Err(Error::DimensionMismatch("torsion factors must be at least 2".into()));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::DimensionMismatch(
                "torsion factors must form a divisibility chain".into(),
            ));
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }
}

trait AbsRef {
    fn abs_ref(&self) -> BigInt;
}

impl AbsRef for BigInt {
    fn abs_ref(&self) -> BigInt {
        num_traits::Signed::abs(self)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `H_n (x) Z/m  +  Tor(H_{n-1}, Z/m)` from integral homology.
pub fn coefficients_via_uct(h_n: &FgAbGroup, h_nm1: &FgAbGroup, m: i64) -> Result<FgAbGroup> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let m = BigInt::from(m);
    let mut orders: Vec<BigInt> = vec![m.clone(); h_n.free_rank()];
    orders.extend(h_n.torsion().iter().map(|t| t.gcd(&m)));
    orders.extend(h_nm1.torsion().iter().map(|t| t.gcd(&m)));
    Ok(FgAbGroup::from_cyclic_orders(0, &orders))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::int_vec;

    #[test]
    fn normal_form_merges_coprime_parts() {
        let g = FgAbGroup::from_cyclic_orders(1, &int_vec(&[2, 3, 1, 4]));
        assert_eq!(g.torsion(), &int_vec(&[2, 12])[..]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
    }

    #[test]
    fn uct_examples() {
        let z = FgAbGroup::free(1);
        let zero = FgAbGroup::trivial();
        assert_eq!(coefficients_via_uct(&z, &zero, 2).unwrap(), FgAbGroup::cyclic(2));
        assert_eq!(
            coefficients_via_uct(&zero, &FgAbGroup::cyclic(2), 2).unwrap(),
            FgAbGroup::cyclic(2)
        );
        assert_eq!(coefficients_via_uct(&FgAbGroup::cyclic(3), &zero, 2).unwrap(), zero);
        assert_eq!(coefficients_via_uct(&z, &zero, 1), Err(Error::BadModulus(1)));
    }

    #[test]
    fn checked_constructor_rejects_broken_chain() {
        assert!(FgAbGroup::new(0, int_vec(&[2, 3])).is_err());
        assert!(FgAbGroup::new(0, int_vec(&[1])).is_err());
        assert!(FgAbGroup::new(2, int_vec(&[2, 6])).is_ok());
    }
}
