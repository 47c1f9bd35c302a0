//! Homology of a composable pair and explicit presentations of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FgAbGroup;
use super::matrix::IntMatrix;
use super::snf::{invariant_factors, kernel_basis, rank, reduce, solve_columns};
use crate::error::{Error, Result};

fn check_pair(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<()> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::DimensionMismatch(format!(
            "outgoing map has {} columns but incoming map has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if let Some((row, col)) = d_out.first_nonzero_of_product(d_in) {
        return Err(Error::CompositionNonzero { row, col });
    }
    Ok(())
}

/// `ker(d_out) / im(d_in)`.
///
/// The kernel is a saturated sublattice, so the torsion of the quotient is the
/// torsion of `Z^m / im(d_in)` and only the invariant factors of `d_in` and the
/// rank of `d_out` are needed.
pub fn homology_at(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<FgAbGroup> {
    check_pair(d_out, d_in)?;
    let rank_out = rank(d_out);
    let factors = invariant_factors(d_in);
    let free = d_out.cols() - rank_out - factors.len();
    Ok(FgAbGroup::from_cyclic_orders(free, &factors))
}

/// `ker(d_out) / im(d_in)` with chosen generators and a classifier that
/// reads off the coordinates of any cycle.
#[derive(Debug, Clone)]
pub struct Subquotient {
    d_out: IntMatrix,
    /// One entry per generator; 0 marks a free generator.
    orders: Vec<BigInt>,
    /// Chain representatives, one column per generator.
    generators: IntMatrix,
    /// Rows map an ambient cycle to generator coordinates.
    classifier: IntMatrix,
}

impl Subquotient {
    pub fn new(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<Self> {
        check_pair(d_out, d_in)?;
        let m = d_out.cols();
        let out = reduce(d_out, false, true);
        let (r, r_inv) = out.right.expect("right tracked");
        let kernel_cols: Vec<usize> = (out.rank..m).collect();
        let basis = r.select_columns(&kernel_cols);
        let projector = r_inv.select_rows(&kernel_cols);
        let coords = projector.matmul(d_in);
        let k = kernel_cols.len();

        let c = reduce(&coords, true, false);
        let (l, l_inv) = c.left.expect("left tracked");
        let mut orders = Vec::new();
        let mut positions = Vec::new();
        for i in 0..k {
            let o = if i < c.rank { c.diag[i].clone() } else { BigInt::zero() };
            if !o.is_one() {
                positions.push(i);
                orders.push(o);
            }
        }
        let generators = basis.matmul(&l_inv.select_columns(&positions));
        let classifier = l.select_rows(&positions).matmul(&projector);
        Ok(Subquotient {
            d_out: d_out.clone(),
            orders,
            generators,
            classifier,
        })
    }

    pub fn group(&self) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(0, &self.orders)
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.d_out.cols()
    }

    /// Coordinates of the class of `z`; torsion coordinates are reduced into `[0, order)`.
    pub fn classify(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "chain of length {} in a complex of rank {}",
                z.len(),
                self.ambient_dim()
            )));
        }
        if self.d_out.mul_vec(z).iter().any(|x| !x.is_zero()) {
            return Err(Error::DimensionMismatch("chain is not a cycle".into()));
        }
        let w = self.classifier.mul_vec(z);
        Ok(w.into_iter()
            .zip(&self.orders)
            .map(|(x, o)| if o.is_zero() { x } else { x.mod_floor(o) })
            .collect())
    }

    /// Matrix of the map on subquotients induced by `chain_map: self -> target`.
    pub fn induced_map(&self, target: &Subquotient, chain_map: &IntMatrix) -> Result<GroupHom> {
        if chain_map.cols() != self.ambient_dim() || chain_map.rows() != target.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "chain map of shape {:?} between complexes of rank {} and {}",
                chain_map.shape(),
                self.ambient_dim(),
                target.ambient_dim()
            )));
        }
        let images = chain_map.matmul(&self.generators);
        let mut columns = Vec::with_capacity(images.cols());
        for j in 0..images.cols() {
            columns.push(target.classify(&images.column(j))?);
        }
        Ok(GroupHom {
            matrix: IntMatrix::from_columns(target.orders.len(), &columns),
            source: self.orders.clone(),
            target: target.orders.clone(),
        })
    }
}

fn relation_matrix(orders: &[BigInt]) -> IntMatrix {
    let cols: Vec<usize> = (0..orders.len()).filter(|&i| !orders[i].is_zero()).collect();
    IntMatrix::from_fn(orders.len(), cols.len(), |i, j| {
        if i == cols[j] {
            orders[i].clone()
        } else {
            BigInt::zero()
        }
    })
}

/// A homomorphism between groups given by cyclic-generator presentations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    /// Column `j` is the image of source generator `j`.
    pub matrix: IntMatrix,
    /// Order of each source generator (0 = infinite).
    pub source: Vec<BigInt>,
    pub target: Vec<BigInt>,
}

/// Result of testing exactness of `A --alpha--> B --beta--> C` at `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ExactnessCheck {
    pub composite_zero: bool,
    pub kernel_in_image: bool,
}

impl ExactnessCheck {
    pub fn holds(&self) -> bool {
        self.composite_zero && self.kernel_in_image
    }
}

impl GroupHom {
    pub fn new(matrix: IntMatrix, source: Vec<BigInt>, target: Vec<BigInt>) -> Result<Self> {
        if matrix.shape() != (target.len(), source.len()) {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix {:?} for {} source and {} target generators",
                matrix.shape(),
                source.len(),
                target.len()
            )));
        }
        Ok(GroupHom { matrix, source, target })
    }

    /// The zero map between the given presentations.
    pub fn zero(source: Vec<BigInt>, target: Vec<BigInt>) -> Self {
        GroupHom {
            matrix: IntMatrix::zeros(target.len(), source.len()),
            source,
            target,
        }
    }

    pub fn source_group(&self) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(0, &self.source)
    }

    pub fn target_group(&self) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(0, &self.target)
    }

    fn with_target_relations(&self) -> IntMatrix {
        self.matrix.hstack(&relation_matrix(&self.target))
    }

    pub fn cokernel(&self) -> FgAbGroup {
        let m = self.with_target_relations();
        let f = invariant_factors(&m);
        FgAbGroup::from_cyclic_orders(self.target.len() - f.len(), &f)
    }

    /// Rank of the image over the rationals.
    pub fn image_rank(&self) -> usize {
        rank(&self.with_target_relations()) - relation_matrix(&self.target).cols()
    }

    /// Generators (columns, in source coordinates) of the kernel.
    fn kernel_generators(&self) -> IntMatrix {
        let k = kernel_basis(&self.with_target_relations());
        let rows: Vec<usize> = (0..self.source.len()).collect();
        k.select_rows(&rows)
    }

    /// The kernel as an abstract group.
    pub fn kernel(&self) -> FgAbGroup {
        // the kernel generators are independent, and contain the source relations
        let gens = self.kernel_generators();
        let rel = solve_columns(&gens, &relation_matrix(&self.source))
            .expect("shapes agree")
            .expect("source relations lie in the kernel");
        let f = invariant_factors(&rel);
        FgAbGroup::from_cyclic_orders(gens.cols() - f.len(), &f)
    }

    pub fn is_injective(&self) -> bool {
        let gens = self.kernel_generators();
        lattice_contains(&relation_matrix(&self.source), &gens)
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("presentations do not match".into()));
        }
        let mut matrix = self.matrix.matmul(&first.matrix);
        for i in 0..matrix.rows() {
            let o = &self.target[i];
            if !o.is_zero() {
                for j in 0..matrix.cols() {
                    let v = matrix.get(i, j).mod_floor(o);
                    matrix.set(i, j, v);
                }
            }
        }
        Ok(GroupHom {
            matrix,
            source: first.source.clone(),
            target: self.target.clone(),
        })
    }

    pub fn is_zero_map(&self) -> bool {
        lattice_contains(&relation_matrix(&self.target), &self.matrix)
    }
}

/// Whether every column of `vectors` lies in the column lattice of `span`.
fn lattice_contains(span: &IntMatrix, vectors: &IntMatrix) -> bool {
    if vectors.cols() == 0 {
        return true;
    }
    solve_columns(span, vectors).expect("shapes agree").is_some()
}

/// Exactness of `A --alpha--> B --beta--> C` at `B`.
pub fn check_exact(alpha: &GroupHom, beta: &GroupHom) -> Result<ExactnessCheck> {
    if alpha.target != beta.source {
        return Err(Error::DimensionMismatch(
            "middle presentations of the two maps differ".into(),
        ));
    }
    let composite = beta.compose(alpha)?;
    let middle_relations = relation_matrix(&alpha.target);
    let image = alpha.matrix.hstack(&middle_relations);
    let kernel = beta.kernel_generators();
    Ok(ExactnessCheck {
        composite_zero: composite.is_zero_map(),
        kernel_in_image: lattice_contains(&image, &kernel),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::int_vec;

    #[test]
    fn kernels_of_group_maps() {
        let z = BigInt::zero;
        // Z --2--> Z has trivial kernel; Z/4 --2--> Z/4 has kernel Z/2
        let double = GroupHom::new(IntMatrix::from_rows(&[vec![2]]), vec![z()], vec![z()]).unwrap();
        assert!(double.kernel().is_trivial());
        let four = vec![BigInt::from(4)];
        let h = GroupHom::new(IntMatrix::from_rows(&[vec![2]]), four.clone(), four).unwrap();
        assert_eq!(h.kernel(), FgAbGroup::cyclic(2));
        // Z^2 -> Z, (a, b) -> a - b
        let diff = GroupHom::new(IntMatrix::from_rows(&[vec![1, -1]]), vec![z(), z()], vec![z()]).unwrap();
        assert_eq!(diff.kernel(), FgAbGroup::free(1));
    }

    #[test]
    fn free_homology_of_zero_maps() {
        let h = homology_at(&IntMatrix::zeros(1, 3), &IntMatrix::zeros(3, 1)).unwrap();
        assert_eq!(h, FgAbGroup::free(3));
    }

    #[test]
    fn bar_degree_one_of_z2() {
        // d_1 = 0 (1x2); image of d_2 spanned by [e] and 2[g] - [e].
        let d_in = IntMatrix::from_rows(&[vec![1, 1, 1, -1], vec![0, 0, 0, 2]]);
        let h = homology_at(&IntMatrix::zeros(1, 2), &d_in).unwrap();
        assert_eq!(h, FgAbGroup::cyclic(2));
        let sq = Subquotient::new(&IntMatrix::zeros(1, 2), &d_in).unwrap();
        assert_eq!(sq.group(), h);
        assert_eq!(sq.classify(&int_vec(&[0, 1])).unwrap(), int_vec(&[1]));
        assert_eq!(sq.classify(&int_vec(&[1, 0])).unwrap(), int_vec(&[0]));
    }

    #[test]
    fn injective_outgoing_map_gives_trivial_group() {
        let h = homology_at(&IntMatrix::identity(2), &IntMatrix::zeros(2, 0)).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn errors_for_bad_pairs() {
        assert!(matches!(
            homology_at(&IntMatrix::zeros(1, 2), &IntMatrix::zeros(3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
        assert_eq!(
            homology_at(&IntMatrix::identity(1), &IntMatrix::identity(1)),
            Err(Error::CompositionNonzero { row: 0, col: 0 })
        );
    }

    #[test]
    fn exactness_of_multiplication_sequence() {
        // 0 -> Z --2--> Z --> Z/2 -> 0
        let zero = BigInt::zero();
        let two = GroupHom::new(IntMatrix::from_rows(&[vec![2]]), vec![zero.clone()], vec![zero.clone()]).unwrap();
        let proj = GroupHom::new(IntMatrix::from_rows(&[vec![1]]), vec![zero.clone()], int_vec(&[2])).unwrap();
        assert!(check_exact(&two, &proj).unwrap().holds());
        assert!(two.is_injective());
        assert!(proj.is_surjective());
        assert_eq!(two.cokernel(), FgAbGroup::cyclic(2));
        // Z --3--> Z --> Z/2 is not exact: 3 is not killed.
        let three = GroupHom::new(IntMatrix::from_rows(&[vec![3]]), vec![zero.clone()], vec![zero]).unwrap();
        assert!(!check_exact(&three, &proj).unwrap().composite_zero);
    }
}
