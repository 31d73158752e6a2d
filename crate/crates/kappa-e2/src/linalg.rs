//! Exact linear algebra over the fraction field of [`Scalar`]: rational
//! functions in kappa with Gaussian-rational coefficients, sparse rows, and
//! row-echelon reduction with full inter-reduction (RREF invariant).

use crate::scalar::{Coef, Scalar};
use num::One;
use std::collections::BTreeMap;

/// Rational function `num / den`. The denominator is kept as a monic
/// ordinary polynomial with nonzero constant term; kappa-powers and the gcd
/// are always cancelled, so `den == 1` exactly when the value is Laurent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Frac {
    num: Scalar,
    den: Scalar,
}

impl Frac {
    pub fn zero() -> Frac {
        Frac { num: Scalar::zero(), den: Scalar::one() }
    }

    pub fn one() -> Frac {
        Frac { num: Scalar::one(), den: Scalar::one() }
    }

    pub fn from_scalar(s: Scalar) -> Frac {
        Frac { num: s, den: Scalar::one() }.normalized()
    }

    pub fn new(num: Scalar, den: Scalar) -> Frac {
        assert!(!den.is_zero(), "zero denominator");
        Frac { num, den }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Laurent value when the denominator has cancelled completely.
    pub fn to_scalar(&self) -> Option<Scalar> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn denominator(&self) -> &Scalar {
        &self.den
    }

    fn normalized(mut self) -> Frac {
        if self.num.is_zero() {
            self.den = Scalar::one();
            return self;
        }
        // strip kappa powers so den becomes an ordinary polynomial with
        // nonzero constant term
        let vd = self.den.min_exp().unwrap();
        if vd != 0 {
            self.den = self.den.shift(-vd);
            self.num = self.num.shift(-vd);
        }
        let vn = self.num.min_exp().unwrap();
        let num_ord = self.num.shift(-vn);
        let g = num_ord.poly_gcd(&self.den);
        let (num_red, r1) = num_ord.poly_divmod(&g);
        debug_assert!(r1.is_zero());
        let (mut den_red, r2) = self.den.poly_divmod(&g);
        debug_assert!(r2.is_zero());
        let (_, lc) = den_red.leading().unwrap();
        let inv_lc = Coef::one() / lc;
        den_red = den_red.scale_coef(&inv_lc);
        self.num = num_red.scale_coef(&inv_lc).shift(vn);
        self.den = den_red;
        self
    }

    pub fn add(&self, rhs: &Frac) -> Frac {
        Frac::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Frac) -> Frac {
        Frac::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn mul(&self, rhs: &Frac) -> Frac {
        Frac::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn neg(&self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }

    pub fn inv(&self) -> Frac {
        assert!(!self.is_zero(), "inverting zero");
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Frac) -> Frac {
        self.mul(&rhs.inv())
    }
}

pub type SparseRow = BTreeMap<usize, Frac>;

pub fn row_from_entries(entries: impl IntoIterator<Item = (usize, Frac)>) -> SparseRow {
    let mut row = SparseRow::new();
    for (c, f) in entries {
        if !f.is_zero() {
            row.insert(c, f);
        }
    }
    row
}

fn row_axpy(target: &mut SparseRow, factor: &Frac, source: &SparseRow) {
    // target -= factor * source
    for (c, f) in source {
        let delta = factor.mul(f);
        match target.get(c) {
            Some(cur) => {
                let next = cur.sub(&delta);
                if next.is_zero() {
                    target.remove(c);
                } else {
                    target.insert(*c, next);
                }
            }
            None => {
                if !delta.is_zero() {
                    target.insert(*c, delta.neg());
                }
            }
        }
    }
}

fn row_scale(row: &mut SparseRow, factor: &Frac) {
    for f in row.values_mut() {
        *f = f.mul(factor);
    }
}

/// Row space in reduced row-echelon form: each pivot column appears in
/// exactly one row, with coefficient one.
#[derive(Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Canonical remainder of `row` modulo the row space.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        // under the RREF invariant one ascending pass is enough
        for (pc, prow) in &self.rows {
            if let Some(f) = row.get(pc).cloned() {
                row_axpy(&mut row, &f, prow);
                row.remove(pc);
            }
        }
        row
    }

    /// Insert a row; returns `true` when the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((&pivot, pf)) = row.iter().next() else {
            return false;
        };
        let inv = pf.inv();
        row_scale(&mut row, &inv);
        row.insert(pivot, Frac::one());
        // keep existing rows reduced against the new pivot
        for prow in self.rows.values_mut() {
            if let Some(f) = prow.get(&pivot).cloned() {
                row_axpy(prow, &f, &row);
                prow.remove(&pivot);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Row spaces are equal iff ranks match and every row reduces both ways.
    pub fn same_span(&self, other: &Echelon) -> bool {
        self.rank() == other.rank()
            && self.rows.values().all(|r| other.contains(r.clone()))
            && other.rows.values().all(|r| self.contains(r.clone()))
    }
}

/// Kernel basis of a dense matrix (rows of length `ncols`), canonical via
/// free-variable back substitution.
pub fn kernel_basis(rows: &[Vec<Frac>], ncols: usize) -> Vec<Vec<Frac>> {
    let mut ech = Echelon::new();
    for r in rows {
        let row = row_from_entries(r.iter().cloned().enumerate());
        ech.insert(row);
    }
    let pivot_cols: Vec<usize> = ech.pivots().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Frac::zero(); ncols];
        v[free] = Frac::one();
        for (pc, prow) in &ech.rows {
            if let Some(f) = prow.get(&free) {
                v[*pc] = f.neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// Solve `sum_j c_j cols[j] = rhs` exactly. Returns `None` if inconsistent.
pub fn solve_columns(cols: &[SparseRow], rhs: &SparseRow) -> Option<Vec<Frac>> {
    let k = cols.len();
    let mut support: Vec<usize> = Vec::new();
    for col in cols.iter().chain(std::iter::once(rhs)) {
        for idx in col.keys() {
            if !support.contains(idx) {
                support.push(*idx);
            }
        }
    }
    support.sort_unstable();
    // dense (support x (k+1)) augmented system
    let mut mat: Vec<Vec<Frac>> = support
        .iter()
        .map(|idx| {
            let mut r: Vec<Frac> = cols
                .iter()
                .map(|c| c.get(idx).cloned().unwrap_or_else(Frac::zero))
                .collect();
            r.push(rhs.get(idx).cloned().unwrap_or_else(Frac::zero));
            r
        })
        .collect();
    let nrows = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
    let mut used = vec![false; nrows];
    for col in 0..k {
        let Some(pr) = (0..nrows).find(|&r| !used[r] && !mat[r][col].is_zero()) else {
            continue;
        };
        used[pr] = true;
        pivot_of_col[col] = Some(pr);
        let inv = mat[pr][col].inv();
        for c in 0..=k {
            mat[pr][c] = mat[pr][c].mul(&inv);
        }
        for r in 0..nrows {
            if r != pr && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in 0..=k {
                    let delta = f.mul(&mat[pr][c]);
                    mat[r][c] = mat[r][c].sub(&delta);
                }
            }
        }
    }
    // consistency: no leftover row with zero coefficients and nonzero rhs
    for r in 0..nrows {
        if !used[r] && !mat[r][k].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Frac::zero(); k];
    for col in 0..k {
        if let Some(pr) = pivot_of_col[col] {
            sol[col] = mat[pr][k].clone();
        } else if !cols[col].is_empty() {
            // underdetermined; treat the free coefficient as zero
        }
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Frac {
        Frac::from_scalar(Scalar::int(n))
    }

    #[test]
    fn frac_normalization_cancels() {
        // (k^2 - 1) / (k - 1) = k + 1
        let f = Frac::new(
            &Scalar::k_pow(2) - &Scalar::one(),
            &Scalar::k_pow(1) - &Scalar::one(),
        );
        assert_eq!(f.to_scalar().unwrap(), &Scalar::k_pow(1) + &Scalar::one());
        // kappa powers in the denominator are absorbed
        let g = Frac::new(Scalar::i(), Scalar::k_pow(3));
        assert_eq!(g.to_scalar().unwrap(), &Scalar::i() * &Scalar::k_pow(-3));
    }

    #[test]
    fn frac_field_ops() {
        let a = Frac::new(Scalar::one(), &Scalar::k_pow(1) + &Scalar::one());
        let b = a.inv();
        assert_eq!(a.mul(&b), Frac::one());
        assert_eq!(a.sub(&a), Frac::zero());
        assert_eq!(a.add(&a), a.mul(&s(2)));
    }

    #[test]
    fn echelon_reduces_canonically() {
        let mut e = Echelon::new();
        e.insert(row_from_entries([(0, s(1)), (1, s(2))]));
        e.insert(row_from_entries([(1, s(1)), (2, s(1))]));
        assert_eq!(e.rank(), 2);
        // row already in span reduces to nothing
        assert!(e.contains(row_from_entries([(0, s(2)), (1, s(6)), (2, s(2))])));
        let r = e.reduce(row_from_entries([(0, s(1)), (2, s(1))]));
        assert!(!r.is_empty());
    }

    #[test]
    fn kernel_of_small_matrix() {
        // rows of (sigma - id) for a 2x2 swap: kernel is the symmetric part
        let rows = vec![
            vec![s(-1), s(0), s(0), s(0)].iter().map(|f| f.clone()).collect::<Vec<_>>(),
            vec![s(0), s(-1), s(1), s(0)],
            vec![s(0), s(1), s(-1), s(0)],
            vec![s(0), s(0), s(0), s(-1)],
        ];
        let rows: Vec<Vec<Frac>> = rows
            .into_iter()
            .map(|r| r.into_iter().collect())
            .collect();
        let _ = rows;
        let swap_minus_id = vec![
            vec![s(0), s(0), s(0), s(0)],
            vec![s(0), s(-1), s(1), s(0)],
            vec![s(0), s(1), s(-1), s(0)],
            vec![s(0), s(0), s(0), s(0)],
        ];
        let k = kernel_basis(&swap_minus_id, 4);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn solve_small_system() {
        let c1 = row_from_entries([(0, s(1)), (1, s(1))]);
        let c2 = row_from_entries([(1, s(1))]);
        let rhs = row_from_entries([(0, s(3)), (1, s(5))]);
        let sol = solve_columns(&[c1, c2], &rhs).unwrap();
        assert_eq!(sol[0], s(3));
        assert_eq!(sol[1], s(2));
        let bad = row_from_entries([(2, s(1))]);
        assert!(solve_columns(&[row_from_entries([(0, s(1))])], &bad).is_none());
    }
}
