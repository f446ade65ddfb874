//! Exact symplectic linear algebra on the first homology of a surface.
//!
//! The ambient lattice is `Z^{2G}` with the standard symplectic form paired
//! as `⟨e_{2m-1}, e_{2m}⟩ = +1` (1-based). A positive Dehn twist about a
//! curve with homology class `v` acts by the transvection `x ↦ x + ω(x,v)·v`,
//! and a twist word evaluates to the product of transvections with the
//! rightmost letter acting first.
//!
//! Everything here is integral; signatures of symmetric forms go through the
//! rational congruence diagonalization in [`crate::linalg`].

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::{Int, IntMatrix, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("ambient rank must be even, got {0}")]
    OddRank(usize),
    #[error("transvection about the zero class is undefined")]
    ZeroClass,
    #[error("matrix is not symplectic for the standard form")]
    NotSymplectic,
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("unresolvable cycle {0}")]
    Unresolvable(String),
}

/// Homology class of a cycle: an exact integer vector of even length `2G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    coords: Vec<Int>,
}

impl HomologyClass {
    pub fn new(coords: Vec<Int>) -> Result<Self, HomologyError> {
        if coords.len() % 2 != 0 {
            return Err(HomologyError::OddRank(coords.len()));
        }
        Ok(HomologyClass { coords })
    }

    pub fn zero(rank: usize) -> Self {
        HomologyClass { coords: vec![Int::zero(); rank] }
    }

    /// Basis vector `e_i` (0-based) in ambient rank `rank`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut coords = vec![Int::zero(); rank];
        coords[i] = Int::one();
        HomologyClass { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        HomologyClass { coords: coords.iter().map(|&x| Int::from(x)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        HomologyClass { coords: self.coords.iter().map(|x| -x.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        HomologyClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = Int::from(c);
        HomologyClass { coords: self.coords.iter().map(|x| x.clone() * c.clone()).collect() }
    }
}

/// Matrix of the standard symplectic form on `Z^{2G}`: block diagonal with
/// `[[0, 1], [-1, 0]]` blocks, so that `ω(u, v) = uᵀ J v`.
pub fn standard_form(rank: usize) -> IntMatrix {
    assert!(rank % 2 == 0, "symplectic rank must be even");
    let mut j = Matrix::zero(rank, rank);
    for m in 0..rank / 2 {
        j[(2 * m, 2 * m + 1)] = Int::one();
        j[(2 * m + 1, 2 * m)] = -Int::one();
    }
    j
}

/// Algebraic intersection number `ω(u, v) = uᵀ J v`.
pub fn symplectic_form(u: &HomologyClass, v: &HomologyClass) -> Result<Int, HomologyError> {
    if u.rank() != v.rank() {
        return Err(HomologyError::LengthMismatch(u.rank(), v.rank()));
    }
    let mut acc = Int::zero();
    for m in 0..u.rank() / 2 {
        let (a, b) = (&u.coords[2 * m], &u.coords[2 * m + 1]);
        let (c, d) = (&v.coords[2 * m], &v.coords[2 * m + 1]);
        acc += a.clone() * d.clone() - b.clone() * c.clone();
    }
    Ok(acc)
}

/// A `2G × 2G` exact integer matrix preserving the standard form,
/// `MᵀJM = J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    mat: IntMatrix,
}

impl SymplecticMatrix {
    /// Wrap a matrix, verifying the symplectic invariant.
    pub fn new(mat: IntMatrix) -> Result<Self, HomologyError> {
        if !is_symplectic(&mat) {
            return Err(HomologyError::NotSymplectic);
        }
        Ok(SymplecticMatrix { mat })
    }

    pub fn identity(rank: usize) -> Self {
        SymplecticMatrix { mat: Matrix::identity(rank) }
    }

    pub fn rank(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn mul(&self, other: &Self) -> Self {
        SymplecticMatrix { mat: self.mat.mul(&other.mat) }
    }

    pub fn apply(&self, v: &HomologyClass) -> HomologyClass {
        HomologyClass { coords: self.mat.apply(v.coords()) }
    }

    /// Exact inverse via the form: `M⁻¹ = -J Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = standard_form(self.rank());
        SymplecticMatrix { mat: j.mul(&self.mat.transpose()).mul(&j).neg() }
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn is_minus_identity(&self) -> bool {
        self.mat == Matrix::<Int>::identity(self.rank()).neg()
    }

    /// `M² = I`.
    pub fn is_involution(&self) -> bool {
        self.mat.mul(&self.mat).is_identity()
    }
}

/// Check `MᵀJM = J` for the standard form.
pub fn is_symplectic(m: &IntMatrix) -> bool {
    if !m.is_square() || m.rows() % 2 != 0 {
        return false;
    }
    let j = standard_form(m.rows());
    m.transpose().mul(&j).mul(m) == j
}

/// Picard–Lefschetz transvection of a positive twist about class `v`:
/// `x ↦ x + ω(x, v)·v`, i.e. `T = I - v vᵀ J`.
pub fn transvection(v: &HomologyClass) -> Result<SymplecticMatrix, HomologyError> {
    if v.is_zero() {
        // a nullhomologous vanishing cycle would not be a valid letter here
        return Err(HomologyError::ZeroClass);
    }
    Ok(SymplecticMatrix { mat: transvection_power(v, false) })
}

/// Transvection or its inverse without the symplectic re-check; the formula
/// is symplectic by construction (covered by tests).
pub(crate) fn transvection_power(v: &HomologyClass, inverse: bool) -> IntMatrix {
    let rank = v.rank();
    // ω(e_c, v) = e_cᵀ J v = (J v)_c
    let jv: Vec<Int> = standard_form(rank).apply(v.coords());
    let mut t = Matrix::identity(rank);
    for r in 0..rank {
        for c in 0..rank {
            // column c is the image of e_c: e_c + ω(e_c, v) v
            let term = v.coords()[r].clone() * jv[c].clone();
            if inverse {
                t[(r, c)] -= term;
            } else {
                t[(r, c)] += term;
            }
        }
    }
    t
}

/// Exact symmetric matrix, carrier for signature computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    mat: Matrix<Rat>,
}

impl SymmetricForm {
    pub fn new(mat: Matrix<Rat>) -> Result<Self, HomologyError> {
        if !mat.is_symmetric() {
            return Err(HomologyError::NotSymmetric);
        }
        Ok(SymmetricForm { mat })
    }

    pub fn from_int(mat: &IntMatrix) -> Result<Self, HomologyError> {
        Self::new(linalg::to_rational(mat))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.mat
    }
}

/// Signature (#positive − #negative) of a symmetric form, exactly.
pub fn symmetric_signature(form: &SymmetricForm) -> i64 {
    let (pos, neg, _zero) = linalg::inertia(&form.mat);
    pos as i64 - neg as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(v: &[i64]) -> HomologyClass {
        HomologyClass::from_i64(v)
    }

    #[test]
    fn form_on_standard_pairs() {
        let e1 = cls(&[1, 0]);
        let e2 = cls(&[0, 1]);
        assert_eq!(symplectic_form(&e1, &e2).unwrap(), Int::from(1));
        assert_eq!(symplectic_form(&e2, &e1).unwrap(), Int::from(-1));
        assert_eq!(symplectic_form(&e2, &e2).unwrap(), Int::zero());
        // bilinearity
        let s = e1.add(&e2);
        assert_eq!(symplectic_form(&s, &e2).unwrap(), Int::from(1));
    }

    #[test]
    fn form_rejects_length_mismatch() {
        let e1 = cls(&[1, 0]);
        let f = cls(&[1, 0, 0, 0]);
        assert!(matches!(symplectic_form(&e1, &f), Err(HomologyError::LengthMismatch(2, 4))));
    }

    #[test]
    fn transvection_genus_one() {
        // about e1: u ↦ u, v ↦ v − u
        let t = transvection(&cls(&[1, 0])).unwrap();
        assert_eq!(t.matrix().row(0), &[Int::from(1), Int::from(-1)]);
        assert_eq!(t.matrix().row(1), &[Int::from(0), Int::from(1)]);
        // about e2: u ↦ u + v, v ↦ v
        let t = transvection(&cls(&[0, 1])).unwrap();
        assert_eq!(t.matrix().row(0), &[Int::from(1), Int::from(0)]);
        assert_eq!(t.matrix().row(1), &[Int::from(1), Int::from(1)]);
    }

    #[test]
    fn transvection_sign_symmetric() {
        let v = cls(&[2, -1, 3, 0]);
        assert_eq!(transvection(&v).unwrap(), transvection(&v.neg()).unwrap());
    }

    #[test]
    fn transvection_rejects_zero() {
        assert!(matches!(transvection(&HomologyClass::zero(4)), Err(HomologyError::ZeroClass)));
    }

    #[test]
    fn transvections_are_symplectic() {
        for v in [&[1i64, 0, 0, 0][..], &[1, 2, 3, 4], &[0, -1, 1, 1], &[5, 0, -2, 3]] {
            let t = transvection(&cls(v)).unwrap();
            assert!(is_symplectic(t.matrix()));
            assert!(t.inverse().mul(&t).is_identity());
        }
    }

    #[test]
    fn braid_and_commutation_at_matrix_level() {
        // |ω(a,b)| = 1 ⇒ T_a T_b T_a = T_b T_a T_b
        let a = cls(&[1, 0, 0, 0]);
        let b = cls(&[0, 1, 0, 0]);
        let (ta, tb) = (transvection(&a).unwrap(), transvection(&b).unwrap());
        assert_eq!(ta.mul(&tb).mul(&ta), tb.mul(&ta).mul(&tb));
        // ω(a,c) = 0 ⇒ commute
        let c = cls(&[0, 0, 1, 1]);
        let tc = transvection(&c).unwrap();
        assert_eq!(ta.mul(&tc), tc.mul(&ta));
    }

    #[test]
    fn signature_examples() {
        let diag = Matrix::from_rows(vec![
            vec![Rat::from_integer(2.into()), Rat::zero(), Rat::zero()],
            vec![Rat::zero(), Rat::from_integer((-3).into()), Rat::zero()],
            vec![Rat::zero(), Rat::zero(), Rat::zero()],
        ]);
        assert_eq!(symmetric_signature(&SymmetricForm::new(diag).unwrap()), 0);

        let hyper = Matrix::from_rows(vec![
            vec![Rat::zero(), Rat::one()],
            vec![Rat::one(), Rat::zero()],
        ]);
        assert_eq!(symmetric_signature(&SymmetricForm::new(hyper).unwrap()), 0);

        let pos = Matrix::<Rat>::identity(2);
        assert_eq!(symmetric_signature(&SymmetricForm::new(pos).unwrap()), 2);
    }

    #[test]
    fn symmetric_form_rejects_asymmetric() {
        let m = Matrix::from_rows(vec![
            vec![Rat::zero(), Rat::one()],
            vec![Rat::zero(), Rat::zero()],
        ]);
        assert!(SymmetricForm::new(m).is_err());
    }
}
