//! The Clifford algebra `Cl(n)` with relations `e_i e_j + e_j e_i = -2 delta_ij`.
//!
//! Elements share the [`Form`] carrier; the product reduces blade pairs to the
//! canonical increasing normal form with `e_i^2 = -1`. The signature is the
//! Riemannian spin-geometry one, pinned by the identity
//! `T^2 = -2 sigma_T + ||T||^2` for 3-forms.

use crate::exterior::{sigma_t, hook, norm_sq, ExteriorError, Form, IndexBlade};
use crate::scalar::Scalar;
use std::fmt;

/// An element of `Cl(n)` in blade normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement(Form);

impl CliffordElement {
    pub fn zero(dim: u8) -> Self {
        CliffordElement(Form::zero(dim))
    }

    pub fn one(dim: u8) -> Self {
        CliffordElement(Form::one(dim))
    }

    pub fn scalar(dim: u8, c: Scalar) -> Self {
        CliffordElement(Form::scalar(dim, c))
    }

    pub fn dim(&self) -> u8 {
        self.0.dim()
    }

    pub fn as_form(&self) -> &Form {
        &self.0
    }

    pub fn into_form(self) -> Form {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scalar_part(&self) -> Scalar {
        self.0.scalar_part()
    }

    pub fn add(&self, rhs: &CliffordElement) -> Result<CliffordElement, ExteriorError> {
        Ok(CliffordElement(self.0.add(&rhs.0)?))
    }

    pub fn sub(&self, rhs: &CliffordElement) -> Result<CliffordElement, ExteriorError> {
        Ok(CliffordElement(self.0.sub(&rhs.0)?))
    }

    pub fn neg(self) -> CliffordElement {
        CliffordElement(self.0.neg())
    }

    pub fn scale(&self, c: &Scalar) -> CliffordElement {
        CliffordElement(self.0.scale(c))
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identify a form with a Clifford element on the shared blade basis.
pub fn embed(a: &Form) -> CliffordElement {
    CliffordElement(a.clone())
}

fn blade_to_mask(b: &IndexBlade) -> u16 {
    b.indices().iter().fold(0u16, |m, &i| m | (1 << i))
}

fn mask_to_blade(mut m: u16) -> IndexBlade {
    let mut idx = Vec::new();
    let mut i = 0u8;
    while m != 0 {
        if m & 1 != 0 {
            idx.push(i);
        }
        m >>= 1;
        i += 1;
    }
    IndexBlade::new(idx).expect("mask bits are ascending")
}

/// Multiply two basis blades, returning the reduced blade and coefficient sign.
///
/// Each right-hand index is commuted leftwards past the higher indices of the
/// accumulated word (one sign flip per transposition); a repeated index is
/// then eliminated with `e_i^2 = -1`.
fn blade_mul(a: &IndexBlade, b: &IndexBlade) -> (IndexBlade, i8) {
    let mut acc = blade_to_mask(a);
    let mut sign = 1i8;
    for &j in b.indices() {
        let higher = acc >> (j + 1);
        if higher.count_ones() % 2 == 1 {
            sign = -sign;
        }
        let bit = 1u16 << j;
        if acc & bit != 0 {
            sign = -sign;
        }
        acc ^= bit;
    }
    (mask_to_blade(acc), sign)
}

/// Clifford product; bilinear and associative, `e_i e_i = -1`.
pub fn clifford_mul(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement, ExteriorError> {
    if a.dim() != b.dim() {
        return Err(ExteriorError::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut out = Form::zero(a.dim());
    for (ba, ca) in a.0.terms() {
        for (bb, cb) in b.0.terms() {
            let (blade, sign) = blade_mul(ba, bb);
            let mut c = ca.clone() * cb.clone();
            if sign < 0 {
                c = -c;
            }
            out.add_term(blade, c);
        }
    }
    Ok(CliffordElement(out))
}

/// `sum_k (e_k -| T) . (e_k -| T)` inside the Clifford algebra.
///
/// Equals `2 sigma_T - 3 ||T||^2` for every 3-form `T`.
pub fn contraction_square(t: &Form) -> Result<CliffordElement, ExteriorError> {
    t.expect_degree(3)?;
    let mut out = CliffordElement::zero(t.dim());
    for k in 1..=t.dim() {
        let h = embed(&hook(k, t)?);
        out = out.add(&clifford_mul(&h, &h)?)?;
    }
    Ok(out)
}

/// Verify `T^2 = -2 sigma_T + ||T||^2` for a 3-form; used by tests and the
/// verification runner.
pub fn torsion_square_identity_holds(t: &Form) -> Result<bool, ExteriorError> {
    let lhs = clifford_mul(&embed(t), &embed(t))?;
    let rhs = embed(&sigma_t(t)?.scale(&Scalar::from_int(-2)))
        .add(&CliffordElement::scalar(t.dim(), norm_sq(t)))?;
    Ok(lhs == rhs)
}

/// Verify `sum_k (e_k -| T)^2 = 2 sigma_T - 3 ||T||^2` for a 3-form.
pub fn contraction_square_identity_holds(t: &Form) -> Result<bool, ExteriorError> {
    let lhs = contraction_square(t)?;
    let rhs = embed(&sigma_t(t)?.scale(&Scalar::from_int(2)))
        .add(&CliffordElement::scalar(t.dim(), norm_sq(t) * Scalar::from_int(-3)))?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn sasakian_torsion() -> Form {
        Form::term(5, s(2), &[1, 2, 5]).unwrap().add(&Form::term(5, s(2), &[3, 4, 5]).unwrap()).unwrap()
    }

    #[test]
    fn generator_squares_to_minus_one() {
        let e1 = embed(&Form::blade(5, &[1]).unwrap());
        let p = clifford_mul(&e1, &e1).unwrap();
        assert_eq!(p, CliffordElement::scalar(5, s(-1)));
    }

    #[test]
    fn generators_anticommute() {
        let e1 = embed(&Form::blade(4, &[1]).unwrap());
        let e2 = embed(&Form::blade(4, &[2]).unwrap());
        let ab = clifford_mul(&e1, &e2).unwrap();
        let ba = clifford_mul(&e2, &e1).unwrap();
        assert_eq!(ab, embed(&Form::blade(4, &[1, 2]).unwrap()));
        assert_eq!(ba, ab.clone().neg());
    }

    #[test]
    fn sasakian_torsion_square() {
        let t = embed(&sasakian_torsion());
        let sq = clifford_mul(&t, &t).unwrap();
        let expect = embed(
            &Form::scalar(5, s(8)).add(&Form::term(5, s(-8), &[1, 2, 3, 4]).unwrap()).unwrap(),
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn volume_square_in_dim_three() {
        let v = embed(&Form::blade(3, &[1, 2, 3]).unwrap());
        assert_eq!(clifford_mul(&v, &v).unwrap(), CliffordElement::one(3));
    }

    #[test]
    fn contraction_square_examples() {
        let t = sasakian_torsion();
        let cs = contraction_square(&t).unwrap();
        let expect = embed(
            &Form::term(5, s(8), &[1, 2, 3, 4]).unwrap().add(&Form::scalar(5, s(-24))).unwrap(),
        );
        assert_eq!(cs, expect);

        assert!(contraction_square(&Form::zero(5)).unwrap().is_zero());

        // n = 3: sigma_T vanishes, so the sum is -3 ||T||^2
        let t3 = Form::blade(3, &[1, 2, 3]).unwrap();
        let cs3 = contraction_square(&t3).unwrap();
        assert_eq!(cs3, CliffordElement::scalar(3, s(-3)));
    }

    #[test]
    fn both_quadratic_identities_hold_for_catalog_torsions() {
        for t in [
            sasakian_torsion(),
            Form::blade(3, &[1, 2, 3]).unwrap(),
            Form::blade(6, &[1, 3, 5])
                .unwrap()
                .sub(&Form::blade(6, &[1, 4, 6]).unwrap())
                .unwrap()
                .sub(&Form::blade(6, &[2, 3, 6]).unwrap())
                .unwrap()
                .sub(&Form::blade(6, &[2, 4, 5]).unwrap())
                .unwrap(),
        ] {
            assert!(torsion_square_identity_holds(&t).unwrap());
            assert!(contraction_square_identity_holds(&t).unwrap());
        }
    }

    #[test]
    fn filtration_respected() {
        // product of a 2-blade and a 3-blade has only degrees 1, 3, 5
        let a = embed(&Form::blade(6, &[1, 2]).unwrap());
        let b = embed(&Form::blade(6, &[2, 3, 4]).unwrap());
        let p = clifford_mul(&a, &b).unwrap();
        for d in p.as_form().degrees() {
            assert!(d == 1 || d == 3 || d == 5);
        }
    }
}
