//! Concrete complex spin representations of `Cl(n)` for `3 <= n <= 8`.
//!
//! Generators are built by the recursive tensor construction from 2x2 blocks,
//! so every matrix entry lies in `Q(i)` and the whole calculus stays exact.
//! With `gamma_i = i E_i` (the `E_i` Hermitian with square `+1`) the
//! generators satisfy `gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij`,
//! 1-forms act skew-Hermitian, and 3- and 4-forms act Hermitian.
//!
//! For odd `n` there are two inequivalent modules; the construction fixes one
//! per dimension (see [`SpinRep::volume_scalar`]): `rho(e_123) = +Id` in
//! dimension 3, and in dimension 7 the sign is chosen so that the standard
//! 3-form of the catalog acts with lowest eigenvalue `-7` on a line.

use crate::clifford::CliffordElement;
use crate::matrix::CMatrix;
use crate::scalar::{snap_to_scalar, ComplexScalar, Scalar};
use nalgebra::DMatrix;

#[derive(Debug, thiserror::Error)]
pub enum SpinError {
    #[error("unsupported dimension {0}: spin modules are built for 3..=8")]
    UnsupportedDimension(u8),
    #[error("element dimension {0} does not match representation dimension {1}")]
    DimensionMismatch(u8, u8),
    #[error("matrix is not Hermitian; use spectrum_general for normal matrices")]
    NotHermitian,
    #[error("matrix is not normal")]
    NotNormal,
    #[error("eigenvalue {0} not recognizable as an exact scalar within tolerance")]
    SnapFailed(f64),
    #[error("snapped spectrum failed exact verification")]
    SpectrumVerification,
    #[error("eigenvalue residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("matrix size {0} does not match representation size {1}")]
    SizeMismatch(usize, usize),
}

fn pauli() -> (CMatrix, CMatrix, CMatrix) {
    let one = ComplexScalar::one;
    let i = ComplexScalar::i;
    let zero = ComplexScalar::zero;
    let s1 = CMatrix::from_rows(vec![vec![zero(), one()], vec![one(), zero()]]);
    let s2 = CMatrix::from_rows(vec![vec![zero(), -i()], vec![i(), zero()]]);
    let s3 = CMatrix::from_rows(vec![vec![one(), zero()], vec![zero(), -one()]]);
    (s1, s2, s3)
}

/// A fixed spin module of `Cl(n)` of complex dimension `2^{n/2}`.
pub struct SpinRep {
    n: u8,
    gens: Vec<CMatrix>,
}

impl SpinRep {
    /// Build generators satisfying the Clifford relations with `e_i^2 = -1`.
    pub fn new(n: u8) -> Result<SpinRep, SpinError> {
        if !(3..=8).contains(&n) {
            return Err(SpinError::UnsupportedDimension(n));
        }
        let m = (n / 2) as usize;
        let (s1, s2, s3) = pauli();
        // Hermitian E_i with E_i^2 = +1, built recursively.
        let mut es: Vec<CMatrix> = vec![s1.clone(), s2.clone()];
        for step in 2..=m {
            let size = 1usize << (step - 1);
            es = es.into_iter().map(|e| e.kron(&s3)).collect();
            es.push(CMatrix::identity(size).kron(&s1));
            es.push(CMatrix::identity(size).kron(&s2));
        }
        if n % 2 == 1 {
            let mut prod = es[0].clone();
            for e in &es[1..] {
                prod = prod * e.clone();
            }
            es.push(prod.scale(&odd_factor(n)));
        }
        let i = ComplexScalar::i();
        let gens = es.into_iter().map(|e| e.scale(&i)).collect();
        Ok(SpinRep { n, gens })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Complex dimension `2^{n/2}` of the module.
    pub fn dim(&self) -> usize {
        self.gens[0].size()
    }

    /// The matrix of `e_k`, `1 <= k <= n`.
    pub fn gamma(&self, k: u8) -> &CMatrix {
        &self.gens[(k - 1) as usize]
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.gens
    }

    /// Action of a Clifford element as a matrix; an algebra homomorphism.
    pub fn act(&self, a: &CliffordElement) -> Result<CMatrix, SpinError> {
        if a.dim() != self.n {
            return Err(SpinError::DimensionMismatch(a.dim(), self.n));
        }
        let mut out = CMatrix::zeros(self.dim());
        for (blade, c) in a.as_form().terms() {
            let mut m = CMatrix::identity(self.dim());
            for &i in blade.indices() {
                m = m * self.gamma(i).clone();
            }
            out = out + m.scale(&ComplexScalar::from_real(c.clone()));
        }
        Ok(out)
    }

    /// Action of a form, embedding it first.
    pub fn act_form(&self, a: &crate::exterior::Form) -> Result<CMatrix, SpinError> {
        self.act(&crate::clifford::embed(a))
    }

    /// The scalar by which the volume element `e_1 ... e_n` acts (odd `n`
    /// only; for even `n` the volume element is not central).
    pub fn volume_scalar(&self) -> Option<ComplexScalar> {
        if self.n % 2 == 0 {
            return None;
        }
        let mut m = CMatrix::identity(self.dim());
        for g in &self.gens {
            m = m * g.clone();
        }
        let v = m[(0, 0)].clone();
        debug_assert!(m == CMatrix::identity(self.dim()).scale(&v));
        Some(v)
    }

    /// Spin lift of a skew matrix `A` on the frame:
    /// `lambda(A) = (1/4) sum_{i,j} g(A e_i, e_j) gamma_i gamma_j`,
    /// characterized by `[lambda(A), gamma(x)] = gamma(A x)`.
    pub fn spin_lift(&self, a: &CMatrix) -> Result<CMatrix, SpinError> {
        if a.size() != self.n as usize {
            return Err(SpinError::SizeMismatch(a.size(), self.n as usize));
        }
        let quarter = ComplexScalar::from_real(Scalar::rational(1, 4));
        let mut out = CMatrix::zeros(self.dim());
        for i in 0..self.n as usize {
            for j in 0..self.n as usize {
                // g(A e_i, e_j) is the (j, i) entry
                let c = a[(j, i)].clone();
                if c.is_zero() {
                    continue;
                }
                let gg = self.gens[i].clone() * self.gens[j].clone();
                out = out + gg.scale(&(c * &quarter));
            }
        }
        Ok(out.scale(&ComplexScalar::one()))
    }
}

fn odd_factor(n: u8) -> ComplexScalar {
    // Chosen per dimension:
    //   n = 3: rho(e_123) = +Id
    //   n = 5: rho(e_12345) = +i Id
    //   n = 7: rho of the standard cocalibrated 3-form has eigenvalue -7
    match n {
        3 => -ComplexScalar::i(),
        5 => ComplexScalar::one(),
        7 => -ComplexScalar::i(),
        _ => unreachable!("odd_factor is called for odd n in 3..=8"),
    }
}

/// Exact commutation test `ab = ba`.
pub fn commute(a: &CMatrix, b: &CMatrix) -> bool {
    a.commutes_with(b)
}

/// Floating-point eigenvalues of an exactly Hermitian matrix, ascending, with
/// a residual check against `tol * ||m||`.
pub fn spectrum_f64(m: &CMatrix, tol: f64) -> Result<Vec<f64>, SpinError> {
    if !m.is_hermitian() {
        return Err(SpinError::NotHermitian);
    }
    let n = m.size();
    let (re, im) = m.to_f64();
    // Real symmetric embedding [[A, -B], [B, A]] of H = A + iB; every
    // eigenvalue of H appears twice.
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            big[(i, j)] = re[i * n + j];
            big[(i, j + n)] = -im[i * n + j];
            big[(i + n, j)] = im[i * n + j];
            big[(i + n, j + n)] = re[i * n + j];
        }
    }
    let scale = m.sup_norm_f64().max(1.0);
    let eig = nalgebra::SymmetricEigen::new(big.clone());
    // residual bound per eigenpair
    let mut worst = 0.0f64;
    for k in 0..2 * n {
        let v = eig.eigenvectors.column(k);
        let r = (&big * v) - eig.eigenvalues[k] * v;
        worst = worst.max(r.norm());
    }
    if worst > tol * scale * (n as f64) {
        return Err(SpinError::ResidualTooLarge { residual: worst, tol: tol * scale * n as f64 });
    }
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // keep one of each duplicated pair
    Ok(vals.into_iter().step_by(2).collect())
}

/// Eigenvalue multiset of a Hermitian matrix as exact scalars.
///
/// Floating point only guides the search: the snapped values are verified by
/// exact annihilation and kernel dimensions, so a successful return is a
/// proof of the multiset.
pub fn spectrum_exact(m: &CMatrix, tol: f64) -> Result<Vec<Scalar>, SpinError> {
    let floats = spectrum_f64(m, tol)?;
    let scale = m.sup_norm_f64().max(1.0);
    let snap_tol = (1e-7 * scale).max(tol * scale);
    let mut snapped: Vec<Scalar> = Vec::with_capacity(floats.len());
    for x in &floats {
        let s = snap_to_scalar(*x, snap_tol).ok_or(SpinError::SnapFailed(*x))?;
        snapped.push(s);
    }
    let mut distinct = snapped.clone();
    distinct.sort();
    distinct.dedup();
    // exact verification: annihilating product and kernel dimensions
    let mut prod = CMatrix::identity(m.size());
    let mut total = 0usize;
    for lambda in &distinct {
        let shifted = m.shift(lambda);
        total += shifted.kernel_dim();
        prod = prod * shifted;
    }
    if !prod.is_zero() || total != m.size() {
        return Err(SpinError::SpectrumVerification);
    }
    // rebuild the multiset from the exact multiplicities
    let mut out = Vec::with_capacity(m.size());
    for lambda in &distinct {
        let mult = m.shift(lambda).kernel_dim();
        for _ in 0..mult {
            out.push(lambda.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// Verify a claimed eigenvalue multiset exactly (tolerance zero).
pub fn verify_spectrum_exact(m: &CMatrix, claim: &[Scalar]) -> bool {
    if claim.len() != m.size() {
        return false;
    }
    let mut distinct: Vec<Scalar> = claim.to_vec();
    distinct.sort();
    distinct.dedup();
    let mut total = 0usize;
    let mut prod = CMatrix::identity(m.size());
    for lambda in &distinct {
        let mult_claimed = claim.iter().filter(|c| *c == lambda).count();
        let shifted = m.shift(lambda);
        if shifted.kernel_dim() != mult_claimed {
            return false;
        }
        total += mult_claimed;
        prod = prod * shifted;
    }
    prod.is_zero() && total == m.size()
}

/// Eigenvalues of a normal matrix as exact complex scalars, via the commuting
/// Hermitian and skew-Hermitian parts.
pub fn spectrum_general(m: &CMatrix, tol: f64) -> Result<Vec<ComplexScalar>, SpinError> {
    let adj = m.adjoint();
    if m.clone() * adj.clone() != adj.clone() * m.clone() {
        return Err(SpinError::NotNormal);
    }
    let half = ComplexScalar::from_real(Scalar::rational(1, 2));
    let minus_half_i = ComplexScalar::new(Scalar::zero(), Scalar::rational(-1, 2));
    let h1 = (m.clone() + adj.clone()).scale(&half);
    let h2 = (m.clone() - adj).scale(&minus_half_i);
    let p1 = split_by(&h1, tol)?;
    let p2 = split_by(&h2, tol)?;
    let mut out = Vec::new();
    for (a, pa) in &p1 {
        for (b, pb) in &p2 {
            let joint = pa.clone() * pb.clone();
            let mult = joint.rank();
            for _ in 0..mult {
                out.push(ComplexScalar::new(a.clone(), b.clone()));
            }
        }
    }
    out.sort_by(|x, y| (x.re.clone(), x.im.clone()).cmp(&(y.re.clone(), y.im.clone())));
    if out.len() != m.size() {
        return Err(SpinError::SpectrumVerification);
    }
    Ok(out)
}

/// Exact spectral projectors of a Hermitian matrix with recognizable
/// eigenvalues, sorted by eigenvalue.
///
/// Built by Lagrange interpolation on the exact distinct eigenvalues; the
/// returned projectors are verified idempotent, Hermitian, mutually
/// orthogonal, commuting with the input, and resolving the identity.
pub fn split_by(t: &CMatrix, tol: f64) -> Result<Vec<(Scalar, CMatrix)>, SpinError> {
    if !t.is_hermitian() {
        return Err(SpinError::NotHermitian);
    }
    let spectrum = spectrum_exact(t, tol)?;
    let mut distinct = spectrum;
    distinct.dedup();
    let mut out = Vec::with_capacity(distinct.len());
    for lambda in &distinct {
        let mut p = CMatrix::identity(t.size());
        for mu in &distinct {
            if mu == lambda {
                continue;
            }
            let denom = (lambda.clone() - mu.clone()).inverse().expect("distinct eigenvalues");
            p = p * t.shift(mu).scale_real(&denom);
        }
        out.push((lambda.clone(), p));
    }
    // exact validation
    let mut sum = CMatrix::zeros(t.size());
    for (lambda, p) in &out {
        if !(p.clone() * p.clone() == *p && p.is_hermitian() && p.commutes_with(t)) {
            return Err(SpinError::SpectrumVerification);
        }
        if t.clone() * p.clone() != p.scale_real(lambda) {
            return Err(SpinError::SpectrumVerification);
        }
        sum = sum + p.clone();
    }
    for (_, p) in out.iter().enumerate().flat_map(|(i, (_, p))| {
        out.iter().skip(i + 1).map(move |(_, q)| ((), p.clone() * q.clone()))
    }) {
        if !p.is_zero() {
            return Err(SpinError::SpectrumVerification);
        }
    }
    if sum != CMatrix::identity(t.size()) {
        return Err(SpinError::SpectrumVerification);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::embed;
    use crate::exterior::Form;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn sasakian_torsion() -> Form {
        Form::term(5, s(2), &[1, 2, 5]).unwrap().add(&Form::term(5, s(2), &[3, 4, 5]).unwrap()).unwrap()
    }

    #[test]
    fn generators_satisfy_clifford_relations() {
        for n in 3..=8u8 {
            let rep = SpinRep::new(n).unwrap();
            assert_eq!(rep.dim(), 1 << (n / 2));
            for i in 1..=n {
                for j in 1..=n {
                    let gi = rep.gamma(i).clone();
                    let gj = rep.gamma(j).clone();
                    let anti = gi.clone() * gj.clone() + gj * gi;
                    let expect = if i == j {
                        CMatrix::identity(rep.dim()).scale(&ComplexScalar::from_int(-2))
                    } else {
                        CMatrix::zeros(rep.dim())
                    };
                    assert_eq!(anti, expect, "relation failed for n={n}, i={i}, j={j}");
                }
            }
        }
    }

    #[test]
    fn generators_are_skew_hermitian() {
        let rep = SpinRep::new(7).unwrap();
        for k in 1..=7 {
            assert!(rep.gamma(k).is_skew_hermitian());
        }
    }

    #[test]
    fn dim3_volume_acts_as_plus_identity() {
        let rep = SpinRep::new(3).unwrap();
        let vol = rep.act(&embed(&Form::blade(3, &[1, 2, 3]).unwrap())).unwrap();
        assert_eq!(vol, CMatrix::identity(2));
        assert_eq!(rep.volume_scalar().unwrap(), ComplexScalar::one());
    }

    #[test]
    fn dim5_volume_scalar() {
        let rep = SpinRep::new(5).unwrap();
        assert_eq!(rep.volume_scalar().unwrap(), ComplexScalar::i());
    }

    #[test]
    fn act_is_a_homomorphism_on_samples() {
        let rep = SpinRep::new(5).unwrap();
        let a = embed(&sasakian_torsion());
        let b = embed(&Form::blade(5, &[1, 4]).unwrap());
        let ab = crate::clifford::clifford_mul(&a, &b).unwrap();
        assert_eq!(
            rep.act(&ab).unwrap(),
            rep.act(&a).unwrap() * rep.act(&b).unwrap()
        );
    }

    #[test]
    fn sasakian_torsion_spectrum() {
        let rep = SpinRep::new(5).unwrap();
        let t = rep.act(&embed(&sasakian_torsion())).unwrap();
        assert!(t.is_hermitian());
        let spec = spectrum_exact(&t, 1e-9).unwrap();
        assert_eq!(spec, vec![s(-4), s(0), s(0), s(4)]);
        assert!(verify_spectrum_exact(&t, &spec));
        assert!(!verify_spectrum_exact(&t, &[s(-4), s(0), s(1), s(4)]));
    }

    #[test]
    fn sasakian_split_and_volume_restrictions() {
        let rep = SpinRep::new(5).unwrap();
        let t = rep.act(&embed(&sasakian_torsion())).unwrap();
        let parts = split_by(&t, 1e-9).unwrap();
        let ranks: Vec<(Scalar, usize)> = parts.iter().map(|(l, p)| (l.clone(), p.rank())).collect();
        assert_eq!(ranks, vec![(s(-4), 1), (s(0), 2), (s(4), 1)]);

        let e1234 = rep.act(&embed(&Form::blade(5, &[1, 2, 3, 4]).unwrap())).unwrap();
        for (lambda, p) in &parts {
            let expect = if lambda.is_zero() { p.clone() } else { p.clone().neg() };
            assert_eq!(e1234.clone() * p.clone(), expect, "e1234 restriction on eigenvalue {lambda}");
        }
        // [rho(T), rho(e_1234)] = 0
        assert!(commute(&t, &e1234));
    }

    #[test]
    fn split_of_zero_matrix_is_identity_projector() {
        let m = CMatrix::zeros(4);
        let parts = split_by(&m, 1e-9).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, Scalar::zero());
        assert_eq!(parts[0].1, CMatrix::identity(4));
    }

    #[test]
    fn anticommuting_generators_do_not_commute() {
        let rep = SpinRep::new(4).unwrap();
        assert!(!commute(rep.gamma(1), rep.gamma(2)));
        assert!(commute(&CMatrix::identity(4), rep.gamma(2)));
    }

    #[test]
    fn spin_lift_intertwines_frame_rotation() {
        let rep = SpinRep::new(5).unwrap();
        // A: e1 -> e2, e2 -> -e1 (rotation), zero elsewhere
        let mut a = CMatrix::zeros(5);
        a[(1, 0)] = ComplexScalar::one();
        a[(0, 1)] = -ComplexScalar::one();
        let l = rep.spin_lift(&a).unwrap();
        for k in 1..=5u8 {
            let gk = rep.gamma(k).clone();
            let lhs = l.clone() * gk.clone() - gk * l.clone();
            let rhs = match k {
                1 => rep.gamma(2).clone(),
                2 => rep.gamma(1).clone().neg(),
                _ => CMatrix::zeros(4),
            };
            assert_eq!(lhs, rhs, "intertwining failed on e_{k}");
        }
    }

    #[test]
    fn spectrum_general_on_skew_matrix() {
        let rep = SpinRep::new(5).unwrap();
        let g12 = rep.gamma(1).clone() * rep.gamma(2).clone();
        let spec = spectrum_general(&g12, 1e-9).unwrap();
        let i = ComplexScalar::i();
        assert_eq!(spec.iter().filter(|z| **z == i).count(), 2);
        assert_eq!(spec.iter().filter(|z| **z == -i.clone()).count(), 2);
    }

    #[test]
    fn spectrum_invariant_under_exact_unitary_conjugation() {
        // U = rational rotation block, exactly unitary
        let rep = SpinRep::new(5).unwrap();
        let mut u = CMatrix::identity(4);
        u[(0, 0)] = ComplexScalar::from_real(Scalar::rational(3, 5));
        u[(0, 1)] = ComplexScalar::from_real(Scalar::rational(4, 5));
        u[(1, 0)] = ComplexScalar::from_real(Scalar::rational(-4, 5));
        u[(1, 1)] = ComplexScalar::from_real(Scalar::rational(3, 5));
        assert_eq!(u.clone() * u.adjoint(), CMatrix::identity(4));
        let t = rep.act(&embed(&sasakian_torsion())).unwrap();
        let conj = u.clone() * t.clone() * u.adjoint();
        assert_eq!(spectrum_exact(&t, 1e-9).unwrap(), spectrum_exact(&conj, 1e-9).unwrap());
    }
}
