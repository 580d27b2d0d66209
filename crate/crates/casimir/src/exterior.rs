//! Exterior algebra of an orthonormal frame of `R^n`, `3 <= n <= 8`.
//!
//! Forms are stored sparsely as maps from strictly increasing index blades to
//! exact scalars. The frame is declared orthonormal with the standard
//! orientation `e_1 ^ ... ^ e_n`, which fixes the Hodge star and the inner
//! product on blades.

use crate::scalar::Scalar;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub const MIN_DIM: u8 = 3;
pub const MAX_DIM: u8 = 8;

#[derive(Debug, thiserror::Error)]
pub enum ExteriorError {
    #[error("ambient dimension {0} outside supported range {MIN_DIM}..={MAX_DIM}")]
    UnsupportedDimension(u8),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u8, u8),
    #[error("frame index {index} outside 1..={dim}")]
    IndexOutOfRange { index: u8, dim: u8 },
    #[error("blade indices must be strictly increasing, got {0:?}")]
    NonCanonicalBlade(Vec<u8>),
    #[error("expected a homogeneous form of degree {expected}, got degrees {found:?}")]
    WrongDegree { expected: u8, found: Vec<u8> },
}

/// A strictly increasing sequence of frame indices; the empty blade is the
/// unit 0-form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexBlade(Vec<u8>);

impl IndexBlade {
    /// Canonical blade from already sorted, duplicate-free indices.
    pub fn new(indices: Vec<u8>) -> Result<Self, ExteriorError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ExteriorError::NonCanonicalBlade(indices));
        }
        Ok(IndexBlade(indices))
    }

    pub fn unit() -> Self {
        IndexBlade(Vec::new())
    }

    /// Sort arbitrary indices into canonical order, returning the permutation
    /// sign; `None` when an index repeats.
    pub fn from_unsorted(mut indices: Vec<u8>) -> Option<(Self, i8)> {
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((IndexBlade(indices), sign))
    }

    pub fn degree(&self) -> u8 {
        self.0.len() as u8
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn contains(&self, index: u8) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    /// Complementary blade in `1..=n` together with the sign of the
    /// permutation `(self, complement)` of `(1, ..., n)`.
    pub fn complement(&self, dim: u8) -> (IndexBlade, i8) {
        let comp: Vec<u8> = (1..=dim).filter(|i| !self.contains(*i)).collect();
        let mut joined: Vec<u8> = self.0.clone();
        joined.extend_from_slice(&comp);
        let (_, sign) = IndexBlade::from_unsorted(joined).expect("complement is disjoint");
        (IndexBlade(comp), sign)
    }
}

impl fmt::Debug for IndexBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e")?;
        for i in &self.0 {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Display for IndexBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "e")?;
        for i in &self.0 {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A mixed-degree multivector with exact coefficients over the blade basis.
///
/// The same carrier serves both the exterior algebra (wedge, hook, star) and
/// the Clifford algebra; only the product differs.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    dim: u8,
    terms: BTreeMap<IndexBlade, Scalar>,
}

impl Form {
    pub fn zero(dim: u8) -> Self {
        Form { dim, terms: BTreeMap::new() }
    }

    pub fn check_dim(dim: u8) -> Result<(), ExteriorError> {
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(ExteriorError::UnsupportedDimension(dim));
        }
        Ok(())
    }

    pub fn scalar(dim: u8, c: Scalar) -> Self {
        let mut f = Form::zero(dim);
        f.add_term(IndexBlade::unit(), c);
        f
    }

    pub fn one(dim: u8) -> Self {
        Form::scalar(dim, Scalar::one())
    }

    /// The basis blade `e_{i1...ip}` with coefficient 1.
    pub fn blade(dim: u8, indices: &[u8]) -> Result<Self, ExteriorError> {
        for &i in indices {
            if i == 0 || i > dim {
                return Err(ExteriorError::IndexOutOfRange { index: i, dim });
            }
        }
        let blade = IndexBlade::new(indices.to_vec())?;
        let mut f = Form::zero(dim);
        f.add_term(blade, Scalar::one());
        Ok(f)
    }

    /// Shorthand used throughout the catalog: `c * e_{indices}`.
    pub fn term(dim: u8, c: Scalar, indices: &[u8]) -> Result<Self, ExteriorError> {
        Ok(Form::blade(dim, indices)?.scale(&c))
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexBlade, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: &IndexBlade) -> Scalar {
        self.terms.get(blade).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scalar_part(&self) -> Scalar {
        self.coefficient(&IndexBlade::unit())
    }

    /// Insert `c * blade`, combining with an existing term and dropping zeros.
    pub fn add_term(&mut self, blade: IndexBlade, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(blade);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Form) -> Result<Form, ExteriorError> {
        self.same_dim(rhs)?;
        let mut out = self.clone();
        for (b, c) in rhs.terms() {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Form) -> Result<Form, ExteriorError> {
        self.add(&rhs.clone().neg())
    }

    pub fn neg(self) -> Form {
        Form { dim: self.dim, terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.dim);
        }
        Form {
            dim: self.dim,
            terms: self.terms.iter().map(|(b, v)| (b.clone(), v.clone() * c.clone())).collect(),
        }
    }

    fn same_dim(&self, rhs: &Form) -> Result<(), ExteriorError> {
        if self.dim != rhs.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, rhs.dim));
        }
        Ok(())
    }

    /// Degrees occurring with nonzero coefficient, ascending.
    pub fn degrees(&self) -> Vec<u8> {
        let mut ds: Vec<u8> = self.terms.keys().map(|b| b.degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The common degree of all terms; zero form counts as homogeneous of any
    /// degree, reported as `None`.
    pub fn homogeneous_degree(&self) -> Option<u8> {
        let ds = self.degrees();
        match ds.len() {
            1 => Some(ds[0]),
            _ => None,
        }
    }

    pub fn expect_degree(&self, p: u8) -> Result<(), ExteriorError> {
        if self.is_zero() {
            return Ok(());
        }
        match self.homogeneous_degree() {
            Some(d) if d == p => Ok(()),
            _ => Err(ExteriorError::WrongDegree { expected: p, found: self.degrees() }),
        }
    }

    pub fn grade_projection(&self, p: u8) -> Form {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == p)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Exterior product. Bilinear, associative, graded-commutative.
pub fn wedge(a: &Form, b: &Form) -> Result<Form, ExteriorError> {
    if a.dim() != b.dim() {
        return Err(ExteriorError::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut out = Form::zero(a.dim());
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            let mut joined = ba.indices().to_vec();
            joined.extend_from_slice(bb.indices());
            if let Some((blade, sign)) = IndexBlade::from_unsorted(joined) {
                let mut c = ca.clone() * cb.clone();
                if sign < 0 {
                    c = -c;
                }
                out.add_term(blade, c);
            }
        }
    }
    Ok(out)
}

/// Interior product with the `k`-th orthonormal frame vector.
///
/// An anti-derivation of degree `-1`: `e_k -| (a ^ b) = (e_k -| a) ^ b +
/// (-1)^{deg a} a ^ (e_k -| b)`.
pub fn hook(k: u8, a: &Form) -> Result<Form, ExteriorError> {
    if k == 0 || k > a.dim() {
        return Err(ExteriorError::IndexOutOfRange { index: k, dim: a.dim() });
    }
    let mut out = Form::zero(a.dim());
    for (blade, c) in a.terms() {
        if let Ok(pos) = blade.indices().binary_search(&k) {
            let mut rest = blade.indices().to_vec();
            rest.remove(pos);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            let coeff = if sign > 0 { c.clone() } else { -c.clone() };
            out.add_term(IndexBlade::new(rest).expect("sorted remainder"), coeff);
        }
    }
    Ok(out)
}

/// The 4-form `sigma_T = (1/2) sum_k (e_k -| T) ^ (e_k -| T)` of a 3-form.
pub fn sigma_t(t: &Form) -> Result<Form, ExteriorError> {
    t.expect_degree(3)?;
    let mut out = Form::zero(t.dim());
    for k in 1..=t.dim() {
        let h = hook(k, t)?;
        out = out.add(&wedge(&h, &h)?)?;
    }
    Ok(out.scale(&Scalar::rational(1, 2)))
}

/// Hodge star for the standard orientation: `*(e_I) = sign(I, I^c) e_{I^c}`.
pub fn hodge_star(a: &Form) -> Form {
    let mut out = Form::zero(a.dim());
    for (blade, c) in a.terms() {
        let (comp, sign) = blade.complement(a.dim());
        let coeff = if sign > 0 { c.clone() } else { -c.clone() };
        out.add_term(comp, coeff);
    }
    out
}

/// Inner product making the increasing blades an orthonormal basis.
pub fn inner(a: &Form, b: &Form) -> Result<Scalar, ExteriorError> {
    if a.dim() != b.dim() {
        return Err(ExteriorError::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut out = Scalar::zero();
    for (blade, ca) in a.terms() {
        let cb = b.coefficient(blade);
        if !cb.is_zero() {
            out += ca.clone() * cb;
        }
    }
    Ok(out)
}

/// `||a||^2 = inner(a, a)`.
pub fn norm_sq(a: &Form) -> Scalar {
    inner(a, a).expect("same form")
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (blade, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if blade.degree() == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{blade}")?;
            } else {
                write!(f, "{c}*{blade}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    idx: Vec<u8>,
    c: Scalar,
}

impl Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms()
            .map(|(b, c)| TermJson { idx: b.indices().to_vec(), c: c.clone() })
            .collect();
        terms.serialize(serializer)
    }
}

impl Form {
    /// Deserialize a term list against a known ambient dimension.
    pub fn from_json_terms(dim: u8, value: &serde_json::Value) -> Result<Form, serde_json::Error> {
        let terms: Vec<TermJson> = serde_json::from_value(value.clone())?;
        let mut out = Form::zero(dim);
        for t in terms {
            for &i in &t.idx {
                if i == 0 || i > dim {
                    return Err(serde_json::Error::custom(format!(
                        "blade index {i} outside 1..={dim}"
                    )));
                }
            }
            let blade = IndexBlade::new(t.idx.clone()).map_err(|_| {
                serde_json::Error::custom(format!("blade indices not strictly increasing: {:?}", t.idx))
            })?;
            out.add_term(blade, t.c);
        }
        Ok(out)
    }
}
