//! Tensor product decomposition of string and band modules.
//!
//! The tensor product here is vertex-wise over the presentation quiver, with
//! arrows acting diagonally.  Its decomposition into indecomposables is
//! governed by two ingredients: the Jordan block product rule for a single
//! invertible loop, and the linear components of the fibre product of the
//! two supporting shapes.  This module puts both together:
//!
//! - string ⊗ string: one string per linear component;
//! - string ⊗ band of size `s`: each linear component `s` times;
//! - bands over non-isomorphic shapes: each linear component `s·t` times;
//! - bands over one shape: Jordan-rule bands over the same shape, plus
//!   `s·t` copies of every non-diagonal linear component.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::fibre::{connected_components, fibre_product, ComponentClass};
use crate::quiver::QuiverPresentation;
use crate::shape::{Shape, ShapeError, ShapeKind, ShapeWord};

/// A single Jordan block: an eigenvalue and a size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanBlock {
    pub eigenvalue: BigRational,
    pub size: u64,
}

/// The Jordan type of a tensor product of two blocks: a non-increasing list
/// of sizes sharing one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub eigenvalue: BigRational,
    pub sizes: Vec<u64>,
}

/// Errors from decomposition inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("band eigenvalues must be nonzero")]
    ZeroEigenvalue,
    #[error("band and block sizes must be at least 1")]
    ZeroSize,
    #[error("band words must be cyclic")]
    NotCyclic,
    #[error("string words must be linear")]
    NotLinear,
    #[error("inputs come from different presentations")]
    MixedPresentations,
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// Tensor product of Jordan blocks `J_λ(s) ⊗ J_μ(t)` in characteristic
/// zero: eigenvalue `λμ`, sizes `s+t−1, s+t−3, …, |s−t|+1`.
pub fn jordan_tensor(
    lambda: &BigRational,
    s: u64,
    mu: &BigRational,
    t: u64,
) -> Result<JordanDecomposition, DecomposeError> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(DecomposeError::ZeroEigenvalue);
    }
    if s == 0 || t == 0 {
        return Err(DecomposeError::ZeroSize);
    }
    let sizes: Vec<u64> = (0..s.min(t)).map(|k| s + t - 2 * k - 1).collect();
    debug_assert_eq!(sizes.iter().sum::<u64>(), s * t);
    Ok(JordanDecomposition { eigenvalue: lambda * mu, sizes })
}

/// An isomorphism class of indecomposable modules: a string (linear shape)
/// or a band (cyclic shape, nonzero eigenvalue, Jordan size).
///
/// Words are stored canonically.  The order is: strings before bands,
/// strings by word, bands by (word, eigenvalue numerator, denominator,
/// size) — a fixed total order that keeps rendered output stable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Indecomposable {
    String { pres_fp: u64, word: ShapeWord },
    Band { pres_fp: u64, word: ShapeWord, lambda: BigRational, size: u64 },
}

impl Ord for Indecomposable {
    fn cmp(&self, other: &Self) -> Ordering {
        use Indecomposable::*;
        match (self, other) {
            (String { .. }, Band { .. }) => Ordering::Less,
            (Band { .. }, String { .. }) => Ordering::Greater,
            (String { word: w1, pres_fp: f1 }, String { word: w2, pres_fp: f2 }) => {
                w1.cmp(w2).then_with(|| f1.cmp(f2))
            }
            (
                Band { word: w1, lambda: l1, size: s1, pres_fp: f1 },
                Band { word: w2, lambda: l2, size: s2, pres_fp: f2 },
            ) => w1
                .cmp(w2)
                .then_with(|| l1.numer().cmp(l2.numer()))
                .then_with(|| l1.denom().cmp(l2.denom()))
                .then_with(|| s1.cmp(s2))
                .then_with(|| f1.cmp(f2)),
        }
    }
}

impl PartialOrd for Indecomposable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Indecomposable {
    /// The string class of a linear shape.
    pub fn string(shape: &Shape) -> Result<Indecomposable, DecomposeError> {
        if shape.kind() != ShapeKind::Linear {
            return Err(DecomposeError::NotLinear);
        }
        Ok(Indecomposable::String {
            pres_fp: shape.pres_fingerprint(),
            word: shape.canonical_word(),
        })
    }

    pub fn pres_fingerprint(&self) -> u64 {
        match self {
            Indecomposable::String { pres_fp, .. } | Indecomposable::Band { pres_fp, .. } => {
                *pres_fp
            }
        }
    }

    pub fn word(&self) -> &ShapeWord {
        match self {
            Indecomposable::String { word, .. } | Indecomposable::Band { word, .. } => word,
        }
    }

    /// The supporting shape, rebuilt over its presentation.
    pub fn shape(&self, pres: &QuiverPresentation) -> Result<Shape, DecomposeError> {
        if pres.fingerprint() != self.pres_fingerprint() {
            return Err(DecomposeError::MixedPresentations);
        }
        Ok(Shape::from_word(pres, self.word().clone())?)
    }

    /// Dimension over each presentation vertex.
    pub fn dim_vector(&self, pres: &QuiverPresentation) -> Result<Vec<u64>, DecomposeError> {
        let shape = self.shape(pres)?;
        let scale = match self {
            Indecomposable::String { .. } => 1,
            Indecomposable::Band { size, .. } => *size,
        };
        Ok(shape.dim_vector(pres).into_iter().map(|d| d as u64 * scale).collect())
    }

    /// Total dimension.
    pub fn dimension(&self, pres: &QuiverPresentation) -> Result<u64, DecomposeError> {
        Ok(self.dim_vector(pres)?.into_iter().sum())
    }

    /// The class literal: `S[word]` for strings, `B[(word), λ, s]` for
    /// bands, with the eigenvalue as an exact fraction.
    pub fn literal(&self, pres: &QuiverPresentation) -> String {
        match self {
            Indecomposable::String { word, .. } => format!("S[{}]", word.display(pres)),
            Indecomposable::Band { word, lambda, size, .. } => {
                format!("B[{}, {}, {}]", word.display(pres), lambda, size)
            }
        }
    }
}

/// Puts a band datum into normal form: canonical cyclic word, eigenvalue
/// inverted exactly when canonicalization reverses the orientation.
pub fn normalize_band(
    pres: &QuiverPresentation,
    word: &ShapeWord,
    lambda: BigRational,
    size: u64,
) -> Result<Indecomposable, DecomposeError> {
    if lambda.is_zero() {
        return Err(DecomposeError::ZeroEigenvalue);
    }
    if size == 0 {
        return Err(DecomposeError::ZeroSize);
    }
    let shape = Shape::from_word(pres, word.clone())?;
    if shape.kind() != ShapeKind::Cyclic {
        return Err(DecomposeError::NotCyclic);
    }
    let (canonical, reversed) = word.canonicalize();
    let lambda = if reversed { lambda.recip() } else { lambda };
    Ok(Indecomposable::Band { pres_fp: pres.fingerprint(), word: canonical, lambda, size })
}

/// A finite multiset of indecomposables: the Krull–Schmidt normal form of a
/// module.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    entries: BTreeMap<Indecomposable, u64>,
}

impl Decomposition {
    pub fn new() -> Decomposition {
        Decomposition::default()
    }

    pub fn add(&mut self, class: Indecomposable, multiplicity: u64) {
        if multiplicity > 0 {
            *self.entries.entry(class).or_insert(0) += multiplicity;
        }
    }

    pub fn entries(&self) -> &BTreeMap<Indecomposable, u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct classes.
    pub fn n_classes(&self) -> usize {
        self.entries.len()
    }

    /// Total number of indecomposable summands, counted with multiplicity.
    pub fn n_summands(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn dim_vector(&self, pres: &QuiverPresentation) -> Result<Vec<u64>, DecomposeError> {
        let mut dims = vec![0u64; pres.quiver.n_vertices()];
        for (class, &mult) in &self.entries {
            for (i, d) in class.dim_vector(pres)?.into_iter().enumerate() {
                dims[i] += mult * d;
            }
        }
        Ok(dims)
    }

    pub fn dimension(&self, pres: &QuiverPresentation) -> Result<u64, DecomposeError> {
        Ok(self.dim_vector(pres)?.into_iter().sum())
    }
}

impl FromIterator<(Indecomposable, u64)> for Decomposition {
    fn from_iter<I: IntoIterator<Item = (Indecomposable, u64)>>(iter: I) -> Self {
        let mut d = Decomposition::new();
        for (class, mult) in iter {
            d.add(class, mult);
        }
        d
    }
}

/// Decomposes the tensor product of two indecomposables.
pub fn cg_tensor(
    pres: &QuiverPresentation,
    u: &Indecomposable,
    v: &Indecomposable,
) -> Result<Decomposition, DecomposeError> {
    if u.pres_fingerprint() != pres.fingerprint() || v.pres_fingerprint() != pres.fingerprint() {
        return Err(DecomposeError::MixedPresentations);
    }
    use Indecomposable::*;
    match (u, v) {
        (String { .. }, String { .. }) => {
            let (fu, fv) = (u.shape(pres)?, v.shape(pres)?);
            strings_of_linear_components(pres, &fu, &fv, 1)
        }
        (String { .. }, Band { size, .. }) | (Band { size, .. }, String { .. }) => {
            let (fu, fv) = (u.shape(pres)?, v.shape(pres)?);
            strings_of_linear_components(pres, &fu, &fv, *size)
        }
        (
            Band { word: w1, lambda: l1, size: s1, .. },
            Band { word: w2, lambda: l2, size: s2, .. },
        ) => {
            let (fu, fv) = (u.shape(pres)?, v.shape(pres)?);
            if w1 == w2 {
                // Same shape: Jordan-rule bands over the diagonal plus
                // s·t copies of each non-diagonal linear component.
                let jordan = jordan_tensor(l1, *s1, l2, *s2)?;
                let mut out = strings_of_linear_components(pres, &fu, &fv, s1 * s2)?;
                for l in jordan.sizes {
                    out.add(
                        Indecomposable::Band {
                            pres_fp: pres.fingerprint(),
                            word: w1.clone(),
                            lambda: jordan.eigenvalue.clone(),
                            size: l,
                        },
                        1,
                    );
                }
                Ok(out)
            } else {
                // Normalized bands with distinct words have non-isomorphic
                // shapes: every component is linear.
                strings_of_linear_components(pres, &fu, &fv, s1 * s2)
            }
        }
    }
}

/// Helper shared by all four cases: `scale` copies of the string of every
/// linear fibre-product component.
fn strings_of_linear_components(
    pres: &QuiverPresentation,
    f1: &Shape,
    f2: &Shape,
    scale: u64,
) -> Result<Decomposition, DecomposeError> {
    let product = fibre_product(f1, f2);
    let report = connected_components(pres, &product);
    let mut out = Decomposition::new();
    for c in &report.components {
        if c.class == ComponentClass::Linear {
            out.add(Indecomposable::string(&c.shape)?, scale);
        }
    }
    Ok(out)
}
