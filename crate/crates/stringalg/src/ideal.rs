//! Principal tensor ideals, truncated to a length/size bound.
//!
//! The smallest ideal of the module category that is closed under direct
//! sums, direct summands, and tensoring with arbitrary modules, and that
//! contains a given indecomposable `x`, has a clean description:
//!
//! * string generator `S_F`: the string classes whose shapes factor
//!   through `F` (its subshapes), nothing else;
//! * band generator `B_G(λ, s)`: every string class factoring through `G`,
//!   plus — in characteristic zero — **all** bands over `G`, for every
//!   eigenvalue and every size.
//!
//! Band membership is therefore stored as a predicate (shape class, any
//! eigenvalue, sizes up to the bound), never as an enumeration over
//! eigenvalues.  The truncation bound applies jointly to string word
//! length and band size.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::decompose::{cg_tensor, DecomposeError, Indecomposable};
use crate::quiver::QuiverPresentation;
use crate::shape::{count_factorizations, enumerate_linear_shapes, ShapeWord};

/// Ideal computation errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    /// A membership query for a class beyond the truncation bound.
    #[error("query \"{literal}\" exceeds the truncation bound {bound}")]
    OutOfBound { literal: String, bound: usize },
    #[error("ideals over different presentations")]
    MixedPresentations,
    #[error("ideal sum needs at least one summand")]
    EmptySum,
    #[error(transparent)]
    Tensor(#[from] DecomposeError),
}

/// A principal tensor ideal (or a finite sum of them), truncated to a
/// bound: an explicit set of string classes plus a band predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedIdeal {
    pres_fp: u64,
    generators: Vec<Indecomposable>,
    bound: usize,
    strings: BTreeSet<ShapeWord>,
    /// Cyclic shape classes `G` such that every band `B_G(μ, t)` with
    /// `t ≤ bound` belongs to the ideal, for every eigenvalue `μ`.
    band_shapes: BTreeSet<ShapeWord>,
}

impl TruncatedIdeal {
    pub fn pres_fingerprint(&self) -> u64 {
        self.pres_fp
    }

    pub fn generators(&self) -> &[Indecomposable] {
        &self.generators
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Canonical words of the member string classes.
    pub fn strings(&self) -> &BTreeSet<ShapeWord> {
        &self.strings
    }

    /// Canonical words of the cyclic shapes whose bands are members.
    pub fn band_shapes(&self) -> &BTreeSet<ShapeWord> {
        &self.band_shapes
    }
}

/// The smallest tensor ideal containing `x`, truncated to `bound`.
pub fn principal_ideal(
    pres: &QuiverPresentation,
    x: &Indecomposable,
    bound: usize,
) -> Result<TruncatedIdeal, IdealError> {
    let generator_shape = x.shape(pres)?;
    let strings = enumerate_linear_shapes(pres, bound)
        .iter()
        .filter(|f| count_factorizations(&generator_shape, f) > 0)
        .map(|f| f.canonical_word())
        .collect();
    let band_shapes = match x {
        Indecomposable::String { .. } => BTreeSet::new(),
        Indecomposable::Band { word, .. } => BTreeSet::from([word.clone()]),
    };
    Ok(TruncatedIdeal {
        pres_fp: pres.fingerprint(),
        generators: vec![x.clone()],
        bound,
        strings,
        band_shapes,
    })
}

/// Whether `x` belongs to the truncated ideal.  Queries beyond the bound
/// are errors, never a silent "false".
pub fn ideal_membership(x: &Indecomposable, ideal: &TruncatedIdeal) -> Result<bool, IdealError> {
    if x.pres_fingerprint() != ideal.pres_fp {
        return Err(IdealError::MixedPresentations);
    }
    match x {
        Indecomposable::String { word, .. } => {
            if word.len() > ideal.bound {
                return Err(IdealError::OutOfBound {
                    literal: format!("string of length {}", word.len()),
                    bound: ideal.bound,
                });
            }
            Ok(ideal.strings.contains(&word.canonical()))
        }
        Indecomposable::Band { word, size, .. } => {
            if *size as usize > ideal.bound {
                return Err(IdealError::OutOfBound {
                    literal: format!("band of size {size}"),
                    bound: ideal.bound,
                });
            }
            Ok(ideal.band_shapes.contains(word))
        }
    }
}

/// The sum of ideals: the smallest ideal containing each, whose membership
/// description is the plain union.  The common bound is the smallest of
/// the summands' bounds.
pub fn ideal_sum(ideals: &[TruncatedIdeal]) -> Result<TruncatedIdeal, IdealError> {
    let first = ideals.first().ok_or(IdealError::EmptySum)?;
    if ideals.iter().any(|i| i.pres_fp != first.pres_fp) {
        return Err(IdealError::MixedPresentations);
    }
    let bound = ideals.iter().map(|i| i.bound).min().expect("nonempty");
    let mut strings = BTreeSet::new();
    let mut band_shapes = BTreeSet::new();
    let mut generators = Vec::new();
    for ideal in ideals {
        strings.extend(ideal.strings.iter().filter(|w| w.len() <= bound).cloned());
        band_shapes.extend(ideal.band_shapes.iter().cloned());
        generators.extend(ideal.generators.iter().cloned());
    }
    Ok(TruncatedIdeal { pres_fp: first.pres_fp, generators, bound, strings, band_shapes })
}

/// Everything reachable from `seed` by repeatedly tensoring with the given
/// multipliers and taking summands, within the bound: the brute-force
/// counterpart of [`principal_ideal`] used to verify it.  Band members are
/// collected per (shape, size), ignoring the eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClosureSet {
    pub strings: BTreeSet<ShapeWord>,
    pub bands: BTreeSet<(ShapeWord, u64)>,
}

pub fn tensor_closure(
    pres: &QuiverPresentation,
    seed: &Indecomposable,
    bound: usize,
    multipliers: &[Indecomposable],
) -> Result<ClosureSet, DecomposeError> {
    let mut strings: BTreeSet<ShapeWord> = BTreeSet::new();
    let mut bands: BTreeMap<(ShapeWord, u64), Indecomposable> = BTreeMap::new();
    let mut queue: Vec<Indecomposable> = Vec::new();

    let mut admit = |class: &Indecomposable, queue: &mut Vec<Indecomposable>| match class {
        Indecomposable::String { word, .. } => {
            if word.len() <= bound && strings.insert(word.clone()) {
                queue.push(class.clone());
            }
        }
        Indecomposable::Band { word, size, .. } => {
            let key = (word.clone(), *size);
            if *size as usize <= bound && !bands.contains_key(&key) {
                bands.insert(key, class.clone());
                queue.push(class.clone());
            }
        }
    };

    admit(seed, &mut queue);
    while let Some(member) = queue.pop() {
        for multiplier in multipliers {
            let product = cg_tensor(pres, multiplier, &member)?;
            for class in product.entries().keys() {
                admit(class, &mut queue);
            }
        }
    }
    Ok(ClosureSet { strings, bands: bands.into_keys().collect() })
}
