//! The representation ring: the string-span ideal, its orthogonal
//! idempotent basis, structure constants, and the band-shape quotient.
//!
//! The ring is spanned by isoclasses of indecomposables.  The integer span
//! of the string classes is an ideal; over a fixed finite universe of
//! linear shape classes it has a unique basis of pairwise orthogonal
//! idempotents `e_F`, triangular against the string classes under the
//! subshape order:
//!
//! ```text
//! [S_F]   = Σ_{F' ≤ F} |F:F'| e_{F'}
//! e_F     = [S_F] − Σ_{F' < F} |F:F'| e_{F'}
//! ```
//!
//! Products act through the factorization counts: `[S_F]·e_{F'} =
//! |F:F'|·e_{F'}`, `[B(λ,s)]·e_{F'} = s·|G:F'|·e_{F'}`, and band·band
//! products reduce to Jordan-block arithmetic plus idempotent terms.  The
//! quotient by the string span splits into one polynomial-ring copy per
//! cyclic shape class; [`band_quotient_class`] reads off coordinates there.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::decompose::{cg_tensor, DecomposeError, Decomposition, Indecomposable};
use crate::quiver::QuiverPresentation;
use crate::shape::{count_factorizations, enumerate_linear_shapes, Shape, ShapeWord};

/// A basis key of the ring: either an indecomposable isoclass or an
/// idempotent indexed by a canonical linear shape word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisKey {
    /// `[S_F]` or `[B_G(λ, s)]`.
    Class(Indecomposable),
    /// `e_F` for a canonical linear shape word `F`.
    Idem(ShapeWord),
}

/// A sparse integer combination of basis keys.  Coefficients are exact big
/// integers and never stored at zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingElement {
    terms: BTreeMap<BasisKey, BigInt>,
}

impl RingElement {
    pub fn zero() -> RingElement {
        RingElement::default()
    }

    /// The basis element `[x]`.
    pub fn class(x: Indecomposable) -> RingElement {
        let mut e = RingElement::zero();
        e.add_term(BasisKey::Class(x), BigInt::one());
        e
    }

    /// The idempotent `e_F`.  The word must be a canonical linear word.
    pub fn idempotent(word: &ShapeWord) -> RingElement {
        assert!(!word.is_cyclic(), "idempotents are indexed by linear shapes");
        assert!(word.is_canonical(), "idempotents are indexed by canonical words");
        let mut e = RingElement::zero();
        e.add_term(BasisKey::Idem(word.clone()), BigInt::one());
        e
    }

    /// The element `Σ mult·[class]` of a decomposition.
    pub fn from_decomposition(d: &Decomposition) -> RingElement {
        let mut e = RingElement::zero();
        for (class, &mult) in d.entries() {
            e.add_term(BasisKey::Class(class.clone()), BigInt::from(mult));
        }
        e
    }

    pub fn terms(&self) -> &BTreeMap<BasisKey, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &BasisKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, key: BasisKey, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &RingElement, scale: &BigInt) {
        for (key, coeff) in &other.terms {
            self.add_term(key.clone(), coeff * scale);
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        out
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one());
        out
    }

    /// Deterministic plain-text rendering, e.g. `[S a] + 2·e[@x]`.
    pub fn render(&self, pres: &QuiverPresentation) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (key, coeff) in &self.terms {
            let name = match key {
                BasisKey::Class(Indecomposable::String { word, .. }) => {
                    format!("[S {}]", word.display(pres))
                }
                BasisKey::Class(Indecomposable::Band { word, lambda, size, .. }) => {
                    format!("[B {}, {}, {}]", word.display(pres), lambda, size)
                }
                BasisKey::Idem(word) => format!("e[{}]", word.display(pres)),
            };
            let lead = if coeff.is_one() {
                name
            } else if (-coeff).is_one() {
                format!("-{name}")
            } else {
                format!("{coeff}·{name}")
            };
            parts.push(lead);
        }
        parts.join(" + ")
    }
}

/// Ring computation errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    /// A shape needed for an e-basis expansion is not covered by the
    /// universe's length bound.
    #[error("universe of length bound {bound} does not cover shape \"{shape}\"")]
    UniverseTooSmall { shape: String, bound: usize },
    /// A product produced a string class beyond the universe bound; the
    /// result cannot be normalized without silent truncation.
    #[error("product overflows the universe (length bound {bound}): string class \"{shape}\"")]
    UniverseOverflow { shape: String, bound: usize },
    /// A key belongs to a different presentation than the universe.
    #[error("element mixes presentations")]
    MixedPresentations,
    #[error(transparent)]
    Tensor(#[from] DecomposeError),
}

/// A finite, subshape-closed slice of the ring basis: every linear shape
/// class up to a length bound, their pairwise factorization counts, and the
/// idempotent basis expressed over string classes.
///
/// Built once, immutable afterwards; safe to share across threads.
pub struct Universe {
    pres: QuiverPresentation,
    max_len: usize,
    strings: Vec<Shape>,
    index: BTreeMap<ShapeWord, usize>,
    /// `counts[i][j] = |F_i : F_j|`.
    counts: Vec<Vec<u64>>,
    /// Row `i`: the expansion of `e_{F_i}` over string classes, as a sparse
    /// map from string index to coefficient.
    idem_in_strings: Vec<BTreeMap<usize, BigInt>>,
}

impl Universe {
    /// Enumerates all linear shape classes up to `max_len` and solves the
    /// triangular recurrence for the idempotent basis.
    pub fn build(pres: &QuiverPresentation, max_len: usize) -> Universe {
        let strings = enumerate_linear_shapes(pres, max_len);
        let index: BTreeMap<ShapeWord, usize> =
            strings.iter().enumerate().map(|(i, s)| (s.canonical_word(), i)).collect();
        let n = strings.len();
        let counts: Vec<Vec<u64>> = strings
            .iter()
            .map(|f| {
                strings
                    .iter()
                    .map(|fprime| count_factorizations(f, fprime) as u64)
                    .collect()
            })
            .collect();

        // e_F = [S_F] − Σ_{F' < F} |F:F'| e_{F'}.  The enumeration is
        // ordered by length, and |F:F'| > 0 with F' ≠ F forces F' strictly
        // shorter, so rows can be solved in order.
        let mut idem_in_strings: Vec<BTreeMap<usize, BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row: BTreeMap<usize, BigInt> = BTreeMap::new();
            row.insert(i, BigInt::one());
            for j in 0..i {
                let c = counts[i][j];
                if c == 0 {
                    continue;
                }
                let scale = BigInt::from(c);
                let mut dead = Vec::new();
                for (&k, coeff) in &idem_in_strings[j] {
                    let entry = row.entry(k).or_insert_with(BigInt::zero);
                    *entry -= coeff * &scale;
                    if entry.is_zero() {
                        dead.push(k);
                    }
                }
                for k in dead {
                    row.remove(&k);
                }
            }
            idem_in_strings.push(row);
        }

        Universe { pres: pres.clone(), max_len, strings, index, counts, idem_in_strings }
    }

    pub fn presentation(&self) -> &QuiverPresentation {
        &self.pres
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// The enumerated linear shapes, ordered by (length, canonical word).
    pub fn strings(&self) -> &[Shape] {
        &self.strings
    }

    pub fn shape_index(&self, word: &ShapeWord) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// `|F_i : F_j|` over universe indices.
    pub fn factor_count(&self, i: usize, j: usize) -> u64 {
        self.counts[i][j]
    }

    fn require(&self, word: &ShapeWord) -> Result<usize, RingError> {
        self.shape_index(word).ok_or_else(|| RingError::UniverseTooSmall {
            shape: word.display(&self.pres),
            bound: self.max_len,
        })
    }
}

/// `[S_F] = Σ_{F' ≤ F} |F:F'| e_{F'}`: the string class expanded over the
/// idempotent basis.
pub fn string_to_idempotents(
    universe: &Universe,
    word: &ShapeWord,
) -> Result<RingElement, RingError> {
    let word = word.canonical();
    let i = universe.require(&word)?;
    let mut out = RingElement::zero();
    for (j, shape) in universe.strings.iter().enumerate() {
        let c = universe.counts[i][j];
        if c > 0 {
            out.add_term(BasisKey::Idem(shape.canonical_word()), BigInt::from(c));
        }
    }
    Ok(out)
}

/// `e_F = [S_F] − Σ_{F' < F} |F:F'| e_{F'}` unrolled: the idempotent as an
/// integer combination of string classes.
pub fn idempotent_to_strings(
    universe: &Universe,
    word: &ShapeWord,
) -> Result<RingElement, RingError> {
    let word = word.canonical();
    let i = universe.require(&word)?;
    let mut out = RingElement::zero();
    for (&j, coeff) in &universe.idem_in_strings[i] {
        let class = Indecomposable::string(&universe.strings[j])
            .expect("universe members are linear shapes");
        out.add_term(BasisKey::Class(class), coeff.clone());
    }
    Ok(out)
}

/// Bilinear product of ring elements, normalized so the result carries
/// only band classes and idempotents.  String classes produced along the
/// way are re-expanded over the idempotent basis; a product string longer
/// than the universe bound is an overflow error, never a silent truncation.
pub fn ring_multiply(
    universe: &Universe,
    a: &RingElement,
    b: &RingElement,
) -> Result<RingElement, RingError> {
    let pres = &universe.pres;
    let fp = pres.fingerprint();
    for element in [a, b] {
        for key in element.terms.keys() {
            if let BasisKey::Class(c) = key {
                if c.pres_fingerprint() != fp {
                    return Err(RingError::MixedPresentations);
                }
            }
        }
    }

    // Cyclic shapes referenced by band keys, built once per word.
    let mut band_shapes: BTreeMap<ShapeWord, Shape> = BTreeMap::new();
    let mut band_shape = |word: &ShapeWord| -> Result<Shape, RingError> {
        if let Some(s) = band_shapes.get(word) {
            return Ok(s.clone());
        }
        let shape = Shape::from_word(pres, word.clone()).map_err(DecomposeError::from)?;
        band_shapes.insert(word.clone(), shape.clone());
        Ok(shape)
    };

    let mut raw = RingElement::zero();
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let scale = ca * cb;
            match (ka, kb) {
                (BasisKey::Idem(f), BasisKey::Idem(g)) => {
                    if f == g {
                        raw.add_term(BasisKey::Idem(f.clone()), scale);
                    }
                }
                (BasisKey::Idem(f), BasisKey::Class(x))
                | (BasisKey::Class(x), BasisKey::Idem(f)) => {
                    let jf = universe.require(f)?;
                    let action = match x {
                        Indecomposable::String { word, .. } => {
                            let i = universe.require(word)?;
                            BigInt::from(universe.counts[i][jf])
                        }
                        Indecomposable::Band { word, size, .. } => {
                            let g = band_shape(word)?;
                            let c = count_factorizations(&g, &universe.strings[jf]);
                            BigInt::from(*size) * BigInt::from(c as u64)
                        }
                    };
                    raw.add_term(BasisKey::Idem(f.clone()), scale * action);
                }
                (BasisKey::Class(x), BasisKey::Class(y)) => {
                    let product = cg_tensor(pres, x, y)?;
                    for (class, &mult) in product.entries() {
                        raw.add_term(BasisKey::Class(class.clone()), &scale * BigInt::from(mult));
                    }
                }
            }
        }
    }

    // Normalize: strings re-expand over idempotents, bands stay.  A
    // product string past the bound is an overflow of the universe, not a
    // missing input.
    let mut out = RingElement::zero();
    for (key, coeff) in &raw.terms {
        match key {
            BasisKey::Class(Indecomposable::String { word, .. }) => {
                let expanded = string_to_idempotents(universe, word).map_err(|e| match e {
                    RingError::UniverseTooSmall { shape, bound } => {
                        RingError::UniverseOverflow { shape, bound }
                    }
                    other => other,
                })?;
                out.add_scaled(&expanded, coeff);
            }
            _ => out.add_term(key.clone(), coeff.clone()),
        }
    }
    Ok(out)
}

/// Coordinates of a class in the quotient by the string span: band classes
/// map to `(shape class, λ, s)` in the polynomial-ring copy indexed by
/// their shape; string classes span the ideal being killed, so they map to
/// nothing.
pub fn band_quotient_class(class: &Indecomposable) -> Option<(ShapeWord, BigRational, u64)> {
    match class {
        Indecomposable::String { .. } => None,
        Indecomposable::Band { word, lambda, size, .. } => {
            Some((word.clone(), lambda.clone(), *size))
        }
    }
}
