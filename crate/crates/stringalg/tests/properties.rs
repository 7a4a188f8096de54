//! Randomized property tests for the structural invariants the library
//! promises: canonical forms are true normal forms, the symbolic tensor
//! decomposition is commutative and dimension-correct, and the Jordan
//! closed form is well-shaped.

use num_rational::BigRational;
use proptest::prelude::*;

use stringalg::decompose::{cg_tensor, jordan_tensor, normalize_band, Indecomposable};
use stringalg::presets;
use stringalg::quiver::QuiverPresentation;
use stringalg::shape::{
    enumerate_cyclic_shapes, enumerate_linear_shapes, reversed_word, ShapeWord,
};

fn preset(ix: usize) -> QuiverPresentation {
    match ix % 3 {
        0 => presets::gp3(),
        1 => presets::kronecker(),
        _ => presets::a3(),
    }
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Strings and a few bands over one presentation, as a sampling pool.
fn class_pool(pres: &QuiverPresentation) -> Vec<Indecomposable> {
    let mut pool: Vec<Indecomposable> = enumerate_linear_shapes(pres, 4)
        .iter()
        .map(|s| Indecomposable::string(s).unwrap())
        .collect();
    for shape in enumerate_cyclic_shapes(pres, 4) {
        for (lambda, size) in [(rat(2, 1), 1u64), (rat(1, 2), 2), (rat(-3, 1), 3)] {
            pool.push(normalize_band(pres, &shape.canonical_word(), lambda, size).unwrap());
        }
    }
    pool
}

proptest! {
    /// Canonicalizing twice changes nothing: canonical forms are fixed
    /// points of canonicalization.
    #[test]
    fn canonicalization_is_idempotent(preset_ix in 0..3usize, pick in any::<prop::sample::Index>()) {
        let pres = preset(preset_ix);
        let mut words: Vec<ShapeWord> = enumerate_linear_shapes(&pres, 5)
            .iter()
            .chain(enumerate_cyclic_shapes(&pres, 6).iter())
            .map(|s| s.canonical_word())
            .collect();
        prop_assume!(!words.is_empty());
        let word = words.swap_remove(pick.index(words.len()));
        let once = word.canonical();
        prop_assert_eq!(once.canonical(), once.clone());
        prop_assert!(once.is_canonical());
    }

    /// A linear word and its reversal name the same class.
    #[test]
    fn linear_canonical_form_ignores_orientation(preset_ix in 0..3usize, pick in any::<prop::sample::Index>()) {
        let pres = preset(preset_ix);
        let shapes = enumerate_linear_shapes(&pres, 5);
        let shape = &shapes[pick.index(shapes.len())];
        if let ShapeWord::Line(letters) = shape.canonical_word() {
            let reversed = ShapeWord::Line(reversed_word(&letters));
            prop_assert_eq!(reversed.canonical(), ShapeWord::Line(letters).canonical());
        }
    }

    /// A cyclic word, any of its rotations, and any rotation of its
    /// reversal all name the same class.
    #[test]
    fn cyclic_canonical_form_ignores_rotation_and_orientation(
        preset_ix in 0..3usize,
        pick in any::<prop::sample::Index>(),
        rotation in any::<prop::sample::Index>(),
        flip in any::<bool>(),
    ) {
        let pres = preset(preset_ix);
        let shapes = enumerate_cyclic_shapes(&pres, 6);
        prop_assume!(!shapes.is_empty());
        let shape = &shapes[pick.index(shapes.len())];
        if let ShapeWord::Cycle(letters) = shape.canonical_word() {
            let mut transformed = if flip { reversed_word(&letters) } else { letters.clone() };
            let k = rotation.index(transformed.len());
            transformed.rotate_left(k);
            prop_assert_eq!(
                ShapeWord::Cycle(transformed).canonical(),
                ShapeWord::Cycle(letters).canonical()
            );
        }
    }

    /// Jordan closed form: block sizes decrease in steps of two, sum to
    /// s·t, and the whole decomposition is symmetric in its arguments.
    #[test]
    fn jordan_tensor_is_well_shaped(
        s in 1..=8u64,
        t in 1..=8u64,
        lp in prop_oneof![(-6..=-1i64), (1..=6i64)],
        lq in 1..=6i64,
        mp in prop_oneof![(-6..=-1i64), (1..=6i64)],
        mq in 1..=6i64,
    ) {
        let lambda = rat(lp, lq);
        let mu = rat(mp, mq);
        let d = jordan_tensor(&lambda, s, &mu, t).unwrap();
        prop_assert_eq!(&d.eigenvalue, &(&lambda * &mu));
        prop_assert_eq!(d.sizes.iter().sum::<u64>(), s * t);
        prop_assert_eq!(d.sizes.len() as u64, s.min(t));
        for pair in d.sizes.windows(2) {
            prop_assert_eq!(pair[0], pair[1] + 2);
        }
        prop_assert_eq!(&d, &jordan_tensor(&mu, t, &lambda, s).unwrap());
    }

    /// The symbolic tensor decomposition is commutative and its dimension
    /// vector is the pointwise product of the factors' dimension vectors.
    #[test]
    fn tensor_is_commutative_and_dimension_correct(
        preset_ix in 0..3usize,
        pick_u in any::<prop::sample::Index>(),
        pick_v in any::<prop::sample::Index>(),
    ) {
        let pres = preset(preset_ix);
        let pool = class_pool(&pres);
        let u = &pool[pick_u.index(pool.len())];
        let v = &pool[pick_v.index(pool.len())];
        let uv = cg_tensor(&pres, u, v).unwrap();
        let vu = cg_tensor(&pres, v, u).unwrap();
        prop_assert_eq!(&uv, &vu);

        let du = u.dim_vector(&pres).unwrap();
        let dv = v.dim_vector(&pres).unwrap();
        let pointwise: Vec<u64> = du.iter().zip(&dv).map(|(a, b)| a * b).collect();
        prop_assert_eq!(uv.dim_vector(&pres).unwrap(), pointwise);
    }
}
