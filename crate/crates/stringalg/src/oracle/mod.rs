//! Concrete exact-rational representations: the independent verification
//! route.
//!
//! Everything the symbolic engine claims can be checked here on actual
//! matrices: strings and bands are realized by pushing explicit fibre
//! modules down along their shapes, tensor products are pointwise Kronecker
//! products, and isomorphism claims are probed through Hom-space dimensions
//! computed as exact kernel dimensions.  No floating point is involved
//! anywhere.

pub mod matrix;
pub mod solve;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::decompose::{Decomposition, Indecomposable};
use crate::par;
use crate::quiver::{Quiver, QuiverPresentation};
use crate::shape::{QuiverMorphism, Shape};
pub use matrix::RationalMatrix;
use solve::{sparse_kernel_dim, SparseRow};

/// A finite-dimensional representation of a presentation: one dimension per
/// vertex and one exact matrix per arrow, of shape `dim(head) × dim(tail)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pres_fp: u64,
    dims: Vec<usize>,
    matrices: Vec<RationalMatrix>,
}

impl Representation {
    pub fn new(
        pres: &QuiverPresentation,
        dims: Vec<usize>,
        matrices: Vec<RationalMatrix>,
    ) -> Representation {
        let q = &pres.quiver;
        assert_eq!(dims.len(), q.n_vertices());
        assert_eq!(matrices.len(), q.n_arrows());
        for (a, m) in matrices.iter().enumerate() {
            let arrow = q.arrow(a);
            assert_eq!(
                (m.rows(), m.cols()),
                (dims[arrow.head], dims[arrow.tail]),
                "matrix shape mismatch on arrow {}",
                arrow.name
            );
        }
        Representation { pres_fp: pres.fingerprint(), dims, matrices }
    }

    pub fn zero(pres: &QuiverPresentation) -> Representation {
        let dims = vec![0; pres.quiver.n_vertices()];
        let matrices =
            (0..pres.quiver.n_arrows()).map(|_| RationalMatrix::zeros(0, 0)).collect();
        Representation::new(pres, dims, matrices)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self, arrow: usize) -> &RationalMatrix {
        &self.matrices[arrow]
    }

    pub fn dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn pres_fingerprint(&self) -> u64 {
        self.pres_fp
    }

    /// Checks that every relation generator acts as zero: for a generator
    /// applying `a₁` first and `a_d` last, the product
    /// `m(a_d) ⋯ m(a₁)` must vanish.
    pub fn satisfies_relations(&self, pres: &QuiverPresentation) -> bool {
        assert_eq!(self.pres_fp, pres.fingerprint());
        for gen in pres.relations.generators() {
            let first = gen[0];
            let tail_dim = self.dims[pres.quiver.arrow(first).tail];
            let mut product = RationalMatrix::identity(tail_dim);
            for &a in gen {
                product = self.matrices[a].mul(&product);
            }
            if !product.is_zero() {
                return false;
            }
        }
        true
    }
}

/// A representation of a walk domain, ready to be pushed down: one
/// dimension per domain vertex, one matrix per domain arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainRep {
    pub dims: Vec<usize>,
    pub matrices: Vec<RationalMatrix>,
}

impl DomainRep {
    /// The all-ones characteristic module: every vertex space is one line,
    /// every arrow acts as the identity.
    pub fn characteristic(domain: &Quiver) -> DomainRep {
        DomainRep {
            dims: vec![1; domain.n_vertices()],
            matrices: (0..domain.n_arrows()).map(|_| RationalMatrix::identity(1)).collect(),
        }
    }

    /// Pointwise tensor product of two representations of one domain.
    pub fn tensor(&self, other: &DomainRep) -> DomainRep {
        DomainRep {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a * b).collect(),
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a.kronecker(b))
                .collect(),
        }
    }
}

/// Pushes a domain representation down along a wrapping: the space at a
/// presentation vertex is the direct sum over its fibre (in domain-vertex
/// order), and each domain arrow contributes its matrix as a block of its
/// image arrow's matrix.
pub fn push_down(
    pres: &QuiverPresentation,
    domain: &Quiver,
    images: &QuiverMorphism,
    rep: &DomainRep,
) -> Representation {
    let q = &pres.quiver;
    assert!(images.is_morphism(domain, q), "push-down needs a quiver morphism");

    let mut dims = vec![0usize; q.n_vertices()];
    let mut offset = vec![0usize; domain.n_vertices()];
    for v in 0..domain.n_vertices() {
        let x = images.vertex_map[v];
        offset[v] = dims[x];
        dims[x] += rep.dims[v];
    }

    let mut matrices: Vec<RationalMatrix> = (0..q.n_arrows())
        .map(|a| {
            let arrow = q.arrow(a);
            RationalMatrix::zeros(dims[arrow.head], dims[arrow.tail])
        })
        .collect();
    for e in 0..domain.n_arrows() {
        let target = images.arrow_map[e];
        let de = domain.arrow(e);
        matrices[target].place(offset[de.head], offset[de.tail], &rep.matrices[e]);
    }

    Representation::new(pres, dims, matrices)
}

/// Pulls a representation back along a shape's wrapping: each domain vertex
/// takes the space at its image, each domain arrow the matrix of its image.
pub fn pull_up(pres: &QuiverPresentation, shape: &Shape, rep: &Representation) -> DomainRep {
    assert_eq!(rep.pres_fp, pres.fingerprint());
    let images = shape.morphism();
    DomainRep {
        dims: images.vertex_map.iter().map(|&x| rep.dims[x]).collect(),
        matrices: images.arrow_map.iter().map(|&a| rep.matrices[a].clone()).collect(),
    }
}

/// The string module of a linear shape: push-down of the all-ones
/// characteristic module.
pub fn push_down_string(pres: &QuiverPresentation, shape: &Shape) -> Representation {
    let domain = shape.domain_quiver();
    push_down(pres, &domain, &shape.morphism(), &DomainRep::characteristic(&domain))
}

/// The band module `B(λ, s, γ)` of a cyclic shape: `s` dimensions
/// everywhere; identity matrices on all domain arrows except γ, which
/// carries the Jordan block `J_λ(s)`.
///
/// γ convention: the first plain (non-inverted) letter of the shape's word.
/// Normalized bands store canonical words, which always start with a plain
/// letter, so γ is their first arrow.
pub fn push_down_band(
    pres: &QuiverPresentation,
    shape: &Shape,
    lambda: &BigRational,
    size: u64,
) -> Representation {
    assert!(!lambda.is_zero() && size >= 1, "bands need nonzero λ and positive size");
    let letters = shape.word().letters();
    let gamma = letters
        .iter()
        .position(|l| !l.inverted)
        .expect("compatible cyclic words have a plain letter");
    let s = size as usize;
    let rep = DomainRep {
        dims: vec![s; shape.n_domain_vertices()],
        matrices: (0..letters.len())
            .map(|e| {
                if e == gamma {
                    RationalMatrix::jordan_block(lambda, s)
                } else {
                    RationalMatrix::identity(s)
                }
            })
            .collect(),
    };
    let domain = shape.domain_quiver();
    push_down(pres, &domain, &shape.morphism(), &rep)
}

/// The representation of an indecomposable class.
pub fn rep_of(pres: &QuiverPresentation, class: &Indecomposable) -> Representation {
    let shape = class.shape(pres).expect("class belongs to this presentation");
    match class {
        Indecomposable::String { .. } => push_down_string(pres, &shape),
        Indecomposable::Band { lambda, size, .. } => {
            push_down_band(pres, &shape, lambda, *size)
        }
    }
}

/// Pointwise tensor product: dimensions multiply, arrow matrices are
/// Kronecker products.
pub fn tensor_rep(r1: &Representation, r2: &Representation) -> Representation {
    assert_eq!(r1.pres_fp, r2.pres_fp, "tensor products need one presentation");
    Representation {
        pres_fp: r1.pres_fp,
        dims: r1.dims.iter().zip(&r2.dims).map(|(a, b)| a * b).collect(),
        matrices: r1
            .matrices
            .iter()
            .zip(&r2.matrices)
            .map(|(a, b)| a.kronecker(b))
            .collect(),
    }
}

/// Block-diagonal direct sum of representations with multiplicities.
pub fn direct_sum_rep(
    pres: &QuiverPresentation,
    items: &[(&Representation, u64)],
) -> Representation {
    let q = &pres.quiver;
    let mut dims = vec![0usize; q.n_vertices()];
    for (rep, mult) in items {
        assert_eq!(rep.pres_fp, pres.fingerprint());
        for (x, d) in rep.dims.iter().enumerate() {
            dims[x] += d * *mult as usize;
        }
    }
    let mut matrices: Vec<RationalMatrix> = (0..q.n_arrows())
        .map(|a| {
            let arrow = q.arrow(a);
            RationalMatrix::zeros(dims[arrow.head], dims[arrow.tail])
        })
        .collect();
    let mut row_off = vec![0usize; q.n_vertices()];
    let mut col_off = vec![0usize; q.n_vertices()];
    for (rep, mult) in items {
        for _ in 0..*mult {
            for a in 0..q.n_arrows() {
                let arrow = q.arrow(a);
                matrices[a].place(row_off[arrow.head], col_off[arrow.tail], &rep.matrices[a]);
            }
            for x in 0..q.n_vertices() {
                row_off[x] += rep.dims[x];
                col_off[x] += rep.dims[x];
            }
        }
    }
    Representation { pres_fp: pres.fingerprint(), dims, matrices }
}

/// Dimension of the space of module homomorphisms `m → n`: solutions
/// `(φ_x)_x` of `φ_{head(α)} · m(α) = n(α) · φ_{tail(α)}` for every arrow.
pub fn hom_dim(pres: &QuiverPresentation, m: &Representation, n: &Representation) -> usize {
    assert_eq!(m.pres_fp, pres.fingerprint());
    assert_eq!(n.pres_fp, pres.fingerprint());
    let q = &pres.quiver;

    // Unknowns: entries of φ_x, an n_x × m_x matrix per vertex.
    let mut offset = vec![0usize; q.n_vertices()];
    let mut total = 0usize;
    for x in 0..q.n_vertices() {
        offset[x] = total;
        total += m.dims[x] * n.dims[x];
    }
    let unknown = |x: usize, i: usize, k: usize| offset[x] + i * m.dims[x] + k;

    let mut rows: Vec<SparseRow> = Vec::new();
    for a in 0..q.n_arrows() {
        let arrow = q.arrow(a);
        let (t, h) = (arrow.tail, arrow.head);
        let (ma, na) = (&m.matrices[a], &n.matrices[a]);
        // Equation (i, j) for i < n_h rows, j < m_t columns.
        for i in 0..n.dims[h] {
            for j in 0..m.dims[t] {
                let mut coeffs: BTreeMap<usize, BigRational> = BTreeMap::new();
                for k in 0..m.dims[h] {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        *coeffs.entry(unknown(h, i, k)).or_insert_with(BigRational::zero) +=
                            c.clone();
                    }
                }
                for l in 0..n.dims[t] {
                    let c = na.get(i, l);
                    if !c.is_zero() {
                        *coeffs.entry(unknown(t, l, j)).or_insert_with(BigRational::zero) -=
                            c.clone();
                    }
                }
                let row: SparseRow =
                    coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    sparse_kernel_dim(rows, total)
}

/// Jordan block sizes of `a` at eigenvalue `λ`, largest first, from the
/// rank sequence of powers of `a − λ·id`.
pub fn jordan_type(a: &RationalMatrix, lambda: &BigRational) -> Vec<u64> {
    assert_eq!(a.rows(), a.cols(), "jordan_type needs a square matrix");
    let n = a.rows();
    let mut shifted = a.clone();
    for i in 0..n {
        shifted.set(i, i, a.get(i, i) - lambda);
    }
    // d[k] = #blocks of size ≥ k = rank(B^{k-1}) − rank(B^k).
    let mut d: Vec<usize> = Vec::new();
    let mut power = RationalMatrix::identity(n);
    let mut prev_rank = n;
    loop {
        power = power.mul(&shifted);
        let r = power.rank();
        let drop = prev_rank - r;
        if drop == 0 {
            break;
        }
        d.push(drop);
        prev_rank = r;
    }
    let mut sizes = Vec::new();
    for k in (1..=d.len()).rev() {
        let exactly = d[k - 1] - d.get(k).copied().unwrap_or(0);
        for _ in 0..exactly {
            sizes.push(k as u64);
        }
    }
    sizes
}

/// One line of a verification report.
#[derive(Debug, Clone)]
pub struct VerifyCheck {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

/// Outcome of [`verify_decomposition`]: a list of exact checks, all of
/// which must pass.  The probe count is recorded so reports can state how
/// deep the Hom screening went.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
    pub n_probes: usize,
    pub passed: bool,
}

/// Verifies a predicted decomposition of `u ⊗ v` against concrete
/// matrices: (i) dimension vectors agree, (ii) Hom dimensions against every
/// probe agree in both directions, (iii) endomorphism-space dimensions
/// agree.  The predicted classes are always probed; `probes` adds more.
///
/// The predicted side is never materialized as one large representation:
/// Hom dimensions are additive in both arguments over direct sums, so the
/// sum side is assembled from Hom dimensions between single classes.
pub fn verify_decomposition(
    pres: &QuiverPresentation,
    u: &Indecomposable,
    v: &Indecomposable,
    predicted: &Decomposition,
    probes: &[Indecomposable],
    parallel: bool,
) -> VerifyReport {
    let tensor = tensor_rep(&rep_of(pres, u), &rep_of(pres, v));

    let mut probe_set: Vec<Indecomposable> = probes.to_vec();
    for class in predicted.entries().keys() {
        if !probe_set.contains(class) {
            probe_set.push(class.clone());
        }
    }
    probe_set.sort();
    probe_set.dedup();

    let mut rep_cache: BTreeMap<Indecomposable, Representation> = BTreeMap::new();
    for class in predicted.entries().keys().chain(probe_set.iter()) {
        rep_cache.entry(class.clone()).or_insert_with(|| rep_of(pres, class));
    }

    let mut checks = Vec::new();

    // (i) Dimension vectors.
    let mut predicted_dims = vec![0usize; pres.quiver.n_vertices()];
    for (class, &mult) in predicted.entries() {
        for (x, d) in rep_cache[class].dims().iter().enumerate() {
            predicted_dims[x] += d * mult as usize;
        }
    }
    checks.push(VerifyCheck {
        label: "dimension vector".to_string(),
        expected: format!("{:?}", tensor.dims()),
        actual: format!("{predicted_dims:?}"),
        passed: tensor.dims() == predicted_dims.as_slice(),
    });

    // (ii) Hom probes, both directions.  The tensor side solves one big
    // system per probe; the predicted side sums small class-vs-class
    // systems.
    let summands: Vec<(&Indecomposable, u64)> =
        predicted.entries().iter().map(|(c, &m)| (c, m)).collect();
    let probe_checks: Vec<Vec<VerifyCheck>> = par::map_batch(&probe_set, parallel, |p| {
        let p_rep = &rep_cache[p];
        let into_probe = hom_dim(pres, &tensor, p_rep);
        let from_probe = hom_dim(pres, p_rep, &tensor);
        let sum_into: usize = summands
            .iter()
            .map(|(c, m)| *m as usize * hom_dim(pres, &rep_cache[c], p_rep))
            .sum();
        let sum_from: usize = summands
            .iter()
            .map(|(c, m)| *m as usize * hom_dim(pres, p_rep, &rep_cache[c]))
            .sum();
        vec![
            VerifyCheck {
                label: format!("hom(tensor, probe {})", probe_label(pres, p)),
                expected: into_probe.to_string(),
                actual: sum_into.to_string(),
                passed: into_probe == sum_into,
            },
            VerifyCheck {
                label: format!("hom(probe {}, tensor)", probe_label(pres, p)),
                expected: from_probe.to_string(),
                actual: sum_from.to_string(),
                passed: from_probe == sum_from,
            },
        ]
    });
    checks.extend(probe_checks.into_iter().flatten());

    // (iii) Endomorphism dimensions.
    let endo_tensor = hom_dim(pres, &tensor, &tensor);
    let mut endo_sum = 0usize;
    for (c1, m1) in &summands {
        for (c2, m2) in &summands {
            endo_sum += (*m1 * *m2) as usize * hom_dim(pres, &rep_cache[c1], &rep_cache[c2]);
        }
    }
    checks.push(VerifyCheck {
        label: "endomorphism dimension".to_string(),
        expected: endo_tensor.to_string(),
        actual: endo_sum.to_string(),
        passed: endo_tensor == endo_sum,
    });

    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { checks, n_probes: probe_set.len(), passed }
}

fn probe_label(pres: &QuiverPresentation, class: &Indecomposable) -> String {
    class.literal(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{cg_tensor, normalize_band};
    use crate::fibre::fibre_product;
    use crate::presets;
    use crate::quiver::parse_presentation;
    use crate::shape::ShapeWord;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn shape(pres: &QuiverPresentation, text: &str) -> Shape {
        Shape::from_word(pres, ShapeWord::parse(pres, text).unwrap()).unwrap()
    }

    fn string(pres: &QuiverPresentation, text: &str) -> Indecomposable {
        Indecomposable::string(&shape(pres, text)).unwrap()
    }

    fn a2() -> QuiverPresentation {
        parse_presentation("vertex x / vertex y / arrow a: x -> y").unwrap()
    }

    #[test]
    fn string_push_down_has_near_permutation_matrices() {
        let pres = presets::gp3();
        let rep = push_down_string(&pres, &shape(&pres, "a a b^- a"));
        assert_eq!(rep.dims(), &[5]);
        let ma = rep.matrix(0);
        let ones: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .filter(|&(i, j)| !ma.get(i, j).is_zero())
            .collect();
        assert_eq!(ones, vec![(1, 0), (2, 1), (4, 3)]);
        let mb = rep.matrix(1);
        let ones: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .filter(|&(i, j)| !mb.get(i, j).is_zero())
            .collect();
        assert_eq!(ones, vec![(2, 3)]);
        assert!(rep.satisfies_relations(&pres));
    }

    #[test]
    fn vertex_push_down() {
        let pres = presets::kronecker();
        let rep = push_down_string(&pres, &shape(&pres, "@y"));
        assert_eq!(rep.dims(), &[0, 1]);
        assert!(rep.satisfies_relations(&pres));
    }

    #[test]
    fn band_push_down_follows_gamma_convention() {
        let pres = presets::kronecker();
        // Homogeneous case: all matrices are identities.
        let rep = push_down_band(&pres, &shape(&pres, "(a b^-)"), &rat(1, 1), 1);
        assert_eq!(rep.dims(), &[1, 1]);
        assert_eq!(rep.matrix(0), &RationalMatrix::identity(1));
        assert_eq!(rep.matrix(1), &RationalMatrix::identity(1));

        // γ is the first plain letter: 'a' carries the Jordan block.
        let rep = push_down_band(&pres, &shape(&pres, "(a b^-)"), &rat(5, 1), 3);
        assert_eq!(rep.dims(), &[3, 3]);
        assert_eq!(rep.matrix(0), &RationalMatrix::jordan_block(&rat(5, 1), 3));
        assert_eq!(rep.matrix(1), &RationalMatrix::identity(3));
        assert!(rep.satisfies_relations(&pres));
    }

    #[test]
    fn band_dims_scale_fibre_counts() {
        let pres = presets::gp3();
        let rep = push_down_band(&pres, &shape(&pres, "(a a b^- b^-)"), &rat(2, 3), 2);
        assert_eq!(rep.dims(), &[8]);
        assert!(rep.satisfies_relations(&pres));
    }

    #[test]
    fn push_downs_annihilate_relations() {
        for pres in [presets::gp3(), presets::kronecker(), presets::a3()] {
            for s in crate::shape::enumerate_linear_shapes(&pres, 4) {
                assert!(push_down_string(&pres, &s).satisfies_relations(&pres));
            }
            for s in crate::shape::enumerate_cyclic_shapes(&pres, 4) {
                let rep = push_down_band(&pres, &s, &rat(7, 2), 2);
                assert!(rep.satisfies_relations(&pres));
            }
        }
    }

    #[test]
    fn tensor_of_golden_pair_is_thirty_dimensional() {
        let pres = presets::gp3();
        let r1 = push_down_string(&pres, &shape(&pres, "a a b^- a"));
        let r2 = push_down_string(&pres, &shape(&pres, "b^- a a b^- b^-"));
        let t = tensor_rep(&r1, &r2);
        assert_eq!(t.dims(), &[30]);
        assert!(t.satisfies_relations(&pres));
    }

    #[test]
    fn tensor_dim_vector_matches_fibre_product_push_down() {
        let pres = presets::gp3();
        let f1 = shape(&pres, "a a b^- a");
        let f2 = shape(&pres, "a b^- a");
        let t = tensor_rep(&push_down_string(&pres, &f1), &push_down_string(&pres, &f2));
        let product = fibre_product(&f1, &f2);
        let pushed = push_down(
            &pres,
            product.quiver(),
            product.image(),
            &DomainRep::characteristic(product.quiver()),
        );
        assert_eq!(t.dims(), pushed.dims());
    }

    #[test]
    fn projection_formula_holds_on_the_nose() {
        // F_*m ⊗ n = F_*(m ⊗ F*n) as literal block matrices, for m the
        // characteristic module of the walk domain.
        let pres = presets::gp3();
        let f = shape(&pres, "a a b^-");
        let domain = f.domain_quiver();
        let chi = DomainRep::characteristic(&domain);
        for n in [
            push_down_string(&pres, &shape(&pres, "a b^- a")),
            push_down_band(&pres, &shape(&pres, "(a b^-)"), &rat(3, 1), 2),
        ] {
            let lhs = tensor_rep(&push_down(&pres, &domain, &f.morphism(), &chi), &n);
            let rhs = push_down(
                &pres,
                &domain,
                &f.morphism(),
                &chi.tensor(&pull_up(&pres, &f, &n)),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn hom_dims_for_the_one_arrow_quiver() {
        let pres = a2();
        let proj = push_down_string(&pres, &shape(&pres, "a"));
        let at_tail = push_down_string(&pres, &shape(&pres, "@x"));
        let at_head = push_down_string(&pres, &shape(&pres, "@y"));
        // The walk module is the projective cover of the tail simple:
        // maps onto the tail simple exist, maps onto the head simple don't.
        assert_eq!(hom_dim(&pres, &proj, &at_tail), 1);
        assert_eq!(hom_dim(&pres, &proj, &at_head), 0);
        assert_eq!(hom_dim(&pres, &at_head, &proj), 1);
        assert_eq!(hom_dim(&pres, &at_tail, &proj), 0);
        assert_eq!(hom_dim(&pres, &proj, &proj), 1);
        assert_eq!(hom_dim(&pres, &at_tail, &at_tail), 1);
        assert_eq!(hom_dim(&pres, &at_tail, &at_head), 0);
    }

    #[test]
    fn hom_dim_is_additive_over_direct_sums() {
        let pres = presets::gp3();
        let a = push_down_string(&pres, &shape(&pres, "a"));
        let b = push_down_string(&pres, &shape(&pres, "a a b^-"));
        let c = push_down_string(&pres, &shape(&pres, "b b"));
        let sum = direct_sum_rep(&pres, &[(&a, 2), (&b, 1)]);
        assert_eq!(sum.dimension(), 2 * 2 + 4);
        assert!(sum.satisfies_relations(&pres));
        assert_eq!(
            hom_dim(&pres, &sum, &c),
            2 * hom_dim(&pres, &a, &c) + hom_dim(&pres, &b, &c)
        );
        assert_eq!(
            hom_dim(&pres, &c, &sum),
            2 * hom_dim(&pres, &c, &a) + hom_dim(&pres, &c, &b)
        );
        // Empty sum: the zero representation.
        let zero = direct_sum_rep(&pres, &[]);
        assert_eq!(zero.dimension(), 0);
        assert_eq!(hom_dim(&pres, &zero, &c), 0);
    }

    #[test]
    fn jordan_type_of_jordan_blocks() {
        let j = RationalMatrix::jordan_block(&rat(2, 1), 3);
        assert_eq!(jordan_type(&j, &rat(2, 1)), vec![3]);
        assert_eq!(jordan_type(&j, &rat(5, 1)), Vec::<u64>::new());

        let k = RationalMatrix::jordan_block(&rat(3, 1), 2)
            .kronecker(&RationalMatrix::jordan_block(&rat(5, 1), 3));
        assert_eq!(jordan_type(&k, &rat(15, 1)), vec![4, 2]);

        // Reciprocal eigenvalues: J_2(3) ⊗ J_{1/2}(3) at eigenvalue 1.
        let k = RationalMatrix::jordan_block(&rat(2, 1), 3)
            .kronecker(&RationalMatrix::jordan_block(&rat(1, 2), 3));
        assert_eq!(jordan_type(&k, &rat(1, 1)), vec![5, 3, 1]);
    }

    #[test]
    fn verify_accepts_the_golden_prediction_and_rejects_a_perturbation() {
        let pres = presets::gp3();
        let u = string(&pres, "a a b^- a");
        let v = string(&pres, "b^- a a b^- b^-");
        let predicted = cg_tensor(&pres, &u, &v).unwrap();
        let report = verify_decomposition(&pres, &u, &v, &predicted, &[], false);
        assert!(report.passed, "{:#?}", report.checks);

        // Drop one vertex-string summand: the dimension check must fail.
        let mut perturbed = Decomposition::new();
        for (class, &mult) in predicted.entries() {
            let m = if class == &string(&pres, "@x") { mult - 1 } else { mult };
            perturbed.add(class.clone(), m);
        }
        let report = verify_decomposition(&pres, &u, &v, &perturbed, &[], false);
        assert!(!report.passed);
        assert!(report.checks.iter().any(|c| c.label == "dimension vector" && !c.passed));
    }

    #[test]
    fn verify_accepts_same_shape_band_products() {
        let pres = presets::kronecker();
        let word = ShapeWord::parse(&pres, "(a b^-)").unwrap();
        let b1 = normalize_band(&pres, &word, rat(2, 1), 2).unwrap();
        let b2 = normalize_band(&pres, &word, rat(3, 1), 2).unwrap();
        let predicted = cg_tensor(&pres, &b1, &b2).unwrap();
        // Probe with strings and a band of a different eigenvalue too.
        let probes = vec![
            string(&pres, "a"),
            string(&pres, "a b^-"),
            normalize_band(&pres, &word, rat(6, 1), 1).unwrap(),
            normalize_band(&pres, &word, rat(5, 1), 1).unwrap(),
        ];
        let report = verify_decomposition(&pres, &b1, &b2, &predicted, &probes, false);
        assert!(report.passed, "{:#?}", report.checks);
        assert!(report.n_probes >= 5);
    }

    #[test]
    fn verify_catches_wrong_band_eigenvalue() {
        let pres = presets::kronecker();
        let word = ShapeWord::parse(&pres, "(a b^-)").unwrap();
        let b1 = normalize_band(&pres, &word, rat(2, 1), 1).unwrap();
        let b2 = normalize_band(&pres, &word, rat(3, 1), 1).unwrap();
        // Correct answer: B(6, 1).  Wrong prediction: B(5, 1) — dimensions
        // match, so only the Hom probes can catch it.
        let mut wrong = Decomposition::new();
        wrong.add(normalize_band(&pres, &word, rat(5, 1), 1).unwrap(), 1);
        let probes = vec![normalize_band(&pres, &word, rat(6, 1), 1).unwrap()];
        let report = verify_decomposition(&pres, &b1, &b2, &wrong, &probes, false);
        assert!(!report.passed);
        let dim_check = report.checks.iter().find(|c| c.label == "dimension vector").unwrap();
        assert!(dim_check.passed);
    }
}
