//! Fibre products of shapes and their decomposition into connected
//! components.
//!
//! Given two shapes over one presentation, the fibre product pairs up domain
//! vertices with equal image vertex and domain arrows with equal image
//! arrow.  Strictness of the inputs forces every connected component of the
//! product to be again a linear or cyclic walk, wrapped strictly into both
//! factors by the projections — these components are exactly the summands
//! appearing in tensor product decompositions.

use std::collections::BTreeMap;

use crate::quiver::{ArrowIx, Quiver, VertexIx};
use crate::shape::{Letter, QuiverMorphism, Shape, ShapeKind, ShapeWord};

/// The fibre product of two shapes: paired vertices and arrows, the product
/// quiver, both projections, and the induced wrapping into the presentation
/// quiver.
#[derive(Debug, Clone)]
pub struct FibreProduct {
    pres_fp: u64,
    /// Vertex pairs (index into first domain, index into second), sorted.
    vertices: Vec<(VertexIx, VertexIx)>,
    /// Arrow pairs, sorted; arrow `k` of the product quiver is `arrows[k]`.
    arrows: Vec<(ArrowIx, ArrowIx)>,
    quiver: Quiver,
    proj1: QuiverMorphism,
    proj2: QuiverMorphism,
    /// The wrapping of the product into the presentation quiver (first
    /// image composed with the first projection; the second composition is
    /// equal by construction).
    image: QuiverMorphism,
    /// Whether the inputs were literally the same shape (same word), which
    /// is what makes diagonal detection meaningful.
    inputs_equal: bool,
}

/// Classification of a connected component of a fibre product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentClass {
    /// The component is a chain (this includes the diagonal of two equal
    /// linear shapes, which behaves like any other linear component).
    Linear,
    /// The full diagonal of a product of a cyclic shape with itself.
    Diagonal,
    /// A cyclic component other than the diagonal; appears only for
    /// isomorphic cyclic inputs that were not normalized to equal words.
    OtherCyclic,
}

/// One connected component, cut out of the product as a shape of its own.
#[derive(Debug, Clone)]
pub struct Component {
    pub class: ComponentClass,
    /// Product-vertex indices in walk order.
    pub vertices: Vec<usize>,
    /// The component as a shape over the presentation.
    pub shape: Shape,
    /// Restriction of the first projection to the component's domain.
    pub proj1: QuiverMorphism,
    /// Restriction of the second projection.
    pub proj2: QuiverMorphism,
}

/// All components of a fibre product, ordered by minimal contained vertex
/// pair.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub components: Vec<Component>,
}

impl FibreProduct {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[(VertexIx, VertexIx)] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(ArrowIx, ArrowIx)] {
        &self.arrows
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn proj1(&self) -> &QuiverMorphism {
        &self.proj1
    }

    pub fn proj2(&self) -> &QuiverMorphism {
        &self.proj2
    }

    pub fn image(&self) -> &QuiverMorphism {
        &self.image
    }

    pub fn pres_fingerprint(&self) -> u64 {
        self.pres_fp
    }
}

/// Builds the fibre product of two shapes over the same presentation.
///
/// Vertices and arrows are ordered lexicographically on their index pairs,
/// so the construction is deterministic.
pub fn fibre_product(f1: &Shape, f2: &Shape) -> FibreProduct {
    assert_eq!(
        f1.pres_fingerprint(),
        f2.pres_fingerprint(),
        "fibre products need shapes over one presentation"
    );
    let (m1, m2) = (f1.morphism(), f2.morphism());
    let (d1, d2) = (f1.domain_quiver(), f2.domain_quiver());

    let mut vertices = Vec::new();
    for u in 0..d1.n_vertices() {
        for v in 0..d2.n_vertices() {
            if m1.vertex_map[u] == m2.vertex_map[v] {
                vertices.push((u, v));
            }
        }
    }
    let vertex_id: BTreeMap<(usize, usize), usize> =
        vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let mut arrows = Vec::new();
    for a in 0..d1.n_arrows() {
        for b in 0..d2.n_arrows() {
            if m1.arrow_map[a] == m2.arrow_map[b] {
                arrows.push((a, b));
            }
        }
    }

    let endpoint_pairs: Vec<(usize, usize)> = arrows
        .iter()
        .map(|&(a, b)| {
            let (aa, ab) = (d1.arrow(a), d2.arrow(b));
            (vertex_id[&(aa.tail, ab.tail)], vertex_id[&(aa.head, ab.head)])
        })
        .collect();
    let quiver = Quiver::synthetic(vertices.len(), &endpoint_pairs);

    let proj1 = QuiverMorphism {
        vertex_map: vertices.iter().map(|&(u, _)| u).collect(),
        arrow_map: arrows.iter().map(|&(a, _)| a).collect(),
    };
    let proj2 = QuiverMorphism {
        vertex_map: vertices.iter().map(|&(_, v)| v).collect(),
        arrow_map: arrows.iter().map(|&(_, b)| b).collect(),
    };
    let image = QuiverMorphism {
        vertex_map: proj1.vertex_map.iter().map(|&u| m1.vertex_map[u]).collect(),
        arrow_map: proj1.arrow_map.iter().map(|&a| m1.arrow_map[a]).collect(),
    };

    FibreProduct {
        pres_fp: f1.pres_fingerprint(),
        vertices,
        arrows,
        quiver,
        proj1,
        proj2,
        image,
        inputs_equal: f1.word() == f2.word(),
    }
}

/// Splits the product into connected components and classifies each one.
///
/// Every component of a fibre product of strict shapes is a chain or a
/// cycle; anything else signals an upstream strictness bug and panics.
pub fn connected_components(pres: &crate::quiver::QuiverPresentation, fp: &FibreProduct) -> ComponentReport {
    assert_eq!(pres.fingerprint(), fp.pres_fp, "component report needs the same presentation");
    let n = fp.n_vertices();

    // Union-find over product vertices, arrows as edges.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for a in 0..fp.n_arrows() {
        let arr = fp.quiver.arrow(a);
        let (rt, rh) = (find(&mut parent, arr.tail), find(&mut parent, arr.head));
        if rt != rh {
            parent[rt.max(rh)] = rt.min(rh);
        }
    }

    let mut members: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        members.entry(r).or_default().0.push(v);
    }
    for a in 0..fp.n_arrows() {
        let r = find(&mut parent, fp.quiver.arrow(a).tail);
        members.get_mut(&r).expect("arrow endpoint was indexed").1.push(a);
    }

    let diagonal_count = fp.vertices.iter().filter(|&&(u, v)| u == v).count();

    let mut components = Vec::new();
    for (_, (verts, arcs)) in members {
        components.push(cut_component(pres, fp, &verts, &arcs, diagonal_count));
    }
    // BTreeMap iteration is by root, which is the minimal contained vertex.
    ComponentReport { components }
}

/// Extracts one component as a walk shape with restricted projections.
fn cut_component(
    pres: &crate::quiver::QuiverPresentation,
    fp: &FibreProduct,
    verts: &[usize],
    arcs: &[usize],
    diagonal_count: usize,
) -> Component {
    let q = &fp.quiver;

    // Incidence within the component: (arrow, forward, neighbour).
    let mut incident: BTreeMap<usize, Vec<(usize, bool, usize)>> = BTreeMap::new();
    for &v in verts {
        incident.insert(v, Vec::new());
    }
    for &a in arcs {
        let arr = q.arrow(a);
        incident.get_mut(&arr.tail).unwrap().push((a, true, arr.head));
        incident.get_mut(&arr.head).unwrap().push((a, false, arr.tail));
    }
    for adj in incident.values() {
        assert!(adj.len() <= 2, "fibre component is neither linear nor cyclic");
    }
    let is_cycle = !arcs.is_empty() && incident.values().all(|adj| adj.len() == 2);
    if !is_cycle {
        let ends = incident.values().filter(|adj| adj.len() <= 1).count();
        assert!(
            arcs.len() + 1 == verts.len() && ends >= 1,
            "fibre component is neither linear nor cyclic"
        );
    } else {
        assert_eq!(arcs.len(), verts.len(), "fibre component is neither linear nor cyclic");
    }

    // Deterministic walk: chains start at their minimal endpoint, cycles at
    // their minimal vertex stepping through the smaller incident arrow.
    let start = if is_cycle {
        *verts.iter().min().unwrap()
    } else {
        *verts.iter().filter(|v| incident[v].len() <= 1).min().unwrap()
    };

    let mut walk_vertices = vec![start];
    let mut letters: Vec<Letter> = Vec::new();
    let mut proj1_arrows = Vec::new();
    let mut proj2_arrows = Vec::new();
    let mut used = vec![false; q.n_arrows()];
    let mut at = start;
    loop {
        let mut step = incident[&at]
            .iter()
            .filter(|&&(a, _, _)| !used[a])
            .collect::<Vec<_>>();
        step.sort_by_key(|&&(a, forward, _)| (a, !forward));
        let Some(&&(a, forward, next)) = step.first() else { break };
        used[a] = true;
        let (p1, p2) = fp.arrows[a];
        letters.push(Letter { arrow: fp.image.arrow_map[a], inverted: !forward });
        proj1_arrows.push(p1);
        proj2_arrows.push(p2);
        if is_cycle && next == start {
            break;
        }
        walk_vertices.push(next);
        at = next;
    }
    assert_eq!(letters.len(), arcs.len(), "walk covered the whole component");

    let word = if letters.is_empty() {
        ShapeWord::Vertex(fp.image.vertex_map[start])
    } else if is_cycle {
        ShapeWord::Cycle(letters)
    } else {
        ShapeWord::Line(letters)
    };
    let shape = Shape::from_word(pres, word).expect("fibre component is a valid shape");

    let proj1 = QuiverMorphism {
        vertex_map: walk_vertices.iter().map(|&v| fp.proj1.vertex_map[v]).collect(),
        arrow_map: proj1_arrows,
    };
    let proj2 = QuiverMorphism {
        vertex_map: walk_vertices.iter().map(|&v| fp.proj2.vertex_map[v]).collect(),
        arrow_map: proj2_arrows,
    };

    let class = if shape.kind() == ShapeKind::Cyclic {
        let all_diagonal = fp.inputs_equal
            && walk_vertices.len() == diagonal_count
            && walk_vertices.iter().all(|&v| {
                let (u, w) = fp.vertices[v];
                u == w
            });
        if all_diagonal { ComponentClass::Diagonal } else { ComponentClass::OtherCyclic }
    } else {
        ComponentClass::Linear
    };

    Component { class, vertices: walk_vertices, shape, proj1, proj2 }
}

/// The multiset of linear components of the fibre product of two shapes,
/// keyed by canonical word.
pub fn linear_components(
    pres: &crate::quiver::QuiverPresentation,
    f1: &Shape,
    f2: &Shape,
) -> BTreeMap<ShapeWord, u64> {
    let fp = fibre_product(f1, f2);
    let report = connected_components(pres, &fp);
    let mut out = BTreeMap::new();
    for c in report.components {
        if c.shape.kind() == ShapeKind::Linear {
            *out.entry(c.shape.canonical_word()).or_insert(0) += 1;
        }
    }
    out
}
