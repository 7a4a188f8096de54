//! Walk shapes over a presentation: the combinatorial skeletons of string
//! and band modules.
//!
//! A *shape* is a linear or cyclic walk quiver together with a strict
//! wrapping into the presentation quiver, encoded as a word of letters.  Each
//! letter names an arrow of the presentation, plain when the walk traverses
//! it forwards and inverted (`a^-`) when backwards.  Validity means: the
//! letters compose as a walk, the walk never immediately backtracks
//! (strictness), every maximal directed run maps to an admissible path
//! (compatibility), and cyclic shapes admit no nontrivial symmetry.
//!
//! The module also counts *factorizations* `[F : F']`: strict wrappings `G`
//! of one shape's domain into another's with `F' = F ∘ G`.  These counts
//! drive both the ring structure in [`crate::repring`] and the subshape
//! order used by tensor ideals.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::quiver::{ArrowIx, Quiver, QuiverPresentation, VertexIx};

/// One step of a walk: an arrow of the presentation, traversed forwards
/// (`inverted = false`) or backwards.
///
/// Letters order by arrow index first (presentation arrows are interned in
/// name order, so this is name order) with the inverted letter directly
/// after its plain twin: `a < a^- < b < b^-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: ArrowIx,
    pub inverted: bool,
}

impl Letter {
    pub fn plain(arrow: ArrowIx) -> Self {
        Letter { arrow, inverted: false }
    }

    pub fn inverse(arrow: ArrowIx) -> Self {
        Letter { arrow, inverted: true }
    }

    pub fn flipped(self) -> Self {
        Letter { arrow: self.arrow, inverted: !self.inverted }
    }

    /// Image vertex where the walk enters this letter.
    fn start(self, q: &Quiver) -> VertexIx {
        let a = q.arrow(self.arrow);
        if self.inverted { a.head } else { a.tail }
    }

    /// Image vertex where the walk leaves this letter.
    fn end(self, q: &Quiver) -> VertexIx {
        let a = q.arrow(self.arrow);
        if self.inverted { a.tail } else { a.head }
    }
}

/// A walk word: the serialized form of a shape.
///
/// `Vertex(v)` is the empty word based at vertex `v` (written `@v`);
/// `Line` words are linear walks; `Cycle` words are cyclic walks (written in
/// parentheses).  Words order with vertex words first (by vertex), then
/// linear words lexicographically, then cyclic words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ShapeWord {
    Vertex(VertexIx),
    Line(Vec<Letter>),
    Cycle(Vec<Letter>),
}

impl Ord for ShapeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        use ShapeWord::*;
        match (self, other) {
            (Vertex(a), Vertex(b)) => a.cmp(b),
            (Vertex(_), _) => Ordering::Less,
            (_, Vertex(_)) => Ordering::Greater,
            (Line(x), Line(y)) => x.cmp(y),
            (Line(_), Cycle(_)) => Ordering::Less,
            (Cycle(_), Line(_)) => Ordering::Greater,
            (Cycle(x), Cycle(y)) => x.cmp(y),
        }
    }
}

impl PartialOrd for ShapeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reverses a letter sequence, flipping every direction marker: the same
/// walk read from the other end.
pub fn reversed_word(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.flipped()).collect()
}

fn rotated(letters: &[Letter], by: usize) -> Vec<Letter> {
    let n = letters.len();
    (0..n).map(|i| letters[(i + by) % n]).collect()
}

impl ShapeWord {
    pub fn len(&self) -> usize {
        self.letters().len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters().is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, ShapeWord::Cycle(_))
    }

    pub fn letters(&self) -> &[Letter] {
        match self {
            ShapeWord::Vertex(_) => &[],
            ShapeWord::Line(ls) | ShapeWord::Cycle(ls) => ls,
        }
    }

    /// Canonical form plus a flag telling whether the orientation had to be
    /// reversed to reach it.
    ///
    /// Linear: the lexicographically smaller of the word and its reversal.
    /// Cyclic: the least rotation over both orientations; ties prefer the
    /// given orientation.  Vertex words are already canonical.
    pub fn canonicalize(&self) -> (ShapeWord, bool) {
        match self {
            ShapeWord::Vertex(_) => (self.clone(), false),
            ShapeWord::Line(ls) => {
                let rev = reversed_word(ls);
                if rev < *ls {
                    (ShapeWord::Line(rev), true)
                } else {
                    (ShapeWord::Line(ls.clone()), false)
                }
            }
            ShapeWord::Cycle(ls) => {
                let n = ls.len();
                let best_fwd = (0..n).map(|r| rotated(ls, r)).min().unwrap();
                let rev = reversed_word(ls);
                let best_rev = (0..n).map(|r| rotated(&rev, r)).min().unwrap();
                if best_rev < best_fwd {
                    (ShapeWord::Cycle(best_rev), true)
                } else {
                    (ShapeWord::Cycle(best_fwd), false)
                }
            }
        }
    }

    pub fn canonical(&self) -> ShapeWord {
        self.canonicalize().0
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Renders the word using the presentation's arrow and vertex names.
    pub fn display(&self, pres: &QuiverPresentation) -> String {
        let q = &pres.quiver;
        let letter_str = |l: &Letter| {
            if l.inverted {
                format!("{}^-", q.arrow(l.arrow).name)
            } else {
                q.arrow(l.arrow).name.clone()
            }
        };
        match self {
            ShapeWord::Vertex(v) => format!("@{}", q.vertex_name(*v)),
            ShapeWord::Line(ls) => {
                ls.iter().map(letter_str).collect::<Vec<_>>().join(" ")
            }
            ShapeWord::Cycle(ls) => {
                let mut s = String::from("(");
                let _ = write!(s, "{}", ls.iter().map(letter_str).collect::<Vec<_>>().join(" "));
                s.push(')');
                s
            }
        }
    }

    /// Parses the word grammar: `@vertex` for empty words, space-separated
    /// letters with an optional `^-` suffix, the whole word wrapped in
    /// parentheses for cyclic walks.
    pub fn parse(pres: &QuiverPresentation, text: &str) -> Result<ShapeWord, ShapeError> {
        let q = &pres.quiver;
        let trimmed = text.trim();
        if let Some(name) = trimmed.strip_prefix('@') {
            let v = q
                .vertex_index(name.trim())
                .ok_or_else(|| ShapeError::UnknownVertex(name.trim().to_string()))?;
            return Ok(ShapeWord::Vertex(v));
        }
        let (body, cyclic) = if trimmed.starts_with('(') {
            let inner = trimmed
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| ShapeError::WordSyntax(text.to_string()))?;
            (inner, true)
        } else {
            (trimmed, false)
        };
        let mut letters = Vec::new();
        for tok in body.split_whitespace() {
            let (name, inverted) = match tok.strip_suffix("^-") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let arrow = q
                .arrow_index(name)
                .ok_or_else(|| ShapeError::UnknownArrow(name.to_string()))?;
            letters.push(Letter { arrow, inverted });
        }
        if letters.is_empty() {
            return Err(ShapeError::WordSyntax(text.to_string()));
        }
        Ok(if cyclic { ShapeWord::Cycle(letters) } else { ShapeWord::Line(letters) })
    }
}

/// Errors raised while building a [`Shape`] from a word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("cannot parse shape word `{0}`")]
    WordSyntax(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("letters {0} and {1} do not compose as a walk")]
    NonComposableWalk(usize, usize),
    #[error("letters {0} and {1} form an immediate return: the wrapping would not be strict")]
    StrictnessViolation(usize, usize),
    #[error("directed run `{0}` maps to an inadmissible path")]
    IncompatibleImage(String),
    #[error("cyclic word has a nontrivial automorphism")]
    NontrivialAutomorphism,
    #[error("input was built over a different presentation")]
    PresentationMismatch,
}

/// A validated shape: a linear or cyclic walk domain with a strict,
/// compatible wrapping into the presentation quiver.
///
/// Cyclic shapes additionally have trivial automorphism group, which is what
/// makes them usable as band supports.  The shape remembers the exact word
/// it was built from (its domain is that walk); [`Shape::canonical_word`]
/// gives the isomorphism-class representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    word: ShapeWord,
    /// Image vertices along the walk: `n + 1` entries for a linear word of
    /// length `n`, `n` entries for a cyclic word, one entry for a vertex
    /// word.
    images: Vec<VertexIx>,
    pres_fp: u64,
}

/// Kind tag for shapes and fibre-product components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShapeKind {
    Linear,
    Cyclic,
}

impl Shape {
    /// Builds and fully validates a shape from a walk word
    /// (the `shape_from_word` operation).
    pub fn from_word(pres: &QuiverPresentation, word: ShapeWord) -> Result<Shape, ShapeError> {
        let q = &pres.quiver;
        let images = walk_images(q, &word)?;
        check_reduced(&word)?;
        check_compatible(pres, &word)?;
        if let ShapeWord::Cycle(_) = &word {
            if !word_has_trivial_automorphisms(&word) {
                return Err(ShapeError::NontrivialAutomorphism);
            }
        }
        Ok(Shape { word, images, pres_fp: pres.fingerprint() })
    }

    pub fn kind(&self) -> ShapeKind {
        match self.word {
            ShapeWord::Cycle(_) => ShapeKind::Cyclic,
            _ => ShapeKind::Linear,
        }
    }

    /// The word the shape was built from.
    pub fn word(&self) -> &ShapeWord {
        &self.word
    }

    /// Canonical representative of the shape's isomorphism class
    /// (the `word_of_shape` operation).
    pub fn canonical_word(&self) -> ShapeWord {
        self.word.canonical()
    }

    /// Image vertices along the walk.
    pub fn images(&self) -> &[VertexIx] {
        &self.images
    }

    pub fn pres_fingerprint(&self) -> u64 {
        self.pres_fp
    }

    pub fn n_domain_vertices(&self) -> usize {
        self.images.len()
    }

    /// The walk domain as an explicit quiver.  Vertices are numbered along
    /// the walk; arrow `i` realizes letter `i` (tail/head swapped when the
    /// letter is inverted).
    pub fn domain_quiver(&self) -> Quiver {
        let n = self.images.len();
        let arrows: Vec<(usize, usize)> = match &self.word {
            ShapeWord::Vertex(_) => Vec::new(),
            ShapeWord::Line(ls) => ls
                .iter()
                .enumerate()
                .map(|(i, l)| if l.inverted { (i + 1, i) } else { (i, i + 1) })
                .collect(),
            ShapeWord::Cycle(ls) => ls
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let j = (i + 1) % ls.len();
                    if l.inverted { (j, i) } else { (i, j) }
                })
                .collect(),
        };
        Quiver::synthetic(n, &arrows)
    }

    /// The wrapping into the presentation quiver as explicit vertex and
    /// arrow maps over [`Shape::domain_quiver`].
    pub fn morphism(&self) -> QuiverMorphism {
        QuiverMorphism {
            vertex_map: self.images.clone(),
            arrow_map: self.word.letters().iter().map(|l| l.arrow).collect(),
        }
    }

    /// Number of domain vertices lying over each presentation vertex: the
    /// dimension vector of the associated string module (bands scale it by
    /// their Jordan size).
    pub fn dim_vector(&self, pres: &QuiverPresentation) -> Vec<usize> {
        let mut dims = vec![0usize; pres.quiver.n_vertices()];
        for &v in &self.images {
            dims[v] += 1;
        }
        dims
    }
}

/// Computes the image vertices of a walk word, checking composability.
fn walk_images(q: &Quiver, word: &ShapeWord) -> Result<Vec<VertexIx>, ShapeError> {
    match word {
        ShapeWord::Vertex(v) => {
            if *v >= q.n_vertices() {
                return Err(ShapeError::UnknownVertex(v.to_string()));
            }
            Ok(vec![*v])
        }
        ShapeWord::Line(ls) => {
            let mut images = Vec::with_capacity(ls.len() + 1);
            images.push(ls[0].start(q));
            for (i, l) in ls.iter().enumerate() {
                if l.start(q) != images[i] {
                    return Err(ShapeError::NonComposableWalk(i, i + 1));
                }
                images.push(l.end(q));
            }
            Ok(images)
        }
        ShapeWord::Cycle(ls) => {
            let n = ls.len();
            let mut images = Vec::with_capacity(n);
            images.push(ls[0].start(q));
            for (i, l) in ls.iter().enumerate() {
                if l.start(q) != images[i] {
                    return Err(ShapeError::NonComposableWalk(i, (i + 1) % n));
                }
                if i + 1 < n {
                    images.push(l.end(q));
                }
            }
            if ls[n - 1].end(q) != images[0] {
                return Err(ShapeError::NonComposableWalk(n - 1, 0));
            }
            Ok(images)
        }
    }
}

/// Rejects immediate returns `x x^-` / `x^- x` (cyclically for cycles):
/// exactly the pairs of adjacent walk arrows that would violate strictness.
fn check_reduced(word: &ShapeWord) -> Result<(), ShapeError> {
    let ls = word.letters();
    for i in 0..ls.len().saturating_sub(1) {
        if ls[i + 1] == ls[i].flipped() {
            return Err(ShapeError::StrictnessViolation(i, i + 1));
        }
    }
    if let ShapeWord::Cycle(ls) = word {
        let n = ls.len();
        if n >= 1 && ls[0] == ls[n - 1].flipped() {
            return Err(ShapeError::StrictnessViolation(n - 1, 0));
        }
    }
    Ok(())
}

/// Image of a maximal directed run in application order: a run of plain
/// letters applies left to right, a run of inverted letters applies right to
/// left.
fn run_application_order(run: &[Letter]) -> Vec<ArrowIx> {
    if run.is_empty() {
        return Vec::new();
    }
    if run[0].inverted {
        run.iter().rev().map(|l| l.arrow).collect()
    } else {
        run.iter().map(|l| l.arrow).collect()
    }
}

fn check_run(pres: &QuiverPresentation, run: &[Letter]) -> Result<(), ShapeError> {
    let seq = run_application_order(run);
    if !pres.relations.sequence_is_admissible(&seq) {
        let names: Vec<String> = run
            .iter()
            .map(|l| {
                let n = pres.quiver.arrow(l.arrow).name.clone();
                if l.inverted { format!("{n}^-") } else { n }
            })
            .collect();
        return Err(ShapeError::IncompatibleImage(names.join(" ")));
    }
    Ok(())
}

/// Compatibility check: every maximal directed run of the walk must map to
/// an admissible path.  Runs of a cyclic word wrap around; a cyclic word
/// with no direction change winds forever, so its run is checked inside a
/// periodic unrolling long enough to surface any relation generator.
fn check_compatible(pres: &QuiverPresentation, word: &ShapeWord) -> Result<(), ShapeError> {
    let ls = word.letters();
    if ls.is_empty() {
        return Ok(());
    }
    match word {
        ShapeWord::Cycle(_) => {
            let n = ls.len();
            let change = (0..n).find(|&i| ls[i].inverted != ls[(i + n - 1) % n].inverted);
            match change {
                None => {
                    // Fully directed cycle: a generator occurs in the
                    // infinite winding iff it occurs within this many copies.
                    let copies = pres.relations.max_generator_len() / n + 2;
                    let mut seq = Vec::with_capacity(n * copies);
                    for _ in 0..copies {
                        seq.extend(run_application_order(ls));
                    }
                    if !pres.relations.sequence_is_admissible(&seq) {
                        return Err(ShapeError::IncompatibleImage(word.display(pres)));
                    }
                    Ok(())
                }
                Some(start) => {
                    let rot = rotated(ls, start);
                    for run in split_runs(&rot) {
                        check_run(pres, run)?;
                    }
                    Ok(())
                }
            }
        }
        _ => {
            for run in split_runs(ls) {
                check_run(pres, run)?;
            }
            Ok(())
        }
    }
}

fn split_runs(ls: &[Letter]) -> Vec<&[Letter]> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..ls.len() {
        if ls[i].inverted != ls[i - 1].inverted {
            runs.push(&ls[start..i]);
            start = i;
        }
    }
    runs.push(&ls[start..]);
    runs
}

/// Word-level automorphism test for cyclic words.
///
/// The symmetries of the cycle graph that can preserve arrow directions are
/// the rotations (fix each letter position-shifted) and the reflections
/// (reverse the letter order and flip every direction).  The word has a
/// nontrivial automorphism iff some nonzero rotation fixes it or some
/// reflection does.
fn word_has_trivial_automorphisms(word: &ShapeWord) -> bool {
    let ShapeWord::Cycle(ls) = word else { return true };
    let n = ls.len();
    for r in 1..n {
        if (0..n).all(|i| ls[(i + r) % n] == ls[i]) {
            return false;
        }
    }
    let rev = reversed_word(ls);
    for r in 0..n {
        if rotated(&rev, r) == *ls {
            return false;
        }
    }
    true
}

/// Public wrapper: trivial for linear shapes, the dihedral check for cycles.
pub fn has_trivial_automorphisms(shape: &Shape) -> bool {
    word_has_trivial_automorphisms(shape.word())
}

/// True when the two shapes are isomorphic over the identity of the
/// presentation quiver: same kind and same canonical word.
pub fn shapes_isomorphic(a: &Shape, b: &Shape) -> bool {
    a.pres_fingerprint() == b.pres_fingerprint() && a.canonical_word() == b.canonical_word()
}

/// Explicit vertex and arrow maps between two quivers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverMorphism {
    pub vertex_map: Vec<VertexIx>,
    pub arrow_map: Vec<ArrowIx>,
}

impl QuiverMorphism {
    /// Checks commutation with tails and heads.
    pub fn is_morphism(&self, dom: &Quiver, cod: &Quiver) -> bool {
        self.vertex_map.len() == dom.n_vertices()
            && self.arrow_map.len() == dom.n_arrows()
            && self.vertex_map.iter().all(|&v| v < cod.n_vertices())
            && (0..dom.n_arrows()).all(|a| {
                let da = dom.arrow(a);
                let ca = cod.arrow(self.arrow_map[a]);
                self.vertex_map[da.tail] == ca.tail && self.vertex_map[da.head] == ca.head
            })
    }

    /// A morphism is a wrapping when it is injective on every set of
    /// parallel arrows: distinct arrows with the same tail and head must
    /// have distinct images.
    pub fn is_wrapping(&self, dom: &Quiver, cod: &Quiver) -> bool {
        if !self.is_morphism(dom, cod) {
            return false;
        }
        for a in 0..dom.n_arrows() {
            for b in a + 1..dom.n_arrows() {
                let (aa, ab) = (dom.arrow(a), dom.arrow(b));
                if aa.tail == ab.tail && aa.head == ab.head && self.arrow_map[a] == self.arrow_map[b]
                {
                    return false;
                }
            }
        }
        true
    }

    /// Strictness: distinct arrows with equal image must have distinct tails
    /// AND distinct heads.
    pub fn is_strict(&self, dom: &Quiver, cod: &Quiver) -> bool {
        if !self.is_wrapping(dom, cod) {
            return false;
        }
        for a in 0..dom.n_arrows() {
            for b in a + 1..dom.n_arrows() {
                if self.arrow_map[a] == self.arrow_map[b] {
                    let (aa, ab) = (dom.arrow(a), dom.arrow(b));
                    if aa.tail == ab.tail || aa.head == ab.head {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// One factorization of `fprime` through `f`: a strict wrapping of
/// `fprime`'s domain into `f`'s domain commuting with the images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factorization {
    pub vertex_map: Vec<VertexIx>,
    pub arrow_map: Vec<ArrowIx>,
}

/// The set `[F : F']` of all factorizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    pub maps: Vec<Factorization>,
}

impl FactorizationSet {
    pub fn count(&self) -> usize {
        self.maps.len()
    }
}

/// Enumerates the set `[F : F']` of strict wrappings `G` of `fprime`'s
/// domain into `f`'s domain with `F' = F ∘ G`, by anchored walk matching:
/// anchor the first domain vertex on every fibre vertex and propagate along
/// the walk, branching where the target offers several arrows.
pub fn factorizations(f: &Shape, fprime: &Shape) -> FactorizationSet {
    assert_eq!(
        f.pres_fingerprint(),
        fprime.pres_fingerprint(),
        "factorizations need shapes over one presentation"
    );
    let target = f.domain_quiver();
    let source = fprime.domain_quiver();
    let t_images = f.morphism();
    let s_images = fprime.morphism();

    let mut found: Vec<Factorization> = Vec::new();
    let nv = source.n_vertices();
    let na = source.n_arrows();

    // Arrows of the source in an order where each touches an already-placed
    // vertex (walk domains: index order works, vertex 0 first).
    for anchor in 0..target.n_vertices() {
        if t_images.vertex_map[anchor] != s_images.vertex_map[0] {
            continue;
        }
        // Partial assignment: vertex_map entries, usize::MAX = unassigned.
        let mut vmap = vec![usize::MAX; nv];
        vmap[0] = anchor;
        let mut amap = vec![usize::MAX; na];
        search(&source, &target, &t_images, &s_images, 0, &mut vmap, &mut amap, &mut found);
    }
    found.sort();
    found.dedup();
    FactorizationSet { maps: found }
}

#[allow(clippy::too_many_arguments)]
fn search(
    source: &Quiver,
    target: &Quiver,
    t_images: &QuiverMorphism,
    s_images: &QuiverMorphism,
    next_arrow: usize,
    vmap: &mut Vec<usize>,
    amap: &mut Vec<usize>,
    found: &mut Vec<Factorization>,
) {
    if next_arrow == source.n_arrows() {
        let cand = QuiverMorphism { vertex_map: vmap.clone(), arrow_map: amap.clone() };
        if cand.is_strict(source, target) {
            found.push(Factorization { vertex_map: vmap.clone(), arrow_map: amap.clone() });
        }
        return;
    }
    let sa = source.arrow(next_arrow);
    let want_image = s_images.arrow_map[next_arrow];
    for ta in 0..target.n_arrows() {
        if t_images.arrow_map[ta] != want_image {
            continue;
        }
        let tarr = target.arrow(ta);
        let tail_ok = vmap[sa.tail] == usize::MAX || vmap[sa.tail] == tarr.tail;
        let head_ok = vmap[sa.head] == usize::MAX || vmap[sa.head] == tarr.head;
        if !tail_ok || !head_ok {
            continue;
        }
        let (old_tail, old_head) = (vmap[sa.tail], vmap[sa.head]);
        vmap[sa.tail] = tarr.tail;
        vmap[sa.head] = tarr.head;
        amap[next_arrow] = ta;
        search(source, target, t_images, s_images, next_arrow + 1, vmap, amap, found);
        amap[next_arrow] = usize::MAX;
        vmap[sa.tail] = old_tail;
        vmap[sa.head] = old_head;
    }
}

/// `|F : F'|`, the factorization count.
pub fn count_factorizations(f: &Shape, fprime: &Shape) -> usize {
    factorizations(f, fprime).count()
}

/// Subshape order on linear shapes: `fprime <= f` iff some strict wrapping
/// factors `fprime` through `f`.
pub fn subshape_leq(fprime: &Shape, f: &Shape) -> bool {
    count_factorizations(f, fprime) > 0
}

/// Enumerates one representative per isomorphism class of compatible linear
/// shapes with at most `max_len` arrows, ordered by (length, canonical
/// word).
pub fn enumerate_linear_shapes(pres: &QuiverPresentation, max_len: usize) -> Vec<Shape> {
    let q = &pres.quiver;
    let mut words: BTreeSet<(usize, ShapeWord)> = BTreeSet::new();
    for v in 0..q.n_vertices() {
        words.insert((0, ShapeWord::Vertex(v)));
    }
    // Grow reduced compatible walks letter by letter; keep canonical forms.
    let mut frontier: Vec<Vec<Letter>> = Vec::new();
    for len in 1..=max_len {
        let mut next: Vec<Vec<Letter>> = Vec::new();
        let candidates: Vec<Vec<Letter>> = if len == 1 {
            let mut init = Vec::new();
            for a in 0..q.n_arrows() {
                init.push(vec![Letter::plain(a)]);
                init.push(vec![Letter::inverse(a)]);
            }
            init
        } else {
            let mut ext = Vec::new();
            for w in &frontier {
                let end = w.last().unwrap().end(q);
                for a in 0..q.n_arrows() {
                    for letter in [Letter::plain(a), Letter::inverse(a)] {
                        if letter.start(q) == end && letter != w.last().unwrap().flipped() {
                            let mut nw = w.clone();
                            nw.push(letter);
                            ext.push(nw);
                        }
                    }
                }
            }
            ext
        };
        for w in candidates {
            let word = ShapeWord::Line(w.clone());
            if check_compatible(pres, &word).is_ok() {
                if word.is_canonical() {
                    words.insert((len, word));
                }
                next.push(w);
            }
        }
        frontier = next;
    }
    words
        .into_iter()
        .map(|(_, w)| Shape::from_word(pres, w).expect("enumerated word validates"))
        .collect()
}

/// Enumerates one representative per isomorphism class of compatible cyclic
/// shapes with trivial automorphisms and at most `max_len` arrows, ordered
/// by (length, canonical word).
pub fn enumerate_cyclic_shapes(pres: &QuiverPresentation, max_len: usize) -> Vec<Shape> {
    let q = &pres.quiver;
    let mut words: BTreeSet<(usize, ShapeWord)> = BTreeSet::new();
    // Reduced walks of each length; close them up into cycles when possible.
    let mut frontier: Vec<Vec<Letter>> = (0..q.n_arrows())
        .flat_map(|a| [vec![Letter::plain(a)], vec![Letter::inverse(a)]])
        .collect();
    for len in 1..=max_len {
        for w in &frontier {
            let word = ShapeWord::Cycle(w.clone());
            if walk_images(q, &word).is_err() || check_reduced(&word).is_err() {
                continue;
            }
            if !word_has_trivial_automorphisms(&word) {
                continue;
            }
            if check_compatible(pres, &word).is_err() {
                continue;
            }
            if word.is_canonical() {
                words.insert((len, word));
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            let end = w.last().unwrap().end(q);
            for a in 0..q.n_arrows() {
                for letter in [Letter::plain(a), Letter::inverse(a)] {
                    if letter.start(q) == end && letter != w.last().unwrap().flipped() {
                        let mut nw = w.clone();
                        nw.push(letter);
                        next.push(nw);
                    }
                }
            }
        }
        frontier = next;
    }
    words
        .into_iter()
        .map(|(_, w)| Shape::from_word(pres, w).expect("enumerated word validates"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn line(pres: &QuiverPresentation, text: &str) -> Shape {
        Shape::from_word(pres, ShapeWord::parse(pres, text).unwrap()).unwrap()
    }

    fn word(pres: &QuiverPresentation, text: &str) -> ShapeWord {
        ShapeWord::parse(pres, text).unwrap()
    }

    #[test]
    fn word_parsing_round_trips() {
        let pres = presets::gp3();
        for text in ["@x", "a", "a a b^- a", "(a b^-)", "b^- a a b^- b^-"] {
            let w = word(&pres, text);
            assert_eq!(w.display(&pres), text);
        }
        assert!(ShapeWord::parse(&pres, "c").is_err());
        assert!(ShapeWord::parse(&pres, "@z").is_err());
        assert!(ShapeWord::parse(&pres, "(a b^-").is_err());
        assert!(ShapeWord::parse(&pres, "").is_err());
    }

    #[test]
    fn five_vertex_walk_over_two_loops() {
        let pres = presets::gp3();
        let s = line(&pres, "a a b^- a");
        assert_eq!(s.kind(), ShapeKind::Linear);
        assert_eq!(s.n_domain_vertices(), 5);
        assert_eq!(s.images(), &[0, 0, 0, 0, 0]);
        assert_eq!(s.dim_vector(&pres), vec![5]);
        let dom = s.domain_quiver();
        assert!(s.morphism().is_strict(&dom, &pres.quiver));
    }

    #[test]
    fn vertex_shape() {
        let pres = presets::kronecker();
        let s = line(&pres, "@y");
        assert_eq!(s.n_domain_vertices(), 1);
        assert_eq!(s.dim_vector(&pres), vec![0, 1]);
    }

    #[test]
    fn immediate_return_is_rejected() {
        let pres = presets::gp3();
        let err = Shape::from_word(&pres, word(&pres, "a a^-")).unwrap_err();
        assert!(matches!(err, ShapeError::StrictnessViolation(0, 1)));
        let err = Shape::from_word(&pres, word(&pres, "(a a^-)")).unwrap_err();
        assert!(matches!(err, ShapeError::StrictnessViolation(..)));
    }

    #[test]
    fn inadmissible_runs_are_rejected() {
        let pres = presets::gp3();
        assert!(matches!(
            Shape::from_word(&pres, word(&pres, "a a a")),
            Err(ShapeError::IncompatibleImage(_))
        ));
        // Mixed-direction walk whose direct run is fine.
        assert!(Shape::from_word(&pres, word(&pres, "a a b^-")).is_ok());
        // Inverse run b^- b^- maps to the admissible path "b b".
        assert!(Shape::from_word(&pres, word(&pres, "b^- b^-")).is_ok());
        // "a b" as a direct run is the relation "b a" read in application
        // order a-then-b, which is forbidden.
        assert!(matches!(
            Shape::from_word(&pres, word(&pres, "b a")),
            Err(ShapeError::IncompatibleImage(_))
        ));
    }

    #[test]
    fn fully_directed_cycles_are_incompatible() {
        let pres = presets::gp3();
        assert!(matches!(
            Shape::from_word(&pres, word(&pres, "(a)")),
            Err(ShapeError::IncompatibleImage(_))
        ));
        assert!(matches!(
            Shape::from_word(&pres, word(&pres, "(a b)")),
            Err(ShapeError::IncompatibleImage(_))
        ));
    }

    #[test]
    fn cyclic_automorphisms_are_detected() {
        let pres = presets::gp3();
        assert!(Shape::from_word(&pres, word(&pres, "(a b^-)")).is_ok());
        assert!(matches!(
            Shape::from_word(&pres, word(&pres, "(a b^- a b^-)")),
            Err(ShapeError::NontrivialAutomorphism)
        ));
        // Asymmetric double alternation is a valid band support.
        assert!(Shape::from_word(&pres, word(&pres, "(a a b^- b^-)")).is_ok());
    }

    #[test]
    fn linear_canonicalization_picks_smaller_orientation() {
        let pres = presets::gp3();
        let w = word(&pres, "b a^- a^-");
        let (canon, reversed) = w.canonicalize();
        assert_eq!(canon.display(&pres), "a a b^-");
        assert!(reversed);
        assert_eq!(word(&pres, "a a b^-").canonicalize().1, false);
        // Canonicalization is idempotent.
        assert_eq!(canon.canonical(), canon);
    }

    #[test]
    fn cyclic_canonicalization_tracks_orientation() {
        let pres = presets::kronecker();
        // Pure rotation: no orientation flip.
        let (canon, reversed) = word(&pres, "(b^- a)").canonicalize();
        assert_eq!(canon.display(&pres), "(a b^-)");
        assert!(!reversed);
        // Opposite orientation: flip.
        let (canon, reversed) = word(&pres, "(a^- b)").canonicalize();
        assert_eq!(canon.display(&pres), "(a b^-)");
        assert!(reversed);
    }

    #[test]
    fn canonical_word_of_shape_normalizes() {
        let pres = presets::gp3();
        let s = line(&pres, "b^- a a b^- b^-");
        assert_eq!(s.canonical_word().display(&pres), "b b a^- a^- b");
    }

    #[test]
    fn isomorphism_ignores_orientation_and_rotation() {
        let pres = presets::kronecker();
        let a = line(&pres, "a b^- a");
        let b = line(&pres, "a^- b a^-");
        assert!(shapes_isomorphic(&a, &b));
        let c = line(&pres, "b a^- b");
        assert!(!shapes_isomorphic(&a, &c));
        let z1 = line(&pres, "(a b^-)");
        let z2 = line(&pres, "(b a^-)");
        assert!(shapes_isomorphic(&z1, &z2));
        assert!(!shapes_isomorphic(&a, &z1));
    }

    #[test]
    fn identity_wrapping_is_strict() {
        let pres = presets::kronecker();
        let q = &pres.quiver;
        let ident = QuiverMorphism { vertex_map: vec![0, 1], arrow_map: vec![0, 1] };
        assert!(ident.is_strict(q, q));
        // Two parallel arrows onto one arrow: not even a wrapping.
        let collapse = QuiverMorphism { vertex_map: vec![0, 1], arrow_map: vec![0, 0] };
        assert!(!collapse.is_wrapping(q, q));
        assert!(!collapse.is_strict(q, q));
    }

    #[test]
    fn strictness_needs_both_endpoint_separations() {
        // Domain: two arrows with a common head, both mapped to the loop a.
        let pres = presets::gp3();
        let dom = Quiver::synthetic(3, &[(0, 1), (2, 1)]);
        let m = QuiverMorphism { vertex_map: vec![0, 0, 0], arrow_map: vec![0, 0] };
        assert!(m.is_wrapping(&dom, &pres.quiver));
        assert!(!m.is_strict(&dom, &pres.quiver));
    }

    #[test]
    fn kronecker_linear_shapes_up_to_len_2() {
        let pres = presets::kronecker();
        let shapes = enumerate_linear_shapes(&pres, 2);
        let words: Vec<String> =
            shapes.iter().map(|s| s.word().display(&pres)).collect();
        assert_eq!(words, vec!["@x", "@y", "a", "b", "a b^-", "a^- b"]);
    }

    #[test]
    fn two_loop_linear_shapes_up_to_len_2() {
        let pres = presets::gp3();
        let shapes = enumerate_linear_shapes(&pres, 2);
        let words: Vec<String> =
            shapes.iter().map(|s| s.word().display(&pres)).collect();
        assert_eq!(words, vec!["@x", "a", "b", "a a", "a b^-", "a^- b", "b b"]);
    }

    #[test]
    fn cyclic_shape_enumeration() {
        let kron = presets::kronecker();
        let words: Vec<String> = enumerate_cyclic_shapes(&kron, 2)
            .iter()
            .map(|s| s.word().display(&kron))
            .collect();
        assert_eq!(words, vec!["(a b^-)"]);

        let gp = presets::gp3();
        let words: Vec<String> = enumerate_cyclic_shapes(&gp, 2)
            .iter()
            .map(|s| s.word().display(&gp))
            .collect();
        assert_eq!(words, vec!["(a b^-)"]);

        let a3 = presets::a3();
        assert!(enumerate_cyclic_shapes(&a3, 4).is_empty());
    }

    #[test]
    fn factorization_counts_match_subword_occurrences() {
        // Independent oracle for linear-into-linear counts: occurrences of
        // the word or its reversal as a contiguous subword.
        fn subword_count(big: &ShapeWord, small: &ShapeWord) -> usize {
            let (b, s) = (big.letters(), small.letters());
            if s.is_empty() {
                unreachable!("handled separately");
            }
            let occurrences = |pat: &[Letter]| {
                if pat.len() > b.len() {
                    0
                } else {
                    (0..=b.len() - pat.len()).filter(|&i| &b[i..i + pat.len()] == pat).count()
                }
            };
            occurrences(s) + occurrences(&reversed_word(s))
        }

        for pres in [presets::gp3(), presets::kronecker(), presets::a3()] {
            let shapes = enumerate_linear_shapes(&pres, 4);
            for f in &shapes {
                for fp in &shapes {
                    let got = count_factorizations(f, fp);
                    let expected = if fp.word().is_empty() {
                        let target = fp.images()[0];
                        f.images().iter().filter(|&&v| v == target).count()
                    } else {
                        subword_count(f.word(), fp.word())
                    };
                    assert_eq!(
                        got,
                        expected,
                        "|{} : {}|",
                        f.word().display(&pres),
                        fp.word().display(&pres)
                    );
                }
            }
        }
    }

    #[test]
    fn identity_factorization_is_unique() {
        for pres in [presets::gp3(), presets::kronecker()] {
            let mut shapes = enumerate_linear_shapes(&pres, 3);
            shapes.extend(enumerate_cyclic_shapes(&pres, 4));
            for s in &shapes {
                assert_eq!(count_factorizations(s, s), 1, "{}", s.word().display(&pres));
            }
        }
    }

    #[test]
    fn loop_walk_factor_counts() {
        let pres = presets::gp3();
        let f = line(&pres, "a a b^- a");
        assert_eq!(count_factorizations(&f, &line(&pres, "a")), 3);
        assert_eq!(count_factorizations(&f, &line(&pres, "@x")), 5);
        assert_eq!(count_factorizations(&f, &line(&pres, "a a")), 1);
        assert_eq!(count_factorizations(&f, &line(&pres, "a b^-")), 1);
        assert_eq!(count_factorizations(&f, &line(&pres, "a^- b")), 1);
        assert_eq!(count_factorizations(&f, &line(&pres, "b b")), 0);
        // Nothing longer than the walk factors through it.
        let longer = line(&pres, "a a b^- a a");
        assert_eq!(count_factorizations(&f, &longer), 0);
        assert!(subshape_leq(&line(&pres, "a a"), &f));
        assert!(!subshape_leq(&f, &line(&pres, "a a")));
    }

    #[test]
    fn factorizations_through_cyclic_shapes_wind() {
        let kron = presets::kronecker();
        let band = line(&kron, "(a b^-)");
        // Walks of every length factor through the cycle by winding.
        assert_eq!(count_factorizations(&band, &line(&kron, "@x")), 1);
        assert_eq!(count_factorizations(&band, &line(&kron, "a")), 1);
        assert_eq!(count_factorizations(&band, &line(&kron, "a b^- a")), 1);
        assert_eq!(count_factorizations(&band, &line(&kron, "b a^- b")), 1);
        // No linear shape admits a factorization of a cycle.
        assert_eq!(count_factorizations(&line(&kron, "a b^- a"), &band), 0);
        // A cycle factors through itself exactly once.
        assert_eq!(count_factorizations(&band, &band), 1);

        let gp = presets::gp3();
        let wide = line(&gp, "(a a b^- b^-)");
        assert_eq!(count_factorizations(&wide, &line(&gp, "a")), 2);
        assert_eq!(count_factorizations(&wide, &line(&gp, "@x")), 4);
        assert_eq!(count_factorizations(&wide, &line(&gp, "a a")), 1);
    }

    #[test]
    fn factorization_maps_are_strict_wrappings() {
        let pres = presets::gp3();
        let f = line(&pres, "a a b^- a");
        let fp = line(&pres, "a");
        let set = factorizations(&f, &fp);
        let (dom, cod) = (fp.domain_quiver(), f.domain_quiver());
        for fac in &set.maps {
            let m = QuiverMorphism {
                vertex_map: fac.vertex_map.clone(),
                arrow_map: fac.arrow_map.clone(),
            };
            assert!(m.is_strict(&dom, &cod));
            // Commutes with the wrappings into the presentation quiver.
            for v in 0..dom.n_vertices() {
                assert_eq!(fp.images()[v], f.images()[fac.vertex_map[v]]);
            }
        }
    }
}
