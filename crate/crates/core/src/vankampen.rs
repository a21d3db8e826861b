//! Combinatorial 2-complexes, fundamental groupoids on a set of base points,
//! and the Van Kampen pushout square for a two-piece subcomplex cover.
//!
//! Open sets are replaced by subcomplexes closed under incidence: a face
//! brings its boundary edges, an edge its endpoints. The intersection of the
//! two pieces is taken cell by cell.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::groupoid::FiniteGroupoid;
use crate::guard::{GuardExceeded, SizeGuard};
use crate::presentation::{
    bfs_forest, enumerate_pres_morphisms, preserves_relations, pushout, vertex_group_presentation, words_equal,
    EqualityLimits, GroupoidPresentation, PresMorphism, PresentationError, Pushout, VertexGroupPresentation,
    WordEquality,
};
use crate::word::{Edge, Letter, Quiver, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VanKampenError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Guard(#[from] GuardExceeded),
    #[error("duplicate cell name `{0}`")]
    DuplicateName(String),
    #[error("boundary of face `{0}` is not a closed word")]
    OpenBoundary(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("{piece} is not closed under incidence: `{cell}` needs `{missing}`")]
    NotClosed { piece: String, cell: String, missing: String },
    #[error("cell `{0}` lies in neither piece of the cover")]
    NotCovered(String),
    #[error("base point set is empty")]
    EmptyBase,
    #[error("base points miss the component {{{}}}", .0.join(", "))]
    MissedComponent(Vec<String>),
    #[error("vertex `{0}` is not a base point")]
    NotABasePoint(String),
    #[error("cover hypothesis fails: {0}")]
    Hypothesis(CoverReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub name: String,
    pub boundary: Word,
}

/// Vertices, oriented edges, and 2-cells attached along closed edge words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex2 {
    quiver: Quiver,
    faces: Vec<Face>,
}

impl Complex2 {
    pub fn new(quiver: Quiver, faces: Vec<Face>) -> Result<Self, VanKampenError> {
        let mut names = BTreeSet::new();
        let all = quiver
            .vertices()
            .iter()
            .chain(quiver.edges().iter().map(|e| &e.name))
            .chain(faces.iter().map(|f| &f.name));
        for name in all {
            if !names.insert(name.as_str()) {
                return Err(VanKampenError::DuplicateName(name.clone()));
            }
        }
        for f in &faces {
            Word::new(&quiver, Some(f.boundary.src()), f.boundary.letters().to_vec())?;
            if !f.boundary.is_closed() {
                return Err(VanKampenError::OpenBoundary(f.name.clone()));
            }
        }
        Ok(Complex2 { quiver, faces })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.quiver.vertex_by_name(name)
    }

    pub fn cell_by_name(&self, name: &str) -> Option<Cell> {
        if let Some(v) = self.quiver.vertex_by_name(name) {
            return Some(Cell::Vertex(v));
        }
        if let Some(e) = self.quiver.edge_by_name(name) {
            return Some(Cell::Edge(e));
        }
        self.faces.iter().position(|f| f.name == name).map(Cell::Face)
    }

    pub fn cell_name(&self, c: Cell) -> &str {
        match c {
            Cell::Vertex(v) => self.quiver.vertex_name(v),
            Cell::Edge(e) => &self.quiver.edge(e).name,
            Cell::Face(f) => &self.faces[f].name,
        }
    }

    pub fn whole(&self) -> Subcomplex {
        Subcomplex {
            vertices: vec![true; self.quiver.vertex_count()],
            edges: vec![true; self.quiver.edge_count()],
            faces: vec![true; self.faces.len()],
        }
    }

    /// Builds a subcomplex from named cells and checks incidence closure.
    pub fn subcomplex<'a>(
        &self,
        label: &str,
        cells: impl IntoIterator<Item = &'a str>,
    ) -> Result<Subcomplex, VanKampenError> {
        let mut sub = Subcomplex {
            vertices: vec![false; self.quiver.vertex_count()],
            edges: vec![false; self.quiver.edge_count()],
            faces: vec![false; self.faces.len()],
        };
        for name in cells {
            match self.cell_by_name(name) {
                Some(Cell::Vertex(v)) => sub.vertices[v] = true,
                Some(Cell::Edge(e)) => sub.edges[e] = true,
                Some(Cell::Face(f)) => sub.faces[f] = true,
                None => return Err(VanKampenError::UnknownCell(name.to_string())),
            }
        }
        sub.check_closed(self, label)?;
        Ok(sub)
    }

    /// Components of a subcomplex as sorted vertex lists, ordered by least
    /// member.
    pub fn components(&self, piece: &Subcomplex) -> Vec<Vec<usize>> {
        let n = self.quiver.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (e, edge) in self.quiver.edges().iter().enumerate() {
            if piece.edges[e] {
                let (a, b) = (root(&mut parent, edge.src), root(&mut parent, edge.tgt));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of: Vec<Option<usize>> = vec![None; n];
        for v in (0..n).filter(|&v| piece.vertices[v]) {
            let r = root(&mut parent, v);
            match block_of[r] {
                Some(b) => blocks[b].push(v),
                None => {
                    block_of[r] = Some(blocks.len());
                    blocks.push(vec![v]);
                }
            }
        }
        blocks
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cell {
    Vertex(usize),
    Edge(usize),
    Face(usize),
}

/// Membership masks over the cells of a fixed complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcomplex {
    pub vertices: Vec<bool>,
    pub edges: Vec<bool>,
    pub faces: Vec<bool>,
}

impl Subcomplex {
    pub fn check_closed(&self, x: &Complex2, label: &str) -> Result<(), VanKampenError> {
        let q = x.quiver();
        let err = |cell: &str, missing: &str| VanKampenError::NotClosed {
            piece: label.to_string(),
            cell: cell.to_string(),
            missing: missing.to_string(),
        };
        for (f, face) in x.faces().iter().enumerate() {
            if !self.faces[f] {
                continue;
            }
            if let Some(l) = face.boundary.letters().iter().find(|l| !self.edges[l.edge]) {
                return Err(err(&face.name, &q.edge(l.edge).name));
            }
            if face.boundary.is_empty() && !self.vertices[face.boundary.src()] {
                return Err(err(&face.name, q.vertex_name(face.boundary.src())));
            }
        }
        for (e, edge) in q.edges().iter().enumerate() {
            if !self.edges[e] {
                continue;
            }
            for v in [edge.src, edge.tgt] {
                if !self.vertices[v] {
                    return Err(err(&edge.name, q.vertex_name(v)));
                }
            }
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Subcomplex) -> Subcomplex {
        let and = |a: &[bool], b: &[bool]| a.iter().zip(b).map(|(x, y)| *x && *y).collect();
        Subcomplex {
            vertices: and(&self.vertices, &other.vertices),
            edges: and(&self.edges, &other.edges),
            faces: and(&self.faces, &other.faces),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    U,
    V,
    W,
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Piece::U => "U",
            Piece::V => "V",
            Piece::W => "W",
        })
    }
}

/// Two subcomplexes whose union is the whole complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcomplexCover {
    pub complex: Complex2,
    pub u: Subcomplex,
    pub v: Subcomplex,
}

impl SubcomplexCover {
    pub fn new(complex: Complex2, u: Subcomplex, v: Subcomplex) -> Result<Self, VanKampenError> {
        u.check_closed(&complex, "U")?;
        v.check_closed(&complex, "V")?;
        let q = complex.quiver();
        let uncovered = (0..q.vertex_count())
            .find(|&i| !u.vertices[i] && !v.vertices[i])
            .map(Cell::Vertex)
            .or_else(|| (0..q.edge_count()).find(|&i| !u.edges[i] && !v.edges[i]).map(Cell::Edge))
            .or_else(|| (0..complex.faces().len()).find(|&i| !u.faces[i] && !v.faces[i]).map(Cell::Face));
        if let Some(c) = uncovered {
            return Err(VanKampenError::NotCovered(complex.cell_name(c).to_string()));
        }
        Ok(SubcomplexCover { complex, u, v })
    }

    pub fn w(&self) -> Subcomplex {
        self.u.intersect(&self.v)
    }

    pub fn piece(&self, p: Piece) -> Subcomplex {
        match p {
            Piece::U => self.u.clone(),
            Piece::V => self.v.clone(),
            Piece::W => self.w(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissedComponent {
    pub piece: Piece,
    pub vertices: Vec<String>,
}

/// Components of U, V, W containing no base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub missed: Vec<MissedComponent>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.missed.is_empty()
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.missed.is_empty() {
            return f.write_str("every component of U, V, W meets the base points");
        }
        for (i, m) in self.missed.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "component {{{}}} of {} has no base point", m.vertices.join(", "), m.piece)?;
        }
        Ok(())
    }
}

/// Resolves base-point names to sorted, deduplicated vertex indices.
pub fn base_points(x: &Complex2, names: &[&str]) -> Result<Vec<usize>, VanKampenError> {
    let mut out = BTreeSet::new();
    for &n in names {
        let v = x
            .vertex_by_name(n)
            .ok_or_else(|| VanKampenError::UnknownCell(n.to_string()))?;
        out.insert(v);
    }
    Ok(out.into_iter().collect())
}

pub fn check_cover(cover: &SubcomplexCover, base: &[usize]) -> CoverReport {
    let x = &cover.complex;
    let mut missed = Vec::new();
    for p in [Piece::U, Piece::V, Piece::W] {
        for block in x.components(&cover.piece(p)) {
            if !block.iter().any(|v| base.contains(v)) {
                missed.push(MissedComponent {
                    piece: p,
                    vertices: block.iter().map(|&v| x.quiver().vertex_name(v).to_string()).collect(),
                });
            }
        }
    }
    CoverReport { missed }
}

/// Presentation of π₁(Y, S∩Y) for a subcomplex Y, with the spanning-forest
/// data needed to translate edge paths into generator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalGroupoid {
    pub presentation: GroupoidPresentation,
    /// Complex vertex behind each presentation vertex.
    pub base: Vec<usize>,
    /// Presentation vertex of the forest root of each complex vertex in Y.
    pub root: Vec<Option<usize>>,
    /// Forest path (in complex edges) from the root to each vertex.
    pub tree_path: Vec<Word>,
    /// Presentation edge of each non-forest edge of Y.
    pub generator_of: Vec<Option<usize>>,
}

impl FundamentalGroupoid {
    /// Word for `τ(u)·path·τ(v)⁻¹`, where the path runs in Y from u to v.
    pub fn path_to_word(&self, path: &Word) -> Word {
        let q = self.presentation.quiver();
        let start = self.root[path.src()].expect("path starts inside the piece");
        let letters = path
            .letters()
            .iter()
            .filter_map(|l| {
                self.generator_of[l.edge].map(|g| Letter {
                    edge: g,
                    inverse: l.inverse,
                })
            })
            .collect();
        Word::new(q, Some(start), letters).expect("generator images run between roots")
    }

    pub fn base_index(&self, vertex: usize) -> Option<usize> {
        self.base.iter().position(|&b| b == vertex)
    }
}

/// π₁(X, S) on the base points `base`: edges become generators, face
/// boundaries relations, and a breadth-first forest grown from `base`
/// retracts every other vertex onto a base point.
pub fn fundamental_groupoid(x: &Complex2, base: &[usize]) -> Result<FundamentalGroupoid, VanKampenError> {
    fundamental_groupoid_of(x, &x.whole(), base)
}

/// Same as [`fundamental_groupoid`], restricted to a subcomplex. Base points
/// outside the piece are ignored.
pub fn fundamental_groupoid_of(
    x: &Complex2,
    piece: &Subcomplex,
    base: &[usize],
) -> Result<FundamentalGroupoid, VanKampenError> {
    let q = x.quiver();
    let base: Vec<usize> = base.iter().copied().filter(|&b| piece.vertices[b]).collect();
    if base.is_empty() && piece.vertices.iter().any(|&v| v) {
        return Err(VanKampenError::EmptyBase);
    }
    for block in x.components(piece) {
        if !block.iter().any(|v| base.contains(v)) {
            return Err(VanKampenError::MissedComponent(
                block.iter().map(|&v| q.vertex_name(v).to_string()).collect(),
            ));
        }
    }
    let (tree_path, forest) = bfs_forest(q, &base, |e| piece.edges[e]);
    let mut root = vec![None; q.vertex_count()];
    for v in (0..q.vertex_count()).filter(|&v| piece.vertices[v]) {
        root[v] = base.iter().position(|&b| b == tree_path[v].src());
    }
    let mut generator_of = vec![None; q.edge_count()];
    let mut edges = Vec::new();
    for (e, edge) in q.edges().iter().enumerate() {
        if piece.edges[e] && !forest.contains(&e) {
            generator_of[e] = Some(edges.len());
            edges.push(Edge {
                name: edge.name.clone(),
                src: root[edge.src].expect("edge endpoints lie in the piece"),
                tgt: root[edge.tgt].expect("edge endpoints lie in the piece"),
            });
        }
    }
    let quiver = Quiver::new(base.iter().map(|&b| q.vertex_name(b).to_string()).collect(), edges)?;
    let mut fg = FundamentalGroupoid {
        presentation: GroupoidPresentation::free(quiver),
        base,
        root,
        tree_path,
        generator_of,
    };
    let mut relations = Vec::new();
    for (f, face) in x.faces().iter().enumerate() {
        if !piece.faces[f] {
            continue;
        }
        let w = fg.path_to_word(&face.boundary).free_reduce();
        if !w.is_empty() {
            let e = Word::empty(w.src());
            relations.push((w, e));
        }
    }
    fg.presentation = GroupoidPresentation::new(fg.presentation.quiver().clone(), relations)?;
    Ok(fg)
}

/// Vertex group presentation of π₁(X, S) at the base point `v`.
pub fn pi1(x: &Complex2, base: &[usize], v: usize) -> Result<VertexGroupPresentation, VanKampenError> {
    let fg = fundamental_groupoid(x, base)?;
    let idx = fg
        .base_index(v)
        .ok_or_else(|| VanKampenError::NotABasePoint(x.quiver().vertex_name(v).to_string()))?;
    Ok(vertex_group_presentation(&fg.presentation, idx)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountAgreement {
    pub target: String,
    pub pushout: usize,
    pub direct: usize,
}

/// Evidence that the pushout presents the same groupoid as π₁(X, S).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoEvidence {
    pub counts: Vec<CountAgreement>,
    /// Pushout generators to words in π₁(X, S).
    pub to_direct: PresMorphism,
    /// π₁(X, S) generators to words in the pushout.
    pub from_direct: PresMorphism,
    /// Both maps preserve relations and compose to the identity on
    /// generators, each confirmed by a derivation.
    pub generator_maps_verified: bool,
}

impl IsoEvidence {
    pub fn counts_agree(&self) -> bool {
        self.counts.iter().all(|c| c.pushout == c.direct)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VktSquare {
    pub u: FundamentalGroupoid,
    pub v: FundamentalGroupoid,
    pub w: FundamentalGroupoid,
    /// Inclusion-induced π₁(W) → π₁(U).
    pub f: PresMorphism,
    /// Inclusion-induced π₁(W) → π₁(V).
    pub g: PresMorphism,
    pub pushout: Pushout,
    pub direct: FundamentalGroupoid,
    pub evidence: IsoEvidence,
}

fn inclusion(x: &Complex2, from: &FundamentalGroupoid, to: &FundamentalGroupoid) -> PresMorphism {
    let q = x.quiver();
    let vertex_map = from
        .base
        .iter()
        .map(|&b| to.base_index(b).expect("base points of a subpiece are base points of the piece"))
        .collect();
    let mut edge_map = vec![Word::empty(0); from.presentation.quiver().edge_count()];
    for (e, gen) in from.generator_of.iter().enumerate() {
        if let Some(g) = *gen {
            edge_map[g] = to.path_to_word(&piece_loop(q, from, e));
        }
    }
    PresMorphism { vertex_map, edge_map }
}

/// The complex path `τ(src e)·e·τ(tgt e)⁻¹` behind generator `e`.
fn piece_loop(q: &Quiver, fg: &FundamentalGroupoid, e: usize) -> Word {
    let edge = q.edge(e);
    fg.tree_path[edge.src]
        .concat(&Word::letter(q, Letter::pos(e)))
        .and_then(|w| w.concat(&fg.tree_path[edge.tgt].inverse()))
        .expect("tree paths meet the edge endpoints")
}

/// Van Kampen square for a cover: π₁ of the pieces on S, the inclusion
/// morphisms, their pushout, and isomorphism evidence against π₁(X, S)
/// computed directly (morphism counts into `targets` plus explicit
/// generator maps).
pub fn vkt_square(
    cover: &SubcomplexCover,
    base: &[usize],
    targets: &[(String, FiniteGroupoid)],
    guard: &SizeGuard,
) -> Result<VktSquare, VanKampenError> {
    if base.is_empty() {
        return Err(VanKampenError::EmptyBase);
    }
    let report = check_cover(cover, base);
    if !report.passed() {
        return Err(VanKampenError::Hypothesis(report));
    }
    let x = &cover.complex;
    let q = x.quiver();
    let wsub = cover.w();
    let u = fundamental_groupoid_of(x, &cover.u, base)?;
    let v = fundamental_groupoid_of(x, &cover.v, base)?;
    let w = fundamental_groupoid_of(x, &wsub, base)?;
    let f = inclusion(x, &w, &u);
    let g = inclusion(x, &w, &v);
    let po = pushout(&w.presentation, &u.presentation, &v.presentation, &f, &g)?;
    let direct = fundamental_groupoid(x, base)?;

    let mut counts = Vec::new();
    for (name, t) in targets {
        counts.push(CountAgreement {
            target: name.clone(),
            pushout: enumerate_pres_morphisms(&po.presentation, t, guard)?.len(),
            direct: enumerate_pres_morphisms(&direct.presentation, t, guard)?.len(),
        });
    }

    // Complex vertex behind each pushout vertex.
    let p_quiver = po.presentation.quiver();
    let mut p_vertex = vec![usize::MAX; p_quiver.vertex_count()];
    for (i, &b) in u.base.iter().enumerate() {
        p_vertex[po.from_left.vertex_map[i]] = b;
    }
    for (i, &b) in v.base.iter().enumerate() {
        p_vertex[po.from_right.vertex_map[i]] = b;
    }
    let to_direct = PresMorphism {
        vertex_map: p_vertex
            .iter()
            .map(|&b| direct.base_index(b).expect("pushout vertices are base points"))
            .collect(),
        edge_map: {
            let mut m = vec![Word::empty(0); p_quiver.edge_count()];
            for (piece, inj) in [(&u, &po.from_left), (&v, &po.from_right)] {
                for (e, gen) in piece.generator_of.iter().enumerate() {
                    if let Some(gi) = *gen {
                        let p_edge = inj.edge_map[gi].letters()[0].edge;
                        m[p_edge] = direct.path_to_word(&piece_loop(q, piece, e));
                    }
                }
            }
            m
        },
    };
    let p_of_base = |b: usize| -> usize {
        u.base_index(b)
            .map(|i| po.from_left.vertex_map[i])
            .or_else(|| v.base_index(b).map(|i| po.from_right.vertex_map[i]))
            .expect("base points lie in U or V")
    };
    let in_piece = |piece: Piece, path: &Word| -> Word {
        let (fg, inj) = match piece {
            Piece::U => (&u, &po.from_left),
            _ => (&v, &po.from_right),
        };
        inj.apply(&fg.path_to_word(path))
    };
    let from_direct = PresMorphism {
        vertex_map: direct.base.iter().map(|&b| p_of_base(b)).collect(),
        edge_map: {
            let mut m = Vec::new();
            for (e, gen) in direct.generator_of.iter().enumerate() {
                if gen.is_none() {
                    continue;
                }
                let path = piece_loop(q, &direct, e);
                let mut word = Word::empty(p_of_base(path.src()));
                let mut current: Option<Piece> = None;
                for &l in path.letters() {
                    let piece = if cover.u.edges[l.edge] { Piece::U } else { Piece::V };
                    let at = q.letter_start(l);
                    if let Some(prev) = current.filter(|&p| p != piece) {
                        let (zfg, yfg) = match prev {
                            Piece::U => (&u, &v),
                            _ => (&v, &u),
                        };
                        let to_w = zfg.tree_path[at]
                            .concat(&w.tree_path[at].inverse())
                            .expect("both paths end at the vertex");
                        let from_w = w.tree_path[at]
                            .concat(&yfg.tree_path[at].inverse())
                            .expect("both paths start at the W root");
                        word = word
                            .concat(&in_piece(prev, &to_w))
                            .and_then(|s| s.concat(&in_piece(piece, &from_w)))
                            .expect("connectors pass through the shared root");
                    }
                    let step = match piece {
                        Piece::U => &u,
                        _ => &v,
                    };
                    let step_path = step.tree_path[at]
                        .concat(&Word::letter(q, l))
                        .and_then(|s| s.concat(&step.tree_path[q.letter_end(l)].inverse()))
                        .expect("tree paths meet the letter");
                    word = word
                        .concat(&in_piece(piece, &step_path))
                        .expect("consecutive steps share roots");
                    current = Some(piece);
                }
                m.push(word.free_reduce());
            }
            m
        },
    };
    to_direct.validate(&po.presentation, &direct.presentation)?;
    from_direct.validate(&direct.presentation, &po.presentation)?;
    let generator_maps_verified = verify_inverse_maps(&po.presentation, &direct.presentation, &to_direct, &from_direct)?;

    Ok(VktSquare {
        u,
        v,
        w,
        f,
        g,
        pushout: po,
        direct,
        evidence: IsoEvidence {
            counts,
            to_direct,
            from_direct,
            generator_maps_verified,
        },
    })
}

fn verify_inverse_maps(
    a: &GroupoidPresentation,
    b: &GroupoidPresentation,
    ab: &PresMorphism,
    ba: &PresMorphism,
) -> Result<bool, VanKampenError> {
    let limits = EqualityLimits {
        targets: Vec::new(),
        ..EqualityLimits::default()
    };
    if !preserves_relations(ab, a, b, &limits)? || !preserves_relations(ba, b, a, &limits)? {
        return Ok(false);
    }
    for (p, there, back) in [(a, ab, ba), (b, ba, ab)] {
        let round = there.then(back);
        let q = p.quiver();
        for e in 0..q.edge_count() {
            let gen = Word::letter(q, Letter::pos(e));
            if !matches!(words_equal(p, &round.edge_map[e], &gen, &limits)?, WordEquality::Yes(_)) {
                return Ok(false);
            }
        }
        if round.vertex_map.iter().enumerate().any(|(i, &j)| i != j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Small complexes and covers used by tests, the CLI corpus, and benches.
pub mod samples {
    use super::*;

    fn edge(name: &str, src: usize, tgt: usize) -> Edge {
        Edge {
            name: name.to_string(),
            src,
            tgt,
        }
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// Two vertices `0, 1` and two edges `a, b: 0 → 1`.
    pub fn circle() -> Complex2 {
        let q = Quiver::new(names(&["0", "1"]), vec![edge("a", 0, 1), edge("b", 0, 1)]).expect("valid");
        Complex2::new(q, vec![]).expect("valid")
    }

    /// The circle with a face `D` glued along `a b⁻¹`.
    pub fn disc() -> Complex2 {
        let c = circle();
        let q = c.quiver().clone();
        let boundary = Word::new(&q, None, vec![Letter::pos(0), Letter::neg(1)]).expect("valid");
        Complex2::new(q, vec![Face { name: "D".into(), boundary }]).expect("valid")
    }

    pub fn point() -> Complex2 {
        Complex2::new(Quiver::new(names(&["p"]), vec![]).expect("valid"), vec![]).expect("valid")
    }

    /// Vertex `*` with loops `a, b`.
    pub fn wedge_of_two_circles() -> Complex2 {
        Complex2::new(Quiver::bouquet("*", &["a", "b"]), vec![]).expect("valid")
    }

    /// Path `0 -e1-> 1 -e2-> 2`.
    pub fn interval() -> Complex2 {
        let q = Quiver::new(names(&["0", "1", "2"]), vec![edge("e1", 0, 1), edge("e2", 1, 2)]).expect("valid");
        Complex2::new(q, vec![]).expect("valid")
    }

    /// Circle covered by the arcs `{0, 1, a}` and `{0, 1, b}`.
    pub fn circle_cover() -> SubcomplexCover {
        let x = circle();
        let u = x.subcomplex("U", ["0", "1", "a"]).expect("closed");
        let v = x.subcomplex("V", ["0", "1", "b"]).expect("closed");
        SubcomplexCover::new(x, u, v).expect("covers")
    }

    pub fn wedge_cover() -> SubcomplexCover {
        let x = wedge_of_two_circles();
        let u = x.subcomplex("U", ["*", "a"]).expect("closed");
        let v = x.subcomplex("V", ["*", "b"]).expect("closed");
        SubcomplexCover::new(x, u, v).expect("covers")
    }

    pub fn interval_cover() -> SubcomplexCover {
        let x = interval();
        let u = x.subcomplex("U", ["0", "1", "e1"]).expect("closed");
        let v = x.subcomplex("V", ["1", "2", "e2"]).expect("closed");
        SubcomplexCover::new(x, u, v).expect("covers")
    }

    /// Disc covered by the closed face and the arc `b`.
    pub fn disc_cover() -> SubcomplexCover {
        let x = disc();
        let u = x.subcomplex("U", ["0", "1", "a", "b", "D"]).expect("closed");
        let v = x.subcomplex("V", ["0", "1", "b"]).expect("closed");
        SubcomplexCover::new(x, u, v).expect("covers")
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use crate::presentation::default_battery;
    use crate::word::count_reduced_words;

    #[test]
    fn circle_groupoid_on_both_vertices_is_free_on_two_arrows() {
        let x = circle();
        let fg = fundamental_groupoid(&x, &[0, 1]).unwrap();
        let q = fg.presentation.quiver();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.edge_count(), 2);
        assert!(fg.presentation.relations().is_empty());
        let vg = pi1(&x, &[0, 1], 0).unwrap();
        assert_eq!(vg.presentation.quiver().edge_count(), 1);
        for k in 0..=6 {
            assert_eq!(count_reduced_words(vg.presentation.quiver(), 0, k), 2 * k as u128 + 1);
        }
    }

    #[test]
    fn disc_is_simply_connected() {
        let x = disc();
        let vg = pi1(&x, &[0], 0).unwrap();
        let guard = SizeGuard::default();
        for (_, t) in default_battery() {
            assert_eq!(enumerate_pres_morphisms(&vg.presentation, &t, &guard).unwrap().len(), 1);
        }
    }

    #[test]
    fn point_is_trivial() {
        let x = point();
        let vg = pi1(&x, &[0], 0).unwrap();
        assert_eq!(vg.presentation.quiver().edge_count(), 0);
    }

    #[test]
    fn base_must_meet_every_component() {
        let q = Quiver::new(vec!["0".into(), "1".into()], vec![]).unwrap();
        let x = Complex2::new(q, vec![]).unwrap();
        assert_eq!(
            fundamental_groupoid(&x, &[0]),
            Err(VanKampenError::MissedComponent(vec!["1".into()]))
        );
        assert!(matches!(pi1(&circle(), &[0], 1), Err(VanKampenError::NotABasePoint(_))));
    }

    #[test]
    fn cover_checks() {
        let c = circle_cover();
        assert!(check_cover(&c, &[0, 1]).passed());
        let r = check_cover(&c, &[0]);
        assert_eq!(
            r.missed,
            vec![MissedComponent {
                piece: Piece::W,
                vertices: vec!["1".into()]
            }]
        );
        let x = circle();
        let whole = SubcomplexCover::new(x.clone(), x.whole(), x.whole()).unwrap();
        assert!(check_cover(&whole, &[0]).passed());
    }

    #[test]
    fn cover_validation() {
        let x = disc();
        assert!(matches!(x.subcomplex("U", ["0", "a"]), Err(VanKampenError::NotClosed { .. })));
        assert!(matches!(x.subcomplex("U", ["0", "1", "a", "D"]), Err(VanKampenError::NotClosed { .. })));
        let u = x.subcomplex("U", ["0", "1", "a"]).unwrap();
        assert_eq!(
            SubcomplexCover::new(x, u.clone(), u),
            Err(VanKampenError::NotCovered("b".into()))
        );
    }

    #[test]
    fn circle_vkt_square() {
        let guard = SizeGuard::default();
        let sq = vkt_square(&circle_cover(), &[0, 1], &default_battery(), &guard).unwrap();
        assert_eq!(sq.w.presentation.quiver().edge_count(), 0);
        assert_eq!(sq.w.presentation.quiver().vertex_count(), 2);
        assert_eq!(sq.pushout.presentation.quiver().edge_count(), 2);
        assert!(sq.evidence.counts_agree());
        assert!(sq.evidence.generator_maps_verified);
        let vg = vertex_group_presentation(&sq.pushout.presentation, 0).unwrap();
        assert_eq!(vg.presentation.quiver().edge_count(), 1);
        assert!(vg.presentation.relations().is_empty());
    }

    #[test]
    fn circle_with_one_base_point_is_rejected() {
        let err = vkt_square(&circle_cover(), &[0], &default_battery(), &SizeGuard::default()).unwrap_err();
        match err {
            VanKampenError::Hypothesis(r) => assert_eq!(r.missed[0].piece, Piece::W),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn interval_and_wedge_and_disc_squares() {
        let guard = SizeGuard::default();
        let battery = default_battery();
        let sq = vkt_square(&interval_cover(), &[0, 1, 2], &battery, &guard).unwrap();
        assert!(sq.evidence.generator_maps_verified);
        for b in 0..3 {
            let vg = vertex_group_presentation(&sq.pushout.presentation, b).unwrap();
            assert_eq!(vg.presentation.quiver().edge_count(), 0);
        }

        let sq = vkt_square(&wedge_cover(), &[0], &battery, &guard).unwrap();
        assert!(sq.evidence.counts_agree());
        assert!(sq.evidence.generator_maps_verified);
        let q = sq.pushout.presentation.quiver();
        assert_eq!(q.edge_count(), 2);
        assert_eq!(count_reduced_words(q, 0, 2), 17);

        let sq = vkt_square(&disc_cover(), &[0, 1], &battery, &guard).unwrap();
        assert!(sq.evidence.counts_agree());
        assert!(sq.evidence.generator_maps_verified);
    }

    #[test]
    fn base_point_invariance() {
        let guard = SizeGuard::default();
        for x in [circle(), disc(), interval()] {
            let n = x.quiver().vertex_count();
            for (_, t) in default_battery() {
                let counts: Vec<usize> = (0..n)
                    .map(|v| {
                        let vg = pi1(&x, &[v], v).unwrap();
                        enumerate_pres_morphisms(&vg.presentation, &t, &guard).unwrap().len()
                    })
                    .collect();
                assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
            }
        }
    }
}
