//! Groupoid presentations, their morphisms, pushouts, and the brute-force
//! checks that relate them to finite groupoids.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::groupoid::{Arrow, FiniteGroupoid, Obj};
use crate::guard::{sat_mul, sat_pow, GuardExceeded, SizeGuard};
use crate::rewriting::{CompletionLimits, RewriteSystem};
use crate::word::{Edge, Letter, Quiver, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("relation {index} is not coterminal")]
    RelationNotCoterminal { index: usize },
    #[error("morphism has {got} {what} images, expected {expected}")]
    MorphismShape { what: &'static str, got: usize, expected: usize },
    #[error("image of edge `{edge}` does not run between the images of its endpoints")]
    MorphismEndpoints { edge: String },
    #[error("pushout identification of edge `{edge}` is not coterminal")]
    PushoutNotCoterminal { edge: String },
    #[error("unknown vertex #{0}")]
    UnknownVertex(usize),
    #[error(transparent)]
    Guard(#[from] GuardExceeded),
}

/// A quiver with relations given as coterminal word pairs `u = v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidPresentation {
    quiver: Quiver,
    relations: Vec<(Word, Word)>,
}

impl GroupoidPresentation {
    pub fn new(quiver: Quiver, relations: Vec<(Word, Word)>) -> Result<Self, PresentationError> {
        for (index, (u, v)) in relations.iter().enumerate() {
            for w in [u, v] {
                Word::new(&quiver, Some(w.src()), w.letters().to_vec())?;
            }
            if !u.coterminal(v) {
                return Err(PresentationError::RelationNotCoterminal { index });
            }
        }
        Ok(GroupoidPresentation { quiver, relations })
    }

    pub fn free(quiver: Quiver) -> Self {
        GroupoidPresentation {
            quiver,
            relations: Vec::new(),
        }
    }

    /// One-vertex presentation with relators `w = 1`, each given as letters.
    pub fn group(vertex: &str, generators: &[&str], relators: &[Vec<Letter>]) -> Result<Self, PresentationError> {
        let quiver = Quiver::bouquet(vertex, generators);
        let mut relations = Vec::new();
        for r in relators {
            let w = Word::new(&quiver, Some(0), r.clone())?;
            relations.push((w, Word::empty(0)));
        }
        Self::new(quiver, relations)
    }

    /// Presentation of a finite group: every element a generator, every
    /// product a relation.
    pub fn of_group(g: &FiniteGroup) -> Self {
        let edges = g
            .elements()
            .map(|a| Edge {
                name: g.name(a).to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let quiver = Quiver::new(vec!["*".to_string()], edges).expect("element names are distinct");
        let mut relations = Vec::new();
        for a in g.elements() {
            for b in g.elements() {
                let ab = Word::new(&quiver, None, vec![Letter::pos(a), Letter::pos(b)]).expect("loops compose");
                relations.push((ab, Word::letter(&quiver, Letter::pos(g.mul(a, b)))));
            }
        }
        GroupoidPresentation { quiver, relations }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    /// `⟨a, b | a b = b a⟩` for one-vertex presentations; generic listing
    /// otherwise.
    pub fn notation(&self) -> String {
        let q = &self.quiver;
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|(u, v)| {
                if v.is_empty() {
                    show_bare(q, u)
                } else {
                    format!("{} = {}", show_bare(q, u), show_bare(q, v))
                }
            })
            .collect();
        if q.vertex_count() == 1 && q.edges().iter().all(|e| e.src == 0 && e.tgt == 0) {
            let gens: Vec<&str> = q.edges().iter().map(|e| e.name.as_str()).collect();
            format!("⟨{} | {}⟩", gens.join(", "), rels.join(", "))
        } else {
            let edges: Vec<String> = q
                .edges()
                .iter()
                .map(|e| format!("{}: {} -> {}", e.name, q.vertex_name(e.src), q.vertex_name(e.tgt)))
                .collect();
            format!(
                "vertices {{{}}}; edges {{{}}}; relations {{{}}}",
                q.vertices().join(", "),
                edges.join(", "),
                rels.join(", ")
            )
        }
    }
}

fn show_bare(q: &Quiver, w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        q.show(w)
    }
}

impl fmt::Display for GroupoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Morphism of presentations: vertices to vertices, edges to words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresMorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<Word>,
}

impl PresMorphism {
    pub fn identity(p: &GroupoidPresentation) -> Self {
        let q = p.quiver();
        PresMorphism {
            vertex_map: (0..q.vertex_count()).collect(),
            edge_map: (0..q.edge_count()).map(|e| Word::letter(q, Letter::pos(e))).collect(),
        }
    }

    /// Shape and endpoint check. Relation preservation is a word-problem
    /// question; see [`preserves_relations`].
    pub fn validate(&self, from: &GroupoidPresentation, to: &GroupoidPresentation) -> Result<(), PresentationError> {
        let (qf, qt) = (from.quiver(), to.quiver());
        if self.vertex_map.len() != qf.vertex_count() {
            return Err(PresentationError::MorphismShape {
                what: "vertex",
                got: self.vertex_map.len(),
                expected: qf.vertex_count(),
            });
        }
        if self.edge_map.len() != qf.edge_count() {
            return Err(PresentationError::MorphismShape {
                what: "edge",
                got: self.edge_map.len(),
                expected: qf.edge_count(),
            });
        }
        if let Some(&v) = self.vertex_map.iter().find(|&&v| v >= qt.vertex_count()) {
            return Err(PresentationError::UnknownVertex(v));
        }
        for (e, img) in qf.edges().iter().zip(&self.edge_map) {
            Word::new(qt, Some(img.src()), img.letters().to_vec())?;
            if img.src() != self.vertex_map[e.src] || img.tgt() != self.vertex_map[e.tgt] {
                return Err(PresentationError::MorphismEndpoints { edge: e.name.clone() });
            }
        }
        Ok(())
    }

    /// Image of a word, freely reduced.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::empty(self.vertex_map[w.src()]);
        for &l in w.letters() {
            let img = &self.edge_map[l.edge];
            let img = if l.inverse { img.inverse() } else { img.clone() };
            out = out.concat(&img).expect("validated morphism images compose");
        }
        out.free_reduce()
    }

    /// `self` then `other`.
    pub fn then(&self, other: &PresMorphism) -> PresMorphism {
        PresMorphism {
            vertex_map: self.vertex_map.iter().map(|&v| other.vertex_map[v]).collect(),
            edge_map: self.edge_map.iter().map(|w| other.apply(w)).collect(),
        }
    }
}

/// Generator assignment from a presentation into a finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PresAssignment {
    pub vertex_map: Vec<Obj>,
    pub edge_images: Vec<Arrow>,
}

impl PresAssignment {
    pub fn eval(&self, t: &FiniteGroupoid, w: &Word) -> Arrow {
        let mut acc = t.identity(self.vertex_map[w.src()]);
        for &l in w.letters() {
            let img = self.edge_images[l.edge];
            let img = if l.inverse { t.inverse(img) } else { img };
            acc = t.compose(acc, img);
        }
        acc
    }

    /// Precomposition with a presentation morphism.
    pub fn after(&self, t: &FiniteGroupoid, m: &PresMorphism) -> PresAssignment {
        PresAssignment {
            vertex_map: m.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            edge_images: m.edge_map.iter().map(|w| self.eval(t, w)).collect(),
        }
    }
}

/// Candidate generator assignments `enumerate_pres_morphisms` would visit.
pub fn pres_search_size(p: &GroupoidPresentation, t: &FiniteGroupoid) -> u128 {
    let q = p.quiver();
    let object_maps = sat_pow(t.object_count() as u128, q.vertex_count());
    if q.vertex_count() == 0 || object_maps > 10_000_000 {
        return object_maps;
    }
    let mut total: u128 = 0;
    let mut map = vec![0usize; q.vertex_count()];
    loop {
        let size = q.edges().iter().fold(1u128, |acc, e| {
            sat_mul(acc, t.hom(Obj(map[e.src]), Obj(map[e.tgt])).len() as u128)
        });
        total = total.saturating_add(size);
        if !crate::group::odometer(&mut map, t.object_count()) {
            break;
        }
    }
    total.max(object_maps)
}

/// Every morphism from the presented groupoid into `t`, i.e. every generator
/// assignment satisfying all relations, in lexicographic order.
pub fn enumerate_pres_morphisms(
    p: &GroupoidPresentation,
    t: &FiniteGroupoid,
    guard: &SizeGuard,
) -> Result<Vec<PresAssignment>, GuardExceeded> {
    guard.check(pres_search_size(p, t))?;
    let q = p.quiver();
    // Relations become checkable once their highest edge is assigned;
    // edgeless relations are checked with index usize::MAX before edges.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); q.edge_count() + 1];
    for (i, (u, v)) in p.relations().iter().enumerate() {
        let last = u.letters().iter().chain(v.letters()).map(|l| l.edge).max();
        due[last.map_or(0, |e| e + 1)].push(i);
    }
    let mut out = Vec::new();
    let mut vmap = vec![Obj(0); q.vertex_count()];
    let mut visit = |vmap: &[Obj]| {
        let mut a = PresAssignment {
            vertex_map: vmap.to_vec(),
            edge_images: vec![Arrow(0); q.edge_count()],
        };
        let holds = |a: &PresAssignment, i: usize| {
            let (u, v) = &p.relations()[i];
            a.eval(t, u) == a.eval(t, v)
        };
        if due[0].iter().all(|&i| holds(&a, i)) {
            assign_edges(p, t, &due, 0, &mut a, &mut out);
        }
    };
    if q.vertex_count() == 0 {
        visit(&[]);
    } else {
        vertex_maps(t, 0, &mut vmap, &mut visit);
    }
    Ok(out)
}

fn vertex_maps(t: &FiniteGroupoid, k: usize, map: &mut Vec<Obj>, visit: &mut dyn FnMut(&[Obj])) {
    if k == map.len() {
        visit(map);
        return;
    }
    for y in t.objects() {
        map[k] = y;
        vertex_maps(t, k + 1, map, visit);
    }
}

fn assign_edges(
    p: &GroupoidPresentation,
    t: &FiniteGroupoid,
    due: &[Vec<usize>],
    k: usize,
    a: &mut PresAssignment,
    out: &mut Vec<PresAssignment>,
) {
    let q = p.quiver();
    if k == q.edge_count() {
        out.push(a.clone());
        return;
    }
    let e = q.edge(k);
    let hom = t.hom(a.vertex_map[e.src], a.vertex_map[e.tgt]);
    for &img in hom {
        a.edge_images[k] = img;
        let ok = due[k + 1].iter().all(|&i| {
            let (u, v) = &p.relations()[i];
            a.eval(t, u) == a.eval(t, v)
        });
        if ok {
            assign_edges(p, t, due, k + 1, a, out);
        }
    }
}

/// Pushout presentation with the two canonical morphisms into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub presentation: GroupoidPresentation,
    pub from_left: PresMorphism,
    pub from_right: PresMorphism,
}

/// Pushout of `left ← shared → right` along `f: shared → left` and
/// `g: shared → right`.
///
/// Vertices of `left` and `right` are glued along `f(w) ~ g(w)`, edges and
/// relations are the disjoint union, and every edge `e` of `shared` adds the
/// relation `f(e) = g(e)`. Names from `right` that collide with names from
/// `left` get a `'` suffix.
pub fn pushout(
    shared: &GroupoidPresentation,
    left: &GroupoidPresentation,
    right: &GroupoidPresentation,
    f: &PresMorphism,
    g: &PresMorphism,
) -> Result<Pushout, PresentationError> {
    f.validate(shared, left)?;
    g.validate(shared, right)?;
    let (ql, qr) = (left.quiver(), right.quiver());
    let nl = ql.vertex_count();
    let n = nl + qr.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for w in 0..shared.quiver().vertex_count() {
        let (a, b) = (root(&mut parent, f.vertex_map[w]), root(&mut parent, nl + g.vertex_map[w]));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            parent[hi] = lo;
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut vertices: Vec<String> = Vec::new();
    let mut class_index: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..n {
        let r = root(&mut parent, x);
        let idx = *class_index.entry(r).or_insert_with(|| {
            let name = if x < nl { ql.vertex_name(x) } else { qr.vertex_name(x - nl) };
            vertices.push(fresh_name(&vertices, name));
            vertices.len() - 1
        });
        class_of[x] = idx;
    }
    let mut edges: Vec<Edge> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for e in ql.edges() {
        names.push(e.name.clone());
        edges.push(Edge {
            name: e.name.clone(),
            src: class_of[e.src],
            tgt: class_of[e.tgt],
        });
    }
    for e in qr.edges() {
        let name = fresh_name(&names, &e.name);
        names.push(name.clone());
        edges.push(Edge {
            name,
            src: class_of[nl + e.src],
            tgt: class_of[nl + e.tgt],
        });
    }
    let quiver = Quiver::new(vertices, edges)?;
    let from_left = PresMorphism {
        vertex_map: (0..nl).map(|v| class_of[v]).collect(),
        edge_map: (0..ql.edge_count()).map(|e| Word::letter(&quiver, Letter::pos(e))).collect(),
    };
    let from_right = PresMorphism {
        vertex_map: (0..qr.vertex_count()).map(|v| class_of[nl + v]).collect(),
        edge_map: (0..qr.edge_count())
            .map(|e| Word::letter(&quiver, Letter::pos(ql.edge_count() + e)))
            .collect(),
    };
    let mut relations = Vec::new();
    for (u, v) in left.relations() {
        relations.push((from_left.apply(u), from_left.apply(v)));
    }
    for (u, v) in right.relations() {
        relations.push((from_right.apply(u), from_right.apply(v)));
    }
    for (e, edge) in shared.quiver().edges().iter().enumerate() {
        let u = from_left.apply(&f.edge_map[e]);
        let v = from_right.apply(&g.edge_map[e]);
        if !u.coterminal(&v) {
            return Err(PresentationError::PushoutNotCoterminal { edge: edge.name.clone() });
        }
        relations.push((u, v));
    }
    Ok(Pushout {
        presentation: GroupoidPresentation::new(quiver, relations)?,
        from_left,
        from_right,
    })
}

fn fresh_name(taken: &[String], name: &str) -> String {
    let mut candidate = name.to_string();
    while taken.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// A span together with its computed pushout.
#[derive(Debug, Clone, Copy)]
pub struct PushoutSquare<'a> {
    pub shared: &'a GroupoidPresentation,
    pub left: &'a GroupoidPresentation,
    pub right: &'a GroupoidPresentation,
    pub f: &'a PresMorphism,
    pub g: &'a PresMorphism,
    pub pushout: &'a Pushout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetUniversality {
    pub target: String,
    /// Pairs (φ: left → T, ψ: right → T) agreeing on `shared`.
    pub compatible_pairs: usize,
    /// Morphisms out of the pushout into T.
    pub pushout_morphisms: usize,
    /// Indices (into the lexicographic pair list) of compatible pairs whose
    /// mediator count is not exactly one, with that count.
    pub mediator_failures: Vec<(usize, usize)>,
    /// Pushout morphisms whose restriction is not a compatible pair.
    pub stray_morphisms: usize,
}

impl TargetUniversality {
    pub fn passed(&self) -> bool {
        self.mediator_failures.is_empty() && self.stray_morphisms == 0 && self.compatible_pairs == self.pushout_morphisms
    }
}

/// Universal property verdict relative to a finite target battery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalReport {
    /// Whether both legs agree on `shared` inside the pushout.
    pub square_commutes: bool,
    pub targets: Vec<TargetUniversality>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.square_commutes && self.targets.iter().all(TargetUniversality::passed)
    }
}

/// C2, C3, C4, S3 as one-object groupoids.
pub fn default_battery() -> Vec<(String, FiniteGroupoid)> {
    vec![
        ("C2".to_string(), FiniteGroupoid::from_group(&FiniteGroup::cyclic(2))),
        ("C3".to_string(), FiniteGroupoid::from_group(&FiniteGroup::cyclic(3))),
        ("C4".to_string(), FiniteGroupoid::from_group(&FiniteGroup::cyclic(4))),
        ("S3".to_string(), FiniteGroupoid::from_group(&FiniteGroup::symmetric(3))),
    ]
}

/// Exhaustively checks that every compatible pair into each target factors
/// through the pushout by exactly one morphism.
pub fn verify_pushout_universal(
    square: &PushoutSquare<'_>,
    targets: &[(String, FiniteGroupoid)],
    guard: &SizeGuard,
) -> Result<UniversalReport, PresentationError> {
    let po = &square.pushout;
    let p = &po.presentation;
    let limits = EqualityLimits {
        targets: Vec::new(),
        ..EqualityLimits::default()
    };
    let mut square_commutes = true;
    for e in 0..square.shared.quiver().edge_count() {
        let u = po.from_left.apply(&square.f.edge_map[e]);
        let v = po.from_right.apply(&square.g.edge_map[e]);
        if !matches!(words_equal(p, &u, &v, &limits)?, WordEquality::Yes(_)) {
            square_commutes = false;
        }
    }
    let mut out = Vec::new();
    for (name, t) in targets {
        let lefts = enumerate_pres_morphisms(square.left, t, guard)?;
        let rights = enumerate_pres_morphisms(square.right, t, guard)?;
        let mut pairs: Vec<(PresAssignment, PresAssignment)> = Vec::new();
        for phi in &lefts {
            let via_left = phi.after(t, square.f);
            for psi in &rights {
                if via_left == psi.after(t, square.g) {
                    pairs.push((phi.clone(), psi.clone()));
                }
            }
        }
        let mediators = enumerate_pres_morphisms(p, t, guard)?;
        let mut hits = vec![0usize; pairs.len()];
        let index: BTreeMap<&(PresAssignment, PresAssignment), usize> =
            pairs.iter().enumerate().map(|(i, pair)| (pair, i)).collect();
        let mut stray = 0;
        for chi in &mediators {
            let restricted = (chi.after(t, &po.from_left), chi.after(t, &po.from_right));
            match index.get(&restricted) {
                Some(&i) => hits[i] += 1,
                None => stray += 1,
            }
        }
        out.push(TargetUniversality {
            target: name.clone(),
            compatible_pairs: pairs.len(),
            pushout_morphisms: mediators.len(),
            mediator_failures: hits
                .iter()
                .enumerate()
                .filter(|&(_, &h)| h != 1)
                .map(|(i, &h)| (i, h))
                .collect(),
            stray_morphisms: stray,
        });
    }
    Ok(UniversalReport {
        square_commutes,
        targets: out,
    })
}

/// Presentation of the vertex group at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGroupPresentation {
    /// One vertex; generators are the non-forest edges of the component.
    pub presentation: GroupoidPresentation,
    /// Loop at the chosen vertex represented by each generator.
    pub loops: Vec<Word>,
    /// Edges contracted by the spanning forest.
    pub forest: Vec<usize>,
    /// Relations lying in other components, dropped.
    pub dropped_relations: usize,
}

/// Contracts a breadth-first spanning tree of the component of `x`, rooted
/// at its name-least vertex with edges scanned in input order.
pub fn vertex_group_presentation(p: &GroupoidPresentation, x: usize) -> Result<VertexGroupPresentation, PresentationError> {
    let q = p.quiver();
    if x >= q.vertex_count() {
        return Err(PresentationError::UnknownVertex(x));
    }
    let comp = q.component_of(x);
    let in_comp = |v: usize| comp.binary_search(&v).is_ok();
    let root = *comp
        .iter()
        .min_by(|&&a, &&b| q.vertex_name(a).cmp(q.vertex_name(b)).then(a.cmp(&b)))
        .expect("component contains x");
    let (tree_path, forest) = bfs_forest(q, &[root], |_| true);
    let to_x = |v: usize| -> Word {
        tree_path[x]
            .inverse()
            .concat(&tree_path[v])
            .expect("tree paths start at the root")
            .free_reduce()
    };
    let is_forest = |e: usize| forest.contains(&e);
    let gens: Vec<usize> = (0..q.edge_count())
        .filter(|&e| in_comp(q.edge(e).src) && !is_forest(e))
        .collect();
    let gen_quiver = Quiver::new(
        vec![q.vertex_name(x).to_string()],
        gens.iter()
            .map(|&e| Edge {
                name: q.edge(e).name.clone(),
                src: 0,
                tgt: 0,
            })
            .collect(),
    )?;
    let loops = gens
        .iter()
        .map(|&e| {
            let edge = q.edge(e);
            to_x(edge.src)
                .concat(&Word::letter(q, Letter::pos(e)))
                .and_then(|w| w.concat(&to_x(edge.tgt).inverse()))
                .expect("loop through a tree is composable")
                .free_reduce()
        })
        .collect();
    let rewrite = |w: &Word| -> Word {
        let letters = w
            .letters()
            .iter()
            .filter_map(|l| {
                gens.iter().position(|&g| g == l.edge).map(|i| Letter {
                    edge: i,
                    inverse: l.inverse,
                })
            })
            .collect();
        Word::new(&gen_quiver, Some(0), letters).expect("generator loops compose")
    };
    let mut relations = Vec::new();
    let mut dropped = 0;
    for (u, v) in p.relations() {
        if in_comp(u.src()) {
            relations.push((rewrite(u), rewrite(v)));
        } else {
            dropped += 1;
        }
    }
    Ok(VertexGroupPresentation {
        presentation: GroupoidPresentation::new(gen_quiver, relations)?,
        loops,
        forest,
        dropped_relations: dropped,
    })
}

/// Multi-source breadth-first forest. Returns, for each vertex reached, the
/// tree path from its root (unreached vertices get the empty word at
/// themselves), plus the forest edges in discovery order. Only edges passing
/// `allowed` are used.
pub(crate) fn bfs_forest(q: &Quiver, roots: &[usize], allowed: impl Fn(usize) -> bool) -> (Vec<Word>, Vec<usize>) {
    let n = q.vertex_count();
    let mut path: Vec<Option<Word>> = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    for &r in roots {
        if path[r].is_none() {
            path[r] = Some(Word::empty(r));
            queue.push_back(r);
        }
    }
    let mut forest = Vec::new();
    while let Some(v) = queue.pop_front() {
        for (e, edge) in q.edges().iter().enumerate() {
            if !allowed(e) {
                continue;
            }
            let step = if edge.src == v && path[edge.tgt].is_none() {
                Some((edge.tgt, Letter::pos(e)))
            } else if edge.tgt == v && path[edge.src].is_none() {
                Some((edge.src, Letter::neg(e)))
            } else {
                None
            };
            if let Some((w, l)) = step {
                let p = path[v]
                    .as_ref()
                    .expect("dequeued vertices have paths")
                    .concat(&Word::letter(q, l))
                    .expect("letter starts at v");
                path[w] = Some(p);
                forest.push(e);
                queue.push_back(w);
            }
        }
    }
    let paths = path
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.unwrap_or_else(|| Word::empty(v)))
        .collect();
    (paths, forest)
}

/// Evidence for an equality of words in a presented groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    /// Chain of words from the left side to the right side; consecutive words
    /// differ by a free reduction or one rewriting rule, applied in either
    /// direction.
    pub steps: Vec<Word>,
}

/// A finite quotient in which two words have different values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub target: String,
    pub assignment: PresAssignment,
    pub left: Arrow,
    pub right: Arrow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordEquality {
    Yes(Derivation),
    No(Separation),
    Unknown,
}

#[derive(Debug, Clone)]
pub struct EqualityLimits {
    pub completion: CompletionLimits,
    /// Finite targets searched for a separating morphism.
    pub targets: Vec<(String, FiniteGroupoid)>,
    pub guard: SizeGuard,
}

impl Default for EqualityLimits {
    fn default() -> Self {
        EqualityLimits {
            completion: CompletionLimits::default(),
            targets: default_battery(),
            guard: SizeGuard::default(),
        }
    }
}

/// Three-valued word equality: `Yes` comes with a derivation, `No` with a
/// separating finite quotient, and anything else is `Unknown`.
pub fn words_equal(
    p: &GroupoidPresentation,
    u: &Word,
    v: &Word,
    limits: &EqualityLimits,
) -> Result<WordEquality, PresentationError> {
    let q = p.quiver();
    for w in [u, v] {
        Word::new(q, Some(w.src()), w.letters().to_vec())?;
    }
    if !u.coterminal(v) {
        return Err(WordError::NotCoterminal(q.show(u), q.show(v)).into());
    }
    let (ru, rv) = (u.free_reduce(), v.free_reduce());
    if ru == rv {
        let mut steps = vec![u.clone()];
        if ru != *u {
            steps.push(ru.clone());
        }
        if *v != ru {
            steps.push(v.clone());
        }
        return Ok(WordEquality::Yes(Derivation { steps }));
    }
    if !p.relations().is_empty() {
        let sys = RewriteSystem::complete(q, p.relations(), &limits.completion);
        let tu = sys.trace_word(u);
        let tv = sys.trace_word(v);
        if tu.last() == tv.last() {
            let mut steps = tu;
            steps.extend(tv.into_iter().rev().skip(1));
            return Ok(WordEquality::Yes(Derivation { steps }));
        }
    }
    for (name, t) in &limits.targets {
        let Ok(assignments) = enumerate_pres_morphisms(p, t, &limits.guard) else {
            continue;
        };
        for a in assignments {
            let (left, right) = (a.eval(t, u), a.eval(t, v));
            if left != right {
                return Ok(WordEquality::No(Separation {
                    target: name.clone(),
                    assignment: a,
                    left,
                    right,
                }));
            }
        }
    }
    Ok(WordEquality::Unknown)
}

/// Checks, with [`words_equal`], that `m` sends every relation of `from` to
/// a provable equality in `to`. Returns the indices of relations that could
/// not be confirmed.
pub fn unconfirmed_relations(
    m: &PresMorphism,
    from: &GroupoidPresentation,
    to: &GroupoidPresentation,
    limits: &EqualityLimits,
) -> Result<Vec<usize>, PresentationError> {
    let mut out = Vec::new();
    for (i, (u, v)) in from.relations().iter().enumerate() {
        if !matches!(words_equal(to, &m.apply(u), &m.apply(v), limits)?, WordEquality::Yes(_)) {
            out.push(i);
        }
    }
    Ok(out)
}

/// True when every relation is confirmed.
pub fn preserves_relations(
    m: &PresMorphism,
    from: &GroupoidPresentation,
    to: &GroupoidPresentation,
    limits: &EqualityLimits,
) -> Result<bool, PresentationError> {
    Ok(unconfirmed_relations(m, from, to, limits)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval_pres() -> GroupoidPresentation {
        let q = Quiver::new(
            vec!["0".into(), "1".into()],
            vec![Edge {
                name: "iota".into(),
                src: 0,
                tgt: 1,
            }],
        )
        .unwrap();
        GroupoidPresentation::free(q)
    }

    fn discrete_pair() -> GroupoidPresentation {
        GroupoidPresentation::free(Quiver::new(vec!["0".into(), "1".into()], vec![]).unwrap())
    }

    fn inclusion(from: &GroupoidPresentation) -> PresMorphism {
        PresMorphism {
            vertex_map: (0..from.quiver().vertex_count()).collect(),
            edge_map: vec![],
        }
    }

    fn circle_pushout() -> (GroupoidPresentation, GroupoidPresentation, PresMorphism, Pushout) {
        let w = discrete_pair();
        let u = interval_pres();
        let f = inclusion(&w);
        let po = pushout(&w, &u, &u, &f, &f).unwrap();
        (w, u, f, po)
    }

    #[test]
    fn circle_pushout_has_two_parallel_edges() {
        let (_, _, _, po) = circle_pushout();
        let q = po.presentation.quiver();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.edge_count(), 2);
        assert!(q.edges().iter().all(|e| e.src == 0 && e.tgt == 1));
        assert!(po.presentation.relations().is_empty());
        assert_eq!(q.edge(1).name, "iota'");
    }

    #[test]
    fn pushout_along_identity_recovers_left() {
        let u = interval_pres();
        let id = PresMorphism::identity(&u);
        let po = pushout(&u, &u, &u, &id, &id).unwrap();
        let guard = SizeGuard::default();
        for (_, t) in default_battery() {
            assert_eq!(
                enumerate_pres_morphisms(&po.presentation, &t, &guard).unwrap().len(),
                enumerate_pres_morphisms(&u, &t, &guard).unwrap().len()
            );
        }
    }

    #[test]
    fn free_product_of_two_c2() {
        let x = Letter::pos(0);
        let c2 = GroupoidPresentation::group("*", &["x"], &[vec![x, x]]).unwrap();
        let trivial = GroupoidPresentation::group("*", &[], &[]).unwrap();
        let f = PresMorphism {
            vertex_map: vec![0],
            edge_map: vec![],
        };
        let po = pushout(&trivial, &c2, &c2, &f, &f).unwrap();
        let p = &po.presentation;
        assert_eq!(p.quiver().vertex_count(), 1);
        assert_eq!(p.relations().len(), 2);
        let sys = RewriteSystem::complete(p.quiver(), p.relations(), &CompletionLimits::default());
        // Alternating words in x, y: 1 of length 0 and 2 of every positive length.
        for k in 0..7 {
            assert_eq!(sys.count_normal_forms(p.quiver(), 0, k), Some(1 + 2 * k as u128));
        }
    }

    #[test]
    fn pres_morphism_counts() {
        let guard = SizeGuard::default();
        let c2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        let (_, _, _, po) = circle_pushout();
        assert_eq!(enumerate_pres_morphisms(&po.presentation, &c2, &guard).unwrap().len(), 4);
        let z = Letter::pos(0);
        let c3 = GroupoidPresentation::group("*", &["z"], &[vec![z, z, z]]).unwrap();
        assert_eq!(enumerate_pres_morphisms(&c3, &c2, &guard).unwrap().len(), 1);
        let empty = GroupoidPresentation::free(Quiver::default());
        assert_eq!(enumerate_pres_morphisms(&empty, &c2, &guard).unwrap().len(), 1);
    }

    #[test]
    fn circle_square_is_universal() {
        let (w, u, f, po) = circle_pushout();
        let square = PushoutSquare {
            shared: &w,
            left: &u,
            right: &u,
            f: &f,
            g: &f,
            pushout: &po,
        };
        let report = verify_pushout_universal(&square, &default_battery(), &SizeGuard::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.targets[0].compatible_pairs, 4);
        assert_eq!(report.targets[3].compatible_pairs, 36);
        assert_eq!(report.targets[3].pushout_morphisms, 36);
    }

    #[test]
    fn degenerate_square_passes() {
        let u = interval_pres();
        let id = PresMorphism::identity(&u);
        let po = pushout(&u, &u, &u, &id, &id).unwrap();
        let square = PushoutSquare {
            shared: &u,
            left: &u,
            right: &u,
            f: &id,
            g: &id,
            pushout: &po,
        };
        assert!(verify_pushout_universal(&square, &default_battery(), &SizeGuard::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn vertex_group_of_circle_is_free_cyclic() {
        let (_, _, _, po) = circle_pushout();
        let vg = vertex_group_presentation(&po.presentation, 0).unwrap();
        let q = vg.presentation.quiver();
        assert_eq!(q.edge_count(), 1);
        assert!(vg.presentation.relations().is_empty());
        for k in 0..=6 {
            assert_eq!(crate::word::count_reduced_words(q, 0, k), 2 * k as u128 + 1);
        }
        assert_eq!(vg.loops[0].len(), 2);
    }

    #[test]
    fn vertex_group_edge_cases() {
        let tree = interval_pres();
        let vg = vertex_group_presentation(&tree, 1).unwrap();
        assert_eq!(vg.presentation.quiver().edge_count(), 0);
        let z = Letter::pos(0);
        let c3 = GroupoidPresentation::group("*", &["z"], &[vec![z, z, z]]).unwrap();
        let vg = vertex_group_presentation(&c3, 0).unwrap();
        assert_eq!(vg.presentation, c3);
        assert_eq!(vertex_group_presentation(&c3, 4), Err(PresentationError::UnknownVertex(4)));
    }

    #[test]
    fn word_equality_tiers() {
        let free = GroupoidPresentation::free(Quiver::bouquet("*", &["x"]));
        let q = free.quiver();
        let x = Letter::pos(0);
        let xxix = Word::new(q, None, vec![x, x.inv(), x]).unwrap();
        let lim = EqualityLimits::default();
        assert!(matches!(
            words_equal(&free, &xxix, &Word::letter(q, x), &lim).unwrap(),
            WordEquality::Yes(_)
        ));

        let (_, _, _, po) = circle_pushout();
        let q = po.presentation.quiver();
        let loop_ab = Word::new(q, None, vec![Letter::pos(0), Letter::neg(1)]).unwrap();
        match words_equal(&po.presentation, &loop_ab, &Word::empty(0), &lim).unwrap() {
            WordEquality::No(sep) => assert_eq!(sep.target, "C2"),
            other => panic!("expected separation, got {other:?}"),
        }

        // Baumslag-Solitar BS(1,2): a^-1 b a = b^2. With no completion budget
        // and no targets nothing can be said about b a = a b b.
        let (a, b) = (Letter::pos(0), Letter::pos(1));
        let bs = GroupoidPresentation::group("*", &["a", "b"], &[vec![a.inv(), b, a, b.inv(), b.inv()]]).unwrap();
        let q = bs.quiver();
        let tight = EqualityLimits {
            completion: CompletionLimits {
                max_rules: 0,
                max_rule_len: 1,
                max_rounds: 0,
            },
            targets: vec![],
            guard: SizeGuard::default(),
        };
        let lhs = Word::new(q, None, vec![b, a]).unwrap();
        let rhs = Word::new(q, None, vec![a, b, b]).unwrap();
        assert_eq!(words_equal(&bs, &lhs, &rhs, &tight).unwrap(), WordEquality::Unknown);

        // In C3, z^-1 = z z is found by rewriting.
        let z = Letter::pos(0);
        let c3 = GroupoidPresentation::group("*", &["z"], &[vec![z, z, z]]).unwrap();
        let q = c3.quiver();
        let zi = Word::letter(q, z.inv());
        let zz = Word::new(q, None, vec![z, z]).unwrap();
        match words_equal(&c3, &zi, &zz, &lim).unwrap() {
            WordEquality::Yes(d) => {
                assert_eq!(d.steps.first(), Some(&zi));
                assert_eq!(d.steps.last(), Some(&zz));
            }
            other => panic!("expected a derivation, got {other:?}"),
        }
    }

    #[test]
    fn non_coterminal_words_are_an_error() {
        let (_, _, _, po) = circle_pushout();
        let q = po.presentation.quiver();
        let a = Word::letter(q, Letter::pos(0));
        assert!(words_equal(&po.presentation, &a, &Word::empty(0), &EqualityLimits::default()).is_err());
    }
}
