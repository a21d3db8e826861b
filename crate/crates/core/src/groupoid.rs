//! Finite groupoids as explicit composition tables, their morphisms, and the
//! exhaustive morphism enumerator that backs every universal-property check.
//!
//! Composition is diagrammatic: `compose(a, b)` is defined when
//! `tgt(a) == src(b)` and means "a, then b".

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::guard::{sat_mul, sat_pow, GuardExceeded, SizeGuard};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowInfo {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("arrow `{0}` has an endpoint outside the object set")]
    BadEndpoint(String),
    #[error("composite {0}·{1} is not defined")]
    MissingComposite(String, String),
    #[error("composite {a}·{b} = {c} has the wrong endpoints")]
    CompositeEndpoints { a: String, b: String, c: String },
    #[error("not associative on ({a}, {b}, {c})")]
    NonAssociative { a: String, b: String, c: String },
    #[error("object `{0}` has no identity arrow")]
    NoIdentity(String),
    #[error("arrow `{0}` has no inverse")]
    NoInverse(String),
    #[error("unknown object {0}")]
    UnknownObject(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<ArrowInfo>,
    comp: Vec<Option<Arrow>>,
    identity: Vec<Arrow>,
    inverse: Vec<Arrow>,
    homs: Vec<Vec<Arrow>>,
}

impl FiniteGroupoid {
    /// Validates a groupoid. `comp` is only queried on composable pairs and
    /// must return `Some` for every one of them.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<ArrowInfo>,
        comp: impl Fn(Arrow, Arrow) -> Option<Arrow>,
    ) -> Result<Self, GroupoidError> {
        let n_obj = objects.len();
        let n = arrows.len();
        let mut names = BTreeSet::new();
        for name in &objects {
            if !names.insert(name.as_str()) {
                return Err(GroupoidError::DuplicateName(name.clone()));
            }
        }
        let mut arrow_names = BTreeSet::new();
        for info in &arrows {
            if !arrow_names.insert(info.name.as_str()) {
                return Err(GroupoidError::DuplicateName(info.name.clone()));
            }
            if info.src.0 >= n_obj || info.tgt.0 >= n_obj {
                return Err(GroupoidError::BadEndpoint(info.name.clone()));
            }
        }
        let mut table = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if arrows[a].tgt != arrows[b].src {
                    continue;
                }
                let c = comp(Arrow(a), Arrow(b))
                    .filter(|c| c.0 < n)
                    .ok_or_else(|| GroupoidError::MissingComposite(arrows[a].name.clone(), arrows[b].name.clone()))?;
                if arrows[c.0].src != arrows[a].src || arrows[c.0].tgt != arrows[b].tgt {
                    return Err(GroupoidError::CompositeEndpoints {
                        a: arrows[a].name.clone(),
                        b: arrows[b].name.clone(),
                        c: arrows[c.0].name.clone(),
                    });
                }
                table[a * n + b] = Some(c);
            }
        }
        let at = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = at(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = at(b, c) else { continue };
                    if at(ab.0, c) != at(a, bc.0) {
                        return Err(GroupoidError::NonAssociative {
                            a: arrows[a].name.clone(),
                            b: arrows[b].name.clone(),
                            c: arrows[c].name.clone(),
                        });
                    }
                }
            }
        }
        let mut identity = Vec::with_capacity(n_obj);
        for x in 0..n_obj {
            let id = (0..n)
                .find(|&e| {
                    arrows[e].src.0 == x
                        && arrows[e].tgt.0 == x
                        && (0..n).all(|a| {
                            (arrows[a].src.0 != x || at(e, a) == Some(Arrow(a)))
                                && (arrows[a].tgt.0 != x || at(a, e) == Some(Arrow(a)))
                        })
                })
                .ok_or_else(|| GroupoidError::NoIdentity(objects[x].clone()))?;
            identity.push(Arrow(id));
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let (s, t) = (arrows[a].src.0, arrows[a].tgt.0);
            let inv = (0..n)
                .find(|&b| at(a, b) == Some(identity[s]) && at(b, a) == Some(identity[t]))
                .ok_or_else(|| GroupoidError::NoInverse(arrows[a].name.clone()))?;
            inverse.push(Arrow(inv));
        }
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for (a, info) in arrows.iter().enumerate() {
            homs[info.src.0 * n_obj + info.tgt.0].push(Arrow(a));
        }
        Ok(FiniteGroupoid {
            objects,
            arrows,
            comp: table,
            identity,
            inverse,
            homs,
        })
    }

    /// Two objects `0, 1` and the arrows `id_0, id_1, iota: 0 → 1, iota^-1`.
    pub fn interval() -> Self {
        let objects = vec!["0".to_string(), "1".to_string()];
        let arrow = |name: &str, s, t| ArrowInfo {
            name: name.to_string(),
            src: Obj(s),
            tgt: Obj(t),
        };
        let arrows = vec![
            arrow("id_0", 0, 0),
            arrow("id_1", 1, 1),
            arrow("iota", 0, 1),
            arrow("iota^-1", 1, 0),
        ];
        // Hom-sets have at most one arrow, so the composite is the unique
        // arrow between the outer endpoints.
        let ends = [(0, 0), (1, 1), (0, 1), (1, 0)];
        Self::new(objects, arrows, |a, b| {
            let want = (ends[a.0].0, ends[b.0].1);
            ends.iter().position(|&e| e == want).map(Arrow)
        })
        .expect("interval groupoid is valid")
    }

    /// One object `*` whose arrows are the group elements.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let arrows = g
            .elements()
            .map(|a| ArrowInfo {
                name: g.name(a).to_string(),
                src: Obj(0),
                tgt: Obj(0),
            })
            .collect();
        Self::new(vec!["*".to_string()], arrows, |a, b| Some(Arrow(g.mul(a.0, b.0))))
            .expect("a group is a one-object groupoid")
    }

    /// Identity arrows only.
    pub fn discrete(objects: Vec<String>) -> Self {
        let arrows = objects
            .iter()
            .enumerate()
            .map(|(i, o)| ArrowInfo {
                name: format!("id_{o}"),
                src: Obj(i),
                tgt: Obj(i),
            })
            .collect();
        Self::new(objects, arrows, |a, _| Some(a)).expect("discrete groupoid is valid")
    }

    /// Disjoint union; names are prefixed with the part index only when they
    /// would otherwise collide.
    pub fn disjoint_union(parts: &[&FiniteGroupoid]) -> Self {
        let clash = |names: Vec<&str>| {
            let mut seen = BTreeSet::new();
            names.into_iter().any(|n| !seen.insert(n))
        };
        let prefix_obj = clash(parts.iter().flat_map(|p| p.objects.iter().map(String::as_str)).collect());
        let prefix_arr = clash(parts.iter().flat_map(|p| p.arrows.iter().map(|a| a.name.as_str())).collect());
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut obj_off = Vec::new();
        let mut arr_off = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            obj_off.push(objects.len());
            arr_off.push(arrows.len());
            let off = objects.len();
            for o in &p.objects {
                objects.push(if prefix_obj { format!("{i}.{o}") } else { o.clone() });
            }
            for a in &p.arrows {
                arrows.push(ArrowInfo {
                    name: if prefix_arr { format!("{i}.{}", a.name) } else { a.name.clone() },
                    src: Obj(a.src.0 + off),
                    tgt: Obj(a.tgt.0 + off),
                });
            }
        }
        let part_of = |a: usize| arr_off.iter().rposition(|&o| o <= a).expect("offsets start at 0");
        Self::new(objects, arrows, |a, b| {
            let (pa, pb) = (part_of(a.0), part_of(b.0));
            if pa != pb {
                return None;
            }
            let off = arr_off[pa];
            parts[pa]
                .try_compose(Arrow(a.0 - off), Arrow(b.0 - off))
                .map(|c| Arrow(c.0 + off))
        })
        .expect("disjoint union of groupoids is a groupoid")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len()).map(Obj)
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.arrows.len()).map(Arrow)
    }

    pub fn object_name(&self, x: Obj) -> &str {
        &self.objects[x.0]
    }

    pub fn arrow_name(&self, a: Arrow) -> &str {
        &self.arrows[a.0].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name).map(Obj)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<Arrow> {
        self.arrows.iter().position(|a| a.name == name).map(Arrow)
    }

    pub fn arrow_info(&self, a: Arrow) -> &ArrowInfo {
        &self.arrows[a.0]
    }

    #[inline]
    pub fn src(&self, a: Arrow) -> Obj {
        self.arrows[a.0].src
    }

    #[inline]
    pub fn tgt(&self, a: Arrow) -> Obj {
        self.arrows[a.0].tgt
    }

    #[inline]
    pub fn try_compose(&self, a: Arrow, b: Arrow) -> Option<Arrow> {
        self.comp[a.0 * self.arrows.len() + b.0]
    }

    /// Diagrammatic composite; panics if `tgt(a) != src(b)`.
    #[inline]
    pub fn compose(&self, a: Arrow, b: Arrow) -> Arrow {
        self.try_compose(a, b).unwrap_or_else(|| {
            panic!(
                "arrows `{}` and `{}` are not composable",
                self.arrow_name(a),
                self.arrow_name(b)
            )
        })
    }

    /// Composite of a nonempty composable sequence.
    pub fn compose_all(&self, arrows: &[Arrow]) -> Option<Arrow> {
        let (first, rest) = arrows.split_first()?;
        rest.iter().try_fold(*first, |acc, &b| self.try_compose(acc, b))
    }

    #[inline]
    pub fn identity(&self, x: Obj) -> Arrow {
        self.identity[x.0]
    }

    #[inline]
    pub fn inverse(&self, a: Arrow) -> Arrow {
        self.inverse[a.0]
    }

    pub fn is_identity(&self, a: Arrow) -> bool {
        self.identity[self.src(a).0] == a
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Arrow] {
        &self.homs[x.0 * self.objects.len() + y.0]
    }

    pub fn loops(&self, x: Obj) -> &[Arrow] {
        self.hom(x, x)
    }

    /// The group of loops at `x`, with the arrow behind each element.
    pub fn vertex_group(&self, x: Obj) -> Result<VertexGroup, GroupoidError> {
        if x.0 >= self.objects.len() {
            return Err(GroupoidError::UnknownObject(x.0));
        }
        let loops = self.loops(x).to_vec();
        let index = |a: Arrow| loops.iter().position(|&l| l == a).expect("loops are closed");
        let names = loops.iter().map(|&a| self.arrow_name(a).to_string()).collect();
        let group = FiniteGroup::from_fn(names, |i, j| index(self.compose(loops[i], loops[j])))
            .expect("loops of a groupoid form a group");
        Ok(VertexGroup { group, arrows: loops })
    }

    /// Partition of the objects into connected components, each block sorted,
    /// blocks ordered by least member.
    pub fn components(&self) -> Vec<Vec<Obj>> {
        let n = self.objects.len();
        let mut block = vec![usize::MAX; n];
        let mut out: Vec<Vec<Obj>> = Vec::new();
        for x in 0..n {
            if block[x] != usize::MAX {
                continue;
            }
            let members: Vec<Obj> = (0..n).filter(|&y| !self.hom(Obj(x), Obj(y)).is_empty()).map(Obj).collect();
            for y in &members {
                block[y.0] = out.len();
            }
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

impl fmt::Display for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "groupoid with {} objects and {} arrows",
            self.objects.len(),
            self.arrows.len()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGroup {
    pub group: FiniteGroup,
    /// `arrows[i]` is the loop behind group element `i`.
    pub arrows: Vec<Arrow>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupoidMorphism {
    pub obj_map: Vec<Obj>,
    pub arrow_map: Vec<Arrow>,
}

impl GroupoidMorphism {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidMorphism {
            obj_map: g.objects().collect(),
            arrow_map: g.arrows().collect(),
        }
    }

    #[inline]
    pub fn obj(&self, x: Obj) -> Obj {
        self.obj_map[x.0]
    }

    #[inline]
    pub fn arrow(&self, a: Arrow) -> Arrow {
        self.arrow_map[a.0]
    }

    /// `self` then `other`.
    pub fn then(&self, other: &GroupoidMorphism) -> GroupoidMorphism {
        GroupoidMorphism {
            obj_map: self.obj_map.iter().map(|&x| other.obj(x)).collect(),
            arrow_map: self.arrow_map.iter().map(|&a| other.arrow(a)).collect(),
        }
    }
}

/// First witness of each violated morphism law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    /// Map sizes do not match the domain, or images fall outside the codomain.
    Shape,
    Inverse { arrow: Arrow },
    Identity { object: Obj },
    Endpoints { arrow: Arrow },
    Composite { first: Arrow, second: Arrow },
}

/// Checks every morphism law exhaustively; an empty list means pass.
pub fn check_morphism(f: &GroupoidMorphism, g: &FiniteGroupoid, h: &FiniteGroupoid) -> Vec<MorphismViolation> {
    if f.obj_map.len() != g.object_count()
        || f.arrow_map.len() != g.arrow_count()
        || f.obj_map.iter().any(|x| x.0 >= h.object_count())
        || f.arrow_map.iter().any(|a| a.0 >= h.arrow_count())
    {
        return vec![MorphismViolation::Shape];
    }
    let mut out = Vec::new();
    if let Some(a) = g.arrows().find(|&a| f.arrow(g.inverse(a)) != h.inverse(f.arrow(a))) {
        out.push(MorphismViolation::Inverse { arrow: a });
    }
    if let Some(x) = g.objects().find(|&x| f.arrow(g.identity(x)) != h.identity(f.obj(x))) {
        out.push(MorphismViolation::Identity { object: x });
    }
    if let Some(a) = g
        .arrows()
        .find(|&a| h.src(f.arrow(a)) != f.obj(g.src(a)) || h.tgt(f.arrow(a)) != f.obj(g.tgt(a)))
    {
        out.push(MorphismViolation::Endpoints { arrow: a });
    }
    let composite = g
        .arrows()
        .flat_map(|a| g.arrows().map(move |b| (a, b)))
        .find(|&(a, b)| match g.try_compose(a, b) {
            Some(ab) => h.try_compose(f.arrow(a), f.arrow(b)) != Some(f.arrow(ab)),
            None => false,
        });
    if let Some((first, second)) = composite {
        out.push(MorphismViolation::Composite { first, second });
    }
    out
}

/// Number of candidate assignments `enumerate_morphisms` would visit: the
/// object maps, or the sum over object maps of the hom-set sizes of every
/// non-identity arrow, whichever is larger.
pub fn morphism_search_size(g: &FiniteGroupoid, h: &FiniteGroupoid) -> u128 {
    let n_obj = g.object_count();
    let object_maps = sat_pow(h.object_count() as u128, n_obj);
    if n_obj == 0 || object_maps > 10_000_000 {
        return object_maps;
    }
    let mut total: u128 = 0;
    let mut map = vec![0usize; n_obj];
    loop {
        let mut size: u128 = 1;
        for a in g.arrows().filter(|&a| !g.is_identity(a)) {
            let hs = h.hom(Obj(map[g.src(a).0]), Obj(map[g.tgt(a).0])).len() as u128;
            size = sat_mul(size, hs);
        }
        total = total.saturating_add(size);
        if !crate::group::odometer(&mut map, h.object_count()) {
            break;
        }
    }
    total.max(object_maps)
}

/// Every groupoid morphism `g → h`, ordered lexicographically by
/// (object-map tuple, arrow-image tuple).
pub fn enumerate_morphisms(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    guard: &SizeGuard,
) -> Result<Vec<GroupoidMorphism>, GuardExceeded> {
    guard.check(morphism_search_size(g, h))?;
    let n = g.arrow_count();
    // checks[k]: composable pairs (a, b) whose last-assigned member is arrow k.
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = g.try_compose(Arrow(a), Arrow(b)) {
                checks[a.max(b).max(c.0)].push((a, b, c.0));
            }
        }
    }
    let mut out = Vec::new();
    let mut obj_map = vec![Obj(0); g.object_count()];
    enumerate_object_maps(h, 0, &mut obj_map, &mut |obj_map| {
        let mut arrows = vec![Arrow(0); n];
        assign_arrows(g, h, obj_map, &checks, 0, &mut arrows, &mut out);
    });
    Ok(out)
}

fn enumerate_object_maps(
    h: &FiniteGroupoid,
    k: usize,
    map: &mut Vec<Obj>,
    visit: &mut dyn FnMut(&[Obj]),
) {
    if k == map.len() {
        visit(map);
        return;
    }
    for y in h.objects() {
        map[k] = y;
        enumerate_object_maps(h, k + 1, map, visit);
    }
}

fn assign_arrows(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    obj_map: &[Obj],
    checks: &[Vec<(usize, usize, usize)>],
    k: usize,
    arrows: &mut Vec<Arrow>,
    out: &mut Vec<GroupoidMorphism>,
) {
    if k == arrows.len() {
        out.push(GroupoidMorphism {
            obj_map: obj_map.to_vec(),
            arrow_map: arrows.clone(),
        });
        return;
    }
    let a = Arrow(k);
    let (s, t) = (obj_map[g.src(a).0], obj_map[g.tgt(a).0]);
    let forced;
    let candidates: &[Arrow] = if g.is_identity(a) {
        forced = [h.identity(s)];
        &forced
    } else {
        h.hom(s, t)
    };
    for &img in candidates {
        arrows[k] = img;
        let ok = checks[k]
            .iter()
            .all(|&(x, y, xy)| h.try_compose(arrows[x], arrows[y]) == Some(arrows[xy]));
        if ok {
            assign_arrows(g, h, obj_map, checks, k + 1, arrows, out);
        }
    }
}
