//! Crossed modules `μ: M → P` over finite groupoids, with right actions.
//!
//! `M` is a family of groups indexed by the objects of `P`; `μ` sends
//! `M(x)` into the loops at `x`, and an arrow `p: x → y` acts as a map
//! `M(x) → M(y)` written `m ↦ m^p`.

use std::fmt;

use thiserror::Error;

use crate::group::{is_bijection, odometer, Elem, FiniteGroup, GroupError};
use crate::groupoid::{Arrow, FiniteGroupoid, GroupoidMorphism, Obj};
use crate::guard::{sat_mul, sat_pow, GuardExceeded, SizeGuard};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XModError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Guard(#[from] GuardExceeded),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("μ sends `{element}` in M({object}) to `{image}`, which is not a loop at {object}")]
    MuNotLoop { object: String, element: String, image: String },
    #[error("action of `{arrow}` is out of range")]
    ActionOutOfRange { arrow: String },
    #[error("elements {{{0}}} do not form a subgroup")]
    NotSubgroup(String),
    #[error("not normal: `{conjugator}`⁻¹ `{element}` `{conjugator}` = `{image}` lies outside the subgroup")]
    NotNormal {
        element: String,
        conjugator: String,
        image: String,
        /// Every conjugator that moves `element` out of the subgroup.
        conjugators: Vec<String>,
    },
    #[error("crossed modules are over different base groupoids")]
    DifferentBase,
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    p: FiniteGroupoid,
    m: Vec<FiniteGroup>,
    mu: Vec<Vec<Arrow>>,
    action: Vec<Vec<Elem>>,
}

impl CrossedModule {
    /// `mu[x][m]` is `μ(m)` for `m ∈ M(x)`; `action[p][m]` is `m^p` for
    /// `m ∈ M(src p)`. Only shapes are checked here; see [`check_axioms`].
    pub fn new(
        p: FiniteGroupoid,
        m: Vec<FiniteGroup>,
        mu: Vec<Vec<Arrow>>,
        action: Vec<Vec<Elem>>,
    ) -> Result<Self, XModError> {
        if m.len() != p.object_count() || mu.len() != p.object_count() {
            return Err(XModError::Shape(format!(
                "{} objects but {} groups and {} boundary maps",
                p.object_count(),
                m.len(),
                mu.len()
            )));
        }
        for x in p.objects() {
            let (g, map) = (&m[x.0], &mu[x.0]);
            if map.len() != g.order() {
                return Err(XModError::Shape(format!("μ at {} has the wrong length", p.object_name(x))));
            }
            for (e, &a) in map.iter().enumerate() {
                if a.0 >= p.arrow_count() || p.src(a) != x || p.tgt(a) != x {
                    return Err(XModError::MuNotLoop {
                        object: p.object_name(x).to_string(),
                        element: g.name(e).to_string(),
                        image: if a.0 < p.arrow_count() {
                            p.arrow_name(a).to_string()
                        } else {
                            format!("#{}", a.0)
                        },
                    });
                }
            }
        }
        if action.len() != p.arrow_count() {
            return Err(XModError::Shape(format!(
                "{} arrows but {} action maps",
                p.arrow_count(),
                action.len()
            )));
        }
        for a in p.arrows() {
            let (from, to) = (&m[p.src(a).0], &m[p.tgt(a).0]);
            if action[a.0].len() != from.order() || action[a.0].iter().any(|&v| v >= to.order()) {
                return Err(XModError::ActionOutOfRange {
                    arrow: p.arrow_name(a).to_string(),
                });
            }
        }
        Ok(CrossedModule { p, m, mu, action })
    }

    /// One-object case: `μ` as element indices of `p`, action as a function
    /// `(m, p) ↦ m^p`.
    pub fn over_group(
        p: &FiniteGroup,
        m: FiniteGroup,
        mu: Vec<Elem>,
        action: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, XModError> {
        let action = p.elements().map(|q| m.elements().map(|x| action(x, q)).collect()).collect();
        Self::new(
            FiniteGroupoid::from_group(p),
            vec![m],
            vec![mu.into_iter().map(Arrow).collect()],
            action,
        )
    }

    pub fn base(&self) -> &FiniteGroupoid {
        &self.p
    }

    pub fn group(&self, x: Obj) -> &FiniteGroup {
        &self.m[x.0]
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.m
    }

    pub fn mu(&self, x: Obj, m: Elem) -> Arrow {
        self.mu[x.0][m]
    }

    /// `m^p` for `m ∈ M(src p)`.
    pub fn act(&self, m: Elem, p: Arrow) -> Elem {
        self.action[p.0][m]
    }

    pub fn is_one_object(&self) -> bool {
        self.p.object_count() == 1
    }

    /// Total number of elements across the family `M`.
    pub fn m_size(&self) -> usize {
        self.m.iter().map(|g| g.order()).sum()
    }

    pub fn mu_is_trivial(&self) -> bool {
        self.p
            .objects()
            .all(|x| self.mu[x.0].iter().all(|&a| self.p.is_identity(a)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    MuHomomorphism,
    ActionIdentity,
    ActionComposition,
    ActionHomomorphism,
    Cm1,
    Cm2,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::MuHomomorphism => "μ homomorphism",
            Axiom::ActionIdentity => "action identity",
            Axiom::ActionComposition => "action composition",
            Axiom::ActionHomomorphism => "action by automorphisms",
            Axiom::Cm1 => "CM1",
            Axiom::Cm2 => "CM2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Named witness values, e.g. `[("m", "(1 2)"), ("n", "(1 3)")]`.
    pub witness: Vec<(&'static str, String)>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{} fails at {}: {} ≠ {}", self.axiom, w.join(", "), self.lhs, self.rhs)
    }
}

/// First witness for each violated axiom family, in [`Axiom`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&AxiomViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

/// Exhaustive check of the action laws, `μ` being a homomorphism, CM1 and
/// CM2.
pub fn check_axioms(xm: &CrossedModule) -> AxiomReport {
    let p = &xm.p;
    let mut violations = Vec::new();
    let an = |a: Arrow| p.arrow_name(a).to_string();

    'mu: for x in p.objects() {
        let g = xm.group(x);
        for m in g.elements() {
            for n in g.elements() {
                let lhs = xm.mu(x, g.mul(m, n));
                let rhs = p.compose(xm.mu(x, m), xm.mu(x, n));
                if lhs != rhs {
                    violations.push(AxiomViolation {
                        axiom: Axiom::MuHomomorphism,
                        witness: vec![("m", g.name(m).into()), ("n", g.name(n).into())],
                        lhs: format!("μ(mn) = {}", an(lhs)),
                        rhs: format!("μ(m)μ(n) = {}", an(rhs)),
                    });
                    break 'mu;
                }
            }
        }
    }

    'id: for x in p.objects() {
        let g = xm.group(x);
        let id = p.identity(x);
        for m in g.elements() {
            let got = xm.act(m, id);
            if got != m {
                violations.push(AxiomViolation {
                    axiom: Axiom::ActionIdentity,
                    witness: vec![("m", g.name(m).into()), ("object", p.object_name(x).into())],
                    lhs: format!("m^id = {}", g.name(got)),
                    rhs: format!("m = {}", g.name(m)),
                });
                break 'id;
            }
        }
    }

    'comp: for a in p.arrows() {
        let g = xm.group(p.src(a));
        for b in p.arrows().filter(|&b| p.src(b) == p.tgt(a)) {
            let ab = p.compose(a, b);
            let end = xm.group(p.tgt(b));
            for m in g.elements() {
                let lhs = xm.act(xm.act(m, a), b);
                let rhs = xm.act(m, ab);
                if lhs != rhs {
                    violations.push(AxiomViolation {
                        axiom: Axiom::ActionComposition,
                        witness: vec![("m", g.name(m).into()), ("p", an(a)), ("q", an(b))],
                        lhs: format!("(m^p)^q = {}", end.name(lhs)),
                        rhs: format!("m^(pq) = {}", end.name(rhs)),
                    });
                    break 'comp;
                }
            }
        }
    }

    'hom: for a in p.arrows() {
        let (g, h) = (xm.group(p.src(a)), xm.group(p.tgt(a)));
        for m in g.elements() {
            for n in g.elements() {
                let lhs = xm.act(g.mul(m, n), a);
                let rhs = h.mul(xm.act(m, a), xm.act(n, a));
                if lhs != rhs {
                    violations.push(AxiomViolation {
                        axiom: Axiom::ActionHomomorphism,
                        witness: vec![("m", g.name(m).into()), ("n", g.name(n).into()), ("p", an(a))],
                        lhs: format!("(mn)^p = {}", h.name(lhs)),
                        rhs: format!("m^p n^p = {}", h.name(rhs)),
                    });
                    break 'hom;
                }
            }
        }
    }

    'cm1: for a in p.arrows() {
        let (x, y) = (p.src(a), p.tgt(a));
        let g = xm.group(x);
        for m in g.elements() {
            let lhs = xm.mu(y, xm.act(m, a));
            let rhs = p
                .compose_all(&[p.inverse(a), xm.mu(x, m), a])
                .expect("conjugate of a loop composes");
            if lhs != rhs {
                violations.push(AxiomViolation {
                    axiom: Axiom::Cm1,
                    witness: vec![("m", g.name(m).into()), ("p", an(a))],
                    lhs: format!("μ(m^p) = {}", an(lhs)),
                    rhs: format!("p⁻¹μ(m)p = {}", an(rhs)),
                });
                break 'cm1;
            }
        }
    }

    'cm2: for x in p.objects() {
        let g = xm.group(x);
        for m in g.elements() {
            for n in g.elements() {
                let lhs = g.conj(m, n);
                let rhs = xm.act(m, xm.mu(x, n));
                if lhs != rhs {
                    violations.push(AxiomViolation {
                        axiom: Axiom::Cm2,
                        witness: vec![("m", g.name(m).into()), ("n", g.name(n).into())],
                        lhs: format!("n⁻¹mn = {}", g.name(lhs)),
                        rhs: format!("m^μ(n) = {}", g.name(rhs)),
                    });
                    break 'cm2;
                }
            }
        }
    }

    AxiomReport { violations }
}

/// Normal subgroup `N ⊴ P` given by its elements, with `μ` the inclusion and
/// `P` acting by conjugation `m^p = p⁻¹mp`.
pub fn from_normal_subgroup(p: &FiniteGroup, elements: &[Elem]) -> Result<CrossedModule, XModError> {
    let mut carrier: Vec<Elem> = elements.to_vec();
    carrier.sort_unstable();
    carrier.dedup();
    let list = || carrier.iter().map(|&e| p.name(e)).collect::<Vec<_>>().join(", ");
    if let Some(&bad) = carrier.iter().find(|&&e| e >= p.order()) {
        return Err(XModError::NotSubgroup(format!("#{bad}")));
    }
    let closed = carrier.contains(&p.unit())
        && carrier
            .iter()
            .all(|&a| carrier.iter().all(|&b| carrier.binary_search(&p.mul(a, b)).is_ok()));
    if !closed {
        return Err(XModError::NotSubgroup(list()));
    }
    for &m in &carrier {
        let conjugators: Vec<Elem> = p
            .elements()
            .filter(|&q| carrier.binary_search(&p.conj(m, q)).is_err())
            .collect();
        if let Some(&q) = conjugators.first() {
            return Err(XModError::NotNormal {
                element: p.name(m).to_string(),
                conjugator: p.name(q).to_string(),
                image: p.name(p.conj(m, q)).to_string(),
                conjugators: conjugators.iter().map(|&c| p.name(c).to_string()).collect(),
            });
        }
    }
    let pos = |e: Elem| carrier.binary_search(&e).expect("closed under the operation");
    let names = carrier.iter().map(|&e| p.name(e).to_string()).collect();
    let m = FiniteGroup::from_fn(names, |a, b| pos(p.mul(carrier[a], carrier[b])))?;
    CrossedModule::over_group(p, m, carrier.clone(), |x, q| pos(p.conj(carrier[x], q)))
}

/// `χ: G → Aut(G)`, `g ↦ (x ↦ g⁻¹xg)`, with `Aut(G)` acting by evaluation.
/// Automorphisms compose diagrammatically.
pub fn automorphism_xmod(g: &FiniteGroup, guard: &SizeGuard) -> Result<CrossedModule, XModError> {
    let auts = g.automorphisms(guard)?;
    let gens = g.generators();
    let index = |map: &[Elem]| auts.iter().position(|a| a == map).expect("closed under composition");
    let names = auts
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if i == 0 {
                return "id".to_string();
            }
            let parts: Vec<String> = gens.iter().map(|&x| format!("{}>{}", g.name(x), g.name(a[x]))).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let aut = FiniteGroup::from_fn(names, |a, b| {
        let composite: Vec<Elem> = g.elements().map(|x| auts[b][auts[a][x]]).collect();
        index(&composite)
    })?;
    let mu = g
        .elements()
        .map(|h| index(&g.elements().map(|x| g.conj(x, h)).collect::<Vec<_>>()))
        .collect();
    CrossedModule::over_group(&aut, g.clone(), mu, |m, a| auts[a][m])
}

/// Elements of `ker μ` in each `M(x)` and the first pair `(k, m)` with
/// `μ(k) = 1` and `km ≠ mk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub kernel: Vec<Vec<Elem>>,
    pub witness: Option<(Obj, Elem, Elem)>,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn kernel_central_check(xm: &CrossedModule) -> KernelReport {
    let mut kernel = Vec::new();
    let mut witness = None;
    for x in xm.p.objects() {
        let g = xm.group(x);
        let ker: Vec<Elem> = g.elements().filter(|&k| xm.p.is_identity(xm.mu(x, k))).collect();
        if witness.is_none() {
            witness = ker
                .iter()
                .flat_map(|&k| g.elements().map(move |m| (k, m)))
                .find(|&(k, m)| g.mul(k, m) != g.mul(m, k))
                .map(|(k, m)| (x, k, m));
        }
        kernel.push(ker);
    }
    KernelReport { kernel, witness }
}

/// A morphism of crossed modules: a groupoid morphism on the bases and a
/// homomorphism `M(x) → M'(f x)` for every object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XModMorphism {
    pub base: GroupoidMorphism,
    pub maps: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XModMorphismFault {
    Base,
    Shape,
    NotHomomorphism { object: Obj, pair: (Elem, Elem) },
    Boundary { object: Obj, element: Elem },
    Equivariance { element: Elem, arrow: Arrow },
}

impl XModMorphism {
    /// First failed law, or `None` if `self` is a morphism `from → to`.
    pub fn fault(&self, from: &CrossedModule, to: &CrossedModule) -> Option<XModMorphismFault> {
        if !crate::groupoid::check_morphism(&self.base, &from.p, &to.p).is_empty() {
            return Some(XModMorphismFault::Base);
        }
        if self.maps.len() != from.p.object_count() {
            return Some(XModMorphismFault::Shape);
        }
        for x in from.p.objects() {
            let (g, h) = (from.group(x), to.group(self.base.obj(x)));
            let map = &self.maps[x.0];
            if map.len() != g.order() || map.iter().any(|&v| v >= h.order()) {
                return Some(XModMorphismFault::Shape);
            }
            if let Some(pair) = g.hom_violation(map, h) {
                return Some(XModMorphismFault::NotHomomorphism { object: x, pair });
            }
            if let Some(m) = g
                .elements()
                .find(|&m| to.mu(self.base.obj(x), map[m]) != self.base.arrow(from.mu(x, m)))
            {
                return Some(XModMorphismFault::Boundary { object: x, element: m });
            }
        }
        for a in from.p.arrows() {
            let (x, y) = (from.p.src(a), from.p.tgt(a));
            for m in from.group(x).elements() {
                if self.maps[y.0][from.act(m, a)] != to.act(self.maps[x.0][m], self.base.arrow(a)) {
                    return Some(XModMorphismFault::Equivariance { element: m, arrow: a });
                }
            }
        }
        None
    }
}

/// Homomorphisms `M_a(x) → M_b(x)` compatible with `μ`, per object, built
/// from generator images.
fn mu_compatible_homs(a: &CrossedModule, b: &CrossedModule, x: Obj, bijective: bool) -> Vec<Vec<Elem>> {
    let (g, h) = (a.group(x), b.group(x));
    let gens = g.generators();
    let choices: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| h.elements().filter(|&t| b.mu(x, t) == a.mu(x, s)).collect())
        .collect();
    let mut out = Vec::new();
    if choices.iter().any(|c| c.is_empty()) {
        return out;
    }
    let mut digits = vec![0; gens.len()];
    loop {
        let images: Vec<Elem> = digits.iter().zip(&choices).map(|(&d, c)| c[d]).collect();
        if let Some(map) = g.extend_hom(&gens, &images, h) {
            let mu_ok = g.elements().all(|m| b.mu(x, map[m]) == a.mu(x, m));
            if mu_ok && (!bijective || (g.order() == h.order() && is_bijection(&map))) {
                out.push(map);
            }
        }
        if !advance(&mut digits, &choices) {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

fn advance<T>(digits: &mut [usize], choices: &[Vec<T>]) -> bool {
    for (d, c) in digits.iter_mut().zip(choices) {
        *d += 1;
        if *d < c.len() {
            return true;
        }
        *d = 0;
    }
    false
}

/// Morphisms `a → b` that are the identity on a shared base groupoid,
/// optionally restricted to isomorphisms.
pub fn morphisms_fixing_base(
    a: &CrossedModule,
    b: &CrossedModule,
    bijective: bool,
    guard: &SizeGuard,
) -> Result<Vec<XModMorphism>, XModError> {
    if a.p != b.p {
        return Err(XModError::DifferentBase);
    }
    let per_object: Vec<Vec<Vec<Elem>>> = a.p.objects().map(|x| mu_compatible_homs(a, b, x, bijective)).collect();
    let total = per_object
        .iter()
        .fold(1u128, |acc, c| sat_mul(acc, c.len() as u128));
    guard.check(total)?;
    let mut out = Vec::new();
    if total == 0 {
        return Ok(out);
    }
    let base = GroupoidMorphism::identity(&a.p);
    let mut digits = vec![0; per_object.len()];
    loop {
        let candidate = XModMorphism {
            base: base.clone(),
            maps: digits.iter().zip(&per_object).map(|(&d, c)| c[d].clone()).collect(),
        };
        if candidate.fault(a, b).is_none() {
            out.push(candidate);
        }
        if !advance(&mut digits, &per_object) {
            break;
        }
    }
    Ok(out)
}

/// An isomorphism `a → b` fixing the base, if one exists.
pub fn find_isomorphism(a: &CrossedModule, b: &CrossedModule, guard: &SizeGuard) -> Result<Option<XModMorphism>, XModError> {
    Ok(morphisms_fixing_base(a, b, true, guard)?.into_iter().next())
}

fn same_group_base(p: &FiniteGroup, c: &CrossedModule) -> bool {
    c.is_one_object()
        && c.p.arrow_count() == p.order()
        && p
            .elements()
            .all(|a| p.elements().all(|b| c.p.compose(Arrow(a), Arrow(b)).0 == p.mul(a, b)))
}

/// Free crossed module on generators `R` with boundary values `w(r) ∈ P`,
/// kept symbolic. Formal generators are pairs `(r, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeXModPresentation {
    pub p: FiniteGroup,
    pub generators: Vec<String>,
    pub w: Vec<Elem>,
}

/// A formal generator `(r, p)` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeLetter {
    pub r: usize,
    pub p: Elem,
    pub inverse: bool,
}

/// `x⁻¹ y x = y^{∂x}` for formal generators `x, y`, as a pair of words.
pub type PeifferRelation = (Vec<FreeLetter>, Vec<FreeLetter>);

pub fn free_xmod_presentation(p: &FiniteGroup, generators: &[&str], w: &[Elem]) -> Result<FreeXModPresentation, XModError> {
    if generators.len() != w.len() {
        return Err(XModError::Shape(format!("{} generators but {} boundary values", generators.len(), w.len())));
    }
    if let Some(&bad) = w.iter().find(|&&x| x >= p.order()) {
        return Err(XModError::Shape(format!("boundary value #{bad} is not in P")));
    }
    Ok(FreeXModPresentation {
        p: p.clone(),
        generators: generators.iter().map(|s| s.to_string()).collect(),
        w: w.to_vec(),
    })
}

impl FreeXModPresentation {
    pub fn generator_name(&self, r: usize, p: Elem) -> String {
        format!("({},{})", self.generators[r], self.p.name(p))
    }

    /// `∂(r, p) = p⁻¹ w(r) p`.
    pub fn boundary(&self, r: usize, p: Elem) -> Elem {
        self.p.conj(self.w[r], p)
    }

    /// `∂` of a formal word.
    pub fn word_boundary(&self, word: &[FreeLetter]) -> Elem {
        word.iter().fold(self.p.unit(), |acc, l| {
            let b = self.boundary(l.r, l.p);
            self.p.mul(acc, if l.inverse { self.p.inv(b) } else { b })
        })
    }

    /// `(r, p)^q = (r, pq)`.
    pub fn act(&self, l: FreeLetter, q: Elem) -> FreeLetter {
        FreeLetter {
            p: self.p.mul(l.p, q),
            ..l
        }
    }

    /// Peiffer relation for the generators `x = (r, p)` and `y = (s, q)`.
    pub fn peiffer(&self, x: (usize, Elem), y: (usize, Elem)) -> PeifferRelation {
        let xl = FreeLetter {
            r: x.0,
            p: x.1,
            inverse: false,
        };
        let yl = FreeLetter {
            r: y.0,
            p: y.1,
            inverse: false,
        };
        let lhs = vec![FreeLetter { inverse: true, ..xl }, yl, xl];
        let rhs = vec![self.act(yl, self.boundary(x.0, x.1))];
        (lhs, rhs)
    }
}

/// Outcome of testing the universal property against one finite target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeMorphismReport {
    /// Images `c_r` of the accepted assignments, lexicographic.
    pub assignments: Vec<Vec<Elem>>,
    /// Raw assignments `R → M_c` examined.
    pub candidates: u128,
    /// `∏_r |μ⁻¹(w(r))|`.
    pub fiber_product: u128,
}

impl FreeMorphismReport {
    pub fn agrees(&self) -> bool {
        self.assignments.len() as u128 == self.fiber_product
    }
}

/// Enumerates every assignment `r ↦ c_r ∈ M_c`, extends it to the formal
/// generators by `(r, p) ↦ c_r^p`, and keeps those that respect boundaries,
/// the action, and every Peiffer relation. The count is compared with the
/// fiber product predicted by freeness.
pub fn morphisms_from_free(
    f: &FreeXModPresentation,
    c: &CrossedModule,
    guard: &SizeGuard,
) -> Result<FreeMorphismReport, XModError> {
    if !same_group_base(&f.p, c) {
        return Err(XModError::DifferentBase);
    }
    let x = Obj(0);
    let m = c.group(x);
    let rank = f.generators.len();
    let candidates = sat_pow(m.order() as u128, rank);
    guard.check(sat_mul(candidates, sat_pow(f.p.order() as u128, 2)))?;
    let fiber_product = f
        .w
        .iter()
        .map(|&w| m.elements().filter(|&e| c.mu(x, e).0 == w).count() as u128)
        .product();
    let image = |cs: &[Elem], r: usize, p: Elem| c.act(cs[r], Arrow(p));
    let mut assignments = Vec::new();
    let mut cs = vec![0; rank];
    loop {
        let boundary_ok = (0..rank).all(|r| f.p.elements().all(|p| c.mu(x, image(&cs, r, p)).0 == f.boundary(r, p)));
        let action_ok = (0..rank).all(|r| {
            f.p.elements().all(|p| {
                f.p.elements().all(|q| {
                    let l = f.act(FreeLetter { r, p, inverse: false }, q);
                    image(&cs, r, l.p) == c.act(image(&cs, r, p), Arrow(q))
                })
            })
        });
        let peiffer_ok = boundary_ok
            && action_ok
            && (0..rank).all(|r| {
                (0..rank).all(|s| {
                    f.p.elements().all(|p| {
                        f.p.elements().all(|q| {
                            let (xi, yi) = (image(&cs, r, p), image(&cs, s, q));
                            let (_, rhs) = f.peiffer((r, p), (s, q));
                            m.conj(yi, xi) == image(&cs, rhs[0].r, rhs[0].p)
                        })
                    })
                })
            });
        if peiffer_ok {
            assignments.push(cs.clone());
        }
        if !odometer(&mut cs, m.order()) {
            break;
        }
    }
    assignments.sort();
    Ok(FreeMorphismReport {
        assignments,
        candidates,
        fiber_product,
    })
}

/// Crossed module over `Q` induced from a one-object crossed module over
/// `P` along `f: P → Q`, kept symbolic. Formal generators are `(m, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedXModPresentation {
    pub source: CrossedModule,
    pub q: FiniteGroup,
    /// `f` as element images.
    pub f: Vec<Elem>,
}

pub fn induced_xmod_presentation(
    xm: &CrossedModule,
    p: &FiniteGroup,
    q: &FiniteGroup,
    f: &[Elem],
) -> Result<InducedXModPresentation, XModError> {
    if !same_group_base(p, xm) {
        return Err(XModError::DifferentBase);
    }
    if f.len() != p.order() || f.iter().any(|&v| v >= q.order()) {
        return Err(XModError::Shape("f is not a map P → Q".into()));
    }
    if let Some((a, b)) = p.hom_violation(f, q) {
        return Err(XModError::NotHomomorphism(format!(
            "f({}·{}) ≠ f({})·f({})",
            p.name(a),
            p.name(b),
            p.name(a),
            p.name(b)
        )));
    }
    Ok(InducedXModPresentation {
        source: xm.clone(),
        q: q.clone(),
        f: f.to_vec(),
    })
}

/// Morphism counts from the induced crossed module into one target,
/// computed two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMorphismReport {
    /// Raw assignments `m ↦ c_m` satisfying the presentation's relations.
    pub by_relations: usize,
    /// Homomorphisms `h: M → M_c` with `μ_c h = f μ` and
    /// `h(m^p) = h(m)^{f(p)}`.
    pub by_homomorphisms: usize,
}

impl InducedMorphismReport {
    pub fn agrees(&self) -> bool {
        self.by_relations == self.by_homomorphisms
    }
}

impl InducedXModPresentation {
    pub fn generator_name(&self, m: Elem, q: Elem) -> String {
        format!("({},{})", self.source.group(Obj(0)).name(m), self.q.name(q))
    }

    /// `∂(m, q) = q⁻¹ f(μm) q`.
    pub fn boundary(&self, m: Elem, q: Elem) -> Elem {
        self.q.conj(self.f[self.source.mu(Obj(0), m).0], q)
    }

    /// Universal-property check against a crossed module over `Q`: every
    /// assignment `m ↦ c_m` (extended by `(m, q) ↦ c_m^q`) is tested against
    /// boundaries, the multiplication and action relations, and the
    /// Peiffer relations.
    pub fn verify_against(&self, c: &CrossedModule, guard: &SizeGuard) -> Result<InducedMorphismReport, XModError> {
        if !same_group_base(&self.q, c) {
            return Err(XModError::DifferentBase);
        }
        let (x, q) = (Obj(0), &self.q);
        let src = &self.source;
        let m = src.group(x);
        let target = c.group(x);
        let cq = |e: Elem, g: Elem| c.act(e, Arrow(g));
        guard.check(sat_pow(target.order() as u128, m.order()))?;

        let mut by_relations = 0;
        let mut cs = vec![0; m.order()];
        loop {
            let img = |e: Elem, g: Elem| cq(cs[e], g);
            let ok = m.elements().all(|e| {
                q.elements().all(|g| {
                    c.mu(x, img(e, g)).0 == self.boundary(e, g)
                        && m.elements().all(|e2| img(m.mul(e, e2), g) == target.mul(img(e, g), img(e2, g)))
                        && src.p.arrows().all(|p| img(src.act(e, p), g) == img(e, q.mul(self.f[p.0], g)))
                })
            }) && m.elements().all(|e| {
                q.elements().all(|g| {
                    m.elements().all(|e2| {
                        q.elements().all(|g2| {
                            let (xi, yi) = (img(e, g), img(e2, g2));
                            target.conj(yi, xi) == img(e2, q.mul(g2, self.boundary(e, g)))
                        })
                    })
                })
            });
            if ok {
                by_relations += 1;
            }
            if !odometer(&mut cs, target.order()) {
                break;
            }
        }

        let gens = m.generators();
        guard.check(sat_pow(target.order() as u128, gens.len()))?;
        let mut by_homomorphisms = 0;
        let mut images = vec![0; gens.len()];
        let mut seen = std::collections::BTreeSet::new();
        loop {
            if let Some(h) = m.extend_hom(&gens, &images, target) {
                let ok = m.elements().all(|e| c.mu(x, h[e]).0 == self.f[src.mu(x, e).0])
                    && src
                        .p
                        .arrows()
                        .all(|p| m.elements().all(|e| h[src.act(e, p)] == cq(h[e], self.f[p.0])));
                if ok && seen.insert(h) {
                    by_homomorphisms += 1;
                }
            }
            if !odometer(&mut images, target.order()) {
                break;
            }
        }
        Ok(InducedMorphismReport {
            by_relations,
            by_homomorphisms,
        })
    }
}

/// Bundled crossed modules used by tests, the CLI corpus, and benches.
pub mod samples {
    use super::*;

    /// `id: C2 → C2` with conjugation (trivial) action.
    pub fn c2_identity() -> CrossedModule {
        let c2 = FiniteGroup::cyclic(2);
        from_normal_subgroup(&c2, &[0, 1]).expect("normal")
    }

    pub fn a3_in_s3() -> CrossedModule {
        let s3 = FiniteGroup::symmetric(3);
        let a3: Vec<Elem> = s3
            .elements()
            .filter(|&e| s3.element_order(e) != 2)
            .collect();
        from_normal_subgroup(&s3, &a3).expect("A3 is normal in S3")
    }

    pub fn aut_s3() -> CrossedModule {
        automorphism_xmod(&FiniteGroup::symmetric(3), &SizeGuard::default()).expect("small")
    }

    pub fn aut_c3() -> CrossedModule {
        automorphism_xmod(&FiniteGroup::cyclic(3), &SizeGuard::default()).expect("small")
    }

    /// `M = C2`, `P = C2`, `μ` and action trivial.
    pub fn c2_trivial_boundary() -> CrossedModule {
        let c2 = FiniteGroup::cyclic(2);
        CrossedModule::over_group(&c2, c2.clone(), vec![0, 0], |m, _| m).expect("shapes")
    }

    /// `C4 → C2` onto, trivial action.
    pub fn c4_onto_c2() -> CrossedModule {
        let c2 = FiniteGroup::cyclic(2);
        CrossedModule::over_group(&c2, FiniteGroup::cyclic(4), vec![0, 1, 0, 1], |m, _| m).expect("shapes")
    }

    /// Trivial `M` over `C2`.
    pub fn trivial_over_c2() -> CrossedModule {
        let c2 = FiniteGroup::cyclic(2);
        CrossedModule::over_group(&c2, FiniteGroup::trivial(), vec![0], |m, _| m).expect("shapes")
    }

    /// `M = S3` over `C2` with trivial `μ` and action; fails CM2.
    pub fn s3_trivial_over_c2() -> CrossedModule {
        let c2 = FiniteGroup::cyclic(2);
        CrossedModule::over_group(&c2, FiniteGroup::symmetric(3), vec![0; 6], |m, _| m).expect("shapes")
    }

    /// `C2` at both ends of the interval groupoid, `μ` trivial, the arrow
    /// `ι` acting as the identity map.
    pub fn interval_c2() -> CrossedModule {
        let i = FiniteGroupoid::interval();
        let c2 = FiniteGroup::cyclic(2);
        let mu = i.objects().map(|x| vec![i.identity(x); 2]).collect();
        let action = i.arrows().map(|_| vec![0, 1]).collect();
        CrossedModule::new(i, vec![c2.clone(), c2], mu, action).expect("shapes")
    }

    /// Every bundled crossed module that satisfies the axioms.
    pub fn valid() -> Vec<(String, CrossedModule)> {
        vec![
            ("c2-identity".into(), c2_identity()),
            ("a3-in-s3".into(), a3_in_s3()),
            ("aut-s3".into(), aut_s3()),
            ("aut-c3".into(), aut_c3()),
            ("c2-trivial-boundary".into(), c2_trivial_boundary()),
            ("c4-onto-c2".into(), c4_onto_c2()),
            ("trivial-over-c2".into(), trivial_over_c2()),
            ("interval-c2".into(), interval_c2()),
        ]
    }

    /// Finite crossed modules over `C2` used as universal-property targets.
    pub fn c2_targets() -> Vec<(String, CrossedModule)> {
        vec![
            ("c2-identity".into(), c2_identity()),
            ("c2-trivial-boundary".into(), c2_trivial_boundary()),
            ("c4-onto-c2".into(), c4_onto_c2()),
            ("trivial-over-c2".into(), trivial_over_c2()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn bundled_crossed_modules_pass() {
        for (name, xm) in valid() {
            let r = check_axioms(&xm);
            assert!(r.passed(), "{name}: {:?}", r.violations);
            assert!(kernel_central_check(&xm).passed(), "{name}");
        }
    }

    #[test]
    fn trivial_boundary_nonabelian_fails_cm2_only() {
        let r = check_axioms(&s3_trivial_over_c2());
        assert_eq!(r.violations.len(), 1);
        let v = r.violation(Axiom::Cm2).unwrap();
        let s3 = FiniteGroup::symmetric(3);
        let m = s3.index_of(&v.witness[0].1).unwrap();
        let n = s3.index_of(&v.witness[1].1).unwrap();
        assert_ne!(s3.mul(m, n), s3.mul(n, m));
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.index_of("(1 2)").unwrap();
        match from_normal_subgroup(&s3, &[s3.unit(), t]) {
            Err(XModError::NotNormal {
                element,
                conjugator,
                conjugators,
                ..
            }) => {
                assert_eq!(element, "(1 2)");
                assert!(conjugators.contains(&"(1 3)".to_string()));
                let c = s3.index_of(&conjugator).unwrap();
                assert!(![s3.unit(), t].contains(&s3.conj(t, c)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(from_normal_subgroup(&s3, &[t, s3.unit(), 3]), Err(XModError::NotSubgroup(_))));
        let trivial = from_normal_subgroup(&s3, &[s3.unit()]).unwrap();
        assert!(check_axioms(&trivial).passed());
        assert_eq!(trivial.group(Obj(0)).order(), 1);
    }

    #[test]
    fn automorphism_groups() {
        let guard = SizeGuard::default();
        let c3 = automorphism_xmod(&FiniteGroup::cyclic(3), &guard).unwrap();
        assert_eq!(c3.base().arrow_count(), 2);
        assert!(c3.mu_is_trivial());
        let s3 = aut_s3();
        assert_eq!(s3.base().arrow_count(), 6);
        let images: std::collections::BTreeSet<_> = (0..6).map(|m| s3.mu(Obj(0), m)).collect();
        assert_eq!(images.len(), 6);
        let c2 = automorphism_xmod(&FiniteGroup::cyclic(2), &guard).unwrap();
        assert_eq!(c2.base().arrow_count(), 1);
    }

    #[test]
    fn broken_action_is_caught() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        // Sends everything to 1: not an automorphism, and fails m^id = m.
        let xm = CrossedModule::over_group(&c2, c3, vec![0, 0, 0], |_, _| 1).unwrap();
        let r = check_axioms(&xm);
        assert!(r.violation(Axiom::ActionIdentity).is_some());
        assert!(r.violation(Axiom::ActionHomomorphism).is_some());
        let bad_mu = CrossedModule::over_group(&c2, FiniteGroup::cyclic(3), vec![0, 1, 1], |m, _| m).unwrap();
        assert!(check_axioms(&bad_mu).violation(Axiom::MuHomomorphism).is_some());
    }

    #[test]
    fn isomorphism_search() {
        let guard = SizeGuard::default();
        for (name, xm) in valid() {
            assert!(find_isomorphism(&xm, &xm, &guard).unwrap().is_some(), "{name}");
        }
        assert!(find_isomorphism(&c2_identity(), &c2_trivial_boundary(), &guard).unwrap().is_none());
        assert_eq!(
            find_isomorphism(&c2_identity(), &a3_in_s3(), &guard),
            Err(XModError::DifferentBase)
        );
    }

    #[test]
    fn free_crossed_module_rules() {
        let c2 = FiniteGroup::cyclic(2);
        let f = free_xmod_presentation(&c2, &["r"], &[1]).unwrap();
        assert_eq!(f.boundary(0, 0), 1);
        assert_eq!(f.boundary(0, 1), 1);
        assert_eq!(f.generator_name(0, 1), "(r,1)");
        let g = FreeLetter { r: 0, p: 0, inverse: false };
        assert_eq!(f.act(g, 1).p, 1);
    }

    #[test]
    fn free_crossed_module_counts() {
        let guard = SizeGuard::default();
        let c2 = FiniteGroup::cyclic(2);
        let f = free_xmod_presentation(&c2, &["r"], &[1]).unwrap();
        let counts: Vec<usize> = [c2_identity(), trivial_over_c2(), c4_onto_c2()]
            .iter()
            .map(|c| morphisms_from_free(&f, c, &guard).unwrap().assignments.len())
            .collect();
        assert_eq!(counts, vec![1, 0, 2]);
        let at_unit = free_xmod_presentation(&c2, &["r"], &[0]).unwrap();
        assert_eq!(morphisms_from_free(&at_unit, &trivial_over_c2(), &guard).unwrap().assignments.len(), 1);
    }

    #[test]
    fn induced_along_identity_matches_direct_morphisms() {
        let guard = SizeGuard::default();
        let c2 = FiniteGroup::cyclic(2);
        for (_, xm) in c2_targets() {
            let ind = induced_xmod_presentation(&xm, &c2, &c2, &[0, 1]).unwrap();
            for (_, c) in c2_targets() {
                let r = ind.verify_against(&c, &guard).unwrap();
                assert!(r.agrees());
                let direct = morphisms_fixing_base(&xm, &c, false, &guard).unwrap().len();
                assert_eq!(r.by_homomorphisms, direct);
            }
        }
    }
}
