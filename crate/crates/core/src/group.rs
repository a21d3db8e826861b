//! Finite groups as explicit Cayley tables.
//!
//! Elements are indices `0..order`. Products are read diagrammatically:
//! `mul(a, b)` is "a, then b". For permutation groups this means
//! `(a·b)(i) = b(a(i))`, i.e. points are acted on from the right.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::guard::{sat_pow, GuardExceeded, SizeGuard};

/// Element index inside a [`FiniteGroup`].
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group has no elements")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("table row {row} has {len} entries, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative: ({a}·{b})·{c} = {left} but {a}·({b}·{c}) = {right}")]
    NonAssociative {
        a: String,
        b: String,
        c: String,
        left: String,
        right: String,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element `{0}` has no inverse")]
    NoInverse(String),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Elem>,
    unit: Elem,
    inverse: Vec<Elem>,
}

impl FiniteGroup {
    /// Validates a Cayley table given row by row: `table[a][b] = a·b`.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        if table.len() != n {
            return Err(GroupError::RaggedTable {
                row: table.len(),
                len: 0,
                expected: n,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::RaggedTable {
                    row,
                    len: entries.len(),
                    expected: n,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { row, col, value });
                }
                flat.push(value);
            }
        }
        Self::validate(names, flat)
    }

    /// Builds the table from a product function, then validates it.
    pub fn from_fn(names: Vec<String>, mul: impl Fn(Elem, Elem) -> Elem) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let value = mul(a, b);
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { row: a, col: b, value });
                }
                flat.push(value);
            }
        }
        Self::validate(names, flat)
    }

    fn validate(names: Vec<String>, table: Vec<Elem>) -> Result<Self, GroupError> {
        let n = names.len();
        let at = |a: Elem, b: Elem| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    let left = at(ab, c);
                    let right = at(a, at(b, c));
                    if left != right {
                        return Err(GroupError::NonAssociative {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                            left: names[left].clone(),
                            right: names[right].clone(),
                        });
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| at(a, b) == unit && at(b, a) == unit)
                .ok_or_else(|| GroupError::NoInverse(names[a].clone()))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            names,
            table,
            unit,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Integers mod `n` under addition, elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(names, |a, b| (a + b) % n).expect("cyclic group table is valid")
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(cycle_perm(degree, &[0, 1]));
            gens.push((0..degree).map(|i| (i + 1) % degree).collect());
        }
        Self::from_permutations(degree, &gens).expect("symmetric generators are permutations")
    }

    pub fn alternating(degree: usize) -> Self {
        let gens: Vec<Vec<usize>> = (2..degree).map(|k| cycle_perm(degree, &[0, 1, k])).collect();
        Self::from_permutations(degree, &gens).expect("3-cycles are permutations")
    }

    /// Closure of a set of permutations of `0..degree`.
    ///
    /// Elements are sorted lexicographically by image tuple, so the identity
    /// is element 0, and named in 1-based cycle notation.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        for g in gens {
            check_perm(degree, g)?;
        }
        let elements = perm_closure(degree, gens);
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        let index = |p: &Vec<usize>| elements.binary_search(p).expect("closed under products");
        let n = elements.len();
        let mut table = Vec::with_capacity(n);
        for a in &elements {
            let row = elements.iter().map(|b| index(&compose_perm(a, b))).collect();
            table.push(row);
        }
        Self::from_table(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    #[inline]
    pub fn unit(&self) -> Elem {
        self.unit
    }

    /// `p⁻¹·m·p`, the right conjugate of `m` by `p`.
    pub fn conj(&self, m: Elem, p: Elem) -> Elem {
        self.mul(self.mul(self.inv(p), m), p)
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// First non-commuting pair in element order.
    pub fn noncommuting_pair(&self) -> Option<(Elem, Elem)> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.unit {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted carrier of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order()];
        seen[self.unit] = true;
        let mut queue = VecDeque::from([self.unit]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: scan elements in order, keep those outside the
    /// subgroup generated so far.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = self.subgroup(&gens);
        for a in self.elements() {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.subgroup(&gens);
            }
        }
        gens
    }

    /// Extends generator images to a homomorphism into `target`.
    ///
    /// Walks the Cayley graph of `self` on `gens`; returns `None` if the
    /// assignment is inconsistent or `gens` does not generate.
    pub fn extend_hom(&self, gens: &[Elem], images: &[Elem], target: &FiniteGroup) -> Option<Vec<Elem>> {
        debug_assert_eq!(gens.len(), images.len());
        let mut map: Vec<Option<Elem>> = vec![None; self.order()];
        map[self.unit] = Some(target.unit());
        let mut queue = VecDeque::from([self.unit]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x].expect("queued elements are mapped");
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = target.mul(fx, img);
                match map[y] {
                    None => {
                        map[y] = Some(fy);
                        queue.push_back(y);
                    }
                    Some(existing) if existing != fy => return None,
                    Some(_) => {}
                }
            }
        }
        map.into_iter().collect()
    }

    /// Checks that `map` is a homomorphism `self → target`; returns the first
    /// failing pair.
    pub fn hom_violation(&self, map: &[Elem], target: &FiniteGroup) -> Option<(Elem, Elem)> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .find(|&(a, b)| map[self.mul(a, b)] != target.mul(map[a], map[b]))
    }

    /// Every homomorphism `self → target`, ordered by generator images.
    pub fn homomorphisms(&self, target: &FiniteGroup, guard: &SizeGuard) -> Result<Vec<Vec<Elem>>, GuardExceeded> {
        let gens = self.generators();
        guard.check(sat_pow(target.order() as u128, gens.len()))?;
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        loop {
            let orders_ok = gens
                .iter()
                .zip(&images)
                .all(|(&g, &img)| self.element_order(g).is_multiple_of(target.element_order(img)));
            if orders_ok {
                if let Some(map) = self.extend_hom(&gens, &images, target) {
                    out.push(map);
                }
            }
            if !odometer(&mut images, target.order()) {
                break;
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// All automorphisms as element maps, sorted so the identity comes first.
    pub fn automorphisms(&self, guard: &SizeGuard) -> Result<Vec<Vec<Elem>>, GuardExceeded> {
        let mut auts = self.homomorphisms(self, guard)?;
        auts.retain(|map| is_bijection(map));
        Ok(auts)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {} {{", self.order())?;
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "}}")
    }
}

/// Advances a little-endian counter with digits in `0..base`; false on wrap.
pub(crate) fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

pub(crate) fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    for &x in map {
        if x >= seen.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn check_perm(degree: usize, p: &[usize]) -> Result<(), GroupError> {
    if p.len() != degree || !is_bijection(p) {
        return Err(GroupError::BadPermutation(format!("{p:?} on {degree} points")));
    }
    Ok(())
}

/// `a` then `b`.
pub fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

fn cycle_perm(degree: usize, cycle: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for (i, &x) in cycle.iter().enumerate() {
        p[x] = cycle[(i + 1) % cycle.len()];
    }
    p
}

fn perm_closure(degree: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose_perm(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// 1-based cycle notation; the identity is `()`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut done = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if done[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !done[x] {
            done[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses 1-based cycle notation such as `(1 2)(3 4 5)` or `()`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<usize>, GroupError> {
    let bad = || GroupError::BadPermutation(format!("`{text}` on {degree} points"));
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut moved = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().ok().filter(|&x| x >= 1 && x <= degree).map(|x| x - 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        for (i, &x) in points.iter().enumerate() {
            if moved[x] {
                return Err(bad());
            }
            moved[x] = true;
            perm[x] = points[(i + 1) % points.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.unit(), 0);
        assert_eq!(s3.name(0), "()");
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::alternating(3).order(), 3);
    }

    #[test]
    fn cycle_notation_round_trips() {
        for p in perm_closure(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]) {
            assert_eq!(parse_cycles(&cycle_notation(&p), 4).unwrap(), p);
        }
        assert!(parse_cycles("(1 1)", 3).is_err());
        assert!(parse_cycles("(1 4)", 3).is_err());
    }

    #[test]
    fn permutation_products_act_on_the_right() {
        let s3 = FiniteGroup::symmetric(3);
        let a = s3.index_of("(1 2)").unwrap();
        let b = s3.index_of("(2 3)").unwrap();
        // 1 -a-> 2 -b-> 3, 3 -a-> 3 -b-> 2, 2 -a-> 1 -b-> 1
        assert_eq!(s3.name(s3.mul(a, b)), "(1 3 2)");
    }

    #[test]
    fn nonassociative_table_names_a_triple() {
        // a·b = b·a = a on {e, a, b}, a·a = b, b·b = e: not associative.
        let names = vec!["e".to_string(), "a".to_string(), "b".to_string()];
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 0]];
        match FiniteGroup::from_table(names, table) {
            Err(GroupError::NonAssociative { .. }) => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn automorphism_counts() {
        let guard = SizeGuard::default();
        assert_eq!(FiniteGroup::cyclic(2).automorphisms(&guard).unwrap().len(), 1);
        assert_eq!(FiniteGroup::cyclic(3).automorphisms(&guard).unwrap().len(), 2);
        assert_eq!(FiniteGroup::cyclic(5).automorphisms(&guard).unwrap().len(), 4);
        assert_eq!(FiniteGroup::symmetric(3).automorphisms(&guard).unwrap().len(), 6);
        // Aut(C2 x C2) = S3
        let v4 = FiniteGroup::from_permutations(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        assert_eq!(v4.automorphisms(&guard).unwrap().len(), 6);
    }

    #[test]
    fn homomorphisms_c4_to_c2() {
        let homs = FiniteGroup::cyclic(4)
            .homomorphisms(&FiniteGroup::cyclic(2), &SizeGuard::default())
            .unwrap();
        assert_eq!(homs.len(), 2);
    }
}
