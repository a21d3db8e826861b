//! Quivers and words in their edges: the elements of free groupoids.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("edge `{0}` has an endpoint outside the vertex set")]
    BadEndpoint(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("letters {position} and {next} do not compose", next = position + 1)]
    NotComposable { position: usize },
    #[error("word does not start at the stated vertex")]
    WrongStart,
    #[error("words are not coterminal: {0} vs {1}")]
    NotCoterminal(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self, WordError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(WordError::DuplicateName(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e.name.as_str()) {
                return Err(WordError::DuplicateName(e.name.clone()));
            }
            if e.src >= vertices.len() || e.tgt >= vertices.len() {
                return Err(WordError::BadEndpoint(e.name.clone()));
            }
        }
        Ok(Quiver { vertices, edges })
    }

    /// One vertex and one loop per name.
    pub fn bouquet(vertex: &str, loops: &[&str]) -> Self {
        let edges = loops
            .iter()
            .map(|&name| Edge {
                name: name.to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        Quiver::new(vec![vertex.to_string()], edges).expect("bouquet names are distinct")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn letter_start(&self, l: Letter) -> usize {
        let e = &self.edges[l.edge];
        if l.inverse {
            e.tgt
        } else {
            e.src
        }
    }

    pub fn letter_end(&self, l: Letter) -> usize {
        let e = &self.edges[l.edge];
        if l.inverse {
            e.src
        } else {
            e.tgt
        }
    }

    /// Vertices reachable from `x` along edges in either direction, sorted.
    pub fn component_of(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertices.len()];
        seen[x] = true;
        let mut stack = vec![x];
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.src, e.tgt), (e.tgt, e.src)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        (0..self.vertices.len()).filter(|&v| seen[v]).collect()
    }

    /// Renders a word with edge names; the empty word is `1@vertex`.
    pub fn show(&self, w: &Word) -> String {
        if w.letters.is_empty() {
            return format!("1@{}", self.vertices[w.src]);
        }
        let parts: Vec<String> = w
            .letters
            .iter()
            .map(|l| {
                let name = &self.edges[l.edge].name;
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect();
        parts.join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub edge: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(edge: usize) -> Self {
        Letter { edge, inverse: false }
    }

    pub fn neg(edge: usize) -> Self {
        Letter { edge, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            edge: self.edge,
            inverse: !self.inverse,
        }
    }

    /// Dense code used by the rewriting engine: `2·edge + inverse`.
    pub fn code(self) -> u32 {
        (self.edge as u32) * 2 + self.inverse as u32
    }

    pub fn from_code(code: u32) -> Self {
        Letter {
            edge: (code / 2) as usize,
            inverse: code % 2 == 1,
        }
    }
}

/// A composable sequence of edges and formal inverses, with explicit
/// endpoints so the empty word still knows where it lives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    src: usize,
    tgt: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(v: usize) -> Self {
        Word {
            src: v,
            tgt: v,
            letters: Vec::new(),
        }
    }

    pub fn letter(q: &Quiver, l: Letter) -> Self {
        Word {
            src: q.letter_start(l),
            tgt: q.letter_end(l),
            letters: vec![l],
        }
    }

    /// Validates composability. `start` is required for the empty word and
    /// checked against the first letter otherwise.
    pub fn new(q: &Quiver, start: Option<usize>, letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some(l) = letters.iter().find(|l| l.edge >= q.edge_count()) {
            return Err(WordError::UnknownEdge(format!("#{}", l.edge)));
        }
        let src = match (letters.first(), start) {
            (Some(&l), Some(s)) if q.letter_start(l) != s => return Err(WordError::WrongStart),
            (Some(&l), _) => q.letter_start(l),
            (None, Some(s)) if s < q.vertex_count() => s,
            (None, Some(s)) => return Err(WordError::UnknownVertex(format!("#{s}"))),
            (None, None) => return Err(WordError::WrongStart),
        };
        let mut at = src;
        for (position, &l) in letters.iter().enumerate() {
            if q.letter_start(l) != at {
                return Err(WordError::NotComposable {
                    position: position.saturating_sub(1),
                });
            }
            at = q.letter_end(l);
        }
        Ok(Word { src, tgt: at, letters })
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.src == self.tgt
    }

    pub fn coterminal(&self, other: &Word) -> bool {
        self.src == other.src && self.tgt == other.tgt
    }

    pub fn inverse(&self) -> Word {
        Word {
            src: self.tgt,
            tgt: self.src,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `self` then `other`; `None` unless `tgt(self) == src(other)`.
    pub fn concat(&self, other: &Word) -> Option<Word> {
        if self.tgt != other.src {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Some(Word {
            src: self.src,
            tgt: other.tgt,
            letters,
        })
    }

    /// Reuses the endpoints of `self` with new letters. The caller guarantees
    /// the letters form a composable path between the same endpoints.
    pub(crate) fn with_letters(&self, letters: Vec<Letter>) -> Word {
        Word {
            src: self.src,
            tgt: self.tgt,
            letters,
        }
    }

    /// Cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        self.with_letters(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1@#{}", self.src);
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "#{}{}", l.edge, if l.inverse { "^-1" } else { "" })?;
        }
        Ok(())
    }
}

/// Distinct reduced words of length at most `k` starting at `x`, any end.
pub fn count_reduced_words(q: &Quiver, x: usize, k: usize) -> u128 {
    let codes = 2 * q.edge_count();
    // ways[c]: reduced words of the current length whose last letter has code c.
    let mut ways = vec![0u128; codes];
    for c in 0..codes {
        if q.letter_start(Letter::from_code(c as u32)) == x {
            ways[c] = 1;
        }
    }
    let mut total: u128 = 1;
    for len in 1..=k {
        if len > 1 {
            let mut next = vec![0u128; codes];
            for (last, &w) in ways.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let l = Letter::from_code(last as u32);
                let at = q.letter_end(l);
                for (c, slot) in next.iter_mut().enumerate() {
                    let m = Letter::from_code(c as u32);
                    if q.letter_start(m) == at && m != l.inv() {
                        *slot = slot.saturating_add(w);
                    }
                }
            }
            ways = next;
        }
        total = ways.iter().fold(total, |acc, &w| acc.saturating_add(w));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_parallel() -> Quiver {
        Quiver::new(
            vec!["0".into(), "1".into()],
            vec![
                Edge { name: "a".into(), src: 0, tgt: 1 },
                Edge { name: "b".into(), src: 0, tgt: 1 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let q = two_parallel();
        let (a, b) = (Letter::pos(0), Letter::pos(1));
        let w = Word::new(&q, None, vec![a, a.inv()]).unwrap();
        assert_eq!(w.free_reduce(), Word::empty(0));
        let w = Word::new(&q, None, vec![a, b.inv(), b]).unwrap();
        assert_eq!(w.free_reduce(), Word::letter(&q, a));
        let w = Word::new(&q, None, vec![a, b.inv()]).unwrap();
        assert_eq!(w.free_reduce(), w);
    }

    #[test]
    fn malformed_words_are_rejected() {
        let q = two_parallel();
        let a = Letter::pos(0);
        assert_eq!(
            Word::new(&q, None, vec![a, a]),
            Err(WordError::NotComposable { position: 0 })
        );
        assert_eq!(Word::new(&q, Some(1), vec![a]), Err(WordError::WrongStart));
        assert!(Word::new(&q, None, vec![]).is_err());
    }

    #[test]
    fn reduced_word_counts() {
        assert_eq!(count_reduced_words(&Quiver::bouquet("*", &["x"]), 0, 3), 7);
        assert_eq!(count_reduced_words(&Quiver::bouquet("*", &["x", "y"]), 0, 2), 17);
        assert_eq!(count_reduced_words(&Quiver::bouquet("*", &[]), 0, 5), 1);
    }
}
