//! Bounded Knuth-Bendix completion for groupoid presentations.
//!
//! Words are sequences of letter codes (see [`Letter::code`]) compared in
//! shortlex order. Completion is best effort: it stops at the configured
//! limits and reports whether the resulting system is confluent. Every rule
//! it produces is a consequence of the relations, so rewriting with an
//! incomplete system is still sound for proving equalities.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::word::{Letter, Quiver, Word};

type Code = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_rule_len: usize,
    pub max_rounds: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_rules: 256,
            max_rule_len: 24,
            max_rounds: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Code,
    pub rhs: Code,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
    complete: bool,
}

fn shortlex(a: &[u32], b: &[u32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn find(hay: &[u32], needle: &[u32]) -> Option<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return None;
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

fn code_of(w: &Word) -> Code {
    w.letters().iter().map(|l| l.code()).collect()
}

impl RewriteSystem {
    /// Completes the free-cancellation rules of `q` together with the given
    /// relation pairs.
    pub fn complete(q: &Quiver, relations: &[(Word, Word)], limits: &CompletionLimits) -> Self {
        let mut pending: VecDeque<(Code, Code)> = VecDeque::new();
        for e in 0..q.edge_count() {
            let (x, y) = (Letter::pos(e).code(), Letter::neg(e).code());
            pending.push_back((vec![x, y], vec![]));
            pending.push_back((vec![y, x], vec![]));
        }
        for (u, v) in relations {
            pending.push_back((code_of(u), code_of(v)));
        }
        let mut sys = RewriteSystem {
            rules: Vec::new(),
            complete: false,
        };
        for _round in 0..limits.max_rounds {
            while let Some((a, b)) = pending.pop_front() {
                if !sys.absorb(a, b, &mut pending) {
                    return sys;
                }
                if sys.rules.len() > limits.max_rules
                    || sys.rules.iter().any(|r| r.lhs.len() > limits.max_rule_len)
                {
                    return sys;
                }
            }
            for i in 0..sys.rules.len() {
                for j in 0..sys.rules.len() {
                    for (x, y) in sys.critical_pairs(i, j) {
                        let (x, y) = (sys.reduce(&x), sys.reduce(&y));
                        if x != y {
                            pending.push_back((x, y));
                        }
                    }
                }
            }
            if pending.is_empty() {
                for k in 0..sys.rules.len() {
                    let rhs = sys.reduce(&sys.rules[k].rhs);
                    sys.rules[k].rhs = rhs;
                }
                sys.complete = true;
                return sys;
            }
        }
        sys
    }

    /// Orients and adds one equation, evicting rules it makes reducible.
    fn absorb(&mut self, a: Code, b: Code, pending: &mut VecDeque<(Code, Code)>) -> bool {
        let (a, b) = (self.reduce(&a), self.reduce(&b));
        let (lhs, rhs) = match shortlex(&a, &b) {
            Ordering::Equal => return true,
            Ordering::Greater => (a, b),
            Ordering::Less => (b, a),
        };
        let mut k = 0;
        while k < self.rules.len() {
            if find(&self.rules[k].lhs, &lhs).is_some() {
                let old = self.rules.remove(k);
                pending.push_back((old.lhs, old.rhs));
            } else {
                k += 1;
            }
        }
        self.rules.push(Rule { lhs, rhs });
        true
    }

    fn critical_pairs(&self, i: usize, j: usize) -> Vec<(Code, Code)> {
        let (r1, r2) = (&self.rules[i], &self.rules[j]);
        let mut out = Vec::new();
        for k in 1..r1.lhs.len().min(r2.lhs.len()) {
            if r1.lhs[r1.lhs.len() - k..] == r2.lhs[..k] {
                let mut x = r1.rhs.clone();
                x.extend_from_slice(&r2.lhs[k..]);
                let mut y = r1.lhs[..r1.lhs.len() - k].to_vec();
                y.extend_from_slice(&r2.rhs);
                out.push((x, y));
            }
        }
        if i != j {
            if let Some(p) = find(&r1.lhs, &r2.lhs) {
                let mut y = r1.lhs[..p].to_vec();
                y.extend_from_slice(&r2.rhs);
                y.extend_from_slice(&r1.lhs[p + r2.lhs.len()..]);
                out.push((r1.rhs.clone(), y));
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Leftmost-first rewriting to an irreducible word.
    pub fn reduce(&self, w: &[u32]) -> Code {
        self.trace(w).pop().expect("trace starts with the input")
    }

    /// Every intermediate word of the rewriting, starting with `w`.
    pub fn trace(&self, w: &[u32]) -> Vec<Code> {
        let mut steps = vec![w.to_vec()];
        loop {
            let cur = steps.last().expect("nonempty");
            let hit = (0..cur.len()).find_map(|p| {
                self.rules
                    .iter()
                    .find(|r| cur[p..].starts_with(&r.lhs))
                    .map(|r| (p, r))
            });
            let Some((p, r)) = hit else { break };
            let mut next = cur[..p].to_vec();
            next.extend_from_slice(&r.rhs);
            next.extend_from_slice(&cur[p + r.lhs.len()..]);
            steps.push(next);
        }
        steps
    }

    /// Rewriting trace on words, endpoints preserved.
    pub fn trace_word(&self, w: &Word) -> Vec<Word> {
        self.trace(&code_of(w))
            .into_iter()
            .map(|c| w.with_letters(c.into_iter().map(Letter::from_code).collect()))
            .collect()
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        self.trace_word(w).pop().expect("trace starts with the input")
    }

    fn is_irreducible_suffix(&self, w: &[u32]) -> bool {
        !self.rules.iter().any(|r| w.ends_with(&r.lhs))
    }

    /// Irreducible words of length at most `k` starting at `x`. For a
    /// complete system these are the distinct elements of word length ≤ k
    /// leaving `x`; `None` if the system is not complete.
    pub fn count_normal_forms(&self, q: &Quiver, x: usize, k: usize) -> Option<u128> {
        if !self.complete {
            return None;
        }
        fn walk(sys: &RewriteSystem, q: &Quiver, at: usize, word: &mut Vec<u32>, k: usize) -> u128 {
            let mut total = 1;
            if word.len() == k {
                return total;
            }
            for code in 0..(2 * q.edge_count()) as u32 {
                let l = Letter::from_code(code);
                if q.letter_start(l) != at {
                    continue;
                }
                word.push(code);
                if sys.is_irreducible_suffix(word) {
                    total += walk(sys, q, q.letter_end(l), word, k);
                }
                word.pop();
            }
            total
        }
        Some(walk(self, q, x, &mut Vec::new(), k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relator(q: &Quiver, letters: Vec<Letter>) -> (Word, Word) {
        let w = Word::new(q, None, letters).unwrap();
        let e = Word::empty(w.src());
        (w, e)
    }

    #[test]
    fn infinite_dihedral_normal_forms_alternate() {
        let q = Quiver::bouquet("*", &["x", "y"]);
        let (x, y) = (Letter::pos(0), Letter::pos(1));
        let rels = vec![relator(&q, vec![x, x]), relator(&q, vec![y, y])];
        let sys = RewriteSystem::complete(&q, &rels, &CompletionLimits::default());
        assert!(sys.is_complete());
        for k in 0..8 {
            assert_eq!(sys.count_normal_forms(&q, 0, k), Some(1 + 2 * k as u128));
        }
    }

    #[test]
    fn cyclic_group_has_finitely_many_normal_forms() {
        let q = Quiver::bouquet("*", &["z"]);
        let z = Letter::pos(0);
        let rels = vec![relator(&q, vec![z; 5])];
        let sys = RewriteSystem::complete(&q, &rels, &CompletionLimits::default());
        assert!(sys.is_complete());
        assert_eq!(sys.count_normal_forms(&q, 0, 10), Some(5));
    }

    #[test]
    fn abelian_rank_two() {
        let q = Quiver::bouquet("*", &["a", "b"]);
        let (a, b) = (Letter::pos(0), Letter::pos(1));
        let comm = relator(&q, vec![a, b, a.inv(), b.inv()]);
        let sys = RewriteSystem::complete(&q, &[comm], &CompletionLimits::default());
        assert!(sys.is_complete());
        let ab = Word::new(&q, None, vec![a, b]).unwrap();
        let ba = Word::new(&q, None, vec![b, a]).unwrap();
        assert_eq!(sys.normal_form(&ab), sys.normal_form(&ba));
        // Z^2 ball of radius 2 in the word metric has 13 points.
        assert_eq!(sys.count_normal_forms(&q, 0, 2), Some(13));
    }

    #[test]
    fn limits_stop_completion() {
        let q = Quiver::bouquet("*", &["a", "b"]);
        let (a, b) = (Letter::pos(0), Letter::pos(1));
        let rel = relator(&q, vec![a, b, a, b.inv(), b.inv()]);
        let tight = CompletionLimits {
            max_rules: 6,
            max_rule_len: 6,
            max_rounds: 1,
        };
        let sys = RewriteSystem::complete(&q, &[rel], &tight);
        assert!(!sys.is_complete());
        assert_eq!(sys.count_normal_forms(&q, 0, 2), None);
    }
}
