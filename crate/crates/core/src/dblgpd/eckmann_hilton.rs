use thiserror::Error;

use super::square::DoubleGroupoidXM;
use crate::group::FiniteGroup;
use crate::groupoid::Obj;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EhError {
    #[error("carrier is empty")]
    Empty,
    #[error("table {0} is not {1}×{1}")]
    Shape(usize, usize),
    #[error("table {0} has an entry outside the carrier")]
    OutOfRange(usize),
    #[error("unit {0} is outside the carrier")]
    BadUnit(usize),
}

/// A finite set with two binary operations and a proposed unit for each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhInstance {
    pub names: Vec<String>,
    pub op1: Vec<Vec<usize>>,
    pub op2: Vec<Vec<usize>>,
    pub u1: usize,
    pub u2: usize,
}

impl EhInstance {
    pub fn new(names: Vec<String>, op1: Vec<Vec<usize>>, op2: Vec<Vec<usize>>, u1: usize, u2: usize) -> Result<Self, EhError> {
        let n = names.len();
        if n == 0 {
            return Err(EhError::Empty);
        }
        for (i, t) in [&op1, &op2].into_iter().enumerate() {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(EhError::Shape(i + 1, n));
            }
            if t.iter().flatten().any(|&v| v >= n) {
                return Err(EhError::OutOfRange(i + 1));
            }
        }
        for u in [u1, u2] {
            if u >= n {
                return Err(EhError::BadUnit(u));
            }
        }
        Ok(EhInstance { names, op1, op2, u1, u2 })
    }

    /// The group operation used twice.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let t: Vec<Vec<usize>> = g.elements().map(|a| g.elements().map(|b| g.mul(a, b)).collect()).collect();
        EhInstance {
            names: g.names().to_vec(),
            op1: t.clone(),
            op2: t,
            u1: g.unit(),
            u2: g.unit(),
        }
    }

    /// Squares at `x` with every edge the identity, under `∘₁` and `∘₂`.
    pub fn from_double_groupoid(dg: &DoubleGroupoidXM, x: Obj) -> Self {
        let id = dg.base().identity(x);
        let sq: Vec<_> = dg
            .carrier()
            .iter()
            .filter(|s| [s.top, s.left, s.right, s.bottom].iter().all(|&a| a == id))
            .copied()
            .collect();
        let pos = |s| sq.iter().position(|t| *t == s).expect("closed");
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..sq.len()).map(|a| (0..sq.len()).map(|b| f(a, b)).collect()).collect()
        };
        let op1 = table(&|a, b| pos(dg.vcompose(&sq[a], &sq[b]).expect("identity edges")));
        let op2 = table(&|a, b| pos(dg.hcompose(&sq[a], &sq[b]).expect("identity edges")));
        let unit = pos(dg.double_identity(x));
        EhInstance {
            names: sq.iter().map(|s| dg.show(s)).collect(),
            op1,
            op2,
            u1: unit,
            u2: unit,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PremiseFailure {
    /// `u op a ≠ a` or `a op u ≠ a` for the unit of operation `op`.
    Unit { op: usize, element: usize },
    /// `(a op2 b) op1 (c op2 d) ≠ (a op1 c) op2 (b op1 d)`.
    Interchange {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        lhs: usize,
        rhs: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhConclusion {
    pub units_equal: bool,
    /// First pair where the operations differ.
    pub ops_differ: Option<(usize, usize)>,
    /// First non-commuting pair for `op1`.
    pub noncommuting: Option<(usize, usize)>,
}

impl EhConclusion {
    pub fn holds(&self) -> bool {
        self.units_equal && self.ops_differ.is_none() && self.noncommuting.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhReport {
    /// First failure per premise family.
    pub premise_failures: Vec<PremiseFailure>,
    /// Evaluated only when every premise holds.
    pub conclusion: Option<EhConclusion>,
}

impl EhReport {
    pub fn premises_hold(&self) -> bool {
        self.premise_failures.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.conclusion.as_ref().is_some_and(|c| c.holds())
    }
}

pub fn eckmann_hilton_check(inst: &EhInstance) -> EhReport {
    let n = inst.len();
    let (o1, o2) = (&inst.op1, &inst.op2);
    let mut premise_failures = Vec::new();
    for (op, t, u) in [(1, o1, inst.u1), (2, o2, inst.u2)] {
        if let Some(element) = (0..n).find(|&a| t[u][a] != a || t[a][u] != a) {
            premise_failures.push(PremiseFailure::Unit { op, element });
        }
    }
    'inter: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs = o1[o2[a][b]][o2[c][d]];
                    let rhs = o2[o1[a][c]][o1[b][d]];
                    if lhs != rhs {
                        premise_failures.push(PremiseFailure::Interchange { a, b, c, d, lhs, rhs });
                        break 'inter;
                    }
                }
            }
        }
    }
    let conclusion = premise_failures.is_empty().then(|| {
        let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
        EhConclusion {
            units_equal: inst.u1 == inst.u2,
            ops_differ: pairs().find(|&(a, b)| o1[a][b] != o2[a][b]),
            noncommuting: pairs().find(|&(a, b)| o1[a][b] != o1[b][a]),
        }
    });
    EhReport {
        premise_failures,
        conclusion,
    }
}
