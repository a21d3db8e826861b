use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::group::{Elem, FiniteGroup};
use crate::groupoid::{Arrow, FiniteGroupoid, Obj};
use crate::xmod::{check_axioms, AxiomReport, CrossedModule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `∘₂`, gluing the right edge of the first square to the left edge of
    /// the second.
    Horizontal,
    /// `∘₁`, gluing the bottom edge of the first square to the top edge of
    /// the second.
    Vertical,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error("crossed module fails its axioms: {}", .0.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Axioms(AxiomReport),
    #[error("{0} is not an arrow of the base groupoid")]
    UnknownArrow(usize),
    #[error("edges do not meet at the {0} corner")]
    Corners(&'static str),
    #[error("label #{0} is not an element of M at the bottom-right corner")]
    BadLabel(usize),
    #[error("boundary law fails: μ(n) = {lhs} but k⁻¹h⁻¹ga = {rhs}")]
    Boundary { lhs: String, rhs: String },
    #[error("{dir} composition needs `{expected}` but the second square has `{found}`")]
    Mismatch {
        dir: Direction,
        expected: String,
        found: String,
    },
    #[error("array is empty or ragged")]
    ArrayShape,
    #[error("array entries ({row}, {col}) do not compose {dir}ly: {source}")]
    ArrayMismatch {
        row: usize,
        col: usize,
        dir: Direction,
        #[source]
        source: Box<SquareError>,
    },
}

/// `(n; top g, left h, right a, bottom k)` with `n` in `M` at the
/// bottom-right corner and `μ(n) = k⁻¹h⁻¹ga`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledSquare {
    pub label: Elem,
    pub top: Arrow,
    pub left: Arrow,
    pub right: Arrow,
    pub bottom: Arrow,
}

/// The double groupoid of labeled squares over a crossed module, with its
/// carrier enumerated.
#[derive(Debug, Clone)]
pub struct DoubleGroupoidXM {
    xm: CrossedModule,
    carrier: Vec<LabeledSquare>,
    index: HashMap<LabeledSquare, usize>,
}

impl DoubleGroupoidXM {
    /// Enumerates every square: top, left and right edges plus a label
    /// determine the bottom edge `h⁻¹·g·a·μ(n)⁻¹`.
    pub fn from_xmod(xm: &CrossedModule) -> Result<Self, SquareError> {
        let report = check_axioms(xm);
        if !report.passed() {
            return Err(SquareError::Axioms(report));
        }
        let p = xm.base();
        let mut carrier = Vec::new();
        for g in p.arrows() {
            for h in p.arrows().filter(|&h| p.src(h) == p.src(g)) {
                for a in p.arrows().filter(|&a| p.src(a) == p.tgt(g)) {
                    let br = p.tgt(a);
                    for n in xm.group(br).elements() {
                        let k = p
                            .compose_all(&[p.inverse(h), g, a, p.inverse(xm.mu(br, n))])
                            .expect("corners meet");
                        carrier.push(LabeledSquare {
                            label: n,
                            top: g,
                            left: h,
                            right: a,
                            bottom: k,
                        });
                    }
                }
            }
        }
        carrier.sort();
        let index = carrier.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok(DoubleGroupoidXM {
            xm: xm.clone(),
            carrier,
            index,
        })
    }

    pub fn xmod(&self) -> &CrossedModule {
        &self.xm
    }

    pub fn base(&self) -> &FiniteGroupoid {
        self.xm.base()
    }

    pub fn carrier(&self) -> &[LabeledSquare] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn index_of(&self, s: &LabeledSquare) -> Option<usize> {
        self.index.get(s).copied()
    }

    fn unit_at(&self, x: Obj) -> Elem {
        self.xm.group(x).unit()
    }

    /// Object at the bottom-right corner, where the label lives.
    pub fn corner(&self, s: &LabeledSquare) -> Obj {
        self.base().tgt(s.right)
    }

    /// Checks corners, label range and the boundary law.
    pub fn check(&self, s: &LabeledSquare) -> Result<(), SquareError> {
        let p = self.base();
        for a in [s.top, s.left, s.right, s.bottom] {
            if a.0 >= p.arrow_count() {
                return Err(SquareError::UnknownArrow(a.0));
            }
        }
        if p.src(s.top) != p.src(s.left) {
            return Err(SquareError::Corners("top-left"));
        }
        if p.tgt(s.top) != p.src(s.right) {
            return Err(SquareError::Corners("top-right"));
        }
        if p.tgt(s.left) != p.src(s.bottom) {
            return Err(SquareError::Corners("bottom-left"));
        }
        if p.tgt(s.right) != p.tgt(s.bottom) {
            return Err(SquareError::Corners("bottom-right"));
        }
        let br = self.corner(s);
        if s.label >= self.xm.group(br).order() {
            return Err(SquareError::BadLabel(s.label));
        }
        let lhs = self.xm.mu(br, s.label);
        let rhs = self.boundary_word(s);
        if lhs != rhs {
            return Err(SquareError::Boundary {
                lhs: p.arrow_name(lhs).to_string(),
                rhs: p.arrow_name(rhs).to_string(),
            });
        }
        Ok(())
    }

    /// `k⁻¹h⁻¹ga` for a square whose corners meet.
    pub fn boundary_word(&self, s: &LabeledSquare) -> Arrow {
        let p = self.base();
        p.compose_all(&[p.inverse(s.bottom), p.inverse(s.left), s.top, s.right])
            .expect("corners meet")
    }

    pub fn square(&self, label: Elem, top: Arrow, left: Arrow, right: Arrow, bottom: Arrow) -> Result<LabeledSquare, SquareError> {
        let s = LabeledSquare {
            label,
            top,
            left,
            right,
            bottom,
        };
        self.check(&s)?;
        Ok(s)
    }

    fn mismatch(&self, dir: Direction, expected: Arrow, found: Arrow) -> SquareError {
        let p = self.base();
        SquareError::Mismatch {
            dir,
            expected: p.arrow_name(expected).to_string(),
            found: p.arrow_name(found).to_string(),
        }
    }

    /// `(n; g,h,a,k) ∘₂ (m; c,a,d,b) = (n^b·m; gc, h, d, kb)`.
    pub fn hcompose(&self, s1: &LabeledSquare, s2: &LabeledSquare) -> Result<LabeledSquare, SquareError> {
        if s1.right != s2.left {
            return Err(self.mismatch(Direction::Horizontal, s1.right, s2.left));
        }
        let p = self.base();
        let m = self.xm.group(self.corner(s2));
        Ok(LabeledSquare {
            label: m.mul(self.xm.act(s1.label, s2.bottom), s2.label),
            top: p.compose(s1.top, s2.top),
            left: s1.left,
            right: s2.right,
            bottom: p.compose(s1.bottom, s2.bottom),
        })
    }

    /// `(u; g,f,e,c) ∘₁ (m; c,a,d,h) = (m·u^d; g, fa, ed, h)`.
    pub fn vcompose(&self, s1: &LabeledSquare, s2: &LabeledSquare) -> Result<LabeledSquare, SquareError> {
        if s1.bottom != s2.top {
            return Err(self.mismatch(Direction::Vertical, s1.bottom, s2.top));
        }
        let p = self.base();
        let m = self.xm.group(self.corner(s2));
        Ok(LabeledSquare {
            label: m.mul(s2.label, self.xm.act(s1.label, s2.right)),
            top: s1.top,
            left: p.compose(s1.left, s2.left),
            right: p.compose(s1.right, s2.right),
            bottom: s2.bottom,
        })
    }

    pub fn compose(&self, dir: Direction, s1: &LabeledSquare, s2: &LabeledSquare) -> Result<LabeledSquare, SquareError> {
        match dir {
            Direction::Horizontal => self.hcompose(s1, s2),
            Direction::Vertical => self.vcompose(s1, s2),
        }
    }

    /// `(1; id, p, p, id)`: the unit for `∘₂` on squares with left edge `p`.
    pub fn hidentity(&self, p: Arrow) -> LabeledSquare {
        let g = self.base();
        LabeledSquare {
            label: self.unit_at(g.tgt(p)),
            top: g.identity(g.src(p)),
            left: p,
            right: p,
            bottom: g.identity(g.tgt(p)),
        }
    }

    /// `(1; p, id, id, p)`: the unit for `∘₁` on squares with top edge `p`.
    pub fn videntity(&self, p: Arrow) -> LabeledSquare {
        let g = self.base();
        LabeledSquare {
            label: self.unit_at(g.tgt(p)),
            top: p,
            left: g.identity(g.src(p)),
            right: g.identity(g.tgt(p)),
            bottom: p,
        }
    }

    pub fn double_identity(&self, x: Obj) -> LabeledSquare {
        let id = self.base().identity(x);
        LabeledSquare {
            label: self.unit_at(x),
            top: id,
            left: id,
            right: id,
            bottom: id,
        }
    }

    /// `(1; p, p, id, id)`.
    pub fn connection_neg(&self, p: Arrow) -> LabeledSquare {
        let g = self.base();
        let id = g.identity(g.tgt(p));
        LabeledSquare {
            label: self.unit_at(g.tgt(p)),
            top: p,
            left: p,
            right: id,
            bottom: id,
        }
    }

    /// `(1; id, id, p, p)`.
    pub fn connection_pos(&self, p: Arrow) -> LabeledSquare {
        let g = self.base();
        let id = g.identity(g.src(p));
        LabeledSquare {
            label: self.unit_at(g.tgt(p)),
            top: id,
            left: id,
            right: p,
            bottom: p,
        }
    }

    /// Inverse for `∘₂`: `((n⁻¹)^{k⁻¹}; g⁻¹, a, h, k⁻¹)`.
    pub fn hinverse(&self, s: &LabeledSquare) -> LabeledSquare {
        let p = self.base();
        let m = self.xm.group(self.corner(s));
        let kinv = p.inverse(s.bottom);
        LabeledSquare {
            label: self.xm.act(m.inv(s.label), kinv),
            top: p.inverse(s.top),
            left: s.right,
            right: s.left,
            bottom: kinv,
        }
    }

    /// Inverse for `∘₁`: `((u⁻¹)^{e⁻¹}; c, f⁻¹, e⁻¹, g)`.
    pub fn vinverse(&self, s: &LabeledSquare) -> LabeledSquare {
        let p = self.base();
        let m = self.xm.group(self.corner(s));
        let einv = p.inverse(s.right);
        LabeledSquare {
            label: self.xm.act(m.inv(s.label), einv),
            top: s.bottom,
            left: p.inverse(s.left),
            right: einv,
            bottom: s.top,
        }
    }

    pub fn is_thin(&self, s: &LabeledSquare) -> bool {
        s.label == self.unit_at(self.corner(s))
    }

    /// Both sides of the interchange law for a 2×2 array
    /// `[[s11, s12], [s21, s22]]`.
    pub fn interchange_check(
        &self,
        s11: &LabeledSquare,
        s12: &LabeledSquare,
        s21: &LabeledSquare,
        s22: &LabeledSquare,
    ) -> Result<Interchange, SquareError> {
        let rows_first = self.vcompose(&self.hcompose(s11, s12)?, &self.hcompose(s21, s22)?)?;
        let columns_first = self.hcompose(&self.vcompose(s11, s21)?, &self.vcompose(s12, s22)?)?;
        Ok(Interchange {
            rows_first,
            columns_first,
        })
    }

    fn check_array(&self, rows: &[Vec<LabeledSquare>]) -> Result<(), SquareError> {
        let width = rows.first().map(|r| r.len()).unwrap_or(0);
        if width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(SquareError::ArrayShape);
        }
        for (i, row) in rows.iter().enumerate() {
            for j in 0..width {
                let wrap = |dir, e| SquareError::ArrayMismatch {
                    row: i,
                    col: j,
                    dir,
                    source: Box::new(e),
                };
                if j + 1 < width && row[j].right != row[j + 1].left {
                    return Err(wrap(
                        Direction::Horizontal,
                        self.mismatch(Direction::Horizontal, row[j].right, row[j + 1].left),
                    ));
                }
                if i + 1 < rows.len() && row[j].bottom != rows[i + 1][j].top {
                    return Err(wrap(
                        Direction::Vertical,
                        self.mismatch(Direction::Vertical, row[j].bottom, rows[i + 1][j].top),
                    ));
                }
            }
        }
        Ok(())
    }

    fn fold(&self, dir: Direction, items: impl IntoIterator<Item = LabeledSquare>) -> Result<LabeledSquare, SquareError> {
        let mut it = items.into_iter();
        let first = it.next().ok_or(SquareError::ArrayShape)?;
        it.try_fold(first, |acc, s| self.compose(dir, &acc, &s))
    }

    /// Composite of a rectangular array: each row by `∘₂`, then the row
    /// composites by `∘₁`.
    pub fn compose_array(&self, rows: &[Vec<LabeledSquare>]) -> Result<LabeledSquare, SquareError> {
        self.check_array(rows)?;
        let row_composites = rows
            .iter()
            .map(|r| self.fold(Direction::Horizontal, r.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        self.fold(Direction::Vertical, row_composites)
    }

    /// Same array, each column by `∘₁` first.
    pub fn compose_array_by_columns(&self, rows: &[Vec<LabeledSquare>]) -> Result<LabeledSquare, SquareError> {
        self.check_array(rows)?;
        let cols = (0..rows[0].len())
            .map(|j| self.fold(Direction::Vertical, rows.iter().map(|r| r[j])))
            .collect::<Result<Vec<_>, _>>()?;
        self.fold(Direction::Horizontal, cols)
    }

    /// Squares `(n; id, id, a, id)` at `x`: the group `M(x)` recovered.
    pub fn m_squares(&self, x: Obj) -> Vec<LabeledSquare> {
        let id = self.base().identity(x);
        self.carrier
            .iter()
            .filter(|s| s.top == id && s.left == id && s.bottom == id)
            .copied()
            .collect()
    }

    /// Crossed module read back from the squares. `M(x)` is
    /// [`m_squares`](Self::m_squares) under `∘₁`, `μ` is the right edge,
    /// and `p: x → y` acts by `s ↦ videntity(p⁻¹) ∘₂ s ∘₂ T`, where `T` is
    /// the thin square with top and bottom `p` and left edge `μ(s)`.
    pub fn to_xmod(&self) -> CrossedModule {
        let p = self.base();
        let per_object: Vec<Vec<LabeledSquare>> = p.objects().map(|x| self.m_squares(x)).collect();
        let pos = |x: Obj, s: &LabeledSquare| {
            per_object[x.0]
                .iter()
                .position(|t| t == s)
                .expect("composite stays in M")
        };
        let groups: Vec<FiniteGroup> = p
            .objects()
            .map(|x| {
                let sq = &per_object[x.0];
                let names = sq.iter().map(|s| self.show(s)).collect();
                FiniteGroup::from_fn(names, |a, b| {
                    pos(x, &self.vcompose(&sq[a], &sq[b]).expect("edges are identities"))
                })
                .expect("∘₁ on M is a group")
            })
            .collect();
        let mu = p
            .objects()
            .map(|x| per_object[x.0].iter().map(|s| s.right).collect())
            .collect();
        let action = p
            .arrows()
            .map(|a| {
                let (x, y) = (p.src(a), p.tgt(a));
                per_object[x.0]
                    .iter()
                    .map(|s| {
                        let left = self.videntity(p.inverse(a));
                        let conj = p.compose_all(&[p.inverse(a), s.right, a]).expect("loop conjugate");
                        let thin = LabeledSquare {
                            label: self.unit_at(y),
                            top: a,
                            left: s.right,
                            right: conj,
                            bottom: a,
                        };
                        let out = self
                            .hcompose(&self.hcompose(&left, s).expect("fits"), &thin)
                            .expect("fits");
                        pos(y, &out)
                    })
                    .collect()
            })
            .collect();
        CrossedModule::new(p.clone(), groups, mu, action).expect("shapes match the base")
    }

    pub fn show(&self, s: &LabeledSquare) -> String {
        let p = self.base();
        format!(
            "({}; {}, {}, {}, {})",
            self.xm.group(self.corner(s)).name(s.label),
            p.arrow_name(s.top),
            p.arrow_name(s.left),
            p.arrow_name(s.right),
            p.arrow_name(s.bottom)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interchange {
    pub rows_first: LabeledSquare,
    pub columns_first: LabeledSquare,
}

impl Interchange {
    pub fn holds(&self) -> bool {
        self.rows_first == self.columns_first
    }
}
