use thiserror::Error;

use crate::groupoid::{Arrow, FiniteGroupoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommError {
    #[error("edges do not meet at the {0} corner")]
    Corners(&'static str),
    #[error("square does not commute: left·bottom = {lhs} but top·right = {rhs}")]
    NotCommutative { lhs: String, rhs: String },
    #[error("squares {0} and {1} do not share an edge")]
    Mismatch(usize, usize),
    #[error("outer vertical edges of the row are not identities")]
    OuterNotIdentity,
    #[error("row is empty")]
    EmptyRow,
}

/// An element of □G: arrows `left: TL → BL`, `top: TL → TR`,
/// `bottom: BL → BR`, `right: TR → BR`. It commutes when
/// `left·bottom = top·right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommSquare {
    pub left: Arrow,
    pub top: Arrow,
    pub bottom: Arrow,
    pub right: Arrow,
}

impl CommSquare {
    /// Checked constructor: corners meet and the square commutes.
    pub fn new(g: &FiniteGroupoid, left: Arrow, top: Arrow, bottom: Arrow, right: Arrow) -> Result<Self, CommError> {
        let s = CommSquare {
            left,
            top,
            bottom,
            right,
        };
        s.check_corners(g)?;
        s.check_commutes(g)?;
        Ok(s)
    }

    pub fn check_corners(&self, g: &FiniteGroupoid) -> Result<(), CommError> {
        if g.src(self.left) != g.src(self.top) {
            return Err(CommError::Corners("top-left"));
        }
        if g.tgt(self.top) != g.src(self.right) {
            return Err(CommError::Corners("top-right"));
        }
        if g.tgt(self.left) != g.src(self.bottom) {
            return Err(CommError::Corners("bottom-left"));
        }
        if g.tgt(self.bottom) != g.tgt(self.right) {
            return Err(CommError::Corners("bottom-right"));
        }
        Ok(())
    }

    /// `(left·bottom, top·right)`; corners must meet.
    pub fn sides(&self, g: &FiniteGroupoid) -> (Arrow, Arrow) {
        (g.compose(self.left, self.bottom), g.compose(self.top, self.right))
    }

    pub fn commutes(&self, g: &FiniteGroupoid) -> bool {
        let (l, r) = self.sides(g);
        l == r
    }

    pub fn check_commutes(&self, g: &FiniteGroupoid) -> Result<(), CommError> {
        let (l, r) = self.sides(g);
        if l != r {
            return Err(CommError::NotCommutative {
                lhs: g.arrow_name(l).to_string(),
                rhs: g.arrow_name(r).to_string(),
            });
        }
        Ok(())
    }

    /// `left = p`, `top = p`, other edges identities.
    pub fn connection_neg(g: &FiniteGroupoid, p: Arrow) -> Self {
        let id = g.identity(g.tgt(p));
        CommSquare {
            left: p,
            top: p,
            bottom: id,
            right: id,
        }
    }

    /// `right = p`, `bottom = p`, other edges identities.
    pub fn connection_pos(g: &FiniteGroupoid, p: Arrow) -> Self {
        let id = g.identity(g.src(p));
        CommSquare {
            left: id,
            top: id,
            bottom: p,
            right: p,
        }
    }

    pub fn hidentity(g: &FiniteGroupoid, p: Arrow) -> Self {
        CommSquare {
            left: p,
            top: g.identity(g.src(p)),
            bottom: g.identity(g.tgt(p)),
            right: p,
        }
    }

    pub fn videntity(g: &FiniteGroupoid, p: Arrow) -> Self {
        CommSquare {
            left: g.identity(g.src(p)),
            top: p,
            bottom: p,
            right: g.identity(g.tgt(p)),
        }
    }

    pub fn show(&self, g: &FiniteGroupoid) -> String {
        format!(
            "(left {}, top {}, bottom {}, right {})",
            g.arrow_name(self.left),
            g.arrow_name(self.top),
            g.arrow_name(self.bottom),
            g.arrow_name(self.right)
        )
    }
}

/// Glues `q2` to the right of `q1`; `None` unless `q1.right == q2.left`.
pub fn comm_compose_h(g: &FiniteGroupoid, q1: &CommSquare, q2: &CommSquare) -> Option<CommSquare> {
    (q1.right == q2.left).then(|| CommSquare {
        left: q1.left,
        top: g.compose(q1.top, q2.top),
        bottom: g.compose(q1.bottom, q2.bottom),
        right: q2.right,
    })
}

/// Glues `q2` below `q1`; `None` unless `q1.bottom == q2.top`.
pub fn comm_compose_v(g: &FiniteGroupoid, q1: &CommSquare, q2: &CommSquare) -> Option<CommSquare> {
    (q1.bottom == q2.top).then(|| CommSquare {
        left: g.compose(q1.left, q2.left),
        top: q1.top,
        bottom: q2.bottom,
        right: g.compose(q1.right, q2.right),
    })
}

/// Composites along the top and bottom of a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowVerdict {
    pub top: Arrow,
    pub bottom: Arrow,
}

impl RowVerdict {
    pub fn holds(&self) -> bool {
        self.top == self.bottom
    }
}

/// A row of commutative squares whose outer vertical edges are identities
/// has equal top and bottom composites.
pub fn row_uniqueness(g: &FiniteGroupoid, row: &[CommSquare]) -> Result<RowVerdict, CommError> {
    let (first, last) = match (row.first(), row.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(CommError::EmptyRow),
    };
    for q in row {
        q.check_corners(g)?;
        q.check_commutes(g)?;
    }
    if !g.is_identity(first.left) || !g.is_identity(last.right) {
        return Err(CommError::OuterNotIdentity);
    }
    let mut acc = *first;
    for (i, q) in row.iter().enumerate().skip(1) {
        acc = comm_compose_h(g, &acc, q).ok_or(CommError::Mismatch(i - 1, i))?;
    }
    Ok(RowVerdict {
        top: acc.top,
        bottom: acc.bottom,
    })
}
