//! Cubes in □G and the folding check for commutativity.
//!
//! Vertices are `v_xyz` with `x, y, z ∈ {0, 1}`. Edges are stored by the
//! axis they run along: `x[y][z]: v_0yz → v_1yz`, `y[x][z]: v_x0z → v_x1z`,
//! `z[x][y]: v_xy0 → v_xy1`.
//!
//! Folding lays the bottom face `z = 0` in the centre of a 3×3 array with
//! `x` pointing down and `y` pointing right. The four side faces are turned
//! outwards so that each shares an edge with the centre, and the corners
//! are filled with connections so that the outer boundary of the array is
//! the boundary of the top face `z = 1`:
//!
//! ```text
//!   C1  N  C2        N: x = 0, vertical edges z⁻¹
//!    W  B  E         S: x = 1, vertical edges z
//!   C3  S  C4        W: y = 0, horizontal edges z⁻¹
//!                    E: y = 1, horizontal edges z
//! ```
//!
//! `C1 = Γ⁺(z⁻¹₀₀)`, `C4 = Γ⁻(z₁₁)`; `C2` and `C3` are the `∘₁` inverses
//! of `Γ⁻(z₀₁)` and `Γ⁺(z⁻¹₁₀)`, which turn the remaining two corners.

use std::fmt;

use thiserror::Error;

use super::comm::{comm_compose_h, comm_compose_v, CommSquare};
use crate::groupoid::{Arrow, FiniteGroupoid, Obj};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("edges of the cube do not meet at vertex v{0}{1}{2}")]
    Vertex(usize, usize, usize),
    #[error("cubes do not share the face glued along {0}")]
    FaceMismatch(Axis),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CubeFace {
    Bottom,
    North,
    South,
    West,
    East,
    Top,
}

impl CubeFace {
    /// The five faces that are folded, in checking order.
    pub const FOLDED: [CubeFace; 5] = [
        CubeFace::Bottom,
        CubeFace::North,
        CubeFace::South,
        CubeFace::West,
        CubeFace::East,
    ];
}

impl fmt::Display for CubeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubeFace::Bottom => "bottom (z=0)",
            CubeFace::North => "north (x=0)",
            CubeFace::South => "south (x=1)",
            CubeFace::West => "west (y=0)",
            CubeFace::East => "east (y=1)",
            CubeFace::Top => "top (z=1)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    pub x: [[Arrow; 2]; 2],
    pub y: [[Arrow; 2]; 2],
    pub z: [[Arrow; 2]; 2],
}

impl Cube {
    /// Edge `u → v` is `φ(u)⁻¹·φ(v)`, where every `φ(v)` leaves one common
    /// object. Every face of such a cube commutes.
    pub fn from_potential(g: &FiniteGroupoid, phi: [[[Arrow; 2]; 2]; 2]) -> Self {
        let e = |u: Arrow, v: Arrow| g.compose(g.inverse(u), v);
        let mut c = Cube {
            x: [[Arrow(0); 2]; 2],
            y: [[Arrow(0); 2]; 2],
            z: [[Arrow(0); 2]; 2],
        };
        for i in 0..2 {
            for j in 0..2 {
                c.x[i][j] = e(phi[0][i][j], phi[1][i][j]);
                c.y[i][j] = e(phi[i][0][j], phi[i][1][j]);
                c.z[i][j] = e(phi[i][j][0], phi[i][j][1]);
            }
        }
        c
    }

    /// Object at `v_xyz`.
    pub fn vertex(&self, g: &FiniteGroupoid, x: usize, y: usize, z: usize) -> Obj {
        let e = self.x[y][z];
        if x == 0 {
            g.src(e)
        } else {
            g.tgt(e)
        }
    }

    pub fn check_vertices(&self, g: &FiniteGroupoid) -> Result<(), CubeError> {
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let v = self.vertex(g, x, y, z);
                    let end = |a: Arrow, at_src: bool| if at_src { g.src(a) } else { g.tgt(a) };
                    if end(self.y[x][z], y == 0) != v || end(self.z[x][y], z == 0) != v {
                        return Err(CubeError::Vertex(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn face(&self, g: &FiniteGroupoid, f: CubeFace) -> CommSquare {
        let inv = |a: Arrow| g.inverse(a);
        match f {
            CubeFace::Bottom => CommSquare {
                left: self.x[0][0],
                top: self.y[0][0],
                bottom: self.y[1][0],
                right: self.x[1][0],
            },
            CubeFace::Top => CommSquare {
                left: self.x[0][1],
                top: self.y[0][1],
                bottom: self.y[1][1],
                right: self.x[1][1],
            },
            CubeFace::North => CommSquare {
                left: inv(self.z[0][0]),
                top: self.y[0][1],
                bottom: self.y[0][0],
                right: inv(self.z[0][1]),
            },
            CubeFace::South => CommSquare {
                left: self.z[1][0],
                top: self.y[1][0],
                bottom: self.y[1][1],
                right: self.z[1][1],
            },
            CubeFace::West => CommSquare {
                left: self.x[0][1],
                top: inv(self.z[0][0]),
                bottom: inv(self.z[1][0]),
                right: self.x[0][0],
            },
            CubeFace::East => CommSquare {
                left: self.x[1][0],
                top: self.z[0][1],
                bottom: self.z[1][1],
                right: self.x[1][1],
            },
        }
    }

    /// The 3×3 folded array, rows top to bottom.
    pub fn folded(&self, g: &FiniteGroupoid) -> [[CommSquare; 3]; 3] {
        let q = g.inverse(self.z[0][1]);
        let r = g.inverse(self.z[1][0]);
        let c2 = CommSquare {
            left: q,
            top: g.identity(g.src(q)),
            bottom: self.z[0][1],
            right: g.identity(g.src(q)),
        };
        let c3 = CommSquare {
            left: g.identity(g.src(r)),
            top: r,
            bottom: g.identity(g.tgt(r)),
            right: self.z[1][0],
        };
        [
            [
                CommSquare::connection_pos(g, g.inverse(self.z[0][0])),
                self.face(g, CubeFace::North),
                c2,
            ],
            [
                self.face(g, CubeFace::West),
                self.face(g, CubeFace::Bottom),
                self.face(g, CubeFace::East),
            ],
            [c3, self.face(g, CubeFace::South), CommSquare::connection_neg(g, self.z[1][1])],
        ]
    }

    /// Cube of length zero along `axis`, both of whose faces across `axis`
    /// equal the face of `self` at `side`.
    pub fn degenerate(&self, g: &FiniteGroupoid, axis: Axis, side: usize) -> Cube {
        let mut c = *self;
        for i in 0..2 {
            for j in 0..2 {
                match axis {
                    Axis::X => {
                        c.x[i][j] = g.identity(self.vertex(g, side, i, j));
                        c.y[1 - side][j] = self.y[side][j];
                        c.z[1 - side][i] = self.z[side][i];
                    }
                    Axis::Y => {
                        c.y[i][j] = g.identity(self.vertex(g, i, side, j));
                        c.x[1 - side][j] = self.x[side][j];
                        c.z[i][1 - side] = self.z[i][side];
                    }
                    Axis::Z => {
                        c.z[i][j] = g.identity(self.vertex(g, i, j, side));
                        c.x[i][1 - side] = self.x[i][side];
                        c.y[i][1 - side] = self.y[i][side];
                    }
                }
            }
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceFailure {
    pub face: CubeFace,
    pub square: CommSquare,
    /// `left·bottom` and `top·right`.
    pub sides: (Arrow, Arrow),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeVerdict {
    /// First folded face that does not commute; folding is skipped if set.
    pub face_failure: Option<FaceFailure>,
    pub composite: Option<CommSquare>,
    pub top: CommSquare,
}

impl CubeVerdict {
    pub fn commutative(&self) -> bool {
        self.face_failure.is_none() && self.composite == Some(self.top)
    }
}

/// Checks the five folded faces, composes the folded array, and compares
/// the composite with the top face.
pub fn commutative_cube_check(g: &FiniteGroupoid, c: &Cube) -> Result<CubeVerdict, CubeError> {
    c.check_vertices(g)?;
    let top = c.face(g, CubeFace::Top);
    for f in CubeFace::FOLDED {
        let sq = c.face(g, f);
        if !sq.commutes(g) {
            return Ok(CubeVerdict {
                face_failure: Some(FaceFailure {
                    face: f,
                    square: sq,
                    sides: sq.sides(g),
                }),
                composite: None,
                top,
            });
        }
    }
    let rows = c.folded(g);
    let row = |r: &[CommSquare; 3]| {
        comm_compose_h(g, &r[0], &r[1])
            .and_then(|s| comm_compose_h(g, &s, &r[2]))
            .expect("folded rows share edges")
    };
    let composite = comm_compose_v(g, &row(&rows[0]), &row(&rows[1]))
        .and_then(|s| comm_compose_v(g, &s, &row(&rows[2])))
        .expect("folded columns share edges");
    let composite = composite.commutes(g).then_some(composite);
    Ok(CubeVerdict {
        face_failure: None,
        composite,
        top,
    })
}

/// Glues `c2` after `c1` along `axis`.
pub fn cube_compose(g: &FiniteGroupoid, c1: &Cube, c2: &Cube, axis: Axis) -> Result<Cube, CubeError> {
    let mut out = *c1;
    match axis {
        Axis::X => {
            if c1.y[1] != c2.y[0] || c1.z[1] != c2.z[0] {
                return Err(CubeError::FaceMismatch(axis));
            }
            for i in 0..2 {
                for j in 0..2 {
                    out.x[i][j] = g.compose(c1.x[i][j], c2.x[i][j]);
                }
            }
            out.y[1] = c2.y[1];
            out.z[1] = c2.z[1];
        }
        Axis::Y => {
            if c1.x[1] != c2.x[0] || c1.z[0][1] != c2.z[0][0] || c1.z[1][1] != c2.z[1][0] {
                return Err(CubeError::FaceMismatch(axis));
            }
            for i in 0..2 {
                for j in 0..2 {
                    out.y[i][j] = g.compose(c1.y[i][j], c2.y[i][j]);
                }
                out.z[i][1] = c2.z[i][1];
            }
            out.x[1] = c2.x[1];
        }
        Axis::Z => {
            let shared = (0..2).all(|i| c1.x[i][1] == c2.x[i][0] && c1.y[i][1] == c2.y[i][0]);
            if !shared {
                return Err(CubeError::FaceMismatch(axis));
            }
            for i in 0..2 {
                for j in 0..2 {
                    out.z[i][j] = g.compose(c1.z[i][j], c2.z[i][j]);
                }
                out.x[i][1] = c2.x[i][1];
                out.y[i][1] = c2.y[i][1];
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueVerdict {
    pub first: bool,
    pub second: bool,
    pub glued: CubeVerdict,
}

impl GlueVerdict {
    /// Commutative inputs give a commutative composite.
    pub fn holds(&self) -> bool {
        !(self.first && self.second) || self.glued.commutative()
    }
}

pub fn cube_compose_check(g: &FiniteGroupoid, c1: &Cube, c2: &Cube, axis: Axis) -> Result<GlueVerdict, CubeError> {
    let first = commutative_cube_check(g, c1)?.commutative();
    let second = commutative_cube_check(g, c2)?.commutative();
    let glued = commutative_cube_check(g, &cube_compose(g, c1, c2, axis)?)?;
    Ok(GlueVerdict { first, second, glued })
}
