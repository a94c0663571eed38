//! The three ambient surfaces: smooth quadric, quadric cone, cubic scroll.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::linalg;
use super::points::{PointSet, ProjectivePoint};
use super::poly::{GradedIdeal, Polynomial};
use super::rational::int;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Surface {
    /// `xw - yz` in `P^3`.
    Quadric,
    /// `xz - y^2` in `P^3`, vertex `[0:0:0:1]`.
    Cone,
    /// `S(1,2)` in `P^4`, cut out by the 2x2 minors of `[[x0, y0, y1], [x1, y1, y2]]`.
    CubicScroll,
}

/// Range for the integer parameters of random points.
const PARAM_RANGE: i64 = 6;

impl Surface {
    pub const ALL: [Surface; 3] = [Surface::Quadric, Surface::Cone, Surface::CubicScroll];

    pub fn num_vars(self) -> usize {
        match self {
            Surface::Quadric | Surface::Cone => 4,
            Surface::CubicScroll => 5,
        }
    }

    pub fn ambient_dim(self) -> usize {
        self.num_vars() - 1
    }

    pub fn degree(self) -> i64 {
        match self {
            Surface::Quadric | Surface::Cone => 2,
            Surface::CubicScroll => 3,
        }
    }

    /// Codimension-type index used in the duality twist; 2 for all surfaces here.
    pub fn ch(self) -> i64 {
        2
    }

    pub fn equations(self) -> Vec<Polynomial> {
        let q = |nv: usize, a: &[u32], b: &[u32]| {
            Polynomial::from_terms(nv, vec![(a.to_vec(), int(1)), (b.to_vec(), int(-1))]).expect("nonzero binomial")
        };
        match self {
            Surface::Quadric => vec![q(4, &[1, 0, 0, 1], &[0, 1, 1, 0])],
            Surface::Cone => vec![q(4, &[1, 0, 1, 0], &[0, 2, 0, 0])],
            Surface::CubicScroll => vec![
                q(5, &[1, 0, 0, 1, 0], &[0, 1, 1, 0, 0]),
                q(5, &[1, 0, 0, 0, 1], &[0, 1, 0, 1, 0]),
                q(5, &[0, 0, 1, 0, 1], &[0, 0, 0, 2, 0]),
            ],
        }
    }

    pub fn ideal(self) -> GradedIdeal {
        GradedIdeal::new(self.num_vars(), self.equations()).expect("surface equations share the ring")
    }

    pub fn contains(self, p: &ProjectivePoint) -> bool {
        p.coords().len() == self.num_vars() && self.equations().iter().all(|f| f.eval(p.coords()).is_zero())
    }

    pub fn is_smooth_point(self, p: &ProjectivePoint) -> bool {
        match self {
            Surface::Cone => self.contains(p) && p.coords()[..3].iter().any(|c| !c.is_zero()),
            _ => self.contains(p),
        }
    }

    /// Rational parametrization: the quadric takes `[a0:a1] x [b0:b1]`,
    /// the cone `[s:t:u]`, the scroll `(s, t, u, v)` for `u(s,t) + v(s^2,st,t^2)`.
    pub fn parametrize(self, params: &[BigRational]) -> Result<ProjectivePoint> {
        let want = match self {
            Surface::Quadric | Surface::CubicScroll => 4,
            Surface::Cone => 3,
        };
        if params.len() != want {
            return Err(Error::Arity { expected: want, got: params.len() });
        }
        let coords = match self {
            Surface::Quadric => {
                let (a0, a1, b0, b1) = (&params[0], &params[1], &params[2], &params[3]);
                vec![a0 * b0, a0 * b1, a1 * b0, a1 * b1]
            }
            Surface::Cone => {
                let (s, t, u) = (&params[0], &params[1], &params[2]);
                vec![s * s, s * t, t * t, u.clone()]
            }
            Surface::CubicScroll => {
                let (s, t, u, v) = (&params[0], &params[1], &params[2], &params[3]);
                vec![u * s, u * t, v * s * s, v * s * t, v * t * t]
            }
        };
        ProjectivePoint::new(coords)
    }

    /// A point of the smooth locus with small integer parameters.
    pub fn random_smooth_point<R: Rng>(self, rng: &mut R) -> ProjectivePoint {
        let mut draw = || int(rng.random_range(-PARAM_RANGE..=PARAM_RANGE));
        loop {
            let params: Vec<BigRational> = match self {
                Surface::Quadric => vec![int(1), draw(), int(1), draw()],
                Surface::Cone => vec![int(1), draw(), draw()],
                Surface::CubicScroll => vec![int(1), draw(), draw(), draw()],
            };
            if let Ok(p) = self.parametrize(&params) {
                if self.is_smooth_point(&p) {
                    return p;
                }
            }
        }
    }

    /// `count` random smooth points in linearly general position, no two on
    /// a common line of the surface.
    ///
    /// Points piled on a line or a hyperplane section force every form
    /// through enough of them to contain that curve, and no complete
    /// intersection passes through them.
    pub fn random_smooth_points<R: Rng>(self, count: usize, rng: &mut R) -> PointSet {
        let mut points: Vec<ProjectivePoint> = Vec::with_capacity(count);
        let mut lines: Vec<Vec<BigRational>> = Vec::with_capacity(2 * count);
        while points.len() < count {
            let p = self.random_smooth_point(rng);
            let keys = self.lines_through(&p);
            if keys.iter().any(|k| lines.contains(k)) || !in_general_position(&points, &p) {
                continue;
            }
            lines.extend(keys);
            points.push(p);
        }
        PointSet::new(self.ambient_dim(), points).expect("distinct points on the surface")
    }

    /// Tags for the lines of the surface through a smooth point.
    fn lines_through(self, p: &ProjectivePoint) -> Vec<Vec<BigRational>> {
        let c = p.coords();
        let ratio = |a: &BigRational, b: &BigRational| {
            ProjectivePoint::new(vec![a.clone(), b.clone()]).expect("line parameter").coords().to_vec()
        };
        let tagged = |tag: i64, mut v: Vec<BigRational>| {
            v.insert(0, int(tag));
            v
        };
        match self {
            // [x : y : z : w] = [a0 b0 : a0 b1 : a1 b0 : a1 b1]
            Surface::Quadric => {
                let first = if c[0].is_zero() && c[1].is_zero() { ratio(&c[2], &c[3]) } else { ratio(&c[0], &c[1]) };
                let second = if c[0].is_zero() && c[2].is_zero() { ratio(&c[1], &c[3]) } else { ratio(&c[0], &c[2]) };
                vec![tagged(0, first), tagged(1, second)]
            }
            // [s^2 : st : t^2 : u]
            Surface::Cone => {
                let line = if c[0].is_zero() { ratio(&c[1], &c[2]) } else { ratio(&c[0], &c[1]) };
                vec![line]
            }
            // u (s, t) + v (s^2, st, t^2): the ruling is [s : t]
            Surface::CubicScroll => {
                let line = if !c[0].is_zero() || !c[1].is_zero() {
                    ratio(&c[0], &c[1])
                } else if !c[2].is_zero() {
                    ratio(&c[2], &c[3])
                } else {
                    ratio(&c[3], &c[4])
                };
                vec![line]
            }
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            Surface::Quadric => "quadric",
            Surface::Cone => "cone",
            Surface::CubicScroll => "cubic-scroll",
        }
    }
}

/// Whether `p` together with every `dim` of `points` spans the whole space.
fn in_general_position(points: &[ProjectivePoint], p: &ProjectivePoint) -> bool {
    let dim = p.ambient_dim();
    let take = dim.min(points.len());
    let mut chosen = Vec::with_capacity(take);
    subsets_independent(points, p, 0, take, &mut chosen)
}

fn subsets_independent(
    points: &[ProjectivePoint],
    p: &ProjectivePoint,
    start: usize,
    left: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if left == 0 {
        let mut rows: Vec<Vec<BigRational>> = chosen.iter().map(|&i| points[i].coords().to_vec()).collect();
        rows.push(p.coords().to_vec());
        return linalg::rank(&rows, p.coords().len()) == rows.len();
    }
    for i in start..=points.len() - left {
        chosen.push(i);
        let ok = subsets_independent(points, p, i + 1, left - 1, chosen);
        chosen.pop();
        if !ok {
            return false;
        }
    }
    true
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Surface {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Surface::ALL
            .into_iter()
            .find(|x| x.cli_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown surface {s:?}; expected quadric, cone or cubic-scroll")))
    }
}
