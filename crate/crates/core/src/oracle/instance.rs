//! Complete intersections of two forms on a surface, with a chosen subscheme `Z1`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::points::{PointSet, ProjectivePoint};
use super::poly::{GradedIdeal, Polynomial};
use super::quotient::{SurfaceIdeal, SurfaceRing};
use super::rational::{format_rational, int, parse_rational};
use super::surface::Surface;
use crate::error::{Error, Result};

/// Re-rolls allowed before a random instance is declared non-generic.
pub const MAX_ATTEMPTS: u32 = 16;
const COEFF_RANGE: i64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    /// `Z` is known point by point and split explicitly.
    PointSplit,
    /// Only `Z1` is known; `Z2` is reached through the colon ideal.
    IdealColon,
}

/// Parameter of a line in one ruling of the quadric: `t` stands for `[1:t]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RulingParameter {
    Finite(BigRational),
    Infinity,
}

impl RulingParameter {
    pub fn finite(t: i64) -> Self {
        RulingParameter::Finite(int(t))
    }

    fn homogeneous(&self) -> (BigRational, BigRational) {
        match self {
            RulingParameter::Finite(t) => (BigRational::one(), t.clone()),
            RulingParameter::Infinity => (BigRational::zero(), BigRational::one()),
        }
    }
}

impl fmt::Display for RulingParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RulingParameter::Finite(t) => f.write_str(&format_rational(t)),
            RulingParameter::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for RulingParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(RulingParameter::Infinity),
            t => parse_rational(t).map(RulingParameter::Finite),
        }
    }
}

impl Serialize for RulingParameter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RulingParameter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(D::Error::custom)
    }
}

/// Line parameters for both rulings. Each family lists the `a1` lines of
/// `C1` first, then the `a2` lines of `C2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulingParameters {
    pub first: Vec<RulingParameter>,
    pub second: Vec<RulingParameter>,
}

impl RulingParameters {
    /// Distinct small integers drawn for every line.
    pub fn random<R: Rng>(a1: usize, a2: usize, rng: &mut R) -> Self {
        let n = a1 + a2;
        let mut draw = || {
            sample(rng, 4 * n + 4, n).into_iter().map(|t| RulingParameter::finite(t as i64 - 2 * n as i64)).collect()
        };
        RulingParameters { first: draw(), second: draw() }
    }
}

/// Which points of `Z` form `Z1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Split {
    Indices(Vec<usize>),
    Random { size: usize, seed: u64 },
}

/// A complete intersection `Z = W ∩ {F1 = 0} ∩ {F2 = 0}` and a reduced `Z1 ⊆ Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageInstance {
    pub surface: Surface,
    pub degrees: [i64; 2],
    pub seed: Option<u64>,
    pub mode: Mode,
    pub forms: Vec<Polynomial>,
    /// All of `Z`, when known point by point.
    pub z: Option<PointSet>,
    pub z1: PointSet,
    pub z2: Option<PointSet>,
}

impl LinkageInstance {
    pub fn c(&self) -> i64 {
        self.degrees[0] + self.degrees[1]
    }

    pub fn ch_w(&self) -> i64 {
        self.surface.ch()
    }

    pub fn degree_z(&self) -> i64 {
        self.degrees[0] * self.degrees[1] * self.surface.degree()
    }

    /// `I_W + (F1, F2)`.
    pub fn ideal_z(&self) -> GradedIdeal {
        self.surface.ideal().with_generators(self.forms.iter().cloned()).expect("forms live on the surface ring")
    }
}

fn check_degrees(a1: i64, a2: i64) -> Result<()> {
    if a1 < 1 || a2 < 1 {
        return Err(Error::Domain(format!("complete intersection degrees must be positive, got ({a1}, {a2})")));
    }
    Ok(())
}

fn check_distinct(family: &[RulingParameter], want: usize, name: &str) -> Result<()> {
    if family.len() != want {
        return Err(Error::Arity { expected: want, got: family.len() });
    }
    for (i, p) in family.iter().enumerate() {
        if family[..i].contains(p) {
            return Err(Error::DuplicateParameter(format!("{p} in the {name} ruling")));
        }
    }
    Ok(())
}

/// Segre image of `(α, β)`: the crossing of the two rulings' lines.
fn crossing(alpha: &RulingParameter, beta: &RulingParameter) -> ProjectivePoint {
    let (a0, a1) = alpha.homogeneous();
    let (b0, b1) = beta.homogeneous();
    Surface::Quadric.parametrize(&[a0, a1, b0, b1]).expect("crossing has four parameters")
}

/// Plane tangent to `xw - yz` at `p`; it cuts the quadric in the two lines through `p`.
fn tangent_plane(p: &ProjectivePoint) -> Polynomial {
    let c = p.coords();
    Polynomial::linear(&[c[3].clone(), -c[2].clone(), -c[1].clone(), c[0].clone()]).expect("tangent plane is nonzero")
}

/// `C_j` is `a_j` lines of each ruling, cut out by a product of tangent planes;
/// `Z = C1 ∩ C2` is the `2 a1 a2` crossings of one curve's lines with the other's.
pub fn build_quadric_ruled_ci(a1: i64, a2: i64, params: &RulingParameters, split: &Split) -> Result<LinkageInstance> {
    check_degrees(a1, a2)?;
    let (n1, n2) = (a1 as usize, a2 as usize);
    check_distinct(&params.first, n1 + n2, "first")?;
    check_distinct(&params.second, n1 + n2, "second")?;
    let (alpha, alpha2) = params.first.split_at(n1);
    let (beta, beta2) = params.second.split_at(n1);

    let product = |a: &[RulingParameter], b: &[RulingParameter]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| tangent_plane(&crossing(x, y)))
            .reduce(|acc, l| acc.mul(&l))
            .expect("at least one line")
    };
    let forms = vec![product(alpha, beta), product(alpha2, beta2)];

    let mut points = Vec::with_capacity(2 * n1 * n2);
    for a in alpha {
        for b in beta2 {
            points.push(crossing(a, b));
        }
    }
    for b in beta {
        for a in alpha2 {
            points.push(crossing(a, b));
        }
    }
    let z = PointSet::new(3, points)?;

    let (indices, seed) = match split {
        Split::Indices(ix) => (ix.clone(), None),
        Split::Random { size, seed } => {
            if *size > z.len() {
                return Err(Error::Domain(format!("split of size {size} from {} points", z.len())));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut ix = sample(&mut rng, z.len(), *size).into_vec();
            ix.sort_unstable();
            (ix, Some(*seed))
        }
    };
    let z1 = z.select(&indices)?;
    let rest: Vec<usize> = (0..z.len()).filter(|i| !indices.contains(i)).collect();
    let z2 = z.select(&rest)?;
    Ok(LinkageInstance {
        surface: Surface::Quadric,
        degrees: [a1, a2],
        seed,
        mode: Mode::PointSplit,
        forms,
        z: Some(z),
        z1,
        z2: Some(z2),
    })
}

/// `Z1` plus random forms of degrees `a1`, `a2` through it.
pub fn build_random_ci_through_points(
    surface: Surface,
    a1: i64,
    a2: i64,
    z1: &PointSet,
    seed: u64,
) -> Result<LinkageInstance> {
    check_degrees(a1, a2)?;
    if z1.ambient_dim() != surface.ambient_dim() {
        return Err(Error::Shape(format!("points in P^{}, surface in P^{}", z1.ambient_dim(), surface.ambient_dim())));
    }
    for p in z1.points() {
        if !surface.contains(p) {
            return Err(Error::Domain(format!("point {p} is not on the {surface}")));
        }
        if !surface.is_smooth_point(p) {
            return Err(Error::Domain(format!("point {p} is a singular point of the {surface}")));
        }
    }
    let expected = a1 * a2 * surface.degree();
    if z1.len() as i64 > expected {
        return Err(Error::Infeasible(format!("{} points cannot lie on a complete intersection of degree {expected}", z1.len())));
    }
    let ring = SurfaceRing::new(surface);
    let mut bases = Vec::new();
    for a in [a1, a2] {
        let basis = z1.ideal_piece(a as u32);
        let room = basis.len() as i64 - ring.ideal_dimension(a) as i64;
        let needed = if a1 == a2 { 2 } else { 1 };
        if room < needed {
            return Err(Error::Infeasible(format!(
                "forms of degree {a} through {} points: {room} independent modulo the surface, {needed} needed",
                z1.len()
            )));
        }
        bases.push(basis);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let forms: Option<Vec<Polynomial>> = bases.iter().map(|b| random_combination(b, &mut rng)).collect();
        let Some(forms) = forms else { continue };
        let instance = LinkageInstance {
            surface,
            degrees: [a1, a2],
            seed: Some(seed),
            mode: Mode::IdealColon,
            forms,
            z: None,
            z1: z1.clone(),
            z2: None,
        };
        if is_complete_intersection(&instance) {
            return Ok(instance);
        }
    }
    Err(Error::NonGeneric { attempts: MAX_ATTEMPTS })
}

/// Seeded instance with `size` points in `Z1`: a ruled split on the quadric,
/// random forms through random smooth points on the other surfaces.
pub fn build_seeded(surface: Surface, a1: i64, a2: i64, size: usize, seed: u64) -> Result<LinkageInstance> {
    check_degrees(a1, a2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match surface {
        Surface::Quadric => {
            let params = RulingParameters::random(a1 as usize, a2 as usize, &mut rng);
            build_quadric_ruled_ci(a1, a2, &params, &Split::Random { size, seed })
        }
        _ => {
            let expected = a1 * a2 * surface.degree();
            if size as i64 > expected {
                return Err(Error::Infeasible(format!(
                    "{size} points cannot lie on a complete intersection of degree {expected}"
                )));
            }
            let z1 = surface.random_smooth_points(size, &mut rng);
            build_random_ci_through_points(surface, a1, a2, &z1, seed)
        }
    }
}

fn random_combination<R: Rng>(basis: &[Polynomial], rng: &mut R) -> Option<Polynomial> {
    let num_vars = basis[0].num_vars();
    let terms = basis.iter().flat_map(|b| {
        let c = int(rng.random_range(-COEFF_RANGE..=COEFF_RANGE));
        b.terms().map(move |(e, x)| (e.clone(), x * &c)).collect::<Vec<_>>()
    });
    Polynomial::from_terms(num_vars, terms.collect::<Vec<_>>()).ok().map(|p| p.primitive())
}

/// Whether `I_W + (F1, F2)` has Hilbert function equal to `deg Z` once past
/// the regularity of a complete intersection of this type.
pub fn is_complete_intersection(instance: &LinkageInstance) -> bool {
    let Ok(iz) = SurfaceIdeal::new(instance.surface, &instance.forms) else { return false };
    let t0 = instance.c();
    (t0..=t0 + 1).all(|t| iz.hilbert(t) as i64 == instance.degree_z())
}
