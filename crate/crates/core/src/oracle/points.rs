//! Reduced finite point sets in projective space and their Hilbert functions.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::linalg::{self, Echelon};
use super::poly::{monomial_value, GradedIdeal, MonomialBasis, Polynomial};
use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

/// Point of `P^{len-1}` scaled so its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigRational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Domain("projective point with all coordinates zero".into()));
        };
        let coords = if lead.is_one() { coords } else { coords.into_iter().map(|c| c / &lead).collect() };
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Parses whitespace- or comma-separated rational coordinates.
    pub fn parse(line: &str) -> Result<Self> {
        let coords = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty point".into()));
        }
        Self::new(coords)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        let coords = parts.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        ProjectivePoint::new(coords).map_err(D::Error::custom)
    }
}

/// Distinct points of a common projective space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PointSetRepr")]
pub struct PointSet {
    ambient_dim: usize,
    points: Vec<ProjectivePoint>,
}

#[derive(Deserialize)]
struct PointSetRepr {
    ambient_dim: usize,
    points: Vec<ProjectivePoint>,
}

impl TryFrom<PointSetRepr> for PointSet {
    type Error = Error;

    fn try_from(r: PointSetRepr) -> Result<Self> {
        PointSet::new(r.ambient_dim, r.points)
    }
}

impl PointSet {
    pub fn new(ambient_dim: usize, points: Vec<ProjectivePoint>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::Shape(format!("point {p} does not lie in P^{ambient_dim}")));
            }
            if points[..i].contains(p) {
                return Err(Error::Domain(format!("repeated point {p}")));
            }
        }
        Ok(PointSet { ambient_dim, points })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        PointSet { ambient_dim, points: Vec::new() }
    }

    /// One point per line; blank lines and `#` comments are skipped.
    pub fn parse(ambient_dim: usize, text: &str) -> Result<Self> {
        let points = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(ProjectivePoint::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, points)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_vars(&self) -> usize {
        self.ambient_dim + 1
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Subset by index, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let points = indices
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Domain(format!("index {i} out of range for {} points", self.len())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.ambient_dim, points)
    }

    fn evaluation_rows(&self, basis: &MonomialBasis) -> Vec<Vec<BigRational>> {
        self.points
            .iter()
            .map(|p| basis.monomials.iter().map(|m| monomial_value(m, p.coords())).collect())
            .collect()
    }

    /// Basis of the degree-`k` forms vanishing on every point.
    pub fn ideal_piece(&self, k: u32) -> Vec<Polynomial> {
        let basis = MonomialBasis::new(self.num_vars(), k);
        let rows = self.evaluation_rows(&basis);
        linalg::kernel(&rows, basis.len()).iter().map(|c| basis.polynomial(c)).collect()
    }

    /// Smallest `t ≥ 0` with `h(t) = |Z|`.
    pub fn regularity_index(&self) -> i64 {
        (0..).find(|&t| hilbert_function(self, t) == self.len()).expect("Hilbert function stabilizes")
    }

    /// Generators of an ideal whose saturation is the ideal of the points.
    ///
    /// The ideal of reduced points is generated in degree at most one more
    /// than the regularity index, so that single piece suffices.
    pub fn saturating_generators(&self) -> GradedIdeal {
        let d = self.regularity_index() as u32 + 1;
        GradedIdeal::new(self.num_vars(), self.ideal_piece(d)).expect("generators share the ring")
    }
}

/// `h_Z(k)`: the number of conditions the points impose on degree-`k` forms.
pub fn hilbert_function(z: &PointSet, k: i64) -> usize {
    if k < 0 || z.is_empty() {
        return 0;
    }
    let basis = MonomialBasis::new(z.num_vars(), k as u32);
    linalg::rank(&z.evaluation_rows(&basis), basis.len())
}

/// Dimension of the span of the given forms restricted to the points.
pub fn restricted_rank(forms: &[Polynomial], z: &PointSet) -> usize {
    if forms.is_empty() || z.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<BigRational>> =
        forms.iter().map(|f| z.points.iter().map(|p| f.eval(p.coords())).collect()).collect();
    Echelon::new(&rows, z.len()).rank()
}
