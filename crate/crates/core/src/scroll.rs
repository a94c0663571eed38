//! Rational normal scrolls `S(a_1, ..., a_r)` and their divisor lattices.
//!
//! A scroll of dimension `r` and degree `f = Σ a_i` spans `P^{f + r - 1}`.
//! Its canonical resolution is the projective bundle over `P^1`, whose
//! Picard group is generated by the hyperplane class `H~` and the fibre
//! class `R~` with
//!
//! ```text
//! H~^r = f,   H~^{r-1} R~ = 1,   H~^{r-2} R~^2 = 0.
//! ```
//!
//! On the scroll itself Weil divisors are combinations of `H` and `R`;
//! when the vertex has codimension 2 the relation `H ~ f R` collapses the
//! class group to `Z[R]`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub dim: i64,
    pub codim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scroll {
    n: i64,
    a: Vec<i64>,
    f: i64,
    vertex: Option<Vertex>,
}

impl Scroll {
    /// Ambient projective dimension.
    pub fn n(&self) -> i64 {
        self.n
    }

    /// Scroll dimension `r`.
    pub fn r(&self) -> i64 {
        self.a.len() as i64
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    /// Degree `f = Σ a_i`.
    pub fn f(&self) -> i64 {
        self.f
    }

    /// `None` when the scroll is smooth.
    pub fn vertex(&self) -> Option<Vertex> {
        self.vertex
    }

    pub fn is_smooth(&self) -> bool {
        self.vertex.is_none()
    }

    /// Vertex of codimension 2: the class group is cyclic.
    pub fn is_cone_type(&self) -> bool {
        matches!(self.vertex, Some(Vertex { codim: 2, .. }))
    }

    /// A 3-fold whose vertex is a line.
    pub fn has_line_vertex(&self) -> bool {
        self.r() == 3 && matches!(self.vertex, Some(Vertex { dim: 1, .. }))
    }
}

impl fmt::Display for Scroll {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "S({}) in P^{}", a.join(","), self.n)
    }
}

/// Builds `S(a_1, ..., a_r) ⊂ P^n`. The list is sorted; `n` must equal `f + r - 1`.
pub fn make_scroll(n: i64, a: &[i64]) -> Result<Scroll> {
    if a.is_empty() {
        return Err(Error::Domain("scroll type must be nonempty".into()));
    }
    if let Some(x) = a.iter().find(|&&x| x < 0) {
        return Err(Error::Domain(format!("scroll type entries must be nonnegative, got {x}")));
    }
    let mut a = a.to_vec();
    a.sort_unstable();
    let f: i64 = a.iter().sum();
    if f == 0 {
        return Err(Error::DegenerateScroll);
    }
    let r = a.len() as i64;
    if n != f + r - 1 {
        return Err(Error::DimensionMismatch(format!(
            "S{a:?} has degree {f} and dimension {r}, so it spans P^{}, not P^{n}",
            f + r - 1
        )));
    }
    let zeros = a.iter().take_while(|&&x| x == 0).count() as i64;
    let vertex = (zeros > 0).then(|| Vertex { dim: zeros - 1, codim: r - zeros + 1 });
    Ok(Scroll { n, a, f, vertex })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassGroup {
    /// `Z[H] ⊕ Z[R]`
    Free,
    /// `Z[R]` with `H ~ f R`.
    Cyclic { f: i64 },
}

/// A Weil divisor class on the scroll.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DivisorClass {
    /// `a H + b R`
    Free { a: i64, b: i64 },
    /// `d R`, used when `H ~ f R`.
    Cone { d: i64 },
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DivisorClass::Free { a, b } => write!(f, "{a}H{b:+}R"),
            DivisorClass::Cone { d } => write!(f, "{d}R"),
        }
    }
}

impl DivisorClass {
    /// Expresses `a H + b R` in the scroll's class group.
    pub fn normalized(scroll: &Scroll, a: i64, b: i64) -> DivisorClass {
        if scroll.is_cone_type() {
            DivisorClass::Cone { d: a * scroll.f() + b }
        } else {
            DivisorClass::Free { a, b }
        }
    }
}

/// `α H~ + β R~` on the canonical resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResolutionClass {
    pub alpha: i64,
    pub beta: i64,
}

impl ResolutionClass {
    pub const H: ResolutionClass = ResolutionClass { alpha: 1, beta: 0 };
    pub const R: ResolutionClass = ResolutionClass { alpha: 0, beta: 1 };

    pub fn new(alpha: i64, beta: i64) -> Self {
        ResolutionClass { alpha, beta }
    }
}

impl std::ops::Sub for ResolutionClass {
    type Output = ResolutionClass;

    fn sub(self, rhs: ResolutionClass) -> ResolutionClass {
        ResolutionClass::new(self.alpha - rhs.alpha, self.beta - rhs.beta)
    }
}

impl fmt::Display for ResolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}H~{:+}R~", self.alpha, self.beta)
    }
}

pub fn class_group(scroll: &Scroll) -> ClassGroup {
    if scroll.is_cone_type() {
        ClassGroup::Cyclic { f: scroll.f() }
    } else {
        ClassGroup::Free
    }
}

/// Top intersection of exactly `r` classes on the resolution.
///
/// Expanding multilinearly, a product with no `R~` factor contributes `f`,
/// one `R~` factor contributes 1, and two or more contribute 0.
pub fn intersection_number(scroll: &Scroll, classes: &[ResolutionClass]) -> Result<i64> {
    let r = scroll.a.len();
    if classes.len() != r {
        return Err(Error::Arity { expected: r, got: classes.len() });
    }
    let all_h: i64 = classes.iter().map(|c| c.alpha).product();
    let one_r: i64 = (0..r)
        .map(|j| {
            classes[j].beta
                * classes.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, c)| c.alpha).product::<i64>()
        })
        .sum();
    Ok(scroll.f * all_h + one_r)
}

/// `K ~ -r H + (f - 2) R`.
pub fn canonical_class(scroll: &Scroll) -> DivisorClass {
    DivisorClass::normalized(scroll, -scroll.r(), scroll.f() - 2)
}

/// Least twist making the dualizing sheaf effective: `r`.
pub fn canonical_characteristic(scroll: &Scroll) -> i64 {
    scroll.r()
}

/// Degree against `H^{r-1}`.
pub fn divisor_degree(scroll: &Scroll, cls: DivisorClass) -> Result<i64> {
    match (cls, scroll.is_cone_type()) {
        (DivisorClass::Free { a, b }, false) => Ok(a * scroll.f() + b),
        (DivisorClass::Cone { d }, true) => Ok(d),
        _ => Err(Error::VariantMismatch),
    }
}

/// Integral total transform of an effective `D ~ d R` when the vertex has codimension 2.
///
/// With `d - 1 = k f + h` (`k >= -1`, `0 <= h < f`) the transform is
/// `(k + 1) H~ - (f - h - 1) R~`.
pub fn integral_total_transform(scroll: &Scroll, d: i64) -> Result<ResolutionClass> {
    if !scroll.is_cone_type() {
        return Err(Error::Shape(format!("{scroll} does not have a codimension-2 vertex")));
    }
    if d < 0 {
        return Err(Error::Domain(format!("divisor degree {d} must be nonnegative")));
    }
    let (k, h) = (d - 1).div_mod_floor(&scroll.f());
    Ok(ResolutionClass::new(k + 1, -(scroll.f() - h - 1)))
}

fn require_line_vertex(scroll: &Scroll) -> Result<()> {
    if scroll.has_line_vertex() {
        Ok(())
    } else {
        Err(Error::Shape(format!("{scroll} is not a 3-fold with a line vertex")))
    }
}

/// Proper transform of `D ~ c H` passing `a` times through the vertex line: `(c - a) H~ + f a R~`.
pub fn proper_transform_line_vertex(scroll: &Scroll, c: i64, a: i64) -> Result<ResolutionClass> {
    require_line_vertex(scroll)?;
    if a < 0 || a > c {
        return Err(Error::Domain(format!("vertex multiplicity a = {a} must lie in [0, c = {c}]")));
    }
    Ok(ResolutionClass::new(c - a, scroll.f() * a))
}

/// Surfaces on a 3-fold with a line vertex, as used for vertex multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexDivisor {
    /// `D ~ c H`, containing the vertex line with multiplicity `a`.
    Hyper { c: i64, a: i64 },
    /// A ruling plane `R`.
    Ruling,
}

impl VertexDivisor {
    fn total(&self, scroll: &Scroll) -> Result<ResolutionClass> {
        match *self {
            VertexDivisor::Hyper { c, .. } => integral_total_transform(scroll, c * scroll.f()),
            VertexDivisor::Ruling => integral_total_transform(scroll, 1),
        }
    }

    fn proper(&self, scroll: &Scroll) -> Result<ResolutionClass> {
        match *self {
            VertexDivisor::Hyper { c, a } => proper_transform_line_vertex(scroll, c, a),
            VertexDivisor::Ruling => Ok(ResolutionClass::R),
        }
    }
}

/// Multiplicity of the vertex line in `D1 ∩ D2`:
/// `D1* · D2* · H~ - D1~ · D2~ · H~`.
///
/// Both triple products go through [`intersection_number`]; the result is
/// then checked against `a1 a2 f` (two hypersurface sections) or `a`
/// (against a ruling plane).
pub fn vertex_multiplicity(scroll: &Scroll, d1: VertexDivisor, d2: VertexDivisor) -> Result<i64> {
    require_line_vertex(scroll)?;
    let total = intersection_number(scroll, &[d1.total(scroll)?, d2.total(scroll)?, ResolutionClass::H])?;
    let proper = intersection_number(scroll, &[d1.proper(scroll)?, d2.proper(scroll)?, ResolutionClass::H])?;
    let lattice = total - proper;
    let expected = match (d1, d2) {
        (VertexDivisor::Hyper { a: a1, .. }, VertexDivisor::Hyper { a: a2, .. }) => a1 * a2 * scroll.f(),
        (VertexDivisor::Hyper { a, .. }, VertexDivisor::Ruling)
        | (VertexDivisor::Ruling, VertexDivisor::Hyper { a, .. }) => a,
        (VertexDivisor::Ruling, VertexDivisor::Ruling) => {
            return Err(Error::Shape("two ruling planes: no multiplicity formula".into()));
        }
    };
    if lattice != expected {
        return Err(Error::Invariant(format!(
            "vertex multiplicity: lattice gives {lattice}, closed form gives {expected}"
        )));
    }
    Ok(lattice)
}

/// Degree and arithmetic genus of a complete intersection `X ∩ F_a ∩ F_b` on a 3-fold scroll.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiCurve {
    pub degree: i64,
    pub genus: i64,
}

/// Adjunction with `K_X ~ -3H + (f-2)R` on a 3-fold of degree `f`:
/// `deg = a b f`, `2 p_a - 2 = a b ((a + b - 3) f + f - 2)`.
pub fn ci_invariants(a: i64, b: i64, f: i64) -> Result<CiCurve> {
    if a < 1 || b < 1 {
        return Err(Error::Domain(format!("hypersurface degrees must be positive, got ({a}, {b})")));
    }
    if f < 1 {
        return Err(Error::Domain(format!("scroll degree must be positive, got {f}")));
    }
    let twice = a * b * ((a + b - 3) * f + f - 2);
    debug_assert!(twice % 2 == 0);
    Ok(CiCurve { degree: a * b * f, genus: 1 + twice / 2 })
}

pub fn ci_curve_invariants(scroll: &Scroll, a: i64, b: i64) -> Result<CiCurve> {
    if scroll.r() != 3 {
        return Err(Error::Shape(format!("{scroll} is not a 3-fold")));
    }
    ci_invariants(a, b, scroll.f())
}

/// Whether `O_X(a, b)` is reflexive: always off a codimension-2 vertex, else iff `b < f`.
pub fn is_reflexive_pair(scroll: &Scroll, _a: i64, b: i64) -> bool {
    !scroll.is_cone_type() || b < scroll.f()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_vertex() -> Scroll {
        make_scroll(5, &[0, 0, 3]).unwrap()
    }

    #[test]
    fn make_scroll_examples() {
        let x = line_vertex();
        assert_eq!((x.f(), x.r()), (3, 3));
        assert_eq!(x.vertex(), Some(Vertex { dim: 1, codim: 2 }));

        let x = make_scroll(5, &[1, 1, 1]).unwrap();
        assert!(x.is_smooth());
        assert_eq!(x.f(), 3);

        let x = make_scroll(5, &[0, 1, 2]).unwrap();
        assert_eq!(x.vertex(), Some(Vertex { dim: 0, codim: 3 }));
    }

    #[test]
    fn make_scroll_errors() {
        assert_eq!(make_scroll(2, &[0, 0, 0]), Err(Error::DegenerateScroll));
        assert!(matches!(make_scroll(4, &[1, 1, 1]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(make_scroll(4, &[]), Err(Error::Domain(_))));
        assert!(matches!(make_scroll(4, &[-1, 3, 1]), Err(Error::Domain(_))));
    }

    #[test]
    fn class_groups() {
        assert_eq!(class_group(&line_vertex()), ClassGroup::Cyclic { f: 3 });
        assert_eq!(class_group(&make_scroll(5, &[0, 1, 2]).unwrap()), ClassGroup::Free);
        assert_eq!(class_group(&make_scroll(5, &[1, 1, 1]).unwrap()), ClassGroup::Free);
    }

    #[test]
    fn intersection_examples() {
        let x = line_vertex();
        let h = ResolutionClass::H;
        assert_eq!(intersection_number(&x, &[h, h, h]).unwrap(), 3);
        assert_eq!(intersection_number(&x, &[h, h, ResolutionClass::R]).unwrap(), 1);
        assert_eq!(intersection_number(&x, &[h, ResolutionClass::R, ResolutionClass::R]).unwrap(), 0);
        let v = [ResolutionClass::new(2, 3), ResolutionClass::new(10, 3), ResolutionClass::new(1, 0)];
        assert_eq!(intersection_number(&x, &v).unwrap(), 96);
        assert_eq!(intersection_number(&x, &[h, h]), Err(Error::Arity { expected: 3, got: 2 }));
    }

    #[test]
    fn canonical_examples() {
        let x = make_scroll(5, &[1, 1, 1]).unwrap();
        assert_eq!(canonical_class(&x), DivisorClass::Free { a: -3, b: 1 });
        assert_eq!(canonical_characteristic(&x), 3);

        let x = make_scroll(3, &[1, 1]).unwrap();
        assert_eq!(canonical_class(&x), DivisorClass::Free { a: -2, b: 0 });
        assert_eq!(canonical_characteristic(&x), 2);

        let x = make_scroll(4, &[0, 0, 2]).unwrap();
        assert_eq!(canonical_class(&x), DivisorClass::Cone { d: -6 });
        assert_eq!(canonical_characteristic(&x), 3);
    }

    #[test]
    fn divisor_degrees() {
        let x = make_scroll(5, &[1, 1, 1]).unwrap();
        assert_eq!(divisor_degree(&x, DivisorClass::Free { a: 1, b: 0 }).unwrap(), 3);
        assert_eq!(divisor_degree(&x, DivisorClass::Free { a: 2, b: -1 }).unwrap(), 5);
        assert_eq!(divisor_degree(&x, DivisorClass::Cone { d: 9 }), Err(Error::VariantMismatch));
        let y = line_vertex();
        assert_eq!(divisor_degree(&y, DivisorClass::Cone { d: 9 }).unwrap(), 9);
        assert_eq!(divisor_degree(&y, DivisorClass::normalized(&y, 1, 0)).unwrap(), 3);
    }

    #[test]
    fn total_transform_examples() {
        let x = line_vertex();
        assert_eq!(integral_total_transform(&x, 1).unwrap(), ResolutionClass::new(1, -2));
        assert_eq!(integral_total_transform(&x, 9).unwrap(), ResolutionClass::new(3, 0));
        assert_eq!(integral_total_transform(&x, 0).unwrap(), ResolutionClass::new(0, 0));
        assert!(matches!(
            integral_total_transform(&make_scroll(5, &[0, 1, 2]).unwrap(), 3),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn proper_transform_examples() {
        let x = line_vertex();
        assert_eq!(proper_transform_line_vertex(&x, 3, 1).unwrap(), ResolutionClass::new(2, 3));
        assert_eq!(proper_transform_line_vertex(&x, 5, 0).unwrap(), ResolutionClass::new(5, 0));
        assert_eq!(proper_transform_line_vertex(&x, 11, 2).unwrap(), ResolutionClass::new(9, 6));
        assert!(proper_transform_line_vertex(&x, 2, 3).is_err());
        assert!(proper_transform_line_vertex(&make_scroll(5, &[1, 1, 1]).unwrap(), 3, 1).is_err());
    }

    #[test]
    fn vertex_multiplicity_examples() {
        let x = line_vertex();
        let s = VertexDivisor::Hyper { c: 3, a: 1 };
        assert_eq!(vertex_multiplicity(&x, s, VertexDivisor::Hyper { c: 11, a: 1 }).unwrap(), 3);
        assert_eq!(vertex_multiplicity(&x, VertexDivisor::Hyper { c: 4, a: 0 }, s).unwrap(), 0);
        assert_eq!(vertex_multiplicity(&x, s, VertexDivisor::Ruling).unwrap(), 1);
        assert!(vertex_multiplicity(&x, VertexDivisor::Ruling, VertexDivisor::Ruling).is_err());
    }

    #[test]
    fn ci_examples() {
        let x = line_vertex();
        assert_eq!(ci_curve_invariants(&x, 3, 11).unwrap(), CiCurve { degree: 99, genus: 562 });
        for f in 1..6 {
            assert_eq!(ci_invariants(1, 1, f).unwrap(), CiCurve { degree: f, genus: 0 });
        }
        let x = make_scroll(4, &[0, 1, 1]).unwrap();
        assert_eq!(ci_curve_invariants(&x, 2, 2).unwrap(), CiCurve { degree: 8, genus: 5 });
        assert!(ci_curve_invariants(&make_scroll(3, &[1, 1]).unwrap(), 1, 1).is_err());
    }

    #[test]
    fn reflexivity() {
        let x = line_vertex();
        assert!(is_reflexive_pair(&x, -3, 1));
        assert!(!is_reflexive_pair(&x, 0, 3));
        let y = make_scroll(5, &[0, 1, 2]).unwrap();
        assert!(is_reflexive_pair(&y, 7, 100));
    }
}
