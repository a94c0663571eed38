//! Genus bookkeeping for linked curves, and the numerical side of the
//! maximal-genus classification examples on rational normal 3-folds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genus::{compute_parameters, max_genus, residual_h0_bound, GenusParameters};
use crate::scroll::{ci_invariants, DivisorClass};

/// `p_a(Y2) = p_a(Y1) - p_a(Y) + deg(K_Y|Y2) + 1`.
pub fn linked_genus(p1: i64, p_y: i64, deg_k_restricted: i64) -> i64 {
    p1 - p_y + deg_k_restricted + 1
}

/// A link `Y = X ∩ F_a ∩ F_b` on a rational normal 3-fold `X ⊂ P^n`, seen from `Y1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageData {
    pub a: i64,
    pub b: i64,
    pub n: i64,
    /// Degree of `Y1`, when known.
    pub deg1: Option<i64>,
    pub deg2: i64,
    /// `deg(R|Y1)`, when known.
    pub deg_r1: Option<i64>,
    pub deg_r2: i64,
    pub p1: i64,
    pub p_y: i64,
}

impl LinkageData {
    /// Fills in `p_a(Y)` by adjunction and the `Y1` side by conservation.
    pub fn complete(a: i64, b: i64, n: i64, deg2: i64, deg_r2: i64, p1: i64) -> Result<Self> {
        let f = n - 2;
        let y = ci_invariants(a, b, f)?;
        Ok(LinkageData {
            a,
            b,
            n,
            deg1: Some(y.degree - deg2),
            deg2,
            deg_r1: Some(a * b - deg_r2),
            deg_r2,
            p1,
            p_y: y.genus,
        })
    }

    /// The same link seen from `Y2`, given `p_a(Y2)`.
    pub fn reversed(&self, p2: i64) -> Result<Self> {
        let f = self.n - 2;
        Ok(LinkageData {
            a: self.a,
            b: self.b,
            n: self.n,
            deg1: Some(self.deg2),
            deg2: self.deg1.unwrap_or(self.a * self.b * f - self.deg2),
            deg_r1: Some(self.deg_r2),
            deg_r2: self.deg_r1.unwrap_or(self.a * self.b - self.deg_r2),
            p1: p2,
            p_y: self.p_y,
        })
    }
}

/// Genus of `Y2` when `K_Y|Y2 ~ (a + b - 3) H + (n - 4) R`.
pub fn linked_genus_scroll(data: &LinkageData, f: i64) -> Result<i64> {
    if f != data.n - 2 {
        return Err(Error::Invariant(format!(
            "a rational normal 3-fold in P^{} has degree {}, got f = {f}",
            data.n,
            data.n - 2
        )));
    }
    let ab = data.a * data.b;
    if let Some(deg1) = data.deg1 {
        if deg1 + data.deg2 != ab * f {
            return Err(Error::Invariant(format!(
                "deg Y1 + deg Y2 = {} but a b f = {}",
                deg1 + data.deg2,
                ab * f
            )));
        }
    }
    if let Some(deg_r1) = data.deg_r1 {
        if deg_r1 + data.deg_r2 != ab {
            return Err(Error::Invariant(format!(
                "deg R|Y1 + deg R|Y2 = {} but a b = {ab}",
                deg_r1 + data.deg_r2
            )));
        }
    }
    let deg_k = (data.a + data.b - 3) * data.deg2 + (data.n - 4) * data.deg_r2;
    Ok(linked_genus(data.p1, data.p_y, deg_k))
}

/// Right-hand side of the Hilbert duality for points linked on an aCM surface:
/// `deg Z1 - h_{Z1}(c - ch_W - i)`.
pub fn duality_rhs(deg_z1: i64, h_z1: impl Fn(i64) -> i64, c: i64, ch_w: i64, i: i64) -> Result<i64> {
    let value = deg_z1 - h_z1(c - ch_w - i);
    if value < 0 {
        return Err(Error::NegativeDuality(value));
    }
    Ok(value)
}

/// Arithmetic genus of a plane curve of degree `deg`.
pub fn plane_curve_genus(deg: i64) -> i64 {
    (deg - 1) * (deg - 2) / 2
}

/// How the residual curve `C''` decomposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkedComponents {
    /// `v = n - 3`: `C'' = C'`.
    PlaneOnly,
    /// `C'` together with `count` plane curves of degree `degree` in distinct ruling planes.
    PlaneCurves { count: i64, degree: i64 },
    /// `v = 0`, `S ~ wH + R`: `C'` together with a complete intersection on `D ~ H - R`.
    HMinusRSection { degree: i64, genus: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example1Chain {
    /// Class of the Castelnuovo surface on the 3-fold.
    pub surface_class: DivisorClass,
    /// Type of the linking complete intersection, `(w + 1, m + 1)`.
    pub link_degrees: (i64, i64),
    pub p_y: i64,
    pub deg_c_prime: i64,
    pub p_c_prime: i64,
    pub components: LinkedComponents,
    pub deg_c_double_prime: i64,
    pub p_c_double_prime: i64,
    pub deg_r_c_double_prime: i64,
    /// `h^0(I_{C''/X}(0, n - 4))` lower bound from the profile tail.
    pub residual_sections: i64,
    pub genus_cross_check: i64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example1Report {
    pub params: GenusParameters,
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub max_genus: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Example1Chain>,
}

fn genus_through_link(params: &GenusParameters, deg_partner: i64, p_partner: i64, deg_r_partner: i64) -> Result<i64> {
    let (a, b) = (params.w + 1, params.m + 1);
    let data = LinkageData::complete(a, b, params.n, params.d, a * b - deg_r_partner, p_partner)?;
    if data.deg1 != Some(deg_partner) {
        return Err(Error::Invariant(format!(
            "degree conservation: d + deg C'' = {} but a b f = {}",
            params.d + deg_partner,
            a * b * (params.n - 2)
        )));
    }
    linked_genus_scroll(&data, params.n - 2)
}

fn in_example1_range(p: &GenusParameters) -> std::result::Result<(), String> {
    if p.n < 4 {
        return Err(format!("n = {} leaves no rational normal 3-fold to link on", p.n));
    }
    if p.epsilon < p.s - 2 - p.w || p.epsilon > p.s - 2 {
        return Err(format!(
            "epsilon = {} outside [s - 2 - w, s - 2] = [{}, {}]",
            p.epsilon,
            p.s - 2 - p.w,
            p.s - 2
        ));
    }
    Ok(())
}

/// Plane residual curve case: `s - 2 - w <= epsilon <= s - 2`.
///
/// Rebuilds `C''` from a plane curve `C'` of degree `s - epsilon - 1` plus
/// the part cut on the divisor linked to the surface, and pushes its
/// genus back through the `(w + 1, m + 1)` link to `C`.
pub fn classify_example1(d: i64, n: i64, s: i64) -> Result<Example1Report> {
    let params = compute_parameters(d, n, s)?;
    let g = max_genus(&params)?;
    if let Err(reason) = in_example1_range(&params) {
        return Ok(Example1Report { params, applicable: false, reason: Some(reason), max_genus: g, chain: None });
    }
    let p = params;
    let f = p.n - 2;
    let residual_planes = p.n - 3 - p.v;
    let deg_c_prime = p.s - p.epsilon - 1;
    let p_c_prime = plane_curve_genus(deg_c_prime);

    let (surface_class, components, deg_cc, p_cc, deg_r_cc) = if residual_planes == 0 {
        (DivisorClass::Free { a: p.w + 1, b: 0 }, LinkedComponents::PlaneOnly, deg_c_prime, p_c_prime, 0)
    } else if p.v == 0 {
        // S ~ wH + R, linked to D ~ H - R; C_D = D ∩ F_{m+1} meets C' along the line π ∩ D.
        let deg_cd = (p.m + 1) * (f - 1);
        let twice = (p.m + 1) * ((p.m - 1) * (f - 1) + (f - 3));
        let p_cd = 1 + twice / 2;
        (
            DivisorClass::Free { a: p.w, b: 1 },
            LinkedComponents::HMinusRSection { degree: deg_cd, genus: p_cd },
            deg_c_prime + deg_cd,
            p_c_prime + p_cd + deg_c_prime - 1,
            p.m + 1,
        )
    } else {
        // Disjoint plane curves in distinct ruling planes.
        let plane = plane_curve_genus(p.m + 1);
        (
            DivisorClass::Free { a: p.w + 1, b: -residual_planes },
            LinkedComponents::PlaneCurves { count: residual_planes, degree: p.m + 1 },
            deg_c_prime + residual_planes * (p.m + 1),
            p_c_prime + residual_planes * plane - residual_planes,
            0,
        )
    };

    let genus_cross_check = genus_through_link(&p, deg_cc, p_cc, deg_r_cc)?;
    let chain = Example1Chain {
        surface_class,
        link_degrees: (p.w + 1, p.m + 1),
        p_y: ci_invariants(p.w + 1, p.m + 1, f)?.genus,
        deg_c_prime,
        p_c_prime,
        components,
        deg_c_double_prime: deg_cc,
        p_c_double_prime: p_cc,
        deg_r_c_double_prime: deg_r_cc,
        residual_sections: residual_h0_bound(&p, 0)?,
        genus_cross_check,
        agrees: genus_cross_check == g,
    };
    Ok(Example1Report { params: p, applicable: true, reason: None, max_genus: g, chain: Some(chain) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Example2Variant {
    /// `v = n - 3`, `s = (n - 2)(w + 1)`.
    VnMinus3,
    /// `v = n - 4`, `s = (n - 2) w + n - 3`.
    VnMinus4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example2Report {
    pub variant: Example2Variant,
    pub deg_d: i64,
    pub surface_class: DivisorClass,
    pub deg_c_prime: i64,
    /// `C'` for `v = n - 3`, `C'' = C' ∪ C_1` for `v = n - 4`.
    pub linked_degree: i64,
    pub linked_genus: i64,
    pub degree_identity: bool,
    pub genus_cross_check: i64,
    pub max_genus: i64,
    pub agrees: bool,
}

/// Explicit maximal-genus construction on a smooth 3-fold for `v ∈ {n-3, n-4}`.
///
/// `forced` pins the variant; a mismatch with the actual `v` is rejected.
pub fn example2_construction(d: i64, n: i64, s: i64, forced: Option<Example2Variant>) -> Result<Example2Report> {
    let p = compute_parameters(d, n, s)?;
    let variant = if p.v == p.n - 3 {
        Example2Variant::VnMinus3
    } else if p.v == p.n - 4 {
        Example2Variant::VnMinus4
    } else {
        return Err(Error::UnmodeledVariant(format!("v = {} (n = {}) is neither n - 3 nor n - 4", p.v, p.n)));
    };
    if let Some(want) = forced {
        if want != variant {
            return Err(Error::UnmodeledVariant(format!("requested {want:?} but v = {} gives {variant:?}", p.v)));
        }
    }
    in_example1_range(&p).map_err(Error::Domain)?;

    let (w, m, eps, nn, ss) = (p.w, p.m, p.epsilon, p.n, p.s);
    let (deg_d, surface_class) = match variant {
        Example2Variant::VnMinus3 => (eps + 1 - (nn - 3) * (w + 1), DivisorClass::Free { a: w + 1, b: 0 }),
        Example2Variant::VnMinus4 => (eps + 2 - (nn - 3) * (w + 1), DivisorClass::Free { a: w + 1, b: -1 }),
    };
    if deg_d < 0 || deg_d > w {
        return Err(Error::Invariant(format!("deg D = {deg_d} outside [0, w = {w}]")));
    }
    let deg_c_prime = w + 1 - deg_d;

    let (linked_degree, linked_genus, degree_identity) = match variant {
        Example2Variant::VnMinus3 => {
            // Clebsch
            let g = ((nn - 2) * w + nn - 4 - eps) * ((nn - 2) * w + nn - 5 - eps) / 2;
            (deg_c_prime, g, p.d == ss * (m + 1) - ss + eps + 1)
        }
        Example2Variant::VnMinus4 => {
            // Noether, for C' ∪ C_1 with C_1 a plane curve of degree m + 1
            let g = ((nn - 2) * w + nn - 5 - eps) * ((nn - 2) * w + nn - 6 - eps) / 2 + m * (m - 1) / 2 - 1;
            (deg_c_prime + m + 1, g, p.d == ss * (m + 1) - deg_c_prime)
        }
    };

    let genus_cross_check = genus_through_link(&p, linked_degree, linked_genus, 0)?;
    let g = max_genus(&p)?;
    Ok(Example2Report {
        variant,
        deg_d,
        surface_class,
        deg_c_prime,
        linked_degree,
        linked_genus,
        degree_identity,
        genus_cross_check,
        max_genus: g,
        agrees: genus_cross_check == g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linked_genus_examples() {
        assert_eq!(linked_genus(550, 562, 11), 0);
        assert_eq!(linked_genus(0, 562, 1111), 550);
        assert_eq!(linked_genus(0, 1, 0), 0);
    }

    #[test]
    fn linked_genus_scroll_examples() {
        let base = |p1, deg2, deg_r2| LinkageData { a: 3, b: 11, n: 5, deg1: None, deg2, deg_r1: None, deg_r2, p1, p_y: 562 };
        assert_eq!(linked_genus_scroll(&base(550, 1, 0), 3).unwrap(), 0);
        assert_eq!(linked_genus_scroll(&base(0, 98, 33), 3).unwrap(), 550);
        assert_eq!(linked_genus_scroll(&base(45, 85, 33), 3).unwrap(), 452);
    }

    #[test]
    fn linked_genus_scroll_checks_conservation() {
        let mut data = LinkageData::complete(3, 11, 5, 98, 33, 0).unwrap();
        assert_eq!(data.deg1, Some(1));
        data.deg1 = Some(2);
        assert!(matches!(linked_genus_scroll(&data, 3), Err(Error::Invariant(_))));
        let data = LinkageData::complete(3, 11, 5, 98, 33, 0).unwrap();
        assert!(matches!(linked_genus_scroll(&data, 4), Err(Error::Invariant(_))));
    }

    #[test]
    fn duality_rhs_examples() {
        assert_eq!(duality_rhs(7, |_| 4, 4, 2, 1).unwrap(), 3);
        assert_eq!(duality_rhs(8, |k| if k == 2 { 7 } else { 8 }, 4, 2, 0).unwrap(), 1);
        assert_eq!(duality_rhs(0, |_| 0, 4, 2, 0).unwrap(), 0);
        assert_eq!(duality_rhs(3, |_| 5, 4, 2, 0), Err(Error::NegativeDuality(-2)));
    }

    #[test]
    fn example1_reports() {
        let r = classify_example1(98, 5, 9).unwrap();
        assert!(r.applicable);
        let c = r.chain.unwrap();
        assert_eq!((c.deg_c_prime, c.p_c_prime, c.genus_cross_check), (1, 0, 550));
        assert_eq!(c.components, LinkedComponents::PlaneOnly);
        assert_eq!(c.residual_sections, 1);
        assert!(c.agrees);

        let c = classify_example1(96, 5, 9).unwrap().chain.unwrap();
        assert_eq!((c.deg_c_prime, c.p_c_prime, c.genus_cross_check), (3, 1, 529));

        let r = classify_example1(92, 5, 9).unwrap();
        assert!(!r.applicable && r.chain.is_none());
    }

    #[test]
    fn example1_v_n_minus_4_uses_plane_curves() {
        let c = classify_example1(85, 5, 8).unwrap().chain.unwrap();
        assert_eq!(c.components, LinkedComponents::PlaneCurves { count: 1, degree: 11 });
        assert_eq!((c.deg_c_double_prime, c.p_c_double_prime), (14, 45));
        assert_eq!(c.genus_cross_check, 452);
    }

    #[test]
    fn example2_reports() {
        let r = example2_construction(98, 5, 9, None).unwrap();
        assert_eq!(r.variant, Example2Variant::VnMinus3);
        assert_eq!((r.deg_d, r.deg_c_prime, r.genus_cross_check), (2, 1, 550));
        assert!(r.degree_identity && r.agrees);

        let r = example2_construction(85, 5, 8, Some(Example2Variant::VnMinus4)).unwrap();
        assert_eq!((r.deg_d, r.deg_c_prime, r.linked_genus), (0, 3, 45));
        assert_eq!(r.surface_class, DivisorClass::Free { a: 3, b: -1 });
        assert_eq!(r.genus_cross_check, 452);
        assert!(r.degree_identity && r.agrees);

        assert!(matches!(
            example2_construction(98, 5, 9, Some(Example2Variant::VnMinus4)),
            Err(Error::UnmodeledVariant(_))
        ));
        // s = 10, n = 5: v = 0
        assert!(matches!(example2_construction(105, 5, 10, None), Err(Error::UnmodeledVariant(_))));
    }
}
