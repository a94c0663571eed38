//! Homogeneous polynomials over `Q` and degreewise pieces of graded ideals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::linalg::{self, Echelon};
use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// All monomials of one degree in a fixed number of variables, in
/// descending lexicographic order, with a reverse index.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    pub num_vars: usize,
    pub degree: u32,
    pub monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl MonomialBasis {
    pub fn new(num_vars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        let mut current = vec![0u32; num_vars];
        fill(&mut monomials, &mut current, 0, degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { num_vars, degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, exponent: &[u32]) -> Option<usize> {
        self.index.get(exponent).copied()
    }

    /// Coefficient vector of a polynomial of this degree.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.len()];
        for (e, c) in &p.terms {
            let i = self.position(e).expect("polynomial degree matches basis");
            out[i] = c.clone();
        }
        out
    }

    pub fn polynomial(&self, coords: &[BigRational]) -> Polynomial {
        let terms = self
            .monomials
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial { num_vars: self.num_vars, degree: self.degree, terms }
    }
}

fn fill(out: &mut Vec<Exponent>, current: &mut Exponent, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(current.clone());
        return;
    }
    if current.is_empty() {
        if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// Number of monomials of degree `k` in `num_vars` variables.
pub fn monomial_count(num_vars: usize, k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    let k = k as u128;
    let n = num_vars as u128;
    if n == 0 {
        return usize::from(k == 0);
    }
    // C(k + n - 1, n - 1)
    let mut acc: u128 = 1;
    for j in 1..n {
        acc = acc * (k + j) / j;
    }
    acc as usize
}

/// Homogeneous polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, BigRational>,
}

impl Polynomial {
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Exponent, BigRational)>) -> Result<Self> {
        let mut map: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        let mut degree = None;
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::Shape(format!("exponent {e:?} has {} entries, expected {num_vars}", e.len())));
            }
            let d: u32 = e.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::Shape(format!("polynomial is not homogeneous: degrees {prev} and {d}")));
                }
                _ => {}
            }
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::Shape("zero polynomial".into()));
        }
        Ok(Polynomial { num_vars, degree: degree.unwrap_or(0), terms: map })
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[BigRational]) -> Result<Self> {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    pub fn constant(num_vars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; num_vars], BigRational::one());
        Polynomial { num_vars, degree: 0, terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut terms: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { num_vars: self.num_vars, degree: self.degree + other.degree, terms }
    }

    /// Coefficients of `x^mono · self` in the basis of its degree.
    pub fn shifted_coordinates(&self, mono: &[u32], basis: &MonomialBasis) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); basis.len()];
        let mut e = vec![0u32; self.num_vars];
        for (te, c) in &self.terms {
            for (slot, (a, b)) in e.iter_mut().zip(te.iter().zip(mono)) {
                *slot = a + b;
            }
            out[basis.position(&e).expect("shifted monomial in basis")] = c.clone();
        }
        out
    }

    /// The same form scaled to coprime integer coefficients.
    pub fn primitive(&self) -> Polynomial {
        let coeffs: Vec<BigRational> = self.terms.values().cloned().collect();
        let scaled = linalg::integerize(&coeffs);
        let terms = self.terms.keys().cloned().zip(scaled.into_iter().map(BigRational::from_integer)).collect();
        Polynomial { num_vars: self.num_vars, degree: self.degree, terms }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.terms.iter().map(|(e, c)| c * monomial_value(e, point)).sum()
    }
}

pub fn monomial_value(e: &[u32], point: &[BigRational]) -> BigRational {
    let mut v = BigRational::one();
    for (x, &k) in point.iter().zip(e) {
        for _ in 0..k {
            v *= x;
        }
    }
    v
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponent: Exponent,
    coefficient: String,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    num_vars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialRepr {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr { exponent: e.clone(), coefficient: format_rational(c) })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolynomialRepr::deserialize(deserializer)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| parse_rational(&t.coefficient).map(|c| (t.exponent, c)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Polynomial::from_terms(repr.num_vars, terms).map_err(D::Error::custom)
    }
}

/// Ideal given by homogeneous generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedIdeal {
    num_vars: usize,
    generators: Vec<Polynomial>,
}

impl GradedIdeal {
    pub fn new(num_vars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.num_vars != num_vars) {
            return Err(Error::Shape(format!("generator in {} variables, ideal in {num_vars}", g.num_vars)));
        }
        Ok(GradedIdeal { num_vars, generators })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut generators = self.generators.clone();
        generators.extend(extra);
        GradedIdeal::new(self.num_vars, generators)
    }

    /// Rows spanning the degree-`k` piece.
    fn piece_rows(&self, basis: &MonomialBasis) -> Vec<Vec<BigRational>> {
        let k = basis.degree;
        let mut rows = Vec::new();
        for g in &self.generators {
            if g.degree > k {
                continue;
            }
            for mono in MonomialBasis::new(self.num_vars, k - g.degree).monomials {
                rows.push(g.shifted_coordinates(&mono, basis));
            }
        }
        rows
    }
}

/// Dimension of `I_k`, the span of all degree-`k` multiples of generators.
pub fn ideal_graded_dimension(ideal: &GradedIdeal, k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    let basis = MonomialBasis::new(ideal.num_vars, k as u32);
    linalg::rank(&ideal.piece_rows(&basis), basis.len())
}

/// One graded piece in reduced echelon form.
#[derive(Debug)]
pub struct IdealPiece {
    pub basis: MonomialBasis,
    pub echelon: Echelon,
}

impl IdealPiece {
    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }
}

/// Graded ideal that remembers the pieces it has reduced.
#[derive(Debug)]
pub struct CachedIdeal {
    ideal: GradedIdeal,
    pieces: Mutex<BTreeMap<u32, Arc<IdealPiece>>>,
    ranks: Mutex<BTreeMap<u32, usize>>,
}

impl CachedIdeal {
    pub fn new(ideal: GradedIdeal) -> Self {
        CachedIdeal { ideal, pieces: Mutex::new(BTreeMap::new()), ranks: Mutex::new(BTreeMap::new()) }
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    pub fn piece(&self, k: u32) -> Arc<IdealPiece> {
        if let Some(p) = self.pieces.lock().expect("piece cache poisoned").get(&k) {
            return Arc::clone(p);
        }
        let basis = MonomialBasis::new(self.ideal.num_vars, k);
        let echelon = Echelon::new(&self.ideal.piece_rows(&basis), basis.len());
        let piece = Arc::new(IdealPiece { basis, echelon });
        self.pieces.lock().expect("piece cache poisoned").entry(k).or_insert(piece).clone()
    }

    /// `dim I_k`. Uses an already reduced piece when there is one, and a
    /// rank-only elimination otherwise.
    pub fn dimension(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        let k = k as u32;
        if let Some(p) = self.pieces.lock().expect("piece cache poisoned").get(&k) {
            return p.dimension();
        }
        if let Some(&r) = self.ranks.lock().expect("rank cache poisoned").get(&k) {
            return r;
        }
        let basis = MonomialBasis::new(self.ideal.num_vars, k);
        let r = linalg::rank(&self.ideal.piece_rows(&basis), basis.len());
        self.ranks.lock().expect("rank cache poisoned").insert(k, r);
        r
    }
}

/// Degree-`k` piece of `I : J`, as a basis of polynomials.
#[derive(Debug, Clone)]
pub struct ColonPiece {
    pub degree: i64,
    pub basis: Vec<Polynomial>,
}

impl ColonPiece {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// `{f ∈ R_k : f·g ∈ I_{k + deg g} for every generator g of J}`.
pub fn colon_graded(iz: &CachedIdeal, j: &GradedIdeal, k: i64) -> Result<ColonPiece> {
    let nv = iz.ideal.num_vars;
    if j.num_vars != nv {
        return Err(Error::Shape(format!("colon of ideals in {nv} and {} variables", j.num_vars)));
    }
    if k < 0 {
        return Ok(ColonPiece { degree: k, basis: Vec::new() });
    }
    let basis_k = MonomialBasis::new(nv, k as u32);
    let mut constraints: Vec<Vec<BigRational>> = Vec::new();
    for g in &j.generators {
        let piece = iz.piece(k as u32 + g.degree);
        let free = piece.echelon.free_columns();
        // residue[μ][q]: coefficient at free column q of μ·g reduced mod I.
        let residues: Vec<Vec<BigRational>> = basis_k
            .monomials
            .iter()
            .map(|mono| {
                let mut v = g.shifted_coordinates(mono, &piece.basis);
                piece.echelon.reduce(&mut v);
                free.iter().map(|&q| v[q].clone()).collect()
            })
            .collect();
        for q in 0..free.len() {
            let row: Vec<BigRational> = residues.iter().map(|r| r[q].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                constraints.push(row);
            }
        }
    }
    let kernel = linalg::kernel(&constraints, basis_k.len());
    Ok(ColonPiece { degree: k, basis: kernel.iter().map(|c| basis_k.polynomial(c)).collect() })
}

pub fn colon_graded_dimension(iz: &CachedIdeal, j: &GradedIdeal, k: i64) -> Result<usize> {
    colon_graded(iz, j, k).map(|p| p.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::rational::int;

    pub(crate) fn poly(nv: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(nv, terms.iter().map(|(e, c)| (e.to_vec(), int(*c)))).unwrap()
    }

    fn quadric() -> Polynomial {
        poly(4, &[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)])
    }

    #[test]
    fn monomial_enumeration() {
        let b = MonomialBasis::new(4, 2);
        assert_eq!(b.len(), 10);
        assert_eq!(b.monomials[0], vec![2, 0, 0, 0]);
        assert_eq!(monomial_count(4, 2), 10);
        assert_eq!(monomial_count(5, 3), 35);
        assert_eq!(monomial_count(4, -1), 0);
        assert_eq!(MonomialBasis::new(3, 0).monomials, vec![vec![0, 0, 0]]);
        for (nv, k) in [(1, 3), (2, 4), (5, 3)] {
            assert_eq!(MonomialBasis::new(nv, k).len(), monomial_count(nv, k as i64));
        }
    }

    #[test]
    fn rejects_inhomogeneous() {
        let err = Polynomial::from_terms(2, vec![(vec![1, 0], int(1)), (vec![1, 1], int(1))]);
        assert!(matches!(err, Err(Error::Shape(_))));
        assert!(Polynomial::from_terms(2, vec![(vec![1, 0], int(0))]).is_err());
    }

    #[test]
    fn graded_dimensions() {
        let i = GradedIdeal::new(4, vec![quadric()]).unwrap();
        assert_eq!(ideal_graded_dimension(&i, 3), 4);
        assert_eq!(ideal_graded_dimension(&i, 1), 0);
        let xy = GradedIdeal::new(4, vec![poly(4, &[(&[1, 0, 0, 0], 1)]), poly(4, &[(&[0, 1, 0, 0], 1)])]).unwrap();
        assert_eq!(ideal_graded_dimension(&xy, 1), 2);
        // (x, y)_2 misses only z^2, zw, w^2
        assert_eq!(ideal_graded_dimension(&xy, 2), 7);
    }

    #[test]
    fn colon_by_variable() {
        // (x^2, xy) : (x) = (x, y)
        let i = GradedIdeal::new(3, vec![poly(3, &[(&[2, 0, 0], 1)]), poly(3, &[(&[1, 1, 0], 1)])]).unwrap();
        let j = GradedIdeal::new(3, vec![poly(3, &[(&[1, 0, 0], 1)])]).unwrap();
        let cached = CachedIdeal::new(i);
        assert_eq!(colon_graded_dimension(&cached, &j, 1).unwrap(), 2);
        assert_eq!(colon_graded_dimension(&cached, &j, 2).unwrap(), 5);
        assert_eq!(colon_graded_dimension(&cached, &j, -1).unwrap(), 0);
    }

    #[test]
    fn product_and_eval() {
        let l = Polynomial::linear(&[int(1), int(-1)]).unwrap();
        let sq = l.mul(&l);
        assert_eq!(sq.degree(), 2);
        assert_eq!(sq.eval(&[int(3), int(1)]), int(4));
        assert_eq!(sq.to_string(), "1*x0^2 + -2*x0*x1 + 1*x1^2");
    }

    #[test]
    fn polynomial_json_round_trip() {
        let p = quadric();
        let text = serde_json::to_string(&p).unwrap();
        let back: Polynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
