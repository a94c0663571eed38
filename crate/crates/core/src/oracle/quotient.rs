//! Forms on a surface through its monomial parametrization.
//!
//! Each surface is the closure of the image of a map sending every
//! coordinate to a monomial in four parameters:
//!
//! ```text
//! quadric        (a0 b0, a0 b1, a1 b0, a1 b1)
//! cone           (l s^2, l s t, l t^2, m)
//! cubic scroll   (u s, u t, v s^2, v s t, v t^2)
//! ```
//!
//! A form vanishes on `W` exactly when its image vanishes, so `(R/I_W)_t` is
//! spanned by the distinct image monomials of degree `t` and any ideal
//! `I ⊇ I_W` becomes a small integer matrix over them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::linalg::{certified_kernel, integer_kernel, integerize};
use super::poly::{monomial_count, GradedIdeal, MonomialBasis, Polynomial};
use super::surface::Surface;
use crate::error::{Error, Result};

type Image = [u32; 4];

fn coordinate_images(surface: Surface) -> Vec<Image> {
    match surface {
        Surface::Quadric => vec![[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]],
        Surface::Cone => vec![[1, 0, 2, 0], [1, 0, 1, 1], [1, 0, 0, 2], [0, 1, 0, 0]],
        Surface::CubicScroll => vec![[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 2, 0], [0, 1, 1, 1], [0, 1, 0, 2]],
    }
}

fn add(a: &Image, b: &Image) -> Image {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Distinct image monomials of one degree, each with one preimage.
#[derive(Debug)]
struct ImageBasis {
    monomials: Vec<Image>,
    index: HashMap<Image, usize>,
    preimages: Vec<Vec<u32>>,
}

impl ImageBasis {
    fn len(&self) -> usize {
        self.monomials.len()
    }
}

/// Image of a form, cleared to primitive integer coefficients.
#[derive(Debug, Clone)]
struct ImageForm {
    degree: u32,
    terms: Vec<(Image, BigInt)>,
}

#[derive(Debug)]
struct Piece {
    rank: usize,
    /// Integer vectors orthogonal to the image of `I_t`.
    annihilator: Vec<Vec<BigInt>>,
}

/// Coordinate ring of a surface with a cache of image bases.
#[derive(Debug)]
pub struct SurfaceRing {
    surface: Surface,
    images: Vec<Image>,
    bases: Mutex<BTreeMap<u32, Arc<ImageBasis>>>,
}

impl SurfaceRing {
    pub fn new(surface: Surface) -> Self {
        SurfaceRing { surface, images: coordinate_images(surface), bases: Mutex::new(BTreeMap::new()) }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    fn image(&self, exponent: &[u32]) -> Image {
        let mut out = [0; 4];
        for (e, img) in exponent.iter().zip(&self.images) {
            for (o, x) in out.iter_mut().zip(img) {
                *o += e * x;
            }
        }
        out
    }

    fn basis(&self, t: u32) -> Arc<ImageBasis> {
        if let Some(b) = self.bases.lock().expect("basis cache poisoned").get(&t) {
            return Arc::clone(b);
        }
        let mut seen: BTreeMap<Image, Vec<u32>> = BTreeMap::new();
        for mono in MonomialBasis::new(self.images.len(), t).monomials {
            seen.entry(self.image(&mono)).or_insert(mono);
        }
        let (monomials, preimages): (Vec<Image>, Vec<Vec<u32>>) = seen.into_iter().unzip();
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let basis = Arc::new(ImageBasis { monomials, index, preimages });
        self.bases.lock().expect("basis cache poisoned").entry(t).or_insert(basis).clone()
    }

    /// `h_W(t) = dim (R/I_W)_t`.
    pub fn hilbert(&self, t: i64) -> usize {
        if t < 0 {
            0
        } else {
            self.basis(t as u32).len()
        }
    }

    /// `dim (I_W)_t`.
    pub fn ideal_dimension(&self, t: i64) -> usize {
        monomial_count(self.images.len(), t) - self.hilbert(t)
    }

    fn image_form(&self, f: &Polynomial) -> Result<ImageForm> {
        if f.num_vars() != self.images.len() {
            return Err(Error::Shape(format!(
                "form in {} variables on a surface in {}",
                f.num_vars(),
                self.images.len()
            )));
        }
        let mut acc: BTreeMap<Image, BigRational> = BTreeMap::new();
        for (e, c) in f.terms() {
            *acc.entry(self.image(e)).or_insert_with(BigRational::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        let coeffs: Vec<BigRational> = acc.values().cloned().collect();
        let terms = acc.keys().copied().zip(integerize(&coeffs)).collect();
        Ok(ImageForm { degree: f.degree(), terms })
    }
}

/// `I_W + (F_1, ..., F_r)` handled in the coordinate ring of `W`.
#[derive(Debug)]
pub struct SurfaceIdeal {
    ring: SurfaceRing,
    forms: Vec<ImageForm>,
    pieces: Mutex<BTreeMap<u32, Arc<Piece>>>,
}

/// Degree-`k` piece of `(I : J)`, split as `(I_W)_k` plus lifted residues.
#[derive(Debug, Clone)]
pub struct QuotientColon {
    pub degree: i64,
    pub surface_part: usize,
    /// Forms whose classes modulo `I_W` span the colon modulo `I_W`.
    pub residues: Vec<Polynomial>,
}

impl QuotientColon {
    pub fn dimension(&self) -> usize {
        self.surface_part + self.residues.len()
    }
}

impl SurfaceIdeal {
    pub fn new(surface: Surface, forms: &[Polynomial]) -> Result<Self> {
        let ring = SurfaceRing::new(surface);
        let forms = forms.iter().map(|f| ring.image_form(f)).collect::<Result<Vec<_>>>()?;
        Ok(SurfaceIdeal { ring, forms, pieces: Mutex::new(BTreeMap::new()) })
    }

    pub fn ring(&self) -> &SurfaceRing {
        &self.ring
    }

    fn piece(&self, t: u32) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().expect("piece cache poisoned").get(&t) {
            return Arc::clone(p);
        }
        let target = self.ring.basis(t);
        let mut rows = Vec::new();
        for f in self.forms.iter().filter(|f| f.degree <= t) {
            for m in &self.ring.basis(t - f.degree).monomials {
                let mut row = vec![BigInt::zero(); target.len()];
                for (e, c) in &f.terms {
                    row[target.index[&add(e, m)]] = c.clone();
                }
                rows.push(row);
            }
        }
        let annihilator = integer_kernel(rows, target.len());
        let piece = Arc::new(Piece { rank: target.len() - annihilator.len(), annihilator });
        self.pieces.lock().expect("piece cache poisoned").entry(t).or_insert(piece).clone()
    }

    /// Hilbert function of `R/I`.
    pub fn hilbert(&self, t: i64) -> usize {
        if t < 0 {
            return 0;
        }
        self.ring.hilbert(t) - self.piece(t as u32).rank
    }

    /// `dim I_t`.
    pub fn dimension(&self, t: i64) -> usize {
        monomial_count(self.ring.images.len(), t) - self.hilbert(t)
    }

    /// `{f ∈ R_k : f g ∈ I for every generator g of J}`.
    ///
    /// A class `f` modulo `I_W` qualifies when the image of `f g` is
    /// orthogonal to every annihilator vector of `I_{k + deg g}`.
    pub fn colon(&self, j: &GradedIdeal, k: i64) -> Result<QuotientColon> {
        if j.num_vars() != self.ring.images.len() {
            return Err(Error::Shape(format!(
                "colon of ideals in {} and {} variables",
                self.ring.images.len(),
                j.num_vars()
            )));
        }
        if k < 0 {
            return Ok(QuotientColon { degree: k, surface_part: 0, residues: Vec::new() });
        }
        let k = k as u32;
        let source = self.ring.basis(k);
        let n = source.len();
        let mut constraints: Vec<Vec<BigInt>> = Vec::new();
        for g in j.generators() {
            let g = self.ring.image_form(g)?;
            let target = self.ring.basis(k + g.degree);
            let piece = self.piece(k + g.degree);
            for x in &piece.annihilator {
                let row: Vec<BigInt> = source
                    .monomials
                    .iter()
                    .map(|m| g.terms.iter().map(|(e, c)| c * &x[target.index[&add(e, m)]]).sum())
                    .collect();
                if row.iter().any(|v| !v.is_zero()) {
                    constraints.push(row);
                }
            }
        }
        let residues = certified_kernel(&constraints, n)
            .into_iter()
            .map(|c| {
                let terms = c
                    .into_iter()
                    .zip(&source.preimages)
                    .filter(|(v, _)| !v.is_zero())
                    .map(|(v, e)| (e.clone(), BigRational::from_integer(v)));
                Polynomial::from_terms(self.ring.images.len(), terms.collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientColon { degree: k as i64, surface_part: self.ring.ideal_dimension(k as i64), residues })
    }
}
