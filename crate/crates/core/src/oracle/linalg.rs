//! Exact linear algebra over `Q`.
//!
//! Rows are cleared of denominators and reduced with fraction-free
//! (Bareiss) elimination, so every intermediate entry is a minor of the
//! integer input and each division is exact. The reduced row echelon form
//! and kernels are recovered from that echelon form with rational
//! back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scales a rational row to a primitive integer row spanning the same line.
pub fn integerize(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    primitive(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
}

/// Forward fraction-free elimination.
///
/// Returns the nonzero echelon rows and their pivot columns.
pub fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // Prefer the smallest nonzero pivot to slow entry growth.
        let Some(p) = (r..nrows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].abs()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            if lead.is_zero() {
                // Still needs scaling by pivot / prev to stay a minor.
                for x in row[c + 1..ncols].iter_mut().filter(|x| !x.is_zero()) {
                    *x = (&*x * pivot) / &prev;
                }
                continue;
            }
            for j in c + 1..ncols {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| integerize(r)).collect();
    bareiss_echelon(ints, ncols).1.len()
}

/// Primitive integer basis of `{x : A x = 0}`, one vector per free column.
///
/// Back-substitutes through the fraction-free echelon form, rescaling the
/// partial solution whenever a pivot does not divide the running sum, so no
/// rational arithmetic is needed.
pub fn integer_kernel(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let (ech, pivots) = bareiss_echelon(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![BigInt::zero(); ncols];
            x[f] = BigInt::one();
            for (row, &pc) in ech.iter().zip(&pivots).rev() {
                let sum: BigInt = (pc + 1..ncols)
                    .filter(|&j| !x[j].is_zero() && !row[j].is_zero())
                    .map(|j| &row[j] * &x[j])
                    .sum();
                if sum.is_zero() {
                    continue;
                }
                let g = sum.gcd(&row[pc]);
                let scale = &row[pc] / &g;
                if !scale.is_one() {
                    for v in x.iter_mut().filter(|v| !v.is_zero()) {
                        *v *= &scale;
                    }
                }
                x[pc] = -(sum / g);
            }
            primitive(x)
        })
        .collect()
}

/// Primes for choosing candidate pivot rows.
const PRIMES: [u64; 2] = [(1 << 61) - 1, 1_000_000_007];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, p - 2, 1);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Indices of rows that stay independent modulo `p`, in input order.
fn independent_rows_mod(rows: &[Vec<BigInt>], ncols: usize, p: u64) -> Vec<usize> {
    let modulus = BigInt::from(p);
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if basis.len() == ncols {
            break;
        }
        let mut v: Vec<u64> = row.iter().map(|x| x.mod_floor(&modulus).try_into().expect("residue below p")).collect();
        for (pc, b) in &basis {
            let f = v[*pc];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + p - mul_mod(f, *y, p)) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[pc], p);
            for x in &mut v {
                *x = mul_mod(*x, inv, p);
            }
            basis.push((pc, v));
            chosen.push(i);
        }
    }
    chosen
}

/// Exact kernel of a tall integer system.
///
/// Rows independent modulo a prime are independent over `Q`, so their exact
/// kernel contains the true one; it is accepted once every vector is checked
/// against every row. Otherwise the whole system is eliminated.
pub fn certified_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    for p in PRIMES {
        let chosen = independent_rows_mod(rows, ncols, p);
        let ker = integer_kernel(chosen.iter().map(|&i| rows[i].clone()).collect(), ncols);
        let annihilates = |x: &Vec<BigInt>| {
            rows.iter().all(|r| r.iter().zip(x).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum::<BigInt>().is_zero())
        };
        if ker.iter().all(annihilates) {
            return ker;
        }
    }
    integer_kernel(rows.to_vec(), ncols)
}

fn primitive(mut x: Vec<BigInt>) -> Vec<BigInt> {
    let content = x.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for v in &mut x {
            *v /= &content;
        }
    }
    x
}

/// Reduced row echelon form of a row space.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub ncols: usize,
    /// One row per pivot, with 1 at the pivot and 0 in every other pivot column.
    pub rows: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(rows: &[Vec<BigRational>], ncols: usize) -> Self {
        let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| integerize(r)).collect();
        let (ech, pivots) = bareiss_echelon(ints, ncols);
        let mut rows: Vec<Vec<BigRational>> =
            ech.into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
        for i in (0..rows.len()).rev() {
            let pc = pivots[i];
            let inv = rows[i][pc].recip();
            for x in rows[i].iter_mut().skip(pc) {
                *x *= &inv;
            }
            let (above, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let factor = row[pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in pc..ncols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &factor * &pivot_row[j];
                    }
                }
            }
        }
        Echelon { ncols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Subtracts the row space from `v`, leaving zeros in every pivot column.
    pub fn reduce(&self, v: &mut [BigRational]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let factor = v[pc].clone();
            for j in pc..self.ncols {
                if !row[j].is_zero() {
                    v[j] -= &factor * &row[j];
                }
            }
        }
    }

    /// Basis of `{x : A x = 0}`, each vector scaled to primitive integers.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    x[pc] = -row[f].clone();
                }
                integerize(&x).into_iter().map(BigRational::from_integer).collect()
            })
            .collect()
    }
}

/// Basis of the right kernel of `rows`.
pub fn kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    Echelon::new(rows, ncols).kernel()
}
