//! The costalk-to-stalk transition matrix of a fiber and its graded defect.
//!
//! For a fiber `Γ_x` ordered ascending by `<`:
//!
//! * `H[i][j] = b_{γ_i}(γ_j)`, upper triangular with diagonal `a(γ_i)`;
//! * `P = diag(∏_k β_k(γ_i))`;
//! * `T = (H^{-1})^T P H^{-1}`, symmetric with polynomial entries;
//! * `T̃ = T / e_x`, with `e_x` the product of the inversion set of `x`.
//!
//! `T` is obtained from `Q = (H^{-1})^T P` by solving `T H = Q` column by
//! column with exact polynomial division, so only `H^{-1}` itself passes
//! through fractions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::cohom::{a_value, b_value, p_value, Support};
use crate::error::{Error, Result};
use crate::gallery::{Gallery, Word};
use crate::poly::{FieldSpec, LaurentV, Poly, RatFn};
use crate::rootsys::WeylElement;

/// A dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The matrices attached to one fiber, computed once and shared by every
/// coefficient field.
#[derive(Debug, Clone)]
pub struct FiberPipeline {
    word: Word,
    x: WeylElement,
    fiber: Arc<Support>,
    length: usize,
    h: Matrix<Poly>,
    p: Vec<Poly>,
    h_inv: Matrix<RatFn>,
    q: Matrix<Poly>,
    transition: Matrix<Poly>,
    euler: Poly,
    divided: Matrix<Poly>,
    d_sizes: Vec<u32>,
}

impl FiberPipeline {
    pub fn new(word: &Word, x: &WeylElement) -> Result<Self> {
        let fiber = Support::fiber(word, x)?;
        let datum = word.datum();
        let n = datum.rank();
        let galleries = fiber.galleries();
        let walls = fiber.walls();
        let m = galleries.len();

        let h = Matrix::from_fn(m, m, |i, j| b_value(galleries[i], &walls[i], galleries[j], &walls[j]));
        let p: Vec<Poly> = walls.iter().map(p_value).collect();
        for i in 0..m {
            if h.get(i, i) != &a_value(&walls[i]) {
                return Err(Error::Invariant(format!("diagonal of H at {} is not a(γ)", galleries[i])));
            }
            for j in 0..i {
                if !h.get(i, j).is_zero() {
                    return Err(Error::Invariant(format!("H is not upper triangular at ({}, {})", i + 1, j + 1)));
                }
            }
        }

        let h_inv = invert_upper_triangular(&h, word)?;

        // Q = (H^{-1})^T P; its rows are the values of P·b̂_γ.
        let q_rat = Matrix::from_fn(m, m, |i, k| h_inv.get(k, i).scalar_mul_poly(&p[k]));
        let mut q = Matrix::filled(m, m, Poly::zero(n));
        for i in 0..m {
            for k in 0..m {
                let v = q_rat.get(i, k).to_poly().ok_or_else(|| {
                    Error::Invariant(format!("(H^-1)^T P has a non-polynomial entry at ({}, {})", i + 1, k + 1))
                })?;
                q.set(i, k, v);
            }
        }

        let transition = solve_right_upper(&q, &h)?;
        let euler = euler_class(word, x);
        let divided = divide_by(&transition, &euler)?;
        let d_sizes = walls.iter().map(|w| w.d_mask().count_ones()).collect();
        Ok(FiberPipeline {
            word: word.clone(),
            x: x.clone(),
            fiber,
            length: datum.length(x),
            h,
            p,
            h_inv,
            q,
            transition,
            euler,
            divided,
            d_sizes,
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn x(&self) -> &WeylElement {
        &self.x
    }

    pub fn fiber(&self) -> &Arc<Support> {
        &self.fiber
    }

    pub fn galleries(&self) -> &[Gallery] {
        self.fiber.galleries()
    }

    pub fn size(&self) -> usize {
        self.fiber.len()
    }

    /// `ℓ(x)`, used as `d_x`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn h(&self) -> &Matrix<Poly> {
        &self.h
    }

    pub fn p_diagonal(&self) -> &[Poly] {
        &self.p
    }

    pub fn h_inverse(&self) -> &Matrix<RatFn> {
        &self.h_inv
    }

    /// `(H^{-1})^T P`.
    pub fn dual_times_p(&self) -> &Matrix<Poly> {
        &self.q
    }

    pub fn transition(&self) -> &Matrix<Poly> {
        &self.transition
    }

    pub fn euler(&self) -> &Poly {
        &self.euler
    }

    pub fn divided(&self) -> &Matrix<Poly> {
        &self.divided
    }

    /// `|D(γ_i)|` along the fiber.
    pub fn d_sizes(&self) -> &[u32] {
        &self.d_sizes
    }

    /// `2(r - |D(γ_i)| - ℓ(x))`.
    pub fn source_degree(&self, i: usize) -> i64 {
        2 * (self.word.len() as i64 - self.d_sizes[i] as i64 - self.length as i64)
    }

    /// `2|D(γ_j)|`.
    pub fn target_degree(&self, j: usize) -> i64 {
        2 * self.d_sizes[j] as i64
    }

    /// `H·H^{-1} = I`, checked entrywise over fractions.
    pub fn check_inverse(&self) -> std::result::Result<(), String> {
        let m = self.size();
        let n = self.word.datum().rank();
        for i in 0..m {
            for j in i..m {
                let mut s = RatFn::zero(n);
                for k in i..=j {
                    s = &s + &self.h_inv.get(k, j).scalar_mul_poly(self.h.get(i, k));
                }
                let want = if i == j { RatFn::one(n) } else { RatFn::zero(n) };
                if s != want {
                    return Err(format!("(H·H^-1)[{}][{}] = {s}", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn check_symmetric(&self) -> std::result::Result<(), String> {
        let m = self.size();
        for i in 0..m {
            for j in 0..i {
                if self.transition.get(i, j) != self.transition.get(j, i) {
                    return Err(format!("transition matrix differs at ({}, {}) and ({}, {})", i + 1, j + 1, j + 1, i + 1));
                }
            }
        }
        Ok(())
    }

    /// Every divided entry is zero or homogeneous of degree
    /// `(d_src(i) - d_tgt(j)) / 2`.
    pub fn check_degrees(&self) -> std::result::Result<(), String> {
        let m = self.size();
        for i in 0..m {
            for j in 0..m {
                let e = self.divided.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let want = (self.source_degree(i) - self.target_degree(j)) / 2;
                match e.homogeneous_degree() {
                    Ok(d) if d as i64 == want => {}
                    Ok(d) => return Err(format!("entry ({}, {}) has degree {d}, expected {want}", i + 1, j + 1)),
                    Err(_) => return Err(format!("entry ({}, {}) is not homogeneous", i + 1, j + 1)),
                }
            }
        }
        Ok(())
    }

    /// Graded defect of `T̃` over `k`, with the multiplicities it encodes.
    pub fn defect(&self, k: FieldSpec) -> Result<DefectReport> {
        let k = FieldSpec::for_datum(k.characteristic(), self.word.datum())?;
        let m = self.size();
        let mut degrees: Vec<i64> = (0..m).map(|i| self.source_degree(i)).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut blocks = Vec::new();
        let mut defect = LaurentV::zero();
        for n in degrees {
            let src: Vec<usize> = (0..m).filter(|&i| self.source_degree(i) == n).collect();
            let tgt: Vec<usize> = (0..m).filter(|&j| self.target_degree(j) == n).collect();
            if tgt.is_empty() {
                continue;
            }
            let entries: Vec<Vec<BigInt>> = tgt
                .iter()
                .map(|&j| src.iter().map(|&i| self.divided.get(i, j).constant_term()).collect())
                .collect();
            let rank = rank_over(&entries, k);
            defect.add_term(-n, rank as i64);
            blocks.push(Block { n, rows: tgt.len(), cols: src.len(), rank, entries });
        }
        let r = self.word.len() as i64;
        let l = self.length as i64;
        let multiplicities = defect.terms().map(|(e, c)| (l - r - e, c)).collect();
        Ok(DefectReport { field: k, defect, blocks, multiplicities, length: self.length, r: self.word.len() })
    }
}

/// `∏_{α > 0, s_α x < x} α`.
pub fn euler_class(word: &Word, x: &WeylElement) -> Poly {
    let datum = word.datum();
    datum
        .inversion_set(x)
        .iter()
        .fold(Poly::one(datum.rank()), |acc, a| &acc * &Poly::linear_form(a))
}

/// Inverse of an upper triangular matrix whose diagonal entries are signed
/// products of positive roots, by back substitution.
pub fn invert_upper_triangular(h: &Matrix<Poly>, word: &Word) -> Result<Matrix<RatFn>> {
    let m = h.rows();
    let datum = word.datum();
    let n = datum.rank();
    let mut inv_diag = Vec::with_capacity(m);
    for i in 0..m {
        let (sign, factors) = h.get(i, i).factor_root_product(datum).ok_or_else(|| {
            Error::Invariant(format!("diagonal entry {} is not a product of roots", h.get(i, i)))
        })?;
        inv_diag.push(RatFn::inverse_of_root_product(n, sign, factors));
    }
    let mut x = Matrix::filled(m, m, RatFn::zero(n));
    for j in 0..m {
        x.set(j, j, inv_diag[j].clone());
        for i in (0..j).rev() {
            let mut s = RatFn::zero(n);
            for k in i + 1..=j {
                let hik = h.get(i, k);
                if hik.is_zero() || x.get(k, j).is_zero() {
                    continue;
                }
                s = &s + &x.get(k, j).scalar_mul_poly(hik);
            }
            x.set(i, j, -&(&s * &inv_diag[i]));
        }
    }
    Ok(x)
}

/// Solves `T H = Q` for `T` with `H` upper triangular, dividing exactly.
fn solve_right_upper(q: &Matrix<Poly>, h: &Matrix<Poly>) -> Result<Matrix<Poly>> {
    let m = h.rows();
    let mut t = q.clone();
    for i in 0..q.rows() {
        for j in 0..m {
            let mut acc = q.get(i, j).clone();
            for k in 0..j {
                let hkj = h.get(k, j);
                if !hkj.is_zero() && !t.get(i, k).is_zero() {
                    acc = &acc - &(t.get(i, k) * hkj);
                }
            }
            let v = acc.exact_divide(h.get(j, j)).map_err(|_| {
                Error::Invariant(format!("transition entry ({}, {}) is not a polynomial", i + 1, j + 1))
            })?;
            t.set(i, j, v);
        }
    }
    Ok(t)
}

fn divide_by(t: &Matrix<Poly>, e: &Poly) -> Result<Matrix<Poly>> {
    let mut out = t.clone();
    for i in 0..t.rows() {
        for j in 0..t.cols() {
            let v = t.get(i, j).exact_divide(e).map_err(|_| {
                Error::Invariant(format!("transition entry ({}, {}) is not divisible by the Euler class", i + 1, j + 1))
            })?;
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Rank of an integer matrix over `Q` or `F_p`.
pub fn rank_over(a: &[Vec<BigInt>], k: FieldSpec) -> usize {
    match k.characteristic() {
        0 => rank_bareiss(a),
        p => rank_mod_p(a, p),
    }
}

/// Fraction-free elimination over the integers.
fn rank_bareiss(a: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = &m[rank][c] * &m[r][cc] - &m[r][c] * &m[rank][cc];
                m[r][cc] = v.div_floor(&prev);
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn rank_mod_p(a: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> =
        a.iter().map(|r| r.iter().map(|v| v.mod_floor(&pb).to_u64().unwrap()).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let pw = p as u128;
    let inv = |v: u64| -> u64 {
        // Fermat inverse.
        let (mut base, mut e, mut acc) = (v as u128, pw - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % pw;
            }
            base = base * base % pw;
            e >>= 1;
        }
        acc as u64
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let iv = inv(m[rank][c]) as u128;
        for r in rank + 1..rows {
            if m[r][c] == 0 {
                continue;
            }
            let f = m[r][c] as u128 * iv % pw;
            for cc in c..cols {
                let sub = f * m[rank][cc] as u128 % pw;
                m[r][cc] = ((m[r][cc] as u128 + pw - sub) % pw) as u64;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A scalar block `A^(n)`: rows are targets, columns sources, of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub n: i64,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    #[serde(skip)]
    pub entries: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub field: FieldSpec,
    #[serde(serialize_with = "laurent_pairs")]
    pub defect: LaurentV,
    pub blocks: Vec<Block>,
    pub multiplicities: BTreeMap<i64, i64>,
    pub length: usize,
    pub r: usize,
}

fn laurent_pairs<S: Serializer>(l: &LaurentV, s: S) -> std::result::Result<S::Ok, S::Error> {
    let terms: Vec<(i64, i64)> = l.terms().collect();
    let mut seq = s.serialize_seq(Some(terms.len()))?;
    for t in terms {
        seq.serialize_element(&[t.0, t.1])?;
    }
    seq.end()
}

impl DefectReport {
    /// `Σ_d m(x,d) v^{d_x - d - r}`.
    pub fn defect_from_multiplicities(&self) -> LaurentV {
        let mut l = LaurentV::zero();
        for (&d, &c) in &self.multiplicities {
            l.add_term(self.length as i64 - d - self.r as i64, c);
        }
        l
    }

    /// Defect and multiplicity bookkeeping plus nonnegativity and block bounds.
    pub fn check_bookkeeping(&self) -> std::result::Result<(), String> {
        if self.defect_from_multiplicities() != self.defect {
            return Err(format!("multiplicities do not reproduce the defect {}", self.defect));
        }
        for b in &self.blocks {
            if b.rank > b.rows.min(b.cols) {
                return Err(format!("block {} has rank {} above its size {}x{}", b.n, b.rank, b.rows, b.cols));
            }
        }
        if self.defect.terms().any(|(_, c)| c < 0) {
            return Err("negative defect coefficient".into());
        }
        Ok(())
    }
}

impl fmt::Display for DefectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}: defect {}", self.field, self.defect)?;
        for b in &self.blocks {
            writeln!(f, "  block n={:<4} {}x{} rank {}", b.n, b.rows, b.cols, b.rank)?;
        }
        if self.multiplicities.is_empty() {
            writeln!(f, "  no multiplicities")?;
        }
        for (d, m) in &self.multiplicities {
            writeln!(f, "  m(x,{d}) = {m}")?;
        }
        Ok(())
    }
}

/// Defects at characteristic 0 and at each prime, with the primes where they
/// differ.
#[derive(Debug, Clone, Serialize)]
pub struct TorsionReport {
    pub rational: DefectReport,
    pub per_prime: Vec<DefectReport>,
    pub torsion_primes: Vec<u64>,
}

pub fn torsion_scan(pipeline: &FiberPipeline, primes: &[u64]) -> Result<TorsionReport> {
    let rational = pipeline.defect(FieldSpec::rationals())?;
    let mut per_prime = Vec::new();
    let mut torsion_primes = Vec::new();
    for &p in primes {
        let k = FieldSpec::new(p)?;
        if p == 0 {
            return Err(Error::BadCharacteristic(0));
        }
        let rep = pipeline.defect(k)?;
        if rep.defect != rational.defect {
            torsion_primes.push(p);
        }
        per_prime.push(rep);
    }
    Ok(TorsionReport { rational, per_prime, torsion_primes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanType, RootDatum};

    fn a1() -> Word {
        Word::new(Arc::new(RootDatum::simple_type(CartanType::A, 1).unwrap()), vec![1, 1]).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, 1).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix<Poly> {
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| p(rows[i][j]))
    }

    #[test]
    fn sl2_at_s1() {
        let w = a1();
        let s1 = w.datum().simple_reflection(1).unwrap();
        let pl = FiberPipeline::new(&w, &s1).unwrap();
        assert_eq!(pl.h(), &mat(&[&["1", "1"], &["0", "a1"]]));
        assert_eq!(pl.p_diagonal(), &[p("-a1^2"), p("a1^2")]);
        assert_eq!(pl.transition(), &mat(&[&["-a1^2", "a1"], &["a1", "0"]]));
        assert_eq!(pl.euler(), &p("a1"));
        assert_eq!(pl.divided(), &mat(&[&["-a1", "1"], &["1", "0"]]));
        let inv = pl.h_inverse();
        assert_eq!(inv.get(0, 1).to_string(), "-1/(a1)");
        assert!(pl.check_inverse().is_ok() && pl.check_symmetric().is_ok() && pl.check_degrees().is_ok());
        for c in [0, 2, 3, 5] {
            let rep = pl.defect(FieldSpec::new(c).unwrap()).unwrap();
            assert_eq!(rep.defect.to_string(), "1+v^-2");
            assert_eq!(rep.multiplicities, BTreeMap::from([(-1, 1), (1, 1)]));
            assert!(rep.check_bookkeeping().is_ok());
        }
        assert!(torsion_scan(&pl, &[2, 3]).unwrap().torsion_primes.is_empty());
    }

    #[test]
    fn sl2_at_identity() {
        let w = a1();
        let e = w.datum().identity();
        let pl = FiberPipeline::new(&w, &e).unwrap();
        assert_eq!(pl.h(), &mat(&[&["1", "1"], &["0", "a1"]]));
        assert_eq!(pl.p_diagonal(), &[p("a1^2"), p("-a1^2")]);
        assert_eq!(pl.transition(), &mat(&[&["a1^2", "-a1"], &["-a1", "0"]]));
        assert!(pl.euler().is_one());
        let rep = pl.defect(FieldSpec::rationals()).unwrap();
        assert!(rep.defect.is_zero() && rep.multiplicities.is_empty());
    }

    #[test]
    fn ranks() {
        let b = |v: &[&[i64]]| -> Vec<Vec<BigInt>> {
            v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        let a = b(&[&[2, 4], &[1, 2]]);
        assert_eq!(rank_over(&a, FieldSpec::rationals()), 1);
        let a = b(&[&[2, 0], &[0, 3]]);
        assert_eq!(rank_over(&a, FieldSpec::rationals()), 2);
        assert_eq!(rank_over(&a, FieldSpec::new(2).unwrap()), 1);
        assert_eq!(rank_over(&a, FieldSpec::new(3).unwrap()), 1);
        assert_eq!(rank_over(&a, FieldSpec::new(5).unwrap()), 2);
        assert_eq!(rank_over(&b(&[&[]]), FieldSpec::rationals()), 0);
        let a = b(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(rank_over(&a, FieldSpec::rationals()), 3);
        let a = b(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank_over(&a, FieldSpec::rationals()), 2);
        assert_eq!(rank_over(&a, FieldSpec::new(3).unwrap()), 1);
        assert_eq!(rank_over(&a, FieldSpec::new(5).unwrap()), 2);
    }

    #[test]
    fn char2_guard() {
        let c2 = Arc::new(RootDatum::simple_type(CartanType::C, 2).unwrap());
        let w = Word::new(c2, vec![1, 2]).unwrap();
        let pl = FiberPipeline::new(&w, &w.datum().identity()).unwrap();
        assert_eq!(pl.defect(FieldSpec::new(2).unwrap()), Err(Error::Char2Forbidden));
        assert!(pl.defect(FieldSpec::new(3).unwrap()).is_ok());
    }
}
