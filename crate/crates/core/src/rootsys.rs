//! Finite crystallographic root systems and their Weyl groups.
//!
//! Roots are integer vectors over the basis of simple roots. Simple roots are
//! numbered 1..=n following Bourbaki, one component after another. In the
//! non-simply-laced types the short simple roots are:
//!
//! * `B_n`: `a_n` is short, so `s_n(a_{n-1}) = a_{n-1} + 2*a_n`;
//! * `C_n`: `a_1..a_{n-1}` are short, so `s_{n-1}(a_n) = a_n + 2*a_{n-1}`;
//! * `F_4`: `a_3`, `a_4` are short;
//! * `G_2`: `a_1` is short, so `s_1(a_2) = a_2 + 3*a_1`.
//!
//! Bruhat comparisons are only ever needed between `w` and `w*s_i`, or between
//! `x` and `s_a*x`. Both reduce to sign tests on roots (see
//! [`WeylElement::descends_right`] and [`WeylElement::reflection_lowers`]).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    fn rank_is_valid(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 3,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            "D" | "d" => Ok(CartanType::D),
            "E" | "e" => Ok(CartanType::E),
            "F" | "f" => Ok(CartanType::F),
            "G" | "g" => Ok(CartanType::G),
            other => Err(Error::Config(format!("unknown Cartan type `{other}`"))),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// One simple component of a root datum, as written in run configurations:
/// `{"type": "A", "rank": 7}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    #[serde(rename = "type", with = "cartan_letter")]
    pub ty: CartanType,
    pub rank: usize,
}

impl Component {
    pub fn new(ty: CartanType, rank: usize) -> Self {
        Component { ty, rank }
    }
}

mod cartan_letter {
    use super::CartanType;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(ty: &CartanType, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&ty.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CartanType, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of the root lattice, written over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coords: Vec<i32>) -> Self {
        Root(coords)
    }

    /// The `i`-th simple root (1-based) in rank `n`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i - 1] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sign test for roots. The zero vector is not a root and yields an error.
    pub fn is_positive(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroRoot);
        }
        Ok(self.0.iter().all(|&c| c >= 0))
    }

    /// Whether the vector is nonzero with all coordinates nonnegative.
    pub fn is_nonneg_nonzero(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    /// Whether the vector is nonzero with all coordinates nonpositive.
    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    /// The positive one of `self` and `-self`.
    pub fn abs(&self) -> Root {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

impl std::ops::Neg for &Root {
    type Output = Root;

    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl std::ops::Neg for Root {
    type Output = Root;

    fn neg(self) -> Root {
        -&self
    }
}

impl fmt::Display for Root {
    /// Renders `2*a1+a2`, `-a1-a2`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An element of the Weyl group, stored as the integer matrix of its action on
/// root coordinates together with the matrix of its inverse.
///
/// Column `j` of `mat` is the image of the `j`-th simple root.
#[derive(Debug, Clone)]
pub struct WeylElement {
    n: usize,
    mat: Vec<i32>,
    inv: Vec<i32>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.mat.hash(state);
    }
}

fn mat_mul(n: usize, a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn identity_mat(n: usize) -> Vec<i32> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn apply_mat(n: usize, m: &[i32], v: &[i32]) -> Vec<i32> {
    (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum())
        .collect()
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let m = identity_mat(n);
        WeylElement { n, mat: m.clone(), inv: m }
    }

    /// An involution given by a single matrix.
    fn involution(n: usize, mat: Vec<i32>) -> Self {
        WeylElement { n, inv: mat.clone(), mat }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[i32] {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        self.mat == identity_mat(self.n)
    }

    /// `self * other`, i.e. first apply `other`.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.n != other.n {
            return Err(Error::RankMismatch { expected: self.n, found: other.n });
        }
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &WeylElement) -> WeylElement {
        debug_assert_eq!(self.n, other.n);
        WeylElement {
            n: self.n,
            mat: mat_mul(self.n, &self.mat, &other.mat),
            inv: mat_mul(self.n, &other.inv, &self.inv),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement { n: self.n, mat: self.inv.clone(), inv: self.mat.clone() }
    }

    pub fn apply(&self, beta: &Root) -> Result<Root> {
        if beta.rank() != self.n {
            return Err(Error::RankMismatch { expected: self.n, found: beta.rank() });
        }
        Ok(self.act(beta))
    }

    pub(crate) fn act(&self, beta: &Root) -> Root {
        Root(apply_mat(self.n, &self.mat, &beta.0))
    }

    pub(crate) fn act_inverse(&self, beta: &Root) -> Root {
        Root(apply_mat(self.n, &self.inv, &beta.0))
    }

    /// Image of minus the `i`-th simple root (1-based).
    pub(crate) fn image_of_neg_simple(&self, i: usize) -> Root {
        let j = i - 1;
        Root((0..self.n).map(|r| -self.mat[r * self.n + j]).collect())
    }

    /// `w*s_i < w`, i.e. `w(a_i)` is negative.
    pub fn descends_right(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, rank: self.n });
        }
        Ok(self.descends(i))
    }

    pub(crate) fn descends(&self, i: usize) -> bool {
        let j = i - 1;
        // w(a_i) is a root, so one negative coordinate decides the sign.
        (0..self.n).any(|r| self.mat[r * self.n + j] < 0)
    }

    /// `s_a*w < w` for a positive root `a`, i.e. `w^{-1}(a)` is negative.
    pub fn reflection_lowers(&self, alpha: &Root) -> bool {
        self.act_inverse(alpha).is_negative()
    }
}

/// A finite crystallographic root system given by its simple components.
#[derive(Debug, Clone)]
pub struct RootDatum {
    components: Vec<Component>,
    n: usize,
    /// `cartan[i][j] = <a_i, a_j^vee>`.
    cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    positive_index: HashMap<Root, usize>,
    simple_reflections: Vec<WeylElement>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl Eq for RootDatum {}

/// Symmetrised Gram matrix of one component, scaled to integers.
fn component_gram(c: Component) -> Vec<Vec<i32>> {
    let n = c.rank;
    let mut g = vec![vec![0; n]; n];
    let edge = |g: &mut Vec<Vec<i32>>, i: usize, j: usize, v: i32| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match c.ty {
        CartanType::A => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n.saturating_sub(1) {
                edge(&mut g, i, i + 1, -1);
            }
        }
        CartanType::B => {
            for i in 0..n - 1 {
                g[i][i] = 4;
            }
            g[n - 1][n - 1] = 2;
            for i in 0..n - 1 {
                edge(&mut g, i, i + 1, -2);
            }
        }
        CartanType::C => {
            for i in 0..n - 1 {
                g[i][i] = 2;
            }
            g[n - 1][n - 1] = 4;
            for i in 0..n - 2 {
                edge(&mut g, i, i + 1, -1);
            }
            edge(&mut g, n - 2, n - 1, -2);
        }
        CartanType::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                edge(&mut g, i, i + 1, -1);
            }
            edge(&mut g, n - 3, n - 1, -1);
        }
        CartanType::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            // 1-3-4-5-...-n with 2 attached to 4
            edge(&mut g, 0, 2, -1);
            edge(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                edge(&mut g, i, i + 1, -1);
            }
        }
        CartanType::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            edge(&mut g, 0, 1, -2);
            edge(&mut g, 1, 2, -2);
            edge(&mut g, 2, 3, -1);
        }
        CartanType::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            edge(&mut g, 0, 1, -3);
        }
    }
    g
}

impl RootDatum {
    pub fn new(components: &[Component]) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Config("a root datum needs at least one component".into()));
        }
        for c in components {
            if !c.ty.rank_is_valid(c.rank) {
                return Err(Error::Config(format!("invalid rank {} for type {}", c.rank, c.ty)));
            }
        }
        let n: usize = components.iter().map(|c| c.rank).sum();
        let mut cartan = vec![vec![0; n]; n];
        let mut offset = 0;
        for &c in components {
            let g = component_gram(c);
            for i in 0..c.rank {
                for j in 0..c.rank {
                    cartan[offset + i][offset + j] = 2 * g[i][j] / g[j][j];
                }
            }
            offset += c.rank;
        }

        // s_j(b) = b - <b, a_j^vee> a_j with <b, a_j^vee> = sum_i b_i cartan[i][j]
        let simple_reflections = (0..n)
            .map(|j| {
                let mut m = identity_mat(n);
                for i in 0..n {
                    m[j * n + i] -= cartan[i][j];
                }
                WeylElement::involution(n, m)
            })
            .collect::<Vec<_>>();

        let mut seen: HashSet<Root> = HashSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 1..=n {
            let r = Root::simple(n, i);
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for s in &simple_reflections {
                let img = s.act(&r);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut positive: Vec<Root> = seen.into_iter().filter(|r| r.is_nonneg_nonzero()).collect();
        positive.sort_by(|a, b| {
            let ha: i32 = a.0.iter().sum();
            let hb: i32 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let positive_index = positive.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

        Ok(RootDatum {
            components: components.to_vec(),
            n,
            cartan,
            positive,
            positive_index,
            simple_reflections,
        })
    }

    /// Shorthand for a single simple component.
    pub fn simple_type(ty: CartanType, rank: usize) -> Result<Self> {
        Self::new(&[Component::new(ty, rank)])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> Result<Root> {
        self.check_index(i)?;
        Ok(Root::simple(self.n, i))
    }

    /// Positive roots, ordered by height and then reverse-lexicographically
    /// on coordinates (so `a1` precedes `a2`).
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn is_root(&self, r: &Root) -> bool {
        r.rank() == self.n && (self.positive_index.contains_key(r) || self.positive_index.contains_key(&-r))
    }

    pub fn is_positive_root(&self, r: &Root) -> bool {
        self.positive_index.contains_key(r)
    }

    pub fn positive_root_index(&self, r: &Root) -> Option<usize> {
        self.positive_index.get(r).copied()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::IndexOutOfRange { index: i, rank: self.n })
        } else {
            Ok(())
        }
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.n)
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.check_index(i)?;
        Ok(self.simple_reflections[i - 1].clone())
    }

    pub(crate) fn simple_reflection_ref(&self, i: usize) -> &WeylElement {
        &self.simple_reflections[i - 1]
    }

    /// `<beta, alpha^vee>` for a root `alpha`.
    fn pairing(&self, beta: &Root, alpha: &Root) -> i32 {
        // Work with the scaled symmetric form (x, y) = x^T diag(d) C y where
        // d_j = |a_j|^2 up to scale; this avoids fractions for coroots.
        let d = self.scaled_lengths();
        let form = |x: &[i32], y: &[i32]| -> i64 {
            let mut s = 0i64;
            for i in 0..self.n {
                if x[i] == 0 {
                    continue;
                }
                for j in 0..self.n {
                    // (a_i, a_j) = cartan[i][j] * d_j / 2
                    s += x[i] as i64 * y[j] as i64 * self.cartan[i][j] as i64 * d[j];
                }
            }
            s
        };
        let num = 2 * form(beta.coords(), alpha.coords());
        let den = form(alpha.coords(), alpha.coords());
        (num / den) as i32
    }

    /// Squared lengths of simple roots up to a common scale (short = 1 within
    /// each component, doubled so the symmetric form stays integral).
    fn scaled_lengths(&self) -> Vec<i64> {
        let mut d = Vec::with_capacity(self.n);
        for &c in &self.components {
            let g = component_gram(c);
            for i in 0..c.rank {
                d.push(g[i][i] as i64);
            }
        }
        d
    }

    /// Reflection in a positive root: `b -> b - <b, a^vee> a`.
    pub fn reflection(&self, alpha: &Root) -> Result<WeylElement> {
        if !self.is_positive_root(alpha) {
            return Err(Error::NotARoot(alpha.to_string()));
        }
        let n = self.n;
        let mut m = identity_mat(n);
        for j in 0..n {
            let e = Root::simple(n, j + 1);
            let c = self.pairing(&e, alpha);
            for i in 0..n {
                m[i * n + j] -= c * alpha.0[i];
            }
        }
        Ok(WeylElement::involution(n, m))
    }

    /// Product of simple reflections, left to right (1-based indices).
    pub fn word_to_element(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word {
            self.check_index(i)?;
            w = w.mul(&self.simple_reflections[i - 1]);
        }
        Ok(w)
    }

    /// `{a in Phi+ : w^{-1}(a) < 0}`.
    pub fn inversion_set(&self, w: &WeylElement) -> Vec<Root> {
        self.positive.iter().filter(|a| w.reflection_lowers(a)).cloned().collect()
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive.iter().filter(|a| w.reflection_lowers(a)).count()
    }

    pub fn has_c_component(&self) -> bool {
        self.components.iter().any(|c| c.ty == CartanType::C && c.rank >= 2)
    }

    /// A reduced word for `w` (1-based indices), found by peeling right descents.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut w = w.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 1..=self.n {
                if w.descends(i) {
                    w = w.mul(&self.simple_reflections[i - 1]);
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    /// All elements of the Weyl group, by breadth-first search. Only sensible
    /// for small ranks.
    pub fn elements(&self) -> Vec<WeylElement> {
        let mut seen: HashSet<WeylElement> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut k = 0;
        while k < out.len() {
            let w = out[k].clone();
            for s in &self.simple_reflections {
                let ws = w.mul(s);
                if seen.insert(ws.clone()) {
                    out.push(ws);
                }
            }
            k += 1;
        }
        out
    }

    /// Parses `a1+a2`, `2*a1+a2`, `-a3` into a root vector (not checked for
    /// membership in the root system).
    pub fn parse_root(&self, s: &str) -> Result<Root> {
        let p = crate::poly::Poly::parse(s, self.n)?;
        let lin = p
            .linear_coefficients()
            .ok_or_else(|| Error::Parse(format!("`{s}` is not a linear form")))?;
        Ok(Root(lin))
    }
}

/// Parses names like `A2`, `F4` or `A1xC2`.
impl FromStr for RootDatum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut comps = Vec::new();
        for part in s.split(['x', '*']).map(str::trim) {
            let bad = || Error::Config(format!("cannot read `{part}` as a Cartan type and rank"));
            let ty: CartanType = part.get(..1).ok_or_else(bad)?.parse()?;
            let rank: usize = part[1..].parse().map_err(|_| bad())?;
            comps.push(Component::new(ty, rank));
        }
        RootDatum::new(&comps)
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| format!("{}{}", c.ty, c.rank)).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(ty: CartanType, n: usize) -> RootDatum {
        RootDatum::simple_type(ty, n).unwrap()
    }

    fn r(v: &[i32]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn small_root_sets() {
        assert_eq!(datum(CartanType::A, 1).positive_roots(), &[r(&[1])]);
        let a2 = datum(CartanType::A, 2);
        assert_eq!(a2.positive_roots(), &[r(&[1, 0]), r(&[0, 1]), r(&[1, 1])]);
    }

    #[test]
    fn root_counts_match_classical_formulas() {
        for n in 1..=8 {
            assert_eq!(datum(CartanType::A, n).positive_roots().len(), n * (n + 1) / 2);
        }
        for n in 2..=6 {
            assert_eq!(datum(CartanType::B, n).positive_roots().len(), n * n);
            assert_eq!(datum(CartanType::C, n).positive_roots().len(), n * n);
        }
        for n in 3..=6 {
            assert_eq!(datum(CartanType::D, n).positive_roots().len(), n * (n - 1));
        }
        assert_eq!(datum(CartanType::E, 6).positive_roots().len(), 36);
        assert_eq!(datum(CartanType::E, 7).positive_roots().len(), 63);
        assert_eq!(datum(CartanType::E, 8).positive_roots().len(), 120);
        assert_eq!(datum(CartanType::F, 4).positive_roots().len(), 24);
        assert_eq!(datum(CartanType::G, 2).positive_roots().len(), 6);
        let mixed = RootDatum::new(&[Component::new(CartanType::A, 2), Component::new(CartanType::C, 2)]).unwrap();
        assert_eq!(mixed.positive_roots().len(), 3 + 4);
    }

    #[test]
    fn invalid_ranks_are_config_errors() {
        for (ty, n) in [(CartanType::A, 0), (CartanType::B, 1), (CartanType::D, 2), (CartanType::E, 5), (CartanType::F, 3), (CartanType::G, 3)] {
            assert!(matches!(RootDatum::simple_type(ty, n), Err(Error::Config(_))));
        }
        assert!("X".parse::<CartanType>().is_err());
    }

    #[test]
    fn cartan_conventions() {
        let a2 = datum(CartanType::A, 2);
        assert_eq!(a2.simple_reflection(1).unwrap().apply(&r(&[0, 1])).unwrap(), r(&[1, 1]));
        // C2: a1 short, a2 long.
        let c2 = datum(CartanType::C, 2);
        assert_eq!(c2.simple_reflection(1).unwrap().act(&r(&[0, 1])), r(&[2, 1]));
        assert_eq!(c2.simple_reflection(2).unwrap().act(&r(&[1, 0])), r(&[1, 1]));
        // B2: a2 short.
        let b2 = datum(CartanType::B, 2);
        assert_eq!(b2.simple_reflection(2).unwrap().act(&r(&[1, 0])), r(&[1, 2]));
        let g2 = datum(CartanType::G, 2);
        assert_eq!(g2.simple_reflection(1).unwrap().act(&r(&[0, 1])), r(&[3, 1]));
        assert!(g2.is_positive_root(&r(&[3, 2])));
    }

    #[test]
    fn reflections() {
        let a1 = datum(CartanType::A, 1);
        let s = a1.simple_reflection(1).unwrap();
        assert_eq!(s.act(&r(&[1])), r(&[-1]));
        assert!(s.mul(&s).is_identity());

        let a2 = datum(CartanType::A, 2);
        let s12 = a2.reflection(&r(&[1, 1])).unwrap();
        assert_eq!(s12.act(&r(&[1, 0])), r(&[0, -1]));
        assert_eq!(s12, a2.word_to_element(&[1, 2, 1]).unwrap());
        assert_eq!(a2.word_to_element(&[1, 2, 1]).unwrap(), a2.word_to_element(&[2, 1, 2]).unwrap());
        assert_eq!(a2.reflection(&r(&[1, 0])).unwrap(), a2.simple_reflection(1).unwrap());
        assert!(a2.reflection(&r(&[1, -1])).is_err());

        for ty in [CartanType::B, CartanType::C, CartanType::G] {
            let d = datum(ty, 2);
            for a in d.positive_roots() {
                let s = d.reflection(a).unwrap();
                assert!(s.mul(&s).is_identity(), "{ty} {a}");
                assert_eq!(s.act(a), -a);
                for b in d.positive_roots() {
                    assert!(d.is_root(&s.act(b)));
                }
            }
        }
    }

    #[test]
    fn sign_tests() {
        assert!(r(&[1, 0]).is_positive().unwrap());
        assert!(!r(&[-1, -1]).is_positive().unwrap());
        assert_eq!(r(&[0, 0]).is_positive(), Err(Error::ZeroRoot));
    }

    #[test]
    fn lengths_and_inversions() {
        let a1 = datum(CartanType::A, 1);
        assert_eq!(a1.length(&a1.identity()), 0);
        assert!(a1.inversion_set(&a1.identity()).is_empty());
        let s = a1.simple_reflection(1).unwrap();
        assert_eq!(a1.inversion_set(&s), vec![r(&[1])]);

        let a7 = datum(CartanType::A, 7);
        let x = a7.word_to_element(&[2, 3, 2, 5, 6, 5]).unwrap();
        assert_eq!(a7.length(&x), 6);
        let mut inv: Vec<String> = a7.inversion_set(&x).iter().map(|r| r.to_string()).collect();
        inv.sort();
        let mut expected = vec!["a2", "a3", "a2+a3", "a5", "a6", "a5+a6"];
        expected.sort();
        assert_eq!(inv, expected);
    }

    #[test]
    fn right_descents() {
        let a2 = datum(CartanType::A, 2);
        let e = a2.identity();
        assert!(!e.descends_right(1).unwrap() && !e.descends_right(2).unwrap());
        let w = a2.word_to_element(&[1, 2]).unwrap();
        assert!(w.descends_right(2).unwrap());
        assert!(!w.descends_right(1).unwrap());
        assert!(w.descends_right(3).is_err());
    }

    #[test]
    fn c_components() {
        assert!(!datum(CartanType::A, 7).has_c_component());
        assert!(datum(CartanType::C, 3).has_c_component());
        let mixed = RootDatum::new(&[Component::new(CartanType::A, 2), Component::new(CartanType::C, 2)]).unwrap();
        assert!(mixed.has_c_component());
    }

    #[test]
    fn words_and_inverses() {
        let a3 = datum(CartanType::A, 3);
        assert!(a3.word_to_element(&[]).unwrap().is_identity());
        assert!(a3.word_to_element(&[4]).is_err());
        let w = a3.word_to_element(&[1, 2, 3, 2]).unwrap();
        assert!(w.mul(&w.inverse()).is_identity());
        assert_eq!(a3.word_to_element(&a3.reduced_word(&w)).unwrap(), w);
        assert_eq!(a3.elements().len(), 24);
        assert_eq!(datum(CartanType::B, 2).elements().len(), 8);
    }

    #[test]
    fn length_changes_by_one_under_simple_reflections() {
        for (ty, n) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 3), (CartanType::G, 2), (CartanType::D, 4)] {
            let d = datum(ty, n);
            for w in d.elements() {
                let l = d.length(&w);
                assert_eq!(d.inversion_set(&w).len(), l);
                for i in 1..=n {
                    let ws = w.mul(d.simple_reflection_ref(i));
                    let expected = if w.descends(i) { l - 1 } else { l + 1 };
                    assert_eq!(d.length(&ws), expected);
                }
                for a in d.positive_roots() {
                    assert!(d.is_root(&w.act(a)));
                }
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for name in ["A2", "B3", "G2", "A1xC2", "E8"] {
            let d: RootDatum = name.parse().unwrap();
            assert_eq!(d.to_string(), name);
        }
        assert!(matches!("Q2".parse::<RootDatum>(), Err(Error::Config(_))));
        assert!("A".parse::<RootDatum>().is_err());
        assert!("G3".parse::<RootDatum>().is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(r(&[2, 1]).to_string(), "2*a1+a2");
        assert_eq!(r(&[-1, -1]).to_string(), "-a1-a2");
        assert_eq!(r(&[0, 1, 1]).to_string(), "a2+a3");
    }
}
