//! Combinatorial galleries over a fixed word of simple reflections.
//!
//! A gallery is stored as a bit vector: bit `i-1` is set when the `i`-th
//! choice is the reflection `s_i`, clear when it is `e`. Enumerating `Γ` in
//! binary counting order makes a gallery's bits its index.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootDatum, WeylElement};

/// Longest supported word (galleries are `u64` bit vectors).
pub const MAX_WORD_LEN: usize = 63;

/// A sequence of simple reflections, given by 1-based indices.
#[derive(Debug, Clone)]
pub struct Word {
    datum: Arc<RootDatum>,
    letters: Vec<usize>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && (Arc::ptr_eq(&self.datum, &other.datum) || *self.datum == *other.datum)
    }
}

impl Eq for Word {}

impl Word {
    pub fn new(datum: Arc<RootDatum>, letters: Vec<usize>) -> Result<Self> {
        for &i in &letters {
            datum.check_index(i)?;
        }
        if letters.len() > MAX_WORD_LEN {
            return Err(Error::Config(format!("word longer than {MAX_WORD_LEN} letters")));
        }
        Ok(Word { datum, letters })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Simple-root index of the letter at position `i` (1-based).
    pub fn letter(&self, i: usize) -> usize {
        self.letters[i - 1]
    }

    /// The word with its last letter removed.
    pub fn truncate(&self) -> Result<Word> {
        if self.letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word { datum: self.datum.clone(), letters: self.letters[..self.len() - 1].to_vec() })
    }

    /// The prefix of length `k`.
    pub fn prefix(&self, k: usize) -> Word {
        Word { datum: self.datum.clone(), letters: self.letters[..k].to_vec() }
    }

    pub fn num_galleries(&self) -> usize {
        1usize << self.len()
    }

    /// All `2^r` galleries in binary counting order.
    pub fn galleries(&self) -> impl Iterator<Item = Gallery> {
        let r = self.len();
        (0..1u64 << r).map(move |bits| Gallery { bits, len: r })
    }

    fn reflection(&self, pos: usize) -> &WeylElement {
        self.datum.simple_reflection_ref(self.letter(pos))
    }

    /// `π(γ) = γ_1 ⋯ γ_r`.
    pub fn pi(&self, g: Gallery) -> WeylElement {
        let mut w = self.datum.identity();
        for i in 1..=self.len() {
            if g.choice(i) {
                w = w.mul(self.reflection(i));
            }
        }
        w
    }

    pub fn walls(&self, g: Gallery) -> WallData {
        assert_eq!(g.len(), self.len(), "gallery length does not match word");
        let r = self.len();
        let mut prefixes = Vec::with_capacity(r + 1);
        prefixes.push(self.datum.identity());
        let mut beta = Vec::with_capacity(r);
        let mut beta_tilde = Vec::with_capacity(r);
        let (mut j, mut d) = (0u64, 0u64);
        for i in 1..=r {
            let prev = &prefixes[i - 1];
            let bt = prev.image_of_neg_simple(self.letter(i));
            let cur = if g.choice(i) { prev.mul(self.reflection(i)) } else { prev.clone() };
            let b = if g.choice(i) { -&bt } else { bt.clone() };
            if b.is_nonneg_nonzero() {
                j |= 1 << (i - 1);
            }
            if bt.is_nonneg_nonzero() {
                d |= 1 << (i - 1);
            }
            beta.push(b);
            beta_tilde.push(bt);
            prefixes.push(cur);
        }
        WallData { prefixes, beta, beta_tilde, j, d }
    }

    /// `Γ_x`, sorted ascending by `<`.
    pub fn fiber(&self, x: &WeylElement) -> Vec<Gallery> {
        let mut out = Vec::new();
        self.for_each_endpoint(|g, w| {
            if w == x {
                out.push(g);
            }
        });
        self.sort_fiber(&mut out);
        out
    }

    /// `Γ \ Γ_x` in binary counting order.
    pub fn cofiber(&self, x: &WeylElement) -> Vec<Gallery> {
        let mut out = Vec::new();
        self.for_each_endpoint(|g, w| {
            if w != x {
                out.push(g);
            }
        });
        out.sort();
        out
    }

    /// Distinct values of `π` over `Γ`, ordered by length then first
    /// appearance in binary order.
    pub fn endpoints(&self) -> Vec<WeylElement> {
        let mut seen = std::collections::HashSet::new();
        let mut pairs = Vec::new();
        self.for_each_endpoint(|g, w| {
            if seen.insert(w.clone()) {
                pairs.push((g, w.clone()));
            }
        });
        pairs.sort_by_key(|(g, _)| *g);
        let mut out: Vec<WeylElement> = pairs.into_iter().map(|(_, w)| w).collect();
        out.sort_by_key(|w| self.datum.length(w));
        out
    }

    /// Depth-first walk sharing prefix products; calls `f(γ, π(γ))`.
    fn for_each_endpoint(&self, mut f: impl FnMut(Gallery, &WeylElement)) {
        fn rec(word: &Word, pos: usize, bits: u64, w: &WeylElement, f: &mut dyn FnMut(Gallery, &WeylElement)) {
            if pos == word.len() {
                f(Gallery { bits, len: word.len() }, w);
                return;
            }
            rec(word, pos + 1, bits, w, f);
            let ws = w.mul(word.reflection(pos + 1));
            rec(word, pos + 1, bits | 1 << pos, &ws, f);
        }
        rec(self, 0, 0, &self.datum.identity(), &mut f);
    }

    pub fn sort_fiber(&self, galleries: &mut [Gallery]) {
        let walls: std::collections::HashMap<Gallery, WallData> =
            galleries.iter().map(|&g| (g, self.walls(g))).collect();
        galleries.sort_by(|a, b| match cmp_fiber(&walls[a], &walls[b]) {
            FiberOrdering::Less => Ordering::Less,
            FiberOrdering::Equal => Ordering::Equal,
            FiberOrdering::Greater => Ordering::Greater,
            FiberOrdering::Incomparable => panic!("galleries from different fibers"),
        });
    }

    /// Right-descent test `x·s_r < x` for the last letter.
    pub fn descends_at_last(&self, x: &WeylElement) -> Result<bool> {
        let r = self.len();
        if r == 0 {
            return Err(Error::EmptyWord);
        }
        Ok(x.descends(self.letter(r)))
    }

    /// `x·t` for the choice `t ∈ {e, s_r}` at the last position.
    pub fn times_last(&self, x: &WeylElement, s: bool) -> WeylElement {
        if s {
            x.mul(self.reflection(self.len()))
        } else {
            x.clone()
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A combinatorial gallery: one bit per position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gallery {
    bits: u64,
    len: usize,
}

impl Gallery {
    pub fn new(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_WORD_LEN && bits >> len == 0, "bits exceed gallery length");
        Gallery { bits, len }
    }

    pub fn empty() -> Self {
        Gallery { bits: 0, len: 0 }
    }

    pub fn from_choices(choices: &[bool]) -> Self {
        let bits = choices.iter().enumerate().fold(0u64, |b, (i, &c)| b | (c as u64) << i);
        Gallery::new(choices.len(), bits)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Position in the binary enumeration of `Γ`.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    /// `true` iff `γ_i = s_i` (1-based).
    pub fn choice(&self, i: usize) -> bool {
        self.bits >> (i - 1) & 1 == 1
    }

    pub fn last(&self) -> bool {
        self.choice(self.len)
    }

    /// `γ'`: drops the last choice.
    pub fn truncate(&self) -> Gallery {
        assert!(self.len > 0, "truncating the empty gallery");
        Gallery { bits: self.bits & !(1 << (self.len - 1)), len: self.len - 1 }
    }

    /// `γ·t`.
    pub fn extend(&self, s: bool) -> Gallery {
        Gallery { bits: self.bits | (s as u64) << self.len, len: self.len + 1 }
    }

    /// Flips the choices at the positions in `mask` (bit `i-1` for position `i`).
    pub fn toggle(&self, mask: u64) -> Gallery {
        Gallery { bits: self.bits ^ mask, len: self.len }
    }

    /// `γ̇`: flips the last choice.
    pub fn dot(&self) -> Result<Gallery> {
        if self.len == 0 {
            return Err(Error::EmptyWord);
        }
        Ok(self.toggle(1 << (self.len - 1)))
    }
}

impl fmt::Display for Gallery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.choice(i) { "s" } else { "e" })?;
        }
        Ok(())
    }
}

impl FromStr for Gallery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let choices = s
            .chars()
            .map(|c| match c {
                'e' => Ok(false),
                's' => Ok(true),
                _ => Err(Error::Parse(format!("bad gallery `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if choices.len() > MAX_WORD_LEN {
            return Err(Error::Parse(format!("gallery `{s}` too long")));
        }
        Ok(Gallery::from_choices(&choices))
    }
}

/// Iterates the set bits of a position mask as 1-based positions.
pub fn positions(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| mask >> b & 1 == 1).map(|b| b + 1)
}

/// Wall data of one gallery: prefixes `γ^0..γ^r`, the roots `β_i`, `β̃_i`
/// and the sets `J`, `D` as position masks.
#[derive(Debug, Clone)]
pub struct WallData {
    prefixes: Vec<WeylElement>,
    beta: Vec<Root>,
    beta_tilde: Vec<Root>,
    j: u64,
    d: u64,
}

impl WallData {
    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    /// `γ^i`.
    pub fn prefix(&self, i: usize) -> &WeylElement {
        &self.prefixes[i]
    }

    pub fn pi(&self) -> &WeylElement {
        self.prefixes.last().unwrap()
    }

    /// `β_i(γ) = γ^i(-α_i)`, 1-based.
    pub fn beta(&self, i: usize) -> &Root {
        &self.beta[i - 1]
    }

    /// `β̃_i(γ) = γ^{i-1}(-α_i)`, 1-based.
    pub fn beta_tilde(&self, i: usize) -> &Root {
        &self.beta_tilde[i - 1]
    }

    pub fn j_mask(&self) -> u64 {
        self.j
    }

    pub fn d_mask(&self) -> u64 {
        self.d
    }

    pub fn j_set(&self) -> Vec<usize> {
        positions(self.j).collect()
    }

    pub fn d_set(&self) -> Vec<usize> {
        positions(self.d).collect()
    }

    /// `M_α(γ)`: positions with `β_i = ±α`.
    pub fn m_alpha(&self, alpha: &Root) -> u64 {
        let neg = -alpha;
        self.beta
            .iter()
            .enumerate()
            .filter(|(_, b)| **b == *alpha || **b == neg)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn j_alpha(&self, alpha: &Root) -> u64 {
        self.m_alpha(alpha) & self.j
    }

    pub fn d_alpha(&self, alpha: &Root) -> u64 {
        self.m_alpha(alpha) & self.d
    }
}

/// Checked versions of the `M_α`, `J_α`, `D_α` accessors.
pub fn alpha_sets(datum: &RootDatum, walls: &WallData, alpha: &Root) -> Result<(u64, u64, u64)> {
    if !datum.is_positive_root(alpha) {
        return Err(Error::NotARoot(alpha.to_string()));
    }
    Ok((walls.m_alpha(alpha), walls.j_alpha(alpha), walls.d_alpha(alpha)))
}

/// `γ ∼_α δ`: the choices agree outside `M_α(γ)`.
pub fn equiv_alpha(g: Gallery, gw: &WallData, d: Gallery, alpha: &Root) -> bool {
    g.len() == d.len() && (g.bits() ^ d.bits()) & !gw.m_alpha(alpha) == 0
}

/// The total order `◁` on `Γ`. At the first position `i` where the choices
/// differ, `δ ◁ γ` exactly when `γ^i s_i < γ^i`, i.e. `i ∈ J(γ)`.
pub fn cmp_triangle(a: Gallery, b: Gallery, bw: &WallData) -> Ordering {
    let diff = a.bits() ^ b.bits();
    if diff == 0 {
        return Ordering::Equal;
    }
    let i = diff.trailing_zeros() as u64;
    if bw.j_mask() >> i & 1 == 1 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// The order `<` on a fiber. With `i` the largest index where the prefixes
/// differ, `a^{i+1} = b^{i+1}` and `a < b` iff `b^i s_{i+1} < b^i`, i.e.
/// `i+1 ∈ D(b)`. Galleries over different endpoints are incomparable.
pub fn cmp_fiber(a: &WallData, b: &WallData) -> FiberOrdering {
    let r = a.len();
    if r != b.len() || a.pi() != b.pi() {
        return FiberOrdering::Incomparable;
    }
    for i in (0..r).rev() {
        if a.prefix(i) != b.prefix(i) {
            return if b.d_mask() >> i & 1 == 1 { FiberOrdering::Less } else { FiberOrdering::Greater };
        }
    }
    FiberOrdering::Equal
}

/// Alternation along `M_α(γ) = {i_1 < ... < i_l}`: `i_j ∈ J_α ⟺ i_{j+1} ∈ D_α`,
/// and `i_l ∈ J_α ⟺ s_α π(γ) < π(γ)`.
pub fn check_alternation(walls: &WallData, alpha: &Root) -> bool {
    let m: Vec<usize> = positions(walls.m_alpha(alpha)).collect();
    let (j, d) = (walls.j_alpha(alpha), walls.d_alpha(alpha));
    let inj = |i: usize| j >> (i - 1) & 1 == 1;
    let ind = |i: usize| d >> (i - 1) & 1 == 1;
    for w in m.windows(2) {
        if inj(w[0]) != ind(w[1]) {
            return false;
        }
    }
    match m.last() {
        None => true,
        Some(&last) => inj(last) == walls.pi().reflection_lowers(alpha),
    }
}

/// A labelling `ρ ∈ Υ` of the binary tree `Tr_r`. The root label is `e` or
/// `s_r`; `zero` and `one` are the truncations `ρ'_0`, `ρ'_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeIndex {
    Leaf,
    Node { s: bool, zero: Box<TreeIndex>, one: Box<TreeIndex> },
}

impl TreeIndex {
    pub fn depth(&self) -> usize {
        match self {
            TreeIndex::Leaf => 0,
            TreeIndex::Node { zero, .. } => 1 + zero.depth(),
        }
    }

    /// Number of labels, `2^r - 1`.
    pub fn num_labels(&self) -> usize {
        match self {
            TreeIndex::Leaf => 0,
            TreeIndex::Node { zero, one, .. } => 1 + zero.num_labels() + one.num_labels(),
        }
    }

    /// Tree with every label `e` (or every label `s`).
    pub fn constant(r: usize, s: bool) -> TreeIndex {
        if r == 0 {
            return TreeIndex::Leaf;
        }
        TreeIndex::Node { s, zero: Box::new(Self::constant(r - 1, s)), one: Box::new(Self::constant(r - 1, s)) }
    }

    /// Builds a tree from `2^r - 1` labels in breadth-first order (root
    /// first, then `ρ'_0` before `ρ'_1` on each level).
    pub fn from_bits(r: usize, bits: u64) -> TreeIndex {
        fn rec(r: usize, node: u64, bits: u64) -> TreeIndex {
            if r == 0 {
                return TreeIndex::Leaf;
            }
            TreeIndex::Node {
                s: bits >> (node - 1) & 1 == 1,
                zero: Box::new(rec(r - 1, 2 * node, bits)),
                one: Box::new(rec(r - 1, 2 * node + 1, bits)),
            }
        }
        rec(r, 1, bits)
    }

    /// `ρ_r(x)`: root label `t` with `x t > x t s_r`, `ρ'_0 = ρ_{r-1}(x t s_r)`,
    /// `ρ'_1 = ρ_{r-1}(x t)`.
    pub fn rho(word: &Word, x: &WeylElement) -> TreeIndex {
        Self::build(word, x, true)
    }

    /// `ξ_r(x)`: as `ρ_r(x)` but with `x t < x t s_r` at the root.
    pub fn xi(word: &Word, x: &WeylElement) -> TreeIndex {
        Self::build(word, x, false)
    }

    fn build(word: &Word, x: &WeylElement, descending: bool) -> TreeIndex {
        if word.is_empty() {
            return TreeIndex::Leaf;
        }
        let s = word.descends_at_last(x).unwrap() != descending;
        let xt = word.times_last(x, s);
        let xts = word.times_last(&xt, true);
        let shorter = word.truncate().unwrap();
        TreeIndex::Node {
            s,
            zero: Box::new(Self::build(&shorter, &xts, descending)),
            one: Box::new(Self::build(&shorter, &xt, descending)),
        }
    }
}

impl fmt::Display for TreeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeIndex::Leaf => write!(f, "."),
            TreeIndex::Node { s, zero, one } => {
                write!(f, "{}[{} {}]", if *s { "s" } else { "e" }, zero, one)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn word(ty: CartanType, n: usize, letters: &[usize]) -> Word {
        Word::new(Arc::new(RootDatum::simple_type(ty, n).unwrap()), letters.to_vec()).unwrap()
    }

    fn g(s: &str) -> Gallery {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration() {
        let w = word(CartanType::A, 1, &[]);
        assert_eq!(w.galleries().collect::<Vec<_>>(), vec![Gallery::empty()]);
        let w = word(CartanType::A, 1, &[1, 1]);
        let all: Vec<String> = w.galleries().map(|g| g.to_string()).collect();
        assert_eq!(all, ["ee", "se", "es", "ss"]);
        assert!(Word::new(w.datum_arc().clone(), vec![2]).is_err());
    }

    #[test]
    fn walls_in_a1() {
        let w = word(CartanType::A, 1, &[1]);
        let a = Root::simple(1, 1);
        let e = w.walls(g("e"));
        assert_eq!(e.beta(1), &-&a);
        assert_eq!((e.j_mask(), e.d_mask()), (0, 0));
        let s = w.walls(g("s"));
        assert_eq!(s.beta(1), &a);
        assert_eq!((s.j_set(), s.d_set()), (vec![1], vec![]));

        let w = word(CartanType::A, 1, &[1, 1]);
        let ss = w.walls(g("ss"));
        assert_eq!(ss.d_set(), vec![2]);
        assert_eq!(ss.beta_tilde(2), &a);
        assert_eq!((ss.m_alpha(&a), ss.j_alpha(&a), ss.d_alpha(&a)), (0b11, 0b01, 0b10));
        let ee = w.walls(g("ee"));
        assert_eq!((ee.m_alpha(&a), ee.j_alpha(&a), ee.d_alpha(&a)), (0b11, 0, 0));
        assert!(equiv_alpha(g("ee"), &ee, g("ss"), &a));
        assert!(alpha_sets(w.datum(), &ee, &-&a).is_err());
    }

    #[test]
    fn orders_in_a1() {
        let w = word(CartanType::A, 1, &[1]);
        assert_eq!(cmp_triangle(g("e"), g("s"), &w.walls(g("s"))), Ordering::Less);
        let w = word(CartanType::A, 1, &[1, 1]);
        let e = w.datum().identity();
        let s1 = w.datum().simple_reflection(1).unwrap();
        let fe: Vec<String> = w.fiber(&e).iter().map(|g| g.to_string()).collect();
        assert_eq!(fe, ["ee", "ss"]);
        let fs: Vec<String> = w.fiber(&s1).iter().map(|g| g.to_string()).collect();
        assert_eq!(fs, ["es", "se"]);
        assert_eq!(cmp_fiber(&w.walls(g("ee")), &w.walls(g("es"))), FiberOrdering::Incomparable);
        assert_eq!(cmp_fiber(&w.walls(g("ss")), &w.walls(g("ss"))), FiberOrdering::Equal);
        assert_eq!(w.cofiber(&e), vec![g("se"), g("es")]);
        let w0 = word(CartanType::A, 1, &[]);
        assert_eq!(w0.fiber(&w0.datum().identity()), vec![Gallery::empty()]);
    }

    #[test]
    fn dot_and_trees() {
        assert_eq!(g("e").dot().unwrap(), g("s"));
        assert_eq!(g("ese").dot().unwrap().dot().unwrap(), g("ese"));
        assert!(Gallery::empty().dot().is_err());

        let w = word(CartanType::A, 1, &[1]);
        let e = w.datum().identity();
        assert!(matches!(TreeIndex::xi(&w, &e), TreeIndex::Node { s: false, .. }));
        assert!(matches!(TreeIndex::rho(&w, &e), TreeIndex::Node { s: true, .. }));
        let w0 = word(CartanType::A, 1, &[]);
        assert_eq!(TreeIndex::rho(&w0, &e), TreeIndex::Leaf);
        let t = TreeIndex::from_bits(3, 0b1010011);
        assert_eq!(t.num_labels(), 7);
        assert_eq!(t.depth(), 3);
    }

    #[test]
    fn alternation_example() {
        let w = word(CartanType::A, 1, &[1, 1]);
        let a = Root::simple(1, 1);
        assert!(check_alternation(&w.walls(g("ss")), &a));
    }

    #[test]
    fn braden_fiber_size() {
        let w = word(CartanType::A, 7, &[3, 2, 1, 5, 4, 3, 2, 6, 5, 4, 3, 7, 6, 5]);
        let x = w.datum().word_to_element(&[2, 3, 2, 5, 6, 5]).unwrap();
        assert_eq!(w.fiber(&x).len(), 29);
    }
}
