//! Finite set-theoretic solutions of the Yang-Baxter equation, biquandles and
//! virtual pairs.

use std::fmt;

use thiserror::Error;

use crate::perm::Perm;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cell ({x},{y}) holds ({z},{w}), outside 0..{n}")]
    OutOfRange { x: usize, y: usize, z: usize, w: usize, n: usize },
    #[error("table has {got} cells, expected {expected}")]
    BadShape { got: usize, expected: usize },
    #[error("not a bijection: ({0},{1}) and ({2},{3}) have the same image")]
    NotBijective(usize, usize, usize, usize),
    #[error("Yang-Baxter equation fails on ({0},{1},{2})")]
    YangBaxter(usize, usize, usize),
    #[error("left invertibility fails: x={x}, z={z} has {count} solutions y")]
    LeftInvertibility { x: usize, z: usize, count: usize },
    #[error("right invertibility fails: y={y}, w={w} has {count} solutions x")]
    RightInvertibility { y: usize, w: usize, count: usize },
    #[error("element {x} has {count} fixed partners")]
    FixedPartner { x: usize, count: usize },
    #[error("element {y} is the fixed partner of {count} elements")]
    FixedPartnerNotBijective { y: usize, count: usize },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("beta is not involutive at ({0},{1})")]
    NotInvolutive(usize, usize),
    #[error("mixed relation fails on ({0},{1},{2})")]
    MixedRelation(usize, usize, usize),
    #[error("permutation is not an automorphism: fails at ({0},{1})")]
    NotAutomorphism(usize, usize),
    #[error("unknown solution name '{0}'")]
    UnknownName(String),
    #[error("{0}")]
    Invalid(String),
}

/// A map `X x X -> X x X` on `X = {0..n-1}`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionTable {
    n: usize,
    cells: Vec<(u8, u8)>,
}

impl SolutionTable {
    pub fn new(n: usize, cells: Vec<(usize, usize)>) -> Result<Self, AlgebraError> {
        if cells.len() != n * n {
            return Err(AlgebraError::BadShape { got: cells.len(), expected: n * n });
        }
        for (i, &(z, w)) in cells.iter().enumerate() {
            if z >= n || w >= n {
                return Err(AlgebraError::OutOfRange { x: i / n, y: i % n, z, w, n });
            }
        }
        let cells = cells.into_iter().map(|(z, w)| (z as u8, w as u8)).collect();
        Ok(Self { n, cells })
    }

    pub fn from_fn<F>(n: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> (usize, usize),
    {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (z, w) = f(x, y);
                assert!(z < n && w < n, "from_fn produced out-of-range value");
                cells.push((z as u8, w as u8));
            }
        }
        Self { n, cells }
    }

    pub(crate) fn from_raw(n: usize, cells: Vec<(u8, u8)>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        Self { n, cells }
    }

    pub fn flip(n: usize) -> Self {
        Self::from_fn(n, |x, y| (y, x))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        let (z, w) = self.cells[x * self.n + y];
        (z as usize, w as usize)
    }

    #[inline]
    pub fn first(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y].0 as usize
    }

    #[inline]
    pub fn second(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y].1 as usize
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells.iter().map(|&(z, w)| (z as usize, w as usize))
    }

    pub fn is_bijective(&self) -> bool {
        self.bijection_witness().is_none()
    }

    fn bijection_witness(&self) -> Option<AlgebraError> {
        let n = self.n;
        let mut seen = vec![usize::MAX; n * n];
        for (i, (z, w)) in self.cells().enumerate() {
            let k = z * n + w;
            if seen[k] != usize::MAX {
                let j = seen[k];
                return Some(AlgebraError::NotBijective(j / n, j % n, i / n, i % n));
            }
            seen[k] = i;
        }
        None
    }

    /// The inverse map, if the table is a bijection.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut cells = vec![(u8::MAX, u8::MAX); n * n];
        for x in 0..n {
            for y in 0..n {
                let (z, w) = self.apply(x, y);
                if cells[z * n + w].0 != u8::MAX {
                    return None;
                }
                cells[z * n + w] = (x as u8, y as u8);
            }
        }
        Some(Self { n, cells })
    }

    pub fn compose(&self, other: &Self) -> Self {
        // (self o other)(x,y) = self(other(x,y))
        Self::from_fn(self.n, |x, y| {
            let (u, v) = other.apply(x, y);
            self.apply(u, v)
        })
    }

    pub fn is_involutive(&self) -> bool {
        self.involution_witness().is_none()
    }

    fn involution_witness(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                let (z, w) = self.apply(x, y);
                if self.apply(z, w) != (x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// First triple on which the braid relation fails.
    pub fn yang_baxter_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !ybe_holds(self, self, self, x, y, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// `phi` applied as a relabeling: the result `t'` satisfies
    /// `t'(phi x, phi y) = (phi x (t(x,y)))`.
    pub fn relabel(&self, phi: &Perm) -> Self {
        let n = self.n;
        let mut cells = vec![(0u8, 0u8); n * n];
        for x in 0..n {
            for y in 0..n {
                let (z, w) = self.apply(x, y);
                cells[phi.apply(x) * n + phi.apply(y)] = (phi.apply(z) as u8, phi.apply(w) as u8);
            }
        }
        Self { n, cells }
    }

    /// Serialized table, used as the canonical-form alphabet.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.cells.iter().flat_map(|&(z, w)| [z, w]).collect()
    }

    pub fn from_bytes(n: usize, bytes: &[u8]) -> Result<Self, AlgebraError> {
        if bytes.len() != 2 * n * n {
            return Err(AlgebraError::BadShape { got: bytes.len() / 2, expected: n * n });
        }
        let cells = bytes.chunks(2).map(|c| (c[0] as usize, c[1] as usize)).collect();
        Self::new(n, cells)
    }
}

impl fmt::Debug for SolutionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SolutionTable(n={}; ", self.n)?;
        for x in 0..self.n {
            if x > 0 {
                write!(f, " | ")?;
            }
            for y in 0..self.n {
                let (z, w) = self.apply(x, y);
                write!(f, "{z},{w} ")?;
            }
        }
        write!(f, ")")
    }
}

/// `(id x a)(b x id)(id x c) = (c x id)(id x b)(a x id)` on `(x,y,z)`, with
/// `a` acting on the right pair first.
///
/// With `a = b = c` this is the braid relation; the mixed relation of a
/// virtual pair is `(a,b,c) = (beta, S, beta)`.
#[inline]
pub(crate) fn ybe_holds(
    a: &SolutionTable,
    b: &SolutionTable,
    c: &SolutionTable,
    x: usize,
    y: usize,
    z: usize,
) -> bool {
    // left side: (1 x a)(b x 1)(1 x c)... read right to left: c on (y,z) first.
    let (y1, z1) = c.apply(y, z);
    let (x2, y2) = b.apply(x, y1);
    let (y3, z3) = a.apply(y2, z1);
    // right side: (c x 1)(1 x b)(a x 1): a on (x,y) first.
    let (x1, y1r) = a.apply(x, y);
    let (y2r, z2r) = b.apply(y1r, z);
    let (x3r, y3r) = c.apply(x1, y2r);
    (x2, y3, z3) == (x3r, y3r, z2r)
}

/// Checks bijectivity and the braid relation.
pub fn check_yb(table: &SolutionTable) -> bool {
    table.is_bijective() && table.yang_baxter_witness().is_none()
}

/// A biquandle: a non-degenerate solution with the fixed-partner map `s`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Biquandle {
    table: SolutionTable,
    s: Vec<usize>,
}

impl Biquandle {
    pub fn table(&self) -> &SolutionTable {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.n
    }

    /// The fixed partner map: `sigma(x, s(x)) = (x, s(x))`.
    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        self.table.apply(x, y)
    }

    pub fn first(&self, x: usize, y: usize) -> usize {
        self.table.first(x, y)
    }

    pub fn second(&self, x: usize, y: usize) -> usize {
        self.table.second(x, y)
    }

    /// Connectivity of the biquandle alone: writing `S(x,y) = (y',x')`,
    /// `x ~ x'` and `y ~ y'`.
    pub fn components(&self) -> Partition {
        let n = self.n();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for y in 0..n {
                let (y1, x1) = self.apply(x, y);
                uf.union(x, x1);
                uf.union(y, y1);
            }
        }
        Partition::from_union_find(&mut uf)
    }

    pub fn is_connected(&self) -> bool {
        self.components().num_classes() <= 1
    }
}

impl fmt::Debug for Biquandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Biquandle({:?}, s={:?})", self.table, self.s)
    }
}

/// Validates every birack and biquandle axiom, reporting the first witness.
pub fn as_biquandle(table: SolutionTable) -> Result<Biquandle, AlgebraError> {
    let n = table.n;
    if let Some(e) = table.bijection_witness() {
        return Err(e);
    }
    // left invertibility: y -> S1(x,y) is a bijection for every x
    for x in 0..n {
        let mut count = vec![0usize; n];
        for y in 0..n {
            count[table.first(x, y)] += 1;
        }
        if let Some(z) = (0..n).find(|&z| count[z] != 1) {
            return Err(AlgebraError::LeftInvertibility { x, z, count: count[z] });
        }
    }
    for y in 0..n {
        let mut count = vec![0usize; n];
        for x in 0..n {
            count[table.second(x, y)] += 1;
        }
        if let Some(w) = (0..n).find(|&w| count[w] != 1) {
            return Err(AlgebraError::RightInvertibility { y, w, count: count[w] });
        }
    }
    if let Some((x, y, z)) = table.yang_baxter_witness() {
        return Err(AlgebraError::YangBaxter(x, y, z));
    }
    let mut s = vec![0usize; n];
    let mut hits = vec![0usize; n];
    for x in 0..n {
        let partners: Vec<usize> = (0..n).filter(|&y| table.apply(x, y) == (x, y)).collect();
        if partners.len() != 1 {
            return Err(AlgebraError::FixedPartner { x, count: partners.len() });
        }
        s[x] = partners[0];
        hits[partners[0]] += 1;
    }
    if let Some(y) = (0..n).find(|&y| hits[y] != 1) {
        return Err(AlgebraError::FixedPartnerNotBijective { y, count: hits[y] });
    }
    Ok(Biquandle { table, s })
}

/// Two biquandles on the same set forming a virtual pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VirtualPair {
    s: Biquandle,
    beta: Biquandle,
    s_inv: SolutionTable,
}

impl fmt::Debug for VirtualPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VirtualPair(S={:?}, beta={:?})", self.s.table, self.beta.table)
    }
}

fn virtual_pair_witness(s: &Biquandle, beta: &Biquandle) -> Result<(), AlgebraError> {
    if s.n() != beta.n() {
        return Err(AlgebraError::SizeMismatch(s.n(), beta.n()));
    }
    if let Some((x, y)) = beta.table.involution_witness() {
        return Err(AlgebraError::NotInvolutive(x, y));
    }
    let n = s.n();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !mixed_holds(&s.table, &beta.table, x, y, z) {
                    return Err(AlgebraError::MixedRelation(x, y, z));
                }
            }
        }
    }
    Ok(())
}

/// `(1 x beta)(S x 1)(1 x beta) = (beta x 1)(1 x S)(beta x 1)` at `(x,y,z)`.
#[inline]
pub(crate) fn mixed_holds(s: &SolutionTable, beta: &SolutionTable, x: usize, y: usize, z: usize) -> bool {
    ybe_holds(beta, s, beta, x, y, z)
}

pub fn check_virtual_pair(s: &Biquandle, beta: &Biquandle) -> Result<bool, AlgebraError> {
    match virtual_pair_witness(s, beta) {
        Ok(()) => Ok(true),
        Err(AlgebraError::SizeMismatch(a, b)) => Err(AlgebraError::SizeMismatch(a, b)),
        Err(_) => Ok(false),
    }
}

impl VirtualPair {
    pub fn new(s: Biquandle, beta: Biquandle) -> Result<Self, AlgebraError> {
        virtual_pair_witness(&s, &beta)?;
        let s_inv = s.table.inverse().expect("biquandle tables are bijective");
        Ok(Self { s, beta, s_inv })
    }

    pub fn from_tables(s: SolutionTable, beta: SolutionTable) -> Result<Self, AlgebraError> {
        Self::new(as_biquandle(s)?, as_biquandle(beta)?)
    }

    /// Construction without re-validation, for callers that already checked
    /// the axioms (the enumerator).
    pub(crate) fn new_unchecked(s: Biquandle, beta: Biquandle) -> Self {
        let s_inv = s.table.inverse().expect("biquandle tables are bijective");
        Self { s, beta, s_inv }
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    pub fn s(&self) -> &Biquandle {
        &self.s
    }

    pub fn beta(&self) -> &Biquandle {
        &self.beta
    }

    /// Precomputed inverse of `S`, used at negative crossings.
    pub fn s_inv(&self) -> &SolutionTable {
        &self.s_inv
    }

    pub fn relabel(&self, phi: &Perm) -> Self {
        let s = as_biquandle(self.s.table.relabel(phi)).expect("relabeling preserves axioms");
        let beta = as_biquandle(self.beta.table.relabel(phi)).expect("relabeling preserves axioms");
        Self::new_unchecked(s, beta)
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).num_classes() <= 1
    }
}

/// `beta(x,y) = (a^{-1} y, a x)`.
pub fn beta_from_aut(s: &Biquandle, a: &Perm) -> Result<SolutionTable, AlgebraError> {
    if a.len() != s.n() {
        return Err(AlgebraError::SizeMismatch(s.n(), a.len()));
    }
    if let Some((x, y)) = automorphism_witness(s.table(), a) {
        return Err(AlgebraError::NotAutomorphism(x, y));
    }
    Ok(induced_involution(a))
}

pub(crate) fn induced_involution(a: &Perm) -> SolutionTable {
    let inv = a.inverse();
    SolutionTable::from_fn(a.len(), |x, y| (inv.apply(y), a.apply(x)))
}

/// First cell where `(a x a) S = S (a x a)` fails.
pub(crate) fn automorphism_witness(t: &SolutionTable, a: &Perm) -> Option<(usize, usize)> {
    let n = t.n();
    for x in 0..n {
        for y in 0..n {
            let (z, w) = t.apply(x, y);
            if t.apply(a.apply(x), a.apply(y)) != (a.apply(z), a.apply(w)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// All automorphisms of `S`, by a depth-first search over partial
/// permutations that rejects a branch at the first violated cell.
pub fn automorphisms(s: &Biquandle) -> Vec<Perm> {
    table_automorphisms(s.table())
}

pub(crate) fn table_automorphisms(t: &SolutionTable) -> Vec<Perm> {
    let n = t.n();
    let mut out = Vec::new();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    aut_search(t, 0, &mut img, &mut used, &mut out);
    out
}

fn aut_search(t: &SolutionTable, k: usize, img: &mut [usize], used: &mut [bool], out: &mut Vec<Perm>) {
    let n = t.n();
    if k == n {
        out.push(Perm::from_vec(img.to_vec()).expect("complete injective map"));
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        img[k] = v;
        used[v] = true;
        if partial_aut_ok(t, img, k) {
            aut_search(t, k + 1, img, used, out);
        }
        used[v] = false;
        img[k] = usize::MAX;
    }
}

/// Check every cell whose inputs and outputs are all already mapped and
/// that involves the newly mapped point `k`.
fn partial_aut_ok(t: &SolutionTable, img: &[usize], k: usize) -> bool {
    for x in 0..=k {
        for y in 0..=k {
            if x != k && y != k {
                continue;
            }
            let (z, w) = t.apply(x, y);
            let (a, b) = t.apply(img[x], img[y]);
            if z <= k && a != img[z] {
                return false;
            }
            if w <= k && b != img[w] {
                return false;
            }
        }
    }
    true
}

/// A partition of the colors; class indices are `0..k` in order of first
/// appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    class_of: Vec<usize>,
}

impl Partition {
    pub(crate) fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut class_of = Vec::with_capacity(n);
        for x in 0..n {
            let r = uf.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            class_of.push(label[r]);
        }
        Self { class_of }
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}

/// Finest partition generated by: if `S(x,y) = (y',x')` and
/// `beta(x,y) = (y'',x'')` then `x ~ x' ~ x''` and `y ~ y' ~ y''`.
/// A strand keeps its connected component through every crossing.
pub fn connected_components(vp: &VirtualPair) -> Partition {
    table_pair_components(&vp.s.table, &vp.beta.table)
}

pub(crate) fn table_pair_components(s: &SolutionTable, beta: &SolutionTable) -> Partition {
    let n = s.n();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        for y in 0..n {
            let (y1, x1) = s.apply(x, y);
            let (y2, x2) = beta.apply(x, y);
            uf.union(x, x1);
            uf.union(x, x2);
            uf.union(y, y1);
            uf.union(y, y2);
        }
    }
    Partition::from_union_find(&mut uf)
}

/// Named constructors. Colors are residues `0..n-1`.
pub fn make_named(name: &str, n: usize) -> Result<SolutionTable, AlgebraError> {
    let bad = |why: &str| AlgebraError::Invalid(format!("{name} with n={n}: {why}"));
    if n == 0 {
        return Err(bad("n must be positive"));
    }
    let t = match name {
        "flip" => SolutionTable::flip(n),
        "antiflip" => SolutionTable::from_fn(n, |x, y| ((y + 1) % n, (x + 1) % n)),
        // biAlexander-type switch S(x,y) = (y+1, x-1); involutive for every n.
        "shift" => SolutionTable::from_fn(n, |x, y| ((y + 1) % n, (x + n - 1) % n)),
        "dihedral" => SolutionTable::from_fn(n, |x, y| (y, (2 * y + n - x % n) % n)),
        "paper-z4" | "z4" => {
            if n != 4 {
                return Err(bad("only defined on Z/4"));
            }
            SolutionTable::from_fn(4, |x, y| ((4 - y) % 4, (x + 2 * y) % 4))
        }
        "z4-beta" => {
            if n != 4 {
                return Err(bad("only defined on Z/4"));
            }
            SolutionTable::from_fn(4, |x, y| {
                if x % 2 == 1 || y % 2 == 1 {
                    (y, x)
                } else {
                    ((y + 2) % 4, (x + 2) % 4)
                }
            })
        }
        "q248" => {
            if n != 4 {
                return Err(bad("only defined on 4 elements"));
            }
            quandle_solution(4, |x, y| Q248_RIGHT_MULT[y][x])
        }
        "q248-beta" => {
            if n != 4 {
                return Err(bad("only defined on 4 elements"));
            }
            // beta(x,y) = (l_x(y), l_y(x)) with l_1 = l_2 = (1 2), l_3 = l_4 = (1 2)(3 4)
            let l = |x: usize, v: usize| -> usize {
                let swapped12 = [1, 0, 2, 3][v];
                if x < 2 {
                    swapped12
                } else {
                    [1, 0, 3, 2][v]
                }
            };
            SolutionTable::from_fn(4, |x, y| (l(x, y), l(y, x)))
        }
        "k3-s4" => {
            if n != 4 {
                return Err(bad("only defined on 4 elements"));
            }
            let cells = K3_S4.iter().map(|&(z, w)| (z - 1, w - 1)).collect();
            SolutionTable::new(4, cells)?
        }
        _ => return Err(AlgebraError::UnknownName(name.to_string())),
    };
    Ok(t)
}

/// Virtual pairs by name: the fixed examples `paper-z4`, `q248`, `k3-s4`,
/// `self-linking`, or `<S><n>-<beta><n>` such as `flip2-flip2`, where the
/// second part may be `i<n>(<cycles>)`, the involution induced by an
/// automorphism of `S` written in 1-based cycle notation (`i3(1,2,3)`,
/// `i3()` for the identity).
pub fn named_pair(name: &str) -> Result<VirtualPair, AlgebraError> {
    let (s, beta) = match name {
        "paper-z4" => (make_named("paper-z4", 4)?, make_named("z4-beta", 4)?),
        "q248" | "pair248" => (make_named("q248", 4)?, make_named("q248-beta", 4)?),
        "k3-s4" => (make_named("k3-s4", 4)?, SolutionTable::flip(4)),
        "self-linking" => (SolutionTable::flip(2), make_named("antiflip", 2)?),
        _ => {
            let unknown = || AlgebraError::UnknownName(name.to_string());
            let (left, right) = split_pair_name(name).ok_or_else(unknown)?;
            let (sname, n) = split_size(left).ok_or_else(unknown)?;
            let s = make_named(sname, n)?;
            let beta = if let Some(cycles) = right.strip_prefix('i').and_then(|r| parse_induced(r, n)) {
                let a = cycles.ok_or_else(|| AlgebraError::Invalid(format!("bad cycle notation in '{name}'")))?;
                beta_from_aut(&as_biquandle(s.clone())?, &a)?
            } else {
                let (bname, m) = split_size(right).ok_or_else(unknown)?;
                if m != n {
                    return Err(AlgebraError::SizeMismatch(n, m));
                }
                make_named(bname, m)?
            };
            (s, beta)
        }
    };
    VirtualPair::from_tables(s, beta)
}

fn split_pair_name(name: &str) -> Option<(&str, &str)> {
    name.char_indices().filter(|&(_, c)| c == '-').map(|(i, _)| (&name[..i], &name[i + 1..])).find(|(l, r)| {
        split_size(l).is_some() && !r.is_empty()
    })
}

fn split_size(s: &str) -> Option<(&str, usize)> {
    let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if cut == 0 || cut == s.len() {
        return None;
    }
    Some((&s[..cut], s[cut..].parse().ok()?))
}

/// `<n>(<c1>)(<c2>)...`; the outer `None` means "not this form".
fn parse_induced(r: &str, n: usize) -> Option<Option<Perm>> {
    let open = r.find('(')?;
    let m: usize = r[..open].parse().ok()?;
    if m != n {
        return Some(None);
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for chunk in r[open..].split(')').filter(|c| !c.is_empty()) {
        let body = match chunk.strip_prefix('(') {
            Some(b) => b,
            None => return Some(None),
        };
        if body.trim().is_empty() {
            continue;
        }
        let mut c = Vec::new();
        for v in body.split(',') {
            match v.trim().parse::<usize>() {
                Ok(v) if v >= 1 => c.push(v - 1),
                _ => return Some(None),
            }
        }
        cycles.push(c);
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Some(Perm::from_cycles(n, &refs))
}

pub const NAMED_PAIRS: &[&str] = &[
    "paper-z4",
    "q248",
    "k3-s4",
    "self-linking",
    "flip2-flip2",
    "antiflip2-flip2",
    "dihedral3-i3()",
    "dihedral3-i3(2,3)",
    "dihedral3-i3(1,2,3)",
];

/// `S(x,y) = (y, x |> y)`.
pub fn quandle_solution<F: Fn(usize, usize) -> usize>(n: usize, op: F) -> SolutionTable {
    SolutionTable::from_fn(n, |x, y| (y, op(x, y)))
}

// x |> 1 = x |> 2 is the transposition (3 4); x |> 3 = x |> 4 is (1 2). 0-based.
const Q248_RIGHT_MULT: [[usize; 4]; 4] = [[0, 1, 3, 2], [0, 1, 3, 2], [1, 0, 2, 3], [1, 0, 2, 3]];

// The explicit 4-element biquandle used to color K3, 1-based, row-major.
const K3_S4: [(usize, usize); 16] = [
    (1, 1), (2, 4), (4, 2), (3, 3),
    (3, 4), (4, 1), (2, 3), (1, 2),
    (4, 3), (3, 2), (1, 4), (2, 1),
    (2, 2), (1, 3), (3, 1), (4, 4),
];

pub const NAMED_SOLUTIONS: &[&str] =
    &["flip", "antiflip", "shift", "dihedral", "paper-z4", "z4-beta", "q248", "q248-beta", "k3-s4"];

#[cfg(test)]
mod tests {
    use super::*;

    fn bq(name: &str, n: usize) -> Biquandle {
        as_biquandle(make_named(name, n).unwrap()).unwrap()
    }

    #[test]
    fn flip_is_a_solution() {
        assert!(check_yb(&SolutionTable::flip(2)));
        assert!(check_yb(&SolutionTable::flip(5)));
    }

    #[test]
    fn z4_example_is_a_solution() {
        assert!(check_yb(&make_named("paper-z4", 4).unwrap()));
    }

    #[test]
    fn constant_second_output_is_rejected() {
        let t = SolutionTable::from_fn(2, |x, _| (x, x));
        assert!(!check_yb(&t));
        assert!(matches!(as_biquandle(t), Err(AlgebraError::NotBijective(..))));
    }

    #[test]
    fn out_of_range_cell_is_named() {
        let err = SolutionTable::new(2, vec![(0, 0), (1, 2), (1, 0), (1, 1)]).unwrap_err();
        assert_eq!(err, AlgebraError::OutOfRange { x: 0, y: 1, z: 1, w: 2, n: 2 });
    }

    #[test]
    fn fixed_partner_maps() {
        assert_eq!(bq("flip", 2).s(), &[0, 1]);
        // antiflip: S(x,y) = (y+1, x+1) = (x,y) iff y = x+1
        assert_eq!(bq("antiflip", 2).s(), &[1, 0]);
        // S(x,y) = (-y, x+2y) on Z/4: -y = x and x+2y = y, i.e. y = -x
        assert_eq!(bq("paper-z4", 4).s(), &[0, 3, 2, 1]);
    }

    #[test]
    fn virtual_pairs_from_examples() {
        assert!(check_virtual_pair(&bq("flip", 2), &bq("flip", 2)).unwrap());
        assert!(check_virtual_pair(&bq("paper-z4", 4), &bq("z4-beta", 4)).unwrap());
        assert!(check_virtual_pair(&bq("q248", 4), &bq("q248-beta", 4)).unwrap());
        assert!(check_virtual_pair(&bq("k3-s4", 4), &bq("flip", 4)).unwrap());
        assert!(matches!(
            check_virtual_pair(&bq("flip", 2), &bq("flip", 3)),
            Err(AlgebraError::SizeMismatch(2, 3))
        ));
    }

    #[test]
    fn flip_with_shift_on_three_elements() {
        // Brute-force over the 27 triples, independently of mixed_holds.
        let s = bq("flip", 3);
        let b = bq("shift", 3);
        let beta = |x: usize, y: usize| ((y + 1) % 3, (x + 2) % 3);
        let mut ok = true;
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    // left: (1 x beta)(S x 1)(1 x beta)
                    let (y1, z1) = beta(y, z);
                    let (x2, y2) = (y1, x);
                    let (y3, z3) = beta(y2, z1);
                    // right: (beta x 1)(1 x S)(beta x 1)
                    let (a1, b1) = beta(x, y);
                    let (b2, c2) = (z, b1);
                    let (a3, b3) = beta(a1, b2);
                    ok &= (x2, y3, z3) == (a3, b3, c2);
                }
            }
        }
        assert_eq!(check_virtual_pair(&s, &b).unwrap(), ok);
        assert!(ok);
    }

    #[test]
    fn aut_induced_beta() {
        let d3 = bq("dihedral", 3);
        let id = Perm::identity(3);
        assert_eq!(beta_from_aut(&d3, &id).unwrap(), SolutionTable::flip(3));
        let cyc = Perm::from_vec(vec![1, 2, 0]).unwrap();
        let beta = beta_from_aut(&d3, &cyc).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(beta.apply(x, y), ((y + 2) % 3, (x + 1) % 3));
            }
        }
        let b = as_biquandle(beta).unwrap();
        assert!(check_virtual_pair(&d3, &b).unwrap());

        let t = Perm::from_vec(vec![1, 0]).unwrap();
        let beta = beta_from_aut(&bq("flip", 2), &t).unwrap();
        assert_eq!(beta, make_named("antiflip", 2).unwrap());
    }

    #[test]
    fn non_automorphism_is_rejected() {
        // swapping 0 and 1 sends the fixed cell (0,0) to (1,1), which is not fixed
        let s = bq("paper-z4", 4);
        let a = Perm::from_vec(vec![1, 0, 2, 3]).unwrap();
        assert!(matches!(beta_from_aut(&s, &a), Err(AlgebraError::NotAutomorphism(..))));
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphisms(&bq("dihedral", 3)).len(), 6);
        assert_eq!(automorphisms(&bq("flip", 2)).len(), 2);
        assert_eq!(automorphisms(&bq("flip", 4)).len(), 24);
    }

    #[test]
    fn automorphisms_form_a_group() {
        for (name, n) in [("dihedral", 3), ("dihedral", 4), ("paper-z4", 4), ("q248", 4), ("shift", 3)] {
            let auts = automorphisms(&bq(name, n));
            for a in &auts {
                assert!(auts.contains(&a.inverse()));
                for b in &auts {
                    assert!(auts.contains(&a.compose(b)));
                }
            }
        }
    }

    #[test]
    fn components_of_small_pairs() {
        let vp = |a: &str, b: &str| VirtualPair::new(bq(a, 2), bq(b, 2)).unwrap();
        assert_eq!(connected_components(&vp("flip", "flip")).num_classes(), 2);
        assert_eq!(connected_components(&vp("antiflip", "flip")).num_classes(), 1);
        // x ~ x+2y and y ~ -y keep parity: {0,2} and {1,3}
        let z4 = VirtualPair::new(bq("paper-z4", 4), bq("z4-beta", 4)).unwrap();
        assert_eq!(connected_components(&z4).classes(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn dihedral_is_the_expected_quandle() {
        let t = make_named("dihedral", 3).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(t.apply(x, y), (y, (2 * y + 3 - x) % 3));
            }
        }
        assert!(matches!(make_named("nope", 3), Err(AlgebraError::UnknownName(_))));
    }
}
