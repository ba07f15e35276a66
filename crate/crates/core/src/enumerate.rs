//! Enumeration of small biquandles, involutive solutions and virtual pairs up
//! to isomorphism.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{
    as_biquandle, induced_involution, mixed_holds, table_automorphisms, table_pair_components, Biquandle,
    Partition, SolutionTable, VirtualPair,
};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("size {n} outside the supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },
    #[error("size {n} is long-running and needs explicit opt-in")]
    LongRunning { n: usize },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

/// Lexicographically minimal serialization over all relabelings.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s.trim()).ok().map(Self)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Key({})", self.to_hex())
    }
}

#[derive(Debug, Clone)]
pub struct IsoClass<T> {
    pub representative: T,
    pub key: CanonicalKey,
}

fn min_relabeling<'a, I>(tables: &[&SolutionTable], perms: I) -> (Vec<u8>, Perm)
where
    I: IntoIterator<Item = &'a Perm>,
{
    let mut best: Option<(Vec<u8>, Perm)> = None;
    for phi in perms {
        let mut bytes = Vec::new();
        for t in tables {
            bytes.extend(t.relabel(phi).to_bytes());
        }
        if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
            best = Some((bytes, phi.clone()));
        }
    }
    best.expect("at least one permutation")
}

pub fn table_key(t: &SolutionTable) -> CanonicalKey {
    CanonicalKey(min_relabeling(&[t], Perm::all(t.n()).iter()).0)
}

pub fn pair_key(vp: &VirtualPair) -> CanonicalKey {
    let perms = Perm::all(vp.n());
    CanonicalKey(min_relabeling(&[vp.s().table(), vp.beta().table()], perms.iter()).0)
}

/// Canonical relabeling of a single table.
pub fn canonical_table(t: &SolutionTable) -> SolutionTable {
    let (_, phi) = min_relabeling(&[t], Perm::all(t.n()).iter());
    t.relabel(&phi)
}

/// A bijection `phi` with `(phi x phi) S = S' (phi x phi)` and likewise for
/// beta, if one exists.
pub fn are_isomorphic(p: &VirtualPair, q: &VirtualPair) -> Result<Option<Perm>, EnumerateError> {
    if p.n() != q.n() {
        return Err(EnumerateError::SizeMismatch(p.n(), q.n()));
    }
    let n = p.n();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(iso_search(p, q, 0, &mut img, &mut used))
}

fn iso_search(p: &VirtualPair, q: &VirtualPair, k: usize, img: &mut [usize], used: &mut [bool]) -> Option<Perm> {
    let n = p.n();
    if k == n {
        return Perm::from_vec(img.to_vec());
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        img[k] = v;
        used[v] = true;
        let ok = [(p.s().table(), q.s().table()), (p.beta().table(), q.beta().table())]
            .iter()
            .all(|(a, b)| partial_iso_ok(a, b, img, k));
        if ok {
            if let Some(phi) = iso_search(p, q, k + 1, img, used) {
                return Some(phi);
            }
        }
        used[v] = false;
        img[k] = usize::MAX;
    }
    None
}

fn partial_iso_ok(a: &SolutionTable, b: &SolutionTable, img: &[usize], k: usize) -> bool {
    for x in 0..=k {
        for y in 0..=k {
            if x != k && y != k {
                continue;
            }
            let (z, w) = a.apply(x, y);
            let (z2, w2) = b.apply(img[x], img[y]);
            if (z <= k && img[z] != z2) || (w <= k && img[w] != w2) {
                return false;
            }
        }
    }
    true
}

const UNSET: u8 = u8::MAX;

enum TripleState {
    Holds,
    Fails,
    Blocked(usize),
}

/// Depth-first filler for the `n x n` cells of a non-degenerate solution.
///
/// Rows of the first projection and columns of the second projection are
/// kept injective (left and right invertibility) and outputs are kept
/// distinct. Every braid triple waits on the first unassigned cell its
/// evaluation needs and is re-examined when that cell is filled.
#[derive(Clone)]
struct CellSearch {
    n: usize,
    cells: Vec<(u8, u8)>,
    row_first: Vec<u32>,
    col_second: Vec<u32>,
    out_used: Vec<bool>,
    involutive: bool,
    biquandle: bool,
    fix_row: Vec<u8>,
    fix_col: Vec<u8>,
    waiting: Vec<Vec<u32>>,
    pushes: Vec<u32>,
}

struct Assignment {
    cells: [(usize, usize); 2],
    mark: usize,
}

impl CellSearch {
    fn new(n: usize, involutive: bool, biquandle: bool) -> Self {
        let mut waiting = vec![Vec::new(); n * n];
        for t in 0..n * n * n {
            // with nothing assigned, each triple first needs S(y,z)
            waiting[t % (n * n)].push(t as u32);
        }
        Self {
            n,
            cells: vec![(UNSET, UNSET); n * n],
            row_first: vec![0; n],
            col_second: vec![0; n],
            out_used: vec![false; n * n],
            involutive,
            biquandle,
            fix_row: vec![0; n],
            fix_col: vec![0; n],
            waiting,
            pushes: Vec::new(),
        }
    }

    fn can_place(&self, x: usize, y: usize, z: usize, w: usize) -> bool {
        let n = self.n;
        self.cells[x * n + y].0 == UNSET
            && self.row_first[x] & (1 << z) == 0
            && self.col_second[y] & (1 << w) == 0
            && !self.out_used[z * n + w]
            && (!self.biquandle || (x, y) != (z, w) || (self.fix_row[x] == 0 && self.fix_col[y] == 0))
    }

    fn place(&mut self, x: usize, y: usize, z: usize, w: usize) {
        let n = self.n;
        self.cells[x * n + y] = (z as u8, w as u8);
        self.row_first[x] |= 1 << z;
        self.col_second[y] |= 1 << w;
        self.out_used[z * n + w] = true;
        if (x, y) == (z, w) {
            self.fix_row[x] += 1;
            self.fix_col[y] += 1;
        }
    }

    fn unplace(&mut self, x: usize, y: usize) {
        let n = self.n;
        let (z, w) = self.cells[x * n + y];
        let (z, w) = (z as usize, w as usize);
        self.cells[x * n + y] = (UNSET, UNSET);
        self.row_first[x] &= !(1 << z);
        self.col_second[y] &= !(1 << w);
        self.out_used[z * n + w] = false;
        if (x, y) == (z, w) {
            self.fix_row[x] -= 1;
            self.fix_col[y] -= 1;
        }
    }

    #[inline]
    fn triple_state(&self, t: usize) -> TripleState {
        let n = self.n;
        let (x, y, z) = (t / (n * n), (t / n) % n, t % n);
        macro_rules! get {
            ($a:expr, $b:expr) => {{
                let c = $a * n + $b;
                match self.cells[c] {
                    (UNSET, _) => return TripleState::Blocked(c),
                    (p, q) => (p as usize, q as usize),
                }
            }};
        }
        let (y1, z1) = get!(y, z);
        let (x2, y2) = get!(x, y1);
        let (y3, z3) = get!(y2, z1);
        let (a1, b1) = get!(x, y);
        let (b2, c2) = get!(b1, z);
        let (a3, b3) = get!(a1, b2);
        if (x2, y3, z3) == (a3, b3, c2) {
            TripleState::Holds
        } else {
            TripleState::Fails
        }
    }

    /// Re-examines the triples waiting on a freshly assigned cell.
    fn settle(&mut self, cell: usize) -> bool {
        let len = self.waiting[cell].len();
        for i in 0..len {
            let t = self.waiting[cell][i] as usize;
            match self.triple_state(t) {
                TripleState::Holds => {}
                TripleState::Fails => return false,
                TripleState::Blocked(next) => {
                    self.waiting[next].push(t as u32);
                    self.pushes.push(next as u32);
                }
            }
        }
        true
    }

    fn rollback(&mut self, mark: usize) {
        while self.pushes.len() > mark {
            let c = self.pushes.pop().expect("non-empty") as usize;
            self.waiting[c].pop();
        }
    }

    /// Places `(x,y) -> (z,w)` and, for involutive searches, the forced
    /// mirror cell, then checks every braid triple that became decidable.
    fn try_assign(&mut self, x: usize, y: usize, z: usize, w: usize) -> Option<Assignment> {
        if !self.can_place(x, y, z, w) {
            return None;
        }
        self.place(x, y, z, w);
        let mut cells = [(x, y), (x, y)];
        if self.involutive && (z, w) != (x, y) {
            if !self.can_place(z, w, x, y) {
                self.unplace(x, y);
                return None;
            }
            self.place(z, w, x, y);
            cells[1] = (z, w);
        }
        let a = Assignment { cells, mark: self.pushes.len() };
        let n = self.n;
        let ok = self.settle(x * n + y) && (cells[1] == cells[0] || self.settle(z * n + w));
        if !ok {
            self.undo(a);
            return None;
        }
        Some(a)
    }

    fn undo(&mut self, a: Assignment) {
        self.rollback(a.mark);
        if a.cells[1] != a.cells[0] {
            self.unplace(a.cells[1].0, a.cells[1].1);
        }
        self.unplace(a.cells[0].0, a.cells[0].1);
    }

    fn row_fixed_ok(&self, x: usize) -> bool {
        !self.biquandle || self.fix_row[x] == 1
    }

    fn next_cell(&self, from: usize) -> Option<usize> {
        (from..self.n * self.n).find(|&i| self.cells[i].0 == UNSET)
    }

    fn run<F: FnMut(&CellSearch)>(&mut self, from: usize, depth_limit: Option<usize>, depth: usize, emit: &mut F) {
        let n = self.n;
        let Some(i) = self.next_cell(from) else {
            if !self.biquandle || (0..n).all(|x| self.fix_row[x] == 1 && self.fix_col[x] == 1) {
                emit(self);
            }
            return;
        };
        if depth_limit == Some(depth) {
            emit(self);
            return;
        }
        let (x, y) = (i / n, i % n);
        for z in 0..n {
            for w in 0..n {
                let Some(a) = self.try_assign(x, y, z, w) else { continue };
                let row_done = (y + 1..n).all(|v| self.cells[x * n + v].0 != UNSET);
                if !row_done || self.row_fixed_ok(x) {
                    self.run(i + 1, depth_limit, depth + 1, emit);
                }
                self.undo(a);
            }
        }
    }

    fn table(&self) -> SolutionTable {
        SolutionTable::from_raw(self.n, self.cells.clone())
    }
}

/// All labelled solutions found by the cell search, split into independent
/// subtrees by the assignment of the first cells.
fn labelled_solutions(n: usize, involutive: bool, biquandle: bool) -> Vec<SolutionTable> {
    if n == 0 {
        return Vec::new();
    }
    let mut prefixes = Vec::new();
    let split_depth = if n >= 4 { 2 } else { 1 };
    CellSearch::new(n, involutive, biquandle).run(0, Some(split_depth), 0, &mut |s| prefixes.push(s.clone()));
    prefixes
        .into_par_iter()
        .flat_map_iter(|mut st| {
            let mut found = Vec::new();
            if st.next_cell(0).is_none() {
                found.push(st.table());
            } else {
                st.run(0, None, 0, &mut |s| found.push(s.table()));
            }
            found
        })
        .collect()
}

/// Canonical tables of `tables`, deduplicated and sorted by key.
fn dedupe_tables(tables: Vec<SolutionTable>) -> Vec<IsoClass<SolutionTable>> {
    let perms = tables.first().map(|t| Perm::all(t.n())).unwrap_or_default();
    let canon: BTreeMap<Vec<u8>, SolutionTable> = tables
        .par_iter()
        .map(|t| {
            let (bytes, phi) = min_relabeling(&[t], perms.iter());
            (bytes, t.relabel(&phi))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    canon.into_iter().map(|(k, t)| IsoClass { representative: t, key: CanonicalKey(k) }).collect()
}

fn check_range(n: usize, min: usize, max: usize) -> Result<(), EnumerateError> {
    if n < min || n > max {
        return Err(EnumerateError::SizeOutOfRange { n, min, max });
    }
    Ok(())
}

/// Biquandles on `n` elements up to isomorphism (`n <= 5`).
pub fn enumerate_biquandles(n: usize) -> Result<Vec<IsoClass<Biquandle>>, EnumerateError> {
    check_range(n, 1, 5)?;
    Ok(labelled_biquandle_classes(n))
}

fn labelled_biquandle_classes(n: usize) -> Vec<IsoClass<Biquandle>> {
    dedupe_tables(labelled_solutions(n, false, true))
        .into_iter()
        .map(|c| IsoClass {
            representative: as_biquandle(c.representative).expect("search output satisfies the axioms"),
            key: c.key,
        })
        .collect()
}

/// Every biquandle table on `0..n`, without identifying isomorphic ones.
pub fn labelled_biquandles(n: usize) -> Vec<SolutionTable> {
    labelled_solutions(n, false, true)
}

/// Labelled involutive non-degenerate solutions on `n` elements.
pub fn labelled_involutive(n: usize) -> Vec<Biquandle> {
    labelled_solutions(n, true, false)
        .into_iter()
        .map(|t| as_biquandle(t).expect("involutive non-degenerate solutions are biquandles"))
        .collect()
}

/// Involutive non-degenerate solutions up to isomorphism. With
/// `flip_compatible`, only those `beta` for which `(flip, beta)` is a
/// virtual pair. `n = 7` needs `allow_long`.
pub fn enumerate_involutive(
    n: usize,
    flip_compatible: bool,
    allow_long: bool,
) -> Result<Vec<IsoClass<Biquandle>>, EnumerateError> {
    check_range(n, 1, 7)?;
    if n >= 6 && !allow_long {
        return Err(EnumerateError::LongRunning { n });
    }
    let flip = SolutionTable::flip(n);
    let tables: Vec<SolutionTable> = labelled_solutions(n, true, false)
        .into_iter()
        .filter(|b| !flip_compatible || pair_is_compatible(&flip, b))
        .collect();
    Ok(dedupe_tables(tables)
        .into_iter()
        .map(|c| IsoClass {
            representative: as_biquandle(c.representative).expect("involutive solutions are biquandles"),
            key: c.key,
        })
        .collect())
}

fn pair_is_compatible(s: &SolutionTable, beta: &SolutionTable) -> bool {
    let n = s.n();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| mixed_holds(s, beta, x, y, z))))
}

/// Two biquandles on one set satisfying the mixed relation. When `beta` is
/// involutive this is a virtual pair.
#[derive(Clone, PartialEq, Eq)]
pub struct BiquandlePair {
    s: Biquandle,
    beta: Biquandle,
}

impl fmt::Debug for BiquandlePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiquandlePair(S={:?}, beta={:?})", self.s, self.beta)
    }
}

impl BiquandlePair {
    pub fn new(s: Biquandle, beta: Biquandle) -> Option<Self> {
        (s.n() == beta.n() && pair_is_compatible(s.table(), beta.table())).then_some(Self { s, beta })
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

    pub fn is_involutive(&self) -> bool {
        self.beta.table().is_involutive()
    }

    pub fn components(&self) -> Partition {
        table_pair_components(self.s.table(), self.beta.table())
    }

    pub fn is_connected(&self) -> bool {
        self.components().num_classes() <= 1
    }

    pub fn to_virtual_pair(&self) -> Option<VirtualPair> {
        VirtualPair::new(self.s.clone(), self.beta.clone()).ok()
    }

    pub fn key(&self) -> CanonicalKey {
        let perms = Perm::all(self.n());
        CanonicalKey(min_relabeling(&[self.s.table(), self.beta.table()], perms.iter()).0)
    }
}

impl From<VirtualPair> for BiquandlePair {
    fn from(vp: VirtualPair) -> Self {
        Self { s: vp.s().clone(), beta: vp.beta().clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// Every biquandle `beta` satisfying the mixed relation with `S`. This is
    /// the population counted by the census.
    All,
    /// Only involutive `beta`, that is, virtual pairs.
    Involutive,
    /// `beta = i_a` for `a` in `Aut(S)`, one per conjugacy class.
    AutInduced,
}

/// Pairs on `n` elements up to simultaneous relabeling, sorted by key.
pub fn enumerate_virtual_pairs(
    n: usize,
    mode: PairMode,
    allow_long: bool,
) -> Result<Vec<IsoClass<BiquandlePair>>, EnumerateError> {
    check_range(n, 1, 5)?;
    if n == 5 && !allow_long {
        return Err(EnumerateError::LongRunning { n });
    }
    Ok(pairs_from(&labelled_solutions(n, false, true), mode))
}

fn pairs_from(labelled_biquandles: &[SolutionTable], mode: PairMode) -> Vec<IsoClass<BiquandlePair>> {
    let Some(n) = labelled_biquandles.first().map(SolutionTable::n) else {
        return Vec::new();
    };
    let classes = dedupe_tables(labelled_biquandles.to_vec());
    let betas: Vec<SolutionTable> = match mode {
        PairMode::All => labelled_biquandles.to_vec(),
        PairMode::Involutive => labelled_biquandles.iter().filter(|b| b.is_involutive()).cloned().collect(),
        PairMode::AutInduced => Vec::new(),
    };
    debug_assert!(classes.iter().all(|c| c.representative.n() == n));
    let mut out: Vec<IsoClass<BiquandlePair>> = classes
        .par_iter()
        .flat_map_iter(|class| {
            let s = as_biquandle(class.representative.clone()).expect("search output satisfies the axioms");
            pairs_over(&s, mode, &betas)
        })
        .collect();
    out.sort_by(|a, b| a.key.cmp(&b.key));
    out
}

/// Pairs `(S, beta)` with `S` fixed in canonical form, one per orbit of
/// `Aut(S)`. Because `S` is the minimal relabeling of itself, the minimum
/// over `Aut(S)` of the beta serialization is the global canonical key.
fn pairs_over(s: &Biquandle, mode: PairMode, candidates: &[SolutionTable]) -> Vec<IsoClass<BiquandlePair>> {
    let auts = table_automorphisms(s.table());
    let betas: Vec<SolutionTable> = match mode {
        PairMode::All | PairMode::Involutive => {
            candidates.iter().filter(|b| pair_is_compatible(s.table(), b)).cloned().collect()
        }
        PairMode::AutInduced => conjugacy_class_reps(&auts).iter().map(induced_involution).collect(),
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for beta in betas {
        let (bytes, phi) = min_relabeling(&[&beta], auts.iter());
        if !seen.insert(bytes.clone()) {
            continue;
        }
        let beta = as_biquandle(beta.relabel(&phi)).expect("candidates are biquandles");
        let mut key = s.table().to_bytes();
        key.extend(bytes);
        out.push(IsoClass { representative: BiquandlePair { s: s.clone(), beta }, key: CanonicalKey(key) });
    }
    out
}

/// One representative (the first in the input order) per conjugacy class.
pub fn conjugacy_class_reps(group: &[Perm]) -> Vec<Perm> {
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    let mut reps = Vec::new();
    for a in group {
        if seen.contains(a) {
            continue;
        }
        reps.push(a.clone());
        for g in group {
            seen.insert(g.compose(a).compose(&g.inverse()));
        }
    }
    reps
}

/// One row of the census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    /// Biquandle pairs satisfying the mixed relation, `beta` unrestricted.
    pub all_pairs: usize,
    /// The subset of `all_pairs` with involutive `beta`.
    pub involutive_pairs: usize,
    pub aut_induced_pairs: usize,
    pub connected_pairs: usize,
    pub connected_with_both_disconnected: usize,
}

pub fn census(n: usize, allow_long: bool) -> Result<CensusRow, EnumerateError> {
    check_range(n, 1, 5)?;
    if n == 5 && !allow_long {
        return Err(EnumerateError::LongRunning { n });
    }
    let labelled = labelled_solutions(n, false, true);
    let all = pairs_from(&labelled, PairMode::All);
    let aut = pairs_from(&labelled, PairMode::AutInduced);
    Ok(census_from(n, &all, aut.len()))
}

pub fn census_from(n: usize, all: &[IsoClass<BiquandlePair>], aut_induced_pairs: usize) -> CensusRow {
    let mut connected_pairs = 0;
    let mut both = 0;
    for c in all {
        let p = &c.representative;
        if p.is_connected() {
            connected_pairs += 1;
            if !p.s().is_connected() && !p.beta().is_connected() {
                both += 1;
            }
        }
    }
    CensusRow {
        n,
        all_pairs: all.len(),
        involutive_pairs: all.iter().filter(|c| c.representative.is_involutive()).count(),
        aut_induced_pairs,
        connected_pairs,
        connected_with_both_disconnected: both,
    }
}

/// Writes one hex-encoded key per line, sorted.
pub fn write_keys<W: Write, T>(mut out: W, classes: &[IsoClass<T>]) -> io::Result<()> {
    let keys: BTreeSet<&CanonicalKey> = classes.iter().map(|c| &c.key).collect();
    for k in keys {
        writeln!(out, "{}", k.to_hex())?;
    }
    Ok(())
}

pub fn read_keys<R: BufRead>(input: R) -> io::Result<Vec<CanonicalKey>> {
    let mut keys = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let key = CanonicalKey::from_hex(&line)
            .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidData, format!("bad key line '{line}'")))?;
        keys.push(key);
    }
    Ok(keys)
}

/// Rebuilds the pair encoded by a pair key.
pub fn pair_from_key(n: usize, key: &CanonicalKey) -> Option<BiquandlePair> {
    let bytes = key.as_bytes();
    if bytes.len() != 4 * n * n {
        return None;
    }
    let s = SolutionTable::from_bytes(n, &bytes[..2 * n * n]).ok()?;
    let b = SolutionTable::from_bytes(n, &bytes[2 * n * n..]).ok()?;
    BiquandlePair::new(as_biquandle(s).ok()?, as_biquandle(b).ok()?)
}
