//! Words, finitely presented groups, finite target groups and homomorphism
//! search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{gens} generators exceed the limit of {max}")]
    TooManyGenerators { gens: usize, max: usize },
    #[error("generator {gen} out of range for {count} generators")]
    GeneratorOutOfRange { gen: usize, count: usize },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
}

/// A single letter `g^exp` with `exp = +1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Self { gen: self.gen, exp: -self.exp }
    }
}

/// A freely reduced word in numbered generators.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.exp > 0 { format!("x{}", l.gen) } else { format!("x{}^-1", l.gen) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Self(vec![Letter { gen: g, exp: 1 }])
    }

    /// Builds the reduced form of `letters`.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            debug_assert!(l.exp == 1 || l.exp == -1);
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    /// `(generator, exponent)` pairs with arbitrary nonzero integer exponents.
    pub fn from_powers<I: IntoIterator<Item = (usize, i32)>>(powers: I) -> Self {
        Self::from_letters(powers.into_iter().flat_map(|(g, e)| {
            let exp = if e > 0 { 1 } else { -1 };
            std::iter::repeat_n(Letter { gen: g, exp }, e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    pub fn gens(&self) -> BTreeSet<usize> {
        self.0.iter().map(|l| l.gen).collect()
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.gen == g).count()
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == g).map(|l| l.exp as i64).sum()
    }

    /// Replaces each generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Self {
        Self::from_letters(self.0.iter().flat_map(|l| {
            let w = &images[l.gen];
            if l.exp > 0 { w.0.clone() } else { w.inverse().0 }
        }))
    }

    /// Renames generators through `map`.
    pub fn rename(&self, map: impl Fn(usize) -> usize) -> Self {
        Self::from_letters(self.0.iter().map(|l| Letter { gen: map(l.gen), exp: l.exp }))
    }

    pub fn rotate(&self, k: usize) -> Self {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Self::from_letters(v)
    }

    /// Text form over the given generator names, `1` for the empty word.
    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let name = names.get(l.gen).cloned().unwrap_or_else(|| format!("x{}", l.gen));
            s.push_str(&name);
            if l.exp < 0 {
                s.push_str("^-1");
            }
        }
        s
    }

    /// Like `display` with runs collapsed into powers (`c^-2`, `h^3`).
    pub fn display_powers(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut runs: Vec<(usize, i64)> = Vec::new();
        for l in &self.0 {
            match runs.last_mut() {
                Some((g, k)) if *g == l.gen && (*k > 0) == (l.exp > 0) => *k += l.exp as i64,
                _ => runs.push((l.gen, l.exp as i64)),
            }
        }
        let parts: Vec<String> = runs
            .iter()
            .map(|&(g, k)| {
                let name = names.get(g).cloned().unwrap_or_else(|| format!("x{g}"));
                if k == 1 { name } else { format!("{name}^{k}") }
            })
            .collect();
        parts.join(" ")
    }

    /// Parses space-separated letters such as `a h^-1`; `1` is the identity.
    pub fn parse(text: &str, names: &[String]) -> Result<Self, String> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.strip_suffix("^-1") {
                Some(base) => (base, -1),
                None => (tok.strip_suffix("^1").unwrap_or(tok), 1),
            };
            let gen = names.iter().position(|n| n == name).ok_or_else(|| format!("unknown generator '{name}'"))?;
            letters.push(Letter { gen, exp });
        }
        Ok(Self::from_letters(letters))
    }
}

pub fn reduce(w: &Word) -> Word {
    Word::from_letters(w.0.iter().copied())
}

/// Strips matching letters from both ends of a reduced word.
pub fn cyclic_reduce(w: &Word) -> Word {
    let v = &reduce(w).0;
    let (mut i, mut j) = (0, v.len());
    while j >= i + 2 && v[i] == v[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    Word(v[i..j].to_vec())
}

/// Least rotation of the cyclic reduction. Two words are conjugate in the
/// free group exactly when these agree.
pub fn cyclic_canonical(w: &Word) -> Word {
    let c = cyclic_reduce(w);
    (0..c.len().max(1)).map(|k| c.rotate(k)).min().unwrap_or_default()
}

/// Representative of a relator up to rotation and inversion.
pub fn relator_canonical(w: &Word) -> Word {
    cyclic_canonical(w).min(cyclic_canonical(&w.inverse()))
}

/// A group given by generators and relators, with the rewriting of
/// original generator names accumulated by simplification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub gens: Vec<String>,
    pub relators: Vec<Word>,
    pub aliases: BTreeMap<String, Word>,
}

impl Presentation {
    pub fn new(gens: Vec<String>, relators: Vec<Word>) -> Self {
        Self { gens, relators, aliases: BTreeMap::new() }
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn validate(&self) -> Result<(), FpError> {
        let count = self.gens.len();
        for w in self.relators.iter().chain(self.aliases.values()) {
            if let Some(g) = w.max_gen().filter(|&g| g >= count) {
                return Err(FpError::GeneratorOutOfRange { gen: g, count });
            }
        }
        Ok(())
    }

    /// Word in the current generators for an original generator name.
    pub fn alias(&self, name: &str) -> Option<Word> {
        if let Some(w) = self.aliases.get(name) {
            return Some(w.clone());
        }
        self.gens.iter().position(|g| g == name).map(Word::gen)
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display(&self.gens)
    }

    /// Text format: a `gens:` line, one relator per line, then
    /// `alias <name> = <word>` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.gens.join(" "));
        for r in &self.relators {
            let _ = writeln!(s, "{}", self.display_word(r));
        }
        for (name, w) in &self.aliases {
            let _ = writeln!(s, "alias {name} = {}", self.display_word(w));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, FpError> {
        let mut gens: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        let mut aliases = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| FpError::Parse { line: i + 1, msg };
            if let Some(rest) = line.strip_prefix("gens:") {
                gens = Some(rest.split_whitespace().map(str::to_string).collect());
                continue;
            }
            let names = gens.as_ref().ok_or_else(|| err("relator before 'gens:' line".into()))?;
            if let Some(rest) = line.strip_prefix("alias ") {
                let (name, word) = rest.split_once('=').ok_or_else(|| err("alias needs '='".into()))?;
                aliases.insert(name.trim().to_string(), Word::parse(word, names).map_err(err)?);
            } else {
                relators.push(Word::parse(line, names).map_err(err)?);
            }
        }
        let gens = gens.ok_or(FpError::Parse { line: 0, msg: "missing 'gens:' line".into() })?;
        Ok(Self { gens, relators, aliases })
    }
}

/// Output of [`tietze_simplify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: Presentation,
    /// The step budget ran out before a fixpoint was reached.
    pub exhausted: bool,
    pub steps: usize,
}

/// Tietze simplification: trivial relators are dropped, relators are
/// cyclically reduced and deduplicated up to rotation and inversion, a
/// generator occurring exactly once in some relator is eliminated (shortest
/// relator first, then lowest generator id), and a relator `u v` with
/// `|v| < |u|` is used to rewrite `u` as `v^-1` inside other relators.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Simplified {
    let mut cur = p.clone();
    for (i, name) in p.gens.iter().enumerate() {
        cur.aliases.entry(name.clone()).or_insert_with(|| Word::gen(i));
    }
    let mut steps = 0;
    loop {
        tidy_relators(&mut cur);
        if steps >= budget {
            let done = find_elimination(&cur).is_none() && find_shortening(&cur).is_none();
            finish_aliases(&mut cur);
            return Simplified { presentation: cur, exhausted: !done, steps };
        }
        if let Some((r, g)) = find_elimination(&cur) {
            eliminate(&mut cur, r, g);
            steps += 1;
            continue;
        }
        if let Some((target, replaced)) = find_shortening(&cur) {
            cur.relators[target] = replaced;
            steps += 1;
            continue;
        }
        finish_aliases(&mut cur);
        return Simplified { presentation: cur, exhausted: false, steps };
    }
}

fn finish_aliases(p: &mut Presentation) {
    let gens = p.gens.clone();
    p.aliases.retain(|name, w| !(w.len() == 1 && w.letters()[0].exp == 1 && gens[w.letters()[0].gen] == *name));
}

fn tidy_relators(p: &mut Presentation) {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in &p.relators {
        let c = cyclic_reduce(r);
        if c.is_empty() {
            continue;
        }
        if seen.insert(relator_canonical(&c)) {
            out.push(c);
        }
    }
    p.relators = out;
}

/// Relator index and generator occurring exactly once in it.
fn find_elimination(p: &Presentation) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (ri, r) in p.relators.iter().enumerate() {
        for g in r.gens() {
            if r.occurrences(g) == 1 {
                let cand = (r.len(), g, ri);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
    }
    best.map(|(_, g, ri)| (ri, g))
}

fn eliminate(p: &mut Presentation, ri: usize, g: usize) {
    let r = p.relators.remove(ri);
    let pos = r.letters().iter().position(|l| l.gen == g).expect("generator occurs");
    let rot = r.rotate(pos);
    let rest = Word(rot.letters()[1..].to_vec());
    // g^e rest = 1, so g = rest^-e
    let value = if rot.letters()[0].exp > 0 { rest.inverse() } else { rest };
    let n = p.gens.len();
    let images: Vec<Word> = (0..n)
        .map(|i| {
            let w = if i == g { value.clone() } else { Word::gen(i) };
            w.rename(|k| if k > g { k - 1 } else { k })
        })
        .collect();
    for rel in &mut p.relators {
        *rel = rel.substitute(&images);
    }
    for w in p.aliases.values_mut() {
        *w = w.substitute(&images);
    }
    p.gens.remove(g);
}

/// A relator index with its rewritten form, where a long piece of another
/// relator (read cyclically, in either direction) was replaced by the
/// shorter complement.
fn find_shortening(p: &Presentation) -> Option<(usize, Word)> {
    for (si, s) in p.relators.iter().enumerate() {
        for cyc in [s.clone(), s.inverse()] {
            let m = cyc.len();
            for k in 0..m {
                let rot = cyc.rotate(k);
                let letters = rot.letters();
                for ulen in (m / 2 + 1)..=m {
                    let u = &letters[..ulen];
                    let v_inv = Word(letters[ulen..].to_vec()).inverse();
                    for (ti, t) in p.relators.iter().enumerate() {
                        if ti == si {
                            continue;
                        }
                        if let Some(new) = replace_cyclic(t, u, &v_inv) {
                            if new.len() < t.len() {
                                return Some((ti, new));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Replaces one cyclic occurrence of `u` in `t` by `rep`.
fn replace_cyclic(t: &Word, u: &[Letter], rep: &Word) -> Option<Word> {
    let n = t.len();
    if u.len() > n || u.is_empty() {
        return None;
    }
    for k in 0..n {
        let rot = t.rotate(k);
        if rot.len() == n && rot.letters().starts_with(u) {
            let rest = Word(rot.letters()[u.len()..].to_vec());
            return Some(cyclic_reduce(&rep.mul(&rest)));
        }
    }
    None
}

/// Abelian invariants and the coordinate map into `Z/d_1 + ... + Z/d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    /// Invariant factors other than 1, with 0 for each free summand.
    pub factors: Vec<i64>,
    /// Column `j` gives coordinate `j` as a linear form on generator exponents.
    transform: Vec<Vec<i64>>,
}

impl Abelianization {
    pub fn project(&self, w: &Word) -> Vec<i64> {
        let mut out = vec![0i64; self.factors.len()];
        for l in w.letters() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += l.exp as i64 * self.transform[l.gen][j];
            }
        }
        for (o, &d) in out.iter_mut().zip(&self.factors) {
            if d > 0 {
                *o = o.rem_euclid(d);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d == 0).count()
    }
}

/// Smith normal form of the relator exponent matrix.
pub fn abelianize(p: &Presentation) -> Abelianization {
    let m = p.gens.len();
    let mut a: Vec<Vec<i64>> = p.relators.iter().map(|r| (0..m).map(|g| r.exponent_sum(g)).collect()).collect();
    // q tracks column operations: a_original * q = a_current (up to rows)
    let mut q: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(m) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..m).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut q, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                let f = a[i][t] / a[t][t];
                if f != 0 {
                    for j in t..m {
                        a[i][j] -= f * a[t][j];
                    }
                }
            }
            for j in t + 1..m {
                let f = a[t][j] / a[t][t];
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in q.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
            }
            // a remainder smaller than the pivot becomes the new pivot
            if let Some(i) = (t + 1..rows).find(|&i| a[i][t] != 0) {
                a.swap(t, i);
                changed = true;
            } else if let Some(j) = (t + 1..m).find(|&j| a[t][j] != 0) {
                swap_cols(&mut a, t, j);
                swap_cols(&mut q, t, j);
                changed = true;
            } else if let Some((i, j)) = (t + 1..rows)
                .flat_map(|i| (t + 1..m).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % a[t][t] != 0)
            {
                // enforce divisibility: add row i to row t
                let _ = j;
                for c in t..m {
                    a[t][c] += a[i][c];
                }
                changed = true;
            }
            if !changed {
                break;
            }
        }
        if a[t][t] < 0 {
            for row in a.iter_mut().skip(t).take(1) {
                for v in row.iter_mut() {
                    *v = -*v;
                }
            }
        }
        diag.push(a[t][t]);
        t += 1;
    }
    diag.resize(m, 0);
    let keep: Vec<usize> = (0..m).filter(|&j| diag[j] != 1).collect();
    let mut order: Vec<usize> = keep.clone();
    order.sort_by_key(|&j| (diag[j] == 0, diag[j], j));
    Abelianization {
        factors: order.iter().map(|&j| diag[j]).collect(),
        transform: q.iter().map(|row| order.iter().map(|&j| row[j]).collect()).collect(),
    }
}

fn swap_cols(a: &mut [Vec<i64>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// Minimal group interface used by cocycle checks.
pub trait Group {
    type Elem: Clone + Eq + Ord + fmt::Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn mul_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    fn commute(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
}

/// The free group on numbered generators, elements as reduced words.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeGroup;

impl Group for FreeGroup {
    type Elem = Word;
    fn identity(&self) -> Word {
        Word::identity()
    }
    fn mul(&self, a: &Word, b: &Word) -> Word {
        a.mul(b)
    }
    fn inv(&self, a: &Word) -> Word {
        a.inverse()
    }
}

/// The integers under addition.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Group for Integers {
    type Elem = i64;
    fn identity(&self) -> i64 {
        0
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn inv(&self, a: &i64) -> i64 {
        -a
    }
}

/// A finite group by multiplication table; element 0 is the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    class_of: Vec<usize>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates identity, inverses and associativity.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self, FpError> {
        let k = table.len();
        let bad = |m: String| FpError::InvalidGroup(format!("{name}: {m}"));
        if k == 0 || table.iter().any(|r| r.len() != k || r.iter().any(|&v| v >= k)) {
            return Err(bad("table must be square with entries below the order".into()));
        }
        if (0..k).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(bad("element 0 is not the identity".into()));
        }
        let mut inv = vec![usize::MAX; k];
        for a in 0..k {
            match (0..k).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(bad(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mul: Vec<usize> = table.into_iter().flatten().collect();
        let mut class_of = vec![usize::MAX; k];
        let mut next = 0;
        for a in 0..k {
            if class_of[a] != usize::MAX {
                continue;
            }
            for g in 0..k {
                let c = mul[mul[g * k + a] * k + inv[g]];
                class_of[c] = next;
            }
            next += 1;
        }
        Ok(Self { name: name.to_string(), order: k, mul, inv, class_of, labels: (0..k).map(|i| i.to_string()).collect() })
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    /// The group generated by the given permutations, elements listed in
    /// breadth-first order from the identity.
    pub fn from_perms(name: &str, gens: &[Perm]) -> Self {
        let n = gens.first().map(Perm::len).unwrap_or(0);
        let mut elems = vec![Perm::identity(n)];
        let mut index: BTreeMap<Perm, usize> = BTreeMap::from([(Perm::identity(n), 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = elems[i].compose(g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let table = elems.iter().map(|a| elems.iter().map(|b| index[&a.compose(b)]).collect()).collect();
        Self::from_table(name, table).expect("permutation groups are groups")
    }

    pub fn cyclic(k: usize) -> Self {
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        Self::from_table(&format!("Z{k}"), table).expect("cyclic group")
    }

    pub fn symmetric3() -> Self {
        let s = Perm::from_vec(vec![1, 0, 2]).expect("perm");
        let t = Perm::from_vec(vec![1, 2, 0]).expect("perm");
        Self::from_perms("S3", &[s, t])
    }

    /// Symmetries of the square.
    pub fn dihedral4() -> Self {
        let r = Perm::from_vec(vec![1, 2, 3, 0]).expect("perm");
        let s = Perm::from_vec(vec![0, 3, 2, 1]).expect("perm");
        Self::from_perms("D4", &[r, s])
    }

    /// Quaternion group with elements `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // unit quaternions as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
        let decode = |e: usize| (if e % 2 == 0 { 1i32 } else { -1 }, e / 2);
        let encode = |s: i32, ax: usize| 2 * ax + usize::from(s < 0);
        let axis_mul = |a: usize, b: usize| -> (i32, usize) {
            match (a, b) {
                (0, b) => (1, b),
                (a, 0) => (1, a),
                (a, b) if a == b => (-1, 0),
                (1, 2) => (1, 3),
                (2, 3) => (1, 1),
                (3, 1) => (1, 2),
                (2, 1) => (-1, 3),
                (3, 2) => (-1, 1),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let ((sa, xa), (sb, xb)) = (decode(a), decode(b));
                        let (s, x) = axis_mul(xa, xb);
                        encode(sa * sb * s, x)
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", table).expect("quaternion group").with_labels(&["1", "-1", "i", "-i", "j", "-j", "k", "-k"])
    }

    /// Default targets for separating invariants.
    pub fn battery() -> Vec<Self> {
        let mut v: Vec<Self> = (2..=6).map(Self::cyclic).collect();
        v.push(Self::symmetric3());
        v.push(Self::dihedral4());
        v.push(Self::quaternion());
        v
    }

    pub fn by_name(name: &str) -> Option<Self> {
        Self::battery().into_iter().find(|g| g.name.eq_ignore_ascii_case(name))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// `order=<k>`, `k` rows of the table, then the `inv:` line.
    pub fn to_text(&self) -> String {
        let k = self.order;
        let mut s = format!("order={k}\n");
        for a in 0..k {
            let row: Vec<String> = (0..k).map(|b| self.op(a, b).to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        let inv: Vec<String> = self.inv.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "inv: {}", inv.join(" "));
        s
    }

    pub fn parse(name: &str, text: &str) -> Result<Self, FpError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines.next().ok_or(FpError::Parse { line: 0, msg: "empty group file".into() })?;
        let k: usize = first
            .strip_prefix("order=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or(FpError::Parse { line: ln, msg: "expected 'order=<k>'".into() })?;
        let mut table = Vec::with_capacity(k);
        let mut inv_line = None;
        for (ln, line) in lines {
            if let Some(rest) = line.strip_prefix("inv:") {
                inv_line = Some((ln, rest.to_string()));
                continue;
            }
            let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            table.push(row.map_err(|e| FpError::Parse { line: ln, msg: e.to_string() })?);
        }
        if table.len() != k {
            return Err(FpError::Parse { line: 0, msg: format!("expected {k} table rows, got {}", table.len()) });
        }
        let g = Self::from_table(name, table)?;
        if let Some((ln, rest)) = inv_line {
            let inv: Result<Vec<usize>, _> = rest.split_whitespace().map(str::parse).collect();
            let inv = inv.map_err(|e| FpError::Parse { line: ln, msg: e.to_string() })?;
            if inv != g.inv {
                return Err(FpError::Parse { line: ln, msg: "inv line disagrees with the table".into() });
            }
        }
        Ok(g)
    }
}

impl Group for FiniteGroup {
    type Elem = usize;
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.op(*a, *b)
    }
    fn inv(&self, a: &usize) -> usize {
        self.inverse(*a)
    }
}

/// Images of the generators in a finite group, killing every relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub target: FiniteGroup,
    pub images: Vec<usize>,
}

pub fn evaluate(hom: &Homomorphism, w: &Word) -> Result<usize, FpError> {
    eval_in(&hom.target, &hom.images, w)
}

fn eval_in(g: &FiniteGroup, images: &[usize], w: &Word) -> Result<usize, FpError> {
    let mut acc = 0;
    for l in w.letters() {
        let &x = images.get(l.gen).ok_or(FpError::GeneratorOutOfRange { gen: l.gen, count: images.len() })?;
        acc = g.op(acc, if l.exp > 0 { x } else { g.inverse(x) });
    }
    Ok(acc)
}

pub const DEFAULT_MAX_GENS: usize = 8;

/// Every homomorphism into `g`, sorted by image tuple. Relators are tested
/// as soon as all of their generators have images.
pub fn find_homs(p: &Presentation, g: &FiniteGroup, max_gens: usize) -> Result<Vec<Homomorphism>, FpError> {
    p.validate()?;
    let m = p.gens.len();
    if m > max_gens {
        return Err(FpError::TooManyGenerators { gens: m, max: max_gens });
    }
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); m.max(1)];
    for r in &p.relators {
        if let Some(top) = r.max_gen() {
            due[top].push(r);
        }
    }
    let mut images = vec![0usize; m];
    let mut out = Vec::new();
    hom_search(g, &due, 0, &mut images, &mut out);
    Ok(out.into_iter().map(|images| Homomorphism { target: g.clone(), images }).collect())
}

fn hom_search(g: &FiniteGroup, due: &[Vec<&Word>], k: usize, images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == images.len() {
        out.push(images.clone());
        return;
    }
    for x in 0..g.order() {
        images[k] = x;
        if due[k].iter().all(|r| eval_in(g, images, r) == Ok(0)) {
            hom_search(g, due, k + 1, images, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn w(text: &str, gens: &[&str]) -> Word {
        Word::parse(text, &names(gens)).unwrap()
    }

    #[test]
    fn free_reduction() {
        let g = ["a", "b", "c", "h"];
        assert!(w("a a^-1", &g).is_empty());
        assert_eq!(w("a b b^-1 a", &g), w("a a", &g));
        let c = w("h c h^-1 c^-1", &g);
        assert_eq!(c.len(), 4);
        assert_eq!(reduce(&c), c);
    }

    #[test]
    fn cyclic_reduction() {
        let g = ["a", "b"];
        assert_eq!(cyclic_reduce(&w("a b a^-1", &g)), w("b", &g));
        assert_eq!(cyclic_canonical(&w("b a", &g)), cyclic_canonical(&w("a b", &g)));
        assert!(cyclic_reduce(&Word::identity()).is_empty());
        assert_eq!(cyclic_reduce(&w("a b a^-1 b^-1", &g)).len(), 4);
    }

    #[test]
    fn presentation_text_round_trip() {
        let text = "gens: a b h\na h a^-1 h^-1\nb h b^-1 h^-1\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.relators.len(), 2);
        assert_eq!(p.to_text(), text);
        assert!(Presentation::parse("a b\n").is_err());
        assert!(Presentation::parse("gens: a\nq\n").is_err());
    }

    #[test]
    fn trivial_presentation_collapses() {
        let p = Presentation::parse("gens: a b\na\nb\n").unwrap();
        let s = tietze_simplify(&p, 100);
        assert_eq!(s.presentation.num_gens(), 0);
        assert!(s.presentation.relators.is_empty());
        assert!(!s.exhausted);
        assert!(s.presentation.alias("a").unwrap().is_empty());
    }

    #[test]
    fn elimination_records_aliases() {
        // every generator occurs once; the lowest id goes first
        let p = Presentation::parse("gens: a b c\nc^-1 a b\n").unwrap();
        let s = tietze_simplify(&p, 100).presentation;
        assert_eq!(s.gens, names(&["b", "c"]));
        assert!(s.relators.is_empty());
        assert_eq!(s.display_word(&s.alias("a").unwrap()), "c b^-1");
        assert_eq!(s.display_word(&s.alias("b").unwrap()), "b");
    }

    #[test]
    fn budget_is_reported() {
        let p = Presentation::parse("gens: a b c\na\nb\nc\n").unwrap();
        let s = tietze_simplify(&p, 1);
        assert!(s.exhausted);
        assert_eq!(s.presentation.num_gens(), 2);
    }

    #[test]
    fn smith_normal_form() {
        let p = Presentation::parse("gens: a\na a\n").unwrap();
        assert_eq!(abelianize(&p).factors, vec![2]);
        let p = Presentation::parse("gens: a b h\na h a^-1 h^-1\nb h b^-1 h^-1\n").unwrap();
        assert_eq!(abelianize(&p).factors, vec![0, 0, 0]);
        // Z/4 x Z/6 = Z/2 x Z/12
        let p = Presentation::parse("gens: a b\na a a a\nb b b b b b\na b a^-1 b^-1\n").unwrap();
        assert_eq!(abelianize(&p).factors, vec![2, 12]);
        let p = Presentation::parse("gens: a b\na a b b b\n").unwrap();
        assert_eq!(abelianize(&p).factors, vec![0]);
    }

    #[test]
    fn projection_respects_relators() {
        let p = Presentation::parse("gens: a b c\na a b^-1 c c c\nb b b b\na b c a b\n").unwrap();
        let ab = abelianize(&p);
        for r in &p.relators {
            assert!(ab.project(r).iter().all(|&v| v == 0));
        }
        // order of the group equals the product of factors here (finite case)
        assert!(ab.factors.iter().all(|&d| d > 0));
        let order: i64 = ab.factors.iter().product();
        // the projection of the generators hits every element
        let mut seen = BTreeSet::new();
        for i in 0..order {
            for j in 0..order {
                for k in 0..order {
                    let word = Word::from_powers([(0, i as i32), (1, j as i32), (2, k as i32)]);
                    seen.insert(ab.project(&word));
                }
            }
        }
        assert_eq!(seen.len() as i64, order);
    }

    #[test]
    fn battery_groups_are_valid() {
        let orders: Vec<usize> = FiniteGroup::battery().iter().map(FiniteGroup::order).collect();
        assert_eq!(orders, vec![2, 3, 4, 5, 6, 6, 8, 8]);
        let q = FiniteGroup::quaternion();
        let (i, j, k) = (q.element("i").unwrap(), q.element("j").unwrap(), q.element("k").unwrap());
        assert_eq!(q.op(i, j), k);
        assert_eq!(q.op(j, i), q.element("-k").unwrap());
        assert_eq!(q.op(i, i), q.element("-1").unwrap());
        assert_eq!(q.num_classes(), 5);
        assert_eq!(FiniteGroup::symmetric3().num_classes(), 3);
        assert_eq!(FiniteGroup::dihedral4().num_classes(), 5);
        assert!(!FiniteGroup::dihedral4().is_abelian());
    }

    #[test]
    fn group_file_round_trip_and_rejection() {
        let g = FiniteGroup::dihedral4();
        let back = FiniteGroup::parse("D4", &g.to_text()).unwrap();
        assert_eq!(back.order(), 8);
        assert_eq!((0..8).map(|a| back.class_of(a)).collect::<Vec<_>>(), (0..8).map(|a| g.class_of(a)).collect::<Vec<_>>());
        assert!(FiniteGroup::parse("bad", "order=2\n0 1\n1 1\n").is_err());
        assert!(FiniteGroup::parse("bad", "order=3\n0 1 2\n1 2 0\n").is_err());
    }

    #[test]
    fn homomorphisms() {
        let p = Presentation::parse("gens: a\na a\n").unwrap();
        assert_eq!(find_homs(&p, &FiniteGroup::cyclic(2), 8).unwrap().len(), 2);
        let free = Presentation::parse("gens: a b\n").unwrap();
        let homs = find_homs(&free, &FiniteGroup::symmetric3(), 8).unwrap();
        assert_eq!(homs.len(), 36);
        assert_eq!(homs[0].images, vec![0, 0]);
        let big = Presentation::new((0..9).map(|i| format!("g{i}")).collect(), vec![]);
        assert!(matches!(find_homs(&big, &FiniteGroup::cyclic(2), 8), Err(FpError::TooManyGenerators { .. })));
    }

    #[test]
    fn evaluation() {
        let q = FiniteGroup::quaternion();
        let hom = Homomorphism { target: q.clone(), images: vec![q.element("i").unwrap(), q.element("j").unwrap()] };
        assert_eq!(evaluate(&hom, &Word::identity()).unwrap(), 0);
        let comm = Word::commutator(&Word::gen(0), &Word::gen(1));
        assert_eq!(q.label(evaluate(&hom, &comm).unwrap()), "-1");
        assert!(evaluate(&hom, &Word::gen(2)).is_err());
    }
}
