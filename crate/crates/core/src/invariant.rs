//! Boltzmann weights and the conjugacy-class cocycle invariant.
//!
//! Along each component, an under passage of a positive crossing with
//! inputs `(x,y)` contributes `f(x,y)`, an under passage of a negative
//! crossing contributes `f(x,y)⁻¹` with `(x,y) = S⁻¹(over, under)`, and
//! every virtual passage contributes `g(left, right)`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::VirtualPair;
use crate::cocycle::{check_state_sum_pair, universal_presentation, CocycleError, CocyclePair, PresentedPair, Weight};
use crate::coloring::{colorings, count_colorings};
use crate::diagram::{Crossing, LinkDiagram, Passage, Sign};
use crate::fpgroup::{abelianize, cyclic_canonical, find_homs, FiniteGroup, FpError, FreeGroup, Group, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("expected a 2-component diagram, found {0} components")]
    Components(usize),
    #[error("not a valid coloring of this diagram")]
    BadColoring,
    #[error("cocycle pair violates {0} state-sum conditions")]
    StateSum(usize),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Fp(#[from] FpError),
}

/// One weight symbol met along a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub passage: usize,
    pub weight: Weight,
    pub x: usize,
    pub y: usize,
    pub inverse: bool,
}

/// Weight symbols per component, in traversal order from the base point.
pub fn factors(d: &LinkDiagram, vp: &VirtualPair, coloring: &[usize]) -> Vec<Vec<Factor>> {
    d.components()
        .iter()
        .enumerate()
        .map(|(c, comp)| {
            comp.iter()
                .enumerate()
                .filter_map(|(i, p)| {
                    let cr = d.crossing(p.id()).expect("validated diagram");
                    match (*p, *cr) {
                        (Passage::Under { sign: Sign::Pos, .. }, Crossing::Classical { over, .. }) => {
                            let (x, y) = (coloring[d.arc(c, i)], coloring[d.arc(over.0, over.1)]);
                            Some(Factor { passage: i, weight: Weight::F, x, y, inverse: false })
                        }
                        (Passage::Under { sign: Sign::Neg, .. }, Crossing::Classical { over, .. }) => {
                            let p = coloring[d.arc(over.0, over.1)];
                            let q = coloring[d.arc(c, i)];
                            let (x, y) = vp.s_inv().apply(p, q);
                            Some(Factor { passage: i, weight: Weight::F, x, y, inverse: true })
                        }
                        (Passage::Virtual { .. }, Crossing::Virtual { left, right, .. }) => {
                            let (x, y) = (coloring[d.arc(left.0, left.1)], coloring[d.arc(right.0, right.1)]);
                            Some(Factor { passage: i, weight: Weight::G, x, y, inverse: false })
                        }
                        _ => None,
                    }
                })
                .collect()
        })
        .collect()
}

/// Weight factors with their values, and the ordered product, per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProduct<E> {
    pub factors: Vec<Vec<(Factor, E)>>,
    pub products: Vec<E>,
}

fn factor_value<G: Group>(cp: &CocyclePair<G>, f: &Factor) -> G::Elem {
    let v = match f.weight {
        Weight::F => cp.f(f.x, f.y),
        Weight::G => cp.g(f.x, f.y),
    };
    if f.inverse {
        cp.group.inv(v)
    } else {
        v.clone()
    }
}

pub fn weight_product<G: Group>(
    d: &LinkDiagram,
    coloring: &[usize],
    cp: &CocyclePair<G>,
) -> Result<WeightProduct<G::Elem>, InvariantError> {
    if !crate::coloring::is_coloring(d, &cp.vp, coloring) {
        return Err(InvariantError::BadColoring);
    }
    let factors: Vec<Vec<(Factor, G::Elem)>> = factors(d, &cp.vp, coloring)
        .into_iter()
        .map(|comp| comp.into_iter().map(|f| (f, factor_value(cp, &f))).collect())
        .collect();
    let products = factors.iter().map(|comp| cp.group.mul_all(comp.iter().map(|(_, v)| v))).collect();
    Ok(WeightProduct { factors, products })
}

fn products<G: Group>(d: &LinkDiagram, cp: &CocyclePair<G>, coloring: &[usize]) -> Vec<G::Elem> {
    factors(d, &cp.vp, coloring)
        .iter()
        .map(|comp| comp.iter().fold(cp.group.identity(), |acc, f| cp.group.mul(&acc, &factor_value(cp, f))))
        .collect()
}

/// Invariant over a finite target: one tuple of class representatives
/// (least element of the class) per coloring, sorted.
pub fn finite_invariant(d: &LinkDiagram, cp: &CocyclePair<FiniteGroup>) -> Vec<Vec<usize>> {
    let g = &cp.group;
    let mut least = vec![usize::MAX; g.num_classes()];
    for a in 0..g.order() {
        let c = g.class_of(a);
        least[c] = least[c].min(a);
    }
    let mut out: Vec<Vec<usize>> = colorings(d, &cp.vp)
        .iter()
        .map(|c| products(d, cp, c).into_iter().map(|e| least[g.class_of(e)]).collect())
        .collect();
    out.sort();
    out
}

/// Tuples as group labels, for display.
pub fn label_tuples(g: &FiniteGroup, tuples: &[Vec<usize>]) -> Vec<Vec<String>> {
    tuples.iter().map(|t| t.iter().map(|&e| g.label(e).to_string()).collect()).collect()
}

/// One coloring's word-valued component products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordRow {
    pub coloring: Vec<usize>,
    /// Cyclically reduced, least rotation.
    pub words: Vec<Word>,
    /// Images in the abelianization of the target presentation.
    pub abelian: Vec<Vec<i64>>,
}

/// Word-valued invariant of a presented cocycle pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordInvariant {
    pub rows: Vec<WordRow>,
}

impl WordInvariant {
    /// Sorted multiset of abelianized tuples, a genuine invariant.
    pub fn abelian_multiset(&self) -> Vec<Vec<Vec<i64>>> {
        let mut v: Vec<_> = self.rows.iter().map(|r| r.abelian.clone()).collect();
        v.sort();
        v
    }

    /// Sorted multiset of word tuples.
    pub fn word_multiset(&self) -> Vec<Vec<Word>> {
        let mut v: Vec<_> = self.rows.iter().map(|r| r.words.clone()).collect();
        v.sort();
        v
    }

    pub fn display(&self, pp: &PresentedPair) -> String {
        let mut out = String::new();
        for (i, r) in self.rows.iter().enumerate() {
            let words: Vec<String> = r.words.iter().map(|w| pp.presentation.display_word(w)).collect();
            out.push_str(&format!("{i}\t({})\n", words.join(", ")));
        }
        out
    }
}

pub fn word_invariant(d: &LinkDiagram, pp: &PresentedPair) -> Result<WordInvariant, InvariantError> {
    let cp = CocyclePair::new(pp.vp.clone(), FreeGroup, pp.f.clone(), pp.g.clone())?;
    let ab = abelianize(&pp.presentation);
    let mut rows: Vec<WordRow> = colorings(d, &pp.vp)
        .into_iter()
        .map(|c| {
            let prods = products(d, &cp, &c);
            WordRow {
                abelian: prods.iter().map(|w| ab.project(w)).collect(),
                words: prods.iter().map(cyclic_canonical).collect(),
                coloring: c,
            }
        })
        .collect();
    rows.sort_by(|a, b| (&a.abelian, &a.words, &a.coloring).cmp(&(&b.abelian, &b.words, &b.coloring)));
    Ok(WordInvariant { rows })
}

/// Class-tuple multisets of the word invariant pushed through every
/// homomorphism into `target`, one per homomorphism in search order.
pub fn battery_images(
    d: &LinkDiagram,
    pp: &PresentedPair,
    target: &FiniteGroup,
    max_gens: usize,
) -> Result<Vec<Vec<Vec<usize>>>, InvariantError> {
    let homs = find_homs(&pp.presentation, target, max_gens)?;
    homs.iter().map(|h| Ok(finite_invariant(d, &pp.image(h)?))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Counts(usize, usize),
    Abelian { first: Vec<Vec<Vec<i64>>>, second: Vec<Vec<Vec<i64>>> },
    Battery { group: String, hom: usize, first: Vec<Vec<usize>>, second: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Distinguished(Witness),
    NotDistinguished,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotDistinguished => f.write_str("not distinguished by these means"),
            Verdict::Distinguished(Witness::Counts(a, b)) => write!(f, "distinguished: {a} vs {b} colorings"),
            Verdict::Distinguished(Witness::Abelian { first, second }) => {
                write!(f, "distinguished by abelianized invariant: {first:?} vs {second:?}")
            }
            Verdict::Distinguished(Witness::Battery { group, hom, first, second }) => {
                write!(f, "distinguished in {group} (hom {hom}): {first:?} vs {second:?}")
            }
        }
    }
}

/// Tries coloring counts, then the abelianized universal invariant, then
/// class tuples under homomorphisms of the universal group into `battery`.
pub fn separate(
    d1: &LinkDiagram,
    d2: &LinkDiagram,
    vp: &VirtualPair,
    battery: &[FiniteGroup],
    max_gens: usize,
) -> Result<Verdict, InvariantError> {
    let (c1, c2) = (count_colorings(d1, vp), count_colorings(d2, vp));
    if c1 != c2 {
        return Ok(Verdict::Distinguished(Witness::Counts(c1, c2)));
    }
    let pp = PresentedPair::from(&universal_presentation(vp));
    let (w1, w2) = (word_invariant(d1, &pp)?, word_invariant(d2, &pp)?);
    let (a1, a2) = (w1.abelian_multiset(), w2.abelian_multiset());
    if a1 != a2 {
        return Ok(Verdict::Distinguished(Witness::Abelian { first: a1, second: a2 }));
    }
    if pp.presentation.num_gens() > max_gens {
        return Ok(Verdict::NotDistinguished);
    }
    for group in battery {
        let homs = find_homs(&pp.presentation, group, max_gens)?;
        for (k, h) in homs.iter().enumerate() {
            let cp = pp.image(h)?;
            let (t1, t2) = (finite_invariant(d1, &cp), finite_invariant(d2, &cp));
            if t1 != t2 {
                return Ok(Verdict::Distinguished(Witness::Battery {
                    group: group.name().to_string(),
                    hom: k,
                    first: t1,
                    second: t2,
                }));
            }
        }
    }
    Ok(Verdict::NotDistinguished)
}

/// Sum over colorings of the product of all crossing weights, each crossing
/// counted once. Meaningful for abelian targets.
pub fn state_sum<G: Group>(d: &LinkDiagram, cp: &CocyclePair<G>) -> BTreeMap<G::Elem, usize> {
    let mut out = BTreeMap::new();
    for c in colorings(d, &cp.vp) {
        let total = d.crossings().iter().fold(cp.group.identity(), |acc, cr| {
            let w = crossing_weight(d, cp, &c, cr);
            cp.group.mul(&acc, &w)
        });
        *out.entry(total).or_insert(0) += 1;
    }
    out
}

fn crossing_weight<G: Group>(d: &LinkDiagram, cp: &CocyclePair<G>, coloring: &[usize], cr: &Crossing) -> G::Elem {
    let color = |spot: (usize, usize)| coloring[d.arc(spot.0, spot.1)];
    match *cr {
        Crossing::Classical { sign: Sign::Pos, over, under, .. } => cp.f(color(under), color(over)).clone(),
        Crossing::Classical { sign: Sign::Neg, over, under, .. } => {
            let (x, y) = cp.vp.s_inv().apply(color(over), color(under));
            cp.group.inv(cp.f(x, y))
        }
        Crossing::Virtual { left, right, .. } => cp.g(color(left), color(right)).clone(),
    }
}

/// State sum after checking the state-sum conditions.
pub fn checked_state_sum(
    d: &LinkDiagram,
    cp: &CocyclePair<FiniteGroup>,
) -> Result<BTreeMap<usize, usize>, InvariantError> {
    let bad = check_state_sum_pair(cp)?;
    if !bad.is_empty() {
        return Err(InvariantError::StateSum(bad.len()));
    }
    Ok(state_sum(d, cp))
}

/// Linking data of a 2-component diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingNumbers {
    /// Signed count of crossings where the first component is over.
    pub lk_1_2: i64,
    /// Signed count of crossings where the second component is over.
    pub lk_2_1: i64,
    /// Sorted exponents of `c` per component under the antiflip pair, one
    /// pair per coloring.
    pub c_exponents: Vec<(i64, i64)>,
}

pub fn linking_numbers(d: &LinkDiagram) -> Result<LinkingNumbers, InvariantError> {
    if d.num_components() != 2 {
        return Err(InvariantError::Components(d.num_components()));
    }
    let (mut lk_1_2, mut lk_2_1) = (0, 0);
    for c in d.crossings() {
        if let Crossing::Classical { sign, over, under, .. } = *c {
            match (over.0, under.0) {
                (0, 1) => lk_1_2 += sign.as_int(),
                (1, 0) => lk_2_1 += sign.as_int(),
                _ => {}
            }
        }
    }
    let vp = crate::algebra::named_pair("antiflip2-flip2").expect("bundled pair");
    let f = vec![1, 0, 0, 1];
    let cp = CocyclePair::new(vp, crate::fpgroup::Integers, f, vec![0; 4])?;
    let mut c_exponents: Vec<(i64, i64)> = colorings(d, &cp.vp)
        .iter()
        .map(|c| {
            let p = products(d, &cp, c);
            (p[0], p[1])
        })
        .collect();
    c_exponents.sort();
    Ok(LinkingNumbers { lk_1_2, lk_2_1, c_exponents })
}
