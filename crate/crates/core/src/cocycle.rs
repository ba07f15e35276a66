//! Noncommutative 2-cocycle pairs: axiom instances, checking, the universal
//! group, cohomologous transformations and abelian state-sum conditions.

use std::fmt;

use thiserror::Error;

use crate::algebra::VirtualPair;
use crate::fpgroup::{
    find_homs, relator_canonical, tietze_simplify, FiniteGroup, FpError, Group, Homomorphism, Presentation, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("expected {expected} table entries, got {got}")]
    BadShape { expected: usize, got: usize },
    #[error("homomorphism has {got} images for {expected} generators")]
    IncompatibleHom { expected: usize, got: usize },
    #[error("target group is not abelian")]
    NotAbelian,
    #[error(transparent)]
    Fp(#[from] FpError),
}

/// Axiom families: the noncommutative ones and the abelian state-sum ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    F1,
    F2,
    F3,
    G1,
    G2,
    G3,
    G4,
    G5,
    M1,
    M2,
    M3,
    SsF1,
    SsF2,
    SsG1,
    SsG2,
    SsG3,
    SsM,
}

impl Axiom {
    pub const NONCOMMUTATIVE: [Axiom; 11] = [
        Axiom::F1,
        Axiom::F2,
        Axiom::F3,
        Axiom::G1,
        Axiom::G2,
        Axiom::G3,
        Axiom::G4,
        Axiom::G5,
        Axiom::M1,
        Axiom::M2,
        Axiom::M3,
    ];

    pub const STATE_SUM: [Axiom; 6] = [Axiom::SsF1, Axiom::SsF2, Axiom::SsG1, Axiom::SsG2, Axiom::SsG3, Axiom::SsM];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::F1 => "f1",
            Axiom::F2 => "f2",
            Axiom::F3 => "f3",
            Axiom::G1 => "g1",
            Axiom::G2 => "g2",
            Axiom::G3 => "g3",
            Axiom::G4 => "g4",
            Axiom::G5 => "g5",
            Axiom::M1 => "m1",
            Axiom::M2 => "m2",
            Axiom::M3 => "m3",
            Axiom::SsF1 => "ss-f1",
            Axiom::SsF2 => "ss-f2",
            Axiom::SsG1 => "ss-g1",
            Axiom::SsG2 => "ss-g2",
            Axiom::SsG3 => "ss-g3",
            Axiom::SsM => "ss-m",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    F,
    G,
}

/// `f(x,y)` or `g(x,y)` inside an axiom instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub weight: Weight,
    pub x: usize,
    pub y: usize,
}

/// One equation `lhs = rhs` between products of weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub axiom: Axiom,
    pub args: Vec<usize>,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

fn f(x: usize, y: usize) -> Term {
    Term { weight: Weight::F, x, y }
}

fn g(x: usize, y: usize) -> Term {
    Term { weight: Weight::G, x, y }
}

/// Every instance of the requested families, in family order and then
/// lexicographic order of the arguments.
pub fn instances(vp: &VirtualPair, families: &[Axiom]) -> Vec<Instance> {
    let n = vp.n();
    let s = |x, y| vp.s().apply(x, y);
    let b = |x, y| vp.beta().apply(x, y);
    let s1 = |x, y| s(x, y).0;
    let s2 = |x, y| s(x, y).1;
    let b1 = |x, y| b(x, y).0;
    let b2 = |x, y| b(x, y).1;
    let fix_s = vp.s().s();
    let fix_b = vp.beta().s();
    let mut out = Vec::new();
    for &axiom in families {
        let mut push = |args: Vec<usize>, lhs: Vec<Term>, rhs: Vec<Term>| {
            out.push(Instance { axiom, args, lhs, rhs });
        };
        match axiom {
            Axiom::F3 | Axiom::SsF1 => {
                for x in 0..n {
                    push(vec![x], vec![f(x, fix_s[x])], vec![]);
                }
            }
            Axiom::G1 | Axiom::SsG1 => {
                for x in 0..n {
                    push(vec![x], vec![g(x, fix_b[x])], vec![]);
                }
            }
            Axiom::G2 | Axiom::SsG2 => {
                for x in 0..n {
                    for y in 0..n {
                        let (p, q) = b(x, y);
                        push(vec![x, y], vec![g(x, y), g(p, q)], vec![]);
                    }
                }
            }
            _ => {
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            let (lhs, rhs) = match axiom {
                                Axiom::F1 => {
                                    let u = s1(y, z);
                                    (
                                        vec![f(x, y), f(s2(x, y), z)],
                                        vec![f(x, u), f(s2(x, u), s2(y, z))],
                                    )
                                }
                                Axiom::F2 => (vec![f(s1(x, y), s1(s2(x, y), z))], vec![f(y, z)]),
                                Axiom::G3 => {
                                    let u = b1(y, z);
                                    (
                                        vec![g(x, y), g(b2(x, y), z)],
                                        vec![g(x, u), g(b2(x, u), b2(y, z))],
                                    )
                                }
                                Axiom::G4 => {
                                    let u = b1(y, z);
                                    (
                                        vec![g(y, z), g(b2(x, u), b2(y, z))],
                                        vec![g(x, y), g(b1(x, y), b1(b2(x, y), z))],
                                    )
                                }
                                Axiom::G5 => (
                                    vec![g(y, z), g(x, b1(y, z))],
                                    vec![g(b2(x, y), z), g(b1(x, y), b1(b2(x, y), z))],
                                ),
                                Axiom::M1 => (vec![g(y, z)], vec![g(s1(x, y), b1(s2(x, y), z))]),
                                Axiom::M2 => (
                                    vec![g(y, z), g(x, b1(y, z))],
                                    vec![g(s2(x, y), z), g(s1(x, y), b1(s2(x, y), z))],
                                ),
                                Axiom::M3 => {
                                    let u = b1(y, z);
                                    (vec![g(x, u), f(b2(x, u), b2(y, z))], vec![f(x, y), g(s2(x, y), z)])
                                }
                                Axiom::SsF2 => {
                                    let u = s1(y, z);
                                    (
                                        vec![f(x, y), f(s2(x, y), z), f(s1(x, y), s1(s2(x, y), z))],
                                        vec![f(x, u), f(s2(x, u), s2(y, z)), f(y, z)],
                                    )
                                }
                                Axiom::SsG3 => {
                                    let u = b1(y, z);
                                    (
                                        vec![g(x, y), g(b2(x, y), z), g(b1(x, y), b1(b2(x, y), z))],
                                        vec![g(x, u), g(b2(x, u), b2(y, z)), g(y, z)],
                                    )
                                }
                                Axiom::SsM => {
                                    let u = b1(y, z);
                                    (
                                        vec![g(y, z), g(x, u), f(b2(x, u), b2(y, z))],
                                        vec![g(s1(x, y), b1(s2(x, y), z)), g(s2(x, y), z), f(x, y)],
                                    )
                                }
                                _ => unreachable!("handled above"),
                            };
                            push(vec![x, y, z], lhs, rhs);
                        }
                    }
                }
            }
        }
    }
    out
}

/// A failed axiom instance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub axiom: Axiom,
    pub args: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(usize::to_string).collect();
        write!(f, "{} at ({})", self.axiom, args.join(","))
    }
}

/// Weights `f, g : X x X -> H` over a virtual pair.
#[derive(Clone)]
pub struct CocyclePair<G: Group> {
    pub vp: VirtualPair,
    pub group: G,
    f: Vec<G::Elem>,
    g: Vec<G::Elem>,
}

impl<G: Group + fmt::Debug> fmt::Debug for CocyclePair<G> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("CocyclePair").field("group", &self.group).field("f", &self.f).field("g", &self.g).finish()
    }
}

impl<G: Group> CocyclePair<G> {
    /// `f` and `g` are row-major `n x n` tables.
    pub fn new(vp: VirtualPair, group: G, f: Vec<G::Elem>, g: Vec<G::Elem>) -> Result<Self, CocycleError> {
        let expected = vp.n() * vp.n();
        for t in [&f, &g] {
            if t.len() != expected {
                return Err(CocycleError::BadShape { expected, got: t.len() });
            }
        }
        Ok(Self { vp, group, f, g })
    }

    pub fn trivial(vp: VirtualPair, group: G) -> Self {
        let k = vp.n() * vp.n();
        let e = group.identity();
        Self { f: vec![e.clone(); k], g: vec![e; k], vp, group }
    }

    pub fn n(&self) -> usize {
        self.vp.n()
    }

    pub fn f(&self, x: usize, y: usize) -> &G::Elem {
        &self.f[x * self.n() + y]
    }

    pub fn g(&self, x: usize, y: usize) -> &G::Elem {
        &self.g[x * self.n() + y]
    }

    pub fn f_table(&self) -> &[G::Elem] {
        &self.f
    }

    pub fn g_table(&self) -> &[G::Elem] {
        &self.g
    }

    pub fn value(&self, t: Term) -> &G::Elem {
        match t.weight {
            Weight::F => self.f(t.x, t.y),
            Weight::G => self.g(t.x, t.y),
        }
    }

    pub fn product(&self, terms: &[Term]) -> G::Elem {
        terms.iter().fold(self.group.identity(), |acc, &t| self.group.mul(&acc, self.value(t)))
    }

    /// Violated instances of the given families; empty means all hold.
    pub fn violations(&self, families: &[Axiom]) -> Vec<Violation> {
        instances(&self.vp, families)
            .into_iter()
            .filter(|i| self.product(&i.lhs) != self.product(&i.rhs))
            .map(|i| Violation { axiom: i.axiom, args: i.args })
            .collect()
    }

    /// Violations of the eleven noncommutative families.
    pub fn check(&self) -> Vec<Violation> {
        self.violations(&Axiom::NONCOMMUTATIVE)
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }
}

/// Checks the noncommutative axioms over a finite target.
pub fn check_pair(cp: &CocyclePair<FiniteGroup>) -> Vec<Violation> {
    cp.check()
}

/// Checks the state-sum conditions; the target must be abelian.
pub fn check_state_sum_pair(cp: &CocyclePair<FiniteGroup>) -> Result<Vec<Violation>, CocycleError> {
    if !cp.group.is_abelian() {
        return Err(CocycleError::NotAbelian);
    }
    Ok(cp.violations(&Axiom::STATE_SUM))
}

/// Result of checking a word-valued pair over a presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedReport {
    /// Instances whose sides are equal as reduced words.
    pub literal: usize,
    /// Instances whose quotient of sides is a conjugate of a relator or
    /// of its inverse.
    pub relator_conjugates: usize,
    /// Instances only confirmed in every homomorphic image in the battery.
    pub battery_verified: usize,
    /// Instances refuted by some finite image, with the group name.
    pub violations: Vec<(Violation, String)>,
}

impl PresentedReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks word-valued weights over `p`: syntactically first, then through
/// every homomorphism from `p` into each battery group.
pub fn check_presented(
    vp: &VirtualPair,
    p: &Presentation,
    f: &[Word],
    g: &[Word],
    battery: &[FiniteGroup],
    max_gens: usize,
) -> Result<PresentedReport, CocycleError> {
    let cp = CocyclePair::new(vp.clone(), crate::fpgroup::FreeGroup, f.to_vec(), g.to_vec())?;
    let mut homs: Option<Vec<Homomorphism>> = None;
    let mut report = PresentedReport { literal: 0, relator_conjugates: 0, battery_verified: 0, violations: Vec::new() };
    let known: std::collections::BTreeSet<Word> = p.relators.iter().map(relator_canonical).collect();
    for inst in instances(vp, &Axiom::NONCOMMUTATIVE) {
        let diff = cp.product(&inst.lhs).mul(&cp.product(&inst.rhs).inverse());
        if diff.is_empty() {
            report.literal += 1;
            continue;
        }
        if known.contains(&relator_canonical(&diff)) {
            report.relator_conjugates += 1;
            continue;
        }
        if homs.is_none() {
            let mut all = Vec::new();
            for grp in battery {
                all.extend(find_homs(p, grp, max_gens)?);
            }
            homs = Some(all);
        }
        let bad = homs.iter().flatten().find(|h| evaluate_in(&h.target, &h.images, &diff) != 0);
        match bad {
            Some(h) => report
                .violations
                .push((Violation { axiom: inst.axiom, args: inst.args }, h.target.name().to_string())),
            None => report.battery_verified += 1,
        }
    }
    Ok(report)
}

/// The universal group with its cocycle pair.
#[derive(Debug, Clone)]
pub struct UniversalPair {
    pub vp: VirtualPair,
    /// One generator per symbol `(x,y)_f`, `(x,y)_g` and one relator per
    /// axiom instance.
    pub presentation: Presentation,
    pub simplified: Presentation,
    pub exhausted: bool,
    pub pi_f: Vec<Word>,
    pub pi_g: Vec<Word>,
}

pub const DEFAULT_TIETZE_BUDGET: usize = 100_000;

/// Name of the generator for `(x,y)_f` or `(x,y)_g`, 1-based like the
/// usual tables (`f12`), with a separator once labels exceed one digit.
pub fn symbol_name(weight: Weight, x: usize, y: usize, n: usize) -> String {
    let p = match weight {
        Weight::F => 'f',
        Weight::G => 'g',
    };
    if n <= 9 {
        format!("{p}{}{}", x + 1, y + 1)
    } else {
        format!("{p}{}_{}", x + 1, y + 1)
    }
}

fn symbol_gen(t: Term, n: usize) -> usize {
    match t.weight {
        Weight::F => t.x * n + t.y,
        Weight::G => n * n + t.x * n + t.y,
    }
}

fn terms_word(terms: &[Term], n: usize) -> Word {
    terms.iter().fold(Word::identity(), |acc, &t| acc.mul(&Word::gen(symbol_gen(t, n))))
}

/// Relator-per-instance presentation of the universal group, before any
/// simplification.
pub fn raw_universal_presentation(vp: &VirtualPair) -> Presentation {
    let n = vp.n();
    let mut gens = Vec::with_capacity(2 * n * n);
    for w in [Weight::F, Weight::G] {
        for x in 0..n {
            for y in 0..n {
                gens.push(symbol_name(w, x, y, n));
            }
        }
    }
    let relators = instances(vp, &Axiom::NONCOMMUTATIVE)
        .iter()
        .map(|i| terms_word(&i.lhs, n).mul(&terms_word(&i.rhs, n).inverse()))
        .collect();
    Presentation::new(gens, relators)
}

pub fn universal_presentation(vp: &VirtualPair) -> UniversalPair {
    universal_presentation_with_budget(vp, DEFAULT_TIETZE_BUDGET)
}

pub fn universal_presentation_with_budget(vp: &VirtualPair, budget: usize) -> UniversalPair {
    let n = vp.n();
    let presentation = raw_universal_presentation(vp);
    let simp = tietze_simplify(&presentation, budget);
    let alias = |w, x, y| simp.presentation.alias(&symbol_name(w, x, y, n)).expect("every symbol has an alias");
    let mut pi_f = Vec::with_capacity(n * n);
    let mut pi_g = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            pi_f.push(alias(Weight::F, x, y));
            pi_g.push(alias(Weight::G, x, y));
        }
    }
    UniversalPair { vp: vp.clone(), presentation, simplified: simp.presentation, exhausted: simp.exhausted, pi_f, pi_g }
}

impl UniversalPair {
    pub fn pi_f(&self, x: usize, y: usize) -> &Word {
        &self.pi_f[x * self.vp.n() + y]
    }

    pub fn pi_g(&self, x: usize, y: usize) -> &Word {
        &self.pi_g[x * self.vp.n() + y]
    }

    /// Checks `(pi_f, pi_g)` against the simplified presentation.
    pub fn check(&self, battery: &[FiniteGroup], max_gens: usize) -> Result<PresentedReport, CocycleError> {
        check_presented(&self.vp, &self.simplified, &self.pi_f, &self.pi_g, battery, max_gens)
    }

    /// Pushes the universal pair through a homomorphism out of the
    /// simplified presentation.
    pub fn specialize(&self, hom: &Homomorphism) -> Result<CocyclePair<FiniteGroup>, CocycleError> {
        let f = self.specialize_in(&hom.target, &hom.images)?;
        Ok(f)
    }

    /// Same for any group, given images of the simplified generators.
    pub fn specialize_in<G: Group + Clone>(&self, group: &G, images: &[G::Elem]) -> Result<CocyclePair<G>, CocycleError> {
        let expected = self.simplified.num_gens();
        if images.len() != expected {
            return Err(CocycleError::IncompatibleHom { expected, got: images.len() });
        }
        let eval = |w: &Word| evaluate_in(group, images, w);
        let f = self.pi_f.iter().map(eval).collect();
        let g = self.pi_g.iter().map(eval).collect();
        CocyclePair::new(self.vp.clone(), group.clone(), f, g)
    }
}

/// Product of generator images along a word.
pub fn evaluate_in<G: Group>(group: &G, images: &[G::Elem], w: &Word) -> G::Elem {
    w.letters().iter().fold(group.identity(), |acc, l| {
        let v = &images[l.gen];
        if l.exp > 0 {
            group.mul(&acc, v)
        } else {
            group.mul(&acc, &group.inv(v))
        }
    })
}

pub fn specialize(up: &UniversalPair, hom: &Homomorphism) -> Result<CocyclePair<FiniteGroup>, CocycleError> {
    up.specialize(hom)
}

/// Each condition of the cohomology lemma, evaluated for one `lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport {
    /// `lambda(y) = lambda(S^1(x,y))` for all `x, y`.
    pub f2_condition: bool,
    /// `lambda(x) = lambda(s_S(x))`.
    pub f3_condition: bool,
    /// `lambda(x) = lambda(s_beta(x))`.
    pub g1_condition: bool,
    /// `lambda(y) = lambda(beta^1(x,y))` for all `x, y`.
    pub beta1_condition: bool,
    /// `lambda(beta^2(x,y)) = lambda(x)` for all `x, y`.
    pub beta2_condition: bool,
    /// `lambda(x)` commutes with `g(x,y)` for all `x, y`.
    pub commutes: bool,
    /// `[lambda(x), g(x,y)] [g(x,y), lambda(y)] = 1` for all `x, y`.
    pub commutator_condition: bool,
    /// `lambda(x) lambda(beta^2(x,y))^-1 lambda(beta^1(x,y)) lambda(y)^-1 = 1`.
    pub trivial_g2_condition: bool,
    /// The side conditions of the definition of cohomologous pairs.
    pub cohomologous: bool,
    /// Axiom violations of `(f_lambda, g_lambda)`.
    pub transformed: Vec<Violation>,
    /// Axiom violations of `(f_lambda, g)`.
    pub f_only: Vec<Violation>,
}

/// `f_lambda(x,y) = lambda(x) f(x,y) lambda(S^2(x,y))^-1` and
/// `g_lambda(x,y) = lambda(x) g(x,y) lambda(beta^2(x,y))^-1`.
pub fn lambda_transform<G: Group + Clone>(cp: &CocyclePair<G>, lambda: &[G::Elem]) -> (CocyclePair<G>, LambdaReport) {
    let n = cp.n();
    let grp = &cp.group;
    let vp = &cp.vp;
    let lam = |x: usize| &lambda[x];
    let conj = |x: usize, v: &G::Elem, z: usize| grp.mul(&grp.mul(lam(x), v), &grp.inv(lam(z)));
    let mut fl = Vec::with_capacity(n * n);
    let mut gl = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            fl.push(conj(x, cp.f(x, y), vp.s().second(x, y)));
            gl.push(conj(x, cp.g(x, y), vp.beta().second(x, y)));
        }
    }
    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    let comm = |a: &G::Elem, b: &G::Elem| grp.mul(&grp.mul(a, b), &grp.mul(&grp.inv(a), &grp.inv(b)));
    let e = grp.identity();
    let f2_condition = pairs().all(|(x, y)| lam(y) == lam(vp.s().first(x, y)));
    let f3_condition = (0..n).all(|x| lam(x) == lam(vp.s().s()[x]));
    let g1_condition = (0..n).all(|x| lam(x) == lam(vp.beta().s()[x]));
    let beta1_condition = pairs().all(|(x, y)| lam(y) == lam(vp.beta().first(x, y)));
    let beta2_condition = pairs().all(|(x, y)| lam(vp.beta().second(x, y)) == lam(x));
    let commutes = pairs().all(|(x, y)| grp.commute(lam(x), cp.g(x, y)));
    let commutator_condition =
        pairs().all(|(x, y)| grp.mul(&comm(lam(x), cp.g(x, y)), &comm(cp.g(x, y), lam(y))) == e);
    let trivial_g2_condition = pairs().all(|(x, y)| {
        let (b1, b2) = vp.beta().apply(x, y);
        let v = grp.mul_all([lam(x), &grp.inv(lam(b2)), lam(b1), &grp.inv(lam(y))]);
        v == e
    });
    let cohomologous = f3_condition && f2_condition && beta1_condition && commutes;
    let transformed = CocyclePair { vp: vp.clone(), group: grp.clone(), f: fl.clone(), g: gl };
    let f_only = CocyclePair { vp: vp.clone(), group: grp.clone(), f: fl, g: cp.g.clone() };
    let report = LambdaReport {
        f2_condition,
        f3_condition,
        g1_condition,
        beta1_condition,
        beta2_condition,
        commutes,
        commutator_condition,
        trivial_g2_condition,
        cohomologous,
        transformed: transformed.check(),
        f_only: f_only.check(),
    };
    (transformed, report)
}

/// Coefficient group of a cocycle-pair file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Finite(FiniteGroup),
    Presented(Presentation),
}

impl Target {
    /// `gens: a b | rel | rel` inline, a battery group name, or the text of
    /// a presentation or group-table file.
    pub fn parse(text: &str) -> Result<Self, CocycleError> {
        let t = text.trim();
        if let Some(g) = FiniteGroup::by_name(t) {
            return Ok(Target::Finite(g));
        }
        if t.starts_with("gens:") {
            let body = if t.contains('\n') { t.to_string() } else { t.replace('|', "\n") };
            return Ok(Target::Presented(Presentation::parse(&body)?));
        }
        Ok(Target::Finite(FiniteGroup::parse("H", t)?))
    }
}

/// Raw contents of a cocycle-pair file: a solution file with both tables,
/// a `target:` line, then `n` rows of `f`, a blank line and `n` rows of
/// `g`. Cells are element labels or indices for finite targets and words
/// with `*` between letters (`a*h^-1`) for presented ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleFile {
    pub vp: VirtualPair,
    pub target: String,
    pub f: Vec<String>,
    pub g: Vec<String>,
}

fn ferr(line: usize, msg: impl Into<String>) -> crate::io::IoError {
    crate::io::IoError::Parse { line, msg: msg.into() }
}

impl CocycleFile {
    pub fn parse(text: &str) -> Result<Self, crate::io::IoError> {
        let (s, beta, rest) = crate::io::parse_solution_prefix(text)?;
        let beta = beta.ok_or_else(|| ferr(0, "cocycle file needs both S and beta"))?;
        let vp = VirtualPair::from_tables(s, beta)?;
        let n = vp.n();
        let mut lines = rest.into_iter().filter(|(_, l)| !l.trim().is_empty());
        let (tl, tline) = lines.next().ok_or_else(|| ferr(0, "missing 'target:' line"))?;
        let target = tline.trim().strip_prefix("target:").ok_or_else(|| ferr(tl, "expected 'target:'"))?.trim().to_string();
        let mut block = |what: &str| -> Result<Vec<String>, crate::io::IoError> {
            let mut cells = Vec::with_capacity(n * n);
            for _ in 0..n {
                let (ln, l) = lines.next().ok_or_else(|| ferr(0, format!("expected {n} rows of {what}")))?;
                let row: Vec<String> = l.split_whitespace().map(str::to_string).collect();
                if row.len() != n {
                    return Err(ferr(ln, format!("expected {n} cells, found {}", row.len())));
                }
                cells.extend(row);
            }
            Ok(cells)
        };
        let f = block("f")?;
        let g = block("g")?;
        if let Some((ln, l)) = lines.next() {
            return Err(ferr(ln, format!("unexpected content '{l}'")));
        }
        Ok(Self { vp, target, f, g })
    }

    pub fn to_text(&self, base: usize) -> String {
        let n = self.vp.n();
        let mut out =
            crate::io::format_solution_file(self.vp.s().table(), Some(self.vp.beta().table()), base);
        out.push_str(&format!("target: {}\n", self.target));
        for (i, t) in [&self.f, &self.g].into_iter().enumerate() {
            if i == 1 {
                out.push('\n');
            }
            for row in t.chunks(n) {
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    /// Values over a finite group: labels, or indices when no label matches.
    pub fn finite(&self, group: &FiniteGroup) -> Result<CocyclePair<FiniteGroup>, CocycleError> {
        let parse = |c: &String| -> Result<usize, CocycleError> {
            group
                .element(c)
                .or_else(|| c.parse::<usize>().ok().filter(|&v| v < group.order()))
                .ok_or_else(|| FpError::Parse { line: 0, msg: format!("'{c}' is not an element of {}", group.name()) }.into())
        };
        let f = self.f.iter().map(parse).collect::<Result<_, _>>()?;
        let g = self.g.iter().map(parse).collect::<Result<_, _>>()?;
        CocyclePair::new(self.vp.clone(), group.clone(), f, g)
    }

    /// Values as words over a presentation.
    pub fn words(&self, p: &Presentation) -> Result<(Vec<Word>, Vec<Word>), CocycleError> {
        let parse = |c: &String| -> Result<Word, CocycleError> {
            Word::parse(&c.replace('*', " "), &p.gens).map_err(|msg| FpError::Parse { line: 0, msg }.into())
        };
        Ok((
            self.f.iter().map(parse).collect::<Result<_, _>>()?,
            self.g.iter().map(parse).collect::<Result<_, _>>()?,
        ))
    }
}

/// Word-valued pair over a presented group.
#[derive(Debug, Clone)]
pub struct PresentedPair {
    pub vp: VirtualPair,
    pub presentation: Presentation,
    pub f: Vec<Word>,
    pub g: Vec<Word>,
}

impl PresentedPair {
    pub fn check(&self, battery: &[FiniteGroup], max_gens: usize) -> Result<PresentedReport, CocycleError> {
        check_presented(&self.vp, &self.presentation, &self.f, &self.g, battery, max_gens)
    }

    /// The finite pair obtained through a homomorphism out of the presentation.
    pub fn image(&self, hom: &Homomorphism) -> Result<CocyclePair<FiniteGroup>, CocycleError> {
        if hom.images.len() != self.presentation.num_gens() {
            return Err(CocycleError::IncompatibleHom { expected: self.presentation.num_gens(), got: hom.images.len() });
        }
        let ev = |w: &Word| evaluate_in(&hom.target, &hom.images, w);
        CocyclePair::new(self.vp.clone(), hom.target.clone(), self.f.iter().map(ev).collect(), self.g.iter().map(ev).collect())
    }
}

impl From<&UniversalPair> for PresentedPair {
    fn from(u: &UniversalPair) -> Self {
        Self { vp: u.vp.clone(), presentation: u.simplified.clone(), f: u.pi_f.clone(), g: u.pi_g.clone() }
    }
}

const COCYCLE_FILES: &[(&str, &str)] = &[
    ("paper-z4", include_str!("../data/cocycles/paper-z4.txt")),
    ("flip2-flip2", include_str!("../data/cocycles/flip2-flip2.txt")),
    ("self-linking", include_str!("../data/cocycles/self-linking.txt")),
    ("virtual-h", include_str!("../data/cocycles/virtual-h.txt")),
    ("antiflip2-flip2", include_str!("../data/cocycles/antiflip2-flip2.txt")),
];

pub fn named_cocycle_names() -> Vec<&'static str> {
    COCYCLE_FILES.iter().map(|(n, _)| *n).collect()
}

pub fn named_cocycle_text(name: &str) -> Option<&'static str> {
    COCYCLE_FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A bundled word-valued cocycle pair.
pub fn named_cocycle(name: &str) -> Option<PresentedPair> {
    let file = CocycleFile::parse(named_cocycle_text(name)?).expect("bundled cocycle files parse");
    match Target::parse(&file.target).expect("bundled targets parse") {
        Target::Presented(p) => {
            let (f, g) = file.words(&p).expect("bundled words parse");
            Some(PresentedPair { vp: file.vp, presentation: p, f, g })
        }
        Target::Finite(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{named_pair, SolutionTable};
    use crate::enumerate::{enumerate_virtual_pairs, PairMode};
    use crate::fpgroup::{FreeGroup, Integers, DEFAULT_MAX_GENS};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn small_pairs() -> Vec<VirtualPair> {
        (1..=3)
            .flat_map(|n| enumerate_virtual_pairs(n, PairMode::Involutive, false).unwrap())
            .map(|c| c.representative.to_virtual_pair().unwrap())
            .collect()
    }

    fn word(p: &Presentation, text: &str) -> Word {
        Word::parse(text, &p.gens).unwrap()
    }

    #[test]
    fn instance_counts() {
        let vp = named_pair("paper-z4").unwrap();
        let all = instances(&vp, &Axiom::NONCOMMUTATIVE);
        assert_eq!(all.len(), 4 + 4 + 16 + 8 * 64);
        let order: Vec<Axiom> = all.iter().map(|i| i.axiom).collect();
        let mut sorted = order.clone();
        sorted.sort();
        assert_eq!(order, sorted);
    }

    #[test]
    fn trivial_pairs_are_valid() {
        for vp in small_pairs() {
            assert!(CocyclePair::trivial(vp.clone(), FiniteGroup::quaternion()).is_valid());
            let cp = CocyclePair::trivial(vp, FiniteGroup::cyclic(2));
            assert!(check_state_sum_pair(&cp).unwrap().is_empty());
        }
    }

    #[test]
    fn bundled_pairs_check() {
        for name in ["flip2-flip2", "self-linking", "virtual-h", "antiflip2-flip2"] {
            let pp = named_cocycle(name).unwrap();
            let report = pp.check(&FiniteGroup::battery(), DEFAULT_MAX_GENS).unwrap();
            assert!(report.is_valid(), "{name}: {:?}", report.violations);
        }
        let tables = |vp: &VirtualPair| (vp.s().table().clone(), vp.beta().table().clone());
        for (file, pair) in [("virtual-h", "flip2-flip2"), ("antiflip2-flip2", "antiflip2-flip2")] {
            assert_eq!(tables(&named_cocycle(file).unwrap().vp), tables(&named_pair(pair).unwrap()), "{file}");
        }
    }

    #[test]
    fn z4_tables_break_only_m3() {
        // m3 at (0,1,0) forces f(2,1) = f(0,1), which these tables violate.
        let pp = named_cocycle("paper-z4").unwrap();
        let report = pp.check(&FiniteGroup::battery(), DEFAULT_MAX_GENS).unwrap();
        assert_eq!(report.violations.len(), 16);
        assert!(report.violations.iter().all(|(v, _)| v.axiom == Axiom::M3));
        assert_eq!(report.violations[0].0.args, vec![0, 1, 0]);
        let up = universal_presentation(&pp.vp);
        assert_eq!(up.simplified.num_gens(), 3);
        assert_eq!(up.pi_f(0, 1), up.pi_f(2, 1));
    }

    #[test]
    fn flip_example_by_hand() {
        // f(1,2)=a, f(2,1)=b, g(1,2)=h, g(2,1)=h^-1, everything else 1.
        let pp = named_cocycle("flip2-flip2").unwrap();
        let q8 = FiniteGroup::quaternion();
        let homs = find_homs(&pp.presentation, &q8, DEFAULT_MAX_GENS).unwrap();
        assert!(!homs.is_empty());
        for h in &homs {
            assert!(pp.image(h).unwrap().is_valid());
        }
        // Dropping [b,h] breaks the pair: a hom with b, h not commuting exists.
        let loose = Presentation::parse("gens: a b h\na h a^-1 h^-1\n").unwrap();
        let report = check_presented(&pp.vp, &loose, &pp.f, &pp.g, &[q8], DEFAULT_MAX_GENS).unwrap();
        assert!(!report.is_valid());
    }

    #[test]
    fn mutated_z4_pair_is_rejected() {
        let file = CocycleFile::parse(named_cocycle_text("paper-z4").unwrap()).unwrap();
        let mut file2 = file.clone();
        file2.g[1] = "1".into();
        let Target::Presented(p) = Target::parse(&file.target).unwrap() else { panic!() };
        let (f, g) = file2.words(&p).unwrap();
        let report = check_presented(&file.vp, &p, &f, &g, &FiniteGroup::battery(), DEFAULT_MAX_GENS).unwrap();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|(v, _)| v.axiom == Axiom::G2));
    }

    #[test]
    fn cocycle_file_round_trip() {
        for name in named_cocycle_names() {
            let file = CocycleFile::parse(named_cocycle_text(name).unwrap()).unwrap();
            let again = CocycleFile::parse(&file.to_text(0)).unwrap();
            assert_eq!(again, file);
        }
        let text = "n=1 base=0\n0,0\n\n0,0\ntarget: Z3\n2\n\n1\n";
        let file = CocycleFile::parse(text).unwrap();
        let Target::Finite(z3) = Target::parse(&file.target).unwrap() else { panic!() };
        let cp = file.finite(&z3).unwrap();
        assert_eq!(cp.f_table(), &[2]);
        assert!(!cp.is_valid());
        assert!(CocycleFile::parse("n=1 base=0\n0,0\n\n0,0\ntarget: Z3\n2 1\n\n1\n").is_err());
    }

    #[test]
    fn universal_flip_flip() {
        let up = universal_presentation(&named_pair("flip2-flip2").unwrap());
        assert!(!up.exhausted);
        assert_eq!(up.presentation.num_gens(), 8);
        let p = &up.simplified;
        assert_eq!(p.num_gens(), 3);
        assert_eq!(p.relators.len(), 2);
        for r in &p.relators {
            assert_eq!(r.len(), 4);
            let gens: Vec<usize> = r.gens().into_iter().collect();
            assert_eq!(gens.len(), 2);
            let (x, y) = (Word::gen(gens[0]), Word::gen(gens[1]));
            let c = relator_canonical(&Word::commutator(&x, &y));
            assert_eq!(relator_canonical(r), c);
        }
        for (x, y) in [(0, 0), (1, 1)] {
            assert!(up.pi_f(x, y).is_empty());
            assert!(up.pi_g(x, y).is_empty());
        }
        assert_eq!(up.pi_g(1, 0), &up.pi_g(0, 1).inverse());
        // Every relator commutes the g generator with one f generator.
        let h = up.pi_g(0, 1).gens();
        assert!(p.relators.iter().all(|r| h.iter().all(|g| r.gens().contains(g))));
    }

    #[test]
    fn universal_antiflip_flip() {
        let up = universal_presentation(&named_pair("antiflip2-flip2").unwrap());
        let p = &up.simplified;
        assert_eq!(p.num_gens(), 1);
        assert!(p.relators.is_empty());
        assert_eq!(up.pi_f(0, 0), &Word::gen(0));
        assert_eq!(up.pi_f(1, 1), &Word::gen(0));
        assert!(up.pi_f(0, 1).is_empty() && up.pi_f(1, 0).is_empty());
        assert!(up.pi_g.iter().all(Word::is_empty));
    }

    #[test]
    fn universal_into_integers() {
        let up = universal_presentation(&named_pair("flip2-flip2").unwrap());
        let h = up.pi_g(0, 1).gens().into_iter().next().unwrap();
        let images: Vec<i64> = (0..3).map(|i| if i == h { 1 } else { 0 }).collect();
        let sign = up.pi_g(0, 1).exponent_sum(h);
        let cp = up.specialize_in(&Integers, &images).unwrap();
        assert_eq!(*cp.g(0, 1), sign);
        assert_eq!(*cp.g(1, 0), -sign);
        assert!(cp.is_valid());
        let free = up.specialize_in(&FreeGroup, &(0..3).map(Word::gen).collect::<Vec<_>>()).unwrap();
        assert_eq!(free.f_table(), up.pi_f.as_slice());
        assert!(up.specialize_in(&Integers, &[0, 1]).is_err());
    }

    #[test]
    fn universal_pairs_pass_every_instance() {
        for vp in small_pairs() {
            let up = universal_presentation(&vp);
            let report = up.check(&FiniteGroup::battery(), DEFAULT_MAX_GENS).unwrap();
            assert!(report.is_valid(), "{vp:?}");
            assert_eq!(report.battery_verified, 0, "{vp:?}");
        }
    }

    #[test]
    fn specializations_are_valid() {
        let battery = FiniteGroup::battery();
        for vp in small_pairs() {
            let up = universal_presentation(&vp);
            if up.simplified.num_gens() > 4 {
                continue;
            }
            for g in &battery {
                for hom in find_homs(&up.simplified, g, DEFAULT_MAX_GENS).unwrap() {
                    assert!(up.specialize(&hom).unwrap().is_valid());
                }
            }
        }
    }

    #[test]
    fn raw_relator_order() {
        let vp = named_pair("flip2-flip2").unwrap();
        let raw = raw_universal_presentation(&vp);
        assert_eq!(raw.relators.len(), 8 * 8 + 2 + 2 + 4);
        let f3 = &raw.relators[16];
        assert_eq!(f3, &Word::gen(0));
        assert_eq!(raw.gens[0], "f11");
        assert_eq!(raw.gens[7], "g22");
    }

    #[test]
    fn maximum_cycle_forces_trivial_g() {
        for name in ["dihedral3-i3(1,2,3)", "dihedral5-i5(1,2,3,4,5)"] {
            let up = universal_presentation(&named_pair(name).unwrap());
            assert!(up.pi_g.iter().all(Word::is_empty), "{name}");
        }
    }

    #[test]
    fn two_elements_one_f_class() {
        let up = universal_presentation(&named_pair("flip2-i2(1,2)").unwrap());
        let classes: std::collections::BTreeSet<Word> =
            up.pi_f.iter().filter(|w| !w.is_empty()).map(relator_canonical).collect();
        assert_eq!(classes.len(), 1);
        let f12 = relator_canonical(up.pi_f(0, 1));
        assert!(classes.contains(&f12));
    }

    fn random_finite_pairs(rng: &mut StdRng, count: usize) -> Vec<CocyclePair<FiniteGroup>> {
        let battery = FiniteGroup::battery();
        let mut out = Vec::new();
        for vp in small_pairs() {
            let up = universal_presentation(&vp);
            if up.simplified.num_gens() > 4 {
                continue;
            }
            for g in battery.iter().filter(|g| ["S3", "Q8", "Z4"].contains(&g.name())) {
                let homs = find_homs(&up.simplified, g, DEFAULT_MAX_GENS).unwrap();
                for _ in 0..count.min(homs.len()) {
                    out.push(up.specialize(&homs[rng.gen_range(0..homs.len())]).unwrap());
                }
            }
        }
        out
    }

    fn holds(cp: &CocyclePair<FiniteGroup>, a: Axiom) -> bool {
        cp.violations(&[a]).is_empty()
    }

    #[test]
    fn identity_lambda_is_neutral() {
        let mut rng = StdRng::seed_from_u64(7);
        for cp in random_finite_pairs(&mut rng, 2) {
            let (t, report) = lambda_transform(&cp, &vec![0; cp.n()]);
            assert_eq!(t.f_table(), cp.f_table());
            assert_eq!(t.g_table(), cp.g_table());
            assert!(report.cohomologous && report.transformed.is_empty());
        }
    }

    #[test]
    fn lambda_lemma_bullets() {
        let mut rng = StdRng::seed_from_u64(11);
        // counts of (condition, axiom holds) combinations
        let mut f2 = [0usize; 4];
        let mut coh = 0;
        for cp in random_finite_pairs(&mut rng, 3) {
            for _ in 0..8 {
                let lambda: Vec<usize> = (0..cp.n()).map(|_| rng.gen_range(0..cp.group.order())).collect();
                let (t, r) = lambda_transform(&cp, &lambda);
                assert!(holds(&t, Axiom::F1));
                assert!(holds(&t, Axiom::G3));
                assert_eq!(holds(&t, Axiom::F3), r.f3_condition);
                assert_eq!(holds(&t, Axiom::G1), r.g1_condition);
                assert_eq!(r.beta1_condition, r.beta2_condition);
                if r.beta1_condition {
                    assert_eq!(holds(&t, Axiom::G2), r.commutator_condition);
                }
                if cp.g_table().iter().all(|&v| v == 0) {
                    assert_eq!(holds(&t, Axiom::G2), r.trivial_g2_condition);
                }
                f2[(r.f2_condition as usize) * 2 + holds(&t, Axiom::F2) as usize] += 1;
                if r.cohomologous {
                    assert!(r.f_only.is_empty());
                    coh += 1;
                }
            }
        }
        // The f2 condition is sufficient but not necessary.
        assert_eq!(f2[2], 0);
        assert!(f2[1] > 0 && f2[3] > 0);
        assert!(coh > 0);
    }

    #[test]
    fn odd_order_targets_satisfy_state_sum() {
        let z3 = FiniteGroup::cyclic(3);
        let z5 = FiniteGroup::cyclic(5);
        for vp in small_pairs() {
            let up = universal_presentation(&vp);
            if up.simplified.num_gens() > 5 {
                continue;
            }
            for g in [&z3, &z5] {
                for hom in find_homs(&up.simplified, g, DEFAULT_MAX_GENS).unwrap() {
                    let cp = up.specialize(&hom).unwrap();
                    assert!(check_state_sum_pair(&cp).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn no_z2_state_sum_failure_up_to_three() {
        // Every noncommutative pair into Z/2 on at most three colors also
        // satisfies the state-sum conditions.
        let z2 = FiniteGroup::cyclic(2);
        let mut pairs = 0;
        for vp in small_pairs() {
            let up = universal_presentation(&vp);
            for hom in find_homs(&up.simplified, &z2, 12).unwrap() {
                let cp = up.specialize(&hom).unwrap();
                assert!(check_state_sum_pair(&cp).unwrap().is_empty());
                pairs += 1;
            }
        }
        assert_eq!(pairs, 995);
    }

    #[test]
    fn state_sum_needs_abelian_target() {
        let vp = named_pair("flip2-flip2").unwrap();
        let cp = CocyclePair::trivial(vp, FiniteGroup::symmetric3());
        assert_eq!(check_state_sum_pair(&cp), Err(CocycleError::NotAbelian));
    }

    #[test]
    fn bad_shapes() {
        let vp = VirtualPair::from_tables(SolutionTable::flip(2), SolutionTable::flip(2)).unwrap();
        assert!(CocyclePair::new(vp, Integers, vec![0; 3], vec![0; 4]).is_err());
    }

    #[test]
    fn pair_248_matches_the_quaternion_quotient() {
        let up = universal_presentation(&named_pair("q248").unwrap());
        assert_eq!(up.simplified.num_gens(), 3);
        let q8 = FiniteGroup::quaternion();
        let minus = q8.element("-1").unwrap();
        let homs = find_homs(&up.simplified, &q8, DEFAULT_MAX_GENS).unwrap();
        let hit = homs.iter().find(|h| evaluate_in(&q8, &h.images, up.pi_f(0, 1)) == minus);
        let cp = up.specialize(hit.expect("a quotient with a -> -1")).unwrap();
        assert!(cp.is_valid());
        let _ = word(&up.simplified, "1");
    }
}
