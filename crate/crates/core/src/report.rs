//! Plain-text reports regenerating the census, the Kishino coloring table,
//! the virtual-link invariants and the universal-group computations.
//! Every report is deterministic.

use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use crate::algebra::named_pair;
use crate::cocycle::{named_cocycle, universal_presentation, CocycleError, PresentedPair, UniversalPair};
use crate::coloring::{colorings, count_colorings};
use crate::diagram::catalog;
use crate::enumerate::{census, enumerate_involutive, CensusRow, EnumerateError};
use crate::fpgroup::{abelianize, evaluate, find_homs, FiniteGroup, FpError, Presentation, Word, DEFAULT_MAX_GENS};
use crate::invariant::{finite_invariant, label_tuples, weight_product, word_invariant, InvariantError};
use crate::AlgebraError;

pub const TARGETS: &[&str] = &["census", "kishino", "vlinks", "unc-flip", "pair248", "quaternion", "two-component"];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unknown report '{0}' (known: {list})", list = TARGETS.join(", "))]
    Unknown(String),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `long` admits the n=5 census and the n=7 involutive count.
pub fn generate(target: &str, long: bool) -> Result<String, ReportError> {
    match target {
        "census" => census_report(if long { 5 } else { 4 }, long),
        "kishino" => kishino_report(),
        "vlinks" => vlinks_report(),
        "unc-flip" => unc_flip_report(),
        "pair248" => pair248_report(),
        "quaternion" => quaternion_report(),
        "two-component" => two_component_report(),
        _ => Err(ReportError::Unknown(target.to_string())),
    }
}

/// Reference census rows: n, all, aut-induced, connected, both-disconnected.
pub const REFERENCE_CENSUS: &[(usize, usize, usize, usize, usize)] =
    &[(2, 4, 4, 3, 0), (3, 90, 38, 26, 0), (4, 3517, 325, 167, 10), (5, 46658, 41278, 138, 0)];

/// Reference involutive counts at n=7: all, compatible with the flip.
pub const REFERENCE_INVOLUTIVE_7: (usize, usize) = (3456, 1959);

pub fn census_mismatches(row: &CensusRow) -> Vec<String> {
    let Some(&(_, all, aut, conn, both)) = REFERENCE_CENSUS.iter().find(|p| p.0 == row.n) else {
        return Vec::new();
    };
    [
        ("all", row.all_pairs, all),
        ("aut-induced", row.aut_induced_pairs, aut),
        ("connected", row.connected_pairs, conn),
        ("both-disconnected", row.connected_with_both_disconnected, both),
    ]
    .into_iter()
    .filter(|(_, got, want)| got != want)
    .map(|(what, got, want)| format!("n={} {what}: computed {got}, reference {want}", row.n))
    .collect()
}

pub fn census_report(max_n: usize, long: bool) -> Result<String, ReportError> {
    let mut out = String::from("n\tall\taut-induced\tconnected\tboth-disconnected\tinvolutive\n");
    let mut notes = Vec::new();
    for n in 2..=max_n {
        let row = census(n, long)?;
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            n,
            row.all_pairs,
            row.aut_induced_pairs,
            row.connected_pairs,
            row.connected_with_both_disconnected,
            row.involutive_pairs
        );
        notes.extend(census_mismatches(&row));
    }
    if long {
        let all = enumerate_involutive(7, false, true)?.len();
        let flip = enumerate_involutive(7, true, true)?.len();
        let _ = writeln!(out, "involutive solutions n=7: {all}, compatible with the flip: {flip}");
        let (pa, pf) = REFERENCE_INVOLUTIVE_7;
        if (all, flip) != (pa, pf) {
            notes.push(format!("n=7 involutive: computed {all}/{flip}, reference {pa}/{pf}"));
        }
    }
    out.push_str(if notes.is_empty() { "mismatches: none\n" } else { "mismatches:\n" });
    for n in notes {
        let _ = writeln!(out, "  {n}");
    }
    Ok(out)
}

pub const KISHINO_PAIRS: [&str; 3] = ["dihedral3-i3()", "dihedral3-i3(2,3)", "dihedral3-i3(1,2,3)"];

/// Coloring counts of K1..K3 under the three dihedral pairs, and of K3
/// under the four-element pair.
pub fn kishino_counts() -> Result<(Vec<[usize; 3]>, usize), ReportError> {
    let pairs = KISHINO_PAIRS.iter().map(|p| named_pair(p)).collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for k in ["k1", "k2", "k3"] {
        let d = catalog(k).expect("bundled diagram");
        rows.push([0, 1, 2].map(|i| count_colorings(&d, &pairs[i])));
    }
    let extra = count_colorings(&catalog("k3").expect("bundled diagram"), &named_pair("k3-s4")?);
    Ok((rows, extra))
}

pub fn kishino_report() -> Result<String, ReportError> {
    let (rows, extra) = kishino_counts()?;
    let mut out = String::from("colorings\t(S,i_id)\t(S,i_(2,3))\t(S,i_(1,2,3))\n");
    for (k, r) in rows.iter().enumerate() {
        let _ = writeln!(out, "K{}\t{}\t{}\t{}", k + 1, r[0], r[1], r[2]);
    }
    let _ = writeln!(out, "K3 with the 4-element S and beta = flip: {extra}");
    Ok(out)
}

/// `2{a^-1, b^-1}, 2{1, 1}`: multiplicities of component tuples, each
/// tuple written as a set, larger multiplicities first.
pub fn format_multiset(tuples: &[Vec<String>]) -> String {
    let mut counts: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    for t in tuples {
        let mut t = t.clone();
        t.sort_by(|a, b| (a == "1", a).cmp(&(b == "1", b)));
        *counts.entry(t).or_default() += 1;
    }
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v.iter().map(|(t, k)| format!("{k}{{{}}}", t.join(", "))).collect::<Vec<_>>().join(", ")
}

/// Word invariant as power-notation tuples, one per coloring.
pub fn word_tuples(link: &str, pp: &PresentedPair) -> Result<Vec<Vec<String>>, ReportError> {
    let d = catalog(link).expect("bundled diagram");
    let inv = word_invariant(&d, pp)?;
    Ok(inv.rows.iter().map(|r| r.words.iter().map(|w| w.display_powers(&pp.presentation.gens)).collect()).collect())
}

pub const VLINKS: [&str; 3] = ["v2.2", "v2.3", "v3.4"];

pub fn vlinks_report() -> Result<String, ReportError> {
    let mut out = String::from("pair\tgroup\tv2.2\tv2.3\tv3.4\n");
    for name in ["flip2-flip2", "antiflip2-flip2"] {
        let pp = named_cocycle(name).expect("bundled cocycle");
        let cells = VLINKS.iter().map(|l| Ok(format_multiset(&word_tuples(l, &pp)?))).collect::<Result<Vec<_>, ReportError>>()?;
        let _ = writeln!(out, "{name}\t<{}>\t{}", pp.presentation.gens.join(","), cells.join("\t"));
    }
    out.push_str(
        "note: an alternative tabulation gives v2.3 -> 2{c^-2, 1}, 2{1, 1} and v3.4 -> 2{c^-1, c^-1}, 2{1, 1}; \
         the values above are those of the bundled diagrams\n",
    );
    Ok(out)
}

/// Simplified presentation, abelianization and the `f`, `g` tables.
pub fn universal_text(title: &str, up: &UniversalPair) -> String {
    let mut out = String::new();
    universal_section(&mut out, title, up);
    out
}

fn universal_section(out: &mut String, title: &str, up: &UniversalPair) {
    let p = &up.simplified;
    let n = up.vp.n();
    let _ = writeln!(out, "== {title}");
    let _ = writeln!(
        out,
        "raw: {} generators, {} relators; simplified: {} generators, {} relators{}",
        up.presentation.num_gens(),
        up.presentation.relators.len(),
        p.num_gens(),
        p.relators.len(),
        if up.exhausted { " (budget exhausted)" } else { "" }
    );
    let _ = writeln!(out, "gens: {}", p.gens.join(" "));
    for r in &p.relators {
        let _ = writeln!(out, "  {}", p.display_word(r));
    }
    let ab = abelianize(p);
    let _ = writeln!(out, "abelianization: rank {}, torsion {:?}", ab.rank(), ab.factors.iter().filter(|&&k| k != 0).collect::<Vec<_>>());
    for (w, table) in [('f', &up.pi_f), ('g', &up.pi_g)] {
        for x in 0..n {
            let row: Vec<String> = (0..n).map(|y| p.display_word(&table[x * n + y])).collect();
            let _ = writeln!(out, "{w}({},-): {}", x + 1, row.join(" | "));
        }
    }
}

pub fn unc_flip_report() -> Result<String, ReportError> {
    let mut out = String::new();
    universal_section(&mut out, "flip/flip on {1,2}", &universal_presentation(&named_pair("flip2-flip2")?));
    universal_section(&mut out, "antiflip/flip on {1,2}", &universal_presentation(&named_pair("antiflip2-flip2")?));
    Ok(out)
}

/// `<h,c,e | a^2, [a,c], [a,h], f^2, [f,e], [f,h]>` with `a=[h,c]`, `f=[h,e]`.
pub fn reference_248() -> Presentation {
    let (h, c, e) = (Word::gen(0), Word::gen(1), Word::gen(2));
    let a = Word::commutator(&h, &c);
    let f = Word::commutator(&h, &e);
    let rels = vec![
        a.pow(2),
        Word::commutator(&a, &c),
        Word::commutator(&a, &h),
        f.pow(2),
        Word::commutator(&f, &e),
        Word::commutator(&f, &h),
    ];
    Presentation::new(vec!["h".into(), "c".into(), "e".into()], rels)
}

/// Homomorphism counts into each battery group.
pub fn battery_profile(p: &Presentation) -> Result<Vec<(String, usize)>, ReportError> {
    FiniteGroup::battery()
        .iter()
        .map(|g| Ok((g.name().to_string(), find_homs(p, g, DEFAULT_MAX_GENS)?.len())))
        .collect()
}

pub fn pair248_report() -> Result<String, ReportError> {
    let up = universal_presentation(&named_pair("q248")?);
    let mut out = String::new();
    universal_section(&mut out, "pair 248", &up);
    let reference = reference_248();
    let _ = writeln!(out, "== reference <h,c,e>, a = [h,c], f = [h,e]");
    for r in &reference.relators {
        let _ = writeln!(out, "  {}", reference.display_word(r));
    }
    let mine = battery_profile(&up.simplified)?;
    let theirs = battery_profile(&reference)?;
    let _ = writeln!(out, "== homomorphisms into the battery (simplified / reference)");
    for ((g, a), (_, b)) in mine.iter().zip(&theirs) {
        let _ = writeln!(out, "{g}\t{a}\t{b}");
    }
    let _ = writeln!(out, "battery profiles agree: {}", if mine == theirs { "yes" } else { "no" });
    Ok(out)
}

/// The first homomorphism into Q8 (search order) sending `f(1,2)` to -1.
pub fn quaternion_quotient(up: &UniversalPair) -> Result<Option<crate::fpgroup::Homomorphism>, ReportError> {
    let q8 = FiniteGroup::quaternion();
    let minus = q8.element("-1").expect("Q8 label");
    for h in find_homs(&up.simplified, &q8, DEFAULT_MAX_GENS)? {
        if evaluate(&h, up.pi_f(0, 1))? == minus {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

pub fn quaternion_report() -> Result<String, ReportError> {
    let up = universal_presentation(&named_pair("q248")?);
    let pp = PresentedPair::from(&up);
    let mut out = String::from("== v2.3 under the universal pair of pair 248\n");
    let tuples = word_tuples("v2.3", &pp)?;
    for (i, t) in tuples.iter().enumerate() {
        let _ = writeln!(out, "{i}\t({})", t.join(", "));
    }
    let _ = writeln!(out, "multiset: {}", format_multiset(&tuples));
    let Some(h) = quaternion_quotient(&up)? else {
        out.push_str("no quotient onto Q8 sends f(1,2) to -1\n");
        return Ok(out);
    };
    let q8 = &h.target;
    let images: Vec<String> =
        up.simplified.gens.iter().zip(&h.images).map(|(g, &e)| format!("{g} -> {}", q8.label(e))).collect();
    let _ = writeln!(out, "== Q8 quotient: {}", images.join(", "));
    let d = catalog("v2.3").expect("bundled diagram");
    let labels = label_tuples(q8, &finite_invariant(&d, &pp.image(&h)?));
    let _ = writeln!(out, "multiset: {}", format_multiset(&labels));
    Ok(out)
}

pub fn two_component_report() -> Result<String, ReportError> {
    let pp = named_cocycle("virtual-h").expect("bundled cocycle");
    let d = catalog("paper-2comp").expect("bundled diagram");
    let cp = crate::cocycle::CocyclePair::new(pp.vp.clone(), crate::fpgroup::FreeGroup, pp.f.clone(), pp.g.clone())?;
    let mut out = format!("diagram: {d}\n");
    let mut tuples = Vec::new();
    for c in colorings(&d, &pp.vp) {
        let wp = weight_product(&d, &c, &cp)?;
        let t: Vec<String> = wp.products.iter().map(|w| w.display_powers(&pp.presentation.gens)).collect();
        let colors: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
        let _ = writeln!(out, "({})\t({})", colors.join(","), t.join(", "));
        tuples.push(t);
    }
    let _ = writeln!(out, "multiset: {}", format_multiset(&tuples));
    Ok(out)
}
