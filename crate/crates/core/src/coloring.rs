//! Colorings of diagram semi-arcs by a virtual pair.
//!
//! At a positive crossing with under input `x` and over input `y` the under
//! strand leaves with `S²(x,y)` and the over strand with `S¹(x,y)`. At a
//! negative crossing with over input `p` and under input `q`, `(x,y) =
//! S⁻¹(p,q)` and the over strand leaves with `y`, the under strand with `x`.
//! At a virtual crossing with left input `x` and right input `y` the left
//! strand leaves with `β²(x,y)` and the right strand with `β¹(x,y)`.

use crate::algebra::VirtualPair;
use crate::diagram::{Crossing, LinkDiagram, Sign};

/// Incoming and outgoing semi-arcs of one crossing, with the rule mapping
/// the two inputs to the two outputs.
#[derive(Debug, Clone, Copy)]
struct Rule {
    ins: [usize; 2],
    outs: [usize; 2],
    kind: RuleKind,
}

#[derive(Debug, Clone, Copy)]
enum RuleKind {
    /// ins = (under, over), outs = (under, over).
    Positive,
    /// ins = (over, under), outs = (over, under).
    Negative,
    /// ins = (left, right), outs = (left strand, right strand).
    Virtual,
}

fn rules(d: &LinkDiagram) -> Vec<Rule> {
    d.crossings()
        .iter()
        .map(|c| match *c {
            Crossing::Classical { sign, over, under, .. } => {
                let o = (d.arc(over.0, over.1), d.arc_after(over.0, over.1));
                let u = (d.arc(under.0, under.1), d.arc_after(under.0, under.1));
                match sign {
                    Sign::Pos => Rule { ins: [u.0, o.0], outs: [u.1, o.1], kind: RuleKind::Positive },
                    Sign::Neg => Rule { ins: [o.0, u.0], outs: [o.1, u.1], kind: RuleKind::Negative },
                }
            }
            Crossing::Virtual { left, right, .. } => {
                let l = (d.arc(left.0, left.1), d.arc_after(left.0, left.1));
                let r = (d.arc(right.0, right.1), d.arc_after(right.0, right.1));
                Rule { ins: [l.0, r.0], outs: [l.1, r.1], kind: RuleKind::Virtual }
            }
        })
        .collect()
}

fn fire(vp: &VirtualPair, kind: RuleKind, a: usize, b: usize) -> (usize, usize) {
    match kind {
        RuleKind::Positive => {
            let (z, w) = vp.s().apply(a, b);
            (w, z)
        }
        RuleKind::Negative => {
            let (x, y) = vp.s_inv().apply(a, b);
            (y, x)
        }
        RuleKind::Virtual => {
            let (z, w) = vp.beta().apply(a, b);
            (w, z)
        }
    }
}

/// Whether `colors` (one per semi-arc) satisfies every crossing rule.
pub fn is_coloring(d: &LinkDiagram, vp: &VirtualPair, colors: &[usize]) -> bool {
    colors.len() == d.num_arcs()
        && colors.iter().all(|&c| c < vp.n())
        && rules(d).iter().all(|r| {
            let out = fire(vp, r.kind, colors[r.ins[0]], colors[r.ins[1]]);
            out == (colors[r.outs[0]], colors[r.outs[1]])
        })
}

struct Search<'a> {
    vp: &'a VirtualPair,
    rules: Vec<Rule>,
    by_input: Vec<Vec<usize>>,
    colors: Vec<Option<usize>>,
}

impl Search<'_> {
    /// Assigns `arc` and everything it forces. Returns the arcs it set, or
    /// `None` after undoing them on a conflict.
    fn assign(&mut self, arc: usize, c: usize) -> Option<Vec<usize>> {
        let mut set = vec![arc];
        self.colors[arc] = Some(c);
        let mut queue = vec![arc];
        while let Some(a) = queue.pop() {
            for &ri in &self.by_input[a] {
                let r = self.rules[ri];
                let (Some(x), Some(y)) = (self.colors[r.ins[0]], self.colors[r.ins[1]]) else { continue };
                let (p, q) = fire(self.vp, r.kind, x, y);
                for (arc, v) in [(r.outs[0], p), (r.outs[1], q)] {
                    match self.colors[arc] {
                        Some(old) if old == v => {}
                        Some(_) => {
                            for &s in &set {
                                self.colors[s] = None;
                            }
                            return None;
                        }
                        None => {
                            self.colors[arc] = Some(v);
                            set.push(arc);
                            queue.push(arc);
                        }
                    }
                }
            }
        }
        Some(set)
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let Some(arc) = self.colors.iter().position(Option::is_none) else {
            let full: Vec<usize> = self.colors.iter().map(|c| c.expect("complete")).collect();
            return visit(&full);
        };
        for c in 0..self.vp.n() {
            if let Some(set) = self.assign(arc, c) {
                let go_on = self.run(visit);
                for s in set {
                    self.colors[s] = None;
                }
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

/// Calls `visit` on each coloring in lexicographic order of the semi-arc
/// color vector until it returns `false`.
pub fn for_each_coloring(d: &LinkDiagram, vp: &VirtualPair, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let rules = rules(d);
    let mut by_input = vec![Vec::new(); d.num_arcs()];
    for (i, r) in rules.iter().enumerate() {
        by_input[r.ins[0]].push(i);
        if r.ins[1] != r.ins[0] {
            by_input[r.ins[1]].push(i);
        }
    }
    let mut search = Search { vp, rules, by_input, colors: vec![None; d.num_arcs()] };
    search.run(visit);
}

/// All colorings in lexicographic order.
pub fn colorings(d: &LinkDiagram, vp: &VirtualPair) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_coloring(d, vp, &mut |c| {
        out.push(c.to_vec());
        true
    });
    out
}

pub fn count_colorings(d: &LinkDiagram, vp: &VirtualPair) -> usize {
    let mut k = 0;
    for_each_coloring(d, vp, &mut |_| {
        k += 1;
        true
    });
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::named_pair;
    use crate::diagram::catalog;

    fn brute(d: &LinkDiagram, vp: &VirtualPair) -> Vec<Vec<usize>> {
        let arcs = d.num_arcs();
        let total = vp.n().pow(arcs as u32);
        let mut out = Vec::new();
        for mut k in 0..total {
            let mut c = vec![0; arcs];
            for slot in c.iter_mut().rev() {
                *slot = k % vp.n();
                k /= vp.n();
            }
            if is_coloring(d, vp, &c) {
                out.push(c);
            }
        }
        out
    }

    #[test]
    fn matches_brute_force() {
        let pairs = ["flip2-flip2", "antiflip2-flip2", "dihedral3-i3(2,3)", "dihedral3-i3(1,2,3)", "paper-z4"];
        for name in ["unknot", "unlink2", "trefoil", "hopf+", "hopf-", "paper-2comp", "virtual-trefoil"] {
            let d = catalog(name).unwrap();
            for p in pairs {
                let vp = named_pair(p).unwrap();
                assert_eq!(colorings(&d, &vp), brute(&d, &vp), "{name} with {p}");
            }
        }
    }

    #[test]
    fn trefoil_has_nine_dihedral_colorings() {
        let vp = named_pair("dihedral3-i3()").unwrap();
        assert_eq!(count_colorings(&catalog("trefoil").unwrap(), &vp), 9);
        assert_eq!(count_colorings(&catalog("unknot").unwrap(), &vp), 3);
    }

    #[test]
    fn flip_colors_components() {
        let vp = named_pair("flip2-flip2").unwrap();
        let d = catalog("paper-2comp").unwrap();
        let all = colorings(&d, &vp);
        assert_eq!(all.len(), 4);
        for c in &all {
            assert_eq!(c[0], c[1]);
            assert_eq!(c[2], c[3]);
        }
    }

    #[test]
    fn early_stop() {
        let vp = named_pair("dihedral3-i3()").unwrap();
        let mut seen = 0;
        for_each_coloring(&catalog("trefoil").unwrap(), &vp, &mut |_| {
            seen += 1;
            seen < 2
        });
        assert_eq!(seen, 2);
    }
}
