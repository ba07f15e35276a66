//! Virtual link diagrams as signed Gauss codes with virtual passages.
//!
//! Grammar: components separated by `;`, tokens separated by whitespace.
//! Classical passages are `O<id><+|->` and `U<id><+|->`, virtual passages
//! are `V<id><l|r>`. A component without tokens is an unknotted circle.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("component {component}, token {index}: cannot parse '{token}'")]
    Syntax { component: usize, index: usize, token: String },
    #[error("crossing {id}: {msg}")]
    Pairing { id: u32, msg: String },
    #[error("crossing {id}: over and under passages disagree on the sign")]
    SignMismatch { id: u32 },
    #[error("invalid position: component {component}, semi-arc {position}")]
    InvalidPosition { component: usize, position: usize },
    #[error("unknown diagram '{0}'")]
    UnknownName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One passage of a component through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Passage {
    Over { id: u32, sign: Sign },
    Under { id: u32, sign: Sign },
    Virtual { id: u32, side: Side },
}

impl Passage {
    pub fn id(&self) -> u32 {
        match *self {
            Passage::Over { id, .. } | Passage::Under { id, .. } | Passage::Virtual { id, .. } => id,
        }
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self, Passage::Virtual { .. })
    }

    fn parse(tok: &str) -> Option<Self> {
        let mut chars = tok.chars();
        let kind = chars.next()?;
        let rest = chars.as_str();
        let last = rest.chars().last()?;
        let id: u32 = rest[..rest.len() - 1].parse().ok()?;
        let sign = match last {
            '+' => Some(Sign::Pos),
            '-' => Some(Sign::Neg),
            _ => None,
        };
        let side = match last {
            'l' => Some(Side::Left),
            'r' => Some(Side::Right),
            _ => None,
        };
        match kind {
            'O' => Some(Passage::Over { id, sign: sign? }),
            'U' => Some(Passage::Under { id, sign: sign? }),
            'V' => Some(Passage::Virtual { id, side: side? }),
            _ => None,
        }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Passage::Over { id, sign } => write!(f, "O{id}{}", sign.symbol()),
            Passage::Under { id, sign } => write!(f, "U{id}{}", sign.symbol()),
            Passage::Virtual { id, side } => write!(f, "V{id}{}", if side == Side::Left { 'l' } else { 'r' }),
        }
    }
}

/// Location of a passage: component and index along it.
pub type Spot = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    Classical { id: u32, sign: Sign, over: Spot, under: Spot },
    Virtual { id: u32, left: Spot, right: Spot },
}

impl Crossing {
    pub fn id(&self) -> u32 {
        match *self {
            Crossing::Classical { id, .. } | Crossing::Virtual { id, .. } => id,
        }
    }

    /// Passages entering from the left and from the right. The left one
    /// leaves on the right and vice versa.
    pub fn left_right(&self) -> (Spot, Spot) {
        match *self {
            Crossing::Classical { sign: Sign::Pos, over, under, .. } => (under, over),
            Crossing::Classical { sign: Sign::Neg, over, under, .. } => (over, under),
            Crossing::Virtual { left, right, .. } => (left, right),
        }
    }
}

/// Semi-arc entering the passage `position` of `component`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiArc {
    pub component: usize,
    pub position: usize,
}

/// A validated diagram. Base points sit before index 0 of each component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    components: Vec<Vec<Passage>>,
    crossings: Vec<Crossing>,
    offsets: Vec<usize>,
}

impl LinkDiagram {
    pub fn new(components: Vec<Vec<Passage>>) -> Result<Self, DiagramError> {
        let mut seen: BTreeMap<u32, Vec<(Spot, Passage)>> = BTreeMap::new();
        for (c, comp) in components.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                seen.entry(p.id()).or_default().push(((c, i), *p));
            }
        }
        let mut crossings = Vec::with_capacity(seen.len());
        for (id, occ) in seen {
            let err = |msg: &str| DiagramError::Pairing { id, msg: msg.to_string() };
            if occ.len() != 2 {
                return Err(err(&format!("occurs {} times, expected 2", occ.len())));
            }
            let (a, pa) = occ[0];
            let (b, pb) = occ[1];
            let crossing = match (pa, pb) {
                (Passage::Over { sign: s1, .. }, Passage::Under { sign: s2, .. }) => {
                    if s1 != s2 {
                        return Err(DiagramError::SignMismatch { id });
                    }
                    Crossing::Classical { id, sign: s1, over: a, under: b }
                }
                (Passage::Under { sign: s1, .. }, Passage::Over { sign: s2, .. }) => {
                    if s1 != s2 {
                        return Err(DiagramError::SignMismatch { id });
                    }
                    Crossing::Classical { id, sign: s1, over: b, under: a }
                }
                (Passage::Virtual { side: s1, .. }, Passage::Virtual { side: s2, .. }) => {
                    if s1 == s2 {
                        return Err(err("needs one left and one right passage"));
                    }
                    let (left, right) = if s1 == Side::Left { (a, b) } else { (b, a) };
                    Crossing::Virtual { id, left, right }
                }
                _ => return Err(err("needs one over and one under passage, or two virtual ones")),
            };
            crossings.push(crossing);
        }
        let mut offsets = Vec::with_capacity(components.len() + 1);
        let mut total = 0;
        for comp in &components {
            offsets.push(total);
            total += comp.len().max(1);
        }
        offsets.push(total);
        Ok(Self { components, crossings, offsets })
    }

    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut components = Vec::new();
        for (c, chunk) in text.split(';').enumerate() {
            let mut comp = Vec::new();
            for (i, tok) in chunk.split_whitespace().enumerate() {
                let p = Passage::parse(tok).ok_or_else(|| DiagramError::Syntax {
                    component: c,
                    index: i,
                    token: tok.to_string(),
                })?;
                comp.push(p);
            }
            components.push(comp);
        }
        Self::new(components)
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Crossings sorted by id.
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, id: u32) -> Option<&Crossing> {
        self.crossings.binary_search_by_key(&id, Crossing::id).ok().map(|i| &self.crossings[i])
    }

    pub fn passage(&self, spot: Spot) -> Passage {
        self.components[spot.0][spot.1]
    }

    pub fn num_classical(&self) -> usize {
        self.crossings.iter().filter(|c| matches!(c, Crossing::Classical { .. })).count()
    }

    pub fn num_virtual(&self) -> usize {
        self.crossings.len() - self.num_classical()
    }

    pub fn is_classical(&self) -> bool {
        self.num_virtual() == 0
    }

    /// Total number of semi-arcs; an empty component has one.
    pub fn num_arcs(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// Global index of the semi-arc entering passage `position`.
    pub fn arc(&self, component: usize, position: usize) -> usize {
        self.offsets[component] + position
    }

    /// Global index of the semi-arc leaving passage `position`.
    pub fn arc_after(&self, component: usize, position: usize) -> usize {
        let len = self.components[component].len();
        self.offsets[component] + (position + 1) % len.max(1)
    }

    pub fn semi_arc(&self, arc: usize) -> SemiArc {
        let component = self.offsets.partition_point(|&o| o <= arc) - 1;
        SemiArc { component, position: arc - self.offsets[component] }
    }

    pub fn component_arcs(&self, component: usize) -> std::ops::Range<usize> {
        self.offsets[component]..self.offsets[component + 1]
    }

    fn fresh_ids(&self) -> (u32, u32) {
        let top = self.crossings.iter().map(Crossing::id).max().unwrap_or(0);
        (top + 1, top + 2)
    }

    fn check_position(&self, component: usize, position: usize) -> Result<(), DiagramError> {
        let ok = component < self.components.len() && position < self.components[component].len().max(1);
        if ok {
            Ok(())
        } else {
            Err(DiagramError::InvalidPosition { component, position })
        }
    }

    fn insert_pair(
        &self,
        a: (usize, usize, [Passage; 2]),
        b: (usize, usize, [Passage; 2]),
    ) -> Result<Self, DiagramError> {
        self.check_position(a.0, a.1)?;
        self.check_position(b.0, b.1)?;
        if (a.0, a.1) == (b.0, b.1) {
            return Err(DiagramError::InvalidPosition { component: b.0, position: b.1 });
        }
        let mut comps = self.components.clone();
        // Insert at the later spot first so the earlier index stays valid.
        let (first, second) = if (a.0, a.1) > (b.0, b.1) { (a, b) } else { (b, a) };
        for (c, p, toks) in [first, second] {
            comps[c].splice(p..p, toks);
        }
        Self::new(comps)
    }

    /// Adds a cancelling pair of classical crossings between the semi-arc
    /// `pos_a` of `comp_a` and the semi-arc `pos_b` of `comp_b`.
    pub fn insert_r2(
        &self,
        comp_a: usize,
        pos_a: usize,
        comp_b: usize,
        pos_b: usize,
        variant: R2Variant,
    ) -> Result<Self, DiagramError> {
        let (k1, k2) = self.fresh_ids();
        let s = variant.first_sign;
        let (pa, pb): (fn(u32, Sign) -> Passage, fn(u32, Sign) -> Passage) = if variant.a_over {
            (|id, sign| Passage::Over { id, sign }, |id, sign| Passage::Under { id, sign })
        } else {
            (|id, sign| Passage::Under { id, sign }, |id, sign| Passage::Over { id, sign })
        };
        let a = [pa(k1, s), pa(k2, s.flip())];
        let b = if variant.antiparallel {
            [pb(k2, s.flip()), pb(k1, s)]
        } else {
            [pb(k1, s), pb(k2, s.flip())]
        };
        self.insert_pair((comp_a, pos_a, a), (comp_b, pos_b, b))
    }

    /// Adds a cancelling pair of virtual crossings: `V k l, V k' r` on the
    /// first semi-arc and `V k r, V k' l` on the second.
    pub fn insert_vr2(&self, comp_a: usize, pos_a: usize, comp_b: usize, pos_b: usize) -> Result<Self, DiagramError> {
        let (k1, k2) = self.fresh_ids();
        let a = [Passage::Virtual { id: k1, side: Side::Left }, Passage::Virtual { id: k2, side: Side::Right }];
        let b = [Passage::Virtual { id: k1, side: Side::Right }, Passage::Virtual { id: k2, side: Side::Left }];
        self.insert_pair((comp_a, pos_a, a), (comp_b, pos_b, b))
    }

    /// Moves the base point of `component` forward by `k` passages.
    pub fn rotate(&self, component: usize, k: usize) -> Self {
        let mut comps = self.components.clone();
        let len = comps[component].len();
        if len > 0 {
            comps[component].rotate_left(k % len);
        }
        Self::new(comps).expect("rotation keeps the pairing")
    }

    /// Genus of the closed surface on which the diagram, with virtual
    /// crossings drawn as ordinary vertices, embeds; 0 means planar.
    pub fn genus(&self) -> usize {
        // Ends: 4 per crossing in counterclockwise order
        // in-left, in-right, out-right, out-left.
        let nc = self.crossings.len();
        if nc == 0 {
            return 0;
        }
        let index: BTreeMap<u32, usize> = self.crossings.iter().enumerate().map(|(i, c)| (c.id(), i)).collect();
        let mut in_end = BTreeMap::new();
        for (v, c) in self.crossings.iter().enumerate() {
            let (l, r) = c.left_right();
            in_end.insert(l, (v, 0usize));
            in_end.insert(r, (v, 1usize));
        }
        let _ = index;
        // Each arc joins the out-end of one passage to the in-end of the next.
        let mut partner = vec![usize::MAX; 4 * nc];
        let mut edges = 0;
        for (c, comp) in self.components.iter().enumerate() {
            let len = comp.len();
            for i in 0..len {
                let (v, slot) = in_end[&(c, i)];
                let out_slot = if slot == 0 { 2 } else { 3 };
                let (w, wslot) = in_end[&(c, (i + 1) % len)];
                let a = 4 * v + out_slot;
                let b = 4 * w + wslot;
                partner[a] = b;
                partner[b] = a;
                edges += 1;
            }
        }
        let mut seen = vec![false; 4 * nc];
        let mut faces = 0;
        for start in 0..4 * nc {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let e = partner[d];
                d = 4 * (e / 4) + (e % 4 + 1) % 4;
            }
        }
        let pieces = self.graph_components();
        (2 * pieces + edges - nc - faces) / 2
    }

    fn graph_components(&self) -> usize {
        let mut uf = crate::union_find::UnionFind::new(self.crossings.len());
        let index: BTreeMap<u32, usize> = self.crossings.iter().enumerate().map(|(i, c)| (c.id(), i)).collect();
        for comp in &self.components {
            for w in comp.windows(2) {
                uf.union(index[&w[0].id()], index[&w[1].id()]);
            }
        }
        (0..self.crossings.len()).filter(|&i| uf.find(i) == i).count()
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, comp) in self.components.iter().enumerate() {
            if c > 0 {
                f.write_str(" ; ")?;
            }
            let toks: Vec<String> = comp.iter().map(Passage::to_string).collect();
            f.write_str(&toks.join(" "))?;
        }
        Ok(())
    }
}

/// Shape of an inserted classical RII pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct R2Variant {
    /// The first strand passes over both crossings.
    pub a_over: bool,
    pub first_sign: Sign,
    /// The second strand runs against the first.
    pub antiparallel: bool,
}

impl R2Variant {
    pub fn all() -> Vec<Self> {
        let mut v = Vec::new();
        for a_over in [false, true] {
            for first_sign in [Sign::Pos, Sign::Neg] {
                for antiparallel in [false, true] {
                    v.push(Self { a_over, first_sign, antiparallel });
                }
            }
        }
        v
    }
}

const CATALOG: &[(&str, &str)] = &[
    ("unknot", include_str!("../data/diagrams/unknot.txt")),
    ("unlink2", include_str!("../data/diagrams/unlink2.txt")),
    ("trefoil", include_str!("../data/diagrams/trefoil.txt")),
    ("hopf+", include_str!("../data/diagrams/hopf+.txt")),
    ("hopf-", include_str!("../data/diagrams/hopf-.txt")),
    ("paper-2comp", include_str!("../data/diagrams/paper-2comp.txt")),
    ("virtual-trefoil", include_str!("../data/diagrams/virtual-trefoil.txt")),
    ("k1", include_str!("../data/diagrams/k1.txt")),
    ("k2", include_str!("../data/diagrams/k2.txt")),
    ("k3", include_str!("../data/diagrams/k3.txt")),
    ("v2.2", include_str!("../data/diagrams/v2.2.txt")),
    ("v2.3", include_str!("../data/diagrams/v2.3.txt")),
    ("v3.4", include_str!("../data/diagrams/v3.4.txt")),
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(n, _)| *n).collect()
}

/// Gauss code text of a bundled diagram with comment lines removed.
pub fn catalog_text(name: &str) -> Option<String> {
    let raw = CATALOG.iter().find(|(n, _)| *n == name)?.1;
    Some(strip_comments(raw))
}

pub fn strip_comments(raw: &str) -> String {
    raw.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ")
}

pub fn catalog(name: &str) -> Result<LinkDiagram, DiagramError> {
    let text = catalog_text(name).ok_or_else(|| DiagramError::UnknownName(name.to_string()))?;
    LinkDiagram::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let kink = LinkDiagram::parse("O1+ U1+").unwrap();
        assert_eq!(kink.num_components(), 1);
        assert_eq!(kink.num_classical(), 1);
        let v = LinkDiagram::parse("V1l ; V1r").unwrap();
        assert_eq!(v.num_components(), 2);
        assert_eq!(v.num_virtual(), 1);
        let two = LinkDiagram::parse("U1+ V2l ; O1+ V2r").unwrap();
        assert_eq!(two.num_arcs(), 4);
        let unknot = LinkDiagram::parse("").unwrap();
        assert_eq!(unknot.num_components(), 1);
        assert_eq!(unknot.num_arcs(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(LinkDiagram::parse("O1+ X1+"), Err(DiagramError::Syntax { index: 1, .. })));
        assert!(matches!(LinkDiagram::parse("O1+ U1-"), Err(DiagramError::SignMismatch { id: 1 })));
        assert!(matches!(LinkDiagram::parse("O1+ O1+"), Err(DiagramError::Pairing { id: 1, .. })));
        assert!(matches!(LinkDiagram::parse("O1+"), Err(DiagramError::Pairing { id: 1, .. })));
        assert!(matches!(LinkDiagram::parse("V1l V1l"), Err(DiagramError::Pairing { id: 1, .. })));
        assert!(matches!(LinkDiagram::parse("V1l O1+"), Err(DiagramError::Pairing { id: 1, .. })));
        assert!(matches!(LinkDiagram::parse("V1 V1r"), Err(DiagramError::Syntax { .. })));
        assert!(matches!(LinkDiagram::parse("O1* U1*"), Err(DiagramError::Syntax { .. })));
    }

    #[test]
    fn display_round_trip() {
        for name in catalog_names() {
            let d = catalog(name).unwrap();
            assert_eq!(LinkDiagram::parse(&d.to_string()).unwrap(), d, "{name}");
        }
    }

    #[test]
    fn arcs_and_positions() {
        let d = LinkDiagram::parse("O1+ U2- ; U1+ O2-").unwrap();
        assert_eq!(d.arc(1, 0), 2);
        assert_eq!(d.arc_after(0, 1), 0);
        assert_eq!(d.semi_arc(3), SemiArc { component: 1, position: 1 });
        assert_eq!(d.component_arcs(1), 2..4);
    }

    #[test]
    fn insertions() {
        let kink = LinkDiagram::parse("O1+ U1+").unwrap();
        let v = R2Variant { a_over: false, first_sign: Sign::Pos, antiparallel: false };
        let d = kink.insert_r2(0, 0, 0, 1, v).unwrap();
        assert_eq!(d.num_classical(), 3);
        assert_eq!(d.to_string(), "U2+ U3- O1+ O2+ O3- U1+");
        let empty = LinkDiagram::parse("").unwrap();
        assert!(empty.insert_vr2(0, 0, 0, 0).is_err());
        let two = LinkDiagram::parse(" ; ").unwrap();
        let d = two.insert_vr2(0, 0, 1, 0).unwrap();
        assert_eq!(d.num_virtual(), 2);
        assert_eq!(d.to_string(), "V1l V2r ; V1r V2l");
        assert!(kink.insert_r2(0, 5, 0, 1, v).is_err());
        assert!(kink.insert_r2(2, 0, 0, 1, v).is_err());
    }

    #[test]
    fn genus_of_small_diagrams() {
        assert_eq!(LinkDiagram::parse("O1+ U1+").unwrap().genus(), 0);
        assert_eq!(catalog("trefoil").unwrap().genus(), 0);
        assert_eq!(catalog("hopf+").unwrap().genus(), 0);
        // The virtual trefoil's Gauss code without its virtual crossing
        // lives on a torus.
        assert_eq!(LinkDiagram::parse("O1- O2- U1- U2-").unwrap().genus(), 1);
        assert_eq!(catalog("virtual-trefoil").unwrap().genus(), 0);
    }

    #[test]
    fn catalog_is_planar() {
        for name in catalog_names() {
            assert_eq!(catalog(name).unwrap().genus(), 0, "{name}");
        }
    }

    #[test]
    fn rotation() {
        let d = catalog("trefoil").unwrap();
        let r = d.rotate(0, 2);
        assert_eq!(r.components()[0][0], d.components()[0][2]);
        assert_eq!(r.rotate(0, 4), d);
    }
}
