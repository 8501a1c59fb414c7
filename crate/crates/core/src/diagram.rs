//! Temperley–Lieb diagrams: planar perfect matchings on `n` top and `n`
//! bottom boundary points, composed by stacking with closed loops counted.
//!
//! Only the geometric terms top, bottom and through are used here. Which
//! boundary corresponds to left cells is decided in [`crate::algebra`].

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Permutation, Word};

pub mod render;

/// A boundary point. Positions are 1-based, left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Top(usize),
    Bottom(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Top(k) => write!(f, "T{k}"),
            Node::Bottom(k) => write!(f, "B{k}"),
        }
    }
}

impl std::str::FromStr for Node {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMatching(format!("bad node label {s:?}"));
        let (side, pos) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let k: usize = pos.parse().map_err(|_| bad())?;
        match side {
            "T" => Ok(Node::Top(k)),
            "B" => Ok(Node::Bottom(k)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Bottom,
    Through,
}

/// One strand of a diagram. Top and bottom arcs store `(left, right)`
/// positions; through arcs store `(top position, bottom position)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub side: Side,
    pub endpoints: (usize, usize),
}

impl Arc {
    pub fn is_vertical(&self) -> bool {
        self.side == Side::Through && self.endpoints.0 == self.endpoints.1
    }

    /// True if `other` lies strictly inside `self` (both on the same boundary).
    pub fn encloses(&self, other: &Arc) -> bool {
        self.endpoints.0 < other.endpoints.0 && other.endpoints.1 < self.endpoints.1
    }
}

/// The strands of a diagram, split by side and sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Arcs {
    pub top: Vec<Arc>,
    pub bottom: Vec<Arc>,
    pub through: Vec<Arc>,
}

/// A Temperley–Lieb diagram.
///
/// Stored as a fixed-point-free involution on `2n` slots: slots `0..n` are
/// the top points `T1..Tn`, slots `n..2n` the bottom points `B1..Bn`.
/// Equality and ordering are those of the matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    n: usize,
    partner: Vec<u32>,
}

impl TLDiagram {
    /// Builds a diagram from explicit pairs, validating that they form a
    /// planar perfect matching.
    pub fn new(n: usize, pairs: &[(Node, Node)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatching("rank must be positive".into()));
        }
        let mut partner = vec![u32::MAX; 2 * n];
        let slot = |node: Node| -> Result<usize> {
            match node {
                Node::Top(k) if (1..=n).contains(&k) => Ok(k - 1),
                Node::Bottom(k) if (1..=n).contains(&k) => Ok(n + k - 1),
                _ => Err(Error::InvalidMatching(format!("node {node} out of range for rank {n}"))),
            }
        };
        for &(a, b) in pairs {
            let (sa, sb) = (slot(a)?, slot(b)?);
            if sa == sb || partner[sa] != u32::MAX || partner[sb] != u32::MAX {
                return Err(Error::InvalidMatching(format!("node used twice in pair ({a}, {b})")));
            }
            partner[sa] = sb as u32;
            partner[sb] = sa as u32;
        }
        Self::from_partner(n, partner)
    }

    /// Builds a diagram from the raw slot involution.
    pub fn from_partner(n: usize, partner: Vec<u32>) -> Result<Self> {
        if partner.len() != 2 * n || n == 0 {
            return Err(Error::InvalidMatching(format!("expected {} slots", 2 * n)));
        }
        for (s, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if p >= 2 * n || p == s || partner[p] as usize != s {
                return Err(Error::InvalidMatching(format!("slot {s} is not properly paired")));
            }
        }
        let d = TLDiagram { n, partner };
        d.check_planar()?;
        Ok(d)
    }

    /// Builds a diagram from its top and bottom arcs; the remaining points
    /// are joined by through lines in the only planar way.
    pub fn from_arcs(n: usize, top: &[(usize, usize)], bottom: &[(usize, usize)]) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut top_used = vec![false; n + 1];
        let mut bottom_used = vec![false; n + 1];
        for &(a, b) in top {
            for k in [a, b] {
                if k == 0 || k > n || std::mem::replace(&mut top_used[k], true) {
                    return Err(Error::InvalidMatching(format!("top arc ({a},{b}) is invalid")));
                }
            }
            pairs.push((Node::Top(a), Node::Top(b)));
        }
        for &(a, b) in bottom {
            for k in [a, b] {
                if k == 0 || k > n || std::mem::replace(&mut bottom_used[k], true) {
                    return Err(Error::InvalidMatching(format!("bottom arc ({a},{b}) is invalid")));
                }
            }
            pairs.push((Node::Bottom(a), Node::Bottom(b)));
        }
        let free_top: Vec<usize> = (1..=n).filter(|&k| !top_used[k]).collect();
        let free_bottom: Vec<usize> = (1..=n).filter(|&k| !bottom_used[k]).collect();
        if free_top.len() != free_bottom.len() {
            return Err(Error::InvalidMatching("unequal numbers of top and bottom arcs".into()));
        }
        pairs.extend(free_top.into_iter().zip(free_bottom).map(|(t, b)| (Node::Top(t), Node::Bottom(b))));
        Self::new(n, &pairs)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        let partner = (0..2 * n as u32).map(|s| (s + n as u32) % (2 * n as u32)).collect();
        TLDiagram { n, partner }
    }

    /// The generator `e_i`: arcs `(i, i+1)` on both boundaries, vertical lines elsewhere.
    pub fn generator(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorOutOfRange { i, n });
        }
        let mut d = TLDiagram::identity(n);
        let (a, b) = (i - 1, i);
        d.partner[a] = b as u32;
        d.partner[b] = a as u32;
        d.partner[n + a] = (n + b) as u32;
        d.partner[n + b] = (n + a) as u32;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner_slots(&self) -> &[u32] {
        &self.partner
    }

    fn node(&self, slot: usize) -> Node {
        if slot < self.n {
            Node::Top(slot + 1)
        } else {
            Node::Bottom(slot - self.n + 1)
        }
    }

    /// Position of a slot on the boundary circle `T1..Tn, Bn..B1`.
    fn cyclic_position(&self, slot: usize) -> usize {
        if slot < self.n {
            slot
        } else {
            3 * self.n - 1 - slot
        }
    }

    fn check_planar(&self) -> Result<()> {
        let n = self.n;
        let mut slot_at = vec![0; 2 * n];
        for s in 0..2 * n {
            slot_at[self.cyclic_position(s)] = s;
        }
        let mut stack: Vec<usize> = Vec::new();
        for pos in 0..2 * n {
            let s = slot_at[pos];
            let other = self.cyclic_position(self.partner[s] as usize);
            if other > pos {
                stack.push(pos);
            } else {
                let open = stack.pop().unwrap();
                if open != other {
                    let pair = |p: usize| (p, self.cyclic_position(self.partner[slot_at[p]] as usize));
                    return Err(Error::NotPlanar(pair(open), pair(other)));
                }
            }
        }
        Ok(())
    }

    /// All pairs, each listed once with the smaller slot first.
    pub fn pairs(&self) -> Vec<(Node, Node)> {
        (0..2 * self.n)
            .filter(|&s| (self.partner[s] as usize) > s)
            .map(|s| (self.node(s), self.node(self.partner[s] as usize)))
            .collect()
    }

    /// Stacks `self` on top of `below`, glues the middle boundary, and
    /// straightens. Returns the resulting diagram and the number of closed
    /// loops removed.
    pub fn compose(&self, below: &TLDiagram) -> Result<(TLDiagram, u32)> {
        if self.n != below.n {
            return Err(Error::RankMismatch { left: self.n, right: below.n });
        }
        let n = self.n;
        let upper = &self.partner;
        let lower = &below.partner;
        let mut visited_middle = vec![false; n];
        let mut partner = vec![u32::MAX; 2 * n];

        // Follows a strand that enters the middle at point `m` from the
        // upper diagram; returns the outer slot where it leaves.
        let trace = |mut m: usize, visited: &mut Vec<bool>| -> usize {
            loop {
                visited[m] = true;
                let q = lower[m] as usize;
                if q >= n {
                    return q; // bottom of lower = bottom of result
                }
                visited[q] = true;
                let r = upper[n + q] as usize;
                if r < n {
                    return r; // top of upper = top of result
                }
                m = r - n;
            }
        };

        for t in 0..n {
            if partner[t] != u32::MAX {
                continue;
            }
            let p = upper[t] as usize;
            let end = if p < n { p } else { trace(p - n, &mut visited_middle) };
            partner[t] = end as u32;
            partner[end] = t as u32;
        }
        for b in n..2 * n {
            if partner[b] != u32::MAX {
                continue;
            }
            let q = lower[b] as usize;
            let end = if q >= n {
                q
            } else {
                // enter the upper diagram from below at middle point q
                let mut m = q;
                loop {
                    visited_middle[m] = true;
                    let r = upper[n + m] as usize;
                    if r < n {
                        break r;
                    }
                    let m2 = r - n;
                    visited_middle[m2] = true;
                    let s = lower[m2] as usize;
                    if s >= n {
                        break s;
                    }
                    m = s;
                }
            };
            partner[b] = end as u32;
            partner[end] = b as u32;
        }

        let mut loops = 0;
        for start in 0..n {
            if visited_middle[start] {
                continue;
            }
            loops += 1;
            let mut m = start;
            loop {
                visited_middle[m] = true;
                let m2 = lower[m] as usize;
                visited_middle[m2] = true;
                m = upper[n + m2] as usize - n;
                if m == start {
                    break;
                }
            }
        }
        Ok((TLDiagram { n, partner }, loops))
    }

    /// Reflection in a horizontal line.
    pub fn flip(&self) -> TLDiagram {
        let n = self.n;
        let swap = |s: usize| if s < n { s + n } else { s - n };
        let mut partner = vec![0; 2 * n];
        for s in 0..2 * n {
            partner[swap(s)] = swap(self.partner[s] as usize) as u32;
        }
        TLDiagram { n, partner }
    }

    pub fn arcs(&self) -> Arcs {
        let n = self.n;
        let mut arcs = Arcs::default();
        for s in 0..2 * n {
            let p = self.partner[s] as usize;
            match (s < n, p < n) {
                (true, true) if s < p => arcs.top.push(Arc { side: Side::Top, endpoints: (s + 1, p + 1) }),
                (false, false) if s < p => {
                    arcs.bottom.push(Arc { side: Side::Bottom, endpoints: (s - n + 1, p - n + 1) })
                }
                (true, false) => arcs.through.push(Arc { side: Side::Through, endpoints: (s + 1, p - n + 1) }),
                _ => {}
            }
        }
        arcs
    }

    /// Arcs on one boundary as `(left, right)` positions, sorted by left endpoint.
    pub fn boundary_arcs(&self, side: Side) -> Vec<(usize, usize)> {
        let n = self.n;
        let offset = match side {
            Side::Top => 0,
            Side::Bottom => n,
            Side::Through => return self.arcs().through.iter().map(|a| a.endpoints).collect(),
        };
        (0..n)
            .filter_map(|k| {
                let p = self.partner[offset + k] as usize;
                (p >= offset && p < offset + n && p - offset > k).then(|| (k + 1, p - offset + 1))
            })
            .collect()
    }

    pub fn top_arcs(&self) -> Vec<(usize, usize)> {
        self.boundary_arcs(Side::Top)
    }

    pub fn bottom_arcs(&self) -> Vec<(usize, usize)> {
        self.boundary_arcs(Side::Bottom)
    }

    /// Number of top arcs (equal to the number of bottom arcs).
    pub fn arc_count(&self) -> usize {
        (0..self.n).filter(|&k| (self.partner[k] as usize) < self.n).count() / 2
    }

    /// Positions on the given boundary that carry a through line.
    pub fn through_points(&self, side: Side) -> Vec<usize> {
        let n = self.n;
        match side {
            Side::Top => (0..n).filter(|&k| self.partner[k] as usize >= n).map(|k| k + 1).collect(),
            Side::Bottom => (0..n).filter(|&k| (self.partner[n + k] as usize) < n).map(|k| k + 1).collect(),
            Side::Through => Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == TLDiagram::identity(self.n)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.flip()
    }

    /// Length of the fully commutative element with this diagram: half the
    /// total horizontal extent of all strands.
    pub fn length(&self) -> usize {
        let arcs = self.arcs();
        let width: usize = arcs.top.iter().chain(&arcs.bottom).map(|a| a.endpoints.1 - a.endpoints.0).sum::<usize>()
            + arcs.through.iter().map(|a| a.endpoints.0.abs_diff(a.endpoints.1)).sum::<usize>();
        width / 2
    }

    /// Product of generators along a word; errors if a loop closes, which
    /// happens exactly when the word is not a reduced word of a fully
    /// commutative element.
    pub fn of_word(word: &Word) -> Result<TLDiagram> {
        let n = word.n();
        let mut d = TLDiagram::identity(n);
        for &letter in word.letters() {
            let (next, loops) = d.compose(&TLDiagram::generator(letter as usize, n)?)?;
            if loops > 0 {
                return Err(Error::Precondition(format!("word {:?} closes a loop", word.letters())));
            }
            d = next;
        }
        Ok(d)
    }

    /// The basis diagram `e_w` of a fully commutative permutation.
    pub fn of_fc(p: &Permutation) -> Result<TLDiagram> {
        p.require_fully_commutative()?;
        Ok(Self::of_word(&p.reduced_word()).expect("reduced words of fully commutative elements close no loops"))
    }

    /// The fully commutative permutation whose diagram is `self`.
    ///
    /// Greedy: an innermost top arc `(i, i+1)` marks a left descent `s_i`;
    /// peel the generator off and repeat on the shorter diagram.
    pub fn to_fc(&self) -> Permutation {
        let n = self.n;
        let mut letters = Vec::new();
        let mut d = self.clone();
        while let Some(i) = (0..n.saturating_sub(1)).find(|&k| d.partner[k] as usize == k + 1) {
            letters.push(i as u32 + 1);
            d = d.pop_generator(i + 1);
        }
        debug_assert!(d.is_identity());
        Word::new(n, letters).expect("letters are in range").to_permutation()
    }

    /// Given a top arc `(i, i+1)`, returns the shortest `D'` with `e_i D' = self`.
    fn pop_generator(&self, i: usize) -> TLDiagram {
        let n = self.n;
        let (ti, tj) = (i - 1, i);
        let target = self.length() - 1;
        let mut best: Option<TLDiagram> = None;
        for s in 0..2 * n {
            let p = self.partner[s] as usize;
            if p < s || s == ti || s == tj {
                continue;
            }
            for (x_to, y_to) in [(ti, tj), (tj, ti)] {
                let mut partner = self.partner.clone();
                partner[s] = x_to as u32;
                partner[x_to] = s as u32;
                partner[p] = y_to as u32;
                partner[y_to] = p as u32;
                if let Ok(candidate) = TLDiagram::from_partner(n, partner) {
                    if candidate.length() == target {
                        best = Some(candidate);
                    }
                }
            }
            if best.is_some() {
                break;
            }
        }
        let popped = best.expect("an innermost top arc always peels off");
        debug_assert_eq!(
            TLDiagram::generator(i, n).unwrap().compose(&popped).unwrap(),
            (self.clone(), 0)
        );
        popped
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    n: usize,
    pairs: Vec<[String; 2]>,
}

impl Serialize for TLDiagram {
    /// `{"n": 4, "pairs": [["T1","T4"], ...]}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramRepr {
            n: self.n,
            pairs: self.pairs().into_iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TLDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = DiagramRepr::deserialize(deserializer)?;
        let pairs = repr
            .pairs
            .iter()
            .map(|[a, b]| Ok((a.parse()?, b.parse()?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        TLDiagram::new(repr.n, &pairs).map_err(serde::de::Error::custom)
    }
}
