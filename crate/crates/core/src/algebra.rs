//! The Temperley–Lieb algebra over `Z[q, q^-1]` with `delta = q + q^-1`,
//! Kazhdan–Lusztig cell combinatorics for fully commutative elements, and
//! the nonvanishing predicate for `theta_x L_y`.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::diagram::{Side, TLDiagram};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::perm::{enumerate_fc, Permutation};

/// A finite linear combination of diagrams with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLElement {
    n: usize,
    terms: BTreeMap<TLDiagram, LaurentPoly>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        TLElement { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(TLDiagram::identity(n))
    }

    pub fn basis(d: TLDiagram) -> Self {
        Self::term(d, LaurentPoly::one())
    }

    pub fn term(d: TLDiagram, coefficient: LaurentPoly) -> Self {
        let mut e = TLElement::zero(d.n());
        e.add_term(d, coefficient);
        e
    }

    pub fn generator(i: usize, n: usize) -> Result<Self> {
        Ok(Self::basis(TLDiagram::generator(i, n)?))
    }

    /// `e_w` for a fully commutative `w`.
    pub fn of_fc(w: &Permutation) -> Result<Self> {
        Ok(Self::basis(TLDiagram::of_fc(w)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &LaurentPoly)> {
        self.terms.iter()
    }

    fn add_term(&mut self, d: TLDiagram, coefficient: LaurentPoly) {
        if coefficient.is_zero() {
            return;
        }
        let slot = self.terms.entry(d.clone()).or_default();
        *slot = &*slot + &coefficient;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn add(&self, other: &TLElement) -> Result<TLElement> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> TLElement {
        let mut out = TLElement::zero(self.n);
        for (d, coeff) in &self.terms {
            out.add_term(d.clone(), coeff * c);
        }
        out
    }

    /// Bilinear extension of diagram composition, each product weighted by
    /// `delta^loops`. `self` is drawn on top.
    pub fn multiply(&self, other: &TLElement) -> Result<TLElement> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        let mut out = TLElement::zero(self.n);
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                let (d, loops) = da.compose(db)?;
                out.add_term(d, &(ca * cb) * &LaurentPoly::delta_pow(loops));
            }
        }
        Ok(out)
    }

    /// The coefficient of `d`, zero if absent.
    pub fn coefficient_of(&self, d: &TLDiagram) -> LaurentPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }
}

impl Serialize for TLElement {
    /// A list of `[diagram, laurent]` pairs in diagram order.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(&TLDiagram, &LaurentPoly)> = self.terms.iter().collect();
        pairs.serialize(serializer)
    }
}

impl TLElement {
    /// Inverse of the serialized form; the rank is needed for the empty element.
    pub fn from_pairs(n: usize, pairs: Vec<(TLDiagram, LaurentPoly)>) -> Result<Self> {
        let mut out = TLElement::zero(n);
        for (d, c) in pairs {
            if d.n() != n {
                return Err(Error::RankMismatch { left: n, right: d.n() });
            }
            out.add_term(d, c);
        }
        Ok(out)
    }
}

/// The boundary of a diagram whose arcs determine the left cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellSide {
    Top,
    Bottom,
}

impl CellSide {
    pub fn opposite(self) -> CellSide {
        match self {
            CellSide::Top => CellSide::Bottom,
            CellSide::Bottom => CellSide::Top,
        }
    }

    pub fn side(self) -> Side {
        match self {
            CellSide::Top => Side::Top,
            CellSide::Bottom => Side::Bottom,
        }
    }

    pub fn arcs(self, d: &TLDiagram) -> Vec<(usize, usize)> {
        d.boundary_arcs(self.side())
    }
}

/// Finds the boundary whose arc sets separate fully commutative elements of
/// `S_n` exactly as equality of Robinson–Schensted recording tableaux does.
/// `None` if neither boundary does.
pub fn calibrate_on(n: usize) -> Option<CellSide> {
    let elements: Vec<(Permutation, TLDiagram)> = enumerate_fc(n, false)
        .into_iter()
        .map(|w| {
            let d = TLDiagram::of_fc(&w).unwrap();
            (w, d)
        })
        .collect();
    let recording: Vec<_> = elements.iter().map(|(w, _)| w.rs_tableaux().1).collect();
    [CellSide::Top, CellSide::Bottom].into_iter().find(|side| {
        let arcs: Vec<_> = elements.iter().map(|(_, d)| side.arcs(d)).collect();
        (0..elements.len())
            .all(|i| (0..elements.len()).all(|j| (recording[i] == recording[j]) == (arcs[i] == arcs[j])))
    })
}

/// The calibrated cell side, computed once per process on `S_4`.
pub fn cell_side() -> CellSide {
    static SIDE: OnceLock<CellSide> = OnceLock::new();
    *SIDE.get_or_init(|| calibrate_on(4).expect("no diagram boundary matches left cells on S_4"))
}

fn fc_diagram(w: &Permutation) -> Result<TLDiagram> {
    TLDiagram::of_fc(w)
}

fn is_subset(small: &[(usize, usize)], large: &[(usize, usize)]) -> bool {
    small.iter().all(|a| large.contains(a))
}

/// Kazhdan–Lusztig left preorder on fully commutative elements:
/// arc containment on the calibrated side.
pub fn leq_left(x: &Permutation, y: &Permutation) -> Result<bool> {
    let side = cell_side();
    Ok(is_subset(&side.arcs(&fc_diagram(x)?), &side.arcs(&fc_diagram(y)?)))
}

/// Right preorder: arc containment on the opposite side.
pub fn leq_right(x: &Permutation, y: &Permutation) -> Result<bool> {
    let side = cell_side().opposite();
    Ok(is_subset(&side.arcs(&fc_diagram(x)?), &side.arcs(&fc_diagram(y)?)))
}

/// Models `theta_x L_y != 0`: the calibrated-side arcs of the flip of `e_x`
/// (that is, of `e_{x^-1}`) all occur among the same-side arcs of `e_y`.
pub fn theta_nonzero(x: &Permutation, y: &Permutation) -> Result<bool> {
    let side = cell_side();
    Ok(is_subset(&side.arcs(&fc_diagram(x)?.flip()), &side.arcs(&fc_diagram(y)?)))
}

/// Same predicate on precomputed diagrams.
pub fn theta_nonzero_diagrams(ex: &TLDiagram, ey: &TLDiagram) -> bool {
    let side = cell_side();
    is_subset(&side.arcs(&ex.flip()), &side.arcs(ey))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

/// Partition of the fully commutative elements of `S_n` into cells. Cells
/// and their members are listed in lexicographic order of first element.
pub fn cells(n: usize, kind: CellKind) -> Vec<Vec<Permutation>> {
    let side = cell_side();
    let mut groups: Vec<Vec<Permutation>> = Vec::new();
    let mut index: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
    for w in enumerate_fc(n, false) {
        let d = TLDiagram::of_fc(&w).unwrap();
        let key = match kind {
            CellKind::Left => side.arcs(&d),
            CellKind::Right => side.opposite().arcs(&d),
            // a-value, encoded as a one-element key
            CellKind::TwoSided => vec![(d.arc_count(), 0)],
        };
        let slot = *index.entry(key).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(w);
    }
    groups
}

/// The unique involution of a left or right cell.
pub fn duflo_involution(cell: &[Permutation]) -> Result<Permutation> {
    let mut involutions = cell.iter().filter(|w| w.is_involution());
    match (involutions.next(), involutions.next()) {
        (Some(d), None) => Ok(d.clone()),
        (None, _) => Err(Error::Cell("cell contains no involution".into())),
        (Some(_), Some(_)) => Err(Error::Cell("cell contains several involutions".into())),
    }
}

/// The involution in the left cell of `w`: the symmetric diagram carrying
/// the calibrated-side arcs of `e_w` on both boundaries.
pub fn left_cell_involution(w: &Permutation) -> Result<Permutation> {
    let arcs = cell_side().arcs(&fc_diagram(w)?);
    Ok(TLDiagram::from_arcs(w.n(), &arcs, &arcs)?.to_fc())
}
