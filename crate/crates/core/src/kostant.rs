//! Special involutions, the Kostant positivity classifier for fully
//! commutative elements, and the explicit negative witness.
//!
//! A fully commutative involution is Kostant positive exactly when it is a
//! product of pairwise distant special involutions `sigma(i, j)`, which on
//! diagrams means: any two non-nested arcs of `e_d` have a through line
//! strictly between them. For arbitrary fully commutative `w` the same test
//! is applied to the calibrated-side arcs of `e_w` (the answer is constant
//! on left cells).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{cell_side, left_cell_involution, theta_nonzero_diagrams};
use crate::diagram::TLDiagram;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Word};

/// The special involution `sigma(i, j)` of `S_n`: `j + 1` perfectly nested
/// arcs on each boundary, centred between `i` and `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpecialFactor {
    pub i: usize,
    pub j: usize,
    pub n: usize,
}

impl SpecialFactor {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        let valid = i >= 1 && i < n && (j == 0 || (j < i && i + j < n));
        if valid {
            Ok(SpecialFactor { i, j, n })
        } else {
            Err(Error::InvalidSpecialFactor { i, j, n })
        }
    }

    /// `{i - j, ..., i + j + 1}` as an inclusive interval.
    pub fn support(&self) -> (i64, i64) {
        (self.i as i64 - self.j as i64, (self.i + self.j + 1) as i64)
    }

    /// The support widened by one on each side. Not clipped, so it may
    /// reach `0` or `n + 1`.
    pub fn extended_support(&self) -> (i64, i64) {
        let (lo, hi) = self.support();
        (lo - 1, hi + 1)
    }

    /// The nested arcs `(i - j, i + j + 1), ..., (i, i + 1)`, outermost first.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..=self.j).map(|t| (self.i - self.j + t, self.i + self.j + 1 - t)).collect()
    }

    /// `s_i (s_{i-1} s_{i+1}) ... (s_{i-j} ... s_{i+j}) ... (s_{i-1} s_{i+1}) s_i`.
    pub fn word(&self) -> Word {
        let layer = |k: usize| (0..=k).map(move |t| (self.i - k + 2 * t) as u32);
        let letters: Vec<u32> = (0..=self.j).chain((0..self.j).rev()).flat_map(layer).collect();
        Word::new(self.n, letters).expect("letters of a valid special factor are in range")
    }

    pub fn permutation(&self) -> Permutation {
        self.word().to_permutation()
    }
}

impl fmt::Display for SpecialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma({},{})", self.i, self.j)
    }
}

pub fn special_involution(i: usize, j: usize, n: usize) -> Result<Permutation> {
    Ok(SpecialFactor::new(i, j, n)?.permutation())
}

/// Extended supports meet in at most one point.
pub fn is_distant(a: &SpecialFactor, b: &SpecialFactor) -> bool {
    let (alo, ahi) = a.extended_support();
    let (blo, bhi) = b.extended_support();
    ahi.min(bhi) <= alo.max(blo)
}

/// True iff every two non-nested arcs in `arcs` (sorted by left endpoint)
/// have a point of `through` strictly between them.
fn arcs_separated(arcs: &[(usize, usize)], through: &[usize]) -> bool {
    arcs.iter().enumerate().all(|(k, &(_, a_right))| {
        arcs[k + 1..]
            .iter()
            .filter(|&&(b_left, _)| b_left > a_right)
            .all(|&(b_left, _)| through.iter().any(|&p| a_right < p && p < b_left))
    })
}

fn require_fc_involution(d: &Permutation) -> Result<()> {
    d.require_fully_commutative()?;
    if d.is_involution() {
        Ok(())
    } else {
        Err(Error::NotAnInvolution(d.to_string()))
    }
}

/// Splits the arcs of `e_d` into maximal nested blocks and matches each
/// against the arc pattern of some `sigma(i, j)`. Returns the factors left
/// to right when every block matches and the factors are pairwise distant.
pub fn decompose_into_specials(d: &Permutation) -> Result<Option<Vec<SpecialFactor>>> {
    require_fc_involution(d)?;
    let n = d.n();
    let arcs = cell_side().arcs(&TLDiagram::of_fc(d)?);
    let mut factors = Vec::new();
    let mut k = 0;
    while k < arcs.len() {
        let (a, b) = arcs[k];
        let inner = arcs[k + 1..].iter().take_while(|&&(c, _)| c < b).count();
        let width = b - a;
        if width % 2 == 0 || inner != (width - 1) / 2 {
            return Ok(None);
        }
        let j = inner;
        let i = a + j;
        let factor = SpecialFactor::new(i, j, n)?;
        if factor.arcs() != arcs[k..=k + inner] {
            return Ok(None);
        }
        factors.push(factor);
        k += inner + 1;
    }
    let distant = factors
        .iter()
        .enumerate()
        .all(|(x, a)| factors[x + 1..].iter().all(|b| is_distant(a, b)));
    Ok(distant.then_some(factors))
}

/// The pair `(x, y)` showing that a non-Kostant involution fails
/// distinguishability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeWitness {
    /// The involution the witness is built from.
    pub d: Permutation,
    pub x: Permutation,
    pub y: Permutation,
}

/// Classifier output with a machine-checkable certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KostantVerdict {
    pub positive: bool,
    /// Present iff positive and the input is an involution.
    pub factors: Option<Vec<SpecialFactor>>,
    /// Present iff negative. For a non-involution the witness is built from
    /// the involution of its left cell.
    pub witness: Option<NegativeWitness>,
}

/// Decides Kostant positivity for a fully commutative element.
pub fn is_kostant(w: &Permutation) -> Result<KostantVerdict> {
    w.require_fully_commutative()?;
    let diagram = TLDiagram::of_fc(w)?;
    let side = cell_side();
    let positive = arcs_separated(&side.arcs(&diagram), &diagram.through_points(side.side()));
    let factors = if w.is_involution() {
        let factors = decompose_into_specials(w)?;
        assert_eq!(factors.is_some(), positive, "special decomposition disagrees with arc separation for {w}");
        factors
    } else {
        None
    };
    let witness = if positive {
        None
    } else {
        let d = if w.is_involution() { w.clone() } else { left_cell_involution(w)? };
        let (x, y) = negative_witness(&d)?;
        Some(NegativeWitness { d, x, y })
    };
    Ok(KostantVerdict { positive, factors, witness })
}

/// The pair `(A, B)` of adjacent non-nested arcs used by the witness:
/// leftmost at the outermost nesting level where such a pair exists.
fn witness_arcs(arcs: &[(usize, usize)]) -> Option<((usize, usize), (usize, usize))> {
    let depth = |a: (usize, usize)| arcs.iter().filter(|&&(l, r)| l < a.0 && a.1 < r).count();
    arcs.iter()
        .flat_map(|&a| arcs.iter().filter(move |&&b| b.0 == a.1 + 1).map(move |&b| (a, b)))
        .min_by_key(|&(a, _)| (depth(a), a.0))
}

/// Builds the two distinct elements `x`, `y` with `theta_x L_d` and
/// `theta_y L_d` isomorphic, for a non-Kostant fully commutative involution `d`.
///
/// With `A`, `B` the chosen arcs and `E` the arcs enclosing both: `e_x`
/// drops `B` and `E` on both boundaries; `e_y` drops `B` and `E` on the
/// calibrated side and `A` and `E` on the other. Freed points become
/// through lines.
pub fn negative_witness(d: &Permutation) -> Result<(Permutation, Permutation)> {
    require_fc_involution(d)?;
    let n = d.n();
    let side = cell_side();
    let ed = TLDiagram::of_fc(d)?;
    let arcs = side.arcs(&ed);
    if arcs_separated(&arcs, &ed.through_points(side.side())) {
        return Err(Error::Precondition(format!("{d} is Kostant positive")));
    }
    let (a, b) = witness_arcs(&arcs).expect("a non-separated arc set has adjacent non-nested arcs");
    let keep = |drop: (usize, usize)| -> Vec<(usize, usize)> {
        arcs.iter()
            .copied()
            .filter(|&c| c != drop && !(c.0 < a.0 && b.1 < c.1))
            .collect()
    };
    let without_b = keep(b);
    let without_a = keep(a);
    let build = |cell: &[(usize, usize)], other: &[(usize, usize)]| -> Result<Permutation> {
        let diagram = match side {
            crate::algebra::CellSide::Top => TLDiagram::from_arcs(n, cell, other)?,
            crate::algebra::CellSide::Bottom => TLDiagram::from_arcs(n, other, cell)?,
        };
        Ok(diagram.to_fc())
    };
    Ok((build(&without_b, &without_b)?, build(&without_b, &without_a)?))
}

/// Checks the guarantees of [`negative_witness`]; returns a description of
/// the first violated one.
pub fn check_witness(d: &Permutation, x: &Permutation, y: &Permutation) -> std::result::Result<(), String> {
    if x == y {
        return Err("x equals y".into());
    }
    let diagram = |w: &Permutation| TLDiagram::of_fc(w).map_err(|e| e.to_string());
    let (ed, ex, ey) = (diagram(d)?, diagram(x)?, diagram(y)?);
    let c = ed.arc_count();
    let a = ex.arc_count();
    if ey.arc_count() != a {
        return Err(format!("arc counts differ: {a} vs {}", ey.arc_count()));
    }
    if a + 1 > c {
        return Err(format!("arc count {a} is not below {c}"));
    }
    let side = cell_side();
    if side.arcs(&ex) != side.arcs(&ey) {
        return Err("x and y do not share their calibrated-side arcs".into());
    }
    if !theta_nonzero_diagrams(&ex, &ed) || !theta_nonzero_diagrams(&ey, &ed) {
        return Err("theta vanishes on d for x or y".into());
    }
    Ok(())
}

/// The element `w_0^p w_0` for the maximal parabolic with Levi type
/// `sl_i + sl_{n-i}`: `i` nested arcs at the left of the top boundary, `i`
/// nested arcs at the right of the bottom boundary.
pub fn maximal_parabolic_element(n: usize, i: usize) -> Result<Permutation> {
    if n == 0 || 2 * i > n {
        return Err(Error::OutOfRange(format!("i = {i} must satisfy 0 <= i <= n/2 for n = {n}")));
    }
    let top: Vec<(usize, usize)> = (1..=i).map(|k| (k, 2 * i + 1 - k)).collect();
    let bottom: Vec<(usize, usize)> = (1..=i).map(|k| (n - 2 * i + k, n + 1 - k)).collect();
    Ok(TLDiagram::from_arcs(n, &top, &bottom)?.to_fc())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_fc;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::from_one_line(v.to_vec()).unwrap()
    }

    fn sf(i: usize, j: usize, n: usize) -> SpecialFactor {
        SpecialFactor::new(i, j, n).unwrap()
    }

    #[test]
    fn special_involutions() {
        assert_eq!(special_involution(1, 0, 4).unwrap(), Permutation::simple_reflection(1, 4).unwrap());
        assert_eq!(special_involution(2, 1, 4).unwrap(), perm(&[3, 4, 1, 2]));
        assert_eq!(special_involution(3, 2, 6).unwrap(), perm(&[4, 5, 6, 1, 2, 3]));
        assert!(special_involution(1, 1, 4).is_err());
        assert!(special_involution(3, 1, 4).is_err());
        assert!(special_involution(4, 0, 4).is_err());
        for n in 2..=8 {
            for i in 1..n {
                for j in 0..=(i - 1).min(n - 1 - i) {
                    let s = sf(i, j, n);
                    let p = s.permutation();
                    assert!(p.is_involution() && p.is_fully_commutative());
                    assert_eq!(p.a_value().unwrap(), j + 1);
                    let e = TLDiagram::of_fc(&p).unwrap();
                    assert!(e.is_symmetric());
                    assert_eq!(e.top_arcs().len(), j + 1);
                    let mut arcs = s.arcs();
                    arcs.sort();
                    assert_eq!(e.top_arcs(), arcs);
                    assert_eq!(p.inversions(), (j + 1) * (j + 1));
                }
            }
        }
    }

    #[test]
    fn distance() {
        assert!(is_distant(&sf(1, 0, 6), &sf(4, 0, 6)));
        assert!(!is_distant(&sf(1, 0, 6), &sf(3, 0, 6)));
        assert!(!is_distant(&sf(2, 1, 6), &sf(2, 1, 6)));
        assert!(!is_distant(&sf(1, 0, 6), &sf(1, 0, 6)));
        assert_eq!(sf(1, 0, 6).extended_support(), (0, 3));
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose_into_specials(&Permutation::identity(4)).unwrap(), Some(vec![]));
        assert_eq!(decompose_into_specials(&perm(&[3, 4, 1, 2])).unwrap(), Some(vec![sf(2, 1, 4)]));
        assert_eq!(decompose_into_specials(&perm(&[2, 1, 4, 3])).unwrap(), None);
        assert_eq!(
            decompose_into_specials(&perm(&[2, 1, 3, 5, 4])).unwrap(),
            Some(vec![sf(1, 0, 5), sf(4, 0, 5)])
        );
        assert!(matches!(decompose_into_specials(&perm(&[2, 3, 1])), Err(Error::NotAnInvolution(_))));
        assert!(decompose_into_specials(&perm(&[3, 2, 1])).is_err());
        // arcs (1,6),(2,3),(4,5): imperfect nesting
        let d = TLDiagram::from_arcs(6, &[(1, 6), (2, 3), (4, 5)], &[(1, 6), (2, 3), (4, 5)]).unwrap().to_fc();
        assert_eq!(decompose_into_specials(&d).unwrap(), None);
    }

    #[test]
    fn classifier_examples() {
        for n in 2..=5 {
            assert!(is_kostant(&Permutation::identity(n)).unwrap().positive);
            for i in 1..n {
                assert!(is_kostant(&Permutation::simple_reflection(i, n).unwrap()).unwrap().positive);
            }
        }
        let v = is_kostant(&perm(&[2, 1, 4, 3])).unwrap();
        assert!(!v.positive && v.factors.is_none());
        let w = v.witness.unwrap();
        assert_eq!((w.x, w.y), (perm(&[2, 1, 3, 4]), perm(&[4, 1, 2, 3])));
        let s321 = Word::new(4, vec![3, 2, 1]).unwrap().to_permutation();
        let v = is_kostant(&s321).unwrap();
        assert!(v.positive && v.factors.is_none() && v.witness.is_none());
        assert!(is_kostant(&perm(&[3, 2, 1])).is_err());
        let v = is_kostant(&perm(&[3, 4, 1, 2])).unwrap();
        assert_eq!(v.factors, Some(vec![sf(2, 1, 4)]));
    }

    #[test]
    fn witness_for_two_adjacent_arcs() {
        let d = perm(&[2, 1, 4, 3]);
        let (x, y) = negative_witness(&d).unwrap();
        assert_eq!(x, Permutation::simple_reflection(1, 4).unwrap());
        let ey = TLDiagram::of_fc(&y).unwrap();
        assert_eq!((ey.top_arcs(), ey.bottom_arcs()), (vec![(1, 2)], vec![(3, 4)]));
        check_witness(&d, &x, &y).unwrap();
        assert!(negative_witness(&perm(&[3, 4, 1, 2])).is_err());
        assert!(negative_witness(&perm(&[2, 3, 1, 4])).is_err());
    }

    #[test]
    fn witness_under_an_enclosing_arc() {
        let arcs = [(1, 6), (2, 3), (4, 5)];
        let d = TLDiagram::from_arcs(6, &arcs, &arcs).unwrap().to_fc();
        let (x, y) = negative_witness(&d).unwrap();
        let ex = TLDiagram::of_fc(&x).unwrap();
        let ey = TLDiagram::of_fc(&y).unwrap();
        assert_eq!((ex.top_arcs(), ex.bottom_arcs()), (vec![(2, 3)], vec![(2, 3)]));
        assert_eq!((ey.top_arcs(), ey.bottom_arcs()), (vec![(2, 3)], vec![(4, 5)]));
        check_witness(&d, &x, &y).unwrap();
    }

    #[test]
    fn witness_prefers_outermost_pair() {
        // (1,2),(3,8) with (4,5),(6,7) inside: the outer pair (1,2),(3,8) is chosen
        let arcs = [(1, 2), (3, 8), (4, 5), (6, 7)];
        assert_eq!(witness_arcs(&arcs), Some(((1, 2), (3, 8))));
        assert_eq!(witness_arcs(&[(1, 4), (2, 3), (6, 7)]), None);
    }

    #[test]
    fn witnesses_are_valid_through_rank_seven() {
        for n in 2..=7 {
            for d in enumerate_fc(n, true) {
                if !is_kostant(&d).unwrap().positive {
                    let (x, y) = negative_witness(&d).unwrap();
                    check_witness(&d, &x, &y).unwrap_or_else(|e| panic!("{d}: {e}"));
                }
            }
        }
    }

    #[test]
    fn maximal_parabolic() {
        assert!(maximal_parabolic_element(4, 0).unwrap().is_identity());
        assert_eq!(maximal_parabolic_element(4, 2).unwrap(), perm(&[3, 4, 1, 2]));
        let e = TLDiagram::of_fc(&maximal_parabolic_element(4, 1).unwrap()).unwrap();
        assert_eq!((e.top_arcs(), e.bottom_arcs()), (vec![(1, 2)], vec![(3, 4)]));
        assert!(maximal_parabolic_element(4, 3).is_err());
    }

    #[test]
    fn verdict_json_carries_certificate() {
        let v = is_kostant(&perm(&[3, 4, 1, 2])).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"positive":true,"factors":[{"i":2,"j":1,"n":4}],"witness":null}"#);
        assert_eq!(serde_json::from_str::<KostantVerdict>(&text).unwrap(), v);
    }
}
