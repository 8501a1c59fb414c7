//! Permutations of `S_n` in one-line notation, reduced words, full
//! commutativity and the Robinson–Schensted correspondence.
//!
//! Conventions:
//!
//! * one-line notation is 1-based: `images[k - 1] = w(k)`;
//! * products apply the left factor first, so `(p * q)(k) = q(p(k))`.
//!   A word `[a1, ..., ak]` therefore denotes `s_a1 * s_a2 * ... * s_ak`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the symmetric group `S_n`, stored in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::from_one_line(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    /// Validates one-line notation. Errors name the first offending position (1-based).
    pub fn from_one_line(images: impl Into<Vec<u32>>) -> Result<Self> {
        let images = images.into();
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        let mut seen = vec![false; n];
        for (pos, &value) in images.iter().enumerate() {
            if value == 0 || value as usize > n {
                return Err(Error::ValueOutOfRange { position: pos + 1, value, n });
            }
            if std::mem::replace(&mut seen[value as usize - 1], true) {
                return Err(Error::NotABijection { position: pos + 1, value });
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        Permutation { images: (1..=n as u32).collect() }
    }

    /// The simple reflection `s_i = (i, i+1)` in `S_n`.
    pub fn simple_reflection(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorOutOfRange { i, n });
        }
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `w(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `self * other`: apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch { left: self.n(), right: other.n() });
        }
        let images = self.images.iter().map(|&v| other.images[v as usize - 1]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| self.images[v as usize - 1] as usize == i + 1)
    }

    pub fn inversions(&self) -> usize {
        let w = &self.images;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&v| v < w[i]).count())
            .sum()
    }

    /// True iff the permutation avoids the pattern 321.
    pub fn is_fully_commutative(&self) -> bool {
        let w = &self.images;
        let n = w.len();
        if n < 3 {
            return true;
        }
        let mut suffix_min = vec![u32::MAX; n + 1];
        for k in (0..n).rev() {
            suffix_min[k] = suffix_min[k + 1].min(w[k]);
        }
        let mut prefix_max = 0;
        for k in 0..n {
            if prefix_max > w[k] && suffix_min[k + 1] < w[k] {
                return false;
            }
            prefix_max = prefix_max.max(w[k]);
        }
        true
    }

    pub fn require_fully_commutative(&self) -> Result<()> {
        if self.is_fully_commutative() {
            Ok(())
        } else {
            Err(Error::NotFullyCommutative(self.to_string()))
        }
    }

    /// A reduced word for `self`, found by bubbling the largest misplaced
    /// value into place first. Deterministic; its length is the inversion count.
    pub fn reduced_word(&self) -> Word {
        let n = self.n();
        let mut w = self.images.clone();
        let mut letters = Vec::with_capacity(self.inversions());
        for value in (1..=n as u32).rev() {
            let mut pos = w.iter().position(|&v| v == value).unwrap();
            while pos + 1 < value as usize {
                // w = s_{pos+1} * w' where w' swaps positions pos, pos+1
                w.swap(pos, pos + 1);
                letters.push(pos as u32 + 1);
                pos += 1;
            }
        }
        Word { n, letters }
    }

    /// Robinson–Schensted row insertion of `w(1), ..., w(n)`: returns the
    /// insertion tableau `P` and the recording tableau `Q`.
    pub fn rs_tableaux(&self) -> (Tableau, Tableau) {
        let mut p: Vec<Vec<u32>> = Vec::new();
        let mut q: Vec<Vec<u32>> = Vec::new();
        for (step, &value) in self.images.iter().enumerate() {
            let mut carry = value;
            let mut row = 0;
            loop {
                if row == p.len() {
                    p.push(vec![carry]);
                    q.push(vec![step as u32 + 1]);
                    break;
                }
                match p[row].iter().position(|&e| e > carry) {
                    Some(k) => {
                        carry = std::mem::replace(&mut p[row][k], carry);
                        row += 1;
                    }
                    None => {
                        p[row].push(carry);
                        q[row].push(step as u32 + 1);
                        break;
                    }
                }
            }
        }
        (Tableau { rows: p }, Tableau { rows: q })
    }

    pub fn rs_shape(&self) -> Vec<usize> {
        self.rs_tableaux().0.shape()
    }

    /// Lusztig's a-value of a fully commutative element: the length of the
    /// second row of its Robinson–Schensted shape.
    pub fn a_value(&self) -> Result<usize> {
        self.require_fully_commutative()?;
        Ok(self.rs_shape().get(1).copied().unwrap_or(0))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on rank mismatch; use [`Permutation::then`] to handle it.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs).expect("rank mismatch in permutation product")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A word in the simple reflections `s_1, ..., s_{n-1}` of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "Vec<u32>")]
pub struct Word {
    n: usize,
    letters: Vec<u32>,
}

impl From<Word> for Vec<u32> {
    fn from(w: Word) -> Self {
        w.letters
    }
}

impl Word {
    pub fn new(n: usize, letters: impl Into<Vec<u32>>) -> Result<Self> {
        let letters = letters.into();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        for (pos, &letter) in letters.iter().enumerate() {
            if letter == 0 || letter as usize >= n {
                return Err(Error::LetterOutOfRange { position: pos + 1, letter, n });
            }
        }
        Ok(Word { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product of the letters, left factor applied first. The word need not be reduced.
    pub fn to_permutation(&self) -> Permutation {
        let mut images: Vec<u32> = (1..=self.n as u32).collect();
        for &a in &self.letters {
            // right-multiplying by s_a swaps the values a and a+1
            for v in images.iter_mut() {
                if *v == a {
                    *v = a + 1;
                } else if *v == a + 1 {
                    *v = a;
                }
            }
        }
        Permutation { images }
    }
}

/// A partition with at most two parts, `first >= second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoRowShape {
    pub first: usize,
    pub second: usize,
}

impl TwoRowShape {
    pub fn new(first: usize, second: usize) -> Result<Self> {
        if first < second {
            return Err(Error::OutOfRange(format!("shape ({first},{second}) is not a partition")));
        }
        Ok(TwoRowShape { first, second })
    }

    /// The shape `(n - a, a)`.
    pub fn for_a_value(n: usize, a: usize) -> Result<Self> {
        if 2 * a > n {
            return Err(Error::OutOfRange(format!("a = {a} exceeds n/2 for n = {n}")));
        }
        Ok(TwoRowShape { first: n - a, second: a })
    }

    pub fn n(&self) -> usize {
        self.first + self.second
    }

    pub fn parts(&self) -> Vec<usize> {
        [self.first, self.second].into_iter().filter(|&r| r > 0).collect()
    }
}

/// A Young tableau stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau {
    pub rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn two_row_shape(&self) -> Option<TwoRowShape> {
        match self.shape()[..] {
            [] => Some(TwoRowShape { first: 0, second: 0 }),
            [a] => Some(TwoRowShape { first: a, second: 0 }),
            [a, b] => Some(TwoRowShape { first: a, second: b }),
            _ => None,
        }
    }

    /// Rows and columns strictly increase and the entries are exactly `1..=n`.
    pub fn is_standard(&self) -> bool {
        let shape = self.shape();
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        let n: usize = shape.iter().sum();
        let mut seen = vec![false; n];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if e == 0 || e as usize > n || std::mem::replace(&mut seen[e as usize - 1], true) {
                    return false;
                }
                if c > 0 && row[c - 1] >= e {
                    return false;
                }
                if r > 0 && self.rows[r - 1][c] >= e {
                    return false;
                }
            }
        }
        true
    }
}

/// Lexicographic enumeration of all of `S_n`.
pub struct Permutations {
    next: Option<Vec<u32>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations { next: (n >= 1).then(|| (1..=n as u32).collect()) }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(i) = (0..succ.len().saturating_sub(1)).rev().find(|&i| succ[i] < succ[i + 1]) {
            let j = (i + 1..succ.len()).rev().find(|&j| succ[j] > succ[i]).unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

/// All fully commutative elements of `S_n` (or only the involutions among
/// them), in lexicographic order of one-line notation.
///
/// Uses a depth-first generator that only ever extends 321-avoiding prefixes:
/// a permutation avoids 321 iff the entries that are not left-to-right maxima
/// increase, and a prefix extends iff the smallest unused value exceeds the
/// last such entry.
pub fn enumerate_fc(n: usize, involutions_only: bool) -> Vec<Permutation> {
    assert!(n >= 1, "rank must be positive");
    let mut out = Vec::new();
    let mut used = vec![false; n + 1];
    let mut prefix = Vec::with_capacity(n);
    extend_fc(n, &mut prefix, &mut used, 0, 0, &mut out);
    if involutions_only {
        out.retain(Permutation::is_involution);
    }
    out
}

fn extend_fc(
    n: usize,
    prefix: &mut Vec<u32>,
    used: &mut [bool],
    max: u32,
    last_small: u32,
    out: &mut Vec<Permutation>,
) {
    if prefix.len() == n {
        out.push(Permutation { images: prefix.clone() });
        return;
    }
    for v in 1..=n as u32 {
        if used[v as usize] {
            continue;
        }
        let (new_max, new_small) = if v > max {
            (v, last_small)
        } else if v > last_small {
            (max, v)
        } else {
            continue;
        };
        used[v as usize] = true;
        let smallest_unused = (1..=n as u32).find(|&u| !used[u as usize]);
        if smallest_unused.is_none_or(|u| u > new_small) {
            prefix.push(v);
            extend_fc(n, prefix, used, new_max, new_small, out);
            prefix.pop();
        }
        used[v as usize] = false;
    }
}

/// Brute-force enumeration by filtering all of `S_n`. Kept as a reference.
pub fn enumerate_fc_by_filter(n: usize, involutions_only: bool) -> Vec<Permutation> {
    Permutations::new(n)
        .filter(|p| p.is_fully_commutative() && (!involutions_only || p.is_involution()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::from_one_line(v.to_vec()).unwrap()
    }

    #[test]
    fn one_line_validation() {
        assert!(perm(&[1, 2, 3]).is_identity());
        assert_eq!(
            Permutation::from_one_line(vec![1, 1, 3]),
            Err(Error::NotABijection { position: 2, value: 1 })
        );
        assert_eq!(
            Permutation::from_one_line(vec![1, 4, 2]),
            Err(Error::ValueOutOfRange { position: 2, value: 4, n: 3 })
        );
        assert_eq!(Permutation::from_one_line(vec![]), Err(Error::EmptyPermutation));
        let s1 = Permutation::simple_reflection(1, 4).unwrap();
        let s3 = Permutation::simple_reflection(3, 4).unwrap();
        assert_eq!(&s1 * &s3, perm(&[2, 1, 4, 3]));
    }

    #[test]
    fn words() {
        assert!(Word::new(3, vec![]).unwrap().to_permutation().is_identity());
        assert_eq!(Word::new(4, vec![2, 1, 3, 2]).unwrap().to_permutation(), perm(&[3, 4, 1, 2]));
        assert!(Word::new(2, vec![1, 1]).unwrap().to_permutation().is_identity());
        assert!(matches!(Word::new(3, vec![1, 3]), Err(Error::LetterOutOfRange { position: 2, .. })));
        // left factor first: s1 * s2 sends 1 -> 2 -> 3
        assert_eq!(Word::new(3, vec![1, 2]).unwrap().to_permutation(), perm(&[3, 1, 2]));
    }

    #[test]
    fn reduced_words() {
        assert!(Permutation::identity(4).reduced_word().is_empty());
        let w = perm(&[2, 1, 4, 3]).reduced_word();
        assert_eq!(w.letters(), &[3, 1]);
        let sigma = perm(&[3, 4, 1, 2]);
        let w = sigma.reduced_word();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_permutation(), sigma);
    }

    #[test]
    fn full_commutativity() {
        assert!(Permutation::identity(5).is_fully_commutative());
        assert!(!perm(&[3, 2, 1]).is_fully_commutative());
        assert!(perm(&[3, 4, 1, 2]).is_fully_commutative());
        assert!(!perm(&[4, 1, 3, 2]).is_fully_commutative());
        assert!(perm(&[2, 4, 1, 3]).is_fully_commutative());
    }

    #[test]
    fn robinson_schensted() {
        let (p, q) = Permutation::identity(3).rs_tableaux();
        assert_eq!(p.rows, vec![vec![1, 2, 3]]);
        assert_eq!(p, q);
        let (p, q) = perm(&[2, 1, 4, 3]).rs_tableaux();
        assert_eq!(p.shape(), vec![2, 2]);
        assert_eq!(p, q);
        let (p, q) = perm(&[3, 1, 2]).rs_tableaux();
        assert_eq!(p.rows, vec![vec![1, 2], vec![3]]);
        assert_eq!(q.rows, vec![vec![1, 3], vec![2]]);
        assert!(p.is_standard() && q.is_standard());
    }

    #[test]
    fn a_values() {
        assert_eq!(Permutation::identity(4).a_value(), Ok(0));
        assert_eq!(Permutation::simple_reflection(2, 4).unwrap().a_value(), Ok(1));
        assert_eq!(perm(&[3, 4, 1, 2]).a_value(), Ok(2));
        assert!(matches!(perm(&[3, 2, 1]).a_value(), Err(Error::NotFullyCommutative(_))));
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_fc(3, false).len(), 5);
        assert_eq!(enumerate_fc(4, true).len(), 6);
        assert_eq!(enumerate_fc(1, false), vec![Permutation::identity(1)]);
        for n in 1..=7 {
            assert_eq!(enumerate_fc(n, false), enumerate_fc_by_filter(n, false));
            assert_eq!(enumerate_fc(n, true), enumerate_fc_by_filter(n, true));
        }
        assert_eq!(Permutations::new(4).count(), 24);
    }

    #[test]
    fn json_shape() {
        let p = perm(&[2, 1, 4, 3]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,4,3]");
        assert_eq!(serde_json::from_str::<Permutation>("[2,1,4,3]").unwrap(), p);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
        let w = Word::new(4, vec![1, 3]).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "[1,3]");
    }
}
