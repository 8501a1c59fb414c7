//! Exhaustive structural checks shared by the property tests and the
//! acceptance target. Each returns the number of cases checked.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use tlkostant::algebra::{calibrate_on, cell_side, cells, duflo_involution, CellKind};
use tlkostant::kostant::{check_witness, is_kostant, negative_witness};
use tlkostant::perm::{enumerate_fc, Permutation, Word};
use tlkostant::verify::witness_structure;
use tlkostant::TLDiagram;

pub type Check = Result<usize, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn compose(a: &TLDiagram, b: &TLDiagram) -> (TLDiagram, u32) {
    a.compose(b).expect("equal ranks")
}

pub fn tl_relations(n_max: usize) -> Check {
    let mut cases = 0;
    for n in 2..=n_max {
        let e = |i: usize| TLDiagram::generator(i, n).unwrap();
        let one = TLDiagram::identity(n);
        for i in 1..n {
            ensure(compose(&e(i), &e(i)) == (e(i), 1), || format!("e{i}^2 != delta e{i} in rank {n}"))?;
            ensure(compose(&one, &e(i)) == (e(i), 0), || format!("identity fails on e{i}"))?;
            cases += 2;
            for j in 1..n {
                let (ij, l1) = compose(&e(i), &e(j));
                if i.abs_diff(j) == 1 {
                    let (iji, l2) = compose(&ij, &e(i));
                    ensure(iji == e(i) && l1 + l2 == 0, || format!("e{i} e{j} e{i} != e{i} in rank {n}"))?;
                } else if i.abs_diff(j) > 1 {
                    ensure(compose(&e(j), &e(i)) == (ij, l1), || format!("e{i}, e{j} do not commute"))?;
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

/// Every reduced word of `w`, grouped by its last letter.
pub fn reduced_words(w: &Permutation, memo: &mut HashMap<Permutation, Vec<Vec<u32>>>) -> Vec<Vec<u32>> {
    if let Some(words) = memo.get(w) {
        return words.clone();
    }
    let n = w.n();
    let mut out = Vec::new();
    if w.is_identity() {
        out.push(Vec::new());
    }
    for i in 1..n {
        let shorter = w * &Permutation::simple_reflection(i, n).unwrap();
        if shorter.inversions() < w.inversions() {
            for mut word in reduced_words(&shorter, memo) {
                word.push(i as u32);
                out.push(word);
            }
        }
    }
    memo.insert(w.clone(), out.clone());
    out
}

pub fn reduced_word_independence(n_max: usize) -> Check {
    let mut cases = 0;
    for n in 1..=n_max {
        let mut memo = HashMap::new();
        for w in enumerate_fc(n, false) {
            let expected = TLDiagram::of_fc(&w).map_err(|e| e.to_string())?;
            let words = reduced_words(&w, &mut memo);
            ensure(!words.is_empty(), || format!("{w} has no reduced word"))?;
            for letters in words {
                let word = Word::new(n, letters.clone()).unwrap();
                ensure(word.to_permutation() == w, || format!("{letters:?} is not a word for {w}"))?;
                let d = TLDiagram::of_word(&word).map_err(|e| format!("{w} {letters:?}: {e}"))?;
                ensure(d == expected, || format!("e_w depends on the word {letters:?} for {w}"))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

pub fn flip_inverse(n_max: usize) -> Check {
    let mut cases = 0;
    for n in 1..=n_max {
        for w in enumerate_fc(n, false) {
            let d = TLDiagram::of_fc(&w).unwrap();
            let di = TLDiagram::of_fc(&w.inverse()).unwrap();
            ensure(di == d.flip(), || format!("e of the inverse of {w} is not the flip"))?;
            ensure(d.is_symmetric() == w.is_involution(), || format!("symmetry mismatch for {w}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

pub fn arc_count_a_value(n_max: usize) -> Check {
    let mut cases = 0;
    for n in 1..=n_max {
        for w in enumerate_fc(n, false) {
            let d = TLDiagram::of_fc(&w).unwrap();
            let shape = w.rs_shape();
            let second = shape.get(1).copied().unwrap_or(0);
            let a = w.a_value().unwrap();
            ensure(d.top_arcs().len() == a && d.bottom_arcs().len() == a && second == a, || {
                format!("{w}: arcs {} / {}, a-value {a}, shape {shape:?}", d.top_arcs().len(), d.bottom_arcs().len())
            })?;
            ensure(d.to_fc() == w, || format!("{w} does not round-trip through its diagram"))?;
            ensure(d.length() == w.inversions(), || format!("diagram length of {w} differs from its length"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn partition_by<K: Ord>(items: &[Permutation], key: impl Fn(&Permutation) -> K) -> BTreeSet<BTreeSet<Permutation>> {
    let mut groups: std::collections::BTreeMap<K, BTreeSet<Permutation>> = Default::default();
    for w in items {
        groups.entry(key(w)).or_default().insert(w.clone());
    }
    groups.into_values().collect()
}

fn as_partition(groups: Vec<Vec<Permutation>>) -> BTreeSet<BTreeSet<Permutation>> {
    groups.into_iter().map(|g| g.into_iter().collect()).collect()
}

pub fn cell_calibration(n_max: usize) -> Check {
    let mut cases = 0;
    for n in 2..=n_max {
        ensure(calibrate_on(n) == Some(cell_side()), || format!("calibration differs in rank {n}"))?;
        let fc = enumerate_fc(n, false);
        let left = as_partition(cells(n, CellKind::Left));
        ensure(left == partition_by(&fc, |w| w.rs_tableaux().1), || format!("left cells differ from Q classes in rank {n}"))?;
        let right = as_partition(cells(n, CellKind::Right));
        ensure(right == partition_by(&fc, |w| w.rs_tableaux().0), || format!("right cells differ from P classes in rank {n}"))?;
        let two = as_partition(cells(n, CellKind::TwoSided));
        ensure(two == partition_by(&fc, |w| w.rs_shape()), || format!("two-sided cells differ from shapes in rank {n}"))?;
        for cell in cells(n, CellKind::Left) {
            let d = duflo_involution(&cell).map_err(|e| e.to_string())?;
            let verdicts: BTreeSet<bool> = cell.iter().map(|w| is_kostant(w).unwrap().positive).collect();
            ensure(verdicts.len() == 1, || format!("verdict not constant on the left cell of {d}"))?;
            cases += cell.len();
        }
    }
    Ok(cases)
}

pub fn witness_postconditions(n_max: usize) -> Check {
    let mut cases = 0;
    for n in 1..=n_max {
        for d in enumerate_fc(n, true) {
            if is_kostant(&d).unwrap().positive {
                continue;
            }
            let (x, y) = negative_witness(&d).map_err(|e| format!("{d}: {e}"))?;
            check_witness(&d, &x, &y).map_err(|e| format!("{d}: {e}"))?;
            witness_structure(&x, &y).map_err(|e| format!("{d}: {e}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}
