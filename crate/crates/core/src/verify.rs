//! Brute-force re-derivation of the classification through the
//! distinguishability oracle: for an involution `d`, every two distinct
//! `x`, `y` acting nontrivially on `L_d` must be separated by the
//! multiplicity of `e_d` in `e_v e_u e_x` versus `e_v e_u e_y` at `q = 1`.
//!
//! `(u, v)` range over fully commutative elements only.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{cell_side, theta_nonzero_diagrams, TLElement};
use crate::diagram::TLDiagram;
use crate::error::{Error, Result};
use crate::kostant::{check_witness, is_kostant, negative_witness};
use crate::perm::{enumerate_fc, Permutation};

/// Coefficient of `e_d` in `e_v e_u e_x` at `q = 1`, by exact algebra
/// multiplication.
pub fn multiplicity_at_one(d: &Permutation, v: &Permutation, u: &Permutation, x: &Permutation) -> Result<u64> {
    let ed = TLDiagram::of_fc(d)?;
    let product = TLElement::of_fc(v)?.multiply(&TLElement::of_fc(u)?)?.multiply(&TLElement::of_fc(x)?)?;
    let value = product.coefficient_of(&ed).evaluate_at_one();
    Ok(value.to_u64().expect("multiplicities are small and non-negative"))
}

/// All fully commutative elements of `S_n` with their diagrams and the full
/// table of basis products `e_i e_j = delta^loops e_k`.
#[derive(Clone, Debug)]
pub struct FcTable {
    n: usize,
    elements: Vec<Permutation>,
    diagrams: Vec<TLDiagram>,
    by_perm: HashMap<Permutation, usize>,
    inverse: Vec<usize>,
    product: Vec<(u32, u32)>,
}

impl FcTable {
    pub fn new(n: usize) -> Self {
        let elements = enumerate_fc(n, false);
        let diagrams: Vec<TLDiagram> = elements.iter().map(|w| TLDiagram::of_fc(w).unwrap()).collect();
        let by_diagram: HashMap<&TLDiagram, usize> = diagrams.iter().enumerate().map(|(k, d)| (d, k)).collect();
        let by_perm: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let inverse = elements.iter().map(|w| by_perm[&w.inverse()]).collect();
        let product = diagrams
            .par_iter()
            .flat_map_iter(|a| {
                diagrams.iter().map(|b| {
                    let (c, loops) = a.compose(b).unwrap();
                    (by_diagram[&c] as u32, loops)
                })
            })
            .collect();
        FcTable { n, elements, diagrams, by_perm, inverse, product }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn diagram(&self, i: usize) -> &TLDiagram {
        &self.diagrams[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn index_of(&self, w: &Permutation) -> Result<usize> {
        if w.n() != self.n {
            return Err(Error::RankMismatch { left: w.n(), right: self.n });
        }
        w.require_fully_commutative()?;
        Ok(self.by_perm[w])
    }

    /// `(k, loops)` with `e_i e_j = delta^loops e_k`.
    pub fn product(&self, i: usize, j: usize) -> (usize, u32) {
        let (k, loops) = self.product[i * self.len() + j];
        (k as usize, loops)
    }

    /// Table version of [`multiplicity_at_one`] on indices.
    pub fn multiplicity(&self, d: usize, v: usize, u: usize, x: usize) -> u64 {
        let (vu, l1) = self.product(v, u);
        let (k, l2) = self.product(vu, x);
        if k == d {
            1u64 << (l1 + l2)
        } else {
            0
        }
    }

    pub fn theta_nonzero(&self, x: usize, d: usize) -> bool {
        theta_nonzero_diagrams(&self.diagrams[x], &self.diagrams[d])
    }

    /// Indices `x` with `theta_x L_d != 0`.
    pub fn nonvanishing(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.theta_nonzero(x, d)).collect()
    }

    pub fn a_value(&self, i: usize) -> usize {
        self.diagrams[i].arc_count()
    }
}

/// Where [`find_distinguisher`] looks for `(u, v)`.
#[derive(Clone, Debug, Default)]
pub enum SearchOrder {
    /// `(x^-1, d)`, then `(y^-1, d)`, then every fully commutative pair with
    /// `u` in the outer loop.
    #[default]
    Default,
    Explicit(Vec<(Permutation, Permutation)>),
}

fn default_order(table: &FcTable, d: usize, x: usize, y: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    let m = table.len();
    [(table.inverse(x), d), (table.inverse(y), d)]
        .into_iter()
        .chain((0..m).flat_map(move |u| (0..m).map(move |v| (u, v))))
}

fn first_difference(
    table: &FcTable,
    d: usize,
    x: usize,
    y: usize,
    mut order: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    order.find(|&(u, v)| table.multiplicity(d, v, u, x) != table.multiplicity(d, v, u, y))
}

/// First `(u, v)` in the search order separating `x` from `y` on `L_d`.
pub fn find_distinguisher(
    table: &FcTable,
    d: &Permutation,
    x: &Permutation,
    y: &Permutation,
    search: &SearchOrder,
) -> Result<Option<(Permutation, Permutation)>> {
    let (di, xi, yi) = (table.index_of(d)?, table.index_of(x)?, table.index_of(y)?);
    if xi == yi {
        return Err(Error::Precondition("x and y must differ".into()));
    }
    if !table.theta_nonzero(xi, di) || !table.theta_nonzero(yi, di) {
        return Err(Error::Precondition(format!("theta vanishes on L_{d} for {x} or {y}")));
    }
    let found = match search {
        SearchOrder::Default => first_difference(table, di, xi, yi, default_order(table, di, xi, yi)),
        SearchOrder::Explicit(pairs) => {
            let indices = pairs
                .iter()
                .map(|(u, v)| Ok((table.index_of(u)?, table.index_of(v)?)))
                .collect::<Result<Vec<_>>>()?;
            first_difference(table, di, xi, yi, indices.into_iter())
        }
    };
    Ok(found.map(|(u, v)| (table.element(u).clone(), table.element(v).clone())))
}

/// `multiplicity(d, d, x^-1, x) == 2^(2a)` with `a = a_value(x)`.
pub fn check_lemma_multi(d: &Permutation, x: &Permutation) -> Result<bool> {
    d.require_fully_commutative()?;
    if !d.is_involution() {
        return Err(Error::NotAnInvolution(d.to_string()));
    }
    let (ed, ex) = (TLDiagram::of_fc(d)?, TLDiagram::of_fc(x)?);
    if ed.n() != ex.n() {
        return Err(Error::RankMismatch { left: ed.n(), right: ex.n() });
    }
    if !theta_nonzero_diagrams(&ex, &ed) {
        return Err(Error::Precondition(format!("theta_{x} vanishes on L_{d}")));
    }
    let a = x.a_value()?;
    Ok(multiplicity_at_one(d, d, &x.inverse(), x)? == 1u64 << (2 * a))
}

/// A triple `(d, x, y)` violating the bound
/// `multiplicity(d, d, x^-1, y) <= 2^(a+b) < 2^(2a)` for `a(x) = a > b = a(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub d: Permutation,
    pub x: Permutation,
    pub y: Permutation,
    pub multiplicity: u64,
    pub bound: u64,
}

/// Checks the bound over all involutions and all admissible `x`, `y`.
pub fn case_one_bound_violations(table: &FcTable) -> Vec<BoundViolation> {
    let involutions: Vec<usize> = (0..table.len()).filter(|&i| table.element(i).is_involution()).collect();
    involutions
        .par_iter()
        .flat_map_iter(|&d| {
            let s = table.nonvanishing(d);
            let mut out = Vec::new();
            for &x in &s {
                for &y in &s {
                    let (a, b) = (table.a_value(x), table.a_value(y));
                    if a <= b {
                        continue;
                    }
                    let m = table.multiplicity(d, d, table.inverse(x), y);
                    let bound = 1u64 << (a + b);
                    if m > bound || bound >= 1u64 << (2 * a) {
                        out.push(BoundViolation {
                            d: table.element(d).clone(),
                            x: table.element(x).clone(),
                            y: table.element(y).clone(),
                            multiplicity: m,
                            bound,
                        });
                    }
                }
            }
            out
        })
        .collect()
}

/// Structure of the witness product: `e_{x^-1} e_y` keeps the
/// calibrated-side arcs of `e_y` and closes exactly `a_value(x)` loops.
pub fn witness_structure(x: &Permutation, y: &Permutation) -> std::result::Result<(), String> {
    let diagram = |w: &Permutation| TLDiagram::of_fc(w).map_err(|e| e.to_string());
    let (exi, ey) = (diagram(&x.inverse())?, diagram(y)?);
    let (product, loops) = exi.compose(&ey).map_err(|e| e.to_string())?;
    let side = cell_side();
    if side.arcs(&product) != side.arcs(&ey) {
        return Err(format!("arcs of e_x^-1 e_y differ from those of e_y: {:?} vs {:?}", side.arcs(&product), side.arcs(&ey)));
    }
    let a = x.a_value().map_err(|e| e.to_string())?;
    if loops as usize != a {
        return Err(format!("{loops} loops close, expected {a}"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    /// Every admissible pair was searched over all `(u, v)`.
    Full,
    /// Negative `d` above the scan limit: only the witness postconditions
    /// were checked.
    WitnessPostconditionsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distinguished {
    pub x: Permutation,
    pub y: Permutation,
    pub u: Permutation,
    pub v: Permutation,
}

/// Row `(u, v, m_x, m_y)` of a multiplicity table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRow {
    pub u: Permutation,
    pub v: Permutation,
    pub mx: u64,
    pub my: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityDump {
    pub x: Permutation,
    pub y: Permutation,
    pub rows: Vec<MultiplicityRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub reasons: Vec<String>,
    pub dumps: Vec<MultiplicityDump>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishReport {
    pub d: Permutation,
    /// Classifier verdict.
    pub positive: bool,
    pub scan: ScanMode,
    pub pairs_checked: usize,
    /// Pairs with no distinguisher.
    pub failures: Vec<(Permutation, Permutation)>,
    pub witnesses: Vec<Distinguished>,
    /// Oracle verdict; absent when the scan was skipped.
    pub oracle_distinguishable: Option<bool>,
    pub negative_witness: Option<(Permutation, Permutation)>,
    pub discrepancy: Option<Discrepancy>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub n: usize,
    pub full_scan_limit: usize,
    pub involutions: usize,
    pub positive: usize,
    pub negative: usize,
    pub pairs_checked: usize,
    pub full_scans: usize,
    pub discrepancies: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub summary: VerificationSummary,
    pub reports: Vec<DistinguishReport>,
}

const DUMP_LIMIT: usize = 3;

fn dump(table: &FcTable, d: usize, x: usize, y: usize) -> MultiplicityDump {
    let m = table.len();
    let rows = (0..m)
        .flat_map(|u| (0..m).map(move |v| (u, v)))
        .map(|(u, v)| MultiplicityRow {
            u: table.element(u).clone(),
            v: table.element(v).clone(),
            mx: table.multiplicity(d, v, u, x),
            my: table.multiplicity(d, v, u, y),
        })
        .collect();
    MultiplicityDump { x: table.element(x).clone(), y: table.element(y).clone(), rows }
}

fn report_for(table: &FcTable, d: usize, full_scan_limit: usize) -> DistinguishReport {
    let dp = table.element(d).clone();
    let positive = is_kostant(&dp).expect("involutions in the table are fully commutative").positive;
    let full = positive || table.n() <= full_scan_limit;
    let mut reasons = Vec::new();
    let mut failures = Vec::new();
    let mut witnesses = Vec::new();
    let mut pairs_checked = 0;

    if full {
        let s = table.nonvanishing(d);
        for (k, &x) in s.iter().enumerate() {
            for &y in &s[k + 1..] {
                pairs_checked += 1;
                match first_difference(table, d, x, y, default_order(table, d, x, y)) {
                    Some((u, v)) => witnesses.push(Distinguished {
                        x: table.element(x).clone(),
                        y: table.element(y).clone(),
                        u: table.element(u).clone(),
                        v: table.element(v).clone(),
                    }),
                    None => failures.push((x, y)),
                }
            }
        }
    }
    let oracle = full.then_some(failures.is_empty());
    if oracle == Some(!positive) {
        reasons.push(format!("oracle says distinguishable = {}, classifier says positive = {positive}", !positive));
    }

    let mut witness_pair = None;
    let mut dumps = Vec::new();
    if !positive {
        match negative_witness(&dp) {
            Ok((x, y)) => {
                if let Err(e) = check_witness(&dp, &x, &y) {
                    reasons.push(format!("witness postcondition: {e}"));
                }
                if let Err(e) = witness_structure(&x, &y) {
                    reasons.push(format!("witness structure: {e}"));
                }
                if full {
                    let (xi, yi) = (table.index_of(&x).unwrap(), table.index_of(&y).unwrap());
                    let key = (xi.min(yi), xi.max(yi));
                    if !failures.contains(&key) {
                        reasons.push("witness pair admits a distinguisher".into());
                        dumps.push(dump(table, d, key.0, key.1));
                    }
                }
                witness_pair = Some((x, y));
            }
            Err(e) => reasons.push(format!("no witness: {e}")),
        }
    } else {
        dumps.extend(failures.iter().take(DUMP_LIMIT).map(|&(x, y)| dump(table, d, x, y)));
    }

    DistinguishReport {
        d: dp,
        positive,
        scan: if full { ScanMode::Full } else { ScanMode::WitnessPostconditionsOnly },
        pairs_checked,
        failures: failures.iter().map(|&(x, y)| (table.element(x).clone(), table.element(y).clone())).collect(),
        witnesses,
        oracle_distinguishable: oracle,
        negative_witness: witness_pair,
        discrepancy: (!reasons.is_empty()).then_some(Discrepancy { reasons, dumps }),
    }
}

/// Runs the oracle against the classifier for every fully commutative
/// involution of `S_n`. Reports are in enumeration order regardless of the
/// rayon pool size.
pub fn verify_classification(n: usize, full_scan_limit: usize) -> Result<Verification> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("verification needs n >= 2, got {n}")));
    }
    let table = FcTable::new(n);
    verify_with_table(&table, full_scan_limit)
}

pub fn verify_with_table(table: &FcTable, full_scan_limit: usize) -> Result<Verification> {
    let involutions: Vec<usize> = (0..table.len()).filter(|&i| table.element(i).is_involution()).collect();
    let reports: Vec<DistinguishReport> =
        involutions.par_iter().map(|&d| report_for(table, d, full_scan_limit)).collect();
    let positive = reports.iter().filter(|r| r.positive).count();
    let summary = VerificationSummary {
        n: table.n(),
        full_scan_limit,
        involutions: reports.len(),
        positive,
        negative: reports.len() - positive,
        pairs_checked: reports.iter().map(|r| r.pairs_checked).sum(),
        full_scans: reports.iter().filter(|r| r.scan == ScanMode::Full).count(),
        discrepancies: reports.iter().filter(|r| r.discrepancy.is_some()).count(),
    };
    Ok(Verification { summary, reports })
}
