//! Graded free resolutions, minimalization, Betti tables and depth.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::module::minimal_syzygies;
use crate::groebner::{krull_dimension, saturate_irrelevant, IdealBasis};
use crate::matrix::GradedMatrix;
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, Ring};

/// Kernel generators of `m` as the columns of a graded matrix (minimal, by degree).
pub fn module_syzygies(m: &GradedMatrix) -> Result<GradedMatrix> {
    module_syzygies_in(m, &MonomialOrder::grevlex())
}

pub fn module_syzygies_in(m: &GradedMatrix, order: &MonomialOrder) -> Result<GradedMatrix> {
    let ring = m.ring();
    let syz = minimal_syzygies(ring, &m.columns(), m.row_twists(), m.col_twists(), order);
    let col_twists: Vec<i64> = syz.iter().map(|s| s.1).collect();
    let entries: Vec<Vec<Polynomial>> =
        (0..m.cols()).map(|i| syz.iter().map(|(c, _)| c[i].clone()).collect()).collect();
    let out = GradedMatrix::new(ring, entries, m.col_twists().to_vec(), col_twists)?;
    if !m.mul(&out)?.is_zero() {
        return Err(Error::Inconsistent("syzygy matrix does not annihilate its source".into()));
    }
    Ok(out)
}

/// A chain `F_0 ← F_1 ← … ← F_L` given by its differentials `∂_1, …, ∂_L`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Arc<Ring>,
    f0: Vec<i64>,
    maps: Vec<GradedMatrix>,
    minimal: bool,
}

impl FreeResolution {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Twists of `F_i`.
    pub fn twists(&self, i: usize) -> &[i64] {
        if i == 0 {
            &self.f0
        } else {
            self.maps[i - 1].col_twists()
        }
    }

    /// `∂_k ∘ ∂_{k+1} = 0` and adjacent twists agree.
    pub fn is_complex(&self) -> bool {
        if let Some(first) = self.maps.first() {
            if first.row_twists() != self.f0.as_slice() {
                return false;
            }
        }
        self.maps.windows(2).all(|w| {
            w[0].col_twists() == w[1].row_twists() && w[0].mul(&w[1]).map(|p| p.is_zero()).unwrap_or(false)
        })
    }

    pub fn has_unit_entries(&self) -> bool {
        self.maps.iter().any(|m| m.has_unit_entry())
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for i in 0..=self.maps.len() {
            for &j in self.twists(i) {
                *t.entries.entry((i, j)).or_insert(0) += 1;
            }
        }
        t.entries.retain(|_, v| *v > 0);
        t
    }
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<BettiEntry>", from = "Vec<BettiEntry>")]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub rank: u64,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, i64, u64)>) -> Self {
        let mut t = BettiTable::default();
        for (i, j, r) in entries {
            if r > 0 {
                *t.entries.entry((i, j)).or_insert(0) += r;
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total rank of `F_i`.
    pub fn rank(&self, i: usize) -> u64 {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, v)| v).sum()
    }

    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn ranks(&self) -> Vec<u64> {
        if self.entries.is_empty() {
            return Vec::new();
        }
        (0..=self.length()).map(|i| self.rank(i)).collect()
    }

    /// Sorted internal degrees of `F_i`, with multiplicity.
    pub fn twists(&self, i: usize) -> Vec<i64> {
        let mut out = Vec::new();
        for ((k, j), r) in &self.entries {
            if *k == i {
                out.extend(std::iter::repeat(*j).take(*r as usize));
            }
        }
        out
    }

    pub fn alternating_rank_sum(&self) -> i64 {
        self.ranks().iter().enumerate().map(|(i, r)| if i % 2 == 0 { *r as i64 } else { -(*r as i64) }).sum()
    }

    pub fn triples(&self) -> Vec<BettiEntry> {
        self.entries.iter().map(|(&(i, j), &rank)| BettiEntry { i, j, rank }).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl From<BettiTable> for Vec<BettiEntry> {
    fn from(t: BettiTable) -> Self {
        t.triples()
    }
}

impl From<Vec<BettiEntry>> for BettiTable {
    fn from(v: Vec<BettiEntry>) -> Self {
        BettiTable::from_entries(v.into_iter().map(|e| (e.i, e.j, e.rank)))
    }
}

impl fmt::Display for BettiTable {
    /// Macaulay-style staircase: row `r`, column `i` holds `β_{i, i + r}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(zero module)");
        }
        let len = self.length();
        let rows: Vec<i64> = self.entries.keys().map(|(i, j)| j - *i as i64).collect();
        let (lo, hi) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
        let width = 6;
        write!(f, "{:>6}", "")?;
        for i in 0..=len {
            write!(f, "{i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>6}", "total:")?;
        for i in 0..=len {
            write!(f, "{:>width$}", self.rank(i))?;
        }
        writeln!(f)?;
        for r in lo..=hi {
            write!(f, "{:>6}", format!("{r}:"))?;
            for i in 0..=len {
                let v = self.get(i, i as i64 + r);
                if v == 0 {
                    write!(f, "{:>width$}", ".")?;
                } else {
                    write!(f, "{v:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Resolution of `R/I` by iterated minimal syzygies; `∂_1` keeps the given generators.
pub fn free_resolution(ideal: &IdealBasis) -> Result<FreeResolution> {
    free_resolution_in(ideal, &MonomialOrder::grevlex())
}

pub fn free_resolution_in(ideal: &IdealBasis, order: &MonomialOrder) -> Result<FreeResolution> {
    ideal.require_homogeneous()?;
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut maps = Vec::new();
    if !ideal.is_empty() {
        let mut cur = GradedMatrix::row(ring, ideal.gens())?;
        loop {
            let next = module_syzygies_in(&cur, order)?;
            maps.push(cur);
            if next.cols() == 0 {
                break;
            }
            if maps.len() > n + 1 {
                return Err(Error::Inconsistent("resolution longer than the number of variables".into()));
            }
            cur = next;
        }
    }
    Ok(FreeResolution { ring: ring.clone(), f0: vec![0], maps, minimal: false })
}

/// Pivots away unit entries (lowest degree first) until the resolution is minimal.
pub fn minimalize(res: &FreeResolution) -> Result<(FreeResolution, BettiTable)> {
    let ring = res.ring.clone();
    let mut f0 = res.f0.clone();
    let mut maps: Vec<GradedMatrix> = res.maps.clone();
    loop {
        let mut best: Option<(i64, usize, usize, usize)> = None;
        for (k, m) in maps.iter().enumerate() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if m.entry(i, j).constant_value().is_some() {
                        let deg = m.col_twists()[j];
                        if best.map_or(true, |b| deg < b.0) {
                            best = Some((deg, k, i, j));
                        }
                    }
                }
            }
        }
        let Some((_, k, i, j)) = best else { break };
        let d = &maps[k];
        let u_inv = d.entry(i, j).constant_value().unwrap().inv();
        let rows: Vec<usize> = (0..d.rows()).filter(|&a| a != i).collect();
        let cols: Vec<usize> = (0..d.cols()).filter(|&b| b != j).collect();
        let entries: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|&a| {
                cols.iter()
                    .map(|&b| {
                        let corr = (d.entry(a, j) * d.entry(i, b)).scale(&u_inv);
                        d.entry(a, b) - &corr
                    })
                    .collect()
            })
            .collect();
        let new_d = GradedMatrix::new(
            &ring,
            entries,
            rows.iter().map(|&a| d.row_twists()[a]).collect(),
            cols.iter().map(|&b| d.col_twists()[b]).collect(),
        )?;
        if k > 0 {
            let prev = &maps[k - 1];
            let keep: Vec<usize> = (0..prev.cols()).filter(|&c| c != i).collect();
            maps[k - 1] = prev.submatrix(&(0..prev.rows()).collect::<Vec<_>>(), &keep);
        } else {
            f0.remove(i);
        }
        if k + 1 < maps.len() {
            let next = &maps[k + 1];
            let keep: Vec<usize> = (0..next.rows()).filter(|&r| r != j).collect();
            maps[k + 1] = next.submatrix(&keep, &(0..next.cols()).collect::<Vec<_>>());
        }
        maps[k] = new_d;
    }
    while maps.last().is_some_and(|m| m.cols() == 0) {
        maps.pop();
    }
    let out = FreeResolution { ring, f0, maps, minimal: true };
    let betti = out.betti();
    Ok((out, betti))
}

/// Minimal graded free resolution of `R/I`.
pub fn minimal_resolution(ideal: &IdealBasis) -> Result<(FreeResolution, BettiTable)> {
    minimalize(&free_resolution(ideal)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologicalProfile {
    pub pd: usize,
    pub depth: usize,
    pub betti: BettiTable,
    /// `I = I^sat`.
    pub saturated: bool,
}

/// Projective dimension and depth of `R/I`; depth 0 is cross-checked against saturation.
pub fn homological_profile(ideal: &IdealBasis) -> Result<HomologicalProfile> {
    ideal.require_homogeneous()?;
    let n = ideal.ring().nvars();
    if krull_dimension(ideal)?.dim < 0 {
        return Err(Error::hypothesis("R/I is zero for the unit ideal"));
    }
    let (res, betti) = minimal_resolution(ideal)?;
    let pd = res.length();
    if pd > n {
        return Err(Error::Inconsistent(format!("projective dimension {pd} exceeds {n}")));
    }
    let depth = n - pd;
    let sat = saturate_irrelevant(ideal)?;
    let saturated = sat.same_ideal(ideal)?;
    if (depth == 0) == saturated {
        return Err(Error::Inconsistent(format!(
            "depth {depth} from the resolution disagrees with saturation (I = I^sat: {saturated})"
        )));
    }
    Ok(HomologicalProfile { pd, depth, betti, saturated })
}

/// `indeg Syz(I)` minus the common generator degree.
pub fn indeg_syzygies(ideal: &IdealBasis) -> Result<i64> {
    ideal.require_homogeneous()?;
    let degs = ideal.degrees();
    let Some(&d) = degs.first() else {
        return Err(Error::hypothesis("zero syzygy module: no generators"));
    };
    if degs.iter().any(|&e| e != d) {
        return Err(Error::hypothesis("generators are not all of the same degree"));
    }
    let row = GradedMatrix::row(ideal.ring(), ideal.gens())?;
    let syz = module_syzygies(&row)?;
    syz.col_twists()
        .iter()
        .min()
        .map(|m| m - d as i64)
        .ok_or_else(|| Error::hypothesis("zero syzygy module"))
}

/// Hilbert–Burch: the minimal generators equal the signed maximal minors of the
/// syzygy matrix, up to one common nonzero scalar.
pub fn hilbert_burch_verify(ideal: &IdealBasis) -> Result<bool> {
    ideal.require_homogeneous()?;
    let dim = krull_dimension(ideal)?;
    if dim.codim != 2 {
        return Err(Error::hypothesis(format!("codimension is {}, not 2", dim.codim)));
    }
    let (res, _) = minimal_resolution(ideal)?;
    if res.length() != 2 {
        return Err(Error::hypothesis(format!("projective dimension is {}, not 2", res.length())));
    }
    let gens = res.maps()[0].entries()[0].clone();
    let minors = res.maps()[1].signed_maximal_minors()?;
    Ok(proportional(&gens, &minors))
}

/// `a = c·b` for a single nonzero scalar `c`.
pub fn proportional(a: &[Polynomial], b: &[Polynomial]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut scale = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return false,
        }
        let c = &x.lead().unwrap().1 / &y.lead().unwrap().1;
        if y.scale(&c) != *x {
            return false;
        }
        match &scale {
            None => scale = Some(c),
            Some(s) if *s == c => {}
            _ => return false,
        }
    }
    scale.is_some()
}
