//! Exhaustive search for regular Yang-Baxter operators and regular antipodes
//! over small prime fields, and star partners via linear solving.
//!
//! Candidates are indexed so that index order is entry-lexicographic order
//! (entry `(0,0)` is the most significant digit). The index range is split
//! into contiguous chunks, one per worker, and results are concatenated in
//! chunk order, so catalogs do not depend on the worker count.

use std::thread;

use crate::error::{Error, Result};
use crate::exact_linalg::{inner_inverses, reflexive_ginverse, FieldSpec, Matrix};
use crate::hopf::{verify_regular_antipode, AntipodePair, ObstructedBialgebra};
use crate::report::Report;
use crate::ybop::RegularYBOperator;

pub const DEFAULT_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constraints {
    /// `R` commutes with `e ⊗ e`.
    pub re: bool,
    /// Regular Yang-Baxter equation.
    pub ybr: bool,
    /// A star partner exists and is recorded.
    pub star_exists: bool,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints {
            re: true,
            ybr: true,
            star_exists: false,
        }
    }
}

impl Constraints {
    pub fn axioms(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.re {
            out.push("re".to_string());
        }
        if self.ybr {
            out.push("ybr".to_string());
        }
        if self.star_exists {
            out.extend(["rrr1".to_string(), "rrr2".to_string()]);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub field: FieldSpec,
    pub dim: usize,
    pub obstructor: Matrix,
    pub constraints: Constraints,
    pub cap: u64,
    /// `0` means one worker per available core.
    pub workers: usize,
    pub allow_over_cap: bool,
}

impl SearchSpec {
    pub fn new(obstructor: Matrix) -> Self {
        SearchSpec {
            field: obstructor.field(),
            dim: obstructor.rows(),
            obstructor,
            constraints: Constraints::default(),
            cap: DEFAULT_CAP,
            workers: 1,
            allow_over_cap: false,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    /// `(p, dim⁴)`.
    pub fn candidate_exponent(&self) -> Result<(u32, u32)> {
        let p = self.field.characteristic().ok_or(Error::NotFinite(self.field))?;
        Ok((p, (self.dim as u32).pow(4)))
    }

    /// `p^(dim⁴)`, `None` when it does not fit in 64 bits.
    pub fn candidate_count(&self) -> Result<Option<u64>> {
        let (p, k) = self.candidate_exponent()?;
        Ok(u64::from(p).checked_pow(k))
    }

    fn check(&self) -> Result<u64> {
        if self.obstructor.field() != self.field {
            return Err(Error::FieldMismatch(self.field, self.obstructor.field()));
        }
        if self.obstructor.shape() != (self.dim, self.dim) || self.dim == 0 {
            return Err(Error::Shape(format!(
                "obstructor has shape {:?}, expected {}x{}",
                self.obstructor.shape(),
                self.dim,
                self.dim
            )));
        }
        let (p, k) = self.candidate_exponent()?;
        let count = self.candidate_count()?;
        match count {
            Some(c) if c <= self.cap || self.allow_over_cap => Ok(c),
            _ => Err(Error::CapExceeded {
                what: "regular Yang-Baxter candidates".into(),
                candidates: count_text(p, k, count),
                cap: self.cap,
            }),
        }
    }
}

fn count_text(p: u32, k: u32, count: Option<u64>) -> String {
    match count {
        Some(c) => format!("{p}^{k} = {c}"),
        None => format!("{p}^{k}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogTarget {
    YbOperator,
    Antipode,
}

impl CatalogTarget {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogTarget::YbOperator => "yb_operator",
            CatalogTarget::Antipode => "antipode",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// 0-based level.
    pub level: usize,
    pub matrix: Matrix,
    /// Axioms re-verified outside the search kernel.
    pub verified: Vec<String>,
    pub star: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCatalog {
    pub target: CatalogTarget,
    pub field: FieldSpec,
    /// Obstructor per level.
    pub obstructors: Vec<Matrix>,
    pub search: Option<SearchEcho>,
    pub entries: Vec<CatalogEntry>,
    pub examined: u64,
}

/// The parts of a [`SearchSpec`] not already recorded in the catalog. The
/// worker count is deliberately absent so that catalogs compare equal across
/// worker counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchEcho {
    pub constraints: Constraints,
    pub cap: u64,
    pub allow_over_cap: bool,
}

impl SolutionCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn matrices(&self) -> impl Iterator<Item = &Matrix> {
        self.entries.iter().map(|e| &e.matrix)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.matrices().any(|x| x == m)
    }

    /// Re-runs the certified axioms of every entry through the ybop / hopf
    /// verifiers. For antipode catalogs `bialgebra` is required.
    pub fn recheck(&self, bialgebra: Option<&ObstructedBialgebra>) -> Result<Report> {
        let mut report = Report::new();
        for entry in &self.entries {
            let e = self
                .obstructors
                .get(entry.level)
                .ok_or_else(|| Error::Shape(format!("no obstructor for level {}", entry.level + 1)))?;
            let mut r = match self.target {
                CatalogTarget::YbOperator => {
                    let op = RegularYBOperator::new(
                        vec![entry.matrix.clone()],
                        entry.star.clone().map(|s| vec![s]),
                    );
                    op.verify(std::slice::from_ref(e))?
                }
                CatalogTarget::Antipode => {
                    let h = bialgebra.ok_or_else(|| Error::Missing("bialgebra for antipode catalog".into()))?;
                    let mut s = h.obstructors().to_vec();
                    s[entry.level] = entry.matrix.clone();
                    let full = verify_regular_antipode(h, &AntipodePair::new(s, None))?;
                    let mut level_only = Report::new();
                    level_only.checks = full
                        .checks
                        .into_iter()
                        .filter(|c| c.level == Some(entry.level + 1))
                        .collect();
                    level_only
                }
            };
            r.retain_axioms(&entry.verified);
            for c in &mut r.checks {
                c.level = Some(entry.level + 1);
            }
            report.extend(r);
        }
        Ok(report)
    }
}

/// Dense residue matrices for the search kernels.
mod kernel {
    pub fn mul(p: u64, a: &[u32], ar: usize, ac: usize, b: &[u32], bc: usize) -> Vec<u32> {
        let mut out = vec![0u64; ar * bc];
        for i in 0..ar {
            for k in 0..ac {
                let x = u64::from(a[i * ac + k]);
                if x == 0 {
                    continue;
                }
                let row = &b[k * bc..(k + 1) * bc];
                let acc = &mut out[i * bc..(i + 1) * bc];
                for (o, &y) in acc.iter_mut().zip(row) {
                    *o = (*o + x * u64::from(y)) % p;
                }
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    pub fn kron(p: u64, a: &[u32], ar: usize, ac: usize, b: &[u32], br: usize, bc: usize) -> Vec<u32> {
        let cols = ac * bc;
        let mut out = vec![0u32; ar * br * cols];
        for i in 0..ar {
            for j in 0..ac {
                let x = u64::from(a[i * ac + j]);
                if x == 0 {
                    continue;
                }
                for k in 0..br {
                    for l in 0..bc {
                        out[(i * br + k) * cols + j * bc + l] = ((x * u64::from(b[k * bc + l])) % p) as u32;
                    }
                }
            }
        }
        out
    }

    /// Writes the base-`p` digits of `index` into `digits`, most significant first.
    pub fn decode(p: u64, mut index: u64, digits: &mut [u32]) {
        for d in digits.iter_mut().rev() {
            *d = (index % p) as u32;
            index /= p;
        }
    }
}

fn residues(m: &Matrix) -> Result<Vec<u32>> {
    m.residues()
        .map(<[u32]>::to_vec)
        .ok_or(Error::NotFinite(m.field()))
}

fn worker_count(requested: usize) -> usize {
    if requested == 0 {
        thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        requested
    }
}

/// Runs `accept` over `[0, total)` in contiguous chunks and returns accepted
/// indices in increasing order.
fn scan<F>(total: u64, workers: usize, accept: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    let workers = (worker_count(workers) as u64).clamp(1, total.max(1));
    let chunk = total.div_ceil(workers);
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let accept = &accept;
                s.spawn(move || {
                    let start = w * chunk;
                    let end = (start + chunk).min(total);
                    (start..end).filter(|&i| accept(i)).collect::<Vec<u64>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker panicked"))
            .collect()
    })
}

struct YbeKernel {
    p: u64,
    d: usize,
    ee: Vec<u32>,
    e: Vec<u32>,
    constraints: Constraints,
}

impl YbeKernel {
    fn accepts(&self, r: &[u32]) -> bool {
        let (p, d) = (self.p, self.d);
        let dd = d * d;
        if self.constraints.re
            && kernel::mul(p, r, dd, dd, &self.ee, dd) != kernel::mul(p, &self.ee, dd, dd, r, dd)
        {
            return false;
        }
        if self.constraints.ybr {
            let er = kernel::kron(p, &self.e, d, d, r, dd, dd);
            let re = kernel::kron(p, r, dd, dd, &self.e, d, d);
            let n = dd * d;
            let three = |a: &[u32], b: &[u32]| {
                let ab = kernel::mul(p, a, n, n, b, n);
                kernel::mul(p, &ab, n, n, a, n)
            };
            if three(&er, &re) != three(&re, &er) {
                return false;
            }
        }
        true
    }
}

/// All `R` on `K^dim ⊗ K^dim` satisfying the enabled constraints, in
/// entry-lexicographic order.
pub fn search_regular_ybe(spec: &SearchSpec) -> Result<SolutionCatalog> {
    let total = spec.check()?;
    let p = u64::from(spec.field.characteristic().expect("checked finite"));
    let e = residues(&spec.obstructor)?;
    let kern = YbeKernel {
        p,
        d: spec.dim,
        ee: kernel::kron(p, &e, spec.dim, spec.dim, &e, spec.dim, spec.dim),
        e,
        constraints: spec.constraints,
    };
    let len = spec.dim.pow(4);
    let hits = scan(total, spec.workers, |i| {
        let mut r = vec![0u32; len];
        kernel::decode(p, i, &mut r);
        kern.accepts(&r)
    });
    let dd = spec.dim * spec.dim;
    let axioms = spec.constraints.axioms();
    let mut entries = Vec::with_capacity(hits.len());
    for i in hits {
        let mut r = vec![0u32; len];
        kernel::decode(p, i, &mut r);
        let matrix = Matrix::from_residues(p as u32, dd, dd, r)?;
        let star = spec.constraints.star_exists.then(|| reflexive_ginverse(&matrix));
        entries.push(CatalogEntry {
            level: 0,
            matrix,
            verified: axioms.clone(),
            star,
        });
    }
    let catalog = SolutionCatalog {
        target: CatalogTarget::YbOperator,
        field: spec.field,
        obstructors: vec![spec.obstructor.clone()],
        search: Some(SearchEcho {
            constraints: spec.constraints,
            cap: spec.cap,
            allow_over_cap: spec.allow_over_cap,
        }),
        entries,
        examined: total,
    };
    let report = catalog.recheck(None)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::Verification(format!("search result failed re-verification: {c}")));
    }
    Ok(catalog)
}

/// Solutions `X` of `R·X·R = R`, additionally `X·R·X = X` when `reflexive`.
/// Over `Q` the single deterministic reflexive inverse is returned.
pub fn find_star_partner(r: &Matrix, reflexive: bool, cap: u64) -> Result<Vec<Matrix>> {
    match r.field() {
        FieldSpec::Rationals => Ok(vec![reflexive_ginverse(r)]),
        FieldSpec::Prime(_) => inner_inverses(r, reflexive, cap),
    }
}

struct AntipodeKernel {
    p: u64,
    d: usize,
    m: Vec<u32>,
    delta: Vec<u32>,
    e: Vec<u32>,
}

impl AntipodeKernel {
    fn conv(&self, s: &[u32], t: &[u32]) -> Vec<u32> {
        let (p, d) = (self.p, self.d);
        let st = kernel::kron(p, s, d, d, t, d, d);
        let tmp = kernel::mul(p, &st, d * d, d * d, &self.delta, d);
        kernel::mul(p, &self.m, d, d * d, &tmp, d)
    }

    fn accepts(&self, s: &[u32]) -> bool {
        let ese = self.conv(&self.conv(&self.e, s), &self.e);
        if ese != self.e {
            return false;
        }
        self.conv(&self.conv(s, &self.e), s) == s
    }
}

/// Per level, every endomorphism `S` with `e⋆S⋆e = e` and `S⋆e⋆S = S`
/// (left-parenthesized).
pub fn search_regular_antipodes(h: &ObstructedBialgebra, cap: u64, workers: usize) -> Result<SolutionCatalog> {
    let p32 = h.field().characteristic().ok_or(Error::NotFinite(h.field()))?;
    let p = u64::from(p32);
    let mut entries = Vec::new();
    let mut examined = 0u64;
    for n in 0..h.levels() {
        let d = h.dim(n);
        let k = (d * d) as u32;
        let count = p.checked_pow(k);
        let total = match count {
            Some(c) if c <= cap => c,
            _ => {
                return Err(Error::CapExceeded {
                    what: format!("antipode candidates at level {}", n + 1),
                    candidates: count_text(p32, k, count),
                    cap,
                })
            }
        };
        let kern = AntipodeKernel {
            p,
            d,
            m: residues(&h.algebra.mults[n])?,
            delta: residues(&h.coalgebra.comults[n])?,
            e: residues(h.obstructor(n))?,
        };
        let hits = scan(total, workers, |i| {
            let mut s = vec![0u32; d * d];
            kernel::decode(p, i, &mut s);
            kern.accepts(&s)
        });
        for i in hits {
            let mut s = vec![0u32; d * d];
            kernel::decode(p, i, &mut s);
            entries.push(CatalogEntry {
                level: n,
                matrix: Matrix::from_residues(p32, d, d, s)?,
                verified: vec!["se2_obstructor".into(), "se2_antipode".into()],
                star: None,
            });
        }
        examined += total;
    }
    let catalog = SolutionCatalog {
        target: CatalogTarget::Antipode,
        field: h.field(),
        obstructors: h.obstructors().to_vec(),
        search: None,
        entries,
        examined,
    };
    let report = catalog.recheck(Some(h))?;
    if let Some(c) = report.first_failure() {
        return Err(Error::Verification(format!("search result failed re-verification: {c}")));
    }
    Ok(catalog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const GF2: FieldSpec = FieldSpec::Prime(2);

    #[test]
    fn classical_dim2_contains_swap_and_identity() {
        let cat = search_regular_ybe(&SearchSpec::new(Matrix::identity(GF2, 2))).unwrap();
        assert!(cat.contains(&Matrix::swap(2, 2, GF2)));
        assert!(cat.contains(&Matrix::identity(GF2, 4)));
        assert_eq!(cat.examined, 65536);
    }

    #[test]
    fn projector_dim2_contains_kron_and_swap() {
        let e = Matrix::diag(GF2, &[1, 0]);
        let cat = search_regular_ybe(&SearchSpec::new(e.clone()).with_workers(3)).unwrap();
        assert!(cat.contains(&e.kron(&e).unwrap()));
        assert!(cat.contains(&Matrix::swap(2, 2, GF2)));
        let sorted = cat.entries.windows(2).all(|w| w[0].matrix.lex_cmp(&w[1].matrix).is_lt());
        assert!(sorted);
    }

    #[test]
    fn scalar_case_accepts_everything() {
        for e in [0, 1] {
            let cat = search_regular_ybe(&SearchSpec::new(Matrix::diag(GF2, &[e]))).unwrap();
            assert_eq!(cat.len(), 2);
        }
    }

    #[test]
    fn cap_and_field_errors() {
        let spec = SearchSpec::new(Matrix::identity(FieldSpec::Prime(3), 2));
        match search_regular_ybe(&spec) {
            Err(Error::CapExceeded { candidates, .. }) => assert_eq!(candidates, "3^16 = 43046721"),
            other => panic!("{other:?}"),
        }
        let spec = SearchSpec::new(Matrix::identity(FieldSpec::Rationals, 2));
        assert!(matches!(search_regular_ybe(&spec), Err(Error::NotFinite(_))));
    }

    #[test]
    fn star_constraint_is_a_subset() {
        let e = Matrix::diag(GF2, &[1, 0]);
        let loose = search_regular_ybe(&SearchSpec::new(e.clone())).unwrap();
        let mut spec = SearchSpec::new(e);
        spec.constraints.star_exists = true;
        let tight = search_regular_ybe(&spec).unwrap();
        assert!(tight.matrices().all(|m| loose.contains(m)));
        assert!(tight.entries.iter().all(|e| e.star.is_some()));
    }

    #[test]
    fn star_partners() {
        let q = FieldSpec::Rationals;
        let r = Matrix::from_rows(q, &[&[2, 1], &[1, 1]]);
        assert_eq!(find_star_partner(&r, true, DEFAULT_CAP).unwrap(), vec![r.inverse().unwrap().unwrap()]);

        let r = Matrix::from_rows(GF2, &[&[1, 1], &[0, 1]]);
        assert_eq!(find_star_partner(&r, false, DEFAULT_CAP).unwrap(), vec![r.inverse().unwrap().unwrap()]);

        let zero = Matrix::zeros(GF2, 2, 2);
        assert_eq!(find_star_partner(&zero, true, DEFAULT_CAP).unwrap(), vec![zero.clone()]);
        assert_eq!(find_star_partner(&zero, false, DEFAULT_CAP).unwrap().len(), 16);

        let e = Matrix::diag(GF2, &[1, 0]);
        let ee = e.kron(&e).unwrap();
        let partners = find_star_partner(&ee, true, DEFAULT_CAP).unwrap();
        assert!(partners.contains(&ee));
    }

    #[test]
    fn antipode_searches() {
        let g = fixtures::group_algebra_z2(GF2);
        let cat = search_regular_antipodes(&g, DEFAULT_CAP, 2).unwrap();
        assert!(cat.contains(&Matrix::identity(GF2, 2)));
        assert_eq!(cat.examined, 16);

        let p = fixtures::projector_bialgebra(GF2);
        let cat = search_regular_antipodes(&p, DEFAULT_CAP, 1).unwrap();
        assert!(cat.contains(&Matrix::diag(GF2, &[1, 0])));

        let z = Matrix::zeros(GF2, 2, 2);
        let zero = ObstructedBialgebra::new(
            vec![Matrix::zeros(GF2, 2, 4)],
            vec![Matrix::zeros(GF2, 4, 2)],
            vec![z],
            None,
            None,
        )
        .unwrap();
        // e = 0 holds for every S, but S⋆e⋆S = 0 forces S = 0
        let cat = search_regular_antipodes(&zero, DEFAULT_CAP, 4).unwrap();
        assert_eq!(cat.examined, 16);
        assert_eq!(cat.matrices().collect::<Vec<_>>(), vec![&Matrix::zeros(GF2, 2, 2)]);
    }
}
