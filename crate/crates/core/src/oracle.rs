//! Brute-force verification for `GL_3(F_p)`, `p = 2, 3`.
//!
//! The whole group is listed, cosets `gB` are found by multiplying out `B`,
//! and `s_i`-adjacency is read off by forming `g b s_i` for every `b` and
//! looking up its coset. Only matrix arithmetic is shared with the label
//! pipeline; the report compares the two.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bruhat::{hardcoded_gl3_cell, inversions, rank_rule_permutation};
use crate::error::{Error, Result};
use crate::graph::{build_chamber_graph, PairMode};
use crate::group::{BnPair, NeighborType, SphericalGroup};
use crate::labels::enumerate_chambers;
use crate::matrix::Matrix;
use crate::scalar::{PrimeField, PrimeFieldElement, Scalar};
use crate::spec::{BuildingSpec, Family};
use crate::weyl::Limits;

type M = Matrix<PrimeFieldElement>;

/// The cases the oracle accepts.
pub const SUPPORTED_CASES: [(usize, u32); 2] = [(3, 2), (3, 3)];

/// Order of `GL_n(F_p)`.
pub fn gl_order(n: usize, p: u32) -> u128 {
    let q = p as u128;
    (0..n as u32).map(|k| q.pow(n as u32) - q.pow(k)).product()
}

fn check_case(n: usize, p: u32) -> Result<()> {
    if SUPPORTED_CASES.contains(&(n, p)) {
        return Ok(());
    }
    let requested = usize::try_from(gl_order(n, p)).unwrap_or(usize::MAX);
    Err(Error::ResourceCap { what: "brute-force group order", requested, cap: gl_order(3, 3) as usize })
}

/// Every element of `GL_n(F_p)` together with `B`, `T`, `N` and the simple
/// reflections, each listed explicitly.
#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    pub n: usize,
    pub p: u32,
    pub elements: Vec<M>,
    pub borel: Vec<M>,
    pub torus: Vec<M>,
    pub normalizer: Vec<M>,
    pub reflections: Vec<M>,
}

impl FiniteGroupTable {
    pub fn new(n: usize, p: u32) -> Result<Self> {
        check_case(n, p)?;
        let field = PrimeField(p);
        let entries = n * n;
        let total = (p as usize).pow(entries as u32);
        let elements: Vec<M> = (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let mut digits = Vec::with_capacity(entries);
                let mut rest = code;
                for _ in 0..entries {
                    digits.push(PrimeFieldElement::from_i64((rest % p as usize) as i64, field));
                    rest /= p as usize;
                }
                digits.reverse();
                let m = Matrix::new(n, digits).expect("n*n entries");
                (!m.determinant().is_zero()).then_some(m)
            })
            .collect();
        let upper = |m: &M| (0..n).all(|i| (0..i).all(|j| m.get(i, j).is_zero()));
        let borel: Vec<M> = elements.iter().filter(|m| upper(m)).cloned().collect();
        let torus: Vec<M> = elements.iter().filter(|m| m.is_diagonal()).cloned().collect();
        let normalizer: Vec<M> = elements.iter().filter(|m| m.monomial_support().is_some()).cloned().collect();
        let reflections = (0..n - 1)
            .map(|i| {
                Matrix::from_fn(n, |r, c| {
                    let image = if r == i { i + 1 } else if r == i + 1 { i } else { r };
                    PrimeFieldElement::from_i64(i64::from(image == c), field)
                })
            })
            .collect();
        Ok(FiniteGroupTable { n, p, elements, borel, torus, normalizer, reflections })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Cosets `gB` and the typed adjacency between them.
#[derive(Debug, Clone)]
pub struct BruteForceBuilding {
    /// Cosets in order of their first element in the group listing; coset 0
    /// is `B`.
    pub cosets: Vec<Vec<M>>,
    pub coset_of: HashMap<M, usize>,
    /// `(a, b, i)` with `a < b` and the two cosets `s_i`-adjacent.
    pub edges: BTreeSet<(usize, usize, usize)>,
}

impl BruteForceBuilding {
    pub fn relation(&self, a: usize, b: usize) -> NeighborType {
        if a == b {
            return NeighborType::Equal;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.edges
            .range((lo, hi, 0)..=(lo, hi, usize::MAX))
            .next()
            .map_or(NeighborType::NotAdjacent, |&(_, _, i)| NeighborType::Adjacent(i))
    }
}

pub fn brute_force_building(table: &FiniteGroupTable) -> Result<BruteForceBuilding> {
    let identity = Matrix::identity(table.n, PrimeField(table.p));
    let mut ordered = vec![identity];
    ordered.extend(table.elements.iter().cloned());
    let mut coset_of: HashMap<M, usize> = HashMap::with_capacity(table.order());
    let mut cosets = Vec::new();
    for g in &ordered {
        if coset_of.contains_key(g) {
            continue;
        }
        let id = cosets.len();
        let members: Vec<M> = table.borel.iter().map(|b| g * b).collect();
        for m in &members {
            coset_of.insert(m.clone(), id);
        }
        cosets.push(members);
    }
    let mut edges = BTreeSet::new();
    for (a, members) in cosets.iter().enumerate() {
        let g = &members[0];
        for (i, s) in table.reflections.iter().enumerate() {
            for b in &table.borel {
                let h = &(g * b) * s;
                let c = coset_of[&h];
                if c == a {
                    return Err(Error::Unsupported(format!("g b s_{i} lies in gB for g = {g}")));
                }
                edges.insert((a.min(c), a.max(c), i));
            }
        }
    }
    Ok(BruteForceBuilding { cosets, coset_of, edges })
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    fn pass(name: &str, detail: String) -> Self {
        CheckResult { name: name.to_string(), passed: true, detail, witness: None }
    }

    fn fail(name: &str, detail: String, witness: impl Into<Option<String>>) -> Self {
        CheckResult { name: name.to_string(), passed: false, detail, witness: witness.into() }
    }

    fn from_witness(name: &str, detail: String, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(name, detail),
            Some(w) => Self::fail(name, detail, w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub p: u32,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("verify GL_{}(F_{})\n", self.n, self.p);
        for c in &self.checks {
            let _ = writeln!(out, "  [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "         witness: {w}");
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        out
    }
}

fn group_table_check(t: &FiniteGroupTable) -> CheckResult {
    let (n, p) = (t.n, t.p);
    let q = p as usize;
    let expected = [
        ("G", t.order(), gl_order(n, p) as usize),
        ("B", t.borel.len(), (q - 1).pow(n as u32) * q.pow((n * (n - 1) / 2) as u32)),
        ("T", t.torus.len(), (q - 1).pow(n as u32)),
        ("N", t.normalizer.len(), (1..=n).product::<usize>() * (q - 1).pow(n as u32)),
    ];
    let sizes: Vec<String> = expected.iter().map(|(name, got, _)| format!("|{name}| = {got}")).collect();
    let detail = sizes.join(", ");
    if let Some((name, got, want)) = expected.iter().find(|(_, got, want)| got != want) {
        return CheckResult::fail("group table", detail, format!("|{name}| = {got}, expected {want}"));
    }
    let members: HashSet<&M> = t.elements.iter().collect();
    let borel: HashSet<&M> = t.borel.iter().collect();
    let sample = t.elements.iter().step_by(t.order() / 37 + 1);
    for g in sample.clone() {
        for h in sample.clone() {
            if !members.contains(&(g * h)) {
                return CheckResult::fail("group table", detail, format!("{g} * {h} is not invertible"));
            }
        }
    }
    for a in t.borel.iter().step_by(t.borel.len() / 11 + 1) {
        for b in &t.borel {
            if !borel.contains(&(a * b)) {
                return CheckResult::fail("group table", detail, format!("{a} * {b} leaves B"));
            }
        }
    }
    if let Some(s) = t.reflections.iter().find(|s| !t.normalizer.contains(s) || borel.contains(s)) {
        return CheckResult::fail("group table", detail, format!("simple reflection {s} is not in N \\ B"));
    }
    CheckResult::pass("group table", detail)
}

fn coset_check(t: &FiniteGroupTable, bf: &BruteForceBuilding) -> CheckResult {
    let expected = t.order() / t.borel.len();
    let detail = format!("{} cosets of size {} (expected {expected})", bf.cosets.len(), t.borel.len());
    let covered: usize = bf.cosets.iter().map(Vec::len).sum();
    let base: HashSet<&M> = bf.cosets[0].iter().collect();
    let witness = if bf.cosets.len() != expected {
        Some(format!("{} cosets", bf.cosets.len()))
    } else if covered != t.order() || bf.coset_of.len() != t.order() {
        Some(format!("cosets cover {} of {} elements", bf.coset_of.len(), t.order()))
    } else if base != t.borel.iter().collect() {
        Some("the coset of the identity differs from B".to_string())
    } else {
        bf.cosets
            .iter()
            .find(|c| c.iter().collect::<HashSet<_>>().len() != t.borel.len())
            .map(|c| format!("coset of {} has repeated elements", c[0]))
    };
    CheckResult::from_witness("coset partition", detail, witness)
}

fn adjacency_check(t: &FiniteGroupTable, bf: &BruteForceBuilding) -> CheckResult {
    let rank = t.n - 1;
    let chambers = bf.cosets.len();
    let q = t.p as usize;
    let mut per_type = vec![vec![0usize; rank]; chambers];
    for &(a, b, i) in &bf.edges {
        per_type[a][i] += 1;
        per_type[b][i] += 1;
    }
    let detail = format!("{} typed edges, every chamber has {q} neighbours of each of {rank} types", bf.edges.len());
    let mut pairs = BTreeSet::new();
    let witness = bf
        .edges
        .iter()
        .find(|&&(a, b, _)| !pairs.insert((a, b)))
        .map(|&(a, b, _)| format!("cosets {a} and {b} are adjacent with two types"))
        .or_else(|| {
            per_type
                .iter()
                .enumerate()
                .find(|(_, counts)| counts.iter().any(|&c| c != q))
                .map(|(c, counts)| format!("coset {c} has per-type degrees {counts:?}"))
        });
    CheckResult::from_witness("brute-force adjacency", detail, witness)
}

fn double_coset(t: &FiniteGroupTable, w: &M) -> HashSet<M> {
    t.borel
        .par_iter()
        .flat_map_iter(|b1| {
            let left = b1 * w;
            t.borel.iter().map(move |b2| &left * b2)
        })
        .collect()
}

fn permutation_matrix(perm: &[usize], field: PrimeField) -> M {
    Matrix::from_fn(perm.len(), |r, c| PrimeFieldElement::from_i64(i64::from(perm[r] == c), field))
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..n)
                    .filter(|c| !prefix.contains(c))
                    .map(|c| {
                        let mut next = prefix.clone();
                        next.push(c);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Double cosets `BwB` computed by multiplying out, keyed by permutation.
fn double_cosets(t: &FiniteGroupTable) -> BTreeMap<Vec<usize>, HashSet<M>> {
    all_permutations(t.n)
        .into_iter()
        .map(|perm| {
            let cell = double_coset(t, &permutation_matrix(&perm, PrimeField(t.p)));
            (perm, cell)
        })
        .collect()
}

fn bruhat_check(t: &FiniteGroupTable, cells: &BTreeMap<Vec<usize>, HashSet<M>>) -> CheckResult {
    let name = "Bruhat partition";
    let q = t.p as usize;
    let classified: Vec<(usize, Option<Vec<usize>>)> =
        t.elements.par_iter().enumerate().map(|(k, g)| (k, rank_rule_permutation(g))).collect();
    let mut sizes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (k, perm) in &classified {
        let g = &t.elements[*k];
        let Some(perm) = perm else {
            return CheckResult::fail(name, "rank rule found no permutation".into(), g.to_string());
        };
        if !cells[perm].contains(g) {
            return CheckResult::fail(name, format!("rank rule gives {perm:?}"), format!("{g} is not in that double coset"));
        }
        *sizes.entry(perm.clone()).or_default() += 1;
    }
    let total: usize = cells.values().map(HashSet::len).sum();
    let summary: Vec<String> = sizes.iter().map(|(perm, size)| format!("{perm:?}:{size}")).collect();
    let detail = format!("cell sizes {} summing to {} = |G|", summary.join(" "), sizes.values().sum::<usize>());
    if total != t.order() {
        return CheckResult::fail(name, detail, format!("double cosets have {total} elements in total, |G| = {}", t.order()));
    }
    for (perm, cell) in cells {
        let want = t.borel.len() * q.pow(inversions(perm) as u32);
        if cell.len() != want || sizes.get(perm).copied().unwrap_or(0) != want {
            return CheckResult::fail(name, detail, format!("cell {perm:?} has {} elements, expected {want}", cell.len()));
        }
    }
    CheckResult::pass(name, detail)
}

fn pattern_check(t: &FiniteGroupTable, cells: &BTreeMap<Vec<usize>, HashSet<M>>) -> CheckResult {
    let name = "reflection cell patterns";
    let reflection_cells: Vec<&HashSet<M>> =
        t.reflections.iter().map(|s| &cells[&s.monomial_support().expect("permutation matrix")]).collect();
    let witness = t.elements.par_iter().find_map_any(|g| {
        let truth = reflection_cells.iter().position(|cell| cell.contains(g));
        let pattern = hardcoded_gl3_cell(g);
        (truth != pattern).then(|| format!("{g}: pattern says {pattern:?}, double cosets say {truth:?}"))
    });
    let counts: Vec<usize> = reflection_cells.iter().map(|c| c.len()).collect();
    CheckResult::from_witness(name, format!("entry patterns agree with B s_i B on all {} elements (cell sizes {counts:?})", t.order()), witness)
}

fn pipeline_checks(t: &FiniteGroupTable, bf: &BruteForceBuilding) -> Result<Vec<CheckResult>> {
    let group = SphericalGroup::new(BuildingSpec::new(Family::SphericalA2, t.p)?)?;
    let radius = t.n * (t.n - 1) / 2;
    let labels = enumerate_chambers(&group, radius, &Limits::default())?;
    let to_coset: Vec<Option<usize>> = labels.iter().map(|l| bf.coset_of.get(&l.matrix).copied()).collect();

    let name = "label transversal";
    let distinct: BTreeSet<usize> = to_coset.iter().flatten().copied().collect();
    let detail = format!("{} labels, {} cosets", labels.len(), bf.cosets.len());
    let transversal = if let Some(k) = to_coset.iter().position(Option::is_none) {
        CheckResult::fail(name, detail, format!("label {} is not invertible", labels[k].matrix))
    } else if distinct.len() != labels.len() || labels.len() != bf.cosets.len() {
        CheckResult::fail(name, detail, format!("labels hit {} distinct cosets", distinct.len()))
    } else {
        CheckResult::pass(name, detail)
    };
    if !transversal.passed {
        return Ok(vec![transversal]);
    }
    let to_coset: Vec<usize> = to_coset.into_iter().flatten().collect();

    let graph = build_chamber_graph(&group, &labels, PairMode::Pruned)?;
    let mapped: BTreeSet<(usize, usize, usize)> = graph
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (to_coset[e.a], to_coset[e.b]);
            (a.min(b), a.max(b), e.kind)
        })
        .collect();
    let name = "typed graph isomorphism";
    let detail = format!("{} pipeline edges, {} brute-force edges", graph.edges().len(), bf.edges.len());
    let witness = mapped
        .symmetric_difference(&bf.edges)
        .next()
        .map(|&(a, b, i)| format!("cosets {a}, {b} type {i} found by only one side"));
    let isomorphism = if mapped.len() != graph.edges().len() {
        CheckResult::fail(name, detail, "two pipeline edges map to the same coset pair".to_string())
    } else {
        CheckResult::from_witness(name, detail, witness)
    };

    let name = "neighbour classification";
    let pairs: Vec<(usize, usize)> = (0..labels.len()).flat_map(|a| (0..labels.len()).map(move |b| (a, b))).collect();
    let witness = pairs.par_iter().find_map_any(|&(a, b)| {
        let got = group.neighbor_type(&labels[a].matrix, &labels[b].matrix).ok();
        let want = bf.relation(to_coset[a], to_coset[b]);
        (got != Some(want)).then(|| format!("chambers {a}, {b}: pipeline {got:?}, brute force {want:?}"))
    });
    let classification =
        CheckResult::from_witness(name, format!("all {} ordered chamber pairs agree", pairs.len()), witness);
    Ok(vec![transversal, isomorphism, classification])
}

/// Runs every check for `GL_n(F_p)`.
pub fn verify_case(n: usize, p: u32) -> Result<VerifyReport> {
    let table = FiniteGroupTable::new(n, p)?;
    let building = brute_force_building(&table)?;
    let cells = double_cosets(&table);
    let mut checks = vec![
        group_table_check(&table),
        coset_check(&table, &building),
        adjacency_check(&table, &building),
        bruhat_check(&table, &cells),
        pattern_check(&table, &cells),
    ];
    checks.extend(pipeline_checks(&table, &building)?);
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { n, p, passed, checks })
}
