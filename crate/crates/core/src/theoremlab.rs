//! Certification pipeline for exterior powers of a reflection
//! representation.
//!
//! [`verify_theorem`] checks the hypotheses (every generator a reflection,
//! `V` simple, the non-fixing relation symmetric), then walks the argument:
//! the non-fixing graph is connected, the reflection vectors span, a
//! connected subset of them is a basis, each `d`-fold wedge of basis vectors
//! spans a common eigenline, and the commutant of every exterior power is
//! one-dimensional. Exterior powers of distinct degree are compared by their
//! hom spaces.
//!
//! Generators are numbered from 1 in every report: vertex `i` of the graph
//! is generator `i`, and subsets and move steps use the same numbers.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exterior::{binomial, eigen_split, minus_intersection, wedge_in, ExteriorError};
use crate::field::{Field, Scalar};
use crate::graphs::{
    check_deletion_hypothesis, deletable_vertex, move_sequence, Graph, GraphError, VertexSet,
};
use crate::linalg::{kernel, Matrix, Subspace, Vector};
use crate::reflect::{recognize_reflection, ReflectionData};
use crate::repkit::{
    exterior_rep, hom_dim, simplicity_with, Representation, Semisimplicity, SimplicityStatus,
    SimplicityVerdict, DEFAULT_WORD_LENGTH,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("the reflection vectors do not span V")]
    NotSpanning,
    #[error("the graph is not connected")]
    NotConnected,
    #[error("the reflection vectors are not a basis of V")]
    AlphasNotABasis,
    #[error("degree {d} is out of range for dimension {n}")]
    BadDegree { d: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Outcome of reflection recognition for one generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub number: usize,
    pub label: String,
    pub reflection: Option<ReflectionData>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition4 {
    Holds,
    /// Pairs `(i, j)` where `s_i` moves `alpha_j` but `s_j` fixes `alpha_i`.
    Violations(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub generators: Vec<GeneratorCheck>,
    pub all_reflections: bool,
    /// The group is by definition the one generated by the given matrices.
    pub generation_by_definition: bool,
    pub v_simple: SimplicityVerdict,
    /// Absent when some generator is not a reflection.
    pub condition4: Option<Condition4>,
    /// Edge `{i, j}` whenever `s_i` moves `alpha_j` or `s_j` moves `alpha_i`.
    pub graph: Option<Graph>,
    pub remarks: Vec<String>,
}

impl HypothesisReport {
    pub fn reflections(&self) -> Option<Vec<ReflectionData>> {
        self.generators.iter().map(|g| g.reflection.clone()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    General,
    /// Reflection vectors already form a basis.
    Steinberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedCondition {
    Condition1,
    Condition3,
    Condition4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conclusion {
    TheoremVerified,
    HypothesisFailed { condition: FailedCondition, reason: String },
    CertificationFailed { detail: String },
}

/// One vertex removal while shrinking a spanning set to a basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deletion {
    /// Vanishing combination `sum c_i alpha_i` with every `c_i` nonzero.
    pub dependency: Vec<(usize, Scalar)>,
    pub removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisSubset {
    pub subset: Vec<usize>,
    pub deletions: Vec<Deletion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenlineChecks {
    pub checked: usize,
    pub total: usize,
    pub exhaustive: bool,
    /// Subsets whose common eigenspace is not the expected wedge line.
    pub failures: Vec<Vec<usize>>,
}

/// A move between two `d`-subsets of the basis subset, with
/// `s_added * alpha_removed = alpha_removed + coefficient * alpha_added`.
/// A nonzero coefficient forces equal scalars on the two wedge lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub removed: usize,
    pub added: usize,
    pub coefficient: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveTrace {
    pub visited: usize,
    pub total: usize,
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub d: usize,
    pub dim: usize,
    pub commutant_dim: usize,
    pub verdict: SimplicityVerdict,
    pub eigenline_checks: EigenlineChecks,
    pub move_trace: Option<MoveTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub k: usize,
    pub l: usize,
    pub hom_dim: usize,
    /// `C(n,k) != C(n,l)` or `C(n-1,k) != C(n-1,l)`.
    pub dimension_separated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub mode: Mode,
    pub dim: usize,
    pub generator_count: usize,
    pub field: Field,
    pub degrees_checked: Vec<usize>,
    pub hypothesis: HypothesisReport,
    pub graph_connected: Option<bool>,
    /// Span of the reflection vectors of one component when the graph is
    /// disconnected; invariant under every generator.
    pub component_witness: Option<Subspace>,
    pub alphas_span: Option<bool>,
    pub span_witness: Option<Subspace>,
    pub basis_subset: Option<BasisSubset>,
    pub per_degree: Vec<DegreeReport>,
    pub pairwise: Vec<PairReport>,
    pub conclusion: Conclusion,
}

impl TheoremReport {
    pub fn is_verified(&self) -> bool {
        self.conclusion == Conclusion::TheoremVerified
    }

    pub fn commutant_dims(&self) -> Vec<usize> {
        self.per_degree.iter().map(|p| p.commutant_dim).collect()
    }

    /// Symmetric matrix of hom dimensions between checked degrees, indexed
    /// by position in `degrees_checked`, with `None` on the diagonal.
    pub fn hom_matrix(&self) -> Vec<Vec<Option<usize>>> {
        let pos: BTreeMap<usize, usize> =
            self.degrees_checked.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let m = self.degrees_checked.len();
        let mut out = vec![vec![None; m]; m];
        for p in &self.pairwise {
            let (a, b) = (pos[&p.k], pos[&p.l]);
            out[a][b] = Some(p.hom_dim);
            out[b][a] = Some(p.hom_dim);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trace: bool,
    /// Degrees to certify; all of `0..=n` when `None`.
    pub degrees: Option<Vec<usize>>,
    pub word_length: usize,
    pub sample_seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trace: false,
            degrees: None,
            word_length: DEFAULT_WORD_LENGTH,
            sample_seed: 0,
        }
    }
}

pub const EIGENLINE_SAMPLE: usize = 100;

pub fn check_hypotheses(r: &Representation) -> HypothesisReport {
    check_hypotheses_with(r, DEFAULT_WORD_LENGTH)
}

pub fn check_hypotheses_with(r: &Representation, word_length: usize) -> HypothesisReport {
    let generators: Vec<GeneratorCheck> = r
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let res = recognize_reflection(&g.matrix);
            GeneratorCheck {
                number: i + 1,
                label: g.label.clone(),
                error: res.as_ref().err().map(ToString::to_string),
                reflection: res.ok(),
            }
        })
        .collect();
    let all_reflections = generators.iter().all(|g| g.reflection.is_some());
    let mut v_simple = simplicity_with(r, Semisimplicity::Unknown, word_length)
        .expect("validated representation");
    let mut remarks = Vec::new();
    let mut condition4 = None;
    let mut graph = None;
    if all_reflections {
        let refls: Vec<ReflectionData> = generators.iter().map(|g| g.reflection.clone().unwrap()).collect();
        let k = refls.len();
        let moves = |i: usize, j: usize| !refls[i].fixes_vector(&refls[j].alpha);
        let mut g = Graph::on((1..=k).collect());
        let mut violations = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                if moves(i, j) {
                    g.add_edge(i + 1, j + 1).expect("vertex in range");
                    if !moves(j, i) {
                        violations.push((i + 1, j + 1));
                    }
                }
            }
        }
        for &(i, j) in &violations {
            if refls[i - 1].lambda == Scalar::int(-1) && refls[j - 1].lambda == Scalar::int(-1) {
                remarks.push(format!(
                    "s{i} and s{j} both have order 2 and the fixing relation between them is \
                     asymmetric, so s{i}s{j} should have infinite order; this is not verified"
                ));
            }
        }
        condition4 = Some(if violations.is_empty() {
            Condition4::Holds
        } else {
            Condition4::Violations(violations)
        });
        if v_simple.status == SimplicityStatus::Inconclusive {
            if let Some(w) = reflection_witness(r, &refls, &g) {
                v_simple.status = SimplicityStatus::Reducible;
                v_simple.witness = Some(w);
                v_simple.certificate = None;
            }
        }
        graph = Some(g);
    }
    HypothesisReport {
        generators,
        all_reflections,
        generation_by_definition: true,
        v_simple,
        condition4,
        graph,
        remarks,
    }
}

/// Proper invariant subspaces read off the reflection vectors: their span,
/// or the span over one connected component.
fn reflection_witness(r: &Representation, refls: &[ReflectionData], g: &Graph) -> Option<Subspace> {
    let n = r.dim();
    let proper_invariant = |s: Subspace| {
        (!s.is_zero() && !s.is_full() && r.matrices().iter().all(|m| s.is_invariant_under(m))).then_some(s)
    };
    let all: Vec<Vector> = refls.iter().map(|x| x.alpha.clone()).collect();
    if let Some(w) = proper_invariant(Subspace::span(n, &all)) {
        return Some(w);
    }
    g.components()
        .into_iter()
        .find_map(|c| proper_invariant(Subspace::span(n, &alphas_of(refls, &c))))
}

/// Reflection vectors for 1-based generator numbers.
fn alphas_of<'a, A: AlphaSource + ?Sized>(src: &A, subset: impl IntoIterator<Item = &'a usize>) -> Vec<Vector> {
    subset.into_iter().map(|&i| src.alpha_at(i - 1)).collect()
}

/// Shrinks the vertex set of a connected graph whose vertices index
/// spanning vectors (vertex `i` is `alphas[i - 1]`) to a basis that still
/// induces a connected subgraph.
///
/// Each round takes a vanishing combination of the current vectors with
/// smallest support, checks the deletion hypothesis on that support, and
/// removes the vertex [`deletable_vertex`] returns.
pub fn connected_basis_subset(alphas: &[Vector], g: &Graph) -> Result<BasisSubset, TheoremError> {
    let n = alphas.first().map_or(0, Vec::len);
    if Subspace::span(n, alphas).dim() != n {
        return Err(TheoremError::NotSpanning);
    }
    if !g.is_connected() {
        return Err(TheoremError::NotConnected);
    }
    let mut current: VertexSet = g.vertices().clone();
    let mut deletions = Vec::new();
    loop {
        let list: Vec<usize> = current.iter().copied().collect();
        let rows: Vec<Vector> = alphas_of(alphas, &list);
        let stacked = Matrix::from_rows(rows).expect("equal lengths");
        let deps = kernel(&stacked.transpose());
        let Some(c) = deps
            .basis_vectors()
            .into_iter()
            .min_by_key(|c| c.iter().filter(|x| !x.is_zero()).count())
        else {
            break;
        };
        let dependency: Vec<(usize, Scalar)> = list
            .iter()
            .zip(c)
            .filter(|(_, x)| !x.is_zero())
            .map(|(&v, x)| (v, x))
            .collect();
        let support: VertexSet = dependency.iter().map(|(v, _)| *v).collect();
        let sub = g.induced(&current);
        check_deletion_hypothesis(&sub, &support)?;
        let removed = deletable_vertex(&sub, &support)?;
        current.remove(&removed);
        deletions.push(Deletion { dependency, removed });
    }
    Ok(BasisSubset {
        subset: current.into_iter().collect(),
        deletions,
    })
}

trait AlphaSource {
    fn alpha_at(&self, i: usize) -> Vector;
}

impl AlphaSource for [ReflectionData] {
    fn alpha_at(&self, i: usize) -> Vector {
        self[i].alpha.clone()
    }
}

impl AlphaSource for [Vector] {
    fn alpha_at(&self, i: usize) -> Vector {
        self[i].clone()
    }
}

pub fn verify_theorem(r: &Representation) -> TheoremReport {
    verify_theorem_with(r, &VerifyOptions::default()).expect("all degrees are in range")
}

pub fn verify_theorem_with(r: &Representation, opts: &VerifyOptions) -> Result<TheoremReport, TheoremError> {
    run(r, opts, Mode::General)
}

/// The pipeline for generators whose reflection vectors are already a
/// basis; the basis subset is then every generator.
pub fn steinberg_mode(r: &Representation) -> Result<TheoremReport, TheoremError> {
    steinberg_mode_with(r, &VerifyOptions::default())
}

pub fn steinberg_mode_with(r: &Representation, opts: &VerifyOptions) -> Result<TheoremReport, TheoremError> {
    run(r, opts, Mode::Steinberg)
}

fn degrees_to_check(n: usize, opts: &VerifyOptions) -> Result<Vec<usize>, TheoremError> {
    match &opts.degrees {
        None => Ok((0..=n).collect()),
        Some(ds) => {
            if let Some(&d) = ds.iter().find(|&&d| d > n) {
                return Err(TheoremError::BadDegree { d, n });
            }
            Ok(ds.iter().copied().collect::<BTreeSet<_>>().into_iter().collect())
        }
    }
}

fn run(r: &Representation, opts: &VerifyOptions, mode: Mode) -> Result<TheoremReport, TheoremError> {
    let n = r.dim();
    let degrees_checked = degrees_to_check(n, opts)?;
    let hypothesis = check_hypotheses_with(r, opts.word_length);
    if mode == Mode::Steinberg {
        if let Some(refls) = hypothesis.reflections() {
            let alphas: Vec<Vector> = refls.iter().map(|x| x.alpha.clone()).collect();
            if alphas.len() != n || Subspace::span(n, &alphas).dim() != n {
                return Err(TheoremError::AlphasNotABasis);
            }
        }
    }
    let mut report = TheoremReport {
        mode,
        dim: n,
        generator_count: r.generators().len(),
        field: r.field(),
        degrees_checked,
        hypothesis,
        graph_connected: None,
        component_witness: None,
        alphas_span: None,
        span_witness: None,
        basis_subset: None,
        per_degree: Vec::new(),
        pairwise: Vec::new(),
        conclusion: Conclusion::TheoremVerified,
    };
    if let Some(c) = hypothesis_failure(&report.hypothesis) {
        report.conclusion = c;
        return Ok(report);
    }
    let refls = report.hypothesis.reflections().expect("condition 1 holds");
    let g = report.hypothesis.graph.clone().expect("condition 1 holds");
    let alphas: Vec<Vector> = refls.iter().map(|x| x.alpha.clone()).collect();

    let connected = g.is_connected();
    report.graph_connected = Some(connected);
    if !connected {
        report.component_witness = g
            .components()
            .first()
            .map(|c| Subspace::span(n, &alphas_of(refls.as_slice(), c)));
        report.conclusion = Conclusion::CertificationFailed {
            detail: "V is certified simple but the graph is disconnected".into(),
        };
        return Ok(report);
    }
    let span = Subspace::span(n, &alphas);
    report.alphas_span = Some(span.is_full());
    if !span.is_full() {
        report.span_witness = Some(span);
        report.conclusion = Conclusion::CertificationFailed {
            detail: "V is certified simple but the reflection vectors do not span it".into(),
        };
        return Ok(report);
    }
    let basis = match mode {
        Mode::Steinberg => Ok(BasisSubset {
            subset: (1..=refls.len()).collect(),
            deletions: Vec::new(),
        }),
        Mode::General => connected_basis_subset(&alphas, &g),
    };
    let basis = match basis {
        Ok(b) => b,
        Err(e) => {
            report.conclusion = Conclusion::CertificationFailed {
                detail: format!("no connected basis subset: {e}"),
            };
            return Ok(report);
        }
    };
    let subset_graph = g.induced(&basis.subset.iter().copied().collect());
    let per_degree: Result<Vec<DegreeReport>, String> = report
        .degrees_checked
        .par_iter()
        .map(|&d| degree_report(r, &refls, &basis.subset, &subset_graph, d, opts))
        .collect();
    report.basis_subset = Some(basis);
    report.per_degree = match per_degree {
        Ok(p) => p,
        Err(detail) => {
            report.conclusion = Conclusion::CertificationFailed { detail };
            return Ok(report);
        }
    };
    let pairs: Vec<(usize, usize)> = report.degrees_checked.iter().copied().tuple_combinations().collect();
    report.pairwise = pairs
        .par_iter()
        .map(|&(k, l)| {
            let ek = exterior_rep(r, k).expect("degree in range");
            let el = exterior_rep(r, l).expect("degree in range");
            PairReport {
                k,
                l,
                hom_dim: hom_dim(&ek, &el).expect("same generator count"),
                dimension_separated: dimension_separated(n, k, l),
            }
        })
        .collect();
    report.conclusion = certification_conclusion(&report);
    Ok(report)
}

fn hypothesis_failure(h: &HypothesisReport) -> Option<Conclusion> {
    if let Some(bad) = h.generators.iter().find(|g| g.reflection.is_none()) {
        return Some(Conclusion::HypothesisFailed {
            condition: FailedCondition::Condition1,
            reason: format!(
                "generator {} ({}) is not a reflection: {}",
                bad.number,
                bad.label,
                bad.error.as_deref().unwrap_or("")
            ),
        });
    }
    if let Some(Condition4::Violations(v)) = &h.condition4 {
        let (i, j) = v[0];
        return Some(Conclusion::HypothesisFailed {
            condition: FailedCondition::Condition4,
            reason: format!("s{i} moves alpha{j} but s{j} fixes alpha{i}"),
        });
    }
    match h.v_simple.status {
        SimplicityStatus::Simple => None,
        SimplicityStatus::Reducible => Some(Conclusion::HypothesisFailed {
            condition: FailedCondition::Condition3,
            reason: "V has a proper nonzero invariant subspace".into(),
        }),
        SimplicityStatus::Inconclusive => Some(Conclusion::CertificationFailed {
            detail: "simplicity of V could not be decided".into(),
        }),
    }
}

fn certification_conclusion(report: &TheoremReport) -> Conclusion {
    if let Some(p) = report.per_degree.iter().find(|p| !p.verdict.is_simple()) {
        return Conclusion::CertificationFailed {
            detail: format!("degree {} has commutant dimension {}", p.d, p.commutant_dim),
        };
    }
    if let Some(p) = report.per_degree.iter().find(|p| !p.eigenline_checks.failures.is_empty()) {
        return Conclusion::CertificationFailed {
            detail: format!("eigenline check failed in degree {}", p.d),
        };
    }
    if let Some(p) = report.pairwise.iter().find(|p| p.hom_dim != 0) {
        return Conclusion::CertificationFailed {
            detail: format!("degrees {} and {} have {} intertwiners", p.k, p.l, p.hom_dim),
        };
    }
    Conclusion::TheoremVerified
}

/// Equal dimensions of both the whole power and the fixed part of a
/// reflection are necessary for an isomorphism.
pub fn dimension_separated(n: usize, k: usize, l: usize) -> bool {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    binomial(n, k) != binomial(n, l) || binomial(n - 1, k) != binomial(n - 1, l)
}

fn degree_report(
    r: &Representation,
    refls: &[ReflectionData],
    basis: &[usize],
    subset_graph: &Graph,
    d: usize,
    opts: &VerifyOptions,
) -> Result<DegreeReport, String> {
    let ext = exterior_rep(r, d).map_err(|e| e.to_string())?;
    let verdict = simplicity_with(&ext, Semisimplicity::InheritedFromSimpleBase, opts.word_length)
        .map_err(|e| e.to_string())?;
    let eigenline_checks =
        eigenline_checks(refls, basis, d, opts.sample_seed.wrapping_add(d as u64)).map_err(|e| e.to_string())?;
    let n = r.dim();
    let move_trace = if opts.trace && d >= 1 && d < n {
        Some(move_trace(refls, basis, subset_graph, d).map_err(|e| e.to_string())?)
    } else {
        None
    };
    Ok(DegreeReport {
        d,
        dim: ext.dim(),
        commutant_dim: verdict.commutant_dim,
        verdict,
        eigenline_checks,
        move_trace,
    })
}

/// For `d`-subsets `T` of the basis, the common eigenspace of the `s_t`
/// (`t ∈ T`) for their own eigenvalues on `Λ^d` must be the line through
/// `∧_{t ∈ T} alpha_t`. Both the closed form and the intersection of the
/// separately computed eigenspaces are compared with that line.
pub fn eigenline_checks(
    refls: &[ReflectionData],
    basis: &[usize],
    d: usize,
    seed: u64,
) -> Result<EigenlineChecks, ExteriorError> {
    let n = basis.len();
    let total = binomial(n as i64, d as i64);
    let exhaustive = total <= EIGENLINE_SAMPLE;
    let chosen: Vec<Vec<usize>> = if exhaustive {
        basis.iter().copied().combinations(d).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..EIGENLINE_SAMPLE)
            .map(|_| {
                let mut t: Vec<usize> = sample(&mut rng, n, d).into_iter().map(|i| basis[i]).collect();
                t.sort_unstable();
                t
            })
            .collect()
    };
    let ambient = refls.first().map_or(0, ReflectionData::dim);
    let dim = binomial(ambient as i64, d as i64);
    let mut failures = Vec::new();
    for t in &chosen {
        let line = Subspace::span(dim, &[wedge_in(ambient, &alphas_of(refls, t))]);
        let ok = if t.is_empty() {
            line.is_full()
        } else {
            let rs: Vec<ReflectionData> = t.iter().map(|&i| refls[i - 1].clone()).collect();
            let closed = minus_intersection(&rs, d)?;
            let mut brute = Subspace::full(dim);
            for x in &rs {
                brute = brute.intersect(&eigen_split(x, d)?.minus)?;
            }
            line.dim() == 1 && closed == line && brute == line
        };
        if !ok {
            failures.push(t.clone());
        }
    }
    Ok(EigenlineChecks {
        checked: chosen.len(),
        total,
        exhaustive,
        failures,
    })
}

/// Chains move sequences through every `d`-subset of the basis in
/// lexicographic order, on the subgraph the basis induces.
pub fn move_trace(
    refls: &[ReflectionData],
    basis: &[usize],
    subset_graph: &Graph,
    d: usize,
) -> Result<MoveTrace, GraphError> {
    let all: Vec<VertexSet> = basis
        .iter()
        .copied()
        .combinations(d)
        .map(|c| c.into_iter().collect())
        .collect();
    let mut steps = Vec::new();
    let mut visited: BTreeSet<VertexSet> = BTreeSet::new();
    let mut current = all[0].clone();
    visited.insert(current.clone());
    for target in &all[1..] {
        for step in move_sequence(subset_graph, &current, target)? {
            let mut next = current.clone();
            next.remove(&step.removed);
            next.insert(step.added);
            let s_t = &refls[step.added - 1];
            steps.push(TraceStep {
                from: current.iter().copied().collect(),
                to: next.iter().copied().collect(),
                removed: step.removed,
                added: step.added,
                coefficient: s_t.eval_functional(&refls[step.removed - 1].alpha),
            });
            visited.insert(next.clone());
            current = next;
        }
    }
    Ok(MoveTrace {
        visited: visited.len(),
        total: all.len(),
        steps,
    })
}

/// Replays a trace: each step must be a legal move along an edge of the
/// graph with a nonzero recomputed coefficient, and every `d`-subset of the
/// basis must be visited.
pub fn validate_trace(
    trace: &MoveTrace,
    refls: &[ReflectionData],
    basis: &[usize],
    subset_graph: &Graph,
    d: usize,
) -> Result<(), String> {
    let mut visited = BTreeSet::new();
    let mut current: Option<Vec<usize>> = basis.iter().copied().combinations(d).next();
    visited.insert(current.clone().unwrap_or_default());
    for (i, s) in trace.steps.iter().enumerate() {
        if Some(&s.from) != current.as_ref() {
            return Err(format!("step {i} does not start where the previous one ended"));
        }
        if !subset_graph.has_edge(s.removed, s.added) {
            return Err(format!("step {i} does not follow an edge"));
        }
        let mut expected: BTreeSet<usize> = s.from.iter().copied().collect();
        if !expected.remove(&s.removed) || !expected.insert(s.added) {
            return Err(format!("step {i} is not a move"));
        }
        if expected.into_iter().collect::<Vec<_>>() != s.to {
            return Err(format!("step {i} lands on the wrong subset"));
        }
        let c = refls[s.added - 1].eval_functional(&refls[s.removed - 1].alpha);
        if c.is_zero() || c != s.coefficient {
            return Err(format!("step {i} has a wrong or zero coefficient"));
        }
        visited.insert(s.to.clone());
        current = Some(s.to.clone());
    }
    let total = binomial(basis.len() as i64, d as i64);
    if visited.len() != total {
        return Err(format!("trace visits {} of {} subsets", visited.len(), total));
    }
    Ok(())
}

/// Re-checks every witness in a report against the representation.
pub fn check_witnesses(r: &Representation, report: &TheoremReport) -> Result<(), String> {
    let h = &report.hypothesis;
    if !h.v_simple.witness_is_valid(r) {
        return Err("simplicity witness of V does not validate".into());
    }
    if let Some(Condition4::Violations(pairs)) = &h.condition4 {
        let refls = h.reflections().ok_or("violations without reflection data")?;
        for &(i, j) in pairs {
            let (si, sj) = (&refls[i - 1], &refls[j - 1]);
            if si.fixes_vector(&sj.alpha) || !sj.fixes_vector(&si.alpha) {
                return Err(format!("pair ({i}, {j}) is not a violation"));
            }
            if si.matrix.mul_vec(&sj.alpha) == sj.alpha || sj.matrix.mul_vec(&si.alpha) != si.alpha {
                return Err(format!("pair ({i}, {j}) is not a violation by direct application"));
            }
        }
    }
    for w in [&report.component_witness, &report.span_witness].into_iter().flatten() {
        if w.is_zero() || w.is_full() || !r.matrices().iter().all(|m| w.is_invariant_under(m)) {
            return Err("subspace witness is not a proper invariant subspace".into());
        }
    }
    if let Some(b) = &report.basis_subset {
        let refls = h.reflections().ok_or("basis subset without reflection data")?;
        let n = report.dim;
        for del in &b.deletions {
            let mut sum = vec![Scalar::zero_in(report.field); n];
            for (i, c) in &del.dependency {
                if c.is_zero() {
                    return Err("dependency with a zero coefficient".into());
                }
                for (s, a) in sum.iter_mut().zip(&refls[*i - 1].alpha) {
                    *s = &*s + &(c * a);
                }
            }
            if sum.iter().any(|x| !x.is_zero()) {
                return Err("dependency does not vanish".into());
            }
        }
        let alphas = alphas_of(refls.as_slice(), &b.subset);
        if b.subset.len() != n || Subspace::span(n, &alphas).dim() != n {
            return Err("basis subset is not a basis".into());
        }
        let g = h.graph.as_ref().ok_or("basis subset without graph")?;
        if !g.induced(&b.subset.iter().copied().collect()).is_connected() {
            return Err("basis subset is not connected".into());
        }
    }
    for p in &report.per_degree {
        if !p.verdict.witness_is_valid(&exterior_rep(r, p.d).map_err(|e| e.to_string())?) {
            return Err(format!("witness in degree {} does not validate", p.d));
        }
    }
    Ok(())
}
