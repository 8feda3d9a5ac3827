//! Numerical checks on the path-space representation truncated at length `N`.
//!
//! The basis is every path of length at most `N`; `S_e ξ_μ = ξ_{e∘μ}` when
//! `s(e) = r(μ)` and `|μ| < N`, and `P_v ξ_μ = [r(μ) = v] ξ_μ`. Relations can
//! only break at the length-`N` boundary (and, for CK2, at length-0 vertex
//! vectors), so every pass/fail check is restricted to an interior column set.
//!
//! Matrices are stored sparsely by column. Generator matrices are kept exact
//! over [`Surd`]; checks with a floating tolerance use `f64` copies.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use crate::dynamics::WitnessSpec;
use crate::error::{Error, Result};
use crate::graph::{adjacency, paths_from, paths_of_length, EdgeIx, Graph, Path, VertexIx};
use crate::intmatrix::IntMatrix;
use crate::scalar::Surd;
use crate::symbolic::{beta_apply, beta_power, CoreElement, PathPairTerm};

pub const DEFAULT_CAP: usize = 20000;
pub const CAP_ENV: &str = "CKLAB_CAP";
pub const TOLERANCE: f64 = 1e-9;

/// Scalars a [`SparseMatrix`] can hold.
pub trait Entry: Clone + fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Entry for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Entry for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn one() -> Self {
        Surd::one()
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        Surd::to_f64(self)
    }
}

/// A square matrix stored as sparse columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T: Entry> {
    dim: usize,
    cols: Vec<BTreeMap<usize, T>>,
}

impl<T: Entry> SparseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix {
            dim,
            cols: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            m.cols[j].insert(j, T::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.cols[j].get(&i).cloned().unwrap_or_else(T::zero)
    }

    /// `self[i][j] += x`.
    pub fn accumulate(&mut self, i: usize, j: usize, x: &T) {
        if x.is_zero() {
            return;
        }
        let col = &mut self.cols[j];
        let sum = col.get(&i).map_or_else(|| x.clone(), |y| y.add(x));
        if sum.is_zero() {
            col.remove(&i);
        } else {
            col.insert(i, sum);
        }
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, &T)> {
        self.cols[j].iter().map(|(&i, x)| (i, x))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = Self::zeros(self.dim);
        for j in 0..self.dim {
            for (k, b) in other.column(j) {
                for (i, a) in self.column(k) {
                    out.accumulate(i, j, &a.mul(b));
                }
            }
        }
        out
    }

    /// Transpose; equals the adjoint since all entries are real.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for j in 0..self.dim {
            for (i, x) in self.column(j) {
                out.cols[i].insert(j, x.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for j in 0..self.dim {
            for (i, x) in other.column(j) {
                out.accumulate(i, j, x);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for j in 0..self.dim {
            for (i, x) in other.column(j) {
                out.accumulate(i, j, &x.neg());
            }
        }
        out
    }

    /// `self * diag(mask)`: keeps only the selected columns.
    pub fn restrict_columns(&self, mask: &[bool]) -> Self {
        let mut out = Self::zeros(self.dim);
        for (j, &keep) in mask.iter().enumerate() {
            if keep {
                out.cols[j] = self.cols[j].clone();
            }
        }
        out
    }

    pub fn to_f64(&self) -> SparseMatrix<f64> {
        let mut out = SparseMatrix::zeros(self.dim);
        for j in 0..self.dim {
            for (i, x) in self.column(j) {
                out.accumulate(i, j, &x.to_f64());
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        // an empty f64 sum is -0.0
        let sq: f64 = self.cols.iter().flat_map(|c| c.values()).map(|x| x.to_f64().powi(2)).sum();
        (sq + 0.0).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.cols
            .iter()
            .flat_map(|c| c.values())
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.dim]; self.dim];
        for j in 0..self.dim {
            for (i, x) in self.column(j) {
                out[i][j] = x.to_f64();
            }
        }
        out
    }
}

impl SparseMatrix<f64> {
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                for (i, a) in self.column(j) {
                    y[i] += a * xj;
                }
            }
        }
        y
    }

    fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|j| self.column(j).map(|(i, a)| a * y[i]).sum())
            .collect()
    }

    /// Largest singular value by power iteration on `A^T A`.
    pub fn operator_norm(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // deterministic start vector with no special alignment
        let mut x: Vec<f64> = (0..self.dim)
            .map(|i| 1.0 + ((i as f64 * 0.618_033_988_75).fract() - 0.5) * 0.5)
            .collect();
        let mut sigma = 0.0;
        for _ in 0..2000 {
            let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n == 0.0 {
                return 0.0;
            }
            x.iter_mut().for_each(|v| *v /= n);
            let ax = self.apply(&x);
            let next = ax.iter().map(|v| v * v).sum::<f64>().sqrt();
            x = self.apply_transpose(&ax);
            if (next - sigma).abs() <= 1e-15 * next.max(1.0) {
                return next;
            }
            sigma = next;
        }
        sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    S(EdgeIx),
    P(VertexIx),
    T,
}

/// The path-space representation truncated at length `N`. Immutable once built.
#[derive(Debug, Clone)]
pub struct TruncatedRep {
    graph: Graph,
    depth: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    cache: HashMap<Generator, SparseMatrix<Surd>>,
    t_numeric: SparseMatrix<f64>,
}

fn basis_dimension(g: &Graph, depth: usize) -> BigInt {
    let a = adjacency(g);
    let mut power = IntMatrix::identity(g.vertex_count());
    let mut total = BigInt::zero();
    for _ in 0..=depth {
        for i in 0..power.rows() {
            total += power.row(i).iter().fold(BigInt::zero(), |acc, x| acc + x);
        }
        power = &power * &a;
    }
    total
}

/// The dimension cap: `CKLAB_CAP` when set, else [`DEFAULT_CAP`].
pub fn configured_cap() -> Result<usize> {
    match std::env::var(CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{CAP_ENV} must be a positive integer, got `{s}`"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

pub fn build_rep(g: &Graph, depth: usize) -> Result<TruncatedRep> {
    build_rep_with_cap(g, depth, configured_cap()?)
}

pub fn build_rep_with_cap(g: &Graph, depth: usize, cap: usize) -> Result<TruncatedRep> {
    g.require_no_sinks()?;
    if depth == 0 {
        return Err(Error::InvalidArgument("truncation depth must be positive".into()));
    }
    let dim = basis_dimension(g, depth);
    if dim > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            dim: dim.to_usize().unwrap_or(usize::MAX),
            cap,
        });
    }
    let basis: Vec<Path> = (0..=depth).flat_map(|k| paths_of_length(g, k)).collect();
    let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = basis.len();
    let mut cache = HashMap::new();
    for e in g.edges() {
        let mut m = SparseMatrix::zeros(n);
        let pe = Path::edge(g, e);
        for (j, mu) in basis.iter().enumerate() {
            if mu.len() < depth {
                if let Some(p) = Path::compose(g, &pe, mu) {
                    m.accumulate(index[&p], j, &Surd::one());
                }
            }
        }
        cache.insert(Generator::S(e), m);
    }
    for v in g.vertices() {
        let mut m = SparseMatrix::zeros(n);
        for (j, mu) in basis.iter().enumerate() {
            if mu.range(g) == v {
                m.accumulate(j, j, &Surd::one());
            }
        }
        cache.insert(Generator::P(v), m);
    }
    let mut t = SparseMatrix::zeros(n);
    for e in g.edges() {
        let c = Surd::inv_sqrt(g.out_degree(g.source(e)) as u64);
        for (j, x) in cache[&Generator::S(e)].clone().cols.iter().enumerate() {
            for (&i, y) in x {
                t.accumulate(i, j, &(y * &c));
            }
        }
    }
    let t_numeric = t.to_f64();
    cache.insert(Generator::T, t);
    Ok(TruncatedRep {
        graph: g.clone(),
        depth,
        basis,
        index,
        cache,
        t_numeric,
    })
}

impl TruncatedRep {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn generator(&self, g: Generator) -> &SparseMatrix<Surd> {
        &self.cache[&g]
    }

    /// Columns of paths with length at most `N - 1`.
    pub fn interior(&self) -> Vec<bool> {
        self.basis.iter().map(|p| p.len() < self.depth).collect()
    }

    fn mask(&self, f: impl Fn(&Path) -> bool) -> Vec<bool> {
        self.basis.iter().map(f).collect()
    }
}

/// `S_η S_ρ^* ξ_π = ξ_{η∘π'}` when `π = ρ∘π'`; built directly from path surgery.
fn evaluate_with<T: Entry>(rep: &TruncatedRep, x: &CoreElement, conv: impl Fn(&Surd) -> T) -> Result<SparseMatrix<T>> {
    let g = &rep.graph;
    g.check_fingerprint(x.fingerprint())?;
    let mut m = SparseMatrix::zeros(rep.dim());
    for t in x.terms() {
        let c = conv(&t.coeff);
        for (j, pi) in rep.basis.iter().enumerate() {
            let Some(rest) = pi.strip_outer(g, &t.right) else {
                continue;
            };
            let image = Path::compose(g, &t.left, &rest).expect("s(η) = s(ρ) = r(π')");
            if let Some(i) = rep.index_of(&image) {
                m.accumulate(i, j, &c);
            }
        }
    }
    Ok(m)
}

pub fn evaluate(rep: &TruncatedRep, x: &CoreElement) -> Result<SparseMatrix<f64>> {
    evaluate_with(rep, x, Surd::to_f64)
}

pub fn evaluate_exact(rep: &TruncatedRep, x: &CoreElement) -> Result<SparseMatrix<Surd>> {
    evaluate_with(rep, x, Surd::clone)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CkReport {
    /// `max ‖(S_e^* S_f - δ_{ef} P_{s(e)}) P_int‖` over edge pairs.
    pub ck1_interior: f64,
    /// `S_a^* S_b = 0` for `a ≠ b` on every column.
    pub ck1_orthogonality_exact: bool,
    /// `max_v ‖(P_v - sum_{r(e)=v} S_e S_e^*)‖` on interior paths of length at least 1.
    pub ck2_interior: f64,
    /// The same defect on length-0 columns; reported, never failed.
    pub ck2_boundary: f64,
    /// `‖(T^*T - 1) P_int‖`, computed exactly.
    pub isometry_interior: f64,
    pub passed: bool,
}

pub fn check_ck(rep: &TruncatedRep) -> CkReport {
    let g = &rep.graph;
    let interior = rep.interior();
    let edges: Vec<EdgeIx> = g.edges().collect();
    let mut ck1 = 0.0f64;
    let mut orthogonal = true;
    for &e in &edges {
        let se_t = rep.generator(Generator::S(e)).transpose();
        for &f in &edges {
            let prod = se_t.mul(rep.generator(Generator::S(f)));
            if e == f {
                let defect = prod.sub(rep.generator(Generator::P(g.source(e))));
                ck1 = ck1.max(defect.restrict_columns(&interior).max_abs());
            } else {
                orthogonal &= prod.is_zero();
                ck1 = ck1.max(prod.restrict_columns(&interior).max_abs());
            }
        }
    }
    let inner = rep.mask(|p| !p.is_empty() && p.len() < rep.depth);
    let boundary = rep.mask(Path::is_empty);
    let mut ck2 = 0.0f64;
    let mut ck2_boundary = 0.0f64;
    for v in g.vertices().filter(|&v| g.in_degree(v) > 0) {
        let mut sum = SparseMatrix::zeros(rep.dim());
        for &e in g.in_edges(v) {
            let s = rep.generator(Generator::S(e));
            sum = sum.add(&s.mul(&s.transpose()));
        }
        let defect = rep.generator(Generator::P(v)).sub(&sum);
        ck2 = ck2.max(defect.restrict_columns(&inner).max_abs());
        ck2_boundary = ck2_boundary.max(defect.restrict_columns(&boundary).frobenius());
    }
    let t = rep.generator(Generator::T);
    let iso = t
        .transpose()
        .mul(t)
        .sub(&SparseMatrix::identity(rep.dim()))
        .restrict_columns(&interior)
        .max_abs();
    CkReport {
        ck1_interior: ck1,
        ck1_orthogonality_exact: orthogonal,
        ck2_interior: ck2,
        ck2_boundary,
        isometry_interior: iso,
        passed: ck1 == 0.0 && orthogonal && ck2 == 0.0 && iso == 0.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaReport {
    /// Frobenius norm of `(T x T^* - β(x)) P_int`, an upper bound for the operator norm.
    pub per_sample: Vec<f64>,
    pub max_deviation: f64,
    pub passed: bool,
}

pub fn check_beta(rep: &TruncatedRep, samples: &[CoreElement]) -> Result<BetaReport> {
    let bound = rep.depth.saturating_sub(2);
    let interior = rep.interior();
    let t = &rep.t_numeric;
    let t_adj = t.transpose();
    let mut per_sample = Vec::with_capacity(samples.len());
    for x in samples {
        if x.degree() > bound || rep.depth < 2 {
            return Err(Error::DegreeTooHigh {
                degree: x.degree(),
                bound,
            });
        }
        let lhs = t.mul(&evaluate(rep, x)?).mul(&t_adj);
        let rhs = evaluate(rep, &beta_apply(&rep.graph, x)?)?;
        per_sample.push(lhs.sub(&rhs).restrict_columns(&interior).frobenius());
    }
    let max_deviation = per_sample.iter().copied().fold(0.0, f64::max);
    Ok(BetaReport {
        per_sample,
        max_deviation,
        passed: max_deviation <= TOLERANCE,
    })
}

/// Formal sums `sum c_{η,ρ} S_η S_ρ^*` whose terms may have any gauge degree.
pub type FormalSum = BTreeMap<(Path, Path), Surd>;

/// Averages `γ_z` over the `K = 2N + 1` roots of unity. On a term of degree
/// `d` the average is `K^{-1} sum_k ω^{kd} = [K | d]`, and `|d| <= N < K`, so
/// exactly the degree-0 terms survive.
pub fn gauge_expectation(rep: &TruncatedRep, coefficients: &FormalSum) -> Result<CoreElement> {
    let g = &rep.graph;
    let k = 2 * rep.depth as i64 + 1;
    let mut kept = Vec::new();
    for ((eta, rho), c) in coefficients {
        let term = PathPairTerm::new(eta.clone(), rho.clone(), c.clone())?;
        let d = term.gauge_degree();
        if d.unsigned_abs() as usize > rep.depth {
            return Err(Error::DegreeTooHigh {
                degree: d.unsigned_abs() as usize,
                bound: rep.depth,
            });
        }
        if d % k == 0 {
            kept.push(term);
        }
    }
    CoreElement::from_terms(g, kept)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    /// `‖(V^*V - 1) P‖` on columns `γ α^M λ` with `M >= 1`, `|γ| <= D`.
    pub isometry_deviation: f64,
    pub per_sample: Vec<f64>,
    pub max_sample_deviation: f64,
    pub isometry_columns: usize,
    pub sample_columns: usize,
    pub passed: bool,
}

/// For a path through the base, splits `π = γ α^M λ` with `γ` the part after
/// the last visit to the base and `|λ| < n`; returns `(|γ|, M)`.
fn cycle_decomposition(g: &Graph, pi: &Path, base: VertexIx, n: usize) -> Option<(usize, usize)> {
    let visited = pi.visited(g);
    let first = visited.iter().position(|&v| v == base)?;
    let last = visited.iter().rposition(|&v| v == base)?;
    Some((pi.len() - last, (last - first) / n))
}

pub fn check_inner_witness(rep: &TruncatedRep, w: &WitnessSpec, samples: &[CoreElement]) -> Result<WitnessReport> {
    let g = &rep.graph;
    let n = w.power();
    let max_degree = samples.iter().map(CoreElement::degree).max().unwrap_or(0);
    let need = w.depth + n + max_degree;
    if rep.depth < need {
        return Err(Error::DepthMismatch {
            have: rep.depth,
            need,
        });
    }
    for z in samples {
        if let Some(t) = z.terms().find(|t| t.left.source() != w.base) {
            return Err(Error::SampleOutsideIdeal(format!(
                "term {} does not start at the cycle vertex {}",
                t.display(g),
                g.vertex_name(w.base)
            )));
        }
    }
    let v_elem = CoreElement::from_terms(
        g,
        w.terms
            .iter()
            .map(|t| PathPairTerm::new(t.left.clone(), t.right.clone(), t.coeff.clone()))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let v = evaluate(rep, &v_elem)?;
    let v_adj = v.transpose();
    let split: Vec<Option<(usize, usize)>> = rep
        .basis
        .iter()
        .map(|p| cycle_decomposition(g, p, w.base, n))
        .collect();
    let iso_mask: Vec<bool> = split
        .iter()
        .map(|s| matches!(s, Some((gl, m)) if *m >= 1 && *gl <= w.depth))
        .collect();
    let z_mask: Vec<bool> = split
        .iter()
        .map(|s| matches!(s, Some((gl, m)) if m * n >= n + max_degree && *gl <= w.depth))
        .collect();
    let isometry_deviation = v_adj
        .mul(&v)
        .sub(&SparseMatrix::identity(rep.dim()))
        .restrict_columns(&iso_mask)
        .frobenius();
    let mut per_sample = Vec::with_capacity(samples.len());
    for z in samples {
        let lhs = v.mul(&evaluate(rep, z)?).mul(&v_adj);
        let rhs = evaluate(rep, &beta_power(g, z, n)?)?;
        per_sample.push(lhs.sub(&rhs).restrict_columns(&z_mask).frobenius());
    }
    let max_sample_deviation = per_sample.iter().copied().fold(0.0, f64::max);
    Ok(WitnessReport {
        isometry_deviation,
        max_sample_deviation,
        per_sample,
        isometry_columns: iso_mask.iter().filter(|&&b| b).count(),
        sample_columns: z_mask.iter().filter(|&&b| b).count(),
        passed: isometry_deviation <= TOLERANCE && max_sample_deviation <= TOLERANCE,
    })
}

fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Surd {
    let mut num = rng.random_range(-5i64..=5);
    if num == 0 {
        num = 1;
    }
    let q = BigRational::new(BigInt::from(num), BigInt::from(rng.random_range(1i64..=4)));
    if rng.random_bool(0.3) {
        Surd::q_sqrt(q, *[2u64, 3, 5].choose(rng).expect("nonempty"))
    } else {
        Surd::rational(q)
    }
}

/// Random core elements with one to three matrix-unit terms of degree at most `max_degree`.
pub fn random_core_samples<R: Rng + ?Sized>(
    g: &Graph,
    count: usize,
    max_degree: usize,
    rng: &mut R,
) -> Result<Vec<CoreElement>> {
    g.require_no_sinks()?;
    let vertices: Vec<VertexIx> = g.vertices().collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let terms = rng.random_range(1..=3);
        let mut parts = Vec::with_capacity(terms);
        for _ in 0..terms {
            let len = rng.random_range(0..=max_degree);
            let v = *vertices.choose(rng).expect("nonempty graph");
            let paths = paths_from(g, v, len);
            let left = paths.choose(rng).expect("no sinks").clone();
            let right = paths.choose(rng).expect("no sinks").clone();
            parts.push(PathPairTerm::new(left, right, random_coefficient(rng))?);
        }
        let x = CoreElement::from_terms(g, parts)?;
        if !x.is_zero() {
            out.push(x);
        }
    }
    Ok(out)
}

/// `‖x‖` in the truncated representation, by power iteration.
pub fn operator_norm(rep: &TruncatedRep, x: &CoreElement) -> Result<f64> {
    Ok(evaluate(rep, x)?.operator_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dynamics::inner_witness;
    use crate::graph::Cycle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(g: &Graph, l: &str, r: &str) -> CoreElement {
        CoreElement::matrix_unit(g, Path::parse(g, l).unwrap(), Path::parse(g, r).unwrap()).unwrap()
    }

    #[test]
    fn basis_examples() {
        let rep = build_rep(&corpus::single_loop(), 3).unwrap();
        let names: Vec<String> = rep.basis().iter().map(|p| p.display(rep.graph())).collect();
        assert_eq!(names, ["v", "e", "e.e", "e.e.e"]);
        assert_eq!(build_rep(&corpus::cuntz(2), 2).unwrap().dim(), 7);
        let g = corpus::example5();
        let rep = build_rep(&g, 2).unwrap();
        let names: Vec<String> = rep.basis().iter().map(|p| p.display(&g)).collect();
        assert_eq!(names, ["v", "w", "f", "e", "e.f", "e.e"]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = corpus::cuntz(2);
        assert_eq!(
            build_rep_with_cap(&g, 4, 30).unwrap_err(),
            Error::CapExceeded { dim: 31, cap: 30 }
        );
        assert!(build_rep_with_cap(&g, 4, 31).is_ok());
        let sink = Graph::parse_text("a: v > w").unwrap();
        assert!(matches!(build_rep(&sink, 2), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn ck_relations_on_interior() {
        for entry in corpus::corpus() {
            for depth in 2..=4 {
                let r = check_ck(&build_rep(&entry.graph, depth).unwrap());
                assert!(r.passed, "{} at N={depth}: {r:?}", entry.name);
            }
        }
        let r = check_ck(&build_rep(&corpus::cuntz(2), 3).unwrap());
        assert_eq!(r.ck2_boundary, 1.0);
    }

    #[test]
    fn evaluate_examples() {
        let g = corpus::single_loop();
        let rep = build_rep(&g, 2).unwrap();
        let m = evaluate(&rep, &unit(&g, "e", "e")).unwrap();
        assert_eq!(m.to_dense(), vec![
            vec![0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]);
        assert!(evaluate(&rep, &CoreElement::zero(&g)).unwrap().is_zero());
        let g = corpus::example5();
        let rep = build_rep(&g, 2).unwrap();
        let pw = evaluate(&rep, &CoreElement::vertex_projection(&g, g.vertex("w").unwrap())).unwrap();
        let diag: Vec<f64> = (0..rep.dim()).map(|i| pw.get(i, i)).collect();
        assert_eq!(diag, [0.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let other = corpus::cuntz(2);
        assert_eq!(
            evaluate(&rep, &CoreElement::unit(&other)).unwrap_err(),
            Error::FingerprintMismatch
        );
    }

    #[test]
    fn generator_matrices_agree_with_evaluate() {
        let g = corpus::example4();
        let rep = build_rep(&g, 3).unwrap();
        let e = g.edge("a").unwrap();
        let s = rep.generator(Generator::S(e));
        let ss = s.mul(&s.transpose()).to_f64();
        assert_eq!(ss, evaluate(&rep, &unit(&g, "a", "a")).unwrap());
    }

    #[test]
    fn beta_examples() {
        let g = corpus::cuntz(2);
        let rep = build_rep(&g, 4).unwrap();
        let r = check_beta(&rep, &[CoreElement::unit(&g)]).unwrap();
        assert!(r.max_deviation <= TOLERANCE);
        let g = corpus::single_loop();
        let rep = build_rep(&g, 4).unwrap();
        assert_eq!(check_beta(&rep, &[CoreElement::unit(&g)]).unwrap().max_deviation, 0.0);
        let g = corpus::example4();
        let rep = build_rep(&g, 4).unwrap();
        let pv = CoreElement::vertex_projection(&g, g.vertex("v").unwrap());
        assert!(check_beta(&rep, &[pv]).unwrap().passed);
        let deep = unit(&g, "c.a.c", "c.b.c");
        assert_eq!(
            check_beta(&rep, &[deep]).unwrap_err(),
            Error::DegreeTooHigh { degree: 3, bound: 2 }
        );
    }

    #[test]
    fn random_samples_pass_beta() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for entry in corpus::corpus() {
            let rep = build_rep(&entry.graph, 4).unwrap();
            let samples = random_core_samples(&entry.graph, 10, 2, &mut rng).unwrap();
            let r = check_beta(&rep, &samples).unwrap();
            assert!(r.passed, "{}: {:?}", entry.name, r.per_sample);
        }
    }

    #[test]
    fn gauge_expectation_examples() {
        let g = corpus::single_loop();
        let rep = build_rep(&g, 3).unwrap();
        let p = |s: &str| Path::parse(&g, s).unwrap();
        let mut f = FormalSum::new();
        f.insert((p("e"), p("v")), Surd::one());
        assert!(gauge_expectation(&rep, &f).unwrap().is_zero());
        let mut f = FormalSum::new();
        f.insert((p("e"), p("e")), Surd::one());
        f.insert((p("e.e"), p("e")), Surd::integer(5));
        assert_eq!(gauge_expectation(&rep, &f).unwrap(), unit(&g, "e", "e"));
        let mut f = FormalSum::new();
        f.insert((p("e.e.e.e"), p("v")), Surd::one());
        assert!(matches!(gauge_expectation(&rep, &f), Err(Error::DegreeTooHigh { .. })));
    }

    #[test]
    fn norms_of_beta_images() {
        let g = corpus::example4();
        let rep = build_rep(&g, 4).unwrap();
        for (l, r) in [("a", "b"), ("c", "c"), ("v", "v"), ("c.a", "c.b")] {
            let x = beta_apply(&g, &unit(&g, l, r)).unwrap();
            assert!((operator_norm(&rep, &x).unwrap() - 1.0).abs() <= TOLERANCE, "{l},{r}");
        }
    }

    #[test]
    fn witness_on_single_loop() {
        let g = corpus::single_loop();
        let w = inner_witness(&g, &Cycle::from_ids(&g, &["e"]).unwrap(), 4).unwrap();
        let rep = build_rep(&g, 6).unwrap();
        let samples = [CoreElement::unit(&g), unit(&g, "e", "e")];
        let r = check_inner_witness(&rep, &w, &samples).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.sample_columns > 0 && r.isometry_columns > 0);
    }

    #[test]
    fn witness_on_two_cycle() {
        let g = corpus::plain_two_cycle();
        let w = inner_witness(&g, &Cycle::from_ids(&g, &["e1", "e2"]).unwrap(), 4).unwrap();
        let v = g.vertex("v").unwrap();
        let rep = build_rep(&g, 6).unwrap();
        let r = check_inner_witness(&rep, &w, &[CoreElement::vertex_projection(&g, v)]).unwrap();
        assert!(r.passed, "{r:?}");
        let samples = [CoreElement::vertex_projection(&g, v), unit(&g, "e2.e1", "e2.e1")];
        let r = check_inner_witness(&build_rep(&g, 8).unwrap(), &w, &samples).unwrap();
        assert!(r.passed, "{r:?}");
        let outside = CoreElement::vertex_projection(&g, g.vertex("w").unwrap());
        assert!(matches!(
            check_inner_witness(&rep, &w, &[outside]),
            Err(Error::SampleOutsideIdeal(_))
        ));
        let shallow = build_rep(&g, 5).unwrap();
        assert_eq!(
            check_inner_witness(&shallow, &w, &samples).unwrap_err(),
            Error::DepthMismatch { have: 5, need: 8 }
        );
    }

    #[test]
    fn witness_with_exits() {
        // entryless loop at w with an exit to a second loop
        let g = Graph::parse_text("e: w > w\nx: w > u\nf: u > u").unwrap();
        let w = inner_witness(&g, &Cycle::from_ids(&g, &["e"]).unwrap(), 3).unwrap();
        for (right, sum) in w.right_factor_sums() {
            assert!(sum <= BigRational::from_integer(1.into()), "{}", right.display(&g));
        }
        let rep = build_rep(&g, 6).unwrap();
        let samples = [
            CoreElement::vertex_projection(&g, g.vertex("w").unwrap()),
            unit(&g, "e", "e"),
            unit(&g, "x", "e"),
            unit(&g, "x.e", "e.e"),
        ];
        let r = check_inner_witness(&rep, &w, &samples).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
