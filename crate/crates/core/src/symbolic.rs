//! Exact arithmetic in the core `C*(E)^γ`.
//!
//! Elements are finite combinations of matrix units `S_η S_ρ^*` with
//! `|η| = |ρ|` and `s(η) = s(ρ)`. Products are reduced with the first
//! Cuntz-Krieger relation only; the second relation is applied on demand by
//! [`ck2_expand`], since rewriting eagerly multiplies the number of terms.
//!
//! The endomorphism `β_E(z) = T z T^*` uses `T = sum_e d(s(e))^{-1/2} S_e`
//! with `d` the out-degree. The negative exponent is the one that makes `T`
//! an isometry (`T^*T = sum_v d(v) * d(v)^{-1} P_v = 1`) and reproduces
//! `β(x) = P ⊗ x` with `P` the all-`1/n` matrix on the Cuntz algebra `O_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{path_count, paths_from, Fingerprint, Graph, Path, VertexIx};
use crate::scalar::Surd;

/// One summand `coeff * S_left S_right^*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPairTerm {
    pub left: Path,
    pub right: Path,
    pub coeff: Surd,
}

impl PathPairTerm {
    /// Requires `s(left) = s(right)`; lengths may differ.
    pub fn new(left: Path, right: Path, coeff: Surd) -> Result<Self> {
        if left.source() != right.source() {
            return Err(Error::InvalidPath(
                "the two paths of a term must share their source".into(),
            ));
        }
        Ok(PathPairTerm { left, right, coeff })
    }

    /// `|left| - |right|`, the gauge degree of the term.
    pub fn gauge_degree(&self) -> i64 {
        self.left.len() as i64 - self.right.len() as i64
    }

    pub fn display(&self, g: &Graph) -> String {
        format!(
            "{} * S[{}] S*[{}]",
            self.coeff,
            self.left.display(g),
            self.right.display(g)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct TermKey {
    len: usize,
    left: Path,
    right: Path,
}

/// An element of the algebraic core in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct CoreElement {
    terms: BTreeMap<TermKey, Surd>,
    fingerprint: Fingerprint,
}

impl fmt::Debug for CoreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.terms.iter().map(|(k, c)| {
                format!("{c} * S{:?} S*{:?}", k.left.edges(), k.right.edges())
            }))
            .finish()
    }
}

impl CoreElement {
    pub fn zero(g: &Graph) -> Self {
        CoreElement {
            terms: BTreeMap::new(),
            fingerprint: g.fingerprint(),
        }
    }

    pub fn from_terms(g: &Graph, terms: impl IntoIterator<Item = PathPairTerm>) -> Result<Self> {
        let mut out = Self::zero(g);
        for t in terms {
            if t.left.len() != t.right.len() {
                return Err(Error::InvalidArgument(format!(
                    "term {} is not gauge invariant",
                    t.display(g)
                )));
            }
            if t.left.source() != t.right.source() {
                return Err(Error::InvalidPath("terms must share their source".into()));
            }
            out.add_term(t.left, t.right, t.coeff);
        }
        Ok(out)
    }

    /// `P_v`.
    pub fn vertex_projection(g: &Graph, v: VertexIx) -> Self {
        let mut out = Self::zero(g);
        out.add_term(Path::vertex(v), Path::vertex(v), Surd::one());
        out
    }

    /// `sum_v P_v`, the unit.
    pub fn unit(g: &Graph) -> Self {
        let mut out = Self::zero(g);
        for v in g.vertices() {
            out.add_term(Path::vertex(v), Path::vertex(v), Surd::one());
        }
        out
    }

    /// `S_left S_right^*`.
    pub fn matrix_unit(g: &Graph, left: Path, right: Path) -> Result<Self> {
        Self::from_terms(g, [PathPairTerm::new(left, right, Surd::one())?])
    }

    fn add_term(&mut self, left: Path, right: Path, coeff: Surd) {
        if coeff.is_zero() {
            return;
        }
        let key = TermKey {
            len: left.len(),
            left,
            right,
        };
        let slot = self.terms.entry(key.clone()).or_insert_with(Surd::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order `(|η|, η, ρ)`.
    pub fn terms(&self) -> impl Iterator<Item = PathPairTerm> + '_ {
        self.terms.iter().map(|(k, c)| PathPairTerm {
            left: k.left.clone(),
            right: k.right.clone(),
            coeff: c.clone(),
        })
    }

    /// Largest `|η|` among the terms (0 for the zero element).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|k| k.len).max().unwrap_or(0)
    }

    pub fn coefficient(&self, left: &Path, right: &Path) -> Surd {
        let key = TermKey {
            len: left.len(),
            left: left.clone(),
            right: right.clone(),
        };
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    fn same_graph(&self, other: &CoreElement) -> Result<()> {
        if self.fingerprint == other.fingerprint {
            Ok(())
        } else {
            Err(Error::FingerprintMismatch)
        }
    }

    pub fn add(&self, other: &CoreElement) -> Result<CoreElement> {
        self.same_graph(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.left.clone(), k.right.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CoreElement) -> Result<CoreElement> {
        self.add(&other.scale(&Surd::integer(-1)))
    }

    pub fn scale(&self, c: &Surd) -> CoreElement {
        let mut out = CoreElement {
            terms: BTreeMap::new(),
            fingerprint: self.fingerprint,
        };
        for (k, v) in &self.terms {
            out.add_term(k.left.clone(), k.right.clone(), v * c);
        }
        out
    }

    /// Renders one line per term, in the syntax accepted by [`CoreElement::parse`].
    pub fn display(&self, g: &Graph) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut lines = Vec::new();
        for (k, c) in &self.terms {
            for (radicand, q) in c.parts() {
                let part = Surd::q_sqrt(q.clone(), radicand);
                lines.push(format!(
                    "{} * S[{}] S*[{}]",
                    part,
                    k.left.display(g),
                    k.right.display(g)
                ));
            }
        }
        lines.join("\n")
    }

    /// Parses terms `c * S[p1.p2] S*[q1.q2]` separated by newlines or `;`.
    /// The coefficient may be omitted; repeated keys are summed; `0` is the zero element.
    pub fn parse(g: &Graph, text: &str) -> Result<CoreElement> {
        let mut terms = Vec::new();
        for raw in text.split(['\n', ';']) {
            let item = raw.trim();
            if item.is_empty() || item == "0" {
                continue;
            }
            terms.push(parse_term(g, item)?);
        }
        Self::from_terms(g, terms)
    }
}

/// Parses a single term; lengths of the two paths are not checked here.
pub fn parse_term(g: &Graph, item: &str) -> Result<PathPairTerm> {
    let bad = |m: &str| Error::InvalidArgument(format!("term `{item}`: {m}"));
    let start = item.find("S[").ok_or_else(|| bad("missing `S[...]`"))?;
    let coeff_text = item[..start].trim().trim_end_matches('*').trim();
    let coeff: Surd = if coeff_text.is_empty() {
        Surd::one()
    } else {
        coeff_text.parse()?
    };
    let rest = &item[start + 2..];
    let close = rest.find(']').ok_or_else(|| bad("unclosed `S[`"))?;
    let left = Path::parse(g, &rest[..close])?;
    let rest = rest[close + 1..].trim();
    let rest = rest
        .strip_prefix("S*[")
        .ok_or_else(|| bad("missing `S*[...]`"))?;
    let close = rest.find(']').ok_or_else(|| bad("unclosed `S*[`"))?;
    let right = Path::parse(g, &rest[..close])?;
    if !rest[close + 1..].trim().is_empty() {
        return Err(bad("trailing text"));
    }
    PathPairTerm::new(left, right, coeff)
}

/// Product of two matrix units, reduced by `S_e^* S_f = δ_{e,f} P_{s(e)}`.
fn unit_product(g: &Graph, a: (&Path, &Path), b: (&Path, &Path)) -> Option<(Path, Path)> {
    let (eta, rho) = a;
    let (mu, nu) = b;
    if rho.len() <= mu.len() {
        let rest = mu.strip_outer(g, rho)?;
        Some((Path::compose(g, eta, &rest).expect("composable"), nu.clone()))
    } else {
        let rest = rho.strip_outer(g, mu)?;
        Some((eta.clone(), Path::compose(g, nu, &rest).expect("composable")))
    }
}

pub fn multiply(g: &Graph, a: &CoreElement, b: &CoreElement) -> Result<CoreElement> {
    a.same_graph(b)?;
    g.check_fingerprint(a.fingerprint)?;
    let mut out = CoreElement::zero(g);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            if let Some((l, r)) = unit_product(g, (&ka.left, &ka.right), (&kb.left, &kb.right)) {
                out.add_term(l, r, ca * cb);
            }
        }
    }
    Ok(out)
}

/// Term-wise `S_η S_ρ^* ↦ S_ρ S_η^*`; all coefficients are real.
pub fn adjoint(a: &CoreElement) -> CoreElement {
    let mut out = CoreElement {
        terms: BTreeMap::new(),
        fingerprint: a.fingerprint,
    };
    for (k, c) in &a.terms {
        out.add_term(k.right.clone(), k.left.clone(), c.clone());
    }
    out
}

/// `β_E(S_η S_ρ^*) = (d(r(η)) d(r(ρ)))^{-1/2} sum_{s(e)=r(η), s(f)=r(ρ)} S_{eη} S_{fρ}^*`.
pub fn beta_apply(g: &Graph, a: &CoreElement) -> Result<CoreElement> {
    g.check_fingerprint(a.fingerprint)?;
    g.require_no_sinks()?;
    let mut out = CoreElement::zero(g);
    for (k, c) in &a.terms {
        let (rl, rr) = (k.left.range(g), k.right.range(g));
        let weight = Surd::inv_sqrt((g.out_degree(rl) * g.out_degree(rr)) as u64);
        let coeff = c * &weight;
        for &e in g.out_edges(rl) {
            let left = Path::compose(g, &Path::edge(g, e), &k.left).expect("s(e) = r(η)");
            for &f in g.out_edges(rr) {
                let right = Path::compose(g, &Path::edge(g, f), &k.right).expect("s(f) = r(ρ)");
                out.add_term(left.clone(), right, coeff.clone());
            }
        }
    }
    Ok(out)
}

pub fn beta_power(g: &Graph, a: &CoreElement, n: usize) -> Result<CoreElement> {
    let mut x = a.clone();
    for _ in 0..n {
        x = beta_apply(g, &x)?;
    }
    Ok(x)
}

/// Rewrites terms with the second Cuntz-Krieger relation
/// `S_η S_ρ^* = sum_{r(e)=s(η)} S_{ηe} S_{ρe}^*` until every term has length
/// at least `min_len` or sits at a source, where the relation does not apply.
pub fn ck2_expand(g: &Graph, a: &CoreElement, min_len: usize) -> CoreElement {
    let mut out = CoreElement {
        terms: BTreeMap::new(),
        fingerprint: a.fingerprint,
    };
    let mut pending: Vec<(Path, Path, Surd)> = a
        .terms
        .iter()
        .map(|(k, c)| (k.left.clone(), k.right.clone(), c.clone()))
        .collect();
    while let Some((l, r, c)) = pending.pop() {
        let s = l.source();
        if l.len() >= min_len || g.in_degree(s) == 0 {
            out.add_term(l, r, c);
            continue;
        }
        for &e in g.in_edges(s) {
            let pe = Path::edge(g, e);
            pending.push((
                Path::compose(g, &l, &pe).expect("r(e) = s(η)"),
                Path::compose(g, &r, &pe).expect("r(e) = s(ρ)"),
                c.clone(),
            ));
        }
    }
    out
}

/// Equality modulo the second Cuntz-Krieger relation.
pub fn ck2_equal(g: &Graph, a: &CoreElement, b: &CoreElement) -> Result<bool> {
    a.same_graph(b)?;
    let depth = a.degree().max(b.degree());
    Ok(ck2_expand(g, a, depth) == ck2_expand(g, b, depth))
}

/// `k_{n,v}`: the number of paths of length `n` with source `v`, i.e. the size of the
/// matrix block `F_n(v)`.
pub fn core_dims(g: &Graph, n: u32) -> Vec<(VertexIx, BigInt)> {
    let a = path_count(g, n);
    g.vertices()
        .map(|v| {
            let total = a.row(v.0).iter().fold(BigInt::zero(), |acc, x| acc + x);
            (v, total)
        })
        .collect()
}

/// Matrix units spanning `F_n(v)`.
pub fn block_units(g: &Graph, v: VertexIx, n: usize) -> Vec<(Path, Path)> {
    let paths = paths_from(g, v, n);
    let mut out = Vec::with_capacity(paths.len() * paths.len());
    for l in &paths {
        for r in &paths {
            out.push((l.clone(), r.clone()));
        }
    }
    out
}
