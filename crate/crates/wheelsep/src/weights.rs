//! Exact-rational vertex weightings, heavy components, balanced separators,
//! and separator certificates with their verifier.
//!
//! "Heavy" is a strict comparison against one half of the total weight, so all
//! arithmetic is exact rational arithmetic over big integers. There is no
//! tolerance parameter anywhere.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::graph::{Graph, Vertex, VertexSet};
use crate::{Error, Result};

pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn one_half() -> Rational {
    rat(1, 2)
}

/// Formats as `p/q` in lowest terms with positive denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer; the value must be nonnegative.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Precondition(format!("malformed rational {s:?}")))
    };
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom.is_zero() {
                return Err(Error::Precondition(format!("zero denominator in {s:?}")));
            }
            Rational::new(parse_int(p)?, denom)
        }
        None => Rational::from(parse_int(s)?),
    };
    if r.is_negative() {
        return Err(Error::Precondition(format!("negative rational {s:?}")));
    }
    Ok(r)
}

/// A nonnegative rational weight for every vertex of an associated graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    weights: BTreeMap<Vertex, Rational>,
}

impl Weighting {
    /// The weight map must cover exactly the vertices of `g`, all nonnegative.
    pub fn new(g: &Graph, weights: BTreeMap<Vertex, Rational>) -> Result<Self> {
        if weights.len() != g.vertex_count() || !weights.keys().all(|&v| g.contains_vertex(v)) {
            return Err(Error::WeightDomainMismatch);
        }
        if let Some((&v, _)) = weights.iter().find(|(_, r)| r.is_negative()) {
            return Err(Error::NegativeWeight(v));
        }
        Ok(Weighting { weights })
    }

    /// Weight 1 on every vertex.
    pub fn unit(g: &Graph) -> Self {
        Weighting {
            weights: g.vertices().map(|v| (v, Rational::one())).collect(),
        }
    }

    /// Weight 0 on every vertex (the trivial weighting).
    pub fn zero(g: &Graph) -> Self {
        Weighting {
            weights: g.vertices().map(|v| (v, Rational::zero())).collect(),
        }
    }

    pub fn get(&self, v: Vertex) -> &Rational {
        self.weights
            .get(&v)
            .unwrap_or_else(|| panic!("vertex {v} not in weighting"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &Rational)> {
        self.weights.iter().map(|(&v, r)| (v, r))
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.total().is_zero()
    }

    pub fn is_normal(&self) -> bool {
        self.total().is_one()
    }

    pub fn weight_of(&self, set: &VertexSet) -> Rational {
        set.iter().map(|v| self.get(*v)).sum()
    }

    /// Scales so the total becomes exactly 1. Proportions are preserved.
    pub fn normalize(&self) -> Result<Weighting> {
        let total = self.total();
        if total.is_zero() {
            return Err(Error::TrivialWeighting);
        }
        Ok(Weighting {
            weights: self
                .weights
                .iter()
                .map(|(&v, r)| (v, r / &total))
                .collect(),
        })
    }

    /// Restriction to a vertex subset (for induced subgraphs).
    pub fn restrict(&self, set: &VertexSet) -> Weighting {
        Weighting {
            weights: self
                .weights
                .iter()
                .filter(|(v, _)| set.contains(v))
                .map(|(&v, r)| (v, r.clone()))
                .collect(),
        }
    }
}

/// The unique component of `G - s` with weight strictly above 1/2, if any.
/// Requires a normal weighting; strict exact comparison.
pub fn heavy_component(g: &Graph, w: &Weighting, s: &VertexSet) -> Result<Option<VertexSet>> {
    if !w.is_normal() {
        return Err(Error::NonNormalWeighting);
    }
    let half = one_half();
    for comp in g.without(s).components() {
        if w.weight_of(&comp) > half {
            return Ok(Some(comp));
        }
    }
    Ok(None)
}

/// True iff no component of `G - s` carries more than half the total weight.
/// Non-normal weightings are normalized internally; the trivial weighting
/// makes every set a balanced separator.
pub fn is_balanced_separator(g: &Graph, w: &Weighting, s: &VertexSet) -> bool {
    if w.is_trivial() {
        return true;
    }
    let wn = w.normalize().expect("non-trivial weighting normalizes");
    heavy_component(g, &wn, s)
        .expect("normalized weighting")
        .is_none()
}

/// Which branch of the construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// No separator needed: no component is heavy.
    Empty,
    /// Separator dominated by two vertices.
    TwoVertices,
    /// Separator dominated by the neighbourhood of a heavy component plus one
    /// vertex.
    NeighborBound,
    /// Small separator inside the cycle from the contraction argument.
    CycleSmall,
    /// Bag of a width-2 tree decomposition.
    Tw2,
    /// Fan case: separator dominated by a path neighbourhood.
    FanDominated,
}

/// A balanced separator together with its evidence: either a small dominating
/// set or an explicit size bound, never both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorCertificate {
    pub separator: VertexSet,
    pub route: Route,
    pub dominators: Option<VertexSet>,
    pub size_bound: Option<usize>,
}

impl SeparatorCertificate {
    pub fn empty() -> Self {
        SeparatorCertificate {
            separator: VertexSet::new(),
            route: Route::Empty,
            dominators: None,
            size_bound: None,
        }
    }

    pub fn dominated(route: Route, separator: VertexSet, dominators: VertexSet) -> Self {
        SeparatorCertificate {
            separator,
            route,
            dominators: Some(dominators),
            size_bound: None,
        }
    }

    pub fn sized(route: Route, separator: VertexSet, size_bound: usize) -> Self {
        SeparatorCertificate {
            separator,
            route,
            dominators: None,
            size_bound: Some(size_bound),
        }
    }

    /// Shape invariant: exactly one kind of evidence, except the empty route
    /// which carries none and an empty separator.
    pub fn shape_ok(&self) -> bool {
        match self.route {
            Route::Empty => {
                self.separator.is_empty() && self.dominators.is_none() && self.size_bound.is_none()
            }
            _ => self.dominators.is_some() != self.size_bound.is_some(),
        }
    }
}

/// One checked clause of a certificate verification.
#[derive(Debug, Clone)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Re-derived verification result; never trusts route-specific reasoning.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub clauses: Vec<Clause>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks a certificate against the graph and weighting from scratch:
/// (a) the separator is balanced, (b) dominator evidence has at most `ell`
/// dominators and the separator lies in their closed neighbourhood, or
/// (c) the separator size respects the claimed bound and the bound respects
/// `(ell - 1)^2`.
///
/// `ell >= 3` for wheel routes; the empty and fan routes accept `ell >= 2`.
pub fn verify_certificate(
    g: &Graph,
    w: &Weighting,
    cert: &SeparatorCertificate,
    ell: u32,
) -> Result<VerificationReport> {
    let min_ell = match cert.route {
        Route::Empty | Route::FanDominated => 2,
        _ => 3,
    };
    if ell < min_ell {
        return Err(Error::Precondition(format!(
            "ell = {ell} below minimum {min_ell} for route {:?}",
            cert.route
        )));
    }
    let mut clauses = Vec::new();

    clauses.push(Clause {
        name: "shape",
        passed: cert.shape_ok(),
        detail: "exactly one evidence kind (none for the empty route)".into(),
    });

    let in_graph = cert.separator.iter().all(|&v| g.contains_vertex(v));
    clauses.push(Clause {
        name: "separator-vertices",
        passed: in_graph,
        detail: "separator vertices belong to the graph".into(),
    });

    let balanced = in_graph && is_balanced_separator(g, w, &cert.separator);
    clauses.push(Clause {
        name: "balanced",
        passed: balanced,
        detail: "no component of G - S is heavy".into(),
    });

    if let Some(doms) = &cert.dominators {
        let doms_ok = doms.iter().all(|&v| g.contains_vertex(v));
        let count_ok = doms.len() <= ell as usize;
        let covered = doms_ok
            && g.closed_neighborhood(doms)
                .map(|nh| cert.separator.is_subset(&nh))
                .unwrap_or(false);
        clauses.push(Clause {
            name: "domination",
            passed: doms_ok && count_ok && covered,
            detail: format!("{} dominators, limit {ell}", doms.len()),
        });
    }

    if let Some(bound) = cert.size_bound {
        let limit = ((ell - 1) * (ell - 1)) as usize;
        clauses.push(Clause {
            name: "size",
            passed: cert.separator.len() <= bound && bound <= limit,
            detail: format!(
                "|S| = {}, bound {bound}, limit {limit}",
                cert.separator.len()
            ),
        });
    }

    Ok(VerificationReport { clauses })
}
