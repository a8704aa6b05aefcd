//! Closed 4-manifolds as gluing graphs of pieces.
//!
//! The signature is computed twice. The L2 route sums `σ_L2` of the pieces
//! and needs nothing about the cusps; the Novikov route sums the topological
//! signatures of the truncated pieces, each carrying its boundary defects.
//! Every glued pair of cusps is orientation-reversing, so the defects cancel
//! edge by edge and the two routes agree exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flat_catalog::{glueable, BoundaryClass, FlatConvention, Sign};
use crate::pieces::{GeometryTag, Piece, PieceViolation};
use crate::rational::{self, int, Rational};

/// A cusp slot: `(piece index, cusp index)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub piece: usize,
    pub cusp: usize,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "piece {} cusp {}", self.piece, self.cusp)
    }
}

/// Unordered pair of glued slots, serialized as `[p, c, p', c']`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 4]", into = "[usize; 4]")]
pub struct Edge(pub Slot, pub Slot);

impl Edge {
    pub fn new(piece_a: usize, cusp_a: usize, piece_b: usize, cusp_b: usize) -> Edge {
        Edge(Slot { piece: piece_a, cusp: cusp_a }, Slot { piece: piece_b, cusp: cusp_b })
    }
}

impl From<[usize; 4]> for Edge {
    fn from(v: [usize; 4]) -> Edge {
        Edge::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Edge> for [usize; 4] {
    fn from(e: Edge) -> [usize; 4] {
        [e.0.piece, e.0.cusp, e.1.piece, e.1.cusp]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assembly {
    pub pieces: Vec<Piece>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoPieces,
    Piece { piece: usize, label: String, violation: PieceViolation },
    SlotOutOfRange { edge: usize, slot: Slot },
    DegenerateEdge { edge: usize, slot: Slot },
    SlotReused { slot: Slot, edges: Vec<usize> },
    UnmatchedCusp { slot: Slot, cusp: BoundaryClass },
    NotGlueable { edge: usize, a: BoundaryClass, b: BoundaryClass },
    Disconnected { components: usize },
    NonIntegralSignature(Rational),
    Parity { chi: i64, sigma: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoPieces => write!(f, "assembly has no pieces"),
            Violation::Piece { piece, label, violation } => write!(f, "piece {piece} ({label}): {violation}"),
            Violation::SlotOutOfRange { edge, slot } => write!(f, "edge {edge}: {slot} does not exist"),
            Violation::DegenerateEdge { edge, slot } => write!(f, "edge {edge} glues {slot} to itself"),
            Violation::SlotReused { slot, edges } => write!(f, "{slot} is used by edges {edges:?}"),
            Violation::UnmatchedCusp { slot, cusp } => write!(f, "unmatched cusp: {slot} ({cusp})"),
            Violation::NotGlueable { edge, a, b } => {
                write!(f, "edge {edge}: {a} and {b} are not orientation-reversing diffeomorphic")
            }
            Violation::Disconnected { components } => write!(f, "gluing graph has {components} components"),
            Violation::NonIntegralSignature(s) => {
                write!(f, "signature {} is not an integer", rational::display(s))
            }
            Violation::Parity { chi, sigma } => write!(f, "chi = {chi} and sigma = {sigma} differ in parity"),
        }
    }
}

impl Assembly {
    pub fn new(pieces: Vec<Piece>, edges: Vec<Edge>, label: impl Into<String>) -> Assembly {
        Assembly { pieces, edges, label: label.into() }
    }

    fn cusp(&self, slot: Slot) -> Option<BoundaryClass> {
        self.pieces.get(slot.piece).and_then(|p| p.cusps.get(slot.cusp)).copied()
    }

    /// Every piece reversed; the gluing pattern is unchanged.
    pub fn reverse_orientation(&self) -> Assembly {
        Assembly {
            pieces: self.pieces.iter().map(Piece::reverse_orientation).collect(),
            edges: self.edges.clone(),
            label: self.label.clone(),
        }
    }
}

pub fn validate_assembly(a: &Assembly) -> Vec<Violation> {
    let mut out = Vec::new();
    if a.pieces.is_empty() {
        out.push(Violation::NoPieces);
        return out;
    }
    for (i, p) in a.pieces.iter().enumerate() {
        for violation in p.validate() {
            out.push(Violation::Piece { piece: i, label: p.label.clone(), violation });
        }
    }

    let mut uses: BTreeMap<Slot, Vec<usize>> = BTreeMap::new();
    let mut parent: Vec<usize> = (0..a.pieces.len()).collect();
    for (i, edge) in a.edges.iter().enumerate() {
        let ends = [edge.0, edge.1];
        let mut in_range = true;
        for slot in ends {
            if a.cusp(slot).is_none() {
                out.push(Violation::SlotOutOfRange { edge: i, slot });
                in_range = false;
            }
        }
        if !in_range {
            continue;
        }
        if edge.0 == edge.1 {
            out.push(Violation::DegenerateEdge { edge: i, slot: edge.0 });
            uses.entry(edge.0).or_default().push(i);
            continue;
        }
        for slot in ends {
            uses.entry(slot).or_default().push(i);
        }
        let (ca, cb) = (a.cusp(edge.0).unwrap(), a.cusp(edge.1).unwrap());
        if !glueable(ca, cb) {
            out.push(Violation::NotGlueable { edge: i, a: ca, b: cb });
        }
        union(&mut parent, edge.0.piece, edge.1.piece);
    }
    for (slot, edges) in &uses {
        if edges.len() > 1 {
            out.push(Violation::SlotReused { slot: *slot, edges: edges.clone() });
        }
    }
    for (pi, p) in a.pieces.iter().enumerate() {
        for (ci, cusp) in p.cusps.iter().enumerate() {
            let slot = Slot { piece: pi, cusp: ci };
            if !uses.contains_key(&slot) {
                out.push(Violation::UnmatchedCusp { slot, cusp: *cusp });
            }
        }
    }
    let components = (0..a.pieces.len()).filter(|&i| find(&mut parent, i) == i).count();
    if components > 1 {
        out.push(Violation::Disconnected { components });
    }

    if out.is_empty() {
        let chi: i64 = a.pieces.iter().map(|p| p.chi).sum();
        let sigma = l2_sum(a);
        match rational::as_i64(&sigma) {
            None => out.push(Violation::NonIntegralSignature(sigma)),
            Some(s) if (chi - s).rem_euclid(2) != 0 => out.push(Violation::Parity { chi, sigma: s }),
            Some(_) => {}
        }
    }
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

fn ensure_valid(a: &Assembly) -> Result<()> {
    let violations = validate_assembly(a);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(violations))
    }
}

fn l2_sum(a: &Assembly) -> Rational {
    a.pieces.iter().map(Piece::sigma_l2).fold(int(0), |acc, s| acc + s)
}

/// `χ` by additivity (cusp cross-sections have `χ = 0`).
pub fn euler(a: &Assembly) -> Result<i64> {
    ensure_valid(a)?;
    Ok(a.pieces.iter().map(|p| p.chi).sum())
}

pub fn signature_l2_route(a: &Assembly) -> Result<Rational> {
    ensure_valid(a)?;
    Ok(l2_sum(a))
}

pub fn signature_novikov_route(a: &Assembly) -> Result<Rational> {
    signature_novikov_route_with(a, FlatConvention::Reference)
}

pub fn signature_novikov_route_with(a: &Assembly, convention: FlatConvention) -> Result<Rational> {
    ensure_valid(a)?;
    a.pieces.iter().try_fold(int(0), |acc, p| p.sigma_top_with(convention).map(|s| acc + s))
}

/// Defects on the two sides of one glued cusp pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDefect {
    pub edge: Edge,
    pub first: Rational,
    pub second: Rational,
}

impl EdgeDefect {
    pub fn cancels(&self) -> bool {
        &self.first + &self.second == int(0)
    }
}

/// Per-edge defect log; for a valid assembly every entry cancels.
pub fn edge_defects(a: &Assembly) -> Result<Vec<EdgeDefect>> {
    ensure_valid(a)?;
    a.edges
        .iter()
        .map(|&edge| {
            let first = a.cusp(edge.0).expect("validated").defect()?;
            let second = a.cusp(edge.1).expect("validated").defect()?;
            Ok(EdgeDefect { edge, first, second })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Strict,
    EqualityCertified,
    ZeroChi,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub label: String,
    pub geometry: GeometryTag,
    pub orientation: Sign,
    pub chi: i64,
}

/// Why `χ = 3|σ|` is allowed: every piece has `Δ∓ = 0` for the sign of `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub pieces: Vec<CertificateEntry>,
    /// Every piece is F4 or complex hyperbolic (no `χ = 0` product pieces).
    pub f4_complex_only: bool,
}

/// Pieces with `Δ∓ = 0`: complex hyperbolic pieces whose orientation matches
/// `sign`, and pieces with `χ = σ_L2 = 0` (F4 and the Euclidean-factor products).
pub fn equality_certificate(a: &Assembly, sign: Sign) -> Option<Certificate> {
    let mut f4_complex_only = true;
    for p in &a.pieces {
        match p.geometry {
            GeometryTag::ComplexHyperbolic if p.orientation == sign => {}
            GeometryTag::F4 => {}
            GeometryTag::H3xE1 | GeometryTag::H2xE2 | GeometryTag::SLtildexE1 => {
                f4_complex_only = false;
            }
            _ => return None,
        }
    }
    let pieces = a
        .pieces
        .iter()
        .map(|p| CertificateEntry {
            label: p.label.clone(),
            geometry: p.geometry,
            orientation: p.orientation,
            chi: p.chi,
        })
        .collect();
    Some(Certificate { pieces, f4_complex_only })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnosis {
    pub label: String,
    pub chi: i64,
    pub sigma: i64,
    /// `χ - 3|σ|`.
    pub slack: i64,
    pub classification: Classification,
    pub certificate: Option<Certificate>,
    /// False when Klein-base cusps leave only the L2 route available.
    pub novikov_checked: bool,
}

impl Diagnosis {
    pub fn summary_line(&self) -> String {
        format!(
            "label={} chi={} sigma={} slack={} classification={}",
            self.label, self.chi, self.sigma, self.slack, self.classification
        )
    }
}

pub fn diagnose(a: &Assembly) -> Result<Diagnosis> {
    ensure_valid(a)?;
    let chi: i64 = a.pieces.iter().map(|p| p.chi).sum();
    let l2 = l2_sum(a);
    let supported = a.pieces.iter().all(|p| p.cusps.iter().all(|c| !matches!(c, BoundaryClass::NilKlein { .. })));
    if supported {
        let novikov = signature_novikov_route(a)?;
        if novikov != l2 {
            return Err(Error::Internal(format!(
                "{}: L2 route gives {} but Novikov route gives {}",
                a.label,
                rational::display(&l2),
                rational::display(&novikov)
            )));
        }
    }
    let sigma = rational::as_i64(&l2).ok_or_else(|| {
        Error::Internal(format!("{}: signature {} is not an integer", a.label, rational::display(&l2)))
    })?;
    if (chi - sigma).rem_euclid(2) != 0 {
        return Err(Error::Internal(format!("{}: chi {chi} and sigma {sigma} differ in parity", a.label)));
    }
    let slack = chi - 3 * sigma.abs();
    if slack < 0 {
        return Err(Error::Internal(format!("{}: chi {chi} < 3|sigma| with sigma {sigma}", a.label)));
    }
    let (classification, certificate) = if chi == 0 {
        (Classification::ZeroChi, None)
    } else if slack == 0 {
        let certificate = equality_certificate(a, Sign::of(sigma))
            .ok_or_else(|| Error::Internal(format!("{}: equality chi = 3|sigma| without a certificate", a.label)))?;
        (Classification::EqualityCertified, Some(certificate))
    } else {
        (Classification::Strict, None)
    };
    Ok(Diagnosis { label: a.label.clone(), chi, sigma, slack, classification, certificate, novikov_checked: supported })
}
