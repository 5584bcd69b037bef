//! PL moves on flag complexes: stellar edge subdivision and edge contraction,
//! with move sequences, validity gates and net-subdivision accounting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex, VertexId};
use crate::rng::SplitMix64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("{0} is not an edge of the complex")]
    NotAnEdge(Face),
    #[error("vertex {0} is already present")]
    VertexAlreadyPresent(VertexId),
    #[error("link condition fails at {0}: contraction would change the PL type")]
    LinkConditionFailed(Face),
    #[error("surviving vertex {vertex} is not an endpoint of {edge}")]
    SurvivorNotInEdge { edge: Face, vertex: VertexId },
    #[error("no valid move available")]
    NoValidMove,
    #[error("complex is not flag; random walks require flag complexes")]
    NotFlag,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Subdivide,
    Contract,
}

/// One move. `vertex` is the fresh vertex for a subdivision and the surviving
/// vertex for a contraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub edge: Face,
    pub vertex: VertexId,
}

impl Move {
    pub fn subdivide(edge: Face, fresh: VertexId) -> Self {
        Move {
            kind: MoveKind::Subdivide,
            edge,
            vertex: fresh,
        }
    }

    pub fn contract(edge: Face, survivor: VertexId) -> Self {
        Move {
            kind: MoveKind::Contract,
            edge,
            vertex: survivor,
        }
    }
}

fn require_edge(complex: &SimplicialComplex, edge: &Face) -> Result<(), MoveError> {
    if edge.cardinality() != 2 || !complex.contains_face(edge) {
        return Err(MoveError::NotAnEdge(edge.clone()));
    }
    Ok(())
}

/// Stellar subdivision of the edge e = {a, b} with the fresh vertex v: faces
/// containing e are removed; for each face G in lk(e) the faces {v} ∪ G,
/// {v,a} ∪ G and {v,b} ∪ G appear. f_0 grows by exactly one.
pub fn edge_subdivide(
    complex: &SimplicialComplex,
    edge: &Face,
    fresh: VertexId,
) -> Result<SimplicialComplex, MoveError> {
    require_edge(complex, edge)?;
    if complex.vertices().any(|v| v == fresh) {
        return Err(MoveError::VertexAlreadyPresent(fresh));
    }
    let a = edge.vertices()[0];
    let b = edge.vertices()[1];
    let mut facets = Vec::with_capacity(complex.facet_count() * 2);
    for facet in complex.facets() {
        if edge.is_subset_of(facet) {
            facets.push(facet.without(a).with(fresh));
            facets.push(facet.without(b).with(fresh));
        } else {
            facets.push(facet.clone());
        }
    }
    Ok(SimplicialComplex::from_facets(facets)?)
}

/// Link condition at the edge {a, b}: lk(a) ∩ lk(b) = lk(ab). On flag
/// complexes this always holds; it is the validity gate for contractions in
/// general.
pub fn link_condition(complex: &SimplicialComplex, edge: &Face) -> Result<bool, MoveError> {
    require_edge(complex, edge)?;
    let a = Face::single(edge.vertices()[0]);
    let b = Face::single(edge.vertices()[1]);
    let lk_a = complex.link(&a)?;
    let lk_b = complex.link(&b)?;
    let lk_edge = complex.link(edge)?;
    Ok(lk_a.intersection(&lk_b) == lk_edge)
}

/// Contract the edge, keeping the smaller label.
pub fn edge_contract(
    complex: &SimplicialComplex,
    edge: &Face,
) -> Result<SimplicialComplex, MoveError> {
    let survivor = edge.vertices()[0].min(edge.vertices()[1]);
    edge_contract_into(complex, edge, survivor)
}

/// Contract the edge, keeping the named endpoint.
pub fn edge_contract_into(
    complex: &SimplicialComplex,
    edge: &Face,
    survivor: VertexId,
) -> Result<SimplicialComplex, MoveError> {
    if !link_condition(complex, edge)? {
        return Err(MoveError::LinkConditionFailed(edge.clone()));
    }
    contract_raw(complex, edge, survivor)
}

/// The contraction face map without the link-condition gate. Used internally
/// when replaying validated paths on ambient complexes.
pub(crate) fn contract_raw(
    complex: &SimplicialComplex,
    edge: &Face,
    survivor: VertexId,
) -> Result<SimplicialComplex, MoveError> {
    require_edge(complex, edge)?;
    if !edge.contains(survivor) {
        return Err(MoveError::SurvivorNotInEdge {
            edge: edge.clone(),
            vertex: survivor,
        });
    }
    let gone = edge.without(survivor).vertices()[0];
    let facets: Vec<Face> = complex
        .facets()
        .map(|f| {
            if f.contains(gone) {
                f.without(gone).with(survivor)
            } else {
                f.clone()
            }
        })
        .collect();
    Ok(SimplicialComplex::from_facets(facets)?)
}

/// Apply one recorded move.
pub fn apply_move(complex: &SimplicialComplex, mv: &Move) -> Result<SimplicialComplex, MoveError> {
    match mv.kind {
        MoveKind::Subdivide => edge_subdivide(complex, &mv.edge, mv.vertex),
        MoveKind::Contract => edge_contract_into(complex, &mv.edge, mv.vertex),
    }
}

/// An ordered list of moves applied to a starting complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSequence {
    pub start: SimplicialComplex,
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn new(start: SimplicialComplex) -> Self {
        MoveSequence {
            start,
            moves: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// All intermediate complexes: index i is the complex after i moves, so
    /// the list starts with `start` and has len() + 1 entries.
    pub fn intermediates(&self) -> Result<Vec<SimplicialComplex>, MoveError> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(self.start.clone());
        for mv in &self.moves {
            let next = apply_move(out.last().unwrap(), mv)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<SimplicialComplex, MoveError> {
        Ok(self.intermediates()?.pop().unwrap())
    }

    /// True iff every intermediate complex (including the endpoints) is flag.
    pub fn all_intermediates_flag(&self) -> Result<bool, MoveError> {
        Ok(self.intermediates()?.iter().all(SimplicialComplex::is_flag))
    }

    /// Subdivisions minus contractions. For a valid sequence this equals both
    /// the change in f_0 and the change in h_1.
    pub fn net_subdivision_count(&self) -> Result<i64, MoveError> {
        self.intermediates()?; // validity
        Ok(self
            .moves
            .iter()
            .map(|m| match m.kind {
                MoveKind::Subdivide => 1,
                MoveKind::Contract => -1,
            })
            .sum())
    }
}

/// Contractions that keep the complex flag. The link condition is automatic
/// on flag complexes, but is still checked for robustness.
pub fn valid_contractions(complex: &SimplicialComplex) -> Vec<Face> {
    complex
        .edges()
        .into_iter()
        .filter(|e| {
            link_condition(complex, e).unwrap_or(false)
                && edge_contract(complex, e).is_ok_and(|k| k.is_flag())
        })
        .collect()
}

/// Reproducible random walk through flag complexes. Subdivisions are chosen
/// over contractions at 60:40 whenever both kinds are available.
pub fn random_flag_walk(
    start: &SimplicialComplex,
    steps: usize,
    seed: u64,
) -> Result<MoveSequence, MoveError> {
    if !start.is_flag() {
        return Err(MoveError::NotFlag);
    }
    let mut rng = SplitMix64::new(seed);
    let mut seq = MoveSequence::new(start.clone());
    let mut current = start.clone();
    for _ in 0..steps {
        let sub_edges = current.edges();
        if sub_edges.is_empty() {
            return Err(MoveError::NoValidMove);
        }
        let con_edges = valid_contractions(&current);
        let subdivide = con_edges.is_empty() || rng.next_f64() < 0.6;
        let mv = if subdivide {
            let e = sub_edges[rng.next_below(sub_edges.len())].clone();
            Move::subdivide(e, current.fresh_vertex())
        } else {
            let e = con_edges[rng.next_below(con_edges.len())].clone();
            let survivor = e.vertices()[0].min(e.vertices()[1]);
            Move::contract(e, survivor)
        };
        current = apply_move(&current, &mv)?;
        debug_assert!(current.is_flag());
        seq.moves.push(mv);
    }
    Ok(seq)
}
