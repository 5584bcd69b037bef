//! Bounded search for move paths between PL-homeomorphic flag complexes.
//!
//! States are deduplicated by canonical form. The vertex-count difference is
//! an exact lower bound on the remaining moves (each move changes f_0 by
//! exactly one), so the search deepens iteratively: first paths of the
//! minimum conceivable length, then two more moves at a time. Not-found only
//! means the budget ran out, never that no path exists.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_key, find_isomorphism};
use crate::complex::{SimplicialComplex, VertexId};
use crate::moves::{apply_move, valid_contractions, Move, MoveError, MoveSequence};

use std::collections::BTreeMap;

/// Search limits: longest move sequence considered and total states expanded.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Budget {
    pub max_depth: usize,
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_depth: 6,
            max_states: 200_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SearchStats {
    pub states_expanded: usize,
    pub depth_reached: usize,
}

#[derive(Debug, Error)]
pub enum PathError {
    #[error("no path found within budget ({} states expanded, depth {} reached)", stats.states_expanded, stats.depth_reached)]
    NotFound { stats: SearchStats },
    #[error("inputs must be flag complexes")]
    NotFlag,
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// A successful search: the sequence runs from the first input to a complex
/// isomorphic to the second; `isomorphism` maps the sequence end onto it.
#[derive(Clone, Debug, Serialize)]
pub struct FoundPath {
    pub sequence: MoveSequence,
    pub end: SimplicialComplex,
    pub isomorphism: BTreeMap<VertexId, VertexId>,
    pub stats: SearchStats,
}

struct State {
    complex: SimplicialComplex,
    parent: Option<usize>,
    mv: Option<Move>,
    depth: usize,
}

/// Search for a move path from `from` to (a complex isomorphic to) `to`.
pub fn find_move_path(
    from: &SimplicialComplex,
    to: &SimplicialComplex,
    budget: &Budget,
) -> Result<FoundPath, PathError> {
    if !from.is_flag() || !to.is_flag() {
        return Err(PathError::NotFlag);
    }
    let mut stats = SearchStats::default();
    if let Some(iso) = find_isomorphism(from, to) {
        return Ok(FoundPath {
            sequence: MoveSequence::new(from.clone()),
            end: from.clone(),
            isomorphism: iso,
            stats,
        });
    }

    let target_f0 = to.vertex_count() as i64;
    let gap = (from.vertex_count() as i64 - target_f0).unsigned_abs() as usize;
    if gap > budget.max_depth {
        return Err(PathError::NotFound { stats });
    }

    let mut allowed = gap.max(1);
    if gap == 0 {
        // nonisomorphic with equal f_0 needs at least one subdivide/contract pair
        allowed = 2;
    }
    while allowed <= budget.max_depth {
        match bounded_search(from, to, target_f0, allowed, budget, &mut stats)? {
            Some(found) => return Ok(found),
            None => allowed += 2,
        }
        if stats.states_expanded >= budget.max_states {
            break;
        }
    }
    Err(PathError::NotFound { stats })
}

fn bounded_search(
    from: &SimplicialComplex,
    to: &SimplicialComplex,
    target_f0: i64,
    allowed: usize,
    budget: &Budget,
    stats: &mut SearchStats,
) -> Result<Option<FoundPath>, PathError> {
    let mut states = vec![State {
        complex: from.clone(),
        parent: None,
        mv: None,
        depth: 0,
    }];
    let mut visited: HashMap<Vec<Vec<u32>>, usize> = HashMap::new();
    visited.insert(canonical_key(from), 0);
    let mut queue = std::collections::VecDeque::from([0usize]);

    while let Some(idx) = queue.pop_front() {
        if stats.states_expanded >= budget.max_states {
            return Ok(None);
        }
        stats.states_expanded += 1;
        let depth = states[idx].depth;
        stats.depth_reached = stats.depth_reached.max(depth);
        if depth == allowed {
            continue;
        }
        let current = states[idx].complex.clone();
        let mut candidate_moves: Vec<Move> = Vec::new();
        for e in current.edges() {
            candidate_moves.push(Move::subdivide(e, current.fresh_vertex()));
        }
        for e in valid_contractions(&current) {
            let survivor = e.vertices()[0].min(e.vertices()[1]);
            candidate_moves.push(Move::contract(e, survivor));
        }
        for mv in candidate_moves {
            let next = apply_move(&current, &mv)?;
            let next_depth = depth + 1;
            // exact admissible bound: every remaining move changes f_0 by one
            let remaining = (next.vertex_count() as i64 - target_f0).unsigned_abs() as usize;
            if next_depth + remaining > allowed {
                continue;
            }
            let key = canonical_key(&next);
            if visited.get(&key).is_some_and(|&d| d <= next_depth) {
                continue;
            }
            visited.insert(key, next_depth);
            if next.vertex_count() as i64 == target_f0 {
                if let Some(iso) = find_isomorphism(&next, to) {
                    let mut moves = vec![mv];
                    let mut at = idx;
                    while let Some(parent) = states[at].parent {
                        moves.push(states[at].mv.clone().expect("non-root state has a move"));
                        at = parent;
                    }
                    moves.reverse();
                    let sequence = MoveSequence {
                        start: from.clone(),
                        moves,
                    };
                    debug_assert_eq!(sequence.end().unwrap(), next);
                    stats.depth_reached = stats.depth_reached.max(next_depth);
                    return Ok(Some(FoundPath {
                        sequence,
                        end: next,
                        isomorphism: iso,
                        stats: *stats,
                    }));
                }
            }
            states.push(State {
                complex: next,
                parent: Some(idx),
                mv: Some(mv),
                depth: next_depth,
            });
            queue.push_back(states.len() - 1);
        }
    }
    Ok(None)
}
