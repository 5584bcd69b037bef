//! Cohen-Macaulay certification via the Reisner criterion, the doubly-CM
//! variant, the h-vector antistar/link comparison, and sphere certification.
//!
//! Reisner: K is CM over a field iff for every face F (including the empty
//! face) all reduced homology of lk(F) vanishes below its dimension. The
//! field matters, so every report carries it and nothing claims
//! field-independence.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex, VertexId};
use crate::homology::{reduced_betti, FieldSpec, HomologyError};
use crate::moves::Move;
use crate::vectors::{h_polynomial, Polynomial, VectorsError};

#[derive(Debug, Error)]
pub enum CmError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Vectors(#[from] VectorsError),
}

/// A failed Reisner check: the face whose link has homology below top degree.
#[derive(Clone, Debug, Serialize)]
pub struct CmWitness {
    pub face: Face,
    pub degree: i64,
    pub betti: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CmReport {
    pub field: FieldSpec,
    pub is_cm: bool,
    pub witness: Option<CmWitness>,
}

/// Reisner criterion over the given field.
pub fn is_cohen_macaulay(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Result<CmReport, CmError> {
    if complex.is_void() {
        return Err(CmError::Homology(HomologyError::VoidComplex));
    }
    for face in complex.all_faces() {
        let link = complex.link(&face)?;
        let link_dim = link.dimension().expect("links of faces are nonvoid");
        if link_dim <= -1 {
            continue;
        }
        let betti = reduced_betti(&link, field)?;
        for degree in -1..link_dim {
            let b = betti.betti(degree);
            if b != 0 {
                return Ok(CmReport {
                    field,
                    is_cm: false,
                    witness: Some(CmWitness {
                        face,
                        degree,
                        betti: b,
                    }),
                });
            }
        }
    }
    Ok(CmReport {
        field,
        is_cm: true,
        witness: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub enum DoublyCmFailure {
    /// K itself is not CM.
    BaseNotCm(CmWitness),
    /// Some vertex deletion is not CM.
    AntistarNotCm { vertex: VertexId, witness: CmWitness },
    /// Some vertex deletion drops dimension.
    AntistarDimension {
        vertex: VertexId,
        expected: i64,
        got: i64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublyCmReport {
    pub field: FieldSpec,
    pub is_doubly_cm: bool,
    pub failure: Option<DoublyCmFailure>,
}

/// Doubly CM: K is CM and every vertex deletion is CM of the same dimension.
pub fn is_doubly_cm(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Result<DoublyCmReport, CmError> {
    let base = is_cohen_macaulay(complex, field)?;
    if !base.is_cm {
        return Ok(DoublyCmReport {
            field,
            is_doubly_cm: false,
            failure: base.witness.map(DoublyCmFailure::BaseNotCm),
        });
    }
    let dim = complex.dimension().expect("nonvoid");
    for v in complex.vertices().collect::<Vec<_>>() {
        let ast = complex.antistar(v)?;
        let ast_dim = ast.dimension().unwrap_or(-2);
        if ast_dim != dim {
            return Ok(DoublyCmReport {
                field,
                is_doubly_cm: false,
                failure: Some(DoublyCmFailure::AntistarDimension {
                    vertex: v,
                    expected: dim,
                    got: ast_dim,
                }),
            });
        }
        let report = is_cohen_macaulay(&ast, field)?;
        if !report.is_cm {
            return Ok(DoublyCmReport {
                field,
                is_doubly_cm: false,
                failure: report
                    .witness
                    .map(|w| DoublyCmFailure::AntistarNotCm { vertex: v, witness: w }),
            });
        }
    }
    Ok(DoublyCmReport {
        field,
        is_doubly_cm: true,
        failure: None,
    })
}

/// Comparison of h(link) against h(antistar) at a vertex, together with the
/// split h(K) = h(Ast) + x h(lk) that holds when dim Ast = dim K.
#[derive(Clone, Debug, Serialize)]
pub struct AstLinkReport {
    pub vertex: VertexId,
    pub field: FieldSpec,
    /// Doubly-CM plus dimension hypotheses verified; the inequality is only
    /// asserted when this holds.
    pub hypothesis_ok: bool,
    pub h_complex: Polynomial,
    pub h_antistar: Polynomial,
    pub h_link: Polynomial,
    pub split_ok: bool,
    pub inequality_ok: bool,
}

/// Verify h_i(lk(v)) <= h_i(Ast(v)) and the split h = h_Ast + x h_lk.
pub fn h_ast_link_inequality(
    complex: &SimplicialComplex,
    vertex: VertexId,
    field: FieldSpec,
) -> Result<AstLinkReport, CmError> {
    let doubly = is_doubly_cm(complex, field)?;
    let ast = complex.antistar(vertex)?;
    let link = complex.link(&Face::single(vertex))?;
    let dim_ok = ast.dimension() == complex.dimension();
    let h_complex = h_polynomial(complex)?;
    let h_antistar = h_polynomial(&ast)?;
    let h_link = h_polynomial(&link)?;
    let split_ok = h_complex == &h_antistar + &h_link.shift_up(1);
    let inequality_ok = crate::vectors::poly_ge(&h_antistar, &h_link);
    Ok(AstLinkReport {
        vertex,
        field,
        hypothesis_ok: doubly.is_doubly_cm && dim_ok,
        h_complex,
        h_antistar,
        h_link,
        split_ok,
        inequality_ok,
    })
}

/// Construction history that certifies PL sphere-ness for dimensions where
/// no exact combinatorial check runs. Only PL-preserving constructors exist,
/// so holding a value of this type is the certificate.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SphereProvenance {
    steps: Vec<String>,
}

impl SphereProvenance {
    pub fn cross_polytope(d: usize) -> Self {
        SphereProvenance {
            steps: vec![format!("cross-polytope boundary, d = {d}")],
        }
    }

    pub fn cycle(n: usize) -> Self {
        SphereProvenance {
            steps: vec![format!("{n}-cycle")],
        }
    }

    /// The (-1)-sphere {∅}.
    pub fn empty_sphere() -> Self {
        SphereProvenance {
            steps: vec!["empty-face sphere".to_string()],
        }
    }

    pub fn suspended(&self) -> Self {
        let mut steps = self.steps.clone();
        steps.push("suspension".to_string());
        SphereProvenance { steps }
    }

    /// Edge subdivisions and link-condition contractions preserve PL type.
    pub fn after_move(&self, mv: &Move) -> Self {
        let mut steps = self.steps.clone();
        steps.push(format!("{:?} at {}", mv.kind, mv.edge));
        SphereProvenance { steps }
    }

    pub fn after_walk(&self, steps_taken: usize, seed: u64) -> Self {
        let mut steps = self.steps.clone();
        steps.push(format!("random flag walk, {steps_taken} steps, seed {seed}"));
        SphereProvenance { steps }
    }

    /// Link of a face in a PL sphere is a PL sphere.
    pub fn link_of_face(&self, face: &Face) -> Self {
        let mut steps = self.steps.clone();
        steps.push(format!("link of {face}"));
        SphereProvenance { steps }
    }

    pub fn steps(&self) -> &[String] {
        &self.steps
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereStatus {
    /// Exact combinatorial check passed (dimension <= 2).
    CertifiedSphere,
    /// Built from spheres by PL-preserving constructions.
    CertifiedByProvenance,
    Unknown,
}

/// Exact sphere recognition up to dimension 2; provenance beyond. Homology
/// never certifies here: homology spheres need not be spheres.
pub fn certify_sphere(
    complex: &SimplicialComplex,
    provenance: Option<&SphereProvenance>,
) -> SphereStatus {
    match complex.dimension() {
        None => SphereStatus::Unknown,
        Some(-1) => SphereStatus::CertifiedSphere,
        Some(0) => {
            if complex.vertex_count() == 2 && complex.facet_count() == 2 {
                SphereStatus::CertifiedSphere
            } else {
                SphereStatus::Unknown
            }
        }
        Some(1) => {
            if is_single_cycle(complex) {
                SphereStatus::CertifiedSphere
            } else {
                SphereStatus::Unknown
            }
        }
        Some(2) => {
            if is_closed_two_sphere(complex) {
                SphereStatus::CertifiedSphere
            } else {
                SphereStatus::Unknown
            }
        }
        Some(_) => {
            if provenance.is_some() {
                SphereStatus::CertifiedByProvenance
            } else {
                SphereStatus::Unknown
            }
        }
    }
}

fn is_single_cycle(complex: &SimplicialComplex) -> bool {
    if !complex.is_pure() || complex.dimension() != Some(1) {
        return false;
    }
    let n = complex.vertex_count();
    if complex.facet_count() != n || n < 3 {
        return false;
    }
    let graph = complex.one_skeleton();
    if complex.vertices().any(|v| graph.neighbors(v).len() != 2) {
        return false;
    }
    is_connected(complex)
}

fn is_closed_two_sphere(complex: &SimplicialComplex) -> bool {
    if !complex.is_pure() || complex.dimension() != Some(2) {
        return false;
    }
    // every edge in exactly two triangles
    let triangles = complex.faces_with_cardinality(3);
    for edge in complex.edges() {
        let count = triangles.iter().filter(|t| edge.is_subset_of(t)).count();
        if count != 2 {
            return false;
        }
    }
    // vertex links are single cycles
    for v in complex.vertices().collect::<Vec<_>>() {
        let link = match complex.link(&Face::single(v)) {
            Ok(l) => l,
            Err(_) => return false,
        };
        if !is_single_cycle(&link) {
            return false;
        }
    }
    is_connected(complex) && complex.euler_characteristic() == Ok(BigInt::from(2))
}

fn is_connected(complex: &SimplicialComplex) -> bool {
    let verts: Vec<VertexId> = complex.vertices().collect();
    let Some(&first) = verts.first() else {
        return true;
    };
    let graph = complex.one_skeleton();
    let mut seen = std::collections::BTreeSet::from([first]);
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for w in graph.neighbors(v) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == verts.len()
}
