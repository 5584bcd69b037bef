//! Named catalog of flag spheres with provenance certificates, plus the
//! build-spec grammar shared by the CLI and the browser demo.
//!
//! Grammar: `name(args)` with nesting. Names: crosspoly(d), cycle(n),
//! susp(expr), cone(expr), subdiv(expr, a, b), contract(expr, a, b),
//! file(path).

use serde::Serialize;
use thiserror::Error;

use crate::cm::SphereProvenance;
use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::moves::{edge_contract, edge_subdivide, Move, MoveKind};
use crate::rng::SplitMix64;

/// A catalog member: a complex together with the construction certificate
/// that backs its sphere status beyond dimension two.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogSphere {
    pub name: String,
    pub complex: SimplicialComplex,
    pub provenance: SphereProvenance,
}

/// Deterministic subdivision script: `steps` random edge subdivisions of the
/// octahedron, chosen by the seeded generator.
pub fn subdivided_octahedron(steps: usize, seed: u64) -> CatalogSphere {
    let mut complex = SimplicialComplex::cross_polytope_boundary(3).expect("d = 3");
    let mut provenance = SphereProvenance::cross_polytope(3);
    let mut rng = SplitMix64::new(seed);
    for _ in 0..steps {
        let edges = complex.edges();
        let edge = edges[rng.next_below(edges.len())].clone();
        let fresh = complex.fresh_vertex();
        let mv = Move::subdivide(edge.clone(), fresh);
        complex = edge_subdivide(&complex, &edge, fresh).expect("edge exists, vertex fresh");
        provenance = provenance.after_move(&mv);
    }
    CatalogSphere {
        name: format!("subdivided-octahedron-{steps}"),
        complex,
        provenance,
    }
}

/// Base members: cross-polytope boundaries d <= 5, cycles n <= 12, and
/// one-, two- and three-step subdivisions of the octahedron.
pub fn base_catalog() -> Vec<CatalogSphere> {
    let mut out = Vec::new();
    for d in 1..=5 {
        out.push(CatalogSphere {
            name: format!("crosspoly-{d}"),
            complex: SimplicialComplex::cross_polytope_boundary(d).expect("d >= 1"),
            provenance: SphereProvenance::cross_polytope(d),
        });
    }
    for n in 4..=12 {
        out.push(CatalogSphere {
            name: format!("cycle-{n}"),
            complex: SimplicialComplex::cycle_complex(n).expect("n >= 4"),
            provenance: SphereProvenance::cycle(n),
        });
    }
    for steps in 1..=3 {
        out.push(subdivided_octahedron(steps, 1000 + steps as u64));
    }
    out
}

/// Full catalog: base members plus their single and double suspensions.
pub fn catalog() -> Vec<CatalogSphere> {
    let mut out = Vec::new();
    for entry in base_catalog() {
        let susp = CatalogSphere {
            name: format!("susp({})", entry.name),
            complex: entry.complex.suspension(),
            provenance: entry.provenance.suspended(),
        };
        let susp2 = CatalogSphere {
            name: format!("susp2({})", entry.name),
            complex: susp.complex.suspension(),
            provenance: susp.provenance.suspended(),
        };
        out.push(entry);
        out.push(susp);
        out.push(susp2);
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at position {position}: {message}")]
pub struct BuildSpecError {
    pub position: usize,
    pub message: String,
}

/// Result of evaluating a build spec. Provenance is present only when every
/// construction step preserves PL sphere type (cones and files drop it).
#[derive(Clone, Debug)]
pub struct Built {
    pub complex: SimplicialComplex,
    pub provenance: Option<SphereProvenance>,
}

/// Source for `file(path)` references; the CLI reads the filesystem, the
/// browser demo supplies nothing.
pub trait FileSource {
    fn load(&self, path: &str) -> Result<SimplicialComplex, String>;
}

/// A source with no files: every `file(...)` reference errors.
pub struct NoFiles;

impl FileSource for NoFiles {
    fn load(&self, _path: &str) -> Result<SimplicialComplex, String> {
        Err("file() is not available here".to_string())
    }
}

pub fn parse_build_spec(input: &str, files: &dyn FileSource) -> Result<Built, BuildSpecError> {
    let mut parser = Parser {
        input,
        bytes: input.as_bytes(),
        pos: 0,
        files,
    };
    let built = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input after expression"));
    }
    Ok(built)
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
    files: &'a dyn FileSource,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> BuildSpecError {
        BuildSpecError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), BuildSpecError> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<&str, BuildSpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(&self.input[start..self.pos])
    }

    fn integer(&mut self) -> Result<u32, BuildSpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|e| self.error(format!("bad integer: {e}")))
    }

    fn path(&mut self) -> Result<&str, BuildSpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && !matches!(self.bytes[self.pos], b')' | b',') {
            self.pos += 1;
        }
        Ok(self.input[start..self.pos].trim())
    }

    fn expr(&mut self) -> Result<Built, BuildSpecError> {
        let name_pos = self.pos;
        let name = self.ident()?.to_string();
        self.expect(b'(')?;
        let built = match name.as_str() {
            "crosspoly" => {
                let d = self.integer()? as usize;
                let complex = SimplicialComplex::cross_polytope_boundary(d).map_err(|e| {
                    self.error(e.to_string())
                })?;
                Built {
                    complex,
                    provenance: Some(SphereProvenance::cross_polytope(d)),
                }
            }
            "cycle" => {
                let n = self.integer()? as usize;
                let complex = SimplicialComplex::cycle_complex(n)
                    .map_err(|e| self.error(e.to_string()))?;
                Built {
                    complex,
                    provenance: Some(SphereProvenance::cycle(n)),
                }
            }
            "susp" => {
                let inner = self.expr()?;
                Built {
                    complex: inner.complex.suspension(),
                    provenance: inner.provenance.map(|p| p.suspended()),
                }
            }
            "cone" => {
                let inner = self.expr()?;
                Built {
                    // a cone is a ball, never a sphere
                    complex: inner.complex.cone(),
                    provenance: None,
                }
            }
            "subdiv" => {
                let inner = self.expr()?;
                self.expect(b',')?;
                let a = self.integer()?;
                self.expect(b',')?;
                let b = self.integer()?;
                let edge = Face::edge(VertexId(a), VertexId(b));
                let fresh = inner.complex.fresh_vertex();
                let mv = Move::subdivide(edge.clone(), fresh);
                let complex = edge_subdivide(&inner.complex, &edge, fresh)
                    .map_err(|e| self.error(e.to_string()))?;
                Built {
                    complex,
                    provenance: inner.provenance.map(|p| p.after_move(&mv)),
                }
            }
            "contract" => {
                let inner = self.expr()?;
                self.expect(b',')?;
                let a = self.integer()?;
                self.expect(b',')?;
                let b = self.integer()?;
                let edge = Face::edge(VertexId(a), VertexId(b));
                let complex = edge_contract(&inner.complex, &edge)
                    .map_err(|e| self.error(e.to_string()))?;
                let mv = Move {
                    kind: MoveKind::Contract,
                    edge,
                    vertex: VertexId(a.min(b)),
                };
                Built {
                    complex,
                    provenance: inner.provenance.map(|p| p.after_move(&mv)),
                }
            }
            "file" => {
                let path = self.path()?.to_string();
                let complex = self
                    .files
                    .load(&path)
                    .map_err(|e| self.error(e))?;
                Built {
                    complex,
                    provenance: None,
                }
            }
            other => {
                self.pos = name_pos;
                return Err(self.error(format!(
                    "unknown builder '{other}' (expected crosspoly, cycle, susp, cone, subdiv, contract, file)"
                )));
            }
        };
        self.expect(b')')?;
        Ok(built)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::cm::{certify_sphere, SphereStatus};

    fn build(s: &str) -> Built {
        parse_build_spec(s, &NoFiles).unwrap()
    }

    #[test]
    fn catalog_members_are_flag_spheres() {
        for entry in catalog() {
            assert!(entry.complex.is_flag(), "{} is flag", entry.name);
            let status = certify_sphere(&entry.complex, Some(&entry.provenance));
            assert_ne!(status, SphereStatus::Unknown, "{}", entry.name);
        }
    }

    #[test]
    fn catalog_size_and_names() {
        let base = base_catalog();
        assert_eq!(base.len(), 5 + 9 + 3);
        assert_eq!(catalog().len(), base.len() * 3);
    }

    #[test]
    fn suspension_of_crosspoly_is_next_crosspoly() {
        let c = catalog();
        let susp_c4 = c
            .iter()
            .find(|e| e.name == "susp(crosspoly-4)")
            .unwrap();
        let c5 = SimplicialComplex::cross_polytope_boundary(5).unwrap();
        assert!(is_isomorphic(&susp_c4.complex, &c5));
    }

    #[test]
    fn build_crosspoly_and_cycle() {
        let octa = build("crosspoly(3)");
        assert_eq!(octa.complex.facet_count(), 8);
        assert!(octa.provenance.is_some());
        let pent = build("cycle(5)");
        assert_eq!(pent.complex.vertex_count(), 5);
    }

    #[test]
    fn build_nested_suspension() {
        let built = build("susp(susp(cycle(6)))");
        assert_eq!(built.complex.dimension(), Some(3));
        assert!(built.complex.is_flag());
        assert!(built.provenance.is_some());
        assert_eq!(
            certify_sphere(&built.complex, built.provenance.as_ref()),
            SphereStatus::CertifiedByProvenance
        );
    }

    #[test]
    fn build_subdivide_and_contract() {
        let built = build("subdiv(cycle(4), 0, 1)");
        assert!(is_isomorphic(
            &built.complex,
            &SimplicialComplex::cycle_complex(5).unwrap()
        ));
        let back = build("contract(subdiv(cycle(4), 0, 1), 0, 4)");
        assert!(is_isomorphic(
            &back.complex,
            &SimplicialComplex::cycle_complex(4).unwrap()
        ));
    }

    #[test]
    fn cone_drops_provenance() {
        let built = build("cone(cycle(4))");
        assert!(built.provenance.is_none());
        assert_eq!(built.complex.dimension(), Some(2));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_build_spec("crosspoly(0)", &NoFiles).unwrap_err();
        assert!(err.message.contains("cross polytope"));
        let err = parse_build_spec("unknown(3)", &NoFiles).unwrap_err();
        assert_eq!(err.position, 0);
        let err = parse_build_spec("cycle(5) junk", &NoFiles).unwrap_err();
        assert!(err.message.contains("trailing"));
        let err = parse_build_spec("file(somewhere.json)", &NoFiles).unwrap_err();
        assert!(err.message.contains("not available"));
    }

    #[test]
    fn subdivision_scripts_are_deterministic() {
        let a = subdivided_octahedron(3, 1003);
        let b = subdivided_octahedron(3, 1003);
        assert_eq!(a.complex, b.complex);
        assert_eq!(a.complex.vertex_count(), 9);
        assert!(a.complex.is_flag());
    }
}
