//! JSON wire formats for complexes, discs, surfaces, moves and group
//! actions, plus DOT export of 1-skeletons.
//!
//! Every format carries vertex labels, never internal indices, so files
//! stay readable and independent of construction order. Parsing always
//! revalidates through the library constructors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::{ActionError, ActionSpec, Automorphism};
use crate::complex::{ComplexError, FlagComplex};
use crate::disc::{DiscError, DiscTriangulation};
use crate::filling::{FillError, Surface};
use crate::fixtures::triangle_relations;
use crate::swaps::{LabeledSurface, SwapError, SwapMove};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error(transparent)]
    Fill(#[from] FillError),
    #[error(transparent)]
    Swap(#[from] SwapError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("unknown preset {0:?}; expected triangle-2-4-5, triangle-2-5-5 or dihedral-<n>")]
    UnknownPreset(String),
}

/// 1-skeleton: {"vertices": ["a", ...], "edges": [["a", "b"], ...]}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl ComplexJson {
    pub fn from_complex(x: &FlagComplex) -> ComplexJson {
        ComplexJson {
            vertices: x.labels().to_vec(),
            edges: x
                .edges()
                .into_iter()
                .map(|(a, b)| (x.label(a).to_string(), x.label(b).to_string()))
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<FlagComplex, IoError> {
        Ok(FlagComplex::from_edge_list(&self.vertices, &self.edges)?)
    }
}

/// Triangulated disc: vertices, triangles as label triples, and the
/// boundary cycle in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscJson {
    pub vertices: Vec<String>,
    pub triangles: Vec<[String; 3]>,
    pub boundary: Vec<String>,
}

impl DiscJson {
    pub fn from_disc(disc: &DiscTriangulation) -> DiscJson {
        DiscJson {
            vertices: disc.labels().to_vec(),
            triangles: disc.triangles_labeled(),
            boundary: disc.boundary_labeled(),
        }
    }

    pub fn to_disc(&self) -> Result<DiscTriangulation, IoError> {
        Ok(DiscTriangulation::new(
            self.vertices.clone(),
            self.triangles.clone(),
            self.boundary.clone(),
        )?)
    }
}

/// Embedded disc: {"disc": {...}, "embedding": {"d0": "x", ...}} with the
/// embedding as a disc-label to ambient-label map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceJson {
    pub disc: DiscJson,
    pub embedding: BTreeMap<String, String>,
}

impl SurfaceJson {
    pub fn from_surface(ambient: &FlagComplex, surface: &Surface) -> SurfaceJson {
        SurfaceJson {
            disc: DiscJson::from_disc(&surface.disc),
            embedding: surface.embedding_labels(ambient),
        }
    }

    pub fn to_surface(&self, ambient: &FlagComplex) -> Result<Surface, IoError> {
        Ok(Surface::from_label_map(self.disc.to_disc()?, &self.embedding, ambient)?)
    }
}

/// Surface with three corner labels and three sides given as label paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSurfaceJson {
    pub disc: DiscJson,
    pub embedding: BTreeMap<String, String>,
    pub corners: [String; 3],
    pub sides: [Vec<String>; 3],
}

impl LabeledSurfaceJson {
    pub fn from_labeled(ambient: &FlagComplex, labeled: &LabeledSurface) -> LabeledSurfaceJson {
        let disc = labeled.disc();
        let name = |&v: &usize| disc.label(v).to_string();
        LabeledSurfaceJson {
            disc: DiscJson::from_disc(disc),
            embedding: labeled.surface.embedding_labels(ambient),
            corners: [
                name(&labeled.corners[0]),
                name(&labeled.corners[1]),
                name(&labeled.corners[2]),
            ],
            sides: labeled
                .sides
                .clone()
                .map(|side| side.iter().map(name).collect()),
        }
    }

    /// Rebuilds and fully revalidates the labeled surface against the
    /// ambient complex.
    pub fn to_labeled(&self, ambient: &FlagComplex) -> Result<LabeledSurface, IoError> {
        let disc = self.disc.to_disc()?;
        let mut corners = [0usize; 3];
        for (slot, label) in corners.iter_mut().zip(&self.corners) {
            *slot = disc.index_of(label)?;
        }
        let mut sides: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (slot, side) in sides.iter_mut().zip(&self.sides) {
            *slot = side
                .iter()
                .map(|l| disc.index_of(l))
                .collect::<Result<_, _>>()?;
        }
        let surface = Surface::from_label_map(disc, &self.embedding, ambient)?;
        Ok(LabeledSurface::new(ambient, surface, corners, sides)?)
    }
}

/// A swap move named by disc vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapMoveJson {
    pub p: String,
    pub q: String,
    pub m: String,
    pub m_prime: String,
}

impl SwapMoveJson {
    pub fn from_move(disc: &DiscTriangulation, mv: &SwapMove) -> SwapMoveJson {
        SwapMoveJson {
            p: disc.label(mv.p).to_string(),
            q: disc.label(mv.q).to_string(),
            m: disc.label(mv.m).to_string(),
            m_prime: disc.label(mv.m_prime).to_string(),
        }
    }

    pub fn to_move(&self, disc: &DiscTriangulation) -> Result<SwapMove, IoError> {
        Ok(SwapMove {
            p: disc.index_of(&self.p)?,
            q: disc.index_of(&self.q)?,
            m: disc.index_of(&self.m)?,
            m_prime: disc.index_of(&self.m_prime)?,
        })
    }
}

/// Group action: named generators as vertex-label maps, relation words over
/// the generator names, and an optional preset that supplies the relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub generators: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
}

/// Relation words supplied by a preset name: the Coxeter-style triangle
/// presentations on r, s, t, or the dihedral presentation on u, v.
pub fn preset_relations(preset: &str) -> Result<Vec<String>, IoError> {
    match preset {
        "triangle-2-4-5" => Ok(triangle_relations(4)),
        "triangle-2-5-5" => Ok(triangle_relations(5)),
        _ => match preset.strip_prefix("dihedral-").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 1 => {
                Ok(vec!["uu".to_string(), "vv".to_string(), "uv".repeat(n)])
            }
            _ => Err(IoError::UnknownPreset(preset.to_string())),
        },
    }
}

impl ActionJson {
    pub fn from_spec(x: &FlagComplex, spec: &ActionSpec) -> ActionJson {
        let generators = spec
            .generators
            .iter()
            .map(|(name, g)| {
                let map = x
                    .vertices()
                    .map(|v| (x.label(v).to_string(), x.label(g.apply(v)).to_string()))
                    .collect();
                (name.clone(), map)
            })
            .collect();
        ActionJson { generators, relations: spec.relations.clone(), preset: None }
    }

    /// Builds the action; preset relations are appended to any explicit
    /// ones, skipping duplicates.
    pub fn to_spec(&self, x: &FlagComplex) -> Result<ActionSpec, IoError> {
        let mut generators = BTreeMap::new();
        for (name, map) in &self.generators {
            let auto = Automorphism::from_label_map(
                x,
                map.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            )?;
            generators.insert(name.clone(), auto);
        }
        let mut relations = self.relations.clone();
        if let Some(preset) = &self.preset {
            for word in preset_relations(preset)? {
                if !relations.contains(&word) {
                    relations.push(word);
                }
            }
        }
        Ok(ActionSpec::new(generators, relations))
    }
}

/// DOT rendering of the 1-skeleton, vertices and edges in label order.
pub fn to_dot(x: &FlagComplex) -> String {
    let mut out = String::from("graph skeleton {\n");
    for label in x.labels() {
        out.push_str(&format!("  \"{label}\";\n"));
    }
    for (a, b) in x.edges() {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", x.label(a), x.label(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{dihedral_spec, gen_chorded_wheel, gen_hex_patch, gen_wheel};
    use crate::swaps::swap_corpus;

    #[test]
    fn complex_json_round_trips() {
        let x = gen_chorded_wheel(6).unwrap();
        let encoded = serde_json::to_string(&ComplexJson::from_complex(&x)).unwrap();
        let decoded: ComplexJson = serde_json::from_str(&encoded).unwrap();
        assert_eq!(decoded.to_complex().unwrap(), x);
    }

    #[test]
    fn disc_json_round_trips() {
        let disc = gen_hex_patch(2).unwrap();
        let encoded = serde_json::to_string(&DiscJson::from_disc(&disc)).unwrap();
        let decoded: DiscJson = serde_json::from_str(&encoded).unwrap();
        assert_eq!(decoded.to_disc().unwrap(), disc);
    }

    #[test]
    fn labeled_surface_json_round_trips() {
        let case = &swap_corpus()[0];
        let json = LabeledSurfaceJson::from_labeled(&case.ambient, &case.surface);
        let encoded = serde_json::to_string(&json).unwrap();
        let decoded: LabeledSurfaceJson = serde_json::from_str(&encoded).unwrap();
        assert_eq!(decoded.to_labeled(&case.ambient).unwrap(), case.surface);
    }

    #[test]
    fn swap_move_json_round_trips() {
        let case = &swap_corpus()[0];
        let disc = case.surface.disc();
        let json = SwapMoveJson::from_move(disc, &case.mv);
        assert_eq!(json.to_move(disc).unwrap(), case.mv);
    }

    #[test]
    fn dihedral_preset_matches_the_explicit_relations() {
        let x = gen_wheel(10).unwrap();
        let spec = dihedral_spec(&x, 10);
        let mut json = ActionJson::from_spec(&x, &spec);
        json.relations.clear();
        json.preset = Some("dihedral-5".to_string());
        let rebuilt = json.to_spec(&x).unwrap();
        assert_eq!(rebuilt, spec);
    }

    #[test]
    fn triangle_presets_supply_coxeter_words() {
        assert_eq!(preset_relations("triangle-2-4-5").unwrap(), triangle_relations(4));
        assert_eq!(preset_relations("triangle-2-5-5").unwrap(), triangle_relations(5));
        assert!(matches!(
            preset_relations("triangle-2-6-5"),
            Err(IoError::UnknownPreset(_))
        ));
        assert!(matches!(preset_relations("dihedral-0"), Err(IoError::UnknownPreset(_))));
    }

    #[test]
    fn bad_edge_labels_are_rejected() {
        let json = ComplexJson {
            vertices: vec!["a".to_string()],
            edges: vec![("a".to_string(), "b".to_string())],
        };
        assert!(matches!(json.to_complex(), Err(IoError::Complex(_))));
    }

    #[test]
    fn missing_embedding_entries_are_rejected() {
        let x = gen_wheel(6).unwrap();
        let json = SurfaceJson {
            disc: DiscJson {
                vertices: vec!["d0".into(), "d1".into(), "d2".into()],
                triangles: vec![["d0".into(), "d1".into(), "d2".into()]],
                boundary: vec!["d0".into(), "d1".into(), "d2".into()],
            },
            embedding: BTreeMap::from([("d0".to_string(), "c".to_string())]),
        };
        assert!(matches!(json.to_surface(&x), Err(IoError::Fill(_))));
    }

    #[test]
    fn dot_export_lists_vertices_and_edges() {
        let x = gen_wheel(6).unwrap();
        let dot = to_dot(&x);
        assert!(dot.starts_with("graph skeleton {"));
        assert!(dot.contains("  \"c\";\n"));
        assert!(dot.contains("\"c\" -- \"x0\";"));
        assert!(dot.ends_with("}\n"));
    }
}
