//! JSON instance files. Coordinates are exact rational strings.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};
use crate::geometry::{Point, VPolytope};
use crate::rational::parse_rational;
use crate::tverberg::{ColorSystem, Family};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dimension: usize,
    pub families: Vec<FamilyFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub label: String,
    /// `sets[i][v]` is vertex `v` of set `i`.
    pub sets: Vec<Vec<Vec<String>>>,
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| input_err!("malformed instance JSON: {e}"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_err!("cannot read {}: {e}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| input_err!("cannot write {}: {e}", path.display()))
    }

    pub fn to_system(&self) -> Result<ColorSystem> {
        let families = self
            .families
            .iter()
            .map(|f| {
                let sets = f
                    .sets
                    .iter()
                    .enumerate()
                    .map(|(i, verts)| {
                        let pts = verts
                            .iter()
                            .map(|coords| {
                                if coords.len() != self.dimension {
                                    return Err(input_err!(
                                        "family {:?} set {i}: vertex has {} coordinates, expected {}",
                                        f.label,
                                        coords.len(),
                                        self.dimension
                                    ));
                                }
                                coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map(Point::new)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        VPolytope::new(pts)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Family::new(f.label.clone(), sets)
            })
            .collect::<Result<Vec<_>>>()?;
        ColorSystem::new(self.dimension, families)
    }

    pub fn from_system(system: &ColorSystem) -> Self {
        InstanceFile {
            dimension: system.dimension(),
            families: system
                .families()
                .iter()
                .map(|f| FamilyFile {
                    label: f.label.clone(),
                    sets: f
                        .sets()
                        .iter()
                        .map(|s| s.vertices().iter().map(Point::to_strings).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Read and validate an instance in one step.
pub fn load_system(path: &Path) -> Result<ColorSystem> {
    InstanceFile::load(path)?.to_system()
}

pub fn save_system(system: &ColorSystem, path: &Path) -> Result<()> {
    InstanceFile::from_system(system).save(path)
}
