//! The spec-file format: a JSON object describing the field, the Lie
//! algebra, the point count, and the group generators, with optional catalog
//! parameters and point labels. Scalars are strings in the text grammar.

use serde::{Deserialize, Serialize};

use crate::action::{build_action, TwistedAction, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieRep};
use crate::matrix::ExactMatrix;
use crate::scalar::{parse_scalar, CycField, CycScalar};
use crate::site::SiteAlgebra;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub lie_algebra: LieAlgebraSpec,
    pub points: usize,
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<CatalogSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_labels: Option<Vec<String>>,
    /// Free-form metadata for tooling; carried through verbatim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commands: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FieldSpec {
    /// Conductor N of Q(zeta_N). When absent, the CLI falls back to the
    /// TWISTCUR_CONDUCTOR environment variable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic_order: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum LieAlgebraSpec {
    Sl {
        rank: usize,
    },
    Custom {
        dim: usize,
        /// Triples (i, j, coordinates of [x_i, x_j]), 1-based, i < j.
        brackets: Vec<(usize, usize, Vec<String>)>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupSpec {
    /// Generator matrices on g (x) k^n, row-major; column j holds the image
    /// of basis vector j in the i-major basis x_i (x) e_j.
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CatalogSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sl2_max_weight: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abelian_characters: Option<Vec<String>>,
}

pub struct BuiltSpec {
    pub field: CycField,
    pub action: TwistedAction,
    pub catalog_max_weight: usize,
    pub catalog_character_values: Vec<CycScalar>,
    pub point_labels: Vec<String>,
}

/// Render a matrix as rows of scalar strings in the text grammar, the form
/// the spec format carries.
pub fn matrix_strings(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| m.get(r, c).to_string().replace(' ', ""))
                .collect()
        })
        .collect()
}

/// Parse a spec document from JSON text; syntax errors carry the line and
/// column reported by the JSON parser.
pub fn parse_spec(text: &str) -> Result<SpecDocument> {
    serde_json::from_str(text).map_err(|e| Error::Spec {
        path: format!("line {}, column {}", e.line(), e.column()),
        reason: e.to_string(),
    })
}

pub fn spec_to_json(doc: &SpecDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("spec serializes");
    s.push('\n');
    s
}

impl SpecDocument {
    /// Validate the document and build the twisted action. Semantic errors
    /// name the offending field path.
    pub fn build(&self, default_conductor: Option<u64>) -> Result<BuiltSpec> {
        let conductor = self
            .field
            .cyclotomic_order
            .or(default_conductor)
            .ok_or_else(|| Error::Spec {
                path: "field.cyclotomic_order".into(),
                reason: "missing conductor and no default provided (set TWISTCUR_CONDUCTOR)"
                    .into(),
            })?;
        let field = CycField::new(conductor).map_err(|e| Error::Spec {
            path: "field.cyclotomic_order".into(),
            reason: e.to_string(),
        })?;
        if self.points == 0 {
            return Err(Error::Spec {
                path: "points".into(),
                reason: "at least one point is required".into(),
            });
        }
        let g = self.build_lie_algebra(&field)?;
        let d = g.dim();
        let dn = d * self.points;
        let mut generators = Vec::with_capacity(self.group.generators.len());
        for (gi, rows) in self.group.generators.iter().enumerate() {
            if rows.len() != dn || rows.iter().any(|r| r.len() != dn) {
                let found_rows = rows.len();
                let found_cols = rows.first().map(|r| r.len()).unwrap_or(0);
                return Err(Error::Spec {
                    path: format!("group.generators[{gi}]"),
                    reason: format!(
                        "generator must be {dn}x{dn} on the basis x_i(x)e_j, found {found_rows}x{found_cols}"
                    ),
                });
            }
            let mut parsed = Vec::with_capacity(dn);
            for (ri, row) in rows.iter().enumerate() {
                let mut prow = Vec::with_capacity(dn);
                for (ci, s) in row.iter().enumerate() {
                    let v = parse_scalar(&field, s).map_err(|e| Error::Spec {
                        path: format!("group.generators[{gi}][{ri}][{ci}]"),
                        reason: e.to_string(),
                    })?;
                    prow.push(v);
                }
                parsed.push(prow);
            }
            generators.push(ExactMatrix::from_rows(&field, parsed));
        }
        let sites = SiteAlgebra::new(&field, self.points);
        let cap = self.group.cap.unwrap_or(DEFAULT_GROUP_CAP);
        let action = build_action(g, sites, &generators, cap)?;
        let catalog_max_weight = self
            .catalog
            .as_ref()
            .and_then(|c| c.sl2_max_weight)
            .unwrap_or(4);
        let character_strings: Vec<String> = self
            .catalog
            .as_ref()
            .and_then(|c| c.abelian_characters.clone())
            .unwrap_or_else(|| vec!["1".into(), "-1".into(), "2".into()]);
        let mut catalog_character_values = Vec::new();
        for (i, s) in character_strings.iter().enumerate() {
            let v = parse_scalar(&field, s).map_err(|e| Error::Spec {
                path: format!("catalog.abelian_characters[{i}]"),
                reason: e.to_string(),
            })?;
            catalog_character_values.push(v);
        }
        let point_labels = match &self.point_labels {
            Some(labels) => {
                if labels.len() != self.points {
                    return Err(Error::Spec {
                        path: "point_labels".into(),
                        reason: "one label per point required".into(),
                    });
                }
                labels.clone()
            }
            None => (1..=self.points).map(|j| format!("M{j}")).collect(),
        };
        Ok(BuiltSpec {
            field,
            action,
            catalog_max_weight,
            catalog_character_values,
            point_labels,
        })
    }

    fn build_lie_algebra(&self, field: &CycField) -> Result<LieAlgebra> {
        match &self.lie_algebra {
            LieAlgebraSpec::Sl { rank } => {
                crate::lie::build_sl(field, *rank).map_err(|e| Error::Spec {
                    path: "lie_algebra.rank".into(),
                    reason: e.to_string(),
                })
            }
            LieAlgebraSpec::Custom { dim, brackets } => {
                let d = *dim;
                let mut structure = vec![vec![vec![field.zero(); d]; d]; d];
                for (k, (i, j, coords)) in brackets.iter().enumerate() {
                    if *i == 0 || *j == 0 || *i > d || *j > d || coords.len() != d {
                        return Err(Error::Spec {
                            path: format!("lie_algebra.brackets[{k}]"),
                            reason: "indices out of range or wrong coordinate count".into(),
                        });
                    }
                    let mut parsed = Vec::with_capacity(d);
                    for (ci, s) in coords.iter().enumerate() {
                        let v = parse_scalar(field, s).map_err(|e| Error::Spec {
                            path: format!("lie_algebra.brackets[{k}].coords[{ci}]"),
                            reason: e.to_string(),
                        })?;
                        parsed.push(v);
                    }
                    structure[i - 1][j - 1] = parsed.clone();
                    structure[j - 1][i - 1] = parsed.iter().map(|v| v.neg()).collect();
                }
                LieAlgebra::from_structure(field, d, structure, "custom").map_err(|e| {
                    Error::Spec {
                        path: "lie_algebra.brackets".into(),
                        reason: e.to_string(),
                    }
                })
            }
        }
    }
}

/// Exportable description of an evaluation module: support points, component
/// labels, the character, and the assembled representation matrices. The
/// matrices make the description self-contained for regression testing.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ModuleDescription {
    /// 1-based support points (orbit representatives).
    pub points: Vec<usize>,
    pub component_labels: Vec<String>,
    pub lambda: Vec<String>,
    pub matrices: Vec<Vec<Vec<String>>>,
}

impl ModuleDescription {
    pub fn from_module(module: &crate::rep::EvalModule) -> ModuleDescription {
        ModuleDescription {
            points: module.points.iter().map(|p| p + 1).collect(),
            component_labels: module.component_labels.clone(),
            lambda: module
                .character
                .coords()
                .iter()
                .map(|c| c.to_string().replace(' ', ""))
                .collect(),
            matrices: module
                .rep
                .matrices
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|r| {
                            (0..m.cols())
                                .map(|c| m.get(r, c).to_string().replace(' ', ""))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Rebuild the representation matrices over L and validate the
    /// homomorphism property.
    pub fn to_rep(&self, field: &CycField, algebra: &LieAlgebra) -> Result<LieRep> {
        if self.matrices.len() != algebra.dim() {
            return Err(Error::Spec {
                path: "matrices".into(),
                reason: format!(
                    "expected one matrix per basis element of L (dim {})",
                    algebra.dim()
                ),
            });
        }
        let mut parsed = Vec::with_capacity(self.matrices.len());
        for (idx, rows) in self.matrices.iter().enumerate() {
            let mut prow = Vec::with_capacity(rows.len());
            for row in rows {
                let mut r = Vec::with_capacity(row.len());
                for s in row {
                    r.push(parse_scalar(field, s).map_err(|e| Error::Spec {
                        path: format!("matrices[{idx}]"),
                        reason: e.to_string(),
                    })?);
                }
                prow.push(r);
            }
            parsed.push(ExactMatrix::from_rows(field, prow));
        }
        LieRep::new(algebra.clone(), parsed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("description serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<ModuleDescription> {
        serde_json::from_str(text).map_err(|e| Error::Spec {
            path: format!("line {}, column {}", e.line(), e.column()),
            reason: e.to_string(),
        })
    }
}
