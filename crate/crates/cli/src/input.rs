//! Input documents for `compute`.
//!
//! ```json
//! {"schema": "cheeger-shape/1", "kind": "disc", "center": ["0", "0"], "radius": "1"}
//! ```
//!
//! Kinds: `disc {center, radius}`, `annulus {center, inner, outer}`,
//! `polygon {vertices}`, `star {center, scale, harmonics: [{k, sin, cos}]}`,
//! `flower {j, eps}`, `union {components}` and `intervals {intervals}`.
//! Coefficients are decimal strings (plain JSON numbers are accepted too);
//! interval endpoints may be `"-inf"` / `"inf"`.

use cheeger_core::gauss1d::IntervalSet;
use cheeger_core::shapes::{flower, Annulus, ConvexPolygon, Disc, Harmonic, Shape2D, ShapeUnion, StarShape};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

pub const SHAPE_SCHEMA: &str = "cheeger-shape/1";

/// A real stored as a decimal string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decimal(pub f64);

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:?}", self.0))
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let x = match Raw::deserialize(d)? {
            Raw::Num(x) => x,
            Raw::Str(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| de::Error::custom(format!("`{s}` is not a decimal number")))?,
        };
        if !x.is_finite() {
            return Err(de::Error::custom("coefficients must be finite"));
        }
        Ok(Decimal(x))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicDoc {
    pub k: u32,
    pub sin: Decimal,
    pub cos: Decimal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShapeDoc {
    Disc {
        center: [Decimal; 2],
        radius: Decimal,
    },
    Annulus {
        center: [Decimal; 2],
        inner: Decimal,
        outer: Decimal,
    },
    Polygon {
        vertices: Vec<[Decimal; 2]>,
    },
    Star {
        center: [Decimal; 2],
        scale: Decimal,
        harmonics: Vec<HarmonicDoc>,
    },
    Flower {
        j: u32,
        eps: Decimal,
    },
    Union {
        components: Vec<ShapeDoc>,
    },
    Intervals {
        intervals: IntervalSet,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDoc {
    pub schema: String,
    #[serde(flatten)]
    pub shape: ShapeDoc,
}

pub enum Input {
    Planar(Shape2D),
    Line(IntervalSet),
}

fn point(p: &[Decimal; 2]) -> [f64; 2] {
    [p[0].0, p[1].0]
}

impl ShapeDoc {
    fn planar(&self) -> Result<Shape2D, String> {
        let shape: Shape2D = match self {
            ShapeDoc::Disc { center, radius } => Disc::new(point(center), radius.0)
                .map_err(|e| e.to_string())?
                .into(),
            ShapeDoc::Annulus { center, inner, outer } => Annulus::new(point(center), inner.0, outer.0)
                .map_err(|e| e.to_string())?
                .into(),
            ShapeDoc::Polygon { vertices } => ConvexPolygon::new(vertices.iter().map(point).collect())
                .map_err(|e| e.to_string())?
                .into(),
            ShapeDoc::Star { center, scale, harmonics } => StarShape::new(
                point(center),
                scale.0,
                harmonics
                    .iter()
                    .map(|h| Harmonic { k: h.k, sin: h.sin.0, cos: h.cos.0 })
                    .collect(),
            )
            .map_err(|e| e.to_string())?
            .into(),
            ShapeDoc::Flower { j, eps } => flower(*j, eps.0).map_err(|e| e.to_string())?.into(),
            ShapeDoc::Union { components } => {
                let parts = components
                    .iter()
                    .map(ShapeDoc::planar)
                    .collect::<Result<Vec<_>, _>>()?;
                Shape2D::Union(ShapeUnion::new(parts).map_err(|e| e.to_string())?)
            }
            ShapeDoc::Intervals { .. } => {
                return Err("interval sets cannot be components of a planar union".into())
            }
        };
        Ok(shape)
    }
}

/// Parses and validates an input document.
pub fn parse(text: &str) -> Result<(InputDoc, Input), String> {
    let doc: InputDoc = serde_json::from_str(text).map_err(|e| format!("malformed shape file: {e}"))?;
    if doc.schema != SHAPE_SCHEMA {
        return Err(format!(
            "unsupported schema `{}` (expected `{SHAPE_SCHEMA}`)",
            doc.schema
        ));
    }
    let input = match &doc.shape {
        ShapeDoc::Intervals { intervals } => Input::Line(intervals.clone()),
        other => Input::Planar(other.planar()?),
    };
    Ok((doc, input))
}
