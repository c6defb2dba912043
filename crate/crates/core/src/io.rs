//! JSON body files. Coordinates are exact rational strings such as "-3/5"; JSON numbers
//! are rejected so nothing passes through floating point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactgeom::{parse_rat, Rat, RatVec};
use crate::planar::{Feature, PlanarBody, PlanarError};
use crate::polytope::{Polytope, PolytopeError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed body file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0:?} is not an exact rational (write integers or fractions like \"3/5\")")]
    NotRational(String),
    #[error("planar coordinates must have two entries, got {0}")]
    NotPlanar(usize),
    #[error("{0}")]
    Polytope(#[from] PolytopeError),
    #[error("{0}")]
    Planar(PlanarError),
}

impl From<PlanarError> for IoError {
    fn from(e: PlanarError) -> Self {
        IoError::Planar(e)
    }
}

pub type Result<T> = std::result::Result<T, IoError>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum BodyFile {
    Polytope {
        #[serde(default)]
        name: Option<String>,
        vertices: Vec<Vec<String>>,
    },
    Planar {
        #[serde(default)]
        name: Option<String>,
        features: Vec<FeatureFile>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        junction_closed: Option<Vec<bool>>,
    },
}

fn yes() -> bool {
    true
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FeatureFile {
    Segment {
        from: Vec<String>,
        to: Vec<String>,
        #[serde(default = "yes")]
        closed: bool,
    },
    Arc {
        center: Vec<String>,
        radius_sq: String,
        from: Vec<String>,
        to: Vec<String>,
        #[serde(default = "yes")]
        closed: bool,
    },
}

#[derive(Clone, Debug)]
pub enum Body {
    Polytope(Polytope),
    Planar(PlanarBody),
}

#[derive(Clone, Debug)]
pub struct NamedBody {
    pub name: String,
    pub body: Body,
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Polytope(_) => "polytope",
            Body::Planar(_) => "planar",
        }
    }
}

fn scalar(s: &str) -> Result<Rat> {
    parse_rat(s).ok_or_else(|| IoError::NotRational(s.to_string()))
}

fn vector(v: &[String]) -> Result<RatVec> {
    Ok(RatVec::new(v.iter().map(|s| scalar(s)).collect::<Result<_>>()?))
}

fn point(v: &[String]) -> Result<RatVec> {
    if v.len() != 2 {
        return Err(IoError::NotPlanar(v.len()));
    }
    vector(v)
}

fn strings(v: &RatVec) -> Vec<String> {
    v.coords().iter().map(|x| x.to_string()).collect()
}

pub fn parse_body(text: &str) -> Result<NamedBody> {
    let file: BodyFile = serde_json::from_str(text)?;
    match file {
        BodyFile::Polytope { name, vertices } => {
            let vs = vertices.iter().map(|v| vector(v)).collect::<Result<Vec<_>>>()?;
            Ok(NamedBody { name: name.unwrap_or_default(), body: Body::Polytope(Polytope::new(vs)?) })
        }
        BodyFile::Planar { name, features, junction_closed } => {
            let mut fs = Vec::new();
            let mut closed = Vec::new();
            for f in &features {
                match f {
                    FeatureFile::Segment { from, to, closed: c } => {
                        fs.push(Feature::Segment { from: point(from)?, to: point(to)? });
                        closed.push(*c);
                    }
                    FeatureFile::Arc { center, radius_sq, from, to, closed: c } => {
                        fs.push(Feature::Arc {
                            center: point(center)?,
                            radius_sq: scalar(radius_sq)?,
                            from: point(from)?,
                            to: point(to)?,
                        });
                        closed.push(*c);
                    }
                }
            }
            let junctions = junction_closed.unwrap_or_else(|| vec![true; fs.len()]);
            let body = PlanarBody::new(fs, closed, junctions).map_err(|e| match e {
                PlanarError::OffCircle { feature, point } => IoError::Planar(PlanarError::OffCircle {
                    feature,
                    point: format!("{point} (arc endpoints must satisfy the circle equation exactly, so use a rational point)"),
                }),
                e => IoError::Planar(e),
            })?;
            Ok(NamedBody { name: name.unwrap_or_default(), body: Body::Planar(body) })
        }
    }
}

pub fn body_to_json(name: &str, body: &Body) -> String {
    let file = match body {
        Body::Polytope(p) => {
            BodyFile::Polytope { name: Some(name.to_string()), vertices: p.vertices().iter().map(strings).collect() }
        }
        Body::Planar(b) => BodyFile::Planar {
            name: Some(name.to_string()),
            features: b
                .features()
                .iter()
                .zip(b.feature_closed())
                .map(|(f, &closed)| match f {
                    Feature::Segment { from, to } => FeatureFile::Segment { from: strings(from), to: strings(to), closed },
                    Feature::Arc { center, radius_sq, from, to } => FeatureFile::Arc {
                        center: strings(center),
                        radius_sq: radius_sq.to_string(),
                        from: strings(from),
                        to: strings(to),
                        closed,
                    },
                })
                .collect(),
            junction_closed: Some(b.junction_closed().to_vec()),
        },
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_floats() {
        let e = parse_body(r#"{"type":"polytope","vertices":[[0.5,1]]}"#).unwrap_err();
        assert!(matches!(e, IoError::Json(_)));
        let e = parse_body(r#"{"type":"polytope","vertices":[["0.5","1"]]}"#).unwrap_err();
        assert!(matches!(e, IoError::NotRational(_)));
    }

    #[test]
    fn off_circle_diagnostic() {
        let text = r#"{"type":"planar","features":[
            {"kind":"arc","center":["0","0"],"radius_sq":"1","from":["1","0"],"to":["1","1"]},
            {"kind":"segment","from":["1","1"],"to":["1","0"]}]}"#;
        let e = parse_body(text).unwrap_err();
        assert!(e.to_string().contains("circle equation"), "{e}");
    }

    #[test]
    fn roundtrip() {
        let text = r#"{"type":"planar","name":"q","features":[
            {"kind":"segment","from":["0","0"],"to":["1","0"]},
            {"kind":"arc","center":["0","0"],"radius_sq":"1","from":["1","0"],"to":["0","1"],"closed":false},
            {"kind":"segment","from":["0","1"],"to":["0","0"]}],
            "junction_closed":[true,false,true]}"#;
        let b = parse_body(text).unwrap();
        let again = parse_body(&body_to_json(&b.name, &b.body)).unwrap();
        match (b.body, again.body) {
            (Body::Planar(x), Body::Planar(y)) => assert_eq!(x, y),
            _ => panic!("kind changed"),
        }
        let p = parse_body(r#"{"type":"polytope","vertices":[["-1/2"],["3"]]}"#).unwrap();
        let Body::Polytope(p0) = &p.body else { panic!() };
        let Body::Polytope(p1) = parse_body(&body_to_json("s", &p.body)).unwrap().body else { panic!() };
        assert_eq!(*p0, p1);
    }
}
