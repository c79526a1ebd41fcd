//! JSON form of a PCR:
//!
//! ```json
//! {"tree": {"vertices": ["a", "b"], "edges": [["a", "b", "1/2"]]},
//!  "d_min": "1/2", "d_max": "1/1"}
//! ```

use serde::{Deserialize, Serialize};

use super::{Pcr, PcrError, WeightedTree};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcrJson {
    pub tree: TreeJson,
    pub d_min: String,
    pub d_max: String,
}

impl From<&Pcr> for PcrJson {
    fn from(p: &Pcr) -> Self {
        let t = p.tree();
        PcrJson {
            tree: TreeJson {
                vertices: t.labels().to_vec(),
                edges: t
                    .edges()
                    .iter()
                    .map(|e| {
                        (
                            t.label(e.a).to_string(),
                            t.label(e.b).to_string(),
                            rational::format(&e.weight),
                        )
                    })
                    .collect(),
            },
            d_min: rational::format(p.d_min()),
            d_max: rational::format(p.d_max()),
        }
    }
}

impl TryFrom<PcrJson> for Pcr {
    type Error = PcrError;

    fn try_from(j: PcrJson) -> Result<Self, PcrError> {
        let num = |s: &str| rational::parse(s).map_err(|e| PcrError::Json(e.to_string()));
        let edges = j
            .tree
            .edges
            .into_iter()
            .map(|(a, b, w)| Ok((a, b, num(&w)?)))
            .collect::<Result<Vec<(String, String, Rational)>, PcrError>>()?;
        let tree = WeightedTree::new(j.tree.vertices, edges)?;
        Pcr::new(tree, num(&j.d_min)?, num(&j.d_max)?)
    }
}

pub fn pcr_to_json(p: &Pcr) -> String {
    serde_json::to_string_pretty(&PcrJson::from(p)).expect("plain data serializes")
}

pub fn pcr_from_json(s: &str) -> Result<Pcr, PcrError> {
    let j: PcrJson = serde_json::from_str(s).map_err(|e| PcrError::Json(e.to_string()))?;
    Pcr::try_from(j)
}

impl Serialize for Pcr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PcrJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pcr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PcrJson::deserialize(d)?;
        Pcr::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn sample() -> Pcr {
        let t = WeightedTree::new(
            ["c", "p", "q"],
            [
                ("c".into(), "p".into(), ratio(1, 2)),
                ("c".into(), "q".into(), ratio(2, 6)),
            ],
        )
        .unwrap();
        Pcr::new(t, ratio(3, 4), int(1)).unwrap()
    }

    #[test]
    fn text_is_bit_stable() {
        let s = pcr_to_json(&sample());
        assert!(s.contains("\"1/3\""));
        assert!(s.contains("\"1/1\""));
        let back = pcr_from_json(&s).unwrap();
        assert_eq!(back, sample());
        assert_eq!(pcr_to_json(&back), s);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(pcr_from_json("{}").is_err());
        let bad_bounds = r#"{"tree":{"vertices":["a"],"edges":[]},"d_min":"2/1","d_max":"1/1"}"#;
        assert!(matches!(pcr_from_json(bad_bounds), Err(PcrError::InvalidBounds { .. })));
        let bad_num = r#"{"tree":{"vertices":["a"],"edges":[]},"d_min":"x","d_max":"1/1"}"#;
        assert!(matches!(pcr_from_json(bad_num), Err(PcrError::Json(_))));
        let cyc =
            r#"{"tree":{"vertices":["a","b"],"edges":[["a","b","1/1"],["b","a","1/1"]]},"d_min":"0/1","d_max":"1/1"}"#;
        assert!(matches!(pcr_from_json(cyc), Err(PcrError::InvalidTree(_))));
    }
}
