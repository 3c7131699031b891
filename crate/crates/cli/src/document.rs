//! JSON interchange documents. Keys are declared in sorted order so the
//! serialized form is stable.

use std::collections::HashMap;

use posetdim::{LinearExtension, Poset, PosetError, Realizer, RelationKind};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("extension {extension} is not a permutation of the elements: {reason}")]
    NotPermutation { extension: usize, reason: String },
    #[error("realizer has no extensions")]
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cover,
    Order,
}

impl From<Kind> for RelationKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cover => RelationKind::Cover,
            Kind::Order => RelationKind::Order,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    pub name: String,
    pub relation_kind: Kind,
    pub relations: Vec<(String, String)>,
}

impl PosetDocument {
    /// Cover-relation document for `p`.
    pub fn from_poset(name: impl Into<String>, p: &Poset) -> Self {
        let relations = p
            .cover_relation()
            .into_iter()
            .map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
            .collect();
        PosetDocument {
            elements: p.names().to_vec(),
            name: name.into(),
            relation_kind: Kind::Cover,
            relations,
        }
    }

    pub fn to_poset(&self) -> Result<Poset, PosetError> {
        Poset::from_relations(&self.elements, &self.relations, self.relation_kind.into())
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizerDocument {
    pub extensions: Vec<Vec<String>>,
    pub poset_name: String,
}

impl RealizerDocument {
    pub fn from_realizer(poset_name: impl Into<String>, p: &Poset, r: &Realizer) -> Self {
        let extensions = r
            .extensions()
            .iter()
            .map(|e| e.order().iter().map(|&v| p.name(v).to_string()).collect())
            .collect();
        RealizerDocument { extensions, poset_name: poset_name.into() }
    }

    /// Resolves names against `p`; every extension must list each element
    /// exactly once. Whether they are linear extensions is left to
    /// verification.
    pub fn to_realizer(&self, p: &Poset) -> Result<Realizer, DocumentError> {
        if self.extensions.is_empty() {
            return Err(DocumentError::Empty);
        }
        let index: HashMap<&str, usize> =
            p.names().iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut exts = Vec::with_capacity(self.extensions.len());
        for (k, names) in self.extensions.iter().enumerate() {
            let bad = |reason: String| DocumentError::NotPermutation { extension: k, reason };
            let mut seen = vec![false; p.len()];
            let mut order = Vec::with_capacity(names.len());
            for name in names {
                let &i = index.get(name.as_str()).ok_or_else(|| bad(format!("unknown element {name:?}")))?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(bad(format!("{name:?} appears twice")));
                }
                order.push(i);
            }
            if order.len() != p.len() {
                return Err(bad(format!("{} of {} elements listed", order.len(), p.len())));
            }
            exts.push(LinearExtension(order));
        }
        Ok(Realizer::new(exts)?)
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use posetdim::generators::{gen_block_grid, gen_standard_example};

    #[test]
    fn round_trip() {
        let p = gen_block_grid(2, 2).unwrap();
        let doc = PosetDocument::from_poset("block-grid(2,2)", &p);
        let text = to_json(&doc);
        assert!(text.ends_with("}\n"));
        let back = PosetDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_poset().unwrap(), p);
    }

    #[test]
    fn keys_are_sorted() {
        let p = gen_standard_example(2).unwrap();
        let text = to_json(&PosetDocument::from_poset("s2", &p));
        let keys: Vec<usize> = ["\"elements\"", "\"name\"", "\"relation_kind\"", "\"relations\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains("\"cover\""));
    }

    #[test]
    fn order_kind_is_closed() {
        let doc = PosetDocument::parse(
            r#"{"elements":["a","b","c"],"name":"t","relation_kind":"order","relations":[["a","b"],["b","c"]]}"#,
        )
        .unwrap();
        let p = doc.to_poset().unwrap();
        assert!(p.lt(0, 2));
    }

    #[test]
    fn unknown_fields_and_elements_rejected() {
        assert!(PosetDocument::parse(r#"{"elements":[],"name":"","relation_kind":"cover","relations":[],"x":1}"#).is_err());
        let doc = PosetDocument::parse(
            r#"{"elements":["a"],"name":"t","relation_kind":"cover","relations":[["a","z"]]}"#,
        )
        .unwrap();
        assert!(matches!(doc.to_poset(), Err(PosetError::UnknownElement(_))));
    }

    #[test]
    fn realizer_documents() {
        let p = gen_standard_example(2).unwrap();
        let good = RealizerDocument {
            extensions: vec![
                vec!["a2".into(), "b1".into(), "a1".into(), "b2".into()],
                vec!["a1".into(), "b2".into(), "a2".into(), "b1".into()],
            ],
            poset_name: "s2".into(),
        };
        let r = good.to_realizer(&p).unwrap();
        assert_eq!(RealizerDocument::from_realizer("s2", &p, &r), good);

        let mut short = good.clone();
        short.extensions[0].pop();
        assert!(matches!(short.to_realizer(&p), Err(DocumentError::NotPermutation { extension: 0, .. })));
        let mut dup = good.clone();
        dup.extensions[1][0] = "b1".into();
        assert!(dup.to_realizer(&p).is_err());
        let mut unknown = good;
        unknown.extensions[1][0] = "q".into();
        assert!(unknown.to_realizer(&p).is_err());
    }
}
