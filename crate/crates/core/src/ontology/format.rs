//! Ingestion formats for child/superconcept relations.
//!
//! Each format is a [`PairSource`] strategy producing a [`PairList`];
//! formats are looked up by name in a [`FormatRegistry`] so callers can
//! select one at runtime (`pairs`, `ntriples`).

use indexmap::IndexMap;

use super::{ConceptId, PairList};
use crate::error::OntologyError;

const SUBCLASS_PREDICATE: &str = "<http://www.w3.org/2000/01/rdf-schema#subClassOf>";

/// A named parser turning a UTF-8 document into a [`PairList`].
pub trait PairSource: Send + Sync {
    fn name(&self) -> &'static str;
    fn parse(&self, text: &str) -> Result<PairList, OntologyError>;
}

/// Plain pairs format: one `child WS parent` per line, `#` comments and
/// blank lines allowed.
pub struct PairsFormat;

impl PairSource for PairsFormat {
    fn name(&self) -> &'static str {
        "pairs"
    }

    fn parse(&self, text: &str) -> Result<PairList, OntologyError> {
        parse_pairs(text)
    }
}

/// Line-oriented N-Triples subset consuming only `rdfs:subClassOf` triples.
pub struct NTriplesFormat;

impl PairSource for NTriplesFormat {
    fn name(&self) -> &'static str {
        "ntriples"
    }

    fn parse(&self, text: &str) -> Result<PairList, OntologyError> {
        parse_ntriples_subclass(text)
    }
}

/// Registry of ingestion formats, keyed by name.
pub struct FormatRegistry {
    formats: IndexMap<&'static str, Box<dyn PairSource>>,
}

impl FormatRegistry {
    /// Registry with the built-in `pairs` and `ntriples` formats.
    pub fn builtin() -> Self {
        let mut registry = FormatRegistry {
            formats: IndexMap::new(),
        };
        registry.register(Box::new(PairsFormat));
        registry.register(Box::new(NTriplesFormat));
        registry
    }

    pub fn register(&mut self, source: Box<dyn PairSource>) {
        self.formats.insert(source.name(), source);
    }

    pub fn get(&self, name: &str) -> Option<&dyn PairSource> {
        self.formats.get(name).map(|b| b.as_ref())
    }

    /// Parses `text` with the named format, erroring on unknown names.
    pub fn parse(&self, name: &str, text: &str) -> Result<PairList, OntologyError> {
        self.get(name)
            .ok_or_else(|| OntologyError::UnknownFormat(name.to_string()))?
            .parse(text)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.formats.keys().copied()
    }
}

impl Default for FormatRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Parses the plain pairs format. Lines are `child WS parent`; lines
/// starting with `#` and blank lines are skipped; duplicate pairs are
/// dropped keeping the first occurrence.
pub fn parse_pairs(text: &str) -> Result<PairList, OntologyError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (child, parent) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(child), Some(parent), None) => (child, parent),
            _ => return Err(OntologyError::MalformedLine { line: idx + 1 }),
        };
        pairs.push((ConceptId::new(child)?, ConceptId::new(parent)?));
    }
    PairList::from_pairs(pairs)
}

/// Parses line-oriented N-Triples, consuming only triples whose predicate
/// is exactly `rdfs:subClassOf` and whose subject and object are IRIs.
/// Everything else (other predicates, literals, blank nodes) is ignored.
/// Non-blank, non-comment lines must terminate with ` .`.
pub fn parse_ntriples_subclass(text: &str) -> Result<PairList, OntologyError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(statement) = line
            .strip_suffix(" .")
            .or_else(|| line.strip_suffix(" .\r"))
        else {
            return Err(OntologyError::MalformedLine { line: idx + 1 });
        };
        let tokens: Vec<&str> = statement.split_whitespace().collect();
        if tokens.len() != 3 || tokens[1] != SUBCLASS_PREDICATE {
            continue;
        }
        let (Some(subject), Some(object)) = (strip_iri(tokens[0]), strip_iri(tokens[2])) else {
            continue;
        };
        pairs.push((ConceptId::new(subject)?, ConceptId::new(object)?));
    }
    PairList::from_pairs(pairs)
}

fn strip_iri(token: &str) -> Option<&str> {
    token.strip_prefix('<')?.strip_suffix('>')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_strs(list: &PairList) -> Vec<(String, String)> {
        list.pairs()
            .iter()
            .map(|(c, p)| (c.to_string(), p.to_string()))
            .collect()
    }

    #[test]
    fn pairs_basic_lines() {
        let list = parse_pairs("Frog Amphibian\nAmphibian Vertebrate").unwrap();
        assert_eq!(
            pair_strs(&list),
            vec![
                ("Frog".into(), "Amphibian".into()),
                ("Amphibian".into(), "Vertebrate".into())
            ]
        );
    }

    #[test]
    fn pairs_skip_comments_and_blanks() {
        let list = parse_pairs("# comment\n\nA B").unwrap();
        assert_eq!(pair_strs(&list), vec![("A".into(), "B".into())]);
    }

    #[test]
    fn pairs_reject_wrong_token_count() {
        assert_eq!(
            parse_pairs("A"),
            Err(OntologyError::MalformedLine { line: 1 })
        );
        assert_eq!(
            parse_pairs("A B C"),
            Err(OntologyError::MalformedLine { line: 1 })
        );
    }

    #[test]
    fn pairs_line_number_counts_skipped_lines() {
        assert_eq!(
            parse_pairs("# header\nA B\nbroken"),
            Err(OntologyError::MalformedLine { line: 3 })
        );
    }

    #[test]
    fn pairs_drop_duplicates_keep_order() {
        let list = parse_pairs("A B\nC D\nA B").unwrap();
        assert_eq!(
            pair_strs(&list),
            vec![("A".into(), "B".into()), ("C".into(), "D".into())]
        );
    }

    #[test]
    fn pairs_handle_crlf() {
        let list = parse_pairs("A B\r\nC D\r\n").unwrap();
        assert_eq!(list.len(), 2);
    }

    #[test]
    fn pairs_reject_self_relation() {
        assert!(matches!(
            parse_pairs("A A"),
            Err(OntologyError::SelfPair(_))
        ));
    }

    #[test]
    fn ntriples_consumes_subclass_only() {
        let text = "<a:Frog> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <a:Amphibian> .\n\
                    <a:Frog> <a:hasName> \"frog\" .";
        let list = parse_ntriples_subclass(text).unwrap();
        assert_eq!(
            pair_strs(&list),
            vec![("a:Frog".into(), "a:Amphibian".into())]
        );
    }

    #[test]
    fn ntriples_missing_terminator_is_malformed() {
        assert_eq!(
            parse_ntriples_subclass("<a:X> <b>"),
            Err(OntologyError::MalformedLine { line: 1 })
        );
    }

    #[test]
    fn ntriples_ignores_literals_and_blank_nodes() {
        let text = "<a:X> <http://www.w3.org/2000/01/rdf-schema#subClassOf> _:b0 .\n\
                    _:b0 <http://www.w3.org/2000/01/rdf-schema#subClassOf> <a:Y> .\n\
                    <a:X> <a:label> \"two words here\" .";
        let list = parse_ntriples_subclass(text).unwrap();
        assert!(list.pairs().is_empty());
    }

    #[test]
    fn registry_resolves_by_name() {
        let registry = FormatRegistry::builtin();
        assert!(registry.get("pairs").is_some());
        assert!(registry.get("ntriples").is_some());
        assert!(registry.get("owl").is_none());
        assert!(matches!(
            registry.parse("owl", ""),
            Err(OntologyError::UnknownFormat(_))
        ));
        let list = registry.parse("pairs", "A B").unwrap();
        assert_eq!(list.len(), 1);
    }
}
