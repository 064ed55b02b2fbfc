//! A small bundled taxonomy, used as the default benchmark ontology and by
//! the test suites. It is a fragment of the public SWING aggregate-quarrying
//! domain ontology: an organism subtree plus the administrative subtree
//! around `Community`, which is the smallest fragment exercising both
//! single-path and multi-path concepts.

/// Child/superconcept pairs in the `pairs` ingestion format.
pub const SWING_TAXONOMY_PAIRS: &str = "\
# Fragment of the SWING domain ontology (http://swing.uni-muenster.de/core/Swing/).
# organism subtree
http://swing.uni-muenster.de/core/Swing/Plant http://swing.uni-muenster.de/core/Swing/Organism
http://swing.uni-muenster.de/core/Swing/Animal http://swing.uni-muenster.de/core/Swing/Organism
http://swing.uni-muenster.de/core/Swing/Invertebrate http://swing.uni-muenster.de/core/Swing/Animal
http://swing.uni-muenster.de/core/Swing/Vertebrate http://swing.uni-muenster.de/core/Swing/Animal
http://swing.uni-muenster.de/core/Swing/Arthropod http://swing.uni-muenster.de/core/Swing/Invertebrate
http://swing.uni-muenster.de/core/Swing/Bird http://swing.uni-muenster.de/core/Swing/Vertebrate
http://swing.uni-muenster.de/core/Swing/Amphibian http://swing.uni-muenster.de/core/Swing/Vertebrate
http://swing.uni-muenster.de/core/Swing/Reptile http://swing.uni-muenster.de/core/Swing/Vertebrate
http://swing.uni-muenster.de/core/Swing/Fish http://swing.uni-muenster.de/core/Swing/Vertebrate
http://swing.uni-muenster.de/core/Swing/Mammal http://swing.uni-muenster.de/core/Swing/Vertebrate
http://swing.uni-muenster.de/core/Swing/Frog http://swing.uni-muenster.de/core/Swing/Amphibian
http://swing.uni-muenster.de/core/Swing/Snake http://swing.uni-muenster.de/core/Swing/Reptile
# administrative subtree (Community reaches its roots over five distinct paths)
http://swing.uni-muenster.de/core/Swing/Community http://swing.uni-muenster.de/core/Swing/AdministrativeEntity
http://swing.uni-muenster.de/core/Swing/AdministrativeEntity http://swing.uni-muenster.de/core/Swing/ConsumptionEntity
http://swing.uni-muenster.de/core/Swing/Community http://swing.uni-muenster.de/core/Swing/CommunityIdentifier
http://swing.uni-muenster.de/core/Swing/CommunityIdentifier http://swing.uni-muenster.de/core/Swing/GeographicIdentifier
http://swing.uni-muenster.de/core/Swing/GeographicIdentifier http://swing.uni-muenster.de/core/Swing/SpatialReference
http://swing.uni-muenster.de/core/Swing/Community http://swing.uni-muenster.de/core/Swing/INSEECODE
http://swing.uni-muenster.de/core/Swing/INSEECODE http://swing.uni-muenster.de/core/Swing/GeographicIdentifier
http://swing.uni-muenster.de/core/Swing/GeographicIdentifier http://swing.uni-muenster.de/core/Swing/Identifier
";

/// Namespace prefix of the bundled taxonomy.
pub const SWING_NAMESPACE: &str = "http://swing.uni-muenster.de/core/Swing/";

/// Full URI of a concept in the bundled taxonomy.
pub fn swing_uri(local_name: &str) -> String {
    format!("{SWING_NAMESPACE}{local_name}")
}
