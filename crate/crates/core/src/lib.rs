//! Chain-condition laboratory for hypergraph forcing posets on trees.
//!
//! The crate builds the poset of finite anti-cliques of a hypergraph on the
//! branches of a tree, splits it into countably many classes given by
//! separator keys, and checks the chain-condition properties of those
//! classes on finite truncations. A second half works on explicit finite
//! posets and hypergraphs.

pub mod adversary;
pub mod branch;
pub mod clique;
pub mod condition;
pub mod error;
pub mod hypergraph;
pub mod partition;
pub mod poset;
pub mod sample;
pub mod verifier;

pub use adversary::{
    find_mono_clique, find_mono_edge, refute_centred_class, MonochromeWitness, PrefixColoring,
};
pub use branch::{concat_branch, delta, dense_node, Branch, DenseSequence, Node, Tail, TreeKind};
pub use condition::{compatible, is_antichain, is_centred, is_n_linked, leq, meet, Condition};
pub use error::{Error, Result};
pub use hypergraph::{is_anti_clique, is_edge, Edge, HypergraphKind};
pub use partition::{class_key, classify, member_of, separator, CaseTag, SeparatorKey};
pub use poset::{
    check_partition, compatible_fp, min_parts, FiniteHypergraph, FinitePoset, PartCondition,
    PartitionCertificate,
};
pub use verifier::{
    check_class_antichain_bound, check_class_k_linked, check_class_linked,
    check_h1_no_unbounded_clique, ramsey_upper, AntichainReport, CliqueReport, LinkedReport,
};
