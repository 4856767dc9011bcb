//! A solver toolkit for vertex deletion problems whose target property is
//! given by a prenex first-order formula.
//!
//! Given a structure `A`, a sentence `phi`, and a budget `k`, the vertex
//! deletion problem asks whether some set `S` of at most `k` elements makes
//! the induced substructure `A \ S` a model of `phi`. The complexity of the
//! fragment of all such problems depends only on `phi`'s quantifier prefix
//! pattern (a word over `{a, e}`) and the class of input structures; this
//! crate ships:
//!
//! * [`structures`]: finite relational structures, graphs with class tags,
//!   induced substructures, and the text file formats;
//! * [`logic`]: formula parsing, pattern extraction, and model checking;
//! * [`classifier`]: the subsequence order on patterns and the exact
//!   three-tier classification per structure class;
//! * [`oracle`]: the brute-force ground truth over all candidate deletion
//!   sets;
//! * [`engines`]: the specialized solvers for the tractable fragments
//!   (witness walks, hitting-set reduction, bounded search trees) and
//!   automatic engine dispatch;
//! * [`reductions`]: matched-reach and set-cover sources and the six
//!   gadget reductions, paired with their canonical target formulas.
//!
//! ```
//! use vdfo::structures::{Graph, GraphClass};
//! use vdfo::{engines, EngineChoice, Formula, VDInstance};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let k3 = Graph::from_edges(GraphClass::Basic, 3, &[(0, 1), (1, 2), (0, 2)])?;
//! let vertex_cover = Formula::parse("A x A y (!(x ~ y))")?;
//! let instance = VDInstance::from_graph(k3, vertex_cover, 2)?;
//! let (verdict, engine) = engines::solve(&instance, EngineChoice::Auto, 100_000_000)?;
//! assert!(verdict.answer); // K3 has a vertex cover of size 2
//! assert_eq!(engine, engines::ResolvedEngine::HittingSet);
//! # Ok(())
//! # }
//! ```

pub mod classifier;
pub mod engines;
pub mod logic;
pub mod oracle;
pub mod reductions;
pub mod structures;

pub use classifier::{
    classify, classify_with_rule, in_family, is_subsequence, PatternFamily, Tier,
};
pub use engines::{auto_dispatch, EngineChoice, EngineError, ResolvedEngine};
pub use logic::{
    evaluate, evaluate_on_alive, evaluate_partial, Formula, LogicError, Pattern, Quantifier,
};
pub use oracle::{
    brute_force_vd, brute_force_vd_bounded, min_deletion_size, min_deletion_size_bounded,
    OracleError, SolveStats, VDInstance, VDVerdict, DEFAULT_WORK_BOUND,
};
pub use reductions::{
    reduce_matched_reach, reduce_set_cover_aea, target_formula, MatchedReachInstance,
    ReducedInstance, ReductionError, ReductionTarget, SetCoverInstance, VertexRole,
};
pub use structures::{
    parse_structure, validate_class, DeletionSet, Graph, GraphClass, ParsedInput,
    RelationalStructure, StructureClass, StructureError,
};
