//! Recognition of presentations that come from Heegaard diagrams with a
//! planar cut-open surface.

pub mod abelian;
pub mod budget;
pub mod diagram;
pub mod dot;
pub mod enumeration;
pub mod error;
pub mod presentation;
pub mod recognizer;
pub mod report;
pub mod surface;
pub mod whitehead;
pub mod whitehead_graph;
pub mod word;

pub use abelian::{AbelianInvariants, IntegerScalar};
pub use budget::{Meter, SearchBudget};
pub use diagram::{Diagram, DiagramRecord};
pub use error::{Error, ParseError, Result};
pub use presentation::Presentation;
pub use recognizer::{Verdict, VerdictKind};
pub use report::{recognize, Report};
pub use surface::{is_exact_s_diagram, surface_summary, SurfaceSummary};
pub use whitehead::{MoveEffect, WhiteheadMove};
pub use whitehead_graph::WhiteheadGraph;
pub use word::{Letter, Sign, SignedGenerator, Word};

/// Abelian invariants over machine integers.
pub type AbelianInvariants64 = AbelianInvariants<i64>;
/// Abelian invariants over arbitrary-precision integers.
pub type AbelianInvariantsBig = AbelianInvariants<num_bigint::BigInt>;
