//! Realizability of Stanley–Reisner rings with even-degree generators as
//! cohomology rings, via homotopy colimits of classifying spaces over the
//! poset of maximal-face intersections.
//!
//! The pipeline is: parse a [`ComplexWithDegrees`], decide realizability
//! with [`full_report`], build the [`ColimitDiagram`] for a good partition,
//! then check it degree by degree with [`verify_construction`].

pub mod complex;
pub mod diagram;
pub mod realize;
pub mod ring;
pub mod steenrod;
pub mod verify;

pub use complex::{ComplexError, ComplexWithDegrees, MaxIntersectionPoset, Simplex};
pub use diagram::{build_diagram, emit_dot, emit_json, ColimitDiagram, DiagramError};
pub use realize::{decide_main, find_partition, full_report, Partition, Verdict};
pub use ring::{sr_hilbert, DegreeMultiset, HilbertFunction};
pub use steenrod::{classify, dirichlet_prime, AdmissibleClass, ObstructionReason};
pub use verify::{pushout_recurrence_check, verify_construction, VerificationReport};
