//! Exact and estimated Kolmogorov complexity bounds for procedural generators.
//!
//! Everything is grounded in one small machine, [`vm`], whose programs are
//! loop-free bit strings. Because it has no loops, the shortest description of
//! a short artefact can be found by brute force ([`complexity`]), which makes
//! the relationship between a generator's code length, the size of its
//! possibility space, and the complexity of its most complex artefact
//! checkable exactly for small generators ([`analysis`]). Larger generators
//! fall back to compression estimates.
//!
//! ```
//! use kstar_core::{DescriptionTable, GeneratorSpec, Method, Program, verify_bounds};
//!
//! let g = GeneratorSpec::vm("011011".parse::<Program>().unwrap());
//! let table = DescriptionTable::build(10).unwrap();
//! let report = verify_bounds(&g, &Method::Exact(&table)).unwrap();
//! assert_eq!(report.k_star, 6);
//! assert_eq!(report.upper_holds, Some(true));
//! ```

pub mod analysis;
pub mod bitstring;
pub mod complexity;
pub mod error;
pub mod generators;
pub mod transform;
pub mod vm;

pub use analysis::{
    bounds_plane_points, certified_lower_bound, certified_lower_bound_with, compare, era_histogram,
    verify_bounds, BoundsReport, CertifiedLower, ComparisonRecord, EraHistogram, KStarKind, Method,
    Movement, PlaneRow,
};
pub use bitstring::BitString;
pub use complexity::{
    description_count, k_exact, k_upper_estimate, ncd, BitLz, CompressorContract, Description,
    DescriptionTable, Estimate, KExact,
};
pub use error::{Error, Fault, Result};
pub use generators::{
    CodeLength, CodeLengthKind, GeneratorKind, GeneratorSpec, IdealityReport, PossibilitySpace,
};
pub use transform::{dec_total, enc, header_width, idealize, RawGenerator};
pub use vm::{ExecutionOutcome, Instruction, Program};
