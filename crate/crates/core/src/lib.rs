//! Shared substrate for expectation-threshold computations: ground-set
//! combinatorics, exact weight evaluation, up-set membership, thresholds and
//! certificate verification.

pub mod cover;
pub mod error;
pub mod family;
pub mod ground;
pub mod interval;
pub mod ratio;
pub mod real;
pub mod stars;
pub mod upset;
pub mod weights;

pub use cover::{CoverFamily, SearchBudget, StarLevel, StarSystem, WeightBound};
pub use error::{Error, Result};
pub use family::MonotoneFamily;
pub use ground::{GroundSet, SubsetMask};
pub use interval::{Interval, PrecisionLadder, DEFAULT_PRECISION, MAX_PRECISION};
pub use real::{ExactForm, RealNum};
pub use stars::{StarWitness, WitnessStar};
pub use weights::WeightFunction;
