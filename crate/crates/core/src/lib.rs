//! Stable matching with ties and incomplete lists.
//!
//! The crate provides:
//!
//! * the instance model ([`model`]) and weak-stability checks ([`stability`]);
//! * deterministic mechanisms ([`mechanisms`]): Gale-Shapley for strict
//!   lists, index tie-breaking (2-approximate, one-side strategy-proof), the
//!   translation mechanism for men-only ties (3/2-approximate,
//!   man-strategy-proof) and Király's NA as a manipulable reference;
//! * brute-force oracles ([`oracle`]) for stable-matching enumeration,
//!   approximation ratios, manipulation search and gadget audits;
//! * seeded generators and fixed instances ([`generate`]), the text formats
//!   ([`text`]) and the command-line front end ([`cli`]).
//!
//! ```
//! use smti::generate::{builtin_instance, Builtin};
//! use smti::mechanisms::{Mechanism, MechanismId};
//! use smti::oracle::approx_ratio;
//!
//! let inst = builtin_instance(Builtin::I3);
//! let m = MechanismId::OneTmFifteen.run(&inst).unwrap();
//! assert_eq!(approx_ratio(&inst, &m).unwrap(), 1.into());
//! ```

pub mod cli;
pub mod error;
pub mod generate;
pub mod mechanisms;
pub mod model;
pub mod oracle;
pub mod stability;
pub mod text;

pub use error::{Error, Result};
pub use mechanisms::{Mechanism, MechanismId};
pub use model::{Instance, Matching, PersonId, PreferenceList, Rank, Side};
