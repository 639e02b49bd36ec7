//! Finite orthogonality spaces in exact rational arithmetic: event
//! structures, the OS1–OS6 axioms, state polytopes, unique conditional
//! probabilities, interference scans and a search over block pastings.

pub mod axioms;
pub mod error;
pub mod events;
pub mod logic;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod report;
pub mod scan;
pub mod search;
pub mod ucp;

pub use error::{Error, Result};
pub use events::EventStructure;
pub use logic::FiniteLogic;
pub use polytope::FiniteState;
pub use rational::Q;
