//! Hardy's nonlocal game and its relatives.
//!
//! - [`game`]: explicit finite games, Hardy's verifier, lifted games `G^δ_∞`,
//!   truncation to bounded answer length, and a JSON game format.
//! - [`classical`]: exact classical values by exhaustive search over
//!   deterministic strategies.
//! - [`quantum`]: Hardy states, the `n`-copy strategy family, and exact
//!   evaluation of finite quantum strategies.
//! - [`lift`]: lifted-game success under i.i.d. play, rejection sets and
//!   their dichotomy, and dimension witness bounds.
//! - [`referee`]: seeded Monte Carlo play against the verifier.
//! - [`commands`]: the reports behind the `hardy-games` binary.

pub mod classical;
pub mod commands;
pub mod error;
pub mod game;
pub mod lift;
pub mod linalg;
pub mod quantum;
pub mod referee;

pub use error::{Error, Result};
