//! File formats, a parallel executor and the command-line front end for
//! [`primal_core`].

pub mod cli;
pub mod parallel;
pub mod spacefile;

pub use cli::run;
pub use parallel::Pool;
pub use spacefile::{parse_space, write_space, Diagnostic, Renderer, SpaceError, SpaceFile};
