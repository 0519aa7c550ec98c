pub mod bench;
pub mod cli;
pub(crate) mod compile;
pub mod dense;
pub mod discrete;
pub mod iastl;
pub mod io;
pub mod rewrite;
pub mod syntax;
pub mod time;
pub mod trace;
pub mod value;
