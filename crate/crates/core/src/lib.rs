pub mod error;
pub mod ordinal;
pub mod spacexpr;
pub mod embed;
pub mod stable;
pub mod families;
pub mod cli;
