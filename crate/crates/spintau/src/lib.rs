//! File formats, on-disk cache, high-precision numerics and the command-line
//! front end for `spintau-core`.

pub mod cache;
pub mod cli;
pub mod format;
pub mod numerics;
pub mod swrec;
pub mod verify;
