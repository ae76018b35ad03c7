pub mod algebra;
pub mod classify;
pub mod cli;
pub mod error;
pub mod lissajous;
pub mod report;
pub mod shapetrace;
pub mod surd;
pub mod syzygy;
pub mod verify;
pub mod words;
