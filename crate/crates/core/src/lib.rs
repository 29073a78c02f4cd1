pub mod autgroup;
pub mod cli;
pub mod curve;
pub mod ff;
pub mod numsemi;
pub mod polyfam;
pub mod series;
pub mod weier;
mod serial;
