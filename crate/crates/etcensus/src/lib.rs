//! File formats, parallel drivers, table verification and the command-line
//! front end for the `etcensus-core` engine.

pub mod catalogue_file;
pub mod csv;
pub mod drivers;
pub mod edgelist;
pub mod graph6;
pub mod table;
pub mod verify;
