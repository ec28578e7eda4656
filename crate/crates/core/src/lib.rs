pub mod connectivity;
pub mod error;
pub mod fpt;
pub mod graph;
pub mod io;
pub mod planar;
pub mod powercut;
pub mod treewidth;

pub use error::{Error, Result};
pub use graph::{EdgeId, MultiGraph, VertexId};
pub use powercut::{Cut, PowercutTable, TerminalPartition};
