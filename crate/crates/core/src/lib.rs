pub mod compose;
pub mod graph;
pub mod normalize;
pub mod oracle;
pub mod pcr;
pub mod rational;
pub mod reduce;
