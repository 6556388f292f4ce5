//! Direct-sum decompositions of homogeneous forms via the center of their
//! symmetric tensor.

pub mod center;
pub mod corpus;
pub mod decompose;
pub mod exactlinalg;
pub mod families;
pub mod jacobian;
pub mod multipoly;
pub mod report;
pub mod scalars;
pub mod symtensor;
pub mod unipoly;
