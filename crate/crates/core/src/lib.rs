pub mod algebra;
pub mod bar;
pub mod bialgebroid;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod field;
pub mod linalg;
pub mod operad;
pub mod report;
pub mod umodule;
pub mod yd;
