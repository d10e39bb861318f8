pub mod adjoint;
pub mod bateman;
pub mod dsl;
pub mod error;
pub mod ladders;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod wavefn;
pub mod weyl;
