pub mod code;
pub mod decoder;
pub mod field;
pub mod harness;
mod linalg;
mod ntt;
pub mod oracle;
pub mod poly;
pub mod rng;
pub mod toeplitz;
pub mod transform;
