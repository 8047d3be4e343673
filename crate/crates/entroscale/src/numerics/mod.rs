pub mod matrix;
pub mod optimize;
pub mod quadrature;
pub mod rng;
pub mod softmax;
pub mod special;
