pub mod monomial;
pub mod poly;
pub mod text;
pub mod var;
pub mod weight;
