//! The expression language: groups, homomorphisms, ring constructors,
//! elements and scripts.

pub mod ast;
pub mod eval;
pub mod parser;
pub mod print;

#[cfg(test)]
mod tests;
