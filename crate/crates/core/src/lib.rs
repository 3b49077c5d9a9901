pub mod calculus;
pub mod cli;
pub mod logic;
pub mod models;
pub mod search;
pub mod syntax;
