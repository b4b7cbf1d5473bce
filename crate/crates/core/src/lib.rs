pub mod geometry;
pub mod oracle;
pub mod random;
pub mod recognizer;
pub mod red;
pub mod tree;
