//! Tag clouds over the identifier names of Java source trees.
//!
//! The pipeline is: [`extractor`] finds declared names, [`splitter`] breaks
//! them into lowercase words, [`stemmer`] reduces words to base forms,
//! [`cloudmodel`] counts and filters tags, and [`renderer`] draws them.
//! [`evaluator`] checks a cloud against an independent brute-force count.

pub mod cli;
pub mod cloudmodel;
pub mod evaluator;
pub mod extractor;
pub mod renderer;
pub mod splitter;
pub mod stemmer;
