//! Generating sets of coordinate rings of character varieties.

mod build;
mod types;

pub use build::{
    assemble_b, build_m, dedup_cyclic, generating_set, gln_generators, lift_generators, lifted_sln_words,
    quotient_words, sl2_generators, sln_b_words, sln_generators, sln_words, so_even_m_words, so_generators,
    sp_b_words, sp_generators, spans_antisymmetric_part, MAX_SYMMETRIC_DEGREE,
};
pub use types::{GenOptions, Generator, GeneratorSet, Prune};
