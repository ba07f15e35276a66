pub mod algebra;
pub mod cocycle;
pub mod coloring;
pub mod diagram;
pub mod enumerate;
pub mod fpgroup;
pub mod invariant;
pub mod io;
pub mod perm;
pub mod report;
pub(crate) mod union_find;

pub use algebra::{
    as_biquandle, automorphisms, beta_from_aut, check_virtual_pair, check_yb, connected_components,
    make_named, AlgebraError, Biquandle, Partition, SolutionTable, VirtualPair,
};
pub use enumerate::{
    are_isomorphic, census, enumerate_biquandles, enumerate_involutive, enumerate_virtual_pairs,
    BiquandlePair, CanonicalKey, CensusRow, EnumerateError, IsoClass, PairMode,
};
pub use perm::Perm;
pub use fpgroup::{
    abelianize, cyclic_reduce, evaluate, find_homs, reduce, tietze_simplify, Abelianization, FiniteGroup, FpError,
    Group, Homomorphism, Letter, Presentation, Word,
};
