//! Generic initial ideals, partial elimination ideals and the monomial
//! combinatorics around them.

pub mod error;
pub mod field;
pub mod fourier_motzkin;
pub mod gin;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod monomial_ideal;
pub mod order;
pub mod pei;
pub mod points;
pub mod poly;
pub mod ring;
pub mod segment;
pub mod sylvester;
pub mod univariate;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use gin::{apply_change, gin, random_coordinate_change, CoordinateChange, GinResult};
pub use groebner::{buchberger, normal_form, GroebnerBasis};
pub use ideal::{IdealHandle, DEFAULT_DEGREE_CAP};
pub use monomial::Monomial;
pub use monomial_ideal::{BettiTable, HilbertData, HilbertFunction, MonomialIdeal, SaturationTarget};
pub use order::{OrderSpec, TermOrder};
pub use pei::{
    count_distinct_points, partial_elim_ideals, pei_oracle, x0_profile, PartialElimTower, X0Profile,
};
pub use poly::Polynomial;
pub use ring::Ring;
pub use sylvester::{
    build_sylp, en_regularity, kp_regularity_formula, maximal_minors_ideal, unit_reduce, MinorsIdeal, PolyMatrix,
};
pub use points::{
    evaluation_matrix, genericity_spot_check, random_points, seven_special_points, ten_points, vanishing_ideal,
    GenericityReport, PointSet,
};
pub use fourier_motzkin::{segment_witness, verify_integer_weight, verify_weight, WeightWitness};
pub use segment::{
    enumerate_borel_by_hf, is_segment, lex_ideal_of_hf, segment_ideal_of, segment_space, SegmentIdeal, SegmentSpace,
};
