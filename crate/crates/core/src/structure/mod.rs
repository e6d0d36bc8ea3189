//! Structure theory and certifying classifiers.

pub mod classify;
pub mod frame;
pub mod idempotent;
pub mod radical;

pub use classify::{
    classify_gamma_max, classify_omega_max, gamma_bound_check, in_omega, recognize_max_nonunital, recognize_parabolic,
    ClassificationWitness, GammaReport, NormalizationTrace, WitnessKind,
};
pub use frame::{radical_frame, radical_frame_case, rank_one_factor, FrameCase, RadicalFrame, RankOneFactor};
pub use idempotent::{idempotent_normal_form, IdempotentForm};
pub use radical::{jacobson_radical, nilpotency_index};
