//! A computational laboratory for quiver representations over the exact
//! rationals: root systems and reflection combinatorics, Hom/Ext spaces of
//! explicit representations, rigid classification for two-vertex quivers,
//! an orbit-category model with cluster-tilting mutation, and verification
//! campaigns that tie the pieces together.

pub mod error;
mod kernel;
mod modp;
pub mod quiver;
pub mod rat;
pub mod ratmat;
pub mod cluster;
pub mod rep;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use quiver::{
    coxeter_transform, euler_form, kronecker_sequences, kronecker_weyl_word, positive_real_roots,
    simple_reflection, tits_form, CoxeterDirection, DimVector, Quiver,
};
pub use rat::Rat;
pub use ratmat::{random_matrix, RatMatrix};
pub use cluster::{ClusterIndec, ClusterModel, ClusterObject, TiltingSet, Window};
pub use report::{CheckRecord, Report, Status};
pub use verify::{kac_rigid_check, run_all, verify_degree3, verify_degree6, Campaign, CampaignConfig};

pub use rep::{
    end_radical_dim, ext1_dim, ext1_dim_unchecked, ext1_positive, generic_rigid_rep, hom_dim,
    hom_space, injective, is_indecomposable, is_rigid, is_schur_root, iso_check,
    kronecker_standard, projective, projective_presentation, random_rep, rigid_indec_classify,
    tau, tau_inverse, tau_rigid, HomSpace, KroneckerSeries, Rep, TauDirection,
};
