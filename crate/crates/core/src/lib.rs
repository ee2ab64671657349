//! Nonclassicality analysis of finite Fock superpositions.
//!
//! The crate builds the generalized binomial state family (and its binomial,
//! coherent and number-state limits), evaluates six moment-based
//! nonclassicality witnesses, the Wigner quasiprobability (closed form plus
//! two independent oracles), the nonclassical volume, and optical tomograms.
//!
//! ```
//! use nonclassical::{hoa, ngbs_state, wigner_point, NgbsParams};
//!
//! let state = ngbs_state(NgbsParams::new(10, 0.8, -0.02).unwrap());
//! assert!(hoa(&state, 2).unwrap().nonclassical);
//! let w = wigner_point(&state, 0.0, 0.0);
//! assert!(w.is_finite());
//! ```

pub mod error;
pub mod math;
pub mod ngbs;
pub mod state;
pub mod tomogram;
pub mod wigner;
pub mod witness;

pub use error::{Error, Result};
pub use ngbs::{
    binomial_state, coherent_cutoff, ngbs_amplitudes, ngbs_moment_closed_form, ngbs_state,
    truncated_coherent_state, NgbsParams,
};
pub use state::{FockSuperposition, MomentSource, MomentTable, NORM_TOLERANCE};
pub use tomogram::{radon_consistency, tomogram_grid, tomogram_point, RadonQuadrature, TomogramGrid};
pub use wigner::{
    nonclassical_volume, recommended_series_depth, volume_refinement, wigner_grid, wigner_point,
    wigner_quadrature, wigner_series, PhaseSpaceGrid, VolumeOptions, VolumeReport, Window,
};
pub use witness::{
    agarwal_tara, evaluate, hillery_hos, hoa, hong_mandel_hos, hosps, moment_order_needed,
    vogel_determinant, Criterion, WitnessResult,
};
