//! Central values: Dirichlet, cusp twists and triple products.

pub mod afe;
pub mod cusp;
pub mod gamma;
pub mod hurwitz;
pub mod weight;

pub use afe::{
    central_values, completed_l, dirichlet_central, functional_equation_defect, root_number,
    root_number_conjugate_phase, triple_product_afe, twisted_divisor3, DirichletAfe, LKind, LValue, Method,
};
pub use cusp::{cusp_central_values, cusp_root_number, cusp_twist_central, cusp_twist_with_sign, hecke_for, CuspAfe};
pub use gamma::{gamma, ln_gamma};
pub use hurwitz::{hurwitz_batch, hurwitz_oracle, hurwitz_zeta};
pub use weight::{AfeWeight, Contour, Damping, GammaFactor};
