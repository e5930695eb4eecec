//! Twisted cubic moments, mollified moments, the arithmetic-side expansion of
//! the even moment, and non-vanishing censuses. Every moment at a given `q`
//! reads from one batch of central values.

mod arithmetic;
mod census;
mod cubic;
mod mollifier;

pub use arithmetic::{moment_via_arithmetic, ArithmeticMoment, MAX_ARITHMETIC_Q};
pub use census::{census, census_cusp, census_with, random_twists, CensusResult};
pub use cubic::{cubic_moment_cusp, cubic_moment_dirichlet, even_moment, MomentKind, MomentResult};
pub use mollifier::{
    fourth_cusp_reference, mobius, mollified_cubic, mollified_fourth, mollified_fourth_cusp, MollifiedCubic,
    MollifierKind, MollifierSpec,
};

use crate::characters::CharacterGroup;
use crate::hecke::HeckeTable;
use crate::l_values::{central_values, cusp_central_values, hecke_for, Damping, DirichletAfe};
use crate::{Error, Result, C64};

/// Character group plus the central-value batches for one modulus.
pub struct MomentContext {
    pub group: CharacterGroup<f64>,
    pub damping: Damping,
    /// `L(χ_t, ½)`; entry `0` is `NaN`.
    pub l: Vec<C64>,
    cusp: Option<(Vec<C64>, HeckeTable)>,
}

impl MomentContext {
    pub fn new(q: u64, damping: Damping) -> Result<Self> {
        let group = CharacterGroup::<f64>::from_modulus(q)?;
        let afe = DirichletAfe::new(q, damping);
        let l = central_values(&group, &afe)?;
        Ok(MomentContext { group, damping, l, cusp: None })
    }

    /// Build from externally supplied values (e.g. the Hurwitz oracle).
    pub fn from_values(group: CharacterGroup<f64>, l: Vec<C64>, damping: Damping) -> Result<Self> {
        if l.len() != group.order() {
            return Err(Error::Length { expected: group.order(), got: l.len() });
        }
        Ok(MomentContext { group, damping, l, cusp: None })
    }

    /// Add `L(Δ⊗χ_t, ½)` for every `t`.
    pub fn with_cusp(mut self) -> Result<Self> {
        let (afe, hecke) = hecke_for(self.q(), self.damping)?;
        let vals = cusp_central_values(&self.group, &afe, &hecke)?;
        self.cusp = Some((vals, hecke));
        Ok(self)
    }

    pub fn q(&self) -> u64 {
        self.group.q()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn cusp_values(&self) -> Result<&[C64]> {
        self.cusp
            .as_ref()
            .map(|c| c.0.as_slice())
            .ok_or_else(|| Error::Invalid("cusp values not computed; call with_cusp".into()))
    }

    pub fn hecke(&self) -> Result<&HeckeTable> {
        self.cusp
            .as_ref()
            .map(|c| &c.1)
            .ok_or_else(|| Error::Invalid("cusp values not computed; call with_cusp".into()))
    }

    /// `t` is dropped from the Dirichlet moment when one of the three factors is principal.
    pub fn excluded(&self, t: usize, t1: usize, t2: usize) -> bool {
        let n = self.order();
        t % n == 0 || (t + t1) % n == 0 || (t + t2) % n == 0
    }

    pub(crate) fn check_ell(&self, ell: u64) -> Result<()> {
        if ell == 0 || ell % self.q() == 0 {
            return Err(Error::ZeroResidue(ell as i64, self.q()));
        }
        Ok(())
    }
}
