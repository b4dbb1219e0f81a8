/// Size guards for combinatorial constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest basis any based module may have.
    pub max_basis: u128,
    /// Largest number of generators of an explicit (inhomogeneous) cochain group.
    pub max_cochain: u128,
}

pub const DEFAULT_MAX_BASIS: u128 = 50_000;
pub const DEFAULT_MAX_COCHAIN: u128 = 2_048;

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis: DEFAULT_MAX_BASIS, max_cochain: DEFAULT_MAX_COCHAIN }
    }
}

impl Limits {
    pub fn with_max_basis(max_basis: u128) -> Self {
        Limits { max_basis, ..Self::default() }
    }

    pub(crate) fn check_basis(&self, what: impl Into<String>, size: u128) -> crate::Result<()> {
        if size > self.max_basis {
            return Err(crate::Error::Guard {
                what: what.into(),
                size,
                limit: self.max_basis,
                flag: "--max-basis",
            });
        }
        Ok(())
    }

    pub(crate) fn check_cochain(&self, what: impl Into<String>, size: u128) -> crate::Result<()> {
        if size > self.max_cochain {
            return Err(crate::Error::Guard {
                what: what.into(),
                size,
                limit: self.max_cochain,
                flag: "Limits::max_cochain",
            });
        }
        Ok(())
    }
}
