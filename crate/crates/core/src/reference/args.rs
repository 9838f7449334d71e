use crate::error::{Error, Result};
use crate::scalar::Real;

/// Validated arguments of a three-variable integral.
///
/// All finite, nonnegative, at most one of them zero. The stored order is
/// the caller's; [`Sym3Args::sorted`] gives the canonical ascending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym3Args<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Sym3Args<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        Self::check("Sym3Args", x, y, z)?;
        Ok(Self { x, y, z })
    }

    pub(crate) fn check(func: &'static str, x: T, y: T, z: T) -> Result<()> {
        for v in [x, y, z] {
            if !v.is_finite() {
                return Err(Error::domain(func, "arguments must be finite"));
            }
            if v < T::zero() {
                return Err(Error::domain(func, "arguments must be nonnegative"));
            }
        }
        let zeros = [x, y, z].iter().filter(|v| **v == T::zero()).count();
        if zeros > 1 {
            return Err(Error::domain(func, "at most one argument may be zero"));
        }
        Ok(())
    }

    /// Arguments in ascending order.
    pub fn sorted(&self) -> [T; 3] {
        sort3(self.x, self.y, self.z)
    }
}

/// Validated arguments of `R_J(x, y, z, p)`.
///
/// `p` may be negative, in which case the integral is a principal value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym4Args<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub p: T,
}

impl<T: Real> Sym4Args<T> {
    pub fn new(x: T, y: T, z: T, p: T) -> Result<Self> {
        Sym3Args::check("Sym4Args", x, y, z)?;
        if !p.is_finite() || p == T::zero() {
            return Err(Error::domain("Sym4Args", "p must be finite and nonzero"));
        }
        Ok(Self { x, y, z, p })
    }

    pub fn is_principal_value(&self) -> bool {
        self.p < T::zero()
    }
}

pub(crate) fn sort3<T: Real>(a: T, b: T, c: T) -> [T; 3] {
    let (a, b) = if b < a { (b, a) } else { (a, b) };
    let (b, c) = if c < b { (c, b) } else { (b, c) };
    let (a, b) = if b < a { (b, a) } else { (a, b) };
    [a, b, c]
}
