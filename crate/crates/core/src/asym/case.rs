use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Integral a request or a case refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FuncKind {
    RC,
    RF,
    RD,
    RJ,
    RG,
    /// Legendre's `K`, parameterized by `k'`.
    K,
    /// Legendre's `E`, parameterized by `k'`.
    E,
}

impl FuncKind {
    pub const ALL: [FuncKind; 7] = [
        FuncKind::RC,
        FuncKind::RF,
        FuncKind::RD,
        FuncKind::RJ,
        FuncKind::RG,
        FuncKind::K,
        FuncKind::E,
    ];

    pub fn arity(self) -> usize {
        match self {
            FuncKind::RC => 2,
            FuncKind::RJ => 4,
            FuncKind::K | FuncKind::E => 1,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FuncKind::RC => "rc",
            FuncKind::RF => "rf",
            FuncKind::RD => "rd",
            FuncKind::RJ => "rj",
            FuncKind::RG => "rg",
            FuncKind::K => "k",
            FuncKind::E => "e",
        }
    }
}

impl fmt::Display for FuncKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FuncKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FuncKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown function kind {s:?}"))
    }
}

macro_rules! cases {
    ($($id:ident => $func:ident),* $(,)?) => {
        /// One asymptotic approximation.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum CaseId { $($id),* }

        impl CaseId {
            pub const ALL: &'static [CaseId] = &[$(CaseId::$id),*];

            pub fn name(self) -> &'static str {
                match self { $(CaseId::$id => stringify!($id)),* }
            }

            /// The integral this case approximates.
            pub fn func(self) -> FuncKind {
                match self { $(CaseId::$id => FuncKind::$func),* }
            }
        }
    };
}

cases! {
    C1 => RC, C2a => RC, C2b => RC, C2c => RC,
    F1a => RF, F1b => RF, F1c => RF, F1d => RF, F1e => K, F1f => K, F2a => RF,
    D1 => RD, D2a => RD, D2b => RD, D2c => RD, D3 => RD, D4 => RD,
    J1a => RJ, J1b => RJ, J2a => RJ, J2b => RJ, J3 => RJ,
    J4a => RJ, J4b => RJ, J4c => RJ, J5 => RJ, J6a => RJ, J6complete => RJ,
    G1a => RG, G1b => RG, G1c => E, G2 => RG,
}

impl CaseId {
    /// Cases whose formula evaluates a reference integral for an auxiliary term.
    pub fn needs_reference(self) -> bool {
        use CaseId::*;
        matches!(self, D2b | D2c | D4 | J1a | J2b | J4c | J5 | G2)
    }

    /// Arguments forced to zero by the case (complete-integral variants).
    pub fn zero_slots(self) -> &'static [usize] {
        use CaseId::*;
        match self {
            J1b | J4b => &[2],
            J6complete => &[1],
            G1b => &[0],
            _ => &[],
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("J6c") {
            return Ok(CaseId::J6complete);
        }
        CaseId::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| format!("unknown case {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirty_two_cases_round_trip_through_text() {
        assert_eq!(CaseId::ALL.len(), 32);
        for &c in CaseId::ALL {
            assert_eq!(c.name().parse::<CaseId>().unwrap(), c);
        }
        assert_eq!("j6c".parse::<CaseId>().unwrap(), CaseId::J6complete);
        assert!("Z9".parse::<CaseId>().is_err());
        assert_eq!("RJ".parse::<FuncKind>().unwrap(), FuncKind::RJ);
    }
}
