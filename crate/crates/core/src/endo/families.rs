use std::fmt;

use super::Extension;
use crate::ring::Value;
use crate::search::cycle_representative;

/// Roots of `X^3 - X^2`:
/// `r^τ = τ a2`, `r^τ_t = (1 - τ - t) a2 + a3`, `r_t = a1 + t a2`,
/// `r = a1 + a2 + a3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootFamily {
    Upper { tau: u64 },
    UpperLower { tau: u64, t: u64 },
    Lower { t: u64 },
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    Upper,
    UpperLower,
    Lower,
    Unit,
}

impl RootKind {
    pub const ALL: [RootKind; 4] = [RootKind::Upper, RootKind::UpperLower, RootKind::Lower, RootKind::Unit];

    pub fn label(self) -> &'static str {
        match self {
            RootKind::Upper => "r^τ",
            RootKind::UpperLower => "r^τ_t",
            RootKind::Lower => "r_t",
            RootKind::Unit => "r",
        }
    }
}

impl RootFamily {
    pub fn kind(self) -> RootKind {
        match self {
            RootFamily::Upper { .. } => RootKind::Upper,
            RootFamily::UpperLower { .. } => RootKind::UpperLower,
            RootFamily::Lower { .. } => RootKind::Lower,
            RootFamily::Unit => RootKind::Unit,
        }
    }

    pub fn element(self, ext: &Extension) -> Value {
        match self {
            RootFamily::Upper { tau } => ext.vec([0, tau, 0]),
            RootFamily::UpperLower { tau, t } => ext.vec([0, ext.one_minus(tau, t), 1]),
            RootFamily::Lower { t } => ext.vec([1, t, 0]),
            RootFamily::Unit => ext.unit(),
        }
    }

    /// `r^τ_t` depends on `τ + t` only; the normal form is `r^0_{τ+t}`.
    pub fn normalized(self, ext: &Extension) -> RootFamily {
        match self {
            RootFamily::UpperLower { tau, t } => RootFamily::UpperLower { tau: 0, t: ext.add(tau, t) },
            other => other,
        }
    }

    /// Every parameter instance, including the ones that name the same element.
    pub fn instances(ext: &Extension) -> Vec<RootFamily> {
        let mut out: Vec<RootFamily> = ext.scalars().map(|tau| RootFamily::Upper { tau }).collect();
        for tau in ext.scalars() {
            for t in ext.scalars() {
                out.push(RootFamily::UpperLower { tau, t });
            }
        }
        out.extend(ext.scalars().map(|t| RootFamily::Lower { t }));
        out.push(RootFamily::Unit);
        out
    }

    /// Family of an element, by tag priority `r > r_t > r^τ_t > r^τ`, with
    /// `r^τ_t` normalized to `τ = 0`.
    pub fn classify(ext: &Extension, v: &Value) -> Option<RootFamily> {
        match ext.coords(v) {
            [1, 1, 1] => Some(RootFamily::Unit),
            [1, t, 0] => Some(RootFamily::Lower { t }),
            [0, c, 1] => Some(RootFamily::UpperLower { tau: 0, t: ext.one_minus(c, 0) }),
            [0, tau, 0] => Some(RootFamily::Upper { tau }),
            _ => None,
        }
        .filter(|f| f.element(ext) == *v)
    }
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootFamily::Upper { tau } => write!(f, "r^{tau}"),
            RootFamily::UpperLower { tau, t } => write!(f, "r^{tau}_{t}"),
            RootFamily::Lower { t } => write!(f, "r_{t}"),
            RootFamily::Unit => write!(f, "r"),
        }
    }
}

/// Cycles of splittings of `X^3 - X^2`:
/// `c^τ = (r^τ, r^{-τ}, r)`, `c^τ_t = (r^τ, r^τ_t, r_t)`,
/// `c_t = (r^0, r_t, r^0_t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleFamily {
    Upper { tau: u64 },
    UpperLower { tau: u64, t: u64 },
    Lower { t: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleKind {
    Upper,
    UpperLower,
    Lower,
}

impl CycleKind {
    pub const ALL: [CycleKind; 3] = [CycleKind::Upper, CycleKind::UpperLower, CycleKind::Lower];

    pub fn label(self) -> &'static str {
        match self {
            CycleKind::Upper => "c^τ",
            CycleKind::UpperLower => "c^τ_t",
            CycleKind::Lower => "c_t",
        }
    }
}

impl CycleFamily {
    pub fn kind(self) -> CycleKind {
        match self {
            CycleFamily::Upper { .. } => CycleKind::Upper,
            CycleFamily::UpperLower { .. } => CycleKind::UpperLower,
            CycleFamily::Lower { .. } => CycleKind::Lower,
        }
    }

    pub fn roots(self, ext: &Extension) -> [RootFamily; 3] {
        match self {
            CycleFamily::Upper { tau } => {
                [RootFamily::Upper { tau }, RootFamily::Upper { tau: ext.k(-(tau as i64)) }, RootFamily::Unit]
            }
            CycleFamily::UpperLower { tau, t } => {
                [RootFamily::Upper { tau }, RootFamily::UpperLower { tau, t }, RootFamily::Lower { t }]
            }
            CycleFamily::Lower { t } => {
                [RootFamily::Upper { tau: 0 }, RootFamily::Lower { t }, RootFamily::UpperLower { tau: 0, t }]
            }
        }
    }

    pub fn tuple(self, ext: &Extension) -> Vec<Value> {
        self.roots(ext).iter().map(|r| r.element(ext)).collect()
    }

    /// Least rotation of the tuple.
    pub fn representative(self, ext: &Extension) -> Vec<Value> {
        cycle_representative(&self.tuple(ext))
    }

    pub fn instances(ext: &Extension) -> Vec<CycleFamily> {
        let mut out: Vec<CycleFamily> = ext.scalars().map(|tau| CycleFamily::Upper { tau }).collect();
        for tau in ext.scalars() {
            for t in ext.scalars() {
                out.push(CycleFamily::UpperLower { tau, t });
            }
        }
        out.extend(ext.scalars().map(|t| CycleFamily::Lower { t }));
        out
    }

    /// Families whose cycle is a rotation of `tuple`.
    pub fn classify(ext: &Extension, tuple: &[Value]) -> Vec<CycleFamily> {
        let rep = cycle_representative(tuple);
        CycleFamily::instances(ext).into_iter().filter(|c| c.representative(ext) == rep).collect()
    }
}

impl fmt::Display for CycleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleFamily::Upper { tau } => write!(f, "c^{tau}"),
            CycleFamily::UpperLower { tau, t } => write!(f, "c^{tau}_{t}"),
            CycleFamily::Lower { t } => write!(f, "c_{t}"),
        }
    }
}
