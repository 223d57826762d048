use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    Fuel,
    EnumerationBound,
}

/// Answer of a bounded check. `Refuted` is only produced from a definite
/// counterexample; anything the budgets could not settle is `Unknown`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriState {
    Holds,
    Refuted,
    Unknown(Reason),
}

impl TriState {
    pub fn from_bool(b: bool) -> TriState {
        if b {
            TriState::Holds
        } else {
            TriState::Refuted
        }
    }

    pub fn holds(self) -> bool {
        self == TriState::Holds
    }

    pub fn refuted(self) -> bool {
        self == TriState::Refuted
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, TriState::Unknown(_))
    }

    /// Conjunction: a refutation wins over ignorance.
    pub fn and(self, other: TriState) -> TriState {
        match (self, other) {
            (TriState::Refuted, _) | (_, TriState::Refuted) => TriState::Refuted,
            (TriState::Unknown(r), _) | (_, TriState::Unknown(r)) => TriState::Unknown(r),
            _ => TriState::Holds,
        }
    }

    /// Disjunction: a witness wins over ignorance.
    pub fn or(self, other: TriState) -> TriState {
        match (self, other) {
            (TriState::Holds, _) | (_, TriState::Holds) => TriState::Holds,
            (TriState::Unknown(r), _) | (_, TriState::Unknown(r)) => TriState::Unknown(r),
            _ => TriState::Refuted,
        }
    }

    pub fn not(self) -> TriState {
        match self {
            TriState::Holds => TriState::Refuted,
            TriState::Refuted => TriState::Holds,
            u => u,
        }
    }

    /// `Holds` becomes `Unknown(r)` when the domain quantified over was
    /// truncated.
    pub fn weaken_if(self, truncated: bool, r: Reason) -> TriState {
        if truncated && self == TriState::Holds {
            TriState::Unknown(r)
        } else {
            self
        }
    }

    /// Short-circuiting universal over an iterator.
    pub fn all<I: IntoIterator<Item = T>, T>(items: I, mut f: impl FnMut(T) -> TriState) -> TriState {
        let mut acc = TriState::Holds;
        for x in items {
            acc = acc.and(f(x));
            if acc.refuted() {
                break;
            }
        }
        acc
    }

    /// Short-circuiting existential over an iterator.
    pub fn any<I: IntoIterator<Item = T>, T>(items: I, mut f: impl FnMut(T) -> TriState) -> TriState {
        let mut acc = TriState::Refuted;
        for x in items {
            acc = acc.or(f(x));
            if acc.holds() {
                break;
            }
        }
        acc
    }

    pub fn label(self) -> &'static str {
        match self {
            TriState::Holds => "holds",
            TriState::Refuted => "refuted",
            TriState::Unknown(_) => "unknown",
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriState::Unknown(Reason::Fuel) => write!(f, "unknown (fuel)"),
            TriState::Unknown(Reason::EnumerationBound) => write!(f, "unknown (enumeration-bound)"),
            t => write!(f, "{}", t.label()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [TriState; 4] = [
        TriState::Holds,
        TriState::Refuted,
        TriState::Unknown(Reason::Fuel),
        TriState::Unknown(Reason::EnumerationBound),
    ];

    #[test]
    fn de_morgan() {
        for a in ALL {
            for b in ALL {
                assert_eq!(a.and(b).not(), a.not().or(b.not()));
            }
        }
    }

    #[test]
    fn short_circuit() {
        let mut seen = 0;
        let r = TriState::all(0..10, |i| {
            seen += 1;
            TriState::from_bool(i < 3)
        });
        assert_eq!(r, TriState::Refuted);
        assert_eq!(seen, 4);
    }
}
