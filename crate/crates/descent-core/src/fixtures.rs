//! Reference data for the torsion families: curve recipes, discriminants,
//! coboundary tables, and printed point coordinates, all as strings in the
//! `la` grammar.  The construction and verification logic lives in
//! [`crate::families`]; this module is data only.
//!
//! The N = 2 and N = 3 tables are literature values (Silverman Prop. X.4.9,
//! Kramer Prop. 1.1(b), Kozuma eq. 3.5); the evaluation-based normalization
//! behind the computed tables needs N >= 4.

/// How the family curve is built from the parameter la.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// Explicit a-invariants [a1, a2, a3, a4, a6].
    Explicit([&'static str; 5]),
    /// Tate normal form y^2 + (1-c)xy - by = x^3 - bx^2.
    TateBC { b: &'static str, c: &'static str },
    /// Tate normal form via r, s with c = s(r-1), b = rc.
    TateRS { r: &'static str, s: &'static str },
}

/// Which coefficient characteristics a family admits, beyond the universal
/// requirement that its discriminant not vanish identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharRule {
    Any,
    NotTwo,
    OnlyTwo,
}

#[derive(Clone, Copy, Debug)]
pub struct FamilyFixture {
    pub n: u32,
    pub recipe: Recipe,
    /// Literature attribution for the table values, or the construction
    /// parameters when the table is computed.
    pub source: &'static str,
    pub chars: CharRule,
    /// The torsion point (x, y); (0, 0) for the Tate-normal families.
    pub point: (&'static str, &'static str),
    /// Reduced discriminant of the recipe curve.
    pub disc: &'static str,
    /// (n, class of delta(nP)) for n = 1..N-1.
    pub delta: &'static [(u32, &'static str)],
    /// Printed coordinates of nP for the n where the sources list them.
    pub points: &'static [(u32, &'static str, &'static str)],
    /// True when the delta column is literature data rather than the output
    /// of the evaluation algorithm (N = 2, 3).
    pub delta_is_data: bool,
}

pub const FIXTURES: &[FamilyFixture] = &[
    FamilyFixture {
        n: 2,
        recipe: Recipe::Explicit(["0", "-4*la", "0", "la", "0"]),
        source: "Silverman, Prop. X.4.9",
        chars: CharRule::NotTwo,
        point: ("0", "0"),
        disc: "256*la^4-64*la^3",
        delta: &[(1, "la")],
        points: &[],
        delta_is_data: true,
    },
    FamilyFixture {
        n: 2,
        recipe: Recipe::Explicit(["1", "1", "0", "0", "la^2"]),
        source: "Kramer, Prop. 1.1(b)",
        chars: CharRule::OnlyTwo,
        point: ("0", "la"),
        disc: "la^2",
        delta: &[(1, "la")],
        points: &[],
        delta_is_data: true,
    },
    FamilyFixture {
        n: 3,
        recipe: Recipe::Explicit(["1", "0", "la", "0", "0"]),
        source: "Kozuma, eq. 3.5",
        chars: CharRule::Any,
        point: ("0", "0"),
        disc: "(1-27*la)*la^3",
        delta: &[(1, "la^2"), (2, "la")],
        points: &[(2, "0", "-la")],
        delta_is_data: true,
    },
    FamilyFixture {
        n: 4,
        recipe: Recipe::TateBC { b: "-la", c: "0" },
        source: "Tate normal form, b = -la, c = 0",
        chars: CharRule::Any,
        point: ("0", "0"),
        disc: "-16*la^5+la^4",
        delta: &[(1, "la^3"), (2, "la^2"), (3, "la")],
        points: &[(2, "-la", "0"), (3, "0", "-la")],
        delta_is_data: false,
    },
    FamilyFixture {
        n: 5,
        recipe: Recipe::TateBC { b: "la", c: "la" },
        source: "Tate normal form, b = c = la",
        chars: CharRule::Any,
        point: ("0", "0"),
        disc: "la^5*(la^2-11*la-1)",
        delta: &[(1, "la^4"), (2, "la^3"), (3, "-la^2"), (4, "la")],
        points: &[(2, "la", "la^2"), (3, "la", "0"), (4, "0", "la")],
        delta_is_data: false,
    },
    FamilyFixture {
        n: 6,
        recipe: Recipe::TateRS { r: "1-la", s: "1" },
        source: "Tate normal form, r = 1-la, s = 1",
        chars: CharRule::Any,
        point: ("0", "0"),
        disc: "la^6*(la-1)^3*(9*la-1)",
        delta: &[
            (1, "la^5*(la-1)^4"),
            (2, "la^4*(la-1)^2"),
            (3, "la^3"),
            (4, "la^2*(la-1)^4"),
            (5, "la*(la-1)^2"),
        ],
        points: &[
            (2, "la*(la-1)", "-la^2*(la-1)"),
            (3, "-la", "la^2"),
            (4, "la*(la-1)", "0"),
            (5, "0", "la*(la-1)"),
        ],
        delta_is_data: false,
    },
    FamilyFixture {
        n: 7,
        recipe: Recipe::TateRS { r: "1-la", s: "1-la" },
        source: "Tate normal form, r = s = 1-la",
        chars: CharRule::Any,
        point: ("0", "0"),
        disc: "-la^7*(la-1)^7*(la^3+5*la^2-8*la+1)",
        delta: &[
            (1, "la^6*(la-1)^3"),
            (2, "la^5*(la-1)^6"),
            (3, "la^4*(la-1)^2"),
            (4, "-la^3*(la-1)^5"),
            (5, "la^2*(la-1)^8"),
            (6, "la*(la-1)^4"),
        ],
        points: &[
            (2, "-la*(la-1)^2", "-la^2*(la-1)^3"),
            (3, "la*(la-1)", "-la^2*(la-1)"),
            (4, "la*(la-1)", "la^2*(la-1)^2"),
            (5, "-la*(la-1)^2", "0"),
            (6, "0", "-la*(la-1)^2"),
        ],
        delta_is_data: false,
    },
    FamilyFixture {
        n: 8,
        recipe: Recipe::TateRS { r: "1/(1+la)", s: "1-la" },
        source: "Tate normal form, r = 1/(1+la), s = 1-la",
        chars: CharRule::Any,
        point: ("0", "0"),
        disc: "la^8*(la-1)^4*(la^2-6*la+1)/(la+1)^10",
        delta: &[
            (1, "la^7*(la-1)^6*(la+1)^4"),
            (2, "la^6*(la-1)^4"),
            (3, "la^5*(la-1)^2*(la+1)^4"),
            (4, "la^4"),
            (5, "la^3*(la-1)^6*(la+1)^4"),
            (6, "la^2*(la-1)^4"),
            (7, "la*(la-1)^2*(la+1)^4"),
        ],
        points: &[
            (2, "la*(la-1)/(la+1)^2", "la^2*(la-1)^2/(la+1)^3"),
            (3, "la*(la-1)/(la+1)", "-la^2*(la-1)/(la+1)^2"),
            (4, "-la/(la+1)^2", "la^2/(la+1)^3"),
            (5, "la*(la-1)/(la+1)", "la^2*(la-1)^2/(la+1)^2"),
            (6, "la*(la-1)/(la+1)^2", "0"),
            (7, "0", "la*(la-1)/(la+1)^2"),
        ],
        delta_is_data: false,
    },
    FamilyFixture {
        n: 9,
        recipe: Recipe::TateRS { r: "la^2+la+1", s: "la+1" },
        source: "Tate normal form, r = la^2+la+1, s = la+1",
        chars: CharRule::Any,
        point: ("0", "0"),
        disc: "la^9*(la+1)^9*(la^2+la+1)^3*(la^3-3*la^2-6*la-1)",
        delta: &[
            (1, "la^8*(la+1)^5*(la^2+la+1)^6"),
            (2, "la^7*(la+1)^10*(la^2+la+1)^3"),
            (3, "-la^6*(la+1)^6"),
            (4, "la^5*(la+1)^2*(la^2+la+1)^6"),
            (5, "-la^4*(la+1)^7*(la^2+la+1)^3"),
            (6, "la^3*(la+1)^3"),
            (7, "-la^2*(la+1)^8*(la^2+la+1)^6"),
            (8, "la*(la+1)^4*(la^2+la+1)^3"),
        ],
        points: &[
            (2, "la*(la+1)^2*(la^2+la+1)", "la^2*(la+1)^4*(la^2+la+1)"),
            (3, "la*(la+1)^2", "la^2*(la+1)^3"),
            (4, "la*(la+1)*(la^2+la+1)", "la^2*(la+1)*(la^2+la+1)^2"),
            (5, "la*(la+1)*(la^2+la+1)", "la^2*(la+1)^2*(la^2+la+1)"),
            (6, "la*(la+1)^2", "la^2*(la+1)^4"),
            (7, "la*(la+1)^2*(la^2+la+1)", "0"),
            (8, "0", "la*(la+1)^2*(la^2+la+1)"),
        ],
        delta_is_data: false,
    },
    FamilyFixture {
        n: 10,
        recipe: Recipe::TateRS { r: "-(la+1)^2/(la^2-la-1)", s: "la+1" },
        source: "Tate normal form, r = -(la+1)^2/(la^2-la-1), s = la+1",
        chars: CharRule::Any,
        point: ("0", "0"),
        disc: "la^10*(la+1)^10*(2*la+1)^5*(4*la^2+6*la+1)/(la^2-la-1)^10",
        delta: &[
            (1, "la^9*(la+1)*(2*la+1)^8*(la^2-la-1)^5"),
            (2, "la^8*(la+1)^2*(2*la+1)^6"),
            (3, "la^7*(la+1)^3*(2*la+1)^4*(la^2-la-1)^5"),
            (4, "la^6*(la+1)^4*(2*la+1)^2"),
            (5, "la^5*(la+1)^5*(la^2-la-1)^5"),
            (6, "la^4*(la+1)^6*(2*la+1)^8"),
            (7, "la^3*(la+1)^7*(2*la+1)^6*(la^2-la-1)^5"),
            (8, "la^2*(la+1)^8*(2*la+1)^4"),
            (9, "la*(la+1)^9*(2*la+1)^2*(la^2-la-1)^5"),
        ],
        points: &[],
        delta_is_data: false,
    },
    FamilyFixture {
        n: 12,
        recipe: Recipe::TateRS { r: "(2*la^2-2*la+1)/la", s: "(3*la^2-3*la+1)/la^2" },
        source: "Tate normal form, r = (2*la^2-2*la+1)/la, s = (3*la^2-3*la+1)/la^2",
        chars: CharRule::Any,
        point: ("0", "0"),
        disc: "(la-1)^12*(2*la-1)^6*(3*la^2-3*la+1)^4*(2*la^2-2*la+1)^3*(6*la^2-6*la+1)/la^24",
        delta: &[
            (1, "-la^11*(la-1)^11*(2*la-1)^10*(2*la^2-2*la+1)^8*(3*la^2-3*la+1)^9"),
            (2, "la^10*(la-1)^10*(2*la-1)^8*(2*la^2-2*la+1)^4*(3*la^2-3*la+1)^6"),
            (3, "-la^9*(la-1)^9*(2*la-1)^6*(3*la^2-3*la+1)^3"),
            (4, "la^8*(la-1)^8*(2*la-1)^4*(2*la^2-2*la+1)^8"),
            (5, "-la^7*(la-1)^7*(2*la-1)^2*(2*la^2-2*la+1)^4*(3*la^2-3*la+1)^9"),
            (6, "la^6*(la-1)^6*(3*la^2-3*la+1)^6"),
            (7, "-la^5*(la-1)^5*(2*la-1)^10*(2*la^2-2*la+1)^8*(3*la^2-3*la+1)^3"),
            (8, "la^4*(la-1)^4*(2*la-1)^8*(2*la^2-2*la+1)^4"),
            (9, "-la^3*(la-1)^3*(2*la-1)^6*(3*la^2-3*la+1)^9"),
            (10, "la^2*(la-1)^2*(2*la-1)^4*(2*la^2-2*la+1)^8*(3*la^2-3*la+1)^6"),
            (11, "-la*(la-1)*(2*la-1)^2*(2*la^2-2*la+1)^4*(3*la^2-3*la+1)^3"),
        ],
        points: &[],
        delta_is_data: false,
    },
];

/// All orders with at least one fixture, ascending.
pub fn supported_orders() -> Vec<u32> {
    let mut out: Vec<u32> = FIXTURES.iter().map(|f| f.n).collect();
    out.dedup();
    out
}

/// The fixture for order n in characteristic ch (0 for Q).
pub fn fixture_for(n: u32, ch: u64) -> Option<&'static FamilyFixture> {
    FIXTURES.iter().find(|f| {
        f.n == n
            && match f.chars {
                CharRule::Any => true,
                CharRule::NotTwo => ch != 2,
                CharRule::OnlyTwo => ch == 2,
            }
    })
}
