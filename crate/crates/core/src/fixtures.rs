//! Bundled example dimers.

pub const CONIFOLD: &str = include_str!("../fixtures/conifold.json");
pub const FIG_AB_A: &str = include_str!("../fixtures/fig_ab_a.json");
pub const FIG_AB_B: &str = include_str!("../fixtures/fig_ab_b.json");
pub const FIG_AB_C: &str = include_str!("../fixtures/fig_ab_c.json");
pub const FIG_Q: &str = include_str!("../fixtures/fig_q.json");
pub const FIG_Q_PRIME: &str = include_str!("../fixtures/fig_q_prime.json");

/// Every bundled dimer by name.
pub const DIMERS: &[(&str, &str)] = &[
    ("conifold", CONIFOLD),
    ("fig_ab_a", FIG_AB_A),
    ("fig_ab_b", FIG_AB_B),
    ("fig_ab_c", FIG_AB_C),
    ("fig_q", FIG_Q),
    ("fig_q_prime", FIG_Q_PRIME),
];

pub fn dimer_source(name: &str) -> Option<&'static str> {
    DIMERS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Loads a bundled dimer; panics only if the bundled file is broken.
pub fn load(name: &str) -> crate::DimerQuiver {
    let src = dimer_source(name).unwrap_or_else(|| panic!("no bundled dimer `{name}`"));
    crate::DimerQuiver::from_json(src).unwrap_or_else(|e| panic!("bundled dimer `{name}` is invalid: {e}"))
}
