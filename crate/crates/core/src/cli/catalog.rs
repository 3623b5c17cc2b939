//! The suite registry.

use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteInfo {
    pub name: &'static str,
    /// The statement the suite checks.
    pub anchor: &'static str,
    pub description: &'static str,
}

pub const CATALOG: [SuiteInfo; 10] = [
    SuiteInfo {
        name: "branching-support",
        anchor: "v_{λ,j} on N^β and its interpolation by w_λ",
        description: "v_{λ,j}(N^β) ⊂ 1 + p^βZ_p for every critical j, the product formula, and v_{λ,j} = w_λ·(v_(n),2/v_(n),1)^j on N^β",
    },
    SuiteInfo {
        name: "cell-support",
        anchor: "support of the Shalika integrand on the big cell",
        description: "the support predicate against Bruhat-cell membership of the assembled matrix, and the Borel part on the support",
    },
    SuiteInfo {
        name: "comparison",
        anchor: "constancy of the Iwahori/parahoric interpolation ratio",
        description: "the ratio of the two local interpolation routes is one rational across all (χ, j) pairs",
    },
    SuiteInfo {
        name: "euler-factors",
        anchor: "modified Euler factors at p",
        description: "ramified e_p/Q′ = α_{p,n}^{−β}; unramified e_p/Q at s = j + 1/2 is (1 − p)^n times a unit monomial",
    },
    SuiteInfo {
        name: "hecke-eigen",
        anchor: "big-cell vectors are U_{p,r}-eigenvectors",
        description: "U_{p,r}f^σ = α_σ(U_{p,r})f^σ by explicit coset sums",
    },
    SuiteInfo {
        name: "interp-diagram",
        anchor: "κ maps commute with specialisation and evaluation at z^j",
        description: "sp_λ∘κ_Ω = κ_λ∘sp_λ modulo p^M and (ev at z^j)∘κ_λ = κ_{λ,j}∘r_λ on random finite distributions",
    },
    SuiteInfo {
        name: "spin-enum",
        anchor: "refinement census, spin refinements and their Shalika witness",
        description: "(2n)! refinements, 2^n·n! spin ones, GSpin factorisation exactly on the spin set, and a nonzero Shalika value for each spin refinement",
    },
    SuiteInfo {
        name: "weyl-transfer",
        anchor: "Weyl group transfer between GSpin(2n+1) and GL(2n)",
        description: "ȷ is an isomorphism onto W_G^0, equivariant on characters, ȷ∨ equivariant on cocharacters, and pairings match",
    },
    SuiteInfo {
        name: "zeta-iwahori",
        anchor: "Iwahori-level twisted zeta integral",
        description: "brute-force shell sum against the closed form for every primitive χ (n = 1)",
    },
    SuiteInfo {
        name: "zeta-parahoric",
        anchor: "parahoric-level twisted zeta integral",
        description: "brute-force shell sum against both rows of the closed form (n = 1)",
    },
];

pub fn suite_names() -> Vec<&'static str> {
    CATALOG.iter().map(|s| s.name).collect()
}

pub fn is_known(name: &str) -> bool {
    CATALOG.iter().any(|s| s.name == name)
}

pub fn lookup(name: &str) -> Option<&'static SuiteInfo> {
    CATALOG.iter().find(|s| s.name == name)
}
