//! Published values the `check` command compares against.

use conewright_core::Case;

/// Table 1: `L^3, L^2H, LH^2, H^3, c2.L, c2.H, #ODP` of `X_F`.
pub const TABLE1: [(Case, [i64; 7]); 3] = [
    (Case::V4, [80, 48, 26, 12, 104, 60, 26]),
    (Case::V5, [110, 63, 33, 15, 116, 66, 29]),
    (Case::Gr24, [85, 45, 21, 8, 106, 56, 41]),
];

/// Table 2: `(chi_top, h^{2,1})` of `X_F`.
pub const TABLE2: [(Case, [i64; 2]); 3] = [
    (Case::V4, [-92, 48]),
    (Case::V5, [-92, 48]),
    (Case::Gr24, [-94, 49]),
];

/// Table 3: the flopped V5 threefold.
pub const TABLE3: [i64; 7] = [34, 23, 13, 5, 76, 50, 54];

/// Euler numbers of smooth anticanonical threefolds (derived, not tabulated).
pub const ANTICANONICAL_EULER: [(Case, i64); 3] =
    [(Case::V4, -144), (Case::V5, -150), (Case::Gr24, -176)];

/// `(L_E H_E^2, L_E^2 H_E)` on the dual side.
pub const DUAL_SIDE: [(Case, [i64; 2]); 3] = [
    (Case::V4, [10, 0]),
    (Case::V5, [12, 0]),
    (Case::Gr24, [11, 5]),
];

pub const FANO_INDEX: [(Case, i64); 3] = [(Case::V4, 3), (Case::V5, 3), (Case::Gr24, 4)];

/// `theta_* L'` for the V5 and Gr(2,4) flops.
pub const FLOP_IMAGE: (i64, i64) = (5, -6);

pub const INVOLUTION_DEGREE: i64 = 8;
pub const INVOLUTION: [[i64; 2]; 2] = [[9, 8], [-10, -9]];

pub const WALLS: [(Case, &[&str]); 3] = [
    (Case::V4, &["15L-17H", "8L-9H", "L-H", "H", "-L+3H"]),
    (Case::V5, &["4L-5H", "9L-11H", "L-H", "H", "-L+3H"]),
    (Case::Gr24, &["4L-5H", "L-H", "H", "-L+4H"]),
];

/// Planes in the V4 construction and the degree of the V5 Porteous surface.
pub const PORTEOUS_PLANES: i64 = 14;
pub const PORTEOUS_SIGMA_DEGREE: i64 = 2;

pub const FIBRES: [(Case, &[(&str, i64)]); 3] = [
    (Case::V4, &[("c2(X_E).L_E", 24), ("(L-H)^3 on X_F", 2)]),
    (
        Case::V5,
        &[
            ("c2(X_E).L_E", 24),
            ("c2(T_V5).c2(F)", 53),
            ("c2(X_F++).(L'-H')", 24),
        ],
    ),
    (Case::Gr24, &[("L_E^2.H_E", 5), ("(L'-H')^2.H'", 5)]),
];

/// Intersection numbers of the Gr(2,4) flop side on the blown-up P4.
pub const BLOWUP_TRIPLES: [i64; 4] = [47, 28, 14, 5];

pub fn lookup<T: Copy>(table: &[(Case, T)], case: Case) -> T {
    table
        .iter()
        .find(|(c, _)| *c == case)
        .map(|(_, v)| *v)
        .expect("every case has an entry")
}
