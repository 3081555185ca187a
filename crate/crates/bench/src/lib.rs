//! Fixed inputs shared by the benchmarks.

/// Γ-formulas of growing size: a slab, a cube with a cut, and a stack of
/// nested triangles in three variables.
pub const GAMMA: &[(&str, &str)] = &[
    ("slab", "0 <= x1 & x1 < 1 & x2 = 2*x1"),
    ("cut cube", "0 < x1 & x1 < 2 & 0 < x2 & x2 < 2 & 0 < x3 & x3 < 2 & x1 + x2 != x3"),
    (
        "triangles",
        "(0 < x1 & x1 < x2 & x2 < 1) | (x1 + x2 + x3 = 1 & x3 > 0) | (x3 < x1 - 1 & x2 != 0)",
    ),
];

/// Mixed formulas with one and three centers.
pub const MIXED: &[(&str, &str)] = &[
    ("one center", "v(x) > g1 & g1 > 0"),
    ("three centers", "v(x*(x - t)*(x - 1)) < g1 & v(x - t) >= 2 | g1 = v(x - t^2)"),
];

/// Tropical polynomials with three and six terms.
pub const TROP: &[(&str, &str)] = &[
    ("line", "0@(1,0) + 0@(0,1) + 0@(0,0)"),
    ("conic", "0@(2,0) + 1@(1,1) + 0@(0,2) + 1@(1,0) + 1@(0,1) + 3@(0,0)"),
];

/// Lower sets given by their maxima.
pub const LOWER: &[(&str, &[[u32; 2]])] = &[
    ("D2", &[[1, 4], [2, 2], [4, 1]]),
    ("staircase", &[[0, 12], [2, 10], [4, 8], [6, 6], [8, 4], [10, 2], [12, 0]]),
];
