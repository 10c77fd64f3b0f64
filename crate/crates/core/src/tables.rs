//! Baked candidate coefficient tables for the closed-form expected
//! profits: the transcription the startup audit checks (and where needed
//! corrects) against the exact integrator. See [`crate::closedform`].

// Coefficient = base + per_cs*cs + per_cv*cv, stored as
// (base_num, base_den, cs_num, cs_den, cv_num, cv_den).
pub(crate) type RawCoeff = (i64, i64, i64, i64, i64, i64);

pub(crate) const SIMPLE_BREAKS: [(i64, i64); 4] = [(0, 1), (1, 4), (3, 4), (1, 1)];

// Ascending powers of b (quadratics; cubic slot kept for a uniform layout).
pub(crate) const SIMPLE_COEFFS: [[RawCoeff; 4]; 3] = [
    [(1, 1, -1, 1, -2, 1), (0, 1, 0, 1, 1, 1), (-1, 2, 1, 4, 0, 1), (0, 1, 0, 1, 0, 1)],
    [(17, 16, -15, 16, -5, 2), (0, 1, -3, 4, 3, 1), (-3, 2, 9, 4, 0, 1), (0, 1, 0, 1, 0, 1)],
    [(1, 2, -3, 4, -1, 1), (0, 1, 1, 2, 1, 1), (-1, 2, 1, 4, 0, 1), (0, 1, 0, 1, 0, 1)],
];

pub(crate) const BLOCK_BREAKS: [(i64, i64); 9] = [
    (0, 1), (1, 4), (1, 2), (3, 4), (1, 1), (5, 4), (3, 2), (7, 4), (2, 1),
];

pub(crate) const BLOCK_COEFFS: [[RawCoeff; 4]; 8] = [
    [(1, 1, -1, 1, -2, 1), (0, 1, 0, 1, 0, 1), (0, 1, 1, 8, 1, 4), (-1, 12, 0, 1, 0, 1)],
    [(383, 384, -31, 32, -31, 16), (0, 1, -1, 4, -1, 2), (1, 8, 5, 8, 5, 4), (-5, 12, 0, 1, 0, 1)],
    [(125, 128, -27, 32, -27, 16), (0, 1, -3, 4, -3, 2), (1, 2, 9, 8, 9, 4), (-3, 4, 0, 1, 0, 1)],
    [(67, 64, -9, 8, -9, 4), (0, 1, 0, 1, 0, 1), (0, 1, 5, 8, 5, 4), (-5, 12, 0, 1, 0, 1)],
    [(281, 192, -19, 8, -19, 4), (0, 1, 5, 2, 5, 1), (-5, 4, -5, 8, -5, 4), (5, 12, 0, 1, 0, 1)],
    [(229, 128, -101, 32, -101, 16), (0, 1, 15, 4, 15, 2), (-15, 8, -9, 8, -9, 4), (3, 4, 0, 1, 0, 1)],
    [(157, 128, -65, 32, -65, 16), (0, 1, 9, 4, 9, 2), (-9, 8, -5, 8, -5, 4), (5, 12, 0, 1, 0, 1)],
    [(1, 3, -1, 2, -1, 1), (0, 1, 1, 2, 1, 1), (-1, 4, -1, 8, -1, 4), (1, 12, 0, 1, 0, 1)],
];

// Candidate two-variable polynomials in (bs, bv), print order; terms are
// (bs_pow, bv_pow, coeff) with coeff affine in (cs, cv).
pub(crate) const MULTIPART_EXPRS: [&[(u8, u8, RawCoeff)]; 21] = [
    &[(0, 0, (1, 1, -1, 1, -2, 1)), (0, 1, (0, 1, 0, 1, 1, 1)), (0, 2, (-1, 2, 1, 4, 0, 1)), (1, 1, (0, 1, 1, 2, 1, 2)), (1, 2, (-1, 2, 0, 1, 0, 1)), (2, 0, (0, 1, 1, 8, 1, 4)), (2, 1, (-1, 2, 0, 1, 0, 1)), (3, 0, (-1, 12, 0, 1, 0, 1))],
    &[(0, 0, (383, 384, -31, 32, -31, 16)), (0, 1, (0, 1, -1, 2, 1, 4)), (0, 2, (-1, 8, 7, 4, 2, 1)), (0, 3, (-4, 3, 0, 1, 0, 1)), (1, 0, (0, 1, -1, 4, -1, 2)), (1, 1, (1, 2, 5, 2, 7, 2)), (1, 2, (-7, 2, 0, 1, 0, 1)), (2, 0, (1, 8, 5, 8, 5, 4)), (2, 1, (-5, 2, 0, 1, 0, 1)), (3, 0, (-5, 12, 0, 1, 0, 1))],
    &[(0, 0, (125, 128, -27, 32, -27, 16)), (0, 1, (0, 1, -3, 2, -7, 4)), (0, 2, (7, 8, 15, 4, 6, 1)), (0, 3, (-4, 1, 0, 1, 0, 1)), (1, 0, (0, 1, -3, 4, -3, 2)), (1, 1, (3, 2, 9, 2, 15, 2)), (1, 2, (-15, 2, 0, 1, 0, 1)), (2, 0, (3, 8, 9, 8, 9, 4)), (2, 1, (-9, 2, 0, 1, 0, 1)), (3, 0, (-3, 4, 0, 1, 0, 1))],
    &[(0, 0, (67, 64, -9, 8, -9, 4)), (0, 1, (0, 1, 0, 1, 1, 2)), (0, 2, (-1, 4, 9, 4, 4, 1)), (0, 3, (-8, 3, 0, 1, 0, 1)), (1, 1, (0, 1, 5, 2, 9, 2)), (1, 2, (-9, 2, 0, 1, 0, 1)), (2, 0, (0, 1, 5, 8, 5, 4)), (2, 1, (-5, 2, 0, 1, 0, 1)), (3, 0, (-5, 12, 0, 1, 0, 1))],
    &[(0, 0, (265, 192, -17, 8, -17, 4)), (0, 1, (0, 1, 4, 1, 17, 2)), (0, 2, (-17, 4, -7, 4, -4, 1)), (0, 3, (8, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 2, 1, 4, 1)), (1, 1, (-4, 1, -3, 2, -7, 2)), (1, 2, (7, 2, 0, 1, 0, 1)), (2, 0, (-1, 1, -3, 8, -3, 4)), (2, 1, (3, 2, 0, 1, 0, 1)), (3, 0, (1, 4, 0, 1, 0, 1))],
    &[(0, 0, (281, 192, -19, 8, -19, 4)), (0, 1, (0, 1, 5, 1, 10, 1)), (0, 2, (-5, 1, -5, 2, -5, 1)), (0, 3, (10, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 5, 2, 5, 1)), (1, 1, (-5, 1, -5, 2, -5, 1)), (1, 2, (5, 1, 0, 1, 0, 1)), (2, 0, (-5, 4, -5, 8, -5, 4)), (2, 1, (5, 2, 0, 1, 0, 1)), (3, 0, (5, 12, 0, 1, 0, 1))],
    &[(0, 0, (229, 128, -101, 32, -101, 16)), (0, 1, (0, 1, 15, 2, 15, 1)), (0, 2, (-15, 2, -9, 2, -9, 1)), (0, 3, (6, 1, 0, 1, 0, 1)), (1, 0, (0, 1, 15, 4, 15, 2)), (1, 1, (-15, 2, -9, 2, -9, 1)), (1, 2, (9, 1, 0, 1, 0, 1)), (2, 0, (-15, 8, -9, 8, -9, 4)), (2, 1, (9, 2, 0, 1, 0, 1)), (3, 0, (3, 4, 0, 1, 0, 1))],
    &[(0, 0, (157, 128, -65, 32, -65, 16)), (0, 1, (0, 1, 9, 2, 9, 1)), (0, 2, (-9, 2, -5, 2, -5, 1)), (0, 3, (10, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 9, 4, 9, 2)), (1, 1, (-9, 2, -5, 2, -5, 1)), (1, 2, (5, 1, 0, 1, 0, 1)), (2, 0, (-9, 8, -5, 8, -5, 4)), (2, 1, (5, 2, 0, 1, 0, 1)), (3, 0, (5, 12, 0, 1, 0, 1))],
    &[(0, 0, (1, 3, -1, 2, -1, 1)), (0, 1, (0, 1, 1, 1, 2, 1)), (0, 2, (-1, 1, -1, 2, -1, 1)), (0, 3, (2, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 1, 2, 1, 1)), (1, 1, (-1, 1, -1, 2, -1, 1)), (1, 2, (1, 1, 0, 1, 0, 1)), (2, 0, (-1, 4, -1, 8, -1, 4)), (2, 1, (1, 2, 0, 1, 0, 1)), (3, 0, (1, 12, 0, 1, 0, 1))],
    &[(0, 0, (17, 16, -15, 16, -5, 2)), (0, 1, (0, 1, -3, 4, 3, 1)), (0, 2, (-3, 2, 9, 4, 0, 1)), (1, 0, (0, 1, -3, 4, -3, 4)), (1, 1, (3, 4, 9, 2, 9, 2)), (1, 2, (-9, 2, 0, 1, 0, 1)), (2, 0, (3, 8, 9, 8, 9, 4)), (2, 1, (-9, 2, 0, 1, 0, 1)), (3, 0, (-3, 4, 0, 1, 0, 1))],
    &[(0, 0, (181, 128, -69, 32, -73, 16)), (0, 1, (0, 1, 17, 4, 41, 4)), (0, 2, (-41, 8, -9, 4, -6, 1)), (0, 3, (4, 1, 0, 1, 0, 1)), (1, 0, (0, 1, 2, 1, 17, 4)), (1, 1, (-17, 4, -3, 2, -9, 2)), (1, 2, (9, 2, 0, 1, 0, 1)), (2, 0, (-1, 1, -3, 8, -3, 4)), (2, 1, (3, 2, 0, 1, 0, 1)), (3, 0, (1, 4, 0, 1, 0, 1))],
    &[(0, 0, (229, 128, -101, 32, -101, 16)), (0, 1, (0, 1, 15, 2, 15, 1)), (0, 2, (-15, 2, -9, 2, -9, 1)), (0, 3, (6, 1, 0, 1, 0, 1)), (1, 0, (0, 1, 15, 4, 15, 2)), (1, 1, (-15, 2, -9, 2, -9, 1)), (1, 2, (9, 1, 0, 1, 0, 1)), (2, 0, (-15, 8, -9, 8, -9, 4)), (2, 1, (9, 2, 0, 1, 0, 1)), (3, 0, (3, 4, 0, 1, 0, 1))],
    &[(0, 0, (157, 128, -65, 32, -65, 16)), (0, 1, (0, 1, 9, 2, 9, 1)), (0, 2, (-9, 2, -5, 2, -5, 1)), (0, 3, (10, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 9, 4, 9, 2)), (1, 1, (-9, 2, -5, 2, -5, 1)), (1, 2, (5, 1, 0, 1, 0, 1)), (2, 0, (-9, 8, -5, 8, -5, 4)), (2, 1, (5, 2, 0, 1, 0, 1)), (3, 0, (5, 12, 0, 1, 0, 1))],
    &[(0, 0, (1, 3, -1, 2, -1, 1)), (0, 1, (0, 1, 1, 1, 2, 1)), (0, 2, (-1, 1, -1, 2, -1, 1)), (0, 3, (2, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 1, 2, 1, 1)), (1, 1, (-1, 1, -1, 2, -1, 1)), (1, 2, (1, 1, 0, 1, 0, 1)), (2, 0, (-1, 4, -1, 8, -1, 4)), (2, 1, (1, 2, 0, 1, 0, 1)), (3, 0, (1, 12, 0, 1, 0, 1))],
    &[(0, 0, (17, 16, -15, 16, -5, 2)), (0, 1, (0, 1, -3, 4, 3, 1)), (0, 2, (-3, 2, 9, 4, 0, 1)), (1, 0, (0, 1, -3, 4, -3, 4)), (1, 1, (3, 4, 9, 2, 9, 2)), (1, 2, (-9, 2, 0, 1, 0, 1)), (2, 0, (3, 8, 9, 8, 9, 4)), (2, 1, (-9, 2, 0, 1, 0, 1)), (3, 0, (-3, 4, 0, 1, 0, 1))],
    &[(0, 0, (181, 128, -69, 32, -73, 16)), (0, 1, (0, 1, 17, 4, 41, 4)), (0, 2, (-41, 8, -9, 4, -6, 1)), (0, 3, (4, 1, 0, 1, 0, 1)), (1, 0, (0, 1, 2, 1, 17, 4)), (1, 1, (-17, 4, -3, 2, -9, 2)), (1, 2, (9, 2, 0, 1, 0, 1)), (2, 0, (-1, 1, -3, 8, -3, 4)), (2, 1, (3, 2, 0, 1, 0, 1)), (3, 0, (1, 4, 0, 1, 0, 1))],
    &[(0, 0, (109, 128, -33, 32, -37, 16)), (0, 1, (0, 1, 5, 4, 17, 4)), (0, 2, (-17, 8, -1, 4, -2, 1)), (0, 3, (4, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 1, 2, 5, 4)), (1, 1, (-5, 4, 1, 2, -1, 2)), (1, 2, (1, 2, 0, 1, 0, 1)), (2, 0, (-1, 4, 1, 8, 1, 4)), (2, 1, (-1, 2, 0, 1, 0, 1)), (3, 0, (-1, 12, 0, 1, 0, 1))],
    &[(0, 0, (157, 128, -65, 32, -65, 16)), (0, 1, (0, 1, 9, 2, 9, 1)), (0, 2, (-9, 2, -5, 2, -5, 1)), (0, 3, (10, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 9, 4, 9, 2)), (1, 1, (-9, 2, -5, 2, -5, 1)), (1, 2, (5, 1, 0, 1, 0, 1)), (2, 0, (-9, 8, -5, 8, -5, 4)), (2, 1, (5, 2, 0, 1, 0, 1)), (3, 0, (5, 12, 0, 1, 0, 1))],
    &[(0, 0, (1, 3, -1, 2, -1, 1)), (0, 1, (0, 1, 1, 1, 2, 1)), (0, 2, (-1, 1, -1, 2, -1, 1)), (0, 3, (2, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 1, 2, 1, 1)), (1, 1, (-1, 1, -1, 2, -1, 1)), (1, 2, (1, 1, 0, 1, 0, 1)), (2, 0, (-1, 4, -1, 8, -1, 4)), (2, 1, (1, 2, 0, 1, 0, 1)), (3, 0, (1, 12, 0, 1, 0, 1))],
    &[(0, 0, (1, 2, -3, 4, -1, 1)), (0, 1, (0, 1, 1, 2, 1, 1)), (0, 2, (-1, 2, 1, 4, 0, 1)), (1, 0, (0, 1, 1, 2, 1, 2)), (1, 1, (-1, 2, 1, 2, 1, 2)), (1, 2, (-1, 2, 0, 1, 0, 1)), (2, 0, (-1, 4, 1, 8, 1, 4)), (2, 1, (-1, 2, 0, 1, 0, 1)), (3, 0, (-1, 12, 0, 1, 0, 1))],
    &[(0, 0, (1, 3, -1, 2, -1, 1)), (0, 1, (0, 1, 1, 1, 2, 1)), (0, 2, (-1, 1, -1, 2, -1, 1)), (0, 3, (2, 3, 0, 1, 0, 1)), (1, 0, (0, 1, 1, 2, 1, 1)), (1, 1, (-1, 1, -1, 2, -1, 1)), (1, 2, (1, 1, 0, 1, 0, 1)), (2, 0, (-1, 4, -1, 8, -1, 4)), (2, 1, (1, 2, 0, 1, 0, 1)), (3, 0, (1, 12, 0, 1, 0, 1))],
];

// (bv_lo, bv_hi, bs_lo = c0 + c1*bv, bs_hi = c0 + c1*bv); bounds are small
// rationals (num, den) and integer slopes.
pub(crate) const REGION_BOUNDS: [((i64, i64), (i64, i64), (i64, i64, i64), (i64, i64, i64)); 21] = [
    ((0, 1), (1, 4), (0, 1, 0), (1, 4, -1)),
    ((0, 1), (1, 4), (1, 4, -1), (1, 2, -2)),
    ((0, 1), (1, 4), (1, 2, -2), (3, 4, -1)),
    ((0, 1), (1, 4), (3, 4, -1), (1, 1, -2)),
    ((0, 1), (1, 4), (1, 1, -2), (1, 1, -1)),
    ((0, 1), (1, 4), (1, 1, -1), (5, 4, -2)),
    ((0, 1), (1, 4), (5, 4, -2), (3, 2, -2)),
    ((0, 1), (1, 4), (3, 2, -2), (7, 4, -2)),
    ((0, 1), (1, 4), (7, 4, -2), (2, 1, -2)),
    ((1, 4), (1, 2), (0, 1, 0), (3, 4, -1)),
    ((1, 4), (1, 2), (3, 4, -1), (1, 1, -1)),
    ((1, 4), (1, 2), (1, 1, -1), (3, 2, -2)),
    ((1, 4), (1, 2), (3, 2, -2), (7, 4, -2)),
    ((1, 4), (1, 2), (7, 4, -2), (2, 1, -2)),
    ((1, 2), (3, 4), (0, 1, 0), (3, 4, -1)),
    ((1, 2), (3, 4), (3, 4, -1), (3, 2, -2)),
    ((1, 2), (3, 4), (3, 2, -2), (1, 1, -1)),
    ((1, 2), (3, 4), (1, 1, -1), (7, 4, -2)),
    ((1, 2), (3, 4), (7, 4, -2), (2, 1, -2)),
    ((3, 4), (1, 1), (0, 1, 0), (1, 1, -1)),
    ((3, 4), (1, 1), (1, 1, -1), (2, 1, -2)),
];
