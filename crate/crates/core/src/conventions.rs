//! Every sign convention in one place, so tests can pin them.

/// (-1)^k as an integer.
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Koszul sign for swapping homogeneous elements of degrees p and q.
pub fn koszul(p: i64, q: i64) -> i64 {
    sign(p * q)
}

/// Leibniz: d[u,v] = [du,v] + LEIBNIZ(|u|) [u,dv].
pub fn leibniz(deg_u: i64) -> i64 {
    sign(deg_u)
}

/// Differential on the internal hom: D(f) = d f - HOM_SIGN(|f|) f d.
pub fn hom_sign(deg_f: i64) -> i64 {
    sign(deg_f)
}

/// A degree-s chain map satisfies d f = CHAIN_MAP_SIGN(s) f d.
pub fn chain_map_sign(s: i64) -> i64 {
    sign(s)
}

/// Toda representative: theta = TODA_LEFT f H_gh + TODA_RIGHT H_fg h.
pub const TODA_LEFT: i64 = 1;
pub const TODA_RIGHT: i64 = -1;

/// Defining systems for long brackets: D(H_ij) = sum_k DEFINING(|H_kj|) H_kj H_ik.
pub fn defining_system(deg_left: i64) -> i64 {
    sign(deg_left)
}

/// Mapping cone of K: (CK)_t = K_t + K_{t-1}, d(x,y) = (dx + y, CONE_SHIFT_SIGN dy).
pub const CONE_SHIFT_SIGN: i64 = -1;

/// Suspension: (ΣK)_t = K_{t-1} with differential SUSPENSION_SIGN * d.
pub const SUSPENSION_SIGN: i64 = -1;

/// Lie triple product representative for cycles u, v, w of degrees p, q, r:
/// massey_coeffs(p,q,r)[i] multiplies [u, a_vw], [v, a_wu], [w, a_uv].
pub fn massey_coeffs(p: i64, q: i64, r: i64) -> [i64; 3] {
    [sign(p * r + p), sign(q * p + q), sign(r * q + r)]
}
