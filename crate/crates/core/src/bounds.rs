//! Exact evaluators for the length bounds and growth recurrences.
//!
//! All arithmetic is in arbitrary precision.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::pg::{pow2, theta};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn choose2(x: &BigUint) -> BigUint {
    if x.is_zero() {
        return BigUint::zero();
    }
    x * (x - 1u32) / 2u32
}

/// `ceil(q * theta_q(k-1) / 2)`: no MWS `[n, k]_q` code is shorter.
pub fn lower_bound(q: u32, k: usize) -> BigUint {
    (big(q as u64) * theta(q, k as i64 - 1)).div_ceil(&big(2))
}

/// `ceil((q^{k+2} - 3q + 2) / (4(q-1)))`: no MWS `[n, k]_q` code with
/// property (A) is shorter.
pub fn lower_bound_prop_a(q: u32, k: usize) -> BigUint {
    let qq = big(q as u64);
    let num = qq.pow(k as u32 + 2) + 2u32 - 3u32 * &qq;
    num.div_ceil(&(4u32 * (qq - 1u32)))
}

/// Bound on the number of distinct hyperplanes the repetition vector of a
/// `k`-dimensional code must avoid: `C(q^k, 2) + (q^k - 1)(q - 1)`.
pub fn d_bound(q: u32, k: usize) -> BigUint {
    let qk = big(q as u64).pow(k as u32);
    choose2(&qk) + (qk - 1u32) * big(q as u64 - 1)
}

/// Bound on the smallest admissible `R = r_1 + ... + r_{q-1}`:
/// `(q-1) C(q^k, 2) + (q^k - 1)(q-1)^2`.
pub fn r_bound(q: u32, k: usize) -> BigUint {
    big(q as u64 - 1) * d_bound(q, k)
}

/// Length `2^{theta_q(k-1)} - 1` of the geometric construction.
pub fn geometric_length(q: u32, k: usize) -> BigUint {
    let th = theta(q, k as i64 - 1);
    let th = usize::try_from(&th).expect("point count fits in usize");
    pow2(th) - 1u32
}

/// Length `(q-1)(q^3 + q^2 + q)/2` of the triangle construction (`k = 3`).
pub fn triangle_length(q: u32) -> BigUint {
    let qq = big(q as u64);
    (&qq - 1u32) * (qq.pow(3) + qq.pow(2) + &qq) / 2u32
}

/// `q^{(k^2 + k - 4)/2}`, the length bound reached by lifting from `k = 3`.
pub fn lift_chain_bound(q: u32, k: usize) -> Option<BigUint> {
    (k >= 3).then(|| big(q as u64).pow(((k * k + k - 4) / 2) as u32))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceRow {
    pub k: usize,
    /// Length bound for the `k`-dimensional code.
    pub n: BigUint,
    /// Bound on the largest nonzero entry count after repetition.
    pub t: BigUint,
    /// Repetition sum used at this dimension.
    pub r: BigUint,
}

/// `sum_j j r_{i_j}` over the sorted repetition vector.
///
/// At `k = 1` the vector is `(1, 2, ..., q-1)`; afterwards every entry is
/// taken to be `ceil(R / (q-1))`, the largest even split of the bound.
fn weighted_r_sum(q: u32, k: usize, r: &BigUint) -> BigUint {
    let q = q as u64;
    if k == 1 {
        return big((0..q - 1).map(|j| j * (j + 1)).sum());
    }
    r.div_ceil(&big(q - 1)) * big((q - 2) * (q - 1) / 2)
}

/// Upper-bound sequences for length and `T` of the algebraic construction,
/// for `k = 1..=k_max`. Requires `q >= 3`.
///
/// The length step adds `q - 2` for the separator symbols of the extension
/// row, matching [`crate::construct::extend_dim_2_length`]; the two agree
/// with a `+1` step only at `q = 3`.
pub fn recurrence_estimates(q: u32, k_max: usize) -> Vec<RecurrenceRow> {
    assert!(q >= 3, "the recurrences need q >= 3");
    let qq = q as u64;
    let tail = big((qq - 3) * (qq - 2) / 2);
    let mut rows: Vec<RecurrenceRow> = Vec::new();
    let mut n = BigUint::one();
    let mut t = big(qq - 1);
    for k in 1..=k_max {
        let r = if k == 1 { big(qq * (qq - 1) / 2) } else { r_bound(q, k) };
        rows.push(RecurrenceRow {
            k,
            n: n.clone(),
            t: t.clone(),
            r: r.clone(),
        });
        let next_n = big(qq - 1) * &r * &n + big(qq - 2) + &tail * (&t + 1u32);
        let next_t = &r * &n + (&t + 1u32) * weighted_r_sum(q, k, &r);
        n = next_n;
        t = next_t;
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub q: u32,
    pub k: usize,
    pub theta: BigUint,
    pub lb_general: BigUint,
    pub lb_prop_a: BigUint,
    pub geometric_n: BigUint,
    pub triangle_n: Option<BigUint>,
    pub lift_chain_n: Option<BigUint>,
    pub d_k: BigUint,
    pub r_k: BigUint,
    pub n_rec: Option<BigUint>,
    pub t_rec: Option<BigUint>,
}

fn dec(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn dec_opt(x: &Option<BigUint>) -> Value {
    x.as_ref().map_or(Value::Null, dec)
}

impl BoundsReport {
    /// JSON object with every big integer as a decimal string.
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "k": self.k,
            "theta": dec(&self.theta),
            "lb_general": dec(&self.lb_general),
            "lb_propA": dec(&self.lb_prop_a),
            "geometric_n": dec(&self.geometric_n),
            "triangle_n": dec_opt(&self.triangle_n),
            "lift_chain_n": dec_opt(&self.lift_chain_n),
            "D_k": dec(&self.d_k),
            "R_k": dec(&self.r_k),
            "n_rec": dec_opt(&self.n_rec),
            "T_rec": dec_opt(&self.t_rec),
        })
    }
}

/// Every bound for one `(q, k)` pair, `k >= 1`.
pub fn report(q: u32, k: usize) -> BoundsReport {
    let rec = (q >= 3).then(|| recurrence_estimates(q, k).pop().expect("k >= 1"));
    BoundsReport {
        q,
        k,
        theta: theta(q, k as i64 - 1),
        lb_general: lower_bound(q, k),
        lb_prop_a: lower_bound_prop_a(q, k),
        geometric_n: geometric_length(q, k),
        triangle_n: (k == 3 && q > 3).then(|| triangle_length(q)),
        lift_chain_n: lift_chain_bound(q, k),
        d_k: d_bound(q, k),
        r_k: r_bound(q, k),
        n_rec: rec.as_ref().map(|r| r.n.clone()),
        t_rec: rec.map(|r| r.t),
    }
}
