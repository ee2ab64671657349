//! Moment-based nonclassicality criteria.
//!
//! Six witnesses, all driven by the normally ordered moments of a state:
//!
//! * higher-order antibunching D(l) = ⟨a†^{l+1}a^{l+1}⟩ − ⟨a†a⟩^{l+1}
//! * higher-order sub-Poissonian statistics D_h(l−1) (Stirling expansion of
//!   the central number moments against the Poissonian benchmark)
//! * Hong–Mandel higher-order squeezing S_HM(n) of X = (a + a†)/√2
//! * Hillery amplitude-powered squeezing of Y₁ = (aˡ + a†ˡ)/2
//! * the Agarwal–Tara determinant ratio Aₙ of Hankel moment matrices
//! * the moment-matrix determinants d_vV over the basis (1, a, a†, a², a†², …)
//!
//! A strictly negative value signals nonclassicality in every case; for
//! Agarwal–Tara the verdict additionally requires the value to stay above
//! its theoretical floor of −1.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{binomial, double_factorial, pochhammer_half, stirling2};
use crate::state::MomentSource;

/// Slack below the Agarwal–Tara floor of −1 still counted as nonclassical.
const AGARWAL_TARA_FLOOR_SLACK: f64 = 1e-9;

/// Identifier of a witness criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// Higher-order antibunching, order l >= 1.
    Antibunching,
    /// Higher-order sub-Poissonian photon statistics, order l >= 2.
    SubPoissonian,
    /// Hong–Mandel higher-order squeezing, even order n >= 2.
    HongMandel,
    /// Hillery amplitude-powered squeezing, power l >= 1.
    Hillery,
    /// Agarwal–Tara determinant ratio, matrix order n >= 2.
    AgarwalTara,
    /// Moment-matrix determinant, matrix order V >= 3.
    Vogel,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Criterion::Antibunching,
        Criterion::SubPoissonian,
        Criterion::HongMandel,
        Criterion::Hillery,
        Criterion::AgarwalTara,
        Criterion::Vogel,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Antibunching => "hoa",
            Criterion::SubPoissonian => "hosps",
            Criterion::HongMandel => "hong-mandel",
            Criterion::Hillery => "hillery",
            Criterion::AgarwalTara => "agarwal-tara",
            Criterion::Vogel => "vogel",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hoa" | "antibunching" => Ok(Criterion::Antibunching),
            "hosps" | "sub-poissonian" => Ok(Criterion::SubPoissonian),
            "hong-mandel" | "hong_mandel" | "hm" => Ok(Criterion::HongMandel),
            "hillery" => Ok(Criterion::Hillery),
            "agarwal-tara" | "agarwal_tara" | "at" => Ok(Criterion::AgarwalTara),
            "vogel" => Ok(Criterion::Vogel),
            other => Err(format!("unknown witness criterion '{other}'")),
        }
    }
}

/// A witness value together with its verdict and the parameters that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessResult {
    pub criterion: Criterion,
    /// The order parameter: l or n for the moment criteria, the matrix size
    /// for Agarwal–Tara and the determinant criterion.
    pub order: u32,
    pub value: f64,
    /// Strictly-negative verdict (with the −1 floor for Agarwal–Tara).
    pub nonclassical: bool,
}

impl WitnessResult {
    fn strict(criterion: Criterion, order: u32, value: f64) -> Self {
        Self {
            criterion,
            order,
            value,
            nonclassical: value < 0.0,
        }
    }
}

/// D(l) for any l >= -1. The l = -1 and l = 0 values vanish identically
/// (⟨1⟩ − 1 and ⟨N⟩ − ⟨N⟩), which is what makes the Stirling sum in
/// [`hosps`] total.
fn antibunching_value<S: MomentSource>(src: &S, l: i64) -> f64 {
    let order = (l + 1) as u32;
    src.moment(order, order).re - src.moment(1, 1).re.powi(order as i32)
}

/// Higher-order antibunching witness D(l), l >= 1 (l = 1 is conventional
/// antibunching).
pub fn hoa<S: MomentSource>(src: &S, l: u32) -> Result<WitnessResult> {
    if l < 1 {
        return Err(Error::OrderDomain {
            what: "hoa",
            order: l as i64,
            requirement: "l >= 1",
        });
    }
    Ok(WitnessResult::strict(
        Criterion::Antibunching,
        l,
        antibunching_value(src, l as i64),
    ))
}

/// Higher-order sub-Poissonian witness
/// D_h(l-1) = sum_{r=0}^{l} sum_{k=0}^{r} S2(r,k)·C(l,r)·(−1)^r·D(k−1)·⟨N⟩^{l−r},
/// l >= 2. At l = 2 the sum collapses to D(1) exactly.
pub fn hosps<S: MomentSource>(src: &S, l: u32) -> Result<WitnessResult> {
    if l < 2 {
        return Err(Error::OrderDomain {
            what: "hosps",
            order: l as i64,
            requirement: "l >= 2",
        });
    }
    let mean = src.moment(1, 1).re;
    let mut total = 0.0;
    for r in 0..=l {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let weight = sign * binomial(l as u64, r as u64) * mean.powi((l - r) as i32);
        for k in 2..=r {
            // k < 2 terms carry D(-1) or D(0), which vanish
            total += stirling2(r, k) as f64 * weight * antibunching_value(src, k as i64 - 1);
        }
    }
    Ok(WitnessResult::strict(Criterion::SubPoissonian, l, total))
}

/// Hong–Mandel higher-order squeezing witness
/// S_HM(n) = [⟨(ΔX)ⁿ⟩ − (1/2)_{n/2}] / (1/2)_{n/2} for even n >= 2, with
/// X = (a + a†)/√2 and the central moment expanded as
///
///   ⟨(ΔX)ⁿ⟩ = sum_{r=0}^{n} sum_{i=0}^{⌊r/2⌋} sum_{k=0}^{r−2i}
///       (−1)^r 2^{−n/2} (2i−1)!! C(r−2i,k) C(n,r) C(r,2i)
///       ⟨a†+a⟩^{n−r} ⟨a†ᵏ a^{r−2i−k}⟩.
///
/// Odd n is rejected: the coherent benchmark (1/2)_{n/2} = (n−1)!!/2^{n/2}
/// belongs to the even-moment hierarchy only.
pub fn hong_mandel_hos<S: MomentSource>(src: &S, n: u32) -> Result<WitnessResult> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::OrderDomain {
            what: "hong-mandel",
            order: n as i64,
            requirement: "n must be even and >= 2",
        });
    }
    let field_mean = 2.0 * src.moment(0, 1).re; // ⟨a† + a⟩
    let mut acc = Complex64::ZERO;
    for r in 0..=n {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let outer = sign * binomial(n as u64, r as u64) * field_mean.powi((n - r) as i32);
        for i in 0..=r / 2 {
            let pair = outer * double_factorial(2 * i as i64 - 1) * binomial(r as u64, 2 * i as u64);
            let m = r - 2 * i;
            for k in 0..=m {
                acc += pair * binomial(m as u64, k as u64) * src.moment(k, m - k);
            }
        }
    }
    let central = acc.re / 2f64.powi(n as i32 / 2);
    let benchmark = pochhammer_half(n)?;
    Ok(WitnessResult::strict(
        Criterion::HongMandel,
        n,
        (central - benchmark) / benchmark,
    ))
}

/// Hillery amplitude-powered squeezing witness for Y₁ = (aˡ + a†ˡ)/2 and
/// Y₂ = −i(aˡ − a†ˡ)/2 (Hermitian form), l >= 1:
///
///   value = ⟨Y₁²⟩ − ⟨Y₁⟩² − |⟨[Y₁,Y₂]⟩|/2,
///
/// where ⟨Y₁²⟩ = (⟨a^{2l}⟩ + ⟨a†^{2l}⟩ + ⟨a†ˡaˡ⟩ + ⟨aˡa†ˡ⟩)/4 and
/// ⟨[Y₁,Y₂]⟩ = (i/2)(⟨aˡa†ˡ⟩ − ⟨a†ˡaˡ⟩).
pub fn hillery_hos<S: MomentSource>(src: &S, l: u32) -> Result<WitnessResult> {
    if l < 1 {
        return Err(Error::OrderDomain {
            what: "hillery",
            order: l as i64,
            requirement: "l >= 1",
        });
    }
    let antinormal = src.antinormal_diagonal_moment(l);
    let normal = src.moment(l, l).re;
    let y1_sq = 0.25 * (2.0 * src.moment(0, 2 * l).re + normal + antinormal);
    let y1 = src.moment(0, l).re;
    let commutator_mag = 0.5 * (antinormal - normal);
    Ok(WitnessResult::strict(
        Criterion::Hillery,
        l,
        y1_sq - y1 * y1 - 0.5 * commutator_mag.abs(),
    ))
}

/// Agarwal–Tara witness Aₙ = det m⁽ⁿ⁾ / (det μ⁽ⁿ⁾ − det m⁽ⁿ⁾), n >= 2,
/// where m⁽ⁿ⁾ and μ⁽ⁿ⁾ are n×n Hankel matrices of the diagonal normally
/// ordered moments and of the number-distribution moments.
///
/// The verdict is nonclassical for −1 <= value < 0; a Fock state saturates
/// the −1 floor, a coherent state sits at 0. A vanishing denominator is
/// reported as indeterminate rather than as a number.
pub fn agarwal_tara<S: MomentSource>(src: &S, n: u32) -> Result<WitnessResult> {
    if n < 2 {
        return Err(Error::OrderDomain {
            what: "agarwal-tara",
            order: n as i64,
            requirement: "matrix order >= 2",
        });
    }
    let dim = n as usize;
    let mut normal = vec![vec![Complex64::ZERO; dim]; dim];
    let mut number = vec![vec![Complex64::ZERO; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let t = (i + j) as u32;
            normal[i][j] = src.moment(t, t);
            number[i][j] = Complex64::new(src.number_moment(t), 0.0);
        }
    }
    let det_m = determinant(normal).re;
    let det_mu = determinant(number).re;
    let denom = det_mu - det_m;
    if denom.abs() < 1e-14 {
        return Err(Error::IndeterminateDenominator { denom: denom.abs() });
    }
    let value = det_m / denom;
    Ok(WitnessResult {
        criterion: Criterion::AgarwalTara,
        order: n,
        value,
        nonclassical: (-1.0 - AGARWAL_TARA_FLOOR_SLACK..0.0).contains(&value),
    })
}

/// Monomial basis element f_i of the moment-matrix criterion:
/// (1, a, a†, a², a†², a³, …). Returns the power and whether it is daggered.
fn monomial(i: usize) -> (u32, bool) {
    if i == 0 {
        (0, false)
    } else {
        (i.div_ceil(2) as u32, i.is_multiple_of(2))
    }
}

/// Moment-matrix determinant witness d_vV, V ∈ {3, 4, …}: the determinant of
/// the top-left V×V block of the matrix ⟨: f_i† f_j :⟩ over the monomial
/// basis (1, a, a†, a², …), with normal ordering applied before taking the
/// expectation. Negativity is sufficient (not necessary) for
/// nonclassicality; V = 2 is rejected since that determinant is a variance.
pub fn vogel_determinant<S: MomentSource>(src: &S, v: u32) -> Result<WitnessResult> {
    if v < 3 {
        return Err(Error::OrderDomain {
            what: "vogel",
            order: v as i64,
            requirement: "matrix order >= 3",
        });
    }
    let dim = v as usize;
    let mut mat = vec![vec![Complex64::ZERO; dim]; dim];
    for (i, row) in mat.iter_mut().enumerate() {
        let (ui, dag_i) = monomial(i);
        for (j, entry) in row.iter_mut().enumerate() {
            let (uj, dag_j) = monomial(j);
            *entry = match (dag_i, dag_j) {
                // f_i† f_j with f_i = a^u ⇒ f_i† = a†^u
                (false, false) => src.moment(ui, uj),
                (false, true) => src.moment(ui + uj, 0),
                (true, false) => src.moment(0, ui + uj),
                // :a^u a†^v: = a†^v a^u
                (true, true) => src.moment(uj, ui),
            };
        }
    }
    let value = determinant(mat).re;
    Ok(WitnessResult::strict(Criterion::Vogel, v, value))
}

/// Evaluate a criterion by identifier; the uniform entry point used by the
/// sweep runner.
pub fn evaluate<S: MomentSource>(src: &S, criterion: Criterion, order: u32) -> Result<WitnessResult> {
    match criterion {
        Criterion::Antibunching => hoa(src, order),
        Criterion::SubPoissonian => hosps(src, order),
        Criterion::HongMandel => hong_mandel_hos(src, order),
        Criterion::Hillery => hillery_hos(src, order),
        Criterion::AgarwalTara => agarwal_tara(src, order),
        Criterion::Vogel => vogel_determinant(src, order),
    }
}

/// Largest k + l moment order touched when evaluating `criterion` at `order`;
/// used to size precomputed moment tables.
pub fn moment_order_needed(criterion: Criterion, order: u32) -> u32 {
    match criterion {
        Criterion::Antibunching => 2 * (order + 1),
        Criterion::SubPoissonian => 2 * order,
        Criterion::HongMandel => order,
        Criterion::Hillery => 2 * order,
        Criterion::AgarwalTara => 4 * order.saturating_sub(1),
        Criterion::Vogel => 2 * (order / 2 + 1),
    }
}

/// Determinant by partial-pivot Gaussian elimination.
pub(crate) fn determinant(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::ONE;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| {
                m[a][col]
                    .norm_sqr()
                    .partial_cmp(&m[b][col].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if m[pivot_row][col].norm_sqr() == 0.0 {
            return Complex64::ZERO;
        }
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col];
        det *= pivot;
        let (top, below) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in below.iter_mut() {
            let factor = row[col] / pivot;
            for (dst, &src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= factor * src;
            }
        }
    }
    det
}
