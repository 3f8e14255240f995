//! Exact spectral data: characteristic polynomials, certified Perron root
//! enclosures, left eigenvectors over `Z[lambda]`, and word-count entropy
//! estimates.
//!
//! The characteristic polynomial is computed by the Faddeev-LeVerrier
//! recurrence (exact integer divisions). The Perron root is the largest real
//! root of its squarefree part, isolated by Descartes bisection; the minimal
//! polynomial is peeled off with a bounded monic-factor search and its
//! irreducibility is certified whenever any nontrivial factorization would
//! have to contain a factor of the searched degrees. The left eigenvector is
//! solved exactly over `Q[x]/(min_poly)` and normalized to integer power
//! basis coordinates with content 1.

use crate::algebraic::AlgebraicNumber;
use crate::error::SftError;
use crate::interval::{ln_bounds, ln_interval, RationalInterval};
use crate::poly::{
    integer_roots, isolate_largest_root, monic_factor_search, refine_root, sturm_chain,
    sturm_count_halfopen, IntPoly, RatPoly,
};
use crate::sft::Sft;
use crate::Result;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact Perron data of a primitive transition matrix.
#[derive(Debug, Clone)]
pub struct PerronData {
    pub char_poly: IntPoly,
    pub min_poly: IntPoly,
    /// False when the minimal polynomial is only known to be the squarefree
    /// factor containing the Perron root (irreducibility not certified).
    pub min_poly_certified: bool,
    pub lambda: AlgebraicNumber,
    pub left_eigenvector: Vec<AlgebraicNumber>,
}

/// `det(xI - A)` by the Faddeev-LeVerrier recurrence; all divisions are
/// exact.
pub fn char_poly(sft: &Sft) -> IntPoly {
    let n = sft.len();
    let a: Vec<Vec<BigInt>> = sft
        .matrix()
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // m starts as the identity
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for k in 1..=n {
        // nm = a * m
        let nm: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|t| &a[i][t] * &m[t][j]).sum())
                    .collect()
            })
            .collect();
        let trace: BigInt = (0..n).map(|i| nm[i][i].clone()).sum();
        let (c, rem) = num_integer::Integer::div_rem(&(-trace), &BigInt::from(k as i64));
        debug_assert!(rem.is_zero());
        coeffs[n - k] = c.clone();
        m = nm;
        for i in 0..n {
            m[i][i] += &c;
        }
    }
    IntPoly::new(coeffs)
}

/// Isolation of the largest real root of a monic integer polynomial: returns
/// the squarefree factor that vanishes there (certified irreducible or not)
/// and a bracketing interval with sign change.
struct LargestRoot {
    factor: IntPoly,
    certified: bool,
    lo: BigRational,
    hi: BigRational,
}

fn locate_largest_root(p: &IntPoly) -> LargestRoot {
    let sf = p.squarefree_part();
    debug_assert!(sf.is_monic());
    let int_roots = integer_roots(&sf);
    // strip integer roots
    let mut rest = sf.clone();
    for r in &int_roots {
        let lin = IntPoly::new(vec![-r.clone(), BigInt::one()]);
        rest = rest.divide_exact(&lin).expect("integer root divides");
    }
    let max_int = int_roots.iter().max().cloned();
    let bound = sf.cauchy_bound();
    let search_lo = match &max_int {
        Some(r) => BigRational::from(r.clone()),
        None => -bound.clone(),
    };
    let irrational_top = if rest.deg() >= 1 {
        isolate_largest_root(&rest, &search_lo, &bound)
    } else {
        None
    };
    match irrational_top {
        Some((lo, hi)) => {
            // narrow down to the irreducible factor containing the root
            let (factor, certified, lo, hi) = certify_factor(rest, lo, hi);
            LargestRoot {
                factor,
                certified,
                lo,
                hi,
            }
        }
        None => {
            let r = max_int.expect("a valid transition matrix has a real spectral radius");
            let lin = IntPoly::new(vec![-r.clone(), BigInt::one()]);
            LargestRoot {
                factor: lin,
                certified: true,
                lo: BigRational::from(r.clone()),
                hi: BigRational::from(r),
            }
        }
    }
}

/// Split off irreducible factors of degree <= 4 until the factor holding the
/// bracketed root is certified irreducible or the search is exhausted.
fn certify_factor(
    mut current: IntPoly,
    mut lo: BigRational,
    mut hi: BigRational,
) -> (IntPoly, bool, BigRational, BigRational) {
    loop {
        let deg = current.deg();
        if deg <= 3 {
            // squarefree with no rational roots: degrees 2 and 3 are
            // irreducible outright, degree 1 is trivially so
            return (current, true, lo, hi);
        }
        let max_search = 4.min(deg as usize / 2);
        match monic_factor_search(&current, max_search) {
            Some(g) => {
                let h = current.divide_exact(&g).expect("verified factor divides");
                let chain = sturm_chain(&g);
                let roots_in_interval = sturm_count_halfopen(&chain, &lo, &hi);
                current = if roots_in_interval == 1 { g } else { h };
                // re-bracket: the interval still isolates the root among the
                // remaining factor's roots, but the endpoints must show a
                // sign change for later refinement
                let (l, h2) = tighten_bracket(&current, lo, hi);
                lo = l;
                hi = h2;
            }
            None => {
                // every factorization of `current` would contain a factor of
                // degree <= deg/2; certified when the search covered that
                let certified = deg as usize / 2 <= max_search;
                return (current, certified, lo, hi);
            }
        }
    }
}

/// Shrink `(lo, hi)` (containing exactly one simple root of `p`) until the
/// endpoint signs differ.
fn tighten_bracket(p: &IntPoly, lo: BigRational, hi: BigRational) -> (BigRational, BigRational) {
    let sign = |x: &BigRational| -> i32 {
        let v = p.eval_rat(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let (mut lo, mut hi) = (lo, hi);
    let two = BigRational::from(BigInt::from(2));
    loop {
        let slo = sign(&lo);
        let shi = sign(&hi);
        assert!(slo != 0 && shi != 0, "bracket endpoints are roots");
        if slo != shi {
            return (lo, hi);
        }
        // exactly one root inside: bisect towards it using a Sturm count
        let mid = (&lo + &hi) / &two;
        let chain = sturm_chain(p);
        if sturm_count_halfopen(&chain, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Exact Perron data of a mixing SFT.
pub fn perron_data(sft: &Sft) -> Result<PerronData> {
    let (mixing, _) = sft.is_mixing();
    if !mixing {
        return Err(SftError::NotMixing);
    }
    let cp = char_poly(sft);
    let located = locate_largest_root(&cp);
    let min_poly = located.factor.clone();
    // lambda isolated to width 1e-12
    let width = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    let (lo, hi) = if min_poly.deg() == 1 {
        (located.lo.clone(), located.hi.clone())
    } else {
        refine_root(&min_poly, located.lo.clone(), located.hi.clone(), &width)
    };
    let selector = RationalInterval::new(lo, hi);
    let lambda = AlgebraicNumber::generator(min_poly.clone(), selector.clone());
    lambda.verify_selector()?;

    let eigenvector = solve_left_eigenvector(sft, &min_poly, &selector)?;
    let eigenvector = normalize_eigenvector(eigenvector)?;

    // exact eigen identity: v . A == lambda . v in Q[x]/(min_poly)
    for j in 0..sft.len() {
        let mut acc = lambda.constant(BigRational::zero());
        for i in 0..sft.len() {
            if sft.matrix()[i][j] == 1 {
                acc = acc.add(&eigenvector[i]);
            }
        }
        let rhs = lambda.mul(&eigenvector[j]);
        if acc != rhs {
            return Err(SftError::CertificateFailure(
                "eigen identity v.A = lambda.v failed".into(),
            ));
        }
    }

    if !located.certified {
        // data is still returned by callers that tolerate the flag; the
        // library surfaces it as an explicit error wrapper where exactness
        // is required (left_ideal propagates it).
    }
    Ok(PerronData {
        char_poly: cp,
        min_poly,
        min_poly_certified: located.certified,
        lambda,
        left_eigenvector: eigenvector,
    })
}

/// Kernel vector of `(A^T - lambda I)` over `Q[x]/(min_poly)`.
fn solve_left_eigenvector(
    sft: &Sft,
    min_poly: &IntPoly,
    selector: &RationalInterval,
) -> Result<Vec<AlgebraicNumber>> {
    let n = sft.len();
    let lambda = AlgebraicNumber::generator(min_poly.clone(), selector.clone());
    let zero = lambda.constant(BigRational::zero());
    let one = lambda.constant(BigRational::one());
    // mat = A^T - lambda I
    let mut mat: Vec<Vec<AlgebraicNumber>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut entry = if sft.matrix()[j][i] == 1 {
                        one.clone()
                    } else {
                        zero.clone()
                    };
                    if i == j {
                        entry = entry.sub(&lambda);
                    }
                    entry
                })
                .collect()
        })
        .collect();
    // reduced row echelon form over the field
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut row = 0usize;
    for col in 0..n {
        let pivot_row = (row..n).find(|&r| !mat[r][col].is_zero());
        let Some(pr) = pivot_row else { continue };
        mat.swap(row, pr);
        let inv = mat[row][col]
            .inverse()
            .ok_or(SftError::FactorizationIncomplete {
                degree: min_poly.deg() as usize,
            })?;
        for c in 0..n {
            mat[row][c] = mat[row][c].mul(&inv);
        }
        for r in 0..n {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in 0..n {
                    let sub = mat[row][c].mul(&f);
                    mat[r][c] = mat[r][c].sub(&sub);
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == n {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..n).filter(|&c| pivot_of_col[c].is_none()).collect();
    if free_cols.len() != 1 {
        return Err(SftError::CertificateFailure(format!(
            "eigenspace dimension {} (expected 1)",
            free_cols.len()
        )));
    }
    let free = free_cols[0];
    let mut v = vec![zero; n];
    v[free] = one;
    for col in 0..n {
        if let Some(r) = pivot_of_col[col] {
            v[col] = mat[r][free].neg();
        }
    }
    Ok(v)
}

/// Clear denominators, divide by the integer content, and certify all
/// entries positive (flipping the global sign if needed).
fn normalize_eigenvector(v: Vec<AlgebraicNumber>) -> Result<Vec<AlgebraicNumber>> {
    let mut lcm = BigInt::one();
    for entry in &v {
        for c in entry.representative().coeffs() {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
    }
    let scale = BigRational::from(lcm);
    let mut ints: Vec<AlgebraicNumber> = v.iter().map(|e| e.scale(&scale)).collect();
    let mut content = BigInt::zero();
    for entry in &ints {
        for c in entry.representative().coeffs() {
            debug_assert!(c.denom().is_one());
            content = num_integer::Integer::gcd(&content, c.numer());
        }
    }
    if !content.is_zero() && !content.is_one() {
        let inv = BigRational::new(BigInt::one(), content);
        ints = ints.iter().map(|e| e.scale(&inv)).collect();
    }
    let first_sign = ints[0].sign()?;
    if first_sign < 0 {
        ints = ints.iter().map(|e| e.neg()).collect();
    }
    for entry in &ints {
        if entry.sign()? <= 0 {
            return Err(SftError::CertificateFailure(
                "left eigenvector entry is not positive".into(),
            ));
        }
    }
    Ok(ints)
}

fn entropy_from_char(cp: &IntPoly) -> RationalInterval {
    let located = locate_largest_root(cp);
    let width = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    let (lo, hi) = if located.factor.deg() == 1 {
        (located.lo, located.hi)
    } else {
        refine_root(&located.factor, located.lo, located.hi, &width)
    };
    let iv = ln_interval(&RationalInterval::new(lo, hi), 28);
    // the spectral radius of a valid transition matrix is at least 1
    let lo = if iv.lo.is_negative() {
        BigRational::zero()
    } else {
        iv.lo
    };
    RationalInterval::new(lo, iv.hi)
}

/// Certified enclosure of `log lambda` (natural log) for a mixing SFT, of
/// width at most 1e-9.
pub fn entropy(sft: &Sft) -> Result<RationalInterval> {
    let (mixing, _) = sft.is_mixing();
    if !mixing {
        return Err(SftError::NotMixing);
    }
    Ok(entropy_from_char(&char_poly(sft)))
}

/// Enclosure of `log(spectral radius)` for any valid presentation, mixing or
/// not; used for the entropy of forbidden-symbol subshifts.
pub fn spectral_radius_entropy(sft: &Sft) -> RationalInterval {
    entropy_from_char(&char_poly(sft))
}

/// Enclosure of the spectral radius itself (width at most 1e-12).
pub fn spectral_radius(sft: &Sft) -> RationalInterval {
    let located = locate_largest_root(&char_poly(sft));
    let width = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    let (lo, hi) = if located.factor.deg() == 1 {
        (located.lo, located.hi)
    } else {
        refine_root(&located.factor, located.lo, located.hi, &width)
    };
    RationalInterval::new(lo, hi)
}

/// The sequence `(1/n) log |W_n|` as certified intervals, from exact counts.
/// `counts[k]` is the count for word length `k + 1`.
pub fn wordcount_entropy_sequence(counts: &[BigUint]) -> Vec<RationalInterval> {
    counts
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let n = k as i64 + 1;
            assert!(!c.is_zero(), "word counts of a valid Sft are positive");
            let c = BigRational::from(BigInt::from(c.clone()));
            let (lo, hi) = ln_bounds(&c, 28);
            let inv = BigRational::new(BigInt::one(), BigInt::from(n));
            RationalInterval::new(lo * &inv, hi * inv)
        })
        .collect()
}

/// A verified constant `C` with `|W_n| <= C * lambda^n`.
#[derive(Debug, Clone)]
pub struct GrowthConstant {
    pub c: BigRational,
    pub lambda: RationalInterval,
    pub verified_up_to: u32,
}

/// Derive `C = |alphabet| * r_max / r_min` from the right Perron eigenvector
/// and verify the bound against exact counts for all `n <= 30`.
pub fn growth_constant(sft: &Sft) -> Result<GrowthConstant> {
    let data = perron_data(sft)?;
    // right eigenvector of A = left eigenvector of A^T
    let transposed = sft.reverse();
    let right = solve_left_eigenvector(
        &transposed,
        &data.min_poly,
        data.lambda.selector(),
    )?;
    let right = normalize_eigenvector(right)?;
    let prec = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(9));
    let encs: Vec<RationalInterval> = right.iter().map(|e| e.enclosure(&prec)).collect();
    let r_max = encs
        .iter()
        .map(|iv| iv.hi.clone())
        .max()
        .expect("nonempty eigenvector");
    let r_min = encs
        .iter()
        .map(|iv| iv.lo.clone())
        .min()
        .expect("nonempty eigenvector");
    if !r_min.is_positive() {
        return Err(SftError::CertificateFailure(
            "right eigenvector enclosure not positive".into(),
        ));
    }
    let c = BigRational::from(BigInt::from(sft.len() as u64)) * &r_max / &r_min;
    let lambda_iv = data.lambda.enclosure(&BigRational::new(
        BigInt::one(),
        BigInt::from(10u64).pow(12),
    ));
    // verify against exact counts, using the lower end of lambda^n so the
    // checked inequality implies the true one
    let mut lam_pow = BigRational::one();
    for n in 1..=30u32 {
        lam_pow *= &lambda_iv.lo;
        let count = BigRational::from(BigInt::from(sft.count_words(n)));
        if count > &c * &lam_pow {
            return Err(SftError::CertificateFailure(format!(
                "growth bound failed at n = {n}"
            )));
        }
    }
    Ok(GrowthConstant {
        c,
        lambda: lambda_iv,
        verified_up_to: 30,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;
    use crate::limits::Limits;
    use crate::sft::{full_two, golden_mean};

    #[test]
    fn char_polys_of_small_matrices() {
        assert_eq!(char_poly(&golden_mean()), IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(char_poly(&full_two()), IntPoly::from_i64(&[0, -2, 1]));
        let one = Sft::new(vec!["1"], vec![vec![1]]).unwrap();
        assert_eq!(char_poly(&one), IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn perron_data_of_golden_mean() {
        let data = perron_data(&golden_mean()).unwrap();
        assert!(data.min_poly_certified);
        assert_eq!(data.min_poly, IntPoly::from_i64(&[-1, -1, 1]));
        // v = (lambda, 1) exactly after gcd normalization
        assert_eq!(data.left_eigenvector[0], data.lambda);
        assert!(data.left_eigenvector[1].is_one());
    }

    #[test]
    fn perron_data_of_full_two_and_fixed_point() {
        let data = perron_data(&full_two()).unwrap();
        assert_eq!(data.min_poly, IntPoly::from_i64(&[-2, 1]));
        assert!(data.left_eigenvector.iter().all(|e| e.is_one()));
        let one = Sft::new(vec!["1"], vec![vec![1]]).unwrap();
        let data = perron_data(&one).unwrap();
        assert_eq!(data.min_poly, IntPoly::from_i64(&[-1, 1]));
        assert!(data.left_eigenvector[0].is_one());
    }

    #[test]
    fn entropy_enclosures_hit_known_values() {
        let h2 = entropy(&full_two()).unwrap();
        // ln 2 = 0.693147180559945...
        assert!(h2.lo <= rat(6931471806, 10_000_000_000));
        assert!(h2.hi >= rat(6931471805, 10_000_000_000));
        assert!(h2.width() <= rat(1, 1_000_000_000));

        let hg = entropy(&golden_mean()).unwrap();
        // ln phi = 0.481211825059603...
        assert!(hg.lo <= rat(4812118251, 10_000_000_000));
        assert!(hg.hi >= rat(4812118250, 10_000_000_000));

        let one = Sft::new(vec!["1"], vec![vec![1]]).unwrap();
        let h1 = entropy(&one).unwrap();
        assert!(h1.lo.is_zero() && h1.hi.is_zero());

        let two_cycle = Sft::new(vec!["a", "b"], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(entropy(&two_cycle), Err(SftError::NotMixing)));
        let h = spectral_radius_entropy(&two_cycle);
        assert!(h.lo.is_zero() && h.hi.is_zero());
    }

    #[test]
    fn no_roots_above_the_enclosure() {
        for sft in [golden_mean(), full_two()] {
            let data = perron_data(&sft).unwrap();
            let chain = sturm_chain(&data.char_poly);
            let hi = data.lambda.selector().hi.clone();
            assert_eq!(crate::poly::sturm_count_above(&chain, &hi), 0);
            // char poly changes sign across the interval (simple top root)
            let lo_val = data.char_poly.eval_rat(&data.lambda.selector().lo);
            let hi_val = data.char_poly.eval_rat(&data.lambda.selector().hi);
            assert!(lo_val.is_negative() != hi_val.is_negative() || lo_val.is_zero());
        }
    }

    #[test]
    fn power_shift_entropy_scales() {
        let limits = Limits::default();
        let gm = golden_mean();
        let h = entropy(&gm).unwrap();
        for m in 2..=3u32 {
            let pw = gm.power_shift(m, &limits).unwrap();
            let hp = entropy(&pw).unwrap();
            let scaled = h.scale(&rat(m as i64, 1));
            let tol = rat(1, 100_000_000);
            assert!(hp.lo >= &scaled.lo - &tol);
            assert!(hp.hi <= &scaled.hi + &tol);
        }
    }

    #[test]
    fn wordcount_sequence_converges_from_above() {
        let gm = golden_mean();
        let counts: Vec<BigUint> = (1..=40).map(|n| gm.count_words(n)).collect();
        let seq = wordcount_entropy_sequence(&counts);
        let h = entropy(&gm).unwrap();
        let last = &seq[39];
        // within 0.01 above the enclosure, never below it
        assert!(last.hi <= &h.hi + rat(1, 100));
        assert!(last.lo >= &h.lo - rat(1, 100_000_000));
        // a constant count of 1 gives zero
        let flat = wordcount_entropy_sequence(&[BigUint::from(1u32)]);
        assert!(flat[0].lo.is_zero() && flat[0].hi.is_zero());
    }

    #[test]
    fn growth_constants_verify() {
        let g = growth_constant(&full_two()).unwrap();
        assert_eq!(g.verified_up_to, 30);
        let g = growth_constant(&golden_mean()).unwrap();
        assert!(g.c <= rat(4, 1));
        let one = Sft::new(vec!["1"], vec![vec![1]]).unwrap();
        let g = growth_constant(&one).unwrap();
        assert_eq!(g.c, rat(1, 1));
    }
}
