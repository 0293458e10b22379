//! Bernstein filtration levels, growth of the degree filtration on `R` and on
//! `R_f`, and the divided-derivative divisibility used in the localization
//! growth argument.
//!
//! The Bernstein filtration puts `x^a ∂^[t]` in level `|a| + |t|`; level `i`
//! of 𝒟_R is the span of the basis operators of that weight, so its dimension
//! is a count over the support criterion. A module filtration `𝒢` is measured
//! by its growth: if `dim 𝒢ᵢ ≤ C·i^r`, the filtration witnesses holonomicity
//! in dimension `r`, and the leading coefficient of the eventual polynomial
//! `dim 𝒢ᵢ` (read off from `r`-th finite differences) is at least `1/r!`. On a
//! localization `R_f` with `d = deg f`, the level-`i` space is spanned by
//! `u/fⁱ` with `deg u ≤ i(d+1)`, and stability under the operator action rests
//! on `f^{j−s}` dividing `∂^[s](f^j)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::{SimplicialComplex, TSpaceVerdict};
use crate::field::FieldSpec;
use crate::idealizer::dr_basis_up_to;
use crate::localization::divided_derivative;
use crate::sralgebra::Polynomial;
use crate::weyl::OperatorMonomial;
use crate::{CheckOutcome, Error, Result};

/// One level of the Bernstein filtration on 𝒟_R: the basis operators
/// `x^a ∂^[t]` with `|a| + |t| ≤ i`.
pub struct BernsteinLevel {
    pub i: u32,
    pub monomials: Vec<OperatorMonomial>,
    pub dim: usize,
}

/// Basis of Bernstein level `i` of 𝒟_R.
pub fn bernstein_level(complex: &SimplicialComplex, i: u32) -> BernsteinLevel {
    let monomials = dr_basis_up_to(complex, i);
    let dim = monomials.len();
    BernsteinLevel { i, monomials, dim }
}

/// Dimension of Bernstein level `i` of 𝒟_R.
pub fn bernstein_dim(complex: &SimplicialComplex, i: u32) -> usize {
    bernstein_level(complex, i).dim
}

/// Growth data of a module filtration: the level dimensions, the dimension
/// `r` they are measured against, the smallest constant with
/// `dims[i] ≤ C·i^r`, the leading coefficient of the eventual polynomial, and
/// the resulting length bound `C·r!`.
pub struct GrowthReport {
    /// `dims[i]` is the dimension of filtration level `i`, for `i ≤ i_max`.
    pub dims: Vec<u64>,
    /// Dimension the growth is measured against (the Krull dimension of `R`).
    pub r: usize,
    /// Smallest rational `C` with `dims[i] ≤ C·i^r` for `1 ≤ i ≤ i_max`.
    pub c_bound: BigRational,
    /// `r`-th finite difference of `dims` at the top, divided by `r!`.
    pub leading: BigRational,
    /// `C·r!`, the bound this data places on a composition-series length.
    pub length_bound: BigRational,
    pub verdict: CheckOutcome,
}

fn factorial_big(r: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=r {
        acc *= k;
    }
    acc
}

/// Growth report for the degree filtration `𝒢ᵢ = ⊕_{j≤i} R_j` on `R` itself,
/// whose level dimensions are the accumulated Hilbert function. Requires
/// `i_max ≥ r + 2` so the `r`-th differences have settled. Complexes that
/// fail the separability test are not covered by the operator theory and are
/// gated to a not-applicable verdict.
pub fn r_filtration_report(
    complex: &SimplicialComplex,
    field: FieldSpec,
    i_max: u32,
) -> Result<GrowthReport> {
    let ring = crate::sralgebra::SrRing::new(complex.clone(), field);
    let r = ring.krull_dim();
    if (i_max as usize) < r + 2 {
        return Err(Error::Domain(format!(
            "need i_max ≥ r + 2 = {} to read off the leading coefficient",
            r + 2
        )));
    }
    let dims: Vec<u64> = (0..=i_max).map(|i| ring.iterated_hilbert(i)).collect();

    // Smallest C with dims[i] ≤ C·i^r for sampled i ≥ 1.
    let mut c_bound = BigRational::zero();
    for (i, &dim) in dims.iter().enumerate().skip(1) {
        let denom = BigInt::from(i).pow(r as u32);
        let ratio = BigRational::new(BigInt::from(dim), denom);
        if ratio > c_bound {
            c_bound = ratio;
        }
    }

    // r-th finite differences; the topmost entry is the settled value
    // r!·(leading coefficient).
    let mut diffs: Vec<BigInt> = dims.iter().map(|&d| BigInt::from(d)).collect();
    for _ in 0..r {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let rfact = factorial_big(r);
    let top = diffs.last().cloned().unwrap_or_else(BigInt::zero);
    let leading = BigRational::new(top, rfact.clone());
    let length_bound = &c_bound * BigRational::from_integer(rfact.clone());

    let verdict = if complex.is_t_space() == TSpaceVerdict::NotTSpace {
        CheckOutcome::NotApplicable("the complex is not a T-space".into())
    } else {
        let floor = BigRational::new(BigInt::one(), rfact);
        if leading >= floor && leading.is_positive() {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail(format!(
                "leading coefficient {} dropped below 1/{}!",
                leading, r
            ))
        }
    };

    Ok(GrowthReport {
        dims,
        r,
        c_bound,
        leading,
        length_bound,
        verdict,
    })
}

/// Stability of the localized filtration `𝒢ᵢ' = K·{u/fⁱ : deg u ≤ i(d+1)}`
/// under the diagonal operators: for every `j ≤ i_max`, `t ≤ t_max`, and
/// basis fraction `u/f^j`, the image `xᵢ∂ᵢ^[t](u/f^j)` must again be
/// representable with denominator `f^{t+1+j}` and numerator degree at most
/// `(t+1+j)(d+1)`.
pub fn rf_filtration_check(
    complex: &SimplicialComplex,
    field: FieldSpec,
    f: &crate::sralgebra::ExponentVector,
    i_max: u32,
    t_max: u32,
) -> Result<CheckOutcome> {
    let ctx = crate::localization::saturate(complex, field, f)?;
    let ring = ctx.ring();
    let n = complex.n();
    let d = ctx.degree_of_f();
    for j in 0..=i_max {
        let bound = j * (d + 1);
        for u in ring.monomial_basis_up_to(bound) {
            let mono = Polynomial::monomial_in(n, u.clone(), field.one(), field);
            if ctx.normal_form(&mono).is_zero() {
                continue;
            }
            let frac = ctx.fraction(mono, j);
            for i in 0..n {
                for t in 0..=t_max {
                    let image = ctx.act_diagonal(i, t, &frac);
                    let level = t + 1 + j;
                    if image.k > level {
                        return Ok(CheckOutcome::Fail(format!(
                            "x{}∂^[{}] of {:?}/f^{} needs denominator f^{}, beyond level {}",
                            i + 1,
                            t,
                            u,
                            j,
                            image.k,
                            level
                        )));
                    }
                    let re_expanded = ctx.normal_form(&image.g.mul(&ctx.f().pow(level - image.k)));
                    if let Some(deg) = re_expanded.total_degree() {
                        if deg > level * (d + 1) {
                            return Ok(CheckOutcome::Fail(format!(
                                "x{}∂^[{}] of {:?}/f^{} re-expands to degree {} > {}·{}",
                                i + 1,
                                t,
                                u,
                                j,
                                deg,
                                level,
                                d + 1
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(CheckOutcome::Pass)
}

/// Divide `∂^[s](f^j)` exactly by `f^{j−s}` and check the quotient degree
/// against `s·(deg f − 1)`. Returns the quotient with the verdict; a division
/// failure is the failure witness.
pub fn divided_derivative_divisibility(
    f: &Polynomial,
    var: usize,
    j: u32,
    s: u32,
) -> (Option<Polynomial>, CheckOutcome) {
    assert!(s <= j, "need 0 ≤ s ≤ j");
    if f.is_zero() {
        return (
            None,
            CheckOutcome::NotApplicable("no divisibility claim for the zero polynomial".into()),
        );
    }
    let derived = divided_derivative(&f.pow(j), var, s);
    let divisor = f.pow(j - s);
    match derived.div_exact(&divisor) {
        Some(v) => {
            let dfdeg = f.total_degree().unwrap_or(0);
            let bound = s.saturating_mul(dfdeg.saturating_sub(1));
            match v.total_degree() {
                Some(deg) if deg > bound => (
                    Some(v.clone()),
                    CheckOutcome::Fail(format!(
                        "quotient degree {} exceeds the bound {}",
                        deg, bound
                    )),
                ),
                _ => (Some(v), CheckOutcome::Pass),
            }
        }
        None => (
            None,
            CheckOutcome::Fail(format!(
                "f^{} does not divide the divided derivative ∂^[{}](f^{})",
                j - s,
                s,
                j
            )),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex;
    use crate::field::FieldSpec;
    use crate::idealizer::{traves_member, DrAlgebra};
    use crate::sralgebra::ExponentVector;
    use crate::weyl::DiffOp;
    use crate::complex::SimplicialComplex;
    use num_bigint::BigInt;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn bernstein_dims_of_tripp() {
        let tripp = complex::tripp();
        assert_eq!(bernstein_dim(&tripp, 0), 1);
        assert_eq!(bernstein_dim(&tripp, 1), 5);
        assert_eq!(bernstein_dim(&tripp, 2), 16);
    }

    #[test]
    fn bernstein_levels_nest_and_count() {
        let tripp = complex::tripp();
        let mut prev = 0usize;
        let mut prev_set: Vec<OperatorMonomial> = Vec::new();
        for i in 0..=4u32 {
            let level = bernstein_level(&tripp, i);
            assert_eq!(level.dim, level.monomials.len());
            assert!(level.dim >= prev, "dimensions are non-decreasing");
            for m in &prev_set {
                assert!(level.monomials.contains(m), "levels are nested");
            }
            for m in &level.monomials {
                assert!(m.degree() <= i);
                assert!(traves_member(&tripp, &m.x, &m.d));
            }
            prev = level.dim;
            prev_set = level.monomials;
        }
    }

    #[test]
    fn bernstein_levels_multiply_into_the_right_level() {
        // Sampled form of 𝓕ᵢ·𝓕ⱼ ⊆ 𝓕_{i+j}: compose basis operators and check
        // every term of the product sits in the combined level.
        let tripp = complex::tripp();
        let algebra = DrAlgebra::new(tripp.clone(), q());
        let lv1 = bernstein_level(&tripp, 1);
        let lv2 = bernstein_level(&tripp, 2);
        for a in &lv1.monomials {
            for b in &lv2.monomials {
                let u = algebra
                    .element(DiffOp::from_monomial(a.clone(), q().one(), q()))
                    .unwrap();
                let v = algebra
                    .element(DiffOp::from_monomial(b.clone(), q().one(), q()))
                    .unwrap();
                let product = algebra.compose(&u, &v);
                for (mono, _) in product.op().terms() {
                    assert!(mono.degree() <= a.degree() + b.degree());
                    assert!(traves_member(&tripp, &mono.x, &mono.d));
                }
            }
        }
    }

    #[test]
    fn growth_report_for_tripp() {
        let report = r_filtration_report(&complex::tripp(), q(), 6).unwrap();
        assert_eq!(report.r, 2);
        assert_eq!(&report.dims[..5], &[1, 5, 12, 22, 35]);
        assert_eq!(report.leading, BigRational::new(3.into(), 2.into()));
        assert_eq!(report.c_bound, BigRational::from_integer(5.into()));
        assert_eq!(report.length_bound, BigRational::from_integer(10.into()));
        assert!(report.verdict.is_pass());
        // C·i^r dominates every sampled level
        for (i, &dim) in report.dims.iter().enumerate().skip(1) {
            let cap = &report.c_bound * BigRational::from_integer(BigInt::from(i).pow(2));
            assert!(BigRational::from_integer(dim.into()) <= cap);
        }
    }

    #[test]
    fn growth_report_for_the_univariate_polynomial_ring() {
        let line = SimplicialComplex::full_simplex(1, None).unwrap();
        let report = r_filtration_report(&line, q(), 5).unwrap();
        assert_eq!(report.r, 1);
        assert_eq!(report.dims, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(report.leading, BigRational::one());
        assert!(report.verdict.is_pass());
    }

    #[test]
    fn growth_report_gates_non_t_spaces() {
        let report = r_filtration_report(&complex::two_disjoint_edges(), q(), 6).unwrap();
        assert!(matches!(report.verdict, CheckOutcome::NotApplicable(_)));
        // the numbers are still reported for inspection
        assert_eq!(report.dims.len(), 7);
    }

    #[test]
    fn growth_report_needs_enough_levels() {
        assert!(r_filtration_report(&complex::tripp(), q(), 3).is_err());
    }

    #[test]
    fn finite_differences_have_settled() {
        // The accumulated Hilbert function is eventually polynomial of degree
        // r, so its r-th differences are constant from the start of the
        // polynomial range on.
        let report = r_filtration_report(&complex::tripp(), q(), 8).unwrap();
        let mut diffs: Vec<i64> = report.dims.iter().map(|&d| d as i64).collect();
        for _ in 0..report.r {
            diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        }
        assert!(diffs.len() >= 2);
        assert_eq!(diffs[diffs.len() - 1], diffs[diffs.len() - 2]);
    }

    #[test]
    fn localized_filtration_is_stable_for_tripp_at_w() {
        let verdict = rf_filtration_check(
            &complex::tripp(),
            q(),
            &ExponentVector(vec![0, 0, 0, 1]),
            3,
            3,
        )
        .unwrap();
        assert!(verdict.is_pass(), "{:?}", verdict);
    }

    #[test]
    fn localized_filtration_base_cases() {
        // t = 0 (multiplication) and j = 0, u = 1 are the proof's base cases;
        // covered by the sweep, but pinned here explicitly.
        let tripp = complex::tripp();
        let ctx = crate::localization::saturate(&tripp, q(), &ExponentVector(vec![0, 0, 0, 1]))
            .unwrap();
        let one = Polynomial::one(4, q());
        let u = ctx.fraction(one.clone(), 0);
        for i in 0..4 {
            for t in 0..=3u32 {
                let image = ctx.act_diagonal(i, t, &u);
                let level = t + 1;
                assert!(image.k <= level);
                let re = ctx.normal_form(&image.g.mul(&ctx.f().pow(level - image.k)));
                if let Some(deg) = re.total_degree() {
                    assert!(deg <= level * 2);
                }
            }
        }
    }

    #[test]
    fn operator_levels_respect_the_degree_filtration() {
        // 𝓕ᵢ(𝒢ⱼ) ⊆ 𝒢_{i+j}: applying a level-i basis operator to a monomial of
        // degree ≤ j lands in degree ≤ i+j, exhaustively for i + j ≤ 6.
        let tripp = complex::tripp();
        let ring = crate::sralgebra::SrRing::new(tripp.clone(), q());
        for i in 0..=3u32 {
            let level = bernstein_level(&tripp, i);
            for j in 0..=(6 - i) {
                for u in ring.monomial_basis_up_to(j) {
                    let p = Polynomial::monomial_in(4, u.clone(), q().one(), q());
                    for m in &level.monomials {
                        let op = DiffOp::from_monomial(m.clone(), q().one(), q());
                        let image = ring.reduce(&op.apply(&p));
                        if let Some(deg) = image.total_degree() {
                            assert!(deg <= i + j, "{:?} on {:?} left degree {}", m, u, deg);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn level_images_of_one_accumulate_the_hilbert_function() {
        // dim 𝓕ᵢ·1 inside R equals the accumulated Hilbert function H₁(R,i).
        let tripp = complex::tripp();
        let ring = crate::sralgebra::SrRing::new(tripp.clone(), q());
        let one = Polynomial::one(4, q());
        for i in 0..=6u32 {
            let level = bernstein_level(&tripp, i);
            let mut image_monomials: Vec<ExponentVector> = Vec::new();
            for m in &level.monomials {
                let op = DiffOp::from_monomial(m.clone(), q().one(), q());
                let out = ring.reduce(&op.apply(&one));
                for (e, _) in out.terms() {
                    if !image_monomials.contains(e) {
                        image_monomials.push(e.clone());
                    }
                }
            }
            assert_eq!(image_monomials.len() as u64, ring.iterated_hilbert(i));
        }
    }

    #[test]
    fn divided_derivative_quotients() {
        // f = x² + y, j = 2, s = 1 in the x-direction: ∂(f²) = 4xf, so the
        // quotient against f^{2−1} is 4x.
        let mut f = Polynomial::zero(2, q());
        f.add_term(ExponentVector(vec![2, 0]), q().one());
        f.add_term(ExponentVector(vec![0, 1]), q().one());
        let (v, verdict) = divided_derivative_divisibility(&f, 0, 2, 1);
        assert!(verdict.is_pass());
        let mut expected = Polynomial::zero(2, q());
        expected.add_term(ExponentVector(vec![1, 0]), q().from_i64(4));
        assert_eq!(v.unwrap(), expected);

        // s = 0: the quotient is 1.
        let (v, verdict) = divided_derivative_divisibility(&f, 0, 3, 0);
        assert!(verdict.is_pass());
        assert_eq!(v.unwrap(), Polynomial::one(2, q()));

        // s = j: division by f^0 never fails.
        let (v, verdict) = divided_derivative_divisibility(&f, 0, 2, 2);
        assert!(verdict.is_pass());
        assert!(v.is_some());
    }

    #[test]
    fn divided_derivative_divisibility_sweep() {
        // The divisibility claim holds in every characteristic; sweep small
        // polynomials over ℚ and 𝔽₂.
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2)] {
            let mut f = Polynomial::zero(2, field);
            f.add_term(ExponentVector(vec![1, 1]), field.one());
            f.add_term(ExponentVector(vec![0, 2]), field.one());
            f.add_term(ExponentVector(vec![0, 0]), field.one());
            for j in 0..=3u32 {
                for s in 0..=j {
                    for var in 0..2 {
                        let (_, verdict) = divided_derivative_divisibility(&f, var, j, s);
                        assert!(
                            verdict.is_pass(),
                            "j={} s={} var={} over {:?}: {:?}",
                            j,
                            s,
                            var,
                            field,
                            verdict
                        );
                    }
                }
            }
        }
    }
}
