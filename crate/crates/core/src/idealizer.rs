//! Differential operators of a Stanley-Reisner ring.
//!
//! The ring of K-linear differential operators of R = K[Δ] is the idealizer
//! of the face ideal inside the Weyl algebra, taken modulo I_Δ·𝒟. Membership
//! of a monomial x^a d^[t] is decided by the combinatorial criterion: for
//! every minimal prime P of I_Δ, either supp(a) meets P or supp(t) avoids P.
//! The quotient by I_Δ·𝒟 deletes terms whose x-part support is a non-face,
//! exactly as polynomial reduction does in R.

use crate::complex::{Face, SimplicialComplex, TSpaceVerdict};
use crate::field::FieldSpec;
use crate::sralgebra::{enumerate_compositions, ExponentVector};
use crate::weyl::{DiffOp, OperatorMonomial};
use crate::{CheckOutcome, Error, Result};

/// Combinatorial membership criterion for x^a d^[t] as an operator on R:
/// true iff for every minimal prime P, supp(a) ∩ P ≠ ∅ or supp(t) ∩ P = ∅.
pub fn traves_member(complex: &SimplicialComplex, a: &ExponentVector, t: &ExponentVector) -> bool {
    traves_member_masks(complex, a.support(), t.support())
}

/// Support-level form of the membership criterion (it depends only on the
/// supports of the two exponent vectors).
pub fn traves_member_masks(complex: &SimplicialComplex, a: Face, t: Face) -> bool {
    complex
        .minimal_primes_masks()
        .iter()
        .all(|&p| a.0 & p.0 != 0 || t.0 & p.0 == 0)
}

/// Direct bounded check that x^a d^[t] maps the face ideal into itself:
/// the action is tested on every monomial x^v of the ideal with v in the
/// box [t, t+1] coordinatewise. Smaller exponents act as zero outright
/// (the integer binomial C(v_i, t_i) vanishes for v_i < t_i in every
/// characteristic), and beyond t_i + 1 the supports of x^v and of the image
/// no longer change, so this box decides containment.
pub fn idealizer_oracle(
    complex: &SimplicialComplex,
    field: FieldSpec,
    a: &ExponentVector,
    t: &ExponentVector,
) -> bool {
    let n = complex.n();
    let op = DiffOp::from_monomial(
        OperatorMonomial {
            x: a.clone(),
            d: t.clone(),
        },
        field.one(),
        field,
    );
    let mut v = t.0.clone();
    loop {
        let ve = ExponentVector(v.clone());
        if !complex.is_face(ve.support()) {
            // x^v lies in the face ideal; its image must stay there.
            let image = op.apply(&crate::sralgebra::Polynomial::monomial(
                ve,
                field.one(),
                field,
            ));
            for (e, _) in image.terms() {
                if complex.is_face(e.support()) {
                    return false;
                }
            }
        }
        // Advance v through the box [t, t+1].
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            if v[i] == t.0[i] {
                v[i] += 1;
                break;
            }
            v[i] = t.0[i];
            i += 1;
        }
    }
}

/// All operator monomials x^a d^[t] of total degree |a| + |t| ≤ B that are
/// nonzero on R (supp(a) is a face) and satisfy the membership criterion.
pub fn dr_basis_up_to(complex: &SimplicialComplex, b: u32) -> Vec<OperatorMonomial> {
    let n = complex.n();
    let mut out = Vec::new();
    let mut a_exp = vec![0u32; n];
    for deg_a in 0..=b {
        enumerate_compositions(&mut a_exp, 0, deg_a, &mut |a| {
            let a = ExponentVector(a.to_vec());
            if !complex.is_face(a.support()) {
                return;
            }
            let mut t_exp = vec![0u32; n];
            for deg_t in 0..=(b - deg_a) {
                enumerate_compositions(&mut t_exp, 0, deg_t, &mut |t| {
                    let t = ExponentVector(t.to_vec());
                    if traves_member(complex, &a, &t) {
                        out.push(OperatorMonomial { x: a.clone(), d: t });
                    }
                });
            }
        });
    }
    out.sort();
    out
}

/// Checks that for a T-space the operator monomials of the differential
/// operator ring up to total degree B are exactly those with
/// supp(t) ⊆ supp(a) and supp(a) a face. Not applicable when the complex is
/// not a T-space or its face ideal is zero (full simplex), where pure
/// divided powers d^[t] are operators without satisfying the support
/// condition.
pub fn verify_xdelx(complex: &SimplicialComplex, b: u32) -> CheckOutcome {
    match complex.is_t_space() {
        TSpaceVerdict::TSpace => {}
        TSpaceVerdict::NotTSpace => {
            return CheckOutcome::NotApplicable("complex is not a T-space".into())
        }
        TSpaceVerdict::NotApplicable => {
            return CheckOutcome::NotApplicable(
                "face ideal is zero (full simplex); support condition does not apply".into(),
            )
        }
    }
    let basis = dr_basis_up_to(complex, b);
    let mut expect = Vec::new();
    let n = complex.n();
    let mut a_exp = vec![0u32; n];
    for deg_a in 0..=b {
        enumerate_compositions(&mut a_exp, 0, deg_a, &mut |a| {
            let a = ExponentVector(a.to_vec());
            if !complex.is_face(a.support()) {
                return;
            }
            let a_mask = a.support();
            let mut t_exp = vec![0u32; n];
            for deg_t in 0..=(b - deg_a) {
                enumerate_compositions(&mut t_exp, 0, deg_t, &mut |t| {
                    let t = ExponentVector(t.to_vec());
                    if t.support().is_subset_of(a_mask) {
                        expect.push(OperatorMonomial { x: a.clone(), d: t });
                    }
                });
            }
        });
    }
    expect.sort();
    if basis == expect {
        return CheckOutcome::Pass;
    }
    let basis_set: std::collections::BTreeSet<_> = basis.iter().collect();
    let expect_set: std::collections::BTreeSet<_> = expect.iter().collect();
    let labels = complex.labels();
    for m in basis_set.symmetric_difference(&expect_set) {
        let side = if basis_set.contains(*m) {
            "in basis but fails the support condition"
        } else {
            "satisfies the support condition but is not in the basis"
        };
        return CheckOutcome::Fail(format!("{} {}", m.render(labels), side));
    }
    unreachable!("sets differ but symmetric difference is empty")
}

/// The ring 𝒟_R: operators are carried as Weyl-algebra normal forms with
/// x-part reduced modulo the face ideal.
#[derive(Clone, Debug)]
pub struct DrAlgebra {
    complex: SimplicialComplex,
    field: FieldSpec,
}

/// An element of 𝒟_R. Constructed through [`DrAlgebra::element`], which
/// enforces the membership criterion on every term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrOperator {
    op: DiffOp,
}

impl DrOperator {
    pub fn op(&self) -> &DiffOp {
        &self.op
    }

    pub fn into_op(self) -> DiffOp {
        self.op
    }

    pub fn is_zero(&self) -> bool {
        self.op.is_zero()
    }
}

impl DrAlgebra {
    pub fn new(complex: SimplicialComplex, field: FieldSpec) -> Self {
        DrAlgebra { complex, field }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Quotient by I_Δ·𝒟: deletes terms whose x-part support is a non-face.
    pub fn reduce(&self, op: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero(op.n(), op.field());
        for (m, c) in op.terms() {
            if self.complex.is_face(m.x.support()) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Wraps a Weyl-algebra element as an operator on R, after reduction.
    /// Errors if a reduced term fails the membership criterion.
    pub fn element(&self, op: DiffOp) -> Result<DrOperator> {
        if op.n() != self.complex.n() {
            return Err(Error::Domain(format!(
                "operator in {} variables over a complex on {} vertices",
                op.n(),
                self.complex.n()
            )));
        }
        let reduced = self.reduce(&op);
        for (m, _) in reduced.terms() {
            if !traves_member_masks(&self.complex, m.x.support(), m.d.support()) {
                return Err(Error::Domain(format!(
                    "term {} does not map the face ideal into itself",
                    m.render(self.complex.labels())
                )));
            }
        }
        Ok(DrOperator { op: reduced })
    }

    /// Composition in 𝒟_R: compose in the Weyl algebra, then reduce.
    pub fn compose(&self, u: &DrOperator, v: &DrOperator) -> DrOperator {
        DrOperator {
            op: self.reduce(&u.op.compose(&v.op)),
        }
    }

    pub fn add(&self, u: &DrOperator, v: &DrOperator) -> DrOperator {
        DrOperator {
            op: u.op.add(&v.op),
        }
    }

    pub fn one(&self) -> DrOperator {
        DrOperator {
            op: DiffOp::one(self.complex.n(), self.field),
        }
    }
}
