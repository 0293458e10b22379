//! The Weyl algebra on divided-power generators.
//!
//! Operators are spans of monomials x^a d^[t], where d_i^[t] denotes the
//! divided power (1/t!) d_i^t kept as a basis symbol so that every formula is
//! valid uniformly in characteristic p. The action on a monomial is
//! d^[t](x^v) = C(v, t) x^(v-t), and composition moves divided powers across
//! coordinates one variable at a time via
//!     d_i^[t] x_i^b = sum_s C(b, s) x_i^(b-s) d_i^[t-s]
//! and d^[s] d^[t] = C(s+t, s) d^[s+t], both validated against the action.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{binomial, FieldSpec, Scalar};
use crate::sralgebra::{ExponentVector, Polynomial};

/// A monomial x^x_pow d^[d_pow] in the divided-power Weyl algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorMonomial {
    pub x: ExponentVector,
    pub d: ExponentVector,
}

impl OperatorMonomial {
    pub fn identity(n: usize) -> Self {
        OperatorMonomial {
            x: ExponentVector::zero(n),
            d: ExponentVector::zero(n),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Total degree |x| + |d| (the Bernstein degree of the monomial).
    pub fn degree(&self) -> u32 {
        self.x.degree() + self.d.degree()
    }

    /// Differential order |d|.
    pub fn order(&self) -> u32 {
        self.d.degree()
    }

    pub fn render(&self, labels: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &p) in self.x.0.iter().enumerate() {
            if p == 1 {
                parts.push(labels[i].clone());
            } else if p > 1 {
                parts.push(format!("{}^{}", labels[i], p));
            }
        }
        for (i, &p) in self.d.0.iter().enumerate() {
            if p > 0 {
                parts.push(format!("d{}^[{}]", i + 1, p));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl PartialOrd for OperatorMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// Normal-form term order: lexicographic on the (x, d) exponent pair.
impl Ord for OperatorMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.x
            .0
            .cmp(&other.x.0)
            .then_with(|| self.d.0.cmp(&other.d.0))
    }
}

/// A differential operator: a finite span of operator monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    n: usize,
    field: FieldSpec,
    terms: BTreeMap<OperatorMonomial, Scalar>,
}

impl DiffOp {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        DiffOp {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, field: FieldSpec) -> Self {
        DiffOp::from_monomial(OperatorMonomial::identity(n), field.one(), field)
    }

    pub fn from_monomial(m: OperatorMonomial, coeff: Scalar, field: FieldSpec) -> Self {
        let n = m.n();
        let mut terms = BTreeMap::new();
        if !field.is_zero(&coeff) {
            terms.insert(m, coeff);
        }
        DiffOp { n, field, terms }
    }

    /// Multiplication operator by a polynomial (order-zero operator).
    pub fn from_polynomial(p: &Polynomial) -> Self {
        let mut out = DiffOp::zero(p.n(), p.field());
        for (e, c) in p.terms() {
            out.add_term(
                OperatorMonomial {
                    x: e.clone(),
                    d: ExponentVector::zero(p.n()),
                },
                c.clone(),
            );
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OperatorMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &OperatorMonomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: OperatorMonomial, coeff: Scalar) {
        debug_assert_eq!(m.n(), self.n);
        let field = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !field.is_zero(&coeff) {
                    e.insert(coeff);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = field.add(e.get(), &coeff);
                if field.is_zero(&sum) {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DiffOp {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, s: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero(self.n, self.field);
        if self.field.is_zero(s) {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(c, s));
        }
        out
    }

    /// Maximal differential order among the terms; None for the zero
    /// operator (surfaced as -1 at the interface level).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.order()).max()
    }

    /// Maximal Bernstein degree |x| + |d|; None for the zero operator.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Applies the operator to a polynomial:
    /// x^a d^[t] (x^v) = prod_i C(v_i, t_i) x^(v - t + a).
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(self.field, p.field(), "field mismatch");
        let field = self.field;
        let mut out = Polynomial::zero(self.n, field);
        for (m, c) in &self.terms {
            for (v, pc) in p.terms() {
                let Some(shifted) = v.checked_sub(&m.d) else {
                    continue; // some v_i < t_i, the binomial vanishes
                };
                let mut coeff = field.mul(c, pc);
                for i in 0..self.n {
                    if m.d.0[i] > 0 {
                        coeff = field.mul(&coeff, &field.from_bigint(&binomial(v.0[i], m.d.0[i])));
                    }
                }
                out.add_term(shifted.add(&m.x), coeff);
            }
        }
        out
    }

    /// Composition (self after other), normalized by moving divided powers
    /// across coordinate powers one variable at a time.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        assert_eq!(self.field, other.field, "field mismatch");
        let field = self.field;
        let mut out = DiffOp::zero(self.n, field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let base = field.mul(c1, c2);
                compose_monomials(m1, m2, &base, field, &mut out);
            }
        }
        out
    }

    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let field = self.field;
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let cs = field.format(c);
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let body = m.render(labels);
            if body == "1" {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&body);
            } else {
                out.push_str(&mag);
                out.push(' ');
                out.push_str(&body);
            }
        }
        out
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.n).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", self.render(&labels))
    }
}

/// Expands (x^a1 d^[t1]) (x^a2 d^[t2]) into `out`. For each vector s with
/// 0 <= s <= min(t1, a2) the contribution is
///   prod_i C(a2_i, s_i) C(t1_i + t2_i - s_i, t2_i) x^(a1+a2-s) d^[t1+t2-s].
fn compose_monomials(
    m1: &OperatorMonomial,
    m2: &OperatorMonomial,
    base: &Scalar,
    field: FieldSpec,
    out: &mut DiffOp,
) {
    let n = m1.n();
    let bound: Vec<u32> = (0..n).map(|i| m1.d.0[i].min(m2.x.0[i])).collect();
    let mut s = vec![0u32; n];
    loop {
        let mut coeff = base.clone();
        for i in 0..n {
            if s[i] > 0 || m1.d.0[i] > 0 {
                coeff = field.mul(&coeff, &field.from_bigint(&binomial(m2.x.0[i], s[i])));
                coeff = field.mul(
                    &coeff,
                    &field.from_bigint(&binomial(m1.d.0[i] + m2.d.0[i] - s[i], m2.d.0[i])),
                );
            }
        }
        if !field.is_zero(&coeff) {
            let x = ExponentVector(
                (0..n)
                    .map(|i| m1.x.0[i] + m2.x.0[i] - s[i])
                    .collect(),
            );
            let d = ExponentVector(
                (0..n)
                    .map(|i| m1.d.0[i] + m2.d.0[i] - s[i])
                    .collect(),
            );
            out.add_term(OperatorMonomial { x, d }, coeff);
        }
        // Advance the multi-index s through the box [0, bound].
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if s[i] < bound[i] {
                s[i] += 1;
                break;
            }
            s[i] = 0;
            i += 1;
        }
    }
}

/// The operator x_i d_i^[t] (multiplication by x_i after the t-th divided
/// derivative in the same variable); t = 0 gives multiplication by x_i.
pub fn x_del_x(n: usize, i: usize, t: u32, field: FieldSpec) -> DiffOp {
    let mut d = ExponentVector::zero(n);
    d.0[i] = t;
    DiffOp::from_monomial(
        OperatorMonomial {
            x: ExponentVector::unit(n, i),
            d,
        },
        field.one(),
        field,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn mono(n: usize, x: &[u32], d: &[u32]) -> OperatorMonomial {
        let _ = n;
        OperatorMonomial {
            x: ExponentVector(x.to_vec()),
            d: ExponentVector(d.to_vec()),
        }
    }

    fn poly_mono(e: &[u32]) -> Polynomial {
        Polynomial::monomial(ExponentVector(e.to_vec()), q().one(), q())
    }

    #[test]
    fn action_on_monomials() {
        // d^[2](x^5) = C(5,2) x^3 = 10 x^3.
        let op = DiffOp::from_monomial(mono(1, &[0], &[2]), q().one(), q());
        let got = op.apply(&poly_mono(&[5]));
        assert_eq!(got.coeff(&ExponentVector(vec![3])), q().from_i64(10));
        // d^[2](x) = 0.
        assert!(op.apply(&poly_mono(&[1])).is_zero());
    }

    #[test]
    fn action_in_characteristic_two() {
        // d^[1](x^2) = 2x = 0 over F_2, but d^[2](x^2) = 1.
        let f = FieldSpec::Prime(2);
        let d1 = DiffOp::from_monomial(mono(1, &[0], &[1]), f.one(), f);
        let d2 = DiffOp::from_monomial(mono(1, &[0], &[2]), f.one(), f);
        let x2 = Polynomial::monomial(ExponentVector(vec![2]), f.one(), f);
        assert!(d1.apply(&x2).is_zero());
        assert_eq!(d2.apply(&x2), Polynomial::one(1, f));
    }

    #[test]
    fn divided_powers_compose_with_binomial_coefficient() {
        // d^[1] d^[2] = C(3,1) d^[3] = 3 d^[3].
        let d1 = DiffOp::from_monomial(mono(1, &[0], &[1]), q().one(), q());
        let d2 = DiffOp::from_monomial(mono(1, &[0], &[2]), q().one(), q());
        let prod = d1.compose(&d2);
        assert_eq!(prod.term_count(), 1);
        assert_eq!(prod.coeff(&mono(1, &[0], &[3])), q().from_i64(3));
    }

    #[test]
    fn compose_matches_action() {
        // Deterministic sweep: all monomial pairs with small exponents in two
        // variables, applied to a few monomials.
        let fields = [q(), FieldSpec::Prime(2), FieldSpec::Prime(3)];
        for field in fields {
            for a1 in 0..2u32 {
                for t1 in 0..3u32 {
                    for a2 in 0..3u32 {
                        for t2 in 0..2u32 {
                            let m1 = DiffOp::from_monomial(
                                mono(2, &[a1, 1], &[t1, 0]),
                                field.one(),
                                field,
                            );
                            let m2 = DiffOp::from_monomial(
                                mono(2, &[a2, 0], &[t2, 1]),
                                field.one(),
                                field,
                            );
                            let composed = m1.compose(&m2);
                            for v0 in 0..4u32 {
                                for v1 in 0..3u32 {
                                    let p = Polynomial::monomial(
                                        ExponentVector(vec![v0, v1]),
                                        field.one(),
                                        field,
                                    );
                                    assert_eq!(
                                        composed.apply(&p),
                                        m1.apply(&m2.apply(&p)),
                                        "mismatch at a1={a1} t1={t1} a2={a2} t2={t2} v=({v0},{v1})"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composition_is_associative() {
        let a = DiffOp::from_monomial(mono(2, &[1, 0], &[2, 0]), q().from_i64(2), q());
        let b = DiffOp::from_monomial(mono(2, &[0, 1], &[1, 1]), q().one(), q());
        let c = DiffOp::from_monomial(mono(2, &[1, 1], &[0, 2]), q().from_i64(-3), q());
        let ab_c = a.compose(&b).compose(&c);
        let a_bc = a.compose(&b.compose(&c));
        assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn x_del_x_product_rule() {
        // x d^[t] x^u = sum_s C(u, s) x^(u - s + 1) d^[t - s].
        let n = 1;
        let t = 3u32;
        let u = 2u32;
        let op = x_del_x(n, 0, t, q());
        let xu = DiffOp::from_monomial(mono(1, &[u], &[0]), q().one(), q());
        let got = op.compose(&xu);
        let mut expect = DiffOp::zero(n, q());
        for s in 0..=t.min(u) {
            expect.add_term(
                mono(1, &[u - s + 1], &[t - s]),
                q().from_bigint(&binomial(u, s)),
            );
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn x_del_x_commute_in_distinct_variables() {
        for t in 1..4u32 {
            for s in 1..4u32 {
                let a = x_del_x(2, 0, t, q());
                let b = x_del_x(2, 1, s, q());
                assert!(a.commutator(&b).is_zero(), "t={t} s={s}");
            }
        }
    }

    #[test]
    fn x_del_x_same_variable_does_not_commute() {
        // Recorded value: [x d^[1], x d^[2]] = -x d^[2].
        let a = x_del_x(1, 0, 1, q());
        let b = x_del_x(1, 0, 2, q());
        let comm = a.commutator(&b);
        let mut expect = DiffOp::zero(1, q());
        expect.add_term(mono(1, &[1], &[2]), q().from_i64(-1));
        assert_eq!(comm, expect);
        // Cross-check on x^2: the two compositions differ there.
        let x2 = poly_mono(&[2]);
        assert_eq!(
            a.compose(&b).apply(&x2),
            Polynomial::monomial(ExponentVector(vec![1]), q().one(), q())
        );
        assert_eq!(
            b.compose(&a).apply(&x2),
            Polynomial::monomial(ExponentVector(vec![1]), q().from_i64(2), q())
        );
    }

    #[test]
    fn order_and_degree() {
        let zero = DiffOp::zero(2, q());
        assert_eq!(zero.order(), None);
        let op = DiffOp::from_monomial(mono(2, &[1, 0], &[0, 3]), q().one(), q());
        assert_eq!(op.order(), Some(3));
        assert_eq!(op.degree(), Some(4));
    }

    #[test]
    fn operator_rendering() {
        let mut op = DiffOp::from_monomial(mono(2, &[2, 0], &[3, 0]), q().one(), q());
        op.add_term(mono(2, &[0, 1], &[0, 1]), q().from_i64(5));
        let labels = vec!["x1".to_string(), "x2".to_string()];
        assert_eq!(op.render(&labels), "x1^2 d1^[3] + 5 x2 d2^[1]");
    }

    mod laws {
        use super::*;
        use proptest::prelude::*;

        fn arb_field() -> impl Strategy<Value = FieldSpec> {
            prop_oneof![
                Just(FieldSpec::Rationals),
                Just(FieldSpec::Prime(2)),
                Just(FieldSpec::Prime(3)),
                Just(FieldSpec::Prime(101)),
            ]
        }

        fn arb_op(field: FieldSpec) -> impl Strategy<Value = DiffOp> {
            prop::collection::vec(
                (
                    prop::collection::vec(0..3u32, 2),
                    prop::collection::vec(0..3u32, 2),
                    -4i64..5,
                ),
                1..4,
            )
            .prop_map(move |terms| {
                let mut op = DiffOp::zero(2, field);
                for (x, d, c) in terms {
                    op.add_term(
                        OperatorMonomial {
                            x: ExponentVector(x),
                            d: ExponentVector(d),
                        },
                        field.from_i64(c),
                    );
                }
                op
            })
        }

        fn arb_poly(field: FieldSpec) -> impl Strategy<Value = Polynomial> {
            prop::collection::vec((prop::collection::vec(0..4u32, 2), -4i64..5), 1..4).prop_map(
                move |terms| {
                    let mut p = Polynomial::zero(2, field);
                    for (e, c) in terms {
                        p.add_term(ExponentVector(e), field.from_i64(c));
                    }
                    p
                },
            )
        }

        proptest! {
            #[test]
            fn compose_agrees_with_iterated_action(
                (a, b, p) in arb_field().prop_flat_map(|f| (arb_op(f), arb_op(f), arb_poly(f)))
            ) {
                prop_assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
            }

            #[test]
            fn action_is_additive(
                (a, p, r) in arb_field().prop_flat_map(|f| (arb_op(f), arb_poly(f), arb_poly(f)))
            ) {
                prop_assert_eq!(a.apply(&p.add(&r)), a.apply(&p).add(&a.apply(&r)));
            }

            #[test]
            fn composition_distributes_over_sums(
                (a, b, c) in arb_field().prop_flat_map(|f| (arb_op(f), arb_op(f), arb_op(f)))
            ) {
                prop_assert_eq!(a.compose(&b.add(&c)), a.compose(&b).add(&a.compose(&c)));
            }
        }
    }
}
