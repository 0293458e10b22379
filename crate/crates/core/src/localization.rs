//! Localization of a Stanley-Reisner ring at a monomial, fractions with a
//! canonical form, the differential-operator action on fractions via the
//! quotient rule, and a multigraded Čech-complex probe for local cohomology.
//!
//! Inverting a monomial `f` in `R = K[Δ]` kills the saturation
//! `J = 0 :_R f^∞`, so `R_f` is really a localization of `R/J`, where `f` is a
//! nonzerodivisor. The saturation is computed by iterating the monomial colon
//! `I : f` until it stabilizes. Fractions `g/f^k` are kept canonical by
//! reducing `g` modulo the face ideal plus `J` and dividing out `f` greedily.
//!
//! Operators act through the recursion
//! `x∂^[t](g/f^j) = (1/f^j)·x∂^[t](g) − Σ_{s=1..t} (1/f^j)·∂^[s](f^j)·x∂^[t−s](g/f^j)`
//! with divided-power derivatives, which stays valid in every characteristic.
//! General operators act by factoring each monomial `x^A ∂^[t]` as
//! `x^{A−1_supp(t)} · Π_i x_i∂_i^[t_i]`.
//!
//! The Čech probe enumerates multidegrees in a finite box. Over a localization
//! `R_g` each multigraded piece has dimension 0 or 1: the monomial `x^m` is
//! nonzero in `R_g` exactly when `m_i ≥ 0` for every `i ∉ supp(g)` and
//! `supp₊(m) ∪ supp(g)` is a face. Cohomology is computed per multidegree with
//! the standard alternating-sign differentials, and a box-bounded heuristic
//! reads off candidate associated primes from how variables move classes
//! around inside the box.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{Face, SimplicialComplex};
use crate::field::{binomial, FieldSpec};
use crate::linalg::{Echelon, Inserted, SparseVec};
use crate::sralgebra::{ExponentVector, Polynomial, SrRing};
use crate::weyl::{x_del_x, DiffOp};
use crate::{Error, Result};

/// Term-wise divided derivative `∂_i^[s]`: sends `x^e` to `C(e_i, s)·x^{e−s·e_i}`.
///
/// Over the rationals this is `(1/s!)·∂^s/∂x_i^s`; the binomial form keeps
/// integer coefficients and therefore makes sense in every characteristic.
pub fn divided_derivative(p: &Polynomial, i: usize, s: u32) -> Polynomial {
    let field = p.field();
    let mut out = Polynomial::zero(p.n(), field);
    for (exp, coeff) in p.terms() {
        if exp.0[i] < s {
            continue;
        }
        let b = field.from_bigint(&binomial(exp.0[i], s));
        let c = field.mul(coeff, &b);
        if field.is_zero(&c) {
            continue;
        }
        let mut e = exp.clone();
        e.0[i] -= s;
        out.add_term(e, c);
    }
    out
}

fn factorial(t: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=t {
        acc *= k;
    }
    acc
}

/// Drop generators dominated by another generator (monomial ideal minimalization).
fn minimalize(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort();
    gens.dedup();
    let keep: Vec<ExponentVector> = gens
        .iter()
        .filter(|g| {
            !gens
                .iter()
                .any(|h| h != *g && g.dominates(h))
        })
        .cloned()
        .collect();
    keep
}

/// Generators of `(m_1, …, m_k) : f` for monomials: `m_j / gcd(m_j, f)`.
fn colon_by_monomial(gens: &[ExponentVector], f: &ExponentVector) -> Vec<ExponentVector> {
    let out = gens
        .iter()
        .map(|g| {
            let coords: Vec<u32> = g
                .0
                .iter()
                .zip(f.0.iter())
                .map(|(&ge, &fe)| ge - ge.min(fe))
                .collect();
            ExponentVector(coords)
        })
        .collect();
    minimalize(out)
}

/// The localization `R_f` with its saturation data.
///
/// For a monomial `f`, `j_gens` are the minimal monomial generators of
/// `J = 0 :_R f^∞` (each squarefree), and `sat_exponent` is the smallest `m`
/// with `(0 : f^m) = (0 : f^{m+1})`. Over the full polynomial ring a general
/// nonzero `f` is accepted; there the saturation is zero and no reduction
/// happens.
pub struct LocalizedContext {
    ring: SrRing,
    f: Polynomial,
    d: u32,
    j_gens: Vec<ExponentVector>,
    sat_exponent: u32,
}

/// A fraction `g/f^k` in canonical form: `g` is reduced modulo the face ideal
/// plus the saturation, and is not divisible by `f` unless `k = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction {
    pub g: Polynomial,
    pub k: u32,
}

/// Build the localization of `K[Δ]` at the monomial `x^f`, computing the
/// saturation `0 :_R f^∞` by iterated colon until stabilization.
pub fn saturate(
    complex: &SimplicialComplex,
    field: FieldSpec,
    f: &ExponentVector,
) -> Result<LocalizedContext> {
    if f.len() != complex.n() {
        return Err(Error::Domain(format!(
            "monomial has {} coordinates but the complex has {} vertices",
            f.len(),
            complex.n()
        )));
    }
    if !complex.is_face(f.support()) {
        return Err(Error::Domain(
            "cannot localize at a monomial that is zero in the ring".into(),
        ));
    }
    let ring = SrRing::new(complex.clone(), field);
    // Chain I : f^m in the polynomial ring; its stabilization, read modulo the
    // face ideal, is the saturation in R.
    let mut chain = minimalize(ring.face_ideal_generators()?);
    let mut sat_exponent = 0u32;
    loop {
        let next = colon_by_monomial(&chain, f);
        if next == chain {
            break;
        }
        chain = next;
        sat_exponent += 1;
    }
    let j_gens: Vec<ExponentVector> = chain
        .into_iter()
        .filter(|g| complex.is_face(g.support()))
        .collect();
    let d = f.degree();
    let f_poly = Polynomial::monomial_in(complex.n(), f.clone(), field.one(), field);
    Ok(LocalizedContext {
        ring,
        f: f_poly,
        d,
        j_gens,
        sat_exponent,
    })
}

impl LocalizedContext {
    /// Localization of the full polynomial ring at an arbitrary nonzero `f`.
    /// No saturation is needed there, which is what makes general `f` tractable.
    pub fn over_polynomial_ring(f: Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Domain("cannot localize at zero".into()));
        }
        let n = f.n();
        let field = f.field();
        let complex = SimplicialComplex::full_simplex(n, None)?;
        let ring = SrRing::new(complex, field);
        let d = f.total_degree().unwrap_or(0);
        Ok(LocalizedContext {
            ring,
            f,
            d,
            j_gens: Vec::new(),
            sat_exponent: 0,
        })
    }

    pub fn ring(&self) -> &SrRing {
        &self.ring
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.ring.complex()
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    /// Total degree of `f`.
    pub fn degree_of_f(&self) -> u32 {
        self.d
    }

    /// Minimal monomial generators of the saturation `0 :_R f^∞`.
    pub fn saturation_generators(&self) -> &[ExponentVector] {
        &self.j_gens
    }

    /// Smallest `m` with `(0 : f^m) = (0 : f^{m+1})`; zero iff `f` is a
    /// nonzerodivisor on `R`.
    pub fn sat_exponent(&self) -> u32 {
        self.sat_exponent
    }

    /// Normal form modulo the face ideal plus the saturation.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let reduced = self.ring.reduce(p);
        if self.j_gens.is_empty() {
            return reduced;
        }
        let field = self.ring.field();
        let mut out = Polynomial::zero(reduced.n(), field);
        for (exp, coeff) in reduced.terms() {
            if self.j_gens.iter().any(|g| exp.dominates(g)) {
                continue;
            }
            out.add_term(exp.clone(), coeff.clone());
        }
        out
    }

    /// Canonical fraction `g/f^k`: reduce the numerator, then divide out `f`
    /// greedily. Exact division by `f` in `R/J` agrees with term-wise exact
    /// division of the normal form, because multiplication by `f` permutes the
    /// surviving monomial basis injectively.
    pub fn fraction(&self, g: Polynomial, k: u32) -> Fraction {
        let mut g = self.normal_form(&g);
        let mut k = k;
        while k > 0 && !g.is_zero() {
            match g.div_exact(&self.f) {
                Some(q) => {
                    g = self.normal_form(&q);
                    k -= 1;
                }
                None => break,
            }
        }
        if g.is_zero() {
            k = 0;
        }
        Fraction { g, k }
    }

    pub fn zero_fraction(&self) -> Fraction {
        Fraction {
            g: Polynomial::zero(self.ring.n(), self.ring.field()),
            k: 0,
        }
    }

    /// Equality by cross-multiplication in `R/J`, exact because `f` is a
    /// nonzerodivisor there.
    pub fn frac_equal(&self, u: &Fraction, v: &Fraction) -> bool {
        let left = self.normal_form(&u.g.mul(&self.f.pow(v.k)));
        let right = self.normal_form(&v.g.mul(&self.f.pow(u.k)));
        left == right
    }

    pub fn frac_add(&self, u: &Fraction, v: &Fraction) -> Fraction {
        let k = u.k.max(v.k);
        let g = u
            .g
            .mul(&self.f.pow(k - u.k))
            .add(&v.g.mul(&self.f.pow(k - v.k)));
        self.fraction(g, k)
    }

    pub fn frac_scale(&self, p: &Polynomial, u: &Fraction) -> Fraction {
        self.fraction(u.g.mul(p), u.k)
    }

    /// Action of the diagonal operator `x_i ∂_i^[t]` on a fraction, by the
    /// quotient-rule recursion; `t = 0` is multiplication by `x_i`.
    pub fn act_diagonal(&self, i: usize, t: u32, u: &Fraction) -> Fraction {
        let n = self.ring.n();
        let field = self.ring.field();
        if t == 0 {
            return self.frac_scale(&Polynomial::variable(n, i, field), u);
        }
        let op = x_del_x(n, i, t, field);
        let mut acc = self.fraction(op.apply(&u.g), u.k);
        if u.k > 0 {
            let fj = self.f.pow(u.k);
            for s in 1..=t {
                let ds = divided_derivative(&fj, i, s);
                if ds.is_zero() {
                    continue;
                }
                let rec = self.act_diagonal(i, t - s, u);
                let term = self.frac_scale(&ds, &rec);
                let scaled = Fraction {
                    g: term.g,
                    k: term.k + u.k,
                };
                acc = self.frac_add(&acc, &self.fraction(scaled.g.neg(), scaled.k));
            }
        }
        acc
    }

    /// Action of a general operator by K-linear extension, factoring each
    /// monomial `x^A ∂^[t]` with `supp(t) ⊆ supp(A)` as
    /// `x^{A−1_supp(t)} · Π_i x_i∂_i^[t_i]`. Terms with a bare derivative
    /// (some `t_i > 0 = A_i`) are rejected: they are not operators on `R`.
    pub fn act(&self, op: &DiffOp, u: &Fraction) -> Result<Fraction> {
        let n = self.ring.n();
        let field = self.ring.field();
        let mut acc = self.zero_fraction();
        for (mono, coeff) in op.terms() {
            if !mono.d.support().is_subset_of(mono.x.support()) {
                return Err(Error::Domain(format!(
                    "operator term {} has a derivative in a variable missing from its monomial",
                    mono.render(self.complex().labels())
                )));
            }
            let mut w = u.clone();
            for i in 0..n {
                if mono.d.0[i] > 0 {
                    w = self.act_diagonal(i, mono.d.0[i], &w);
                }
            }
            let residual = mono
                .x
                .checked_sub(&mono.d.support_indicator())
                .expect("support condition checked above");
            let shift = Polynomial::monomial_in(n, residual, coeff.clone(), field);
            w = self.frac_scale(&shift, &w);
            acc = self.frac_add(&acc, &w);
        }
        Ok(acc)
    }

    /// Characteristic-zero oracle for `act_diagonal`: iterate the first
    /// derivative through the literal quotient rule on an unreduced lift,
    /// divide by `t!`, multiply by `x_i`, and only then reduce.
    pub fn calculus_oracle(&self, i: usize, t: u32, u: &Fraction) -> Result<Fraction> {
        let field = self.ring.field();
        if field.characteristic() != 0 {
            return Err(Error::Domain(
                "the iterated-derivative oracle needs characteristic zero".into(),
            ));
        }
        let n = self.ring.n();
        let mut num = u.g.clone();
        let mut den = u.k;
        let df = divided_derivative(&self.f, i, 1);
        for _ in 0..t {
            let dg = divided_derivative(&num, i, 1);
            let j = field.from_i64(den as i64);
            num = dg.mul(&self.f).sub(&num.mul(&df).scalar_mul(&j));
            den += 1;
        }
        let tfact = field.inv(&field.from_bigint(&factorial(t)))?;
        num = num.scalar_mul(&tfact).mul(&Polynomial::variable(n, i, field));
        Ok(self.fraction(num, den))
    }

    pub fn render_fraction(&self, u: &Fraction) -> String {
        let labels = self.complex().labels();
        let num = u.g.render(labels);
        if u.k == 0 {
            return num;
        }
        let den = if u.k == 1 {
            self.f.render(labels)
        } else {
            format!("({})^{}", self.f.render(labels), u.k)
        };
        if u.g.term_count() > 1 {
            format!("({})/{}", num, den)
        } else {
            format!("{}/{}", num, den)
        }
    }
}

/// One cell of the multigraded Čech complex: the localization at
/// `∏_{i∈σ} f_i` in a fixed multidegree. Each such piece has dimension 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCell {
    /// Bitmask over the ideal generators.
    pub sigma: u32,
    pub multidegree: Vec<i32>,
}

impl CechCell {
    /// The monomial-basis rule: `x^m ≠ 0` in `R_g` iff `m_i ≥ 0` for every
    /// `i ∉ supp(g)` and `supp₊(m) ∪ supp(g)` is a face.
    pub fn is_nonzero(&self, complex: &SimplicialComplex, generators: &[ExponentVector]) -> bool {
        let mut fmask = 0u64;
        for (idx, g) in generators.iter().enumerate() {
            if self.sigma >> idx & 1 == 1 {
                fmask |= g.support().0;
            }
        }
        let mut pos = 0u64;
        for (i, &mi) in self.multidegree.iter().enumerate() {
            if mi < 0 && fmask >> i & 1 == 0 {
                return false;
            }
            if mi > 0 {
                pos |= 1 << i;
            }
        }
        complex.is_face(Face(pos | fmask))
    }
}

/// Čech cohomology dimensions of `K[Δ]` with respect to monomial generators,
/// tabulated over a finite multidegree box.
pub struct CechComputation {
    complex: SimplicialComplex,
    field: FieldSpec,
    generators: Vec<ExponentVector>,
    lo: i32,
    hi: i32,
    /// Nonzero dimensions only, keyed by cohomological degree and multidegree.
    table: BTreeMap<(usize, Vec<i32>), usize>,
}

fn for_each_multidegree(n: usize, lo: i32, hi: i32, visit: &mut impl FnMut(&[i32])) {
    let mut m = vec![lo; n];
    if n == 0 {
        visit(&m);
        return;
    }
    loop {
        visit(&m);
        let mut idx = 0;
        loop {
            if m[idx] < hi {
                m[idx] += 1;
                break;
            }
            m[idx] = lo;
            idx += 1;
            if idx == n {
                return;
            }
        }
    }
}

/// Compute the Čech cohomology table of `K[Δ]` for the ideal generated by the
/// given monomials, over all multidegrees in the box `[lo, hi]^n`.
pub fn cech_cohomology(
    complex: &SimplicialComplex,
    field: FieldSpec,
    generators: &[ExponentVector],
    lo: i32,
    hi: i32,
) -> Result<CechComputation> {
    if lo > hi {
        return Err(Error::Domain("empty multidegree box".into()));
    }
    let s = generators.len();
    if s > 16 {
        return Err(Error::Capacity(format!(
            "{} ideal generators exceed the supported 16",
            s
        )));
    }
    for g in generators {
        if g.len() != complex.n() {
            return Err(Error::Domain(format!(
                "generator has {} coordinates but the complex has {} vertices",
                g.len(),
                complex.n()
            )));
        }
    }
    let mut comp = CechComputation {
        complex: complex.clone(),
        field,
        generators: generators.to_vec(),
        lo,
        hi,
        table: BTreeMap::new(),
    };
    let mut entries = BTreeMap::new();
    for_each_multidegree(complex.n(), lo, hi, &mut |m| {
        let alive = comp.alive_cells(m);
        debug_assert!(comp.differential_squares_to_zero(m, &alive));
        // rank of the level-j differential, for j = 0..=s
        let mut ranks = vec![0usize; s + 2];
        let mut counts = vec![0usize; s + 1];
        for j in 0..=s {
            let mut ech = Echelon::new(comp.field);
            for sigma in 0..(1u32 << s) {
                if sigma.count_ones() as usize != j || !alive[sigma as usize] {
                    continue;
                }
                counts[j] += 1;
                ech.insert(comp.differential(sigma, m, &alive));
            }
            ranks[j + 1] = ech.rank();
        }
        for j in 0..=s {
            // dim H^j = dim C^j − rank d_j − rank d_{j−1}
            let dim = counts[j] - ranks[j + 1] - ranks[j];
            if dim > 0 {
                entries.insert((j, m.to_vec()), dim);
            }
        }
    });
    comp.table = entries;
    Ok(comp)
}

impl CechComputation {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn bounds(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    /// Nonzero table entries, keyed by `(j, multidegree)`.
    pub fn table(&self) -> &BTreeMap<(usize, Vec<i32>), usize> {
        &self.table
    }

    pub fn dim(&self, j: usize, m: &[i32]) -> usize {
        self.table.get(&(j, m.to_vec())).copied().unwrap_or(0)
    }

    /// Re-checks `d∘d = 0` on every alive cell at every multidegree of the
    /// box. The construction already asserts this in debug builds; the public
    /// form lets release callers demand the same evidence.
    pub fn differentials_square_to_zero(&self) -> bool {
        let mut ok = true;
        for_each_multidegree(self.complex.n(), self.lo, self.hi, &mut |m| {
            let alive = self.alive_cells(m);
            if !self.differential_squares_to_zero(m, &alive) {
                ok = false;
            }
        });
        ok
    }

    /// Total dimension in cohomological degree `j` across the box.
    pub fn total_dim(&self, j: usize) -> usize {
        self.table
            .iter()
            .filter(|((jj, _), _)| *jj == j)
            .map(|(_, d)| d)
            .sum()
    }

    fn alive_cells(&self, m: &[i32]) -> Vec<bool> {
        let s = self.generators.len();
        (0..(1u32 << s))
            .map(|sigma| {
                CechCell {
                    sigma,
                    multidegree: m.to_vec(),
                }
                .is_nonzero(&self.complex, &self.generators)
            })
            .collect()
    }

    /// Differential of the cell `(σ, m)` as a sparse vector over target cells
    /// indexed by their σ-bitmask.
    fn differential(&self, sigma: u32, _m: &[i32], alive: &[bool]) -> SparseVec {
        let s = self.generators.len();
        let mut out: SparseVec = BTreeMap::new();
        if !alive[sigma as usize] {
            return out;
        }
        for q in 0..s {
            if sigma >> q & 1 == 1 {
                continue;
            }
            let target = sigma | 1 << q;
            if !alive[target as usize] {
                continue;
            }
            let below = (sigma & ((1u32 << q) - 1)).count_ones();
            let sign = if below % 2 == 0 {
                self.field.one()
            } else {
                self.field.neg(&self.field.one())
            };
            out.insert(target as usize, sign);
        }
        out
    }

    fn differential_squares_to_zero(&self, m: &[i32], alive: &[bool]) -> bool {
        let s = self.generators.len();
        for sigma in 0..(1u32 << s) {
            if !alive[sigma as usize] {
                continue;
            }
            let first = self.differential(sigma, m, alive);
            let mut acc: SparseVec = BTreeMap::new();
            for (&tau, coeff) in &first {
                for (target, c2) in self.differential(tau as u32, m, alive) {
                    let delta = self.field.mul(coeff, &c2);
                    let entry = acc.entry(target).or_insert_with(|| self.field.zero());
                    *entry = self.field.add(entry, &delta);
                    if self.field.is_zero(entry) {
                        acc.remove(&target);
                    }
                }
            }
            if !acc.is_empty() {
                return false;
            }
        }
        true
    }

    /// Echelon of the image of the incoming differential at `(j, m)`.
    fn image_echelon(&self, j: usize, m: &[i32], alive: &[bool]) -> Echelon {
        let s = self.generators.len();
        let mut ech = Echelon::new(self.field);
        if j == 0 {
            return ech;
        }
        for sigma in 0..(1u32 << s) {
            if sigma.count_ones() as usize != j - 1 || !alive[sigma as usize] {
                continue;
            }
            ech.insert(self.differential(sigma, m, alive));
        }
        ech
    }

    /// Canonical representatives of a basis of `H^j` in multidegree `m`, as
    /// cycles reduced against the image of the incoming differential.
    fn class_representatives(&self, j: usize, m: &[i32], alive: &[bool]) -> Vec<SparseVec> {
        let s = self.generators.len();
        let image = self.image_echelon(j, m, alive);
        // Kernel of the outgoing differential: insert d(σ) for each alive cell
        // in order; a dependency gives an explicit kernel vector.
        let mut kernel_vectors: Vec<SparseVec> = Vec::new();
        let mut ech = Echelon::with_tracking(self.field);
        let mut inserted: Vec<u32> = Vec::new();
        for sigma in 0..(1u32 << s) {
            if sigma.count_ones() as usize != j || !alive[sigma as usize] {
                continue;
            }
            let outcome = ech.insert(self.differential(sigma, m, alive));
            if let Inserted::Dependent { combination } = outcome {
                let mut v: SparseVec = BTreeMap::new();
                v.insert(sigma as usize, self.field.one());
                for (r, c) in combination {
                    let neg = self.field.neg(&c);
                    if !self.field.is_zero(&neg) {
                        v.insert(inserted[r] as usize, neg);
                    }
                }
                kernel_vectors.push(v);
            }
            inserted.push(sigma);
        }
        let mut classes = Vec::new();
        let mut span = Echelon::new(self.field);
        for v in kernel_vectors {
            let residue = image.residue(&v);
            if residue.is_empty() {
                continue;
            }
            if matches!(span.insert(residue.clone()), Inserted::Independent) {
                classes.push(residue);
            }
        }
        classes
    }

    /// Whether the cycle `v` at `(j, m)` represents the zero cohomology class.
    fn class_is_zero(&self, j: usize, m: &[i32], alive: &[bool], v: &SparseVec) -> bool {
        self.image_echelon(j, m, alive).residue(v).is_empty()
    }

    /// Push a chain at multidegree `m` along multiplication by `x_i`: entries
    /// move to `(σ, m + e_i)` and vanish where the target cell is zero.
    fn multiply_chain(&self, v: &SparseVec, target_alive: &[bool]) -> SparseVec {
        v.iter()
            .filter(|(sigma, _)| target_alive[**sigma])
            .map(|(sigma, c)| (*sigma, c.clone()))
            .collect()
    }
}

/// Box-bounded heuristic probe for associated primes of the `j`-th cohomology:
/// a monomial prime `P` is reported when some nonzero class `u` in the box is
/// annihilated by exactly the variables in `P` and no visible power of a
/// variable outside `P` kills `u` within the box. `P` must be prime, i.e. its
/// complement must be a face. Completeness inside a box is not claimed.
pub fn candidate_ass_primes(comp: &CechComputation, j: usize) -> Vec<Face> {
    let n = comp.complex.n();
    let mut found: Vec<Face> = Vec::new();
    for ((jj, m), _) in comp.table.iter() {
        if *jj != j {
            continue;
        }
        // Every single multiplication must stay observable.
        if m.iter().any(|&mi| mi + 1 > comp.hi) {
            continue;
        }
        let alive = comp.alive_cells(m);
        'class: for u in comp.class_representatives(j, m, &alive) {
            let mut ann = 0u64;
            for i in 0..n {
                let mut m1 = m.clone();
                m1[i] += 1;
                let target_alive = comp.alive_cells(&m1);
                let moved = comp.multiply_chain(&u, &target_alive);
                if comp.class_is_zero(j, &m1, &target_alive, &moved) {
                    ann |= 1 << i;
                }
            }
            let p = Face(ann);
            let complement = Face(comp.complex.full_mask() & !ann);
            if !comp.complex.is_face(complement) {
                continue;
            }
            // Reject witnesses with hidden torsion: a variable outside P whose
            // visible power kills the class would enlarge the annihilator.
            for i in 0..n {
                if ann >> i & 1 == 1 {
                    continue;
                }
                let mut cur = u.clone();
                let mut mc = m.clone();
                while mc[i] + 1 <= comp.hi {
                    mc[i] += 1;
                    let target_alive = comp.alive_cells(&mc);
                    cur = comp.multiply_chain(&cur, &target_alive);
                    if comp.class_is_zero(j, &mc, &target_alive, &cur) {
                        continue 'class;
                    }
                }
            }
            if !found.contains(&p) {
                found.push(p);
            }
        }
    }
    found.sort();
    found
}
