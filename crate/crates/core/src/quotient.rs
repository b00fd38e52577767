//! Reduction of the enveloping algebra modulo a character ideal.
//!
//! Fix a subalgebra `h` of `g`, a functional `λ` on `h` vanishing on
//! `[h, h]`, and a linear complement `q` of `h` in `g`.  The left ideal
//! generated by `{H + λ(H)·1 : H ∈ h}` has the PBW monomials with trailing
//! `h`-letters as a spanning set of representatives: in a basis adapted to
//! `g = q ⊕ h` (the `q` vectors first), every monomial is congruent to a
//! pure `q`-monomial obtained by evaluating trailing `h`-letters at `-λ`.
//!
//! [`QuotientContext`] packages the adapted basis together with the
//! reduction map, the symmetrization `β_q` of `S(q)` onto the chosen
//! representatives, its inverse, and the transported associative product on
//! `S(q)`.  The `h`-invariants of this product algebra are computed by
//! exact linear algebra in each degree.  [`change_of_supplement`] compares
//! two models built over different complements of the same pair `(h, λ)`.

use std::sync::Mutex;

use crate::coeff::{FieldCoeff, Rat};
use crate::error::{Error, Result};
use crate::lie::{CharacterFunctional, LieAlgebra, Subalgebra, Subspace};
use crate::linalg::{self, Matrix};
use crate::pbw::{adjoint, Pbw, SymPoly, Symmetrizer};
use crate::poly::ParamPoly;
use crate::ratfunc::RatFunc;

/// All data needed to reduce `U(g)` modulo the ideal of a character
/// `λ: h → k` along a chosen complement `q`.
///
/// The adapted algebra stores the structure constants in the basis
/// `(q_1, …, q_nq, h_1, …, h_nh)`; polynomial arguments to the `S(q)`-side
/// operations use the first `nq` variables.
pub struct QuotientContext<C: FieldCoeff = Rat> {
    original: LieAlgebra<C>,
    algebra: LieAlgebra<C>,
    sub: Subspace<C>,
    supplement: Subspace<C>,
    values: Vec<C>,
    to_adapted: Matrix<C>,
    from_adapted: Matrix<C>,
    nq: usize,
    nh: usize,
    beta: Mutex<Symmetrizer<C>>,
}

impl<C: FieldCoeff> std::fmt::Debug for QuotientContext<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientContext")
            .field("nq", &self.nq)
            .field("nh", &self.nh)
            .field("values", &self.values)
            .finish_non_exhaustive()
    }
}

impl<C: FieldCoeff> QuotientContext<C> {
    /// Builds the context from raw character values on the subalgebra basis.
    ///
    /// Fails with [`Error::NotComplement`] when `supplement ⊕ sub ≠ g`, and
    /// with [`Error::CharacterNotVanishing`] when the functional does not
    /// kill `[sub, sub]` (the ideal is two-sided under `ad h` only then).
    pub fn new(
        algebra: &LieAlgebra<C>,
        sub: &Subalgebra<C>,
        values: Vec<C>,
        supplement: &Subspace<C>,
    ) -> Result<Self> {
        let n = algebra.dim();
        let nh = sub.space().dim();
        let nq = supplement.dim();
        if values.len() != nh {
            return Err(Error::Dimension(format!(
                "{} character values for a subalgebra of dimension {nh}",
                values.len()
            )));
        }
        if nq + nh != n {
            return Err(Error::NotComplement);
        }
        let mut rows = supplement.basis().to_vec();
        rows.extend_from_slice(sub.basis());
        let (adapted, to_adapted) = algebra.rebase(&rows).map_err(|_| Error::NotComplement)?;
        let from_adapted = to_adapted
            .inverse()
            .expect("basis change matrices are invertible");
        for i in 0..nh {
            for j in (i + 1)..nh {
                let b = adapted.bracket_basis(nq + i, nq + j);
                if b[..nq].iter().any(|c| !c.is_zero()) {
                    return Err(Error::NotSubalgebra(i, j));
                }
                let mut s = C::zero();
                for (k, lam) in values.iter().enumerate() {
                    s = s.add(&lam.mul(&b[nq + k]));
                }
                if !s.is_zero() {
                    return Err(Error::CharacterNotVanishing {
                        i,
                        j,
                        value: format!("{s}"),
                    });
                }
            }
        }
        Ok(QuotientContext {
            original: algebra.clone(),
            algebra: adapted,
            sub: sub.space().clone(),
            supplement: supplement.clone(),
            values,
            to_adapted,
            from_adapted,
            nq,
            nh,
            beta: Mutex::new(Symmetrizer::new()),
        })
    }

    /// Builds the context from a validated character functional.
    pub fn for_character(
        algebra: &LieAlgebra<C>,
        chi: &CharacterFunctional<C>,
        supplement: &Subspace<C>,
    ) -> Result<Self> {
        Self::new(algebra, chi.h(), chi.values().to_vec(), supplement)
    }

    /// The algebra rebased to `(q, h)`-adapted coordinates.
    pub fn algebra(&self) -> &LieAlgebra<C> {
        &self.algebra
    }

    /// The algebra in its original coordinates.
    pub fn original(&self) -> &LieAlgebra<C> {
        &self.original
    }

    pub fn nq(&self) -> usize {
        self.nq
    }

    pub fn nh(&self) -> usize {
        self.nh
    }

    /// Character values on the subalgebra basis vectors.
    pub fn values(&self) -> &[C] {
        &self.values
    }

    pub fn sub_space(&self) -> &Subspace<C> {
        &self.sub
    }

    pub fn supplement(&self) -> &Subspace<C> {
        &self.supplement
    }

    pub fn to_adapted(&self) -> &Matrix<C> {
        &self.to_adapted
    }

    pub fn from_adapted(&self) -> &Matrix<C> {
        &self.from_adapted
    }

    /// Coordinates of an ambient vector in the adapted basis.
    pub fn to_adapted_coords(&self, v: &[C]) -> Vec<C> {
        self.to_adapted.mul_vec(v)
    }

    /// Ambient coordinates of an adapted-basis coordinate vector.
    pub fn from_adapted_coords(&self, v: &[C]) -> Vec<C> {
        self.from_adapted.mul_vec(v)
    }

    /// Lower-case display names for the `q`-side polynomial variables,
    /// parenthesised when a supplement vector is a genuine combination.
    pub fn q_var_names(&self) -> Vec<String> {
        self.algebra.names()[..self.nq]
            .iter()
            .map(|s| {
                let lower = s.to_lowercase();
                if lower.contains(' ') && !lower.starts_with('(') {
                    format!("({lower})")
                } else {
                    lower
                }
            })
            .collect()
    }

    /// Coordinates of each basis vector of `space` on the supplement, after
    /// projecting along the subalgebra.
    pub fn projection_rows(&self, space: &Subspace<C>) -> Vec<Vec<C>> {
        space
            .basis()
            .iter()
            .map(|v| self.to_adapted_coords(v)[..self.nq].to_vec())
            .collect()
    }

    /// Canonical representative of `u` modulo the character ideal.
    ///
    /// Every PBW monomial in the adapted order factors as a `q`-word times a
    /// trailing `h`-word; each trailing letter `H` satisfies
    /// `u'·H ≡ -λ(H)·u'` modulo the left ideal `⟨H + λ(H)·1⟩`, so the
    /// `h`-exponents evaluate to a scalar right to left.
    pub fn reduce(&self, u: &Pbw<C>) -> Pbw<C> {
        let n = self.algebra.dim();
        let mut out = Pbw::zero(n);
        for (e, c) in u.terms() {
            let mut coeff = c.clone();
            for i in 0..self.nh {
                let neg = self.values[i].neg();
                for _ in 0..e[self.nq + i] {
                    coeff = coeff.mul(&neg);
                }
            }
            let mut e2 = e.clone();
            for i in 0..self.nh {
                e2[self.nq + i] = 0;
            }
            out.add_term(e2, coeff);
        }
        out
    }

    /// Symmetrization of a polynomial in all `n` adapted variables.
    pub fn beta_full(&self, p: &SymPoly<C>) -> Pbw<C> {
        assert_eq!(p.num_vars(), self.algebra.dim());
        self.beta.lock().unwrap().beta_poly(&self.algebra, p)
    }

    fn pad(&self, p: &SymPoly<C>) -> SymPoly<C> {
        assert_eq!(p.num_vars(), self.nq, "expected a q-side polynomial");
        let n = self.algebra.dim();
        SymPoly::from_terms(
            n,
            p.terms().iter().map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(n, 0);
                (e2, c.clone())
            }),
        )
    }

    /// Reduced symmetrization `β_q = reduce ∘ β` of a `q`-side polynomial.
    ///
    /// This is a linear isomorphism of `S(q)` onto the span of the reduced
    /// monomials, unitriangular for the total-degree filtration.
    pub fn beta_q(&self, p: &SymPoly<C>) -> Pbw<C> {
        self.reduce(&self.beta_full(&self.pad(p)))
    }

    /// Reads a reduced element back as a polynomial in the `q` variables.
    pub fn to_q_poly(&self, u: &Pbw<C>) -> Result<SymPoly<C>> {
        let mut out = SymPoly::zero(self.nq);
        for (e, c) in u.terms() {
            if e[self.nq..].iter().any(|&k| k > 0) {
                return Err(Error::NonReduced);
            }
            out.add_term(e[..self.nq].to_vec(), c.clone());
        }
        Ok(out)
    }

    /// Inverse of [`Self::beta_q`] on reduced elements, by back-substitution
    /// from the top total degree down.
    pub fn beta_q_inv(&self, u: &Pbw<C>) -> Result<SymPoly<C>> {
        if u.terms().keys().any(|e| e[self.nq..].iter().any(|&k| k > 0)) {
            return Err(Error::NonReduced);
        }
        let mut rem = u.clone();
        let mut out = SymPoly::zero(self.nq);
        while !rem.is_zero() {
            let (e, c) = rem
                .terms()
                .iter()
                .max_by_key(|(e, _)| e.iter().sum::<u32>())
                .map(|(e, c)| (e.clone(), c.clone()))
                .expect("nonzero element has a leading term");
            let mono = SymPoly::monomial(e[..self.nq].to_vec(), c);
            // β_q(x^e) = X^e + lower total degree, so this kills the
            // leading term and the loop terminates.
            rem = rem.sub(&self.beta_q(&mono));
            out = out.add(&mono);
        }
        Ok(out)
    }

    /// The associative product transported to `S(q)`:
    /// `a ⋆ b = β_q⁻¹(reduce(β_q(a)·β_q(b)))`.
    pub fn product(&self, a: &SymPoly<C>, b: &SymPoly<C>) -> Result<SymPoly<C>> {
        let u = self.beta_q(a).mul(&self.beta_q(b), &self.algebra);
        self.beta_q_inv(&self.reduce(&u))
    }

    /// Action of the `j`-th subalgebra basis vector on the reduced model.
    pub fn sub_action(&self, j: usize, p: &SymPoly<C>) -> Result<SymPoly<C>> {
        assert!(j < self.nh);
        let mut dir = vec![C::zero(); self.algebra.dim()];
        dir[self.nq + j] = C::one();
        let acted = adjoint(&self.algebra, &dir, &self.beta_q(p));
        self.beta_q_inv(&self.reduce(&acted))
    }

    /// Whether `ad H` maps (a representative of) `p` into the character
    /// ideal for every `H` in the subalgebra.  The ideal is `ad h`-stable,
    /// so the condition does not depend on the representative.
    pub fn is_invariant(&self, p: &SymPoly<C>) -> bool {
        let u = self.beta_q(p);
        (0..self.nh).all(|j| {
            let mut dir = vec![C::zero(); self.algebra.dim()];
            dir[self.nq + j] = C::one();
            self.reduce(&adjoint(&self.algebra, &dir, &u)).is_zero()
        })
    }

    /// Basis of the subalgebra-invariant polynomials of total degree at most
    /// `max_degree`, in reduced row echelon form over the monomials ordered
    /// by degree and then lexicographically.
    pub fn invariants(&self, max_degree: usize) -> Vec<SymPoly<C>> {
        let monos = monomials_up_to(self.nq, max_degree);
        let mut rows: std::collections::BTreeMap<(usize, Vec<u32>), Vec<C>> =
            std::collections::BTreeMap::new();
        for (col, e) in monos.iter().enumerate() {
            let u = self.beta_q(&SymPoly::monomial(e.clone(), C::one()));
            for j in 0..self.nh {
                let mut dir = vec![C::zero(); self.algebra.dim()];
                dir[self.nq + j] = C::one();
                let image = self.reduce(&adjoint(&self.algebra, &dir, &u));
                for (f, c) in image.terms() {
                    let row = rows
                        .entry((j, f.clone()))
                        .or_insert_with(|| vec![C::zero(); monos.len()]);
                    row[col] = c.clone();
                }
            }
        }
        let null = if rows.is_empty() {
            Matrix::identity(monos.len()).rows_vec()
        } else {
            Matrix::from_rows(rows.into_values().collect()).nullspace()
        };
        linalg::span_rref(&null)
            .into_iter()
            .map(|v| {
                SymPoly::from_terms(
                    self.nq,
                    monos.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
                )
            })
            .collect()
    }
}

/// Rewrites a polynomial over the `from` supplement as a polynomial over the
/// `to` supplement of the same pair `(h, λ)`:
/// `M(p) = β_{q₂}⁻¹(reduce₂(β_{q₁}(p)))`, realised by substituting the
/// adapted coordinates of the `q₁` basis vectors and re-reducing.  `M` is a
/// degree-filtration-preserving linear isomorphism intertwining the two
/// transported products.
pub fn change_of_supplement<C: FieldCoeff>(
    from: &QuotientContext<C>,
    to: &QuotientContext<C>,
    p: &SymPoly<C>,
) -> Result<SymPoly<C>> {
    if from.algebra.dim() != to.algebra.dim() || from.nh != to.nh {
        return Err(Error::Unsupported(
            "supplement change needs contexts over the same algebra".to_string(),
        ));
    }
    if !from.sub.same_span(&to.sub) {
        return Err(Error::Unsupported(
            "supplement change needs the same subalgebra".to_string(),
        ));
    }
    for (i, v) in from.sub.basis().iter().enumerate() {
        let coords = to
            .sub
            .coordinates_of(v)
            .expect("same span admits coordinates");
        let mut s = C::zero();
        for (c, lam) in coords.iter().zip(&to.values) {
            s = s.add(&c.mul(lam));
        }
        if s != from.values[i] {
            return Err(Error::Unsupported(
                "supplement change needs the same character".to_string(),
            ));
        }
    }
    assert_eq!(p.num_vars(), from.nq, "expected a q-side polynomial");
    let rows: Vec<Vec<C>> = from
        .supplement
        .basis()
        .iter()
        .map(|v| to.to_adapted_coords(v))
        .collect();
    let substituted = p.substitute_linear(&rows);
    let reduced = to.reduce(&to.beta_full(&substituted));
    to.beta_q_inv(&reduced)
}

/// Exponent vectors of the monomials in `n` variables of total degree at
/// most `d`, ordered by degree and then lexicographically.
pub fn monomials_up_to(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn fill(idx: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == cur.len() {
            cur[idx] = remaining;
            out.push(cur.clone());
            cur[idx] = 0;
            return;
        }
        for e in 0..=remaining {
            cur[idx] = e;
            fill(idx + 1, remaining - e, cur, out);
            cur[idx] = 0;
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    for deg in 0..=d as u32 {
        let mut cur = vec![0u32; n];
        fill(0, deg, &mut cur, &mut out);
    }
    out
}

/// Builds the one-parameter family context at `t·λ` over the rational
/// function field.
pub fn family_context(
    algebra: &LieAlgebra<Rat>,
    chi: &CharacterFunctional<Rat>,
    supplement: &Subspace<Rat>,
) -> Result<QuotientContext<RatFunc>> {
    let lifted = algebra.lift::<RatFunc>();
    let chi_t = chi.lift_scaled(&lifted, &RatFunc::t())?;
    QuotientContext::for_character(&lifted, &chi_t, &supplement.lift())
}

/// Invariants of the `t·λ` family with coefficients cleared to primitive
/// polynomials in `t`.
pub fn invariants_family(
    ctx: &QuotientContext<RatFunc>,
    max_degree: usize,
) -> Vec<SymPoly<ParamPoly>> {
    ctx.invariants(max_degree)
        .iter()
        .map(clear_poly_denominators)
        .collect()
}

/// Clears rational-function denominators coefficient-wise, leaving a
/// primitive polynomial-coefficient element spanning the same line.
pub fn clear_poly_denominators(p: &SymPoly<RatFunc>) -> SymPoly<ParamPoly> {
    let (exps, coeffs): (Vec<_>, Vec<_>) =
        p.terms().iter().map(|(e, c)| (e.clone(), c.clone())).unzip();
    let cleared = linalg::clear_denominators(&coeffs);
    SymPoly::from_terms(p.num_vars(), exps.into_iter().zip(cleared))
}

/// Evaluates a family element at a parameter value, dropping vanishing
/// terms.
pub fn specialize_family(p: &SymPoly<ParamPoly>, t0: &Rat) -> SymPoly<Rat> {
    p.map_coeffs(|c| c.eval(t0))
}
