//! Ordered monomials in the universal enveloping algebra.
//!
//! Elements of U(g) are stored in the Poincaré–Birkhoff–Witt basis: every
//! word in the generators is rewritten ("straightened") into a combination
//! of monomials `X_0^{e_0} · X_1^{e_1} · … · X_{n-1}^{e_{n-1}}` whose letters
//! appear in ascending basis order.  The rewriting uses the defining relation
//! `X_i X_j = X_j X_i + [X_i, X_j]` on adjacent out-of-order pairs; each swap
//! strictly reduces the inversion count and each bracket correction shortens
//! the word, so the process terminates.
//!
//! The module also provides the symmetrization map β : S(g) → U(g), computed
//! by the first-letter recursion `β(x^α) = (1/|α|) Σ_i α_i X_i β(x^{α-δ_i})`
//! with a cache keyed on exponent vectors, and [`SymPoly`], a plain
//! commutative polynomial on the underlying vector space (used both for the
//! domain of β and for polynomial data such as invariants).

use std::collections::BTreeMap;

use crate::coeff::{rat, rat_int, Coeff, Rat};
use crate::lie::LieAlgebra;

/// An element of U(g) written in the PBW basis.
///
/// Keys are exponent vectors indexed by basis index: the key `e` stands for
/// the ordered product `X_0^{e[0]} X_1^{e[1]} …`.  Zero coefficients are
/// never stored, so the zero element has an empty term map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pbw<C: Coeff = Rat> {
    n: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> Pbw<C> {
    pub fn zero(n: usize) -> Self {
        Pbw {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, C::one())
    }

    pub fn scalar(n: usize, c: C) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    /// The generator `X_i` as an element of U(g).
    pub fn generator(n: usize, i: usize) -> Self {
        assert!(i < n, "generator index out of range");
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Self::zero(n);
        p.add_term(e, C::one());
        p
    }

    /// A first-degree element with the given coordinates on the basis.
    pub fn linear(coords: &[C]) -> Self {
        let n = coords.len();
        let mut p = Self::zero(n);
        for (i, c) in coords.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector has wrong length");
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    /// Largest total degree among the stored monomials (0 for the zero element).
    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Adds `c · X^e`, keeping the no-zero-coefficients invariant.
    pub fn add_term(&mut self, e: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.neg()))
            .collect();
        Pbw { n: self.n, terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.clone(), k.mul(c)))
            .collect();
        Pbw { n: self.n, terms }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&C::from_rat(r))
    }

    /// Product in U(g): concatenates each pair of ordered words and
    /// straightens the result against the bracket table of `alg`.
    pub fn mul(&self, other: &Self, alg: &LieAlgebra<C>) -> Self {
        assert_eq!(self.n, other.n);
        assert_eq!(self.n, alg.dim());
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            let wa = word_of(ea);
            for (eb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend(word_of(eb));
                straighten_into(alg, w, ca.mul(cb), &mut out);
            }
        }
        out
    }

    pub fn pow(&self, k: u32, alg: &LieAlgebra<C>) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = out.mul(self, alg);
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Pbw<D> {
        let mut out = Pbw::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Renders the element with the given generator names, highest total
    /// degree first.
    pub fn display_with(&self, names: &[String]) -> String {
        format_terms(names, &self.terms)
    }
}

/// Expands an exponent vector into the ascending word it abbreviates.
fn word_of(e: &[u32]) -> Vec<usize> {
    let mut w = Vec::with_capacity(e.iter().sum::<u32>() as usize);
    for (i, &k) in e.iter().enumerate() {
        for _ in 0..k {
            w.push(i);
        }
    }
    w
}

fn exp_of(n: usize, word: &[usize]) -> Vec<u32> {
    let mut e = vec![0; n];
    for &i in word {
        e[i] += 1;
    }
    e
}

/// Straightens the (possibly unordered) word into `out` with the given
/// scalar multiplier.
fn straighten_into<C: Coeff>(alg: &LieAlgebra<C>, word: Vec<usize>, coeff: C, out: &mut Pbw<C>) {
    if coeff.is_zero() {
        return;
    }
    let n = alg.dim();
    let mut stack = vec![(word, coeff)];
    while let Some((w, c)) = stack.pop() {
        let inversion = w.windows(2).position(|p| p[0] > p[1]);
        match inversion {
            None => out.add_term(exp_of(n, &w), c),
            Some(k) => {
                // X_i X_j = X_j X_i + [X_i, X_j] with i = w[k] > j = w[k+1].
                for (m, b) in alg.bracket_basis(w[k], w[k + 1]).iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let mut shorter = Vec::with_capacity(w.len() - 1);
                    shorter.extend_from_slice(&w[..k]);
                    shorter.push(m);
                    shorter.extend_from_slice(&w[k + 2..]);
                    stack.push((shorter, c.mul(b)));
                }
                let mut swapped = w;
                swapped.swap(k, k + 1);
                stack.push((swapped, c));
            }
        }
    }
}

/// The adjoint action of an algebra element on U(g), extended from the
/// bracket as a derivation.
pub fn adjoint<C: Coeff>(alg: &LieAlgebra<C>, h: &[C], p: &Pbw<C>) -> Pbw<C> {
    let n = alg.dim();
    assert_eq!(h.len(), n);
    assert_eq!(p.num_vars(), n);
    let bh = brackets_with(alg, h);
    let mut out = Pbw::zero(n);
    for (e, c) in &p.terms {
        let w = word_of(e);
        for pos in 0..w.len() {
            for (m, b) in bh[w[pos]].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut w2 = w.clone();
                w2[pos] = m;
                straighten_into(alg, w2, c.mul(b), &mut out);
            }
        }
    }
    out
}

/// Re-expresses a PBW element in another basis of the same Lie algebra.
///
/// `images[i]` holds the coordinates of source generator `i` on the target
/// basis.  Each source monomial is expanded as the ordered product of its
/// letters, every letter replaced by the corresponding linear element, and
/// the product straightened against the target bracket table.
pub fn transport<C: Coeff>(p: &Pbw<C>, images: &[Vec<C>], target: &LieAlgebra<C>) -> Pbw<C> {
    let n = target.dim();
    assert_eq!(images.len(), p.num_vars());
    let linear: Vec<Pbw<C>> = images.iter().map(|row| Pbw::linear(row)).collect();
    let mut out = Pbw::zero(n);
    for (e, c) in &p.terms {
        let mut prod = Pbw::one(n);
        for letter in word_of(e) {
            prod = prod.mul(&linear[letter], target);
        }
        out = out.add(&prod.scale(c));
    }
    out
}

/// `[h, X_j]` for every basis index `j`.
fn brackets_with<C: Coeff>(alg: &LieAlgebra<C>, h: &[C]) -> Vec<Vec<C>> {
    let n = alg.dim();
    (0..n)
        .map(|j| {
            let mut unit = vec![C::zero(); n];
            unit[j] = C::one();
            alg.bracket(h, &unit)
        })
        .collect()
}

/// Symmetrization map β : S(g) → U(g) with a cache keyed on exponent
/// vectors.
///
/// The cache makes repeated symmetrization of overlapping monomials (as in
/// basis-wide invariant searches) cheap: β(x^α) is computed once per α and
/// reused by every larger monomial that recurses through it.
#[derive(Debug, Default)]
pub struct Symmetrizer<C: Coeff = Rat> {
    cache: BTreeMap<Vec<u32>, Pbw<C>>,
}

impl<C: Coeff> Symmetrizer<C> {
    pub fn new() -> Self {
        Symmetrizer {
            cache: BTreeMap::new(),
        }
    }

    /// β of a single monomial `x^α`.
    pub fn beta(&mut self, alg: &LieAlgebra<C>, alpha: &[u32]) -> Pbw<C> {
        let n = alg.dim();
        assert_eq!(alpha.len(), n);
        if let Some(hit) = self.cache.get(alpha) {
            return hit.clone();
        }
        let total: u32 = alpha.iter().sum();
        let result = if total == 0 {
            Pbw::one(n)
        } else {
            // β(x^α) = (1/|α|) Σ_i α_i X_i β(x^{α-δ_i})
            let mut acc = Pbw::zero(n);
            for i in 0..n {
                if alpha[i] == 0 {
                    continue;
                }
                let mut sub = alpha.to_vec();
                sub[i] -= 1;
                let tail = self.beta(alg, &sub);
                let term = Pbw::generator(n, i).mul(&tail, alg);
                acc = acc.add(&term.scale_rat(&rat(alpha[i] as i64, total as i64)));
            }
            acc
        };
        self.cache.insert(alpha.to_vec(), result.clone());
        result
    }

    /// β extended linearly to polynomials.
    pub fn beta_poly(&mut self, alg: &LieAlgebra<C>, p: &SymPoly<C>) -> Pbw<C> {
        let mut out = Pbw::zero(alg.dim());
        for (e, c) in p.terms() {
            out = out.add(&self.beta(alg, e).scale(c));
        }
        out
    }
}

/// One-shot symmetrization of a monomial (no cache reuse).
pub fn symmetrize<C: Coeff>(alg: &LieAlgebra<C>, alpha: &[u32]) -> Pbw<C> {
    Symmetrizer::new().beta(alg, alpha)
}

/// The adjoint action of an algebra element on S(g): the derivation with
/// `x_j ↦ [h, x_j]` on linear polynomials.  β intertwines this action with
/// [`adjoint`] on U(g).
pub fn sym_adjoint<C: Coeff>(alg: &LieAlgebra<C>, h: &[C], p: &SymPoly<C>) -> SymPoly<C> {
    let n = alg.dim();
    assert_eq!(h.len(), n);
    assert_eq!(p.num_vars(), n);
    let bh = brackets_with(alg, h);
    let mut out = SymPoly::zero(n);
    for (e, c) in p.terms() {
        for i in 0..n {
            if e[i] == 0 {
                continue;
            }
            for (m, b) in bh[i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] -= 1;
                e2[m] += 1;
                out.add_term(e2, c.mul(b).mul_rat(&rat_int(e[i] as i64)));
            }
        }
    }
    out
}

/// A commutative polynomial in `n` variables with coefficients in `C`.
///
/// Keys are exponent vectors; zero coefficients are never stored.  Variable
/// names are not part of the value — rendering takes a name slice, so the
/// same polynomial can be shown in symmetric-algebra or operator notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly<C: Coeff = Rat> {
    n: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> SymPoly<C> {
    pub fn zero(n: usize) -> Self {
        SymPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index out of range");
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(e: Vec<u32>, c: C) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(e, c);
        p
    }

    /// A linear polynomial with the given coordinates on the variables.
    pub fn linear(coords: &[C]) -> Self {
        let n = coords.len();
        let mut p = Self::zero(n);
        for (i, c) in coords.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector has wrong length");
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn coeff_of(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.neg()))
            .collect();
        SymPoly { n: self.n, terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.clone(), k.mul(c)))
            .collect();
        SymPoly { n: self.n, terms }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&C::from_rat(r))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.n);
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.mul_rat(&rat_int(e[i] as i64)));
        }
        out
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.n);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&point[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`.  All images must share a
    /// common variable count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[SymPoly<C>]) -> Self {
        assert_eq!(images.len(), self.n);
        let m = images.first().map_or(0, SymPoly::num_vars);
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let mut term = Self::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&images[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitutes the linear form `Σ_j rows[i][j] y_j` for variable `i`.
    pub fn substitute_linear(&self, rows: &[Vec<C>]) -> Self {
        let images: Vec<SymPoly<C>> = rows.iter().map(|r| SymPoly::linear(r)).collect();
        self.substitute(&images)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SymPoly<D> {
        let mut out = SymPoly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        format_terms(names, &self.terms)
    }
}

/// Renders a term map with the given variable names, sorted by total degree
/// (descending) and then by exponent vector (lexicographic descending).
fn format_terms<C: Coeff>(names: &[String], terms: &BTreeMap<Vec<u32>, C>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut entries: Vec<(&Vec<u32>, &C)> = terms.iter().collect();
    entries.sort_by(|(ea, _), (eb, _)| {
        let da: u32 = ea.iter().sum();
        let db: u32 = eb.iter().sum();
        db.cmp(&da).then_with(|| eb.cmp(ea))
    });
    let mut out = String::new();
    for (idx, (e, c)) in entries.into_iter().enumerate() {
        let mono = format_monomial(names, e);
        let piece = if mono.is_empty() {
            if c.display_is_composite() {
                format!("({c})")
            } else {
                format!("{c}")
            }
        } else if c.is_one() {
            mono
        } else if *c == C::one().neg() {
            format!("-{mono}")
        } else if c.display_is_composite() {
            format!("({c})*{mono}")
        } else {
            format!("{c}*{mono}")
        };
        if idx == 0 {
            out.push_str(&piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    out
}

fn format_monomial(names: &[String], e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}
