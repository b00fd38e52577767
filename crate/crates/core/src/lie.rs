//! Finite-dimensional Lie algebras with exact structure constants, plus the
//! subspace / subalgebra / linear-form vocabulary built on top of them:
//! validation (antisymmetry, Jacobi, nilpotency), central series, complete
//! ideal flags, basis changes, complements, and character functionals.

use crate::coeff::{Coeff, FieldCoeff, Rat};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use std::fmt;

/// Lie algebra given by a basis and the full structure-constant table
/// `brackets[i][j] = coordinates of [x_i, x_j]`.
///
/// The table is stored as given; [`LieAlgebra::validate`] reports whether it
/// is actually antisymmetric, Jacobi, and nilpotent, so defective input can
/// be diagnosed rather than rejected blindly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra<C: Coeff = Rat> {
    names: Vec<String>,
    brackets: Vec<Vec<Vec<C>>>,
}

/// Outcome of [`LieAlgebra::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub dim: usize,
    pub antisymmetric: bool,
    pub jacobi: bool,
    /// First basis triple (i, j, k) violating the Jacobi identity, if any.
    pub jacobi_failure: Option<(usize, usize, usize)>,
    pub nilpotent: bool,
    /// Largest `k` with `g^k != 0` in the lower central series
    /// (`g^1 = g`, `g^{k+1} = [g, g^k]`). `None` when not nilpotent.
    pub nilpotency_class: Option<usize>,
}

impl<C: Coeff> LieAlgebra<C> {
    /// Build from a sparse list of brackets `[x_i, x_j] = sum c_k x_k` with
    /// `i < j`; the antisymmetric counterparts are filled in automatically.
    pub fn from_brackets(
        names: Vec<String>,
        entries: &[(usize, usize, Vec<(usize, C)>)],
    ) -> Result<Self> {
        let dim = names.len();
        let mut brackets = vec![vec![vec![C::zero(); dim]; dim]; dim];
        for (i, j, rhs) in entries {
            if *i >= dim || *j >= dim {
                return Err(Error::Dimension(format!(
                    "bracket index out of range for dimension {dim}"
                )));
            }
            if i == j {
                return Err(Error::Dimension(format!(
                    "bracket [{0},{0}] must vanish",
                    names[*i]
                )));
            }
            for (k, c) in rhs {
                if *k >= dim {
                    return Err(Error::Dimension(format!(
                        "bracket target index out of range for dimension {dim}"
                    )));
                }
                brackets[*i][*j][*k] = brackets[*i][*j][*k].add(c);
                brackets[*j][*i][*k] = brackets[*j][*i][*k].sub(c);
            }
        }
        Ok(LieAlgebra { names, brackets })
    }

    /// Build from a full structure-constant table, as is (no symmetrization).
    pub fn from_table(names: Vec<String>, brackets: Vec<Vec<Vec<C>>>) -> Result<Self> {
        let dim = names.len();
        if brackets.len() != dim
            || brackets
                .iter()
                .any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
        {
            return Err(Error::Dimension(format!(
                "structure-constant table must be {dim}x{dim}x{dim}"
            )));
        }
        Ok(LieAlgebra { names, brackets })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Coordinates of `[x_i, x_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[C] {
        &self.brackets[i][j]
    }

    /// Coordinates of `[v, w]` for arbitrary coordinate vectors.
    pub fn bracket(&self, v: &[C], w: &[C]) -> Vec<C> {
        let dim = self.dim();
        assert_eq!(v.len(), dim);
        assert_eq!(w.len(), dim);
        let mut out = vec![C::zero(); dim];
        for i in 0..dim {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if w[j].is_zero() {
                    continue;
                }
                let scale = v[i].mul(&w[j]);
                for k in 0..dim {
                    let c = &self.brackets[i][j][k];
                    if !c.is_zero() {
                        out[k] = out[k].add(&scale.mul(c));
                    }
                }
            }
        }
        out
    }

    /// Map the structure constants through `f` (e.g. to lift Q-constants
    /// into Q[t] or Q(t)).
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LieAlgebra<D> {
        LieAlgebra {
            names: self.names.clone(),
            brackets: self
                .brackets
                .iter()
                .map(|r| r.iter().map(|v| v.iter().map(&f).collect()).collect())
                .collect(),
        }
    }
}

impl LieAlgebra<Rat> {
    /// Embed the rational structure constants into a larger coefficient ring.
    pub fn lift<D: Coeff>(&self) -> LieAlgebra<D> {
        self.map_coeffs(D::from_rat)
    }
}

impl<C: FieldCoeff> LieAlgebra<C> {
    /// Matrix of `ad y` acting on coordinate columns: column `j` holds
    /// `[y, x_j]`.
    pub fn ad_matrix(&self, y: &[C]) -> Matrix<C> {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for j in 0..dim {
            let mut ej = vec![C::zero(); dim];
            ej[j] = C::one();
            let col = self.bracket(y, &ej);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Traces `tr((ad y)^k)` for `k = 1..=kmax`.
    ///
    /// For a nilpotent algebra every `ad y` is a nilpotent matrix, so all
    /// traces vanish; this certifies that the Duflo density factor
    /// `det(sinh(ad y/2)/(ad y/2))^{1/2}`, whose logarithm is a series in
    /// these traces, is identically 1 in the nilpotent setting.
    pub fn duflo_factor_traces(&self, y: &[C], kmax: usize) -> Vec<C> {
        let ad = self.ad_matrix(y);
        let mut power = ad.clone();
        let mut traces = Vec::with_capacity(kmax);
        for _ in 0..kmax {
            traces.push(power.trace());
            power = power.mul_mat(&ad);
        }
        traces
    }

    pub fn validate(&self) -> ValidationReport {
        let dim = self.dim();
        let mut antisymmetric = true;
        'anti: for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    if self.brackets[i][j][k] != self.brackets[j][i][k].neg() {
                        antisymmetric = false;
                        break 'anti;
                    }
                }
            }
        }
        let mut jacobi_failure = None;
        'jac: for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let e = |a: usize| {
                        let mut v = vec![C::zero(); dim];
                        v[a] = C::one();
                        v
                    };
                    let (ei, ej, ek) = (e(i), e(j), e(k));
                    let t1 = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let t2 = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let t3 = self.bracket(&ek, &self.bracket(&ei, &ej));
                    let ok = (0..dim).all(|m| t1[m].add(&t2[m]).add(&t3[m]).is_zero());
                    if !ok {
                        jacobi_failure = Some((i, j, k));
                        break 'jac;
                    }
                }
            }
        }
        let series = self.lower_central_series();
        let nilpotent = series.last().map_or(true, |s| s.is_empty());
        let nilpotency_class = if nilpotent {
            Some(series.len() - 1)
        } else {
            None
        };
        ValidationReport {
            dim,
            antisymmetric,
            jacobi: jacobi_failure.is_none(),
            jacobi_failure,
            nilpotent,
            nilpotency_class,
        }
    }

    /// Lower central series `[g^1 = g, g^2 = [g,g], ...]` as canonical rref
    /// bases, ending with the first repeated term (zero iff nilpotent).
    pub fn lower_central_series(&self) -> Vec<Vec<Vec<C>>> {
        let dim = self.dim();
        let full: Vec<Vec<C>> = (0..dim)
            .map(|i| {
                let mut v = vec![C::zero(); dim];
                v[i] = C::one();
                v
            })
            .collect();
        let mut series = vec![linalg::span_rref(&full)];
        loop {
            let last = series.last().unwrap();
            let mut next_rows = Vec::new();
            for g in &full {
                for w in last {
                    let b = self.bracket(g, w);
                    if !b.iter().all(C::is_zero) {
                        next_rows.push(b);
                    }
                }
            }
            let next = linalg::span_rref(&next_rows);
            if &next == last {
                break;
            }
            let stop = next.is_empty();
            series.push(next);
            if stop {
                break;
            }
        }
        series
    }

    /// Ascending central series `0 = z_0 < z_1 = center < ...`, ending at `g`
    /// for nilpotent algebras (or at the first repeat otherwise).
    pub fn ascending_central_series(&self) -> Vec<Vec<Vec<C>>> {
        let dim = self.dim();
        let mut series: Vec<Vec<Vec<C>>> = vec![vec![]];
        loop {
            let last = series.last().unwrap();
            // x is in the next term iff [x, e_j] falls into `last` for all j.
            let mut rows: Vec<Vec<C>> = Vec::new();
            for j in 0..dim {
                let mut ej = vec![C::zero(); dim];
                ej[j] = C::one();
                // The map x -> reduce([x, e_j]) is linear; collect its matrix.
                let mut cols = Vec::with_capacity(dim);
                for i in 0..dim {
                    let mut ei = vec![C::zero(); dim];
                    ei[i] = C::one();
                    cols.push(linalg::rref_reduce(last, &self.bracket(&ei, &ej)));
                }
                for coord in 0..dim {
                    rows.push((0..dim).map(|i| cols[i][coord].clone()).collect());
                }
            }
            let next = linalg::span_rref(&Matrix::from_rows(rows).nullspace());
            if &next == last {
                break;
            }
            let stop = next.len() == dim;
            series.push(next);
            if stop {
                break;
            }
        }
        series
    }

    /// Complete flag of ideals `0 = m_0 < m_1 < ... < m_dim = g`, one
    /// dimension at a time. Built by refining the ascending central series:
    /// any subspace wedged between consecutive terms is automatically an
    /// ideal. Fails on non-nilpotent algebras.
    pub fn ideal_flag(&self) -> Result<Vec<Subspace<C>>> {
        let series = self.ascending_central_series();
        if series.last().map_or(true, |s| s.len() != self.dim()) {
            return Err(Error::NotNilpotent);
        }
        let mut flag: Vec<Vec<Vec<C>>> = vec![vec![]];
        for window in series.windows(2) {
            let mut current = flag.last().unwrap().clone();
            for cand in &window[1] {
                if !linalg::span_contains(&linalg::span_rref(&current), cand) {
                    current.push(cand.clone());
                    flag.push(linalg::span_rref(&current));
                    current = flag.last().unwrap().clone();
                }
            }
        }
        Ok(flag
            .into_iter()
            .map(|basis| Subspace { basis })
            .collect())
    }

    /// Whether the span of `s` is an ideal: `[g, s]` contained in `s`.
    pub fn is_ideal(&self, s: &Subspace<C>) -> bool {
        let rref = linalg::span_rref(&s.basis);
        for i in 0..self.dim() {
            let mut ei = vec![C::zero(); self.dim()];
            ei[i] = C::one();
            for w in &s.basis {
                if !linalg::span_contains(&rref, &self.bracket(&ei, w)) {
                    return false;
                }
            }
        }
        true
    }

    /// Re-express the algebra in a new basis. `rows` are the new basis
    /// vectors in the current coordinates; returns the rebased algebra
    /// together with the coordinate-change matrix taking old coordinate
    /// columns to new ones.
    pub fn rebase(&self, rows: &[Vec<C>]) -> Result<(LieAlgebra<C>, Matrix<C>)> {
        let dim = self.dim();
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension(
                "rebase needs a full square basis".to_string(),
            ));
        }
        // Columns of p are the new basis vectors; coords transform by p^{-1}.
        let p = Matrix::from_rows(rows.to_vec()).transpose();
        let to_new = p.inverse().ok_or(Error::Dependent)?;
        let mut brackets = vec![vec![vec![C::zero(); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let b = self.bracket(&rows[i], &rows[j]);
                brackets[i][j] = to_new.mul_vec(&b);
            }
        }
        let names = rows
            .iter()
            .map(|r| format_lincomb(&self.names, r))
            .collect();
        Ok((LieAlgebra { names, brackets }, to_new))
    }
}

/// Subspace of a Lie algebra, stored as an explicit (independent) basis in
/// ambient coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<C: Coeff = Rat> {
    basis: Vec<Vec<C>>,
}

impl<C: FieldCoeff> Subspace<C> {
    /// Requires the vectors to be linearly independent.
    pub fn new(basis: Vec<Vec<C>>) -> Result<Self> {
        if linalg::span_dim(&basis) != basis.len() {
            return Err(Error::Dependent);
        }
        Ok(Subspace { basis })
    }

    /// Span of arbitrary vectors: keeps the canonical rref basis.
    pub fn spanned_by(vectors: &[Vec<C>]) -> Self {
        Subspace {
            basis: linalg::span_rref(vectors),
        }
    }

    /// Span of standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let basis = indices
            .iter()
            .map(|&i| {
                let mut v = vec![C::zero(); ambient];
                v[i] = C::one();
                v
            })
            .collect();
        Subspace { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.first().map_or(0, Vec::len)
    }

    pub fn basis(&self) -> &[Vec<C>] {
        &self.basis
    }

    pub fn rref_basis(&self) -> Vec<Vec<C>> {
        linalg::span_rref(&self.basis)
    }

    pub fn contains(&self, v: &[C]) -> bool {
        linalg::span_contains(&self.rref_basis(), v)
    }

    pub fn same_span(&self, other: &Self) -> bool {
        linalg::spans_equal(&self.basis, &other.basis)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates_of(&self, v: &[C]) -> Option<Vec<C>> {
        let cols = Matrix::from_rows(self.basis.clone()).transpose();
        let x = cols.solve(v)?;
        if cols.mul_vec(&x) == v {
            Some(x)
        } else {
            None
        }
    }
}

impl Subspace<Rat> {
    pub fn lift<D: FieldCoeff>(&self) -> Subspace<D> {
        Subspace {
            basis: self
                .basis
                .iter()
                .map(|r| r.iter().map(D::from_rat).collect())
                .collect(),
        }
    }
}

/// Subspace that is closed under the bracket.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subalgebra<C: Coeff = Rat> {
    space: Subspace<C>,
}

impl<C: FieldCoeff> Subalgebra<C> {
    pub fn new(algebra: &LieAlgebra<C>, space: Subspace<C>) -> Result<Self> {
        let rref = space.rref_basis();
        for i in 0..space.dim() {
            for j in (i + 1)..space.dim() {
                let b = algebra.bracket(&space.basis[i], &space.basis[j]);
                if !linalg::span_contains(&rref, &b) {
                    return Err(Error::NotSubalgebra(i, j));
                }
            }
        }
        Ok(Subalgebra { space })
    }

    pub fn space(&self) -> &Subspace<C> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vec<C>] {
        self.space.basis()
    }
}

impl Subalgebra<Rat> {
    pub fn lift<D: FieldCoeff>(&self) -> Subalgebra<D> {
        Subalgebra {
            space: self.space.lift(),
        }
    }
}

/// Element of the dual space `g^*`, as coordinates against the basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm<C: Coeff = Rat> {
    coords: Vec<C>,
}

impl<C: Coeff> LinearForm<C> {
    pub fn new(coords: Vec<C>) -> Self {
        LinearForm { coords }
    }

    pub fn zero(dim: usize) -> Self {
        LinearForm {
            coords: vec![C::zero(); dim],
        }
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    pub fn eval(&self, v: &[C]) -> C {
        assert_eq!(v.len(), self.coords.len());
        let mut acc = C::zero();
        for (c, x) in self.coords.iter().zip(v) {
            acc = acc.add(&c.mul(x));
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        LinearForm {
            coords: self.coords.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearForm {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LinearForm {
            coords: self.coords.iter().map(C::neg).collect(),
        }
    }
}

impl LinearForm<Rat> {
    pub fn lift<D: Coeff>(&self) -> LinearForm<D> {
        LinearForm {
            coords: self.coords.iter().map(D::from_rat).collect(),
        }
    }
}

/// Linear functional on a subalgebra `h` vanishing on `[h, h]` — the data
/// defining the ideal `U(g){H + lambda(H)}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacterFunctional<C: Coeff = Rat> {
    h: Subalgebra<C>,
    values: Vec<C>,
}

impl<C: FieldCoeff> CharacterFunctional<C> {
    /// `values[i] = lambda(v_i)` on the basis of `h`. Rejects any `lambda`
    /// that fails to vanish on `[h, h]`.
    pub fn new(algebra: &LieAlgebra<C>, h: Subalgebra<C>, values: Vec<C>) -> Result<Self> {
        if values.len() != h.dim() {
            return Err(Error::Dimension(
                "character needs one value per basis vector of h".to_string(),
            ));
        }
        for i in 0..h.dim() {
            for j in (i + 1)..h.dim() {
                let b = algebra.bracket(&h.basis()[i], &h.basis()[j]);
                let coords = h
                    .space()
                    .coordinates_of(&b)
                    .ok_or(Error::NotSubalgebra(i, j))?;
                let mut v = C::zero();
                for (c, lam) in coords.iter().zip(&values) {
                    v = v.add(&c.mul(lam));
                }
                if !v.is_zero() {
                    return Err(Error::CharacterNotVanishing {
                        i,
                        j,
                        value: v.to_string(),
                    });
                }
            }
        }
        Ok(CharacterFunctional { h, values })
    }

    /// Restriction of a form on `g` to the subalgebra `h` (checked).
    pub fn from_form(
        algebra: &LieAlgebra<C>,
        h: Subalgebra<C>,
        form: &LinearForm<C>,
    ) -> Result<Self> {
        let values = h.basis().iter().map(|v| form.eval(v)).collect();
        Self::new(algebra, h, values)
    }

    pub fn h(&self) -> &Subalgebra<C> {
        &self.h
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    /// Value on an arbitrary element of `h`.
    pub fn eval(&self, v: &[C]) -> Option<C> {
        let coords = self.h.space().coordinates_of(v)?;
        let mut acc = C::zero();
        for (c, lam) in coords.iter().zip(&self.values) {
            acc = acc.add(&c.mul(lam));
        }
        Some(acc)
    }
}

impl CharacterFunctional<Rat> {
    pub fn lift_scaled<D: FieldCoeff>(
        &self,
        algebra: &LieAlgebra<D>,
        scale: &D,
    ) -> Result<CharacterFunctional<D>> {
        CharacterFunctional::new(
            algebra,
            self.h.lift(),
            self.values
                .iter()
                .map(|v| D::from_rat(v).mul(scale))
                .collect(),
        )
    }
}

/// Greedy completion of `h` to a direct complement spanned by standard basis
/// vectors: try `preferred` indices first (each must extend the span), then
/// the remaining coordinates in index order.
pub fn complement<C: FieldCoeff>(
    algebra: &LieAlgebra<C>,
    h: &Subspace<C>,
    preferred: Option<&[usize]>,
) -> Result<Subspace<C>> {
    let dim = algebra.dim();
    let mut have = h.basis().to_vec();
    let mut chosen = Vec::new();
    let push = |idx: usize, have: &mut Vec<Vec<C>>, chosen: &mut Vec<usize>| -> bool {
        let mut v = vec![C::zero(); dim];
        v[idx] = C::one();
        if !linalg::span_contains(&linalg::span_rref(have), &v) {
            have.push(v);
            chosen.push(idx);
            true
        } else {
            false
        }
    };
    if let Some(pref) = preferred {
        for &idx in pref {
            if !push(idx, &mut have, &mut chosen) {
                return Err(Error::DependentPreferred(idx));
            }
        }
    }
    for idx in 0..dim {
        if chosen.contains(&idx) {
            continue;
        }
        push(idx, &mut have, &mut chosen);
    }
    if h.dim() + chosen.len() != dim {
        return Err(Error::NotComplement);
    }
    Ok(Subspace::coordinate(dim, &chosen))
}

/// Render a coordinate vector as a readable linear combination of names.
pub fn format_lincomb<C: Coeff>(names: &[String], coords: &[C]) -> String {
    let nonzero: Vec<(usize, &C)> = coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if nonzero.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (pos, (i, c)) in nonzero.iter().enumerate() {
        let minus_one = c.neg().is_one();
        if pos == 0 {
            if minus_one {
                out.push('-');
            } else if !c.is_one() {
                out.push_str(&format!("{c}*"));
            }
        } else if minus_one {
            out.push_str(" - ");
        } else {
            // Render "a - b" when the trailing coefficient is a plain
            // negative rational; otherwise fall back to "+ c*".
            let s = c.to_string();
            if let Some(stripped) = s.strip_prefix('-') {
                out.push_str(" - ");
                if stripped != "1" {
                    out.push_str(&format!("{stripped}*"));
                }
            } else {
                out.push_str(" + ");
                if !c.is_one() {
                    out.push_str(&format!("{s}*"));
                }
            }
        }
        out.push_str(&names[*i]);
    }
    if nonzero.len() > 1 {
        format!("({out})")
    } else {
        out
    }
}

impl<C: Coeff> fmt::Display for LieAlgebra<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} <{}>", self.dim(), self.names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat_int, Rat};

    pub fn heisenberg() -> LieAlgebra<Rat> {
        LieAlgebra::from_brackets(
            vec!["X".into(), "Y".into(), "Z".into()],
            &[(0, 1, vec![(2, rat_int(1))])],
        )
        .unwrap()
    }

    pub fn example5() -> LieAlgebra<Rat> {
        // Basis X U V E Z with [U,V] = E, [X,U] = V, [X,V] = Z.
        LieAlgebra::from_brackets(
            vec!["X".into(), "U".into(), "V".into(), "E".into(), "Z".into()],
            &[
                (1, 2, vec![(3, rat_int(1))]),
                (0, 1, vec![(2, rat_int(1))]),
                (0, 2, vec![(4, rat_int(1))]),
            ],
        )
        .unwrap()
    }

    fn sl2ish() -> LieAlgebra<Rat> {
        // [H,E] = 2E, [H,F] = -2F, [E,F] = H: Jacobi holds, not nilpotent.
        LieAlgebra::from_brackets(
            vec!["H".into(), "E".into(), "F".into()],
            &[
                (0, 1, vec![(1, rat_int(2))]),
                (0, 2, vec![(2, rat_int(-2))]),
                (1, 2, vec![(0, rat_int(1))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_example5() {
        let v = example5().validate();
        assert!(v.antisymmetric && v.jacobi && v.nilpotent);
        assert_eq!(v.nilpotency_class, Some(3));
    }

    #[test]
    fn validate_abelian_and_sl2ish() {
        let ab = LieAlgebra::<Rat>::from_brackets(vec!["a".into(), "b".into()], &[]).unwrap();
        let v = ab.validate();
        assert!(v.jacobi && v.nilpotent);
        assert_eq!(v.nilpotency_class, Some(1));

        let v = sl2ish().validate();
        assert!(v.antisymmetric && v.jacobi);
        assert!(!v.nilpotent);
        assert_eq!(v.nilpotency_class, None);
    }

    #[test]
    fn validate_flags_jacobi_failure() {
        // [a,b] = c, [a,c] = a: the Jacobi sum on (a,b,c) is -c, not zero.
        let bad = LieAlgebra::from_brackets(
            vec!["a".into(), "b".into(), "c".into()],
            &[
                (0, 1, vec![(2, rat_int(1))]),
                (0, 2, vec![(0, rat_int(1))]),
            ],
        )
        .unwrap();
        let v = bad.validate();
        assert!(v.antisymmetric);
        assert_eq!(v.jacobi_failure, Some((0, 1, 2)));
    }

    #[test]
    fn duflo_traces_vanish_on_nilpotent() {
        let l = example5();
        let y = vec![rat_int(2), rat_int(-1), rat_int(3), rat_int(1), rat_int(5)];
        assert!(l
            .duflo_factor_traces(&y, 6)
            .iter()
            .all(|t| t.is_zero()));

        // sl2-like control: ad h has eigenvalues 2, -2, 0, so tr((ad h)²) = 8.
        let s = sl2ish();
        let h = vec![rat_int(1), rat_int(0), rat_int(0)];
        let traces = s.duflo_factor_traces(&h, 2);
        assert_eq!(traces, vec![rat_int(0), rat_int(8)]);
    }

    #[test]
    fn central_series_example5() {
        let l = example5();
        let lower = l.lower_central_series();
        // g > <V,E,Z> > <E,Z> > 0
        assert_eq!(
            lower.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![5, 3, 2, 0]
        );
        let upper = l.ascending_central_series();
        // 0 < <E,Z> < <V,E,Z> < g
        assert_eq!(
            upper.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![0, 2, 3, 5]
        );
    }

    #[test]
    fn ideal_flag_is_complete_and_ideal() {
        for l in [heisenberg(), example5()] {
            let flag = l.ideal_flag().unwrap();
            assert_eq!(flag.len(), l.dim() + 1);
            for (i, m) in flag.iter().enumerate() {
                assert_eq!(m.dim(), i);
                assert!(l.is_ideal(m));
            }
            for w in flag.windows(2) {
                for v in w[0].basis() {
                    assert!(w[1].contains(v));
                }
            }
        }
        assert!(matches!(sl2ish().ideal_flag(), Err(Error::NotNilpotent)));
    }

    #[test]
    fn rebase_preserves_brackets() {
        let l = example5();
        // New basis (W = X - 2U, U, V, E, Z).
        let mut rows: Vec<Vec<Rat>> = (0..5)
            .map(|i| {
                let mut v = vec![rat_int(0); 5];
                v[i] = rat_int(1);
                v
            })
            .collect();
        rows[0][1] = rat_int(-2);
        let (rebased, to_new) = l.rebase(&rows).unwrap();
        // [W, V] in old coords = [X,V] - 2[U,V] = Z - 2E.
        let mut w = vec![rat_int(0); 5];
        w[0] = rat_int(1);
        w[1] = rat_int(-2);
        let mut v = vec![rat_int(0); 5];
        v[2] = rat_int(1);
        let old = l.bracket(&w, &v);
        assert_eq!(rebased.bracket_basis(0, 2), to_new.mul_vec(&old).as_slice());
        assert_eq!(rebased.name(0), "(X - 2*U)");
        let rep = rebased.validate();
        assert!(rep.antisymmetric && rep.jacobi && rep.nilpotent);
    }

    #[test]
    fn subalgebra_closure_check() {
        let l = example5();
        let h = Subspace::coordinate(5, &[0, 3]); // X, E
        assert!(Subalgebra::new(&l, h).is_ok());
        let not_closed = Subspace::coordinate(5, &[0, 1]); // X, U: [X,U] = V
        assert!(matches!(
            Subalgebra::new(&l, not_closed),
            Err(Error::NotSubalgebra(_, _))
        ));
    }

    #[test]
    fn character_must_vanish_on_derived() {
        let l = heisenberg();
        let h = Subalgebra::new(&l, Subspace::coordinate(3, &[0, 1, 2])).unwrap();
        // lambda(Z) = 1 fails because [X,Y] = Z.
        let bad = CharacterFunctional::new(&l, h.clone(), vec![rat_int(0), rat_int(0), rat_int(1)]);
        assert!(matches!(bad, Err(Error::CharacterNotVanishing { .. })));
        let good = CharacterFunctional::new(&l, h, vec![rat_int(2), rat_int(3), rat_int(0)]);
        assert!(good.is_ok());
    }

    #[test]
    fn complement_greedy_and_preferred() {
        let l = example5();
        let h = Subspace::coordinate(5, &[0, 3]); // X, E
        let q = complement(&l, &h, None).unwrap();
        assert_eq!(q.basis(), Subspace::coordinate(5, &[1, 2, 4]).basis()); // U, V, Z
        let q2 = complement(&l, &h, Some(&[4, 2, 1])).unwrap();
        assert_eq!(q2.basis(), Subspace::coordinate(5, &[4, 2, 1]).basis());
        assert!(matches!(
            complement(&l, &h, Some(&[0])),
            Err(Error::DependentPreferred(0))
        ));
    }

    #[test]
    fn coordinates_of_solves_in_subspace_basis() {
        let s = Subspace::new(vec![
            vec![rat_int(1), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(2)],
        ])
        .unwrap();
        let c = s
            .coordinates_of(&[rat_int(3), rat_int(3), rat_int(4)])
            .unwrap();
        assert_eq!(c, vec![rat_int(3), rat_int(2)]);
        assert!(s.coordinates_of(&[rat_int(1), rat_int(0), rat_int(0)]).is_none());
    }

    #[test]
    fn format_lincomb_rendering() {
        let names: Vec<String> = vec!["X".into(), "U".into(), "E".into()];
        assert_eq!(format_lincomb(&names, &[rat_int(1), rat_int(-2), rat_int(0)]), "(X - 2*U)");
        assert_eq!(format_lincomb(&names, &[rat_int(0), rat_int(1), rat_int(0)]), "U");
        assert_eq!(format_lincomb(&names, &[rat_int(-1), rat_int(0), rat_int(1)]), "(-X + E)");
        assert_eq!(format_lincomb(&names, &vec![rat_int(0); 3]), "0");
    }
}
