//! Exact linear algebra over a [`Field`]: coordinates of homogeneous
//! polynomials, reduced row-echelon subspaces with generation certificates,
//! and affine solution sets.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::freealg::{FreeAlgebra, FreePoly, MultiDegree, Word};
use crate::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("polynomial is not homogeneous of multidegree {0}")]
    NotHomogeneous(MultiDegree),
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial belongs to a different algebra than the component basis")]
    AlgebraMismatch,
}

/// All words of one multidegree, in deglex order, with a reverse index.
#[derive(Debug, Clone)]
pub struct ComponentBasis {
    alg: Arc<FreeAlgebra>,
    degree: MultiDegree,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl ComponentBasis {
    pub fn new(alg: &Arc<FreeAlgebra>, degree: &MultiDegree) -> Self {
        let words = Word::all_of_degree(degree);
        let index = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        ComponentBasis {
            alg: alg.clone(),
            degree: degree.clone(),
            words,
            index,
        }
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn to_vector(&self, p: &FreePoly) -> Result<Vector, LinalgError> {
        if **p.algebra() != *self.alg {
            return Err(LinalgError::AlgebraMismatch);
        }
        let mut v = vec![self.field().zero(); self.words.len()];
        for (w, c) in p.terms() {
            let i = self
                .position(w)
                .ok_or_else(|| LinalgError::NotHomogeneous(self.degree.clone()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &[Scalar]) -> FreePoly {
        FreePoly::from_terms(&self.alg, self.words.iter().cloned().zip(v.iter().cloned()))
    }
}

/// Free-function form of [`ComponentBasis::to_vector`].
pub fn to_vector(p: &FreePoly, cb: &ComponentBasis) -> Result<Vector, LinalgError> {
    cb.to_vector(p)
}

fn axpy(target: &mut [Scalar], coeff: &Scalar, source: &[Scalar]) {
    // target -= coeff * source
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= &(coeff * s);
        }
    }
}

fn pad(v: &mut Vec<Scalar>, len: usize, field: Field) {
    if v.len() < len {
        v.resize(len, field.zero());
    }
}

/// Outcome of a membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Coefficients over the accepted generators reproducing the vector.
    Inside(Vector),
    /// The nonzero remainder after full reduction.
    Outside(Vector),
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside(_))
    }
}

/// A subspace in reduced row-echelon form.
///
/// Each accepted generator (an inserted vector that enlarged the span) is kept,
/// and every echelon row carries its coordinates over those generators.
#[derive(Debug, Clone)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    transforms: Vec<Vector>,
    generators: Vec<Vector>,
}

impl Subspace {
    pub fn new(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            transforms: Vec::new(),
            generators: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The inserted vectors that enlarged the span, in insertion order.
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Residual and certificate of `v` against the current rows.
    fn reduce(&self, v: &[Scalar]) -> (Vector, Vector) {
        let mut residual = v.to_vec();
        let mut cert = vec![self.field.zero(); self.generators.len()];
        for ((row, &p), t) in self.rows.iter().zip(&self.pivots).zip(&self.transforms) {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            axpy(&mut residual, &c, row);
            for (acc, ti) in cert.iter_mut().zip(t) {
                if !ti.is_zero() {
                    *acc += &(&c * ti);
                }
            }
        }
        (residual, cert)
    }

    /// Inserts `v`, returning whether it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        let (mut residual, cert) = self.reduce(v);
        let Some(pivot) = residual.iter().position(|c| !c.is_zero()) else {
            return Ok(false);
        };
        let gen_index = self.generators.len();
        self.generators.push(v.to_vec());
        let glen = gen_index + 1;
        // transform of the residual: e_new − cert
        let mut t: Vector = cert.iter().map(|c| -c).collect();
        t.push(self.field.one());

        let inv = residual[pivot].inv().expect("pivot is nonzero");
        for c in residual.iter_mut() {
            *c = &*c * &inv;
        }
        for c in t.iter_mut() {
            *c = &*c * &inv;
        }
        for (row, tr) in self.rows.iter_mut().zip(self.transforms.iter_mut()) {
            pad(tr, glen, self.field);
            let c = row[pivot].clone();
            if !c.is_zero() {
                axpy(row, &c, &residual);
                axpy(tr, &c, &t);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, residual);
        self.pivots.insert(at, pivot);
        self.transforms.insert(at, t);
        Ok(true)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        Ok(self.membership(v)?.is_inside())
    }

    pub fn membership(&self, v: &[Scalar]) -> Result<Membership, LinalgError> {
        self.check_len(v)?;
        let (residual, mut cert) = self.reduce(v);
        if residual.iter().all(Scalar::is_zero) {
            pad(&mut cert, self.generators.len(), self.field);
            Ok(Membership::Inside(cert))
        } else {
            Ok(Membership::Outside(residual))
        }
    }

    /// Σ cᵢ·generatorᵢ.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        let mut out = vec![self.field.zero(); self.ambient];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if !c.is_zero() {
                axpy(&mut out, &-c, g);
            }
        }
        out
    }
}

/// `span_insert` as a value-returning function.
pub fn span_insert(mut s: Subspace, v: &[Scalar]) -> Result<(Subspace, bool), LinalgError> {
    let was_new = s.insert(v)?;
    Ok((s, was_new))
}

pub fn span_dim(s: &Subspace) -> usize {
    s.dim()
}

pub fn membership(s: &Subspace, v: &[Scalar]) -> Result<Membership, LinalgError> {
    s.membership(v)
}

/// Reduced row-echelon form of a dense row-major matrix; returns the pivot columns.
pub fn rref(rows: &mut [Vector]) -> Vec<usize> {
    let Some(ncols) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for c in rows[r].iter_mut() {
            *c = &*c * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let c = row[col].clone();
                axpy(row, &c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// The solution set `{c : A c = b}` of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    /// `None` when the system is infeasible.
    pub particular: Option<Vector>,
    pub homogeneous: Vec<Vector>,
}

impl AffineSolution {
    pub fn is_feasible(&self) -> bool {
        self.particular.is_some()
    }
}

/// Solves `Σ_j c_j · column_j = rhs` for columns given as vectors of a common length.
pub fn solve_columns(field: Field, columns: &[Vector], rhs: &[Scalar]) -> AffineSolution {
    let n = columns.len();
    let m = rhs.len();
    let mut aug: Vec<Vector> = (0..m)
        .map(|i| {
            let mut row: Vector = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = if m == 0 { Vec::new() } else { rref(&mut aug) };
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let homogeneous = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                if p < n {
                    v[p] = -&aug[r][f];
                }
            }
            v
        })
        .collect();
    if pivots.contains(&n) {
        return AffineSolution {
            particular: None,
            homogeneous,
        };
    }
    let mut particular = vec![field.zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = aug[r][n].clone();
    }
    AffineSolution {
        particular: Some(particular),
        homogeneous,
    }
}

/// The full affine family of coefficient vectors `c` with `Σ cᵢ·targetᵢ = rhs`.
pub fn solve_combination(
    targets: &[FreePoly],
    rhs: &FreePoly,
    cb: &ComponentBasis,
) -> Result<AffineSolution, LinalgError> {
    let columns = targets
        .iter()
        .map(|t| cb.to_vector(t))
        .collect::<Result<Vec<_>, _>>()?;
    let b = cb.to_vector(rhs)?;
    Ok(solve_columns(cb.field(), &columns, &b))
}

/// Basis of `{x : M x = 0}` for a row-major matrix `M` with `ncols` columns.
pub fn nullspace(field: Field, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let columns: Vec<Vector> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let zero = vec![field.zero(); rows.len()];
    solve_columns(field, &columns, &zero).homogeneous
}
