//! Jordan operations inside F⟨X⟩ and spanning sets for graded components of
//! the free special Jordan algebra SJ[X].
//!
//! A [`JordanElement`] pairs a polynomial value with the expression tree that
//! produced it, so spans computed here can hand back readable certificates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::freealg::{FreeAlgebra, FreePoly, GeneratorSet, MultiDegree, Word};
use crate::linalg::{ComponentBasis, LinalgError, Subspace};
use crate::scalar::{Field, Scalar};

/// Default bound on the total degree of any requested component.
pub const DEFAULT_DEGREE_BOUND: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JordanError {
    #[error("multidegree {degree} has total degree above the bound {bound}")]
    DegreeBound { degree: MultiDegree, bound: u32 },
    #[error("multidegree {0} does not match the generator count")]
    Arity(MultiDegree),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Operation alphabet used when closing a span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Circle products only; the Jordan algebra over a field with ½.
    Linear,
    /// Squares, circle products, U and linearized U.
    Quadratic,
}

impl Mode {
    /// Quadratic in characteristic 2, linear otherwise.
    pub fn default_for(field: Field) -> Mode {
        if field.characteristic() == 2 {
            Mode::Quadratic
        } else {
            Mode::Linear
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Linear => "linear",
            Mode::Quadratic => "quadratic",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Mode::Linear),
            "quadratic" => Ok(Mode::Quadratic),
            other => Err(format!(
                "unknown mode `{other}` (expected linear or quadratic)"
            )),
        }
    }
}

/// Expression tree of a Jordan element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Generator(u8),
    Unit,
    Square(Arc<Recipe>),
    Circ(Arc<Recipe>, Arc<Recipe>),
    /// `operand · U_op = op·operand·op`.
    U {
        op: Arc<Recipe>,
        operand: Arc<Recipe>,
    },
    /// `b·operand·c + c·operand·b`.
    ULin {
        b: Arc<Recipe>,
        c: Arc<Recipe>,
        operand: Arc<Recipe>,
    },
    Scale(Scalar, Arc<Recipe>),
    Sum(Vec<Arc<Recipe>>),
}

impl Recipe {
    pub fn evaluate(&self, alg: &Arc<FreeAlgebra>) -> FreePoly {
        match self {
            Recipe::Generator(i) => FreePoly::generator(alg, *i),
            Recipe::Unit => FreePoly::one(alg),
            Recipe::Square(a) => {
                let a = a.evaluate(alg);
                &a * &a
            }
            Recipe::Circ(a, b) => circ(&a.evaluate(alg), &b.evaluate(alg)),
            Recipe::U { op, operand } => u_apply(&op.evaluate(alg), &operand.evaluate(alg)),
            Recipe::ULin { b, c, operand } => {
                u_lin(&b.evaluate(alg), &c.evaluate(alg), &operand.evaluate(alg))
            }
            Recipe::Scale(s, a) => a.evaluate(alg).scale(s),
            Recipe::Sum(parts) => parts
                .iter()
                .fold(FreePoly::zero(alg), |acc, p| &acc + &p.evaluate(alg)),
        }
    }

    /// Text form in the expression grammar.
    pub fn format(&self, gens: &GeneratorSet) -> String {
        match self {
            Recipe::Generator(i) => gens.name(*i).to_string(),
            Recipe::Unit => "one".to_string(),
            Recipe::Square(a) => format!("sq({})", a.format(gens)),
            Recipe::Circ(a, b) => format!("circ({}, {})", a.format(gens), b.format(gens)),
            Recipe::U { op, operand } => {
                format!("U({}; {})", op.format(gens), operand.format(gens))
            }
            Recipe::ULin { b, c, operand } => format!(
                "Ulin({}, {}; {})",
                b.format(gens),
                c.format(gens),
                operand.format(gens)
            ),
            Recipe::Scale(s, a) => {
                let inner = match a.as_ref() {
                    Recipe::Sum(_) => format!("({})", a.format(gens)),
                    _ => a.format(gens),
                };
                format!("{s}*{inner}")
            }
            Recipe::Sum(parts) => {
                if parts.is_empty() {
                    return "0".to_string();
                }
                parts
                    .iter()
                    .map(|p| p.format(gens))
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        }
    }
}

/// A polynomial in the special Jordan subalgebra together with its recipe.
#[derive(Debug, Clone)]
pub struct JordanElement {
    value: FreePoly,
    recipe: Arc<Recipe>,
}

impl PartialEq for JordanElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl JordanElement {
    pub fn generator(alg: &Arc<FreeAlgebra>, index: u8) -> Self {
        JordanElement {
            value: FreePoly::generator(alg, index),
            recipe: Arc::new(Recipe::Generator(index)),
        }
    }

    pub fn var(alg: &Arc<FreeAlgebra>, name: &str) -> Result<Self, crate::freealg::FreeAlgError> {
        Ok(Self::generator(alg, alg.gens.index_of(name)?))
    }

    pub fn unit(alg: &Arc<FreeAlgebra>) -> Self {
        JordanElement {
            value: FreePoly::one(alg),
            recipe: Arc::new(Recipe::Unit),
        }
    }

    pub fn from_recipe(alg: &Arc<FreeAlgebra>, recipe: Recipe) -> Self {
        JordanElement {
            value: recipe.evaluate(alg),
            recipe: Arc::new(recipe),
        }
    }

    pub fn square(a: &Self) -> Self {
        JordanElement {
            value: &a.value * &a.value,
            recipe: Arc::new(Recipe::Square(a.recipe.clone())),
        }
    }

    pub fn circ(a: &Self, b: &Self) -> Self {
        JordanElement {
            value: circ(&a.value, &b.value),
            recipe: Arc::new(Recipe::Circ(a.recipe.clone(), b.recipe.clone())),
        }
    }

    pub fn u(op: &Self, operand: &Self) -> Self {
        JordanElement {
            value: u_apply(&op.value, &operand.value),
            recipe: Arc::new(Recipe::U {
                op: op.recipe.clone(),
                operand: operand.recipe.clone(),
            }),
        }
    }

    pub fn ulin(b: &Self, c: &Self, operand: &Self) -> Self {
        JordanElement {
            value: u_lin(&b.value, &c.value, &operand.value),
            recipe: Arc::new(Recipe::ULin {
                b: b.recipe.clone(),
                c: c.recipe.clone(),
                operand: operand.recipe.clone(),
            }),
        }
    }

    pub fn scale(s: &Scalar, a: &Self) -> Self {
        JordanElement {
            value: a.value.scale(s),
            recipe: Arc::new(Recipe::Scale(s.clone(), a.recipe.clone())),
        }
    }

    pub fn sum(alg: &Arc<FreeAlgebra>, parts: &[Self]) -> Self {
        JordanElement {
            value: parts
                .iter()
                .fold(FreePoly::zero(alg), |acc, p| &acc + &p.value),
            recipe: Arc::new(Recipe::Sum(
                parts.iter().map(|p| p.recipe.clone()).collect(),
            )),
        }
    }

    pub fn value(&self) -> &FreePoly {
        &self.value
    }

    pub fn recipe(&self) -> &Arc<Recipe> {
        &self.recipe
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        self.value.algebra()
    }

    /// Recipe text in the expression grammar.
    pub fn format(&self) -> String {
        self.recipe.format(&self.value.algebra().gens)
    }

    /// Re-evaluates the recipe and compares with the stored value.
    pub fn replays(&self) -> bool {
        self.recipe.evaluate(self.value.algebra()) == self.value
    }
}

/// `p∘q = pq + qp`.
pub fn circ(p: &FreePoly, q: &FreePoly) -> FreePoly {
    &(p * q) + &(q * p)
}

/// `a·U_b = b·a·b`.
pub fn u_apply(b: &FreePoly, a: &FreePoly) -> FreePoly {
    &(b * a) * b
}

/// `b·a·c + c·a·b`.
pub fn u_lin(b: &FreePoly, c: &FreePoly, a: &FreePoly) -> FreePoly {
    &(&(b * a) * c) + &(&(c * a) * b)
}

/// `c·U_a·U_b − c·U_b·U_a = b(aca)b − a(bcb)a`.
pub fn commutator_image(a: &FreePoly, b: &FreePoly, c: &FreePoly) -> FreePoly {
    &u_apply(b, &u_apply(a, c)) - &u_apply(a, &u_apply(b, c))
}

/// `z[U_x,U_y] − {(x∘y)zxy} + zU_{x∘y}` in F⟨x,y,z⟩; zero when the identity holds.
pub fn verify_lemma1(field: Field) -> FreePoly {
    let alg = FreeAlgebra::new(
        GeneratorSet::new(&["x", "y", "z"]).expect("static generator names"),
        field,
    );
    let [x, y, z] = [0u8, 1, 2].map(|i| FreePoly::generator(&alg, i));
    let xoy = circ(&x, &y);
    let sym = (&(&(&xoy * &z) * &x) * &y).symmetrize();
    &(&commutator_image(&x, &y, &z) - &sym) + &u_apply(&xoy, &z)
}

/// Dimension of the span of `{w + w*}` over all words `w` of multidegree `d`.
pub fn symmetric_component_dim(gens: &GeneratorSet, d: &MultiDegree, field: Field) -> usize {
    let alg = FreeAlgebra::new(gens.clone(), field);
    let cb = ComponentBasis::new(&alg, d);
    let mut span = Subspace::new(field, cb.dim());
    for w in cb.words() {
        let v = cb
            .to_vector(&FreePoly::word(&alg, w.clone()).symmetrize())
            .expect("symmetrized word stays in its component");
        span.insert(&v).expect("ambient dimension matches");
    }
    span.dim()
}

/// One graded piece of a closure: accepted elements and their span.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub basis: ComponentBasis,
    pub span: Subspace,
    pub elements: Vec<JordanElement>,
}

impl GradedPiece {
    pub fn new(alg: &Arc<FreeAlgebra>, degree: &MultiDegree) -> Self {
        let basis = ComponentBasis::new(alg, degree);
        let span = Subspace::new(alg.field, basis.dim());
        GradedPiece {
            basis,
            span,
            elements: Vec::new(),
        }
    }

    /// Inserts `e` if it enlarges the span.
    pub fn offer(&mut self, e: JordanElement) -> Result<bool, LinalgError> {
        let v = self.basis.to_vector(e.value())?;
        let new = self.span.insert(&v)?;
        if new {
            self.elements.push(e);
        }
        Ok(new)
    }

    pub fn contains(&self, p: &FreePoly) -> Result<bool, LinalgError> {
        self.span.contains(&self.basis.to_vector(p)?)
    }
}

/// Check a requested multidegree against the algebra and the degree bound.
pub fn check_degree(alg: &FreeAlgebra, d: &MultiDegree, bound: u32) -> Result<(), JordanError> {
    if d.counts().len() != alg.ngens() {
        return Err(JordanError::Arity(d.clone()));
    }
    if d.total() > bound {
        return Err(JordanError::DegreeBound {
            degree: d.clone(),
            bound,
        });
    }
    Ok(())
}

/// Every graded component of SJ[X] (or its unital hull) below a target multidegree.
#[derive(Debug, Clone)]
pub struct JordanSpan {
    alg: Arc<FreeAlgebra>,
    target: MultiDegree,
    mode: Mode,
    unital: bool,
    pieces: BTreeMap<MultiDegree, GradedPiece>,
    rounds: usize,
}

type Slot = (MultiDegree, usize);

impl JordanSpan {
    pub fn build(
        alg: &Arc<FreeAlgebra>,
        target: &MultiDegree,
        mode: Mode,
        unital: bool,
        degree_bound: u32,
    ) -> Result<Self, JordanError> {
        check_degree(alg, target, degree_bound)?;
        let n = alg.ngens();
        let mut pieces = BTreeMap::new();
        for e in target.below() {
            if e.is_zero() && !unital {
                continue;
            }
            pieces.insert(e.clone(), GradedPiece::new(alg, &e));
        }
        let mut span = JordanSpan {
            alg: alg.clone(),
            target: target.clone(),
            mode,
            unital,
            pieces,
            rounds: 0,
        };
        if unital {
            span.offer(JordanElement::unit(alg))?;
        }
        for i in 0..n {
            let e = MultiDegree::unit(n, i);
            if e.le(target) {
                span.offer(JordanElement::generator(alg, i as u8))?;
            }
        }

        let mut fresh: BTreeMap<MultiDegree, usize> =
            span.pieces.keys().map(|k| (k.clone(), 0)).collect();
        loop {
            let snapshot = span.snapshot();
            let candidates = span.candidates(&snapshot, Some(&fresh));
            fresh = snapshot.iter().map(|(k, v)| (k.clone(), v.len())).collect();
            let mut added = 0;
            for c in candidates {
                if span.offer(c)? {
                    added += 1;
                }
            }
            if added == 0 {
                break;
            }
            span.rounds += 1;
        }
        Ok(span)
    }

    fn snapshot(&self) -> BTreeMap<MultiDegree, Vec<JordanElement>> {
        self.pieces
            .iter()
            .map(|(k, p)| (k.clone(), p.elements.clone()))
            .collect()
    }

    fn offer(&mut self, e: JordanElement) -> Result<bool, JordanError> {
        let d = e
            .value()
            .multidegree()
            .unwrap_or_else(|| MultiDegree::zero(self.alg.ngens()));
        match self.pieces.get_mut(&d) {
            Some(piece) => Ok(piece.offer(e)?),
            None => Ok(false),
        }
    }

    /// All closure products from `snap`; with `fresh`, only products that use at
    /// least one element at or beyond the given per-degree index.
    fn candidates(
        &self,
        snap: &BTreeMap<MultiDegree, Vec<JordanElement>>,
        fresh: Option<&BTreeMap<MultiDegree, usize>>,
    ) -> Vec<JordanElement> {
        let slots: Vec<Slot> = snap
            .iter()
            .flat_map(|(k, v)| (0..v.len()).map(move |i| (k.clone(), i)))
            .collect();
        let is_fresh = |s: &Slot| fresh.is_none_or(|f| s.1 >= f[&s.0]);
        let get = |s: &Slot| &snap[&s.0][s.1];
        let fits = |d: &MultiDegree| d.le(&self.target);
        let mut out = Vec::new();

        for (i, a) in slots.iter().enumerate() {
            for b in &slots[i..] {
                if (is_fresh(a) || is_fresh(b)) && fits(&a.0.add(&b.0)) {
                    out.push(JordanElement::circ(get(a), get(b)));
                }
            }
        }
        if self.mode == Mode::Linear {
            return out;
        }
        for a in &slots {
            if is_fresh(a) && fits(&a.0.scale(2)) {
                out.push(JordanElement::square(get(a)));
            }
        }
        for op in &slots {
            let twice = op.0.scale(2);
            if !fits(&twice) {
                continue;
            }
            for arg in &slots {
                if (is_fresh(op) || is_fresh(arg)) && fits(&twice.add(&arg.0)) {
                    out.push(JordanElement::u(get(op), get(arg)));
                }
            }
        }
        for (i, b) in slots.iter().enumerate() {
            for c in &slots[i..] {
                let bc = b.0.add(&c.0);
                if !fits(&bc) {
                    continue;
                }
                for arg in &slots {
                    if (is_fresh(b) || is_fresh(c) || is_fresh(arg)) && fits(&bc.add(&arg.0)) {
                        out.push(JordanElement::ulin(get(b), get(c), get(arg)));
                    }
                }
            }
        }
        out
    }

    /// Runs one full (non-incremental) closure round and reports whether every
    /// product already lies in the span.
    pub fn verify_fixed_point(&self) -> Result<bool, JordanError> {
        let snap = self.snapshot();
        for c in self.candidates(&snap, None) {
            let d = c
                .value()
                .multidegree()
                .unwrap_or_else(|| MultiDegree::zero(self.alg.ngens()));
            if let Some(piece) = self.pieces.get(&d) {
                if !piece.contains(c.value())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.alg
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn target(&self) -> &MultiDegree {
        &self.target
    }

    /// Number of rounds that enlarged some component.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn piece(&self, d: &MultiDegree) -> Option<&GradedPiece> {
        self.pieces.get(d)
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&MultiDegree, &GradedPiece)> {
        self.pieces.iter()
    }

    pub fn elements(&self, d: &MultiDegree) -> &[JordanElement] {
        self.pieces
            .get(d)
            .map(|p| p.elements.as_slice())
            .unwrap_or(&[])
    }
}

/// The spanning set of one multidegree component of SJ[X] or its unital hull.
#[derive(Debug, Clone)]
pub struct SpanningSet {
    pub degree: MultiDegree,
    pub mode: Mode,
    pub unital: bool,
    pub elements: Vec<JordanElement>,
    pub basis: ComponentBasis,
    pub span: Subspace,
    pub rounds: usize,
}

impl SpanningSet {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }
}

pub fn jordan_spanning_set(
    gens: &GeneratorSet,
    field: Field,
    d: &MultiDegree,
    mode: Mode,
    unital: bool,
    degree_bound: u32,
) -> Result<SpanningSet, JordanError> {
    let alg = FreeAlgebra::new(gens.clone(), field);
    let span = JordanSpan::build(&alg, d, mode, unital, degree_bound)?;
    let piece = match span.piece(d) {
        Some(p) => p.clone(),
        None => GradedPiece::new(&alg, d),
    };
    Ok(SpanningSet {
        degree: d.clone(),
        mode,
        unital,
        elements: piece.elements,
        basis: piece.basis,
        span: piece.span,
        rounds: span.rounds(),
    })
}

/// Number of words of multidegree `d` that equal their own reversal.
pub fn palindrome_count(d: &MultiDegree) -> usize {
    Word::all_of_degree(d)
        .iter()
        .filter(|w| w.is_palindrome())
        .count()
}
