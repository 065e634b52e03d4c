//! Graded components of principal ideals generated by a homogeneous element:
//! the Jordan outer ideal inside SJ[X] and the two-sided associative ideal
//! inside F⟨X⟩, plus the membership comparison between the two.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::freealg::{FreeAlgebra, FreePoly, MultiDegree, Word};
use crate::jordan::{
    check_degree, circ, GradedPiece, JordanElement, JordanError, JordanSpan, Mode,
};
use crate::linalg::{ComponentBasis, LinalgError, Membership, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideal generator must be a nonzero homogeneous element")]
    NotHomogeneous,
    #[error("generator multidegree {generator} is not below the target {target}")]
    TargetTooSmall {
        generator: MultiDegree,
        target: MultiDegree,
    },
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A linear combination of described generators, printable in the expression grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub terms: Vec<(Scalar, String)>,
}

impl Certificate {
    fn from_coeffs(coeffs: &[Scalar], labels: &[String]) -> Self {
        Certificate {
            terms: coeffs
                .iter()
                .zip(labels)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, l)| (c.clone(), l.clone()))
                .collect(),
        }
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(c, l)| {
                if c.is_one() {
                    l.clone()
                } else if l.contains(' ') || l.starts_with('-') {
                    format!("{c}*({l})")
                } else {
                    format!("{c}*{l}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Membership verdict with the evidence for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipOutcome {
    Inside(Certificate),
    /// Remainder of the probe after reduction against the echelon basis.
    Outside(FreePoly),
}

impl MembershipOutcome {
    pub fn is_inside(&self) -> bool {
        matches!(self, MembershipOutcome::Inside(_))
    }

    /// Certificate or residual as expression text.
    pub fn evidence(&self) -> String {
        match self {
            MembershipOutcome::Inside(c) => c.format(),
            MembershipOutcome::Outside(r) => r.format(),
        }
    }
}

fn outcome(
    basis: &ComponentBasis,
    span: &Subspace,
    labels: &[String],
    p: &FreePoly,
) -> Result<MembershipOutcome, LinalgError> {
    Ok(match span.membership(&basis.to_vector(p)?)? {
        Membership::Inside(c) => MembershipOutcome::Inside(Certificate::from_coeffs(&c, labels)),
        Membership::Outside(r) => MembershipOutcome::Outside(basis.from_vector(&r)),
    })
}

/// Graded components of the outer ideal generated by `f`, for every
/// multidegree between `deg f` and a target.
#[derive(Debug, Clone)]
pub struct OuterIdeal {
    generator: JordanElement,
    target: MultiDegree,
    mode: Mode,
    hull: JordanSpan,
    pieces: BTreeMap<MultiDegree, GradedPiece>,
    rounds: usize,
}

type Slot = (MultiDegree, usize);

fn slots(map: &BTreeMap<MultiDegree, Vec<JordanElement>>) -> Vec<Slot> {
    map.iter()
        .flat_map(|(k, v)| (0..v.len()).map(move |i| (k.clone(), i)))
        .collect()
}

impl OuterIdeal {
    /// In quadratic mode the seed is `F f + U_f Ĵ` and the closure uses `circ`,
    /// `U` and linearized `U` by elements of the unital hull; in linear mode the
    /// seed is `f` and the closure uses `circ` only.
    pub fn build(
        f: &JordanElement,
        target: &MultiDegree,
        mode: Mode,
        degree_bound: u32,
    ) -> Result<Self, IdealError> {
        let alg = f.algebra().clone();
        check_degree(&alg, target, degree_bound)?;
        let fdeg = f.value().multidegree().ok_or(IdealError::NotHomogeneous)?;
        let complement = target
            .checked_sub(&fdeg)
            .ok_or_else(|| IdealError::TargetTooSmall {
                generator: fdeg.clone(),
                target: target.clone(),
            })?;
        let hull = JordanSpan::build(&alg, &complement, mode, true, degree_bound)?;
        let pieces = complement
            .below()
            .into_iter()
            .map(|e| {
                let d = fdeg.add(&e);
                (d.clone(), GradedPiece::new(&alg, &d))
            })
            .collect();
        let mut ideal = OuterIdeal {
            generator: f.clone(),
            target: target.clone(),
            mode,
            hull,
            pieces,
            rounds: 0,
        };

        ideal.offer(f.clone())?;
        if mode == Mode::Quadratic {
            let seeds: Vec<JordanElement> = ideal
                .hull
                .pieces()
                .filter(|(e, _)| fdeg.scale(2).add(e).le(target))
                .flat_map(|(_, p)| p.elements.iter().map(|u| JordanElement::u(f, u)))
                .collect();
            for s in seeds {
                ideal.offer(s)?;
            }
        }

        let mut fresh: BTreeMap<MultiDegree, usize> =
            ideal.pieces.keys().map(|k| (k.clone(), 0)).collect();
        loop {
            let snap = ideal.snapshot();
            let candidates = ideal.candidates(&snap, Some(&fresh));
            fresh = snap.iter().map(|(k, v)| (k.clone(), v.len())).collect();
            let mut added = 0;
            for c in candidates {
                if ideal.offer(c)? {
                    added += 1;
                }
            }
            if added == 0 {
                break;
            }
            ideal.rounds += 1;
        }
        Ok(ideal)
    }

    fn snapshot(&self) -> BTreeMap<MultiDegree, Vec<JordanElement>> {
        self.pieces
            .iter()
            .map(|(k, p)| (k.clone(), p.elements.clone()))
            .collect()
    }

    fn offer(&mut self, e: JordanElement) -> Result<bool, IdealError> {
        let Some(d) = e.value().multidegree() else {
            return Ok(false);
        };
        match self.pieces.get_mut(&d) {
            Some(piece) => Ok(piece.offer(e)?),
            None => Ok(false),
        }
    }

    fn candidates(
        &self,
        snap: &BTreeMap<MultiDegree, Vec<JordanElement>>,
        fresh: Option<&BTreeMap<MultiDegree, usize>>,
    ) -> Vec<JordanElement> {
        let hull: BTreeMap<MultiDegree, Vec<JordanElement>> = self
            .hull
            .pieces()
            .map(|(k, p)| (k.clone(), p.elements.clone()))
            .collect();
        let hull_slots = slots(&hull);
        let fits = |d: &MultiDegree| d.le(&self.target);
        let mut out = Vec::new();
        for v in slots(snap) {
            if fresh.is_some_and(|f| v.1 < f[&v.0]) {
                continue;
            }
            let elem = &snap[&v.0][v.1];
            for a in &hull_slots {
                if !a.0.is_zero() && fits(&a.0.add(&v.0)) {
                    out.push(JordanElement::circ(&hull[&a.0][a.1], elem));
                }
            }
            if self.mode == Mode::Linear {
                continue;
            }
            for a in &hull_slots {
                if !a.0.is_zero() && fits(&a.0.scale(2).add(&v.0)) {
                    out.push(JordanElement::u(&hull[&a.0][a.1], elem));
                }
            }
            for (i, a) in hull_slots.iter().enumerate() {
                for b in &hull_slots[i..] {
                    let ab = a.0.add(&b.0);
                    if !ab.is_zero() && fits(&ab.add(&v.0)) {
                        out.push(JordanElement::ulin(
                            &hull[&a.0][a.1],
                            &hull[&b.0][b.1],
                            elem,
                        ));
                    }
                }
            }
        }
        out
    }

    /// Re-applies every admissible multiplication to every basis element.
    pub fn verify_fixed_point(&self) -> Result<bool, IdealError> {
        let snap = self.snapshot();
        for c in self.candidates(&snap, None) {
            let Some(d) = c.value().multidegree() else {
                continue;
            };
            if let Some(piece) = self.pieces.get(&d) {
                if !piece.contains(c.value())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn generator(&self) -> &JordanElement {
        &self.generator
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn hull(&self) -> &JordanSpan {
        &self.hull
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&MultiDegree, &GradedPiece)> {
        self.pieces.iter()
    }

    pub fn component(&self, d: &MultiDegree) -> Option<OuterIdealComponent> {
        self.pieces.get(d).map(|p| OuterIdealComponent {
            generator: self.generator.clone(),
            degree: d.clone(),
            piece: p.clone(),
            rounds_to_fixpoint: self.rounds,
        })
    }
}

/// One multidegree slice of an [`OuterIdeal`].
#[derive(Debug, Clone)]
pub struct OuterIdealComponent {
    pub generator: JordanElement,
    pub degree: MultiDegree,
    pub piece: GradedPiece,
    pub rounds_to_fixpoint: usize,
}

impl OuterIdealComponent {
    pub fn dim(&self) -> usize {
        self.piece.span.dim()
    }

    pub fn certificates(&self) -> &[JordanElement] {
        &self.piece.elements
    }

    pub fn membership(&self, p: &FreePoly) -> Result<MembershipOutcome, IdealError> {
        let labels: Vec<String> = self.piece.elements.iter().map(|e| e.format()).collect();
        Ok(outcome(&self.piece.basis, &self.piece.span, &labels, p)?)
    }
}

pub fn outer_ideal_component(
    f: &JordanElement,
    d: &MultiDegree,
    mode: Mode,
    degree_bound: u32,
) -> Result<OuterIdealComponent, IdealError> {
    let ideal = OuterIdeal::build(f, d, mode, degree_bound)?;
    Ok(ideal
        .component(d)
        .expect("target component is always built"))
}

/// The multidegree-`d` slice of the two-sided ideal of F⟨X⟩ generated by `f`.
#[derive(Debug, Clone)]
pub struct AssocIdealComponent {
    pub generator: FreePoly,
    pub degree: MultiDegree,
    pub basis: ComponentBasis,
    pub span: Subspace,
    /// `(left, right)` word pairs of the accepted products `left·f·right`.
    pub factors: Vec<(Word, Word)>,
}

impl AssocIdealComponent {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    fn labels(&self) -> Vec<String> {
        let gens = &self.generator.algebra().gens;
        let f = format!("({})", self.generator.format());
        self.factors
            .iter()
            .map(|(l, r)| {
                let mut parts = Vec::new();
                if !l.is_empty() {
                    parts.push(l.format(gens));
                }
                parts.push(f.clone());
                if !r.is_empty() {
                    parts.push(r.format(gens));
                }
                parts.join("*")
            })
            .collect()
    }

    pub fn membership(&self, p: &FreePoly) -> Result<MembershipOutcome, IdealError> {
        Ok(outcome(&self.basis, &self.span, &self.labels(), p)?)
    }
}

pub fn assoc_ideal_component(
    f: &FreePoly,
    d: &MultiDegree,
) -> Result<AssocIdealComponent, IdealError> {
    let alg: &Arc<FreeAlgebra> = f.algebra();
    let fdeg = f.multidegree().ok_or(IdealError::NotHomogeneous)?;
    let complement = d
        .checked_sub(&fdeg)
        .ok_or_else(|| IdealError::TargetTooSmall {
            generator: fdeg.clone(),
            target: d.clone(),
        })?;
    let basis = ComponentBasis::new(alg, d);
    let mut span = Subspace::new(alg.field, basis.dim());
    let mut factors = Vec::new();
    for left_deg in complement.below() {
        let right_deg = complement
            .checked_sub(&left_deg)
            .expect("left part is below");
        let rights = Word::all_of_degree(&right_deg);
        for l in Word::all_of_degree(&left_deg) {
            let lp = FreePoly::word(alg, l.clone());
            for r in &rights {
                let prod = &(&lp * f) * &FreePoly::word(alg, r.clone());
                if span.insert(&basis.to_vector(&prod)?)? {
                    factors.push((l.clone(), r.clone()));
                }
            }
        }
    }
    Ok(AssocIdealComponent {
        generator: f.clone(),
        degree: d.clone(),
        basis,
        span,
        factors,
    })
}

/// Membership of one probe in both the associative and the Jordan ideal.
#[derive(Debug, Clone)]
pub struct CohnGapReport {
    pub assoc: MembershipOutcome,
    pub outer: MembershipOutcome,
    pub probe_symmetric: bool,
}

impl CohnGapReport {
    pub fn g_in_assoc(&self) -> bool {
        self.assoc.is_inside()
    }

    pub fn g_in_outer(&self) -> bool {
        self.outer.is_inside()
    }

    /// `g ∈ Î` but `g ∉ I`.
    pub fn gap(&self) -> bool {
        self.g_in_assoc() && !self.g_in_outer()
    }
}

/// Both ideal components at one multidegree, built once and probed repeatedly.
#[derive(Debug, Clone)]
pub struct IdealPair {
    pub outer: OuterIdealComponent,
    pub assoc: AssocIdealComponent,
}

impl IdealPair {
    pub fn build(
        f: &JordanElement,
        d: &MultiDegree,
        mode: Mode,
        degree_bound: u32,
    ) -> Result<Self, IdealError> {
        Ok(IdealPair {
            outer: outer_ideal_component(f, d, mode, degree_bound)?,
            assoc: assoc_ideal_component(f.value(), d)?,
        })
    }

    pub fn probe(&self, g: &FreePoly) -> Result<CohnGapReport, IdealError> {
        Ok(CohnGapReport {
            assoc: self.assoc.membership(g)?,
            outer: self.outer.membership(g)?,
            probe_symmetric: g.is_symmetric(),
        })
    }
}

pub fn cohn_gap_witness(
    f: &JordanElement,
    g: &FreePoly,
    d: &MultiDegree,
    mode: Mode,
    degree_bound: u32,
) -> Result<CohnGapReport, IdealError> {
    IdealPair::build(f, d, mode, degree_bound)?.probe(g)
}

/// The seven-term ansatz for `{(x∘y)zxy}` at multidegree (2,2,1), with
/// `t = x∘y` substituted into the symmetric multilinear elements in x, y, z, t.
#[derive(Debug, Clone)]
pub struct Ansatz {
    pub degree: MultiDegree,
    /// Parseable expression for each target.
    pub labels: Vec<String>,
    pub targets: Vec<FreePoly>,
    pub rhs_label: String,
    pub rhs: FreePoly,
}

pub fn witness_ansatz(alg: &Arc<FreeAlgebra>) -> Ansatz {
    let [x, y, z] = [0u8, 1, 2].map(|i| FreePoly::generator(alg, i));
    let t = circ(&x, &y);
    let t_text = "(x*y + y*x)";
    let sym4 =
        |a: &FreePoly, b: &FreePoly, c: &FreePoly, d: &FreePoly| (&(&(a * b) * c) * d).symmetrize();
    let targets = vec![
        sym4(&x, &z, &y, &t),
        sym4(&x, &z, &t, &y),
        sym4(&t, &z, &x, &y),
        sym4(&t, &z, &y, &x),
        sym4(&y, &z, &t, &x),
        sym4(&y, &z, &x, &t),
        &(&t * &z) * &t,
    ];
    let labels = [
        "sym(x*z*y*T)",
        "sym(x*z*T*y)",
        "sym(T*z*x*y)",
        "sym(T*z*y*x)",
        "sym(y*z*T*x)",
        "sym(y*z*x*T)",
        "T*z*T",
    ]
    .iter()
    .map(|s| s.replace('T', t_text))
    .collect();
    Ansatz {
        degree: MultiDegree(vec![2, 2, 1]),
        labels,
        rhs: targets[2].clone(),
        rhs_label: format!("sym({t_text}*z*x*y)"),
        targets,
    }
}
