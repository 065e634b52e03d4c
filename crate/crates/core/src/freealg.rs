//! The free associative algebra F⟨X⟩ on a finite ordered set of generators.
//!
//! Polynomials are sparse maps from [`Word`] to nonzero [`Scalar`], kept in a
//! `BTreeMap` under the degree-then-lexicographic word order so that equal
//! polynomials always have identical term lists.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("generator name `{0}` appears twice")]
    DuplicateGenerator(String),
    #[error("`{0}` is not a valid generator name")]
    InvalidName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("at most {max} generators are supported")]
    TooManyGenerators { max: usize },
    #[error("operands live in different algebras")]
    AlgebraMismatch,
}

/// Names reserved by the expression grammar.
pub const RESERVED_NAMES: &[&str] = &["one", "rev", "sym", "circ", "U", "Ulin", "sq"];

/// Generator names in a fixed order; the order defines multidegree coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, FreeAlgError> {
        if names.len() > u8::MAX as usize {
            return Err(FreeAlgError::TooManyGenerators {
                max: u8::MAX as usize,
            });
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref().trim();
            let valid = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && !RESERVED_NAMES.contains(&name);
            if !valid {
                return Err(FreeAlgError::InvalidName(name.to_string()));
            }
            if out.iter().any(|n| n == name) {
                return Err(FreeAlgError::DuplicateGenerator(name.to_string()));
            }
            out.push(name.to_string());
        }
        Ok(GeneratorSet { names: out })
    }

    /// Parses a comma-separated list such as `x,y,z,t`.
    pub fn parse_list(list: &str) -> Result<Self, FreeAlgError> {
        let names: Vec<&str> = list.split(',').collect();
        Self::new(&names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: u8) -> &str {
        &self.names[index as usize]
    }

    pub fn index_of(&self, name: &str) -> Result<u8, FreeAlgError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u8)
            .ok_or_else(|| FreeAlgError::UnknownGenerator(name.to_string()))
    }
}

/// Per-generator letter counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(ngens: usize) -> Self {
        MultiDegree(vec![0; ngens])
    }

    pub fn unit(ngens: usize, index: usize) -> Self {
        let mut v = vec![0; ngens];
        v[index] = 1;
        MultiDegree(v)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiDegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, or `None` when some coordinate would go negative.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        if !other.le(self) {
            return None;
        }
        Some(MultiDegree(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, k: u32) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * k).collect())
    }

    /// Every multidegree `e` with `0 ≤ e ≤ self`, sorted by total degree and then
    /// lexicographically.
    pub fn below(&self) -> Vec<MultiDegree> {
        let mut out = vec![Vec::new()];
        for &c in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=c).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        let mut degs: Vec<MultiDegree> = out.into_iter().map(MultiDegree).collect();
        degs.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        degs
    }

    /// Parses `2,2,1`.
    pub fn parse_list(list: &str) -> Option<MultiDegree> {
        list.split(',')
            .map(|s| s.trim().parse::<u32>().ok())
            .collect::<Option<Vec<_>>>()
            .map(MultiDegree)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A monomial as a sequence of generator indices; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multidegree(&self, ngens: usize) -> MultiDegree {
        let mut counts = vec![0u32; ngens];
        for &l in &self.0 {
            counts[l as usize] += 1;
        }
        MultiDegree(counts)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All words of multidegree `d`, in deglex (here: lexicographic) order.
    pub fn all_of_degree(d: &MultiDegree) -> Vec<Word> {
        fn rec(remaining: &mut [u32], prefix: &mut Vec<u8>, out: &mut Vec<Word>) {
            if remaining.iter().all(|&c| c == 0) {
                out.push(Word(prefix.clone()));
                return;
            }
            for g in 0..remaining.len() {
                if remaining[g] > 0 {
                    remaining[g] -= 1;
                    prefix.push(g as u8);
                    rec(remaining, prefix, out);
                    prefix.pop();
                    remaining[g] += 1;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut d.0.clone(), &mut Vec::new(), &mut out);
        out
    }

    pub fn format(&self, gens: &GeneratorSet) -> String {
        if self.0.is_empty() {
            return "one".to_string();
        }
        let names: Vec<&str> = self.0.iter().map(|&l| gens.name(l)).collect();
        names.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Generators plus a coefficient field: the ambient algebra of a [`FreePoly`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeAlgebra {
    pub gens: GeneratorSet,
    pub field: Field,
}

impl FreeAlgebra {
    pub fn new(gens: GeneratorSet, field: Field) -> Arc<FreeAlgebra> {
        Arc::new(FreeAlgebra { gens, field })
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }
}

/// A sparse element of F⟨X⟩.
#[derive(Debug, Clone)]
pub struct FreePoly {
    alg: Arc<FreeAlgebra>,
    terms: BTreeMap<Word, Scalar>,
}

impl PartialEq for FreePoly {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.terms == other.terms
    }
}

impl Eq for FreePoly {}

impl FreePoly {
    pub fn zero(alg: &Arc<FreeAlgebra>) -> FreePoly {
        FreePoly {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The unit, represented by the empty word.
    pub fn one(alg: &Arc<FreeAlgebra>) -> FreePoly {
        Self::monomial(alg, alg.field.one(), Word::empty())
    }

    pub fn monomial(alg: &Arc<FreeAlgebra>, coeff: Scalar, word: Word) -> FreePoly {
        let mut p = Self::zero(alg);
        if !coeff.is_zero() {
            p.terms.insert(word, coeff);
        }
        p
    }

    pub fn generator(alg: &Arc<FreeAlgebra>, index: u8) -> FreePoly {
        assert!(
            (index as usize) < alg.ngens(),
            "generator index out of range"
        );
        Self::monomial(alg, alg.field.one(), Word(vec![index]))
    }

    pub fn var(alg: &Arc<FreeAlgebra>, name: &str) -> Result<FreePoly, FreeAlgError> {
        Ok(Self::generator(alg, alg.gens.index_of(name)?))
    }

    /// The word `w` with coefficient 1.
    pub fn word(alg: &Arc<FreeAlgebra>, w: Word) -> FreePoly {
        Self::monomial(alg, alg.field.one(), w)
    }

    /// Builds a word from generator names, e.g. `["y","x","z","x","y"]`.
    pub fn word_of(alg: &Arc<FreeAlgebra>, names: &[&str]) -> Result<FreePoly, FreeAlgError> {
        let letters = names
            .iter()
            .map(|n| alg.gens.index_of(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::word(alg, Word(letters)))
    }

    pub fn constant(alg: &Arc<FreeAlgebra>, c: Scalar) -> FreePoly {
        Self::monomial(alg, c, Word::empty())
    }

    pub fn from_terms(
        alg: &Arc<FreeAlgebra>,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> FreePoly {
        let mut p = Self::zero(alg);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in deglex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.alg.field.zero())
    }

    fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    fn same_algebra(&self, other: &FreePoly) -> Result<(), FreeAlgError> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(FreeAlgError::AlgebraMismatch)
        }
    }

    pub fn checked_add(&self, other: &FreePoly) -> Result<FreePoly, FreeAlgError> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &FreePoly) -> Result<FreePoly, FreeAlgError> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &FreePoly) -> Result<FreePoly, FreeAlgError> {
        self.same_algebra(other)?;
        let mut out = Self::zero(&self.alg);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        assert_eq!(c.field(), self.field(), "scalar field mismatch");
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        FreePoly {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> FreePoly {
        self.scale(&self.alg.field.from_i64(n))
    }

    /// The involution fixing generators: every word is reversed.
    pub fn reverse(&self) -> FreePoly {
        FreePoly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.reversed(), c.clone()))
                .collect(),
        }
    }

    /// `{u} = u + u*`.
    pub fn symmetrize(&self) -> FreePoly {
        self + &self.reverse()
    }

    pub fn is_symmetric(&self) -> bool {
        self.reverse() == *self
    }

    /// The sub-sum of terms of multidegree exactly `d`.
    pub fn component(&self, d: &MultiDegree) -> FreePoly {
        let n = self.alg.ngens();
        FreePoly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.multidegree(n) == *d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self, d: &MultiDegree) -> bool {
        let n = self.alg.ngens();
        self.terms.keys().all(|w| w.multidegree(n) == *d)
    }

    /// The common multidegree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let n = self.alg.ngens();
        let mut it = self.terms.keys();
        let d = it.next()?.multidegree(n);
        it.all(|w| w.multidegree(n) == d).then_some(d)
    }

    /// Canonical text form, accepted back by the expression parser.
    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&w.format(&self.alg.gens));
            } else {
                out.push_str(&format!("{}*{}", mag, w.format(&self.alg.gens)));
            }
        }
        out
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl Add for &FreePoly {
    type Output = FreePoly;
    fn add(self, rhs: &FreePoly) -> FreePoly {
        self.checked_add(rhs).expect("polynomial algebra mismatch")
    }
}

impl Sub for &FreePoly {
    type Output = FreePoly;
    fn sub(self, rhs: &FreePoly) -> FreePoly {
        self.checked_sub(rhs).expect("polynomial algebra mismatch")
    }
}

impl Mul for &FreePoly {
    type Output = FreePoly;
    fn mul(self, rhs: &FreePoly) -> FreePoly {
        self.checked_mul(rhs).expect("polynomial algebra mismatch")
    }
}

impl Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        FreePoly {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

/// `poly_add`, `poly_mul` and `poly_scale` as free functions.
pub fn poly_add(p: &FreePoly, q: &FreePoly) -> Result<FreePoly, FreeAlgError> {
    p.checked_add(q)
}

pub fn poly_mul(p: &FreePoly, q: &FreePoly) -> Result<FreePoly, FreeAlgError> {
    p.checked_mul(q)
}

pub fn poly_scale(c: &Scalar, p: &FreePoly) -> Result<FreePoly, FreeAlgError> {
    if c.field() != p.field() {
        return Err(FreeAlgError::AlgebraMismatch);
    }
    Ok(p.scale(c))
}
