//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! A polynomial is bound to a [`Ring`]: a shared variable table plus a
//! monomial order. Terms are kept strictly descending under that order with
//! no zero coefficients, so equality is plain structural equality and
//! re-normalizing is a no-op. Mixing rings in arithmetic is a programming
//! error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::vars::{same_table, VarName, VarTable};

/// A polynomial ring: variable table plus monomial order. Cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub table: Arc<VarTable>,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn new(table: Arc<VarTable>, order: MonomialOrder) -> Self {
        Ring { table, order }
    }

    pub fn degrevlex(table: Arc<VarTable>) -> Self {
        Ring::new(table, MonomialOrder::DegRevLex)
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(BigRational::one())
    }

    pub fn constant(&self, c: BigRational) -> Polynomial {
        if c.is_zero() {
            self.zero()
        } else {
            Polynomial { ring: self.clone(), terms: vec![(c, Monomial::one())] }
        }
    }

    pub fn int(&self, c: i64) -> Polynomial {
        self.constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(&self, position: usize) -> Polynomial {
        assert!(position < self.nvars(), "variable position out of range");
        Polynomial {
            ring: self.clone(),
            terms: vec![(BigRational::one(), Monomial::var(position))],
        }
    }

    pub fn var_named(&self, name: &VarName) -> Result<Polynomial> {
        Ok(self.var(self.table.require(name)?))
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial { ring: self.clone(), terms: vec![(BigRational::one(), m)] }
    }

    /// Build from unsorted terms; merges duplicates and drops zeros.
    pub fn polynomial(&self, terms: Vec<(BigRational, Monomial)>) -> Polynomial {
        let mut p = Polynomial { ring: self.clone(), terms };
        p.normalize();
        p
    }

    /// All monomials of total degree `t`, in descending order of the ring's
    /// monomial order.
    pub fn monomials_of_degree(&self, t: u32) -> Vec<Monomial> {
        if self.nvars() == 0 {
            return if t == 0 { vec![Monomial::one()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        gen_degree(&mut exps, 0, t, &mut out);
        out.sort_by(|a, b| self.order.compare(b, a));
        out
    }

    pub fn same_ring(&self, other: &Ring) -> bool {
        same_table(&self.table, &other.table) && self.order == other.order
    }
}

fn gen_degree(exps: &mut Vec<u32>, at: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if at + 1 == exps.len() {
        exps[at] = remaining;
        out.push(Monomial::from_powers(
            exps.iter().enumerate().map(|(p, &e)| (p, e)),
        ));
        exps[at] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[at] = e;
        gen_degree(exps, at + 1, remaining - e, out);
    }
    exps[at] = 0;
}

#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(BigRational, Monomial)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.ring.table
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.ring.order
    }

    pub fn terms(&self) -> &[(BigRational, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&BigRational, &Monomial)> {
        self.terms.first().map(|(c, m)| (c, m))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|(c, _)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m0)) => {
                let d = m0.degree();
                self.terms.iter().all(|(_, m)| m.degree() == d)
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    /// Sort terms, merge equal monomials, drop zeros.
    fn normalize(&mut self) {
        let order = self.ring.order.clone();
        self.terms.sort_by(|(_, a), (_, b)| order.compare(b, a));
        let mut merged: Vec<(BigRational, Monomial)> = Vec::with_capacity(self.terms.len());
        for (c, m) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((c0, m0)) if *m0 == m => *c0 += c,
                _ => merged.push((c, m)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        self.terms = merged;
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(
            self.ring.same_ring(&other.ring),
            "polynomials over different rings (variable table or order mismatch)"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_ring(other);
        let order = &self.ring.order;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ca, ma) = &self.terms[i];
            let (cb, mb) = &other.terms[j];
            match order.compare(ma, mb) {
                Ordering::Greater => {
                    terms.push((ca.clone(), ma.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((cb.clone(), mb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        terms.push((c, ma.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(other.terms[j..].iter().cloned());
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(c, m)| (-c.clone(), m.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect(),
        }
    }

    /// Multiply by a single term. Order multiplicativity keeps the term list
    /// sorted, so no re-normalization is needed.
    pub fn mul_term(&self, c: &BigRational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, u)| (a * c, u.mul(m))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_ring(other);
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ca, ma) in &self.terms {
            for (cb, mb) in &other.terms {
                terms.push((ca * cb, ma.mul(mb)));
            }
        }
        self.ring.polynomial(terms)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Everything below the leading term.
    pub fn tail(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.get(1..).map_or_else(Vec::new, <[_]>::to_vec),
        }
    }

    /// Divide every coefficient by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Same polynomial re-sorted under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        let ring = Ring::new(self.ring.table.clone(), order);
        ring.polynomial(self.terms.clone())
    }

    /// Image under a variable substitution, fully expanded and canonical.
    pub fn substitute(&self, sub: &Substitution) -> Result<Polynomial> {
        let mut acc = sub.target.zero();
        for (c, m) in &self.terms {
            let mut term = sub.target.constant(c.clone());
            for &(p, e) in m.powers() {
                let image = sub.images[p as usize].as_ref().ok_or_else(|| {
                    Error::UnassignedVariable(self.ring.table.name(p as usize).to_string())
                })?;
                term = term.mul(&image.pow(e));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Evaluate at a full point, one value per table position.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.ring.nvars(), "value count mismatch");
        let mut acc = BigRational::zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for &(p, e) in m.powers() {
                let mut pw = BigRational::one();
                let base = &values[p as usize];
                for _ in 0..e {
                    pw *= base;
                }
                t *= pw;
            }
            acc += t;
        }
        acc
    }

    /// Positions of all variables that occur in the polynomial.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .terms
            .iter()
            .flat_map(|(_, m)| m.powers().iter().map(|&(p, _)| p as usize))
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Re-express over another table by renaming variables; every variable in
    /// the support must exist in the target table under the same name.
    pub fn rename_into(&self, target: &Ring) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut pairs = Vec::with_capacity(m.powers().len());
            for &(p, e) in m.powers() {
                let name = self.ring.table.name(p as usize);
                let q = target.table.require(name)?;
                pairs.push((q, e));
            }
            terms.push((c.clone(), Monomial::from_powers(pairs)));
        }
        Ok(target.polynomial(terms))
    }
}

/// Variable-to-polynomial assignment for [`Polynomial::substitute`].
pub struct Substitution {
    target: Ring,
    images: Vec<Option<Polynomial>>,
}

impl Substitution {
    pub fn new(source: &Ring, target: Ring) -> Self {
        Substitution { images: vec![None; source.nvars()], target }
    }

    pub fn set(&mut self, position: usize, image: Polynomial) {
        assert!(
            image.ring.same_ring(&self.target),
            "substitution image lives in a different ring"
        );
        self.images[position] = Some(image);
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }
}

// ---------------------------------------------------------------------------
// text grammar
// ---------------------------------------------------------------------------

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write_rational(f, &mag)?;
            } else {
                if !mag.is_one() {
                    write_rational(f, &mag)?;
                    write!(f, "*")?;
                }
                // factors sorted by variable name for a stable, readable form
                let mut factors: Vec<(&VarName, u32)> = m
                    .powers()
                    .iter()
                    .map(|&(p, e)| (self.ring.table.name(p as usize), e))
                    .collect();
                factors.sort_by(|a, b| a.0.cmp(b.0));
                for (k, (v, e)) in factors.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    if *e == 1 {
                        write!(f, "{v}")?;
                    } else {
                        write!(f, "{v}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl Ring {
    /// Parse the polynomial text grammar: terms joined by `+`/`-`, factors
    /// joined by `*`, coefficients `a` or `a/b`, exponents `^k`, variables
    /// `x[1,2]` / `w1`. Inverse of `Display` on canonical output.
    pub fn parse(&self, input: &str) -> Result<Polynomial> {
        let mut p = Parser { ring: self, bytes: input.as_bytes(), at: 0 };
        let poly = p.poly()?;
        p.skip_ws();
        if p.at != p.bytes.len() {
            return Err(Error::Parse(format!(
                "trailing input at byte {}: `{}`",
                p.at,
                &input[p.at..]
            )));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.at < self.bytes.len() && self.bytes[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.at).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.at += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected `{}` at byte {}",
                b as char, self.at
            )))
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.at;
        while self.at < self.bytes.len() && self.bytes[self.at].is_ascii_digit() {
            self.at += 1;
        }
        if self.at == start {
            return Err(Error::Parse(format!("expected a number at byte {start}")));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.at]).unwrap();
        s.parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer `{s}`: {e}")))
    }

    fn u32(&mut self) -> Result<u32> {
        let n = self.uint()?;
        u32::try_from(n).map_err(|_| Error::Parse("index too large".into()))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.at += 1;
                true
            }
            Some(b'+') => {
                self.at += 1;
                false
            }
            _ => false,
        };
        loop {
            self.skip_ws();
            let (c, m) = self.term()?;
            terms.push((if sign { -c } else { c }, m));
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.at += 1;
                    sign = false;
                }
                Some(b'-') => {
                    self.at += 1;
                    sign = true;
                }
                _ => break,
            }
        }
        Ok(self.ring.polynomial(terms))
    }

    fn term(&mut self) -> Result<(BigRational, Monomial)> {
        let mut coeff = BigRational::one();
        let mut mono = Monomial::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let numer = self.uint()?;
                    let denom = if self.peek() == Some(b'/') {
                        self.at += 1;
                        let d = self.uint()?;
                        if d.is_zero() {
                            return Err(Error::Parse("zero denominator".into()));
                        }
                        d
                    } else {
                        BigInt::one()
                    };
                    coeff *= BigRational::new(numer, denom);
                }
                Some(b) if b.is_ascii_lowercase() => {
                    let (pos, exp) = self.varpow()?;
                    mono = mono.mul(&Monomial::var_pow(pos, exp));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "expected a coefficient or variable at byte {}",
                        self.at
                    )))
                }
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.at += 1;
            } else {
                break;
            }
        }
        Ok((coeff, mono))
    }

    fn varpow(&mut self) -> Result<(usize, u32)> {
        let base = self.peek().unwrap() as char;
        self.at += 1;
        let name = if self.peek() == Some(b'[') {
            self.at += 1;
            let mut idx = vec![self.u32()?];
            while self.peek() == Some(b',') {
                self.at += 1;
                idx.push(self.u32()?);
            }
            self.expect(b']')?;
            VarName::Indexed(base, idx)
        } else {
            VarName::Numbered(base, self.u32()?)
        };
        let pos = self.ring.table.require(&name)?;
        let exp = if self.peek() == Some(b'^') {
            self.at += 1;
            self.u32()?
        } else {
            1
        };
        Ok((pos, exp))
    }
}
