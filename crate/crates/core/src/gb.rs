//! Groebner-basis machinery: division, Buchberger's algorithm and criterion,
//! elimination, intersection, colon and saturation, standard-monomial counts.
//!
//! Everything is deterministic: S-pairs are processed in ascending
//! (lcm-degree, i, j) order, division always picks the first divisor in the
//! list, and reduced bases come back monic and sorted descending by leading
//! term. Resource guards are explicit configuration and fail hard; nothing is
//! silently truncated.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ideal::{GbStatus, Ideal};
use crate::linalg::QMat;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use crate::vars::VarName;

/// Resource guards for basis computations.
#[derive(Debug, Clone)]
pub struct GbConfig {
    /// Maximum number of S-polynomial reductions before bailing out.
    pub max_spairs: usize,
    /// Maximum term count of any intermediate polynomial.
    pub max_poly_terms: usize,
    /// Skip S-pairs whose lcm degree exceeds this bound (homogeneous ideals
    /// only); the result is then a basis valid up to the bound.
    pub degree_bound: Option<u32>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_spairs: 200_000, max_poly_terms: 500_000, degree_bound: None }
    }
}

impl GbConfig {
    pub fn with_max_spairs(mut self, n: usize) -> Self {
        self.max_spairs = n;
        self
    }

    pub fn with_degree_bound(mut self, d: u32) -> Self {
        self.degree_bound = Some(d);
        self
    }
}

/// Full normal form of `f` against `divisors`, in the given list order.
/// Total and deterministic: the first divisor whose leading term divides the
/// current leading term is used; irreducible leading terms move to the
/// remainder.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    reduce(f, divisors, usize::MAX).expect("unbounded reduction cannot exhaust a budget")
}

fn reduce(f: &Polynomial, divisors: &[Polynomial], max_terms: usize) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let mut work = f.clone();
    let mut remainder: Vec<(BigRational, Monomial)> = Vec::new();
    'outer: while let Some((c, m)) = work.leading_term() {
        for g in divisors {
            let (gc, gm) = g.leading_term().expect("zero divisor in basis");
            if let Some(q) = m.checked_div(gm) {
                let factor = c / gc;
                work = work.sub(&g.mul_term(&factor, &q));
                if work.num_terms() > max_terms {
                    return Err(Error::Budget { what: "intermediate term count", limit: max_terms });
                }
                continue 'outer;
            }
        }
        remainder.push((c.clone(), m.clone()));
        work = work.tail();
    }
    Ok(ring.polynomial(remainder))
}

/// Divide `f` by the single divisor `g`; returns `(quotient, remainder)`.
pub fn divide(f: &Polynomial, g: &Polynomial) -> (Polynomial, Polynomial) {
    let ring = f.ring().clone();
    let (gc, gm) = g.leading_term().expect("division by zero polynomial");
    let mut work = f.clone();
    let mut quo: Vec<(BigRational, Monomial)> = Vec::new();
    let mut rem: Vec<(BigRational, Monomial)> = Vec::new();
    while let Some((c, m)) = work.leading_term() {
        if let Some(q) = m.checked_div(gm) {
            let factor = c / gc;
            work = work.sub(&g.mul_term(&factor, &q));
            quo.push((factor, q));
        } else {
            rem.push((c.clone(), m.clone()));
            work = work.tail();
        }
    }
    (ring.polynomial(quo), ring.polynomial(rem))
}

/// S-polynomial of `f` and `g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fc, fm) = f.leading_term().expect("zero polynomial has no S-pair");
    let (gc, gm) = g.leading_term().expect("zero polynomial has no S-pair");
    let lcm = fm.lcm(gm);
    let uf = lcm.checked_div(fm).unwrap();
    let ug = lcm.checked_div(gm).unwrap();
    f.mul_term(&fc.recip(), &uf).sub(&g.mul_term(&gc.recip(), &ug))
}

/// Outcome of the Buchberger criterion check.
#[derive(Debug)]
pub struct GbCheck {
    pub is_basis: bool,
    /// On failure: indices of the offending pair and the nonzero remainder.
    pub witness: Option<(usize, usize, Polynomial)>,
    pub spairs_checked: usize,
}

/// Check whether `gens` is a Groebner basis under its own order by reducing
/// every S-polynomial. No pair-elimination criteria are applied: this is the
/// verification oracle, so every pair is actually reduced.
pub fn is_groebner_basis(gens: &[Polynomial], cfg: &GbConfig) -> Result<GbCheck> {
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut checked = 0usize;
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            checked += 1;
            if checked > cfg.max_spairs {
                return Err(Error::Budget { what: "S-pairs", limit: cfg.max_spairs });
            }
            let s = s_polynomial(&gens[i], &gens[j]);
            let r = reduce(&s, &gens, cfg.max_poly_terms)?;
            if !r.is_zero() {
                return Ok(GbCheck { is_basis: false, witness: Some((i, j, r)), spairs_checked: checked });
            }
        }
    }
    Ok(GbCheck { is_basis: true, witness: None, spairs_checked: checked })
}

struct PairQueue {
    // (lcm degree, i, j), ascending: normal selection strategy
    queue: BTreeSet<(u32, usize, usize)>,
    pending: HashSet<(usize, usize)>,
}

impl PairQueue {
    fn new() -> Self {
        PairQueue { queue: BTreeSet::new(), pending: HashSet::new() }
    }

    fn push(&mut self, basis: &[Polynomial], i: usize, j: usize) {
        let d = basis[i]
            .leading_monomial()
            .unwrap()
            .lcm(basis[j].leading_monomial().unwrap())
            .degree();
        self.queue.insert((d, i, j));
        self.pending.insert((i, j));
    }

    fn pop(&mut self) -> Option<(u32, usize, usize)> {
        let first = *self.queue.iter().next()?;
        self.queue.remove(&first);
        self.pending.remove(&(first.1, first.2));
        Some(first)
    }

    fn is_pending(&self, i: usize, j: usize) -> bool {
        self.pending.contains(&(i.min(j), i.max(j)))
    }
}

/// Buchberger's algorithm. Returns the unique reduced Groebner basis (monic,
/// auto-reduced, sorted descending by leading term). With a degree bound the
/// second component is `true` when pairs above the bound were skipped.
pub fn buchberger(gens: &[Polynomial], cfg: &GbConfig) -> Result<(Vec<Polynomial>, bool)> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut pairs = PairQueue::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push(&basis, i, j);
        }
    }
    let mut truncated = false;
    let mut reductions = 0usize;
    while let Some((d, i, j)) = pairs.pop() {
        if let Some(bound) = cfg.degree_bound {
            if d > bound {
                // ascending degree order: everything left is above the bound
                truncated = true;
                break;
            }
        }
        let lm_i = basis[i].leading_monomial().unwrap();
        let lm_j = basis[j].leading_monomial().unwrap();
        // product criterion
        if lm_i.coprime(lm_j) {
            continue;
        }
        // chain criterion: some k with LT(k) | lcm(i,j) and both mixed pairs
        // already resolved
        let lcm_ij = lm_i.lcm(lm_j);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&lcm_ij)
                && !pairs.is_pending(i, k)
                && !pairs.is_pending(j, k)
        });
        if chain {
            continue;
        }
        reductions += 1;
        if reductions > cfg.max_spairs {
            return Err(Error::Budget { what: "S-pairs", limit: cfg.max_spairs });
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis, cfg.max_poly_terms)?;
        if !r.is_zero() {
            let t = basis.len();
            basis.push(r.monic());
            for k in 0..t {
                pairs.push(&basis, k, t);
            }
        }
    }
    Ok((reduce_basis(basis), truncated))
}

/// Minimalize and tail-reduce a basis into the canonical reduced form.
fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    if basis.is_empty() {
        return basis;
    }
    let order = basis[0].ring().order.clone();
    // ascending by leading term so each element is only kept if no smaller
    // leading term divides it
    basis.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    let snapshot = minimal.clone();
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.into_iter().enumerate() {
        let others: Vec<Polynomial> = snapshot
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(normal_form(&g, &others).monic());
    }
    reduced.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    reduced
}

impl Ideal {
    /// Reduced Groebner basis of this ideal under its own order.
    pub fn groebner(&self, cfg: &GbConfig) -> Result<Ideal> {
        let full = GbConfig { degree_bound: None, ..cfg.clone() };
        let (basis, _) = buchberger(self.generators(), &full)?;
        Ok(Ideal::with_status(self.ring().clone(), basis, GbStatus::Full))
    }

    /// Degree-truncated reduced basis, valid for homogeneous ideals up to
    /// `bound`. Falls back to `Full` status when no pair was skipped.
    pub fn groebner_truncated(&self, bound: u32, cfg: &GbConfig) -> Result<Ideal> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let cfg = GbConfig { degree_bound: Some(bound), ..cfg.clone() };
        let (basis, truncated) = buchberger(self.generators(), &cfg)?;
        let status = if truncated { GbStatus::UpToDegree(bound) } else { GbStatus::Full };
        Ok(Ideal::with_status(self.ring().clone(), basis, status))
    }

    /// Ideal membership via normal form; requires a reduced Groebner basis.
    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        if !self.is_reduced_gb() {
            return Err(Error::NotAGroebnerBasis);
        }
        Ok(normal_form(f, self.generators()).is_zero())
    }

    /// True when every generator of `other` lies in `self` (needs GB on self).
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            let g = if g.ring().same_ring(self.ring()) { g.clone() } else { g.rename_into(self.ring())? };
            if !self.member(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality by mutual membership of generators; both sides need a
    /// Groebner basis.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// Generators of the intersection of the ideal with the subring omitting
    /// `drop`, via a Groebner basis under a block elimination order.
    pub fn eliminate(&self, drop: &BTreeSet<usize>, cfg: &GbConfig) -> Result<Ideal> {
        if drop.is_empty() {
            return self.groebner(cfg);
        }
        let block = Ring::new(self.ring().table.clone(), MonomialOrder::block(drop.iter().copied()));
        let gens: Vec<Polynomial> =
            self.generators().iter().map(|g| g.with_order(block.order.clone())).collect();
        let (basis, _) = buchberger(&gens, &GbConfig { degree_bound: None, ..cfg.clone() })?;
        let keep: Vec<usize> = (0..self.ring().nvars()).filter(|p| !drop.contains(p)).collect();
        let (sub_table, _) = self.ring().table.project(&keep)?;
        let sub_ring = Ring::degrevlex(sub_table);
        // for a block order, a leading term free of eliminated variables
        // forces the whole polynomial to be free of them
        let kept: Vec<Polynomial> = basis
            .iter()
            .filter(|g| {
                g.leading_monomial()
                    .map(|m| m.powers().iter().all(|&(p, _)| !drop.contains(&(p as usize))))
                    .unwrap_or(true)
            })
            .map(|g| g.rename_into(&sub_ring))
            .collect::<Result<_>>()?;
        Ok(Ideal::with_status(sub_ring, kept, GbStatus::Full))
    }

    /// Ideal intersection via the auxiliary-variable elimination construction
    /// `I ∩ J = (e·I + (1-e)·J) ∩ k[x]`.
    pub fn intersect(&self, other: &Ideal, cfg: &GbConfig) -> Result<Ideal> {
        assert!(self.ring().same_ring(other.ring()), "intersection needs a common ring");
        // first unused auxiliary name e<k>
        let aux = (1..)
            .map(VarName::aux)
            .find(|v| self.ring().table.position(v).is_none())
            .unwrap();
        let ext_table = self.ring().table.extend(&[aux])?;
        let aux_pos = ext_table.len() - 1;
        let ext = Ring::new(ext_table, MonomialOrder::block([aux_pos]));
        let e = ext.var(aux_pos);
        let one_minus_e = ext.one().sub(&e);
        let mut gens = Vec::with_capacity(self.generators().len() + other.generators().len());
        for f in self.generators() {
            gens.push(f.rename_into(&ext)?.mul(&e));
        }
        for g in other.generators() {
            gens.push(g.rename_into(&ext)?.mul(&one_minus_e));
        }
        let ext_ideal = Ideal::new(ext, gens);
        let mut drop = BTreeSet::new();
        drop.insert(aux_pos);
        let projected = ext_ideal.eliminate(&drop, cfg)?;
        // land back on the caller's ring handle
        let gens = projected
            .generators()
            .iter()
            .map(|g| g.rename_into(self.ring()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::with_status(self.ring().clone(), gens, GbStatus::Full))
    }

    /// Ideal quotient `(self : f)`.
    pub fn colon(&self, f: &Polynomial, cfg: &GbConfig) -> Result<Ideal> {
        assert!(!f.is_zero(), "colon by the zero polynomial");
        if f.is_constant() {
            return self.groebner(cfg);
        }
        let principal = Ideal::new(self.ring().clone(), vec![f.clone()]);
        let meet = self.intersect(&principal, cfg)?;
        let mut quotients = Vec::with_capacity(meet.generators().len());
        for h in meet.generators() {
            let (q, r) = divide(h, f);
            assert!(r.is_zero(), "intersection generator not divisible in colon");
            quotients.push(q);
        }
        Ideal::new(self.ring().clone(), quotients).groebner(cfg)
    }

    /// Saturation `(self : f^∞)`: iterate the colon until it stabilizes.
    pub fn saturate(&self, f: &Polynomial, cfg: &GbConfig) -> Result<Ideal> {
        let mut current = self.groebner(cfg)?;
        for _ in 0..64 {
            let next = current.colon(f, cfg)?;
            if next.generators() == current.generators() {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::Budget { what: "saturation rounds", limit: 64 })
    }
}

/// One degree of the Hilbert function of a homogeneous ideal and its quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSample {
    pub degree: u32,
    pub quotient_dim: u64,
    pub ideal_dim: u64,
}

impl Ideal {
    /// Count degree-`t` standard monomials (not divisible by any leading
    /// term) and their complement.
    pub fn standard_monomial_count(&self, t: u32) -> Result<HilbertSample> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        match self.gb_status() {
            GbStatus::Full => {}
            GbStatus::UpToDegree(d) if t <= d => {}
            _ => return Err(Error::NotAGroebnerBasis),
        }
        let leads: Vec<&Monomial> =
            self.generators().iter().filter_map(|g| g.leading_monomial()).collect();
        let mut quotient = 0u64;
        let mut total = 0u64;
        for m in self.ring().monomials_of_degree(t) {
            total += 1;
            if !leads.iter().any(|l| l.divides(&m)) {
                quotient += 1;
            }
        }
        Ok(HilbertSample { degree: t, quotient_dim: quotient, ideal_dim: total - quotient })
    }

    /// Krull dimension of the quotient and its geometric degree, fitted from
    /// the eventual Hilbert polynomial through standard-monomial samples.
    /// Returns `(dimension, degree)` where dimension is the fitted polynomial
    /// degree plus one and degree is its normalized leading coefficient.
    pub fn hilbert_dimension_degree(&self, max_t: u32) -> Result<(usize, u64)> {
        let mut samples: Vec<i128> = Vec::new();
        let mut t_max = 4.min(max_t);
        loop {
            while samples.len() <= t_max as usize {
                let s = self.standard_monomial_count(samples.len() as u32)?;
                samples.push(s.quotient_dim as i128);
            }
            if let Some(hit) = fit_hilbert(&samples) {
                return Ok(hit);
            }
            if t_max >= max_t {
                return Err(Error::InsufficientSamples { needed: t_max as usize + 3 });
            }
            t_max = (t_max + 2).min(max_t);
        }
    }
}

/// Detect the eventual polynomial behind a Hilbert-function sample sequence
/// by finite differences. Returns `(krull_dim, geometric_degree)`.
fn fit_hilbert(samples: &[i128]) -> Option<(usize, u64)> {
    let mut level = samples.to_vec();
    for k in 0..samples.len() {
        if level.len() < 3 {
            return None;
        }
        let tail = &level[level.len() - 3..];
        if tail[0] == tail[1] && tail[1] == tail[2] {
            return if tail[0] == 0 {
                // quotient of finite length
                Some((0, 0))
            } else {
                Some((k + 1, u64::try_from(tail[0]).ok()?))
            };
        }
        level = level.windows(2).map(|w| w[1] - w[0]).collect();
    }
    None
}

/// Coefficient matrix of homogeneous degree-`t` polynomials over the
/// monomial basis of degree `t` (one row per polynomial).
pub fn coefficient_matrix(ring: &Ring, polys: &[&Polynomial], t: u32) -> QMat {
    let basis = ring.monomials_of_degree(t);
    let index: std::collections::HashMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = QMat::zero(polys.len(), basis.len());
    for (r, p) in polys.iter().enumerate() {
        for (c, m) in p.terms() {
            let col = *index.get(m).expect("term degree mismatch in coefficient matrix");
            mat.set(r, col, c.clone());
        }
    }
    mat
}

/// Dimension of the degree-`t` slice of the ideal spanned by homogeneous
/// `gens`, by exact linear algebra on the multiples `m * g`. Independent of
/// the Groebner path.
pub fn degree_slice_rank(ring: &Ring, gens: &[Polynomial], t: u32) -> usize {
    let mut rows: Vec<Polynomial> = Vec::new();
    for g in gens {
        let d = g.total_degree();
        if g.is_zero() || d > t {
            continue;
        }
        for m in ring.monomials_of_degree(t - d) {
            rows.push(g.mul_term(&num_traits::One::one(), &m));
        }
    }
    let refs: Vec<&Polynomial> = rows.iter().collect();
    coefficient_matrix(ring, &refs, t).rank()
}

/// `C(n + t - 1, t)`: monomial count of degree `t` in `n` variables.
pub fn ambient_degree_dim(n: usize, t: u32) -> BigInt {
    binomial(BigInt::from(n as i64 + t as i64 - 1), BigInt::from(t))
}

pub fn ambient_degree_dim_u64(n: usize, t: u32) -> u64 {
    ambient_degree_dim(n, t).to_u64().expect("ambient dimension overflow")
}
