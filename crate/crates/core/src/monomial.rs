//! Sparse monomials and monomial orders.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Power product stored as sorted `(position, exponent)` pairs, exponents > 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    powers: Vec<(u32, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { powers: Vec::new(), degree: 0 }
    }

    pub fn var(position: usize) -> Self {
        Self::var_pow(position, 1)
    }

    pub fn var_pow(position: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Monomial { powers: vec![(position as u32, exp)], degree: exp }
    }

    /// Build from arbitrary `(position, exponent)` pairs; merges duplicates,
    /// drops zeros.
    pub fn from_powers(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut powers: Vec<(u32, u32)> = Vec::new();
        for (p, e) in pairs {
            if e > 0 {
                powers.push((p as u32, e));
            }
        }
        powers.sort_by_key(|&(p, _)| p);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(powers.len());
        for (p, e) in powers {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        let degree = merged.iter().map(|&(_, e)| e).sum();
        Monomial { powers: merged, degree }
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, position: usize) -> u32 {
        let p = position as u32;
        self.powers
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn powers(&self) -> &[(u32, u32)] {
        &self.powers
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (p, e) = self.powers[i];
            let (q, f) = other.powers[j];
            match p.cmp(&q) {
                Ordering::Less => {
                    powers.push((p, e));
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push((q, f));
                    j += 1;
                }
                Ordering::Equal => {
                    powers.push((p, e + f));
                    i += 1;
                    j += 1;
                }
            }
        }
        powers.extend_from_slice(&self.powers[i..]);
        powers.extend_from_slice(&other.powers[j..]);
        Monomial { powers, degree: self.degree + other.degree }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.degree > self.degree {
            return None;
        }
        let mut powers = Vec::with_capacity(self.powers.len());
        let mut j = 0;
        for &(p, e) in &self.powers {
            let mut e = e;
            if j < other.powers.len() && other.powers[j].0 < p {
                // divisor has a variable the dividend lacks
                return None;
            }
            if j < other.powers.len() && other.powers[j].0 == p {
                let f = other.powers[j].1;
                if f > e {
                    return None;
                }
                e -= f;
                j += 1;
            }
            if e > 0 {
                powers.push((p, e));
            }
        }
        if j < other.powers.len() {
            return None;
        }
        Some(Monomial { powers, degree: self.degree - other.degree })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.checked_div(self).is_some()
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (p, e) = self.powers[i];
            let (q, f) = other.powers[j];
            match p.cmp(&q) {
                Ordering::Less => {
                    powers.push((p, e));
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push((q, f));
                    j += 1;
                }
                Ordering::Equal => {
                    powers.push((p, e.max(f)));
                    i += 1;
                    j += 1;
                }
            }
        }
        powers.extend_from_slice(&self.powers[i..]);
        powers.extend_from_slice(&other.powers[j..]);
        let degree = powers.iter().map(|&(_, e)| e).sum();
        Monomial { powers, degree }
    }

    /// True when the supports are disjoint (Buchberger's product criterion).
    pub fn coprime(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            match self.powers[i].0.cmp(&other.powers[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Self::one();
        }
        let powers = self.powers.iter().map(|&(p, e)| (p, e * k)).collect();
        Monomial { powers, degree: self.degree * k }
    }

    fn degree_in(&self, block: &BTreeSet<u32>) -> u32 {
        self.powers
            .iter()
            .filter(|&&(p, _)| block.contains(&p))
            .map(|&(_, e)| e)
            .sum()
    }
}

/// Monomial order over a fixed variable table. Position ascends with the
/// variable order: the variable at the highest position is the largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Degree first; ties broken so that the monomial with the larger
    /// exponent in the smallest differing variable is the smaller one.
    DegRevLex,
    /// Pure lexicographic, largest variable first.
    Lex,
    /// Elimination order: degree in the `elim` block dominates, then
    /// DegRevLex inside the block, then DegRevLex on the remaining variables.
    Block { elim: Arc<BTreeSet<u32>> },
}

impl MonomialOrder {
    pub fn block(elim: impl IntoIterator<Item = usize>) -> Self {
        MonomialOrder::Block {
            elim: Arc::new(elim.into_iter().map(|p| p as u32).collect()),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(a, b, |_| true),
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Block { elim } => {
                let da = a.degree_in(elim);
                let db = b.degree_in(elim);
                da.cmp(&db)
                    .then_with(|| degrevlex(a, b, |p| elim.contains(&p)))
                    .then_with(|| degrevlex(a, b, |p| !elim.contains(&p)))
            }
        }
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    // scan from the largest variable downwards
    let mut ia = a.powers().iter().rev().peekable();
    let mut ib = b.powers().iter().rev().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&&(p, e)), Some(&&(q, f))) => match p.cmp(&q) {
                Ordering::Greater => return Ordering::Greater,
                Ordering::Less => return Ordering::Less,
                Ordering::Equal => {
                    if e != f {
                        return e.cmp(&f);
                    }
                    ia.next();
                    ib.next();
                }
            },
        }
    }
}

fn degrevlex(a: &Monomial, b: &Monomial, in_block: impl Fn(u32) -> bool) -> Ordering {
    let da: u32 = a.powers().iter().filter(|&&(p, _)| in_block(p)).map(|&(_, e)| e).sum();
    let db: u32 = b.powers().iter().filter(|&&(p, _)| in_block(p)).map(|&(_, e)| e).sum();
    if da != db {
        return da.cmp(&db);
    }
    // equal degree: scan from the smallest variable upwards; at the first
    // position where the exponents differ, more of the small variable loses
    let mut ia = a.powers().iter().filter(|&&(p, _)| in_block(p)).peekable();
    let mut ib = b.powers().iter().filter(|&&(p, _)| in_block(p)).peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            // a has no small variables left, so b owns the smallest
            // differing one and b is the smaller monomial
            (None, Some(_)) => return Ordering::Greater,
            (Some(_), None) => return Ordering::Less,
            (Some(&&(p, e)), Some(&&(q, f))) => match p.cmp(&q) {
                Ordering::Less => return Ordering::Less, // a has the smaller var
                Ordering::Greater => return Ordering::Greater,
                Ordering::Equal => {
                    if e != f {
                        return f.cmp(&e);
                    }
                    ia.next();
                    ib.next();
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, u32)]) -> Monomial {
        Monomial::from_powers(pairs.iter().copied())
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = m(&[(0, 2), (3, 1)]);
        let b = m(&[(0, 1), (2, 4)]);
        let ab = a.mul(&b);
        assert_eq!(ab.checked_div(&b), Some(a.clone()));
        assert_eq!(ab.checked_div(&a), Some(b));
        assert_eq!(a.checked_div(&m(&[(1, 1)])), None);
    }

    #[test]
    fn degrevlex_tiebreak_prefers_less_of_the_smallest_variable() {
        // table positions: 0 = smallest variable
        // x0*x3 vs x1*x2: first differing (smallest) position is 0; the
        // monomial holding it is smaller
        let ord = MonomialOrder::DegRevLex;
        assert_eq!(ord.compare(&m(&[(0, 1), (3, 1)]), &m(&[(1, 1), (2, 1)])), Ordering::Less);
        assert_eq!(ord.compare(&m(&[(1, 1)]), &m(&[(1, 1)])), Ordering::Equal);
        assert_eq!(ord.compare(&m(&[(0, 3)]), &m(&[(1, 1)])), Ordering::Greater);
    }

    #[test]
    fn lex_compares_largest_variable_first() {
        let ord = MonomialOrder::Lex;
        assert_eq!(ord.compare(&m(&[(2, 1)]), &m(&[(0, 5), (1, 5)])), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[(2, 1), (0, 1)]), &m(&[(2, 1)])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates() {
        // any monomial containing an elim variable beats any that does not
        let ord = MonomialOrder::block([5usize, 6]);
        assert_eq!(ord.compare(&m(&[(5, 1)]), &m(&[(0, 9), (1, 9)])), Ordering::Greater);
        // outside the block, plain degrevlex applies
        assert_eq!(ord.compare(&m(&[(0, 2)]), &m(&[(1, 1)])), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[(0, 1), (5, 1)]), &m(&[(1, 1), (5, 1)])), Ordering::Less);
    }
}
