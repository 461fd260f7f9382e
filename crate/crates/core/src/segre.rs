//! Segre parameterization and its consequences: minor vanishing under the
//! rank-one substitution, the elimination kernel oracle, decomposability of
//! concrete tensors, closed-form Hilbert and grade values, and the
//! localization-map identity.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::boxmatrix::{BoxMatrix, BoxShape};
use crate::error::{Error, Result};
use crate::gb::GbConfig;
use crate::ideal::Ideal;
use crate::linalg::QMat;
use crate::poly::{Ring, Substitution};
use crate::vars::{VarName, VarTable};

fn y_names(sizes: &[u32]) -> Vec<VarName> {
    // appended above the x block; internal order is immaterial
    let mut names = Vec::new();
    for l in (1..=sizes.len() as u32).rev() {
        for i in (1..=sizes[l as usize - 1]).rev() {
            names.push(VarName::y(l, i));
        }
    }
    names
}

/// The substitution `x[i_1,...,i_n] -> y[1,i_1] * ... * y[n,i_n]` from the
/// box ring into a fresh ring of y-variables.
pub fn segre_substitution(box_ring: &Ring, sizes: &[u32]) -> Substitution {
    let y_table = VarTable::new(y_names(sizes)).expect("y names are distinct");
    let y_ring = Ring::degrevlex(y_table);
    let mut sub = Substitution::new(box_ring, y_ring.clone());
    for (pos, name) in box_ring.table.names().iter().enumerate() {
        let VarName::Indexed('x', tuple) = name else { continue };
        let mut img = y_ring.one();
        for (l, &i) in tuple.iter().enumerate() {
            img = img.mul(&y_ring.var_named(&VarName::y(l as u32 + 1, i)).unwrap());
        }
        sub.set(pos, img);
    }
    sub
}

/// True iff every generator of `I_2(A)` maps to zero under the Segre
/// substitution.
pub fn segre_vanishing(a: &BoxMatrix) -> Result<bool> {
    if !a.is_generic() {
        return Err(Error::Invalid("Segre vanishing is defined for generic boxes".into()));
    }
    let sub = segre_substitution(a.ring(), a.shape().sizes());
    for m in a.all_minors() {
        if !m.substitute(&sub)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct KernelOptions {
    /// Refuse boxes with more positions than this.
    pub position_gate: usize,
    pub gb: GbConfig,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions { position_gate: 12, gb: GbConfig::default() }
    }
}

/// Exact kernel of the Segre parameterization, by eliminating the
/// y-variables from the graph ideal `< x_pos - prod_l y[l, i_l] >`.
/// Returns an ideal over the generic box ring.
pub fn kernel_oracle(sizes: &[u32], opts: &KernelOptions) -> Result<Ideal> {
    let shape = BoxShape::new(sizes.to_vec())?;
    if shape.num_positions() > opts.position_gate {
        return Err(Error::Gate {
            what: "box positions for the kernel oracle",
            actual: shape.num_positions(),
            gate: opts.position_gate,
        });
    }
    let box_table = VarTable::generic_box(sizes);
    let n_x = box_table.len();
    let combined_table = box_table.extend(&y_names(sizes))?;
    let combined = Ring::degrevlex(combined_table);
    let mut gens = Vec::with_capacity(n_x);
    for p in shape.positions() {
        let x = combined.var_named(&VarName::x(&p))?;
        let mut img = combined.one();
        for (l, &i) in p.iter().enumerate() {
            img = img.mul(&combined.var_named(&VarName::y(l as u32 + 1, i))?);
        }
        gens.push(x.sub(&img));
    }
    let graph = Ideal::new(combined.clone(), gens);
    let drop: BTreeSet<usize> = (n_x..combined.nvars()).collect();
    let eliminated = graph.eliminate(&drop, &opts.gb)?;
    // land on the standard generic box ring
    let box_ring = Ring::degrevlex(box_table);
    let gens = eliminated
        .generators()
        .iter()
        .map(|g| g.rename_into(&box_ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::with_status(box_ring, gens, crate::ideal::GbStatus::Full))
}

/// A tensor with explicit rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteTensor {
    shape: BoxShape,
    values: Vec<BigRational>,
}

impl ConcreteTensor {
    pub fn new(sizes: Vec<u32>, values: Vec<BigRational>) -> Result<Self> {
        let shape = BoxShape::new(sizes)?;
        if values.len() != shape.num_positions() {
            return Err(Error::Invalid(format!(
                "expected {} entries, got {}",
                shape.num_positions(),
                values.len()
            )));
        }
        Ok(ConcreteTensor { shape, values })
    }

    pub fn zero(sizes: Vec<u32>) -> Result<Self> {
        let shape = BoxShape::new(sizes)?;
        let values = vec![BigRational::zero(); shape.num_positions()];
        Ok(ConcreteTensor { shape, values })
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    pub fn get(&self, tuple: &[u32]) -> &BigRational {
        &self.values[self.shape.position_index(tuple)]
    }

    pub fn set(&mut self, tuple: &[u32], v: BigRational) {
        let i = self.shape.position_index(tuple);
        self.values[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Outer product of rational vectors.
    pub fn outer(factors: &[Vec<BigRational>]) -> Result<Self> {
        let sizes: Vec<u32> = factors.iter().map(|f| f.len() as u32).collect();
        let shape = BoxShape::new(sizes.clone())?;
        let values = shape
            .positions()
            .iter()
            .map(|p| {
                let mut v = BigRational::one();
                for (l, &i) in p.iter().enumerate() {
                    v *= &factors[l][i as usize - 1];
                }
                v
            })
            .collect();
        Ok(ConcreteTensor { shape, values })
    }

    /// Sparse JSON form: `{"sizes": [...], "entries": [{"pos": [...],
    /// "value": "a/b"}]}`; omitted positions are zero.
    pub fn from_json(doc: &Value) -> Result<Self> {
        let sizes = doc["sizes"]
            .as_array()
            .ok_or_else(|| Error::Parse("tensor document missing `sizes`".into()))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| Error::Parse("bad size entry".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        let mut tensor = ConcreteTensor::zero(sizes)?;
        let entries = doc["entries"]
            .as_array()
            .ok_or_else(|| Error::Parse("tensor document missing `entries`".into()))?;
        for e in entries {
            let pos = e["pos"]
                .as_array()
                .ok_or_else(|| Error::Parse("entry missing `pos`".into()))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or_else(|| Error::Parse("bad position index".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            if pos.len() != tensor.shape.ndim()
                || pos.iter().zip(tensor.shape.sizes()).any(|(&i, &r)| i == 0 || i > r)
            {
                return Err(Error::Parse(format!("position {pos:?} outside the box")));
            }
            let raw = e["value"]
                .as_str()
                .ok_or_else(|| Error::Parse("entry value must be a string".into()))?;
            tensor.set(&pos, parse_rational(raw)?);
        }
        Ok(tensor)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .shape
            .positions()
            .iter()
            .filter(|p| !self.get(p).is_zero())
            .map(|p| json!({"pos": p, "value": rational_string(self.get(p))}))
            .collect();
        json!({"sizes": self.shape.sizes(), "entries": entries})
    }

    /// Flattening along `axis` (1-based): rows indexed by the axis
    /// coordinate, columns by the complementary tuple.
    pub fn flattening(&self, axis: usize) -> QMat {
        let l = axis - 1;
        let rows = self.shape.sizes()[l] as usize;
        let cols = self.shape.num_positions() / rows;
        let mut mat = QMat::zero(rows, cols);
        let mut col_of = std::collections::HashMap::new();
        for p in self.shape.positions() {
            let mut rest = p.clone();
            rest.remove(l);
            let next = col_of.len();
            let col = *col_of.entry(rest).or_insert(next);
            mat.set(p[l] as usize - 1, col, self.get(&p).clone());
        }
        mat
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n = num
        .trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d = den
        .trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Verdict of the decomposability test.
#[derive(Debug, Clone)]
pub enum Decomposability {
    /// All 2x2 minors vanish; the factors reproduce the tensor exactly.
    Decomposable { factors: Vec<Vec<BigRational>> },
    /// A witness minor with nonzero value.
    NotDecomposable { axis: usize, p: Vec<u32>, q: Vec<u32>, value: BigRational },
}

impl Decomposability {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Decomposability::Decomposable { .. })
    }
}

/// Decide decomposability of a nonzero tensor by evaluating all 2x2 minors;
/// on success reconstruct exact factor vectors anchored at the first nonzero
/// entry.
pub fn is_decomposable(t: &ConcreteTensor) -> Result<Decomposability> {
    if t.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let positions = t.shape().positions();
    for axis in 1..=t.shape().ndim() {
        let l = axis - 1;
        for (a, p) in positions.iter().enumerate() {
            for q in positions.iter().skip(a + 1) {
                if p[l] == q[l] {
                    continue;
                }
                let mut ps = p.clone();
                let mut qs = q.clone();
                ps[l] = q[l];
                qs[l] = p[l];
                let value = t.get(p) * t.get(q) - t.get(&ps) * t.get(&qs);
                if !value.is_zero() {
                    return Ok(Decomposability::NotDecomposable {
                        axis,
                        p: p.clone(),
                        q: q.clone(),
                        value,
                    });
                }
            }
        }
    }
    // anchor at the lexicographically first nonzero entry
    let anchor = positions
        .iter()
        .find(|p| !t.get(p).is_zero())
        .expect("nonzero tensor has a nonzero entry")
        .clone();
    let n = t.shape().ndim();
    let mut factors: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for l in 0..n {
        let mut v = Vec::with_capacity(t.shape().sizes()[l] as usize);
        for i in 1..=t.shape().sizes()[l] {
            let mut fiber = anchor.clone();
            fiber[l] = i;
            v.push(t.get(&fiber).clone());
        }
        factors.push(v);
    }
    // rescale the first factor so the outer product is exact
    let scale = t.get(&anchor).pow((n as i32) - 1).recip();
    for c in factors[0].iter_mut() {
        *c *= &scale;
    }
    let rebuilt = ConcreteTensor::outer(&factors)?;
    assert_eq!(&rebuilt, t, "vanishing minors must force the rank-one identity");
    Ok(Decomposability::Decomposable { factors })
}

/// Hilbert function of `I_2(A)` in degree `t` by the closed formula:
/// ideal part `C(prod r_i + t - 1, t) - prod C(r_i + t - 1, t)`, quotient
/// part `prod C(r_i + t - 1, t)`.
pub fn hilbert_formula(sizes: &[u32], t: u32) -> (BigInt, BigInt) {
    let total: BigInt = sizes.iter().map(|&r| BigInt::from(r)).product();
    let ambient = binomial(total + BigInt::from(t) - 1, BigInt::from(t));
    let quotient: BigInt = sizes
        .iter()
        .map(|&r| binomial(BigInt::from(r) + BigInt::from(t) - 1, BigInt::from(t)))
        .product();
    (ambient - &quotient, quotient)
}

/// Grade of `I_2(A)` for the generic box: `prod r_i - sum r_i + (n - 1)`.
pub fn grade_formula(sizes: &[u32]) -> i64 {
    let prod: i64 = sizes.iter().map(|&r| r as i64).product();
    let sum: i64 = sizes.iter().map(|&r| r as i64).sum();
    prod - sum + sizes.len() as i64 - 1
}

/// The localization map about `pivot` kills the minors: for every minor the
/// numerator of its image, after clearing the pivot power, is the zero
/// polynomial. The image of `x_p` is the monomial taking the pivot tuple and
/// replacing one slot at a time by the coordinates of `p`.
pub fn phi_kills_minors(a: &BoxMatrix, pivot: &[u32]) -> Result<bool> {
    if !a.is_generic() {
        return Err(Error::Invalid("the localization map is defined for generic boxes".into()));
    }
    if pivot.len() != a.shape().ndim()
        || pivot.iter().zip(a.shape().sizes()).any(|(&i, &r)| i == 0 || i > r)
    {
        return Err(Error::Invalid(format!("pivot {pivot:?} outside the box")));
    }
    let ring = a.ring().clone();
    let mut sub = Substitution::new(&ring, ring.clone());
    for p in a.shape().positions() {
        let mut img = ring.one();
        for (l, &i) in p.iter().enumerate() {
            let mut slot = pivot.to_vec();
            slot[l] = i;
            img = img.mul(&ring.var_named(&VarName::x(&slot))?);
        }
        let pos = ring.table.require(&VarName::x(&p))?;
        sub.set(pos, img);
    }
    for m in a.all_minors() {
        if !m.substitute(&sub)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
