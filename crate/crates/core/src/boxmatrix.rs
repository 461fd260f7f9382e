//! Box-shaped matrices: position enumeration, 2x2 minors about each
//! coordinate, sub-boxes `A_l`, faces `B_l` and their ideals `I_l`, 3-D
//! sections, and the weak-box structural checks.

use std::collections::HashSet;

use num_traits::Signed;

use crate::blowup::CatalecticantPattern;
use crate::error::{Error, Result};
use crate::gb::GbConfig;
use crate::ideal::Ideal;
use crate::poly::{Polynomial, Ring, Substitution};
use crate::vars::{VarName, VarTable};

/// The box of integer tuples `1 <= i_j <= sizes[j-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxShape {
    sizes: Vec<u32>,
}

impl BoxShape {
    pub fn new(sizes: Vec<u32>) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::Invalid("a box needs at least 2 dimensions".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::Invalid("box sizes must be positive".into()));
        }
        Ok(BoxShape { sizes })
    }

    /// Parse a spec like `2x3x4`.
    pub fn parse(spec: &str) -> Result<Self> {
        let sizes = spec
            .split('x')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad box spec `{spec}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sizes)
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn ndim(&self) -> usize {
        self.sizes.len()
    }

    pub fn num_positions(&self) -> usize {
        self.sizes.iter().map(|&r| r as usize).product()
    }

    /// All positions in ascending lexicographic order, matching the variable
    /// table layout of the generic box.
    pub fn positions(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.num_positions());
        let mut tuple = vec![1u32; self.ndim()];
        loop {
            out.push(tuple.clone());
            let mut k = self.ndim();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if tuple[k] < self.sizes[k] {
                    tuple[k] += 1;
                    break;
                }
                tuple[k] = 1;
            }
        }
    }

    pub fn position_index(&self, tuple: &[u32]) -> usize {
        debug_assert_eq!(tuple.len(), self.ndim());
        let mut idx = 0usize;
        for (k, &i) in tuple.iter().enumerate() {
            debug_assert!(1 <= i && i <= self.sizes[k]);
            idx = idx * self.sizes[k] as usize + (i as usize - 1);
        }
        idx
    }
}

/// A box of positions each holding a variable. Generic boxes map position
/// `(i_1,...,i_n)` to `x[i_1,...,i_n]` injectively; weak boxes may repeat
/// variables across positions.
#[derive(Debug, Clone)]
pub struct BoxMatrix {
    shape: BoxShape,
    entries: Vec<VarName>,
    ring: Ring,
}

impl BoxMatrix {
    /// The generic box of pairwise-distinct indeterminates, under degrevlex
    /// with the variables ordered lexicographically by index tuple.
    pub fn generic(shape: BoxShape) -> Self {
        let table = VarTable::generic_box(shape.sizes());
        let entries = table.names().to_vec();
        BoxMatrix { shape, entries, ring: Ring::degrevlex(table) }
    }

    /// A box with an explicit position -> variable assignment over `ring`.
    pub fn with_entries(shape: BoxShape, entries: Vec<VarName>, ring: Ring) -> Result<Self> {
        if entries.len() != shape.num_positions() {
            return Err(Error::Invalid("entry count does not match the box".into()));
        }
        for v in &entries {
            ring.table.require(v)?;
        }
        Ok(BoxMatrix { shape, entries, ring })
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entry(&self, tuple: &[u32]) -> &VarName {
        &self.entries[self.shape.position_index(tuple)]
    }

    pub fn entries(&self) -> &[VarName] {
        &self.entries
    }

    /// True when the position -> variable map is injective with entries
    /// `x[i_1,...,i_n]` matching positions.
    pub fn is_generic(&self) -> bool {
        self.shape.positions().iter().all(|p| *self.entry(p) == VarName::x(p))
    }

    fn entry_poly(&self, tuple: &[u32]) -> Polynomial {
        self.ring.var_named(self.entry(tuple)).expect("entry is in the table")
    }

    /// All nonzero 2x2 minors about the `l`-th coordinate (`axis` 1-based),
    /// deduplicated up to sign, leading coefficient normalized to +1, in
    /// lexicographic (position-pair) order.
    pub fn minors_about(&self, axis: usize) -> Result<Vec<Polynomial>> {
        if axis == 0 || axis > self.shape.ndim() {
            return Err(Error::AxisOutOfRange { axis, ndim: self.shape.ndim() });
        }
        let l = axis - 1;
        let positions = self.shape.positions();
        let mut seen: HashSet<String> = HashSet::new();
        let mut out = Vec::new();
        for (a, p) in positions.iter().enumerate() {
            for q in positions.iter().skip(a + 1) {
                if p[l] == q[l] {
                    continue;
                }
                let mut p_swap = p.clone();
                let mut q_swap = q.clone();
                p_swap[l] = q[l];
                q_swap[l] = p[l];
                let minor = self
                    .entry_poly(p)
                    .mul(&self.entry_poly(q))
                    .sub(&self.entry_poly(&p_swap).mul(&self.entry_poly(&q_swap)));
                if minor.is_zero() {
                    continue;
                }
                let minor = if minor.leading_coeff().unwrap().is_negative() {
                    minor.neg()
                } else {
                    minor
                };
                if seen.insert(minor.to_string()) {
                    out.push(minor);
                }
            }
        }
        Ok(out)
    }

    /// Distinct 2x2 minors over all axes, in (axis, position-pair) order.
    pub fn all_minors(&self) -> Vec<Polynomial> {
        let mut seen: HashSet<String> = HashSet::new();
        let mut out = Vec::new();
        for axis in 1..=self.shape.ndim() {
            for m in self.minors_about(axis).expect("axis in range") {
                if seen.insert(m.to_string()) {
                    out.push(m);
                }
            }
        }
        out
    }

    /// The ideal of 2x2 minors `I_2(A)`.
    pub fn minor_ideal(&self) -> Ideal {
        Ideal::new(self.ring.clone(), self.all_minors())
    }

    /// The sub-box `A_l`: positions with `i_l < r_l`, same ring.
    pub fn sub_box(&self, axis: usize) -> Result<BoxMatrix> {
        if axis == 0 || axis > self.shape.ndim() {
            return Err(Error::AxisOutOfRange { axis, ndim: self.shape.ndim() });
        }
        let l = axis - 1;
        if self.shape.sizes()[l] < 2 {
            return Err(Error::Invalid(format!(
                "axis {axis} has size 1, the sub-box would be empty"
            )));
        }
        let mut sizes = self.shape.sizes().to_vec();
        sizes[l] -= 1;
        let shape = BoxShape::new(sizes)?;
        let entries = shape.positions().iter().map(|p| self.entry(p).clone()).collect();
        Ok(BoxMatrix { shape, entries, ring: self.ring.clone() })
    }

    /// Positions of the face `B_l = { i_l = r_l }`.
    pub fn face_positions(&self, axis: usize) -> Result<Vec<Vec<u32>>> {
        if axis == 0 || axis > self.shape.ndim() {
            return Err(Error::AxisOutOfRange { axis, ndim: self.shape.ndim() });
        }
        let l = axis - 1;
        let r = self.shape.sizes()[l];
        Ok(self.shape.positions().into_iter().filter(|p| p[l] == r).collect())
    }

    /// `I_l = < I_2(A_l), variables on B_l >`, in the ambient ring. When the
    /// axis has size 1 the sub-box is empty and only the face variables
    /// remain.
    pub fn face_ideal(&self, axis: usize) -> Result<Ideal> {
        if axis == 0 || axis > self.shape.ndim() {
            return Err(Error::AxisOutOfRange { axis, ndim: self.shape.ndim() });
        }
        let mut gens = if self.shape.sizes()[axis - 1] < 2 {
            Vec::new()
        } else {
            self.sub_box(axis)?.all_minors()
        };
        let mut seen: HashSet<VarName> = HashSet::new();
        for p in self.face_positions(axis)? {
            let v = self.entry(&p).clone();
            if seen.insert(v.clone()) {
                gens.push(self.ring.var_named(&v)?);
            }
        }
        Ok(Ideal::new(self.ring.clone(), gens))
    }

    /// The three families of 2-D slices of a 3-D box: `x` fixes the first
    /// coordinate, `y` the second, `z` the third.
    pub fn sections(&self) -> Result<Sections> {
        let [r1, r2, r3] = *self.shape.sizes() else {
            return Err(Error::NotThreeDimensional(self.shape.ndim()));
        };
        let section = |rows: u32, cols: u32, f: &dyn Fn(u32, u32) -> Vec<u32>| -> Vec<Vec<VarName>> {
            (1..=rows)
                .map(|a| (1..=cols).map(|b| self.entry(&f(a, b)).clone()).collect())
                .collect()
        };
        Ok(Sections {
            x: (1..=r1).map(|i| section(r2, r3, &|j, k| vec![i, j, k])).collect(),
            y: (1..=r2).map(|j| section(r1, r3, &|i, k| vec![i, j, k])).collect(),
            z: (1..=r3).map(|k| section(r1, r2, &|i, j| vec![i, j, k])).collect(),
        })
    }

    /// Run the four structural conditions of the weak-box definition.
    pub fn weak_box_check(&self, opts: &WeakBoxOptions) -> Result<WeakBoxReport> {
        if self.shape.ndim() != 3 {
            return Err(Error::NotThreeDimensional(self.shape.ndim()));
        }
        let entries_are_variables = Verdict::Pass; // entries are variables by construction

        let intersection_identity = if self.shape.num_positions() > opts.intersection_gate {
            Verdict::Skipped(format!(
                "{} positions exceed the gate of {}",
                self.shape.num_positions(),
                opts.intersection_gate
            ))
        } else {
            match self.check_intersection_identity(&opts.gb) {
                Ok(None) => Verdict::Pass,
                Ok(Some(witness)) => Verdict::Fail(format!(
                    "intersection of the I_l differs from <I_2(A), corner>: {witness}"
                )),
                Err(e) => return Err(e),
            }
        };

        let (killing_position, witness) = self.find_killing_position()?;

        let sections = self.sections()?;
        let x_classes: Vec<SectionClass> = sections.x.iter().map(|s| classify_section(s)).collect();
        let y_classes: Vec<SectionClass> = sections.y.iter().map(|s| classify_section(s)).collect();
        let z_classes: Vec<SectionClass> = sections.z.iter().map(|s| classify_section(s)).collect();
        let mut section_failures = Vec::new();
        for (i, c) in x_classes.iter().enumerate() {
            if matches!(c, SectionClass::Unrecognized) {
                section_failures.push(format!("x-section {}", i + 1));
            }
        }
        for (j, c) in y_classes.iter().enumerate() {
            if !matches!(c, SectionClass::Generic) {
                section_failures.push(format!("y-section {}", j + 1));
            }
        }
        for (k, c) in z_classes.iter().enumerate() {
            if !matches!(c, SectionClass::Generic) {
                section_failures.push(format!("z-section {}", k + 1));
            }
        }
        let sections_structural = if section_failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail(format!(
                "sections not structurally prime: {}",
                section_failures.join(", ")
            ))
        };

        Ok(WeakBoxReport {
            entries_are_variables,
            intersection_identity,
            killing_position,
            killing_witness: witness,
            sections_structural,
            x_classes,
            y_classes,
            z_classes,
        })
    }

    /// Condition (b): `<I_2(A), entry(r1,r2,r3)> = ∩_l I_l`, by mutual
    /// membership of Groebner bases. Returns `None` on equality, otherwise a
    /// description of a witness. For boxes with repeated entries a variable
    /// can sit on several faces at different positions and land in every
    /// `I_l` without being in the left side; such variables are the typical
    /// witnesses.
    fn check_intersection_identity(&self, cfg: &GbConfig) -> Result<Option<String>> {
        let corner: Vec<u32> = self.shape.sizes().to_vec();
        let mut lhs_gens = self.all_minors();
        lhs_gens.push(self.entry_poly(&corner));
        let lhs = Ideal::new(self.ring.clone(), lhs_gens).groebner(cfg)?;
        let mut meet: Option<Ideal> = None;
        for axis in 1..=self.shape.ndim() {
            let il = self.face_ideal(axis)?;
            meet = Some(match meet {
                None => il.groebner(cfg)?,
                Some(m) => m.intersect(&il, cfg)?,
            });
        }
        let meet = meet.expect("at least two axes");
        if lhs.equals(&meet)? {
            return Ok(None);
        }
        for v in self.ring.table.names() {
            let poly = self.ring.var_named(v)?;
            if meet.member(&poly)? && !lhs.member(&poly)? {
                return Ok(Some(format!("variable {v} lies in every I_l but not in the left side")));
            }
        }
        for g in meet.generators() {
            if !lhs.member(g)? {
                return Ok(Some(format!("{g} lies in the intersection but not in the left side")));
            }
        }
        Ok(Some("left side not contained in the intersection".into()))
    }

    /// Condition (c): a position whose variable, with all other variables set
    /// to zero, kills every minor.
    fn find_killing_position(&self) -> Result<(Verdict, Option<Vec<u32>>)> {
        let minors = self.all_minors();
        for p in self.shape.positions() {
            let keep = self.ring.table.require(self.entry(&p))?;
            let mut sub = Substitution::new(&self.ring, self.ring.clone());
            for pos in 0..self.ring.nvars() {
                sub.set(pos, if pos == keep { self.ring.var(pos) } else { self.ring.zero() });
            }
            if minors
                .iter()
                .all(|m| m.substitute(&sub).map(|r| r.is_zero()).unwrap_or(false))
            {
                return Ok((Verdict::Pass, Some(p)));
            }
        }
        Ok((Verdict::Fail("no single variable kills all minors".into()), None))
    }
}

#[derive(Debug, Clone)]
pub struct Sections {
    pub x: Vec<Vec<Vec<VarName>>>,
    pub y: Vec<Vec<Vec<VarName>>>,
    pub z: Vec<Vec<Vec<VarName>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Structural class of a 2-D section, as far as primeness of its minor ideal
/// is concerned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectionClass {
    /// Pairwise-distinct variables: a generic matrix.
    Generic,
    /// Matches the repetition pattern of `Cat(1, n-1; 3)`.
    Catalecticant(u32),
    Unrecognized,
}

impl SectionClass {
    pub fn label(&self) -> String {
        match self {
            SectionClass::Generic => "generic".into(),
            SectionClass::Catalecticant(n) => format!("Cat(1,{};3)", n - 1),
            SectionClass::Unrecognized => "unrecognized".into(),
        }
    }
}

fn classify_section(section: &[Vec<VarName>]) -> SectionClass {
    let rows = section.len();
    let cols = section.first().map_or(0, Vec::len);
    let mut flat: Vec<&VarName> = Vec::with_capacity(rows * cols);
    for row in section {
        flat.extend(row.iter());
    }
    let distinct: HashSet<&VarName> = flat.iter().copied().collect();
    if distinct.len() == flat.len() {
        return SectionClass::Generic;
    }
    // candidate catalecticant: 3 rows, C(n+1,2) columns for some n
    if rows == 3 {
        if let Some(n) = (1u32..=64).find(|n| (n * (n + 1) / 2) as usize == cols) {
            let pattern = CatalecticantPattern::new(n);
            // repetition classes must match the pattern exactly, and distinct
            // pattern indices must carry distinct variables
            let mut by_index: Vec<Option<&VarName>> = vec![None; pattern.num_z() as usize];
            let mut ok = true;
            'outer: for (j, row) in section.iter().enumerate() {
                for (k, entry) in row.iter().enumerate() {
                    let l = pattern.index(j + 1, k + 1) as usize - 1;
                    match by_index[l] {
                        None => by_index[l] = Some(entry),
                        Some(v) if v == entry => {}
                        Some(_) => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                let assigned: Vec<&VarName> = by_index.into_iter().flatten().collect();
                let uniq: HashSet<&&VarName> = assigned.iter().collect();
                if uniq.len() == assigned.len() {
                    return SectionClass::Catalecticant(n);
                }
            }
        }
    }
    SectionClass::Unrecognized
}

#[derive(Debug, Clone)]
pub struct WeakBoxOptions {
    /// Skip the intersection identity above this many positions.
    pub intersection_gate: usize,
    pub gb: GbConfig,
}

impl Default for WeakBoxOptions {
    fn default() -> Self {
        WeakBoxOptions { intersection_gate: 24, gb: GbConfig::default() }
    }
}

#[derive(Debug, Clone)]
pub struct WeakBoxReport {
    pub entries_are_variables: Verdict,
    pub intersection_identity: Verdict,
    pub killing_position: Verdict,
    pub killing_witness: Option<Vec<u32>>,
    pub sections_structural: Verdict,
    pub x_classes: Vec<SectionClass>,
    pub y_classes: Vec<SectionClass>,
    pub z_classes: Vec<SectionClass>,
}

impl WeakBoxReport {
    pub fn all_passed_or_skipped(&self) -> bool {
        let ok = |v: &Verdict| !matches!(v, Verdict::Fail(_));
        ok(&self.entries_are_variables)
            && ok(&self.intersection_identity)
            && ok(&self.killing_position)
            && ok(&self.sections_structural)
    }
}

/// Count of distinct nonzero minors about one axis of a generic box:
/// `C(r_l, 2) * C(K, 2)` with `K` the number of complementary tuples.
pub fn generic_minor_count_about(sizes: &[u32], axis: usize) -> u64 {
    let l = axis - 1;
    let r = sizes[l] as u64;
    let k: u64 = sizes
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != l)
        .map(|(_, &s)| s as u64)
        .product();
    (r * (r - 1) / 2) * (k * (k - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic(spec: &str) -> BoxMatrix {
        BoxMatrix::generic(BoxShape::parse(spec).unwrap())
    }

    #[test]
    fn two_by_two_has_the_single_determinant() {
        let a = generic("2x2");
        let m = a.minors_about(1).unwrap();
        assert_eq!(m.len(), 1);
        // sign-normalized so the degrevlex leading term x[1,2]*x[2,1] has
        // coefficient +1
        assert_eq!(m[0], a.ring().parse("x[1,2]*x[2,1] - x[1,1]*x[2,2]").unwrap());
        // axis 2 regenerates the same minor, so the union has one element
        assert_eq!(a.all_minors().len(), 1);
    }

    #[test]
    fn cube_minor_census() {
        let a = generic("2x2x2");
        for axis in 1..=3 {
            assert_eq!(a.minors_about(axis).unwrap().len(), 6, "axis {axis}");
        }
        // 6 planar minors are shared by two axes each: 18 - 6 = 12 distinct
        assert_eq!(a.all_minors().len(), 12);
    }

    #[test]
    fn minor_count_formula_matches_enumeration() {
        for spec in ["2x2", "2x3", "3x3", "2x2x2", "2x2x3", "2x3x3", "3x4", "2x2x4", "2x2x2x2"] {
            let a = generic(spec);
            for axis in 1..=a.shape().ndim() {
                let expect = generic_minor_count_about(a.shape().sizes(), axis);
                let got = a.minors_about(axis).unwrap().len() as u64;
                assert_eq!(got, expect, "{spec} axis {axis}");
                // the face B_l has one position per complementary tuple
                let face: usize = a
                    .shape()
                    .sizes()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != axis - 1)
                    .map(|(_, &s)| s as usize)
                    .product();
                assert_eq!(a.face_positions(axis).unwrap().len(), face);
            }
        }
    }

    #[test]
    fn minors_space_of_cube_is_nine_dimensional() {
        let a = generic("2x2x2");
        let minors = a.all_minors();
        let refs: Vec<&Polynomial> = minors.iter().collect();
        let rank = crate::gb::coefficient_matrix(a.ring(), &refs, 2).rank();
        assert_eq!(rank, 9);
    }

    #[test]
    fn rectangular_matrix_minors_independent() {
        let a = generic("2x3");
        let minors = a.all_minors();
        assert_eq!(minors.len(), 3);
        let refs: Vec<&Polynomial> = minors.iter().collect();
        assert_eq!(crate::gb::coefficient_matrix(a.ring(), &refs, 2).rank(), 3);
    }

    #[test]
    fn face_ideal_of_2x2() {
        let a = generic("2x2");
        // A_1 is the first row, no minors; I_1 = <x[2,1], x[2,2]>
        let i1 = a.face_ideal(1).unwrap();
        let strings: Vec<String> = i1.generators().iter().map(ToString::to_string).collect();
        assert_eq!(strings, ["x[2,1]", "x[2,2]"]);
    }

    #[test]
    fn cube_face_ideals_have_expected_shape() {
        let a = generic("2x2x2");
        for axis in 1..=3 {
            let il = a.face_ideal(axis).unwrap();
            // 1 slab minor + 4 face variables
            let (quadrics, linears): (Vec<_>, Vec<_>) =
                il.generators().iter().partition(|g| g.total_degree() == 2);
            assert_eq!(quadrics.len(), 1, "axis {axis}");
            assert_eq!(linears.len(), 4, "axis {axis}");
        }
    }

    #[test]
    fn face_ideal_intersection_identity_for_cube() {
        let a = generic("2x2x2");
        let cfg = GbConfig::default();
        let mut meet = a.face_ideal(1).unwrap().groebner(&cfg).unwrap();
        for axis in 2..=3 {
            meet = meet.intersect(&a.face_ideal(axis).unwrap(), &cfg).unwrap();
        }
        let mut gens = a.all_minors();
        gens.push(a.ring().parse("x[2,2,2]").unwrap());
        let rhs = Ideal::new(a.ring().clone(), gens).groebner(&cfg).unwrap();
        assert!(meet.equals(&rhs).unwrap());
    }

    #[test]
    fn sections_of_2x3x4() {
        let a = generic("2x3x4");
        let s = a.sections().unwrap();
        assert_eq!(s.x.len(), 2);
        assert_eq!((s.x[0].len(), s.x[0][0].len()), (3, 4));
        assert_eq!(s.y.len(), 3);
        assert_eq!((s.y[0].len(), s.y[0][0].len()), (2, 4));
        assert_eq!(s.z.len(), 4);
        assert_eq!((s.z[0].len(), s.z[0][0].len()), (2, 3));
    }

    #[test]
    fn one_slab_box_has_single_x_section() {
        let a = generic("1x2x3");
        let s = a.sections().unwrap();
        assert_eq!(s.x.len(), 1);
        assert_eq!((s.x[0].len(), s.x[0][0].len()), (2, 3));
    }

    #[test]
    fn generic_cube_is_a_weak_box() {
        let a = generic("2x2x2");
        let report = a.weak_box_check(&WeakBoxOptions::default()).unwrap();
        assert!(report.entries_are_variables.passed());
        assert!(report.intersection_identity.passed());
        assert!(report.killing_position.passed());
        assert!(report.sections_structural.passed());
        assert!(report.x_classes.iter().all(|c| matches!(c, SectionClass::Generic)));
    }

    #[test]
    fn repeated_variable_in_a_section_fails_structurally() {
        // 2x2x1 box where one y-section repeats a variable
        let shape = BoxShape::new(vec![2, 2, 1]).unwrap();
        let table = VarTable::generic_box(&[2, 2, 1]);
        let ring = Ring::degrevlex(table);
        let entries = vec![
            VarName::x(&[1, 1, 1]),
            VarName::x(&[1, 2, 1]),
            VarName::x(&[1, 1, 1]), // repeat inside y-section 1
            VarName::x(&[2, 2, 1]),
        ];
        let a = BoxMatrix::with_entries(shape, entries, ring).unwrap();
        let report = a.weak_box_check(&WeakBoxOptions::default()).unwrap();
        match &report.sections_structural {
            Verdict::Fail(msg) => assert!(msg.contains("y-section 1"), "{msg}"),
            v => panic!("expected failure, got {v:?}"),
        }
    }

    #[test]
    fn degenerate_and_oversized_axis_errors() {
        let a = generic("2x2");
        assert!(a.minors_about(3).is_err());
        assert!(a.sub_box(0).is_err());
    }

    #[test]
    fn cube_basis_keeps_the_minor_leading_terms() {
        // the reduced basis of I_2(A) for the cube has the same leading-term
        // set as the 12 input minors (repeated leading terms collapse)
        let a = generic("2x2x2");
        let minors = a.all_minors();
        let gb = a.minor_ideal().groebner(&crate::gb::GbConfig::default()).unwrap();
        let lt = |ps: &[Polynomial]| -> std::collections::BTreeSet<String> {
            ps.iter()
                .map(|p| a.ring().monomial(p.leading_monomial().unwrap().clone()).to_string())
                .collect()
        };
        assert_eq!(lt(&minors), lt(gb.generators()));
        assert_eq!(gb.generators().len(), 9);
        // a proper homogeneous ideal never contains a unit
        assert!(!gb.member(&a.ring().one()).unwrap());
        for m in &minors {
            assert!(gb.member(m).unwrap());
        }
    }

    #[test]
    fn axis_permutation_symmetry() {
        // permuting box axes then generating minors equals generating then
        // relabelling variables
        let a = generic("2x3x2");
        let b = generic("3x2x2");
        let perm = [1usize, 0, 2]; // b position (i,j,k) = a position (j,i,k)
        let sub_ring = b.ring().clone();
        let mut sub = Substitution::new(a.ring(), sub_ring.clone());
        for p in a.shape().positions() {
            let mapped: Vec<u32> = perm.iter().map(|&ax| p[ax]).collect();
            let pos = a.ring().table.require(&VarName::x(&p)).unwrap();
            sub.set(pos, sub_ring.var_named(&VarName::x(&mapped)).unwrap());
        }
        let mapped: HashSet<String> = a
            .all_minors()
            .iter()
            .map(|m| {
                let img = m.substitute(&sub).unwrap();
                let img =
                    if img.leading_coeff().unwrap().is_negative() { img.neg() } else { img };
                img.to_string()
            })
            .collect();
        let direct: HashSet<String> = b.all_minors().iter().map(ToString::to_string).collect();
        assert_eq!(mapped, direct);
    }
}
