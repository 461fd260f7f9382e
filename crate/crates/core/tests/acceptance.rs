//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured evidence. Run with `cargo test --test acceptance` (add
//! `-- --nocapture` to see the lines).

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use boxminors::blowup::{self, BlowupOptions};
use boxminors::boxmatrix::{BoxMatrix, BoxShape};
use boxminors::gb::{self, GbConfig};
use boxminors::segre::{self, ConcreteTensor, KernelOptions};
use boxminors::{Ideal, VarName};

const GB_BOXES: [&str; 9] =
    ["2x2", "2x3", "3x3", "2x2x2", "2x2x3", "2x3x3", "2x2x2x2", "3x4", "2x2x4"];

fn generic(spec: &str) -> BoxMatrix {
    BoxMatrix::generic(BoxShape::parse(spec).unwrap())
}

/// Criterion 1: the 2x2 minors form a Groebner basis under degrevlex with
/// index-lexicographic variables, certified by reducing every S-pair, within
/// 60 s per box.
#[test]
fn acceptance_01_minors_form_groebner_basis() {
    let cfg = GbConfig::default();
    for spec in GB_BOXES {
        let a = generic(spec);
        let minors = a.all_minors();
        let t0 = Instant::now();
        let check = gb::is_groebner_basis(&minors, &cfg).unwrap();
        let elapsed = t0.elapsed();
        assert!(check.is_basis, "{spec}: S-pair failed: {:?}", check.witness);
        assert!(elapsed < Duration::from_secs(60), "{spec} took {elapsed:?}");
        println!(
            "[criterion 1] PASS {spec}: {} minors, {} S-pairs reduced to zero in {elapsed:?}",
            minors.len(),
            check.spairs_checked
        );
    }
}

/// Criterion 2: Hilbert function formula vs standard-monomial enumeration,
/// exactly, for t <= 4.
#[test]
fn acceptance_02_hilbert_function() {
    let cfg = GbConfig::default();
    for spec in GB_BOXES {
        let a = generic(spec);
        let sizes = a.shape().sizes().to_vec();
        let gb = a.minor_ideal().groebner(&cfg).unwrap();
        for t in 0..=4 {
            let (fi, fq) = segre::hilbert_formula(&sizes, t);
            let sample = gb.standard_monomial_count(t).unwrap();
            assert_eq!(BigInt::from(sample.ideal_dim), fi, "{spec} t={t} ideal part");
            assert_eq!(BigInt::from(sample.quotient_dim), fq, "{spec} t={t} quotient part");
        }
        println!("[criterion 2] PASS {spec}: formula equals enumeration for t <= 4");
    }
}

/// Criterion 3: the eliminated Segre kernel equals the minor ideal by mutual
/// membership for 2x2, 2x3, 2x2x2, within 5 minutes total.
#[test]
fn acceptance_03_primeness_oracle() {
    let t0 = Instant::now();
    let cfg = GbConfig::default();
    for spec in ["2x2", "2x3", "2x2x2"] {
        let a = generic(spec);
        let opts = KernelOptions { position_gate: 12, gb: cfg.clone() };
        let kernel = segre::kernel_oracle(a.shape().sizes(), &opts).unwrap();
        let minors = a.minor_ideal().groebner(&cfg).unwrap();
        let kernel_local = Ideal::new(
            minors.ring().clone(),
            kernel
                .generators()
                .iter()
                .map(|g| g.rename_into(minors.ring()).unwrap())
                .collect(),
        );
        assert!(minors.contains(&kernel_local).unwrap(), "{spec}: kernel not in minors");
        assert!(kernel.contains(&minors).unwrap(), "{spec}: minors not in kernel");
        println!(
            "[criterion 3] PASS {spec}: kernel ({} gens) equals I_2(A) ({} gens)",
            kernel.generators().len(),
            minors.generators().len()
        );
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(300), "primeness oracle took {elapsed:?}");
    println!("[criterion 3] PASS total elimination time {elapsed:?}");
}

/// Criterion 4: the intersection of the face ideals equals
/// `<I_2(A), x[r...r]>` exactly, for 2x2 and 2x2x2.
#[test]
fn acceptance_04_face_ideal_intersection() {
    let cfg = GbConfig::default();
    for spec in ["2x2", "2x2x2"] {
        let a = generic(spec);
        let mut meet = a.face_ideal(1).unwrap().groebner(&cfg).unwrap();
        for axis in 2..=a.shape().ndim() {
            meet = meet.intersect(&a.face_ideal(axis).unwrap(), &cfg).unwrap();
        }
        let corner: Vec<u32> = a.shape().sizes().to_vec();
        let mut gens = a.all_minors();
        gens.push(a.ring().var_named(&VarName::x(&corner)).unwrap());
        let rhs = Ideal::new(a.ring().clone(), gens).groebner(&cfg).unwrap();
        assert!(meet.equals(&rhs).unwrap(), "{spec}: intersection identity failed");
        println!("[criterion 4] PASS {spec}: intersection of I_l equals <I_2(A), corner>");
    }
}

/// Criterion 5: `I_2(A) : x[1,...,1]^inf = I_2(A)` exactly, for 2x2 and
/// 2x2x2.
#[test]
fn acceptance_05_saturation_stability() {
    let cfg = GbConfig::default();
    for spec in ["2x2", "2x2x2"] {
        let a = generic(spec);
        let ones: Vec<u32> = a.shape().sizes().iter().map(|_| 1).collect();
        let x1 = a.ring().var_named(&VarName::x(&ones)).unwrap();
        let ideal = a.minor_ideal().groebner(&cfg).unwrap();
        let sat = ideal.saturate(&x1, &cfg).unwrap();
        assert!(sat.equals(&ideal).unwrap(), "{spec}: saturation moved the ideal");
        println!("[criterion 5] PASS {spec}: saturation by x[1,...,1] is stable");
    }
}

/// Criterion 6: codimension from Groebner-based Hilbert sampling equals the
/// closed grade formula for all acceptance boxes with at most 12 positions.
#[test]
fn acceptance_06_grade_formula() {
    let cfg = GbConfig::default();
    for spec in GB_BOXES {
        let a = generic(spec);
        if a.shape().num_positions() > 12 {
            continue;
        }
        let gb = a.minor_ideal().groebner(&cfg).unwrap();
        let (dim, _) = gb.hilbert_dimension_degree(12).unwrap();
        let codim = a.ring().nvars() - dim;
        let expected = segre::grade_formula(a.shape().sizes());
        assert_eq!(codim as i64, expected, "{spec}");
        println!("[criterion 6] PASS {spec}: codimension {codim} equals the grade formula");
    }
}

/// Criterion 7: 100 seeded rank-one tensors are certified decomposable with
/// exact witnesses; 100 perturbed ones report a nonvanishing minor.
#[test]
fn acceptance_07_decomposability() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_817);
    let mut decomposable = 0;
    let mut rejected = 0;
    for case in 0..100 {
        let ndim = rng.gen_range(2..=3usize);
        let sizes: Vec<u32> = (0..ndim).map(|_| rng.gen_range(2..=3)).collect();
        let factors: Vec<Vec<BigRational>> = sizes
            .iter()
            .map(|&r| {
                (0..r)
                    .map(|_| {
                        let v: i64 = rng.gen_range(1..=9);
                        let sign: bool = rng.gen();
                        BigRational::from_integer(BigInt::from(if sign { v } else { -v }))
                    })
                    .collect()
            })
            .collect();
        let tensor = ConcreteTensor::outer(&factors).unwrap();
        match segre::is_decomposable(&tensor).unwrap() {
            segre::Decomposability::Decomposable { factors: recovered } => {
                let rebuilt = ConcreteTensor::outer(&recovered).unwrap();
                assert_eq!(rebuilt, tensor, "case {case}: witness is not exact");
                decomposable += 1;
            }
            other => panic!("case {case}: rank-one tensor rejected: {other:?}"),
        }

        // perturb one entry by 1; with all factor entries nonzero some minor
        // through that entry picks up a nonzero value
        let mut bumped = tensor.clone();
        let pos: Vec<u32> = sizes.iter().map(|&r| rng.gen_range(1..=r)).collect();
        bumped.set(&pos, bumped.get(&pos) + BigRational::from_integer(BigInt::from(1)));
        match segre::is_decomposable(&bumped).unwrap() {
            segre::Decomposability::NotDecomposable { value, .. } => {
                assert!(!num_traits::Zero::is_zero(&value));
                rejected += 1;
            }
            other => panic!("case {case}: perturbed tensor accepted: {other:?}"),
        }
    }
    assert_eq!((decomposable, rejected), (100, 100));
    println!("[criterion 7] PASS: 100 rank-one tensors certified, 100 perturbations rejected");
}

/// Criterion 8: the blowup pipeline identities hold exactly for
/// (d, n) in {(1,1), (2,1), (1,2), (2,2), (3,1)} with 3 seeds each, in under
/// 10 minutes total.
#[test]
fn acceptance_08_blowup_pipeline() {
    let t0 = Instant::now();
    let opts = BlowupOptions::default();
    for (d, n) in [(1u32, 1u32), (2, 1), (1, 2), (2, 2), (3, 1)] {
        for seed in [1u64, 2, 3] {
            let model = blowup::build_model(d, n, seed, &opts).unwrap();
            // genericity certificate
            assert!(model.points.generic_certificate(&model.w_ring), "({d},{n}) seed {seed}");
            // syzygy identity, exactly
            for row in &model.hb.matrix {
                let mut acc = model.w_ring.zero();
                for (j, l) in row.iter().enumerate() {
                    acc = acc.add(&l.mul(&model.hb.forms[j]));
                }
                assert!(acc.is_zero(), "({d},{n}) seed {seed}: syzygy identity broken");
            }
            // signed-minor identity is checked inside hilbert_burch; rho is
            // stored and nonzero
            assert!(!num_traits::Zero::is_zero(&model.hb.rho));
            // counting identities
            let expected_relations = ((n + 1) * n / 2 * d) as usize;
            assert_eq!(model.relations.relations.len(), expected_relations);
            assert_eq!(model.relations.e_matrix.rank(), expected_relations);
            let expected_vars = ((n + 2) * (n + 1) / 2 * (d + 1)) as usize;
            assert_eq!(model.x_ring.nvars(), expected_vars);
            // all assembled generators vanish identically under x -> z_i F_j
            let report = blowup::verify_vanishing(&model, &opts).unwrap();
            assert!(report.passed(), "({d},{n}) seed {seed}: {:?}", report.failures);
        }
        println!("[criterion 8] PASS (d,n)=({d},{n}): pipeline identities hold for 3 seeds");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(600), "pipeline took {elapsed:?}");
    println!("[criterion 8] PASS total pipeline time {elapsed:?}");
}

/// Criterion 9: surface invariants. (1,1): dimension 3 and degree 3; (2,1):
/// degree 6; (2,2) may be partial but then must say so explicitly (under the
/// default budget it completes, with degree 13).
#[test]
fn acceptance_09_surface_invariants() {
    let opts = BlowupOptions::default();
    let cfg = GbConfig::default();

    let m11 = blowup::build_model(1, 1, 7, &opts).unwrap();
    let r11 = blowup::verify_surface(&m11, &cfg).unwrap();
    assert!(!r11.partial);
    assert_eq!((r11.dimension, r11.degree), (Some(3), Some(3)));
    println!("[criterion 9] PASS (1,1): dimension 3, degree 3");

    let m21 = blowup::build_model(2, 1, 7, &opts).unwrap();
    let r21 = blowup::verify_surface(&m21, &cfg).unwrap();
    assert!(!r21.partial);
    assert_eq!(r21.degree, Some(6));
    println!("[criterion 9] PASS (2,1): degree 6");

    let m22 = blowup::build_model(2, 2, 7, &opts).unwrap();
    let r22 = blowup::verify_surface(&m22, &cfg).unwrap();
    if r22.partial {
        assert!(r22.reason.is_some(), "(2,2) partiality must be explicit");
        println!("[criterion 9] PASS (2,2): partial, reason: {:?}", r22.reason);
    } else {
        assert_eq!((r22.dimension, r22.degree), (Some(3), Some(13)));
        println!("[criterion 9] PASS (2,2): full result, dimension 3, degree 13");
    }

    // the partial path itself stays honest: a starved budget must be
    // reported, not silently truncated
    let starved = GbConfig::default().with_max_spairs(3);
    let r_starved = blowup::verify_surface(&m22, &starved).unwrap();
    assert!(r_starved.partial);
    assert!(r_starved.reason.as_deref().unwrap_or("").contains("budget"));
    println!("[criterion 9] PASS: starved budget reports explicit partiality");
}

/// Criterion 10: for n = 1 the constructed box is structurally an ordinary
/// matrix of distinct variables.
#[test]
fn acceptance_10_collapse_to_matrix() {
    let opts = BlowupOptions::default();
    for d in [1u32, 2, 3] {
        let model = blowup::build_model(d, 1, 11, &opts).unwrap();
        assert_eq!(model.box_a.shape().sizes(), &[d + 1, 3, 1]);
        assert!(model.collapses_to_matrix().unwrap(), "d = {d}");
        println!("[criterion 10] PASS d={d}: box collapses to a 3x{} matrix", d + 1);
    }
}
