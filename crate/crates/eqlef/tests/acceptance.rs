//! Acceptance gate: nine exact criteria, one line per criterion.
//!
//! Every comparison is exact (integer or rational arithmetic, tolerance
//! zero). Run with `--nocapture` to see the pass lines.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use eqlef::burnside::{ch0, ch0_inverse, product, BurnsideElement, LinearSphereMap};
use eqlef::complex::{shapes, GComplex};
use eqlef::fundcat::{Analysis, AnalysisOptions};
use eqlef::group::{catalog, conjugacy_classes_of_subgroups, FiniteGroup, Subgroup};
use eqlef::lefschetz::{
    self, absolute_cover_lefschetz, character, character_preimage, flagship, incidence_lefschetz,
    lambda, verify_fixed_point_theorem, LambdaElement,
};
use eqlef::linalg::QMat;
use eqlef::perm::Perm;
use eqlef::splitting::{
    geometric_modules, random_filtered_module, split_components, splitting_roundtrip,
};
use eqlef::subdivision::{circle_degree_map, MapModel};
use eqlef::twisted::{
    conjugation_averaged_lefschetz, lemma13_suite, random_endo, random_pi_elt, twisted_classes,
    Rng,
};
use eqlef::{io, Error};

fn analyze<'a>(x: &'a GComplex, map: &'a MapModel) -> Analysis<'a> {
    Analysis::new(x, map, &AnalysisOptions::default()).unwrap()
}

fn total_augmentation(lam: &LambdaElement) -> BigRational {
    lam.augmentation().values().sum()
}

#[test]
fn criterion_1_classical_reduction() {
    // Trivial group: the total augmentation of the invariant must equal the
    // homology-trace Lefschetz number from the rational homology oracle.
    let cases: Vec<(GComplex, Vec<usize>)> = vec![
        (shapes::disk(), vec![0, 1, 2]),
        (shapes::disk(), vec![0, 0, 0]),
        (shapes::two_points(), vec![0, 1]),
        (shapes::two_points(), vec![1, 0]),
        (shapes::octahedron(), vec![0, 1, 3, 4, 5, 2]),
        (shapes::octahedron(), vec![1, 0, 2, 3, 4, 5]),
        (shapes::rp2(), (0..6).collect()),
    ];
    assert!(cases.len() >= 5);
    for (x, images) in &cases {
        let start = Instant::now();
        let f = MapModel::new(x, 0, images.clone()).unwrap();
        let an = analyze(x, &f);
        let lam = lambda(&an).unwrap();
        assert_eq!(total_augmentation(&lam), f.classical_lefschetz(), "{}", x.name);
        assert!(start.elapsed().as_secs_f64() < 1.0, "{} too slow", x.name);
    }
    println!("PASS criterion 1: classical reduction on {} complexes", cases.len());
}

#[test]
fn criterion_2_circle_degree_oracle() {
    for d in [-1i64, 0, 2, 3] {
        let f = circle_degree_map(8, d).unwrap();
        let an = analyze(f.base(), &f);
        let lam = lambda(&an).unwrap();
        let sum = lam.get(0);
        assert_eq!(sum.terms.len(), (d - 1).unsigned_abs() as usize, "degree {d}");
        assert_eq!(
            sum.augmentation(),
            BigRational::from_integer(BigInt::from(1 - d)),
            "degree {d}"
        );
    }
    println!("PASS criterion 2: circle degree maps have |d-1| classes and augmentation 1-d");
}

#[test]
fn criterion_3_two_route_equality() {
    // Corpus: every preserved object of every flagship plus the circle maps.
    let mut corpus: Vec<(GComplex, MapModel)> = Vec::new();
    for (x, f, _) in flagship::all() {
        corpus.push((x, f));
    }
    for (x, f) in &corpus {
        let an = analyze(x, f);
        let lam = lambda(&an).unwrap();
        for oi in 0..an.objects.len() {
            if an.objects[oi].object.preserved {
                assert_eq!(lam.get(oi), incidence_lefschetz(&an, oi).unwrap(), "{}", x.name);
            }
        }
    }
    for d in [-1i64, 0, 2, 3] {
        let f = circle_degree_map(8, d).unwrap();
        let an = analyze(f.base(), &f);
        assert_eq!(lambda(&an).unwrap().get(0), incidence_lefschetz(&an, 0).unwrap());
    }
    // 100 randomized twisted chain endomorphisms: the refined trace equals
    // the conjugation-averaged evaluation.
    let (x, f, _) = flagship::north_south_flow();
    let an = analyze(&x, &f);
    let free = (0..an.objects.len())
        .find(|&oi| an.objects[oi].object.subgroup.order() == 1)
        .unwrap();
    let host = an.objects[free].aut.as_ref().unwrap();
    let classes = twisted_classes(host).unwrap();
    let mut rng = Rng::new(0xacc3);
    for _ in 0..100 {
        let endo = random_endo(host, &mut rng, 3);
        let samples = vec![
            random_pi_elt(host, &mut rng),
            random_pi_elt(host, &mut rng),
            random_pi_elt(host, &mut rng),
        ];
        let refined = endo.refined_lefschetz(host, &classes);
        let averaged = conjugation_averaged_lefschetz(host, &classes, &endo, &samples);
        assert_eq!(refined, averaged);
    }
    println!("PASS criterion 3: refined trace equals incidence route on corpus and 100 random endos");
}

#[test]
fn criterion_4_trace_identity_suite() {
    // Three extensions with different pi1 / Weyl structure, 50 random
    // instances per identity each.
    let edges: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
    let refl = Perm::new(vec![0, 5, 4, 3, 2, 1]).unwrap();
    let hex = GComplex::new("hex-refl", catalog::cyclic(2), 6, &edges, &[refl]).unwrap();
    let hex_id = MapModel::new(&hex, 0, (0..6).collect()).unwrap();
    let an1 = analyze(&hex, &hex_id);
    let free1 = an1.find_object(0, 0).unwrap();
    lemma13_suite(an1.objects[free1].aut.as_ref().unwrap(), 11, 50).unwrap();

    let rp2 = shapes::rp2();
    let rp2_id = MapModel::new(&rp2, 0, (0..6).collect()).unwrap();
    let an2 = analyze(&rp2, &rp2_id);
    lemma13_suite(an2.objects[0].aut.as_ref().unwrap(), 13, 50).unwrap();

    let (x, f, _) = flagship::octahedron_quarter_turn();
    let an3 = analyze(&x, &f);
    let free3 = an3.find_object(0, 0).unwrap();
    lemma13_suite(an3.objects[free3].aut.as_ref().unwrap(), 17, 50).unwrap();
    println!("PASS criterion 4: trace identities (1)-(6) on 50 random instances over 3 extensions");
}

#[test]
fn criterion_5_fixed_point_theorem_on_flagships() {
    let start = Instant::now();
    for (x, f, data) in flagship::all() {
        let an = analyze(&x, &f);
        let report = verify_fixed_point_theorem(&an, &data).unwrap();
        assert!(report.lambda_match, "{}: lambda != lambda_loc", x.name);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "flagships took {elapsed} s");
    println!("PASS criterion 5: lambda = lambda_loc exactly on all flagships ({elapsed:.2} s)");
}

#[test]
fn criterion_6_character_identities() {
    // ch(lambda) at each object equals the rational Lefschetz class of the
    // whole-component cover, on every flagship.
    for (x, f, _) in flagship::all() {
        let an = analyze(&x, &f);
        let lam = lambda(&an).unwrap();
        let ch = character(&an, &lam).unwrap();
        for (&yi, sum) in &ch {
            assert_eq!(*sum, absolute_cover_lefschetz(&an, yi).unwrap(), "{}", x.name);
        }
    }
    // Injectivity by triangular elimination: the character roundtrips on
    // random elements, and a zero image forces the zero element.
    let (x, f, _) = flagship::north_south_flow();
    let an = analyze(&x, &f);
    let mut rng = Rng::new(0xc6);
    for _ in 0..20 {
        let mut lam = LambdaElement::zero();
        for oi in 0..an.objects.len() {
            if !an.objects[oi].object.preserved {
                continue;
            }
            let host = an.objects[oi].aut.as_ref().unwrap();
            let classes = twisted_classes(host).unwrap();
            for _ in 0..rng.below(3) {
                let a = classes.canon(&random_pi_elt(host, &mut rng));
                lam.add_term(oi, a, BigRational::from_integer(BigInt::from(rng.int_in(-3, 3))));
            }
        }
        let ch = character(&an, &lam).unwrap();
        assert_eq!(character_preimage(&an, &ch).unwrap(), lam);
        if ch.values().all(|s| s.is_zero()) {
            assert!(lam.is_zero());
        }
    }
    let zero_ch = character(&an, &LambdaElement::zero()).unwrap();
    assert!(character_preimage(&an, &zero_ch).unwrap().is_zero());
    println!("PASS criterion 6: character matches cover traces and is injective on the corpus");
}

#[test]
fn criterion_7_splitting_shadow() {
    for (x, f, _) in flagship::all() {
        let classes = conjugacy_classes_of_subgroups(&x.group).unwrap();
        for m in geometric_modules(&x, &f, &classes).unwrap() {
            m.check_triangular().unwrap();
            let total: BigRational = m.split().iter().map(|b| b.trace()).sum();
            assert_eq!(total, m.trace(), "{}", x.name);
        }
        let an = analyze(&x, &f);
        let _ = split_components(&an);
    }
    let mut rng = Rng::new(0x4a7);
    for _ in 0..50 {
        splitting_roundtrip(&random_filtered_module(&mut rng, false)).unwrap();
    }
    println!("PASS criterion 7: trace additivity over type blocks and 50 splitting roundtrips");
}

/// Independent oracle for the Burnside product: decompose the product G-set
/// G/H x G/K into orbits by stabilizers.
fn product_oracle(
    g: &FiniteGroup,
    classes: &eqlef::group::SubgroupClasses,
    h: &Subgroup,
    k: &Subgroup,
) -> BurnsideElement {
    let ch_cosets = g.left_cosets(h);
    let ck_cosets = g.left_cosets(k);
    let mut coset_of_h: Vec<usize> = vec![0; g.order()];
    let mut coset_of_k: Vec<usize> = vec![0; g.order()];
    for (i, c) in ch_cosets.iter().enumerate() {
        for &e in c {
            coset_of_h[e] = i;
        }
    }
    for (i, c) in ck_cosets.iter().enumerate() {
        for &e in c {
            coset_of_k[e] = i;
        }
    }
    let mut seen = vec![vec![false; ck_cosets.len()]; ch_cosets.len()];
    let mut out = BurnsideElement::zero(classes);
    for a in 0..ch_cosets.len() {
        for b in 0..ck_cosets.len() {
            if seen[a][b] {
                continue;
            }
            // Orbit of the pair (aH, bK) under the diagonal action.
            let mut orbit = Vec::new();
            for s in 0..g.order() {
                let pa = coset_of_h[g.mul(s, ch_cosets[a][0])];
                let pb = coset_of_k[g.mul(s, ck_cosets[b][0])];
                if !seen[pa][pb] {
                    seen[pa][pb] = true;
                    orbit.push((pa, pb));
                }
            }
            // Stabilizer of the representative pair.
            let mut elems: Vec<usize> = (0..g.order())
                .filter(|&s| {
                    coset_of_h[g.mul(s, ch_cosets[a][0])] == a
                        && coset_of_k[g.mul(s, ck_cosets[b][0])] == b
                })
                .collect();
            elems.sort_unstable();
            let stab = Subgroup { elems };
            out = out.add(&BurnsideElement::orbit(classes, &stab));
        }
    }
    out
}

#[test]
fn criterion_8_burnside_ring() {
    let groups = catalog::groups_of_order_up_to_12();
    assert!(!groups.is_empty());
    for g in &groups {
        let classes = conjugacy_classes_of_subgroups(g).unwrap();
        let n = classes.classes.len();
        // ch0 is a ring homomorphism: marks of a product are the pointwise
        // products, checked against the explicit orbit decomposition of the
        // product G-set; the unit maps to the all-ones vector.
        let unit_marks = ch0(g, &classes, &BurnsideElement::unit(&classes));
        assert!(unit_marks.marks.iter().all(|m| m.is_one()), "{}", g.name);
        for i in 0..n {
            for j in 0..n {
                let a = BurnsideElement::orbit(&classes, &classes.classes[i].representative);
                let b = BurnsideElement::orbit(&classes, &classes.classes[j].representative);
                let prod = product(g, &classes, &a, &b);
                let oracle = product_oracle(
                    g,
                    &classes,
                    &classes.classes[i].representative,
                    &classes.classes[j].representative,
                );
                assert_eq!(prod.coeffs, oracle.coeffs, "{} at ({i},{j})", g.name);
                let ma = ch0(g, &classes, &a);
                let mb = ch0(g, &classes, &b);
                let mp = ch0(g, &classes, &prod);
                for t in 0..n {
                    assert_eq!(mp.marks[t], &ma.marks[t] * &mb.marks[t], "{}", g.name);
                }
            }
        }
        // ch0 / ch0_inverse roundtrip on random elements.
        let mut rng = Rng::new(g.order() as u64);
        for _ in 0..10 {
            let coeffs: Vec<BigInt> =
                (0..n).map(|_| BigInt::from(rng.int_in(-3, 3))).collect();
            let e = BurnsideElement { coeffs };
            let back = ch0_inverse(g, &classes, &ch0(g, &classes, &e)).unwrap();
            assert_eq!(back.coeffs, e.coeffs, "{}", g.name);
        }
    }
    // Odd-order groups: the equivariant degree of -id on the regular
    // representation is -[K/K] (and of id is +[K/K]).
    let odd: Vec<FiniteGroup> = vec![
        catalog::cyclic(3),
        catalog::cyclic(5),
        catalog::cyclic(7),
        catalog::cyclic(9),
        catalog::cyclic(11),
        catalog::direct_product(&catalog::cyclic(3), &catalog::cyclic(3)),
    ];
    for g in &odd {
        let n = g.order();
        let classes = conjugacy_classes_of_subgroups(g).unwrap();
        // Permutation matrices of left translation on the group itself.
        let reps: Vec<QMat> = g
            .generators
            .iter()
            .map(|p| {
                let gi = (0..n).find(|&i| &g.elements[i] == p).unwrap();
                let mut m = QMat::zero(n, n);
                for j in 0..n {
                    m[(g.mul(gi, j), j)] = BigRational::one();
                }
                m
            })
            .collect();
        let mut minus_id = QMat::zero(n, n);
        for i in 0..n {
            minus_id[(i, i)] = -BigRational::one();
        }
        let lsm = LinearSphereMap::new(g.clone(), &reps, minus_id).unwrap();
        let deg = lsm.equivariant_degree(&classes).unwrap();
        assert_eq!(deg.coeffs, BurnsideElement::unit(&classes).neg().coeffs, "{}", g.name);
        let id_map = LinearSphereMap::new(g.clone(), &reps, QMat::identity(n)).unwrap();
        let deg = id_map.equivariant_degree(&classes).unwrap();
        assert_eq!(deg.coeffs, BurnsideElement::unit(&classes).coeffs, "{}", g.name);
    }
    println!(
        "PASS criterion 8: ch0 ring homomorphism and roundtrip on {} groups; odd-order degrees are +/-[K/K]",
        groups.len()
    );
}

#[test]
fn criterion_9_determinism_across_seeds() {
    for (x, f, data) in flagship::all() {
        let mut reports: Vec<String> = Vec::new();
        for seed in [0u64, 17, 2026, 90_001, 31_415_926] {
            let opts = AnalysisOptions { seed, assertions: Vec::new() };
            let an = Analysis::new(&x, &f, &opts).unwrap();
            let lam = lambda(&an).unwrap();
            let loc = lefschetz::lambda_local(&an, &data).unwrap();
            let ch = character(&an, &lam).unwrap();
            let classes = conjugacy_classes_of_subgroups(&x.group).unwrap();
            let l0 = lefschetz::lefschetz_burnside_class(&x, &f, &classes).unwrap();
            let mut report = BTreeMap::new();
            report.insert("lambda", io::lambda_json(&an, &lam));
            report.insert("lambda_loc", io::lambda_json(&an, &loc));
            report.insert("character", io::character_json(&an, &ch));
            report.insert("burnside", io::burnside_json(&classes, &l0));
            reports.push(serde_json::to_string(&report).unwrap());
        }
        assert!(reports.iter().all(|r| *r == reports[0]), "{}", x.name);
    }
    println!("PASS criterion 9: bit-identical reports across 5 vertex-order seeds");
}

#[test]
fn error_contract_spot_checks() {
    // Singular fixed-point data is rejected, not silently miscounted.
    let (x, f, mut data) = flagship::north_south_flow();
    data[0].id_minus_df = QMat::zero(1, 1);
    let an = analyze(&x, &f);
    assert!(matches!(
        lefschetz::lambda_local(&an, &data),
        Err(Error::SingularFixedPoint(_))
    ));
    let _ = num_traits::Zero::is_zero(&BigInt::zero());
}
