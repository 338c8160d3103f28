//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p pmlab-core --test acceptance -- --nocapture`
//! (criteria 2 and 3 carry the exact heavy arithmetic and take minutes).

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pmlab_core::spectral::{expected_multiplicities, SpectrumOptions};
use pmlab_core::verify::evaluate_combined;
use pmlab_core::*;

fn announce(label: &str, start: Instant, outcome: &str) {
    println!(
        "acceptance {label}: {outcome} ({:.2} s)",
        start.elapsed().as_secs_f64()
    );
}

struct Criterion {
    label: &'static str,
    start: Instant,
}

impl Criterion {
    fn new(label: &'static str) -> Self {
        let c = Criterion {
            label,
            start: Instant::now(),
        };
        println!("acceptance {}: running", label);
        c
    }

    fn check(&self, ok: bool, detail: &str) {
        if !ok {
            announce(self.label, self.start, &format!("FAIL — {detail}"));
            panic!("criterion {} failed: {detail}", self.label);
        }
    }

    fn done(self) {
        announce(self.label, self.start, "PASS");
    }
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn random_gamma(d: u32, max_size: usize, rng: &mut ChaCha8Rng) -> GammaSet {
    let all = compositions(d).unwrap();
    let size = rng.gen_range(1..=max_size.min(all.len()));
    GammaSet::new(d, all.into_iter().choose_multiple(rng, size)).unwrap()
}

#[test]
fn criterion_01_degree_four_block_values() {
    let c = Criterion::new("01 [degree-4-blocks]");
    let gamma =
        |members: &[(u32, u32, u32)]| GammaSet::parse(4, &members
            .iter()
            .map(|&(i, j, k)| format!("{i},{j},{k}"))
            .collect::<Vec<_>>()
            .join(";"))
        .unwrap();

    // Vertex blocks: M = [1], N = [256].
    for v in [(4, 0, 0), (0, 4, 0), (0, 0, 4)] {
        let g = gamma(&[v]);
        let m = build_m(&g).unwrap();
        c.check(m.rational_entry(0, 0) == BigRational::one(), "vertex M entry");
        let n = build_n(&g).unwrap();
        c.check(n.entry(0, 0) == &BigInt::from(256), "vertex N entry");
    }

    // Edge blocks: stored as 1/256 of an integer matrix, equal to the reduced
    // 1/128 form; the companion is the integer block itself.
    let edge_sets = [
        [(3, 1, 0), (2, 2, 0), (1, 3, 0)],
        [(3, 0, 1), (2, 0, 2), (1, 0, 3)],
        [(0, 3, 1), (0, 2, 2), (0, 1, 3)],
    ];
    let m_reduced = [[54, 27, 6], [32, 48, 32], [6, 27, 54]];
    let n_expected = [[27, 9, 3], [16, 16, 16], [3, 9, 27]];
    for set in &edge_sets {
        let g = gamma(set);
        let m = build_m(&g).unwrap();
        let n = build_n(&g).unwrap();
        for r in 0..3 {
            for cc in 0..3 {
                c.check(
                    m.rational_entry(r, cc)
                        == BigRational::new(BigInt::from(m_reduced[r][cc]), BigInt::from(128)),
                    "edge M entry",
                );
                c.check(n.entry(r, cc) == &BigInt::from(n_expected[r][cc]), "edge N entry");
            }
        }
    }

    // Interior block: 1/32 matrix and its companion.
    let g = gamma(&[(2, 1, 1), (1, 2, 1), (1, 1, 2)]);
    let m = build_m(&g).unwrap();
    let n = build_n(&g).unwrap();
    let m_reduced = [[6, 3, 3], [3, 6, 3], [3, 3, 6]];
    let n_expected = [[4, 2, 2], [2, 4, 2], [2, 2, 4]];
    for r in 0..3 {
        for cc in 0..3 {
            c.check(
                m.rational_entry(r, cc)
                    == BigRational::new(BigInt::from(m_reduced[r][cc]), BigInt::from(32)),
                "interior M entry",
            );
            c.check(
                n.entry(r, cc) == &BigInt::from(n_expected[r][cc]),
                "interior N entry",
            );
        }
    }

    c.check(c.start.elapsed().as_secs_f64() < 1.0, "runtime exceeded 1 s");
    c.done();
}

#[test]
fn criterion_02_positive_definiteness_certification() {
    let c = Criterion::new("02 [pd-certification]");
    let mut rng = ChaCha8Rng::seed_from_u64(0x9d);
    for d in 1..=16 {
        let out = verify_pd(d).unwrap();
        c.check(out.report.passed(), &format!("degree {d} did not certify"));
        // Certification implies positivity of every principal minor; spot
        // check a thousand sampled index sets per degree, exactly.
        for _ in 0..1000 {
            let g = random_gamma(d, 12, &mut rng);
            let det = build_m(&g).unwrap().det_rational().unwrap();
            c.check(
                det.is_positive(),
                &format!("nonpositive sampled minor at degree {d}: {}", g.to_text()),
            );
        }
        println!("  degree {d}: certified ({:.1} s)", c.start.elapsed().as_secs_f64());
    }
    let out = verify_pd(17).unwrap();
    c.check(out.report.passed(), "degree 17 interior route did not certify");
    let inertia = out.full_inertia.expect("inertia reported at degree 17");
    c.check(
        inertia.n_neg == 3 && inertia.n_zero == 0,
        &format!(
            "degree 17 symmetrized inertia ({}, {}, {}) differs from (168, 0, 3)",
            inertia.n_pos, inertia.n_zero, inertia.n_neg
        ),
    );
    c.check(
        c.start.elapsed().as_secs_f64() < 1800.0,
        "runtime exceeded 30 minutes",
    );
    c.done();
}

#[test]
fn criterion_03_degree_eighteen_failure_bracket() {
    let c = Criterion::new("03 [degree-18-bracket]");
    let out = verify_pd(18).unwrap();
    c.check(
        out.report.status == Status::Fail,
        "degree 18 unexpectedly certified",
    );
    let (lo, hi) = out.min_eigen_bracket.expect("bracket reported at degree 18");
    // The smallest eigenvalue is near -1.1e-7; the certified bracket must sit
    // inside the 20%-relative window around it and be negative.
    let window_lo = BigRational::from_float(-1.1e-7 * 1.2).unwrap();
    let window_hi = BigRational::from_float(-1.1e-7 * 0.8).unwrap();
    c.check(hi.is_negative(), "bracket is not negative");
    c.check(
        lo >= window_lo && hi <= window_hi,
        &format!(
            "bracket [{}, {}] escapes the 20% window around -1.1e-7",
            lo, hi
        ),
    );
    println!(
        "  certified bracket [{}, {}]",
        pmlab_core::dd::rational_to_decimal(&lo, 8),
        pmlab_core::dd::rational_to_decimal(&hi, 8)
    );
    c.done();
}

#[test]
fn criterion_04_exhaustive_interior_minors_degree_seven() {
    let c = Criterion::new("04 [interior-minors-d7]");
    let out = enumerate_principal_minors(7, Scope::Interior, Budget::Default).unwrap();
    c.check(out.report.passed(), &out.report.notes);
    c.check(
        out.subsets == (1 << 15) - 1,
        &format!("{} subsets, expected 32767", out.subsets),
    );
    c.check(out.min_det_n.is_positive(), "nonpositive minimum");
    c.check(
        c.start.elapsed().as_secs_f64() < 300.0,
        "runtime exceeded 5 minutes",
    );
    c.done();
}

#[test]
fn criterion_05_closed_form_determinant() {
    let c = Criterion::new("05 [closed-form-det]");
    for d in 1..=6 {
        let direct = build_m(&GammaSet::full(d).unwrap())
            .unwrap()
            .det_rational()
            .unwrap();
        let formula = closed_form_det(d).unwrap();
        c.check(
            direct == formula,
            &format!("degree {d}: closed form does not match exact elimination"),
        );
    }
    c.check(formula_check(6).unwrap().passed(), "formula report failed");
    c.done();
}

#[test]
fn criterion_06_minimum_determinant_conjectures() {
    let c = Criterion::new("06 [min-det-conjectures]");
    for d in 1..=6 {
        let out = min_det_search(d, Budget::Default).unwrap();
        c.check(out.report.passed(), &format!("degree {d}: {}", out.report.notes));
        c.check(
            out.result.matches_conjectured_n && out.result.matches_conjectured_m,
            &format!("degree {d}: minima differ from conjectured values"),
        );
    }
    c.done();
}

#[test]
fn criterion_07_degree_ten_spectra() {
    let c = Criterion::new("07 [degree-10-spectra]");
    let rel_close = |got: f64, want: f64| (got - want).abs() <= 6e-4 * want.abs();

    let s = spectrum(10, false).unwrap();
    let table = [
        (1.0, 3usize),
        (0.9, 3),
        (0.72, 4),
        (0.504, 5),
        (0.3024, 6),
        (0.1512, 7),
        (0.06048, 8),
        (0.01814, 9),
        (3.629e-3, 10),
        (3.629e-4, 11),
    ];
    c.check(
        s.clusters.len() == table.len(),
        &format!("{} clusters, expected 10", s.clusters.len()),
    );
    for (idx, (&(got, mult), &(want, want_mult))) in
        s.clusters.iter().zip(table.iter()).enumerate()
    {
        c.check(
            rel_close(got.to_f64(), want),
            &format!("eigenvalue {idx}: {} vs {want}", got.to_f64()),
        );
        c.check(
            mult == want_mult,
            &format!("multiplicity {idx}: {mult} vs {want_mult}"),
        );
    }
    c.check(s.warnings.is_empty(), &format!("{:?}", s.warnings));

    let s = spectrum(10, true).unwrap();
    c.check(s.total_multiplicity() == 66, "symmetrized multiplicities must sum to 66");
    let (largest, largest_mult) = s.clusters.first().copied().unwrap();
    let (second, second_mult) = s.clusters[1];
    let (smallest, smallest_mult) = s.clusters.last().copied().unwrap();
    c.check(
        rel_close(largest.to_f64(), 2.341) && largest_mult == 1,
        &format!("largest {} x{largest_mult}", largest.to_f64()),
    );
    c.check(
        rel_close(second.to_f64(), 2.308) && second_mult == 2,
        &format!("second {} x{second_mult}", second.to_f64()),
    );
    c.check(
        rel_close(smallest.to_f64(), 5.923e-4) && smallest_mult == 1,
        &format!("smallest {} x{smallest_mult}", smallest.to_f64()),
    );
    c.done();
}

#[test]
fn criterion_08_interlacing_desk_scale() {
    let c = Criterion::new("08 [interlacing-d12]");
    let out = check_interlacing(12, SpectrumOptions::default()).unwrap();
    c.check(out.report.passed(), &out.report.notes);
    // Multiplicity sequence per degree.
    for d in 1..=12u32 {
        let mults: Vec<usize> = out
            .rows
            .iter()
            .filter(|r| r.degree == d)
            .map(|r| r.multiplicity)
            .collect();
        c.check(
            mults == expected_multiplicities(d),
            &format!("degree {d}: multiplicities {mults:?}"),
        );
    }
    c.done();
}

#[test]
fn criterion_09_property_suites() {
    let c = Criterion::new("09 [property-suites]");

    // Scaling identity on a thousand random index sets per degree.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for d in 1..=8u32 {
        for _ in 0..1000 {
            let g = random_gamma(d, 8, &mut rng);
            let det_n = build_n(&g).unwrap().det_scaled().unwrap();
            let det_m_scaled = build_m(&g).unwrap().det_scaled().unwrap();
            let binom_prod: BigInt = g.members().iter().map(multinomial).product();
            c.check(
                det_n.clone() * binom_prod == det_m_scaled,
                &format!("scaling identity broke on {}", g.to_text()),
            );
        }
    }
    println!("  scaling identity: 8000 index sets");

    // Block factorization product law.
    for _ in 0..500 {
        let d = rng.gen_range(1..=6);
        let g = random_gamma(d, 8, &mut rng);
        let product = block_factorize(&g).unwrap().det_product().unwrap();
        let direct = build_m(&g).unwrap().det_rational().unwrap();
        c.check(
            product == direct,
            &format!("block product law broke on {}", g.to_text()),
        );
    }
    println!("  block product law: 500 index sets");

    // Lattice maximum brute force.
    for d in 1..=10 {
        c.check(
            lemma_max_check(d).unwrap().passed(),
            &format!("lattice maximum failed at degree {d}"),
        );
    }
    println!("  lattice maximum: degrees 1..=10");

    // Singleton minima and pair dominance, exhaustive.
    for d in 1..=7 {
        c.check(
            small_gamma_min_check(d).unwrap().passed(),
            &format!("singleton/pair check failed at degree {d}"),
        );
    }
    println!("  singleton and pair scans: degrees 1..=7");

    // Configuration sampling.
    for d in 1..=8 {
        let rep = theorem4_check(d, 1000, 0xACCE).unwrap();
        c.check(rep.passed(), &format!("degree {d}: {}", rep.notes));
    }
    println!("  configuration sampling: 6 families, degrees 1..=8");

    // Univariate edge block: every minor nonnegative, principal minors positive.
    for d in 2..=7u32 {
        let m = univariate_collocation(d).unwrap();
        let n = m.dim();
        let idx: Vec<usize> = (0..n).collect();
        for size in 1..=n {
            for rows in idx.iter().copied().combinations(size) {
                for cols in idx.iter().copied().combinations(size) {
                    let det = bareiss_det(&m.integer_matrix().minor_matrix(&rows, &cols)).unwrap();
                    c.check(
                        !det.is_negative(),
                        &format!("negative minor at degree {d}: rows {rows:?} cols {cols:?}"),
                    );
                    if rows == cols {
                        c.check(
                            det.is_positive(),
                            &format!("nonpositive principal minor at degree {d}: {rows:?}"),
                        );
                    }
                }
            }
        }
    }
    println!("  univariate total nonnegativity: degrees 2..=7");
    c.done();
}

#[test]
fn criterion_10_constrained_interpolation() {
    let c = Criterion::new("10 [constrained-interpolation]");

    // Fixed zero boundary, unit targets at the three interior points.
    let free = GammaSet::interior(4).unwrap();
    let fixed: BTreeMap<Composition, BigRational> = GammaSet::full(4)
        .unwrap()
        .members()
        .iter()
        .filter(|m| !free.contains(m))
        .map(|m| (*m, BigRational::zero()))
        .collect();
    let targets: BTreeMap<Composition, BigRational> = free
        .members()
        .iter()
        .map(|m| (*m, BigRational::one()))
        .collect();
    let sol = solve_constrained(4, &free, &fixed, &targets).unwrap();
    for member in free.members() {
        c.check(
            sol.coefficients[member] == rat(8, 3),
            "coefficients differ from 8/3",
        );
        let value = evaluate_combined(4, &sol.coefficients, &fixed, member).unwrap();
        c.check(value == BigRational::one(), "nonzero residual");
    }

    // Randomized evaluate-then-solve round trips.
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    for _ in 0..60 {
        let d = rng.gen_range(1..=10u32);
        let all = compositions(d).unwrap();
        let free_size = rng.gen_range(0..=all.len().min(12));
        let free = GammaSet::new(
            d,
            all.iter().copied().choose_multiple(&mut rng, free_size),
        )
        .unwrap();
        let chosen: BTreeMap<Composition, BigRational> = all
            .iter()
            .map(|m| (*m, rat(rng.gen_range(-20..=20), rng.gen_range(1..=7))))
            .collect();
        let fixed: BTreeMap<Composition, BigRational> = all
            .iter()
            .filter(|m| !free.contains(m))
            .map(|m| (*m, chosen[m].clone()))
            .collect();
        let free_coeffs: BTreeMap<Composition, BigRational> = free
            .members()
            .iter()
            .map(|m| (*m, chosen[m].clone()))
            .collect();
        let targets: BTreeMap<Composition, BigRational> = free
            .members()
            .iter()
            .map(|m| {
                (*m, evaluate_combined(d, &free_coeffs, &fixed, m).unwrap())
            })
            .collect();
        let sol = solve_constrained(d, &free, &fixed, &targets).unwrap();
        c.check(
            sol.coefficients == free_coeffs,
            &format!("round trip failed at degree {d}"),
        );
    }
    c.done();
}

// Small combinations helper for the minor scan; avoids pulling a crate into
// the test for a 6-element index set.
trait Combinations: Iterator + Sized {
    fn combinations(self, k: usize) -> CombinationsIter<Self::Item>;
}

impl<I: Iterator> Combinations for I
where
    I::Item: Clone,
{
    fn combinations(self, k: usize) -> CombinationsIter<I::Item> {
        let pool: Vec<I::Item> = self.collect();
        let indices: Vec<usize> = (0..k).collect();
        CombinationsIter {
            pool,
            indices,
            first: true,
            k,
        }
    }
}

struct CombinationsIter<T> {
    pool: Vec<T>,
    indices: Vec<usize>,
    first: bool,
    k: usize,
}

impl<T: Clone> Iterator for CombinationsIter<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        let n = self.pool.len();
        if self.k > n {
            return None;
        }
        if self.first {
            self.first = false;
        } else {
            // Advance the last index that can still move right.
            let mut i = self.k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if self.indices[i] != i + n - self.k {
                    break;
                }
            }
            self.indices[i] += 1;
            for j in (i + 1)..self.k {
                self.indices[j] = self.indices[j - 1] + 1;
            }
        }
        Some(self.indices.iter().map(|&i| self.pool[i].clone()).collect())
    }
}
