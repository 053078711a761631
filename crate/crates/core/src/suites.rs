//! Named verification suites, their corpora, and the brute-force oracles.
//!
//! Each suite replays one module's invariants at a requested scale and
//! returns a structured report; the CLI `verify` subcommand and the
//! acceptance tests both drive these. Wall time is kept out of the
//! serialized report so identical runs emit identical bytes.

use crate::analyzer::{
    classify_non_cut, clip_to_ranges, component_count, intersect_cells, puncture, puncture_scene,
    IntersectGeom, Scene,
};
use crate::closed_set::{mk_closed_set, ClosedSet1D, Component};
use crate::coding::{
    build_hat, build_j, build_tilde, extract_base_homeo, gen_dset, lift_hat_homeo,
    lift_tilde_homeo, validate_dset, LiftError,
};
use crate::complex::{CellGeom, CellLabel, GeoComplex};
use crate::invariants::{
    component_matching_witness, decide_h1, decide_r1, decide_r1_witness, extract_t, mirror_set,
    PatternEntry, UVPattern,
};
use crate::order::{encode_order, check_encoding, verify_encoding, LinearOrderSpec};
use crate::pl::{Orientation, PLHomeo1D};
use crate::raster::{min_component_gap, raster_oracle};
use crate::rational::{rat, Rational};
use crate::turbulence::{
    build_f, displacement_entry, displacement_profile, fscale, rect, sigma_eval_logical,
    sigma_verify, sigma_verify_impl, stripe_span, IntSeq, CONNECTOR_SAMPLES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// Wall time stays out of the serialized report so that identical runs
    /// produce identical bytes.
    #[serde(skip)]
    pub wall_seconds: f64,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            cases: 0,
            failures: Vec::new(),
            wall_seconds: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, case: impl Into<String>, expected: impl fmt::Debug, actual: impl fmt::Debug, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure {
                case: case.into(),
                expected: format!("{:?}", expected),
                actual: format!("{:?}", actual),
            });
        }
    }

    fn check_true(&mut self, case: impl Into<String>, ok: bool) {
        self.check(case, true, ok, ok);
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteName {
    Encoder,
    Invariants,
    Hat,
    Tilde,
    J,
    Turbulence,
    Topology,
}

pub const ALL_SUITES: [SuiteName; 7] = [
    SuiteName::Encoder,
    SuiteName::Invariants,
    SuiteName::Hat,
    SuiteName::Tilde,
    SuiteName::J,
    SuiteName::Turbulence,
    SuiteName::Topology,
];

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SuiteName::Encoder => "encoder",
            SuiteName::Invariants => "invariants",
            SuiteName::Hat => "hat",
            SuiteName::Tilde => "tilde",
            SuiteName::J => "j",
            SuiteName::Turbulence => "turbulence",
            SuiteName::Topology => "topology",
        };
        write!(f, "{}", s)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(String);

impl FromStr for SuiteName {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "encoder" => SuiteName::Encoder,
            "invariants" => SuiteName::Invariants,
            "hat" => SuiteName::Hat,
            "tilde" => SuiteName::Tilde,
            "j" => SuiteName::J,
            "turbulence" => SuiteName::Turbulence,
            "topology" => SuiteName::Topology,
            other => return Err(UnknownSuite(other.to_string())),
        })
    }
}

/// Run one suite at the given scale. The scale parameter is interpreted per
/// suite (maximum order size, grid denominator, or random case count); the
/// seed fixes all random choices.
pub fn run_suite(name: SuiteName, max_size: u32, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut report = match name {
        SuiteName::Encoder => suite_encoder(max_size),
        SuiteName::Invariants => suite_invariants(max_size, seed),
        SuiteName::Hat => suite_hat(max_size, seed),
        SuiteName::Tilde => suite_tilde(max_size, seed),
        SuiteName::J => suite_j(max_size),
        SuiteName::Turbulence => suite_turbulence(max_size, seed),
        SuiteName::Topology => suite_topology(max_size, seed),
    };
    report.wall_seconds = start.elapsed().as_secs_f64();
    report
}

pub fn run_all(max_size: u32, seed: u64) -> Vec<SuiteReport> {
    ALL_SUITES
        .iter()
        .map(|&name| run_suite(name, max_size, seed))
        .collect()
}

// ---------------------------------------------------------------------------
// Corpora and random generators
// ---------------------------------------------------------------------------

/// Every canonical set with at most `max_components` components whose
/// coordinates lie on the grid {0, 1/d, …, 1}.
pub fn grid_sets(denominator: i64, max_components: usize) -> Vec<ClosedSet1D> {
    let grid: Vec<Rational> = (0..=denominator).map(|k| rat(k, denominator)).collect();
    let mut out = Vec::new();
    for c in 1..=max_components {
        for mask in 0u32..(1u32 << c) {
            let coords_needed = c + mask.count_ones() as usize;
            if coords_needed > grid.len() {
                continue;
            }
            for combo in Combinations::new(grid.len(), coords_needed) {
                let mut items = Vec::with_capacity(c);
                let mut next = 0usize;
                for j in 0..c {
                    if mask >> j & 1 == 1 {
                        items.push(Component::Interval(
                            grid[combo[next]].clone(),
                            grid[combo[next + 1]].clone(),
                        ));
                        next += 2;
                    } else {
                        items.push(Component::Point(grid[combo[next]].clone()));
                        next += 1;
                    }
                }
                out.push(mk_closed_set(items).expect("grid components are canonical"));
            }
        }
    }
    out
}

pub fn single_component_grid_sets(denominator: i64) -> Vec<ClosedSet1D> {
    grid_sets(denominator, 1)
}

/// Lexicographic k-of-n index combinations.
struct Combinations {
    n: usize,
    indices: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            indices: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.indices.clone();
        let k = self.indices.len();
        if k == 0 {
            self.done = true;
            return Some(current);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.indices[i] != i + self.n - k {
                self.indices[i] += 1;
                for j in (i + 1)..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

pub fn random_canonical_set(
    rng: &mut ChaCha8Rng,
    denominator: i64,
    max_components: usize,
) -> ClosedSet1D {
    loop {
        let c = rng.gen_range(1..=max_components);
        let mut coords: Vec<i64> = Vec::new();
        let mut shapes: Vec<bool> = Vec::new();
        let mut needed = 0usize;
        for _ in 0..c {
            let interval = rng.gen_bool(0.4);
            shapes.push(interval);
            needed += if interval { 2 } else { 1 };
        }
        if needed > (denominator + 1) as usize {
            continue;
        }
        while coords.len() < needed {
            let v = rng.gen_range(0..=denominator);
            if !coords.contains(&v) {
                coords.push(v);
            }
        }
        coords.sort();
        let mut items = Vec::with_capacity(c);
        let mut next = 0usize;
        for &interval in &shapes {
            if interval {
                items.push(Component::Interval(
                    rat(coords[next], denominator),
                    rat(coords[next + 1], denominator),
                ));
                next += 2;
            } else {
                items.push(Component::Point(rat(coords[next], denominator)));
                next += 1;
            }
        }
        return mk_closed_set(items).expect("sorted distinct grid coordinates");
    }
}

/// A random PL self-homeomorphism with up to `max_inner` interior
/// breakpoints on the 1/denominator grid.
pub fn random_pl(rng: &mut ChaCha8Rng, max_inner: usize, denominator: i64) -> PLHomeo1D {
    let inner = rng.gen_range(0..=max_inner);
    let mut xs: Vec<i64> = Vec::new();
    while xs.len() < inner {
        let v = rng.gen_range(1..denominator);
        if !xs.contains(&v) {
            xs.push(v);
        }
    }
    xs.sort();
    let mut ys: Vec<i64> = Vec::new();
    while ys.len() < inner {
        let v = rng.gen_range(1..denominator);
        if !ys.contains(&v) {
            ys.push(v);
        }
    }
    ys.sort();
    let reversing = rng.gen_bool(0.5);
    if reversing {
        ys.reverse();
    }
    let mut pts = vec![(
        Rational::zero(),
        if reversing {
            Rational::one()
        } else {
            Rational::zero()
        },
    )];
    for (x, y) in xs.iter().zip(ys.iter()) {
        pts.push((rat(*x, denominator), rat(*y, denominator)));
    }
    pts.push((
        Rational::one(),
        if reversing {
            Rational::zero()
        } else {
            Rational::one()
        },
    ));
    let orientation = if reversing {
        Orientation::Reversing
    } else {
        Orientation::Preserving
    };
    PLHomeo1D::new(orientation, pts).expect("sorted distinct grid breakpoints")
}

pub fn random_intseq(rng: &mut ChaCha8Rng, len: usize, max_abs: i64) -> IntSeq {
    IntSeq::new((0..len).map(|_| rng.gen_range(-max_abs..=max_abs)).collect())
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            go(items, k - 1, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let mut items: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    go(&mut items, n, &mut out);
    out
}

// ---------------------------------------------------------------------------
// The brute-force ambient-homeomorphism oracle
// ---------------------------------------------------------------------------

/// Search the two monotone component matchings directly: point↔point,
/// interval↔interval, in spatial order or reversed, with 0 and 1 forced to
/// stay boundary. A candidate is accepted only if the assembled map carries
/// A exactly onto B, so every positive answer is self-certifying.
pub fn r1_oracle(a: &ClosedSet1D, b: &ClosedSet1D) -> Option<PLHomeo1D> {
    for orientation in [Orientation::Preserving, Orientation::Reversing] {
        if let Some(h) = try_monotone_match(a, b, orientation) {
            return Some(h);
        }
    }
    None
}

fn try_monotone_match(
    a: &ClosedSet1D,
    b: &ClosedSet1D,
    orientation: Orientation,
) -> Option<PLHomeo1D> {
    let ca = a.components();
    let cb = b.components();
    if ca.len() != cb.len() {
        return None;
    }
    let n = ca.len();
    let zero = Rational::zero();
    let one = Rational::one();
    let mut pins: Vec<(Rational, Rational)> = Vec::new();
    for (i, src) in ca.iter().enumerate() {
        let dst = match orientation {
            Orientation::Preserving => &cb[i],
            Orientation::Reversing => &cb[n - 1 - i],
        };
        if src.is_interval() != dst.is_interval() {
            return None;
        }
        match orientation {
            Orientation::Preserving => {
                pins.push((src.left().clone(), dst.left().clone()));
                pins.push((src.right().clone(), dst.right().clone()));
            }
            Orientation::Reversing => {
                pins.push((src.left().clone(), dst.right().clone()));
                pins.push((src.right().clone(), dst.left().clone()));
            }
        }
    }
    match orientation {
        Orientation::Preserving => {
            pins.push((zero.clone(), zero.clone()));
            pins.push((one.clone(), one.clone()));
        }
        Orientation::Reversing => {
            pins.push((zero.clone(), one.clone()));
            pins.push((one.clone(), zero.clone()));
        }
    }
    pins.sort_by(|x, y| x.0.cmp(&y.0));
    pins.dedup();
    let h = PLHomeo1D::new(orientation, pins).ok()?;
    if &h.image(a) == b {
        Some(h)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Packed pairwise agreement (the criterion-3 engine)
// ---------------------------------------------------------------------------

fn pack_pattern(p: &UVPattern) -> u64 {
    let mut packed: u64 = (p.entries.len() as u64) << 56;
    assert!(p.entries.len() <= 18, "pattern too long to pack");
    for (i, e) in p.entries.iter().enumerate() {
        let bits: u64 = match e {
            PatternEntry::U => 0b001,
            PatternEntry::V {
                touches_0,
                touches_1,
            } => 0b100 | (*touches_0 as u64) << 1 | *touches_1 as u64,
        };
        packed |= bits << (3 * i);
    }
    packed
}

fn pack_signature(a: &ClosedSet1D) -> u32 {
    let comps = a.components();
    assert!(comps.len() <= 8);
    let mut packed: u32 = (comps.len() as u32) << 16;
    for (i, c) in comps.iter().enumerate() {
        packed |= (c.is_interval() as u32) << i;
    }
    packed |= (a.contains(&Rational::zero()) as u32) << 12;
    packed |= (a.contains(&Rational::one()) as u32) << 13;
    packed
}

/// Precomputed per-set data for the pairwise loops.
pub struct R1Corpus {
    pub sets: Vec<ClosedSet1D>,
    patterns: Vec<UVPattern>,
    packed_pattern: Vec<u64>,
    packed_mirror_pattern: Vec<u64>,
    packed_sig: Vec<u32>,
    packed_mirror_sig: Vec<u32>,
}

impl R1Corpus {
    pub fn new(sets: Vec<ClosedSet1D>) -> Self {
        let patterns: Vec<UVPattern> = sets.iter().map(extract_t).collect();
        let packed_pattern: Vec<u64> = patterns.iter().map(pack_pattern).collect();
        let packed_mirror_pattern: Vec<u64> = sets
            .iter()
            .map(|a| pack_pattern(&extract_t(&mirror_set(a))))
            .collect();
        let packed_sig: Vec<u32> = sets.iter().map(pack_signature).collect();
        let packed_mirror_sig: Vec<u32> =
            sets.iter().map(|a| pack_signature(&mirror_set(a))).collect();
        R1Corpus {
            sets,
            patterns,
            packed_pattern,
            packed_mirror_pattern,
            packed_sig,
            packed_mirror_sig,
        }
    }

    /// The decider's verdict, evaluated on precomputed patterns.
    pub fn decider_verdict(&self, i: usize, j: usize) -> bool {
        self.packed_pattern[i] == self.packed_pattern[j]
            || self.packed_pattern[i] == self.packed_mirror_pattern[j]
    }

    /// The oracle's verdict: one of the two monotone matchings exists.
    pub fn oracle_verdict(&self, i: usize, j: usize) -> bool {
        self.packed_sig[i] == self.packed_sig[j]
            || self.packed_sig[i] == self.packed_mirror_sig[j]
    }

    pub fn pattern(&self, i: usize) -> &UVPattern {
        &self.patterns[i]
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AgreementStats {
    pub sets: usize,
    pub pairs: u64,
    pub positives: u64,
    pub disagreements: u64,
    pub witness_failures: u64,
    pub spot_checks: u64,
    pub spot_check_failures: u64,
}

/// Compare the pattern decider against the monotone-matching oracle on every
/// unordered pair, verify a PL witness for every positive verdict, and
/// re-run a seeded sample of pairs through the unabridged call paths.
///
/// Pairs are independent, so the sweep runs in parallel; the stats are sums,
/// so the result does not depend on scheduling.
pub fn r1_agreement(corpus: &R1Corpus, seed: u64, spot_checks: u64) -> AgreementStats {
    use rayon::prelude::*;
    let n = corpus.sets.len();
    let mut stats = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut local = AgreementStats::default();
            for j in (i + 1)..n {
                local.pairs += 1;
                let dec = corpus.decider_verdict(i, j);
                let orc = corpus.oracle_verdict(i, j);
                if dec != orc {
                    local.disagreements += 1;
                    continue;
                }
                if dec {
                    local.positives += 1;
                    let orientation = if corpus.packed_pattern[i] == corpus.packed_pattern[j] {
                        Orientation::Preserving
                    } else {
                        Orientation::Reversing
                    };
                    let witness =
                        component_matching_witness(&corpus.sets[i], &corpus.sets[j], orientation);
                    match witness {
                        Some(h) if h.image(&corpus.sets[i]) == corpus.sets[j] => {}
                        _ => local.witness_failures += 1,
                    }
                }
            }
            local
        })
        .reduce(AgreementStats::default, |mut a, b| {
            a.pairs += b.pairs;
            a.positives += b.positives;
            a.disagreements += b.disagreements;
            a.witness_failures += b.witness_failures;
            a
        });
    stats.sets = n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..spot_checks {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        stats.spot_checks += 1;
        let a = &corpus.sets[i];
        let b = &corpus.sets[j];
        let full_decider = decide_r1(a, b);
        let full_oracle = r1_oracle(a, b).is_some();
        if full_decider != corpus.decider_verdict(i, j) || full_oracle != corpus.oracle_verdict(i, j)
        {
            stats.spot_check_failures += 1;
        }
        if full_decider {
            match decide_r1_witness(a, b) {
                Some(h) if &h.image(a) == b => {}
                _ => stats.spot_check_failures += 1,
            }
        }
    }
    stats
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

fn suite_encoder(max_size: u32) -> SuiteReport {
    let mut report = SuiteReport::new("encoder");
    let n_max = max_size.clamp(1, 7) as usize;

    for n in 1..=n_max.min(6) {
        for ranks in permutations(n) {
            let spec = LinearOrderSpec::new(n, ranks.clone()).unwrap();
            let ok = verify_encoding(&spec);
            report.check(format!("verify_encoding n={} ranks={:?}", n, ranks), true, ok, ok);
        }
    }
    if n_max >= 7 {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let all = permutations(7);
        for _ in 0..500 {
            let ranks = all[rng.gen_range(0..all.len())].clone();
            let spec = LinearOrderSpec::new(7, ranks.clone()).unwrap();
            report.check_true(
                format!("verify_encoding n=7 ranks={:?}", ranks),
                verify_encoding(&spec),
            );
        }
    }

    // Removed intervals tile [0,1] up to A_R: grid scan at 1/256.
    for n in 2..=n_max.min(4) {
        for ranks in permutations(n) {
            let spec = LinearOrderSpec::new(n, ranks.clone()).unwrap();
            let (removed, set) = encode_order(&spec);
            let mut ok = true;
            for k in 0..=256 {
                let x = rat(k, 256);
                let in_closure = removed
                    .intervals()
                    .iter()
                    .any(|iv| iv.a <= x && x <= iv.b);
                let in_set = set.contains(&x);
                if !in_closure && !in_set {
                    ok = false;
                }
            }
            report.check_true(format!("closure cover n={} ranks={:?}", n, ranks), ok);
        }
    }

    // Enumeration independence: every enumeration of the same order gives an
    // ambient-equivalent set.
    for n in 1..=n_max.min(5) {
        let mut first: Option<ClosedSet1D> = None;
        let mut ok = true;
        for ranks in permutations(n) {
            let spec = LinearOrderSpec::new(n, ranks).unwrap();
            let (_, set) = encode_order(&spec);
            match &first {
                None => first = Some(set),
                Some(f) => {
                    if !decide_r1(f, &set) {
                        ok = false;
                    }
                }
            }
        }
        report.check_true(format!("enumeration independence n={}", n), ok);
    }

    // Composed with the decider: encoded chains are equivalent iff the sizes
    // agree.
    let chains: Vec<(usize, ClosedSet1D)> = (1..=n_max.min(6))
        .map(|n| (n, encode_order(&LinearOrderSpec::chain(n)).1))
        .collect();
    for (n, an) in &chains {
        for (m, am) in &chains {
            let verdict = decide_r1(an, am);
            report.check(
                format!("chain law |R|={} |R'|={}", n, m),
                n == m,
                verdict,
                verdict == (n == m),
            );
        }
    }

    // Negative control: swapping two removed intervals breaks the check.
    if n_max >= 3 {
        let spec = LinearOrderSpec::new(3, vec![2, 1, 3]).unwrap();
        let (removed, set) = encode_order(&spec);
        let mut intervals = removed.intervals().to_vec();
        let (a0, b0) = (intervals[0].a.clone(), intervals[0].b.clone());
        let (a1, b1) = (intervals[1].a.clone(), intervals[1].b.clone());
        intervals[0].a = a1;
        intervals[0].b = b1;
        intervals[1].a = a0;
        intervals[1].b = b0;
        let corrupted = crate::order::RemovedIntervals::from_intervals(intervals);
        report.check(
            "corrupted removal rejected",
            false,
            check_encoding(&spec, &corrupted, &set),
            !check_encoding(&spec, &corrupted, &set),
        );
    }
    report
}

fn suite_invariants(max_size: u32, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("invariants");
    let denominator = max_size.clamp(4, 12) as i64;
    let corpus = R1Corpus::new(grid_sets(denominator, 4));

    // Mirror law over the whole corpus.
    let mut mirror_ok = true;
    for a in &corpus.sets {
        if extract_t(&mirror_set(a)) != extract_t(a).mirrored() {
            mirror_ok = false;
        }
    }
    report.check_true(
        format!("mirror law, denominator {} ({} sets)", denominator, corpus.sets.len()),
        mirror_ok,
    );

    // The relation is an equivalence on a smaller exhaustive corpus.
    let small = R1Corpus::new(grid_sets(denominator.min(6), 3));
    let n = small.sets.len();
    let mut reflexive = true;
    let mut symmetric = true;
    for i in 0..n {
        reflexive &= small.decider_verdict(i, i);
        for j in 0..n {
            symmetric &= small.decider_verdict(i, j) == small.decider_verdict(j, i);
        }
    }
    report.check_true(format!("reflexive on {} sets", n), reflexive);
    report.check_true(format!("symmetric on {} sets", n), symmetric);
    let mut transitive = true;
    for i in 0..n {
        for j in 0..n {
            if !small.decider_verdict(i, j) {
                continue;
            }
            for k in 0..n {
                if small.decider_verdict(j, k) && !small.decider_verdict(i, k) {
                    transitive = false;
                }
            }
        }
    }
    report.check_true(format!("transitive on {} sets", n), transitive);

    // Decider vs oracle, all pairs, witnesses verified.
    let stats = r1_agreement(&corpus, seed, 20_000);
    report.check(
        format!("oracle agreement on {} pairs", stats.pairs),
        0u64,
        stats.disagreements,
        stats.disagreements == 0,
    );
    report.check(
        format!("witnesses on {} positives", stats.positives),
        0u64,
        stats.witness_failures,
        stats.witness_failures == 0,
    );
    report.check(
        format!("full-path spot checks ({})", stats.spot_checks),
        0u64,
        stats.spot_check_failures,
        stats.spot_check_failures == 0,
    );

    // Ambient equivalence refines plain homeomorphism.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b9);
    let mut implication = true;
    for _ in 0..2000 {
        let i = rng.gen_range(0..corpus.sets.len());
        let j = rng.gen_range(0..corpus.sets.len());
        if corpus.decider_verdict(i, j) && !decide_h1(&corpus.sets[i], &corpus.sets[j]) {
            implication = false;
        }
    }
    report.check_true("r1 implies h1 on sampled pairs", implication);
    report
}

fn suite_hat(max_size: u32, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("hat");
    let cases = (max_size as usize).clamp(1, 16) * 25;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let a = random_canonical_set(&mut rng, 12, 4);
        let f = random_pl(&mut rng, 3, 24);
        let b = f.image(&a);
        match lift_hat_homeo(&f, &a, &b) {
            Ok(lift) => {
                let hat_b = build_hat(&b);
                report.check(
                    format!("case {}: cell bijection", case),
                    hat_b.cells().len(),
                    lift.cell_map.len(),
                    lift.cell_map.len() == hat_b.cells().len(),
                );
                match extract_base_homeo(&lift.map, 6) {
                    Ok(extraction) => {
                        let mut agrees = extraction.error_bound.is_zero();
                        for (u, _) in f.breakpoints() {
                            if extraction.map.eval(u).unwrap() != f.eval(u).unwrap() {
                                agrees = false;
                            }
                        }
                        report.check_true(format!("case {}: base round trip", case), agrees);
                    }
                    Err(e) => report.check(format!("case {}: extraction", case), "ok", e, false),
                }
            }
            Err(e) => report.check(format!("case {}: lift", case), "ok", e, false),
        }
    }
    // Negative controls.
    let a = ClosedSet1D::points(&[Rational::zero()]).unwrap();
    let b = ClosedSet1D::points(&[rat(1, 2)]).unwrap();
    report.check_true(
        "mismatched image rejected",
        matches!(
            lift_hat_homeo(&PLHomeo1D::identity(), &a, &b),
            Err(LiftError::ImageMismatch)
        ),
    );
    let swap = crate::evaluable::EvaluableHomeo::coordinate_swap(crate::complex::unit_box(2));
    report.check_true(
        "floor breaker rejected",
        matches!(
            extract_base_homeo(&swap, 6),
            Err(LiftError::FloorNotPreserved(_))
        ),
    );
    report
}

fn suite_tilde(max_size: u32, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("tilde");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = (max_size as usize).clamp(1, 12) * 5;
    let mut sets: Vec<ClosedSet1D> = vec![
        ClosedSet1D::points(&[rat(1, 2)]).unwrap(),
        ClosedSet1D::points(&[Rational::zero(), Rational::one()]).unwrap(),
        mk_closed_set(vec![Component::Interval(rat(0, 1), rat(1, 1))]).unwrap(),
    ];
    for _ in 0..count {
        sets.push(random_canonical_set(&mut rng, 12, 3));
    }

    for (si, a) in sets.iter().enumerate() {
        for depth in 1..=3u32 {
            let dset = match gen_dset(a, depth) {
                Ok(d) => d,
                Err(e) => {
                    report.check(format!("set {} depth {}: dset", si, depth), "ok", e, false);
                    continue;
                }
            };
            report.check_true(
                format!("set {} depth {}: dset valid", si, depth),
                validate_dset(&dset).is_ok(),
            );
            let tilde = build_tilde(a, depth).unwrap();
            report.check(
                format!("set {} depth {}: connected", si, depth),
                1usize,
                component_count(&tilde),
                component_count(&tilde) == 1,
            );

            // Every isolated-point cell is incident to exactly one cone
            // segment and is a non-cut vertex.
            let scene = Scene::new(&tilde);
            let mut incidence_ok = true;
            let mut non_cut_ok = true;
            for idx in tilde.cells_with_label(|l| matches!(l, CellLabel::Dset)) {
                let p = match &tilde.cells()[idx].geom {
                    CellGeom::Point(p) => p.clone(),
                    _ => unreachable!("dset cells are points"),
                };
                let cones = tilde
                    .cells()
                    .iter()
                    .filter(|c| {
                        matches!(c.label, Some(CellLabel::Cone))
                            && crate::analyzer::cell_contains(&c.geom, &p)
                    })
                    .count();
                if cones != 1 {
                    incidence_ok = false;
                }
                let non_cut = classify_non_cut(&scene, &[p]).unwrap();
                if non_cut.len() != 1 {
                    non_cut_ok = false;
                }
            }
            report.check_true(
                format!("set {} depth {}: one cone per dset point", si, depth),
                incidence_ok,
            );
            report.check_true(
                format!("set {} depth {}: dset points non-cut", si, depth),
                non_cut_ok,
            );

            // Accumulation neighborhoods disconnect: a position slab around a
            // floor point with ≥ 2 dset points above it, cut below the apex.
            let eps = Rational::pow2(-(depth as i64 + 1));
            let mut slab_checked = 0usize;
            let mut slab_ok = true;
            for c in a.components() {
                let p = c.left();
                let above = dset
                    .points
                    .iter()
                    .filter(|(pos, _)| (pos - p).abs() <= eps)
                    .count();
                if above < 2 {
                    continue;
                }
                slab_checked += 1;
                let ranges = vec![
                    (p - &eps, p + &eps),
                    (Rational::zero(), Rational::one()),
                    (Rational::zero(), rat(1, 2)),
                ];
                match clip_to_ranges(&tilde, &ranges) {
                    Some(neighborhood) => {
                        if component_count(&neighborhood) < 2 {
                            slab_ok = false;
                        }
                    }
                    None => slab_ok = false,
                }
            }
            if slab_checked > 0 {
                report.check_true(
                    format!(
                        "set {} depth {}: {} accumulation slabs disconnect",
                        si, depth, slab_checked
                    ),
                    slab_ok,
                );
            }
        }
    }

    // Transport through random maps; either a verified bijection or an
    // honestly reported net failure.
    for case in 0..count {
        let a = random_canonical_set(&mut rng, 12, 3);
        let f = random_pl(&mut rng, 2, 12);
        let b = f.image(&a);
        match lift_tilde_homeo(&f, &a, &b, 2) {
            Ok(lift) => {
                report.check(
                    format!("transport case {}: bijection size", case),
                    lift.transported.cells().len(),
                    lift.cell_map.len(),
                    lift.cell_map.len() == lift.transported.cells().len(),
                );
            }
            Err(LiftError::NetFailure { .. }) => {
                report.check_true(format!("transport case {}: net failure reported", case), true);
            }
            Err(e) => report.check(format!("transport case {}", case), "ok", e, false),
        }
    }
    // Identity transport is the identity bijection.
    let a = ClosedSet1D::points(&[rat(1, 3), rat(2, 3)]).unwrap();
    let lift = lift_tilde_homeo(&PLHomeo1D::identity(), &a, &a, 2).unwrap();
    report.check_true(
        "identity transport",
        lift.transported == build_tilde(&a, 2).unwrap(),
    );
    report
}

fn suite_j(max_size: u32) -> SuiteReport {
    let mut report = SuiteReport::new("j");
    let denominator = max_size.clamp(2, 12) as i64;
    let corpus = single_component_grid_sets(denominator);
    for (si, a) in corpus.iter().enumerate() {
        for depth in 1..=3u32 {
            let complex = build_j(a, depth).unwrap();
            let dset_count = complex.count_label(|l| matches!(l, CellLabel::Dset));
            let mut scene = Scene::new(&complex);
            let before = scene.component_count();
            report.check(
                format!("set {} depth {}: connected before", si, depth),
                1usize,
                before,
                before == 1,
            );
            let result = puncture_scene(&mut scene, &crate::coding::default_apex(3)).unwrap();
            report.check(
                format!("set {} depth {}: apex puncture", si, depth),
                dset_count + 1,
                result.component_count_after,
                result.component_count_after == dset_count + 1,
            );

            // Dichotomy: one component holds the floor cube and the A-cones;
            // each remaining component is one dset point with its punctured
            // cone segment, whose floor vertex is its unique non-cut vertex
            // among the sampled candidates.
            let (labels, _) = scene.component_labels();
            let floor_idx = complex.cells_with_label(|l| matches!(l, CellLabel::FloorCube))[0];
            let floor_component = labels[floor_idx];
            let mut dichotomy = true;
            let mut witness_ok = true;
            for idx in complex.cells_with_label(|l| matches!(l, CellLabel::Dset)) {
                if labels[idx] == floor_component {
                    dichotomy = false;
                    continue;
                }
                let members = labels.iter().filter(|&&l| l == labels[idx]).count();
                if members != 2 {
                    dichotomy = false;
                }
                let p = match &complex.cells()[idx].geom {
                    CellGeom::Point(p) => p.clone(),
                    _ => unreachable!(),
                };
                // Candidate points of this component: the dset floor vertex
                // and the midpoint of its cone segment.
                let apex = crate::coding::default_apex(3);
                let mid: Vec<Rational> = p
                    .iter()
                    .zip(apex.iter())
                    .map(|(u, v)| &(u + v) / &rat(2, 1))
                    .collect();
                let non_cut = classify_non_cut(&scene, &[p.clone(), mid]).unwrap();
                if non_cut != vec![p] {
                    witness_ok = false;
                }
            }
            report.check_true(format!("set {} depth {}: dichotomy", si, depth), dichotomy);
            report.check_true(
                format!("set {} depth {}: unique non-cut witness", si, depth),
                witness_ok,
            );
        }
    }
    report
}

fn suite_turbulence(max_size: u32, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("turbulence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = (max_size as usize).clamp(1, 16) * 5;
    let tol = Rational::pow2(-30);

    for case in 0..cases {
        let len = rng.gen_range(2..=6);
        let x = random_intseq(&mut rng, len, 3);
        let window = if rng.gen_bool(0.5) { 2 } else { 4 };
        let gadget = build_f(&x, window).unwrap();
        report.check(
            format!("case {}: two components", case),
            2usize,
            component_count(&gadget.complex),
            component_count(&gadget.complex) == 2,
        );

        // The junction is the unique triple point of the T.
        let i0 = gadget
            .complex
            .restrict(|l| matches!(l, CellLabel::I0 | CellLabel::Junction))
            .unwrap();
        let junction = vec![Rational::zero(), rat(1, 2)];
        let r = puncture(&i0, &junction).unwrap();
        report.check(
            format!("case {}: junction puncture", case),
            3usize,
            r.component_count_after,
            r.is_cut && r.component_count_after == 3,
        );

        // And the three arm tips are exactly the non-cut vertices of I₀.
        let tips = vec![
            vec![rat(-1, 1), rat(1, 2)],
            vec![Rational::zero(), Rational::zero()],
            vec![Rational::zero(), Rational::one()],
        ];
        let scene = Scene::new(&i0);
        let mut candidates = tips.clone();
        candidates.push(junction.clone());
        let non_cut = classify_non_cut(&scene, &candidates).unwrap();
        report.check(
            format!("case {}: I0 non-cut tips", case),
            3usize,
            non_cut.len(),
            non_cut == tips,
        );

        // A shifted partner with |Δ_n| ≤ window/2: exact cell action.
        let y = IntSeq::new(
            x.values
                .iter()
                .map(|v| v + rng.gen_range(-(window as i64 / 2)..=window as i64 / 2))
                .collect(),
        );
        match sigma_verify(&x, &y, window, &tol) {
            Ok(rep) => report.check(
                format!("case {}: sigma cell action", case),
                0usize,
                rep.mismatch_count,
                rep.ok,
            ),
            Err(e) => report.check(format!("case {}: sigma verify", case), "ok", e, false),
        }

        // Logical round trip through σ and back.
        let mut round_ok = true;
        for n in 1..=len {
            let (xl, xr) = stripe_span(n);
            let mid = &(&xl + &xr) / &rat(2, 1);
            for px in [xl, mid, xr] {
                let z = rat(rng.gen_range(-4..=4), 2);
                let (qx, qz) = sigma_eval_logical(&x, &y, &px, &z).unwrap();
                if sigma_eval_logical(&y, &x, &qx, &qz).unwrap() != (px.clone(), z) {
                    round_ok = false;
                }
            }
        }
        report.check_true(format!("case {}: logical round trip", case), round_ok);
    }

    // Cut-point structure of the stripe component: connector interior
    // vertices are articulation points, side interiors are not.
    {
        let x = IntSeq::new(vec![0, 1, -1]);
        let gadget = build_f(&x, 4).unwrap();
        let scene = Scene::new(&gadget.complex);
        let mut cut_ok = true;
        for n in 1..x.len() {
            for j in [1, CONNECTOR_SAMPLES / 2, CONNECTOR_SAMPLES - 1] {
                let lambda = rat(j, CONNECTOR_SAMPLES);
                let p = vec![
                    crate::turbulence::connector_x(n, &lambda),
                    fscale(&crate::turbulence::connector_z(&x, n, &lambda)),
                ];
                let mut trial = scene.clone();
                let r = puncture_scene(&mut trial, &p).unwrap();
                if !r.is_cut {
                    cut_ok = false;
                }
            }
        }
        report.check_true("connector interior vertices cut", cut_ok);

        let mut side_ok = true;
        for n in 1..=x.len() {
            let (xl, xr) = stripe_span(n);
            // A k index away from the connector attachments at x_n and the
            // window edges.
            let k = x.at(n) + 2;
            let r = rect(n, k).unwrap();
            let y_lo = fscale(&r.z_lo);
            let y_hi = fscale(&r.z_hi);
            let quarter = &(&(&rat(3, 1) * &y_lo) + &y_hi) / &rat(4, 1);
            let b_mid = vec![&(&xl + &xr) / &rat(2, 1), y_lo.clone()];
            let l_quarter = vec![xl.clone(), quarter.clone()];
            let r_quarter = vec![xr.clone(), quarter];
            for p in [b_mid, l_quarter, r_quarter] {
                let mut trial = scene.clone();
                let res = puncture_scene(&mut trial, &p).unwrap();
                if res.is_cut {
                    side_ok = false;
                }
            }
        }
        report.check_true("side interiors non-cut", side_ok);
    }

    // Displacement decay and its failure mode.
    {
        let n = 20;
        let x = IntSeq::new(vec![0; n]);
        let y = IntSeq::new(vec![1; n]);
        let profile = displacement_profile(&x, &y).unwrap();
        let decreasing = profile.windows(2).all(|w| w[0] > w[1]);
        report.check_true("constant difference: strictly decreasing", decreasing);
        report.check(
            "constant difference: entry 20 small",
            "< 1/50",
            profile[n - 1].to_f64(),
            profile[n - 1] < rat(1, 50),
        );

        let diverging = IntSeq::new((1..=n as i64).collect());
        let profile = displacement_profile(&x, &diverging).unwrap();
        let floor_value = &displacement_entry(&Rational::one()) - &Rational::pow2(-20);
        let bounded_below = profile.iter().all(|e| *e >= floor_value);
        report.check_true("linear difference: no decay", bounded_below);
    }

    // Mutant control: flipping the shift must be caught.
    {
        let x = IntSeq::new(vec![0, 1]);
        let y = IntSeq::new(vec![2, -1]);
        let rep = sigma_verify_impl(&x, &y, 4, &tol, true).unwrap();
        report.check(
            "flipped-shift mutant caught",
            "mismatches > 0",
            rep.mismatch_count,
            rep.mismatch_count > 0,
        );
    }
    report
}

fn suite_topology(max_size: u32, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("topology");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = (max_size as usize).clamp(1, 12);
    let resolution = 1 << 10;

    let mut complexes: Vec<(String, GeoComplex)> = Vec::new();
    for i in 0..cases {
        let a = random_canonical_set(&mut rng, 12, 2);
        complexes.push((format!("tilde {}", i), build_tilde(&a, 2).unwrap()));
        complexes.push((format!("j {}", i), build_j(&a, 2).unwrap()));
        let len = rng.gen_range(2..=5);
        let x = random_intseq(&mut rng, len, 3);
        complexes.push((format!("gadget {}", i), build_f(&x, 4).unwrap().complex));
    }
    for (name, complex) in &complexes {
        let (labels, exact) = crate::analyzer::path_components(complex);
        let rastered = raster_oracle(complex, resolution).unwrap();
        report.check(
            format!("{}: raster agreement", name),
            exact,
            rastered,
            exact == rastered,
        );
        if exact > 1 {
            let gap = min_component_gap(complex, &labels).unwrap();
            report.check_true(
                format!("{}: feature-size precondition", name),
                gap > rat(2, resolution as i64),
            );
        }
    }

    // Puncture monotonicity on sampled vertices.
    let mut monotone = true;
    for (_, complex) in complexes.iter().take(6) {
        let before = component_count(complex);
        for cell in complex.cells().iter().take(12) {
            let p = match &cell.geom {
                CellGeom::Point(p) => p.clone(),
                CellGeom::Segment(a, _) => a.clone(),
                CellGeom::Rect(lo, _) => lo.clone(),
            };
            if let Ok(r) = puncture(complex, &p) {
                if r.component_count_after < before {
                    monotone = false;
                }
            }
        }
    }
    report.check_true("puncture monotonicity", monotone);

    // Rect interiors never disconnect; cross-checked against the incidence
    // semantics rather than assumed.
    let rect_cell = GeoComplex::new(
        2,
        vec![crate::complex::Cell::new(
            CellGeom::Rect(
                vec![rat(1, 4), rat(1, 4)],
                vec![rat(3, 4), rat(3, 4)],
            ),
            CellLabel::Floor,
        )],
    )
    .unwrap();
    let mut rect_rule = true;
    for _ in 0..16 {
        let p = vec![
            rat(rng.gen_range(1..=3), 4),
            rat(rng.gen_range(1..=3), 4),
        ];
        let r = puncture(&rect_cell, &p).unwrap();
        if r.is_cut {
            rect_rule = false;
        }
    }
    report.check_true("rect punctures never cut", rect_rule);

    // Incidence sanity: a segment touching a rectangle only at the removed
    // point disconnects from it.
    {
        let c = GeoComplex::new(
            2,
            vec![
                crate::complex::Cell::new(
                    CellGeom::Rect(vec![rat(0, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 2)]),
                    CellLabel::Floor,
                ),
                crate::complex::Cell::new(
                    CellGeom::Segment(vec![rat(1, 2), rat(1, 2)], vec![rat(1, 1), rat(1, 1)]),
                    CellLabel::Floor,
                ),
            ],
        )
        .unwrap();
        let r = puncture(&c, &vec![rat(1, 2), rat(1, 2)]).unwrap();
        report.check(
            "touch-point puncture separates",
            2usize,
            r.component_count_after,
            r.is_cut && r.component_count_after == 2,
        );
        let geom = intersect_cells(&c.cells()[0].geom, &c.cells()[1].geom);
        report.check_true(
            "touch geometry is a single point",
            matches!(geom, IntersectGeom::Single(_)),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_corpus_size_at_12() {
        assert_eq!(grid_sets(12, 4).len(), 33774);
        assert_eq!(single_component_grid_sets(12).len(), 91);
    }

    #[test]
    fn packed_verdicts_match_full_paths_on_small_corpus() {
        let corpus = R1Corpus::new(grid_sets(4, 2));
        let n = corpus.sets.len();
        for i in 0..n {
            for j in 0..n {
                let full = decide_r1(&corpus.sets[i], &corpus.sets[j]);
                assert_eq!(corpus.decider_verdict(i, j), full, "decider {} {}", i, j);
                let oracle = r1_oracle(&corpus.sets[i], &corpus.sets[j]).is_some();
                assert_eq!(corpus.oracle_verdict(i, j), oracle, "oracle {} {}", i, j);
            }
        }
    }

    #[test]
    fn oracle_witness_is_verified() {
        let a = ClosedSet1D::points(&[Rational::zero(), rat(1, 2)]).unwrap();
        let b = ClosedSet1D::points(&[rat(1, 2), Rational::one()]).unwrap();
        let h = r1_oracle(&a, &b).expect("mirror match");
        assert_eq!(h.image(&a), b);
        let c = ClosedSet1D::points(&[rat(1, 3)]).unwrap();
        assert!(r1_oracle(&a, &c).is_none());
    }

    #[test]
    fn all_suites_pass_at_small_scale() {
        for name in ALL_SUITES {
            let report = run_suite(name, 4, 11);
            assert!(
                report.passed(),
                "suite {} failed: {:?}",
                report.suite,
                report.failures.first()
            );
            assert!(report.cases > 0);
        }
    }

    #[test]
    fn suite_reports_are_deterministic() {
        let a = serde_json::to_string(&run_suite(SuiteName::Turbulence, 3, 5)).unwrap();
        let b = serde_json::to_string(&run_suite(SuiteName::Turbulence, 3, 5)).unwrap();
        assert_eq!(a, b);
    }
}
