//! Span closure of the incidence 2-boxes under the generating tangles.
//!
//! Every element of the generated planar algebra is invariant under the
//! classical automorphism group, so vectors are stored in orbit coordinates.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::space::LevelSpace;
use super::tangle::{rotate, star, Generator, Plan};
use super::tensor::{SpinTensor, TensorSubspace};
use super::PlanarError;
use crate::exact::{EchelonBasis, ExactMatrix, GaussianRational, ModGaussian, Scalar};
use crate::graph::{component_incidence, ColoredGraph};
use crate::symmetry::{automorphism_group, Permutation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    /// Gaussian rationals throughout, with every pairwise product tested.
    Exact,
    /// Gaussian integers modulo 2^61 − 1, with sampled products. Every kept
    /// vector is a genuine element, so ranks are lower bounds.
    Modular,
    /// Exact for small tuple spaces, modular otherwise.
    #[default]
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureConfig {
    pub max_level: usize,
    pub buffer: usize,
    /// Stop growing a level once its basis reaches this size.
    pub cap: Option<usize>,
    pub arithmetic: Arithmetic,
    /// Rerun with `buffer + 1` and compare.
    pub check_convergence: bool,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        Self { max_level: 4, buffer: 1, cap: None, arithmetic: Arithmetic::Auto, check_convergence: false }
    }
}

impl ClosureConfig {
    pub fn new(max_level: usize) -> Result<Self, PlanarError> {
        let cfg = Self { max_level, ..Self::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_buffer(mut self, buffer: usize) -> Self {
        self.buffer = buffer;
        self
    }

    pub fn with_arithmetic(mut self, arithmetic: Arithmetic) -> Self {
        self.arithmetic = arithmetic;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn with_convergence_check(mut self) -> Self {
        self.check_convergence = true;
        self
    }

    pub fn validate(&self) -> Result<(), PlanarError> {
        if self.max_level < 2 {
            return Err(PlanarError::Config(format!("max level must be at least 2, got {}", self.max_level)));
        }
        Ok(())
    }

    pub fn ceiling(&self) -> usize {
        self.max_level + self.buffer
    }
}

/// Dimensions `c_0..c_M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDims {
    pub dims: Vec<usize>,
    /// `None` when the convergence check was not requested.
    pub converged: Option<bool>,
    /// Set when a basis cap stopped some level from growing.
    pub lower_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Seed {
    Unit,
    AllOnes,
    Identity,
    Incidence(String),
    Jones(usize),
}

/// How a kept vector was produced; parents are indices into the same log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Derivation {
    Seed(Seed),
    Unary { op: Generator, parent: usize },
    Product { left: usize, right: usize },
    /// Product of two integer combinations of earlier vectors at one level.
    Combination { left: Vec<(usize, i64)>, right: Vec<(usize, i64)> },
}

/// Result of one closure computation.
#[derive(Clone, Debug)]
pub struct ClosureRun {
    pub config: ClosureConfig,
    pub dims: LevelDims,
    /// Dimensions at every level up to the ceiling.
    pub ceiling_dims: Vec<usize>,
    /// Number of automorphism orbits on tuples, per level.
    pub orbit_counts: Vec<usize>,
    pub arithmetic: Arithmetic,
    log: Vec<(usize, Derivation)>,
    graph: ColoredGraph,
    symmetries: Vec<Permutation>,
}

struct Ops {
    n: usize,
    spaces: Vec<LevelSpace>,
    mult: Vec<Plan>,
    incl: Vec<Plan>,
    expect: Vec<Plan>,
}

impl Ops {
    fn new(n: usize, ceiling: usize, gens: &[Permutation]) -> Self {
        let spaces: Vec<LevelSpace> = (0..=ceiling).map(|m| LevelSpace::new(n, m, gens)).collect();
        Self {
            n,
            spaces,
            mult: (0..=ceiling).map(|m| Plan::compile(Generator::Mult(m), n)).collect(),
            incl: (0..ceiling).map(|m| Plan::compile(Generator::Incl(m), n)).collect(),
            expect: (0..ceiling).map(|m| Plan::compile(Generator::Expect(m), n)).collect(),
        }
    }

    fn seed<F: Scalar>(&self, seed: &Seed, graph: &ColoredGraph) -> (usize, Vec<F>) {
        let matrix = |d: &ExactMatrix| -> Vec<F> {
            self.spaces[2]
                .reps()
                .iter()
                .map(|&t| {
                    let x = d.get(t / self.n, t % self.n);
                    F::from_gaussian(small_int(&x.re), small_int(&x.im))
                })
                .collect()
        };
        match seed {
            Seed::Unit => (0, vec![F::one()]),
            Seed::AllOnes => (1, vec![F::one(); self.spaces[1].dim()]),
            Seed::Identity => (2, matrix(&ExactMatrix::identity(self.n))),
            Seed::Incidence(label) => {
                let c = graph.component(label).expect("seed label belongs to the graph");
                (2, matrix(&component_incidence(self.n, c)))
            }
            Seed::Jones(m) => (m + 2, Plan::compile(Generator::Jones(*m), self.n).eval(&self.spaces[m + 2], &[])),
        }
    }

    fn unary<F: Scalar>(&self, op: Generator, v: &[F]) -> Vec<F> {
        match op {
            Generator::Incl(m) => self.incl[m].eval(&self.spaces[m + 1], &[(&self.spaces[m], v)]),
            Generator::Expect(m) => self.expect[m].eval(&self.spaces[m], &[(&self.spaces[m + 1], v)]),
            Generator::Rotate(m) => rotate(&self.spaces[m], v),
            Generator::Star(m) => star(&self.spaces[m], v),
            Generator::Mult(_) | Generator::Jones(_) => unreachable!("not a unary generator"),
        }
    }

    fn product<F: Scalar>(&self, m: usize, a: &[F], b: &[F]) -> Vec<F> {
        let s = &self.spaces[m];
        self.mult[m].eval(s, &[(s, a), (s, b)])
    }
}

fn small_int(x: &crate::exact::Rational) -> i64 {
    assert!(x.is_integer(), "seed entries are Gaussian integers");
    i64::try_from(x.numer()).expect("seed entry fits in i64")
}

struct Level<F: Scalar> {
    basis: EchelonBasis<F>,
    members: Vec<usize>,
    generators: Vec<usize>,
    /// Members added since the last passed product test.
    dirty: bool,
}

/// How closure under multiplication is established at each level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Products {
    /// Every member times every generator.
    Pairwise,
    /// Products of seeded random combinations of members; a level is closed
    /// once two consecutive samples fall inside its span.
    Sampled,
}

/// Random coefficients lie in `1..2^31`, so one sample misses a product
/// outside the span with probability at most `2^-30`.
const SAMPLE_RANGE: i64 = 1 << 31;
const SAMPLES_TO_CLOSE: usize = 2;

struct Engine<'a, F: Scalar> {
    ops: &'a Ops,
    ceiling: usize,
    cap: Option<usize>,
    capped: bool,
    products: Products,
    rng: ChaCha8Rng,
    levels: Vec<Level<F>>,
    store: Vec<Vec<F>>,
    log: Vec<(usize, Derivation)>,
    queue: VecDeque<usize>,
    product_queue: VecDeque<usize>,
}

impl<'a, F: Scalar> Engine<'a, F> {
    fn new(ops: &'a Ops, ceiling: usize, cap: Option<usize>, products: Products) -> Self {
        let levels = ops
            .spaces
            .iter()
            .map(|s| Level { basis: EchelonBasis::new(s.dim()), members: Vec::new(), generators: Vec::new(), dirty: false })
            .collect();
        Self {
            ops,
            ceiling,
            cap,
            capped: false,
            products,
            rng: ChaCha8Rng::seed_from_u64(0x5eed),
            levels,
            store: Vec::new(),
            log: Vec::new(),
            queue: VecDeque::new(),
            product_queue: VecDeque::new(),
        }
    }

    fn saturated(&self, m: usize) -> bool {
        let l = &self.levels[m];
        l.basis.rank() == l.basis.ambient_dim() || self.cap.is_some_and(|c| l.basis.rank() >= c)
    }

    /// Whether a new vector at level `m` could still matter, either to grow
    /// the level or to detect that a cap cut it short.
    fn wants(&self, m: usize) -> bool {
        let b = &self.levels[m].basis;
        !self.saturated(m) || (!self.capped && b.rank() < b.ambient_dim())
    }

    /// Returns whether the vector was kept.
    fn offer(&mut self, m: usize, v: Vec<F>, how: Derivation, generator: bool) -> bool {
        if self.saturated(m) {
            if self.wants(m) && !self.levels[m].basis.contains(&v) {
                self.capped = true;
            }
            return false;
        }
        if !self.levels[m].basis.insert(&v) {
            return false;
        }
        let id = self.store.len();
        self.store.push(v);
        self.log.push((m, how));
        let level = &mut self.levels[m];
        level.members.push(id);
        level.dirty = true;
        if generator {
            level.generators.push(id);
        }
        self.queue.push_back(id);
        self.product_queue.push_back(id);
        true
    }

    fn unary_images(&mut self, id: usize) {
        let m = self.log[id].0;
        let mut unary = Vec::new();
        if m < self.ceiling {
            unary.push((m + 1, Generator::Incl(m)));
        }
        if m >= 1 {
            unary.push((m - 1, Generator::Expect(m - 1)));
            unary.push((m, Generator::Star(m)));
        }
        if m >= 2 {
            unary.push((m, Generator::Rotate(m)));
        }
        for (target, op) in unary {
            if self.wants(target) {
                let w = self.ops.unary(op, &self.store[id]);
                self.offer(target, w, Derivation::Unary { op, parent: id }, true);
            }
        }
    }

    fn pairwise_products(&mut self, id: usize) {
        let m = self.log[id].0;
        if m == 0 || !self.wants(m) {
            return;
        }
        let level = &self.levels[m];
        let mut pairs: Vec<(usize, usize)> = level.generators.iter().map(|&s| (id, s)).collect();
        if level.generators.contains(&id) {
            pairs.extend(level.members.iter().filter(|&&b| b != id).map(|&b| (b, id)));
        }
        let store = &self.store;
        let ops = self.ops;
        let products: Vec<Vec<F>> = pairs.par_iter().map(|&(a, b)| ops.product(m, &store[a], &store[b])).collect();
        for ((a, b), p) in pairs.into_iter().zip(products) {
            if !self.wants(m) {
                break;
            }
            self.offer(m, p, Derivation::Product { left: a, right: b }, false);
        }
    }

    fn combination(&mut self, m: usize) -> (Vec<F>, Vec<(usize, i64)>) {
        let members = &self.levels[m].members;
        let coeffs: Vec<(usize, i64)> = members.iter().map(|&b| (b, self.rng.gen_range(1..SAMPLE_RANGE))).collect();
        let mut v = vec![F::zero(); self.ops.spaces[m].dim()];
        for (b, c) in &coeffs {
            let c = F::from_gaussian(*c, 0);
            for (x, y) in v.iter_mut().zip(&self.store[*b]) {
                x.add_product(&c, y);
            }
        }
        (v, coeffs)
    }

    /// One sampled product at the lowest level not yet known to be closed.
    fn sample_product(&mut self) -> bool {
        let Some(m) = (1..self.levels.len()).find(|&m| self.levels[m].dirty) else {
            return false;
        };
        if !self.wants(m) {
            self.levels[m].dirty = false;
            return true;
        }
        let mut misses = 0;
        while misses < SAMPLES_TO_CLOSE {
            let (a, left) = self.combination(m);
            let (b, right) = self.combination(m);
            let p = self.ops.product(m, &a, &b);
            if self.offer(m, p, Derivation::Combination { left, right }, false) {
                return true;
            }
            misses += 1;
        }
        self.levels[m].dirty = false;
        true
    }

    fn run(&mut self, seeds: Vec<(usize, Vec<F>, Seed)>) {
        for (m, v, s) in seeds {
            self.offer(m, v, Derivation::Seed(s), true);
        }
        loop {
            if let Some(id) = self.queue.pop_front() {
                self.unary_images(id);
                continue;
            }
            let progressed = match self.products {
                Products::Pairwise => match self.product_queue.pop_front() {
                    Some(id) => {
                        self.pairwise_products(id);
                        true
                    }
                    None => false,
                },
                Products::Sampled => self.sample_product(),
            };
            if !progressed {
                break;
            }
        }
    }
}

fn seeds(graph: &ColoredGraph, ceiling: usize) -> Vec<Seed> {
    let mut s = vec![Seed::Unit, Seed::AllOnes, Seed::Identity];
    s.extend(graph.components.iter().map(|c| Seed::Incidence(c.label.clone())));
    s.extend((0..=ceiling.saturating_sub(2)).map(Seed::Jones));
    s
}

fn resolve(arithmetic: Arithmetic, n: usize, ceiling: usize) -> Arithmetic {
    match arithmetic {
        Arithmetic::Auto if n.checked_pow(ceiling as u32).is_some_and(|t| t <= 256) => Arithmetic::Exact,
        Arithmetic::Auto => Arithmetic::Modular,
        a => a,
    }
}

struct Pass {
    ceiling_dims: Vec<usize>,
    orbit_counts: Vec<usize>,
    capped: bool,
    log: Vec<(usize, Derivation)>,
}

fn pass(graph: &ColoredGraph, gens: &[Permutation], ceiling: usize, cap: Option<usize>, arithmetic: Arithmetic) -> Pass {
    let ops = Ops::new(graph.n, ceiling, gens);
    fn go<F: Scalar>(ops: &Ops, graph: &ColoredGraph, ceiling: usize, cap: Option<usize>, products: Products) -> Pass {
        let mut engine = Engine::<F>::new(ops, ceiling, cap, products);
        let s = seeds(graph, ceiling)
            .into_iter()
            .map(|s| {
                let (m, v) = ops.seed::<F>(&s, graph);
                (m, v, s)
            })
            .collect();
        engine.run(s);
        Pass {
            ceiling_dims: engine.levels.iter().map(|l| l.basis.rank()).collect(),
            orbit_counts: ops.spaces.iter().map(LevelSpace::dim).collect(),
            capped: engine.capped,
            log: engine.log,
        }
    }
    match arithmetic {
        Arithmetic::Exact => go::<GaussianRational>(&ops, graph, ceiling, cap, Products::Pairwise),
        _ => go::<ModGaussian>(&ops, graph, ceiling, cap, Products::Sampled),
    }
}

/// Closure dimensions without materialising tensors.
pub fn closure_dims(g: &ColoredGraph, cfg: &ClosureConfig) -> Result<ClosureRun, PlanarError> {
    cfg.validate()?;
    let group = automorphism_group(g);
    let symmetries = group.generators().to_vec();
    let ceiling = cfg.ceiling();
    let arithmetic = resolve(cfg.arithmetic, g.n, ceiling);
    let main = pass(g, &symmetries, ceiling, cfg.cap, arithmetic);
    let dims: Vec<usize> = main.ceiling_dims[..=cfg.max_level].to_vec();
    let mut lower_bound = main.capped;
    let converged = if cfg.check_convergence {
        let wider = pass(g, &symmetries, ceiling + 1, cfg.cap, resolve(cfg.arithmetic, g.n, ceiling + 1));
        lower_bound |= wider.capped;
        Some(wider.ceiling_dims[..=cfg.max_level] == dims[..])
    } else {
        None
    };
    Ok(ClosureRun {
        config: cfg.clone(),
        dims: LevelDims { dims, converged, lower_bound },
        ceiling_dims: main.ceiling_dims,
        orbit_counts: main.orbit_counts,
        arithmetic,
        log: main.log,
        graph: g.clone(),
        symmetries,
    })
}

impl ClosureRun {
    pub fn derivations(&self) -> &[(usize, Derivation)] {
        &self.log
    }

    /// Recompute the kept vectors at `level` in exact arithmetic, together
    /// with everything they were derived from, in full tuple coordinates.
    pub fn exact_subspace(&self, level: usize) -> TensorSubspace {
        let n = self.graph.n;
        let ops = Ops::new(n, self.config.ceiling(), &self.symmetries);
        let mut needed = BTreeSet::new();
        let mut stack: Vec<usize> = (0..self.log.len()).filter(|&i| self.log[i].0 == level).collect();
        while let Some(i) = stack.pop() {
            if needed.insert(i) {
                match &self.log[i].1 {
                    Derivation::Seed(_) => {}
                    Derivation::Unary { parent, .. } => stack.push(*parent),
                    Derivation::Product { left, right } => stack.extend([*left, *right]),
                    Derivation::Combination { left, right } => stack.extend(left.iter().chain(right).map(|&(b, _)| b)),
                }
            }
        }
        let mut values: Vec<Option<Vec<GaussianRational>>> = vec![None; self.log.len()];
        for &i in &needed {
            let (m, how) = &self.log[i];
            let v = match how {
                Derivation::Seed(s) => ops.seed::<GaussianRational>(s, &self.graph).1,
                Derivation::Unary { op, parent } => ops.unary(*op, values[*parent].as_ref().expect("parent precedes child")),
                Derivation::Product { left, right } => ops.product(
                    *m,
                    values[*left].as_ref().expect("parent precedes child"),
                    values[*right].as_ref().expect("parent precedes child"),
                ),
                Derivation::Combination { left, right } => {
                    let combine = |terms: &[(usize, i64)]| {
                        let mut v = vec![GaussianRational::default(); ops.spaces[*m].dim()];
                        for (b, c) in terms {
                            let c = GaussianRational::from_int(*c);
                            for (x, y) in v.iter_mut().zip(values[*b].as_ref().expect("parent precedes child")) {
                                x.add_product(&c, y);
                            }
                        }
                        v
                    };
                    ops.product(*m, &combine(left), &combine(right))
                }
            };
            values[i] = Some(v);
        }
        let mut sub = TensorSubspace::new(n, level);
        for (i, (m, _)) in self.log.iter().enumerate() {
            if *m == level {
                let v = values[i].as_ref().expect("level vector was replayed");
                sub.insert_dense(&ops.spaces[level].expand(v));
            }
        }
        sub
    }
}

/// Per-level subspaces `P_0..P_M` and their dimensions, in exact arithmetic.
pub fn closure(g: &ColoredGraph, cfg: &ClosureConfig) -> Result<(Vec<TensorSubspace>, LevelDims), PlanarError> {
    let cfg = ClosureConfig { arithmetic: Arithmetic::Exact, ..cfg.clone() };
    let run = closure_dims(g, &cfg)?;
    let spaces = (0..=cfg.max_level).map(|m| run.exact_subspace(m)).collect();
    Ok((spaces, run.dims))
}

/// Lower bound on `dim P_1`, with a non-constant fixed vector when it exceeds 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C1Bound {
    pub c1: usize,
    pub certificate: Option<SpinTensor>,
    pub converged: Option<bool>,
}

pub fn bounded_c1(g: &ColoredGraph, cfg: &ClosureConfig) -> Result<C1Bound, PlanarError> {
    let run = closure_dims(g, cfg)?;
    let sub = run.exact_subspace(1);
    let certificate = sub.vectors().into_iter().find(|t| {
        let first = t.get(&[0]);
        (0..g.n).any(|i| t.get(&[i]) != first)
    });
    Ok(C1Bound { c1: sub.dim(), certificate, converged: run.dims.converged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, edgeless, n_gon};

    fn dims(g: &ColoredGraph, m: usize) -> Vec<usize> {
        closure_dims(g, &ClosureConfig::new(m).unwrap()).unwrap().dims.dims
    }

    #[test]
    fn small_temperley_lieb() {
        assert_eq!(dims(&edgeless(4), 4), vec![1, 1, 2, 5, 14]);
        assert_eq!(dims(&edgeless(2), 4), vec![1, 1, 2, 4, 8]);
    }

    #[test]
    fn triangle_and_square() {
        assert_eq!(dims(&n_gon(3), 3), vec![1, 1, 2, 5]);
        assert_eq!(dims(&complete(5), 3), vec![1, 1, 2, 5]);
    }

    #[test]
    fn exact_replay_matches_modular_rank() {
        let cfg = ClosureConfig::new(3).unwrap().with_arithmetic(Arithmetic::Modular);
        let run = closure_dims(&n_gon(5), &cfg).unwrap();
        for m in 0..=3 {
            assert_eq!(run.exact_subspace(m).dim(), run.dims.dims[m]);
        }
    }

    #[test]
    fn c1_of_homogeneous_graphs() {
        let cfg = ClosureConfig::new(2).unwrap();
        for g in [n_gon(5), complete(5)] {
            let b = bounded_c1(&g, &cfg).unwrap();
            assert_eq!((b.c1, b.certificate), (1, None));
        }
    }

    #[test]
    fn c1_certificate_is_the_triangle() {
        let g = crate::graph::disjoint_union(&n_gon(3), &n_gon(5)).unwrap();
        let b = bounded_c1(&g, &ClosureConfig::new(2).unwrap()).unwrap();
        assert!(b.c1 >= 2);
        let cert = b.certificate.unwrap();
        let ones: Vec<usize> = (0..8).filter(|&i| cert.get(&[i]) == GaussianRational::from_int(1)).collect();
        assert_eq!(ones, vec![0, 1, 2]);
        assert_eq!(cert.support_size(), 3);
    }

    #[test]
    fn sampled_and_pairwise_agree() {
        for g in [n_gon(5), crate::graph::cube()] {
            let cfg = ClosureConfig::new(3).unwrap();
            let exact = closure_dims(&g, &cfg.clone().with_arithmetic(Arithmetic::Exact)).unwrap();
            let modular = closure_dims(&g, &cfg.with_arithmetic(Arithmetic::Modular)).unwrap();
            assert_eq!(exact.ceiling_dims, modular.ceiling_dims);
        }
    }

    #[test]
    fn config_rejects_low_level() {
        assert!(ClosureConfig::new(1).is_err());
    }

    #[test]
    fn cap_flags_lower_bound() {
        let cfg = ClosureConfig::new(3).unwrap().with_cap(2);
        let run = closure_dims(&n_gon(5), &cfg).unwrap();
        assert!(run.dims.lower_bound);
        assert!(run.dims.dims.iter().all(|&d| d <= 2));
    }
}
