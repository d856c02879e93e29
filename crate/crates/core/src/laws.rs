//! Executable checks of the identities the library relies on.
//!
//! Each criterion runs a group of laws over exhaustively enumerated small
//! fields and seeded random samples of larger ones, comparing independent
//! computations for exact equality. The same suites back the `selftest`
//! command and the acceptance tests.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dickson::{self, DicksonMatrix};
use crate::elementary::elementary_decompose;
use crate::field::{Field, FieldTower, FqnElement};
use crate::linearized::LinPoly;
use crate::matrix::Matrix;
use crate::moore::{self, TraceForm};
use crate::skew::{self, FactorChain, SkewPoly};
use crate::subfield::{is_block_circulant, is_subfield_poly, SubfieldContext};

/// A deliberate defect, used to confirm that the suites catch real bugs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Predict the Moore adjugate with sign `(-1)^(j n)` instead of `(-1)^(j (n+1))`.
    AdjugateSign,
}

impl std::str::FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "adjugate-sign" => Ok(Mutation::AdjugateSign),
            other => Err(format!("unknown mutation \"{other}\"")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 0x5eed_1a75,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LawOutcome {
    pub name: &'static str,
    pub checks: u64,
    /// The first counterexample, if any.
    pub failure: Option<String>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.checks > 0
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub number: usize,
    pub title: &'static str,
    pub laws: Vec<LawOutcome>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        !self.laws.is_empty() && self.laws.iter().all(LawOutcome::passed)
    }

    pub fn checks(&self) -> u64 {
        self.laws.iter().map(|l| l.checks).sum()
    }

    /// One line per law, prefixed by its status.
    pub fn lines(&self) -> Vec<String> {
        self.laws
            .iter()
            .map(|l| {
                let status = if l.passed() { "pass" } else { "FAIL" };
                let mut line = format!("  {status} {} ({} checks)", l.name, l.checks);
                if let Some(f) = &l.failure {
                    line.push_str(": ");
                    line.push_str(f);
                }
                line
            })
            .collect()
    }
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} criterion {}: {} ({} checks, {:.2}s)",
            self.number,
            self.title,
            self.checks(),
            self.elapsed.as_secs_f64()
        )
    }
}

pub const CRITERIA: [(usize, &str); 9] = [
    (1, "Dickson matrices turn composition into matrix product"),
    (2, "rank agreement of Dickson matrix, coordinates and right gcd"),
    (3, "composition inverse from first-column cofactors"),
    (4, "adjugate polynomial identities"),
    (5, "adjugates of Dickson and Moore matrices"),
    (6, "trace-form representations"),
    (7, "factorization of rank n-1 polynomials"),
    (8, "subfield coefficients and block-circulant structure"),
    (9, "basis conjugation of the Dickson matrix"),
];

pub fn run_criterion(number: usize, cfg: &Config) -> CriterionReport {
    let (_, title) = CRITERIA
        .iter()
        .find(|(k, _)| *k == number)
        .copied()
        .unwrap_or((number, "unknown criterion"));
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(number as u64));
    let laws = match number {
        1 => composition_homomorphism(&mut rng),
        2 => rank_agreement(&mut rng),
        3 => inversion(&mut rng),
        4 => adjugate_polynomial(&mut rng),
        5 => adjugate_structure(&mut rng, cfg.mutation),
        6 => trace_forms(&mut rng),
        7 => factorization(&mut rng),
        8 => subfield_structure(&mut rng),
        9 => basis_conjugation(&mut rng),
        _ => Vec::new(),
    };
    CriterionReport {
        number,
        title,
        laws,
        elapsed: start.elapsed(),
    }
}

/// Runs every criterion, concurrently when `parallel` is set. Reports come
/// back in criterion order.
pub fn run_all(cfg: &Config, parallel: bool) -> Vec<CriterionReport> {
    if !parallel {
        return CRITERIA.iter().map(|(k, _)| run_criterion(*k, cfg)).collect();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|(k, _)| s.spawn(move || run_criterion(*k, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("law suite panicked"))
            .collect()
    })
}

struct Law {
    name: &'static str,
    checks: u64,
    failure: Option<String>,
}

impl Law {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn done(self) -> LawOutcome {
        LawOutcome {
            name: self.name,
            checks: self.checks,
            failure: self.failure,
        }
    }
}

fn tower(p: u32, e: usize, n: usize) -> Arc<FieldTower> {
    Arc::new(FieldTower::with_degrees(p, e, n).expect("small fields exist"))
}

fn label(t: &FieldTower) -> String {
    format!("GF({}^{}) over GF({})", t.q(), t.n(), t.q())
}

fn all_polys(t: &Arc<FieldTower>) -> Vec<LinPoly> {
    let count = t.order().pow(t.n() as u32);
    (0..count).map(|i| LinPoly::from_index(t, i)).collect()
}

fn random_polys(t: &Arc<FieldTower>, count: usize, rng: &mut ChaCha8Rng) -> Vec<LinPoly> {
    (0..count).map(|_| LinPoly::random(t, rng)).collect()
}

fn random_basis(t: &FieldTower, rng: &mut ChaCha8Rng) -> Vec<FqnElement> {
    loop {
        let b: Vec<FqnElement> = (0..t.n()).map(|_| t.random(rng)).collect();
        if t.base_rank(&b) == t.n() {
            return b;
        }
    }
}

fn all_tuples(t: &FieldTower, k: usize) -> Vec<Vec<FqnElement>> {
    let size = t.order();
    let count = size.pow(k as u32);
    (0..count)
        .map(|mut idx| {
            (0..k)
                .map(|_| {
                    let e = t.from_index(idx % size);
                    idx /= size;
                    e
                })
                .collect()
        })
        .collect()
}

fn all_ordered_bases(t: &FieldTower) -> Vec<Vec<FqnElement>> {
    all_tuples(t, t.n())
        .into_iter()
        .filter(|b| t.base_rank(b) == t.n())
        .collect()
}

/// `c x` for `c` in GF(q^n).
fn scalar_map(t: &Arc<FieldTower>, c: FqnElement) -> LinPoly {
    LinPoly::monomial(t, c, 0)
}

fn agree_pointwise(t: &FieldTower, f: impl Fn(&FqnElement) -> FqnElement, g: &LinPoly) -> bool {
    t.elements()
        .expect("law fields are enumerable")
        .all(|x| f(&x) == g.evaluate(&x))
}

/// The rank populations: all of GF(4) and GF(8), 1000 random over GF(9) and GF(2^6).
fn rank_populations(rng: &mut ChaCha8Rng) -> Vec<(Arc<FieldTower>, Vec<LinPoly>)> {
    let gf4 = tower(2, 1, 2);
    let gf8 = tower(2, 1, 3);
    let gf9 = tower(3, 1, 2);
    let gf64 = tower(2, 1, 6);
    vec![
        (Arc::clone(&gf4), all_polys(&gf4)),
        (Arc::clone(&gf8), all_polys(&gf8)),
        (Arc::clone(&gf9), random_polys(&gf9, 1000, rng)),
        (Arc::clone(&gf64), random_polys(&gf64, 1000, rng)),
    ]
}

fn composition_homomorphism(rng: &mut ChaCha8Rng) -> Vec<LawOutcome> {
    let mut hom = Law::new("Dickson matrix of a composition is the matrix product");
    let mut conv = Law::new("first-row convolution equals the full matrix product");
    let mut pointwise = Law::new("composition evaluates as nested application");
    let mut check_pair = |t: &Arc<FieldTower>, a: &LinPoly, b: &LinPoly| {
        let c = a.compose(b).expect("same tower");
        let (da, db) = (DicksonMatrix::from_poly(a), DicksonMatrix::from_poly(b));
        let full = da.to_matrix().mul(&**t, &db.to_matrix());
        hom.check(DicksonMatrix::from_poly(&c).to_matrix() == full, || {
            format!("{}: {a:?} ∘ {b:?}", label(t))
        });
        conv.check(da.mul(&db).map(|d| d.to_matrix()) == Ok(full), || {
            format!("{}: {a:?}, {b:?}", label(t))
        });
    };
    let gf4 = tower(2, 1, 2);
    let polys = all_polys(&gf4);
    for a in &polys {
        for b in &polys {
            check_pair(&gf4, a, b);
            pointwise.check(agree_pointwise(&gf4, |x| a.evaluate(&b.evaluate(x)), &a.compose(b).unwrap()), || {
                format!("{a:?} ∘ {b:?}")
            });
        }
    }
    for t in [tower(2, 1, 3), tower(3, 1, 2), tower(2, 2, 2)] {
        for _ in 0..10_000 {
            let a = LinPoly::random(&t, rng);
            let b = LinPoly::random(&t, rng);
            check_pair(&t, &a, &b);
        }
    }
    vec![hom.done(), conv.done(), pointwise.done()]
}

fn rank_agreement(rng: &mut ChaCha8Rng) -> Vec<LawOutcome> {
    let mut three_way = Law::new("Dickson rank = coordinate rank = n - deg right gcd");
    let mut kernel = Law::new("rank + kernel dimension = n");
    let mut det_fixed = Law::new("Dickson determinant lies in GF(q)");
    for (t, polys) in rank_populations(rng) {
        for l in &polys {
            let d = DicksonMatrix::from_poly(l);
            let (rd, rb, rg) = (d.rank(), l.rank_bruteforce(), skew::rank_via_gcd(l));
            three_way.check(rd == rb && rb == rg, || {
                format!("{}: {l:?} has ranks {rd}, {rb}, {rg}", label(&t))
            });
            kernel.check(rb + l.kernel_basis().len() == t.n(), || format!("{}: {l:?}", label(&t)));
            let det = d.determinant();
            det_fixed.check(t.frobenius(&det, 1) == det, || format!("{}: {l:?}", label(&t)));
        }
    }
    let gf16 = tower(2, 1, 4);
    let mut enumeration = Law::new("kernel by null space equals kernel by enumeration");
    for l in random_polys(&gf16, 200, rng) {
        enumeration.check(l.kernel_by_enumeration() == Ok(l.kernel_basis()), || format!("{l:?}"));
    }
    vec![three_way.done(), kernel.done(), det_fixed.done(), enumeration.done()]
}

fn inversion(rng: &mut ChaCha8Rng) -> Vec<LawOutcome> {
    let mut inverse = Law::new("L ∘ L^-1 = L^-1 ∘ L = x for permutations");
    let mut unit_det = Law::new("permutations over GF(2) have determinant 1");
    let mut laplace = Law::new("first-column Laplace determinant equals elimination determinant");
    let mut refusal = Law::new("non-permutations are refused");
    for (t, polys) in rank_populations(rng) {
        let id = LinPoly::identity(&t);
        for l in &polys {
            let d = DicksonMatrix::from_poly(l);
            let det = d.determinant();
            laplace.check(dickson::laplace_determinant(l) == det, || format!("{}: {l:?}", label(&t)));
            if det.is_zero() {
                refusal.check(
                    dickson::inverse_poly(l) == Err(crate::Error::NotAPermutation),
                    || format!("{}: {l:?}", label(&t)),
                );
                continue;
            }
            match dickson::inverse_poly(l) {
                Ok(inv) => inverse.check(
                    l.compose(&inv).as_ref() == Ok(&id) && inv.compose(l).as_ref() == Ok(&id),
                    || format!("{}: {l:?} with inverse {inv:?}", label(&t)),
                ),
                Err(e) => inverse.check(false, || format!("{}: {l:?}: {e}", label(&t))),
            }
            if t.q() == 2 {
                unit_det.check(det == t.one(), || format!("{}: {l:?} has det {det:?}", label(&t)));
            }
        }
    }
    vec![inverse.done(), unit_det.done(), laplace.done(), refusal.done()]
}

fn adjugate_polynomial(rng: &mut ChaCha8Rng) -> Vec<LawOutcome> {
    let mut identity = Law::new("L ∘ L* = L* ∘ L = det(L) x");
    let mut first_row = Law::new("L* is the first row of the classical adjugate");
    let mut rank_one = Law::new("rank n-1 polynomials have a rank 1 adjugate");
    let mut swap = Law::new("rank n-1: Im L* = ker L and ker L* = Im L");
    let mut closed = Law::new("closed form of the adjugate of x^q - gamma^(q-1) x");
    for (t, polys) in rank_populations(rng) {
        let n = t.n();
        for l in &polys {
            let adj = dickson::adjugate_poly(l);
            let det_x = scalar_map(&t, DicksonMatrix::from_poly(l).determinant());
            identity.check(
                l.compose(&adj).as_ref() == Ok(&det_x) && adj.compose(l).as_ref() == Ok(&det_x),
                || format!("{}: {l:?}", label(&t)),
            );
            let classical = DicksonMatrix::from_poly(l).adjugate().map(|d| d.to_poly());
            first_row.check(classical.as_ref() == Ok(&adj), || format!("{}: {l:?}", label(&t)));
            if l.rank_bruteforce() + 1 == n {
                rank_one.check(adj.rank_bruteforce() == 1, || format!("{}: {l:?}", label(&t)));
                swap.check(
                    adj.image_basis() == l.kernel_basis() && adj.kernel_basis() == l.image_basis(),
                    || format!("{}: {l:?}", label(&t)),
                );
            }
        }
    }
    for t in [tower(2, 1, 2), tower(2, 1, 3), tower(3, 1, 2)] {
        let n = t.n();
        for gamma in t.elements().expect("small field").filter(|g| !g.is_zero()) {
            let l = FactorChain::kernel_factor(&t, &gamma);
            let adj = dickson::adjugate_poly(&l);
            let ok = (0..n).all(|i| {
                let v = t.mul(&gamma, &t.inv(&t.frobenius(&gamma, i + 1)).expect("nonzero"));
                let expected = if (n - 1) % 2 == 1 { t.neg(&v) } else { v };
                *adj.coeff(i) == expected
            });
            closed.check(ok, || format!("{}: gamma = {gamma:?}, L* = {adj:?}", label(&t)));
        }
    }
    vec![identity.done(), first_row.done(), rank_one.done(), swap.done(), closed.done()]
}

fn adjugate_structure(rng: &mut ChaCha8Rng, mutation: Option<Mutation>) -> Vec<LawOutcome> {
    let mut dickson_closed = Law::new("adjugate of a Dickson matrix is a Dickson matrix");
    let mut adj_product = Law::new("D adj(D) = adj(D) D = det(D) I");
    for (t, polys) in rank_populations(rng) {
        for l in &polys {
            let d = DicksonMatrix::from_poly(l);
            match d.adjugate() {
                Ok(adj) => {
                    dickson_closed.check(true, String::new);
                    let (dm, am) = (d.to_matrix(), adj.to_matrix());
                    let scaled = Matrix::identity(&*t, t.n()).scale(&*t, &d.determinant());
                    adj_product.check(
                        dm.mul(&*t, &am) == scaled && am.mul(&*t, &dm) == scaled,
                        || format!("{}: {l:?}", label(&t)),
                    );
                }
                Err(e) => dickson_closed.check(false, || format!("{}: {l:?}: {e}", label(&t))),
            }
        }
    }
    let mut sign = Law::new("Moore adjugate sign pattern");
    let mut basis_out = Law::new("cofactors of a basis form a basis");
    let twist = |n: usize| match mutation {
        Some(Mutation::AdjugateSign) => n,
        None => n + 1,
    };
    let mut moore_case = |t: &Arc<FieldTower>, gens: &[FqnElement]| {
        let n = t.n();
        let adj = moore::moore_adjugate(t, gens).expect("n generators");
        let predicted = moore::signed_cofactor_matrix(t, &adj.cofactors, twist(n));
        sign.check(adj.adjugate == predicted, || format!("{}: generators {gens:?}", label(t)));
        if t.base_rank(gens) == n {
            basis_out.check(t.base_rank(&adj.cofactors) == n, || {
                format!("{}: generators {gens:?}", label(t))
            });
        }
    };
    for t in [tower(2, 1, 2), tower(2, 1, 3), tower(3, 1, 2)] {
        for gens in all_tuples(&t, t.n()) {
            moore_case(&t, &gens);
        }
    }
    for t in [tower(2, 1, 4), tower(3, 1, 3)] {
        for _ in 0..1000 {
            let gens: Vec<FqnElement> = (0..t.n()).map(|_| t.random(rng)).collect();
            moore_case(&t, &gens);
        }
    }
    vec![dickson_closed.done(), adj_product.done(), sign.done(), basis_out.done()]
}

fn trace_forms(rng: &mut ChaCha8Rng) -> Vec<LawOutcome> {
    let mut laws = TraceLaws::new();
    let gf4 = tower(2, 1, 2);
    let bases = all_ordered_bases(&gf4);
    for l in all_polys(&gf4) {
        for b in &bases {
            laws.run(&gf4, &l, b, rng);
        }
        laws.minimality(&gf4, &l);
    }
    for t in [tower(2, 1, 3), tower(3, 1, 2)] {
        for _ in 0..1000 {
            let l = LinPoly::random(&t, rng);
            let b = random_basis(&t, rng);
            laws.run(&t, &l, &b, rng);
        }
    }
    let mut moore_rank = Law::new("Moore rank equals coordinate rank");
    for t in [tower(2, 1, 2), tower(2, 1, 3), tower(3, 1, 2)] {
        let exhaustive = t.order() <= 4;
        for k in 1..=t.n() + 1 {
            let sets: Vec<Vec<FqnElement>> = if exhaustive {
                all_tuples(&t, k)
            } else {
                (0..300).map(|_| (0..k).map(|_| t.random(rng)).collect()).collect()
            };
            for gens in sets {
                let ok = moore::moore_rank(&t, &gens) == Ok(t.base_rank(&gens));
                moore_rank.check(ok, || format!("{}: {gens:?}", label(&t)));
            }
        }
    }
    let mut out = laws.done();
    out.push(moore_rank.done());
    out
}

struct TraceLaws {
    full: Law,
    dualside: Law,
    ranks: Law,
    compact: Law,
    unique: Law,
    dual: Law,
    identity: Law,
    inverse: Law,
    elementary: Law,
    minimal: Law,
}

impl TraceLaws {
    fn new() -> Self {
        Self {
            full: Law::new("full form round trip and pointwise agreement"),
            dualside: Law::new("dual-side form round trip and pointwise agreement"),
            ranks: Law::new("rank of alpha and alpha' equals rank L"),
            compact: Law::new("compact form has rank L pairs, both sides independent"),
            unique: Law::new("perturbed forms no longer represent L"),
            dual: Law::new("dual basis: trace pairing, involution, inverse Moore matrix"),
            identity: Law::new("sum tr(beta_i x) beta_i* = x"),
            inverse: Law::new("inverse from dual bases equals cofactor inverse"),
            elementary: Law::new("elementary factors recompose L and match elementary matrices"),
            minimal: Law::new("no trace form with fewer than rank L pairs"),
        }
    }

    fn run(&mut self, t: &Arc<FieldTower>, l: &LinPoly, basis: &[FqnElement], rng: &mut ChaCha8Rng) {
        let ctx = || format!("{}: {l:?} over basis {basis:?}", label(t));
        let rank = l.rank_bruteforce();
        let dual = moore::dual_basis(t, basis).expect("basis");

        let full = moore::to_trace_form_full(l, basis).expect("basis");
        self.full.check(full.to_poly() == *l && agree_pointwise(t, |x| full.evaluate(x), l), ctx);
        let side = moore::to_trace_form_dualside(l, basis).expect("basis");
        self.dualside.check(side.to_poly() == *l && agree_pointwise(t, |x| side.evaluate(x), l), ctx);
        self.ranks.check(
            t.base_rank(&full.thetas()) == rank && t.base_rank(&side.omegas()) == rank,
            ctx,
        );
        // alpha'_i = sum_k (a_k beta_i*)^(q^(n-k))
        let n = t.n();
        let explicit = dual.iter().zip(side.omegas()).all(|(d, a)| {
            let s = (0..n).fold(t.zero(), |acc, k| {
                t.add(&acc, &t.frobenius(&t.mul(l.coeff(k), d), (n - k) % n))
            });
            s == a
        });
        self.ranks.check(explicit, ctx);

        let compact = moore::compact_form(l);
        self.compact.check(
            compact.len() == rank
                && t.base_rank(&compact.omegas()) == rank
                && t.base_rank(&compact.thetas()) == rank
                && compact.to_poly() == *l,
            ctx,
        );

        let i = rng.gen_range(0..n);
        let delta = t.random_nonzero(rng);
        let mut pairs = full.pairs().to_vec();
        pairs[i].1 = t.add(&pairs[i].1, &delta);
        let bumped = TraceForm::new(t, pairs).expect("same tower");
        let mut pairs = side.pairs().to_vec();
        pairs[i].0 = t.add(&pairs[i].0, &delta);
        let bumped_side = TraceForm::new(t, pairs).expect("same tower");
        self.unique.check(
            !agree_pointwise(t, |x| bumped.evaluate(x), l) && !agree_pointwise(t, |x| bumped_side.evaluate(x), l),
            ctx,
        );

        let pairing = (0..n).all(|i| {
            (0..n).all(|j| {
                let tr = t.trace(&t.mul(&basis[i], &dual[j]));
                tr == if i == j { t.one() } else { t.zero() }
            })
        });
        let involution = moore::dual_basis(t, &dual).as_deref() == Ok(basis);
        let b = moore::MooreMatrix::new(t, basis.to_vec()).expect("basis").to_matrix();
        let p = Matrix::from_fn(n, n, |i, j| t.frobenius(&dual[i], j));
        self.dual.check(pairing && involution && p.mul(&**t, &b) == Matrix::identity(&**t, n), ctx);

        let id_form = TraceForm::new(t, basis.iter().cloned().zip(dual.iter().cloned()).collect()).expect("same tower");
        self.identity.check(id_form.to_poly() == LinPoly::identity(t), ctx);

        if rank == n {
            let via_dual = moore::inverse_via_dual(&full, basis).map(|f| f.to_poly());
            self.inverse.check(via_dual == dickson::inverse_poly(l), ctx);
        }

        if t.order() <= 4 || rng.gen_range(0..5) == 0 {
            let ok = match elementary_decompose(l, basis) {
                Ok(dec) => {
                    let factors_ok = dec.left.iter().chain(&dec.right).all(|e| {
                        let m = dickson::matrix_rep_direct(&dec.factor_poly(e), &dual).expect("basis");
                        m == e.matrix(t.base(), n)
                    });
                    factors_ok && dec.rank == rank && dec.recompose() == *l
                }
                Err(_) => false,
            };
            self.elementary.check(ok, ctx);
        }
    }

    /// Exhaustive over all forms with fewer pairs; only used on GF(4).
    fn minimality(&mut self, t: &Arc<FieldTower>, l: &LinPoly) {
        let rank = l.rank_bruteforce();
        let shorter_exists = (0..rank).any(|k| {
            all_tuples(t, 2 * k).into_iter().any(|flat| {
                let pairs = flat.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
                TraceForm::new(t, pairs).expect("same tower").to_poly() == *l
            })
        });
        self.minimal.check(!shorter_exists, || format!("{}: {l:?}", label(t)));
    }

    fn done(self) -> Vec<LawOutcome> {
        vec![
            self.full.done(),
            self.dualside.done(),
            self.ranks.done(),
            self.compact.done(),
            self.unique.done(),
            self.dual.done(),
            self.identity.done(),
            self.inverse.done(),
            self.elementary.done(),
            self.minimal.done(),
        ]
    }
}

fn factorization(rng: &mut ChaCha8Rng) -> Vec<LawOutcome> {
    let mut recompose = Law::new("factor chain recomposes L exactly");
    let mut permutation = Law::new("leftmost factor is a permutation");
    let mut kernel = Law::new("first gamma spans ker L");
    let mut side = Law::new("tr(gamma_i / gamma_(i-1)^q) != 0");
    let mut refusal = Law::new("other ranks are refused");
    let mut run = |t: &Arc<FieldTower>, l: &LinPoly| match skew::factor_chain(l) {
        Ok(chain) => {
            recompose.check(chain.recompose() == *l, || format!("{}: {l:?} -> {chain:?}", label(t)));
            permutation.check(chain.permutation.is_permutation(), || format!("{}: {l:?}", label(t)));
            let spans = chain
                .gammas
                .first()
                .is_some_and(|g| t.span_basis(std::slice::from_ref(g)) == l.kernel_basis());
            kernel.check(spans, || format!("{}: {l:?}", label(t)));
            side.check(chain.side_conditions_hold(), || format!("{}: {l:?} -> {chain:?}", label(t)));
        }
        Err(e) => recompose.check(false, || format!("{}: {l:?}: {e}", label(t))),
    };
    for t in [tower(2, 1, 2), tower(2, 1, 3)] {
        for l in all_polys(&t) {
            if l.rank_bruteforce() + 1 == t.n() {
                run(&t, &l);
            } else {
                refusal.check(
                    matches!(skew::factor_chain(&l), Err(crate::Error::WrongRank { .. })),
                    || format!("{}: {l:?}", label(&t)),
                );
            }
        }
    }
    let gf9 = tower(3, 1, 2);
    let mut found = 0;
    while found < 500 {
        let l = LinPoly::random(&gf9, rng);
        if l.rank_bruteforce() + 1 == gf9.n() {
            run(&gf9, &l);
            found += 1;
        }
    }
    let mut divides = Law::new("x - gamma^(q-1) right-divides x^n - 1");
    for t in [tower(2, 1, 2), tower(2, 1, 3), tower(3, 1, 2)] {
        for gamma in t.elements().expect("small field").filter(|g| !g.is_zero()) {
            let a = t.pow(&gamma, u128::from(t.q()) - 1);
            let divisor = SkewPoly::new(&t, vec![t.neg(&a), t.one()]).expect("same tower");
            let ok = SkewPoly::x_n_minus_one(&t)
                .right_divide(&divisor)
                .is_ok_and(|(_, r)| r.is_zero());
            divides.check(ok, || format!("{}: gamma = {gamma:?}", label(&t)));
        }
    }
    vec![
        recompose.done(),
        permutation.done(),
        kernel.done(),
        side.done(),
        refusal.done(),
        divides.done(),
    ]
}

fn subfield_poly(t: &Arc<FieldTower>, m: usize, rng: &mut ChaCha8Rng) -> LinPoly {
    let coeffs = (0..t.n())
        .map(|_| t.rel_trace(&t.random(rng), m).expect("m divides n"))
        .collect();
    LinPoly::new(t, coeffs).expect("same tower")
}

fn subfield_structure(rng: &mut ChaCha8Rng) -> Vec<LawOutcome> {
    let mut equivalence = Law::new("subfield coefficients <=> alpha pattern <=> block-circulant B_L");
    let mut check = |ctx: &SubfieldContext, l: &LinPoly| {
        let sub = is_subfield_poly(l, ctx.m()).expect("m divides n");
        let pattern = ctx.alpha_pattern_holds(l);
        let bc = is_block_circulant(&ctx.b_matrix(l), ctx.m());
        equivalence.check(sub == pattern && pattern == bc, || {
            format!("{}, m = {}: {l:?} gives {sub}, {pattern}, {bc}", label(ctx.tower()), ctx.m())
        });
    };
    let gf16 = tower(2, 1, 4);
    let all16 = all_polys(&gf16);
    for m in [1, 2] {
        let ctx = SubfieldContext::new(&gf16, m).expect("normal basis exists");
        for l in &all16 {
            check(&ctx, l);
        }
    }
    let gf64 = tower(2, 1, 6);
    for m in [1, 2, 3] {
        let ctx = SubfieldContext::new(&gf64, m).expect("normal basis exists");
        for _ in 0..300 {
            check(&ctx, &subfield_poly(&gf64, m, rng));
            check(&ctx, &LinPoly::random(&gf64, rng));
        }
    }

    let mut multiplicative = Law::new("B_(L1 ∘ L2) = B_L1 B_L2 on subfield polynomials");
    let ctx = SubfieldContext::new(&gf16, 2).expect("normal basis exists");
    for _ in 0..50 {
        let a = subfield_poly(&gf16, 2, rng);
        let b = subfield_poly(&gf16, 2, rng);
        let ab = a.compose(&b).expect("same tower");
        let prod = ctx.b_matrix(&a).mul(gf16.base(), &ctx.b_matrix(&b));
        let bab = ctx.b_matrix(&ab);
        multiplicative.check(bab == prod && is_block_circulant(&bab, 2), || format!("{a:?}, {b:?}"));
    }

    let mut rank_gcd = Law::new("rank of conjugates = n - deg gcd with x^n - 1");
    for t in [tower(2, 1, 2), tower(2, 1, 3), gf16] {
        let ctx = SubfieldContext::new(&t, 1).expect("normal basis exists");
        for alpha in t.elements().expect("small field") {
            let r = ctx.rank_gcd_check(&alpha);
            rank_gcd.check(matches!(r, Ok((a, b)) if a == b), || {
                format!("{}: alpha = {alpha:?} gives {r:?}", label(&t))
            });
        }
    }
    vec![equivalence.done(), multiplicative.done(), rank_gcd.done()]
}

fn basis_conjugation(rng: &mut ChaCha8Rng) -> Vec<LawOutcome> {
    let mut conj = Law::new("conjugated Dickson matrix has entries in GF(q)");
    let mut direct = Law::new("conjugated matrix equals the trace-pairing matrix");
    let mut coords = Law::new("columns are coordinates of the images");
    for t in [
        tower(2, 1, 2),
        tower(2, 1, 3),
        tower(3, 1, 2),
        tower(2, 2, 2),
        tower(2, 1, 6),
        tower(3, 1, 3),
    ] {
        for _ in 0..100 {
            let l = LinPoly::random(&t, rng);
            let basis = random_basis(&t, rng);
            let ctx = || format!("{}: {l:?} over {basis:?}", label(&t));
            match dickson::matrix_rep(&l, &basis) {
                Ok(m) => {
                    conj.check(true, String::new);
                    direct.check(dickson::matrix_rep_direct(&l, &basis).as_ref() == Ok(&m), ctx);
                    let images = l.images(&basis);
                    let ok = images.iter().enumerate().all(|(j, y)| {
                        t.coordinates_in(&basis, y).is_some_and(|c| c == m.column(j))
                    });
                    coords.check(ok, ctx);
                }
                Err(e) => conj.check(false, || format!("{}: {e}", ctx())),
            }
        }
    }
    vec![conj.done(), direct.done(), coords.done()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_parsing() {
        assert_eq!("adjugate-sign".parse::<Mutation>(), Ok(Mutation::AdjugateSign));
        assert!("nonsense".parse::<Mutation>().is_err());
    }

    #[test]
    fn empty_report_does_not_pass() {
        let r = run_criterion(42, &Config::default());
        assert!(!r.passed());
    }
}
