use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{compose, distinguishing_element, element, fn_equal, hom, hom_count, identity, Odometer};
use crate::category::{FnMor, SetObj};
use crate::derived::{build_integers, coproduct, family_from_map, factors_through, image, indexed_product, quotient};
use crate::derived::{EquivRelation, Subset};
use crate::error::{Error, Result};
use crate::nno::{nat_arith, recurse, prefix_unique, ArithOp, NatSystem};
use crate::universal::{self, classifier, is_terminal, product};
use crate::value::Value;

use super::oracle::{fibre_product, is_equivalence_mask, partition_of};
use super::{CheckId, Config, Kernel, Stats, Witness};

type Outcome = Result<Option<Witness>>;

/// Instance source and work budget for one check.
pub(crate) struct Ctx<'a> {
    cfg: &'a Config,
    kernel: Kernel,
    limit: usize,
    count: u64,
    stats: Stats,
    sampling: Option<usize>,
    rng: Option<ChaCha8Rng>,
}

/// How many data functions a sampling round draws per pair of sets.
const SAMPLED_MAPS: usize = 4;

impl<'a> Ctx<'a> {
    pub(crate) fn new(cfg: &'a Config, kernel: Kernel, limit: usize) -> Ctx<'a> {
        Ctx { cfg, kernel, limit, count: 0, stats: Stats::default(), sampling: None, rng: None }
    }

    pub(crate) fn start_sampling(&mut self, size: usize, seed: u64) {
        if self.rng.is_none() {
            self.rng = Some(ChaCha8Rng::seed_from_u64(seed));
        }
        self.sampling = Some(size);
    }

    pub(crate) fn stop_sampling(&mut self) {
        self.sampling = None;
    }

    pub(crate) fn stats(&self) -> Stats {
        self.stats.clone()
    }

    fn sampling(&self) -> bool {
        self.sampling.is_some()
    }

    fn charge(&mut self, n: u64) -> Result<()> {
        self.count = self.count.saturating_add(n);
        if self.count > self.cfg.ceiling {
            return Err(Error::BudgetExceeded { count: self.count, ceiling: self.cfg.ceiling });
        }
        Ok(())
    }

    fn instance(&mut self) -> Result<()> {
        self.charge(1)?;
        if self.sampling() {
            self.stats.sampled += 1;
        } else {
            self.stats.instances += 1;
        }
        Ok(())
    }

    /// Sizes of the base sets: `0..=limit`, or two random sizes when sampling,
    /// the first above the exhaustive cap.
    fn sizes(&mut self) -> Vec<usize> {
        self.sizes_up_to(self.limit)
    }

    fn sizes_up_to(&mut self, cap: usize) -> Vec<usize> {
        match (self.sampling, self.rng.as_mut()) {
            (Some(top), Some(rng)) => {
                let low = (cap + 1).min(top);
                vec![rng.gen_range(low..=top), rng.gen_range(0..=top)]
            }
            _ => (0..=cap).collect(),
        }
    }

    fn sets(&mut self) -> Vec<SetObj> {
        self.sizes().into_iter().map(pool_set).collect()
    }

    /// Every function `x → y`, or a few random ones when sampling.
    fn maps(&mut self, x: &SetObj, y: &SetObj) -> Result<Vec<FnMor>> {
        if let (Some(_), Some(rng)) = (self.sampling, self.rng.as_mut()) {
            if y.is_empty() {
                return Ok(hom(x, y).collect());
            }
            return Ok((0..SAMPLED_MAPS)
                .map(|_| {
                    let idx: Vec<usize> = (0..x.len()).map(|_| rng.gen_range(0..y.len())).collect();
                    FnMor::from_indices(x.clone(), y.clone(), &idx)
                })
                .collect());
        }
        let n = hom_count(x, y);
        if n > self.cfg.ceiling {
            return Err(Error::BudgetExceeded { count: self.count.saturating_add(n), ceiling: self.cfg.ceiling });
        }
        Ok(hom(x, y).collect())
    }

    /// Enumerates every table `{0..len} → {0..base}` and returns how many satisfy
    /// `pred`, with the first two that do.
    fn search(&mut self, len: usize, base: usize, mut pred: impl FnMut(&[usize]) -> bool) -> Result<(u64, Vec<Vec<usize>>)> {
        self.charge((base as u64).saturating_pow(len as u32))?;
        self.stats.candidates += (base as u64).saturating_pow(len as u32);
        let mut odo = Odometer::new(len, base);
        let mut count = 0u64;
        let mut first = Vec::new();
        while let Some(t) = odo.next_table() {
            if pred(t) {
                count += 1;
                if first.len() < 2 {
                    first.push(t.to_vec());
                }
            }
        }
        Ok((count, first))
    }

    /// Counts tables satisfying `at(pos, value)` at every position. Brute force
    /// in the exhaustive range; when sampling, counts each position separately
    /// and multiplies, which keeps large random sets affordable.
    fn search_pointwise(&mut self, len: usize, base: usize, at: impl Fn(usize, usize) -> bool) -> Result<(u64, Vec<Vec<usize>>)> {
        if !self.sampling() {
            return self.search(len, base, |t| t.iter().enumerate().all(|(p, &v)| at(p, v)));
        }
        let work = (len as u64).saturating_mul(base as u64);
        self.charge(work)?;
        self.stats.candidates += work;
        let options: Vec<Vec<usize>> = (0..len).map(|p| (0..base).filter(|&v| at(p, v)).collect()).collect();
        let count = options.iter().fold(1u64, |acc, o| acc.saturating_mul(o.len() as u64));
        let mut first = Vec::new();
        if count > 0 {
            let t: Vec<usize> = options.iter().map(|o| o[0]).collect();
            if let Some(p) = options.iter().position(|o| o.len() > 1) {
                let mut u = t.clone();
                u[p] = options[p][1];
                first = vec![t, u];
            } else {
                first = vec![t];
            }
        }
        Ok((count, first))
    }
}

/// `{a, b, ...}` with `n` atoms from a fixed pool.
pub(crate) fn pool_set(n: usize) -> SetObj {
    SetObj::atoms((0..n).map(|i| {
        let c = (b'a' + (i % 26) as u8) as char;
        if i < 26 { c.to_string() } else { format!("{c}{}", i / 26) }
    }))
}

pub(crate) fn describe(id: CheckId, limit: usize) -> String {
    let what = match id {
        CheckId::A1 => "identity laws and associativity of composable triples",
        CheckId::A2 => "maps into the terminal set",
        CheckId::A3 => "maps out of and elements of the empty set",
        CheckId::A4 => "distinct parallel maps differ at an element",
        CheckId::A5 => "mediators into X x Y for every I, f1, f2",
        CheckId::A6 => "transposes I -> Y^X for every q : I x X -> Y",
        CheckId::A7 => "factorizations through every fibre",
        CheckId::A8 => "classifying maps for every injection",
        CheckId::A9 => "recursion into every X, a, r on evaluated prefixes",
        CheckId::A10 => "sections of every surjection",
        CheckId::TerminalOne => "terminal by probing iff one element",
        CheckId::ClassifierTwo => "truth-value set size",
        CheckId::Coproduct => "axiomatic union against tagged union",
        CheckId::Quotient => "quotients of every equivalence relation against union-find",
        CheckId::IndexedProduct => "indexed products of every p : X -> I against fibre tuples",
        CheckId::LeastChoice => "sections pick least preimages",
        CheckId::Image => "images are least factoring subsets",
        CheckId::Integers => return "truncated integers at bounds 3 and 10".to_string(),
    };
    format!("{what}; sets of size <= {limit}")
}

pub(crate) fn dispatch(id: CheckId, ctx: &mut Ctx) -> Outcome {
    match id {
        CheckId::A1 => check_a1(ctx),
        CheckId::A2 => check_a2(ctx),
        CheckId::A3 => check_a3(ctx),
        CheckId::A4 => check_a4(ctx),
        CheckId::A5 => check_a5(ctx),
        CheckId::A6 => check_a6(ctx),
        CheckId::A7 => check_a7(ctx),
        CheckId::A8 => check_a8(ctx),
        CheckId::A9 => check_a9(ctx),
        CheckId::A10 => check_a10(ctx),
        CheckId::TerminalOne => check_terminal_one(ctx),
        CheckId::ClassifierTwo => check_classifier_two(ctx),
        CheckId::Coproduct => check_coproduct(ctx),
        CheckId::Quotient => check_quotient(ctx),
        CheckId::IndexedProduct => check_indexed_product(ctx),
        CheckId::LeastChoice => check_least_choice(ctx),
        CheckId::Image => check_image(ctx),
        CheckId::Integers => check_integers(ctx),
    }
}

fn counterexample(instance: String, detail: impl Into<String>) -> Option<Witness> {
    Some(Witness::Counterexample { instance, detail: detail.into() })
}

fn mediators(instance: String, count: u64, first: &[Vec<usize>], dom: &SetObj, cod: &SetObj) -> Witness {
    let mediators = first.iter().map(|t| FnMor::from_indices(dom.clone(), cod.clone(), t).to_string()).collect();
    Witness::Mediators { instance, count, mediators }
}

fn differ(f: &FnMor, g: &FnMor) -> Option<Witness> {
    distinguishing_element(f, g).map(|x| Witness::Element {
        left: f.apply(&x).map(|v| v.to_string()).unwrap_or_default(),
        right: g.apply(&x).map(|v| v.to_string()).unwrap_or_default(),
        element: x.to_string(),
    })
}

/// Tracks the first uniqueness failure, preferring one with several mediators.
#[derive(Default)]
struct Worst(Option<Witness>);

impl Worst {
    /// Returns true once a multi-mediator witness is held.
    fn offer(&mut self, w: Witness) -> bool {
        let several = matches!(w, Witness::Mediators { count, .. } if count >= 2);
        if several || self.0.is_none() {
            self.0 = Some(w);
        }
        several
    }
}

fn check_a1(ctx: &mut Ctx) -> Outcome {
    let sets = ctx.sets();
    let n = sets.len();
    let mut homs: Vec<Vec<Vec<FnMor>>> = Vec::with_capacity(n);
    for x in &sets {
        let mut row = Vec::with_capacity(n);
        for y in &sets {
            row.push(ctx.maps(x, y)?);
        }
        homs.push(row);
    }
    for (xi, x) in sets.iter().enumerate() {
        for (yi, y) in sets.iter().enumerate() {
            for f in &homs[xi][yi] {
                ctx.instance()?;
                let left = compose(&identity(y), f)?;
                if &left != f {
                    return Ok(differ(&left, f));
                }
                let right = compose(f, &identity(x))?;
                if &right != f {
                    return Ok(differ(&right, f));
                }
            }
        }
    }
    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in &homs[w][x] {
                        for g in &homs[x][y] {
                            let gf = compose(g, f)?;
                            for h in &homs[y][z] {
                                ctx.instance()?;
                                let left = compose(h, &gf)?;
                                let right = compose(&compose(h, g)?, f)?;
                                if left != right {
                                    return Ok(differ(&left, &right));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_a2(ctx: &mut Ctx) -> Outcome {
    let t = universal::terminal();
    for x in ctx.sets() {
        ctx.instance()?;
        let (count, first) = ctx.search(x.len(), t.len(), |_| true)?;
        if count != 1 {
            return Ok(Some(mediators(format!("X = {x}"), count, &first, &x, &t)));
        }
        if universal::to_terminal(&x).cod() != &t {
            return Ok(counterexample(format!("X = {x}"), "to_terminal misses the terminal set"));
        }
    }
    Ok(None)
}

fn check_a3(ctx: &mut Ctx) -> Outcome {
    let e = universal::empty();
    let t = universal::terminal();
    let (elems, _) = ctx.search(t.len(), e.len(), |_| true)?;
    if elems != 0 {
        return Ok(counterexample("elements of {}".into(), format!("{elems} elements")));
    }
    for x in ctx.sets() {
        ctx.instance()?;
        let (count, first) = ctx.search(e.len(), x.len(), |_| true)?;
        if count != 1 {
            return Ok(Some(mediators(format!("X = {x}"), count, &first, &e, &x)));
        }
    }
    Ok(None)
}

fn check_a4(ctx: &mut Ctx) -> Outcome {
    let sets = ctx.sets();
    for x in &sets {
        for y in &sets {
            let fs = ctx.maps(x, y)?;
            let elems = crate::category::elements(x);
            for f in &fs {
                for g in &fs {
                    ctx.instance()?;
                    let pointwise = elems
                        .iter()
                        .all(|e| crate::category::evaluate(f, e).ok() == crate::category::evaluate(g, e).ok());
                    if pointwise != (f == g) || fn_equal(f, g)? != pointwise {
                        return Ok(counterexample(
                            format!("f = {f}, g = {g}"),
                            "pointwise agreement and equality disagree",
                        ));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_a5(ctx: &mut Ctx) -> Outcome {
    let sets = ctx.sets();
    let mut worst = Worst::default();
    for x in &sets {
        for y in &sets {
            let cone = ctx.kernel.product(x, y);
            if cone.obj().len() != x.len() * y.len() {
                return Ok(counterexample(format!("X = {x}, Y = {y}"), format!("|X x Y| = {}", cone.obj().len())));
            }
            let (p1, p2) = (cone.pr1().image_indices(), cone.pr2().image_indices());
            for i in &sets {
                let f1s = ctx.maps(i, x)?;
                let f2s = ctx.maps(i, y)?;
                for f1 in &f1s {
                    let i1 = f1.image_indices();
                    for f2 in &f2s {
                        ctx.instance()?;
                        let i2 = f2.image_indices();
                        let (count, first) =
                            ctx.search_pointwise(i.len(), cone.obj().len(), |t, k| p1[k] == i1[t] && p2[k] == i2[t])?;
                        if count != 1 {
                            let w = mediators(format!("I = {i}, f1 = {f1}, f2 = {f2}"), count, &first, i, cone.obj());
                            if worst.offer(w) {
                                return Ok(worst.0);
                            }
                            continue;
                        }
                        if ctx.kernel.is_canonical() {
                            let m = universal::mediate_product(&cone, f1, f2)?;
                            if m.image_indices() != first[0] {
                                return Ok(counterexample(format!("f1 = {f1}, f2 = {f2}"), format!("constructed {m}")));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(worst.0)
}

fn check_a6(ctx: &mut Ctx) -> Outcome {
    let sets = ctx.sets();
    let mut worst = Worst::default();
    for x in &sets {
        for y in &sets {
            let fs = ctx.kernel.function_set(x, y);
            if fs.obj().len() as u64 != hom_count(x, y) {
                return Ok(counterexample(format!("X = {x}, Y = {y}"), format!("|Y^X| = {}", fs.obj().len())));
            }
            let ev = fs.ev().image_indices();
            let w = x.len();
            for i in &sets {
                let ix = product(i, x);
                for q in ctx.maps(ix.obj(), y)? {
                    ctx.instance()?;
                    let qi = q.image_indices();
                    let (count, first) = ctx.search_pointwise(i.len(), fs.obj().len(), |t, gk| {
                        (0..w).all(|xk| ev[gk * w + xk] == qi[t * w + xk])
                    })?;
                    if count != 1 {
                        let wit = mediators(format!("I = {i}, q = {q}"), count, &first, i, fs.obj());
                        if worst.offer(wit) {
                            return Ok(worst.0);
                        }
                        continue;
                    }
                    let qbar = universal::curry(&q, i, &fs)?;
                    if qbar.image_indices() != first[0] {
                        return Ok(counterexample(format!("q = {q}"), format!("curry gave {qbar}")));
                    }
                    let back = universal::uncurry(&qbar, &fs)?;
                    if back != q {
                        return Ok(differ(&back, &q));
                    }
                }
            }
        }
    }
    Ok(worst.0)
}

fn check_a7(ctx: &mut Ctx) -> Outcome {
    let sets = ctx.sets();
    let mut worst = Worst::default();
    for x in &sets {
        for y in &sets {
            for f in ctx.maps(x, y)? {
                let fi = f.image_indices();
                for (pk, pt) in y.values().iter().enumerate() {
                    let cone = ctx.kernel.inverse_image(&f, pt)?;
                    let incl = cone.incl().image_indices();
                    if incl.iter().any(|&k| fi[k] != pk) || !cone.incl().is_injective() {
                        return Ok(counterexample(format!("f = {f}, y = {pt}"), "the cone leaves the fibre"));
                    }
                    for t in &sets {
                        for q in ctx.maps(t, x)? {
                            let qi = q.image_indices();
                            if qi.iter().any(|&k| fi[k] != pk) {
                                continue;
                            }
                            ctx.instance()?;
                            let (count, first) = ctx.search(t.len(), cone.obj().len(), |m| {
                                m.iter().enumerate().all(|(s, &a)| incl[a] == qi[s])
                            })?;
                            if count != 1 {
                                let w = mediators(format!("f = {f}, y = {pt}, q = {q}"), count, &first, t, cone.obj());
                                if worst.offer(w) {
                                    return Ok(worst.0);
                                }
                                continue;
                            }
                            let m = universal::factor_through(&cone, &q)?;
                            if m.image_indices() != first[0] {
                                return Ok(counterexample(format!("q = {q}"), format!("factor_through gave {m}")));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(worst.0)
}

fn check_a8(ctx: &mut Ctx) -> Outcome {
    let cl = ctx.kernel.classifier();
    let two = cl.two().clone();
    let truth = two.index_of(cl.truth_value()).expect("truth lies in two");
    let sets = ctx.sets();
    let mut worst = Worst::default();
    for x in &sets {
        for a in &sets {
            for j in ctx.maps(a, x)? {
                if !j.is_injective() {
                    continue;
                }
                ctx.instance()?;
                let mut hit = vec![false; x.len()];
                for k in j.image_indices() {
                    hit[k] = true;
                }
                let (count, first) = ctx.search(x.len(), two.len(), |chi| chi.iter().zip(&hit).all(|(&c, &h)| (c == truth) == h))?;
                if count != 1 {
                    let w = mediators(format!("j = {j}"), count, &first, x, &two);
                    if worst.offer(w) {
                        return Ok(worst.0);
                    }
                    continue;
                }
                let chi = universal::characteristic(&j)?;
                let unique = FnMor::from_indices(x.clone(), two.clone(), &first[0]);
                if chi.table() != unique.table() {
                    return Ok(counterexample(format!("j = {j}"), format!("characteristic gave {chi}")));
                }
            }
        }
    }
    Ok(worst.0)
}

/// Sequence length checked for uniqueness against every candidate.
const A9_UNIQUE_LEN: usize = 4;
/// Evaluated prefix on which the defining equations are checked.
const A9_PREFIX: u64 = 64;

fn check_a9(ctx: &mut Ctx) -> Outcome {
    let sys = NatSystem::new(ctx.cfg.nat_bound);
    let sets = ctx.sets();
    for x in &sets {
        for r in ctx.maps(x, x)? {
            for a in x.values() {
                ctx.instance()?;
                let base = element(x, a)?;
                let rec = recurse(&sys, &base, &r)?;
                let len = A9_PREFIX.min(sys.bound());
                let seq = rec.prefix(len)?;
                if seq[0] != *a {
                    return Ok(counterexample(format!("a = {a}, r = {r}"), format!("x(0) = {}", seq[0])));
                }
                if let Some(n) = seq.windows(2).position(|w| r.apply(&w[0]) != Some(&w[1])) {
                    return Ok(counterexample(format!("a = {a}, r = {r}"), format!("x({}) != r(x({n}))", n + 1)));
                }
                let k = A9_UNIQUE_LEN.min(sys.bound() as usize);
                let vals = x.values();
                let (count, first) = ctx.search(k, x.len(), |t| {
                    let cand: Vec<Value> = t.iter().map(|&i| vals[i].clone()).collect();
                    prefix_unique(&sys, &base, &r, &cand)
                })?;
                let expected: Vec<usize> = seq[..k].iter().map(|v| x.index_of(v).expect("in X")).collect();
                if count != 1 || first[0] != expected {
                    let dom = pool_nat(k);
                    return Ok(Some(mediators(format!("a = {a}, r = {r}"), count, &first, &dom, x)));
                }
            }
        }
    }
    // arithmetic through recursion on a small square
    let lim = 6u64.min(sys.bound());
    for m in 0..lim {
        for n in 0..lim {
            ctx.instance()?;
            for (op, native) in [(ArithOp::Add, m.checked_add(n)), (ArithOp::Mul, m.checked_mul(n)), (ArithOp::Pow, m.checked_pow(n as u32))] {
                let Some(native) = native.filter(|&v| v < sys.bound()) else { continue };
                let got = nat_arith(&sys, op, m, n)?;
                if got != native {
                    return Ok(counterexample(format!("{op}({m}, {n})"), format!("gave {got}, expected {native}")));
                }
            }
        }
    }
    Ok(None)
}

fn pool_nat(k: usize) -> SetObj {
    SetObj::new((0..k as u64).map(Value::Nat))
}

/// Surjections between the generated sets.
fn surjections(ctx: &mut Ctx) -> Result<Vec<FnMor>> {
    let sets = ctx.sets();
    let mut out = Vec::new();
    for x in &sets {
        for y in &sets {
            out.extend(ctx.maps(x, y)?.into_iter().filter(|s| s.is_surjective()));
        }
    }
    Ok(out)
}

fn check_a10(ctx: &mut Ctx) -> Outcome {
    for s in surjections(ctx)? {
        ctx.instance()?;
        let i = ctx.kernel.right_inverse(&s)?;
        let si = compose(&s, &i)?;
        let id = identity(s.cod());
        if si != id {
            return Ok(differ(&si, &id));
        }
        let si_idx = s.image_indices();
        let (count, _) = ctx.search(s.cod().len(), s.dom().len(), |t| t.iter().enumerate().all(|(k, &d)| si_idx[d] == k))?;
        let fibres: Vec<Vec<Value>> = s
            .cod()
            .values()
            .iter()
            .map(|y| s.pairs().filter(|(_, v)| *v == y).map(|(x, _)| x.clone()).collect())
            .collect();
        let expected = fibre_product(&fibres).len() as u64;
        if count != expected {
            return Ok(counterexample(format!("s = {s}"), format!("{count} sections, fibre product has {expected}")));
        }
    }
    Ok(None)
}

fn check_least_choice(ctx: &mut Ctx) -> Outcome {
    for s in surjections(ctx)? {
        ctx.instance()?;
        let i = ctx.kernel.right_inverse(&s)?;
        for (y, chosen) in i.pairs() {
            let least = s.pairs().find(|(_, v)| *v == y).map(|(x, _)| x).expect("surjective");
            if chosen != least {
                return Ok(Some(Witness::Element {
                    element: y.to_string(),
                    left: chosen.to_string(),
                    right: least.to_string(),
                }));
            }
        }
    }
    Ok(None)
}

fn check_terminal_one(ctx: &mut Ctx) -> Outcome {
    let sets = ctx.sets();
    for t in &sets {
        ctx.instance()?;
        let mut by_probe = true;
        for x in &sets {
            let (count, _) = ctx.search(x.len(), t.len(), |_| true)?;
            by_probe &= count == 1;
        }
        if by_probe != (t.len() == 1) || is_terminal(t) != (t.len() == 1) {
            return Ok(counterexample(format!("T = {t}"), format!("probing says {by_probe}, size is {}", t.len())));
        }
    }
    Ok(None)
}

fn check_classifier_two(ctx: &mut Ctx) -> Outcome {
    ctx.instance()?;
    let cl = ctx.kernel.classifier();
    if cl.two().len() != 2 {
        return Ok(counterexample(format!("two = {}", cl.two()), format!("{} elements", cl.two().len())));
    }
    // subsets of X and maps X -> two are equinumerous
    for x in ctx.sets() {
        ctx.instance()?;
        let subsets = 1u64 << x.len();
        if hom_count(&x, cl.two()) != subsets {
            return Ok(counterexample(format!("X = {x}"), "subsets and classifying maps differ in number"));
        }
    }
    Ok(None)
}

fn check_coproduct(ctx: &mut Ctx) -> Outcome {
    let sets = ctx.sets();
    for x in &sets {
        for y in &sets {
            ctx.instance()?;
            // the axiomatic build evaluates every pair in the square of the two power sets
            let n = (x.len() + y.len()) as u64;
            ctx.charge(2u64.saturating_pow(n as u32).saturating_mul(n * n))?;
            let c = coproduct(x, y)?;
            let (tag, ax) = (c.tagged(), c.axiomatic());
            let inst = format!("X = {x}, Y = {y}");
            if ax.obj().len() != x.len() + y.len() || tag.obj().len() != x.len() + y.len() {
                return Ok(counterexample(inst, format!("|X + Y| = {}", ax.obj().len())));
            }
            let (tl, tr) = (tag.inl().image_indices(), tag.inr().image_indices());
            let (al, ar) = (ax.inl().image_indices(), ax.inr().image_indices());
            let mut want = vec![None; tag.obj().len()];
            for (&t, &a) in tl.iter().zip(&al).chain(tr.iter().zip(&ar)) {
                want[t] = Some(a);
            }
            let (count, first) = ctx.search_pointwise(tag.obj().len(), ax.obj().len(), |t, v| want[t].is_none_or(|a| a == v))?;
            if count != 1 {
                return Ok(Some(mediators(inst, count, &first, tag.obj(), ax.obj())));
            }
            if c.iso().image_indices() != first[0] || crate::category::is_isomorphism(c.iso()).is_none() {
                return Ok(counterexample(inst, format!("iso {} is not the unique comparison", c.iso())));
            }
            for z in &sets {
                let fs = ctx.maps(x, z)?;
                let gs = ctx.maps(y, z)?;
                for f in &fs {
                    let fi = f.image_indices();
                    for g in &gs {
                        ctx.instance()?;
                        let gi = g.image_indices();
                        let mut want = vec![None; ax.obj().len()];
                        for (&a, &v) in al.iter().zip(&fi).chain(ar.iter().zip(&gi)) {
                            want[a] = Some(v);
                        }
                        let (count, first) = ctx.search_pointwise(ax.obj().len(), z.len(), |a, v| want[a].is_none_or(|w| w == v))?;
                        if count != 1 {
                            return Ok(Some(mediators(format!("{inst}, f = {f}, g = {g}"), count, &first, ax.obj(), z)));
                        }
                        let h = ax.copair(f, g)?;
                        if h.image_indices() != first[0] {
                            return Ok(counterexample(format!("f = {f}, g = {g}"), format!("copair gave {h}")));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Largest carrier on which every non-equivalence is also checked for rejection.
const REJECT_CAP: usize = 3;

fn check_quotient(ctx: &mut Ctx) -> Outcome {
    for n in ctx.sizes() {
        let carrier = pool_set(n);
        let masks: Vec<u64> = if ctx.sampling() {
            let rng = ctx.rng.as_mut().expect("sampling has a generator");
            (0..SAMPLED_MAPS)
                .map(|_| {
                    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n.max(1))).collect();
                    partition_mask(n, &labels)
                })
                .collect()
        } else {
            if n * n >= 64 {
                return Err(Error::BudgetExceeded { count: u64::MAX, ceiling: ctx.cfg.ceiling });
            }
            ctx.charge(1 << (n * n))?;
            (0..1u64 << (n * n)).filter(|&m| n <= REJECT_CAP || is_equivalence_mask(n, m)).collect()
        };
        for mask in masks {
            let equivalence = is_equivalence_mask(n, mask);
            let pairs: Vec<(Value, Value)> = (0..n * n)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| (carrier.values()[b / n.max(1)].clone(), carrier.values()[b % n.max(1)].clone()))
                .collect();
            let rel = EquivRelation::from_pairs(carrier.clone(), &pairs);
            if !equivalence {
                if rel.is_ok() {
                    return Ok(counterexample(format!("relation {mask:#b} on {carrier}"), "accepted a non-equivalence"));
                }
                continue;
            }
            ctx.instance()?;
            let q = quotient(&rel?)?;
            let blocks: Vec<Vec<usize>> = q
                .classes()
                .iter()
                .map(|c| c.values().iter().map(|v| carrier.index_of(v).expect("in carrier")).collect())
                .collect();
            let mut blocks = blocks;
            blocks.sort();
            let oracle = partition_of(n, |i, j| mask >> (i * n + j) & 1 == 1);
            if blocks != oracle || q.obj().len() != oracle.len() || !q.proj().is_surjective() {
                return Ok(counterexample(
                    format!("relation {mask:#b} on {carrier}"),
                    format!("classes {blocks:?}, union-find {oracle:?}"),
                ));
            }
        }
    }
    Ok(None)
}

/// The relation "same label", as a mask with bit `i * n + j`.
fn partition_mask(n: usize, labels: &[usize]) -> u64 {
    let mut mask = 0u64;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                mask |= 1 << (i * n + j);
            }
        }
    }
    mask
}

fn check_indexed_product(ctx: &mut Ctx) -> Outcome {
    let limit = ctx.limit;
    let doms: Vec<SetObj> = ctx.sizes_up_to((limit + 1).min(4)).into_iter().map(pool_set).collect();
    let cods: Vec<SetObj> = ctx.sizes().into_iter().map(pool_index).collect();
    for x in &doms {
        for i in &cods {
            for p in ctx.maps(x, i)? {
                ctx.instance()?;
                // every graph in X^I and I^I is built and composed
                let graphs = hom_count(i, x).saturating_add(hom_count(i, i));
                ctx.charge(graphs.saturating_mul(i.len() as u64 * GRAPH_WEIGHT))?;
                let ip = indexed_product(&p)?;
                let fibres: Vec<Vec<Value>> = family_from_map(&p)?.into_iter().map(|(_, s)| s.values().to_vec()).collect();
                let expected = SetObj::new(fibre_product(&fibres).into_iter().map(|choice| {
                    Value::graph(i.values().iter().cloned().zip(choice)).expect("distinct indices")
                }));
                let size: usize = fibres.iter().map(Vec::len).product();
                if ip.obj() != &expected || ip.obj().len() != size || !ip.incl().is_injective() {
                    return Ok(counterexample(format!("p = {p}"), format!("built {}, fibre tuples {}", ip.obj(), expected)));
                }
            }
        }
    }
    Ok(None)
}

/// Work units per graph entry built: allocating a graph costs roughly this
/// many odometer steps.
const GRAPH_WEIGHT: u64 = 16;

/// Index sets use atoms disjoint from the base pool.
fn pool_index(n: usize) -> SetObj {
    SetObj::atoms((0..n).map(|k| format!("i{k}")))
}

fn check_image(ctx: &mut Ctx) -> Outcome {
    let two = classifier().two().clone();
    let sets = ctx.sets();
    for x in &sets {
        for y in &sets {
            let subsets: Vec<Subset> = hom(y, &two).map(Subset::from_chi).collect::<Result<_>>()?;
            for f in ctx.maps(x, y)? {
                ctx.instance()?;
                let im = image(&f);
                let mut hit = f.image_indices();
                hit.sort();
                hit.dedup();
                if !factors_through(&f, &im) || im.len() != hit.len() {
                    return Ok(counterexample(format!("f = {f}"), format!("image {}", im.members())));
                }
                ctx.charge(subsets.len() as u64)?;
                if let Some(s) = subsets.iter().find(|s| factors_through(&f, s) && !im.is_subset_of(s)) {
                    return Ok(counterexample(format!("f = {f}"), format!("{} is not below {}", im.members(), s.members())));
                }
            }
        }
    }
    Ok(None)
}

fn check_integers(ctx: &mut Ctx) -> Outcome {
    if ctx.sampling() {
        return Ok(None);
    }
    for bound in [3u64, 10] {
        ctx.instance()?;
        let z = build_integers(bound)?;
        let inst = format!("bound {bound}");
        if z.obj().len() as u64 != 2 * bound + 1 {
            return Ok(counterexample(inst, format!("{} classes", z.obj().len())));
        }
        // the pairs (2, 5) and (0, 3) only exist once the bound reaches 5
        if bound >= 5 && (!z.same_class((2, 5), (0, 3)) || z.same_class((2, 5), (0, 4))) {
            return Ok(counterexample(inst, "(2, 5) is classed wrongly"));
        }
        ctx.charge((bound + 1).pow(4))?;
        for m in 0..=bound {
            for n in 0..=bound {
                for m2 in 0..=bound {
                    for n2 in 0..=bound {
                        let oracle = m as i64 - n as i64 == m2 as i64 - n2 as i64;
                        if z.same_class((m, n), (m2, n2)) != oracle {
                            return Ok(counterexample(inst, format!("({m}, {n}) against ({m2}, {n2})")));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
