use std::fmt::Debug;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lawcheck::{LawFailure, LawId, LawReport, SampleSpec, Sampler, MAX_RECORDED_FAILURES};

const SHOW_LIMIT: usize = 600;

fn show(x: &impl Debug) -> String {
    let s = format!("{x:?}");
    match s.char_indices().nth(SHOW_LIMIT) {
        Some((cut, _)) => format!("{}…", &s[..cut]),
        None => s,
    }
}

fn object<C: Sampler>(cat: &C, rng: &mut ChaCha8Rng, (lo, hi): (usize, usize)) -> C::Object {
    cat.object_of_size(rng.random_range(lo..=hi))
}

/// `len` objects such that each consecutive hom-set is inhabited.
pub(crate) fn chain<C: Sampler>(cat: &C, rng: &mut ChaCha8Rng, range: (usize, usize), len: usize) -> Vec<C::Object> {
    let mut out: Vec<C::Object> = Vec::with_capacity(len);
    while out.len() < len {
        let next = match out.last() {
            None => object(cat, rng, range),
            Some(prev) => {
                let mut pick = None;
                for _ in 0..16 {
                    let candidate = object(cat, rng, range);
                    if cat.hom_inhabited(prev, &candidate) {
                        pick = Some(candidate);
                        break;
                    }
                }
                pick.unwrap_or_else(|| prev.clone())
            }
        };
        out.push(next);
    }
    out
}

struct Recorder<'a, C: Sampler> {
    cat: &'a C,
    report: LawReport,
    trial: usize,
}

impl<C: Sampler> Recorder<'_, C> {
    fn compare(&mut self, inputs: impl FnOnce() -> String, left: Result<C::Morphism>, right: Result<C::Morphism>) {
        let deviation = match (&left, &right) {
            (Ok(l), Ok(r)) => Some(self.cat.deviation(l, r)).filter(|d| d.is_finite()),
            _ => None,
        };
        if let Some(d) = deviation {
            self.report.max_deviation = self.report.max_deviation.max(d);
        }
        let holds = matches!((&left, &right), (Ok(l), Ok(r)) if self.cat.approx_eq(l, r));
        if holds {
            return;
        }
        self.report.failure_count += 1;
        if self.report.failures.len() < MAX_RECORDED_FAILURES {
            let side = |x: &Result<C::Morphism>| match x {
                Ok(m) => show(m),
                Err(e) => format!("error: {e}"),
            };
            self.report.failures.push(LawFailure {
                trial: self.trial,
                inputs: inputs(),
                left: side(&left),
                right: side(&right),
                deviation,
            });
        }
    }

    fn inverse_pair(&mut self, what: &str, forward: &C::Morphism, backward: &C::Morphism) {
        let cat = self.cat;
        let there = cat.dom(forward);
        let back = cat.cod(forward);
        let label = || format!("{what} = {}", show(forward));
        self.compare(label, cat.compose(backward, forward), Ok(cat.identity(&there)));
        self.compare(label, cat.compose(forward, backward), Ok(cat.identity(&back)));
    }

    fn assoc(&mut self, f: &C::Morphism, g: &C::Morphism, h: &C::Morphism) {
        let cat = self.cat;
        let left = cat.compose(g, f).and_then(|gf| cat.compose(h, &gf));
        let right = cat.compose(h, g).and_then(|hg| cat.compose(&hg, f));
        self.compare(|| format!("f = {}, g = {}, h = {}", show(f), show(g), show(h)), left, right);
    }

    fn identity(&mut self, f: &C::Morphism) {
        let cat = self.cat;
        let (a, b) = (cat.dom(f), cat.cod(f));
        self.compare(|| format!("id_cod ∘ f, f = {}", show(f)), cat.compose(&cat.identity(&b), f), Ok(f.clone()));
        self.compare(|| format!("f ∘ id_dom, f = {}", show(f)), cat.compose(f, &cat.identity(&a)), Ok(f.clone()));
    }

    fn interchange(&mut self, f1: &C::Morphism, g1: &C::Morphism, f2: &C::Morphism, g2: &C::Morphism) {
        let cat = self.cat;
        let left = cat
            .compose(g1, f1)
            .and_then(|first| cat.compose(g2, f2).map(|second| cat.product_mor(&first, &second)));
        let right = cat.compose(&cat.product_mor(g1, g2), &cat.product_mor(f1, f2));
        let inputs = || format!("f1 = {}, g1 = {}, f2 = {}, g2 = {}", show(f1), show(g1), show(f2), show(g2));
        self.compare(inputs, left, right);

        let (a, b) = (cat.dom(f1), cat.dom(f2));
        let ids = cat.product_mor(&cat.identity(&a), &cat.identity(&b));
        let whole = cat.identity(&cat.product_obj(&a, &b));
        self.compare(|| format!("id ⊗ id on A = {}, B = {}", show(&a), show(&b)), Ok(ids), Ok(whole));
    }

    fn alpha(&mut self, f: &C::Morphism, g: &C::Morphism, h: &C::Morphism) {
        let cat = self.cat;
        let (a, b, c) = (cat.dom(f), cat.dom(g), cat.dom(h));
        let (a2, b2, c2) = (cat.cod(f), cat.cod(g), cat.cod(h));
        let src = cat.associator(&a, &b, &c);
        let dst = cat.associator(&a2, &b2, &c2);
        let left = cat.compose(&dst.forward, &cat.product_mor(&cat.product_mor(f, g), h));
        let right = cat.compose(&cat.product_mor(f, &cat.product_mor(g, h)), &src.forward);
        self.compare(|| format!("f = {}, g = {}, h = {}", show(f), show(g), show(h)), left, right);
        self.inverse_pair("α", &src.forward, &src.backward);
    }

    fn lambda(&mut self, f: &C::Morphism) {
        let cat = self.cat;
        let unit = cat.unit();
        let (a, b) = (cat.dom(f), cat.cod(f));
        let la = cat.left_unitor(&a);
        let lb = cat.left_unitor(&b);
        let left = cat.compose(&lb.forward, &cat.product_mor(&cat.identity(&unit), f));
        let right = cat.compose(f, &la.forward);
        self.compare(|| format!("f = {}", show(f)), left, right);
        self.inverse_pair("λ", &la.forward, &la.backward);
    }

    fn rho(&mut self, f: &C::Morphism) {
        let cat = self.cat;
        let unit = cat.unit();
        let (a, b) = (cat.dom(f), cat.cod(f));
        let ra = cat.right_unitor(&a);
        let rb = cat.right_unitor(&b);
        let left = cat.compose(&rb.forward, &cat.product_mor(f, &cat.identity(&unit)));
        let right = cat.compose(f, &ra.forward);
        self.compare(|| format!("f = {}", show(f)), left, right);
        self.inverse_pair("ρ", &ra.forward, &ra.backward);
    }

    fn triangle(&mut self, a: &C::Object, b: &C::Object) {
        let cat = self.cat;
        let unit = cat.unit();
        let alpha = cat.associator(a, &unit, b);
        let id_lambda = cat.product_mor(&cat.identity(a), &cat.left_unitor(b).forward);
        let left = cat.compose(&id_lambda, &alpha.forward);
        let right = cat.product_mor(&cat.right_unitor(a).forward, &cat.identity(b));
        self.compare(|| format!("A = {}, B = {}", show(a), show(b)), left, Ok(right));
    }

    fn pentagon(&mut self, a: &C::Object, b: &C::Object, c: &C::Object, d: &C::Object) {
        let cat = self.cat;
        let ab = cat.product_obj(a, b);
        let bc = cat.product_obj(b, c);
        let cd = cat.product_obj(c, d);
        let first = cat.product_mor(&cat.associator(a, b, c).forward, &cat.identity(d));
        let middle = cat.associator(a, &bc, d).forward;
        let last = cat.product_mor(&cat.identity(a), &cat.associator(b, c, d).forward);
        let left = cat.compose(&middle, &first).and_then(|m| cat.compose(&last, &m));
        let right = cat.compose(&cat.associator(a, b, &cd).forward, &cat.associator(&ab, c, d).forward);
        self.compare(|| format!("A = {}, B = {}, C = {}, D = {}", show(a), show(b), show(c), show(d)), left, right);
    }
}

pub(crate) fn run_random<C: Sampler>(cat: &C, spec: &SampleSpec, law: LawId) -> LawReport {
    let mut rng = spec.rng(law.stream());
    let range = spec.object_size_range;
    let mut rec = Recorder { cat, report: LawReport::new(law), trial: 0 };
    for trial in 0..spec.trial_count {
        rec.trial = trial;
        let rng = &mut rng;
        let mut morphisms = |n: usize| -> Vec<C::Morphism> {
            let objs = chain(cat, rng, range, n + 1);
            (0..n).map(|i| cat.sample_morphism(rng, &objs[i], &objs[i + 1])).collect()
        };
        match law {
            LawId::Assoc => {
                let m = morphisms(3);
                rec.assoc(&m[0], &m[1], &m[2]);
            }
            LawId::Identity => rec.identity(&morphisms(1)[0]),
            LawId::Interchange => {
                let first = morphisms(2);
                let second = morphisms(2);
                rec.interchange(&first[0], &first[1], &second[0], &second[1]);
            }
            LawId::NaturalityAlpha => {
                let (f, g, h) = (morphisms(1).remove(0), morphisms(1).remove(0), morphisms(1).remove(0));
                rec.alpha(&f, &g, &h);
            }
            LawId::NaturalityLambda => rec.lambda(&morphisms(1)[0]),
            LawId::NaturalityRho => rec.rho(&morphisms(1)[0]),
            LawId::Triangle => {
                let (a, b) = (object(cat, rng, range), object(cat, rng, range));
                rec.triangle(&a, &b);
            }
            LawId::Pentagon => {
                let objs: Vec<C::Object> = (0..4).map(|_| object(cat, rng, range)).collect();
                rec.pentagon(&objs[0], &objs[1], &objs[2], &objs[3]);
            }
        }
    }
    rec.report.trials = spec.trial_count;
    rec.report
}

/// Morphisms of every hom-set between objects of size `0..=max`, grouped by
/// `(dom size, cod size)`.
struct Universe<C: Sampler> {
    objects: Vec<C::Object>,
    homs: Vec<Vec<Vec<C::Morphism>>>,
}

impl<C: Sampler> Universe<C> {
    fn new(cat: &C, max: usize) -> Self {
        let objects: Vec<C::Object> = (0..=max).map(|n| cat.object_of_size(n)).collect();
        let homs = objects
            .iter()
            .map(|a| objects.iter().map(|b| cat.all_morphisms(a, b).unwrap_or_default()).collect())
            .collect();
        Universe { objects, homs }
    }

    fn all(&self) -> impl Iterator<Item = &C::Morphism> {
        self.homs.iter().flatten().flatten()
    }

    fn from(&self, i: usize) -> impl Iterator<Item = (usize, &C::Morphism)> {
        self.homs[i].iter().enumerate().flat_map(|(j, fs)| fs.iter().map(move |f| (j, f)))
    }
}

pub(crate) fn run_exhaustive<C: Sampler>(cat: &C, max: usize, law: LawId) -> LawReport {
    let u = Universe::new(cat, max);
    let n = u.objects.len();
    let mut rec = Recorder { cat, report: LawReport::new(law), trial: 0 };
    let step = |rec: &mut Recorder<C>, run: &mut dyn FnMut(&mut Recorder<C>)| {
        run(rec);
        rec.trial += 1;
    };
    match law {
        LawId::Assoc => {
            for a in 0..n {
                for (b, f) in u.from(a) {
                    for (c, g) in u.from(b) {
                        for (_, h) in u.from(c) {
                            step(&mut rec, &mut |r| r.assoc(f, g, h));
                        }
                    }
                }
            }
        }
        LawId::Identity => u.all().for_each(|f| step(&mut rec, &mut |r| r.identity(f))),
        LawId::Interchange => {
            for a in 0..n {
                for (b, f1) in u.from(a) {
                    for (_, g1) in u.from(b) {
                        for a2 in 0..n {
                            for (b2, f2) in u.from(a2) {
                                for (_, g2) in u.from(b2) {
                                    step(&mut rec, &mut |r| r.interchange(f1, g1, f2, g2));
                                }
                            }
                        }
                    }
                }
            }
        }
        LawId::NaturalityAlpha => {
            for f in u.all() {
                for g in u.all() {
                    for h in u.all() {
                        step(&mut rec, &mut |r| r.alpha(f, g, h));
                    }
                }
            }
        }
        LawId::NaturalityLambda => u.all().for_each(|f| step(&mut rec, &mut |r| r.lambda(f))),
        LawId::NaturalityRho => u.all().for_each(|f| step(&mut rec, &mut |r| r.rho(f))),
        LawId::Triangle => {
            for a in &u.objects {
                for b in &u.objects {
                    step(&mut rec, &mut |r| r.triangle(a, b));
                }
            }
        }
        LawId::Pentagon => {
            for a in &u.objects {
                for b in &u.objects {
                    for c in &u.objects {
                        for d in &u.objects {
                            step(&mut rec, &mut |r| r.pentagon(a, b, c, d));
                        }
                    }
                }
            }
        }
    }
    rec.report.trials = rec.trial;
    rec.report
}
