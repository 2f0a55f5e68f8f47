//! Ground truth by exact linear algebra on a finite truncation of the
//! ambient order.
//!
//! An [`Oracle`] fixes one truncation (the z window padded by `margin` on
//! both sides), realizes classes on it and answers Hom, Ext, cone, `DTr` and
//! decomposition queries without consulting the symbolic rules.

pub mod presentation;
pub mod rep;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldChoice, PrimeField, Rationals};
use crate::matrix::Matrix;
use crate::objects::{DObj, IndClass, IndObj, ObjectError};
use crate::order::{truncate, DPoint, FinPoset, Kind, LPoint, OrderError, PosetSpec};

use presentation::{dtr, ext_classes, extension, hom_from_presented, is_projective, presentation, ProjPresentation, StandardSum};
use rep::{cokernel, hom_basis, hom_dim, kernel, realize_on, FinQuiverRep, RepMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("dimension vector and matrix shapes disagree")]
    ShapeMismatch,
    #[error("representations live on different posets")]
    PosetMismatch,
    #[error("dimension vector length does not match the poset")]
    IndexMismatch,
    #[error("hom minus Euler form is negative; the quiver is not hereditary")]
    NegativeExt,
    #[error("zero representation")]
    ZeroRepresentation,
    #[error("class cannot be realized on this poset")]
    IllegalClass,
    #[error("poset vertices carry no origin")]
    MissingOrigin,
    #[error("support of {0:?} exceeds the truncation")]
    SupportExceedsTruncation(IndClass),
    #[error("representation does not decompose over the catalog")]
    NotInCatalog,
    #[error("morphism space has dimension {0}; only rank one is supported")]
    NotUnique(usize),
    #[error("there is no nonzero morphism")]
    ZeroMap,
    #[error("data is not an intertwiner")]
    NotAnIntertwiner,
    #[error("result changes between margins {0} and {1}")]
    MarginTooSmall(u32, u32),
    #[error("expected an indecomposable, found {0} summands")]
    NotIndecomposable(usize),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Object(#[from] ObjectError),
}

/// Every indecomposable of the truncated poset, in the class notation. The
/// predecessor of the first chain point stands for "no chain support", so
/// that the simples at `Q1`, `Q2` are `A1`/`A2` of that point.
pub fn local_catalog(poset: &FinPoset, kind: Kind) -> Vec<IndClass> {
    let chain: Vec<LPoint> = (0..poset.len())
        .filter_map(|v| match poset.origin(v) {
            Some(DPoint::In(p)) => Some(p),
            _ => None,
        })
        .collect();
    let mut out = Vec::new();
    for (a, &i) in chain.iter().enumerate() {
        for &j in &chain[a..] {
            out.push(IndClass::A(i, j));
        }
    }
    if kind == Kind::TypeD && !chain.is_empty() {
        let mut ext = vec![chain[0].predecessor()];
        ext.extend_from_slice(&chain);
        for &j in &ext {
            out.push(IndClass::A1(j));
            out.push(IndClass::A2(j));
        }
        for (a, &i) in ext.iter().enumerate() {
            for &j in &ext[a + 1..] {
                out.push(IndClass::B(i, j));
            }
        }
    }
    out.sort();
    out
}

/// Outcome of certifying the almost split sequence ending in a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArCertificate {
    pub end: IndClass,
    pub tau: Vec<IndClass>,
    pub ext_dim: usize,
    pub middle: Vec<IndClass>,
    pub exact: bool,
    pub non_split: bool,
    pub lifting_samples: usize,
    pub lifting_ok: bool,
}

impl ArCertificate {
    pub fn ok(&self) -> bool {
        self.tau.len() == 1 && self.ext_dim == 1 && self.exact && self.non_split && self.lifting_ok
    }
}

pub struct Oracle<F: Field> {
    field: F,
    spec: PosetSpec,
    margin: u32,
    poset: Arc<FinPoset>,
    catalog: Vec<IndClass>,
    reps: HashMap<IndClass, FinQuiverRep<F>>,
    hom_cache: RwLock<HashMap<(IndClass, IndClass), usize>>,
    pres_cache: RwLock<HashMap<IndClass, Arc<ProjPresentation<F>>>>,
}

impl<F: Field> Oracle<F> {
    pub fn new(field: F, spec: &PosetSpec, margin: u32) -> Result<Self, OracleError> {
        let wide = spec.widened(i64::from(margin));
        let poset = Arc::new(truncate(&wide, wide.first_point(), wide.last_point(), 0)?);
        let catalog = local_catalog(&poset, spec.kind());
        let reps = catalog
            .iter()
            .map(|c| realize_on(&field, c, &poset).map(|r| (*c, r)))
            .collect::<Result<_, _>>()?;
        Ok(Oracle {
            field,
            spec: spec.clone(),
            margin,
            poset,
            catalog,
            reps,
            hom_cache: RwLock::new(HashMap::new()),
            pres_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn poset(&self) -> &Arc<FinPoset> {
        &self.poset
    }

    pub fn catalog(&self) -> &[IndClass] {
        &self.catalog
    }

    /// Both the left end and the presentation point `upper + 1` must be
    /// vertices of the truncation.
    pub fn covers(&self, c: &IndClass) -> bool {
        if c.check(&self.spec).is_err() {
            return false;
        }
        let has = |p: LPoint| self.poset.index_of(DPoint::In(p)).is_some();
        c.lower().is_none_or(has) && has(c.upper().successor())
    }

    pub fn realize(&self, c: &IndClass) -> Result<FinQuiverRep<F>, OracleError> {
        if !self.covers(c) {
            return Err(OracleError::SupportExceedsTruncation(*c));
        }
        Ok(self.reps[c].clone())
    }

    fn rep_ref(&self, c: &IndClass) -> Result<&FinQuiverRep<F>, OracleError> {
        if !self.covers(c) {
            return Err(OracleError::SupportExceedsTruncation(*c));
        }
        Ok(&self.reps[c])
    }

    fn cached_hom(&self, a: &IndClass, b: &IndClass) -> Result<usize, OracleError> {
        if let Some(&h) = self.hom_cache.read().expect("cache lock").get(&(*a, *b)) {
            return Ok(h);
        }
        let h = hom_dim(&self.field, &self.reps[a], &self.reps[b])?;
        self.hom_cache.write().expect("cache lock").insert((*a, *b), h);
        Ok(h)
    }

    fn cached_presentation(&self, c: &IndClass) -> Arc<ProjPresentation<F>> {
        if let Some(p) = self.pres_cache.read().expect("cache lock").get(c) {
            return p.clone();
        }
        let p = Arc::new(presentation(&self.field, &self.reps[c]));
        self.pres_cache.write().expect("cache lock").insert(*c, p.clone());
        p
    }

    pub fn hom_class(&self, a: &IndClass, b: &IndClass) -> Result<usize, OracleError> {
        self.rep_ref(a)?;
        self.rep_ref(b)?;
        self.cached_hom(a, b)
    }

    pub fn ext_class(&self, a: &IndClass, b: &IndClass) -> Result<usize, OracleError> {
        let (ra, rb) = (self.rep_ref(a)?, self.rep_ref(b)?);
        let hom = self.cached_hom(a, b)? as i64;
        let euler = rep::euler_form(&self.poset, ra.dims(), rb.dims())?;
        usize::try_from(hom - euler).map_err(|_| OracleError::NegativeExt)
    }

    /// Derived Hom: only relative shifts 0 and 1 can be nonzero.
    pub fn hom(&self, x: &IndObj, y: &IndObj) -> Result<usize, OracleError> {
        match y.shift - x.shift {
            0 => self.hom_class(&x.cls, &y.cls),
            1 => self.ext_class(&x.cls, &y.cls),
            _ => {
                self.rep_ref(&x.cls)?;
                self.rep_ref(&y.cls)?;
                Ok(0)
            }
        }
    }

    pub fn end_dim(&self, c: &IndClass) -> Result<usize, OracleError> {
        rep::end_dim(&self.field, self.rep_ref(c)?)
    }

    /// Multiplicities by hom-count fingerprint: solve
    /// `sum_J mu_J hom(I, J) = hom(I, m)` over the catalog entries that fit
    /// inside the dimension vector of `m`.
    pub fn decompose(&self, m: &FinQuiverRep<F>) -> Result<Vec<IndClass>, OracleError> {
        if m.is_zero() {
            return Ok(Vec::new());
        }
        if !Arc::ptr_eq(m.poset(), &self.poset) && **m.poset() != *self.poset {
            return Err(OracleError::PosetMismatch);
        }
        let fits = |c: &IndClass| self.reps[c].dims().iter().zip(m.dims()).all(|(a, b)| a <= b);
        let cands: Vec<IndClass> = self.catalog.iter().filter(|c| fits(c)).copied().collect();
        let b: Vec<i64> = cands
            .iter()
            .map(|i| hom_from_presented(&self.field, &self.cached_presentation(i), m) as i64)
            .collect();
        // Only classes mapping nonzero to m can occur as summands.
        let cands: Vec<(IndClass, i64)> = cands.into_iter().zip(b).collect();
        let support: Vec<IndClass> = cands.iter().filter(|(_, v)| *v > 0).map(|(c, _)| *c).collect();
        let n = support.len();
        let mut h = Vec::with_capacity(n * n);
        for i in &support {
            for j in &support {
                h.push(self.cached_hom(i, j)? as i64);
            }
        }
        let rhs: Vec<i64> = cands.iter().map(|(_, v)| *v).filter(|v| *v > 0).collect();
        let mu = integer_solution(n, &h, &rhs).ok_or(OracleError::NotInCatalog)?;
        for (i, v) in cands.iter().filter(|(_, v)| *v == 0) {
            let mut acc = 0i64;
            for (k, j) in support.iter().enumerate() {
                if mu[k] != 0 {
                    acc += mu[k] * self.cached_hom(i, j)? as i64;
                }
            }
            if acc != *v {
                return Err(OracleError::NotInCatalog);
            }
        }
        let cands = support;
        let mut out = Vec::new();
        let mut total = vec![0usize; m.dims().len()];
        for (k, c) in cands.iter().enumerate() {
            let count = usize::try_from(mu[k]).map_err(|_| OracleError::NotInCatalog)?;
            for _ in 0..count {
                out.push(*c);
                for (t, d) in total.iter_mut().zip(self.reps[c].dims()) {
                    *t += d;
                }
            }
        }
        if total != m.dims() {
            return Err(OracleError::NotInCatalog);
        }
        Ok(out)
    }

    /// Krull-Schmidt round trip: realize a direct sum and decompose it.
    pub fn decompose_sum(&self, classes: &[IndClass]) -> Result<Vec<IndClass>, OracleError> {
        let mut m = FinQuiverRep::zero(&self.field, self.poset.clone());
        for c in classes {
            m = m.direct_sum(self.rep_ref(c)?)?;
        }
        self.decompose(&m)
    }

    pub fn dtr_classes(&self, c: &IndClass) -> Result<Vec<IndClass>, OracleError> {
        let t = dtr(&self.field, self.rep_ref(c)?);
        self.decompose(&t)
    }

    pub fn tau_class(&self, c: &IndClass) -> Result<IndClass, OracleError> {
        let t = self.dtr_classes(c)?;
        match t.as_slice() {
            [one] => Ok(*one),
            other => Err(OracleError::NotIndecomposable(other.len())),
        }
    }

    fn single_morphism(&self, a: &IndClass, b: &IndClass) -> Result<RepMorphism<F>, OracleError> {
        let mut basis = hom_basis(&self.field, self.rep_ref(a)?, self.rep_ref(b)?)?;
        match basis.len() {
            0 => Err(OracleError::ZeroMap),
            1 => Ok(basis.remove(0)),
            n => Err(OracleError::NotUnique(n)),
        }
    }

    fn split_cone(&self, f: &RepMorphism<F>, src: &FinQuiverRep<F>, dst: &FinQuiverRep<F>, shift: i64) -> Result<DObj, OracleError> {
        if !f.is_intertwiner(src, dst) {
            return Err(OracleError::NotAnIntertwiner);
        }
        let (coker, _) = cokernel(&self.field, f, dst);
        let (ker, _) = kernel(f, src);
        let mut out: Vec<IndObj> = self.decompose(&coker)?.into_iter().map(|c| c.at(shift)).collect();
        out.extend(self.decompose(&ker)?.into_iter().map(|c| c.at(shift + 1)));
        Ok(DObj::new(out))
    }

    /// Cone of the morphism `x -> y`, which must be unique up to scalar.
    pub fn cone(&self, x: &IndObj, y: &IndObj) -> Result<DObj, OracleError> {
        match y.shift - x.shift {
            0 => {
                let f = self.single_morphism(&x.cls, &y.cls)?;
                self.split_cone(&f, self.rep_ref(&x.cls)?, self.rep_ref(&y.cls)?, x.shift)
            }
            1 => {
                let xr = self.rep_ref(&x.cls)?;
                let yr = self.rep_ref(&y.cls)?;
                let pres = presentation(&self.field, xr);
                let classes = ext_classes(&self.field, &pres, yr);
                match classes.len() {
                    0 => return Err(OracleError::ZeroMap),
                    1 => {}
                    n => return Err(OracleError::NotUnique(n)),
                }
                let e = extension(&self.field, xr, &pres, yr, &classes);
                Ok(DObj::from_classes(self.decompose(&e.middle)?, x.shift + 1))
            }
            _ => {
                self.rep_ref(&x.cls)?;
                self.rep_ref(&y.cls)?;
                Err(OracleError::ZeroMap)
            }
        }
    }

    /// `E = cone(x ⊗ Hom(x, y) -> y)[-1]` for the evaluation morphism.
    pub fn canonical_cone(&self, x: &IndObj, y: &IndObj) -> Result<DObj, OracleError> {
        let xr = self.rep_ref(&x.cls)?;
        let yr = self.rep_ref(&y.cls)?;
        match y.shift - x.shift {
            0 => {
                let basis = hom_basis(&self.field, xr, yr)?;
                if basis.is_empty() {
                    return Err(OracleError::ZeroMap);
                }
                let src = xr.power(&self.field, basis.len());
                let mut eval = RepMorphism::zero(&self.field, &FinQuiverRep::zero(&self.field, self.poset.clone()), yr);
                for b in &basis {
                    eval = eval.hjoin(b);
                }
                Ok(self.split_cone(&eval, &src, yr, x.shift)?.shifted(-1))
            }
            1 => {
                let pres = presentation(&self.field, xr);
                let classes = ext_classes(&self.field, &pres, yr);
                if classes.is_empty() {
                    return Err(OracleError::ZeroMap);
                }
                let e = extension(&self.field, xr, &pres, yr, &classes);
                Ok(DObj::from_classes(self.decompose(&e.middle)?, x.shift))
            }
            _ => Err(OracleError::ZeroMap),
        }
    }

    /// Builds the almost split sequence `0 -> tau z -> E -> z -> 0` from
    /// `DTr` and a nonzero extension class, then checks exactness,
    /// non-splitting and that maps from sampled indecomposables into `z`
    /// lift through `E`.
    pub fn ar_certificate(&self, z: &IndClass, samples: usize, seed: u64) -> Result<ArCertificate, OracleError> {
        let f = &self.field;
        let zr = self.rep_ref(z)?;
        let tr = dtr(f, zr);
        let tau = self.decompose(&tr)?;
        let pres = presentation(f, zr);
        let classes = ext_classes(f, &pres, &tr);
        let ext_dim = classes.len();
        if ext_dim == 0 {
            return Ok(ArCertificate {
                end: *z,
                tau,
                ext_dim,
                middle: Vec::new(),
                exact: false,
                non_split: false,
                lifting_samples: 0,
                lifting_ok: false,
            });
        }
        let e = extension(f, zr, &pres, &tr, &classes[..1]);
        let middle = self.decompose(&e.middle)?;
        let dims_add = e.middle.dims().iter().zip(tr.dims().iter().zip(zr.dims())).all(|(m, (a, b))| *m == a + b);
        let exact = dims_add
            && e.inclusion.rank_vector() == tr.dims()
            && e.projection.rank_vector() == zr.dims()
            && e.inclusion.then(&e.projection).is_zero()
            && e.inclusion.is_intertwiner(&tr, &e.middle)
            && e.projection.is_intertwiner(&e.middle, zr);
        let mut split = tau.clone();
        split.push(*z);
        split.sort();
        let mut sorted_middle = middle.clone();
        sorted_middle.sort();
        let non_split = sorted_middle != split;

        let mut pool: Vec<IndClass> = Vec::new();
        for c in &self.catalog {
            if c != z && self.covers(c) && self.cached_hom(c, z)? > 0 {
                pool.push(*c);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pool.shuffle(&mut rng);
        pool.truncate(samples);
        // Per sampled class: the image of Hom(c, E) -> Hom(c, z) must be
        // everything, and a random map c -> z must lie in it.
        let mut lifting_ok = true;
        let mut images = Vec::with_capacity(pool.len());
        for c in &pool {
            let yr = &self.reps[c];
            let target = self.cached_hom(c, z)?;
            let vecs: Vec<Vec<F::Elem>> = hom_basis(f, yr, &e.middle)?
                .iter()
                .map(|g| g.then(&e.projection).flatten())
                .collect();
            if span_rank(f, &vecs) != target {
                lifting_ok = false;
            }
            images.push((hom_basis(f, yr, zr)?, vecs));
        }
        let mut drawn = 0;
        for k in 0..if pool.is_empty() { 0 } else { samples } {
            let (basis, vecs) = &images[k % images.len()];
            let mut map = basis[0].scale(&f.zero());
            for b in basis {
                map = map.add(&b.scale(&f.from_i64(rng.gen_range(-3..=3))));
            }
            if map.flatten().iter().all(|v| f.is_zero(v)) {
                map = basis[0].clone();
            }
            let mut with = vecs.clone();
            with.push(map.flatten());
            if span_rank(f, &with) != span_rank(f, vecs) {
                lifting_ok = false;
            }
            drawn += 1;
        }
        Ok(ArCertificate {
            end: *z,
            tau,
            ext_dim,
            middle: sorted_middle,
            exact,
            non_split,
            lifting_samples: drawn,
            lifting_ok,
        })
    }
}

fn span_rank<F: Field>(f: &F, vecs: &[Vec<F::Elem>]) -> usize {
    match vecs.first() {
        None => 0,
        Some(v0) => Matrix::from_fn(f, vecs.len(), v0.len(), |r, k| vecs[r][k].clone()).rank(),
    }
}

/// Solves `h mu = b` (row-major `n x n`) for an integer vector. Works modulo
/// a large prime and checks the lifted answer exactly, falling back to
/// rational elimination when the check fails.
fn integer_solution(n: usize, h: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let exact = |mu: &[i64]| (0..n).all(|r| (0..n).map(|k| h[r * n + k] * mu[k]).sum::<i64>() == b[r]);
    let gp = PrimeField::new(2_147_483_647).expect("prime");
    let hm = Matrix::from_i64(&gp, n, n, h);
    if hm.rank() == n {
        if let Some(x) = hm.solve(&Matrix::from_i64(&gp, n, 1, b)) {
            let half = gp.modulus() / 2;
            let mu: Vec<i64> = (0..n)
                .map(|k| {
                    let v = *x.get(k, 0);
                    if v > half { v as i64 - gp.modulus() as i64 } else { v as i64 }
                })
                .collect();
            if exact(&mu) {
                return Some(mu);
            }
        }
    }
    let q = Rationals;
    let x = Matrix::from_i64(&q, n, n, h).solve(&Matrix::from_i64(&q, n, 1, b))?;
    let mu: Vec<i64> = (0..n)
        .map(|k| {
            let v = x.get(k, 0);
            if v.is_integer() { i64::try_from(v.to_integer()).ok() } else { None }
        })
        .collect::<Option<_>>()?;
    exact(&mu).then_some(mu)
}

/// Checks on random morphisms between sums of standard projectives that the
/// kernel is again projective.
pub fn verify_semihereditary<F: Field>(field: &F, poset: &Arc<FinPoset>, trials: usize, seed: u64) -> bool {
    let n = poset.len();
    if n == 0 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let src_gens: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..n)).collect();
        let dst_gens: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..n)).collect();
        let mut coeffs = Matrix::zeros(field, dst_gens.len(), src_gens.len());
        for (g, &v) in dst_gens.iter().enumerate() {
            for (h, &u) in src_gens.iter().enumerate() {
                if poset.le(v, u) {
                    coeffs.set(g, h, field.from_i64(rng.gen_range(-2..=2)));
                }
            }
        }
        let pres = presentation::ProjPresentation { p0: dst_gens, p1: src_gens, coeffs };
        let f = pres.morphism(field, poset);
        let src = StandardSum::projective(poset, pres.p1.clone()).rep(field, poset);
        let (k, _) = kernel(&f, &src);
        if !is_projective(field, &k) {
            return false;
        }
    }
    true
}

/// Field-erased oracle interface used by the sweeps and the CLI.
pub trait OracleApi: Send + Sync {
    fn spec(&self) -> &PosetSpec;
    fn margin(&self) -> u32;
    fn field_name(&self) -> String;
    fn covers(&self, c: &IndClass) -> bool;
    fn dims(&self, c: &IndClass) -> Result<Vec<usize>, OracleError>;
    fn hom_class(&self, a: &IndClass, b: &IndClass) -> Result<usize, OracleError>;
    fn ext_class(&self, a: &IndClass, b: &IndClass) -> Result<usize, OracleError>;
    fn hom(&self, x: &IndObj, y: &IndObj) -> Result<usize, OracleError>;
    fn end_dim(&self, c: &IndClass) -> Result<usize, OracleError>;
    fn tau_class(&self, c: &IndClass) -> Result<IndClass, OracleError>;
    fn cone(&self, x: &IndObj, y: &IndObj) -> Result<DObj, OracleError>;
    fn canonical_cone(&self, x: &IndObj, y: &IndObj) -> Result<DObj, OracleError>;
    fn ar_certificate(&self, z: &IndClass, samples: usize, seed: u64) -> Result<ArCertificate, OracleError>;
    fn decompose_sum(&self, classes: &[IndClass]) -> Result<Vec<IndClass>, OracleError>;
    fn semihereditary(&self, trials: usize, seed: u64) -> bool;
}

impl<F: Field + 'static> OracleApi for Oracle<F> {
    fn spec(&self) -> &PosetSpec {
        &self.spec
    }
    fn margin(&self) -> u32 {
        self.margin
    }
    fn field_name(&self) -> String {
        match self.field.characteristic() {
            0 => "rational".into(),
            p => format!("gf{p}"),
        }
    }
    fn covers(&self, c: &IndClass) -> bool {
        Oracle::covers(self, c)
    }
    fn dims(&self, c: &IndClass) -> Result<Vec<usize>, OracleError> {
        Ok(self.rep_ref(c)?.dims().to_vec())
    }
    fn hom_class(&self, a: &IndClass, b: &IndClass) -> Result<usize, OracleError> {
        Oracle::hom_class(self, a, b)
    }
    fn ext_class(&self, a: &IndClass, b: &IndClass) -> Result<usize, OracleError> {
        Oracle::ext_class(self, a, b)
    }
    fn hom(&self, x: &IndObj, y: &IndObj) -> Result<usize, OracleError> {
        Oracle::hom(self, x, y)
    }
    fn end_dim(&self, c: &IndClass) -> Result<usize, OracleError> {
        Oracle::end_dim(self, c)
    }
    fn tau_class(&self, c: &IndClass) -> Result<IndClass, OracleError> {
        Oracle::tau_class(self, c)
    }
    fn cone(&self, x: &IndObj, y: &IndObj) -> Result<DObj, OracleError> {
        Oracle::cone(self, x, y)
    }
    fn canonical_cone(&self, x: &IndObj, y: &IndObj) -> Result<DObj, OracleError> {
        Oracle::canonical_cone(self, x, y)
    }
    fn ar_certificate(&self, z: &IndClass, samples: usize, seed: u64) -> Result<ArCertificate, OracleError> {
        Oracle::ar_certificate(self, z, samples, seed)
    }
    fn decompose_sum(&self, classes: &[IndClass]) -> Result<Vec<IndClass>, OracleError> {
        Oracle::decompose_sum(self, classes)
    }
    fn semihereditary(&self, trials: usize, seed: u64) -> bool {
        verify_semihereditary(&self.field, &self.poset, trials, seed)
    }
}

pub fn build_oracle(spec: &PosetSpec, margin: u32, field: FieldChoice) -> Result<Box<dyn OracleApi>, OracleError> {
    Ok(match field {
        FieldChoice::Rational => Box::new(Oracle::new(Rationals, spec, margin)?),
        FieldChoice::Prime(p) => {
            let f = PrimeField::new(p).map_err(|_| OracleError::IllegalClass)?;
            Box::new(Oracle::new(f, spec, margin)?)
        }
    })
}

#[cfg(test)]
mod tests;
