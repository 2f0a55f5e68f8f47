//! Projective presentations, the Auslander-Reiten translate `DTr` and
//! extension building.

use std::sync::Arc;

use crate::field::Field;
use crate::matrix::Matrix;
use crate::order::FinPoset;

use super::rep::{cokernel, kernel, FinQuiverRep, RepMorphism};

/// Direct sum of standard projectives `P_v` (or injectives `I_v`), one per
/// listed generator vertex, with coordinates ordered by generator.
#[derive(Debug, Clone)]
pub struct StandardSum {
    gens: Vec<usize>,
    coords: Vec<Vec<usize>>,
}

impl StandardSum {
    /// `P_v` is supported on `{y : v <= y}`.
    pub fn projective(poset: &FinPoset, gens: Vec<usize>) -> Self {
        let coords = (0..poset.len())
            .map(|y| (0..gens.len()).filter(|&g| poset.le(gens[g], y)).collect())
            .collect();
        StandardSum { gens, coords }
    }

    /// `I_v` is supported on `{y : y <= v}`.
    pub fn injective(poset: &FinPoset, gens: Vec<usize>) -> Self {
        let coords = (0..poset.len())
            .map(|y| (0..gens.len()).filter(|&g| poset.le(y, gens[g])).collect())
            .collect();
        StandardSum { gens, coords }
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    fn position(&self, y: usize, g: usize) -> Option<usize> {
        self.coords[y].iter().position(|&h| h == g)
    }

    /// Transition maps send a generator coordinate to the same generator
    /// coordinate when it survives, and to zero otherwise.
    pub fn rep<F: Field>(&self, field: &F, poset: &Arc<FinPoset>) -> FinQuiverRep<F> {
        let dims: Vec<usize> = self.coords.iter().map(Vec::len).collect();
        let maps = poset
            .arrows()
            .iter()
            .map(|&(u, v)| {
                let mut m = Matrix::zeros(field, dims[v], dims[u]);
                for (c, &g) in self.coords[u].iter().enumerate() {
                    if let Some(r) = self.position(v, g) {
                        m.set(r, c, field.one());
                    }
                }
                m
            })
            .collect();
        FinQuiverRep::new(poset.clone(), dims, maps).expect("consistent shapes")
    }
}

/// A minimal projective presentation `P1 -> P0 -> M -> 0`. `coeffs` has one
/// row per `P0` generator and one column per `P1` generator: the `P1`
/// generator `h` maps to `sum_g coeffs[g][h] e_g`.
#[derive(Debug, Clone)]
pub struct ProjPresentation<F: Field> {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub coeffs: Matrix<F>,
}

/// Generators of the top of `m`: vertex and vector in `m(vertex)`.
pub fn top_generators<F: Field>(field: &F, m: &FinQuiverRep<F>) -> Vec<(usize, Matrix<F>)> {
    let poset = m.poset();
    let mut out = Vec::new();
    for v in 0..poset.len() {
        let d = m.dims()[v];
        if d == 0 {
            continue;
        }
        let mut rad = Matrix::zeros(field, d, 0);
        for &k in poset.incoming(v) {
            rad = rad.hstack(m.map(k));
        }
        let width = rad.cols();
        let aug = rad.hstack(&Matrix::identity(field, d));
        for p in aug.rref().pivots {
            if p >= width {
                let e = Matrix::from_fn(field, d, 1, |r, _| if r == p - width { field.one() } else { field.zero() });
                out.push((v, e));
            }
        }
    }
    out
}

/// The morphism `P(gens) -> m` sending the generator at `v` to the given vector.
pub fn morphism_from_projective<F: Field>(
    field: &F,
    sum: &StandardSum,
    vectors: &[Matrix<F>],
    m: &FinQuiverRep<F>,
) -> RepMorphism<F> {
    let poset = m.poset();
    let comps = (0..poset.len())
        .map(|y| {
            let mut comp = Matrix::zeros(field, m.dims()[y], 0);
            for &g in &sum.coords[y] {
                let path = m.path_map(field, sum.gens[g], y).expect("generator below vertex");
                comp = comp.hstack(&path.mul(&vectors[g]));
            }
            comp
        })
        .collect();
    RepMorphism::from_components(comps)
}

/// Projective cover of `m` and the covering map.
pub fn projective_cover<F: Field>(field: &F, m: &FinQuiverRep<F>) -> (StandardSum, RepMorphism<F>) {
    let tops = top_generators(field, m);
    let gens = tops.iter().map(|(v, _)| *v).collect();
    let vectors: Vec<Matrix<F>> = tops.into_iter().map(|(_, e)| e).collect();
    let sum = StandardSum::projective(m.poset(), gens);
    let cover = morphism_from_projective(field, &sum, &vectors, m);
    (sum, cover)
}

pub fn is_projective<F: Field>(field: &F, m: &FinQuiverRep<F>) -> bool {
    let (sum, _) = projective_cover(field, m);
    sum.coords.iter().map(Vec::len).eq(m.dims().iter().copied())
}

pub fn presentation<F: Field>(field: &F, m: &FinQuiverRep<F>) -> ProjPresentation<F> {
    let (p0, cover) = projective_cover(field, m);
    let p0_rep = p0.rep(field, m.poset());
    let (k, inc) = kernel(&cover, &p0_rep);
    let tops = top_generators(field, &k);
    let p1: Vec<usize> = tops.iter().map(|(v, _)| *v).collect();
    let mut coeffs = Matrix::zeros(field, p0.gens.len(), p1.len());
    for (h, (u, e)) in tops.iter().enumerate() {
        let in_p0 = inc.component(*u).mul(e);
        for (pos, &g) in p0.coords[*u].iter().enumerate() {
            coeffs.set(g, h, in_p0.get(pos, 0).clone());
        }
    }
    ProjPresentation { p0: p0.gens, p1, coeffs }
}

impl<F: Field> ProjPresentation<F> {
    pub fn p0_sum(&self, poset: &FinPoset) -> StandardSum {
        StandardSum::projective(poset, self.p0.clone())
    }

    pub fn p1_sum(&self, poset: &FinPoset) -> StandardSum {
        StandardSum::projective(poset, self.p1.clone())
    }

    /// `P1 -> P0` as a morphism of representations.
    pub fn morphism(&self, field: &F, poset: &FinPoset) -> RepMorphism<F> {
        self.standard_morphism(field, &self.p1_sum(poset), &self.p0_sum(poset))
    }

    /// The same scalars read between standard sums of either variance.
    fn standard_morphism(&self, field: &F, src: &StandardSum, dst: &StandardSum) -> RepMorphism<F> {
        let comps = (0..src.coords.len())
            .map(|y| {
                Matrix::from_fn(field, dst.coords[y].len(), src.coords[y].len(), |r, c| {
                    self.coeffs.get(dst.coords[y][r], src.coords[y][c]).clone()
                })
            })
            .collect();
        RepMorphism::from_components(comps)
    }
}

/// `dim Hom(coker(P1 -> P0), m)`, read off as the kernel of
/// `Hom(P0, m) -> Hom(P1, m)` with `Hom(P_v, m) = m(v)`.
pub fn hom_from_presented<F: Field>(field: &F, pres: &ProjPresentation<F>, m: &FinQuiverRep<F>) -> usize {
    let dims = m.dims();
    let offsets = |gens: &[usize]| -> Vec<usize> {
        gens.iter()
            .scan(0, |acc, &v| {
                let o = *acc;
                *acc += dims[v];
                Some(o)
            })
            .collect()
    };
    let (cols_at, rows_at) = (offsets(&pres.p0), offsets(&pres.p1));
    let cols: usize = pres.p0.iter().map(|&v| dims[v]).sum();
    let rows: usize = pres.p1.iter().map(|&u| dims[u]).sum();
    if cols == 0 {
        return 0;
    }
    let mut a = Matrix::zeros(field, rows, cols);
    for (h, &u) in pres.p1.iter().enumerate() {
        for (g, &v) in pres.p0.iter().enumerate() {
            let c = pres.coeffs.get(g, h);
            if field.is_zero(c) {
                continue;
            }
            let block = m.path_map(field, v, u).expect("presentation scalars follow the order").scale(c);
            for r in 0..block.rows() {
                for k in 0..block.cols() {
                    a.set(rows_at[h] + r, cols_at[g] + k, block.get(r, k).clone());
                }
            }
        }
    }
    cols - a.rank()
}

/// `tau m = ker(nu P1 -> nu P0)` where the Nakayama functor replaces each
/// `P_v` by `I_v` and keeps the scalars.
pub fn dtr<F: Field>(field: &F, m: &FinQuiverRep<F>) -> FinQuiverRep<F> {
    let poset = m.poset();
    let pres = presentation(field, m);
    let i1 = StandardSum::injective(poset, pres.p1.clone());
    let i0 = StandardSum::injective(poset, pres.p0.clone());
    let nu = pres.standard_morphism(field, &i1, &i0);
    let i1_rep = i1.rep(field, poset);
    debug_assert!(nu.is_intertwiner(&i1_rep, &i0.rep(field, poset)));
    kernel(&nu, &i1_rep).0
}

/// A basis of `Ext^1(x, y)`, each element written as a family of vectors in
/// `y(u)`, one per `P1` generator `u` of the presentation of `x`.
pub fn ext_classes<F: Field>(field: &F, pres: &ProjPresentation<F>, y: &FinQuiverRep<F>) -> Vec<Vec<Matrix<F>>> {
    let dims = y.dims();
    let row_off: Vec<usize> = pres
        .p1
        .iter()
        .scan(0, |acc, &u| {
            let o = *acc;
            *acc += dims[u];
            Some(o)
        })
        .collect();
    let rows: usize = pres.p1.iter().map(|&u| dims[u]).sum();
    let cols: usize = pres.p0.iter().map(|&v| dims[v]).sum();
    // Restriction Hom(P0, y) -> Hom(P1, y).
    let mut d = Matrix::zeros(field, rows, cols);
    let mut col_off = 0;
    for (g, &v) in pres.p0.iter().enumerate() {
        for (h, &u) in pres.p1.iter().enumerate() {
            let c = pres.coeffs.get(g, h);
            if field.is_zero(c) {
                continue;
            }
            let block = y.path_map(field, v, u).expect("presentation respects order").scale(c);
            for r in 0..block.rows() {
                for k in 0..block.cols() {
                    d.set(row_off[h] + r, col_off + k, block.get(r, k).clone());
                }
            }
        }
        col_off += dims[v];
    }
    let width = d.cols();
    let aug = d.hstack(&Matrix::identity(field, rows));
    aug.rref()
        .pivots
        .into_iter()
        .filter(|&p| p >= width)
        .map(|p| {
            let hot = p - width;
            pres.p1
                .iter()
                .enumerate()
                .map(|(h, &u)| {
                    Matrix::from_fn(field, dims[u], 1, |r, _| {
                        if row_off[h] + r == hot {
                            field.one()
                        } else {
                            field.zero()
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// The middle term of the extension `0 -> y -> e -> x^r -> 0` given by
/// `classes` (a list of `r` elements of `Ext^1(x, y)`), with the maps
/// `y -> e` and `e -> x^r`.
pub struct Extension<F: Field> {
    pub middle: FinQuiverRep<F>,
    pub inclusion: RepMorphism<F>,
    pub projection: RepMorphism<F>,
    pub quotient: FinQuiverRep<F>,
}

pub fn extension<F: Field>(
    field: &F,
    x: &FinQuiverRep<F>,
    pres: &ProjPresentation<F>,
    y: &FinQuiverRep<F>,
    classes: &[Vec<Matrix<F>>],
) -> Extension<F> {
    let poset = x.poset().clone();
    let p0 = pres.p0_sum(&poset);
    let p1 = pres.p1_sum(&poset);
    let p0_rep = p0.rep(field, &poset);
    let p1_rep = p1.rep(field, &poset);
    let f = pres.morphism(field, &poset);
    let cover_vectors: Vec<Matrix<F>> = {
        let tops = top_generators(field, x);
        assert_eq!(tops.len(), pres.p0.len(), "presentation belongs to x");
        tops.into_iter().map(|(_, e)| e).collect()
    };
    let pi = morphism_from_projective(field, &p0, &cover_vectors, x);

    let r = classes.len();
    let mut src = FinQuiverRep::zero(field, poset.clone());
    let mut mid = FinQuiverRep::zero(field, poset.clone());
    let mut quotient = FinQuiverRep::zero(field, poset.clone());
    for _ in 0..r {
        src = src.direct_sum(&p1_rep).expect("same poset");
        mid = mid.direct_sum(&p0_rep).expect("same poset");
        quotient = quotient.direct_sum(x).expect("same poset");
    }
    let p0r = mid.clone();
    mid = mid.direct_sum(y).expect("same poset");

    // psi: P1^r -> P0^r + y, copy l sends k to (f k in slot l, -h_l k).
    let empty = FinQuiverRep::zero(field, poset.clone());
    let mut psi_top = RepMorphism::zero(field, &empty, &empty);
    let mut psi_bottom = RepMorphism::zero(field, &empty, y);
    let mut pi_r = RepMorphism::zero(field, &empty, &empty);
    let minus_one = field.neg(&field.one());
    for class in classes {
        let h = morphism_from_projective(field, &p1, class, y).scale(&minus_one);
        psi_bottom = psi_bottom.hjoin(&h);
        psi_top = psi_top.block_diag(&f);
        pi_r = pi_r.block_diag(&pi);
    }
    let psi = psi_top.vjoin(&psi_bottom);
    debug_assert!(psi.is_intertwiner(&src, &mid));
    let (middle, q) = cokernel(field, &psi, &mid);

    // y -> P0^r + y -> e
    let into_mid = RepMorphism::zero(field, y, &p0r).vjoin(&RepMorphism::identity(field, y));
    let inclusion = into_mid.then(&q);
    // e -> x^r induced by (pi^r, 0).
    let out_of_mid = pi_r.hjoin(&RepMorphism::zero(field, y, &quotient));
    let comps = (0..poset.len())
        .map(|v| {
            if middle.dims()[v] == 0 {
                return Matrix::zeros(field, quotient.dims()[v], 0);
            }
            let section = q.component(v).right_inverse().expect("projection is surjective");
            out_of_mid.component(v).mul(&section)
        })
        .collect();
    let projection = RepMorphism::from_components(comps);
    Extension { middle, inclusion, projection, quotient }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::oracle::rep::{ext1_dim, hom_dim};

    fn chain(n: usize) -> Arc<FinPoset> {
        Arc::new(FinPoset::from_hasse(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap())
    }

    fn interval(p: &Arc<FinPoset>, a: usize, b: usize) -> FinQuiverRep<Rationals> {
        let f = Rationals;
        let dims: Vec<usize> = (0..p.len()).map(|v| usize::from(a <= v && v <= b)).collect();
        let maps = p
            .arrows()
            .iter()
            .map(|&(u, v)| if dims[u] == 1 && dims[v] == 1 { Matrix::identity(&f, 1) } else { Matrix::zeros(&f, dims[v], dims[u]) })
            .collect();
        FinQuiverRep::new(p.clone(), dims, maps).unwrap()
    }

    #[test]
    fn presentation_of_interval() {
        let f = Rationals;
        let p = chain(5);
        let m = interval(&p, 1, 2);
        let pres = presentation(&f, &m);
        assert_eq!(pres.p0, vec![1]);
        assert_eq!(pres.p1, vec![3]);
        assert!(!f.is_zero(pres.coeffs.get(0, 0)));
        assert!(!is_projective(&f, &m));
        assert!(is_projective(&f, &interval(&p, 1, 4)));
    }

    #[test]
    fn dtr_on_a_chain() {
        let f = Rationals;
        let p = chain(6);
        let t = dtr(&f, &interval(&p, 2, 2));
        assert_eq!(t.dims(), interval(&p, 3, 3).dims());
        let t = dtr(&f, &interval(&p, 1, 2));
        assert_eq!(t.dims(), interval(&p, 2, 3).dims());
    }

    #[test]
    fn ext_classes_match_ext_dimension() {
        let f = Rationals;
        let p = chain(5);
        let x = interval(&p, 0, 1);
        let y = interval(&p, 1, 3);
        let pres = presentation(&f, &x);
        let classes = ext_classes(&f, &pres, &y);
        assert_eq!(classes.len(), ext1_dim(&f, &x, &y).unwrap());
    }

    #[test]
    fn extension_of_adjacent_intervals() {
        let f = Rationals;
        let p = chain(4);
        // 0 -> M[1,2] -> E -> M[0,0] -> 0 is non-split with E = M[0,2].
        let x = interval(&p, 0, 0);
        let y = interval(&p, 1, 2);
        let pres = presentation(&f, &x);
        let classes = ext_classes(&f, &pres, &y);
        assert_eq!(classes.len(), 1);
        let ext = extension(&f, &x, &pres, &y, &classes);
        assert_eq!(ext.middle.dims(), &[1, 1, 1, 0]);
        assert_eq!(hom_dim(&f, &ext.middle, &ext.middle).unwrap(), 1);
        assert!(ext.inclusion.is_intertwiner(&y, &ext.middle));
        assert!(ext.projection.is_intertwiner(&ext.middle, &ext.quotient));
        assert!(ext.inclusion.then(&ext.projection).is_zero());
    }
}
