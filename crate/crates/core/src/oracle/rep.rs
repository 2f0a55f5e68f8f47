//! Explicit representations of finite posets and the brute-force Hom/Ext
//! computations on them.

use std::sync::Arc;

use crate::field::Field;
use crate::matrix::Matrix;
use crate::objects::IndClass;
use crate::order::{DPoint, FinPoset};

use super::OracleError;

/// A representation of a finite poset whose Hasse diagram is a tree: one
/// vector space per vertex and an unconstrained matrix per Hasse arrow.
#[derive(Debug, Clone)]
pub struct FinQuiverRep<F: Field> {
    poset: Arc<FinPoset>,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

/// A morphism of representations, one matrix per vertex.
#[derive(Debug, Clone)]
pub struct RepMorphism<F: Field> {
    comps: Vec<Matrix<F>>,
}

impl<F: Field> FinQuiverRep<F> {
    pub fn new(poset: Arc<FinPoset>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self, OracleError> {
        if dims.len() != poset.len() || maps.len() != poset.arrows().len() {
            return Err(OracleError::ShapeMismatch);
        }
        for (k, &(u, v)) in poset.arrows().iter().enumerate() {
            if maps[k].rows() != dims[v] || maps[k].cols() != dims[u] {
                return Err(OracleError::ShapeMismatch);
            }
        }
        Ok(FinQuiverRep { poset, dims, maps })
    }

    pub fn zero(field: &F, poset: Arc<FinPoset>) -> Self {
        let dims = vec![0; poset.len()];
        let maps = poset.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        FinQuiverRep { poset, dims, maps }
    }

    pub fn poset(&self) -> &Arc<FinPoset> {
        &self.poset
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F> {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    fn same_poset(&self, other: &Self) -> Result<(), OracleError> {
        if Arc::ptr_eq(&self.poset, &other.poset) || *self.poset == *other.poset {
            Ok(())
        } else {
            Err(OracleError::PosetMismatch)
        }
    }

    /// Composite transition map along the Hasse path `from -> to`.
    pub fn path_map(&self, field: &F, from: usize, to: usize) -> Option<Matrix<F>> {
        let path = self.poset.path(from, to)?;
        let mut m = Matrix::identity(field, self.dims[from]);
        for k in path {
            m = self.maps[k].mul(&m);
        }
        Some(m)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, OracleError> {
        self.same_poset(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Ok(FinQuiverRep { poset: self.poset.clone(), dims, maps })
    }

    pub fn power(&self, field: &F, r: usize) -> Self {
        let mut out = FinQuiverRep::zero(field, self.poset.clone());
        for _ in 0..r {
            out = out.direct_sum(self).expect("same poset");
        }
        out
    }
}

fn flat_index(offsets: &[usize], dm: &[usize], v: usize, r: usize, c: usize) -> usize {
    offsets[v] + r * dm[v] + c
}

/// The linear system whose solutions are the intertwiners `m -> n`,
/// together with the per-vertex offsets of its unknowns.
fn intertwiner_system<F: Field>(field: &F, m: &FinQuiverRep<F>, n: &FinQuiverRep<F>) -> (Matrix<F>, Vec<usize>) {
    let p = &m.poset;
    let dm = &m.dims;
    let dn = &n.dims;
    let mut offsets = Vec::with_capacity(p.len());
    let mut unknowns = 0;
    for v in 0..p.len() {
        offsets.push(unknowns);
        unknowns += dm[v] * dn[v];
    }
    let rows: usize = p.arrows().iter().map(|&(u, v)| dn[v] * dm[u]).sum();
    let mut sys = Matrix::zeros(field, rows, unknowns);
    let mut row = 0;
    for (k, &(u, v)) in p.arrows().iter().enumerate() {
        let (ma, na) = (&m.maps[k], &n.maps[k]);
        for r in 0..dn[v] {
            for c in 0..dm[u] {
                // (n_a f_u)[r][c] - (f_v m_a)[r][c]
                for t in 0..dn[u] {
                    let coeff = na.get(r, t);
                    if !field.is_zero(coeff) {
                        let idx = flat_index(&offsets, dm, u, t, c);
                        let val = field.add(sys.get(row, idx), coeff);
                        sys.set(row, idx, val);
                    }
                }
                for t in 0..dm[v] {
                    let coeff = ma.get(t, c);
                    if !field.is_zero(coeff) {
                        let idx = flat_index(&offsets, dm, v, r, t);
                        let val = field.sub(sys.get(row, idx), coeff);
                        sys.set(row, idx, val);
                    }
                }
                row += 1;
            }
        }
    }
    (sys, offsets)
}

pub fn hom_dim<F: Field>(field: &F, m: &FinQuiverRep<F>, n: &FinQuiverRep<F>) -> Result<usize, OracleError> {
    m.same_poset(n)?;
    let (sys, _) = intertwiner_system(field, m, n);
    Ok(sys.cols() - sys.rank())
}

/// A basis of `Hom(m, n)`.
pub fn hom_basis<F: Field>(
    field: &F,
    m: &FinQuiverRep<F>,
    n: &FinQuiverRep<F>,
) -> Result<Vec<RepMorphism<F>>, OracleError> {
    m.same_poset(n)?;
    let (sys, offsets) = intertwiner_system(field, m, n);
    let kernel = sys.kernel();
    let mut out = Vec::with_capacity(kernel.cols());
    for col in 0..kernel.cols() {
        let comps = (0..m.poset.len())
            .map(|v| {
                Matrix::from_fn(field, n.dims[v], m.dims[v], |r, c| {
                    kernel.get(flat_index(&offsets, &m.dims, v, r, c), col).clone()
                })
            })
            .collect();
        out.push(RepMorphism { comps });
    }
    Ok(out)
}

pub fn euler_form(poset: &FinPoset, d: &[usize], e: &[usize]) -> Result<i64, OracleError> {
    if d.len() != poset.len() || e.len() != poset.len() {
        return Err(OracleError::IndexMismatch);
    }
    let diag: i64 = d.iter().zip(e).map(|(&a, &b)| (a * b) as i64).sum();
    let off: i64 = poset.arrows().iter().map(|&(u, v)| (d[u] * e[v]) as i64).sum();
    Ok(diag - off)
}

pub fn ext1_dim<F: Field>(field: &F, m: &FinQuiverRep<F>, n: &FinQuiverRep<F>) -> Result<usize, OracleError> {
    let hom = hom_dim(field, m, n)? as i64;
    let euler = euler_form(&m.poset, &m.dims, &n.dims)?;
    let ext = hom - euler;
    if ext < 0 {
        return Err(OracleError::NegativeExt);
    }
    Ok(ext as usize)
}

pub fn end_dim<F: Field>(field: &F, m: &FinQuiverRep<F>) -> Result<usize, OracleError> {
    if m.is_zero() {
        return Err(OracleError::ZeroRepresentation);
    }
    hom_dim(field, m, m)
}

impl<F: Field> RepMorphism<F> {
    pub fn from_components(comps: Vec<Matrix<F>>) -> Self {
        RepMorphism { comps }
    }

    pub fn zero(field: &F, m: &FinQuiverRep<F>, n: &FinQuiverRep<F>) -> Self {
        RepMorphism { comps: (0..m.dims.len()).map(|v| Matrix::zeros(field, n.dims[v], m.dims[v])).collect() }
    }

    pub fn identity(field: &F, m: &FinQuiverRep<F>) -> Self {
        RepMorphism { comps: m.dims.iter().map(|&d| Matrix::identity(field, d)).collect() }
    }

    pub fn component(&self, v: usize) -> &Matrix<F> {
        &self.comps[v]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RepMorphism<F>) -> RepMorphism<F> {
        RepMorphism { comps: self.comps.iter().zip(&next.comps).map(|(a, b)| b.mul(a)).collect() }
    }

    pub fn add(&self, other: &RepMorphism<F>) -> RepMorphism<F> {
        RepMorphism { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &F::Elem) -> RepMorphism<F> {
        RepMorphism { comps: self.comps.iter().map(|a| a.scale(s)).collect() }
    }

    /// `[self, other]`: the morphism out of a direct sum of sources.
    pub fn hjoin(&self, other: &RepMorphism<F>) -> RepMorphism<F> {
        RepMorphism { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.hstack(b)).collect() }
    }

    pub fn block_diag(&self, other: &RepMorphism<F>) -> RepMorphism<F> {
        RepMorphism { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.block_diag(b)).collect() }
    }

    /// `(self, other)`: the morphism into a direct sum of targets.
    pub fn vjoin(&self, other: &RepMorphism<F>) -> RepMorphism<F> {
        RepMorphism { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.vstack(b)).collect() }
    }

    pub fn is_intertwiner(&self, m: &FinQuiverRep<F>, n: &FinQuiverRep<F>) -> bool {
        if self.comps.len() != m.dims.len() {
            return false;
        }
        for v in 0..m.dims.len() {
            if self.comps[v].rows() != n.dims[v] || self.comps[v].cols() != m.dims[v] {
                return false;
            }
        }
        m.poset.arrows().iter().enumerate().all(|(k, &(u, v))| n.maps[k].mul(&self.comps[u]) == self.comps[v].mul(&m.maps[k]))
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        self.comps.iter().map(Matrix::rank).collect()
    }

    /// Flattened coordinates, for comparing morphisms as vectors.
    pub fn flatten(&self) -> Vec<F::Elem> {
        let mut out = Vec::new();
        for c in &self.comps {
            for r in 0..c.rows() {
                for k in 0..c.cols() {
                    out.push(c.get(r, k).clone());
                }
            }
        }
        out
    }
}

/// Vertexwise kernel with the induced transition maps, and its inclusion.
pub fn kernel<F: Field>(
    f: &RepMorphism<F>,
    m: &FinQuiverRep<F>,
) -> (FinQuiverRep<F>, RepMorphism<F>) {
    let bases: Vec<Matrix<F>> = f.comps.iter().map(Matrix::kernel).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = m
        .poset
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(u, v))| {
            let image = m.maps[k].mul(&bases[u]);
            bases[v].solve(&image).expect("kernel is a subrepresentation")
        })
        .collect();
    let rep = FinQuiverRep { poset: m.poset.clone(), dims, maps };
    (rep, RepMorphism { comps: bases })
}

/// Vertexwise cokernel with the induced transition maps, and the projection.
pub fn cokernel<F: Field>(
    field: &F,
    f: &RepMorphism<F>,
    n: &FinQuiverRep<F>,
) -> (FinQuiverRep<F>, RepMorphism<F>) {
    let projections: Vec<Matrix<F>> = f.comps.iter().map(Matrix::cokernel_projection).collect();
    let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
    let maps = n
        .poset
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(u, v))| {
            if dims[u] == 0 || dims[v] == 0 {
                return Matrix::zeros(field, dims[v], dims[u]);
            }
            let section = projections[u].right_inverse().expect("projection is surjective");
            projections[v].mul(&n.maps[k]).mul(&section)
        })
        .collect();
    let rep = FinQuiverRep { poset: n.poset.clone(), dims, maps };
    (rep, RepMorphism { comps: projections })
}

/// Dimension of a class at a vertex of the ambient poset.
pub fn class_dim_at(cls: &IndClass, p: DPoint) -> usize {
    match (cls, p) {
        (IndClass::A(i, j), DPoint::In(x)) => usize::from(*i <= x && x <= *j),
        (IndClass::A(..), _) => 0,
        (IndClass::A1(_), DPoint::Q1) | (IndClass::A2(_), DPoint::Q2) => 1,
        (IndClass::A1(_), DPoint::Q2) | (IndClass::A2(_), DPoint::Q1) => 0,
        (IndClass::A1(j) | IndClass::A2(j), DPoint::In(x)) => usize::from(x <= *j),
        (IndClass::B(..), DPoint::Q1 | DPoint::Q2) => 1,
        (IndClass::B(i, j), DPoint::In(x)) => {
            if x <= *i {
                2
            } else if x <= *j {
                1
            } else {
                0
            }
        }
    }
}

/// Explicit representation of a class on a poset carrying an origin map.
/// Lines use identity maps; for `B` the sources enter as the two coordinate
/// lines and the collapsing step is `[1 1]`.
pub fn realize_on<F: Field>(field: &F, cls: &IndClass, poset: &Arc<FinPoset>) -> Result<FinQuiverRep<F>, OracleError> {
    cls.check_shape().map_err(|_| OracleError::IllegalClass)?;
    let origin: Vec<DPoint> = (0..poset.len())
        .map(|v| poset.origin(v).ok_or(OracleError::MissingOrigin))
        .collect::<Result<_, _>>()?;
    let dims: Vec<usize> = origin.iter().map(|&p| class_dim_at(cls, p)).collect();
    let maps = poset
        .arrows()
        .iter()
        .map(|&(u, v)| {
            let (du, dv) = (dims[u], dims[v]);
            match (du, dv) {
                (0, _) | (_, 0) => Ok(Matrix::zeros(field, dv, du)),
                (1, 1) | (2, 2) => Ok(Matrix::identity(field, du)),
                (2, 1) => Ok(Matrix::from_i64(field, 1, 2, &[1, 1])),
                (1, 2) => match origin[u] {
                    DPoint::Q1 => Ok(Matrix::from_i64(field, 2, 1, &[1, 0])),
                    DPoint::Q2 => Ok(Matrix::from_i64(field, 2, 1, &[0, 1])),
                    DPoint::In(_) => Err(OracleError::IllegalClass),
                },
                _ => Err(OracleError::IllegalClass),
            }
        })
        .collect::<Result<_, _>>()?;
    FinQuiverRep::new(poset.clone(), dims, maps)
}
