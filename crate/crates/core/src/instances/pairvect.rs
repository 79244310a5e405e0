//! Pairs `(U ⊆ V)` of a finite-dimensional rational space and a subspace. An arrow
//! is a linear map `V -> V'` carrying `U` into `U'`.
//!
//! Kernels and cokernels are taken on the ambient spaces, with the induced
//! subspace on the kernel and the image subspace on the quotient. A map such as
//! the identity `(0 ⊆ ℚ) -> (ℚ ⊆ ℚ)` is then monic and epic without being
//! invertible.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::category::{Biproduct, Category, CategoryError, CokernelResult, KernelResult, Solutions};
use crate::linalg::text::{parse_rat_rows, rat_rows};
use crate::linalg::{
    column_space_contains, left_annihilator, nullspace_basis, row_space_canonical, MatrixSystem,
    RatMatrix, Term,
};

/// `subspace` rows are the canonical (RREF) basis of `U ⊆ ℚ^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct PairObj {
    pub dim: usize,
    pub subspace: RatMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    dim: usize,
    subspace: Vec<Vec<String>>,
}

impl TryFrom<RawPair> for PairObj {
    type Error = String;

    fn try_from(raw: RawPair) -> Result<Self, String> {
        let rows = parse_rat_rows(raw.subspace.len(), raw.dim, &raw.subspace)
            .ok_or_else(|| format!("subspace rows must be rational vectors of length {}", raw.dim))?;
        Ok(PairObj::spanned(raw.dim, &rows))
    }
}

impl From<PairObj> for RawPair {
    fn from(p: PairObj) -> Self {
        RawPair { dim: p.dim, subspace: rat_rows(&p.subspace) }
    }
}

impl PairObj {
    /// The pair whose subspace is spanned by the rows of `generators`.
    pub fn spanned(dim: usize, generators: &RatMatrix) -> Self {
        assert_eq!(generators.cols(), dim, "generator length");
        PairObj { dim, subspace: row_space_canonical(generators) }
    }

    pub fn zero_subspace(dim: usize) -> Self {
        PairObj { dim, subspace: RatMatrix::zeros(0, dim) }
    }

    pub fn full(dim: usize) -> Self {
        PairObj { dim, subspace: RatMatrix::identity(dim) }
    }

    pub fn subspace_dim(&self) -> usize {
        self.subspace.rows()
    }

    /// Rows spanning the annihilator of the subspace: `v ∈ U` iff `ann · v = 0`.
    pub fn annihilator(&self) -> RatMatrix {
        left_annihilator(&self.subspace.transpose())
    }

    /// Basis of `U` as columns.
    pub fn basis_columns(&self) -> RatMatrix {
        self.subspace.transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPairMap", into = "RawPairMap")]
pub struct PairMap {
    pub source: PairObj,
    pub target: PairObj,
    pub matrix: RatMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawPairMap {
    source: PairObj,
    target: PairObj,
    matrix: Vec<Vec<String>>,
}

impl TryFrom<RawPairMap> for PairMap {
    type Error = String;

    fn try_from(raw: RawPairMap) -> Result<Self, String> {
        let matrix = parse_rat_rows(raw.target.dim, raw.source.dim, &raw.matrix)
            .ok_or_else(|| format!("matrix is not a valid {}x{} rational matrix", raw.target.dim, raw.source.dim))?;
        Ok(PairMap { source: raw.source, target: raw.target, matrix })
    }
}

impl From<PairMap> for RawPairMap {
    fn from(f: PairMap) -> Self {
        RawPairMap { source: f.source, target: f.target, matrix: rat_rows(&f.matrix) }
    }
}

impl PairMap {
    pub fn new(source: PairObj, target: PairObj, matrix: RatMatrix) -> Self {
        PairMap { source, target, matrix }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PairVect;

/// Blocks `X` (`target.dim x source.dim`) with `Ann(U_target) · X · U_source = 0`.
fn compatibility(sys: &mut MatrixSystem<BigRational>, block: usize, source: &PairObj, target: &PairObj) {
    let ann = target.annihilator();
    let basis = source.basis_columns();
    if ann.rows() == 0 || basis.cols() == 0 {
        return;
    }
    let rhs = RatMatrix::zeros(ann.rows(), basis.cols());
    sys.equation(vec![Term { block, left: ann, right: basis }], rhs);
}

fn solutions(sys: &MatrixSystem<BigRational>, source: &PairObj, target: &PairObj) -> Option<Solutions<PairMap>> {
    let sol = sys.solve()?;
    let wrap = |m: &RatMatrix| PairMap::new(source.clone(), target.clone(), m.clone());
    Some(Solutions {
        particular: wrap(&sol.particular[0]),
        homogeneous: sol.homogeneous.iter().map(|h| wrap(&h[0])).collect(),
    })
}

impl Category for PairVect {
    type Object = PairObj;
    type Morphism = PairMap;

    fn instance_id(&self) -> String {
        "pairvect".into()
    }

    fn source(&self, f: &PairMap) -> PairObj {
        f.source.clone()
    }

    fn target(&self, f: &PairMap) -> PairObj {
        f.target.clone()
    }

    fn validate_object(&self, a: &PairObj) -> Result<(), CategoryError> {
        if a.subspace.cols() != a.dim {
            return Err(CategoryError::InvalidObject("subspace basis has the wrong length".into()));
        }
        if row_space_canonical(&a.subspace) != a.subspace {
            return Err(CategoryError::InvalidObject("subspace basis is not in canonical form".into()));
        }
        Ok(())
    }

    fn validate_morphism(&self, f: &PairMap) -> Result<(), CategoryError> {
        self.validate_object(&f.source)?;
        self.validate_object(&f.target)?;
        if f.matrix.shape() != (f.target.dim, f.source.dim) {
            return Err(CategoryError::InvalidMorphism("matrix shape does not match the ambient spaces".into()));
        }
        let image = f.matrix.matmul(&f.source.basis_columns());
        if !column_space_contains(&f.target.basis_columns(), &image) {
            return Err(CategoryError::InvalidMorphism("map does not carry the subspace into the target subspace".into()));
        }
        Ok(())
    }

    fn zero_object(&self) -> PairObj {
        PairObj::zero_subspace(0)
    }

    fn identity(&self, a: &PairObj) -> PairMap {
        PairMap::new(a.clone(), a.clone(), RatMatrix::identity(a.dim))
    }

    fn zero_morphism(&self, a: &PairObj, b: &PairObj) -> PairMap {
        PairMap::new(a.clone(), b.clone(), RatMatrix::zeros(b.dim, a.dim))
    }

    fn compose_unchecked(&self, f: &PairMap, g: &PairMap) -> PairMap {
        PairMap::new(g.source.clone(), f.target.clone(), f.matrix.matmul(&g.matrix))
    }

    fn add_unchecked(&self, f: &PairMap, g: &PairMap) -> PairMap {
        PairMap::new(f.source.clone(), f.target.clone(), &f.matrix + &g.matrix)
    }

    fn negate(&self, f: &PairMap) -> PairMap {
        PairMap::new(f.source.clone(), f.target.clone(), -&f.matrix)
    }

    fn equal_unchecked(&self, f: &PairMap, g: &PairMap) -> bool {
        f.matrix == g.matrix
    }

    fn biproduct(&self, a: &PairObj, b: &PairObj) -> Biproduct<PairObj, PairMap> {
        let n = a.dim + b.dim;
        let object = PairObj::spanned(n, &a.subspace.block_diag(&b.subspace));
        let id = RatMatrix::identity(n);
        Biproduct {
            injections: [
                PairMap::new(a.clone(), object.clone(), id.col_range(0, a.dim)),
                PairMap::new(b.clone(), object.clone(), id.col_range(a.dim, n)),
            ],
            projections: [
                PairMap::new(object.clone(), a.clone(), id.row_range(0, a.dim)),
                PairMap::new(object.clone(), b.clone(), id.row_range(a.dim, n)),
            ],
            object,
        }
    }

    fn kernel(&self, f: &PairMap) -> KernelResult<PairObj, PairMap> {
        let k = nullspace_basis(&f.matrix);
        // coordinates c with K c ∈ U
        let inside = nullspace_basis(&f.source.annihilator().matmul(&k));
        let object = PairObj::spanned(k.cols(), &inside.transpose());
        KernelResult { arrow: PairMap::new(object.clone(), f.source.clone(), k), object }
    }

    fn cokernel(&self, f: &PairMap) -> CokernelResult<PairObj, PairMap> {
        let q = left_annihilator(&f.matrix);
        let image = q.matmul(&f.target.basis_columns());
        let object = PairObj::spanned(q.rows(), &image.transpose());
        CokernelResult { arrow: PairMap::new(f.target.clone(), object.clone(), q), object }
    }

    fn lift(&self, h: &PairMap, k: &PairMap) -> Option<Solutions<PairMap>> {
        let mut sys = MatrixSystem::new();
        let u = sys.block(k.source.dim, h.source.dim);
        sys.equation(
            vec![Term { block: u, left: k.matrix.clone(), right: RatMatrix::identity(h.source.dim) }],
            h.matrix.clone(),
        );
        compatibility(&mut sys, u, &h.source, &k.source);
        solutions(&sys, &h.source, &k.source)
    }

    fn extend(&self, h: &PairMap, k: &PairMap) -> Option<Solutions<PairMap>> {
        let mut sys = MatrixSystem::new();
        let u = sys.block(h.target.dim, k.target.dim);
        sys.equation(
            vec![Term { block: u, left: RatMatrix::identity(h.target.dim), right: k.matrix.clone() }],
            h.matrix.clone(),
        );
        compatibility(&mut sys, u, &k.target, &h.target);
        solutions(&sys, &k.target, &h.target)
    }
}

/// The identity of `ℚ` viewed as `(0 ⊆ ℚ) -> (ℚ ⊆ ℚ)`.
pub fn monic_epic_witness() -> PairMap {
    PairMap::new(PairObj::zero_subspace(1), PairObj::full(1), RatMatrix::identity(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Engine;
    use crate::linalg::rat_matrix;

    #[test]
    fn identity_has_trivial_kernel_and_cokernel() {
        let a = PairObj::spanned(2, &rat_matrix(1, 2, &[1, 1]));
        let id = PairVect.identity(&a);
        assert_eq!(PairVect.kernel(&id).object, PairVect.zero_object());
        assert_eq!(PairVect.cokernel(&id).object, PairVect.zero_object());
    }

    #[test]
    fn witness_is_monic_epic_but_not_invertible() {
        let f = monic_epic_witness();
        PairVect.validate_morphism(&f).unwrap();
        assert!(PairVect.is_mono(&f));
        assert!(PairVect.is_epi(&f));
        assert!(!PairVect.is_isomorphism(&f));
        assert!(!PairVect.is_kernel_morphism(&f));
        assert!(!PairVect.is_cokernel_morphism(&f));
        let p = PairVect.parallel_morphism(&f).unwrap();
        assert!(PairVect.is_mono(&p) && PairVect.is_epi(&p));
    }

    #[test]
    fn inclusion_cokernel_keeps_zero_subspace() {
        let f = PairMap::new(PairObj::zero_subspace(1), PairObj::zero_subspace(2), rat_matrix(2, 1, &[1, 0]));
        let c = PairVect.cokernel(&f);
        assert_eq!(c.object, PairObj::zero_subspace(1));
    }

    #[test]
    fn incompatible_map_is_rejected() {
        let f = PairMap::new(PairObj::full(1), PairObj::zero_subspace(1), RatMatrix::identity(1));
        assert!(PairVect.validate_morphism(&f).is_err());
    }

    #[test]
    fn kernel_subspace_is_the_preimage() {
        // ℚ² with U = span(e1) mapped by (x, y) -> x + y
        let a = PairObj::spanned(2, &rat_matrix(1, 2, &[1, 0]));
        let f = PairMap::new(a, PairObj::full(1), rat_matrix(1, 2, &[1, 1]));
        let k = PairVect.kernel(&f);
        assert_eq!(k.object, PairObj::zero_subspace(1));
    }

    #[test]
    fn serde_canonicalizes_subspace() {
        let json = r#"{"dim":2,"subspace":[["2","2"]]}"#;
        let p: PairObj = serde_json::from_str(json).unwrap();
        assert_eq!(p.subspace, rat_matrix(1, 2, &[1, 1]));
        let again: PairObj = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(again, p);
    }
}
