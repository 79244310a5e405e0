//! Finite-dimensional rational vector spaces. Objects are dimensions, arrows are
//! `target x source` matrices.

use serde::{Deserialize, Serialize};

use crate::category::{Biproduct, Category, CategoryError, CokernelResult, KernelResult, Solutions};
use crate::linalg::text::{parse_rat_rows, rat_rows};
use crate::linalg::{left_annihilator, nullspace_basis, MatrixSystem, RatMatrix, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dim(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLinearMap", into = "RawLinearMap")]
pub struct LinearMap {
    pub source: Dim,
    pub target: Dim,
    pub matrix: RatMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawLinearMap {
    source: usize,
    target: usize,
    matrix: Vec<Vec<String>>,
}

impl TryFrom<RawLinearMap> for LinearMap {
    type Error = String;

    fn try_from(raw: RawLinearMap) -> Result<Self, String> {
        let matrix = parse_rat_rows(raw.target, raw.source, &raw.matrix)
            .ok_or_else(|| format!("matrix is not a valid {}x{} rational matrix", raw.target, raw.source))?;
        Ok(LinearMap { source: Dim(raw.source), target: Dim(raw.target), matrix })
    }
}

impl From<LinearMap> for RawLinearMap {
    fn from(f: LinearMap) -> Self {
        RawLinearMap { source: f.source.0, target: f.target.0, matrix: rat_rows(&f.matrix) }
    }
}

impl LinearMap {
    pub fn new(matrix: RatMatrix) -> Self {
        LinearMap { source: Dim(matrix.cols()), target: Dim(matrix.rows()), matrix }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VectQ;

fn solutions(sys: &MatrixSystem<num_rational::BigRational>, rows: usize, cols: usize) -> Option<Solutions<LinearMap>> {
    let sol = sys.solve()?;
    let wrap = |m: &RatMatrix| LinearMap { source: Dim(cols), target: Dim(rows), matrix: m.clone() };
    Some(Solutions {
        particular: wrap(&sol.particular[0]),
        homogeneous: sol.homogeneous.iter().map(|h| wrap(&h[0])).collect(),
    })
}

impl Category for VectQ {
    type Object = Dim;
    type Morphism = LinearMap;

    fn instance_id(&self) -> String {
        "vectq".into()
    }

    fn source(&self, f: &LinearMap) -> Dim {
        f.source
    }

    fn target(&self, f: &LinearMap) -> Dim {
        f.target
    }

    fn validate_object(&self, _: &Dim) -> Result<(), CategoryError> {
        Ok(())
    }

    fn validate_morphism(&self, f: &LinearMap) -> Result<(), CategoryError> {
        if f.matrix.shape() != (f.target.0, f.source.0) {
            return Err(CategoryError::InvalidMorphism(format!(
                "matrix shape {:?} does not match {} -> {}",
                f.matrix.shape(),
                f.source.0,
                f.target.0
            )));
        }
        Ok(())
    }

    fn zero_object(&self) -> Dim {
        Dim(0)
    }

    fn identity(&self, a: &Dim) -> LinearMap {
        LinearMap::new(RatMatrix::identity(a.0))
    }

    fn zero_morphism(&self, a: &Dim, b: &Dim) -> LinearMap {
        LinearMap::new(RatMatrix::zeros(b.0, a.0))
    }

    fn compose_unchecked(&self, f: &LinearMap, g: &LinearMap) -> LinearMap {
        LinearMap::new(f.matrix.matmul(&g.matrix))
    }

    fn add_unchecked(&self, f: &LinearMap, g: &LinearMap) -> LinearMap {
        LinearMap::new(&f.matrix + &g.matrix)
    }

    fn negate(&self, f: &LinearMap) -> LinearMap {
        LinearMap::new(-&f.matrix)
    }

    fn equal_unchecked(&self, f: &LinearMap, g: &LinearMap) -> bool {
        f.matrix == g.matrix
    }

    fn biproduct(&self, a: &Dim, b: &Dim) -> Biproduct<Dim, LinearMap> {
        let n = a.0 + b.0;
        let id = RatMatrix::identity(n);
        Biproduct {
            object: Dim(n),
            injections: [
                LinearMap::new(id.col_range(0, a.0)),
                LinearMap::new(id.col_range(a.0, n)),
            ],
            projections: [
                LinearMap::new(id.row_range(0, a.0)),
                LinearMap::new(id.row_range(a.0, n)),
            ],
        }
    }

    fn kernel(&self, f: &LinearMap) -> KernelResult<Dim, LinearMap> {
        let basis = nullspace_basis(&f.matrix);
        KernelResult { object: Dim(basis.cols()), arrow: LinearMap::new(basis) }
    }

    fn cokernel(&self, f: &LinearMap) -> CokernelResult<Dim, LinearMap> {
        let q = left_annihilator(&f.matrix);
        CokernelResult { object: Dim(q.rows()), arrow: LinearMap::new(q) }
    }

    fn lift(&self, h: &LinearMap, k: &LinearMap) -> Option<Solutions<LinearMap>> {
        let mut sys = MatrixSystem::new();
        let u = sys.block(k.source.0, h.source.0);
        sys.equation(
            vec![Term { block: u, left: k.matrix.clone(), right: RatMatrix::identity(h.source.0) }],
            h.matrix.clone(),
        );
        solutions(&sys, k.source.0, h.source.0)
    }

    fn extend(&self, h: &LinearMap, k: &LinearMap) -> Option<Solutions<LinearMap>> {
        let mut sys = MatrixSystem::new();
        let u = sys.block(h.target.0, k.target.0);
        sys.equation(
            vec![Term { block: u, left: RatMatrix::identity(h.target.0), right: k.matrix.clone() }],
            h.matrix.clone(),
        );
        solutions(&sys, h.target.0, k.target.0)
    }
}
