//! Finitely generated abelian groups in invariant-factor form.
//!
//! An object `[d_1, ..., d_k]` is `ℤ/d_1 ⊕ ... ⊕ ℤ/d_k` with `d_i >= 2` dividing
//! `d_{i+1}`, followed by zeros standing for free summands `ℤ`. An arrow is an
//! integer matrix on generators, taken modulo the target relations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::category::{Biproduct, Category, CategoryError, CokernelResult, KernelResult, Solutions};
use crate::linalg::text::{int_rows, parse_int_rows};
use crate::linalg::{
    integer_nullspace, lattice_basis, lattice_contains, smith_normal_form, solve_integer, IntMatrix,
    MatrixSystem, Term,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct AbGroup {
    factors: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    factors: Vec<String>,
}

impl TryFrom<RawGroup> for AbGroup {
    type Error = String;

    fn try_from(raw: RawGroup) -> Result<Self, String> {
        let factors = raw
            .factors
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(|_| format!("bad invariant factor {s:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        AbGroup::new(factors).map_err(|e| e.to_string())
    }
}

impl From<AbGroup> for RawGroup {
    fn from(g: AbGroup) -> Self {
        RawGroup { factors: g.factors.iter().map(|d| d.to_string()).collect() }
    }
}

impl AbGroup {
    pub fn new(factors: Vec<BigInt>) -> Result<Self, CategoryError> {
        let g = AbGroup { factors };
        g.check()?;
        Ok(g)
    }

    pub fn from_factors(factors: &[i64]) -> Self {
        AbGroup::new(factors.iter().map(|&d| BigInt::from(d)).collect()).expect("invariant factors")
    }

    /// `ℤ^n / (relation columns)`, put into invariant-factor form.
    pub fn presented(generators: usize, relations: &IntMatrix) -> Self {
        normalize(generators, relations).group
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { factors: vec![BigInt::zero(); rank] }
    }

    pub fn cyclic(order: i64) -> Self {
        AbGroup::presented(1, &IntMatrix::diagonal(&[BigInt::from(order)]))
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn generators(&self) -> usize {
        self.factors.len()
    }

    pub fn relations(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.factors)
    }

    fn check(&self) -> Result<(), CategoryError> {
        let mut seen_free = false;
        for (i, d) in self.factors.iter().enumerate() {
            if d.is_zero() {
                seen_free = true;
                continue;
            }
            if seen_free {
                return Err(CategoryError::InvalidObject("torsion factor after a free summand".into()));
            }
            if d < &BigInt::from(2) {
                return Err(CategoryError::InvalidObject(format!("invariant factor {d} must be at least 2 or 0")));
            }
            if i > 0 && !d.is_multiple_of(&self.factors[i - 1]) {
                return Err(CategoryError::InvalidObject("invariant factors must form a divisibility chain".into()));
            }
        }
        Ok(())
    }
}

/// Invariant-factor form of a presentation together with the coordinate changes
/// between the old generators and the new ones.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub group: AbGroup,
    /// `k x n`: old coordinates to new coordinates.
    pub to_new: IntMatrix,
    /// `n x k`: new generators written in old coordinates.
    pub from_new: IntMatrix,
}

pub fn normalize(generators: usize, relations: &IntMatrix) -> Normalized {
    assert_eq!(relations.rows(), generators, "relation matrix rows");
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let mut kept = Vec::new();
    let mut factors = Vec::new();
    for i in 0..generators {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if !d.is_one() {
            kept.push(i);
            factors.push(d);
        }
    }
    Normalized {
        group: AbGroup { factors },
        to_new: snf.u.select_rows(&kept),
        from_new: snf.u_inv.select_cols(&kept),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHom", into = "RawHom")]
pub struct Hom {
    pub source: AbGroup,
    pub target: AbGroup,
    pub matrix: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawHom {
    source: AbGroup,
    target: AbGroup,
    matrix: Vec<Vec<String>>,
}

impl TryFrom<RawHom> for Hom {
    type Error = String;

    fn try_from(raw: RawHom) -> Result<Self, String> {
        let (r, c) = (raw.target.generators(), raw.source.generators());
        let matrix = parse_int_rows(r, c, &raw.matrix)
            .ok_or_else(|| format!("matrix is not a valid {r}x{c} integer matrix"))?;
        Ok(Hom::new(raw.source, raw.target, matrix))
    }
}

impl From<Hom> for RawHom {
    fn from(f: Hom) -> Self {
        RawHom { source: f.source, target: f.target, matrix: int_rows(&f.matrix) }
    }
}

impl Hom {
    /// Entries are reduced into `[0, d_j)` along torsion rows of the target.
    pub fn new(source: AbGroup, target: AbGroup, matrix: IntMatrix) -> Self {
        let matrix = IntMatrix::from_fn(matrix.rows(), matrix.cols(), |j, i| {
            let d = &target.factors[j];
            let v = matrix.get(j, i);
            if d.is_zero() {
                v.clone()
            } else {
                v.mod_floor(d)
            }
        });
        Hom { source, target, matrix }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FgAb;

fn blockwise(sys: &MatrixSystem<BigInt>, source: &AbGroup, target: &AbGroup) -> Option<Solutions<Hom>> {
    let sol = sys.solve()?;
    let wrap = |m: &IntMatrix| Hom::new(source.clone(), target.clone(), m.clone());
    Some(Solutions {
        particular: wrap(&sol.particular[0]),
        homogeneous: sol.homogeneous.iter().map(|h| wrap(&h[0])).collect(),
    })
}

/// `U · D_source ≡ 0` modulo `D_target`, through a slack block `Z`.
fn relation_compatibility(sys: &mut MatrixSystem<BigInt>, block: usize, source: &AbGroup, target: &AbGroup) {
    let (t, s) = (target.generators(), source.generators());
    if t == 0 || s == 0 {
        return;
    }
    let z = sys.block(t, s);
    sys.equation(
        vec![
            Term { block, left: IntMatrix::identity(t), right: source.relations() },
            Term { block: z, left: -&target.relations(), right: IntMatrix::identity(s) },
        ],
        IntMatrix::zeros(t, s),
    );
}

impl Category for FgAb {
    type Object = AbGroup;
    type Morphism = Hom;

    fn instance_id(&self) -> String {
        "fgab".into()
    }

    fn source(&self, f: &Hom) -> AbGroup {
        f.source.clone()
    }

    fn target(&self, f: &Hom) -> AbGroup {
        f.target.clone()
    }

    fn validate_object(&self, a: &AbGroup) -> Result<(), CategoryError> {
        a.check()
    }

    fn validate_morphism(&self, f: &Hom) -> Result<(), CategoryError> {
        self.validate_object(&f.source)?;
        self.validate_object(&f.target)?;
        if f.matrix.shape() != (f.target.generators(), f.source.generators()) {
            return Err(CategoryError::InvalidMorphism("matrix shape does not match the generator counts".into()));
        }
        let images = f.matrix.matmul(&f.source.relations());
        let rel = f.target.relations();
        for i in 0..images.cols() {
            if !lattice_contains(&rel, &images.column(i)) {
                return Err(CategoryError::InvalidMorphism(format!(
                    "relation {i} of the source is not sent into the target relations"
                )));
            }
        }
        Ok(())
    }

    fn zero_object(&self) -> AbGroup {
        AbGroup::free(0)
    }

    fn identity(&self, a: &AbGroup) -> Hom {
        Hom::new(a.clone(), a.clone(), IntMatrix::identity(a.generators()))
    }

    fn zero_morphism(&self, a: &AbGroup, b: &AbGroup) -> Hom {
        Hom::new(a.clone(), b.clone(), IntMatrix::zeros(b.generators(), a.generators()))
    }

    fn compose_unchecked(&self, f: &Hom, g: &Hom) -> Hom {
        Hom::new(g.source.clone(), f.target.clone(), f.matrix.matmul(&g.matrix))
    }

    fn add_unchecked(&self, f: &Hom, g: &Hom) -> Hom {
        Hom::new(f.source.clone(), f.target.clone(), &f.matrix + &g.matrix)
    }

    fn negate(&self, f: &Hom) -> Hom {
        Hom::new(f.source.clone(), f.target.clone(), -&f.matrix)
    }

    /// Congruence modulo the target relations, decided column by column.
    fn equal_unchecked(&self, f: &Hom, g: &Hom) -> bool {
        let diff = &f.matrix - &g.matrix;
        let rel = f.target.relations();
        (0..diff.cols()).all(|i| {
            let col = diff.column(i);
            col.iter().all(Zero::is_zero) || solve_integer(&rel, &col).is_some()
        })
    }

    fn biproduct(&self, a: &AbGroup, b: &AbGroup) -> Biproduct<AbGroup, Hom> {
        let (n, m) = (a.generators(), b.generators());
        let rel = a.relations().block_diag(&b.relations());
        let norm = normalize(n + m, &rel);
        let id = IntMatrix::identity(n + m);
        let object = norm.group.clone();
        Biproduct {
            injections: [
                Hom::new(a.clone(), object.clone(), norm.to_new.matmul(&id.col_range(0, n))),
                Hom::new(b.clone(), object.clone(), norm.to_new.matmul(&id.col_range(n, n + m))),
            ],
            projections: [
                Hom::new(object.clone(), a.clone(), id.row_range(0, n).matmul(&norm.from_new)),
                Hom::new(object.clone(), b.clone(), id.row_range(n, n + m).matmul(&norm.from_new)),
            ],
            object,
        }
    }

    fn kernel(&self, f: &Hom) -> KernelResult<AbGroup, Hom> {
        let n = f.source.generators();
        // x with M x ∈ im D_B, as the projection of ker [M | -D_B]
        let stacked = f.matrix.hstack(&-&f.target.relations());
        let null = integer_nullspace(&stacked);
        let gens = lattice_basis(&null.row_range(0, n));
        let r = gens.cols();
        let rel_a = f.source.relations();
        let cols: Vec<Vec<BigInt>> = (0..rel_a.cols())
            .map(|i| solve_integer(&gens, &rel_a.column(i)).expect("source relations lie in the kernel lattice"))
            .collect();
        let relations = IntMatrix::from_columns(r, &cols);
        let norm = normalize(r, &relations);
        let object = norm.group.clone();
        KernelResult {
            arrow: Hom::new(object.clone(), f.source.clone(), gens.matmul(&norm.from_new)),
            object,
        }
    }

    fn cokernel(&self, f: &Hom) -> CokernelResult<AbGroup, Hom> {
        let m = f.target.generators();
        let relations = f.matrix.hstack(&f.target.relations());
        let norm = normalize(m, &relations);
        let object = norm.group.clone();
        CokernelResult { arrow: Hom::new(f.target.clone(), object.clone(), norm.to_new), object }
    }

    fn lift(&self, h: &Hom, k: &Hom) -> Option<Solutions<Hom>> {
        // k U + D_B W = h
        let (x, a, b) = (h.source.generators(), k.source.generators(), k.target.generators());
        let mut sys = MatrixSystem::new();
        let u = sys.block(a, x);
        let mut terms = vec![Term { block: u, left: k.matrix.clone(), right: IntMatrix::identity(x) }];
        if b > 0 && x > 0 {
            let w = sys.block(b, x);
            terms.push(Term { block: w, left: k.target.relations(), right: IntMatrix::identity(x) });
        }
        sys.equation(terms, h.matrix.clone());
        relation_compatibility(&mut sys, u, &h.source, &k.source);
        blockwise(&sys, &h.source, &k.source)
    }

    fn extend(&self, h: &Hom, k: &Hom) -> Option<Solutions<Hom>> {
        // U k + D_Y W = h
        let (a, b, y) = (k.source.generators(), k.target.generators(), h.target.generators());
        let mut sys = MatrixSystem::new();
        let u = sys.block(y, b);
        let mut terms = vec![Term { block: u, left: IntMatrix::identity(y), right: k.matrix.clone() }];
        if y > 0 && a > 0 {
            let w = sys.block(y, a);
            terms.push(Term { block: w, left: h.target.relations(), right: IntMatrix::identity(a) });
        }
        sys.equation(terms, h.matrix.clone());
        relation_compatibility(&mut sys, u, &k.target, &h.target);
        blockwise(&sys, &k.target, &h.target)
    }
}

/// Multiplication by `n` on `ℤ`.
pub fn times(n: i64) -> Hom {
    Hom::new(AbGroup::free(1), AbGroup::free(1), IntMatrix::diagonal(&[BigInt::from(n)]))
}

/// The quotient `ℤ -> ℤ/n`.
pub fn quotient(n: i64) -> Hom {
    Hom::new(AbGroup::free(1), AbGroup::cyclic(n), IntMatrix::identity(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Engine;
    use num_traits::Signed;

    #[test]
    fn biproduct_of_two_and_three_is_cyclic_six() {
        let (a, b) = (AbGroup::cyclic(2), AbGroup::cyclic(3));
        let bp = FgAb.biproduct(&a, &b);
        assert_eq!(bp.object, AbGroup::from_factors(&[6]));
        assert!(FgAb.biproduct_identities_hold(&a, &b, &bp));
    }

    #[test]
    fn times_two_kernel_and_cokernel() {
        let f = times(2);
        assert_eq!(FgAb.kernel(&f).object, FgAb.zero_object());
        let c = FgAb.cokernel(&f);
        assert_eq!(c.object, AbGroup::cyclic(2));
        assert!(FgAb.is_kernel_morphism(&f));
        assert!(!FgAb.is_cokernel_morphism(&f));
    }

    #[test]
    fn identity_on_cyclic_six() {
        let id = FgAb.identity(&AbGroup::cyclic(6));
        assert!(FgAb.is_zero_object(&FgAb.kernel(&id).object));
        assert!(FgAb.is_zero_object(&FgAb.cokernel(&id).object));
    }

    #[test]
    fn quotient_kernel_is_two_z() {
        let k = FgAb.kernel(&quotient(2));
        assert_eq!(k.object, AbGroup::free(1));
        assert_eq!(k.arrow.matrix.get(0, 0).abs(), BigInt::from(2));
    }

    #[test]
    fn times_two_has_no_retraction() {
        assert!(FgAb.retraction(&times(2)).is_none());
        assert!(FgAb.retraction(&times(1)).is_some());
    }

    #[test]
    fn congruent_maps_are_equal() {
        let z6 = AbGroup::cyclic(6);
        let f = Hom { source: z6.clone(), target: z6.clone(), matrix: IntMatrix::diagonal(&[BigInt::from(7)]) };
        assert!(FgAb.equal(&f, &FgAb.identity(&z6)));
    }

    #[test]
    fn invalid_objects_and_maps() {
        assert!(AbGroup::new(vec![BigInt::from(3), BigInt::from(2)]).is_err());
        assert!(AbGroup::new(vec![BigInt::from(1)]).is_err());
        let bad = Hom::new(AbGroup::cyclic(2), AbGroup::free(1), IntMatrix::identity(1));
        assert!(FgAb.validate_morphism(&bad).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let f = quotient(2);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"source":{"factors":["0"]},"target":{"factors":["2"]},"matrix":[["1/1"]]}"#);
        let back: Hom = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
