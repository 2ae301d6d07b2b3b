//! Finitely generated abelian groups in invariant-factor normal form,
//! homomorphisms as integer matrices, and the constructions everything else
//! runs on: kernel, image, index, quotient, direct sum, pullback, and the
//! cardinal/numerical invariants.
//!
//! Conventions. A group Z^n ⊕ Z/d1 ⊕ … ⊕ Z/dk is presented on the free
//! cover Z^(n+k) with relation lattice generated by {di·e(n+i)}; elements
//! are coordinate vectors on the cover with torsion coordinates reduced
//! into [0, di). Hom matrices are (target cover dim) × (source cover dim)
//! and act on column vectors; subgroups are canonical HNF row lattices in
//! the cover containing the relation lattice, so subgroup equality is
//! lattice equality.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use crate::intlat::{
    self, canonical_row_basis, hermite_normal_form, kernel_basis, lattice_index,
    lattice_intersection, lattice_membership, smith_normal_form, IntMatrix,
};
use crate::{Cardinal, Error, ExtNat};

/// `Z^n ⊕ Z/d1 ⊕ … ⊕ Z/dk` with di ≥ 2 and di | di+1. The pair
/// (free_rank, torsion) is a complete isomorphism invariant, so isomorphism
/// testing is equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigUint>) -> Result<Self, Error> {
        let two = BigUint::from(2u32);
        for i in 0..torsion.len() {
            if torsion[i] < two {
                return Err(Error::Domain(format!(
                    "invariant factor {} is < 2",
                    torsion[i]
                )));
            }
            if i + 1 < torsion.len() && !(&torsion[i + 1] % &torsion[i]).is_zero() {
                return Err(Error::Domain(format!(
                    "divisibility chain broken: {} does not divide {}",
                    torsion[i],
                    torsion[i + 1]
                )));
            }
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    /// Normal form of Z^n ⊕ Z/c1 ⊕ … for an arbitrary cyclic-factor list:
    /// Smith normal form of diag(c) renormalizes the chain.
    pub fn normalized(free_rank: usize, cyclic: &[BigUint]) -> Self {
        let k = cyclic.len();
        let mut diag = IntMatrix::zero(k, k);
        for (i, c) in cyclic.iter().enumerate() {
            diag.set(i, i, BigInt::from(c.clone()));
        }
        let snf = smith_normal_form(&diag);
        let torsion: Vec<BigUint> = snf
            .diagonal()
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| d.magnitude().clone())
            .collect();
        let extra_free = snf.diagonal().iter().filter(|d| d.is_zero()).count();
        FgAbGroup::new(free_rank + extra_free, torsion).expect("SNF diagonal is a chain")
    }

    pub fn free(n: usize) -> Self {
        FgAbGroup {
            free_rank: n,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        FgAbGroup::free(0)
    }

    pub fn cyclic(d: u64) -> Self {
        if d <= 1 {
            FgAbGroup::trivial()
        } else {
            FgAbGroup {
                free_rank: 0,
                torsion: vec![BigUint::from(d)],
            }
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    /// Dimension of the free cover Z^(n+k).
    pub fn cover_dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> ExtNat {
        if self.free_rank > 0 {
            return ExtNat::Infinite;
        }
        let mut n = BigUint::one();
        for d in &self.torsion {
            n *= d;
        }
        ExtNat::Finite(n)
    }

    /// Exponent of the torsion part (1 when torsion-free): the last
    /// invariant factor, since the chain makes it the lcm.
    pub fn torsion_exponent(&self) -> BigUint {
        self.torsion.last().cloned().unwrap_or_else(BigUint::one)
    }

    /// Relation lattice {di·e(n+i)} as rows in the cover.
    pub fn relation_rows(&self) -> IntMatrix {
        let n = self.cover_dim();
        let mut m = IntMatrix::zero(self.torsion.len(), n);
        for (i, d) in self.torsion.iter().enumerate() {
            m.set(i, self.free_rank + i, BigInt::from(d.clone()));
        }
        m
    }

    /// Modulus of coordinate `i` on the cover: None for free coordinates.
    fn coord_modulus(&self, i: usize) -> Option<&BigUint> {
        if i < self.free_rank {
            None
        } else {
            Some(&self.torsion[i - self.free_rank])
        }
    }

    pub fn reduce_coords(&self, mut coords: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.cover_dim(), "coordinate length mismatch");
        for (i, c) in coords.iter_mut().enumerate() {
            if let Some(d) = self.coord_modulus(i) {
                *c = c.mod_floor(&BigInt::from(d.clone()));
            }
        }
        coords
    }

    pub fn element(&self, coords: Vec<BigInt>) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: self.reduce_coords(coords),
        }
    }

    pub fn element_i64(&self, coords: &[i64]) -> GroupElement {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero_element(&self) -> GroupElement {
        self.element(vec![BigInt::zero(); self.cover_dim()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.cover_dim()];
        coords[i] = BigInt::one();
        self.element(coords)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.cover_dim()).map(|i| self.generator(i)).collect()
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    /// Errors on infinite groups.
    pub fn elements(&self) -> Result<Vec<GroupElement>, Error> {
        if self.free_rank > 0 {
            return Err(Error::Domain(format!("{self} is infinite")));
        }
        let mut out = vec![vec![]];
        for d in &self.torsion {
            let d = d.to_u64().ok_or_else(|| Error::Domain("torsion factor too large to enumerate".into()))?;
            let mut next = Vec::new();
            for prefix in &out {
                for c in 0..d {
                    let mut v = prefix.clone();
                    v.push(BigInt::from(c));
                    next.push(v);
                }
            }
            out = next;
        }
        Ok(out.into_iter().map(|coords| self.element(coords)).collect())
    }
}

/// Element of an [`FgAbGroup`], stored as reduced cover coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FgAbGroup,
    coords: Vec<BigInt>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

impl GroupElement {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.group, other.group, "elements of different groups");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        self.group.element(coords)
    }

    pub fn neg(&self) -> GroupElement {
        self.group.element(self.coords.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &GroupElement) -> GroupElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        self.group.element(self.coords.iter().map(|c| c * k).collect())
    }
}

/// Homomorphism between groups in normal form, as an integer matrix from
/// source generators to target coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({} -> {}, {:?})", self.source, self.target, self.matrix)
    }
}

impl Hom {
    /// Checks well-definedness: the image of each torsion generator of order
    /// d must be killed by d in the target.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self, Error> {
        if matrix.rows() != target.cover_dim() || matrix.cols() != source.cover_dim() {
            return Err(Error::Dimension(format!(
                "hom {}x{} does not match {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        for (j, d) in source.torsion.iter().enumerate() {
            let col = source.free_rank + j;
            let d = BigInt::from(d.clone());
            for row in 0..target.cover_dim() {
                let v = matrix.get(row, col) * &d;
                match target.coord_modulus(row) {
                    None => {
                        if !v.is_zero() {
                            return Err(Error::Domain(format!(
                                "not well-defined: torsion generator {j} of order {d} maps to infinite-order image"
                            )));
                        }
                    }
                    Some(e) => {
                        if !v.mod_floor(&BigInt::from(e.clone())).is_zero() {
                            return Err(Error::Domain(format!(
                                "not well-defined: d·image not zero mod {e} at torsion generator {j}"
                            )));
                        }
                    }
                }
            }
        }
        let mut hom = Hom { source, target, matrix };
        hom.canonicalize();
        Ok(hom)
    }

    pub fn from_i64(source: FgAbGroup, target: FgAbGroup, rows: &[&[i64]]) -> Result<Self, Error> {
        Hom::new(source, target, IntMatrix::from_i64(rows))
    }

    /// Torsion rows reduced mod their modulus; holds representative
    /// uniqueness so that hom equality is matrix equality.
    fn canonicalize(&mut self) {
        for row in 0..self.target.cover_dim() {
            if let Some(e) = self.target.coord_modulus(row) {
                let e = BigInt::from(e.clone());
                for col in 0..self.source.cover_dim() {
                    let v = self.matrix.get(row, col).mod_floor(&e);
                    self.matrix.set(row, col, v);
                }
            }
        }
    }

    pub fn identity(g: &FgAbGroup) -> Hom {
        Hom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.cover_dim()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Hom {
        Hom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zero(target.cover_dim(), source.cover_dim()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        assert_eq!(x.group, self.source, "element not in the source group");
        self.target.element(self.matrix.mul_vec(&x.coords))
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &Hom) -> Result<Hom, Error> {
        if inner.target != self.source {
            return Err(Error::Ambient(format!(
                "cannot compose: inner target {} != outer source {}",
                inner.target, self.source
            )));
        }
        let mut hom = Hom {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        };
        hom.canonicalize();
        Ok(hom)
    }

    /// Pointwise difference g − f; a homomorphism again since everything is
    /// abelian.
    pub fn difference(g: &Hom, f: &Hom) -> Result<Hom, Error> {
        if g.source != f.source || g.target != f.target {
            return Err(Error::Ambient("difference of homs with unequal signatures".into()));
        }
        let mut hom = Hom {
            source: g.source.clone(),
            target: g.target.clone(),
            matrix: g.matrix.sub(&f.matrix),
        };
        hom.canonicalize();
        Ok(hom)
    }

    pub fn add(f: &Hom, g: &Hom) -> Result<Hom, Error> {
        if g.source != f.source || g.target != f.target {
            return Err(Error::Ambient("sum of homs with unequal signatures".into()));
        }
        let mut hom = Hom {
            source: f.source.clone(),
            target: f.target.clone(),
            matrix: f.matrix.sub(&g.matrix.neg()),
        };
        hom.canonicalize();
        Ok(hom)
    }

    pub fn is_zero_hom(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Subgroup of an [`FgAbGroup`], canonicalized as the HNF row lattice in
/// the free cover spanned by the generators together with the ambient
/// relation lattice. Subgroup equality is equality of the canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: FgAbGroup,
    lattice: IntMatrix,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(of {}, lattice {:?})", self.ambient, self.lattice)
    }
}

impl Subgroup {
    pub fn new(ambient: &FgAbGroup, gens: &[GroupElement]) -> Result<Self, Error> {
        for g in gens {
            if g.group != *ambient {
                return Err(Error::Ambient(format!(
                    "generator of {} used in subgroup of {}",
                    g.group, ambient
                )));
            }
        }
        let rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords.clone()).collect();
        let gen_matrix = if rows.is_empty() {
            IntMatrix::zero(0, ambient.cover_dim())
        } else {
            IntMatrix::from_rows(rows)?
        };
        Ok(Self::from_cover_rows(ambient, &gen_matrix))
    }

    /// Build from arbitrary cover rows; the relation lattice is always
    /// adjoined before canonicalization.
    pub(crate) fn from_cover_rows(ambient: &FgAbGroup, rows: &IntMatrix) -> Self {
        let stacked = rows.vstack(&ambient.relation_rows());
        Subgroup {
            ambient: ambient.clone(),
            lattice: canonical_row_basis(&stacked),
        }
    }

    pub fn whole(ambient: &FgAbGroup) -> Self {
        Self::from_cover_rows(ambient, &IntMatrix::identity(ambient.cover_dim()))
    }

    pub fn trivial(ambient: &FgAbGroup) -> Self {
        Self::from_cover_rows(ambient, &IntMatrix::zero(0, ambient.cover_dim()))
    }

    pub fn torsion_subgroup(ambient: &FgAbGroup) -> Self {
        let gens: Vec<GroupElement> = (0..ambient.torsion.len())
            .map(|i| ambient.generator(ambient.free_rank + i))
            .collect();
        Subgroup::new(ambient, &gens).expect("torsion generators live in the ambient")
    }

    /// The subgroup mG.
    pub fn multiple_of_group(ambient: &FgAbGroup, m: &BigInt) -> Self {
        let gens: Vec<GroupElement> = ambient
            .generators()
            .iter()
            .map(|g| g.scale(m))
            .collect();
        Subgroup::new(ambient, &gens).expect("scaled generators live in the ambient")
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    /// Canonical row lattice in the cover (contains the relation lattice).
    pub fn cover_lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn contains_element(&self, x: &GroupElement) -> Result<bool, Error> {
        if x.group != self.ambient {
            return Err(Error::Ambient("element of a different group".into()));
        }
        Ok(lattice_membership(&x.coords, &self.lattice)?.is_some())
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool, Error> {
        if other.ambient != self.ambient {
            return Err(Error::Ambient("subgroups of different ambients".into()));
        }
        for r in 0..other.lattice.rows() {
            if lattice_membership(&other.lattice.row(r), &self.lattice)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup, Error> {
        if other.ambient != self.ambient {
            return Err(Error::Ambient("subgroups of different ambients".into()));
        }
        Ok(Subgroup {
            ambient: self.ambient.clone(),
            lattice: canonical_row_basis(&self.lattice.vstack(&other.lattice)),
        })
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup, Error> {
        if other.ambient != self.ambient {
            return Err(Error::Ambient("subgroups of different ambients".into()));
        }
        Ok(Subgroup {
            ambient: self.ambient.clone(),
            lattice: lattice_intersection(&self.lattice, &other.lattice),
        })
    }

    pub fn is_whole(&self) -> bool {
        *self == Subgroup::whole(&self.ambient)
    }

    pub fn is_trivial_subgroup(&self) -> bool {
        *self == Subgroup::trivial(&self.ambient)
    }

    /// [ambient : S]. Since G/S ≅ Z^cover/lattice(S) by the third
    /// isomorphism theorem, this is the plain lattice index on the cover;
    /// torsion cosets are counted by it automatically.
    pub fn index_in_ambient(&self) -> ExtNat {
        lattice_index(&self.lattice, self.ambient.cover_dim())
    }

    /// Free rank of the subgroup as an abstract group.
    pub fn free_rank(&self) -> usize {
        intlat::rank(&self.lattice) - self.ambient.torsion.len()
    }

    pub fn is_finite_subgroup(&self) -> bool {
        self.free_rank() == 0
    }

    /// Abstract normal form together with the inclusion hom.
    pub fn normal_form(&self) -> (FgAbGroup, Hom) {
        let pres = present_quotient(
            self.ambient.cover_dim(),
            &self.lattice,
            &self.ambient.relation_rows(),
        )
        .expect("relations lie inside every subgroup lattice");
        let k = pres.group.clone();
        let cols = pres.gens_in_cover.len();
        let mut m = IntMatrix::zero(self.ambient.cover_dim(), cols);
        for (j, gen) in pres.gens_in_cover.iter().enumerate() {
            for (i, c) in gen.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        let incl = Hom::new(k.clone(), self.ambient.clone(), m)
            .expect("orders of quotient generators kill their images");
        (k, incl)
    }

    /// Order as an abstract group.
    pub fn order(&self) -> ExtNat {
        self.normal_form().0.order()
    }

    pub fn image_under(&self, f: &Hom) -> Result<Subgroup, Error> {
        if *f.source() != self.ambient {
            return Err(Error::Ambient("subgroup not in the hom's source".into()));
        }
        let rows: Vec<Vec<BigInt>> = (0..self.lattice.rows())
            .map(|r| f.matrix.mul_vec(&self.lattice.row(r)))
            .collect();
        let m = if rows.is_empty() {
            IntMatrix::zero(0, f.target().cover_dim())
        } else {
            IntMatrix::from_rows(rows)?
        };
        Ok(Subgroup::from_cover_rows(f.target(), &m))
    }

    /// {x : f(x) ∈ self} for self ≤ target(f).
    pub fn preimage_under(&self, f: &Hom) -> Result<Subgroup, Error> {
        if *f.target() != self.ambient {
            return Err(Error::Ambient("subgroup not in the hom's target".into()));
        }
        // x with M·x ∈ rowspace(lattice): right kernel of [M | -latticeᵀ],
        // projected to the x block.
        let lat_t = self.lattice.transpose();
        let stacked = f.matrix.hstack(&lat_t.neg());
        let ker = kernel_basis(&stacked);
        let src_dim = f.source().cover_dim();
        let rows: Vec<Vec<BigInt>> = (0..ker.rows())
            .map(|r| ker.row(r)[..src_dim].to_vec())
            .collect();
        let m = if rows.is_empty() {
            IntMatrix::zero(0, src_dim)
        } else {
            IntMatrix::from_rows(rows)?
        };
        Ok(Subgroup::from_cover_rows(f.source(), &m))
    }
}

pub(crate) struct QuotientPresentation {
    pub group: FgAbGroup,
    /// One cover vector per generator of `group`, free generators first.
    pub gens_in_cover: Vec<Vec<BigInt>>,
    /// Maps coordinates w.r.t. `basis` to (unreduced) `group` coordinates.
    pub expr_from_basis: IntMatrix,
    /// Canonical basis of the presented sublattice.
    pub basis: IntMatrix,
}

/// Normal form of P/R for row lattices R ⊆ P ⊆ Z^cover_dim, with generator
/// data in both directions. The geometry: write R in a basis B of P, Smith
/// the coefficient matrix, and read the invariant factors off the diagonal.
pub(crate) fn present_quotient(
    cover_dim: usize,
    sub: &IntMatrix,
    rel: &IntMatrix,
) -> Result<QuotientPresentation, Error> {
    let basis = canonical_row_basis(sub);
    let p = basis.rows();
    let mut c_rows = Vec::new();
    for r in 0..rel.rows() {
        let row = rel.row(r);
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        let coeffs = lattice_membership(&row, &basis)?
            .ok_or_else(|| Error::Domain("relation lattice not contained in the sublattice".into()))?;
        c_rows.push(coeffs);
    }
    let c = if c_rows.is_empty() {
        IntMatrix::zero(0, p)
    } else {
        IntMatrix::from_rows(c_rows)?
    };
    let snf = smith_normal_form(&c);
    let diag = snf.diagonal();
    let d_at = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);

    let free_idx: Vec<usize> = (0..p).filter(|&i| d_at(i).is_zero()).collect();
    let tors_idx: Vec<usize> = (0..p)
        .filter(|&i| {
            let d = d_at(i);
            !d.is_zero() && !d.is_one()
        })
        .collect();
    let torsion: Vec<BigUint> = tors_idx.iter().map(|&i| d_at(i).magnitude().clone()).collect();
    let group = FgAbGroup::new(free_idx.len(), torsion)?;

    let kept: Vec<usize> = free_idx.into_iter().chain(tors_idx).collect();
    let mut gens_in_cover = Vec::with_capacity(kept.len());
    for &i in &kept {
        // Generator i is (row i of V)·B, a cover vector.
        let wi = if p == 0 { Vec::new() } else { snf.v.row(i) };
        let gen: Vec<BigInt> = (0..cover_dim)
            .map(|cc| (0..p).map(|j| &wi[j] * basis.get(j, cc)).sum())
            .collect();
        gens_in_cover.push(gen);
    }
    let mut expr = IntMatrix::zero(kept.len(), p);
    for (gi, &i) in kept.iter().enumerate() {
        for j in 0..p {
            expr.set(gi, j, snf.v_inv.get(j, i).clone());
        }
    }
    Ok(QuotientPresentation {
        group,
        gens_in_cover,
        expr_from_basis: expr,
        basis,
    })
}

/// Kernel of a hom as (abstract normal form, inclusion).
pub fn kernel(f: &Hom) -> (FgAbGroup, Hom) {
    let preimage = Subgroup::trivial(f.target())
        .preimage_under(f)
        .expect("trivial subgroup lives in the target");
    let (k, incl) = preimage.normal_form();
    debug_assert!(f
        .compose(&incl)
        .expect("inclusion lands in the source")
        .is_zero_hom());
    (k, incl)
}

/// f(G) ≤ H in canonical form.
pub fn image_subgroup(f: &Hom) -> Subgroup {
    Subgroup::whole(f.source())
        .image_under(f)
        .expect("whole group lives in the source")
}

/// [ambient : S].
pub fn subgroup_index(s: &Subgroup) -> ExtNat {
    s.index_in_ambient()
}

/// Quotient G/N with the projection hom.
pub fn quotient(g: &FgAbGroup, n: &Subgroup) -> Result<(FgAbGroup, Hom), Error> {
    if *n.ambient() != *g {
        return Err(Error::Ambient("subgroup of a different group".into()));
    }
    let cover = g.cover_dim();
    let pres = present_quotient(cover, &IntMatrix::identity(cover), &n.lattice)?;
    // Basis of the full cover is the identity, so cover coordinates are
    // basis coordinates and the projection matrix is expr_from_basis.
    let q = pres.group.clone();
    let proj = Hom::new(g.clone(), q.clone(), pres.expr_from_basis.clone())?;
    Ok((q, proj))
}

/// Normal form of a direct sum together with injections and projections
/// satisfying pᵢ∘ιⱼ = δᵢⱼ·id.
pub fn direct_sum(components: &[FgAbGroup]) -> Result<(FgAbGroup, Vec<Hom>, Vec<Hom>), Error> {
    let cover: usize = components.iter().map(FgAbGroup::cover_dim).sum();
    let mut rel = IntMatrix::zero(0, cover);
    let mut offset = 0;
    for g in components {
        let r = g.relation_rows();
        let mut padded = IntMatrix::zero(r.rows(), cover);
        for i in 0..r.rows() {
            for j in 0..r.cols() {
                padded.set(i, offset + j, r.get(i, j).clone());
            }
        }
        rel = rel.vstack(&padded);
        offset += g.cover_dim();
    }
    let pres = present_quotient(cover, &IntMatrix::identity(cover), &rel)?;
    let sum = pres.group.clone();

    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for g in components {
        // ι: column for source generator j = sum-coordinates of e_(offset+j).
        let mut inj = IntMatrix::zero(sum.cover_dim(), g.cover_dim());
        for j in 0..g.cover_dim() {
            for i in 0..sum.cover_dim() {
                inj.set(i, j, pres.expr_from_basis.get(i, offset + j).clone());
            }
        }
        injections.push(Hom::new(g.clone(), sum.clone(), inj)?);
        // p: column for sum generator = component block of its cover vector.
        let mut proj = IntMatrix::zero(g.cover_dim(), sum.cover_dim());
        for (col, gen) in pres.gens_in_cover.iter().enumerate() {
            for i in 0..g.cover_dim() {
                proj.set(i, col, gen[offset + i].clone());
            }
        }
        projections.push(Hom::new(sum.clone(), g.clone(), proj)?);
        offset += g.cover_dim();
    }
    Ok((sum, injections, projections))
}

/// Pullback of Y −f→ Z ←g− X: P = {(x,y) : g(x) = f(y)} with the restricted
/// projections u: P→X, v: P→Y, computed as the kernel of (g, −f) on X⊕Y.
pub fn pullback(f: &Hom, g: &Hom) -> Result<(FgAbGroup, Hom, Hom), Error> {
    if f.target() != g.target() {
        return Err(Error::Ambient(format!(
            "pullback needs a common codomain, got {} and {}",
            f.target(),
            g.target()
        )));
    }
    let x = g.source().clone();
    let y = f.source().clone();
    let (_sum, _inj, proj) = direct_sum(&[x, y])?;
    let gpx = g.compose(&proj[0])?;
    let fpy = f.compose(&proj[1])?;
    let h = Hom::difference(&gpx, &fpy)?;
    let (p, incl) = kernel(&h);
    let u = proj[0].compose(&incl)?;
    let v = proj[1].compose(&incl)?;
    debug_assert_eq!(
        g.compose(&u).expect("composable").matrix(),
        f.compose(&v).expect("composable").matrix()
    );
    Ok((p, u, v))
}

/// Normalised cardinality ℓ: |G| for infinite G, log2|G| otherwise.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ell {
    Aleph0,
    Finite {
        #[serde(serialize_with = "crate::fgab::ser_biguint")]
        order: BigUint,
        log2: f64,
    },
}

pub(crate) fn ser_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

impl Ell {
    fn of(g: &FgAbGroup) -> Ell {
        match g.order() {
            ExtNat::Infinite => Ell::Aleph0,
            ExtNat::Finite(n) => {
                let log2 = n
                    .to_f64()
                    .map(f64::log2)
                    .expect("finite order fits in f64 for log display");
                Ell::Finite { order: n, log2 }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    pub r0: usize,
    /// p-ranks keyed by prime (as decimal strings for stable JSON).
    pub r_p: BTreeMap<u64, usize>,
    /// r = max(r0, sup_p r_p); finite for every f.g. group.
    pub r: usize,
    pub ell: Ell,
    pub r_d: usize,
    pub w_d: Cardinal,
    pub w_d_tilde: Cardinal,
}

fn small_prime_factors(n: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut p = 2u64;
    while BigUint::from(p) * BigUint::from(p) <= n {
        let pb = BigUint::from(p);
        if n.mod_floor(&pb).is_zero() {
            out.push(p);
            while n.mod_floor(&pb).is_zero() {
                n = n / &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        out.push(n.to_u64().expect("invariant factors in scope have machine-word prime factors"));
    }
    out
}

pub fn p_rank(g: &FgAbGroup, p: u64) -> usize {
    let pb = BigUint::from(p);
    g.torsion.iter().filter(|d| d.mod_floor(&pb).is_zero()).count()
}

/// The §3 invariant record. `requested_primes` adds p-ranks beyond the
/// primes dividing the invariant factors (which are always included).
pub fn invariants(g: &FgAbGroup, requested_primes: &[u64]) -> InvariantsReport {
    let mut primes: Vec<u64> = requested_primes.to_vec();
    for d in &g.torsion {
        primes.extend(small_prime_factors(d));
    }
    primes.sort_unstable();
    primes.dedup();
    let r_p: BTreeMap<u64, usize> = primes.into_iter().map(|p| (p, p_rank(g, p))).collect();
    let sup_rp = r_p.values().copied().max().unwrap_or(0);
    let r = g.free_rank.max(sup_rp);

    // r_d = inf_m r(mG) is attained at m = exponent of the torsion part:
    // there mG is free of rank r0, and larger m keeps mG ≅ Z^r0.
    let m = BigInt::from(g.torsion_exponent());
    let m_g = Subgroup::multiple_of_group(g, &m).normal_form().0;
    let r_d = m_g.free_rank.max(
        m_g.torsion
            .iter()
            .flat_map(small_prime_factors)
            .map(|p| p_rank(&m_g, p))
            .max()
            .unwrap_or(0),
    );
    let (w_d, w_d_tilde) = if g.free_rank > 0 {
        (Cardinal::Aleph0, Cardinal::Aleph0)
    } else {
        // Bounded group: mG = 0 at the exponent, so inf|mG| = 1 while the
        // normalised variant reaches ℓ({0}) = 0.
        (Cardinal::finite(1u32), Cardinal::finite(0u32))
    };
    InvariantsReport {
        r0: g.free_rank,
        r_p,
        r,
        ell: Ell::of(g),
        r_d,
        w_d,
        w_d_tilde,
    }
}

/// Seeded random constructions used by the property suites and `audit`.
pub mod sample {
    use super::*;
    use rand::Rng;

    pub fn random_group<R: Rng>(rng: &mut R, max_rank: usize, max_exponent: u64) -> FgAbGroup {
        let n = rng.gen_range(0..=max_rank);
        let k = rng.gen_range(0..=2usize);
        let cyclic: Vec<BigUint> = (0..k)
            .map(|_| BigUint::from(rng.gen_range(2..=max_exponent.max(2))))
            .collect();
        FgAbGroup::normalized(n, &cyclic)
    }

    /// Arbitrary well-defined hom: free columns are unconstrained; torsion
    /// columns are built from valid residues.
    pub fn random_hom<R: Rng>(rng: &mut R, source: &FgAbGroup, target: &FgAbGroup, bound: i64) -> Hom {
        let mut m = IntMatrix::zero(target.cover_dim(), source.cover_dim());
        for col in 0..source.cover_dim() {
            let source_order = source.coord_modulus(col).cloned();
            for row in 0..target.cover_dim() {
                let v = match (&source_order, target.coord_modulus(row)) {
                    (None, _) => BigInt::from(rng.gen_range(-bound..=bound)),
                    (Some(_), None) => BigInt::zero(),
                    (Some(d), Some(e)) => {
                        // need d·v ≡ 0 mod e: v a multiple of e/gcd(d, e)
                        let e = BigInt::from(e.clone());
                        let d = BigInt::from(d.clone());
                        let step = &e / e.gcd(&d);
                        let max_mult = (&e / &step).to_i64().unwrap_or(1).max(1);
                        &step * BigInt::from(rng.gen_range(0..max_mult))
                    }
                };
                m.set(row, col, v);
            }
        }
        Hom::new(source.clone(), target.clone(), m).expect("constructed columns satisfy the congruences")
    }

    /// Hom that is a coarse equivalence under finitary structures: finite
    /// kernel and finite-index image, arranged by a nonsingular free block.
    pub fn random_ce_hom<R: Rng>(rng: &mut R, source: &FgAbGroup, target: &FgAbGroup, bound: i64) -> Option<Hom> {
        if source.free_rank != target.free_rank {
            return None;
        }
        let mut h = random_hom(rng, source, target, bound);
        let n = source.free_rank;
        // Overwrite the free block with det ±1·shear…: triangular with
        // nonzero diagonal keeps the kernel finite and the index finite.
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    let d = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    BigInt::from(d)
                } else if i < j {
                    BigInt::from(rng.gen_range(-bound..=bound))
                } else {
                    BigInt::zero()
                };
                h.matrix.set(i, j, v);
            }
        }
        Some(Hom::new(source.clone(), target.clone(), h.matrix.clone()).expect("free block edits preserve well-definedness"))
    }

    pub fn random_element<R: Rng>(rng: &mut R, g: &FgAbGroup, bound: i64) -> GroupElement {
        let coords: Vec<BigInt> = (0..g.cover_dim())
            .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
            .collect();
        g.element(coords)
    }

    pub fn random_subgroup<R: Rng>(rng: &mut R, g: &FgAbGroup, bound: i64) -> Subgroup {
        let count = rng.gen_range(0..=g.cover_dim() + 1);
        let gens: Vec<GroupElement> = (0..count).map(|_| random_element(rng, g, bound)).collect();
        Subgroup::new(g, &gens).expect("elements are in the ambient")
    }

    /// Finite-index sublattice of Z^k as a Subgroup of Z^k.
    pub fn random_finite_index_subgroup<R: Rng>(rng: &mut R, g: &FgAbGroup, bound: i64) -> Subgroup {
        let n = g.cover_dim();
        let mut rows = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    BigInt::from(rng.gen_range(1..=bound.max(1)))
                } else if j > i {
                    BigInt::from(rng.gen_range(-bound..=bound))
                } else {
                    BigInt::zero()
                };
                rows.set(i, j, v);
            }
        }
        Subgroup::from_cover_rows(g, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    #[test]
    fn normal_form_display() {
        let g = FgAbGroup::normalized(2, &[BigUint::from(4u32), BigUint::from(12u32)]);
        assert_eq!(g.to_string(), "Z^2 + Z/4 + Z/12");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn normalized_renormalizes_chain() {
        // Z/2 ⊕ Z/3 ≅ Z/6.
        let g = FgAbGroup::normalized(0, &[BigUint::from(2u32), BigUint::from(3u32)]);
        assert_eq!(g, FgAbGroup::cyclic(6));
        // Z/2 ⊕ Z/2 stays (2, 2).
        let g = FgAbGroup::normalized(0, &[BigUint::from(2u32), BigUint::from(2u32)]);
        assert_eq!(g.torsion(), &[BigUint::from(2u32), BigUint::from(2u32)]);
    }

    #[test]
    fn kernel_of_doubling_is_trivial() {
        let f = Hom::from_i64(z(), z(), &[&[2]]).unwrap();
        let (k, _) = kernel(&f);
        assert!(k.is_trivial());
    }

    #[test]
    fn kernel_of_projection_is_torsion() {
        // Z ⊕ Z/2 → Z, projection.
        let g = FgAbGroup::normalized(1, &[BigUint::from(2u32)]);
        let f = Hom::from_i64(g, z(), &[&[1, 0]]).unwrap();
        let (k, incl) = kernel(&f);
        assert_eq!(k, FgAbGroup::cyclic(2));
        assert!(!incl.is_zero_hom());
    }

    #[test]
    fn kernel_of_x_plus_2y() {
        let f = Hom::from_i64(FgAbGroup::free(2), z(), &[&[1, 2]]).unwrap();
        let (k, incl) = kernel(&f);
        assert_eq!(k, z());
        // Kernel generated by ±(-2, 1): enumerate small solutions and check
        // each is a multiple of the inclusion generator.
        let gen = incl.apply(&k.generator(0));
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                if x + 2 * y != 0 {
                    continue;
                }
                let e = FgAbGroup::free(2).element_i64(&[x, y]);
                let s = Subgroup::new(&FgAbGroup::free(2), &[gen.clone()]).unwrap();
                assert!(s.contains_element(&e).unwrap(), "({x},{y}) not a multiple of the kernel generator");
            }
        }
    }

    #[test]
    fn image_and_index() {
        let f = Hom::from_i64(z(), z(), &[&[2]]).unwrap();
        let img = image_subgroup(&f);
        assert_eq!(subgroup_index(&img), ExtNat::finite(2u32));

        let zero = Hom::zero(&z(), &z());
        assert!(image_subgroup(&zero).is_trivial_subgroup());

        let f = Hom::from_i64(FgAbGroup::free(2), FgAbGroup::free(2), &[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(subgroup_index(&image_subgroup(&f)), ExtNat::finite(6u32));
    }

    #[test]
    fn index_examples_from_torsion() {
        // 2·(Z/4) ≤ Z/4 has index 2.
        let g = FgAbGroup::cyclic(4);
        let s = Subgroup::multiple_of_group(&g, &BigInt::from(2));
        assert_eq!(subgroup_index(&s), ExtNat::finite(2u32));
        // Z × {0} ≤ Z² has infinite index.
        let g2 = FgAbGroup::free(2);
        let s = Subgroup::new(&g2, &[g2.element_i64(&[1, 0])]).unwrap();
        assert_eq!(subgroup_index(&s), ExtNat::Infinite);
    }

    #[test]
    fn quotient_examples() {
        let (q, proj) = quotient(&z(), &Subgroup::multiple_of_group(&z(), &BigInt::from(2))).unwrap();
        assert_eq!(q, FgAbGroup::cyclic(2));
        assert!(!proj.is_zero_hom());

        // (Z ⊕ Z/2)/Tor ≅ Z.
        let g = FgAbGroup::normalized(1, &[BigUint::from(2u32)]);
        let (q, _) = quotient(&g, &Subgroup::torsion_subgroup(&g)).unwrap();
        assert_eq!(q, z());

        // Z²/⟨(2,0),(0,3)⟩ ≅ Z/6 with |Q| = 6.
        let g2 = FgAbGroup::free(2);
        let n = Subgroup::new(&g2, &[g2.element_i64(&[2, 0]), g2.element_i64(&[0, 3])]).unwrap();
        let (q, proj) = quotient(&g2, &n).unwrap();
        assert_eq!(q, FgAbGroup::cyclic(6));
        assert_eq!(q.order(), ExtNat::finite(6u32));
        // The projection must kill exactly N.
        let (ker, _) = kernel(&proj);
        assert_eq!(ker.order(), ExtNat::Infinite);
    }

    #[test]
    fn quotient_projection_surjective_with_kernel_n() {
        let g2 = FgAbGroup::free(2);
        let n = Subgroup::new(&g2, &[g2.element_i64(&[2, 0]), g2.element_i64(&[0, 3])]).unwrap();
        let (_, proj) = quotient(&g2, &n).unwrap();
        assert!(image_subgroup(&proj).is_whole());
        let ker_sub = Subgroup::trivial(proj.target()).preimage_under(&proj).unwrap();
        assert_eq!(ker_sub, n);
    }

    #[test]
    fn direct_sum_examples() {
        let (s, _, _) = direct_sum(&[z(), z()]).unwrap();
        assert_eq!(s, FgAbGroup::free(2));

        let (s, _, _) = direct_sum(&[FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)]).unwrap();
        assert_eq!(s, FgAbGroup::cyclic(6));

        let (s, _, _) = direct_sum(&[FgAbGroup::cyclic(2), FgAbGroup::cyclic(2)]).unwrap();
        assert_eq!(s.torsion(), &[BigUint::from(2u32), BigUint::from(2u32)]);
    }

    #[test]
    fn direct_sum_projection_injection_identities() {
        let comps = [
            FgAbGroup::normalized(1, &[BigUint::from(4u32)]),
            FgAbGroup::normalized(2, &[BigUint::from(6u32)]),
        ];
        let (_, inj, proj) = direct_sum(&comps).unwrap();
        for i in 0..comps.len() {
            for j in 0..comps.len() {
                let comp = proj[i].compose(&inj[j]).unwrap();
                if i == j {
                    assert_eq!(comp, Hom::identity(&comps[i]));
                } else {
                    assert!(comp.is_zero_hom());
                }
            }
        }
    }

    #[test]
    fn pullback_examples() {
        // f = g = id: P ≅ Z (the diagonal).
        let id = Hom::identity(&z());
        let (p, u, v) = pullback(&id, &id).unwrap();
        assert_eq!(p, z());
        assert_eq!(u, v);

        // f = ×2, g = ×3: P = {(x,y) : 3x = 2y} = ⟨(2,3)⟩ ≅ Z.
        let f = Hom::from_i64(z(), z(), &[&[2]]).unwrap();
        let g = Hom::from_i64(z(), z(), &[&[3]]).unwrap();
        let (p, u, v) = pullback(&f, &g).unwrap();
        assert_eq!(p, z());
        let gen_x = u.apply(&p.generator(0));
        let gen_y = v.apply(&p.generator(0));
        assert_eq!(gen_x.coords()[0].abs(), BigInt::from(2));
        assert_eq!(gen_y.coords()[0].abs(), BigInt::from(3));

        // Everything equalizes over the trivial group.
        let to_zero = Hom::zero(&z(), &FgAbGroup::trivial());
        let (p, _, _) = pullback(&to_zero, &to_zero).unwrap();
        assert_eq!(p, FgAbGroup::free(2));
    }

    #[test]
    fn invariants_examples() {
        let g = FgAbGroup::normalized(2, &[BigUint::from(6u32)]);
        let rep = invariants(&g, &[5]);
        assert_eq!(rep.r0, 2);
        assert_eq!(rep.r_p.get(&2), Some(&1));
        assert_eq!(rep.r_p.get(&3), Some(&1));
        assert_eq!(rep.r_p.get(&5), Some(&0));
        assert_eq!(rep.r_d, 2);
        assert_eq!(rep.w_d, Cardinal::Aleph0);
        assert_eq!(rep.ell, Ell::Aleph0);

        let g = FgAbGroup::cyclic(8);
        let rep = invariants(&g, &[]);
        assert_eq!(rep.r0, 0);
        assert_eq!(rep.r_p.get(&2), Some(&1));
        match rep.ell {
            Ell::Finite { log2, .. } => assert!((log2 - 3.0).abs() < 1e-12),
            Ell::Aleph0 => panic!("Z/8 is finite"),
        }
        assert_eq!(rep.w_d, Cardinal::finite(1u32));
        assert_eq!(rep.w_d_tilde, Cardinal::finite(0u32));

        let rep = invariants(&FgAbGroup::trivial(), &[2]);
        assert_eq!(rep.r0, 0);
        assert_eq!(rep.r, 0);
        assert_eq!(rep.r_d, 0);
        match rep.ell {
            Ell::Finite { log2, .. } => assert_eq!(log2, 0.0),
            Ell::Aleph0 => panic!("trivial group is finite"),
        }
        // Per the divisible-weight definition the bounded-group value is 1,
        // with the normalised variant 0.
        assert_eq!(rep.w_d, Cardinal::finite(1u32));
        assert_eq!(rep.w_d_tilde, Cardinal::finite(0u32));
    }

    #[test]
    fn r_d_stable_at_larger_multiples() {
        let g = FgAbGroup::normalized(2, &[BigUint::from(6u32)]);
        let m = BigInt::from(g.torsion_exponent());
        let rank_at = |mm: &BigInt| {
            Subgroup::multiple_of_group(&g, mm).normal_form().0.free_rank()
        };
        assert_eq!(rank_at(&m), 2);
        assert_eq!(rank_at(&(&m * 2)), 2);
        assert_eq!(rank_at(&(&m * 5)), 2);
    }

    #[test]
    fn subgroup_canonical_equality() {
        let g = FgAbGroup::free(2);
        let s1 = Subgroup::new(&g, &[g.element_i64(&[2, 0]), g.element_i64(&[0, 2])]).unwrap();
        let s2 = Subgroup::new(
            &g,
            &[g.element_i64(&[2, 2]), g.element_i64(&[2, -2]), g.element_i64(&[2, 0])],
        )
        .unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn hom_well_definedness_rejected() {
        // Z/2 → Z sending the generator to 1 is not a homomorphism.
        let bad = Hom::from_i64(FgAbGroup::cyclic(2), z(), &[&[1]]);
        assert!(bad.is_err());
        // Z/2 → Z/4 sending generator to 1 is not well-defined, to 2 is.
        assert!(Hom::from_i64(FgAbGroup::cyclic(2), FgAbGroup::cyclic(4), &[&[1]]).is_err());
        assert!(Hom::from_i64(FgAbGroup::cyclic(2), FgAbGroup::cyclic(4), &[&[2]]).is_ok());
    }

    #[test]
    fn preimage_and_membership() {
        let g = FgAbGroup::free(2);
        let f = Hom::from_i64(g.clone(), z(), &[&[1, 2]]).unwrap();
        let even = Subgroup::multiple_of_group(&z(), &BigInt::from(2));
        let pre = even.preimage_under(&f).unwrap();
        assert!(pre.contains_element(&g.element_i64(&[2, 0])).unwrap());
        assert!(pre.contains_element(&g.element_i64(&[0, 1])).unwrap());
        assert!(!pre.contains_element(&g.element_i64(&[1, 0])).unwrap());
    }
}
