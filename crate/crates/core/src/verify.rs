//! Finite-field verification: point counts on both sides of the
//! variety/Grassmannian correspondence, the explicit bijection between them,
//! and the dimension of the endomorphism algebra of the representation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::construct::{
    build_representation, ConstructError, DimensionVector, QuiverRepresentation, Vertex,
    LINEAR_FORM_TARGET, SHIFT_TARGET, SOURCE,
};
use crate::exactmath::{inv_mod, Field, MathError, Matrix, Scalar};
use crate::polysys::{PolyError, PolynomialSystem};
use crate::veronese::veronese_map;

/// Refuse to scan more lines than this.
pub const MAX_LINES: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("dimension vector {0:?} is not the thin vector of the construction")]
    UnsupportedDimensionVector(BTreeMap<Vertex, usize>),
    #[error("enumeration would scan {lines} lines (limit {limit})")]
    TooManyLines { lines: u128, limit: u128 },
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// A nonzero coordinate vector scaled so that its first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Scalar>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Scalar>) -> Result<ProjectivePoint, MathError> {
        let lead = coords
            .iter()
            .position(|x| !x.is_zero())
            .ok_or(MathError::ZeroVector)?;
        let field = coords[lead].field();
        if let Some(x) = coords.iter().find(|x| x.field() != field) {
            return Err(MathError::FieldMismatch(field, x.field()));
        }
        let inv = coords[lead].inv()?;
        let coords = if inv.is_one() {
            coords
        } else {
            coords.iter().map(|x| x * &inv).collect()
        };
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// `n` for a point of `P^n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    fn lead(&self) -> usize {
        self.coords.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    /// Residues of a point over F_p.
    pub fn residues(&self) -> Vec<u64> {
        self.coords.iter().filter_map(Scalar::residue).collect()
    }

    fn from_residues(coords: &[u64], p: u64) -> ProjectivePoint {
        ProjectivePoint {
            coords: coords.iter().map(|&value| Scalar::Mod { value, p }).collect(),
        }
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Points whose leading 1 sits further left come first; ties break
/// lexicographically on the coordinates. This is the enumeration order of
/// [`enumerate_proj_points`].
impl Ord for ProjectivePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.lead(), &self.coords).cmp(&(other.lead(), &other.coords))
    }
}

/// Walks normalized residue vectors of `P^dim(F_p)`.
#[derive(Debug, Clone)]
struct Odometer {
    p: u64,
    coords: Vec<u64>,
    lead: usize,
    started: bool,
}

impl Odometer {
    fn new(dim: usize, p: u64) -> Odometer {
        let mut coords = vec![0; dim + 1];
        coords[0] = 1;
        Odometer {
            p,
            coords,
            lead: 0,
            started: false,
        }
    }

    fn advance(&mut self) -> Option<&[u64]> {
        if !self.started {
            self.started = true;
            return Some(&self.coords);
        }
        if self.lead >= self.coords.len() {
            return None;
        }
        for j in (self.lead + 1..self.coords.len()).rev() {
            self.coords[j] += 1;
            if self.coords[j] < self.p {
                return Some(&self.coords);
            }
            self.coords[j] = 0;
        }
        self.coords[self.lead] = 0;
        self.lead += 1;
        if self.lead >= self.coords.len() {
            return None;
        }
        self.coords[self.lead] = 1;
        Some(&self.coords)
    }
}

/// `(q^(dim+1) - 1) / (q - 1)`, saturating.
pub fn projective_count(dim: usize, q: u64) -> u128 {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..=dim {
        total = total.saturating_add(power);
        power = power.saturating_mul(q as u128);
    }
    total
}

/// Iterator over `P^dim(F_q)`, see [`enumerate_proj_points`].
#[derive(Debug, Clone)]
pub struct ProjectivePoints {
    odometer: Odometer,
    remaining: u128,
}

impl Iterator for ProjectivePoints {
    type Item = ProjectivePoint;

    fn next(&mut self) -> Option<ProjectivePoint> {
        let p = self.odometer.p;
        let coords = self.odometer.advance()?;
        self.remaining -= 1;
        Some(ProjectivePoint::from_residues(coords, p))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

impl ExactSizeIterator for ProjectivePoints {}

/// All points of `P^dim(F_q)`, each once, in the order of [`ProjectivePoint`]'s `Ord`.
pub fn enumerate_proj_points(dim: usize, q: u64) -> Result<ProjectivePoints, VerifyError> {
    Field::prime(q)?;
    Ok(ProjectivePoints {
        odometer: Odometer::new(dim, q),
        remaining: projective_count(dim, q),
    })
}

/// Brute-force `X(F_q)` for the system as given (no equalization).
pub fn variety_points(s: &PolynomialSystem, q: u64) -> Result<Vec<ProjectivePoint>, VerifyError> {
    let (reduced, _) = s.reduce_mod_p(q)?;
    let mut out = Vec::new();
    for point in enumerate_proj_points(s.ambient_n(), q)? {
        if reduced.vanishes_at(point.coords())? {
            out.push(point);
        }
    }
    Ok(out)
}

/// A subrepresentation of dimension vector `e`: the line `u2 ⊆ V_2` and the
/// line `u3 ⊆ V_3` spanned by the images `f_i(u2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassPoint {
    pub u2: ProjectivePoint,
    pub u3: ProjectivePoint,
}

/// Result of scanning every line of `ker Φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannianScan {
    pub points: Vec<GrassPoint>,
    pub lines_scanned: u128,
    /// Lines on which every `f_i` vanishes. Always zero for construction outputs.
    pub zero_span_lines: u128,
    pub kernel_dim: usize,
}

fn check_dimension_vector(rep: &QuiverRepresentation, e: &DimensionVector) -> Result<(), VerifyError> {
    let mut expected = BTreeMap::from([(SOURCE, 1), (SHIFT_TARGET, 1)]);
    if rep.quiver().vertices().contains(&LINEAR_FORM_TARGET) {
        expected.insert(LINEAR_FORM_TARGET, 0);
    }
    if e.entries() != &expected {
        return Err(VerifyError::UnsupportedDimensionVector(e.entries().clone()));
    }
    Ok(())
}

/// Sparse residue form of a matrix: `(row, col, value)` for nonzero entries.
fn sparse_residues(m: &Matrix) -> Vec<(usize, usize, u64)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if let Some(v) = m.get(r, c).residue().filter(|&v| v != 0) {
                out.push((r, c, v));
            }
        }
    }
    out
}

/// Rank of a small residue matrix, destroying `rows`.
fn rank_mod_p(rows: &mut [Vec<u64>], p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + p - factor * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn normalize_residues(v: &mut [u64], p: u64) -> bool {
    let Some(lead) = v.iter().position(|&x| x != 0) else {
        return false;
    };
    let inv = inv_mod(v[lead], p);
    for x in v.iter_mut() {
        *x = *x * inv % p;
    }
    true
}

/// Enumerates `Gr_e(V)(F_q)` by scanning lines of `ker Φ` only, where `Φ`
/// stacks the linear forms. A line `[v]` is a point iff the images `f_i(v)`
/// span a line.
pub fn grassmannian_scan(
    rep: &QuiverRepresentation,
    e: &DimensionVector,
    q: u64,
) -> Result<GrassmannianScan, VerifyError> {
    check_dimension_vector(rep, e)?;
    let field = Field::prime(q)?;
    let rep = rep.reduce_into(field)?;
    let m = rep.dim(SOURCE);
    let m_prime = rep.dim(SHIFT_TARGET);

    let phi = rep
        .linear_forms()
        .into_iter()
        .try_fold(Matrix::zeros(field, 0, m), |acc, row| acc.vstack(row))?;
    let kernel: Vec<Vec<u64>> = phi
        .kernel_basis()
        .iter()
        .map(|v| v.iter().filter_map(Scalar::residue).collect())
        .collect();
    let kernel_dim = kernel.len();
    let mut scan = GrassmannianScan {
        points: Vec::new(),
        lines_scanned: 0,
        zero_span_lines: 0,
        kernel_dim,
    };
    if kernel_dim == 0 {
        return Ok(scan);
    }
    let lines = projective_count(kernel_dim - 1, q);
    if lines > MAX_LINES {
        return Err(VerifyError::TooManyLines {
            lines,
            limit: MAX_LINES,
        });
    }

    let shifts: Vec<Vec<(usize, usize, u64)>> =
        rep.shift_maps().into_iter().map(sparse_residues).collect();
    let mut v = vec![0u64; m];
    let mut images = vec![vec![0u64; m_prime]; shifts.len()];
    let mut scratch = images.clone();
    let mut odometer = Odometer::new(kernel_dim - 1, q);
    while let Some(coeffs) = odometer.advance() {
        scan.lines_scanned += 1;
        v.iter_mut().for_each(|x| *x = 0);
        for (c, b) in coeffs.iter().zip(&kernel) {
            if *c == 0 {
                continue;
            }
            for (x, bx) in v.iter_mut().zip(b) {
                *x = (*x + c * bx) % q;
            }
        }
        for (img, f) in images.iter_mut().zip(&shifts) {
            img.iter_mut().for_each(|x| *x = 0);
            for &(r, c, val) in f {
                img[r] = (img[r] + val * v[c]) % q;
            }
        }
        scratch.clone_from(&images);
        match rank_mod_p(&mut scratch, q) {
            0 => scan.zero_span_lines += 1,
            1 => {
                let mut u2 = v.clone();
                normalize_residues(&mut u2, q);
                let mut u3 = images
                    .iter()
                    .find(|w| w.iter().any(|&x| x != 0))
                    .expect("rank one")
                    .clone();
                normalize_residues(&mut u3, q);
                scan.points.push(GrassPoint {
                    u2: ProjectivePoint::from_residues(&u2, q),
                    u3: ProjectivePoint::from_residues(&u3, q),
                });
            }
            _ => {}
        }
    }
    scan.points.sort();
    Ok(scan)
}

pub fn grassmannian_points(
    rep: &QuiverRepresentation,
    e: &DimensionVector,
    q: u64,
) -> Result<Vec<GrassPoint>, VerifyError> {
    Ok(grassmannian_scan(rep, e, q)?.points)
}

/// The subrepresentation induced by a point of `X`: its Veronese image and
/// the span of the shifted images.
pub fn induced_grass_point(
    rep_mod_p: &QuiverRepresentation,
    y: &ProjectivePoint,
) -> Result<Option<GrassPoint>, VerifyError> {
    let u2 = veronese_map(y, rep_mod_p.d())?;
    for f in rep_mod_p.shift_maps() {
        let w = f.mat_vec(u2.coords())?;
        if w.iter().any(|x| !x.is_zero()) {
            let u3 = ProjectivePoint::new(w)?;
            return Ok(Some(GrassPoint { u2, u3 }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub q: u64,
    pub variety_count: usize,
    pub grassmannian_count: usize,
    pub bijection_ok: bool,
    pub endo_dim: usize,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    /// Bijection established and the representation is Schurian over F_q.
    pub fn passed(&self) -> bool {
        self.bijection_ok && self.variety_count == self.grassmannian_count && self.endo_dim == 1
    }
}

/// Builds the representation over Q, then compares `X(F_q)` (from the
/// original equations) with `Gr_e(V)(F_q)` (from the representation) through
/// `y ↦ (veronese(y), span f_i(veronese(y)))`.
pub fn verify_correspondence(s: &PolynomialSystem, q: u64) -> Result<VerificationReport, VerifyError> {
    let (rep, e) = build_representation(s)?;
    verify_with_representation(s, &rep, &e, q)
}

pub fn verify_with_representation(
    s: &PolynomialSystem,
    rep: &QuiverRepresentation,
    e: &DimensionVector,
    q: u64,
) -> Result<VerificationReport, VerifyError> {
    let field = Field::prime(q)?;
    let (_, warnings) = s.reduce_mod_p(q)?;
    let variety = variety_points(s, q)?;
    let grass: BTreeSet<GrassPoint> = grassmannian_points(rep, e, q)?.into_iter().collect();

    let rep_mod_p = rep.reduce_into(field)?;
    let mut image = BTreeSet::new();
    let mut well_defined = true;
    for y in &variety {
        match induced_grass_point(&rep_mod_p, y)? {
            Some(g) => {
                image.insert(g);
            }
            None => well_defined = false,
        }
    }
    let injective = well_defined && image.len() == variety.len();
    Ok(VerificationReport {
        q,
        variety_count: variety.len(),
        grassmannian_count: grass.len(),
        bijection_ok: injective && image == grass,
        endo_dim: endomorphism_dim(rep, field)?,
        warnings,
    })
}

/// One endomorphism of a representation: a square matrix per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    pub blocks: BTreeMap<Vertex, Matrix>,
}

impl Endomorphism {
    /// `Some(c)` if every block is `c` times the identity.
    pub fn scalar(&self) -> Option<Scalar> {
        let mut c: Option<Scalar> = None;
        for block in self.blocks.values() {
            for r in 0..block.rows() {
                for col in 0..block.cols() {
                    let x = block.get(r, col);
                    if r != col {
                        if !x.is_zero() {
                            return None;
                        }
                    } else if let Some(prev) = &c {
                        if prev != x {
                            return None;
                        }
                    } else {
                        c = Some(x.clone());
                    }
                }
            }
        }
        c
    }
}

struct IntertwinerSystem {
    field: Field,
    offsets: BTreeMap<Vertex, usize>,
    unknowns: usize,
    equations: Matrix,
}

/// Linear system in the entries of one `dim_v × dim_v` matrix `η_v` per vertex:
/// `η_target · M_a − M_a · η_source = 0` for every arrow `a`.
fn intertwiner_system(rep: &QuiverRepresentation, field: Field) -> Result<IntertwinerSystem, VerifyError> {
    let rep = rep.reduce_into(field)?;
    let mut offsets = BTreeMap::new();
    let mut unknowns = 0;
    for &v in rep.quiver().vertices() {
        offsets.insert(v, unknowns);
        unknowns += rep.dim(v) * rep.dim(v);
    }
    let mut rows = Vec::new();
    for (arrow, m) in rep.arrows() {
        let (dt, ds) = (rep.dim(arrow.target), rep.dim(arrow.source));
        let (ot, os) = (offsets[&arrow.target], offsets[&arrow.source]);
        for r in 0..dt {
            for c in 0..ds {
                let mut row = vec![Scalar::zero(field); unknowns];
                for k in 0..dt {
                    let x = m.get(k, c);
                    if !x.is_zero() {
                        let slot = &mut row[ot + r * dt + k];
                        *slot = &*slot + x;
                    }
                }
                for k in 0..ds {
                    let x = m.get(r, k);
                    if !x.is_zero() {
                        let slot = &mut row[os + k * ds + c];
                        *slot = &*slot - x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(IntertwinerSystem {
        field,
        offsets,
        unknowns,
        equations: Matrix::from_rows(field, unknowns, rows)?,
    })
}

/// A basis of `End(V)` over `field`.
pub fn endomorphism_space(rep: &QuiverRepresentation, field: Field) -> Result<Vec<Endomorphism>, VerifyError> {
    let sys = intertwiner_system(rep, field)?;
    Ok(sys
        .equations
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let blocks = sys
                .offsets
                .iter()
                .map(|(&vertex, &off)| {
                    let d = rep.dim(vertex);
                    let rows = (0..d).map(|r| v[off + r * d..off + (r + 1) * d].to_vec()).collect();
                    (vertex, Matrix::from_rows(sys.field, d, rows).expect("square block"))
                })
                .collect();
            Endomorphism { blocks }
        })
        .collect())
}

/// `dim End(V)`; 1 means the representation is Schurian.
pub fn endomorphism_dim(rep: &QuiverRepresentation, field: Field) -> Result<usize, VerifyError> {
    let sys = intertwiner_system(rep, field)?;
    Ok(sys.unknowns - sys.equations.rank())
}
