//! Weight-preserving maps between convolutional codes.
//!
//! A [`CodeMap`] is an `F_q[x]`-isomorphism between two codes, fixed by the
//! images of the domain's row-reduced basis. The checkers decide whether it
//! is a `j`-equivalence, an equivalence, an isometry or a strong isometry by
//! searching for a monomial map `c ↦ c·P·D` that agrees with it on the basis.
//!
//! Agreement on a basis is enough in every case: truncation to `[0, j]`
//! commutes with multiplication by a constant matrix, and a monomial map is
//! weight preserving on all of `F_q[x]^n`. Conversely every `j`-equivalence
//! (isometry) has such a constant (shifted) monomial form on the basis.

use serde::{Deserialize, Serialize};

use crate::distances::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::poly::{PolyMatrix, PolyVector, Polynomial};
use crate::structure::{popov, ConvCode};

/// `c ↦ c·P·D`: coordinate `i` of the image is
/// `scalars[i] · x^{shifts[i]} · c[perm[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMap {
    pub perm: Vec<usize>,
    pub scalars: Vec<u32>,
    pub shifts: Vec<i64>,
}

impl MonomialMap {
    pub fn identity(n: usize) -> MonomialMap {
        MonomialMap {
            perm: (0..n).collect(),
            scalars: vec![1; n],
            shifts: vec![0; n],
        }
    }

    pub fn is_constant(&self) -> bool {
        self.shifts.iter().all(|&m| m == 0)
    }

    /// Image of `v`, or `None` when a negative shift leaves the polynomials.
    pub fn apply(&self, field: &Field, v: &PolyVector) -> Option<PolyVector> {
        let entries = (0..self.perm.len())
            .map(|i| {
                let p = v.entry(self.perm[i]).scale(field, self.scalars[i]);
                let m = self.shifts[i];
                if m >= 0 {
                    Some(p.shift(m as usize))
                } else {
                    p.unshift(m.unsigned_abs() as usize)
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PolyVector::new(entries))
    }
}

/// Outcome of a decision, with a witness when one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapVerdict {
    pub holds: bool,
    pub witness: Option<MonomialMap>,
}

/// Outcome of the strong isometry decision. A failing degree check comes
/// with a codeword whose degree the map changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongVerdict {
    pub holds: bool,
    pub isometry: Option<MonomialMap>,
    pub counterexample: Option<PolyVector>,
}

#[derive(Clone, Debug)]
pub struct CodeMap {
    domain: ConvCode,
    codomain: ConvCode,
    /// Images of the domain's row-reduced basis rows.
    images: Vec<PolyVector>,
}

impl CodeMap {
    /// The map sending the domain's generator rows, as supplied, to `images`.
    pub fn new(domain: ConvCode, codomain: ConvCode, images: Vec<PolyVector>) -> Result<CodeMap> {
        if images.len() != domain.k() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} generator rows",
                images.len(),
                domain.k()
            )));
        }
        let field = domain.field().clone();
        let n = codomain.n();
        if images.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidMap(format!("images must have length {n}")));
        }
        let basis_images = domain
            .transform()
            .iter()
            .map(|u| PolyVector::combine(&field, u.entries(), &images, n))
            .collect();
        CodeMap::from_basis_images(domain, codomain, basis_images)
    }

    /// The map sending the `i`-th row-reduced basis row to `images[i]`.
    pub fn from_basis_images(
        domain: ConvCode,
        codomain: ConvCode,
        images: Vec<PolyVector>,
    ) -> Result<CodeMap> {
        if !domain.field().same_as(codomain.field()) {
            return Err(Error::FieldMismatch);
        }
        if domain.k() != codomain.k() || images.len() != domain.k() {
            return Err(Error::InvalidMap("domain and codomain ranks differ".into()));
        }
        if let Some(v) = images.iter().find(|v| !codomain.contains(v)) {
            return Err(Error::InvalidMap(format!(
                "image {v:?} is not in the codomain"
            )));
        }
        let span = ConvCode::new(domain.field().clone(), PolyMatrix::new(images.clone())?)
            .map_err(|_| Error::InvalidMap("images are dependent".into()))?;
        if !span.same_module(&codomain) {
            return Err(Error::InvalidMap(
                "images do not generate the codomain".into(),
            ));
        }
        Ok(CodeMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(code: &ConvCode) -> CodeMap {
        CodeMap {
            domain: code.clone(),
            codomain: code.clone(),
            images: code.basis().to_vec(),
        }
    }

    pub fn domain(&self) -> &ConvCode {
        &self.domain
    }

    pub fn codomain(&self) -> &ConvCode {
        &self.codomain
    }

    pub fn images(&self) -> &[PolyVector] {
        &self.images
    }

    fn field(&self) -> &Field {
        self.domain.field()
    }

    /// Image of a domain codeword.
    pub fn apply(&self, c: &PolyVector) -> Result<PolyVector> {
        let coords = self
            .domain
            .coordinates(c)
            .ok_or_else(|| Error::Invalid(format!("{c:?} is not in the domain")))?;
        Ok(PolyVector::combine(
            self.field(),
            &coords,
            &self.images,
            self.codomain.n(),
        ))
    }

    /// Largest degree among basis rows and their images.
    pub fn max_degree(&self) -> usize {
        self.domain
            .basis()
            .iter()
            .chain(&self.images)
            .filter_map(PolyVector::degree)
            .max()
            .unwrap_or(0)
    }
}

/// For each pair (target column, source column) the first scalar and shift
/// in search order that carries the source column to the target column on
/// every row, if any.
fn column_candidates(
    field: &Field,
    sources: &[PolyVector],
    targets: &[PolyVector],
    shifts: &[i64],
) -> Vec<Vec<Option<(u32, i64)>>> {
    let n = targets.first().map_or(0, PolyVector::len);
    let fits = |i: usize, s: usize, a: u32, m: i64| {
        sources.iter().zip(targets).all(|(src, tgt)| {
            let scaled = src.entry(s).scale(field, a);
            if m >= 0 {
                scaled.shift(m as usize) == *tgt.entry(i)
            } else {
                tgt.entry(i).shift(m.unsigned_abs() as usize) == scaled
            }
        })
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|s| {
                    field
                        .nonzero()
                        .flat_map(|a| shifts.iter().map(move |&m| (a, m)))
                        .find(|&(a, m)| fits(i, s, a, m))
                })
                .collect()
        })
        .collect()
}

/// Lexicographically least permutation admitting a witness, with the first
/// scalar and shift for each coordinate.
fn find_monomial(
    field: &Field,
    sources: &[PolyVector],
    targets: &[PolyVector],
    shifts: &[i64],
    budget: &Budget,
) -> Result<Option<MonomialMap>> {
    let n = targets.first().map_or(0, PolyVector::len);
    let per_coordinate = (field.order() as f64 - 1.0) * shifts.len() as f64;
    let total = (1..=n).map(|i| i as f64).product::<f64>() * per_coordinate.powi(n as i32);
    if total > budget.candidates as f64 {
        return Err(Error::budget(
            "monomial map candidates",
            format!("{total:.0}"),
            budget.candidates,
        ));
    }
    let cands = column_candidates(field, sources, targets, shifts);
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if !assign(&cands, &mut perm, &mut used) {
        return Ok(None);
    }
    let (scalars, shifts) = perm
        .iter()
        .enumerate()
        .map(|(i, &s)| cands[i][s].expect("assigned columns fit"))
        .unzip();
    Ok(Some(MonomialMap {
        perm,
        scalars,
        shifts,
    }))
}

fn assign(cands: &[Vec<Option<(u32, i64)>>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let i = perm.len();
    if i == cands.len() {
        return true;
    }
    for s in 0..cands.len() {
        if used[s] || cands[i][s].is_none() {
            continue;
        }
        used[s] = true;
        perm.push(s);
        if assign(cands, perm, used) {
            return true;
        }
        perm.pop();
        used[s] = false;
    }
    false
}

fn truncated(rows: &[PolyVector], j: usize) -> Vec<PolyVector> {
    rows.iter()
        .map(|r| r.truncate(0, j).expect("0 ≤ j"))
        .collect()
}

/// Whether `φ` preserves the weight of every truncation `c_{[0,j]}`.
pub fn check_j_equivalence(map: &CodeMap, j: usize, budget: &Budget) -> Result<MapVerdict> {
    let sources = truncated(map.domain.basis(), j);
    let targets = truncated(&map.images, j);
    let witness = find_monomial(map.field(), &sources, &targets, &[0], budget)?;
    Ok(MapVerdict {
        holds: witness.is_some(),
        witness,
    })
}

/// Whether `φ` is a `j`-equivalence for every `j`. Once `j` reaches the
/// largest degree of a basis row or image, truncation is the identity on
/// the basis and no later window adds a constraint.
pub fn check_equivalence(map: &CodeMap, budget: &Budget) -> Result<MapVerdict> {
    check_j_equivalence(map, map.max_degree(), budget)
}

/// Whether `φ` preserves the weight of every codeword. Shifts range over
/// `|m| ≤ max degree + δ₁`: a nonzero target column forces `m` to be a
/// difference of two degrees present in the basis or images, and an all-zero
/// column is matched with shift 0.
pub fn check_isometry(map: &CodeMap, budget: &Budget) -> Result<MapVerdict> {
    let reach = (map.max_degree() + map.domain.delta1()) as i64;
    let mut shifts = vec![0];
    for m in 1..=reach {
        shifts.extend([m, -m]);
    }
    let witness = find_monomial(
        map.field(),
        map.domain.basis(),
        &map.images,
        &shifts,
        budget,
    )?;
    if let Some(w) = &witness {
        for (c, img) in map.domain.basis().iter().zip(&map.images) {
            if w.apply(map.field(), c).as_ref() != Some(img) {
                return Err(Error::Internal(
                    "isometry witness disagrees with the map".into(),
                ));
            }
        }
    }
    Ok(MapVerdict {
        holds: witness.is_some(),
        witness,
    })
}

/// Whether `φ` is an isometry that also preserves the degree of every
/// codeword.
///
/// The domain basis is row reduced, so `deg Σ p_i c_i = max(deg p_i + d_i)`.
/// The same formula holds for the images exactly when they have the same
/// row degrees and are themselves row reduced; otherwise a kernel vector of
/// their leading coefficient matrix gives a codeword whose degree drops.
/// Every codeword with message degree at most `probe_bound` is then checked
/// against the verdict, within the work budget.
pub fn check_strong_isometry(
    map: &CodeMap,
    probe_bound: usize,
    budget: &Budget,
) -> Result<StrongVerdict> {
    let iso = check_isometry(map, budget)?;
    if !iso.holds {
        return Ok(StrongVerdict {
            holds: false,
            isometry: None,
            counterexample: None,
        });
    }
    let counterexample = degree_violation(map);
    probe_degrees(map, probe_bound, counterexample.is_none(), budget)?;
    if let Some(c) = &counterexample {
        let image = map.apply(c)?;
        if image.degree() == c.degree() {
            return Err(Error::Internal(
                "degree counterexample does not change degree".into(),
            ));
        }
    }
    Ok(StrongVerdict {
        holds: counterexample.is_none(),
        isometry: iso.witness,
        counterexample,
    })
}

/// A domain codeword whose image has a different degree, if any exists.
fn degree_violation(map: &CodeMap) -> Option<PolyVector> {
    let field = map.field();
    let degrees = map.domain.row_degrees();
    if let Some(i) = (0..degrees.len()).find(|&i| map.images[i].degree() != Some(degrees[i])) {
        return Some(map.domain.basis()[i].clone());
    }
    if popov::is_row_reduced(field, &map.images) {
        return None;
    }
    // Left kernel of the leading coefficient matrix via RREF of [L | I].
    let lead = popov::leading_coefficient_matrix(&map.images);
    let (k, n) = (lead.rows(), lead.cols());
    let mut aug: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut row = lead.row(i).to_vec();
            row.extend((0..k).map(|l| u32::from(l == i)));
            row
        })
        .collect();
    linalg::rref(field, &mut aug);
    let kernel = aug.iter().find(|row| linalg::is_zero(&row[..n]))?;
    let a = &kernel[n..];
    let top = (0..k).filter(|&i| a[i] != 0).map(|i| degrees[i]).max()?;
    let message: Vec<Polynomial> = (0..k)
        .map(|i| Polynomial::monomial(a[i], top - degrees[i]))
        .collect();
    Some(map.domain.encode(&message))
}

/// Exhaustively compare degrees on messages of degree at most `bound`.
fn probe_degrees(
    map: &CodeMap,
    bound: usize,
    expect_preserved: bool,
    budget: &Budget,
) -> Result<()> {
    let field = map.field();
    let q = field.order() as usize;
    let slots = map.domain.k() * (bound + 1);
    let total = (q as f64).powi(slots as i32);
    if total > budget.work as f64 {
        return Err(Error::budget(
            "degree probe",
            format!("{total:.0}"),
            budget.work,
        ));
    }
    if !expect_preserved {
        return Ok(());
    }
    for index in 0..q.pow(slots as u32) {
        let mut u = index;
        let message: Vec<Polynomial> = (0..map.domain.k())
            .map(|_| {
                let coeffs = (0..=bound)
                    .map(|_| {
                        let c = (u % q) as u32;
                        u /= q;
                        c
                    })
                    .collect();
                Polynomial::from_coeffs(coeffs)
            })
            .collect();
        let c = map.domain.encode(&message);
        let image = PolyVector::combine(field, &message, &map.images, map.codomain.n());
        if c.degree() != image.degree() {
            return Err(Error::Internal(format!(
                "degree changed on {c:?} despite the row-degree criterion"
            )));
        }
    }
    Ok(())
}

/// Coordinates of `v` with respect to `rows`, which must be independent.
fn coordinates_in(field: &Field, rows: &[PolyVector], v: &PolyVector) -> Result<Vec<Polynomial>> {
    let span = ConvCode::new(field.clone(), PolyMatrix::new(rows.to_vec())?)?;
    let coords = span
        .coordinates(v)
        .ok_or_else(|| Error::Invalid(format!("{v:?} is not in the span")))?;
    // basis = U · rows, so v = coords · U · rows.
    Ok((0..rows.len())
        .map(|l| {
            coords
                .iter()
                .zip(span.transform())
                .fold(Polynomial::zero(), |acc, (c, u)| {
                    acc.add(field, &c.mul(field, u.entry(l)))
                })
        })
        .collect())
}

/// `φ⁻¹`.
pub fn inverse(map: &CodeMap) -> Result<CodeMap> {
    let field = map.field();
    let images = map
        .codomain
        .basis()
        .iter()
        .map(|b| {
            let coords = coordinates_in(field, &map.images, b)?;
            Ok(PolyVector::combine(
                field,
                &coords,
                map.domain.basis(),
                map.domain.n(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    CodeMap::from_basis_images(map.codomain.clone(), map.domain.clone(), images)
}

/// `second ∘ first`.
pub fn compose(first: &CodeMap, second: &CodeMap) -> Result<CodeMap> {
    if !first.codomain.same_module(&second.domain) {
        return Err(Error::Shape(
            "codomain of the first map is not the domain of the second".into(),
        ));
    }
    let images = first
        .images
        .iter()
        .map(|v| second.apply(v))
        .collect::<Result<Vec<_>>>()?;
    CodeMap::from_basis_images(first.domain.clone(), second.codomain.clone(), images)
}

/// Restriction of `φ` to the subcode generated by `rows`.
pub fn restrict(map: &CodeMap, rows: Vec<PolyVector>) -> Result<CodeMap> {
    let images = rows
        .iter()
        .map(|r| map.apply(r))
        .collect::<Result<Vec<_>>>()?;
    let sub = map.domain.subcode(rows)?;
    let image_code = map.codomain.subcode(images.clone())?;
    CodeMap::new(sub, image_code, images)
}

/// `φ × ψ` on the direct sum of the domains.
pub fn product(first: &CodeMap, second: &CodeMap) -> Result<CodeMap> {
    let field = first.field().clone();
    if !field.same_as(second.field()) {
        return Err(Error::FieldMismatch);
    }
    let (n1, n2) = (first.domain.n(), second.domain.n());
    let (m1, m2) = (first.codomain.n(), second.codomain.n());
    let left = |v: &PolyVector, pad| v.concat(&PolyVector::zero(pad));
    let right = |v: &PolyVector, pad| PolyVector::zero(pad).concat(v);
    let rows: Vec<PolyVector> = first
        .domain
        .basis()
        .iter()
        .map(|v| left(v, n2))
        .chain(second.domain.basis().iter().map(|v| right(v, n1)))
        .collect();
    let images: Vec<PolyVector> = first
        .images
        .iter()
        .map(|v| left(v, m2))
        .chain(second.images.iter().map(|v| right(v, m1)))
        .collect();
    let domain = ConvCode::new(field.clone(), PolyMatrix::new(rows)?)?;
    let codomain = ConvCode::new(field, PolyMatrix::new(images.clone())?)?;
    CodeMap::new(domain, codomain, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(rows: Vec<Vec<Vec<u32>>>) -> ConvCode {
        ConvCode::from_coeffs(Field::prime(2).unwrap(), rows).unwrap()
    }

    fn single(domain: Vec<Vec<u32>>, codomain: Vec<Vec<u32>>) -> CodeMap {
        let d = code(vec![domain]);
        let c = code(vec![codomain.clone()]);
        CodeMap::new(d, c, vec![PolyVector::from_coeffs(codomain)]).unwrap()
    }

    fn isometry_not_zero_equivalence() -> CodeMap {
        single(
            vec![vec![1], vec![0, 1], vec![1]],
            vec![vec![1], vec![0, 1], vec![0, 1]],
        )
    }

    fn three_equivalence() -> CodeMap {
        single(
            vec![vec![1], vec![0, 0, 1], vec![0, 0, 0, 1]],
            vec![vec![1], vec![0, 0, 1], vec![0, 0, 0, 1, 1]],
        )
    }

    fn shifted() -> CodeMap {
        single(
            vec![vec![1], vec![0, 0, 1]],
            vec![vec![0, 1], vec![0, 0, 1]],
        )
    }

    #[test]
    fn taxonomy_examples() {
        let b = Budget::default();
        let a = isometry_not_zero_equivalence();
        assert!(check_isometry(&a, &b).unwrap().holds);
        assert!(!check_j_equivalence(&a, 0, &b).unwrap().holds);

        let t = three_equivalence();
        assert!(check_j_equivalence(&t, 3, &b).unwrap().holds);
        assert!(!check_j_equivalence(&t, 4, &b).unwrap().holds);
        assert!(!check_equivalence(&t, &b).unwrap().holds);
        assert!(!check_isometry(&t, &b).unwrap().holds);

        let s = shifted();
        let iso = check_isometry(&s, &b).unwrap();
        assert_eq!(iso.witness.unwrap().shifts, vec![1, 0]);
        assert!(!check_j_equivalence(&s, 0, &b).unwrap().holds);
        assert!(!check_equivalence(&s, &b).unwrap().holds);
        assert!(check_strong_isometry(&s, 3, &b).unwrap().holds);
    }

    #[test]
    fn identity_is_everything() {
        let b = Budget::default();
        let c = code(vec![
            vec![vec![1], vec![1, 1], vec![]],
            vec![vec![], vec![1], vec![0, 1]],
        ]);
        let id = CodeMap::identity(&c);
        for j in 0..4 {
            let v = check_j_equivalence(&id, j, &b).unwrap();
            assert_eq!(v.witness, Some(MonomialMap::identity(3)));
        }
        assert!(check_equivalence(&id, &b).unwrap().holds);
        assert!(check_strong_isometry(&id, 2, &b).unwrap().holds);
    }

    #[test]
    fn shift_raises_degree() {
        let b = Budget::default();
        let m = single(vec![vec![1]], vec![vec![0, 1]]);
        let v = check_strong_isometry(&m, 0, &b).unwrap();
        assert!(!v.holds);
        assert!(v.counterexample.is_some());
    }

    #[test]
    fn weight_change_is_not_strong() {
        let b = Budget::default();
        let d = code(vec![vec![vec![0, 1], vec![]], vec![vec![], vec![0, 1]]]);
        let images = vec![
            PolyVector::from_coeffs(vec![vec![0, 1], vec![]]),
            PolyVector::from_coeffs(vec![vec![0, 1], vec![0, 1]]),
        ];
        let m = CodeMap::new(d.clone(), d, images).unwrap();
        assert!(!check_strong_isometry(&m, 1, &b).unwrap().holds);
    }

    #[test]
    fn algebra() {
        let b = Budget::default();
        let t = three_equivalence();
        let inv = inverse(&t).unwrap();
        assert!(check_j_equivalence(&inv, 3, &b).unwrap().holds);
        let back = compose(&t, &inv).unwrap();
        assert_eq!(back.images(), t.domain().basis());
        let same = compose(&t, &CodeMap::identity(t.codomain())).unwrap();
        assert_eq!(same.images(), t.images());

        let zero_eq = single(vec![vec![1], vec![1]], vec![vec![1], vec![1]]);
        let p = product(&t, &zero_eq).unwrap();
        assert!(check_j_equivalence(&p, 3, &b).unwrap().holds);
        assert!(!check_j_equivalence(&p, 4, &b).unwrap().holds);

        let r = restrict(&t, vec![t.domain().basis()[0].shift(1)]).unwrap();
        assert!(check_j_equivalence(&r, 3, &b).unwrap().holds);
    }

    #[test]
    fn rejects_non_generating_images() {
        let d = code(vec![vec![vec![1], vec![1]]]);
        let c = code(vec![vec![vec![1], vec![1]]]);
        let err = CodeMap::new(
            d,
            c,
            vec![PolyVector::from_coeffs(vec![vec![0, 1], vec![0, 1]])],
        );
        assert!(matches!(err, Err(Error::InvalidMap(_))));
    }
}
