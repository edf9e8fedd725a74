//! The eight normal forms of two-dimensional brackets with one-dimensional image.

use crate::braided::BraidedSpace;
use crate::classify::ClassifyError;
use crate::envelope::canonicalize_relations;
use crate::linalg::{Mat, Poly, Subspace};
use crate::qlie::LiftedQLie;
use crate::scalar::{Field, Scalar};
use crate::tensor::{TensorElem, Word};

/// Admissible values of the row parameter γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaRule {
    /// Row without parameter.
    Absent,
    /// γ ∈ {0, 1} or γ not a square (rows 3 and 4).
    ZeroOneOrNonSquare,
    /// γ ∉ {0, 1} (row 6).
    NotZeroOrOne,
    /// γ ≠ ±1, γ = 0 included (row 7).
    NotPlusMinusOne,
    /// γ = 1 or γ not a square (row 8).
    OneOrNonSquare,
}

impl GammaRule {
    pub fn for_row(row: u8) -> Option<GammaRule> {
        Some(match row {
            1 | 2 | 5 => GammaRule::Absent,
            3 | 4 => GammaRule::ZeroOneOrNonSquare,
            6 => GammaRule::NotZeroOrOne,
            7 => GammaRule::NotPlusMinusOne,
            8 => GammaRule::OneOrNonSquare,
            _ => return None,
        })
    }

    pub fn admits(&self, g: Option<&Scalar>) -> bool {
        match (self, g) {
            (GammaRule::Absent, None) => true,
            (GammaRule::Absent, Some(_)) | (_, None) => false,
            (GammaRule::ZeroOneOrNonSquare, Some(g)) => g.is_zero() || g.is_one() || !g.is_square(),
            (GammaRule::NotZeroOrOne, Some(g)) => !g.is_zero() && !g.is_one(),
            (GammaRule::NotPlusMinusOne, Some(g)) => !g.is_one() && *g != g.field().int(-1),
            (GammaRule::OneOrNonSquare, Some(g)) => g.is_one() || !g.is_square(),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            GammaRule::Absent => "-",
            GammaRule::ZeroOneOrNonSquare => "gamma in {0,1} or sqrt(gamma) not in K",
            GammaRule::NotZeroOrOne => "gamma not in {0,1}",
            GammaRule::NotPlusMinusOne => "gamma != 1, -1",
            GammaRule::OneOrNonSquare => "gamma = 1 or sqrt(gamma) not in K",
        }
    }
}

fn gamma_or_zero(field: Field, g: Option<&Scalar>) -> Scalar {
    g.cloned().unwrap_or_else(|| field.zero())
}

/// (c, β) of a row for any γ, without the admissibility check on γ.
pub fn row_matrices(row: u8, gamma: Option<&Scalar>, field: Field) -> Result<LiftedQLie, ClassifyError> {
    field.require_odd().map_err(|_| ClassifyError::CharTwo)?;
    let g = gamma_or_zero(field, gamma);
    let i = |v: i64| field.int(v);
    let flip_rows = |top: [Scalar; 4], bottom: [Scalar; 4]| -> Vec<Vec<Scalar>> {
        vec![top.to_vec(), vec![i(0), i(0), i(1), i(0)], vec![i(0), i(1), i(0), i(0)], bottom.to_vec()]
    };
    let std_beta = vec![vec![i(0), i(1), i(-1), i(0)], vec![i(0); 4]];
    let (c_rows, beta_rows) = match row {
        1 => (flip_rows([i(1), i(0), i(0), i(0)], [i(0), i(0), i(0), i(1)]), std_beta),
        2 => (flip_rows([i(1), i(1), i(-1), i(0)], [i(0), i(0), i(0), i(1)]), std_beta),
        3 => (flip_rows([i(-1), i(0), i(0), g.clone()], [i(0), i(0), i(0), i(1)]), std_beta),
        4 => (flip_rows([i(1), i(0), i(0), g.clone()], [i(0), i(0), i(0), i(-1)]), vec![vec![i(0), i(0), i(0), i(1)], vec![i(0); 4]]),
        5 => (
            vec![vec![i(0), i(1), i(0), i(0)], vec![i(0), i(0), i(1), i(0)], vec![i(0), i(1), i(0), i(0)], vec![i(0), i(0), i(0), i(1)]],
            std_beta,
        ),
        6 => {
            let inv = g.inv().map_err(|_| ClassifyError::BadGamma(6, g.to_string()))?;
            (
                vec![vec![i(0); 4], vec![i(0), i(0), g.clone(), i(0)], vec![i(0), inv, i(0), i(0)], vec![i(0), i(0), i(0), i(1)]],
                vec![vec![i(0), i(1), -&g, i(0)], vec![i(0); 4]],
            )
        }
        7 => (flip_rows([g.clone(), i(0), i(0), i(0)], [i(0), i(0), i(0), i(1)]), std_beta),
        8 => (flip_rows([i(1), i(0), i(0), g.clone()], [i(0), i(0), i(0), i(1)]), std_beta),
        _ => return Err(ClassifyError::NoSuchRow(row)),
    };
    let c = Mat::from_rows(field, c_rows).expect("4x4");
    let beta = Mat::from_rows(field, beta_rows).expect("2x4");
    let space = BraidedSpace::new_unchecked(2, c).map_err(|e| ClassifyError::NotClassifiable(e.to_string()))?;
    LiftedQLie::new(space, beta).map_err(|e| ClassifyError::NotClassifiable(e.to_string()))
}

/// A row with an admissible γ (`None` for rows 1, 2, 5).
pub fn row_instance(row: u8, gamma: Option<&Scalar>, field: Field) -> Result<LiftedQLie, ClassifyError> {
    let rule = GammaRule::for_row(row).ok_or(ClassifyError::NoSuchRow(row))?;
    if !rule.admits(gamma) {
        return Err(ClassifyError::BadGamma(row, gamma.map_or("none".into(), |g| g.to_string())));
    }
    row_matrices(row, gamma, field)
}

fn w(letters: &[u8]) -> Word {
    Word(letters.iter().map(|l| l - 1).collect())
}

/// The listed U_Q relations of a row (letters 1-based in the source).
pub fn listed_relations(row: u8, gamma: Option<&Scalar>, field: Field) -> Result<Vec<TensorElem>, ClassifyError> {
    let g = gamma_or_zero(field, gamma);
    let i = |v: i64| field.int(v);
    let rel = |terms: Vec<(&[u8], Scalar)>| TensorElem::from_terms(field, 2, terms.into_iter().map(|(l, c)| (w(l), c)));
    let commutator = |s: Scalar| -> Vec<(&'static [u8], Scalar)> { vec![(&[2, 1], s.clone()), (&[1, 2], -&s)] };
    Ok(match row {
        1 => vec![rel(vec![(&[2, 1], i(1)), (&[1, 2], i(-1)), (&[1], i(1))])],
        2 => vec![rel(vec![(&[1, 1], i(1)), (&[2, 1], i(-1)), (&[1, 2], i(1)), (&[1], i(-1))])],
        3 => vec![rel(vec![(&[1, 1], i(1))]), rel(vec![(&[2, 1], i(1)), (&[1, 2], i(-1)), (&[1], i(1))])],
        4 => vec![rel(commutator(i(1))), rel(vec![(&[1, 1], g.clone()), (&[2, 2], i(-2)), (&[1], i(-1))])],
        5 => vec![rel(vec![(&[1, 1], i(1)), (&[2, 1], i(-1)), (&[1, 2], i(1)), (&[1], i(1))])],
        6 => vec![rel(vec![(&[2, 1], -&g), (&[1, 2], i(1)), (&[1], g.clone())])],
        7 => {
            let mut t = commutator(&i(1) + &g);
            t.push((&[1], i(-1)));
            vec![rel(t)]
        }
        8 => {
            let mut t = commutator(i(2));
            t.push((&[1], i(-1)));
            vec![rel(t)]
        }
        _ => return Err(ClassifyError::NoSuchRow(row)),
    })
}

/// Listed minimal polynomial of c.
pub fn listed_minpoly(row: u8, gamma: Option<&Scalar>, field: Field) -> Result<Poly, ClassifyError> {
    let x2m1 = Poly::from_ints(field, &[-1, 0, 1]);
    let g = gamma_or_zero(field, gamma);
    Ok(match row {
        1..=4 => x2m1,
        5 | 6 => x2m1.mul(&Poly::from_ints(field, &[0, 1])),
        7 => x2m1.mul(&Poly::linear_root(&g)),
        8 => x2m1.mul(&Poly::from_ints(field, &[-1, 1])),
        _ => return Err(ClassifyError::NoSuchRow(row)),
    })
}

/// Listed spanning vectors of E₂ (coordinates in x1x1, x2x1, x1x2, x2x2).
pub fn listed_e2(row: u8, gamma: Option<&Scalar>, field: Field) -> Result<Subspace, ClassifyError> {
    let g = gamma_or_zero(field, gamma);
    let i = |v: i64| field.int(v);
    let comm = vec![i(0), i(1), i(-1), i(0)];
    let vecs = match row {
        1 | 7 | 8 => vec![comm],
        2 | 5 => vec![vec![i(1), i(-1), i(1), i(0)]],
        3 => vec![vec![i(1), i(0), i(0), i(0)], comm],
        4 => vec![vec![g.clone(), i(0), i(0), i(-2)], comm],
        6 => vec![vec![i(0), g.clone(), i(-1), i(0)]],
        _ => return Err(ClassifyError::NoSuchRow(row)),
    };
    Ok(Subspace::span(field, 4, vecs))
}

/// One emitted row of the classification table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub row: u8,
    pub gamma: Option<Scalar>,
    pub minpoly: Poly,
    pub algebra: LiftedQLie,
    /// Canonical relations computed from (c, β).
    pub relations: Vec<TensorElem>,
    pub gamma_rule: GammaRule,
}

/// Whether a row takes a parameter.
pub fn has_gamma(row: u8) -> bool {
    matches!(row, 3 | 4 | 6 | 7 | 8)
}

/// Every row, instantiated at `gamma` when admissible and otherwise at a default
/// admissible value (γ = 0 for rows 3, 4, 7; γ = 1 for row 8; γ = 2 or -1 for row 6).
pub fn table_emit(field: Field, gamma: &Scalar) -> Result<Vec<TableRow>, ClassifyError> {
    let mut out = Vec::new();
    for row in 1..=8u8 {
        let rule = GammaRule::for_row(row).expect("row exists");
        let g = if has_gamma(row) {
            Some(if rule.admits(Some(gamma)) {
                gamma.clone()
            } else {
                match row {
                    6 => [2, -1, 3].iter().map(|&v| field.int(v)).find(|v| rule.admits(Some(v))).ok_or(ClassifyError::BadGamma(6, gamma.to_string()))?,
                    8 => field.one(),
                    _ => field.zero(),
                }
            })
        } else {
            None
        };
        let algebra = row_instance(row, g.as_ref(), field)?;
        let p = crate::envelope::uq_relations(&algebra).map_err(|e| ClassifyError::NotClassifiable(e.to_string()))?;
        out.push(TableRow {
            row,
            gamma: g.clone(),
            minpoly: algebra.space.minimal_polynomial(),
            relations: canonicalize_relations(field, 2, &p.relations),
            algebra,
            gamma_rule: rule,
        });
    }
    Ok(out)
}
