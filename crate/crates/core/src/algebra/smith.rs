//! Smith normal form over the Euclidean ring `Q[t]`.
//!
//! Pivots are chosen by minimal degree, then minimal coefficient height, then
//! position. Diagonal entries come out monic; the reported invariant factors
//! additionally have their `t`-power content removed, since `t` is a unit of
//! the Laurent ring the matrices really live over.

use super::poly::ExactPoly;
use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<ExactPoly>>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![vec![ExactPoly::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = ExactPoly::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<ExactPoly>>, cols: usize) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        PolyMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactPoly {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: ExactPoly) {
        self.data[i][j] = p;
    }

    pub fn row_slice(&self, i: usize) -> &[ExactPoly] {
        &self.data[i]
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = &out.data[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Rows `from..` of the matrix.
    pub fn rows_from(&self, from: usize) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows - from.min(self.rows),
            cols: self.cols,
            data: self.data[from.min(self.rows)..].to_vec(),
        }
    }

    /// Columns `from..` of the matrix.
    pub fn cols_from(&self, from: usize) -> PolyMatrix {
        let from = from.min(self.cols);
        PolyMatrix {
            rows: self.rows,
            cols: self.cols - from,
            data: self.data.iter().map(|r| r[from..].to_vec()).collect(),
        }
    }

    pub fn permute_rows(&self, order: &[usize]) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: order.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn permute_cols(&self, order: &[usize]) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| order.iter().map(|&j| r[j].clone()).collect())
                .collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// `row[target] −= q · row[source]`
    fn row_axpy(&mut self, target: usize, source: usize, q: &ExactPoly) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source][j];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[target][j] - &(q * s);
            self.data[target][j] = v;
        }
    }

    /// `col[target] −= q · col[source]`
    fn col_axpy(&mut self, target: usize, source: usize, q: &ExactPoly) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.data {
            let s = &row[source];
            if s.is_zero() {
                continue;
            }
            let v = &row[target] - &(q * s);
            row[target] = v;
        }
    }

    fn scale_row(&mut self, i: usize, c: &Rational) {
        for p in &mut self.data[i] {
            *p = p.scale(c);
        }
    }
}

/// Unimodular `left`, `right` with `left · M · right = diag(diagonal)`;
/// `right_inverse` is `right⁻¹`.
#[derive(Clone, Debug)]
pub struct SmithTransforms {
    pub left: PolyMatrix,
    pub right: PolyMatrix,
    pub right_inverse: PolyMatrix,
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Monic factors `d_1 | d_2 | … | d_rank`, with `t`-powers stripped.
    pub invariant_factors: Vec<ExactPoly>,
    /// The monic diagonal actually produced, before stripping `t`-powers.
    pub diagonal: Vec<ExactPoly>,
    pub rank: usize,
    pub transforms: Option<SmithTransforms>,
}

impl SmithForm {
    /// Invariant factors that are not units.
    pub fn nontrivial_factors(&self) -> impl Iterator<Item = &ExactPoly> {
        self.invariant_factors.iter().filter(|p| !p.is_constant())
    }
}

pub fn smith_normal_form(m: &PolyMatrix) -> SmithForm {
    smith(m, false)
}

pub fn smith_normal_form_with_transforms(m: &PolyMatrix) -> SmithForm {
    smith(m, true)
}

struct Tracker {
    left: PolyMatrix,
    right: PolyMatrix,
    right_inverse: PolyMatrix,
}

fn pivot_key(p: &ExactPoly) -> (usize, u64) {
    (p.degree().unwrap_or(usize::MAX), p.height())
}

fn smith(input: &PolyMatrix, with_transforms: bool) -> SmithForm {
    let mut m = input.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut tr = with_transforms.then(|| Tracker {
        left: PolyMatrix::identity(rows),
        right: PolyMatrix::identity(cols),
        right_inverse: PolyMatrix::identity(cols),
    });
    let mut rank = 0;

    'outer: for s in 0..rows.min(cols) {
        loop {
            // Smallest pivot in the trailing block.
            let mut best: Option<((usize, u64), usize, usize)> = None;
            for i in s..rows {
                for j in s..cols {
                    let p = &m.data[i][j];
                    if p.is_zero() {
                        continue;
                    }
                    let key = pivot_key(p);
                    if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                        best = Some((key, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break 'outer;
            };
            if pi != s {
                m.swap_rows(pi, s);
                if let Some(t) = tr.as_mut() {
                    t.left.swap_rows(pi, s);
                }
            }
            if pj != s {
                m.swap_cols(pj, s);
                if let Some(t) = tr.as_mut() {
                    t.right.swap_cols(pj, s);
                    t.right_inverse.swap_rows(pj, s);
                }
            }

            let pivot = m.data[s][s].clone();
            let mut clean = true;
            for i in s + 1..rows {
                if m.data[i][s].is_zero() {
                    continue;
                }
                let (q, r) = m.data[i][s].div_rem(&pivot).expect("pivot is nonzero");
                m.row_axpy(i, s, &q);
                if let Some(t) = tr.as_mut() {
                    t.left.row_axpy(i, s, &q);
                }
                clean &= r.is_zero();
            }
            for j in s + 1..cols {
                if m.data[s][j].is_zero() {
                    continue;
                }
                let (q, r) = m.data[s][j].div_rem(&pivot).expect("pivot is nonzero");
                m.col_axpy(j, s, &q);
                if let Some(t) = tr.as_mut() {
                    t.right.col_axpy(j, s, &q);
                    // right ← right·(I − q e_s e_jᵀ)  ⇒  right⁻¹ ← (I + q e_s e_jᵀ)·right⁻¹
                    let neg = -&q;
                    t.right_inverse.row_axpy(s, j, &neg);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }

            // Pivot row and column are clear; enforce divisibility of the rest.
            if !pivot.is_constant() {
                let offender = (s + 1..rows)
                    .find(|&i| (s + 1..cols).any(|j| !m.data[i][j].is_zero() && !pivot.divides(&m.data[i][j])));
                if let Some(i) = offender {
                    let minus_one = ExactPoly::constant(-Rational::from_integer(1.into()));
                    m.row_axpy(s, i, &minus_one);
                    if let Some(t) = tr.as_mut() {
                        t.left.row_axpy(s, i, &minus_one);
                    }
                    continue;
                }
            }
            break;
        }

        let lc = m.data[s][s].leading().cloned().expect("pivot is nonzero");
        if lc != Rational::from_integer(1.into()) {
            let inv = lc.recip();
            m.scale_row(s, &inv);
            if let Some(t) = tr.as_mut() {
                t.left.scale_row(s, &inv);
            }
        }
        rank += 1;
    }

    let diagonal: Vec<ExactPoly> = (0..rank).map(|i| m.data[i][i].clone()).collect();
    debug_assert!(diagonal.iter().all(|p| !p.is_zero()));
    let invariant_factors = diagonal.iter().map(ExactPoly::strip_t_power).collect();
    SmithForm {
        invariant_factors,
        diagonal,
        rank,
        transforms: tr.map(|t| SmithTransforms {
            left: t.left,
            right: t.right,
            right_inverse: t.right_inverse,
        }),
    }
}

pub fn is_identity(m: &PolyMatrix) -> bool {
    m.rows == m.cols
        && (0..m.rows).all(|i| {
            (0..m.cols).all(|j| if i == j { m.data[i][j].is_one() } else { m.data[i][j].is_zero() })
        })
}
