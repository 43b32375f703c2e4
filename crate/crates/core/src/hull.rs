//! Exact facet enumeration for `conv(points) + R^d_>=` by the double
//! description method, plus rational rank computation.
//!
//! A valid inequality `w . y >= beta` with `w >= 0` is a point `(w, beta)` of
//! the cone `{ (w, beta) : w >= 0, w . v - beta >= 0 for every point v }`.
//! The polyhedron is full dimensional, so the extreme rays of that cone are
//! its facet inequalities plus the trivial ray `(0, -1)`.

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};

/// Rank of a set of rational row vectors.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let p = m[r][c].clone();
        let pivot_row = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &p;
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &factor * y;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of `points` extended by the given directions.
pub(crate) fn affine_dimension(points: &[&[Rational]], directions: &[Vec<Rational>]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let mut rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rows.extend(directions.iter().cloned());
    rank(&rows) as isize
}

/// A facet inequality `normal . y >= offset`; `normal` is a primitive
/// non-negative integer vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FacetInequality {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

fn unit(len: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![rational::int(0); len];
    v[k] = rational::int(1);
    v
}

/// Facets of `conv(points) + R^d_>=`. `points` must be nonempty, pairwise
/// distinct and of dimension `d`.
pub(crate) fn lower_facets(points: &[Vec<Rational>], d: usize) -> Vec<FacetInequality> {
    assert!(!points.is_empty());
    let mut rows: Vec<Vec<Rational>> = (0..d).map(|k| unit(d + 1, k)).collect();
    for p in points {
        let mut row = p.clone();
        row.push(rational::int(-1));
        rows.push(row);
    }

    // simplicial start from the d orthant rows and the first point row
    let first = &points[0];
    let mut rays: Vec<Vec<Rational>> = (0..d)
        .map(|j| {
            let mut r = unit(d + 1, j);
            r[d] = first[j].clone();
            r
        })
        .collect();
    let mut apex = vec![rational::int(0); d + 1];
    apex[d] = rational::int(-1);
    rays.push(apex);

    for processed in (d + 1)..rows.len() {
        let row = &rows[processed];
        let values: Vec<Rational> = rays.iter().map(|r| rational::dot(row, r)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            continue;
        }
        let zero_sets: Vec<Vec<bool>> = rays
            .iter()
            .map(|r| rows[..processed].iter().map(|a| rational::dot(a, r).is_zero()).collect())
            .collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        let mut next: Vec<Vec<Rational>> = (0..rays.len())
            .filter(|&i| !values[i].is_negative())
            .map(|i| rays[i].clone())
            .collect();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<usize> = (0..processed)
                    .filter(|&k| zero_sets[p][k] && zero_sets[q][k])
                    .collect();
                if common.len() + 2 < d + 1 {
                    continue;
                }
                let blocked = (0..rays.len())
                    .any(|r| r != p && r != q && common.iter().all(|&k| zero_sets[r][k]));
                if blocked {
                    continue;
                }
                let combined: Vec<Rational> = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(y, x)| &values[p] * y - &values[q] * x)
                    .collect();
                next.push(rational::primitive_integer_vector(&combined));
            }
        }
        rays = next;
    }

    let mut facets: Vec<FacetInequality> = rays
        .into_iter()
        .filter(|r| r[..d].iter().any(|c| !c.is_zero()))
        .map(|r| {
            let normal = rational::primitive_integer_vector(&r[..d]);
            let offset = points
                .iter()
                .map(|p| rational::dot(&normal, p))
                .min()
                .expect("nonempty");
            FacetInequality { normal, offset }
        })
        .collect();
    facets.sort_by(|a, b| a.normal.cmp(&b.normal).then(a.offset.cmp(&b.offset)));
    facets.dedup();
    facets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Rational>> {
        raw.iter().map(|p| p.iter().map(|&c| int(c)).collect()).collect()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&pts(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&pts(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])), 2);
        assert_eq!(rank(&pts(&[&[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn single_point_gives_orthant_facets() {
        let f = lower_facets(&pts(&[&[3, 5, 7]]), 3);
        let normals: Vec<Vec<Rational>> = f.iter().map(|x| x.normal.clone()).collect();
        assert_eq!(normals, vec![ints(&[0, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, 0])]);
        assert_eq!(f[0].offset, int(7));
    }

    #[test]
    fn bi_objective_staircase() {
        // (0,4), (1,1), (4,0) are extreme; (2,2) is interior
        let f = lower_facets(&pts(&[&[0, 4], &[1, 1], &[4, 0], &[2, 2]]), 2);
        let got: Vec<(Vec<Rational>, Rational)> =
            f.into_iter().map(|x| (x.normal, x.offset)).collect();
        assert_eq!(
            got,
            vec![
                (ints(&[0, 1]), int(0)),
                (ints(&[1, 0]), int(0)),
                (ints(&[1, 3]), int(4)),
                (ints(&[3, 1]), int(4)),
            ]
        );
    }

    #[test]
    fn fig2_outcome_hull() {
        let points = pts(&[
            &[16, 32, 12],
            &[24, 24, 12],
            &[32, 16, 20],
            &[18, 30, 14],
            &[26, 22, 14],
            &[24, 24, 20],
        ]);
        let f = lower_facets(&points, 3);
        let got: Vec<(Vec<Rational>, Rational)> =
            f.into_iter().map(|x| (x.normal, x.offset)).collect();
        assert_eq!(
            got,
            vec![
                (ints(&[0, 0, 1]), int(12)),
                (ints(&[0, 1, 0]), int(16)),
                (ints(&[0, 1, 1]), int(36)),
                (ints(&[1, 0, 0]), int(16)),
                (ints(&[1, 1, 0]), int(48)),
            ]
        );
    }
}
