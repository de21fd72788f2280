//! Hermite and Smith normal forms over a Euclidean domain, with transforms.
//!
//! Vectors are rows here. Callers that think in columns transpose first.

use crate::ring::EuclideanDomain;

pub(crate) type Rows<E> = Vec<Vec<E>>;

/// Row-style Hermite form `H = U·G` of a list of rows.
pub(crate) struct RowHermite<E> {
    /// All rows of `H`; the first `rank` are nonzero and echelon.
    pub rows: Rows<E>,
    pub pivots: Vec<usize>,
    /// `U`, present when requested.
    pub transform: Option<Rows<E>>,
}

impl<E: Clone> RowHermite<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> Rows<E> {
        self.rows[..self.rank()].to_vec()
    }

    /// Rows of `U` spanning the left kernel `{c : c·G = 0}`.
    pub fn left_kernel(&self) -> Rows<E> {
        let u = self.transform.as_ref().expect("transform was not tracked");
        u[self.rank()..].to_vec()
    }
}

fn sub_scaled<D: EuclideanDomain>(
    d: &D,
    target: &mut [D::Elem],
    src: &[D::Elem],
    q: &D::Elem,
    from: usize,
) {
    for j in from..target.len() {
        if !d.is_zero(&src[j]) {
            target[j] = d.sub(&target[j], &d.mul(q, &src[j]));
        }
    }
}

/// Echelon form with canonical pivots and reduced entries above them. The
/// nonzero rows depend only on the row span of the input.
pub(crate) fn row_hermite<D: EuclideanDomain>(
    d: &D,
    mut h: Rows<D::Elem>,
    ncols: usize,
    track: bool,
) -> RowHermite<D::Elem> {
    let s = h.len();
    let mut u: Option<Rows<D::Elem>> = track.then(|| {
        (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| if i == j { d.one() } else { d.zero() })
                    .collect()
            })
            .collect()
    });
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == s {
            break;
        }
        let mut found = false;
        loop {
            let best = (r..s)
                .filter(|&i| !d.is_zero(&h[i][c]))
                .min_by_key(|&i| d.size(&h[i][c]));
            let Some(best) = best else { break };
            found = true;
            h.swap(r, best);
            if let Some(u) = u.as_mut() {
                u.swap(r, best);
            }
            let mut clean = true;
            for i in r + 1..s {
                if d.is_zero(&h[i][c]) {
                    continue;
                }
                let (q, rem) = d.div_rem(&h[i][c], &h[r][c]);
                let (top, rest) = h.split_at_mut(i);
                sub_scaled(d, &mut rest[0], &top[r], &q, c);
                if let Some(u) = u.as_mut() {
                    let (top, rest) = u.split_at_mut(i);
                    sub_scaled(d, &mut rest[0], &top[r], &q, 0);
                }
                if !d.is_zero(&rem) {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        let unit = d.normalizing_unit(&h[r][c]);
        if unit != d.one() {
            for x in h[r][c..].iter_mut() {
                *x = d.mul(&unit, x);
            }
            if let Some(u) = u.as_mut() {
                for x in u[r].iter_mut() {
                    *x = d.mul(&unit, x);
                }
            }
        }
        for i in 0..r {
            if d.is_zero(&h[i][c]) {
                continue;
            }
            let (q, _) = d.div_rem(&h[i][c], &h[r][c]);
            if d.is_zero(&q) {
                continue;
            }
            let (top, rest) = h.split_at_mut(r);
            sub_scaled(d, &mut top[i], &rest[0], &q, c);
            if let Some(u) = u.as_mut() {
                let (top, rest) = u.split_at_mut(r);
                sub_scaled(d, &mut top[i], &rest[0], &q, 0);
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowHermite {
        rows: h,
        pivots,
        transform: u,
    }
}

/// Reduces `v` against an echelon basis to its canonical coset representative.
pub(crate) fn reduce_against<D: EuclideanDomain>(
    d: &D,
    basis: &[Vec<D::Elem>],
    pivots: &[usize],
    v: &mut [D::Elem],
) {
    for (row, &c) in basis.iter().zip(pivots) {
        if d.is_zero(&v[c]) {
            continue;
        }
        let (q, _) = d.div_rem(&v[c], &row[c]);
        if !d.is_zero(&q) {
            sub_scaled(d, v, row, &q, c);
        }
    }
}

/// Coefficients `c` with `c·basis = v`, if `v` lies in the span.
pub(crate) fn coordinates<D: EuclideanDomain>(
    d: &D,
    basis: &[Vec<D::Elem>],
    pivots: &[usize],
    v: &[D::Elem],
) -> Option<Vec<D::Elem>> {
    let mut w = v.to_vec();
    let mut coeffs = Vec::with_capacity(basis.len());
    for (row, &c) in basis.iter().zip(pivots) {
        let q = d.divide_exact(&w[c], &row[c])?;
        if !d.is_zero(&q) {
            sub_scaled(d, &mut w, row, &q, c);
        }
        coeffs.push(q);
    }
    w.iter().all(|x| d.is_zero(x)).then_some(coeffs)
}

/// Smith form `P·A·Q = S` with `S` diagonal, successive divisibility and
/// canonical diagonal entries.
pub(crate) struct SmithForm<E> {
    pub p: Rows<E>,
    pub s: Rows<E>,
    pub q: Rows<E>,
}

impl<E: Clone> SmithForm<E> {
    pub fn diagonal(&self) -> Vec<E> {
        let n = self.s.len().min(self.s.first().map_or(0, |r| r.len()));
        (0..n).map(|i| self.s[i][i].clone()).collect()
    }
}

fn identity<D: EuclideanDomain>(d: &D, n: usize) -> Rows<D::Elem> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { d.one() } else { d.zero() })
                .collect()
        })
        .collect()
}

fn swap_cols<E>(m: &mut Rows<E>, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `col_target -= q · col_src`.
fn col_sub<D: EuclideanDomain>(
    d: &D,
    m: &mut Rows<D::Elem>,
    target: usize,
    src: usize,
    q: &D::Elem,
) {
    for row in m.iter_mut() {
        if !d.is_zero(&row[src]) {
            row[target] = d.sub(&row[target], &d.mul(q, &row[src]));
        }
    }
}

fn row_sub<D: EuclideanDomain>(
    d: &D,
    m: &mut Rows<D::Elem>,
    target: usize,
    src: usize,
    q: &D::Elem,
) {
    let (a, b) = if target < src {
        let (top, rest) = m.split_at_mut(src);
        (&mut top[target], &rest[0])
    } else {
        let (top, rest) = m.split_at_mut(target);
        (&mut rest[0], &top[src])
    };
    sub_scaled(d, a, b, q, 0);
}

pub(crate) fn smith<D: EuclideanDomain>(
    d: &D,
    a: Rows<D::Elem>,
    ncols: usize,
) -> SmithForm<D::Elem> {
    let nrows = a.len();
    let mut s = a;
    let mut p = identity(d, nrows);
    let mut q = identity(d, ncols);
    let n = nrows.min(ncols);
    for t in 0..n {
        // smallest nonzero entry of the trailing block goes to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !d.is_zero(&s[i][j])
                    && best.is_none_or(|(bi, bj)| d.size(&s[i][j]) < d.size(&s[bi][bj]))
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap(t, bi);
        p.swap(t, bi);
        swap_cols(&mut s, t, bj);
        swap_cols(&mut q, t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if d.is_zero(&s[i][t]) {
                    continue;
                }
                let (qq, rem) = d.div_rem(&s[i][t], &s[t][t]);
                row_sub(d, &mut s, i, t, &qq);
                row_sub(d, &mut p, i, t, &qq);
                dirty |= !d.is_zero(&rem);
            }
            for j in t + 1..ncols {
                if d.is_zero(&s[t][j]) {
                    continue;
                }
                let (qq, rem) = d.div_rem(&s[t][j], &s[t][t]);
                col_sub(d, &mut s, j, t, &qq);
                col_sub(d, &mut q, j, t, &qq);
                dirty |= !d.is_zero(&rem);
            }
            if dirty {
                // move the smallest leftover in row/column t onto the diagonal
                let mut best = (t, t);
                for i in t + 1..nrows {
                    if !d.is_zero(&s[i][t]) && d.size(&s[i][t]) < d.size(&s[best.0][best.1]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..ncols {
                    if !d.is_zero(&s[t][j]) && d.size(&s[t][j]) < d.size(&s[best.0][best.1]) {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    s.swap(t, best.0);
                    p.swap(t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut s, t, best.1);
                    swap_cols(&mut q, t, best.1);
                }
                continue;
            }
            // divisibility of the trailing block
            let offender = (t + 1..nrows)
                .find(|&i| (t + 1..ncols).any(|j| d.divide_exact(&s[i][j], &s[t][t]).is_none()));
            match offender {
                Some(i) => {
                    let minus_one = d.neg(&d.one());
                    row_sub(d, &mut s, t, i, &minus_one);
                    row_sub(d, &mut p, t, i, &minus_one);
                }
                None => break,
            }
        }
        let unit = d.normalizing_unit(&s[t][t]);
        if unit != d.one() {
            for x in s[t].iter_mut() {
                *x = d.mul(&unit, x);
            }
            for x in p[t].iter_mut() {
                *x = d.mul(&unit, x);
            }
        }
    }
    SmithForm { p, s, q }
}
