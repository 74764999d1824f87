//! Determinants and characteristic coefficients over commutative rings.

use crate::series::{ExtRing, Field, MPoly, MPolyRing, Ring};

pub type Matrix<E> = Vec<Vec<E>>;

/// Leading coefficients `c_0 … c_t` of `det(λI − A) = Σ c_i λ^{n−i}`, where
/// `t = min(n, terms)`. Equivalently `det(I − sA) = Σ c_i s^i`.
///
/// Berkowitz's division-free recursion on leading principal submatrices.
/// Each step multiplies by a lower-triangular Toeplitz matrix, so truncating
/// every intermediate vector to `terms + 1` entries is exact.
pub fn char_coeffs<R: Ring>(ring: &R, a: &Matrix<R::Elem>, terms: usize) -> Vec<R::Elem> {
    let n = a.len();
    let mut poly = vec![ring.one()];
    for k in 0..n {
        let len = (k + 1).min(terms) + 1;
        let mut t = Vec::with_capacity(len);
        t.push(ring.one());
        if len > 1 {
            t.push(ring.neg(&a[k][k]));
        }
        // t_{j+2} = −r·A_k^j·c with r = a[k][..k], c = a[..k][k].
        let mut v: Vec<R::Elem> = (0..k).map(|i| a[i][k].clone()).collect();
        while t.len() < len {
            let mut dot = ring.zero();
            for (i, vi) in v.iter().enumerate() {
                if !ring.is_zero(vi) && !ring.is_zero(&a[k][i]) {
                    ring.add_assign(&mut dot, &ring.mul(&a[k][i], vi));
                }
            }
            t.push(ring.neg(&dot));
            if t.len() < len {
                v = (0..k)
                    .map(|i| {
                        let mut s = ring.zero();
                        for (j, vj) in v.iter().enumerate() {
                            if !ring.is_zero(vj) && !ring.is_zero(&a[i][j]) {
                                ring.add_assign(&mut s, &ring.mul(&a[i][j], vj));
                            }
                        }
                        s
                    })
                    .collect();
            }
        }
        let next: Vec<R::Elem> = (0..len)
            .map(|i| {
                let mut s = ring.zero();
                for j in 0..=i {
                    if let Some(pc) = poly.get(i - j) {
                        if !ring.is_zero(&t[j]) && !ring.is_zero(pc) {
                            ring.add_assign(&mut s, &ring.mul(&t[j], pc));
                        }
                    }
                }
                s
            })
            .collect();
        poly = next;
    }
    poly
}

/// Determinant without division.
pub fn det_division_free<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.len();
    let c = char_coeffs(ring, a, n);
    if n % 2 == 0 {
        c[n].clone()
    } else {
        ring.neg(&c[n])
    }
}

/// Determinant by Gaussian elimination.
pub fn det_field<F: Field>(field: &F, a: &Matrix<F::Elem>) -> F::Elem {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !field.is_zero(&m[r][col])) else {
            return field.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = field.neg(&det);
        }
        let inv = field.inv(&m[col][col]).expect("nonzero pivot");
        det = field.mul(&det, &m[col][col]);
        for r in col + 1..n {
            if field.is_zero(&m[r][col]) {
                continue;
            }
            let f = field.mul(&m[r][col], &inv);
            for c in col..n {
                let t = field.mul(&f, &m[col][c]);
                m[r][c] = field.sub(&m[r][c], &t);
            }
        }
    }
    det
}

/// Coefficients (constant first) of the unique polynomial of degree
/// `< xs.len()` through the given points; `xs` must be distinct.
pub fn interpolate<F: Field>(field: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Vec<F::Elem> {
    let n = xs.len();
    // Newton divided differences.
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = field.sub(&dd[i], &dd[i - 1]);
            let den = field.sub(&xs[i], &xs[i - level]);
            dd[i] = field.mul(&num, &field.inv(&den).expect("distinct nodes"));
        }
    }
    let mut coeffs = vec![field.zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs·(x − xs[i]) + dd[i]
        let mut next = vec![field.zero(); n];
        for j in 0..n {
            if field.is_zero(&coeffs[j]) {
                continue;
            }
            if j + 1 < n {
                next[j + 1] = field.add(&next[j + 1], &coeffs[j]);
            }
            let t = field.mul(&coeffs[j], &xs[i]);
            next[j] = field.sub(&next[j], &t);
        }
        next[0] = field.add(&next[0], &dd[i]);
        coeffs = next;
    }
    coeffs
}

/// Determinant of a matrix of polynomials over `F_p` whose result is known
/// to be homogeneous of total degree `h` (entry `(i, j)` homogeneous of
/// degree `r_i − c_j`).
///
/// With at most two variables in play the determinant is recovered exactly
/// from values of its dehomogenization at `h + 1` points of a large enough
/// extension field; otherwise it falls back to Berkowitz over `F_p[x]`.
pub fn det_homogeneous(ring: &MPolyRing, a: &Matrix<MPoly>, h: u32) -> MPoly {
    let n = a.len();
    if n == 0 {
        return ring.one();
    }
    let mut used: Vec<usize> = Vec::new();
    for row in a {
        for e in row {
            for v in e.support_vars() {
                if !used.contains(&v) {
                    used.push(v);
                }
            }
        }
    }
    used.sort_unstable();
    match used.len() {
        0 | 1 => {
            let fp = crate::series::Zpn::new(ring.p, 1).expect("prime");
            let ones = vec![1u64; ring.nvars];
            let m: Matrix<u64> =
                a.iter().map(|row| row.iter().map(|e| ring.eval(&fp, e, &ones)).collect()).collect();
            let d = det_field(&fp, &m);
            let mut exps = vec![0; ring.nvars];
            if let Some(&v) = used.first() {
                exps[v] = h;
            } else if h != 0 && d != 0 {
                panic!("constant determinant cannot have positive degree");
            }
            ring.monomial(d, exps)
        }
        2 => det_bivariate(ring, a, h, used[0], used[1]),
        _ => det_division_free(ring, a),
    }
}

fn det_bivariate(ring: &MPolyRing, a: &Matrix<MPoly>, h: u32, x: usize, y: usize) -> MPoly {
    let p = ring.p;
    let mut e = 1usize;
    while p.pow(e as u32) <= h as u64 {
        e += 1;
    }
    let field = ExtRing::with_degree(p, 1, e, 0).expect("irreducible exists");
    // Entries as sparse univariate polynomials in x after setting y = 1.
    let uni: Vec<Vec<Vec<(usize, u64)>>> = a
        .iter()
        .map(|row| {
            row.iter().map(|ent| ent.terms.iter().map(|(ex, c)| (ex[x] as usize, *c)).collect()).collect()
        })
        .collect();
    let maxdeg = uni.iter().flatten().flatten().map(|t| t.0).max().unwrap_or(0);
    let npts = h as usize + 1;
    let mut xs = Vec::with_capacity(npts);
    let mut ys = Vec::with_capacity(npts);
    for idx in 0..npts as u64 {
        let t = field.from_index(idx);
        let mut pows = vec![field.one()];
        for i in 1..=maxdeg {
            pows.push(field.mul(&pows[i - 1], &t));
        }
        let m: Matrix<Vec<u64>> = uni
            .iter()
            .map(|row| {
                row.iter()
                    .map(|ent| {
                        let mut s = field.zero();
                        for (d, c) in ent {
                            let term: Vec<u64> = pows[*d].iter().map(|v| v * c % p).collect();
                            s = field.add(&s, &term);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        ys.push(det_field(&field, &m));
        xs.push(t);
    }
    let coeffs = interpolate(&field, &xs, &ys);
    let mut out = MPoly::default();
    for (i, c) in coeffs.iter().enumerate() {
        let c0 = field.as_base(c).expect("determinant has prime-field coefficients");
        if c0 == 0 {
            continue;
        }
        let mut exps = vec![0u32; ring.nvars];
        exps[x] = i as u32;
        exps[y] = h - i as u32;
        ring.add_term(&mut out, exps, c0);
    }
    out
}
