//! Linear algebra over F_2 with vectors stored as `Vec<bool>`.

/// Row-reduce in place; returns pivot columns.
fn rref_in_place(rows: &mut [Vec<bool>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c]) else { continue };
        rows.swap(r, k);
        for i in 0..rows.len() {
            if i != r && rows[i][c] {
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d ^= *s;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Reduced row echelon form of the span of `vectors`, zero rows dropped.
pub fn gf2_rref(vectors: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
    let mut rows = vectors.to_vec();
    let rank = rref_in_place(&mut rows, cols).len();
    rows.truncate(rank);
    rows
}

pub fn gf2_rank(vectors: &[Vec<bool>], cols: usize) -> usize {
    gf2_rref(vectors, cols).len()
}

/// Basis of `{c : A c = 0}` for the matrix with the given rows.
pub fn gf2_kernel(rows: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
    let mut m = rows.to_vec();
    let pivots = rref_in_place(&mut m, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![false; cols];
            v[free] = true;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = m[i][free];
            }
            v
        })
        .collect()
}

/// Some `c` with `A c = b`, if consistent.
pub fn gf2_solve(rows: &[Vec<bool>], b: &[bool], cols: usize) -> Option<Vec<bool>> {
    let mut aug: Vec<Vec<bool>> = rows.iter().zip(b).map(|(r, &bi)| r.iter().copied().chain([bi]).collect()).collect();
    let pivots = rref_in_place(&mut aug, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    let mut c = vec![false; cols];
    for (i, &p) in pivots.iter().enumerate() {
        c[p] = aug[i][cols];
    }
    Some(c)
}

/// Reduce `v` against an RREF basis, clearing its pivot positions.
pub fn gf2_reduce(v: &[bool], rref: &[Vec<bool>]) -> Vec<bool> {
    let mut out = v.to_vec();
    for row in rref {
        let p = row.iter().position(|&x| x).expect("nonzero row");
        if out[p] {
            for (o, r) in out.iter_mut().zip(row) {
                *o ^= *r;
            }
        }
    }
    out
}

pub fn gf2_dot(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).fold(false, |acc, (x, y)| acc ^ (*x && *y))
}
