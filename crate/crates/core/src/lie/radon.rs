//! Radon–Hurwitz numbers with an independent Clifford-module oracle.
//!
//! `ρ(n) − 1` is the maximal number of linearly independent vector
//! fields on `S^{n−1}`; writing `n = 2^{4a+b}·odd` with `0 ≤ b ≤ 3`,
//! `ρ(n) = 8a + 2^b`. The oracle for `ρ(16) = 9` constructs 8 mutually
//! anticommuting orthogonal complex structures on `ℝ¹⁶` (each `Aᵢv` is
//! then a unit tangent field on `S¹⁵`, and the 8 fields are pointwise
//! orthonormal): 7 come from left multiplication by imaginary octonion
//! units, and one more from the standard doubling trick.

/// Closed-form Radon–Hurwitz number.
pub fn radon_hurwitz(n: u64) -> u64 {
    assert!(n >= 1);
    let v = n.trailing_zeros() as u64;
    let (a, b) = (v / 4, v % 4);
    8 * a + (1 << b)
}

/// Octonion multiplication by Cayley–Dickson doubling: basis products
/// `e_i e_j = ± e_k` returned as a signed table `table[i][j] = (k, sign)`.
fn octonion_table() -> [[(usize, i64); 8]; 8] {
    // Cayley–Dickson: (a,b)(c,d) = (ac − d*b, da + bc*), conj (a,b)* = (a*, −b).
    // Represent an element of the 2^k-dimensional algebra as a slice of
    // coefficients and multiply recursively.
    fn conj(x: &[i64]) -> Vec<i64> {
        let mut out = x.to_vec();
        for v in out.iter_mut().skip(1) {
            *v = -*v;
        }
        out
    }
    fn mul(x: &[i64], y: &[i64]) -> Vec<i64> {
        let n = x.len();
        if n == 1 {
            return vec![x[0] * y[0]];
        }
        let h = n / 2;
        let (a, b) = (&x[..h], &x[h..]);
        let (c, d) = (&y[..h], &y[h..]);
        let ac = mul(a, c);
        let dsb = mul(&conj(d), b);
        let da = mul(d, a);
        let bcs = mul(b, &conj(c));
        let mut out = vec![0i64; n];
        for i in 0..h {
            out[i] = ac[i] - dsb[i];
            out[h + i] = da[i] + bcs[i];
        }
        out
    }
    let mut table = [[(0usize, 0i64); 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let mut ei = vec![0i64; 8];
            ei[i] = 1;
            let mut ej = vec![0i64; 8];
            ej[j] = 1;
            let prod = mul(&ei, &ej);
            let k = prod.iter().position(|&v| v != 0).expect("unit product");
            assert!(prod.iter().filter(|&&v| v != 0).count() == 1);
            table[i][j] = (k, prod[k]);
        }
    }
    table
}

/// Left multiplication by the imaginary octonion unit `e_u` (u ≥ 1) as a
/// signed permutation matrix on `ℝ⁸`.
fn left_mult(u: usize, table: &[[(usize, i64); 8]; 8]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; 8]; 8];
    for (col, row_entry) in (0..8).map(|j| (j, table[u][j])) {
        let (row, sign) = row_entry;
        m[row][col] = sign;
    }
    m
}

/// Eight mutually anticommuting orthogonal complex structures on `ℝ¹⁶`:
/// `diag(Aᵢ, −Aᵢ)` for the seven octonionic structures on `ℝ⁸`, plus the
/// swap structure `(x, y) ↦ (y, −x)`.
pub fn clifford_structures_r16() -> Vec<Vec<Vec<i64>>> {
    let table = octonion_table();
    let mut out = Vec::new();
    for u in 1..8 {
        let a = left_mult(u, &table);
        let mut big = vec![vec![0i64; 16]; 16];
        for i in 0..8 {
            for j in 0..8 {
                big[i][j] = a[i][j];
                big[8 + i][8 + j] = -a[i][j];
            }
        }
        out.push(big);
    }
    let mut swap = vec![vec![0i64; 16]; 16];
    for i in 0..8 {
        swap[i][8 + i] = 1;
        swap[8 + i][i] = -1;
    }
    out.push(swap);
    out
}
