//! Solving F_3-linear equations `L(x) = c` on F_{3^n}, where `L` is any
//! additive map such as `x -> x^q + x` or `x -> x^3 - x`.

use super::element::FieldElement;

/// A particular solution together with a basis of the kernel of `L`.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: FieldElement,
    pub kernel: Vec<FieldElement>,
}

fn inv3(c: u8) -> u8 {
    // 1 and 2 are their own inverses mod 3
    c
}

/// Solves `map(x) = rhs` over F_{3^n} (n = `rhs.degree()`), where `map` must be
/// F_3-linear. Returns `None` when `rhs` is not in the image.
pub fn solve_linear<F>(map: F, rhs: FieldElement) -> Option<AffineSolution>
where
    F: Fn(FieldElement) -> FieldElement,
{
    let n = rhs.degree() as usize;
    // columns: images of the basis vectors; build the augmented n x (n+1) matrix
    let mut rows = vec![vec![0u8; n + 1]; n];
    for col in 0..n {
        let mut e = vec![0u8; col + 1];
        e[col] = 1;
        let image = map(FieldElement::from_coeffs(n as u32, &e)).coeffs();
        for (row, &c) in image.iter().enumerate() {
            rows[row][col] = c;
        }
    }
    for (row, c) in rhs.coeffs().into_iter().enumerate() {
        rows[row][n] = c;
    }

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..n).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let scale = inv3(rows[r][col]);
        for v in rows[r].iter_mut() {
            *v = (*v * scale) % 3;
        }
        for i in 0..n {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..=n {
                    rows[i][j] = (rows[i][j] + 3 * 3 - f * rows[r][j]) % 3;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == n {
            break;
        }
    }
    // inconsistent row: 0 = nonzero
    if rows[r..].iter().any(|row| row[n] != 0) {
        return None;
    }

    let mut x = vec![0u8; n];
    for &(row, col) in &pivots {
        x[col] = rows[row][n];
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut kernel = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u8; n];
        v[free] = 1;
        for &(row, col) in &pivots {
            v[col] = (3 - rows[row][free]) % 3;
        }
        kernel.push(FieldElement::from_coeffs(n as u32, &v));
    }
    Some(AffineSolution {
        particular: FieldElement::from_coeffs(n as u32, &x),
        kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artin_schreier_over_f9() {
        // x^3 - x has kernel F_3 and image the trace-zero elements
        let n = 2;
        let map = |x: FieldElement| x.cube() - x;
        let mut solvable = 0;
        for c in FieldElement::all(n) {
            if let Some(sol) = solve_linear(map, c) {
                assert_eq!(map(sol.particular), c);
                assert_eq!(sol.kernel.len(), 1);
                for k in &sol.kernel {
                    assert!(map(*k).is_zero());
                }
                solvable += 1;
            }
        }
        assert_eq!(solvable, 3);
    }

    #[test]
    fn kernel_of_trace_like_map_matches_count() {
        // x^9 + x on F_81 has q = 9 roots
        let map = |x: FieldElement| x.pow(9) + x;
        let sol = solve_linear(map, FieldElement::zero(4)).unwrap();
        assert_eq!(sol.kernel.len(), 2);
    }
}
