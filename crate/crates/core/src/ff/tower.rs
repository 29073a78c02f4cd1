//! Embeddings between levels and the tower of fields used for one value of
//! `q = 3^t`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::element::{FieldElement, REPR_MAX_DEGREE};
use super::gfpoly::GfPoly;
use super::level::modulus;
use super::FieldError;

/// Default bound on the extension degree over F_3.
pub const DEFAULT_MAX_DEGREE: u32 = 48;

/// Ring homomorphism F_{3^n} -> F_{3^N} for `n | N`, sending the generator of
/// the small field to the lexicographically smallest root of its modulus in
/// the large field.
#[derive(Debug)]
pub struct Embedding {
    from: u32,
    to: u32,
    /// images of `1, z, ..., z^(n-1)`
    basis_images: Vec<FieldElement>,
    /// rows of the target used to invert the embedding, and the inverse of the
    /// corresponding n x n block (entries in F_3)
    pivot_rows: Vec<usize>,
    inverse_block: Vec<Vec<u8>>,
}

impl Embedding {
    fn compute(from: u32, to: u32) -> Self {
        assert!(to % from == 0, "F_3^{from} is not a subfield of F_3^{to}");
        let root = if from == 1 {
            FieldElement::zero(to)
        } else {
            let f = GfPoly::from_f3(to, &modulus(from));
            f.roots()
                .into_iter()
                .next()
                .expect("modulus of a subfield must split in the extension")
        };
        let mut basis_images = Vec::with_capacity(from as usize);
        let mut power = FieldElement::one(to);
        for _ in 0..from {
            basis_images.push(power);
            power *= root;
        }
        let (pivot_rows, inverse_block) = left_inverse(&basis_images, to as usize);
        Self {
            from,
            to,
            basis_images,
            pivot_rows,
            inverse_block,
        }
    }

    pub fn source_degree(&self) -> u32 {
        self.from
    }

    pub fn target_degree(&self) -> u32 {
        self.to
    }

    /// Image of the generator `z` of the subfield.
    pub fn generator_image(&self) -> FieldElement {
        if self.from == 1 {
            FieldElement::zero(self.to)
        } else {
            self.basis_images[1]
        }
    }

    pub fn apply(&self, x: FieldElement) -> FieldElement {
        assert_eq!(x.degree(), self.from);
        let (pos, neg) = x.masks();
        let mut acc = FieldElement::zero(self.to);
        for (k, &img) in self.basis_images.iter().enumerate() {
            if (pos >> k) & 1 != 0 {
                acc += img;
            } else if (neg >> k) & 1 != 0 {
                acc -= img;
            }
        }
        acc
    }

    /// Inverse of `apply` on its image; `None` when `y` is not in the subfield.
    pub fn restrict(&self, y: FieldElement) -> Option<FieldElement> {
        assert_eq!(y.degree(), self.to);
        let yc = y.coeffs();
        let rhs: Vec<u8> = self.pivot_rows.iter().map(|&r| yc[r]).collect();
        let coeffs: Vec<u8> = self
            .inverse_block
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&rhs)
                    .map(|(&a, &b)| (a as u32) * (b as u32))
                    .sum::<u32>() as u8
                    % 3
            })
            .collect();
        let x = FieldElement::from_coeffs(self.from, &coeffs);
        (self.apply(x) == y).then_some(x)
    }
}

/// Chooses `n` independent rows of the N x n matrix whose columns are `cols`
/// and inverts that square block over F_3.
fn left_inverse(cols: &[FieldElement], big: usize) -> (Vec<usize>, Vec<Vec<u8>>) {
    let n = cols.len();
    let matrix: Vec<Vec<u8>> = (0..big)
        .map(|r| cols.iter().map(|c| c.coeff(r as u32)).collect())
        .collect();
    // greedy row selection by incremental elimination
    let mut chosen = Vec::new();
    let mut basis: Vec<(usize, Vec<u8>)> = Vec::new(); // (pivot col, reduced row)
    for (r, row) in matrix.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if v[*pc] != 0 {
                let f = v[*pc];
                for j in 0..n {
                    v[j] = (v[j] + 9 - f * b[j]) % 3;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&c| c != 0) {
            let s = v[pc];
            for c in v.iter_mut() {
                *c = (*c * s) % 3;
            }
            for (_, b) in basis.iter_mut() {
                if b[pc] != 0 {
                    let f = b[pc];
                    for j in 0..n {
                        b[j] = (b[j] + 9 - f * v[j]) % 3;
                    }
                }
            }
            basis.push((pc, v));
            chosen.push(r);
            if chosen.len() == n {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), n, "embedding images are not independent");
    // invert the square block A (rows `chosen`) by Gauss-Jordan on [A | I]
    let mut aug: Vec<Vec<u8>> = chosen
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let mut row = matrix[r].clone();
            row.extend((0..n).map(|j| u8::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| aug[i][col] != 0).unwrap();
        aug.swap(col, p);
        let s = aug[col][col];
        for c in aug[col].iter_mut() {
            *c = (*c * s) % 3;
        }
        for i in 0..n {
            if i != col && aug[i][col] != 0 {
                let f = aug[i][col];
                for j in 0..2 * n {
                    aug[i][j] = (aug[i][j] + 9 - f * aug[col][j]) % 3;
                }
            }
        }
    }
    let inverse = aug.into_iter().map(|row| row[n..].to_vec()).collect();
    (chosen, inverse)
}

type EmbeddingCache = Mutex<HashMap<(u32, u32), Arc<Embedding>>>;

fn cache() -> &'static EmbeddingCache {
    static CACHE: OnceLock<EmbeddingCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The (memoized) embedding F_{3^from} -> F_{3^to}.
pub fn embedding(from: u32, to: u32) -> Arc<Embedding> {
    if let Some(e) = cache().lock().unwrap().get(&(from, to)) {
        return Arc::clone(e);
    }
    let e = Arc::new(Embedding::compute(from, to));
    cache()
        .lock()
        .unwrap()
        .entry((from, to))
        .or_insert(e)
        .clone()
}

/// Moves `x` into F_{3^to}; identity when already there.
pub fn embed(x: FieldElement, to: u32) -> FieldElement {
    if x.degree() == to {
        return x;
    }
    embedding(x.degree(), to).apply(x)
}

/// Pulls `y` back into the subfield F_{3^to}, if it lies there.
pub fn restrict(y: FieldElement, to: u32) -> Option<FieldElement> {
    if y.degree() == to {
        return Some(y);
    }
    if y.degree() % to != 0 {
        return None;
    }
    embedding(to, y.degree()).restrict(y)
}

/// Levels F_3, F_q, F_{q^2} and requested extensions F_{q^{2d}}, with
/// embeddings between every pair of levels `n | N`.
#[derive(Debug, Clone)]
pub struct FieldTower {
    t: u32,
    max_degree: u32,
    levels: BTreeSet<u32>,
    embeddings: HashMap<(u32, u32), Arc<Embedding>>,
}

impl FieldTower {
    /// Tower for `q = 3^t` with extra levels of degree `d` over F_{q^2}.
    pub fn new(t: u32, extra_degrees: &[u32]) -> Result<Self, FieldError> {
        Self::with_bound(t, extra_degrees, DEFAULT_MAX_DEGREE)
    }

    pub fn with_bound(t: u32, extra_degrees: &[u32], max_degree: u32) -> Result<Self, FieldError> {
        if t < 2 {
            return Err(FieldError::EllipticCase(t));
        }
        let max_degree = max_degree.min(REPR_MAX_DEGREE);
        let mut levels = BTreeSet::from([1, t, 2 * t]);
        for &d in extra_degrees {
            if d == 0 {
                return Err(FieldError::DegreeOverflow { degree: 0, bound: max_degree });
            }
            levels.insert(2 * t * d);
        }
        if let Some(&top) = levels.last() {
            if top > max_degree {
                return Err(FieldError::DegreeOverflow { degree: top, bound: max_degree });
            }
        }
        let mut embeddings = HashMap::new();
        for &small in &levels {
            for &large in &levels {
                if small < large && large % small == 0 {
                    embeddings.insert((small, large), embedding(small, large));
                }
            }
        }
        Ok(Self {
            t,
            max_degree,
            levels,
            embeddings,
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn q(&self) -> u64 {
        3u64.pow(self.t)
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Degrees over F_3, ascending.
    pub fn levels(&self) -> Vec<u32> {
        self.levels.iter().copied().collect()
    }

    pub fn contains_level(&self, n: u32) -> bool {
        self.levels.contains(&n)
    }

    pub fn embedding(&self, from: u32, to: u32) -> Option<&Embedding> {
        self.embeddings.get(&(from, to)).map(|e| e.as_ref())
    }

    pub fn embed(&self, x: FieldElement, to: u32) -> Result<FieldElement, FieldError> {
        if x.degree() == to {
            return Ok(x);
        }
        self.embedding(x.degree(), to)
            .map(|e| e.apply(x))
            .ok_or(FieldError::NotASubfield { from: x.degree(), to })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tower_levels_match_divisor_choices() {
        assert_eq!(FieldTower::new(2, &[3]).unwrap().levels(), vec![1, 2, 4, 12]);
        assert_eq!(FieldTower::new(3, &[2, 3]).unwrap().levels(), vec![1, 3, 6, 12, 18]);
    }

    #[test]
    fn elliptic_case_and_overflow_rejected() {
        let err = FieldTower::new(1, &[]).unwrap_err();
        assert_eq!(err.to_string(), "t must be ≥ 2 (t = 1 gives an elliptic curve)");
        assert!(matches!(
            FieldTower::new(3, &[9]),
            Err(FieldError::DegreeOverflow { degree: 54, .. })
        ));
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, big) in [(2u32, 4u32), (4, 12), (3, 12), (6, 18), (1, 5)] {
            let e = embedding(n, big);
            for _ in 0..50 {
                let x = FieldElement::random(n, &mut rng);
                let y = FieldElement::random(n, &mut rng);
                assert_eq!(e.apply(x * y), e.apply(x) * e.apply(y));
                assert_eq!(e.apply(x + y), e.apply(x) + e.apply(y));
                assert_eq!(e.restrict(e.apply(x)), Some(x));
            }
            assert!(e.apply(FieldElement::one(n)).is_one());
        }
    }

    #[test]
    fn restrict_rejects_elements_outside_subfield() {
        // z in F_81 generates F_81, not F_9
        let z = FieldElement::generator(4);
        assert_eq!(restrict(z, 2), None);
    }
}
