use super::CodeSpace;
use crate::algebra::linalg::{mat_vec, nullspace, rank, rref};
use crate::algebra::{Elem, Field, FieldTable, Subfield};
use crate::error::{Error, Result};

/// A `k`-dimensional subspace of `F_q^n` given by a full-rank generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<Elem>>,
}

impl LinearCode {
    /// Takes the rows as given; they must be linearly independent.
    pub fn new(field: &Field, generator: Vec<Vec<Elem>>) -> Result<Self> {
        let n = validate_rows(field, &generator)?;
        let k = rank(field, &generator);
        if k != generator.len() {
            return Err(Error::InvalidArgument(format!(
                "generator rows have rank {k} but there are {} of them",
                generator.len()
            )));
        }
        Ok(LinearCode { field: field.clone(), n, k, generator })
    }

    /// The span of arbitrary rows, stored in reduced row echelon form.
    pub fn from_spanning(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = validate_rows(field, &rows)?;
        let mut m = rows;
        rref(field, &mut m);
        if m.is_empty() {
            return Err(Error::ZeroCode);
        }
        Ok(LinearCode { field: field.clone(), n, k: m.len(), generator: m })
    }

    /// A basis of the dual code.
    pub fn parity_check(&self) -> Vec<Vec<Elem>> {
        nullspace(&self.field, &self.generator, self.n)
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        word.len() == self.n && mat_vec(&self.field, &self.parity_check(), word).iter().all(|&s| s == 0)
    }
}

fn validate_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<usize> {
    let n = rows.first().map_or(0, |r| r.len());
    if rows.is_empty() {
        return Err(Error::ZeroCode);
    }
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("generator rows must share a positive length".into()));
    }
    if rows.iter().flatten().any(|&e| e >= field.q()) {
        return Err(Error::InvalidArgument("generator entry outside the field".into()));
    }
    Ok(n)
}

impl CodeSpace for LinearCode {
    fn alphabet(&self) -> &Field {
        &self.field
    }

    fn scalars(&self) -> &Field {
        &self.field
    }

    fn embed_scalar(&self, c: Elem) -> Elem {
        c
    }

    fn length(&self) -> usize {
        self.n
    }

    fn rows(&self) -> &[Vec<Elem>] {
        &self.generator
    }
}

/// The projective points of `PG(k-1, q)`: nonzero vectors of `F_q^k` whose first
/// nonzero coordinate is 1, in odometer order.
pub fn projective_points(field: &Field, k: usize) -> Vec<Vec<Elem>> {
    let q = field.q();
    let mut out = Vec::new();
    for lead in 0..k {
        // zeros before `lead`, a one at `lead`, anything after
        let tail = k - lead - 1;
        let count = (q as u64).pow(tail as u32);
        for idx in 0..count {
            let mut v = vec![0; k];
            v[lead] = 1;
            let mut rest = idx;
            for j in (lead + 1..k).rev() {
                v[j] = (rest % q as u64) as Elem;
                rest /= q as u64;
            }
            out.push(v);
        }
    }
    out
}

/// The simplex code of dimension `k`: coordinate `i` is `Tr(beta alpha^i)` for
/// `0 <= i < (q^k - 1)/(q - 1)`, `alpha` primitive in `F_{q^k}`. The columns run through
/// every projective point once, so every nonzero codeword has weight `q^{k-1}`; for
/// `q = 2` the code is cyclic.
pub fn simplex_code(k: usize, field: &Field) -> Result<LinearCode> {
    if k == 0 {
        return Err(Error::KOutOfRange { k, max: usize::MAX });
    }
    let big = FieldTable::new(field.p() as u64, field.s() * k as u32)?;
    let sub = Subfield::new(field, &big)?;
    let n = ((big.q() - 1) / (field.q() - 1)) as usize;
    let rows = (0..k as u64)
        .map(|j| (0..n as u64).map(|i| sub.trace(big.exp(i + j))).collect())
        .collect();
    LinearCode::new(field, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldTable;
    use crate::codes::{enumerate_codewords, min_hamming_distance, DEFAULT_ENUMERATION_CAP};
    use crate::vectors::hamming_weight;

    #[test]
    fn simplex_examples() {
        for (k, q, n, w) in [(3, 2, 7, 4), (2, 2, 3, 2), (2, 3, 4, 3), (3, 3, 13, 9)] {
            let f = FieldTable::of_size(q).unwrap();
            let c = simplex_code(k, &f).unwrap();
            assert_eq!((c.n, c.k), (n, k));
            let words = enumerate_codewords(&c, DEFAULT_ENUMERATION_CAP).unwrap();
            assert!(words.iter().skip(1).all(|x| hamming_weight(x) == w));
        }
    }

    #[test]
    fn rank_and_membership() {
        let f2 = FieldTable::new(2, 1).unwrap();
        assert!(LinearCode::new(&f2, vec![vec![1, 1, 0], vec![1, 1, 0]]).is_err());
        let c = LinearCode::from_spanning(&f2, vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(c.k, 2);
        assert!(c.contains(&[1, 0, 1]));
        assert!(!c.contains(&[1, 0, 0]));
        assert_eq!(min_hamming_distance(&c, DEFAULT_ENUMERATION_CAP).unwrap(), 2);
        assert_eq!(LinearCode::from_spanning(&f2, vec![vec![0, 0]]).unwrap_err(), Error::ZeroCode);
    }
}
