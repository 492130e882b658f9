use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::{IntPoly, PolyError};

/// Every n with Euler phi(n) <= 6.
pub const CYCLOTOMIC_INDICES: [u32; 13] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18];

/// Cyclotomic polynomials Phi_n for the indices in [`CYCLOTOMIC_INDICES`].
#[derive(Debug)]
pub struct CyclotomicTable {
    entries: BTreeMap<u32, IntPoly>,
}

impl CyclotomicTable {
    /// Shared table, built on first use.
    pub fn get() -> &'static CyclotomicTable {
        static TABLE: OnceLock<CyclotomicTable> = OnceLock::new();
        TABLE.get_or_init(CyclotomicTable::build)
    }

    fn build() -> Self {
        let mut entries = BTreeMap::new();
        for &n in &CYCLOTOMIC_INDICES {
            entries.insert(n, cyclotomic(n));
        }
        CyclotomicTable { entries }
    }

    pub fn phi(&self, n: u32) -> Option<&IntPoly> {
        self.entries.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &IntPoly)> {
        self.entries.iter().map(|(&n, p)| (n, p))
    }
}

/// Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d
fn cyclotomic(n: u32) -> IntPoly {
    let mut p = &IntPoly::monomial(n as usize) - &IntPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic(d)).expect("Phi_d divides t^n - 1");
        }
    }
    p
}

/// Strips every tabulated cyclotomic factor from a monic polynomial.
///
/// Returns the indices found with their multiplicities (ascending index)
/// and the remaining cofactor.
pub fn cyclotomic_part(p: &IntPoly) -> Result<(Vec<(u32, u32)>, IntPoly), PolyError> {
    if !p.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let mut rest = p.clone();
    let mut found = Vec::new();
    for (n, phi) in CyclotomicTable::get().iter() {
        let mut mult = 0;
        while rest.deg() >= phi.deg() {
            match rest.div_exact(phi) {
                Ok(q) => {
                    rest = q;
                    mult += 1;
                }
                Err(_) => break,
            }
        }
        if mult > 0 {
            found.push((n, mult));
        }
    }
    Ok((found, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries_divide_t_n_minus_one() {
        let table = CyclotomicTable::get();
        for (n, phi) in table.iter() {
            let tn = &IntPoly::monomial(n as usize) - &IntPoly::one();
            assert!(tn.div_exact(phi).is_ok(), "Phi_{n}");
        }
        assert_eq!(table.phi(12), Some(&IntPoly::from_desc(&[1, 0, -1, 0, 1])));
        assert_eq!(table.phi(7).unwrap().degree(), Some(6));
        assert_eq!(table.phi(18), Some(&IntPoly::from_desc(&[1, 0, 0, -1, 0, 0, 1])));
        assert!(table.phi(11).is_none());
    }

    #[test]
    fn table_entries_are_irreducible() {
        for (n, phi) in CyclotomicTable::get().iter() {
            let f = crate::poly::factor_bounded(phi).unwrap();
            assert_eq!(f.len(), 1, "Phi_{n} factored as {f:?}");
        }
    }

    #[test]
    fn cyclotomic_part_examples() {
        let (idx, rest) = cyclotomic_part(&IntPoly::from_desc(&[1, 0, -1, 0, 1])).unwrap();
        assert_eq!(idx, vec![(12, 1)]);
        assert_eq!(rest, IntPoly::one());

        let s = IntPoly::from_desc(&[1, -3, 1]);
        let (idx, rest) = cyclotomic_part(&s).unwrap();
        assert!(idx.is_empty());
        assert_eq!(rest, s);

        let p = &IntPoly::from_desc(&[1, -1]).pow(2) * &s;
        let (idx, rest) = cyclotomic_part(&p).unwrap();
        assert_eq!(idx, vec![(1, 2)]);
        assert_eq!(rest, s);

        assert_eq!(
            cyclotomic_part(&IntPoly::from_desc(&[2, 1])),
            Err(PolyError::NotMonic)
        );
    }
}
