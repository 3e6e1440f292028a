//! Coset enumeration and the explicit permutation representations.

mod enumerator;
mod explicit;

pub use explicit::{explicit_representation, ExplicitFamily};
pub(crate) use enumerator::{Enumerator, Outcome};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::presentation::{Presentation, Word};
use crate::realization::Realization;

/// A completed coset table. Coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    rows: Vec<[u32; 4]>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Image of coset `c` under table column `column` (`0 = s1`, `1 = s1^-1`, ...).
    pub fn image(&self, c: usize, column: usize) -> usize {
        self.rows[c][column] as usize
    }

    /// Actions of `s1` and `s2` on the cosets.
    pub fn generator_perms(&self) -> [Perm; 2] {
        let act = |col: usize| {
            Perm::from_images_unchecked(self.rows.iter().map(|row| row[col]).collect())
        };
        [act(0), act(2)]
    }
}

pub(crate) fn columns(w: &Word) -> Vec<u8> {
    w.letters().iter().map(|l| l.column() as u8).collect()
}

/// Relators sorted by length, so short ones drive deductions first.
fn relator_columns(pres: &Presentation) -> Vec<Vec<u8>> {
    let mut rels: Vec<Vec<u8>> = pres.relators().iter().map(columns).collect();
    rels.sort_by_key(|r| r.len());
    rels
}

/// Enumerates the cosets of the subgroup generated by `subgroup_gens`.
pub fn enumerate(pres: &Presentation, subgroup_gens: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::InvalidInput("max_cosets must be at least 1".into()));
    }
    let mut e = Enumerator::new(relator_columns(pres), max_cosets);
    for h in subgroup_gens {
        if e.fill_word(0, columns(&h.free_reduce())) == Outcome::Overflow {
            return Err(Error::Overflow { limit: max_cosets });
        }
    }
    match e.run() {
        Outcome::Complete => Ok(CosetTable { rows: e.into_rows() }),
        Outcome::Overflow => Err(Error::Overflow { limit: max_cosets }),
        Outcome::Collapsed => unreachable!("nothing is protected"),
    }
}

/// The group defined by `pres`, acting regularly on itself.
pub fn realize(pres: &Presentation, max_cosets: usize) -> Result<Realization> {
    let table = enumerate(pres, &[], max_cosets)?;
    Ok(Realization::regular_from_perms(table.generator_perms()).with_presentation(pres.clone()))
}

/// `realize` with the default limit `4pq + 64`.
pub fn realize_default(pres: &Presentation) -> Result<Realization> {
    realize(pres, pres.default_max_cosets())
}
