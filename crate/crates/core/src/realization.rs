//! Concrete permutation groups on two generators.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::presentation::{Presentation, Word};

/// Largest group order `from_generators` will close up to.
pub const ELEMENT_LIMIT: usize = 1 << 21;

/// Two generator permutations on `0..degree` with the order of the group they
/// generate. A regular realization has one point per element, point 0 being
/// the identity, and the generators act by right multiplication.
#[derive(Clone, Debug)]
pub struct Realization {
    gens: [Perm; 2],
    order: usize,
    gen_orders: (usize, usize),
    regular: bool,
    source: Option<Presentation>,
}

impl Realization {
    /// Closes up the group generated by `gens`. Fails with `Overflow` past
    /// `ELEMENT_LIMIT` elements.
    pub fn from_generators(gens: [Perm; 2]) -> Result<Realization> {
        if gens[0].degree() != gens[1].degree() {
            return Err(Error::InvalidInput("generators act on different point sets".into()));
        }
        let gen_orders = (gens[0].order(), gens[1].order());
        let order = closure(&gens, ELEMENT_LIMIT)?.0.len();
        let regular = order == gens[0].degree() && orbit_size(&gens, 0) == order;
        Ok(Realization { gens, order, gen_orders, regular, source: None })
    }

    /// Wraps generators already acting regularly (e.g. a complete coset table
    /// over the trivial subgroup).
    pub(crate) fn regular_from_perms(gens: [Perm; 2]) -> Realization {
        let order = gens[0].degree();
        debug_assert_eq!(orbit_size(&gens, 0), order);
        let gen_orders = (gens[0].order(), gens[1].order());
        Realization { gens, order, gen_orders, regular: true, source: None }
    }

    /// Records the presentation this group is exactly the group of.
    pub fn with_presentation(mut self, pres: Presentation) -> Realization {
        self.source = Some(pres);
        self
    }

    pub fn degree(&self) -> usize {
        self.gens[0].degree()
    }

    pub fn gens(&self) -> &[Perm; 2] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gen_orders(&self) -> (usize, usize) {
        self.gen_orders
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// The presentation whose group this is, when known.
    pub fn presentation(&self) -> Option<&Presentation> {
        self.source.as_ref()
    }

    /// The same group acting on itself. Returns a clone when already regular.
    pub fn to_regular(&self) -> Realization {
        if self.regular {
            return self.clone();
        }
        let (_, mult) = closure(&self.gens, ELEMENT_LIMIT).expect("order already computed");
        let gens = [
            Perm::from_images_unchecked(mult.iter().map(|m| m[0]).collect()),
            Perm::from_images_unchecked(mult.iter().map(|m| m[1]).collect()),
        ];
        Realization {
            gens,
            order: self.order,
            gen_orders: self.gen_orders,
            regular: true,
            source: self.source.clone(),
        }
    }

    /// Same group with both generators inverted.
    pub fn inverted(&self) -> Realization {
        Realization {
            gens: [self.gens[0].inverse(), self.gens[1].inverse()],
            order: self.order,
            gen_orders: self.gen_orders,
            regular: self.regular,
            source: self.source.as_ref().map(Presentation::enantiomorph),
        }
    }

    /// True when `w` evaluates to the identity.
    pub fn is_identity(&self, w: &Word) -> bool {
        if self.regular {
            self.trace(w, 0) == 0
        } else {
            w.eval(&self.gens).is_identity()
        }
    }

    /// Image of `point` under `w`.
    pub fn trace(&self, w: &Word, point: u32) -> u32 {
        let inverses = [self.gens[0].inverse(), self.gens[1].inverse()];
        w.trace(&self.gens, &inverses, point)
    }
}

/// Number of points reachable from `start`.
pub(crate) fn orbit_size(gens: &[Perm; 2], start: u32) -> usize {
    let n = gens[0].degree();
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start as usize] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// Breadth-first closure: all elements (identity first) and, for each, the
/// indices of its products with `gens[0]` and `gens[1]`.
fn closure(gens: &[Perm; 2], limit: usize) -> Result<(Vec<Perm>, Vec<[u32; 2]>)> {
    let id = Perm::identity(gens[0].degree());
    let mut index: HashMap<Perm, u32> = HashMap::new();
    let mut elems = vec![id.clone()];
    index.insert(id, 0);
    let mut mult: Vec<[u32; 2]> = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let mut row = [0u32; 2];
        for (k, g) in gens.iter().enumerate() {
            let h = elems[i].then(g);
            let idx = match index.get(&h) {
                Some(&idx) => idx,
                None => {
                    if elems.len() >= limit {
                        return Err(Error::Overflow { limit });
                    }
                    let idx = elems.len() as u32;
                    index.insert(h.clone(), idx);
                    elems.push(h);
                    idx
                }
            };
            row[k] = idx;
        }
        mult.push(row);
        i += 1;
    }
    Ok((elems, mult))
}
