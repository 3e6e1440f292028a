//! HLT coset enumeration with lookahead.
//!
//! Columns are letters: `0 = s1`, `1 = s1^-1`, `2 = s2`, `3 = s2^-1`; the
//! inverse of column `x` is `x ^ 1`. Coincidences are resolved with a
//! union-find whose representative is always the smaller coset, so coset 0
//! never dies and seeded cosets keep their numbers unless two of them merge.

pub(crate) const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Complete,
    Overflow,
    /// Two protected cosets were found equal.
    Collapsed,
}

/// Scanning was interrupted: the live-coset limit was hit or a protected
/// coincidence was found.
#[derive(Debug)]
enum Stop {
    NoSpace,
    Collapsed,
}

pub(crate) struct Enumerator {
    relators: Vec<Vec<u8>>,
    table: Vec<[u32; 4]>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    live: usize,
    max_live: usize,
    /// Storage bound (live and dead); reaching it triggers compaction.
    max_total: usize,
    /// Cosets below this index must stay distinct.
    protected: u32,
    collapsed: bool,
}

impl Enumerator {
    pub(crate) fn new(relators: Vec<Vec<u8>>, max_live: usize) -> Enumerator {
        let max_live = max_live.max(1);
        let mut e = Enumerator {
            relators,
            table: Vec::with_capacity(max_live.min(1 << 16)),
            parent: Vec::new(),
            queue: Vec::new(),
            live: 0,
            max_live,
            max_total: (4 * max_live).max(1024),
            protected: 0,
            collapsed: false,
        };
        e.new_coset();
        e
    }

    /// Appends `n` fresh cosets; returns the first new index.
    pub(crate) fn add_cosets(&mut self, n: usize) -> u32 {
        let first = self.table.len() as u32;
        for _ in 0..n {
            self.new_coset();
        }
        first
    }

    /// Marks the first `n` cosets (including coset 0) as protected.
    pub(crate) fn protect(&mut self, n: usize) {
        self.protected = n as u32;
    }

    /// Records `c * x = d` and the inverse entry. Caller guarantees both are
    /// live and the entries are undefined or already equal.
    pub(crate) fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize][x] = d;
        self.table[d as usize][x ^ 1] = c;
    }

    fn new_coset(&mut self) -> u32 {
        let c = self.table.len() as u32;
        self.table.push([UNDEF; 4]);
        self.parent.push(c);
        self.live += 1;
        c
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        if kill < self.protected {
            self.collapsed = true;
        }
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..4 {
                let f = self.table[e as usize][x];
                if f == UNDEF {
                    continue;
                }
                let xi = x ^ 1;
                if self.table[f as usize][xi] == e {
                    self.table[f as usize][xi] = UNDEF;
                }
                let mu = self.rep(e);
                let nu = self.rep(f);
                let mu_x = self.table[mu as usize][x];
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.table[nu as usize][xi];
                    if nu_xi != UNDEF {
                        self.merge(mu, nu_xi);
                    } else {
                        self.table[mu as usize][x] = nu;
                        self.table[nu as usize][xi] = mu;
                    }
                }
            }
        }
        self.queue.clear();
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Stop> {
        if self.live >= self.max_live {
            return Err(Stop::NoSpace);
        }
        let d = self.new_coset();
        self.set(c, x, d);
        Ok(())
    }

    /// Scans relator `r` at coset `c`; with `fill`, defines cosets to complete it.
    fn scan(&mut self, c: u32, r: usize, fill: bool) -> Result<(), Stop> {
        let len = self.relators[r].len();
        if len == 0 {
            return Ok(());
        }
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = len as isize - 1;
        loop {
            {
                let w = &self.relators[r];
                while (i as isize) <= j {
                    let next = self.table[f as usize][w[i] as usize];
                    if next == UNDEF {
                        break;
                    }
                    f = next;
                    i += 1;
                }
            }
            if i as isize > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return self.check_collapse();
            }
            {
                let w = &self.relators[r];
                while j >= i as isize {
                    let next = self.table[b as usize][(w[j as usize] ^ 1) as usize];
                    if next == UNDEF {
                        break;
                    }
                    b = next;
                    j -= 1;
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return self.check_collapse();
            }
            if j == i as isize {
                let x = self.relators[r][i] as usize;
                self.set(f, x, b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            let x = self.relators[r][i] as usize;
            self.define(f, x)?;
        }
    }

    fn check_collapse(&self) -> Result<(), Stop> {
        if self.collapsed {
            Err(Stop::Collapsed)
        } else {
            Ok(())
        }
    }

    /// Scans every relator at every live coset without defining new cosets.
    fn lookahead(&mut self) -> Result<(), Stop> {
        let mut c = 0u32;
        while (c as usize) < self.table.len() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, false)?;
            }
            c += 1;
        }
        Ok(())
    }

    /// Renumbers live cosets consecutively, preserving order. Returns the map.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.table.len();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.parent[c] == c as u32 {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize);
        for c in 0..n {
            if map[c] == UNDEF {
                continue;
            }
            let mut row = self.table[c];
            for entry in row.iter_mut() {
                if *entry != UNDEF {
                    *entry = map[self.rep(*entry) as usize];
                }
            }
            table.push(row);
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.protected = self.protected.min(next);
        map
    }

    fn process(&mut self, c: u32) -> Result<(), Stop> {
        for r in 0..self.relators.len() {
            if !self.is_live(c) {
                return Ok(());
            }
            self.scan(c, r, true)?;
        }
        for x in 0..4 {
            if !self.is_live(c) {
                return Ok(());
            }
            if self.table[c as usize][x] == UNDEF {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    /// Makes `c` satisfy relator `w` (e.g. a subgroup generator at coset 0).
    pub(crate) fn fill_word(&mut self, c: u32, w: Vec<u8>) -> Outcome {
        self.relators.push(w);
        let r = self.relators.len() - 1;
        let res = loop {
            match self.scan(c, r, true) {
                Ok(()) => break Outcome::Complete,
                Err(Stop::Collapsed) => break Outcome::Collapsed,
                Err(Stop::NoSpace) => match self.lookahead() {
                    Err(Stop::Collapsed) => break Outcome::Collapsed,
                    _ if self.live >= self.max_live => break Outcome::Overflow,
                    _ => {}
                },
            }
        };
        self.relators.pop();
        res
    }

    pub(crate) fn run(&mut self) -> Outcome {
        let mut c = 0u32;
        while (c as usize) < self.table.len() {
            if self.is_live(c) {
                match self.process(c) {
                    Ok(()) => {}
                    Err(Stop::Collapsed) => return Outcome::Collapsed,
                    Err(Stop::NoSpace) => {
                        match self.lookahead() {
                            Err(Stop::Collapsed) => return Outcome::Collapsed,
                            Err(Stop::NoSpace) => unreachable!("lookahead never defines"),
                            Ok(()) => {}
                        }
                        if self.live >= self.max_live {
                            return Outcome::Overflow;
                        }
                        // Retry the same coset (or its successor if it died).
                        continue;
                    }
                }
            }
            c += 1;
            if self.table.len() >= self.max_total && (c as usize) < self.table.len() {
                let map = self.compact();
                // First live coset at or after the old `c`.
                let mut nc = self.table.len() as u32;
                for old in (c as usize)..map.len() {
                    if map[old] != UNDEF {
                        nc = map[old];
                        break;
                    }
                }
                c = nc;
            }
        }
        Outcome::Complete
    }

    /// Live rows renumbered consecutively; call after `run` returns `Complete`.
    pub(crate) fn into_rows(mut self) -> Vec<[u32; 4]> {
        self.compact();
        self.table
    }

    pub(crate) fn live(&self) -> usize {
        self.live
    }
}
