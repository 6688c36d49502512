//! Permutations of `{0, …, m−1}`.

use std::fmt;

/// A permutation stored as its image list; composition is `(πρ)(x) = π(ρ(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m as u8).collect())
    }

    /// Cycle `(c₀ c₁ … c_k)` with 0-based entries: `c₀ ↦ c₁ ↦ … ↦ c₀`.
    pub fn cycle(m: usize, c: &[usize]) -> Self {
        let mut p = Self::identity(m);
        for (k, &x) in c.iter().enumerate() {
            p.0[x] = c[(k + 1) % c.len()] as u8;
        }
        p
    }

    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        Self::cycle(m, &[i, j])
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn compose(&self, rho: &Perm) -> Perm {
        assert_eq!(self.m(), rho.m());
        Perm(rho.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.m()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `σπσ⁻¹`.
    pub fn conjugate_by(&self, sigma: &Perm) -> Perm {
        sigma.compose(self).compose(&sigma.inverse())
    }

    /// Orbit index of each point, orbits numbered by their minimal element.
    pub fn orbit_index(&self) -> (Vec<usize>, usize) {
        let m = self.m();
        let mut idx = vec![usize::MAX; m];
        let mut count = 0;
        for start in 0..m {
            if idx[start] != usize::MAX {
                continue;
            }
            let mut x = start;
            while idx[x] == usize::MAX {
                idx[x] = count;
                x = self.apply(x);
            }
            count += 1;
        }
        (idx, count)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let (idx, count) = self.orbit_index();
        let mut out = vec![Vec::new(); count];
        for (x, &k) in idx.iter().enumerate() {
            out[k].push(x);
        }
        out
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_index().1
    }

    pub fn all(m: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..m as u8).collect();
        permute(&mut cur, 0, &mut out);
        out.sort();
        out
    }
}

fn permute(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        out.push(Perm(cur.clone()));
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Orbits of the group generated by two permutations, numbered by minimal element.
pub fn joint_orbit_index(p: &Perm, q: &Perm) -> (Vec<usize>, usize) {
    let m = p.m();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for x in 0..m {
        for y in [p.apply(x), q.apply(x)] {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut idx = vec![usize::MAX; m];
    let mut count = 0;
    let mut label = vec![usize::MAX; m];
    for x in 0..m {
        let r = find(&mut parent, x);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        idx[x] = label[r];
    }
    (idx, count)
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation with 1-based points; the identity prints as `id`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        for orbit in self.orbits() {
            if orbit.len() < 2 {
                continue;
            }
            let mut x = orbit[0];
            write!(f, "(")?;
            loop {
                write!(f, "{}", x + 1)?;
                x = self.apply(x);
                if x == orbit[0] {
                    break;
                }
                write!(f, " ")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_convention() {
        let a = Perm::transposition(3, 0, 1);
        let b = Perm::transposition(3, 1, 2);
        // (πρ)(0) = π(ρ(0)) = π(0) = 1
        assert_eq!(a.compose(&b).apply(0), 1);
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
        assert_eq!(
            Perm::cycle(3, &[0, 1, 2]).inverse(),
            Perm::cycle(3, &[2, 1, 0])
        );
    }

    #[test]
    fn orbits_in_min_order() {
        let p = Perm::cycle(5, &[4, 1]);
        assert_eq!(p.orbits(), vec![vec![0], vec![1, 4], vec![2], vec![3]]);
        assert_eq!(Perm::all(4).len(), 24);
    }

    #[test]
    fn joint_orbits() {
        let p = Perm::transposition(4, 0, 1);
        let q = Perm::transposition(4, 1, 2);
        assert_eq!(joint_orbit_index(&p, &q), (vec![0, 0, 0, 1], 2));
    }
}
