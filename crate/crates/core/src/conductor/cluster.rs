use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Proper cluster: at least two leaves, with its depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub leaves: Vec<usize>,
    pub depth: Rational64,
}

/// Laminar family of proper clusters over leaves 0..n; index 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPicture {
    n_leaves: usize,
    clusters: Vec<Cluster>,
    lc_valuation: i64,
    parent: Vec<Option<usize>>,
}

/// A cluster is either a leaf or a proper cluster id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterRef {
    Leaf(usize),
    Proper(usize),
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

impl ClusterPicture {
    pub fn new(n_leaves: usize, clusters: Vec<Cluster>, lc_valuation: i64) -> Result<Self> {
        let bad = |m: &str| Err(Error::Domain(format!("invalid cluster picture: {m}")));
        if clusters.is_empty() {
            return bad("no root");
        }
        let mut clusters = clusters;
        for c in &mut clusters {
            c.leaves.sort_unstable();
            c.leaves.dedup();
            if c.leaves.len() < 2 || c.leaves.iter().any(|&l| l >= n_leaves) {
                return bad("proper clusters need >= 2 valid leaves");
            }
        }
        if clusters[0].leaves.len() != n_leaves {
            return bad("cluster 0 must be the full root set");
        }
        let k = clusters.len();
        for i in 0..k {
            for j in 0..i {
                let (a, b) = (&clusters[i].leaves, &clusters[j].leaves);
                let meet = a.iter().any(|x| b.contains(x));
                if a == b || (meet && !subset(a, b) && !subset(b, a)) {
                    return bad("clusters are not laminar");
                }
            }
        }
        let mut parent = vec![None; k];
        for i in 1..k {
            parent[i] = (0..k)
                .filter(|&j| {
                    j != i
                        && clusters[j].leaves.len() > clusters[i].leaves.len()
                        && subset(&clusters[i].leaves, &clusters[j].leaves)
                })
                .min_by_key(|&j| clusters[j].leaves.len());
            let par = parent[i].expect("root contains everything");
            if clusters[i].depth <= clusters[par].depth {
                return bad("child depth must exceed parent depth");
            }
        }
        Ok(ClusterPicture {
            n_leaves,
            clusters,
            lc_valuation,
            parent,
        })
    }

    pub fn n_leaves(&self) -> usize {
        self.n_leaves
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn lc_valuation(&self) -> i64 {
        self.lc_valuation
    }

    pub fn size(&self, c: ClusterRef) -> usize {
        match c {
            ClusterRef::Leaf(_) => 1,
            ClusterRef::Proper(i) => self.clusters[i].leaves.len(),
        }
    }

    /// Smallest proper cluster containing the leaf.
    fn leaf_parent(&self, leaf: usize) -> usize {
        (0..self.clusters.len())
            .filter(|&j| self.clusters[j].leaves.contains(&leaf))
            .min_by_key(|&j| self.clusters[j].leaves.len())
            .unwrap()
    }

    pub fn parent(&self, c: ClusterRef) -> Option<usize> {
        match c {
            ClusterRef::Leaf(l) => Some(self.leaf_parent(l)),
            ClusterRef::Proper(i) => self.parent[i],
        }
    }

    pub fn children(&self, s: usize) -> Vec<ClusterRef> {
        let mut out: Vec<ClusterRef> = (0..self.clusters.len())
            .filter(|&j| self.parent[j] == Some(s))
            .map(ClusterRef::Proper)
            .collect();
        out.extend(
            self.clusters[s]
                .leaves
                .iter()
                .filter(|&&l| self.leaf_parent(l) == s)
                .map(|&l| ClusterRef::Leaf(l)),
        );
        out
    }

    pub fn is_ubereven(&self, s: usize) -> bool {
        self.clusters[s].leaves.len() % 2 == 0
            && self.children(s).iter().all(|&c| self.size(c) % 2 == 0)
    }

    /// Depth of the smallest cluster containing leaf r and cluster s.
    fn meet_depth(&self, r: usize, s: usize) -> Rational64 {
        (0..self.clusters.len())
            .filter(|&j| {
                self.clusters[j].leaves.contains(&r)
                    && subset(&self.clusters[s].leaves, &self.clusters[j].leaves)
            })
            .min_by_key(|&j| self.clusters[j].leaves.len())
            .map(|j| self.clusters[j].depth)
            .unwrap()
    }

    /// lambda~_s = (ord c + #odd children * d_s + sum_{r not in s} d_{r ^ s}) / 2.
    pub fn lambda_tilde(&self, s: ClusterRef) -> Result<Rational64> {
        let ClusterRef::Proper(s) = s else {
            return Err(Error::Domain("lambda~ is defined for proper clusters only".into()));
        };
        let odd = self
            .children(s)
            .iter()
            .filter(|&&c| self.size(c) % 2 == 1)
            .count() as i64;
        let outside: Rational64 = (0..self.n_leaves)
            .filter(|r| !self.clusters[s].leaves.contains(r))
            .map(|r| self.meet_depth(r, s))
            .sum();
        Ok((Rational64::from_integer(self.lc_valuation)
            + self.clusters[s].depth * odd
            + outside)
            / 2)
    }
}

/// Inertia orbits on leaves and proper clusters, with ord_2 [I : I_s] for proper clusters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaAction {
    pub leaf_orbits: Vec<Vec<usize>>,
    pub cluster_orbits: Vec<Vec<usize>>,
    pub index_two_adic: Vec<u32>,
}

impl InertiaAction {
    pub fn trivial(pic: &ClusterPicture) -> Self {
        InertiaAction {
            leaf_orbits: (0..pic.n_leaves()).map(|l| vec![l]).collect(),
            cluster_orbits: (0..pic.clusters().len()).map(|c| vec![c]).collect(),
            index_two_adic: vec![0; pic.clusters().len()],
        }
    }

    fn validate(&self, pic: &ClusterPicture) -> Result<()> {
        let bad = |m: &str| Err(Error::Domain(format!("inertia action inconsistent: {m}")));
        let is_partition = |orbits: &[Vec<usize>], n: usize| {
            let mut seen = vec![false; n];
            for &x in orbits.iter().flatten() {
                if x >= n || seen[x] {
                    return false;
                }
                seen[x] = true;
            }
            seen.into_iter().all(|s| s)
        };
        if !is_partition(&self.leaf_orbits, pic.n_leaves()) {
            return bad("leaf orbits do not partition the roots");
        }
        let k = pic.clusters().len();
        if !is_partition(&self.cluster_orbits, k) || self.index_two_adic.len() != k {
            return bad("cluster orbits do not partition the proper clusters");
        }
        for o in &self.cluster_orbits {
            let c0 = &pic.clusters()[o[0]];
            if o.iter().any(|&j| {
                let c = &pic.clusters()[j];
                c.leaves.len() != c0.leaves.len() || c.depth != c0.depth
            }) {
                return bad("an orbit mixes clusters of different size or depth");
            }
        }
        if self.cluster_orbits.iter().any(|o| o.contains(&0) && o.len() > 1) {
            return bad("the root is fixed by inertia");
        }
        Ok(())
    }

    fn xi(&self, s: usize, a: Rational64) -> i64 {
        if a.is_zero() {
            return 0;
        }
        let v2 = |n: i64| n.abs().trailing_zeros() as i64;
        let ord = self.index_two_adic[s] as i64 + v2(*a.numer()) - v2(*a.denom());
        (-ord).max(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TameResult {
    pub n_tame: i64,
    pub two_g: i64,
    pub u_orbits: usize,
    pub v_orbits: usize,
    pub parity_bonus: i64,
}

/// n_tame = 2g - #(U/I) + #(V/I) + [|R| and ord c both even].
pub fn tame_exponent(pic: &ClusterPicture, act: &InertiaAction, genus: u32) -> Result<TameResult> {
    act.validate(pic)?;
    let k = pic.clusters().len();
    let lam: Vec<Rational64> = (0..k)
        .map(|s| pic.lambda_tilde(ClusterRef::Proper(s)))
        .collect::<Result<_>>()?;
    let in_u = |c: ClusterRef| -> bool {
        let Some(par) = pic.parent(c) else { return false };
        pic.size(c) % 2 == 1
            && act.xi(par, lam[par]) <= act.xi(par, pic.clusters()[par].depth)
    };
    let in_v = |s: usize| !pic.is_ubereven(s) && act.xi(s, lam[s]) == 0;

    let count_orbits = |orbits: &[Vec<usize>], member: &dyn Fn(usize) -> bool| -> Result<usize> {
        let mut n = 0;
        for o in orbits {
            let hits = o.iter().filter(|&&x| member(x)).count();
            if hits != 0 && hits != o.len() {
                return Err(Error::Domain("orbit meets U or V partially".into()));
            }
            n += usize::from(hits > 0);
        }
        Ok(n)
    };
    let u_orbits = count_orbits(&act.leaf_orbits, &|l| in_u(ClusterRef::Leaf(l)))?
        + count_orbits(&act.cluster_orbits, &|s| s != 0 && in_u(ClusterRef::Proper(s)))?;
    let v_orbits = count_orbits(&act.cluster_orbits, &in_v)?;
    let parity_bonus = i64::from(pic.n_leaves() % 2 == 0 && pic.lc_valuation() % 2 == 0);
    let two_g = 2 * genus as i64;
    let n_tame = two_g - u_orbits as i64 + v_orbits as i64 + parity_bonus;
    if n_tame < 0 || n_tame > 2 * two_g {
        return Err(Error::Inconsistent(format!("tame exponent {n_tame} out of range")));
    }
    Ok(TameResult {
        n_tame,
        two_g,
        u_orbits,
        v_orbits,
        parity_bonus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn root(n: usize, depth: Rational64) -> Cluster {
        Cluster {
            leaves: (0..n).collect(),
            depth,
        }
    }

    #[test]
    fn good_reduction_is_zero() {
        let pic = ClusterPicture::new(6, vec![root(6, r(0, 1))], 0).unwrap();
        let t = tame_exponent(&pic, &InertiaAction::trivial(&pic), 2).unwrap();
        assert_eq!(t.n_tame, 0);
    }

    #[test]
    fn quintic_good_reduction_is_zero() {
        let pic = ClusterPicture::new(5, vec![root(5, r(0, 1))], 0).unwrap();
        let t = tame_exponent(&pic, &InertiaAction::trivial(&pic), 2).unwrap();
        assert_eq!((t.n_tame, t.parity_bonus), (0, 0));
    }

    #[test]
    fn single_twin_is_toric_rank_one() {
        let twin = Cluster {
            leaves: vec![0, 1],
            depth: r(1, 1),
        };
        let pic = ClusterPicture::new(6, vec![root(6, r(0, 1)), twin], 0).unwrap();
        let t = tame_exponent(&pic, &InertiaAction::trivial(&pic), 2).unwrap();
        assert_eq!(t.n_tame, 1);
    }

    #[test]
    fn lambda_singleton_is_domain_error() {
        let pic = ClusterPicture::new(6, vec![root(6, r(1, 2))], 0).unwrap();
        assert!(pic.lambda_tilde(ClusterRef::Leaf(0)).is_err());
        assert_eq!(pic.lambda_tilde(ClusterRef::Proper(0)).unwrap(), r(3, 2));
    }

    #[test]
    fn rejects_non_laminar() {
        let a = Cluster { leaves: vec![0, 1, 2], depth: r(1, 1) };
        let b = Cluster { leaves: vec![2, 3], depth: r(1, 1) };
        assert!(ClusterPicture::new(6, vec![root(6, r(0, 1)), a, b], 0).is_err());
        let c = Cluster { leaves: vec![0, 1], depth: r(-1, 1) };
        assert!(ClusterPicture::new(6, vec![root(6, r(0, 1)), c], 0).is_err());
    }
}
