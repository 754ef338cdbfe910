//! Canonical labeling of a coordinate/word incidence graph by
//! individualization-refinement.
//!
//! Vertices `0..n` are coordinates, the rest are words. Colors are always
//! canonical (ranks of invariant keys), refinement is 1-dimensional
//! Weisfeiler–Leman to a fixed point, and the search tree branches on the
//! smallest non-singleton coordinate cell. A leaf is ranked by its trace and
//! then by its certificate; the least leaf is canonical. Subtrees whose trace
//! already exceeds the best leaf are cut, and children in one orbit of the
//! automorphisms found so far (those fixing the current path) are explored
//! once.

use std::cmp::Ordering;

/// Incidence structure on `n` coordinates and a list of word supports.
pub(crate) struct Incidence {
    n: usize,
    adj: Vec<Vec<u32>>,
    initial: Vec<u32>,
}

impl Incidence {
    /// `word_classes[i]` is an invariant class (e.g. the weight) of word `i`.
    pub(crate) fn new(n: usize, words: &[Vec<usize>], word_classes: &[u32]) -> Self {
        let mut adj = vec![Vec::new(); n + words.len()];
        for (w, supp) in words.iter().enumerate() {
            let wv = (n + w) as u32;
            for &c in supp {
                adj[c].push(wv);
                adj[n + w].push(c as u32);
            }
        }
        let mut initial = vec![0u32; n];
        initial.extend(word_classes.iter().map(|&c| c + 1));
        Incidence { n, adj, initial }
    }
}

/// FNV-1a, fixed so traces are stable across builds.
struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn u32(&mut self, x: u32) {
        for b in x.to_le_bytes() {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
}

/// Refines `colors` to the coarsest equitable partition finer than it, with
/// canonical color names. Appends one hash per round to `trace`.
fn refine(g: &Incidence, colors: &mut Vec<u32>, trace: &mut Vec<u64>) {
    let v = colors.len();
    let mut ncolors = count_distinct(colors);
    let mut sigs: Vec<Vec<u32>> = vec![Vec::new(); v];
    let mut order: Vec<u32> = (0..v as u32).collect();
    loop {
        for (x, sig) in sigs.iter_mut().enumerate() {
            sig.clear();
            sig.extend(g.adj[x].iter().map(|&y| colors[y as usize]));
            sig.sort_unstable();
        }
        order.sort_unstable_by(|&a, &b| {
            let (a, b) = (a as usize, b as usize);
            colors[a].cmp(&colors[b]).then_with(|| sigs[a].cmp(&sigs[b]))
        });
        let mut next = vec![0u32; v];
        let mut h = Fnv::new();
        let mut rank = 0u32;
        let mut run = 0u32;
        for i in 0..v {
            let x = order[i] as usize;
            if i > 0 {
                let p = order[i - 1] as usize;
                if colors[p] != colors[x] || sigs[p] != sigs[x] {
                    h.u32(run);
                    rank += 1;
                    run = 0;
                }
            }
            if run == 0 {
                h.u32(colors[x]);
                h.u32(sigs[x].len() as u32);
                for &c in &sigs[x] {
                    h.u32(c);
                }
            }
            run += 1;
            next[x] = rank;
        }
        h.u32(run);
        trace.push(h.0);
        *colors = next;
        let after = rank as usize + 1;
        if after == ncolors {
            break;
        }
        ncolors = after;
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Gives `x` its own color just above the rest of its cell.
fn individualize(colors: &[u32], x: usize) -> Vec<u32> {
    colors
        .iter()
        .enumerate()
        .map(|(i, &c)| 2 * c + (i == x) as u32)
        .collect()
}

/// Smallest non-singleton coordinate cell (ties: smallest color), as its
/// members in increasing order.
fn target_cell(n: usize, colors: &[u32]) -> Option<Vec<usize>> {
    let mut by_color: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for (i, &c) in colors[..n].iter().enumerate() {
        by_color.entry(c).or_default().push(i);
    }
    by_color
        .into_values()
        .filter(|cell| cell.len() > 1)
        .min_by_key(|cell| cell.len())
}

/// Result of canonical labeling.
pub(crate) struct Labeling {
    /// Coordinate `i` goes to position `perm[i]`.
    pub perm: Vec<usize>,
    #[cfg_attr(not(test), allow(dead_code))]
    pub cert: Vec<u8>,
    /// Automorphisms of the structure found on the way (coordinate maps).
    pub automorphisms: Vec<Vec<usize>>,
    pub leaves: usize,
}

struct Search<'a, F> {
    g: &'a Incidence,
    certify: F,
    best: Option<(Vec<Vec<u64>>, Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
    leaves: usize,
}

/// Canonical coordinate order of `g`; `certify(perm)` produces the byte
/// certificate of the object relabeled by `perm`, and equal certificates of
/// two leaves must mean the relabelings differ by an automorphism.
pub(crate) fn canonical_labeling<F>(g: &Incidence, certify: F) -> Labeling
where
    F: FnMut(&[usize]) -> Vec<u8>,
{
    let mut colors = g.initial.clone();
    let mut level = Vec::new();
    refine(g, &mut colors, &mut level);
    let mut s = Search { g, certify, best: None, autos: Vec::new(), leaves: 0 };
    let mut path = Vec::new();
    s.visit(colors, vec![level], &mut path);
    let (_, cert, perm) = s.best.expect("search reaches a leaf");
    Labeling { perm, cert, automorphisms: s.autos, leaves: s.leaves }
}

impl<F> Search<'_, F>
where
    F: FnMut(&[usize]) -> Vec<u8>,
{
    /// Whether a node with this trace can still lead to the best leaf.
    fn worth_visiting(&self, trace: &[Vec<u64>]) -> bool {
        let Some((best, _, _)) = &self.best else {
            return true;
        };
        let m = trace.len().min(best.len());
        match trace[..m].cmp(&best[..m]) {
            Ordering::Less => true,
            Ordering::Greater => false,
            // a longer trace with an equal prefix sorts after
            Ordering::Equal => trace.len() <= best.len(),
        }
    }

    fn visit(&mut self, colors: Vec<u32>, trace: Vec<Vec<u64>>, path: &mut Vec<usize>) {
        if !self.worth_visiting(&trace) {
            return;
        }
        let n = self.g.n;
        let Some(cell) = target_cell(n, &colors) else {
            self.leaf(&colors, trace);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &x in &cell {
            if !explored.is_empty() && self.same_orbit(path, &explored, x) {
                continue;
            }
            explored.push(x);
            let mut child = individualize(&colors, x);
            let mut level = Vec::new();
            refine(self.g, &mut child, &mut level);
            let mut t = trace.clone();
            t.push(level);
            path.push(x);
            self.visit(child, t, path);
            path.pop();
        }
    }

    fn leaf(&mut self, colors: &[u32], trace: Vec<Vec<u64>>) {
        self.leaves += 1;
        let n = self.g.n;
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&i| colors[i]);
        let mut perm = vec![0; n];
        for (pos, &i) in idx.iter().enumerate() {
            perm[i] = pos;
        }
        let cert = (self.certify)(&perm);
        match &self.best {
            None => self.best = Some((trace, cert, perm)),
            Some((bt, bc, bp)) => match (trace.as_slice(), cert.as_slice()).cmp(&(bt.as_slice(), bc.as_slice())) {
                Ordering::Less => self.best = Some((trace, cert, perm)),
                Ordering::Equal => {
                    // perm then bp⁻¹ maps the structure to itself
                    let mut inv = vec![0; n];
                    for (i, &p) in bp.iter().enumerate() {
                        inv[p] = i;
                    }
                    let gamma: Vec<usize> = perm.iter().map(|&p| inv[p]).collect();
                    if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                        self.autos.push(gamma);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }

    /// Is `x` in the orbit of an explored child under the automorphisms that
    /// fix every vertex on `path`?
    fn same_orbit(&self, path: &[usize], explored: &[usize], x: usize) -> bool {
        let n = self.g.n;
        let gens: Vec<&Vec<usize>> = self
            .autos
            .iter()
            .filter(|a| path.iter().all(|&p| a[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for a in gens {
            for i in 0..n {
                let (r1, r2) = (find(&mut parent, i), find(&mut parent, a[i]));
                if r1 != r2 {
                    parent[r1.max(r2)] = r1.min(r2);
                }
            }
        }
        let rx = find(&mut parent, x);
        explored.iter().any(|&e| find(&mut parent, e) == rx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_words(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| vec![i, (i + 1) % n]).collect()
    }

    #[test]
    fn refinement_is_a_fixed_point() {
        let words = vec![vec![0, 1], vec![1, 2], vec![3]];
        let g = Incidence::new(4, &words, &[0, 0, 0]);
        let mut colors = g.initial.clone();
        let mut t = Vec::new();
        refine(&g, &mut colors, &mut t);
        let before = colors.clone();
        let mut t2 = Vec::new();
        refine(&g, &mut colors, &mut t2);
        assert_eq!(before, colors);
        // coordinate 1 is the only one in two words
        assert!(colors[..4].iter().filter(|&&c| c == colors[1]).count() == 1);
    }

    #[test]
    fn relabeled_cycles_get_the_same_certificate() {
        let n = 9;
        let words = cycle_words(n);
        let edges = |perm: &[usize], words: &[Vec<usize>]| {
            let mut e: Vec<Vec<usize>> = words
                .iter()
                .map(|w| {
                    let mut v: Vec<usize> = w.iter().map(|&c| perm[c]).collect();
                    v.sort();
                    v
                })
                .collect();
            e.sort();
            e.into_iter().flatten().map(|c| c as u8).collect::<Vec<u8>>()
        };
        let g = Incidence::new(n, &words, &vec![0; n]);
        let a = canonical_labeling(&g, |p| edges(p, &words));
        // a shuffled copy
        let sigma = [4, 7, 1, 0, 8, 2, 6, 3, 5];
        let shuffled: Vec<Vec<usize>> = words.iter().map(|w| w.iter().map(|&c| sigma[c]).collect()).collect();
        let g2 = Incidence::new(n, &shuffled, &vec![0; n]);
        let b = canonical_labeling(&g2, |p| edges(p, &shuffled));
        assert_eq!(a.cert, b.cert);
        // the dihedral group of order 18 makes the tree collapse
        assert!(a.leaves <= 2 * n);
        assert!(!a.automorphisms.is_empty());
    }
}
