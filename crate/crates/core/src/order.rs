//! Finite relations, pre-orders, posets, strongly connected condensation and
//! down-set lattices over dense index sets `0..n`.

use crate::error::{Error, Result};
use std::collections::HashMap;

/// Fixed-length bit set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = BitSet::new(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Finite binary relation on `0..n` with set semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Relation {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::invalid(format!("pair ({a},{b}) out of range for {n} elements")));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Relation { n, pairs })
    }

    pub fn empty(n: usize) -> Self {
        Relation { n, pairs: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.binary_search(&(a, b)).is_ok()
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.pairs {
            adj[a].push(b);
        }
        adj
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        let n = self.n.max(other.n);
        Relation::new(n, self.pairs.iter().chain(&other.pairs).copied())
    }
}

/// Strongly connected components in completion order of Tarjan's algorithm:
/// every edge between distinct components points from a later component to an
/// earlier one, so the list is a reverse topological order of the condensation.
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let v = top.0;
            if let Some(&w) = adj[v].get(top.1) {
                top.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

/// Reflexive and transitive relation stored as dense up-set and down-set rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreOrder {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl PreOrder {
    fn from_up(up: Vec<BitSet>) -> Self {
        let n = up.len();
        let mut down = vec![BitSet::new(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        PreOrder { up, down }
    }

    /// Accepts `r` only if it is already reflexive and transitive.
    pub fn try_from_relation(r: &Relation) -> Result<Self> {
        let closed = closure_trans_refl(r);
        if closed.pair_count() != r.pairs().len() {
            return Err(Error::invalid("relation is not reflexive and transitive"));
        }
        Ok(closed)
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn down(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn pair_count(&self) -> usize {
        self.up.iter().map(BitSet::count).sum()
    }

    pub fn to_relation(&self) -> Relation {
        let pairs = self
            .up
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
            .collect();
        Relation { n: self.size(), pairs }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.size()).all(|a| {
            let mut both = self.up[a].clone();
            both.intersect_with(&self.down[a]);
            both.count() == 1
        })
    }

    /// Smallest down-closed superset of `s`.
    pub fn down_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.size());
        for a in s.iter() {
            out.union_with(&self.down[a]);
        }
        out
    }

    /// Smallest up-closed superset of `s`.
    pub fn up_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.size());
        for a in s.iter() {
            out.union_with(&self.up[a]);
        }
        out
    }
}

/// Smallest reflexive, transitive relation containing `r`.
pub fn closure_trans_refl(r: &Relation) -> PreOrder {
    let n = r.size();
    let adj = r.successors();
    let comps = tarjan_scc(&adj);
    let mut comp_of = vec![0usize; n];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut comp_up: Vec<BitSet> = Vec::with_capacity(comps.len());
    for (c, members) in comps.iter().enumerate() {
        let mut row = BitSet::from_indices(n, members.iter().copied());
        for &v in members {
            for &w in &adj[v] {
                let cw = comp_of[w];
                if cw != c {
                    row.union_with(&comp_up[cw]);
                }
            }
        }
        comp_up.push(row);
    }
    PreOrder::from_up((0..n).map(|v| comp_up[comp_of[v]].clone()).collect())
}

/// Antisymmetric pre-order together with its covering relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    order: PreOrder,
    hasse: Vec<(usize, usize)>,
}

impl Poset {
    pub fn try_from_preorder(order: PreOrder) -> Result<Self> {
        if !order.is_antisymmetric() {
            return Err(Error::invalid("pre-order is not antisymmetric"));
        }
        let n = order.size();
        let mut hasse = Vec::new();
        for a in 0..n {
            let mut strict = order.up[a].clone();
            strict.remove(a);
            let mut covers = strict.clone();
            for c in strict.iter() {
                let mut above = order.up[c].clone();
                above.remove(c);
                covers.difference_with(&above);
            }
            hasse.extend(covers.iter().map(|b| (a, b)));
        }
        Ok(Poset { order, hasse })
    }

    /// Poset generated by an acyclic edge list; covers are read off the edges.
    pub fn from_dag(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let r = Relation::new(n, edges.iter().copied())?;
        let order = closure_trans_refl(&r);
        if !order.is_antisymmetric() {
            return Err(Error::invalid("edge list contains a cycle"));
        }
        let succ = r.successors();
        let mut hasse = Vec::new();
        for (a, list) in succ.iter().enumerate() {
            for &b in list {
                if b == a {
                    continue;
                }
                let implied = list.iter().any(|&c| c != b && c != a && order.le(c, b));
                if !implied {
                    hasse.push((a, b));
                }
            }
        }
        hasse.sort_unstable();
        hasse.dedup();
        Ok(Poset { order, hasse })
    }

    pub fn from_relation(r: &Relation) -> Result<Self> {
        Poset::try_from_preorder(closure_trans_refl(r))
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order.le(a, b)
    }

    pub fn order(&self) -> &PreOrder {
        &self.order
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        self.hasse.iter().filter(|e| e.0 == a).map(|e| e.1).collect()
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Poset {
        let n = self.size();
        let mut up = vec![BitSet::new(n); n];
        for a in 0..n {
            for b in self.order.up[a].iter() {
                up[perm[a]].insert(perm[b]);
            }
        }
        let mut hasse: Vec<_> = self.hasse.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        hasse.sort_unstable();
        Poset { order: PreOrder::from_up(up), hasse }
    }

    /// Induced sub-poset on `keep` (in the given order); covers are recomputed.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let k = keep.len();
        let up = keep
            .iter()
            .map(|&a| BitSet::from_indices(k, (0..k).filter(|&j| self.le(a, keep[j]))))
            .collect();
        Poset::try_from_preorder(PreOrder::from_up(up)).expect("induced order is antisymmetric")
    }

    pub fn is_down_set(&self, s: &BitSet) -> bool {
        self.order.down_closure(s).is_subset(s)
    }
}

/// Partition of a ground set into strongly connected classes with the induced
/// order on classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPoset {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub order: Poset,
}

impl SccPoset {
    /// Relabels class `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> SccPoset {
        let mut classes = vec![Vec::new(); self.classes.len()];
        for (i, members) in self.classes.iter().enumerate() {
            classes[perm[i]] = members.clone();
        }
        let class_of = self.class_of.iter().map(|&c| perm[c]).collect();
        SccPoset { classes, class_of, order: self.order.permute(perm) }
    }
}

/// Strongly connected components of `r` ordered by reachability, classes
/// numbered by their minimal member.
pub fn scc_condense(r: &Relation) -> SccPoset {
    let n = r.size();
    let adj = r.successors();
    let mut classes = tarjan_scc(&adj);
    classes.sort_unstable_by_key(|c| c[0]);
    let mut class_of = vec![0usize; n];
    for (c, members) in classes.iter().enumerate() {
        for &v in members {
            class_of[v] = c;
        }
    }
    let mut edges: Vec<(usize, usize)> = r
        .pairs()
        .iter()
        .map(|&(a, b)| (class_of[a], class_of[b]))
        .filter(|(a, b)| a != b)
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let order = Poset::from_dag(classes.len(), &edges).expect("condensation is acyclic");
    SccPoset { classes, class_of, order }
}

pub const DOWN_SET_LIMIT: usize = 20;

/// All down-sets of `p`, enumerated in increasing bitmask order.
pub fn down_sets(p: &Poset) -> Result<Vec<Vec<usize>>> {
    let n = p.size();
    if n > DOWN_SET_LIMIT {
        return Err(Error::invalid(format!(
            "down-set enumeration limited to {DOWN_SET_LIMIT} elements, got {n}"
        )));
    }
    let below: Vec<u32> = (0..n)
        .map(|a| p.order.down(a).iter().fold(0u32, |m, b| m | 1 << b))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let closed = (0..n).all(|a| mask >> a & 1 == 0 || below[a] & !mask == 0);
        if closed {
            out.push((0..n).filter(|&a| mask >> a & 1 == 1).collect());
        }
    }
    Ok(out)
}

/// Number of down-sets, by memoised splitting on one element at a time.
pub fn count_down_sets(p: &Poset) -> Result<u128> {
    let n = p.size();
    if n > 128 {
        return Err(Error::invalid(format!("down-set counting limited to 128 elements, got {n}")));
    }
    let to_mask = |s: &BitSet| s.iter().fold(0u128, |m, b| m | 1u128 << b);
    let up: Vec<u128> = (0..n).map(|a| to_mask(p.order.up(a))).collect();
    let down: Vec<u128> = (0..n).map(|a| to_mask(p.order.down(a))).collect();
    fn count(rest: u128, up: &[u128], down: &[u128], memo: &mut HashMap<u128, u128>) -> u128 {
        if rest == 0 {
            return 1;
        }
        if let Some(&v) = memo.get(&rest) {
            return v;
        }
        let x = rest.trailing_zeros() as usize;
        let without = count(rest & !up[x], up, down, memo);
        let with = count(rest & !down[x], up, down, memo);
        memo.insert(rest, without + with);
        without + with
    }
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    Ok(count(full, &up, &down, &mut HashMap::new()))
}

/// Join-irreducible members of a finite lattice of sets, with their inclusion order.
#[derive(Clone, Debug)]
pub struct JoinIrreducibles {
    /// Indices into the input lattice.
    pub members: Vec<usize>,
    pub poset: Poset,
}

fn normalise_sets(lattice: &[Vec<usize>]) -> Result<Vec<BitSet>> {
    let universe = lattice.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
    let sets: Vec<BitSet> =
        lattice.iter().map(|s| BitSet::from_indices(universe, s.iter().copied())).collect();
    for i in 0..sets.len() {
        for j in 0..i {
            if sets[i] == sets[j] {
                return Err(Error::invalid("lattice lists a set twice"));
            }
        }
    }
    Ok(sets)
}

/// Elements of a lattice of sets with exactly one lower cover, ordered by inclusion.
pub fn join_irreducibles(lattice: &[Vec<usize>]) -> Result<JoinIrreducibles> {
    let sets = normalise_sets(lattice)?;
    if !sets.iter().any(BitSet::is_empty) {
        return Err(Error::invalid("lattice of sets must contain the empty set"));
    }
    let index_of = |s: &BitSet| sets.iter().position(|t| t == s);
    for a in &sets {
        for b in &sets {
            let mut u = a.clone();
            u.union_with(b);
            let mut i = a.clone();
            i.intersect_with(b);
            if index_of(&u).is_none() || index_of(&i).is_none() {
                return Err(Error::invalid("family is not closed under union and intersection"));
            }
        }
    }
    let strict_sub = |a: &BitSet, b: &BitSet| a != b && a.is_subset(b);
    let mut members = Vec::new();
    for (x, sx) in sets.iter().enumerate() {
        let lower: Vec<&BitSet> = sets.iter().filter(|s| strict_sub(s, sx)).collect();
        let covers = lower
            .iter()
            .filter(|y| !lower.iter().any(|z| strict_sub(y, z)))
            .count();
        if covers == 1 {
            members.push(x);
        }
    }
    let k = members.len();
    let pairs = (0..k).flat_map(|i| (0..k).map(move |j| (i, j)));
    let pairs = pairs.filter(|&(i, j)| sets[members[i]].is_subset(&sets[members[j]]));
    let poset = Poset::from_relation(&Relation::new(k, pairs)?)?;
    Ok(JoinIrreducibles { members, poset })
}

/// Lattice of sets recovered from its join-irreducibles: the union over each
/// down-set of the join-irreducible poset.
pub fn birkhoff_reconstruct(lattice: &[Vec<usize>], ji: &JoinIrreducibles) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = down_sets(&ji.poset)?
        .into_iter()
        .map(|d| {
            let mut u: Vec<usize> =
                d.iter().flat_map(|&i| lattice[ji.members[i]].iter().copied()).collect();
            u.sort_unstable();
            u.dedup();
            u
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Principal down-set and up-set of `a`.
pub fn principal_sets(p: &PreOrder, a: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if a >= p.size() {
        return Err(Error::invalid(format!("element {a} out of range")));
    }
    Ok((p.down(a).to_vec(), p.up(a).to_vec()))
}

/// Whether `a, c ∈ s` and `a ≤ b ≤ c` force `b ∈ s`.
pub fn is_convex(p: &Poset, s: &[usize]) -> bool {
    let set = BitSet::from_indices(p.size(), s.iter().copied());
    let mut between = p.order.down_closure(&set);
    between.intersect_with(&p.order.up_closure(&set));
    between.is_subset(&set)
}

/// Order isomorphisms `f: a → b` preserving labels, up to `limit` of them.
pub fn labeled_isomorphisms<L: PartialEq>(
    a: &Poset,
    la: &[L],
    b: &Poset,
    lb: &[L],
    limit: usize,
) -> Vec<Vec<usize>> {
    let n = a.size();
    if n != b.size() || la.len() != n || lb.len() != n {
        return Vec::new();
    }
    let inv = |p: &Poset, x: usize| {
        let covers_up = p.hasse().iter().filter(|e| e.0 == x).count();
        let covers_down = p.hasse().iter().filter(|e| e.1 == x).count();
        (p.order().up(x).count(), p.order().down(x).count(), covers_up, covers_down)
    };
    let ia: Vec<_> = (0..n).map(|x| inv(a, x)).collect();
    let ib: Vec<_> = (0..n).map(|x| inv(b, x)).collect();
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| ia[x] == ib[y] && la[x] == lb[y]).collect())
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (cands[x].len(), x));

    struct Search<'s> {
        a: &'s Poset,
        b: &'s Poset,
        cands: &'s [Vec<usize>],
        order: &'s [usize],
        map: Vec<usize>,
        used: Vec<bool>,
        found: Vec<Vec<usize>>,
        limit: usize,
    }
    fn go(s: &mut Search<'_>, depth: usize) {
        if s.found.len() >= s.limit {
            return;
        }
        if depth == s.order.len() {
            s.found.push(s.map.clone());
            return;
        }
        let x = s.order[depth];
        for ci in 0..s.cands[x].len() {
            let y = s.cands[x][ci];
            if s.used[y] {
                continue;
            }
            let consistent = s.order[..depth].iter().all(|&w| {
                let v = s.map[w];
                s.a.le(w, x) == s.b.le(v, y) && s.a.le(x, w) == s.b.le(y, v)
            });
            if !consistent {
                continue;
            }
            s.map[x] = y;
            s.used[y] = true;
            go(s, depth + 1);
            s.used[y] = false;
        }
    }
    let mut s = Search {
        a,
        b,
        cands: &cands,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        limit,
    };
    go(&mut s, 0);
    s.found
}
