//! One-block codes between SFTs: factor verification, the degree `d*`, magic
//! words and symbols, closing properties with minimal delay, and fibers over
//! finitely presented points.
//!
//! The degree is computed exactly with a forward/backward subset automaton:
//! for an admissible codomain word `w` and position `i`, the symbols a
//! preimage can show at position `i` are exactly the intersection of the
//! forward-reachable set (paths labeled `w[..=i]`) and the backward
//! co-reachable set (paths labeled `w[i..]`), so the global minimum ranges
//! over finitely many subset pairs even though words are unbounded.
//!
//! Closing properties are decided on the synchronized pair graph: vertices
//! are ordered pairs of domain symbols with equal labels, edges are pairs of
//! transitions with equal labels. A code fails to be left-closing exactly
//! when some off-diagonal pair has unbounded synchronized history and an edge
//! into the diagonal; the minimal delay is read off the longest such history
//! otherwise.

use crate::error::SftError;
use crate::limits::Limits;
use crate::point::EventuallyPeriodicPoint;
use crate::sft::{Sft, Word};
use crate::Result;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A one-block code induced by a symbol map that respects transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneBlockCode {
    domain: Sft,
    codomain: Sft,
    phi: Vec<u16>,
}

/// Exact degree data: the minimum `d*(w, i)` together with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub d_star: usize,
    pub witness_word: Word,
    /// 1-based position inside the witness attaining the minimum.
    pub witness_index: usize,
    pub per_position_counts: Vec<usize>,
}

/// Left- or right-closing verdict. Exactly one of `delay` and
/// `counterexample` is present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosingReport {
    pub closing: bool,
    pub delay: Option<u32>,
    pub counterexample: Option<(EventuallyPeriodicPoint, EventuallyPeriodicPoint)>,
}

/// Surjectivity verdict with the shortest missing codomain word when the
/// image is a proper subshift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub onto: bool,
    pub missing_word: Option<Word>,
}

/// Result of recoding toward a magic symbol: the recoded code together with
/// the one-block conjugacies decoding each side back to the original.
#[derive(Debug, Clone)]
pub struct MagicRecode {
    pub code: OneBlockCode,
    pub magic: u16,
    pub domain_decode: OneBlockCode,
    pub codomain_decode: OneBlockCode,
}

/// Block-encode a point of `base` into the `m`-block presentation produced
/// by [`Sft::higher_block`]: coordinate `n` of the image reads the window
/// `x[n..n+m-1]`.
pub fn block_encode_point(
    base: &Sft,
    m: u32,
    block_sft: &Sft,
    x: &EventuallyPeriodicPoint,
    limits: &Limits,
) -> Result<EventuallyPeriodicPoint> {
    x.validate(base)?;
    if m == 1 {
        return Ok(x.clone());
    }
    let blocks = base.words(m, limits)?;
    let index: BTreeMap<Vec<u16>, u16> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.syms.clone(), i as u16))
        .collect();
    if block_sft.len() != blocks.len() {
        return Err(SftError::DomainMismatch);
    }
    let block_at = |n: i64| -> Result<u16> {
        let w: Vec<u16> = (n..n + m as i64).map(|k| x.get(k)).collect();
        index
            .get(&w)
            .copied()
            .ok_or_else(|| SftError::PointMismatch("window is not admissible".into()))
    };
    let (c_start, c_end) = x.center_span();
    let pl = x.left_cycle.len() as i64;
    let pr = x.right_cycle.len() as i64;
    // windows starting at n <= c_start - m lie in the left cycle; windows
    // starting at n >= c_end lie in the right cycle
    let new_center_start = c_start - m as i64 + 1;
    let left: Vec<u16> = (new_center_start - pl..new_center_start)
        .map(block_at)
        .collect::<Result<_>>()?;
    let center: Vec<u16> = (new_center_start..c_end).map(block_at).collect::<Result<_>>()?;
    let right: Vec<u16> = (c_end..c_end + pr).map(block_at).collect::<Result<_>>()?;
    let z = EventuallyPeriodicPoint::new(left, center, right, -new_center_start);
    z.validate(block_sft)?;
    Ok(z)
}

impl OneBlockCode {
    /// Validate the symbol map: total on the domain alphabet and compatible
    /// with the transition matrices.
    pub fn new(domain: Sft, codomain: Sft, phi: Vec<u16>) -> Result<Self> {
        if phi.len() != domain.len() {
            return Err(SftError::DomainMismatch);
        }
        for &b in &phi {
            if b as usize >= codomain.len() {
                return Err(SftError::UnknownSymbol(format!("#{b}")));
            }
        }
        for i in 0..domain.len() as u16 {
            for j in domain.out_neighbors(i) {
                if !codomain.allows(phi[i as usize], phi[j as usize]) {
                    return Err(SftError::TransitionNotRespected {
                        from: domain.symbol(i).to_string(),
                        to: domain.symbol(j).to_string(),
                    });
                }
            }
        }
        Ok(OneBlockCode {
            domain,
            codomain,
            phi,
        })
    }

    pub fn identity(sft: Sft) -> Self {
        let phi = (0..sft.len() as u16).collect();
        OneBlockCode {
            domain: sft.clone(),
            codomain: sft,
            phi,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain
            && self.phi.iter().enumerate().all(|(i, &b)| i as u16 == b)
    }

    pub fn domain(&self) -> &Sft {
        &self.domain
    }

    pub fn codomain(&self) -> &Sft {
        &self.codomain
    }

    pub fn phi(&self) -> &[u16] {
        &self.phi
    }

    pub fn apply_symbol(&self, s: u16) -> u16 {
        self.phi[s as usize]
    }

    pub fn preimage_symbols(&self, b: u16) -> Vec<u16> {
        (0..self.domain.len() as u16)
            .filter(|&u| self.phi[u as usize] == b)
            .collect()
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        Word::new(w.syms.iter().map(|&s| self.apply_symbol(s)).collect())
    }

    /// Symbolwise image of a point; the presentation shape and phase carry
    /// over unchanged.
    pub fn apply_point(&self, x: &EventuallyPeriodicPoint) -> EventuallyPeriodicPoint {
        x.map_symbols(|s| self.apply_symbol(s))
    }

    /// The same symbol map between the reversed presentations.
    pub fn reversed(&self) -> OneBlockCode {
        OneBlockCode {
            domain: self.domain.reverse(),
            codomain: self.codomain.reverse(),
            phi: self.phi.clone(),
        }
    }

    /// Composition `other . self` (apply `self` first) when
    /// `self.codomain == other.domain`.
    pub fn compose(&self, other: &OneBlockCode) -> Result<OneBlockCode> {
        if self.codomain != other.domain {
            return Err(SftError::DomainMismatch);
        }
        OneBlockCode::new(
            self.domain.clone(),
            other.codomain.clone(),
            self.phi
                .iter()
                .map(|&b| other.apply_symbol(b))
                .collect(),
        )
    }

    fn check_alphabet(&self, limits: &Limits) -> Result<()> {
        let size = self.domain.len().max(self.codomain.len());
        if size > limits.max_alphabet {
            return Err(SftError::AlphabetLimit {
                size,
                cap: limits.max_alphabet,
            });
        }
        Ok(())
    }

    /// Step of the forward subset automaton: symbols mapping to `b` and
    /// reachable from `mask` in one domain transition.
    fn step_forward(&self, mask: u32, b: u16) -> u32 {
        let mut out = 0u32;
        for v in self.preimage_symbols(b) {
            if (0..self.domain.len() as u16)
                .any(|u| mask & (1 << u) != 0 && self.domain.allows(u, v))
            {
                out |= 1 << v;
            }
        }
        out
    }

    /// Decide whether the induced sofic image equals the codomain, by
    /// determinizing the labeled domain graph and looking for an admissible
    /// codomain word whose follower set dies.
    pub fn is_factor_onto(&self, limits: &Limits) -> Result<FactorReport> {
        self.check_alphabet(limits)?;
        // state: (last codomain symbol, subset of domain symbols); parents
        // kept to reconstruct a shortest missing word.
        let mut parent: BTreeMap<(u16, u32), Option<(u16, u32)>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for b in 0..self.codomain.len() as u16 {
            let mask = self
                .preimage_symbols(b)
                .into_iter()
                .fold(0u32, |m, v| m | 1 << v);
            let state = (b, mask);
            if !parent.contains_key(&state) {
                parent.insert(state, None);
                queue.push_back(state);
            }
        }
        while let Some((b, mask)) = queue.pop_front() {
            if mask == 0 {
                // reconstruct the offending word
                let mut word = vec![b];
                let mut cur = (b, mask);
                while let Some(Some(prev)) = parent.get(&cur) {
                    word.push(prev.0);
                    cur = *prev;
                }
                word.reverse();
                return Ok(FactorReport {
                    onto: false,
                    missing_word: Some(Word::new(word)),
                });
            }
            for b2 in self.codomain.out_neighbors(b) {
                let next = (b2, self.step_forward(mask, b2));
                if !parent.contains_key(&next) {
                    parent.insert(next, Some((b, mask)));
                    queue.push_back(next);
                }
            }
        }
        Ok(FactorReport {
            onto: true,
            missing_word: None,
        })
    }

    /// Forward-reachable subset states, grouped by their codomain symbol,
    /// each with a witness word (shortest, ending at that symbol).
    fn reachable_subsets(&self) -> BTreeMap<(u16, u32), Vec<u16>> {
        let mut words: BTreeMap<(u16, u32), Vec<u16>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for b in 0..self.codomain.len() as u16 {
            let mask = self
                .preimage_symbols(b)
                .into_iter()
                .fold(0u32, |m, v| m | 1 << v);
            let state = (b, mask);
            if !words.contains_key(&state) {
                words.insert(state, vec![b]);
                queue.push_back(state);
            }
        }
        while let Some(state) = queue.pop_front() {
            let (b, mask) = state;
            let w = words[&state].clone();
            for b2 in self.codomain.out_neighbors(b) {
                let next = (b2, self.step_forward(mask, b2));
                if !words.contains_key(&next) {
                    let mut w2 = w.clone();
                    w2.push(b2);
                    words.insert(next, w2);
                    queue.push_back(next);
                }
            }
        }
        words
    }

    /// Exact degree `d*` with witness, via the subset-pair search.
    pub fn degree_star(&self, limits: &Limits) -> Result<DegreeReport> {
        self.check_alphabet(limits)?;
        let (dom_mix, _) = self.domain.is_mixing();
        let (cod_mix, _) = self.codomain.is_mixing();
        if !dom_mix || !cod_mix {
            return Err(SftError::NotMixing);
        }
        let factor = self.is_factor_onto(limits)?;
        if !factor.onto {
            return Err(SftError::NotFactor {
                missing: factor
                    .missing_word
                    .map(|w| w.names(&self.codomain))
                    .unwrap_or_default(),
            });
        }
        let fwd = self.reachable_subsets();
        let bwd = self.reversed().reachable_subsets();
        let mut best: Option<(usize, Vec<u16>, usize)> = None;
        for (&(bf, lmask), wf) in &fwd {
            for (&(bb, rmask), wb) in &bwd {
                if bf != bb {
                    continue;
                }
                let count = (lmask & rmask).count_ones() as usize;
                let better = match &best {
                    None => true,
                    Some((c, _, _)) => count < *c,
                };
                if better {
                    // witness: forward word then reversed backward word,
                    // overlapping at the shared symbol.
                    let mut word = wf.clone();
                    let mut suffix = wb.clone();
                    suffix.reverse();
                    word.extend_from_slice(&suffix[1..]);
                    best = Some((count, word, wf.len()));
                }
            }
        }
        let (d_star, word, index) = best.expect("factor code has at least one subset pair");
        debug_assert!(d_star >= 1);
        let witness = Word::new(word);
        debug_assert!(witness.validate(&self.codomain).is_ok());
        let per_position_counts = self.position_counts(&witness);
        debug_assert_eq!(per_position_counts[index - 1], d_star);
        Ok(DegreeReport {
            d_star,
            witness_word: witness,
            witness_index: index,
            per_position_counts,
        })
    }

    /// `d*(w, i)` for every position of an admissible codomain word.
    pub fn position_counts(&self, w: &Word) -> Vec<usize> {
        let n = w.len();
        let mut fwd = vec![0u32; n];
        let mut cur = self
            .preimage_symbols(w.syms[0])
            .into_iter()
            .fold(0u32, |m, v| m | 1 << v);
        fwd[0] = cur;
        for i in 1..n {
            cur = self.step_forward(cur, w.syms[i]);
            fwd[i] = cur;
        }
        let rev = self.reversed();
        let mut bwd = vec![0u32; n];
        let mut cur = rev
            .preimage_symbols(w.syms[n - 1])
            .into_iter()
            .fold(0u32, |m, v| m | 1 << v);
        bwd[n - 1] = cur;
        for i in (0..n - 1).rev() {
            cur = rev.step_forward(cur, w.syms[i]);
            bwd[i] = cur;
        }
        (0..n).map(|i| (fwd[i] & bwd[i]).count_ones() as usize).collect()
    }

    /// The set of domain symbols a preimage of `w` can show at each
    /// position.
    pub fn position_symbol_sets(&self, w: &Word) -> Vec<Vec<u16>> {
        let n = w.len();
        let mut fwd = vec![0u32; n];
        let mut cur = self
            .preimage_symbols(w.syms[0])
            .into_iter()
            .fold(0u32, |m, v| m | 1 << v);
        fwd[0] = cur;
        for i in 1..n {
            cur = self.step_forward(cur, w.syms[i]);
            fwd[i] = cur;
        }
        let rev = self.reversed();
        let mut cur = rev
            .preimage_symbols(w.syms[n - 1])
            .into_iter()
            .fold(0u32, |m, v| m | 1 << v);
        let mut bwd = vec![0u32; n];
        bwd[n - 1] = cur;
        for i in (0..n - 1).rev() {
            cur = rev.step_forward(cur, w.syms[i]);
            bwd[i] = cur;
        }
        (0..n)
            .map(|i| {
                let mask = fwd[i] & bwd[i];
                (0..self.domain.len() as u16)
                    .filter(|&s| mask & (1 << s) != 0)
                    .collect()
            })
            .collect()
    }

    /// A codomain symbol whose preimage has exactly `d*` symbols, if any.
    pub fn find_magic_symbol(&self, limits: &Limits) -> Result<Option<u16>> {
        let report = self.degree_star(limits)?;
        Ok(self.magic_symbol_for(report.d_star))
    }

    fn magic_symbol_for(&self, d_star: usize) -> Option<u16> {
        (0..self.codomain.len() as u16)
            .find(|&b| self.preimage_symbols(b).len() == d_star)
    }

    /// Recode toward a magic symbol: replace domain and codomain by their
    /// `|w|`-block presentations with the blockwise symbol map, then locate a
    /// magic symbol of the recoded code (trying the block of `w` first),
    /// iterating on the new degree witness if necessary. Returns the recoded
    /// code, the magic symbol, and the two decoding conjugacies.
    ///
    /// Block recoding cannot always surface a magic symbol (a code in which
    /// every codomain symbol has two preimage symbols keeps that property in
    /// every higher-block presentation); the iteration is capped and reports
    /// `MagicSymbolNotFound` honestly in that case.
    pub fn recode_to_magic_symbol(
        &self,
        w: &Word,
        index: usize,
        limits: &Limits,
    ) -> Result<MagicRecode> {
        assert!(index >= 1 && index <= w.len());
        self.recode_rounds(w, limits, 4)
    }

    fn recode_rounds(&self, w: &Word, limits: &Limits, rounds: usize) -> Result<MagicRecode> {
        let d_star = self.degree_star(limits)?.d_star;
        if w.len() == 1 {
            if self.preimage_symbols(w.syms[0]).len() != d_star {
                return Err(SftError::CertificateFailure(
                    "designated word is not magic".into(),
                ));
            }
            return Ok(MagicRecode {
                code: self.clone(),
                magic: w.syms[0],
                domain_decode: OneBlockCode::identity(self.domain.clone()),
                codomain_decode: OneBlockCode::identity(self.codomain.clone()),
            });
        }
        if rounds == 0 {
            return Err(SftError::MagicSymbolNotFound { rounds: 4 });
        }
        let m = w.len() as u32;
        let dom_blocks = self.domain.words(m, limits)?;
        let cod_blocks = self.codomain.words(m, limits)?;
        let (dom_m, dom_decode) = self.domain.higher_block(m, limits)?;
        let (cod_m, cod_decode) = self.codomain.higher_block(m, limits)?;
        let cod_index: BTreeMap<Vec<u16>, u16> = cod_blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.syms.clone(), i as u16))
            .collect();
        let phi_m: Vec<u16> = dom_blocks
            .iter()
            .map(|b| {
                let image: Vec<u16> = b.syms.iter().map(|&s| self.apply_symbol(s)).collect();
                *cod_index
                    .get(&image)
                    .expect("image of an admissible block is admissible")
            })
            .collect();
        let code_m = OneBlockCode::new(dom_m, cod_m, phi_m)?;
        let report = code_m.degree_star(limits)?;
        debug_assert_eq!(report.d_star, d_star);
        // prefer the block of w itself when it is magic
        let w_block = cod_index.get(&w.syms).copied();
        let magic = match w_block {
            Some(b) if code_m.preimage_symbols(b).len() == d_star => Some(b),
            _ => code_m.magic_symbol_for(d_star),
        };
        if let Some(b) = magic {
            return Ok(MagicRecode {
                code: code_m,
                magic: b,
                domain_decode: dom_decode,
                codomain_decode: cod_decode,
            });
        }
        // iterate on the new witness
        let inner = code_m.recode_rounds(&report.witness_word, limits, rounds - 1)?;
        Ok(MagicRecode {
            code: inner.code,
            magic: inner.magic,
            domain_decode: inner.domain_decode.compose(&dom_decode)?,
            codomain_decode: inner.codomain_decode.compose(&cod_decode)?,
        })
    }

    // -- closing analysis ---------------------------------------------------

    /// Synchronized pair graph: vertices are ordered pairs with equal labels
    /// (diagonal included), edges are synchronized transitions.
    fn pair_vertices(&self) -> Vec<(u16, u16)> {
        let n = self.domain.len() as u16;
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if self.phi[u as usize] == self.phi[v as usize] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn pair_edges(&self, from: (u16, u16)) -> Vec<(u16, u16)> {
        let mut out = Vec::new();
        for a in self.domain.out_neighbors(from.0) {
            for b in self.domain.out_neighbors(from.1) {
                if self.phi[a as usize] == self.phi[b as usize] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Left-closing verdict with the minimal delay, or an explicit pair of
    /// distinct eventually periodic points with equal images and equal
    /// forward tails.
    pub fn is_left_closing(&self) -> ClosingReport {
        let verts = self.pair_vertices();
        let index: BTreeMap<(u16, u16), usize> =
            verts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&p| {
                self.pair_edges(p)
                    .into_iter()
                    .map(|q| index[&q])
                    .collect()
            })
            .collect();
        let n = verts.len();
        // vertices lying on a cycle: nontrivial SCC or self-loop
        let scc = tarjan_scc(n, &adj);
        let mut scc_size = BTreeMap::new();
        for &c in &scc {
            *scc_size.entry(c).or_insert(0usize) += 1;
        }
        let mut on_cycle = vec![false; n];
        for v in 0..n {
            if scc_size[&scc[v]] > 1 || adj[v].contains(&v) {
                on_cycle[v] = true;
            }
        }
        // CoInf: forward closure of on-cycle vertices
        let mut coinf = on_cycle.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&v| coinf[v]).collect();
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !coinf[w] {
                    coinf[w] = true;
                    stack.push(w);
                }
            }
        }
        let is_diag = |i: usize| verts[i].0 == verts[i].1;
        let edge_into_diag: Vec<bool> = (0..n)
            .map(|v| adj[v].iter().any(|&w| is_diag(w)))
            .collect();
        // failure: an off-diagonal pair with unbounded history merging into
        // the diagonal
        if let Some(bad) = (0..n).find(|&v| !is_diag(v) && coinf[v] && edge_into_diag[v]) {
            let (x, y) = self.build_counterexample(&verts, &adj, &on_cycle, bad);
            debug_assert!(!x.same_point(&y));
            debug_assert!(self.apply_point(&x).same_point(&self.apply_point(&y)));
            return ClosingReport {
                closing: false,
                delay: None,
                counterexample: Some((x, y)),
            };
        }
        // delay: longest synchronized history ending at an off-diagonal pair
        // that merges into the diagonal, plus two. Histories of such pairs
        // stay outside CoInf, hence in an acyclic region: longest-path DP.
        let mut memo: Vec<Option<u64>> = vec![None; n];
        fn longest_into(
            v: usize,
            radj: &Vec<Vec<usize>>,
            memo: &mut Vec<Option<u64>>,
        ) -> u64 {
            if let Some(m) = memo[v] {
                return m;
            }
            memo[v] = Some(0); // cycle guard; unreachable in acyclic region
            let mut best = 0;
            for &u in &radj[v] {
                best = best.max(1 + longest_into(u, radj, memo));
            }
            memo[v] = Some(best);
            best
        }
        let mut radj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            for &w in &adj[v] {
                radj[w].push(v);
            }
        }
        let mut delay: u64 = 0;
        for v in 0..n {
            if !is_diag(v) && edge_into_diag[v] {
                debug_assert!(!coinf[v]);
                delay = delay.max(longest_into(v, &radj, &mut memo) + 2);
            }
        }
        ClosingReport {
            closing: true,
            delay: Some(delay as u32),
            counterexample: None,
        }
    }

    /// Assemble two distinct points witnessing the left-closing failure at
    /// pair `bad`: periodic history through a pair cycle, the synchronized
    /// path to `bad`, one merging step into the diagonal, then a common
    /// periodic future.
    fn build_counterexample(
        &self,
        verts: &[(u16, u16)],
        adj: &[Vec<usize>],
        on_cycle: &[bool],
        bad: usize,
    ) -> (EventuallyPeriodicPoint, EventuallyPeriodicPoint) {
        let n = verts.len();
        // BFS backwards from `bad` to some on-cycle vertex
        let mut radj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            for &w in &adj[v] {
                radj[w].push(v);
            }
        }
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::from([bad]);
        prev[bad] = bad;
        let mut anchor = bad;
        'bfs: while let Some(v) = queue.pop_front() {
            if on_cycle[v] {
                anchor = v;
                break 'bfs;
            }
            for &u in &radj[v] {
                if prev[u] == usize::MAX {
                    prev[u] = v;
                    queue.push_back(u);
                }
            }
        }
        debug_assert!(on_cycle[anchor]);
        // path anchor -> ... -> bad
        let mut path = vec![anchor];
        let mut cur = anchor;
        while cur != bad {
            cur = prev[cur];
            path.push(cur);
        }
        // cycle through anchor
        let cycle = find_cycle_through(anchor, adj);
        // merge step: bad -> some diagonal vertex
        let diag = *adj[bad]
            .iter()
            .find(|&&w| verts[w].0 == verts[w].1)
            .expect("bad pair merges into the diagonal");
        // common future: walk the domain graph from the merge vertex until a
        // vertex repeats
        let mut future = vec![verts[diag].0];
        let mut seen_at = BTreeMap::new();
        seen_at.insert(verts[diag].0, 0usize);
        let (f_transient, f_cycle) = loop {
            let last = *future.last().unwrap();
            let next = self
                .domain
                .out_neighbors(last)
                .next()
                .expect("essential graph");
            if let Some(&at) = seen_at.get(&next) {
                let transient: Vec<u16> = future[..at].to_vec();
                let cyc: Vec<u16> = future[at..].to_vec();
                break (transient, cyc);
            }
            seen_at.insert(next, future.len());
            future.push(next);
        };
        // left cycle: pair symbols around `cycle`, rotated so the point of
        // departure (anchor) is last
        let left_pairs: Vec<(u16, u16)> = cycle.iter().map(|&v| verts[v]).collect();
        // center: path from anchor (exclusive: anchor is the cycle's last
        // element) to bad, then the transient part of the future
        let center_pairs: Vec<(u16, u16)> = path[1..].iter().map(|&v| verts[v]).collect();
        let mut center_a: Vec<u16> = center_pairs.iter().map(|p| p.0).collect();
        let mut center_b: Vec<u16> = center_pairs.iter().map(|p| p.1).collect();
        center_a.extend(f_transient.iter().copied());
        center_b.extend(f_transient.iter().copied());
        let left_a: Vec<u16> = left_pairs.iter().map(|p| p.0).collect();
        let left_b: Vec<u16> = left_pairs.iter().map(|p| p.1).collect();
        // phase 0: coordinate 0 sits at the first center symbol (or the
        // future cycle when the center is empty); tails agree from the merge
        // point rightward by construction.
        let x = EventuallyPeriodicPoint::new(left_a, center_a, f_cycle.clone(), 0);
        let y = EventuallyPeriodicPoint::new(left_b, center_b, f_cycle, 0);
        debug_assert!(x.validate(&self.domain).is_ok());
        debug_assert!(y.validate(&self.domain).is_ok());
        (x, y)
    }

    /// Right-closing via the reversed code; counterexample points are
    /// reversed back into the original shift.
    pub fn is_right_closing(&self) -> ClosingReport {
        let rev = self.reversed().is_left_closing();
        ClosingReport {
            closing: rev.closing,
            delay: rev.delay,
            counterexample: rev
                .counterexample
                .map(|(x, y)| (x.reversed(), y.reversed())),
        }
    }

    // -- fibers --------------------------------------------------------------

    /// The complete finite fiber over an eventually periodic point of the
    /// codomain. Requires the code to be left-closing or right-closing.
    pub fn fiber_of_point(
        &self,
        y: &EventuallyPeriodicPoint,
        limits: &Limits,
    ) -> Result<Vec<EventuallyPeriodicPoint>> {
        y.validate(&self.codomain)?;
        let left = self.is_left_closing();
        if left.closing {
            return self.fiber_left_closing(y, limits);
        }
        let right = self.is_right_closing();
        if right.closing {
            let rev_fiber = self
                .reversed()
                .fiber_left_closing(&y.reversed(), limits)?;
            return Ok(rev_fiber.into_iter().map(|z| z.reversed()).collect());
        }
        Err(SftError::NotClosing)
    }

    fn fiber_left_closing(
        &self,
        y: &EventuallyPeriodicPoint,
        limits: &Limits,
    ) -> Result<Vec<EventuallyPeriodicPoint>> {
        let (c_start, c_end) = y.center_span();
        let _pr = y.right_cycle.len() as i64;
        let pl = y.left_cycle.len() as i64;
        let n_dom = self.domain.len() as u16;

        // Right-side fiber graph over (phase mod pr, symbol); tails of
        // preimages are its infinite paths from position c_end.
        let tails = self.right_tails(y, limits)?;

        // Valid symbols with an infinite leftward history matching y's
        // labels, per position from c_start - 1 downward they follow the
        // left-cycle fixpoint, then propagate forward through the center.
        let inf_left = self.left_history_sets(y);
        let mut valid: BTreeMap<i64, BTreeSet<u16>> = BTreeMap::new();
        {
            // position c_start - 1 is the last left-cycle position, at phase
            // pl - 1 of the history graph; propagate forward through the
            // center region.
            let mut prev: BTreeSet<u16> =
                inf_left[pl as usize - 1].iter().copied().collect();
            for n in c_start..=c_end {
                let label = y.get(n);
                let cur: BTreeSet<u16> = (0..n_dom)
                    .filter(|&v| {
                        self.phi[v as usize] == label
                            && prev.iter().any(|&u| self.domain.allows(u, v))
                    })
                    .collect();
                valid.insert(n, cur.clone());
                prev = cur;
            }
        }

        let mut fiber: Vec<EventuallyPeriodicPoint> = Vec::new();
        'tails: for (stem, cycle) in tails {
            let start_sym = *stem.first().or_else(|| cycle.first()).unwrap();
            if !valid[&c_end].contains(&start_sym) {
                continue;
            }
            // deterministic backward walk from (c_end, start_sym)
            let mut symbols_rev: Vec<u16> = vec![start_sym];
            let mut cur = start_sym;
            let mut pos = c_end;
            // through the center region
            while pos > c_start {
                let prev_valid: Vec<u16> = valid[&(pos - 1)]
                    .iter()
                    .copied()
                    .filter(|&u| self.domain.allows(u, cur))
                    .collect();
                match prev_valid.len() {
                    0 => continue 'tails,
                    1 => {}
                    _ => {
                        return Err(SftError::CertificateFailure(
                            "backward walk branched under a left-closing code".into(),
                        ))
                    }
                }
                cur = prev_valid[0];
                symbols_rev.push(cur);
                pos -= 1;
            }
            // Below the center: walk until a (phase, symbol) state repeats.
            // Index i of symbols_rev holds the symbol at position c_end - i.
            let mut seen: BTreeMap<(i64, u16), usize> = BTreeMap::new();
            let left_cycle;
            let anchor_index;
            loop {
                let phase = ((pos - 1 - c_start) % pl + pl) % pl;
                let prev_valid: Vec<u16> = inf_left[phase as usize]
                    .iter()
                    .copied()
                    .filter(|&u| self.domain.allows(u, cur))
                    .collect();
                match prev_valid.len() {
                    0 => continue 'tails,
                    1 => {}
                    _ => {
                        return Err(SftError::CertificateFailure(
                            "backward walk branched under a left-closing code".into(),
                        ))
                    }
                }
                cur = prev_valid[0];
                symbols_rev.push(cur);
                pos -= 1;
                let state = (((pos - c_start) % pl + pl) % pl, cur);
                if let Some(&at) = seen.get(&state) {
                    // periodicity established on (-inf, c_end - at]: the
                    // left cycle reads indices at..len-1 in decreasing
                    // position order
                    let mut lc: Vec<u16> =
                        symbols_rev[at..symbols_rev.len() - 1].to_vec();
                    lc.reverse();
                    left_cycle = lc;
                    anchor_index = at;
                    symbols_rev.truncate(at + 1);
                    break;
                }
                seen.insert(state, symbols_rev.len() - 1);
            }
            // anchor position: last coordinate covered by the left cycle
            let anchor_pos = c_end - anchor_index as i64;
            symbols_rev.reverse();
            // center: positions anchor_pos+1 ..= c_end come from the walk
            // (symbols_rev[1..]); the right stem continues from c_end.
            let mut center_full: Vec<u16>;
            if stem.is_empty() {
                // the right cycle itself starts at c_end
                center_full = symbols_rev[1..symbols_rev.len() - 1].to_vec();
            } else {
                center_full = symbols_rev[1..].to_vec();
                center_full.extend_from_slice(&stem[1..]);
            }
            let z = EventuallyPeriodicPoint::new(
                left_cycle,
                center_full,
                cycle.clone(),
                -(anchor_pos + 1),
            );
            if z.validate(&self.domain).is_err() {
                continue;
            }
            if !self.apply_point(&z).same_point(y) {
                continue;
            }
            if !fiber.iter().any(|w| w.same_point(&z)) {
                fiber.push(z);
            }
        }
        Ok(fiber)
    }

    /// All "stem + cycle" tails of the right-side fiber graph from position
    /// `c_end`. The stem visits distinct vertices; the cycle is entered at
    /// the stem's first repeated vertex and repeated forever. For closing
    /// codes these are exactly the tails of fiber points.
    fn right_tails(
        &self,
        y: &EventuallyPeriodicPoint,
        limits: &Limits,
    ) -> Result<Vec<(Vec<u16>, Vec<u16>)>> {
        let pr = y.right_cycle.len();
        let (_, c_end) = y.center_span();
        let mut out: Vec<(Vec<u16>, Vec<u16>)> = Vec::new();
        // vertices: (phase 0..pr, symbol); edges advance the phase
        let label_at = |phase: usize| -> u16 { y.get(c_end + phase as i64) };
        let starts: Vec<u16> = (0..self.domain.len() as u16)
            .filter(|&u| self.phi[u as usize] == label_at(0))
            .collect();
        let mut path: Vec<(usize, u16)> = Vec::new();
        let mut on_path: BTreeSet<(usize, u16)> = BTreeSet::new();
        fn dfs(
            code: &OneBlockCode,
            pr: usize,
            label_at: &dyn Fn(usize) -> u16,
            path: &mut Vec<(usize, u16)>,
            on_path: &mut BTreeSet<(usize, u16)>,
            out: &mut Vec<(Vec<u16>, Vec<u16>)>,
            cap: u64,
        ) -> Result<()> {
            if out.len() as u64 > cap {
                return Err(SftError::EnumerationLimit {
                    count: (out.len() as u64).into(),
                    cap,
                });
            }
            let &(phase, sym) = path.last().unwrap();
            let next_phase = (phase + 1) % pr;
            let next_label = label_at(next_phase);
            for v in code.domain.out_neighbors(sym) {
                if code.phi[v as usize] != next_label {
                    continue;
                }
                let vert = (next_phase, v);
                if on_path.contains(&vert) {
                    // lasso: stem before the first occurrence, cycle after
                    let at = path.iter().position(|&p| p == vert).unwrap();
                    let stem: Vec<u16> = path[..at].iter().map(|p| p.1).collect();
                    let cycle: Vec<u16> = path[at..].iter().map(|p| p.1).collect();
                    out.push((stem, cycle));
                } else {
                    path.push(vert);
                    on_path.insert(vert);
                    dfs(code, pr, label_at, path, on_path, out, cap)?;
                    on_path.remove(&vert);
                    path.pop();
                }
            }
            Ok(())
        }
        for s in starts {
            path.push((0, s));
            on_path.insert((0, s));
            dfs(
                self,
                pr,
                &label_at,
                &mut path,
                &mut on_path,
                &mut out,
                limits.max_enumeration,
            )?;
            on_path.remove(&(0, s));
            path.pop();
        }
        Ok(out)
    }

    /// Per left-cycle phase, the symbols having an infinite backward history
    /// matching the cycle labels: the forward closure of the on-cycle part of
    /// the label-matched graph.
    fn left_history_sets(&self, y: &EventuallyPeriodicPoint) -> Vec<Vec<u16>> {
        let pl = y.left_cycle.len();
        let (c_start, _) = y.center_span();
        let label_at = |phase: usize| -> u16 { y.get(c_start - pl as i64 + phase as i64) };
        // vertices (phase, symbol) with matching label
        let mut verts = Vec::new();
        for phase in 0..pl {
            for u in 0..self.domain.len() as u16 {
                if self.phi[u as usize] == label_at(phase) {
                    verts.push((phase, u));
                }
            }
        }
        let idx: BTreeMap<(usize, u16), usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&(phase, u)| {
                let np = (phase + 1) % pl;
                self.domain
                    .out_neighbors(u)
                    .filter(|&v| self.phi[v as usize] == label_at(np))
                    .filter_map(|v| idx.get(&(np, v)).copied())
                    .collect()
            })
            .collect();
        let n = verts.len();
        let scc = tarjan_scc(n, &adj);
        let mut scc_size = BTreeMap::new();
        for &c in &scc {
            *scc_size.entry(c).or_insert(0usize) += 1;
        }
        let mut inf = vec![false; n];
        for v in 0..n {
            if scc_size[&scc[v]] > 1 || adj[v].contains(&v) {
                inf[v] = true;
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| inf[v]).collect();
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !inf[w] {
                    inf[w] = true;
                    stack.push(w);
                }
            }
        }
        let mut out = vec![Vec::new(); pl];
        for v in 0..n {
            if inf[v] {
                out[verts[v].0].push(verts[v].1);
            }
        }
        out
    }
}

/// Tarjan strongly connected components; returns the component id per vertex.
fn tarjan_scc(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        counter: usize,
        comp: Vec<usize>,
        comp_count: usize,
    }
    fn strongconnect(s: &mut State, v: usize) {
        s.index[v] = Some(s.counter);
        s.low[v] = s.counter;
        s.counter += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for i in 0..s.adj[v].len() {
            let w = s.adj[v][i];
            if s.index[w].is_none() {
                strongconnect(s, w);
                s.low[v] = s.low[v].min(s.low[w]);
            } else if s.on_stack[w] {
                s.low[v] = s.low[v].min(s.index[w].unwrap());
            }
        }
        if s.low[v] == s.index[v].unwrap() {
            loop {
                let w = s.stack.pop().unwrap();
                s.on_stack[w] = false;
                s.comp[w] = s.comp_count;
                if w == v {
                    break;
                }
            }
            s.comp_count += 1;
        }
    }
    let mut st = State {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        counter: 0,
        comp: vec![0; n],
        comp_count: 0,
    };
    for v in 0..n {
        if st.index[v].is_none() {
            strongconnect(&mut st, v);
        }
    }
    st.comp
}

/// Some cycle through `v` (as a vertex list, `v` last), assuming one exists.
fn find_cycle_through(v: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    // BFS from successors of v back to v
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &w in &adj[v] {
        if w == v {
            return vec![v];
        }
        if prev[w] == usize::MAX {
            prev[w] = v;
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if w == v {
                // reconstruct s -> ... -> u where s is a successor of v,
                // then list the cycle with v last: [s, ..., u, v]
                let mut path = vec![u];
                let mut cur = u;
                while prev[cur] != v {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                path.push(v);
                return path;
            }
            if prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    panic!("no cycle through vertex {v}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::{full_two, golden_mean};

    /// Double cover of the golden mean shift tracking the parity of 1s seen:
    /// every point downstairs has exactly two lifts, so d* = 2.
    pub fn parity_cover_code() -> OneBlockCode {
        let dom = Sft::new(
            vec!["1e", "1o", "2e", "2o"],
            vec![
                vec![0, 1, 1, 0],
                vec![1, 0, 0, 1],
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
            ],
        )
        .unwrap();
        let cod = golden_mean();
        OneBlockCode::new(dom, cod, vec![0, 0, 1, 1]).unwrap()
    }

    /// Two label-equal branches merging into a common future: collapses
    /// forward-asymptotic points, so not left-closing.
    fn diamond_code() -> OneBlockCode {
        // u -> v, u -> v', v -> s, v' -> s, s -> u, s -> s
        let dom = Sft::new(
            vec!["u", "v", "w", "s"],
            vec![
                vec![0, 1, 1, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 0, 1],
                vec![1, 0, 0, 1],
            ],
        )
        .unwrap();
        let cod = Sft::new(
            vec!["U", "P", "S"],
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 1]],
        )
        .unwrap();
        OneBlockCode::new(dom, cod, vec![0, 1, 1, 2]).unwrap()
    }

    /// Left-closing but not right-closing: the diagonal branches forward into
    /// a pair of parallel label-equal loops that never merge, and the return
    /// paths carry distinct labels.
    fn forward_branch_code() -> OneBlockCode {
        // c -> a, c -> b, a -> a, a -> r, b -> b, b -> s, r -> c, s -> c
        let dom = Sft::new(
            vec!["c", "a", "b", "r", "s"],
            vec![
                vec![0, 1, 1, 0, 0],
                vec![0, 1, 0, 1, 0],
                vec![0, 0, 1, 0, 1],
                vec![1, 0, 0, 0, 0],
                vec![1, 0, 0, 0, 0],
            ],
        )
        .unwrap();
        let cod = Sft::new(
            vec!["C", "A", "R", "S"],
            vec![
                vec![0, 1, 0, 0],
                vec![0, 1, 1, 1],
                vec![1, 0, 0, 0],
                vec![1, 0, 0, 0],
            ],
        )
        .unwrap();
        OneBlockCode::new(dom, cod, vec![0, 1, 1, 2, 3]).unwrap()
    }

    #[test]
    fn validation_catches_bad_symbol_maps() {
        let gm = golden_mean();
        // map both symbols to 2: 2->2 not allowed downstairs
        assert!(matches!(
            OneBlockCode::new(gm.clone(), gm.clone(), vec![1, 1]),
            Err(SftError::TransitionNotRespected { .. })
        ));
        assert!(OneBlockCode::identity(gm).is_identity());
    }

    #[test]
    fn apply_commutes_with_shift() {
        let limits = Limits::default();
        let gm = golden_mean();
        let (_b2, decode) = gm.higher_block(2, &limits).unwrap();
        // blocks: 0 = 11, 1 = 12, 2 = 21
        let x = EventuallyPeriodicPoint::new(vec![0, 1, 2], vec![0], vec![1, 2], 1);
        x.validate(decode.domain()).unwrap();
        for k in -5i64..=5 {
            let a = decode.apply_point(&x.shifted(k));
            let b = decode.apply_point(&x).shifted(k);
            assert!(a.same_point(&b));
        }
    }

    #[test]
    fn onto_detects_proper_subshift_image() {
        let limits = Limits::default();
        let gm = golden_mean();
        let id = OneBlockCode::identity(gm.clone());
        assert!(id.is_factor_onto(&limits).unwrap().onto);

        // golden mean included in the full 2-shift: not onto, and the
        // missing word is "22"
        let incl = OneBlockCode::new(gm, full_two(), vec![0, 1]).unwrap();
        let report = incl.is_factor_onto(&limits).unwrap();
        assert!(!report.onto);
        let w = report.missing_word.unwrap();
        assert_eq!(w.syms, vec![1, 1]);
    }

    #[test]
    fn degree_of_identity_and_block_codes_is_one() {
        let limits = Limits::default();
        let gm = golden_mean();
        let id = OneBlockCode::identity(gm.clone());
        let rep = id.degree_star(&limits).unwrap();
        assert_eq!(rep.d_star, 1);
        assert_eq!(rep.per_position_counts[rep.witness_index - 1], 1);
        let (_b2, decode) = gm.higher_block(2, &limits).unwrap();
        assert_eq!(decode.degree_star(&limits).unwrap().d_star, 1);
        assert!(id.find_magic_symbol(&limits).unwrap().is_some());
    }

    #[test]
    fn degree_of_parity_cover_is_two() {
        let limits = Limits::default();
        let code = parity_cover_code();
        let rep = code.degree_star(&limits).unwrap();
        assert_eq!(rep.d_star, 2);
        // both downstairs symbols have exactly two preimages, so either is a
        // magic symbol for this degree-2 code
        assert!(code.find_magic_symbol(&limits).unwrap().is_some());
    }

    #[test]
    fn closing_reports_for_identity_and_cover() {
        let gm = golden_mean();
        let id = OneBlockCode::identity(gm.clone());
        let rep = id.is_left_closing();
        assert!(rep.closing);
        assert_eq!(rep.delay, Some(0));
        let rep = id.is_right_closing();
        assert!(rep.closing);
        assert_eq!(rep.delay, Some(0));

        let cover = parity_cover_code();
        assert!(cover.is_left_closing().closing);
        assert!(cover.is_right_closing().closing);
    }

    #[test]
    fn diamond_is_not_closing_and_counterexample_checks_out() {
        let code = diamond_code();
        let rep = code.is_left_closing();
        assert!(!rep.closing);
        let (x, y) = rep.counterexample.unwrap();
        assert!(!x.same_point(&y));
        x.validate(code.domain()).unwrap();
        y.validate(code.domain()).unwrap();
        assert!(code.apply_point(&x).same_point(&code.apply_point(&y)));
        // equal tails from some coordinate rightward
        let tail_equal = (0..200).any(|start| {
            ((start)..(start + 60)).all(|n| x.get(n) == y.get(n))
        });
        assert!(tail_equal);
    }

    #[test]
    fn forward_branch_is_left_but_not_right_closing() {
        let code = forward_branch_code();
        let left = code.is_left_closing();
        assert!(left.closing, "expected left-closing");
        let right = code.is_right_closing();
        assert!(!right.closing, "expected right-closing to fail");
        let (x, y) = right.counterexample.unwrap();
        assert!(!x.same_point(&y));
        assert!(code.apply_point(&x).same_point(&code.apply_point(&y)));
        // mirrored violation: equal tails going leftward
        let tail_equal = (0..200).any(|start| {
            (-(start + 60)..=-(start)).all(|n| x.get(n) == y.get(n))
        });
        assert!(tail_equal);
    }

    #[test]
    fn fibers_of_identity_and_block_decoding() {
        let limits = Limits::default();
        let gm = golden_mean();
        let id = OneBlockCode::identity(gm.clone());
        let y = EventuallyPeriodicPoint::new(vec![0, 1], vec![], vec![0], 0);
        y.validate(&gm).unwrap();
        let fiber = id.fiber_of_point(&y, &limits).unwrap();
        assert_eq!(fiber.len(), 1);
        assert!(fiber[0].same_point(&y));

        let (_b2, decode) = gm.higher_block(2, &limits).unwrap();
        let fiber = decode.fiber_of_point(&y, &limits).unwrap();
        assert_eq!(fiber.len(), 1);
        assert!(decode.apply_point(&fiber[0]).same_point(&y));
    }

    #[test]
    fn fiber_of_parity_cover_has_two_points() {
        let limits = Limits::default();
        let code = parity_cover_code();
        // image point: the fixed point of 1s
        let y = EventuallyPeriodicPoint::constant(0);
        y.validate(code.codomain()).unwrap();
        let fiber = code.fiber_of_point(&y, &limits).unwrap();
        assert_eq!(fiber.len(), 2);
        for z in &fiber {
            assert!(code.apply_point(z).same_point(&y));
        }
        assert!(!fiber[0].same_point(&fiber[1]));

        // a mixed point: ...(12)^inf . 1 (12)^inf
        let y = EventuallyPeriodicPoint::new(vec![0, 1], vec![0], vec![0, 1], 0);
        y.validate(code.codomain()).unwrap();
        let fiber = code.fiber_of_point(&y, &limits).unwrap();
        assert_eq!(fiber.len(), 2);
    }

    #[test]
    fn diamond_fiber_is_refused() {
        let limits = Limits::default();
        let code = diamond_code();
        let y = EventuallyPeriodicPoint::constant(2);
        y.validate(code.codomain()).unwrap();
        assert!(matches!(
            code.fiber_of_point(&y, &limits),
            Err(SftError::NotClosing)
        ));
    }
}
