//! The level-by-level exchange search.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use super::checkpoint::{Checkpoint, FirstResult};
use super::{dimension_of, in_span, Decomposition, LevelStats, RankError, RankResult};
use crate::exactnum::Cyclotomic8;
use crate::stabset::StabDictionary;

const DEPENDENT_EPS: f64 = 1e-9;
const MATCH_TOL: f64 = 1e-6;
const PSI_COEF_EPS: f64 = 1e-9;
const CHECKPOINT_EVERY: Duration = Duration::from_secs(30);
const PROGRESS_EVERY: Duration = Duration::from_secs(15);

/// Compact code values: 0, 1, i, −1, −i.
const CODE_VALUES: [Complex64; 5] = [
    Complex64::new(0.0, 0.0),
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Largest level searched; `None` means `2ⁿ`.
    pub max_r: Option<usize>,
    /// Support-cover pruning.
    pub prune: bool,
    /// Restrict the first element to orbit-minimal states under the qubit
    /// permutations fixing `psi` projectively.
    pub symmetry: bool,
    /// Worker count; `None` uses [`crate::default_threads`].
    pub threads: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Periodic progress lines on stderr.
    pub progress: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_r: None, prune: true, symmetry: false, threads: None, checkpoint: None, progress: false }
    }
}

/// Minimum-size decomposition of `psi` over `dict`.
pub fn search_rank(dict: &StabDictionary, psi: &[Cyclotomic8], opts: &SearchOptions) -> Result<RankResult, RankError> {
    if dict.is_empty() {
        return Err(RankError::EmptyDictionary);
    }
    let n = dimension_of(psi)?;
    if n != dict.n() {
        return Err(RankError::DimensionMismatch { expected: 1 << dict.n(), got: psi.len() });
    }
    let dim = 1usize << n;
    let max_r = opts.max_r.unwrap_or(dim).max(1);
    let threads = opts.threads.unwrap_or_else(crate::default_threads).max(1);

    let fingerprint = fingerprint(dict, psi, opts);
    let mut cp = match &opts.checkpoint {
        Some(path) => Checkpoint::load(path, &fingerprint)?,
        None => None,
    }
    .unwrap_or(Checkpoint { fingerprint, ..Checkpoint::default() });

    let orbit_min = if opts.symmetry { Some(orbit_minimal(dict, psi)) } else { None };
    let mut levels: Vec<LevelStats> = Vec::new();
    for r in 1..=max_r {
        if let Some(done) = cp.finished.iter().find(|l| l.r == r) {
            levels.push(done.clone());
            continue;
        }
        if cp.level != r {
            cp.level = r;
            cp.done.clear();
        }
        let level = Level::new(dict, psi, r, opts.prune, orbit_min.as_deref());
        let (stats, hit) = level.run(threads, &mut cp, opts)?;
        levels.push(stats.clone());
        if let Some(indices) = hit {
            let coeffs = in_span(psi, dict, &indices).expect("witness confirmed exactly");
            let witness = Decomposition::from_indices(dict, &indices, coeffs);
            return Ok(RankResult { rank: Some(r), lower_bound: r, witness: Some(witness), levels });
        }
        cp.finished.push(stats);
        cp.done.clear();
        if let Some(path) = &opts.checkpoint {
            cp.save(path)?;
        }
    }
    Ok(RankResult { rank: None, lower_bound: max_r + 1, witness: None, levels })
}

fn fingerprint(dict: &StabDictionary, psi: &[Cyclotomic8], opts: &SearchOptions) -> String {
    let entries: Vec<String> = psi.iter().map(|c| c.to_strings().join(",")).collect();
    format!(
        "v1;n={};real={};len={};prune={};symmetry={};psi={}",
        dict.n(),
        dict.is_real_only(),
        dict.len(),
        opts.prune,
        opts.symmetry,
        entries.join(";")
    )
}

fn to_complex(psi: &[Cyclotomic8]) -> Vec<Complex64> {
    let v: Vec<Complex64> = psi.iter().map(|c| c.to_complex()).collect();
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    v.into_iter().map(|z| z / scale).collect()
}

/// Matches `z` to a compact code within [`MATCH_TOL`].
fn classify(z: Complex64, real_only: bool) -> Option<u8> {
    let re0 = z.re.abs() < MATCH_TOL;
    let im0 = z.im.abs() < MATCH_TOL;
    if re0 && im0 {
        Some(0)
    } else if im0 {
        if (z.re - 1.0).abs() < MATCH_TOL {
            Some(1)
        } else if (z.re + 1.0).abs() < MATCH_TOL {
            Some(3)
        } else {
            None
        }
    } else if re0 && !real_only {
        if (z.im - 1.0).abs() < MATCH_TOL {
            Some(2)
        } else if (z.im + 1.0).abs() < MATCH_TOL {
            Some(4)
        } else {
            None
        }
    } else {
        None
    }
}

/// Rotates nonzero codes so the first one is 1.
fn normalize_codes(codes: &mut [u8]) {
    let Some(&lead) = codes.iter().find(|&&c| c != 0) else { return };
    let rot = lead - 1;
    for c in codes.iter_mut().filter(|c| **c != 0) {
        *c = 1 + (*c - 1 + 4 - rot) % 4;
    }
}

/// Gauss–Jordan state for `[psi, prefix…]`, tracking how much of `psi`
/// each reduced row contains.
#[derive(Clone)]
struct Elim {
    dim: usize,
    rows: Vec<Complex64>,
    pivots: Vec<usize>,
    psi_coef: Vec<Complex64>,
}

impl Elim {
    fn new(psi: &[Complex64]) -> Elim {
        let mut e = Elim { dim: psi.len(), rows: Vec::new(), pivots: Vec::new(), psi_coef: Vec::new() };
        let added = e.push(psi.to_vec(), Complex64::new(1.0, 0.0));
        debug_assert!(added);
        e
    }

    fn push_codes(&mut self, codes: &[u8]) -> bool {
        self.push(codes.iter().map(|&c| CODE_VALUES[c as usize]).collect(), Complex64::new(0.0, 0.0))
    }

    /// Adds a row; false if it is dependent on the existing ones.
    fn push(&mut self, mut v: Vec<Complex64>, mut coef: Complex64) -> bool {
        let dim = self.dim;
        for (k, &p) in self.pivots.iter().enumerate() {
            let f = v[p];
            if f.norm_sqr() != 0.0 {
                let row = &self.rows[k * dim..(k + 1) * dim];
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= f * r;
                }
                coef -= f * self.psi_coef[k];
            }
        }
        let (p, best) = v.iter().enumerate().map(|(i, z)| (i, z.norm())).fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        if best < DEPENDENT_EPS {
            return false;
        }
        let inv = v[p].inv();
        for x in v.iter_mut() {
            *x *= inv;
        }
        coef *= inv;
        v[p] = Complex64::new(1.0, 0.0);
        for k in 0..self.pivots.len() {
            let f = self.rows[k * dim + p];
            if f.norm_sqr() != 0.0 {
                for x in 0..dim {
                    let d = f * v[x];
                    self.rows[k * dim + x] -= d;
                }
                self.rows[k * dim + p] = Complex64::new(0.0, 0.0);
                self.psi_coef[k] -= f * coef;
            }
        }
        self.rows.extend(v);
        self.pivots.push(p);
        self.psi_coef.push(coef);
        true
    }
}

/// `c1`: points covered at least once; `c2`: at least twice.
fn add_cover(c1: u64, c2: u64, m: u64) -> (u64, u64) {
    (c1 | m, c2 | (c1 & m))
}

/// Everything needed to search one level.
struct Level<'a> {
    dict: &'a StabDictionary,
    psi: &'a [Cyclotomic8],
    psi_f: Vec<Complex64>,
    r: usize,
    dim: usize,
    support: u64,
    prune: bool,
    orbit_min: Option<&'a [bool]>,
    block_masks: Vec<u64>,
    /// Coefficient patterns over the `r` rows, first nonzero entry 1.
    patterns: Vec<u8>,
    /// `choose[b][a] = C(a, b)`, saturating.
    choose: Vec<Vec<u64>>,
}

#[derive(Default)]
struct Cache {
    two_left: HashMap<(u64, u64), bool>,
}

impl<'a> Level<'a> {
    fn new(dict: &'a StabDictionary, psi: &'a [Cyclotomic8], r: usize, prune: bool, orbit_min: Option<&'a [bool]>) -> Self {
        let dim = psi.len();
        let support = psi.iter().enumerate().fold(0u64, |m, (x, c)| if c.is_zero() { m } else { m | 1 << x });
        let block_masks = dict.blocks().iter().map(|b| dict.support_mask(b.start)).collect();
        let alphabet: &[u8] = if dict.is_real_only() { &[0, 1, 3] } else { &[0, 1, 2, 3, 4] };
        let mut patterns = Vec::new();
        let mut v = vec![0usize; r];
        'outer: loop {
            let codes: Vec<u8> = v.iter().map(|&i| alphabet[i]).collect();
            if codes.iter().find(|&&c| c != 0) == Some(&1) {
                patterns.extend(codes);
            }
            for j in (0..r).rev() {
                v[j] += 1;
                if v[j] < alphabet.len() {
                    continue 'outer;
                }
                v[j] = 0;
            }
            break;
        }
        let len = dict.len();
        let mut choose = vec![vec![0u64; len + 1]; r.max(1)];
        for (b, row) in choose.iter_mut().enumerate() {
            for a in 0..=len {
                row[a] = binom_saturating(a as u64, b as u64);
            }
        }
        Level {
            dict,
            psi,
            psi_f: to_complex(psi),
            r,
            dim,
            support,
            prune,
            orbit_min,
            block_masks,
            patterns,
            choose,
        }
    }

    /// Number of full prefixes extending a partial one whose last element is
    /// `j` and which still needs `more` elements.
    fn subtree(&self, j: usize, more: usize) -> u64 {
        self.choose[more][self.dict.len() - 1 - j]
    }

    fn admissible(&self, c1: u64, c2: u64) -> bool {
        self.support & !c1 == 0 && c1 & !c2 & !self.support == 0
    }

    /// Points the final state must cover, and the points it may cover,
    /// for `(c1, c2)` to become admissible after one more support.
    fn need_allow(&self, c1: u64, c2: u64) -> (u64, u64) {
        ((self.support & !c1) | (c1 & !c2 & !self.support), c1 | self.support)
    }

    /// Whether some support can still complete `(c1, c2)`. Affine supports
    /// containing `need` contain its affine hull.
    fn one_left(&self, c1: u64, c2: u64) -> bool {
        let (need, allow) = self.need_allow(c1, c2);
        need == 0 || affine_hull(need) & !allow == 0
    }

    fn two_left(&self, c1: u64, c2: u64, cache: &mut Cache) -> bool {
        if let Some(&v) = cache.two_left.get(&(c1, c2)) {
            return v;
        }
        let v = self.block_masks.iter().any(|&m| {
            let (d1, d2) = add_cover(c1, c2, m);
            self.one_left(d1, d2)
        });
        cache.two_left.insert((c1, c2), v);
        v
    }

    /// Sound necessary condition for completing with `left` more supports.
    fn completable(&self, c1: u64, c2: u64, left: usize, cache: &mut Cache) -> bool {
        match left {
            0 => self.admissible(c1, c2),
            1 => self.one_left(c1, c2),
            2 => self.two_left(c1, c2, cache),
            _ => true,
        }
    }

    fn run(&self, threads: usize, cp: &mut Checkpoint, opts: &SearchOptions) -> Result<(LevelStats, Option<Vec<usize>>), RankError> {
        let mut stats = LevelStats { r: self.r, ..LevelStats::default() };
        if self.r == 1 {
            let mut res = FirstResult::default();
            let hit = self.exchange(&Elim::new(&self.psi_f), &[], 0, 0, &mut res);
            stats.searched = 1;
            stats.exact_checks = res.exact_checks;
            stats.complete = hit.is_none();
            return Ok((stats, hit.map(|s| vec![s])));
        }
        let len = self.dict.len();
        let total = self.choose[self.r - 1][len];
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);
        for (&f, res) in &cp.done {
            if res.hit.is_some() {
                best.fetch_min(f, Ordering::SeqCst);
            }
        }
        let shared = Mutex::new(Shared {
            results: std::mem::take(&mut cp.done),
            last_save: Instant::now(),
            last_progress: Instant::now(),
            started: Instant::now(),
            error: None,
        });
        let worker = || {
            let mut cache = Cache::default();
            loop {
                let f = next.fetch_add(1, Ordering::SeqCst);
                if f >= len || f > best.load(Ordering::SeqCst) {
                    break;
                }
                if shared.lock().unwrap().results.contains_key(&f) {
                    continue;
                }
                let Some(res) = self.run_first(f, &best, &mut cache) else { continue };
                if res.hit.is_some() {
                    best.fetch_min(f, Ordering::SeqCst);
                }
                let mut sh = shared.lock().unwrap();
                sh.results.insert(f, res);
                if let Some(path) = &opts.checkpoint {
                    if sh.last_save.elapsed() >= CHECKPOINT_EVERY {
                        let snapshot = Checkpoint {
                            fingerprint: cp.fingerprint.clone(),
                            finished: cp.finished.clone(),
                            level: self.r,
                            done: sh.results.clone(),
                        };
                        if let Err(e) = snapshot.save(path) {
                            sh.error = Some(e);
                        }
                        sh.last_save = Instant::now();
                    }
                }
                if opts.progress && sh.last_progress.elapsed() >= PROGRESS_EVERY {
                    let covered: u64 = sh.results.keys().map(|&g| self.subtree(g, self.r - 2)).fold(0, u64::saturating_add);
                    eprintln!(
                        "level {}: {}/{} prefixes ({:.1}%), {:.0}s",
                        self.r,
                        covered,
                        total,
                        100.0 * covered as f64 / total.max(1) as f64,
                        sh.started.elapsed().as_secs_f64()
                    );
                    sh.last_progress = Instant::now();
                }
            }
        };
        std::thread::scope(|s| {
            for _ in 1..threads {
                s.spawn(worker);
            }
            worker();
        });
        let sh = shared.into_inner().unwrap();
        if let Some(e) = sh.error {
            return Err(e);
        }
        let cutoff = best.load(Ordering::SeqCst);
        let mut hit = None;
        for (&f, res) in sh.results.range(..=cutoff.min(len - 1)) {
            stats.searched = stats.searched.saturating_add(res.searched);
            stats.pruned = stats.pruned.saturating_add(res.pruned);
            stats.symmetry_skipped = stats.symmetry_skipped.saturating_add(res.symmetry_skipped);
            stats.exact_checks += res.exact_checks;
            if f == cutoff {
                hit = res.hit.clone();
            }
        }
        stats.complete = hit.is_none();
        cp.done = sh.results;
        Ok((stats, hit))
    }

    /// Searches all prefixes starting at `f`; `None` if abandoned because a
    /// smaller first index already has a witness.
    fn run_first(&self, f: usize, best: &AtomicUsize, cache: &mut Cache) -> Option<FirstResult> {
        let mut res = FirstResult::default();
        let more = self.r - 2;
        if let Some(om) = self.orbit_min {
            if !om[f] {
                res.symmetry_skipped = self.subtree(f, more);
                return Some(res);
            }
        }
        let c1 = self.dict.support_mask(f);
        if self.prune && !self.completable(c1, 0, self.r - 1, cache) {
            res.pruned = self.subtree(f, more);
            return Some(res);
        }
        let mut el = Elim::new(&self.psi_f);
        if !el.push_codes(self.dict.codes(f)) {
            res.searched = self.subtree(f, more);
            return Some(res);
        }
        let mut prefix = vec![f];
        let hit = self.extend(&el, &mut prefix, c1, 0, &mut res, best, cache)?;
        if let Some(s) = hit {
            prefix.push(s);
            res.hit = Some(prefix);
        }
        Some(res)
    }

    /// Depth-first extension of `prefix` in lexicographic order. Outer
    /// `None`: abandoned; inner: the least completing state, if any.
    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        el: &Elim,
        prefix: &mut Vec<usize>,
        c1: u64,
        c2: u64,
        res: &mut FirstResult,
        best: &AtomicUsize,
        cache: &mut Cache,
    ) -> Option<Option<usize>> {
        let last = *prefix.last().unwrap();
        if prefix.len() == self.r - 1 {
            res.searched += 1;
            return Some(self.exchange(el, prefix, c1, c2, res));
        }
        if prefix.len() == 1 && best.load(Ordering::Relaxed) < prefix[0] {
            return None;
        }
        let more = self.r - 2 - prefix.len();
        let left = self.r - 1 - prefix.len();
        let mut j = last + 1;
        while j < self.dict.len() {
            let b = self.dict.block_of(j);
            let end = self.dict.blocks()[b].end;
            let (d1, d2) = add_cover(c1, c2, self.block_masks[b]);
            if self.prune && !self.completable(d1, d2, left, cache) {
                for jj in j..end {
                    res.pruned = res.pruned.saturating_add(self.subtree(jj, more));
                }
                j = end;
                continue;
            }
            for jj in j..end {
                let mut next = el.clone();
                if !next.push_codes(self.dict.codes(jj)) {
                    res.searched = res.searched.saturating_add(self.subtree(jj, more));
                    continue;
                }
                prefix.push(jj);
                match self.extend(&next, prefix, d1, d2, res, best, cache) {
                    Some(None) => {
                        prefix.pop();
                    }
                    found => return found,
                }
            }
            j = end;
        }
        Some(None)
    }

    /// The least state `σ` after the prefix with `psi ∈ span(prefix ∪ {σ})`.
    fn exchange(&self, el: &Elim, prefix: &[usize], c1: u64, c2: u64, res: &mut FirstResult) -> Option<usize> {
        let dim = self.dim;
        let rows = el.pivots.len();
        debug_assert_eq!(rows, self.r);
        let last = prefix.last().copied();
        let (need, allow) = self.need_allow(c1, c2);
        let mut is_pivot = [false; 64];
        for &p in &el.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..dim).filter(|&x| !is_pivot[x]).collect();
        let real = self.dict.is_real_only();
        let mut codes = vec![0u8; dim];
        let mut candidates = Vec::new();
        'pat: for v in self.patterns.chunks(rows) {
            let mut a = Complex64::new(0.0, 0.0);
            for j in 0..rows {
                a += CODE_VALUES[v[j] as usize] * el.psi_coef[j];
            }
            if a.norm() < PSI_COEF_EPS {
                continue;
            }
            for &x in &free {
                let mut w = Complex64::new(0.0, 0.0);
                for j in 0..rows {
                    if v[j] != 0 {
                        w += CODE_VALUES[v[j] as usize] * el.rows[j * dim + x];
                    }
                }
                match classify(w, real) {
                    Some(c) => codes[x] = c,
                    None => continue 'pat,
                }
            }
            for (j, &p) in el.pivots.iter().enumerate() {
                codes[p] = v[j];
            }
            normalize_codes(&mut codes);
            let Some(s) = self.dict.lookup_codes(&codes) else { continue };
            if last.is_some_and(|l| s <= l) {
                continue;
            }
            let m = self.dict.support_mask(s);
            if self.prune && (need & !m != 0 || m & !allow != 0) {
                continue;
            }
            candidates.push(s);
        }
        candidates.sort_unstable();
        candidates.dedup();
        let mut subset = prefix.to_vec();
        subset.push(0);
        for s in candidates {
            res.exact_checks += 1;
            *subset.last_mut().unwrap() = s;
            if let Some(c) = in_span(self.psi, self.dict, &subset) {
                if c.iter().all(|x| !x.is_zero()) {
                    return Some(s);
                }
            }
        }
        None
    }
}

struct Shared {
    results: BTreeMap<usize, FirstResult>,
    last_save: Instant,
    last_progress: Instant,
    started: Instant,
    error: Option<RankError>,
}

fn binom_saturating(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Smallest affine subspace (as a point mask) containing the points of `m`.
pub(crate) fn affine_hull(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let p0 = m.trailing_zeros() as u64;
    let mut basis: Vec<u64> = Vec::new();
    let mut rest = m & (m - 1);
    while rest != 0 {
        let p = rest.trailing_zeros() as u64;
        rest &= rest - 1;
        let mut d = p ^ p0;
        for &b in &basis {
            d = d.min(d ^ b);
        }
        if d != 0 {
            basis.push(d);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let mut hull = 0u64;
    for s in 0..1u64 << basis.len() {
        let off = basis.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).fold(0, |acc, (_, b)| acc ^ b);
        hull |= 1 << (p0 ^ off);
    }
    hull
}

/// `om[i]` is false when some symmetry of `psi` maps state `i` to a
/// smaller index.
fn orbit_minimal(dict: &StabDictionary, psi: &[Cyclotomic8]) -> Vec<bool> {
    let n = dict.n();
    let perms = symmetries(psi, n);
    let dim = 1usize << n;
    let mut om = vec![true; dict.len()];
    let mut buf = vec![0u8; dim];
    for (i, flag) in om.iter_mut().enumerate() {
        let codes = dict.codes(i);
        for p in &perms {
            for (x, b) in buf.iter_mut().enumerate() {
                *b = codes[p[x]];
            }
            normalize_codes(&mut buf);
            if dict.lookup_codes(&buf).is_some_and(|j| j < i) {
                *flag = false;
                break;
            }
        }
    }
    om
}

/// Index maps `x ↦ π(x)` of the non-identity qubit permutations `π` with
/// `psi∘π ∝ psi`.
fn symmetries(psi: &[Cyclotomic8], n: usize) -> Vec<Vec<usize>> {
    let dim = 1usize << n;
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let lead = psi.iter().position(|c| !c.is_zero()).unwrap();
    loop {
        if !next_permutation(&mut perm) {
            break;
        }
        let map: Vec<usize> = (0..dim)
            .map(|x| {
                // Qubit q is bit n−1−q of the index.
                (0..n).fold(0, |y, q| y | (((x >> (n - 1 - perm[q])) & 1) << (n - 1 - q)))
            })
            .collect();
        let image: Vec<&Cyclotomic8> = map.iter().map(|&y| &psi[y]).collect();
        let Some(l2) = image.iter().position(|c| !c.is_zero()) else { continue };
        if l2 != lead {
            continue;
        }
        let ratio = image[lead].checked_div(&psi[lead]).unwrap();
        if psi.iter().zip(&image).all(|(a, b)| &(a * &ratio) == *b) {
            out.push(map);
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
