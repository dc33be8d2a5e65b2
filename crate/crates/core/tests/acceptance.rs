//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Expected values come from brute-force computations written here,
//! independently of the library's search code.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use groupcode::corpus::{indecomposable_pool, random_group_code, rng, small_groups};
use groupcode::cyclic::{cyclic_structure, gcd_certificate, interleave, is_cyclic};
use groupcode::decompose::{decompose_group, indecomposability_certificates, is_decomposable, Certificate};
use groupcode::fixtures::{even_weight_3, hamming74, repetition, z, z4_example};
use groupcode::isomorphy::{aut_group, aut_group_with_decomposition};
use groupcode::{Category, Code, Elem, FiniteGroup, GroupCode, SearchOptions, Word};
use itertools::Itertools;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::RngExt;

type W = Vec<Elem>;

fn words_of(c: &Code) -> Vec<W> {
    c.words().iter().map(|w| w.symbols().to_vec()).collect()
}

fn count_projection(words: &[W], coords: &[usize]) -> usize {
    words
        .iter()
        .map(|w| coords.iter().map(|&i| w[i]).collect::<W>())
        .collect::<HashSet<_>>()
        .len()
}

/// Every `J` containing coordinate 0 with `|C| = |π_J(C)| · |π_K(C)|`.
fn splitting_sets(words: &[W], n: usize) -> Vec<Vec<usize>> {
    let total = words.iter().collect::<HashSet<_>>().len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let j: Vec<usize> = std::iter::once(0).chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
        if j.len() == n {
            continue;
        }
        let k: Vec<usize> = (0..n).filter(|i| !j.contains(i)).collect();
        if count_projection(words, &j) * count_projection(words, &k) == total {
            out.push(j);
        }
    }
    out
}

fn distance(x: &[Elem], y: &[Elem]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

fn min_distance(words: &[W]) -> Option<usize> {
    words.iter().array_combinations().map(|[x, y]| distance(x, y)).min()
}

fn rotate(w: &[Elem]) -> W {
    let n = w.len();
    (0..n).map(|j| w[(j + n - 1) % n]).collect()
}

fn shift_invariant(words: &[W]) -> bool {
    let set: HashSet<&W> = words.iter().collect();
    words.iter().all(|w| set.contains(&rotate(w)))
}

/// Bijections of the group that respect the multiplication table.
fn automorphisms_bf(g: &FiniteGroup) -> Vec<W> {
    let q = g.order();
    (0..q as Elem)
        .permutations(q)
        .filter(|f| (0..q as Elem).all(|a| (0..q as Elem).all(|b| f[g.mul(a, b) as usize] == g.mul(f[a as usize], f[b as usize]))))
        .collect()
}

/// `y_j = f_j(x_σ(j))`.
fn pull(sigma: &[usize], maps: &[&W], x: &[Elem]) -> W {
    sigma.iter().enumerate().map(|(j, &s)| maps[j][x[s] as usize]).collect()
}

/// Group-code isomorphism by trying every coordinate permutation and every
/// tuple of alphabet automorphisms. For groups of order at most 4 every
/// isomorphism between subgroups extends to an automorphism, so this is
/// complete there.
fn gc_iso_bf(c: &Code, d: &Code, auts: &[W]) -> bool {
    let n = c.length();
    if d.length() != n || c.len() != d.len() {
        return false;
    }
    let cw = words_of(c);
    let target: HashSet<W> = words_of(d).into_iter().collect();
    (0..n).permutations(n).any(|sigma| {
        (0..n).map(|_| auts.iter()).multi_cartesian_product().any(|maps| cw.iter().all(|x| target.contains(&pull(&sigma, &maps, x))))
    })
}

/// Order of the automorphism group counted over all isometries of `G^n`:
/// coordinate permutations with arbitrary alphabet bijections, keeping those
/// that fix the code and act as homomorphisms on each coordinate projection.
/// Coordinates are fixed left to right; a partial choice survives while
/// every image prefix is a prefix of some codeword.
fn aut_order_bf(c: &GroupCode) -> u64 {
    let g = c.alphabet();
    let (n, q) = (c.length(), c.q());
    let cw = words_of(c);
    let prefixes: Vec<HashSet<W>> = (0..=n).map(|k| cw.iter().map(|w| w[..k].to_vec()).collect()).collect();
    let projections: Vec<Vec<Elem>> = (0..n).map(|i| cw.iter().map(|w| w[i]).unique().collect()).collect();
    let bijections: Vec<W> = (0..q as Elem).permutations(q).collect();
    // admissible[i]: bijections homomorphic on the projection at source i.
    let admissible: Vec<Vec<&W>> = projections
        .iter()
        .map(|h| {
            bijections
                .iter()
                .filter(|f| h.iter().all(|&a| h.iter().all(|&b| f[g.mul(a, b) as usize] == g.mul(f[a as usize], f[b as usize]))))
                .collect()
        })
        .collect();
    fn go(j: usize, used: &mut [bool], images: &mut Vec<W>, cw: &[W], prefixes: &[HashSet<W>], admissible: &[Vec<&W>]) -> u64 {
        if j == used.len() {
            return 1;
        }
        let mut count = 0;
        for src in 0..used.len() {
            if used[src] {
                continue;
            }
            used[src] = true;
            for f in &admissible[src] {
                for (img, x) in images.iter_mut().zip(cw) {
                    img.push(f[x[src] as usize]);
                }
                if images.iter().all(|img| prefixes[j + 1].contains(img)) {
                    count += go(j + 1, used, images, cw, prefixes, admissible);
                }
                for img in images.iter_mut() {
                    img.pop();
                }
            }
            used[src] = false;
        }
        count
    }
    let mut images = vec![Vec::with_capacity(n); cw.len()];
    go(0, &mut vec![false; n], &mut images, &cw, &prefixes, &admissible)
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Result<String, String> {
    let c = z4_example();
    let w = words_of(&c);
    let rows = [(vec![0], vec![1, 2]), (vec![1], vec![0, 2]), (vec![2], vec![0, 1])];
    let products: Vec<(usize, usize)> = rows.iter().map(|(j, k)| (count_projection(&w, j), count_projection(&w, k))).collect();
    if products != [(4, 4), (2, 8), (4, 4)] {
        return Err(format!("projection sizes {products:?}"));
    }
    if products.iter().any(|(a, b)| a * b != 16) || w.len() != 8 {
        return Err("products differ from 16".into());
    }
    if !splitting_sets(&w, 3).is_empty() {
        return Err("brute force finds a split".into());
    }
    if is_decomposable(&c).map_err(|e| e.to_string())?.is_some() {
        return Err("is_decomposable returned a split".into());
    }
    Ok("products 4·4, 2·8, 4·4 = 16; no split".into())
}

/// Expected two-copy interleaving of the even-weight code, pair by pair.
const TABLE: [(&str, &str); 16] = [
    ("000000", "000000"),
    ("000110", "010100"),
    ("000011", "000101"),
    ("000101", "010001"),
    ("110000", "101000"),
    ("110110", "111100"),
    ("110011", "101101"),
    ("110101", "111001"),
    ("011000", "001010"),
    ("011110", "011110"),
    ("011011", "001111"),
    ("011101", "011011"),
    ("101000", "100010"),
    ("101110", "110110"),
    ("101011", "100111"),
    ("101101", "110011"),
];

fn bits(s: &str) -> W {
    s.bytes().map(|b| (b - b'0') as Elem).collect()
}

fn criterion_2() -> Result<String, String> {
    let out = interleave(&even_weight_3(), 2).map_err(|e| e.to_string())?;
    if out.sigma.to_one_based() != [1, 3, 5, 2, 4, 6] {
        return Err(format!("sigma {:?}", out.sigma.to_one_based()));
    }
    let got: HashSet<(W, W)> = out.rows.iter().map(|(x, y)| (x.symbols().to_vec(), y.symbols().to_vec())).collect();
    let expected: HashSet<(W, W)> = TABLE.iter().map(|(x, y)| (bits(x), bits(y))).collect();
    if out.rows.len() != 16 || got != expected {
        return Err(format!("{} rows, {} matching", out.rows.len(), got.intersection(&expected).count()));
    }
    if !shift_invariant(&words_of(&out.code)) || !is_cyclic(&out.code) {
        return Err("interleaved code is not cyclic".into());
    }
    Ok("16/16 rows bit-exact, sigma [1,3,5,2,4,6], cyclic".into())
}

fn criterion_3() -> Result<String, String> {
    let mut summary = Vec::new();
    for (n, expected) in [(2usize, 8usize), (3, 48)] {
        let space: Vec<W> = (0..n).map(|_| 0..2 as Elem).multi_cartesian_product().collect();
        let index: HashMap<&W, usize> = space.iter().enumerate().map(|(i, x)| (x, i)).collect();
        // Normal forms f∘σ̄ built here from every σ and every per-coordinate flip.
        let flips: [W; 2] = [vec![0, 1], vec![1, 0]];
        let mut normal_forms: HashSet<Vec<usize>> = HashSet::new();
        for sigma in (0..n).permutations(n) {
            for maps in (0..n).map(|_| flips.iter()).multi_cartesian_product() {
                normal_forms.insert(space.iter().map(|x| index[&pull(&sigma, &maps, x)]).collect());
            }
        }
        let mut found = 0;
        for perm in (0..space.len()).permutations(space.len()) {
            let isometric = (0..space.len()).all(|a| (a + 1..space.len()).all(|b| distance(&space[a], &space[b]) == distance(&space[perm[a]], &space[perm[b]])));
            if isometric {
                found += 1;
                if !normal_forms.contains(&perm) {
                    return Err(format!("n={n}: an isometry is not of the form f∘σ̄"));
                }
            }
        }
        let library: usize = groupcode::isometry::enumerate_isometries(2, n).map_err(|e| e.to_string())?.count();
        let formula = groupcode::isometry::isometry_group_order(2, n);
        if found != expected || normal_forms.len() != expected || library != expected || formula != expected.into() {
            return Err(format!("n={n}: brute force {found}, normal forms {}, library {library}", normal_forms.len()));
        }
        summary.push(format!("n={n}: {found}"));
    }
    Ok(format!("isometry counts {}", summary.join(", ")))
}

fn is_constant_weight_nondegenerate(c: &GroupCode) -> bool {
    let e = c.alphabet().identity();
    let w = words_of(c);
    let n = c.length();
    let nondegenerate = (0..n).all(|i| w.iter().any(|x| x[i] != w[0][i]));
    let weights: HashSet<usize> = w.iter().map(|x| x.iter().filter(|&&s| s != e).count()).filter(|&k| k > 0).collect();
    nondegenerate && weights.len() == 1
}

fn criterion_4() -> Result<String, String> {
    let mut named: Vec<(String, GroupCode)> = [3, 5, 7, 9].into_iter().map(|n| (format!("repetition {n}"), repetition(n))).collect();
    named.push(("Hamming(7,4)".into(), hamming74()));
    let mut corpus: Vec<GroupCode> = Vec::new();
    let mut seen: HashSet<(usize, usize, Vec<W>)> = HashSet::new();
    let mut r = rng(404);
    for (gi, g) in small_groups().iter().enumerate() {
        for n in 2..=8 {
            for k in 1..=3 {
                for _ in 0..120 {
                    let c = random_group_code(&mut r, g, n, k);
                    if is_constant_weight_nondegenerate(&c) && seen.insert((gi, n, words_of(&c))) {
                        corpus.push(c);
                    }
                }
            }
        }
    }
    let mut certified = 0;
    for (name, c) in &named {
        if indecomposability_certificates(c, Category::Group).is_empty() {
            return Err(format!("{name} has no certificate"));
        }
        if !splitting_sets(&words_of(c), c.length()).is_empty() || is_decomposable(c).map_err(|e| e.to_string())?.is_some() {
            return Err(format!("{name} splits"));
        }
        certified += 1;
    }
    for c in &corpus {
        let certs = indecomposability_certificates(c, Category::Group);
        if !certs.iter().any(|x| matches!(x, Certificate::ConstantWeightNondegenerate { .. })) {
            return Err(format!("constant-weight code of length {} not certified", c.length()));
        }
        if !splitting_sets(&words_of(c), c.length()).is_empty() {
            return Err(format!("certified constant-weight code of length {} splits", c.length()));
        }
        certified += 1;
    }
    if corpus.len() < 50 {
        return Err(format!("corpus too small: {}", corpus.len()));
    }
    Ok(format!("{certified} certified codes ({} constant-weight), 0 disagreements", corpus.len()))
}

struct Pools {
    groups: Vec<Arc<FiniteGroup>>,
    auts: Vec<Vec<W>>,
    pools: Vec<Vec<GroupCode>>,
}

fn build_pools(seed: u64, max_len: usize) -> Result<Pools, String> {
    let groups = small_groups();
    let auts: Vec<Vec<W>> = groups.iter().map(|g| automorphisms_bf(g)).collect();
    let pools = indecomposable_pool(&mut rng(seed), &groups, 5, max_len, 64).map_err(|e| e.to_string())?;
    for (gi, pool) in pools.iter().enumerate() {
        if pool.len() < 2 {
            return Err(format!("pool for {} has {} codes", groups[gi].label(), pool.len()));
        }
        for (i, c) in pool.iter().enumerate() {
            if c.length() > 1 && !splitting_sets(&words_of(c), c.length()).is_empty() {
                return Err("pool code splits".into());
            }
            for d in &pool[i + 1..] {
                if gc_iso_bf(c, d, &auts[gi]) {
                    return Err("pool codes are isomorphic".into());
                }
            }
        }
    }
    Ok(Pools { groups, auts, pools })
}

fn sum_of(parts: &[GroupCode]) -> GroupCode {
    parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.direct_sum(p).expect("same alphabet"))
}

fn criterion_5() -> Result<String, String> {
    let p = build_pools(505, 4)?;
    let mut r = rng(5);
    let trials = 120;
    for t in 0..trials {
        let gi = r.random_range(0..p.groups.len());
        let pool = &p.pools[gi];
        let mut counts = vec![0usize; pool.len()];
        let mut parts = Vec::new();
        let (mut len, mut size) = (0usize, 1usize);
        let want = r.random_range(2..=5);
        while parts.len() < want {
            let k = r.random_range(0..pool.len());
            let c = &pool[k];
            if len + c.length() > 12 || size * c.len() > 4096 {
                break;
            }
            len += c.length();
            size *= c.len();
            counts[k] += 1;
            parts.push(c.clone());
        }
        if parts.len() < 2 {
            continue;
        }
        let sum = sum_of(&parts);
        // Scramble with a random σ and random alphabet automorphisms.
        let mut sigma: Vec<usize> = (0..len).collect();
        sigma.shuffle(&mut r);
        let maps: Vec<&W> = (0..len).map(|_| p.auts[gi].choose(&mut r).expect("non-empty")).collect();
        let scrambled_words: Vec<Word> = words_of(&sum).iter().map(|x| Word::new(pull(&sigma, &maps, x))).collect();
        let scrambled = GroupCode::new(Code::new(p.groups[gi].clone(), len, scrambled_words).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;

        let dec = decompose_group(&scrambled).map_err(|e| e.to_string())?;
        // The witness must regroup the code into the sum of its components.
        let regrouped: HashSet<W> = words_of(&scrambled).iter().map(|x| dec.blocks.iter().flatten().map(|&i| x[i]).collect()).collect();
        let rebuilt: HashSet<W> = words_of(&dec.direct_sum().map_err(|e| e.to_string())?).into_iter().collect();
        if regrouped != rebuilt {
            return Err(format!("trial {t}: blocks do not reconstruct the code"));
        }
        let mut found = vec![0usize; pool.len()];
        for (b, comp) in dec.components.iter().enumerate() {
            match pool.iter().position(|c| gc_iso_bf(c, comp, &p.auts[gi])) {
                Some(k) => found[k] += 1,
                None => return Err(format!("trial {t}: component {b} matches no pool code")),
            }
        }
        if found != counts {
            return Err(format!("trial {t}: recovered {found:?}, built {counts:?}"));
        }
        // The library's isotype grouping must agree with the brute-force matching.
        let iso_mult: Vec<usize> = {
            let mut v: Vec<usize> = dec.isotypes.iter().map(|i| i.multiplicity()).collect();
            v.sort_unstable();
            v
        };
        let mut built: Vec<usize> = counts.iter().copied().filter(|&c| c > 0).collect();
        built.sort_unstable();
        if iso_mult != built {
            return Err(format!("trial {t}: isotype multiplicities {iso_mult:?}, built {built:?}"));
        }
    }
    Ok(format!("{trials} scrambled sums recovered, 100%"))
}

fn criterion_6() -> Result<String, String> {
    let search = SearchOptions::default();
    let mut checked = 0;
    for g in small_groups() {
        let aut = automorphisms_bf(&g).len() as u64;
        for n in 1..=3u32 {
            let c = GroupCode::full_space(g.clone(), n as usize).map_err(|e| e.to_string())?;
            let expected = aut.pow(n) * factorial(n as u64);
            let got = aut_group(&c, &search).map_err(|e| e.to_string())?.order;
            if got != Some(expected.into()) {
                return Err(format!("{}^{n}: expected {expected}, got {got:?}", g.label()));
            }
            if n <= 2 && aut_order_bf(&c) != expected {
                return Err(format!("{}^{n}: brute force disagrees with the formula", g.label()));
            }
            checked += 1;
        }
    }
    let p = build_pools(606, 3)?;
    let mut r = rng(6);
    let mut sums = 0;
    for _ in 0..60 {
        let gi = r.random_range(0..p.groups.len());
        let pool = &p.pools[gi];
        let distinct = r.random_range(1..=2.min(pool.len()));
        let chosen: Vec<usize> = rand::seq::index::sample(&mut r, pool.len(), distinct).into_vec();
        let mut parts = Vec::new();
        let mut predicted = 1u64;
        let (mut len, mut size) = (0usize, 1usize);
        for &k in &chosen {
            let c = &pool[k];
            let alpha = r.random_range(1..=3u32);
            let mut used = 0;
            for _ in 0..alpha {
                if len + c.length() > 12 || size * c.len() > 4096 {
                    break;
                }
                len += c.length();
                size *= c.len();
                parts.push(c.clone());
                used += 1;
            }
            if used > 0 {
                predicted *= aut_order_bf(c).pow(used) * factorial(used as u64);
            }
        }
        if parts.is_empty() {
            continue;
        }
        let sum = sum_of(&parts);
        let dec = decompose_group(&sum).map_err(|e| e.to_string())?;
        let report = aut_group_with_decomposition(&sum, &dec, &search).map_err(|e| e.to_string())?;
        if report.order != Some(predicted.into()) {
            return Err(format!("sum of length {len}: expected {predicted}, got {:?}", report.order));
        }
        sums += 1;
    }
    Ok(format!("{checked} full spaces and {sums} constructed sums match"))
}

fn criterion_7() -> Result<String, String> {
    let search = SearchOptions::default();
    let opts = groupcode::decompose::DecomposeOptions::default();
    let groups = small_groups();
    let auts: Vec<Vec<W>> = groups.iter().map(|g| automorphisms_bf(g)).collect();
    let mut corpus: Vec<(usize, GroupCode)> = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        for n in 1..=3 {
            corpus.push((gi, GroupCode::full_space(g.clone(), n).map_err(|e| e.to_string())?));
        }
    }
    // Cyclic codes generated by a random word and its rotations.
    let mut r = rng(7);
    let mut cyclic_seeds = vec![(0, even_weight_3()), (0, repetition(3)), (2, GroupCode::generate(z(4), 2, &[Word::new(vec![1, 1])]).map_err(|e| e.to_string())?)];
    for _ in 0..60 {
        let gi = r.random_range(0..groups.len());
        let n = r.random_range(2..=4);
        let w: W = (0..n).map(|_| r.random_range(0..groups[gi].order() as Elem)).collect();
        let rotations: Vec<Word> = (0..n).scan(w, |cur, _| {
            let out = cur.clone();
            *cur = rotate(cur);
            Some(Word::new(out))
        }).collect();
        let c = GroupCode::generate(groups[gi].clone(), n, &rotations).map_err(|e| e.to_string())?;
        if c.len() <= 256 {
            cyclic_seeds.push((gi, c));
        }
    }
    for (gi, c) in &cyclic_seeds {
        corpus.push((*gi, c.clone()));
        if c.length() <= 3 && c.len() <= 16 {
            for copies in 2..=3 {
                let out = interleave(c, copies).map_err(|e| e.to_string())?;
                corpus.push((*gi, out.code));
            }
        }
    }
    let (mut decomposable, mut certified) = (0, 0);
    for (gi, c) in &corpus {
        let w = words_of(c);
        if !shift_invariant(&w) {
            return Err(format!("corpus code of length {} is not cyclic", c.length()));
        }
        let splits = c.length() > 1 && !splitting_sets(&w, c.length()).is_empty();
        if let Some(cert) = gcd_certificate(c) {
            certified += 1;
            if splits {
                return Err(format!("gcd certificate (xi = {}) on a decomposable code", cert.xi));
            }
        }
        if splits {
            decomposable += 1;
            let s = cyclic_structure(c, &opts).map_err(|e| e.to_string())?;
            let dec = decompose_group(c).map_err(|e| e.to_string())?;
            let comps = dec.components;
            if s.alpha != comps.len() || s.alpha < 2 {
                return Err("component count mismatch".into());
            }
            for comp in &comps {
                if !shift_invariant(&words_of(comp)) {
                    return Err("a component is not cyclic".into());
                }
                if comp.length() <= 4 && !gc_iso_bf(&comps[0], comp, &auts[*gi]) {
                    return Err("components are not isomorphic".into());
                }
                if groupcode::gc_isomorphic(&GroupCode::trusted(comps[0].clone()), &GroupCode::trusted(comp.clone()), &search)
                    .map_err(|e| e.to_string())?
                    .is_none()
                {
                    return Err("components are not isomorphic (search)".into());
                }
            }
        }
    }
    // (Z/2)^3: cyclic and decomposable whatever the exponent gcd says.
    let full = GroupCode::full_space(z(2), 3).map_err(|e| e.to_string())?;
    let w = words_of(&full);
    if !shift_invariant(&w) || splitting_sets(&w, 3).is_empty() || gcd_certificate(&full).is_some() {
        return Err("(Z/2)^3 example fails".into());
    }
    let s = cyclic_structure(&full, &opts).map_err(|e| e.to_string())?;
    if s.alpha != 3 {
        return Err(format!("(Z/2)^3 splits into {} components", s.alpha));
    }
    Ok(format!(
        "{} cyclic codes, {decomposable} decomposable with isomorphic cyclic components, {certified} gcd certificates sound; (Z/2)^3 = 3 cyclic copies of Z/2",
        corpus.len()
    ))
}

fn criterion_8() -> Result<String, String> {
    let mut corpus: Vec<GroupCode> = vec![z4_example(), even_weight_3(), hamming74()];
    corpus.extend((1..=9).map(repetition));
    let mut r = rng(8);
    for g in small_groups() {
        for n in 1..=3 {
            corpus.push(GroupCode::full_space(g.clone(), n).map_err(|e| e.to_string())?);
        }
        for _ in 0..80 {
            let n = r.random_range(1..=6);
            let k = r.random_range(1..=3);
            let c = random_group_code(&mut r, &g, n, k);
            if c.len() <= 1024 {
                corpus.push(c);
            }
        }
    }
    let (mut mds, mut perfect) = (0, 0);
    for c in &corpus {
        let w = words_of(c);
        let (q, n) = (c.q() as u64, c.length() as u32);
        let trivial = w.len() as u64 == q.pow(n);
        let Some(d) = min_distance(&w) else {
            continue;
        };
        let e = (d - 1) / 2;
        let ball: u64 = (0..=e as u32).map(|i| binom(n as u64, i as u64) * (q - 1).pow(i)).sum();
        let is_mds = w.len() as u64 == q.pow(n - d as u32 + 1);
        let is_perfect = w.len() as u64 * ball == q.pow(n);
        if is_mds != groupcode::classify::is_mds(c) || is_perfect != groupcode::classify::is_perfect(c) {
            return Err(format!("classification disagrees on a code of length {n}"));
        }
        if is_mds {
            mds += 1;
            if trivial != (d == 1) {
                return Err(format!("MDS code of length {n}: trivial = {trivial}, d = {d}"));
            }
        }
        if is_perfect {
            perfect += 1;
            if trivial != (e == 0) {
                return Err(format!("perfect code of length {n}: trivial = {trivial}, e = {e}"));
            }
        }
    }
    Ok(format!("{} codes: {mds} MDS, {perfect} perfect, 0 violations", corpus.len()))
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn main() -> ExitCode {
    type Criterion = fn() -> Result<String, String>;
    let criteria: [(u32, &str, Criterion, Duration); 8] = [
        (1, "Z/4 projection products", criterion_1, Duration::from_secs(1)),
        (2, "interleaving table", criterion_2, Duration::from_secs(1)),
        (3, "isometries are monomial", criterion_3, Duration::from_secs(10)),
        (4, "indecomposability certificates", criterion_4, Duration::from_secs(60)),
        (5, "unique decomposition", criterion_5, Duration::from_secs(300)),
        (6, "automorphism group orders", criterion_6, Duration::from_secs(300)),
        (7, "cyclic structure", criterion_7, Duration::from_secs(120)),
        (8, "MDS and perfect biconditionals", criterion_8, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; exceeded {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id} [{status}] {name}: {detail} ({:.2} s, limit {} s)", elapsed.as_secs_f64(), limit.as_secs());
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
