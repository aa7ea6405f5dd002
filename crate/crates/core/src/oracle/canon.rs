//! Canonical relabeling of small graphs for isomorphism pruning.

/// Past this many candidate relabelings the search keeps the
/// color-sorted labeling instead of minimizing over all of them. Dedup is
/// then weaker but still only merges isomorphic graphs.
const MAX_RELABELINGS: usize = 50_000;

/// Returns `perm` (new index `i` holds old vertex `perm[i]`) minimizing
/// `encode(perm)` among relabelings that list vertices by increasing color.
///
/// Colors must be isomorphism invariants, so isomorphic inputs produce the
/// same minimum.
pub(crate) fn canonical_permutation<F>(colors: &[u64], encode: F) -> Vec<usize>
where
    F: Fn(&[usize]) -> u128,
{
    let n = colors.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if colors[c[0]] == colors[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut count: usize = 1;
    for c in &classes {
        for i in 2..=c.len() {
            count = count.saturating_mul(i);
        }
    }
    if count > MAX_RELABELINGS {
        return order;
    }
    let mut best = order.clone();
    let mut best_code = encode(&best);
    let mut current = Vec::with_capacity(n);
    permute_classes(&classes, 0, &mut current, &mut |perm| {
        let code = encode(perm);
        if code < best_code {
            best_code = code;
            best.copy_from_slice(perm);
        }
    });
    best
}

fn permute_classes(
    classes: &[Vec<usize>],
    idx: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if idx == classes.len() {
        visit(current);
        return;
    }
    let mut class = classes[idx].clone();
    heap_permutations(&mut class, classes[idx].len(), &mut |p| {
        let len = current.len();
        current.extend_from_slice(p);
        permute_classes(classes, idx + 1, current, visit);
        current.truncate(len);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, visit);
        if i + 1 < k {
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
}
