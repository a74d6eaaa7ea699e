//! Small subset-enumeration helpers shared across modules.

/// All k-element subsets of `items`, in lexicographic order of positions.
pub fn k_subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        if idx[i] == i + n - k {
            return out;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Binomial coefficient as usize; saturates are not expected at desk scale.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_count_and_order() {
        let xs = [1, 2, 3, 4];
        let subs = k_subsets(&xs, 2);
        assert_eq!(subs.len(), binomial(4, 2));
        assert_eq!(subs[0], vec![1, 2]);
        assert_eq!(subs[5], vec![3, 4]);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(k_subsets(&xs, 0), vec![Vec::<i32>::new()]);
        assert!(k_subsets(&xs, 5).is_empty());
        assert_eq!(k_subsets(&xs, 4).len(), 1);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(8, 6), 28);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 7), 0);
    }
}
