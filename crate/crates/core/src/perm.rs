//! Iteration over all permutations of `0..n` with signature tracking.

/// Calls `f(perm, sign)` once for every permutation of `0..n`, with `sign`
/// the signature. Uses Heap's algorithm; each swap flips the sign.
pub fn for_each_signed(n: usize, mut f: impl FnMut(&[usize], i32)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i32;
    f(&perm, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            f(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_signs() {
        let mut total = 0;
        let mut signed_sum = 0i32;
        for_each_signed(4, |_, s| {
            total += 1;
            signed_sum += s;
        });
        assert_eq!(total, 24);
        assert_eq!(signed_sum, 0);
    }

    #[test]
    fn sign_matches_inversion_count() {
        for_each_signed(5, |p, s| {
            let mut inv = 0;
            for i in 0..5 {
                for j in (i + 1)..5 {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let expect = if inv % 2 == 0 { 1 } else { -1 };
            assert_eq!(s, expect);
        });
    }
}
