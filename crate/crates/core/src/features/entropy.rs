use std::collections::HashMap;

/// Shannon entropy of the code-point distribution of `text`, in bits per character.
pub fn entropy_bits(text: &str) -> f64 {
    let mut counts: HashMap<char, u32> = HashMap::new();
    let mut total = 0u32;
    for c in text.chars() {
        *counts.entry(c).or_default() += 1;
        total += 1;
    }
    if total == 0 {
        return 0.0;
    }
    let n = f64::from(total);
    let h: f64 = counts
        .values()
        .map(|&c| {
            let p = f64::from(c) / n;
            -p * p.log2()
        })
        .sum();
    // a single symbol gives -1 * log2(1) = -0.0
    h.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_alphabets() {
        assert_eq!(entropy_bits(""), 0.0);
        assert_eq!(entropy_bits("aaaa"), 0.0);
        assert_eq!(entropy_bits("abab"), 1.0);
        assert_eq!(entropy_bits("abcd"), 2.0);
    }

    #[test]
    fn skewed_three_chars() {
        // -(2/3)log2(2/3) - (1/3)log2(1/3)
        assert!((entropy_bits("aab") - 0.918_295_834).abs() < 1e-4);
    }

    #[test]
    fn counts_code_points() {
        assert_eq!(entropy_bits("éé"), 0.0);
        assert_eq!(entropy_bits("日本"), 1.0);
    }
}
