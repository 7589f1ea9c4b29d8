//! Edit distances and similarity ratios between name variants.

use ackmine::similarity::{levenshtein_distance, partial_ratio, similarity_ratio, SubstitutionCost};

fn main() {
    let pairs = [
        ("National Science Foundation", "National Science Foundation (NSF)"),
        ("National Nature Science Foundation of China", "Natural National Science Foundation of China"),
        ("National Nature Science Foundation of China", "National Natural Science Foundation of China"),
        ("Google", "Google Inc."),
        ("John Doe", "john doe"),
        ("NSF", "nsf"),
    ];
    println!("{:>4} {:>4} {:>6} {:>8}  pair", "lev", "indel", "ratio", "partial");
    for (a, b) in pairs {
        println!(
            "{:>4} {:>5} {:>6} {:>8}  {a:?} / {b:?}",
            levenshtein_distance(a, b, SubstitutionCost::One),
            levenshtein_distance(a, b, SubstitutionCost::Two),
            similarity_ratio(a, b),
            partial_ratio(a, b),
        );
    }
}
