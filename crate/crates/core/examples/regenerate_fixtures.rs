//! Recomputes the committed integer-sequence fixtures from scratch and
//! prints them in fixture format (`n<TAB>count`), cross-checking the
//! two independent counting routes against each other on the way.
//!
//! ```text
//! cargo run --release -p pnw-core --example regenerate_fixtures
//! ```

use pnw_core::enumeration::{count_prefix_normal, count_prefix_normal_naive, max_class_size};

fn main() {
    println!("# prefix normal word counts (fixtures/a194850.txt body)");
    for n in 0..=18usize {
        let dfs = count_prefix_normal(n);
        let naive = count_prefix_normal_naive(n);
        assert_eq!(dfs, naive, "routes disagree at n={n}");
        println!("{n}\t{dfs}");
    }
    println!("# maximum class sizes (fixtures/a238110.txt body); witness as comment");
    for n in 0..=14usize {
        let report = max_class_size(n);
        println!("{n}\t{}\t# witness {}", report.size, report.pnf);
    }
}
