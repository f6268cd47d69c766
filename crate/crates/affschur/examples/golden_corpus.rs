//! Generate and verify a small content-addressed corpus.

use affschur::corpus::{generate, verify, Check};

fn main() {
    let dir = std::env::temp_dir().join("affschur-example-corpus");
    let index = generate(&dir, &[(1, 2)]).unwrap();
    println!("{}: {:?}", dir.display(), index.families);
    let rep = verify(&dir, Check::Formula).unwrap();
    println!("{} entries, ok = {}", rep.entries, rep.ok());
}
