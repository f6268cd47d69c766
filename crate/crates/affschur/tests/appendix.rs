use affschur::algebra::Combo;
use affschur::matrices::{enumerate_xi, tridiagonal_pairs, CodedMatrix};
use affschur::schur::appendix::*;
use affschur::schur::chevalley::{generator_matrix, Generator};

type Mul = dyn Fn(&CodedMatrix, &CodedMatrix) -> Combo<1>;

fn pairs() -> Vec<(CodedMatrix, CodedMatrix)> {
    let mut p = tridiagonal_pairs(1, 2, 2);
    p.extend(tridiagonal_pairs(2, 3, 2));
    p
}

fn mismatches(f: &Mul, g: &Mul) -> (usize, usize) {
    let ps = pairs();
    let mut bad = 0;
    for (b, a) in &ps {
        if f(b, a) != g(b, a) {
            if bad < 3 {
                eprintln!("B={} A={}", b.compact(), a.compact());
            }
            bad += 1;
        }
    }
    (bad, ps.len())
}

#[test]
fn c_form_matches_general() {
    let (bad, tot) = mismatches(&|b, a| mul_general_c(b, a).unwrap(), &|b, a| mul_c_form(b, a).unwrap());
    assert!(tot > 200);
    assert_eq!(bad, 0, "{bad} of {tot}");
}

#[test]
fn c_form_with_minus_w_length_disagrees() {
    let (bad, _) = mismatches(&|b, a| mul_general_c(b, a).unwrap(), &|b, a| mul_c_form_with(b, a, WSign::Minus).unwrap());
    assert!(bad > 0);
}

#[test]
fn xy_form_matches_general() {
    let (bad, tot) = mismatches(&|b, a| mul_general_c(b, a).unwrap(), &|b, a| mul_fl19(b, a).unwrap());
    assert_eq!(bad, 0, "{bad} of {tot}");
}

#[test]
fn xy_form_matches_c_form() {
    let (bad, tot) = mismatches(&|b, a| mul_c_form(b, a).unwrap(), &|b, a| mul_fl19(b, a).unwrap());
    assert_eq!(bad, 0, "{bad} of {tot}");
}

#[test]
fn xy_form_printed_limit_disagrees() {
    let (bad, _) = mismatches(&|b, a| mul_general_c(b, a).unwrap(), &|b, a| mul_fl19_with(b, a, XiLimit::Printed).unwrap());
    assert!(bad > 0);
}

#[test]
fn type_d_matches_general() {
    let (bad, tot) = mismatches(&|b, a| mul_general_d(b, a).unwrap(), &|b, a| mul_type_d(b, a).unwrap());
    assert_eq!(bad, 0, "{bad} of {tot}");
}

#[test]
fn single_entry_type_d() {
    let mut checked = 0;
    for (r, d) in [(1, 2), (2, 3), (1, 3), (3, 2)] {
        for a in enumerate_xi(r, d, 2) {
            let mu = a.row_c();
            for h in 0..=r {
                for (g, s) in [(Generator::E(h), SingleEntry::Up(h)), (Generator::F(h), SingleEntry::Down(h))] {
                    let Ok(b) = generator_matrix(g, &mu, 1) else { continue };
                    let x = mul_general_d(&b, &a).unwrap();
                    let y = mul_type_d_single(s, &a).unwrap();
                    assert_eq!(x, y, "{g:?} A={}", a.compact());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100, "{checked}");
}
