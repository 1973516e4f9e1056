use dops_core::dops::{dual_functional_vector, generate_sequence, required_horizon};
use dops_core::scalar::{int, rat};
use dops_core::BandedHessenberg;

#[test]
fn readme_library_example() {
    let d = 1;
    let n = 6;
    let h = required_horizon(d, n);
    let bands = (0..=h)
        .map(|k| if k == 0 { vec![int(0)] } else { vec![rat(1, 4), int(0)] })
        .collect();
    let j = BandedHessenberg::new(d, bands).unwrap();
    let s = generate_sequence(&j, h);
    let v = dual_functional_vector(&s, h);
    assert_eq!(v.entry(1).pair(s.poly(4)).unwrap(), int(0));
}
