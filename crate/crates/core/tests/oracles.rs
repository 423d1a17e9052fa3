//! Known values checked through the public API.

use num_traits::One;

use qbarnes::euler_barnes::{h_carlitz, h_number, limit_q_to_1, BarnesParams};
use qbarnes::exact_numbers::BigRational;
use qbarnes::padic_integration::{mu_value, AdmissibleU, MeasureCell};
use qbarnes::qnum::{qbracket, QBase};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn first_barnes_numbers() {
    let params = BarnesParams::new(vec![1], q(3, 1), QBase::from_q(q(2, 1)).unwrap()).unwrap();
    assert!(h_number(0, &params).unwrap().is_one());
    // u / (1 − qu) at u = 3, q = 2
    assert_eq!(h_number(1, &params).unwrap(), q(-3, 5));
}

#[test]
fn qbracket_small_values() {
    assert_eq!(qbracket(3, &q(2, 1)).unwrap(), q(7, 1));
    assert_eq!(qbracket(0, &q(5, 3)).unwrap(), q(0, 1));
    assert_eq!(qbracket(-1, &q(2, 1)).unwrap(), q(-1, 2));
}

#[test]
fn carlitz_first_number() {
    let (u, qv) = (q(7, 2), q(3, 5));
    assert_eq!(h_carlitz(1, &u, &qv).unwrap(), q(10, 29));
}

#[test]
fn classical_limit_first_number() {
    let u = q(4, 9);
    assert_eq!(limit_q_to_1(1, 0, &[1], &u).unwrap(), q(4, 5));
}

#[test]
fn measure_of_a_cell() {
    let u = AdmissibleU::new(q(3, 1), 3).unwrap();
    let cell = MeasureCell::simple(1, 1, 1, 3).unwrap();
    assert_eq!(mu_value(&cell, &u).unwrap(), q(3, 13));
}
