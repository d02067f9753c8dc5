mod common;

use common::props;

#[test]
fn multiply_commutes() {
    props::multiply_commutes().unwrap();
}

#[test]
fn multiply_associates() {
    props::multiply_associates().unwrap();
}

#[test]
fn divide_then_multiply() {
    props::divide_then_multiply().unwrap();
}

#[test]
fn power_round_trip() {
    props::power_round_trip().unwrap();
}

#[test]
fn log_derivative_of_product() {
    props::log_derivative_of_product().unwrap();
}

#[test]
fn pade_re_expansion() {
    props::pade_re_expansion().unwrap();
}

#[test]
fn pade_scale_covariance() {
    props::pade_scale_covariance().unwrap();
}

#[test]
fn root_expansions_match_values() {
    props::root_expansions_match_values().unwrap();
}

#[test]
fn root_calibration_round_trip() {
    props::root_calibration_round_trip().unwrap();
}

#[test]
fn canonical_power_identities() {
    props::canonical_power_identities().unwrap();
}

#[test]
fn grid_series_division_round_trip() {
    props::grid_series_division_round_trip().unwrap();
}
