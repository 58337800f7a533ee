//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

pub mod series_division;
pub mod symmetric;
