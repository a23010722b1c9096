#![allow(dead_code)]

pub mod intervals;
pub mod matrices;
