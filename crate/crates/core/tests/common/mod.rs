#![allow(dead_code)]

pub mod gauss;
