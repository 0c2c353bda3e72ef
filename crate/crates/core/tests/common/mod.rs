#![allow(dead_code)]

pub mod zoracle;
