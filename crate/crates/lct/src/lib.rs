//! Companion crate to `lct-core`: the numerical Monte Carlo divergence probe
//! (here) and the `lct` binary (in `main.rs`). Everything exact lives in
//! `lct-core`; this crate carries the parts that need `std`, randomness, and
//! parallelism.

pub mod probe;
