//! Holds the `acceptance` test target. Run it with
//! `cargo test -p electoral-sim-acceptance --test acceptance`.
