//! Holds the `acceptance` test target; run it with
//! `cargo test -p eof2xd-validation --test acceptance`.
