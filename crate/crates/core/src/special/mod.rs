//! Special functions and the test-function library.

pub mod gamma;
pub mod integrate;
pub mod jet;
pub mod mittag_leffler;
pub mod test_functions;
