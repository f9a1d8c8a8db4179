//! File formats and run reporting for the alignment solver.
//!
//! All instance files are whitespace-separated UTF-8 text; `#` starts a
//! comment line. A graph file opens with a header line `n <node_count>`
//! followed by one `u v` edge per line. Candidate files hold `i i' sigma_v`
//! triples, square-weight files `i i' j j' w` records, and mapping or
//! ground-truth files `i i'` pairs with an optional trailing score.

pub mod formats;
pub mod report;

pub use formats::FormatError;
pub use report::RunReport;
