//! Exact computations for two-parameter quantum groups `U_{r,s}(sl_n)` at roots
//! of unity: PBW normal forms, Hopf pairings, twisting elements, module algebras
//! and the deformations they induce.

pub mod deform;
pub mod linalg;
pub mod modalg;
pub mod ncalg;
pub mod pairing;
pub mod qgroup;
pub mod report;
pub mod rtwist;
pub mod scalars;
