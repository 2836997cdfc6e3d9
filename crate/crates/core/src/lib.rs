//! Exact construction and verification of the ground-state vectors of the
//! inhomogeneous O(1) crossing (Brauer) and non-crossing (Temperley-Lieb)
//! dense loop models on a strip with open boundaries, together with their
//! Pfaffian and determinant sum rules and homogeneous-limit integer
//! sequences. All arithmetic is exact, over Q or Q(w) with w^2 + w + 1 = 0.

pub mod asm;
pub mod brauer;
pub mod cli;
pub mod fixtures;
pub mod jsonio;
pub mod oracle;
pub mod pattern;
pub mod poly;
pub mod ratfun;
pub mod report;
pub mod ring;
pub mod sumrules;
pub mod tl;
