//! Computational toolkit for finite bands and semigroups: Green's relations
//! and egg-box pictures, the free-band word problem, band varieties,
//! singular squares, and presentations of the maximal subgroups of the free
//! idempotent generated semigroup over a biordered set.

pub mod builtins;
pub mod cay;
pub mod free_band;
pub mod group_tools;
pub mod greens;
pub mod presentation;
pub mod semigroup;
pub mod singularity;
pub mod variety;

pub use semigroup::{FiniteBand, FiniteSemigroup};
