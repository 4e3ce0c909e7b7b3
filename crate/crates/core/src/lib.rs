//! Exact GKM computations for Bott-Samelson varieties.

pub mod braden;
pub mod check;
pub mod cohom;
pub mod error;
pub mod gallery;
pub mod parity;
pub mod poly;
pub mod rootsys;
pub mod verify;

pub use check::Check;
pub use cohom::{BasisFamily, BasisIndex, Domain, Op, PointClass, Support, Tower, Violation};
pub use error::{Error, Result};
pub use gallery::{FiberOrdering, Gallery, TreeIndex, WallData, Word};
pub use parity::{DefectReport, FiberPipeline, Matrix, TorsionReport};
pub use poly::{FieldSpec, LaurentV, Monomial, Poly, RatFn};
pub use rootsys::{CartanType, Component, Root, RootDatum, WeylElement};
pub use verify::{Criterion, SuiteConfig, SuiteReport};
