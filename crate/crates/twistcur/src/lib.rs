//! Twisted current algebras over cyclotomic fields, in exact arithmetic.
//!
//! A current algebra g (x) k^n is the algebra of g-valued functions on n
//! points. Given a finite group of Lie-algebra automorphisms of it, this
//! crate computes the fixed-point algebra L, the induced point and scalar
//! actions with their crossed-homomorphism twist, the evaluated local
//! automorphisms and isotropy algebras, and classifies the
//! finite-dimensional simple L-modules by pairs (lambda, psi): a character
//! of L and a finitely supported invariant section of irreducible isotropy
//! modules. Every identity is verified exactly over Q(zeta_N); there is no
//! floating point anywhere.
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run -p twistcur --example klein_counterexample
//! cargo run -p twistcur --example evaluation_modules
//! ```
//!
//! or the CLI:
//!
//! ```bash
//! cargo run -p twistcur -- fixed --example klein
//! ```

pub mod action;
pub mod builtin;
pub mod commands;
pub mod error;
pub mod lie;
pub mod matrix;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod site;
pub mod specfile;
pub mod subspace;

pub use action::{build_action, FixedAlgebra, IsotropyAlgebra, TwistedAction};
pub use error::{Error, Result};
pub use lie::{build_sl, current_algebra, sl2_irrep, LieAlgebra, LieIdeal, LieRep};
pub use matrix::ExactMatrix;
pub use rep::{
    build_eval_module, burnside_irreducible, classify, intertwiners, iso_test, Catalog, Character,
    Classification, EvalModule, InvariantSection,
};
pub use scalar::{parse_scalar, CycField, CycScalar};
pub use site::{invariants, orbit_stabilizer, PointAction, SiteAlgebra};
pub use subspace::{algebra_closure, kernel, Subspace};
