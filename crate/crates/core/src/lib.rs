//! Supported sets, free nominal sets over three data symmetries, orbit-finite
//! presentations, de Bruijn binding and register-automaton determinization.

pub mod atoms;
pub mod automata;
pub mod binding;
pub mod freenom;
pub mod nomrep;
pub mod selfcheck;
pub mod shipped;
pub mod suppset;

pub use atoms::{Atom, FiniteMap, GlobalMap, Rational, Support, Symmetry};
pub use automata::{Config, Guard, Nfa, RegRef, RegisterAutomaton, Signature};
pub use binding::{AbsClass, DBTerm, NamedTerm};
pub use freenom::{ExtElem, NominalCarrier, RestrictedMap};
pub use nomrep::{AtomPool, FinPresentation};
pub use suppset::{ElemId, SuppMap, SuppSet};
