//! Deciding hard Lefschetz, and the structural checks behind the constant-level
//! criterion: lemma verifications, the `delta` product certificate and the
//! semifree monotone normalization.

mod delta;
mod hard_lefschetz;
mod lemmas;
mod semifree;

pub use delta::{delta_candidates, delta_certificate, DeltaCertificate};
pub use hard_lefschetz::{
    hard_lefschetz_check, lefschetz_pairing, poincare_pairing, top_power_integral, DegreeCheck,
    DegreeVerdict, HLReport,
};
pub use lemmas::{
    verify_distinct, verify_symp_expansion, verify_vanish, verify_zeroclass, LemmaEntry, LemmaKind,
    LemmaLedger, Side,
};
pub use semifree::{semifree_monotone_analysis, SemifreeAnalysis};
