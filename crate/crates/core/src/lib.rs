//! School timetabling driven by teacher preferences.
//!
//! Teachers are ranked with the Analytic Hierarchy Process ([`ahp`]); the
//! resulting scores weight each teacher's preferred cells in the
//! satisfaction function ([`timetable`]), which a genetic algorithm
//! ([`ga`]) maximises once double bookings are gone. [`oracle`] holds a
//! brute-force optimiser and an independent evaluator for small instances,
//! and [`bundle`], [`report`] and [`commands`] wire everything to files.

pub mod ahp;
pub mod bundle;
pub mod commands;
pub mod error;
pub mod ga;
pub mod oracle;
pub mod report;
pub mod timetable;

pub use error::{Error, Result};
