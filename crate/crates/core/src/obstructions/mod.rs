//! Obstructions to connections on a finitely presented module: the Atiyah
//! class, the kernel of the Kodaira-Spencer map, and the class deciding
//! whether a connection along that kernel exists.

mod classes;
mod connection;
mod der;
mod ext1;
mod report;

pub use classes::{atiyah_class, ks_class, ks_kernel, KsKernel, KsLift};
pub use connection::{
    check_connection, curvature, lclass, lclass_with, verify_connection, Connection, ConnectionDefect,
    LClassOutcome,
};
pub use der::{der, lie_bracket, DerModule, Derivation};
pub use ext1::{Ext1Witness, ObstructionResult};
pub use report::{full_report, report, ObstructionReport, Stage, Stages};
