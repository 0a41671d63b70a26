//! Desk-scale workbench for traffic-congestion route assignment with QAOA:
//! road networks and candidate routes, QUBO/Ising modeling, circuit
//! construction (including connectivity-forced compression), noiseless
//! statevector simulation, parameter initialization and optimization, and
//! approximation/runtime metrics.

pub mod bits;
pub mod cf;
pub mod circuit;
pub mod coupling;
pub mod error;
pub mod ising;
pub mod metrics;
pub mod optim;
pub mod params;
pub mod qubo;
pub mod roadnet;
pub mod router;
pub mod simulator;

pub use error::{Error, Result};
