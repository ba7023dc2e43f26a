//! Closed-form dynamics of the two physical scenarios and integrator oracles.

pub mod integrators;
pub mod reservoir;
pub mod tavis_cummings;

pub use integrators::{lindblad_oracle, rk4_step, schrodinger_oracle_tc, Trajectory};
pub use reservoir::{
    reservoir_amplitudes, reservoir_theta_candidates, reservoir_tripartite_state, reservoir_xstate,
    ReservoirAmplitudes, ReservoirParams,
};
pub use tavis_cummings::{
    tc_amplitudes, tc_theta_candidates_n0, tc_tripartite_state, tc_xstate_elements, TcAmplitudes, TcParams,
};
