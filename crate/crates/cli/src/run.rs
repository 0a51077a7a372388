use anyhow::Result;

use bkflow::bench::{self, Measured, RunOptions, Solver};
use bkflow::Problem;

use crate::EngineArgs;

pub fn measure(problem: &Problem, engine: &EngineArgs, repeat: u32) -> Result<Measured> {
    let options = RunOptions {
        solver: engine.algo.engine().map_or(Solver::Oracle, Solver::Engine),
        mode: engine.mode.into(),
        debug_invariants: engine.debug_invariants,
        repeat,
    };
    Ok(bench::measure(problem, &options)?)
}
