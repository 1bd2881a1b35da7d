//! Parameter grids of identity checks, run sequentially or on a rayon pool.
//!
//! Every task is a pure computation; the only shared state is the
//! idempotent Euler-table cache. With the `parallel` feature disabled all
//! execution modes fall back to a plain sequential loop.

use std::sync::Arc;

use crate::chars::{character, enumerate_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::euler::evaluate_eq4;
use crate::symmetry::{
    verify, Identity, ReportParams, SymmetryParams, Verdict, VerificationReport, VerifyOptions, Witness,
};

#[derive(Clone, Debug)]
pub enum Task {
    Symmetry {
        identity: Identity,
        params: SymmetryParams,
    },
    /// `E_k(nd) + E_k = 2 T_k(nd - 1)`.
    Eq4 {
        chi: Arc<DirichletCharacter>,
        k: usize,
        multiplier: u64,
    },
}

pub fn run_task(task: &Task, opts: &VerifyOptions) -> Result<VerificationReport> {
    match task {
        Task::Symmetry { identity, params } => verify(*identity, params, opts),
        Task::Eq4 { chi, k, multiplier } => {
            let r = evaluate_eq4(chi, *k, *multiplier)?;
            Ok(VerificationReport {
                identity: Identity::Eq4,
                params: ReportParams {
                    modulus: r.modulus,
                    character: r.character,
                    w1: None,
                    w2: None,
                    order: None,
                    n: r.n,
                    k: Some(r.k as u64),
                },
                verdict: if r.equal { Verdict::Equal } else { Verdict::Unequal },
                witness: (!r.equal).then(|| Witness::Value {
                    check: "sides".to_string(),
                    lhs: r.lhs.clone(),
                    rhs: r.rhs.clone(),
                }),
                note: (!r.within_hypothesis).then(|| "outside stated hypothesis: n is even".to_string()),
                observational: !r.within_hypothesis,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon pool with the given number of threads (0 = rayon default).
    Parallel(usize),
}

impl Execution {
    pub fn from_jobs(jobs: usize) -> Self {
        if jobs == 1 {
            Execution::Sequential
        } else {
            Execution::Parallel(jobs)
        }
    }
}

/// Run every task, returning reports in task order.
pub fn run_grid(tasks: &[Task], opts: &VerifyOptions, exec: Execution) -> Result<Vec<VerificationReport>> {
    match exec {
        Execution::Sequential => tasks.iter().map(|t| run_task(t, opts)).collect(),
        Execution::Parallel(threads) => parallel::collect(tasks, opts, threads),
    }
}

/// Run every task, handing each report to `sink` as soon as it is ready.
/// Sequential execution delivers reports in task order; parallel execution
/// delivers them in completion order.
pub fn stream_grid<F>(tasks: &[Task], opts: &VerifyOptions, exec: Execution, sink: F) -> Result<()>
where
    F: Fn(usize, Result<VerificationReport>) -> Result<()> + Sync + Send,
{
    match exec {
        Execution::Sequential => {
            for (i, t) in tasks.iter().enumerate() {
                sink(i, run_task(t, opts))?;
            }
            Ok(())
        }
        Execution::Parallel(threads) => parallel::for_each(tasks, opts, threads, sink),
    }
}

#[cfg(feature = "parallel")]
mod parallel {
    use super::*;
    use rayon::prelude::*;

    fn pool(threads: usize) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
    }

    pub fn collect(tasks: &[Task], opts: &VerifyOptions, threads: usize) -> Result<Vec<VerificationReport>> {
        pool(threads).install(|| tasks.par_iter().map(|t| run_task(t, opts)).collect())
    }

    pub fn for_each<F>(tasks: &[Task], opts: &VerifyOptions, threads: usize, sink: F) -> Result<()>
    where
        F: Fn(usize, Result<VerificationReport>) -> Result<()> + Sync + Send,
    {
        pool(threads).install(|| {
            tasks
                .par_iter()
                .enumerate()
                .try_for_each(|(i, t)| sink(i, run_task(t, opts)))
        })
    }
}

#[cfg(not(feature = "parallel"))]
mod parallel {
    use super::*;

    pub fn collect(tasks: &[Task], opts: &VerifyOptions, _threads: usize) -> Result<Vec<VerificationReport>> {
        tasks.iter().map(|t| run_task(t, opts)).collect()
    }

    pub fn for_each<F>(tasks: &[Task], opts: &VerifyOptions, _threads: usize, sink: F) -> Result<()>
    where
        F: Fn(usize, Result<VerificationReport>) -> Result<()> + Sync + Send,
    {
        for (i, t) in tasks.iter().enumerate() {
            sink(i, run_task(t, opts))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterSelection {
    Index(usize),
    All,
}

/// A cartesian parameter grid for one identity.
///
/// Tasks are ordered by modulus, character index, weight pair, order, then
/// `n` (for `eq4`: modulus, character, multiplier, then `k`).
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub identity: Identity,
    pub moduli: Vec<u64>,
    pub characters: CharacterSelection,
    pub weight_pairs: Vec<(u64, u64)>,
    pub orders: Vec<u64>,
    pub max_n: usize,
    /// Multipliers `n` in `E_k(nd)`; only used by `eq4`.
    pub multipliers: Vec<u64>,
}

impl GridSpec {
    pub fn tasks(&self) -> Result<Vec<Task>> {
        let mut tasks = Vec::new();
        for &d in &self.moduli {
            let chars = match self.characters {
                CharacterSelection::All => enumerate_characters(d)?,
                CharacterSelection::Index(i) => vec![character(d, i)?],
            };
            for chi in chars {
                let chi = Arc::new(chi);
                if self.identity == Identity::Eq4 {
                    for &multiplier in &self.multipliers {
                        if multiplier == 0 {
                            return Err(Error::InvalidMultiplier(0));
                        }
                        for k in 0..=self.max_n {
                            tasks.push(Task::Eq4 {
                                chi: chi.clone(),
                                k,
                                multiplier,
                            });
                        }
                    }
                    continue;
                }
                for &(w1, w2) in &self.weight_pairs {
                    for &m in &self.orders {
                        for n in 0..=self.max_n {
                            tasks.push(Task::Symmetry {
                                identity: self.identity,
                                params: SymmetryParams::new(chi.clone(), w1, w2, m, n)?,
                            });
                        }
                    }
                }
            }
        }
        Ok(tasks)
    }
}
