//! Builders for simple solutions: braces over abelian and non-abelian `V`, Byott's simple
//! braces, Lyubashenko solutions and a registry of named examples.

pub mod byott;
pub mod coro1;
pub mod coro2;
pub mod groups;
pub mod iso;
pub mod matrix;
pub mod registry;

pub use byott::{byott_build, ByottBuild};
pub use coro1::{coro1_build, coro1_hypotheses, Coro1Build, Coro1Data};
pub use coro2::{coro2_build, Coro2Brace, Coro2Build, Coro2Data, StructuredBrace};
pub use iso::{iso_criterion, CoroView};
pub use matrix::Mat;
pub use registry::{example_registry, Built, Example};

use std::fmt;

use crate::error::{Error, Result};
use crate::solution::FinSolution;

/// One named condition of a construction and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// Every condition evaluated by a builder, in evaluation order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HypothesisLedger {
    entries: Vec<Hypothesis>,
}

impl HypothesisLedger {
    pub fn push(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.entries.push(Hypothesis { name: name.into(), holds, detail: detail.into() });
    }

    pub fn entries(&self) -> &[Hypothesis] {
        &self.entries
    }

    pub fn failures(&self) -> Vec<&Hypothesis> {
        self.entries.iter().filter(|h| !h.holds).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|h| h.holds)
    }

    /// `Err(Rejected)` naming each failed condition.
    pub fn reject_on_failure(&self) -> Result<()> {
        let msgs: Vec<String> = self
            .failures()
            .iter()
            .map(|h| if h.detail.is_empty() { h.name.clone() } else { format!("{} ({})", h.name, h.detail) })
            .collect();
        if msgs.is_empty() {
            Ok(())
        } else {
            Err(Error::Rejected(msgs))
        }
    }
}

impl fmt::Display for HypothesisLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.entries {
            write!(f, "[{}] {}", if h.holds { "pass" } else { "FAIL" }, h.name)?;
            if !h.detail.is_empty() {
                write!(f, ": {}", h.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `r(x,y) = (y + a, x + b)` on `Z_n`.
pub fn lyubashenko_build(n: usize, a: usize, b: usize) -> Result<FinSolution> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("size {n} < 2")));
    }
    FinSolution::from_fn(n, |_, y| (y + a) % n, |_, x| (x + b) % n)
}
